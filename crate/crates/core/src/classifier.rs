//! Quasi-isometry classification of GBS groups.
//!
//! Graphs are first reduced by elementary collapses (contracting non-loop
//! edges with a ±1 label); the class is then read off the reduced graph and
//! the modular homomorphism. Slide moves are not attempted.

use std::fmt;

use num_bigint::BigInt;
use serde::ser::SerializeMap;
use serde::Serialize;

use crate::error::Result;
use crate::graph::{is_unit, validate_graph, Edge, EdgeId, GbsGraph, VertexId};
use crate::group::GbsGroup;
use crate::modular::DeltaGenerator;
use crate::twisted::CertificateOutcome;
use crate::word::{Letter, PathWord};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum QiClass {
    TrivialZ,
    VirtuallyZ2,
    /// Signed label of the reduced loop: the non-unit label times the unit one.
    SolvableBS1n(BigInt),
    VirtuallyFnxZ,
    BS23Class,
}

impl QiClass {
    pub fn is_elementary(&self) -> bool {
        matches!(self, QiClass::TrivialZ | QiClass::VirtuallyZ2)
    }

    /// 1 (solvable), 2 (virtually F_n × ℤ), 3 (BS(2,3) class); `None` when elementary.
    pub fn case(&self) -> Option<u8> {
        match self {
            QiClass::SolvableBS1n(_) => Some(1),
            QiClass::VirtuallyFnxZ => Some(2),
            QiClass::BS23Class => Some(3),
            QiClass::TrivialZ | QiClass::VirtuallyZ2 => None,
        }
    }
}

impl fmt::Display for QiClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QiClass::TrivialZ => write!(f, "TrivialZ"),
            QiClass::VirtuallyZ2 => write!(f, "VirtuallyZ2"),
            QiClass::SolvableBS1n(n) => write!(f, "SolvableBS1n({n})"),
            QiClass::VirtuallyFnxZ => write!(f, "VirtuallyFnxZ"),
            QiClass::BS23Class => write!(f, "BS23Class"),
        }
    }
}

/// How the original graph maps onto its reduction: `a_v ↦ a_{v'}^m` and
/// surviving edges keep their letter, collapsed ones become trivial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub graph: GbsGraph,
    pub vertex_map: Vec<(VertexId, BigInt)>,
    pub edge_map: Vec<Option<EdgeId>>,
}

impl Reduction {
    /// Image of a path in `original`, the graph this reduction came from.
    pub fn map_path(&self, original: &GbsGraph, w: &PathWord) -> PathWord {
        let (start, m) = &self.vertex_map[w.start().0];
        let mut out = PathWord::vertex_power(*start, w.head() * m);
        for (l, k) in w.tail() {
            if let Some(e) = self.edge_map[l.edge.0] {
                out.push_letter(&self.graph, Letter::new(e, l.forward));
            }
            let (_, m) = &self.vertex_map[l.target(original).0];
            out.push_power(&(k * m));
        }
        out
    }
}

/// Collapses non-loop edges with a ±1 label, first in declaration order,
/// until none is left.
pub fn reduce_graph(g: &GbsGraph) -> GbsGraph {
    reduce_graph_with_map(g).graph
}

pub fn reduce_graph_with_map(g: &GbsGraph) -> Reduction {
    let mut vertex_map: Vec<(VertexId, BigInt)> =
        (0..g.vertices().len()).map(|i| (VertexId(i), BigInt::from(1))).collect();
    let mut alive_vertex = vec![true; g.vertices().len()];
    let mut edges: Vec<Option<Edge>> = g.edges().iter().cloned().map(Some).collect();

    loop {
        let found = edges.iter().position(|e| {
            e.as_ref()
                .is_some_and(|e| !e.is_loop() && (is_unit(&e.label_origin) || is_unit(&e.label_terminus)))
        });
        let Some(i) = found else { break };
        let e = edges[i].take().expect("alive edge");
        // a_gone = a_kept^m
        let (gone, kept, m) = if is_unit(&e.label_origin) {
            (e.origin, e.terminus, &e.label_terminus * &e.label_origin)
        } else {
            (e.terminus, e.origin, &e.label_origin * &e.label_terminus)
        };
        alive_vertex[gone.0] = false;
        for other in edges.iter_mut().flatten() {
            if other.origin == gone {
                other.origin = kept;
                other.label_origin *= &m;
            }
            if other.terminus == gone {
                other.terminus = kept;
                other.label_terminus *= &m;
            }
        }
        for (v, mult) in vertex_map.iter_mut() {
            if *v == gone {
                *v = kept;
                *mult *= &m;
            }
        }
    }

    let mut new_index = vec![None; g.vertices().len()];
    let mut vertices = Vec::new();
    for (i, name) in g.vertices().iter().enumerate() {
        if alive_vertex[i] {
            new_index[i] = Some(VertexId(vertices.len()));
            vertices.push(name.clone());
        }
    }
    let renumber = |v: VertexId| new_index[v.0].expect("surviving vertex");
    let mut edge_map = vec![None; edges.len()];
    let mut kept_edges = Vec::new();
    for (i, e) in edges.into_iter().enumerate() {
        if let Some(mut e) = e {
            e.origin = renumber(e.origin);
            e.terminus = renumber(e.terminus);
            edge_map[i] = Some(EdgeId(kept_edges.len()));
            kept_edges.push(e);
        }
    }
    let vertex_map: Vec<(VertexId, BigInt)> = vertex_map.into_iter().map(|(v, m)| (renumber(v), m)).collect();
    let base = vertex_map[g.base().0].0;
    let graph = GbsGraph::from_parts(vertices, kept_edges, base).expect("collapse keeps the graph well formed");
    Reduction { graph, vertex_map, edge_map }
}

pub fn qi_class(g: &GbsGraph) -> Result<QiClass> {
    let reduced = reduce_graph(g);
    class_of_reduced(&reduced)
}

fn class_of_reduced(reduced: &GbsGraph) -> Result<QiClass> {
    let edges = reduced.edges();
    if edges.is_empty() {
        return Ok(QiClass::TrivialZ);
    }
    if edges.len() == 1 && edges[0].is_loop() {
        let e = &edges[0];
        match (is_unit(&e.label_origin), is_unit(&e.label_terminus)) {
            (true, true) => return Ok(QiClass::VirtuallyZ2),
            (true, false) => return Ok(QiClass::SolvableBS1n(&e.label_terminus * &e.label_origin)),
            (false, true) => return Ok(QiClass::SolvableBS1n(&e.label_origin * &e.label_terminus)),
            (false, false) => {}
        }
    }
    if GbsGroup::new(reduced.clone())?.is_unimodular() {
        Ok(QiClass::VirtuallyFnxZ)
    } else {
        Ok(QiClass::BS23Class)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationReport {
    pub input: GbsGraph,
    pub reduced: GbsGraph,
    pub delta_image: Vec<DeltaGenerator>,
    pub unimodular: bool,
    pub class: QiClass,
    pub certificate: Option<CertificateOutcome>,
    pub notes: Vec<String>,
    /// Betti number of the reduced graph, for the virtually F_n × ℤ class only.
    pub rank_hint: Option<usize>,
}

impl Serialize for ClassificationReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(8))?;
        m.serialize_entry("input", &self.input)?;
        m.serialize_entry("reduced", &self.reduced)?;
        m.serialize_entry("delta_image", &self.delta_image)?;
        m.serialize_entry("class", &self.class.to_string())?;
        match self.class.case() {
            Some(c) => m.serialize_entry("theorem_case", &c)?,
            None => m.serialize_entry("theorem_case", "elementary")?,
        }
        m.serialize_entry("certificate", &self.certificate)?;
        m.serialize_entry("notes", &self.notes)?;
        m.serialize_entry("rank_hint", &self.rank_hint)?;
        m.end()
    }
}

pub fn classification_report(g: &GbsGraph) -> Result<ClassificationReport> {
    let group = GbsGroup::new(g.clone())?;
    let reduced = reduce_graph(g);
    let class = class_of_reduced(&reduced)?;
    let delta = group.delta_image_generators();
    let mut notes = Vec::new();
    let mut certificate = None;
    let mut rank_hint = None;
    match &class {
        QiClass::TrivialZ | QiClass::VirtuallyZ2 => {
            notes.push("elementary: the group is virtually cyclic or virtually Z^2, outside the trichotomy".into());
        }
        QiClass::VirtuallyFnxZ => {
            notes.push("unimodular: Δ-certificate unavailable; see projection_soundness tooling".into());
            rank_hint = Some(validate_graph(&reduced).betti);
        }
        QiClass::SolvableBS1n(n) => {
            if n < &BigInt::from(0) {
                notes.push(format!(
                    "negative label: the quasi-isometry relation between BS(1,{n}) and BS(1,{}) is not decided here",
                    -n
                ));
            }
        }
        QiClass::BS23Class => {
            notes.push("reduced by elementary collapses only; a graph needing slide moves to reach BS(1,n) would land here".into());
        }
    }
    if !delta.unimodular {
        certificate = Some(group.rinfty_certificate(&group.identity_automorphism())?);
    }
    Ok(ClassificationReport {
        input: g.clone(),
        reduced,
        delta_image: delta.generators,
        unimodular: delta.unimodular,
        class,
        certificate,
        notes,
        rank_hint,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;

    fn class(text: &str) -> String {
        qi_class(&parse_graph(text).unwrap()).unwrap().to_string()
    }

    fn bs(m: i64, n: i64) -> String {
        qi_class(&GbsGraph::baumslag_solitar(m, n).unwrap()).unwrap().to_string()
    }

    #[test]
    fn table() {
        assert_eq!(bs(1, 2), "SolvableBS1n(2)");
        assert_eq!(bs(1, 1), "VirtuallyZ2");
        assert_eq!(bs(1, -1), "VirtuallyZ2");
        assert_eq!(bs(2, 2), "VirtuallyFnxZ");
        assert_eq!(bs(2, 3), "BS23Class");
        assert_eq!(class("vertex a"), "TrivialZ");
        assert_eq!(class("vertex a\nedge t1 : a -> a [1, 1]\nedge t2 : a -> a [1, 1]"), "VirtuallyFnxZ");
    }

    #[test]
    fn collapses() {
        let g = parse_graph("vertex u\nvertex v\nedge e : u -> v [4, 1]").unwrap();
        let r = reduce_graph(&g);
        assert_eq!((r.vertices().len(), r.edges().len()), (1, 0));

        let bs23 = GbsGraph::baumslag_solitar(2, 3).unwrap();
        assert_eq!(reduce_graph(&bs23), bs23);

        let theta = parse_graph("vertex u\nvertex v\nedge e1 : u -> v [1, 2]\nedge e2 : u -> v [5, 7]").unwrap();
        let r = reduce_graph(&theta);
        assert_eq!(r.to_text(), "vertex v\nedge e2 : v -> v [10, 7]\nbase v\n");
    }

    #[test]
    fn theta_classification_matches_delta() {
        let theta = parse_graph("vertex u\nvertex v\nedge e1 : u -> v [1, 2]\nedge e2 : u -> v [5, 7]").unwrap();
        let report = classification_report(&theta).unwrap();
        assert_eq!(report.class, QiClass::BS23Class);
        assert!(!report.unimodular);
        assert!(report.certificate.as_ref().unwrap().certificate().is_some());
    }

    #[test]
    fn report_shapes() {
        let r = classification_report(&GbsGraph::baumslag_solitar(2, 3).unwrap()).unwrap();
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["theorem_case"], 3);
        assert_eq!(json["class"], "BS23Class");
        assert!(json["certificate"].is_object());
        let text = serde_json::to_string(&r).unwrap();
        let at: Vec<usize> = ["input", "reduced", "delta_image", "class", "theorem_case", "certificate", "notes", "rank_hint"]
            .iter()
            .map(|k| text.find(&format!("\"{k}\":")).unwrap())
            .collect();
        assert!(at.windows(2).all(|p| p[0] < p[1]), "{text}");

        let r = classification_report(&parse_graph("vertex a").unwrap()).unwrap();
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["theorem_case"], "elementary");
        assert!(json["certificate"].is_null());

        let f2z = parse_graph("vertex a\nedge t1 : a -> a [1, 1]\nedge t2 : a -> a [1, 1]").unwrap();
        let r = classification_report(&f2z).unwrap();
        assert_eq!(r.class.case(), Some(2));
        assert_eq!(r.rank_hint, Some(2));
        assert!(r.notes[0].starts_with("unimodular"));
    }
}
