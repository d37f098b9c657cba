//! Labeled graphs of infinite-cyclic groups.
//!
//! A [`GbsGraph`] is the source of truth for a GBS group. Each vertex carries a
//! copy of ℤ generated by `a_v`; each edge `e : u -> w [p, q]` identifies
//! `a_u^p` with a conjugate of `a_w^q`. Declaration order is kept everywhere so
//! that spanning trees, generator lists and reports are deterministic.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use petgraph::unionfind::UnionFind;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId(pub usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub origin: VertexId,
    pub terminus: VertexId,
    pub label_origin: BigInt,
    pub label_terminus: BigInt,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.origin == self.terminus
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GbsGraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    base: VertexId,
}

impl GbsGraph {
    /// Builds a graph, checking every invariant except connectivity.
    ///
    /// Disconnected graphs are representable so that [`validate_graph`] can
    /// report on them; everything that needs a fundamental group goes through
    /// [`GbsGraph::ensure_connected`].
    pub fn from_parts(vertices: Vec<String>, edges: Vec<Edge>, base: VertexId) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let mut seen = HashMap::new();
        for name in vertices.iter().chain(edges.iter().map(|e| &e.name)) {
            if seen.insert(name.as_str(), ()).is_some() {
                return Err(Error::DuplicateName { line: 0, name: name.clone() });
            }
        }
        if base.0 >= vertices.len() {
            return Err(Error::UnknownVertex { line: 0, name: format!("#{}", base.0) });
        }
        for e in &edges {
            for v in [e.origin, e.terminus] {
                if v.0 >= vertices.len() {
                    return Err(Error::UnknownVertex { line: 0, name: format!("#{}", v.0) });
                }
            }
            if e.label_origin.is_zero() || e.label_terminus.is_zero() {
                return Err(Error::LabelZero { line: 0, edge: e.name.clone() });
            }
        }
        Ok(GbsGraph { vertices, edges, base })
    }

    /// One vertex `a` with one loop `t` labeled `(m, n)`: the graph of BS(m, n).
    pub fn baumslag_solitar(m: i64, n: i64) -> Result<Self> {
        Self::from_parts(
            vec!["a".into()],
            vec![Edge {
                name: "t".into(),
                origin: VertexId(0),
                terminus: VertexId(0),
                label_origin: BigInt::from(m),
                label_terminus: BigInt::from(n),
            }],
            VertexId(0),
        )
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn base(&self) -> VertexId {
        self.base
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0]
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e.0]
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.vertices.iter().position(|v| v == name).map(VertexId)
    }

    pub fn edge_id(&self, name: &str) -> Option<EdgeId> {
        self.edges.iter().position(|e| e.name == name).map(EdgeId)
    }

    pub fn with_base(mut self, base: VertexId) -> Self {
        assert!(base.0 < self.vertices.len());
        self.base = base;
        self
    }

    /// Vertices reachable from the base, in BFS order.
    fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.vertices.len()];
        let mut queue = VecDeque::from([self.base]);
        seen[self.base.0] = true;
        while let Some(u) = queue.pop_front() {
            for e in &self.edges {
                for (x, y) in [(e.origin, e.terminus), (e.terminus, e.origin)] {
                    if x == u && !seen[y.0] {
                        seen[y.0] = true;
                        queue.push_back(y);
                    }
                }
            }
        }
        seen
    }

    pub fn is_connected(&self) -> bool {
        self.reachable().iter().all(|&b| b)
    }

    pub fn ensure_connected(&self) -> Result<()> {
        match self.reachable().iter().position(|&b| !b) {
            None => Ok(()),
            Some(i) => Err(Error::Disconnected { unreachable: self.vertices[i].clone() }),
        }
    }

    /// Serializes to the line-based graph format; `parse_graph` inverts this exactly.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for GbsGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.vertices {
            writeln!(f, "vertex {v}")?;
        }
        for e in &self.edges {
            writeln!(
                f,
                "edge {} : {} -> {} [{}, {}]",
                e.name,
                self.vertices[e.origin.0],
                self.vertices[e.terminus.0],
                e.label_origin,
                e.label_terminus
            )?;
        }
        writeln!(f, "base {}", self.vertices[self.base.0])
    }
}

#[derive(Serialize)]
struct EdgeView<'a> {
    name: &'a str,
    from: &'a str,
    to: &'a str,
    labels: [String; 2],
}

#[derive(Serialize)]
struct GraphView<'a> {
    vertices: &'a [String],
    edges: Vec<EdgeView<'a>>,
    base: &'a str,
}

impl Serialize for GbsGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphView {
            vertices: &self.vertices,
            edges: self
                .edges
                .iter()
                .map(|e| EdgeView {
                    name: &e.name,
                    from: &self.vertices[e.origin.0],
                    to: &self.vertices[e.terminus.0],
                    labels: [e.label_origin.to_string(), e.label_terminus.to_string()],
                })
                .collect(),
            base: &self.vertices[self.base.0],
        }
        .serialize(s)
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

/// Parses and fully validates a graph description, connectivity included.
pub fn parse_graph(text: &str) -> Result<GbsGraph> {
    let g = parse_graph_lenient(text)?;
    g.ensure_connected()?;
    Ok(g)
}

/// Parses a graph description without requiring connectivity.
pub fn parse_graph_lenient(text: &str) -> Result<GbsGraph> {
    struct RawEdge<'t> {
        line: usize,
        name: &'t str,
        from: &'t str,
        to: &'t str,
        labels: (BigInt, BigInt),
    }

    let mut vertices: Vec<String> = Vec::new();
    let mut raw_edges: Vec<RawEdge> = Vec::new();
    let mut names: HashMap<&str, usize> = HashMap::new();
    let mut base: Option<(usize, &str)> = None;

    let syntax = |line: usize, message: &str| Error::Syntax { line, message: message.to_string() };

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (keyword, rest) = content
            .split_once(char::is_whitespace)
            .map(|(k, r)| (k, r.trim()))
            .unwrap_or((content, ""));
        match keyword {
            "vertex" => {
                if !is_identifier(rest) {
                    return Err(syntax(line, "expected `vertex <name>`"));
                }
                if names.insert(rest, line).is_some() {
                    return Err(Error::DuplicateName { line, name: rest.to_string() });
                }
                vertices.push(rest.to_string());
            }
            "edge" => {
                let (name, body) = rest
                    .split_once(':')
                    .ok_or_else(|| syntax(line, "expected `edge <name> : <from> -> <to> [<int>, <int>]`"))?;
                let name = name.trim();
                if !is_identifier(name) {
                    return Err(syntax(line, "bad edge name"));
                }
                let (from, body) =
                    body.split_once("->").ok_or_else(|| syntax(line, "expected `->`"))?;
                let (to, labels) =
                    body.split_once('[').ok_or_else(|| syntax(line, "expected `[<int>, <int>]`"))?;
                let labels = labels
                    .trim_end()
                    .strip_suffix(']')
                    .ok_or_else(|| syntax(line, "expected closing `]`"))?;
                let (p, q) =
                    labels.split_once(',').ok_or_else(|| syntax(line, "expected two labels"))?;
                let parse_label = |s: &str| {
                    s.trim()
                        .parse::<BigInt>()
                        .map_err(|_| syntax(line, &format!("bad integer label `{}`", s.trim())))
                };
                let labels = (parse_label(p)?, parse_label(q)?);
                if labels.0.is_zero() || labels.1.is_zero() {
                    return Err(Error::LabelZero { line, edge: name.to_string() });
                }
                let (from, to) = (from.trim(), to.trim());
                if !is_identifier(from) || !is_identifier(to) {
                    return Err(syntax(line, "bad vertex name"));
                }
                if names.insert(name, line).is_some() {
                    return Err(Error::DuplicateName { line, name: name.to_string() });
                }
                raw_edges.push(RawEdge { line, name, from, to, labels });
            }
            "base" => {
                if !is_identifier(rest) {
                    return Err(syntax(line, "expected `base <name>`"));
                }
                if base.is_some() {
                    return Err(syntax(line, "base declared twice"));
                }
                base = Some((line, rest));
            }
            other => return Err(syntax(line, &format!("unknown keyword `{other}`"))),
        }
    }

    if vertices.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let lookup = |line: usize, name: &str| {
        vertices
            .iter()
            .position(|v| v == name)
            .map(VertexId)
            .ok_or_else(|| Error::UnknownVertex { line, name: name.to_string() })
    };
    let mut edges = Vec::with_capacity(raw_edges.len());
    for r in &raw_edges {
        edges.push(Edge {
            name: r.name.to_string(),
            origin: lookup(r.line, r.from)?,
            terminus: lookup(r.line, r.to)?,
            label_origin: r.labels.0.clone(),
            label_terminus: r.labels.1.clone(),
        });
    }
    let base = match base {
        Some((line, name)) => lookup(line, name)?,
        None => VertexId(0),
    };
    GbsGraph::from_parts(vertices, edges, base)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub connected: bool,
    pub vertex_count: usize,
    pub edge_count: usize,
    /// Number of edges outside a spanning forest.
    pub betti: usize,
    pub base: String,
    pub unreachable: Vec<String>,
}

pub fn validate_graph(g: &GbsGraph) -> ValidationReport {
    let reach = g.reachable();
    let unreachable: Vec<String> = reach
        .iter()
        .zip(g.vertices())
        .filter(|(r, _)| !**r)
        .map(|(_, n)| n.clone())
        .collect();
    let components = count_components(g);
    ValidationReport {
        connected: unreachable.is_empty(),
        vertex_count: g.vertices.len(),
        edge_count: g.edges.len(),
        betti: g.edges.len() + components - g.vertices.len(),
        base: g.vertex_name(g.base).to_string(),
        unreachable,
    }
}

fn count_components(g: &GbsGraph) -> usize {
    let mut uf = UnionFind::<usize>::new(g.vertices.len());
    let merges = g.edges.iter().filter(|e| uf.union(e.origin.0, e.terminus.0)).count();
    g.vertices.len() - merges
}

/// Breadth-first spanning tree rooted at the base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningTree {
    in_tree: Vec<bool>,
    /// Tree edge through which each vertex was discovered (`None` for the base).
    parent_edge: Vec<Option<EdgeId>>,
    /// Discovery order, base first.
    order: Vec<VertexId>,
}

impl SpanningTree {
    pub fn contains(&self, e: EdgeId) -> bool {
        self.in_tree[e.0]
    }

    pub fn edges(&self) -> Vec<EdgeId> {
        (0..self.in_tree.len()).filter(|&i| self.in_tree[i]).map(EdgeId).collect()
    }

    pub fn parent_edge(&self, v: VertexId) -> Option<EdgeId> {
        self.parent_edge[v.0]
    }

    pub fn discovery_order(&self) -> &[VertexId] {
        &self.order
    }
}

/// Deterministic BFS tree from the base; ties go to the earliest declared edge.
pub fn spanning_tree(g: &GbsGraph) -> Result<SpanningTree> {
    g.ensure_connected()?;
    let n = g.vertices.len();
    let mut in_tree = vec![false; g.edges.len()];
    let mut parent_edge = vec![None; n];
    let mut seen = vec![false; n];
    let mut order = vec![g.base];
    let mut queue = VecDeque::from([g.base]);
    seen[g.base.0] = true;
    while let Some(u) = queue.pop_front() {
        for (i, e) in g.edges.iter().enumerate() {
            if e.is_loop() {
                continue;
            }
            let other = if e.origin == u {
                e.terminus
            } else if e.terminus == u {
                e.origin
            } else {
                continue;
            };
            if !seen[other.0] {
                seen[other.0] = true;
                in_tree[i] = true;
                parent_edge[other.0] = Some(EdgeId(i));
                order.push(other);
                queue.push_back(other);
            }
        }
    }
    Ok(SpanningTree { in_tree, parent_edge, order })
}

pub(crate) fn is_unit(x: &BigInt) -> bool {
    x.abs().is_one()
}
