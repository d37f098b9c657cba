//! The fundamental group of a [`GbsGraph`] at its base vertex.
//!
//! [`GbsGroup`] bundles the graph with its spanning tree, the tree paths from
//! the base to every vertex, and the arithmetic caps. All word algorithms hang
//! off it.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::graph::{spanning_tree, EdgeId, GbsGraph, SpanningTree, VertexId};
use crate::word::{Generator, Letter, PathWord, UserWord};

/// Default cap on exponent size, in decimal digits.
pub const DEFAULT_MAX_DIGITS: usize = 1 << 20;
/// Default cap on the number of conjugators enumerated in a ball.
pub const DEFAULT_MAX_BALL: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_digits: usize,
    pub max_ball: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_digits: DEFAULT_MAX_DIGITS, max_ball: DEFAULT_MAX_BALL }
    }
}

impl Limits {
    fn max_bits(&self) -> u64 {
        // log2(10) < 3.33
        (self.max_digits as u64).saturating_mul(333) / 100 + 1
    }
}

/// Generators and relators of the spanning-tree presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<Generator>,
    pub relators: Vec<UserWord>,
}

#[derive(Debug, Clone)]
pub struct GbsGroup {
    graph: GbsGraph,
    tree: SpanningTree,
    /// Tree path from the base to each vertex.
    tree_paths: Vec<PathWord>,
    generators: Vec<Generator>,
    limits: Limits,
}

impl GbsGroup {
    pub fn new(graph: GbsGraph) -> Result<Self> {
        let tree = spanning_tree(&graph)?;
        let base = graph.base();
        let mut tree_paths = vec![PathWord::identity(base); graph.vertices().len()];
        for &v in tree.discovery_order().iter().skip(1) {
            let e = tree.parent_edge(v).expect("non-base vertex has a parent edge");
            let edge = graph.edge(e);
            let parent = if edge.origin == v { edge.terminus } else { edge.origin };
            // walking e forward goes terminus -> origin
            let letter = Letter::new(e, edge.origin == v);
            let mut p = tree_paths[parent.0].clone();
            p.push_letter(&graph, letter);
            tree_paths[v.0] = p;
        }
        let generators = (0..graph.vertices().len())
            .map(|i| Generator::Vertex(VertexId(i)))
            .chain(
                (0..graph.edges().len())
                    .filter(|&i| !tree.contains(EdgeId(i)))
                    .map(|i| Generator::Edge(EdgeId(i))),
            )
            .collect();
        Ok(GbsGroup { graph, tree, tree_paths, generators, limits: Limits::default() })
    }

    pub fn with_limits(mut self, limits: Limits) -> Self {
        self.limits = limits;
        self
    }

    pub fn graph(&self) -> &GbsGraph {
        &self.graph
    }

    pub fn tree(&self) -> &SpanningTree {
        &self.tree
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    pub fn base(&self) -> VertexId {
        self.graph.base()
    }

    /// Presentation generators: vertex generators, then non-tree edge letters,
    /// each in declaration order.
    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn stable_letters(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.generators.iter().filter_map(|g| match g {
            Generator::Edge(e) => Some(*e),
            Generator::Vertex(_) => None,
        })
    }

    pub fn generator_name(&self, g: Generator) -> &str {
        match g {
            Generator::Vertex(v) => self.graph.vertex_name(v),
            Generator::Edge(e) => &self.graph.edge(e).name,
        }
    }

    pub fn generator_by_name(&self, name: &str) -> Option<Generator> {
        self.generators.iter().copied().find(|&g| self.generator_name(g) == name)
    }

    pub fn identity(&self) -> PathWord {
        PathWord::identity(self.base())
    }

    /// Path from the base to `v` inside the spanning tree.
    pub fn tree_path(&self, v: VertexId) -> &PathWord {
        &self.tree_paths[v.0]
    }

    pub(crate) fn check_exponent(&self, k: &BigInt) -> Result<()> {
        if k.bits() > self.limits.max_bits() {
            Err(Error::ExponentOverflow { max_digits: self.limits.max_digits })
        } else {
            Ok(())
        }
    }

    /// Loop at the base representing a single presentation generator.
    pub fn lift_generator(&self, g: Generator) -> PathWord {
        match g {
            Generator::Vertex(v) => {
                let p = &self.tree_paths[v.0];
                let mut w = p.clone();
                w.push_power(&BigInt::one());
                w.mul(&p.inverse())
            }
            Generator::Edge(e) => {
                let edge = self.graph.edge(e);
                let mut w = self.tree_paths[edge.terminus.0].clone();
                w.push_letter(&self.graph, Letter::new(e, true));
                w.mul(&self.tree_paths[edge.origin.0].inverse())
            }
        }
    }

    /// Lifts `g^k` for an arbitrary integer `k`, without repeating the word.
    fn lift_generator_power(&self, g: Generator, k: &BigInt) -> PathWord {
        match g {
            Generator::Vertex(v) => {
                let p = &self.tree_paths[v.0];
                let mut w = p.clone();
                w.push_power(k);
                w.mul(&p.inverse())
            }
            Generator::Edge(_) => {
                let one = self.lift_generator(g);
                let unit = if k.sign() == num_bigint::Sign::Minus { one.inverse() } else { one };
                let reps: usize = k.magnitude().try_into().unwrap_or(usize::MAX);
                let mut w = self.identity();
                for _ in 0..reps {
                    w.append(&unit);
                }
                w
            }
        }
    }

    fn check_generator(&self, g: Generator, position: usize) -> Result<()> {
        match g {
            Generator::Vertex(v) if v.0 < self.graph.vertices().len() => Ok(()),
            Generator::Edge(e) if e.0 < self.graph.edges().len() => {
                if self.tree.contains(e) {
                    Err(Error::TreeEdgeLetterUsed { position, edge: self.graph.edge(e).name.clone() })
                } else {
                    Ok(())
                }
            }
            _ => Err(Error::UnknownGenerator { position, token: format!("{g:?}") }),
        }
    }

    /// Rewrites a word in the presentation generators as a loop at the base.
    pub fn lift(&self, w: &UserWord) -> Result<PathWord> {
        let mut out = self.identity();
        for (i, (g, k)) in w.syllables().iter().enumerate() {
            self.check_generator(*g, i + 1)?;
            if let Generator::Edge(_) = g {
                if k.bits() > 32 {
                    return Err(Error::ExponentOverflow { max_digits: self.limits.max_digits });
                }
            }
            self.check_exponent(k)?;
            out.append(&self.lift_generator_power(*g, k));
        }
        Ok(out)
    }

    /// Reads a loop at the base back in the presentation generators: tree
    /// letters vanish, vertex powers become `a_v^k`, stable letters stay.
    pub fn to_user_word(&self, w: &PathWord) -> UserWord {
        assert!(w.is_loop_at(self.base()), "expected a loop at the base");
        let mut out = UserWord::new();
        out.push(Generator::Vertex(w.start()), w.head().clone());
        for (l, k) in w.tail() {
            if !self.tree.contains(l.edge) {
                out.push(Generator::Edge(l.edge), if l.forward { 1 } else { -1 }.into());
            }
            out.push(Generator::Vertex(l.target(&self.graph)), k.clone());
        }
        out
    }

    /// The presentation: one relator per edge.
    ///
    /// Stable letter `t_e`: `t_e a_o^{λo} t_e^-1 a_t^{-λt}`; tree edge:
    /// `a_o^{λo} a_t^{-λt}`.
    pub fn presentation(&self) -> Presentation {
        let relators = self
            .graph
            .edges()
            .iter()
            .enumerate()
            .map(|(i, e)| {
                let a_o = Generator::Vertex(e.origin);
                let a_t = Generator::Vertex(e.terminus);
                if self.tree.contains(EdgeId(i)) {
                    UserWord::from_syllables([
                        (a_o, e.label_origin.clone()),
                        (a_t, -&e.label_terminus),
                    ])
                } else {
                    let t = Generator::Edge(EdgeId(i));
                    UserWord::from_syllables([
                        (t, BigInt::one()),
                        (a_o, e.label_origin.clone()),
                        (t, -BigInt::one()),
                        (a_t, -&e.label_terminus),
                    ])
                }
            })
            .collect();
        Presentation { generators: self.generators.clone(), relators }
    }

    pub fn format_user_word(&self, w: &UserWord) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        w.syllables()
            .iter()
            .map(|(g, k)| {
                let name = self.generator_name(*g);
                if k.is_one() { name.to_string() } else { format!("{name}^{k}") }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn format_path(&self, w: &PathWord) -> String {
        w.display(&self.graph)
    }

    /// Parses whitespace-separated `<gen>` / `<gen>^<int>` tokens over the
    /// presentation generators. `1` denotes the identity.
    pub fn parse_user_word(&self, text: &str) -> Result<UserWord> {
        let mut w = UserWord::new();
        for (i, (name, k)) in tokens(text)?.into_iter().enumerate() {
            let position = i + 1;
            if name == "1" {
                continue;
            }
            self.check_exponent(&k)?;
            if let Some(v) = self.graph.vertex_id(name) {
                w.push(Generator::Vertex(v), k);
            } else if let Some(e) = self.graph.edge_id(name) {
                self.check_generator(Generator::Edge(e), position)?;
                w.push(Generator::Edge(e), k);
            } else {
                return Err(Error::UnknownGenerator { position, token: name.to_string() });
            }
        }
        Ok(w)
    }

    /// Parses a path word in the same token syntax, starting at `start`. Vertex
    /// tokens must name the vertex the path is currently at; edge tokens are
    /// letters (tree edges included), `e^-1` walking backwards.
    pub fn parse_path(&self, text: &str, start: VertexId) -> Result<PathWord> {
        let mut w = PathWord::identity(start);
        for (i, (name, k)) in tokens(text)?.into_iter().enumerate() {
            let position = i + 1;
            if name == "1" {
                continue;
            }
            self.check_exponent(&k)?;
            if let Some(v) = self.graph.vertex_id(name) {
                if v != w.end() {
                    return Err(Error::InvalidPath {
                        position,
                        token: name.to_string(),
                        at: self.graph.vertex_name(w.end()).to_string(),
                    });
                }
                w.push_power(&k);
            } else if let Some(e) = self.graph.edge_id(name) {
                let l = Letter::new(e, k.sign() != num_bigint::Sign::Minus);
                let reps: usize = k
                    .magnitude()
                    .try_into()
                    .ok()
                    .filter(|&r: &usize| r <= crate::normal_form::MAX_POWER_LETTERS)
                    .ok_or(Error::ExponentOverflow { max_digits: self.limits.max_digits })?;
                for _ in 0..reps {
                    if l.source(&self.graph) != w.end() {
                        return Err(Error::InvalidPath {
                            position,
                            token: name.to_string(),
                            at: self.graph.vertex_name(w.end()).to_string(),
                        });
                    }
                    w.push_letter(&self.graph, l);
                }
            } else {
                return Err(Error::UnknownGenerator { position, token: name.to_string() });
            }
        }
        Ok(w)
    }

    /// Parses a path that must be a loop at the base.
    pub fn parse_loop(&self, text: &str) -> Result<PathWord> {
        let w = self.parse_path(text, self.base())?;
        if w.end() != self.base() {
            return Err(Error::InvalidPath {
                position: 0,
                token: text.trim().to_string(),
                at: self.graph.vertex_name(w.end()).to_string(),
            });
        }
        Ok(w)
    }
}

fn tokens(text: &str) -> Result<Vec<(&str, BigInt)>> {
    text.split_whitespace()
        .enumerate()
        .map(|(i, tok)| {
            let bad = || Error::BadToken { position: i + 1, token: tok.to_string() };
            let (name, k) = match tok.split_once('^') {
                Some((n, e)) => (n, e.parse::<BigInt>().map_err(|_| bad())?),
                None => (tok, BigInt::one()),
            };
            if name != "1" && !crate::graph::is_identifier(name) {
                return Err(bad());
            }
            Ok((name, k))
        })
        .collect()
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} generators, {} relators", self.generators.len(), self.relators.len())
    }
}

impl Presentation {
    pub fn display(&self, g: &GbsGroup) -> String {
        let gens: Vec<&str> = self.generators.iter().map(|x| g.generator_name(*x)).collect();
        let rels: Vec<String> = self.relators.iter().map(|r| g.format_user_word(r)).collect();
        format!("<{} | {}>", gens.join(", "), rels.join(", "))
    }
}
