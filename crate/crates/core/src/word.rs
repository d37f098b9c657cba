//! Words: user-facing words over the presentation generators, and path words
//! over vertex powers and edge letters.
//!
//! Path convention: walking the letter `e` (forward) moves from `t(e)` to
//! `o(e)`, so in `e a^k` the power `a^k` lies in the vertex group at `o(e)` and
//! the defining relation reads `e a_o^{λo} e^-1 = a_t^{λt}`. Walking `e^-1`
//! moves from `o(e)` to `t(e)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::graph::{EdgeId, GbsGraph, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    /// `a_v`, generator of the vertex group at `v`.
    Vertex(VertexId),
    /// Stable letter of a non-tree edge.
    Edge(EdgeId),
}

/// Word over presentation generators, kept syllable-reduced: no zero
/// exponents, no two adjacent syllables on the same generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct UserWord {
    syllables: Vec<(Generator, BigInt)>,
}

impl UserWord {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_syllables<I, E>(it: I) -> Self
    where
        I: IntoIterator<Item = (Generator, E)>,
        E: Into<BigInt>,
    {
        let mut w = Self::new();
        for (g, k) in it {
            w.push(g, k.into());
        }
        w
    }

    pub fn generator(g: Generator) -> Self {
        Self::from_syllables([(g, 1)])
    }

    pub fn push(&mut self, g: Generator, k: BigInt) {
        if k.is_zero() {
            return;
        }
        if let Some((last, e)) = self.syllables.last_mut() {
            if *last == g {
                *e += k;
                if e.is_zero() {
                    self.syllables.pop();
                }
                return;
            }
        }
        self.syllables.push((g, k));
    }

    pub fn syllables(&self) -> &[(Generator, BigInt)] {
        &self.syllables
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn inverse(&self) -> Self {
        Self { syllables: self.syllables.iter().rev().map(|(g, k)| (*g, -k)).collect() }
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut w = self.clone();
        for (g, k) in &other.syllables {
            w.push(*g, k.clone());
        }
        w
    }
}

/// A signed edge letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub edge: EdgeId,
    pub forward: bool,
}

impl Letter {
    pub fn new(edge: EdgeId, forward: bool) -> Self {
        Letter { edge, forward }
    }

    pub fn inverse(self) -> Self {
        Letter { edge: self.edge, forward: !self.forward }
    }

    pub fn source(self, g: &GbsGraph) -> VertexId {
        let e = g.edge(self.edge);
        if self.forward { e.terminus } else { e.origin }
    }

    pub fn target(self, g: &GbsGraph) -> VertexId {
        let e = g.edge(self.edge);
        if self.forward { e.origin } else { e.terminus }
    }

    /// `(right, left)` labels: a power to the right of this letter can be moved
    /// across it in multiples of `right`, arriving as the same multiple of `left`.
    pub fn labels(self, g: &GbsGraph) -> (&BigInt, &BigInt) {
        let e = g.edge(self.edge);
        if self.forward {
            (&e.label_origin, &e.label_terminus)
        } else {
            (&e.label_terminus, &e.label_origin)
        }
    }
}

/// `a^{k0} x1 a^{k1} ... xn a^{kn}`: a path in the graph from `start` to `end`
/// whose vertex-group powers sit between the edge letters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PathWord {
    start: VertexId,
    end: VertexId,
    head: BigInt,
    tail: Vec<(Letter, BigInt)>,
}

impl PathWord {
    pub fn identity(at: VertexId) -> Self {
        PathWord { start: at, end: at, head: BigInt::zero(), tail: Vec::new() }
    }

    pub fn vertex_power(at: VertexId, k: impl Into<BigInt>) -> Self {
        PathWord { start: at, end: at, head: k.into(), tail: Vec::new() }
    }

    pub fn letter(g: &GbsGraph, l: Letter) -> Self {
        PathWord {
            start: l.source(g),
            end: l.target(g),
            head: BigInt::zero(),
            tail: vec![(l, BigInt::zero())],
        }
    }

    /// Builds a path word, returning `None` if the letters do not form a path.
    pub fn from_parts(
        g: &GbsGraph,
        start: VertexId,
        head: BigInt,
        tail: Vec<(Letter, BigInt)>,
    ) -> Option<Self> {
        let mut at = start;
        for (l, _) in &tail {
            if l.source(g) != at {
                return None;
            }
            at = l.target(g);
        }
        Some(PathWord { start, end: at, head, tail })
    }

    pub(crate) fn from_raw(
        start: VertexId,
        end: VertexId,
        head: BigInt,
        tail: Vec<(Letter, BigInt)>,
    ) -> Self {
        PathWord { start, end, head, tail }
    }

    pub fn start(&self) -> VertexId {
        self.start
    }

    pub fn end(&self) -> VertexId {
        self.end
    }

    pub fn head(&self) -> &BigInt {
        &self.head
    }

    pub fn tail(&self) -> &[(Letter, BigInt)] {
        &self.tail
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.tail.iter().map(|(l, _)| *l)
    }

    pub fn letter_count(&self) -> usize {
        self.tail.len()
    }

    pub fn is_loop_at(&self, v: VertexId) -> bool {
        self.start == v && self.end == v
    }

    /// No letters and a zero exponent.
    pub fn is_empty(&self) -> bool {
        self.tail.is_empty() && self.head.is_zero()
    }

    /// Exponent at position `i` (0 is the head).
    pub fn exponent(&self, i: usize) -> &BigInt {
        if i == 0 { &self.head } else { &self.tail[i - 1].1 }
    }

    /// Vertex at which each exponent sits, head first.
    pub fn vertices(&self, g: &GbsGraph) -> Vec<VertexId> {
        std::iter::once(self.start).chain(self.tail.iter().map(|(l, _)| l.target(g))).collect()
    }

    pub fn is_valid(&self, g: &GbsGraph) -> bool {
        let mut at = self.start;
        for (l, _) in &self.tail {
            if l.edge.0 >= g.edges().len() || l.source(g) != at {
                return false;
            }
            at = l.target(g);
        }
        at == self.end
    }

    pub fn inverse(&self) -> Self {
        let n = self.tail.len();
        let mut tail = Vec::with_capacity(n);
        let head = -self.exponent(n);
        for i in (0..n).rev() {
            tail.push((self.tail[i].0.inverse(), -self.exponent(i)));
        }
        PathWord { start: self.end, end: self.start, head, tail }
    }

    /// Concatenation; panics if `self` does not end where `other` starts.
    pub fn mul(&self, other: &PathWord) -> PathWord {
        assert_eq!(self.end, other.start, "path words do not compose");
        let mut out = self.clone();
        out.append(other);
        out
    }

    pub fn append(&mut self, other: &PathWord) {
        assert_eq!(self.end, other.start, "path words do not compose");
        match self.tail.last_mut() {
            Some((_, k)) => *k += &other.head,
            None => self.head += &other.head,
        }
        self.tail.extend(other.tail.iter().cloned());
        self.end = other.end;
    }

    pub fn push_letter(&mut self, g: &GbsGraph, l: Letter) {
        assert_eq!(l.source(g), self.end, "letter does not continue the path");
        self.tail.push((l, BigInt::zero()));
        self.end = l.target(g);
    }

    pub fn push_power(&mut self, k: &BigInt) {
        match self.tail.last_mut() {
            Some((_, e)) => *e += k,
            None => self.head += k,
        }
    }

    /// Formats in the token syntax: vertex names for vertex powers, edge names
    /// for letters, runs of one loop letter folded into a single power.
    pub fn display(&self, g: &GbsGraph) -> String {
        let mut out: Vec<String> = Vec::new();
        let power = |name: &str, k: &BigInt| {
            if k.is_one() { name.to_string() } else { format!("{name}^{k}") }
        };
        if !self.head.is_zero() {
            out.push(power(g.vertex_name(self.start), &self.head));
        }
        let mut i = 0;
        while i < self.tail.len() {
            let (l, _) = self.tail[i];
            let mut run = 1usize;
            while i + run < self.tail.len()
                && self.tail[i + run - 1].1.is_zero()
                && self.tail[i + run].0 == l
            {
                run += 1;
            }
            let signed = if l.forward { run as i64 } else { -(run as i64) };
            out.push(power(&g.edge(l.edge).name, &BigInt::from(signed)));
            let k = &self.tail[i + run - 1].1;
            if !k.is_zero() {
                out.push(power(g.vertex_name(l.target(g)), k));
            }
            i += run;
        }
        if out.is_empty() { "1".to_string() } else { out.join(" ") }
    }
}
