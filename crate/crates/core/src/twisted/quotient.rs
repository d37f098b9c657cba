//! The free quotient of a one-vertex graph with all loops labelled (1, 1).
//!
//! There every relator says the vertex generator commutes with a loop letter,
//! so `a` is central, `G = ⟨a⟩ × F_n`, and killing `a` gives the free group on
//! the loop letters.

use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, VertexId};
use crate::group::GbsGroup;
use crate::twisted::Automorphism;
use crate::word::{Generator, PathWord};

/// Freely reduced word in syllable form: `(generator index, nonzero exponent)`
/// with adjacent generators distinct.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct FreeWord(Vec<(usize, i64)>);

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord(Vec::new())
    }

    pub fn generator(i: usize) -> Self {
        FreeWord(vec![(i, 1)])
    }

    pub fn from_syllables(it: impl IntoIterator<Item = (usize, i64)>) -> Self {
        let mut w = FreeWord::identity();
        for (g, k) in it {
            w.push(g, k);
        }
        w
    }

    pub fn push(&mut self, g: usize, k: i64) {
        if k == 0 {
            return;
        }
        match self.0.last_mut() {
            Some((h, e)) if *h == g => {
                *e += k;
                if *e == 0 {
                    self.0.pop();
                }
            }
            _ => self.0.push((g, k)),
        }
    }

    pub fn syllables(&self) -> &[(usize, i64)] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        FreeWord(self.0.iter().rev().map(|&(g, k)| (g, -k)).collect())
    }

    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        let mut w = self.clone();
        for &(g, k) in &other.0 {
            w.push(g, k);
        }
        w
    }

    /// Cyclically reduced syllable sequence.
    pub fn cyclic_core(&self) -> Vec<(usize, i64)> {
        let mut s = self.0.clone();
        while s.len() >= 2 && s[0].0 == s[s.len() - 1].0 {
            let (_, k) = s.pop().expect("nonempty");
            s[0].1 += k;
            if s[0].1 == 0 {
                s.remove(0);
            }
        }
        s
    }

    /// Exact conjugacy in the free group: cyclic cores agree up to rotation.
    pub fn is_conjugate(&self, other: &FreeWord) -> bool {
        let (a, b) = (self.cyclic_core(), other.cyclic_core());
        if a.len() != b.len() {
            return false;
        }
        a.is_empty() || (0..a.len()).any(|r| a[r..].iter().chain(&a[..r]).eq(b.iter()))
    }

    pub fn display(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        self.0
            .iter()
            .map(|&(g, k)| if k == 1 { names[g].clone() } else { format!("{}^{k}", names[g]) })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// `G → F_n`, killing the central vertex generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeQuotientMap {
    pub edges: Vec<EdgeId>,
    pub names: Vec<String>,
    pub kernel_generator: VertexId,
}

impl FreeQuotientMap {
    pub fn rank(&self) -> usize {
        self.edges.len()
    }
}

/// Induced map on the free quotient with its verified inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeAutomorphism {
    pub forward: Vec<FreeWord>,
    pub backward: Vec<FreeWord>,
}

impl FreeAutomorphism {
    pub fn apply(&self, w: &FreeWord) -> FreeWord {
        apply_free(&self.forward, w)
    }

    pub fn is_identity(&self) -> bool {
        self.forward.iter().enumerate().all(|(i, w)| *w == FreeWord::generator(i))
    }
}

fn apply_free(images: &[FreeWord], w: &FreeWord) -> FreeWord {
    let mut out = FreeWord::identity();
    for &(g, k) in w.syllables() {
        let base = if k < 0 { images[g].inverse() } else { images[g].clone() };
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NegativeControl {
    pub left: String,
    pub right: String,
    pub conjugate: bool,
    pub correct: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InducedImage {
    pub generator: String,
    pub image: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProjectionReport {
    pub automorphism_id: String,
    pub quotient_rank: usize,
    pub kernel: String,
    pub induced: Vec<InducedImage>,
    pub samples: usize,
    pub passed: usize,
    pub failed: usize,
    pub failures: Vec<usize>,
    pub induced_is_identity: bool,
    /// Sample pairs whose projections were also checked conjugate by cyclic
    /// comparison (only when the induced map is the identity).
    pub exact_conjugacy_checked: usize,
    pub exact_conjugacy_passed: usize,
    pub negative_controls: Vec<NegativeControl>,
    pub note: String,
}

impl GbsGroup {
    pub fn free_quotient(&self) -> Result<FreeQuotientMap> {
        let g = self.graph();
        if g.vertices().len() != 1 {
            return Err(Error::NotUnimodularProduct {
                reason: format!("graph has {} vertices, expected 1", g.vertices().len()),
            });
        }
        for e in g.edges() {
            if !(e.label_origin.is_one() && e.label_terminus.is_one()) {
                return Err(Error::NotUnimodularProduct {
                    reason: format!("edge `{}` is labelled [{}, {}], expected [1, 1]", e.name, e.label_origin, e.label_terminus),
                });
            }
        }
        let edges: Vec<EdgeId> = (0..g.edges().len()).map(EdgeId).collect();
        let names = (1..=edges.len()).map(|i| format!("x{i}")).collect();
        Ok(FreeQuotientMap { edges, names, kernel_generator: g.base() })
    }

    pub fn project_word(&self, q: &FreeQuotientMap, w: &PathWord) -> FreeWord {
        FreeWord::from_syllables(w.letters().map(|l| {
            let i = q.edges.iter().position(|&e| e == l.edge).expect("quotient covers every edge");
            (i, if l.forward { 1 } else { -1 })
        }))
    }

    pub fn induced_automorphism(&self, q: &FreeQuotientMap, phi: &Automorphism) -> Result<FreeAutomorphism> {
        let mut forward = vec![FreeWord::identity(); q.rank()];
        let mut backward = vec![FreeWord::identity(); q.rank()];
        for (i, s) in self.generators().iter().enumerate() {
            let there = self.project_word(q, &self.lift(&phi.forward()[i])?);
            let back = self.project_word(q, &self.lift(&phi.backward()[i])?);
            match s {
                Generator::Vertex(_) => {
                    for image in [&there, &back] {
                        if !image.is_identity() {
                            return Err(Error::KernelNotPreserved {
                                generator: self.generator_name(*s).to_string(),
                                image: image.display(&q.names),
                            });
                        }
                    }
                }
                Generator::Edge(e) => {
                    let j = q.edges.iter().position(|x| x == e).expect("quotient covers every edge");
                    forward[j] = there;
                    backward[j] = back;
                }
            }
        }
        for j in 0..q.rank() {
            let x = FreeWord::generator(j);
            if apply_free(&backward, &forward[j]) != x || apply_free(&forward, &backward[j]) != x {
                return Err(Error::InverseCheckFailed {
                    generator: self.graph().edge(q.edges[j]).name.clone(),
                });
            }
        }
        Ok(FreeAutomorphism { forward, backward })
    }

    /// Samples `g₂ = h g₁ φ(h)⁻¹` and checks that the projected witness
    /// conjugates the projections in the free quotient. Sampled words are
    /// loops with at most `radius` edge letters.
    pub fn projection_soundness(
        &self,
        q: &FreeQuotientMap,
        phi: &Automorphism,
        samples: usize,
        seed: u64,
        radius: usize,
    ) -> Result<ProjectionReport> {
        let bar = self.induced_automorphism(q, phi)?;
        let identity = bar.is_identity();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (mut passed, mut exact_checked, mut exact_passed) = (0, 0, 0);
        let mut failures = Vec::new();
        for i in 0..samples {
            let g1 = self.random_word_with(&mut rng, radius);
            let h = self.random_word_with(&mut rng, radius);
            let g2 = self.twisted_conjugate(&h, &g1, phi)?;
            let (ph, p1, p2) = (self.project_word(q, &h), self.project_word(q, &g1), self.project_word(q, &g2));
            let moved = ph.mul(&p1).mul(&bar.apply(&ph).inverse());
            if moved == p2 {
                passed += 1;
            } else {
                failures.push(i);
            }
            if identity {
                exact_checked += 1;
                if p1.is_conjugate(&p2) {
                    exact_passed += 1;
                }
            }
        }

        let mut negative_controls = Vec::new();
        let mut control = |u: FreeWord, v: FreeWord| {
            let conjugate = u.is_conjugate(&v);
            negative_controls.push(NegativeControl {
                left: u.display(&q.names),
                right: v.display(&q.names),
                conjugate,
                correct: !conjugate,
            });
        };
        for i in 0..q.rank() {
            for j in i + 1..q.rank() {
                control(FreeWord::generator(i), FreeWord::generator(j));
            }
            control(FreeWord::generator(i), FreeWord::generator(i).inverse());
        }

        Ok(ProjectionReport {
            automorphism_id: phi.id().to_string(),
            quotient_rank: q.rank(),
            kernel: self.graph().vertex_name(q.kernel_generator).to_string(),
            induced: bar
                .forward
                .iter()
                .enumerate()
                .map(|(j, w)| InducedImage { generator: q.names[j].clone(), image: w.display(&q.names) })
                .collect(),
            samples,
            passed,
            failed: failures.len(),
            failures,
            induced_is_identity: identity,
            exact_conjugacy_checked: exact_checked,
            exact_conjugacy_passed: exact_passed,
            negative_controls,
            note: "negative controls use the identity on the quotient; the quotient is free of positive rank, \
                   so the finite-quotient case does not arise"
                .into(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{parse_graph, GbsGraph};

    const F2Z: &str = "vertex a\nedge t1 : a -> a [1, 1]\nedge t2 : a -> a [1, 1]";
    const SWAP: &str = "map a -> a\nmap t1 -> t2\nmap t2 -> t1\ninv a -> a\ninv t1 -> t2\ninv t2 -> t1";

    fn f2z() -> GbsGroup {
        GbsGroup::new(parse_graph(F2Z).unwrap()).unwrap()
    }

    #[test]
    fn free_words() {
        let w = FreeWord::from_syllables([(0, 2), (1, 1), (1, -1), (0, -2)]);
        assert!(w.is_identity());
        let x = FreeWord::from_syllables([(0, 1), (1, 2), (0, -1)]);
        assert!(x.is_conjugate(&FreeWord::from_syllables([(1, 2)])));
        assert!(!FreeWord::generator(0).is_conjugate(&FreeWord::generator(1)));
        let y = FreeWord::from_syllables([(0, 1), (1, 1)]);
        assert!(y.is_conjugate(&FreeWord::from_syllables([(1, 1), (0, 1)])));
        assert!(!y.is_conjugate(&FreeWord::from_syllables([(0, 1), (1, -1)])));
    }

    #[test]
    fn quotient_preconditions() {
        let g = f2z();
        let q = g.free_quotient().unwrap();
        assert_eq!(q.rank(), 2);
        let z2 = GbsGroup::new(GbsGraph::baumslag_solitar(1, 1).unwrap()).unwrap();
        assert_eq!(z2.free_quotient().unwrap().rank(), 1);
        let bs = GbsGroup::new(GbsGraph::baumslag_solitar(2, 3).unwrap()).unwrap();
        assert!(matches!(bs.free_quotient(), Err(Error::NotUnimodularProduct { .. })));
    }

    #[test]
    fn projections() {
        let g = f2z();
        let q = g.free_quotient().unwrap();
        let p = |s: &str| g.project_word(&q, &g.parse_loop(s).unwrap()).display(&q.names);
        assert_eq!(p("a^5"), "1");
        assert_eq!(p("t1 a t2"), "x1 x2");
        assert_eq!(p("t1 t1^-1"), "1");
    }

    #[test]
    fn induced_maps() {
        let g = f2z();
        let q = g.free_quotient().unwrap();
        let swap = g.validate_candidate(g.parse_automorphism(SWAP).unwrap()).unwrap();
        let bar = g.induced_automorphism(&q, &swap).unwrap();
        assert_eq!(bar.forward, vec![FreeWord::generator(1), FreeWord::generator(0)]);
        assert!(g.induced_automorphism(&q, &g.identity_automorphism()).unwrap().is_identity());

        let shear = g
            .validate_candidate(
                g.parse_automorphism("map a -> a\nmap t1 -> t1 a\nmap t2 -> t2\ninv a -> a\ninv t1 -> t1 a^-1\ninv t2 -> t2")
                    .unwrap(),
            )
            .unwrap();
        assert!(g.induced_automorphism(&q, &shear).unwrap().is_identity());
    }

    #[test]
    fn kernel_must_be_preserved() {
        let g = f2z();
        let q = g.free_quotient().unwrap();
        let bad = g.parse_automorphism("map a -> t1\nmap t1 -> a\nmap t2 -> t2\ninv a -> t1\ninv t1 -> a\ninv t2 -> t2").unwrap();
        assert!(matches!(g.induced_automorphism(&q, &bad), Err(Error::KernelNotPreserved { .. })));
    }

    #[test]
    fn soundness_on_swap() {
        let g = f2z();
        let q = g.free_quotient().unwrap();
        let swap = g.validate_candidate(g.parse_automorphism(SWAP).unwrap()).unwrap();
        let r = g.projection_soundness(&q, &swap, 200, 7, 6).unwrap();
        assert_eq!((r.passed, r.failed), (200, 0));
        assert!(!r.induced_is_identity);
        assert!(r.negative_controls.iter().all(|c| c.correct));
        assert_eq!(r.negative_controls[0].left, "x1");
        assert_eq!(r.negative_controls[0].right, "x2");
    }

    #[test]
    fn soundness_on_identity_checks_conjugacy() {
        let g = GbsGroup::new(GbsGraph::baumslag_solitar(1, 1).unwrap()).unwrap();
        let q = g.free_quotient().unwrap();
        let r = g.projection_soundness(&q, &g.identity_automorphism(), 50, 1, 5).unwrap();
        assert_eq!(r.passed, 50);
        assert_eq!(r.exact_conjugacy_passed, 50);
    }
}
