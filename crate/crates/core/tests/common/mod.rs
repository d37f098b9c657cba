#![allow(dead_code)]

use gbskit_core::{parse_graph, EdgeId, GbsGraph, GbsGroup, Generator, PathWord, UserWord, VertexId};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub const BS23: &str = "vertex a\nedge t : a -> a [2, 3]\n";
pub const BS12: &str = "vertex a\nedge t : a -> a [1, 2]\n";
pub const F2XZ: &str = "vertex a\nedge t1 : a -> a [1, 1]\nedge t2 : a -> a [1, 1]\n";
pub const THETA: &str = "vertex u\nvertex v\nedge e1 : u -> v [2, 3]\nedge e2 : u -> v [5, 7]\n";
pub const Z: &str = "vertex a\n";

pub fn group(text: &str) -> GbsGroup {
    GbsGroup::new(parse_graph(text).unwrap()).unwrap()
}

pub fn bs(m: i64, n: i64) -> GbsGroup {
    GbsGroup::new(GbsGraph::baumslag_solitar(m, n).unwrap()).unwrap()
}

pub fn named_groups() -> Vec<(&'static str, GbsGroup)> {
    vec![("BS(2,3)", group(BS23)), ("BS(1,2)", group(BS12)), ("F2xZ", group(F2XZ)), ("theta", group(THETA))]
}

/// `x ↦ scale·x + shift`, composed as 2×2 matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Affine {
    pub scale: BigRational,
    pub shift: BigRational,
}

impl Affine {
    pub fn identity() -> Self {
        Affine { scale: BigRational::one(), shift: BigRational::zero() }
    }

    pub fn compose(&self, rhs: &Affine) -> Affine {
        Affine { scale: &self.scale * &rhs.scale, shift: &self.scale * &rhs.shift + &self.shift }
    }

    pub fn inverse(&self) -> Affine {
        let scale = self.scale.recip();
        Affine { shift: -(&scale * &self.shift), scale }
    }

    pub fn pow(&self, k: &BigInt) -> Affine {
        let (base, n) = if k < &BigInt::zero() { (self.inverse(), -k) } else { (self.clone(), k.clone()) };
        let mut out = Affine::identity();
        let mut i = BigInt::zero();
        while i < n {
            out = out.compose(&base);
            i += 1;
        }
        out
    }
}

/// Representation `a_v ↦ x + c_v`, `t_e ↦ r_e·x` into the affine group of ℚ.
///
/// Tree relators force `c_o λo = c_t λt`; stable-letter relators force
/// `r_e c_o λo = c_t λt`. Every relator maps to the identity, so this is a
/// homomorphism for any graph; it is faithful on BS(1, n).
pub struct AffineOracle {
    shift: Vec<BigRational>,
    scale: Vec<BigRational>,
}

impl AffineOracle {
    pub fn new(g: &GbsGroup) -> Self {
        let graph = g.graph();
        let n = graph.vertices().len();
        let mut shift: Vec<Option<BigRational>> = vec![None; n];
        shift[g.base().0] = Some(BigRational::one());
        let mut changed = true;
        while changed {
            changed = false;
            for (i, e) in graph.edges().iter().enumerate() {
                if !g.tree().contains(EdgeId(i)) {
                    continue;
                }
                let (o, t) = (e.origin.0, e.terminus.0);
                let lo = BigRational::from(e.label_origin.clone());
                let lt = BigRational::from(e.label_terminus.clone());
                if shift[o].is_some() && shift[t].is_none() {
                    shift[t] = Some(shift[o].clone().unwrap() * lo / lt);
                    changed = true;
                } else if shift[t].is_some() && shift[o].is_none() {
                    shift[o] = Some(shift[t].clone().unwrap() * lt / lo);
                    changed = true;
                }
            }
        }
        let shift: Vec<BigRational> = shift.into_iter().map(|c| c.expect("tree spans")).collect();
        let scale = graph
            .edges()
            .iter()
            .map(|e| {
                let lo = BigRational::from(e.label_origin.clone());
                let lt = BigRational::from(e.label_terminus.clone());
                &shift[e.terminus.0] * lt / (&shift[e.origin.0] * lo)
            })
            .collect();
        AffineOracle { shift, scale }
    }

    pub fn generator(&self, s: Generator) -> Affine {
        match s {
            Generator::Vertex(VertexId(v)) => Affine { scale: BigRational::one(), shift: self.shift[v].clone() },
            Generator::Edge(EdgeId(e)) => Affine { scale: self.scale[e].clone(), shift: BigRational::zero() },
        }
    }

    pub fn eval_user(&self, w: &UserWord) -> Affine {
        w.syllables().iter().fold(Affine::identity(), |acc, (s, k)| acc.compose(&self.generator(*s).pow(k)))
    }

    pub fn eval(&self, g: &GbsGroup, w: &PathWord) -> Affine {
        self.eval_user(&g.to_user_word(w))
    }
}
