//! The modular homomorphism Δ: G → ℚ*.
//!
//! For a loop `w`, Δ(w) is the product over its edge letters of
//! `(λo/λt)^{±1}`. This agrees with `p/q` from [`GbsGroup::find_commensuration`]
//! and is cross-checked against it in the tests.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::group::GbsGroup;
use crate::twisted::Automorphism;
use crate::word::{Generator, PathWord, UserWord};

/// Exact value of Δ; never zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Modulus(BigRational);

impl Modulus {
    pub fn one() -> Self {
        Modulus(BigRational::one())
    }

    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        Modulus(BigRational::new(num.into(), den.into()))
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// `|Δ| = 1`
    pub fn is_unit(&self) -> bool {
        self.0.abs().is_one()
    }

    pub fn pow(&self, k: i32) -> Self {
        Modulus(num_traits::Pow::pow(&self.0, k))
    }
}

impl std::ops::Mul for &Modulus {
    type Output = Modulus;
    fn mul(self, rhs: &Modulus) -> Modulus {
        Modulus(&self.0 * &rhs.0)
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Serialize)]
struct ModulusJson {
    num: String,
    den: String,
}

impl Serialize for Modulus {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        // BigRational keeps den > 0 and gcd(num, den) = 1
        ModulusJson { num: self.numer().to_string(), den: self.denom().to_string() }.serialize(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeltaGenerator {
    pub edge: String,
    pub modulus: Modulus,
}

/// Δ of the fundamental loop of each non-tree edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeltaImage {
    pub generators: Vec<DeltaGenerator>,
    pub unimodular: bool,
}

impl GbsGroup {
    pub fn modulus(&self, w: &PathWord) -> Modulus {
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for l in w.letters() {
            let e = self.graph().edge(l.edge);
            if l.forward {
                num *= &e.label_origin;
                den *= &e.label_terminus;
            } else {
                num *= &e.label_terminus;
                den *= &e.label_origin;
            }
        }
        Modulus::new(num, den)
    }

    pub fn delta_image_generators(&self) -> DeltaImage {
        let generators: Vec<DeltaGenerator> = self
            .stable_letters()
            .map(|e| DeltaGenerator {
                edge: self.graph().edge(e).name.clone(),
                modulus: self.modulus(&self.lift_generator(Generator::Edge(e))),
            })
            .collect();
        let unimodular = generators.iter().all(|g| g.modulus.is_unit());
        DeltaImage { generators, unimodular }
    }

    pub fn is_unimodular(&self) -> bool {
        self.delta_image_generators().unimodular
    }

    /// Δ(φ(s)) = Δ(s) on every presentation generator. Works on unvalidated
    /// candidates too, so it doubles as a quick automorphism probe.
    pub fn respects_delta(&self, phi: &Automorphism) -> bool {
        self.generators().iter().enumerate().all(|(i, s)| {
            let image: &UserWord = &phi.forward()[i];
            match self.lift(image) {
                Ok(w) => self.modulus(&w) == self.modulus(&self.lift_generator(*s)),
                Err(_) => false,
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{parse_graph, GbsGraph};

    fn bs(m: i64, n: i64) -> GbsGroup {
        GbsGroup::new(GbsGraph::baumslag_solitar(m, n).unwrap()).unwrap()
    }

    #[test]
    fn modulus_examples() {
        let g = bs(2, 3);
        assert_eq!(g.modulus(&g.parse_loop("t").unwrap()), Modulus::new(2, 3));
        assert_eq!(g.modulus(&g.parse_loop("a").unwrap()), Modulus::one());
        assert_eq!(g.modulus(&g.parse_loop("t^2").unwrap()), Modulus::new(4, 9));
        let k = bs(1, -1);
        assert_eq!(k.modulus(&k.parse_loop("t").unwrap()), Modulus::new(-1, 1));
    }

    #[test]
    fn modulus_matches_commensuration() {
        let g = bs(2, 3);
        let w = g.parse_loop("t^2").unwrap();
        let c = g.find_commensuration(&w).unwrap();
        assert_eq!(g.modulus(&w), Modulus::new(c.p, c.q));
    }

    #[test]
    fn delta_images() {
        let d = bs(2, 3).delta_image_generators();
        assert_eq!(d.generators.len(), 1);
        assert_eq!(d.generators[0].modulus, Modulus::new(2, 3));
        assert!(!d.unimodular);

        let f2z = GbsGroup::new(
            parse_graph("vertex a\nedge t1 : a -> a [1, 1]\nedge t2 : a -> a [1, 1]").unwrap(),
        )
        .unwrap();
        let d = f2z.delta_image_generators();
        assert!(d.generators.iter().all(|g| g.modulus == Modulus::one()));
        assert!(d.unimodular);

        let theta = GbsGroup::new(
            parse_graph("vertex u\nvertex v\nedge e1 : u -> v [2, 3]\nedge e2 : u -> v [5, 7]").unwrap(),
        )
        .unwrap();
        let d = theta.delta_image_generators();
        assert_eq!(d.generators[0].edge, "e2");
        assert_eq!(d.generators[0].modulus, Modulus::new(15, 14));
    }

    #[test]
    fn unimodularity() {
        assert!(bs(2, 2).is_unimodular());
        assert!(!bs(2, 3).is_unimodular());
        assert!(bs(2, -2).is_unimodular());
    }

    #[test]
    fn modulus_json_shape() {
        let json = serde_json::to_string(&Modulus::new(-4, -6)).unwrap();
        assert_eq!(json, r#"{"num":"2","den":"3"}"#);
        let json = serde_json::to_string(&Modulus::new(3, -9)).unwrap();
        assert_eq!(json, r#"{"num":"-1","den":"3"}"#);
    }
}
