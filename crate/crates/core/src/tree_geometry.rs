//! How elements act on the Bass–Serre tree.
//!
//! Translation length is read off combinatorially: it is the number of edge
//! letters in a cyclically reduced conjugate. No tree is ever built.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::error::Result;
use crate::graph::VertexId;
use crate::group::GbsGroup;
use crate::normal_form::CanonicalWord;
use crate::word::PathWord;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ElementKind {
    Elliptic,
    Hyperbolic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementClassification {
    pub kind: ElementKind,
    pub translation_length: usize,
    pub cyclic_core: CanonicalWord,
}

/// `w a^p w⁻¹ = a^q` for the base vertex generator `a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Commensuration {
    pub p: BigInt,
    pub q: BigInt,
    pub base: VertexId,
}

impl GbsGroup {
    pub fn classify_element(&self, w: &PathWord) -> Result<ElementClassification> {
        let cr = self.cyclic_reduce(w)?;
        let translation_length = cr.core.letter_count();
        let kind = if translation_length == 0 { ElementKind::Elliptic } else { ElementKind::Hyperbolic };
        Ok(ElementClassification { kind, translation_length, cyclic_core: self.canonical_form(&cr.core)? })
    }

    pub fn translation_length(&self, w: &PathWord) -> Result<usize> {
        Ok(self.classify_element(w)?.translation_length)
    }

    /// Smallest `p > 0` such that `a^p` can be pushed through `w` from the
    /// right, and the power `q` it arrives as.
    ///
    /// Crossing a letter needs its right label to divide the current exponent
    /// and multiplies the exponent by left/right; the constraints are all of
    /// the form `d | p`, so the minimal `p` is their lcm.
    pub fn find_commensuration(&self, w: &PathWord) -> Result<Commensuration> {
        assert!(w.is_loop_at(self.base()), "commensuration needs a loop at the base");
        let r = self.reduce(w)?;
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        let mut p = BigInt::one();
        for l in r.letters().collect::<Vec<_>>().into_iter().rev() {
            let (right, left) = l.labels(self.graph());
            // need right | p·num/den
            let need = (right.abs() * &den) / (right.abs() * &den).gcd(&num);
            p = p.lcm(&need);
            num *= left;
            den *= right;
            let g = num.gcd(&den);
            num /= &g;
            den /= &g;
            if den.is_negative() {
                num = -num;
                den = -den;
            }
        }
        let q = &p * &num / &den;
        self.check_exponent(&q)?;
        let a = self.base();
        let lhs = r.mul(&PathWord::vertex_power(a, p.clone())).mul(&r.inverse());
        let rhs = PathWord::vertex_power(a, q.clone());
        assert!(self.equal(&lhs, &rhs)?, "commensuration relation failed to verify");
        Ok(Commensuration { p, q, base: a })
    }
}
