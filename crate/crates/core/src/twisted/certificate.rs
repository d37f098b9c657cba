//! Reidemeister lower bounds from the modular homomorphism.
//!
//! Twisted-conjugate elements have equal modulus whenever φ respects Δ, so
//! distinct moduli certify distinct twisted classes.

use num_bigint::BigInt;
use serde::ser::SerializeMap;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::GbsGroup;
use crate::modular::Modulus;
use crate::normal_form::CanonicalWord;
use crate::twisted::Automorphism;
use crate::word::{Generator, PathWord};

/// Powers `k = 1..=FAMILY_SIZE` listed in an R∞ certificate.
pub const FAMILY_SIZE: u32 = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CertificateKind {
    NonUnimodularRInfinity,
    ModulusLowerBound,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub element: CanonicalWord,
    pub element_text: String,
    pub modulus: Modulus,
    /// `(k, Δ(element^k))`, pairwise distinct moduli.
    pub family_checked: Vec<(u32, Modulus)>,
    pub automorphism_id: String,
}

#[derive(Serialize)]
struct FamilyEntry<'a> {
    k: u32,
    modulus: &'a Modulus,
}

#[derive(Serialize)]
struct CertificateJson<'a> {
    kind: CertificateKind,
    element: &'a str,
    modulus: &'a Modulus,
    family_checked: Vec<FamilyEntry<'a>>,
    automorphism_id: &'a str,
}

impl Serialize for Certificate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CertificateJson {
            kind: self.kind,
            element: &self.element_text,
            modulus: &self.modulus,
            family_checked: self.family_checked.iter().map(|(k, m)| FamilyEntry { k: *k, modulus: m }).collect(),
            automorphism_id: &self.automorphism_id,
        }
        .serialize(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NotFoundReason {
    Unimodular,
    DeltaNotRespected,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertificateOutcome {
    Found(Certificate),
    NotFound(NotFoundReason),
}

impl CertificateOutcome {
    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            CertificateOutcome::Found(c) => Some(c),
            CertificateOutcome::NotFound(_) => None,
        }
    }
}

impl Serialize for CertificateOutcome {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            CertificateOutcome::Found(c) => c.serialize(s),
            CertificateOutcome::NotFound(reason) => {
                let mut m = s.serialize_map(Some(2))?;
                m.serialize_entry("status", "not_found")?;
                m.serialize_entry("reason", reason)?;
                m.end()
            }
        }
    }
}

impl GbsGroup {
    /// Number of distinct moduli among `elements`, with the distinct values in
    /// first-seen order. A lower bound for the number of φ-twisted classes.
    pub fn modulus_class_count(&self, phi: &Automorphism, elements: &[PathWord]) -> Result<(usize, Vec<Modulus>)> {
        if !self.respects_delta(phi) {
            return Err(Error::DeltaNotRespected);
        }
        let mut values: Vec<Modulus> = Vec::new();
        for w in elements {
            let m = self.modulus(w);
            if !values.contains(&m) {
                values.push(m);
            }
        }
        Ok((values.len(), values))
    }

    /// R∞ certificate from the first stable letter whose fundamental loop has
    /// `|Δ| ≠ 1`.
    pub fn rinfty_certificate(&self, phi: &Automorphism) -> Result<CertificateOutcome> {
        if !self.respects_delta(phi) {
            return Ok(CertificateOutcome::NotFound(NotFoundReason::DeltaNotRespected));
        }
        let Some(w) = self.fundamental_loops().find(|w| !self.modulus(w).is_unit()) else {
            return Ok(CertificateOutcome::NotFound(NotFoundReason::Unimodular));
        };
        let cert = self.power_family(CertificateKind::NonUnimodularRInfinity, &w, FAMILY_SIZE, phi)?;
        Ok(CertificateOutcome::Found(cert))
    }

    /// For Δ with image `{±1}` but not trivial: a loop with Δ = -1 and its
    /// square lie in different twisted classes, so `R(φ) ≥ 2`.
    pub fn sign_lower_bound(&self, phi: &Automorphism) -> Result<Option<Certificate>> {
        if !self.respects_delta(phi) {
            return Ok(None);
        }
        let minus_one = Modulus::new(-1, 1);
        match self.fundamental_loops().find(|w| self.modulus(w) == minus_one) {
            Some(w) => Ok(Some(self.power_family(CertificateKind::ModulusLowerBound, &w, 2, phi)?)),
            None => Ok(None),
        }
    }

    fn fundamental_loops(&self) -> impl Iterator<Item = PathWord> + '_ {
        self.stable_letters().map(|e| self.lift_generator(Generator::Edge(e)))
    }

    fn power_family(&self, kind: CertificateKind, w: &PathWord, size: u32, phi: &Automorphism) -> Result<Certificate> {
        let mut family: Vec<(u32, Modulus)> = Vec::new();
        for k in 1..=size {
            let m = self.modulus(&self.power(w, &BigInt::from(k))?);
            assert!(family.iter().all(|(_, x)| *x != m), "family moduli must be pairwise distinct");
            family.push((k, m));
        }
        let element = self.canonical_form(w)?;
        Ok(Certificate {
            kind,
            element_text: self.format_path(element.word()),
            element,
            modulus: self.modulus(w),
            family_checked: family,
            automorphism_id: phi.id().to_string(),
        })
    }
}
