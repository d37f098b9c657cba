//! Counting conjugates in a Cayley ball.
//!
//! An element with finitely many conjugates shows a stable count; a growing
//! count is evidence (not proof) of infinitely many.

use std::collections::HashSet;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::group::GbsGroup;
use crate::normal_form::CanonicalWord;
use crate::twisted::ball::cayley_spheres;
use crate::word::PathWord;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjugateGrowthReport {
    pub element: String,
    pub radius: usize,
    /// Number of distinct conjugates found with conjugators of length `≤ i`.
    pub sizes: Vec<usize>,
    /// The last three sizes agree.
    pub stabilized: bool,
    /// Longest conjugate seen, counted in letters plus nonzero powers.
    pub max_length: usize,
    pub conjugates: Vec<String>,
}

fn word_length(w: &PathWord) -> usize {
    let powers = std::iter::once(w.head()).chain(w.tail().iter().map(|(_, k)| k)).filter(|k| !k.is_zero()).count();
    w.letter_count() + powers
}

impl GbsGroup {
    pub fn conjugates_in_ball(&self, w: &PathWord, radius: usize) -> Result<ConjugateGrowthReport> {
        let spheres = cayley_spheres(self, radius)?;
        let mut seen: HashSet<CanonicalWord> = HashSet::new();
        let mut order: Vec<CanonicalWord> = Vec::new();
        let mut sizes = Vec::with_capacity(spheres.len());
        for sphere in &spheres {
            let found: Vec<CanonicalWord> = sphere
                .par_iter()
                .map(|h| {
                    let h = self.lift(h)?;
                    self.canonical_form(&h.mul(w).mul(&h.inverse()))
                })
                .collect::<Result<_>>()?;
            for c in found {
                if seen.insert(c.clone()) {
                    order.push(c);
                }
            }
            sizes.push(order.len());
        }
        let stabilized = sizes.len() >= 3 && sizes[sizes.len() - 3..].windows(2).all(|p| p[0] == p[1]);
        Ok(ConjugateGrowthReport {
            element: self.format_path(&self.reduce(w)?),
            radius,
            max_length: order.iter().map(|c| word_length(c.word())).max().unwrap_or(0),
            conjugates: order.iter().map(|c| c.key().to_string()).collect(),
            sizes,
            stabilized,
        })
    }
}
