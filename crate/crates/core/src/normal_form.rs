//! Word problem: Britton reduction, residue-normalized canonical forms and
//! cyclic reduction.
//!
//! A path word is *reduced* when it contains no pinch, i.e. no `e a^k e^-1`
//! with `λo | k` and no `e^-1 a^k e` with `λt | k`. The canonical form of a
//! reduced word moves every power right of a letter into the residue range
//! `0..|λ|` of that letter's right-hand label, pushing the quotient leftwards;
//! only the head exponent is unconstrained. Two loops represent the same
//! element iff their canonical forms coincide.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Euclid, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::GbsGroup;
use crate::word::{Generator, Letter, PathWord, UserWord};

/// Largest number of letters `power` will spell out for a hyperbolic word.
pub(crate) const MAX_POWER_LETTERS: usize = 10_000_000;

/// A path word in canonical form, with its serialization and a hash of it.
#[derive(Debug, Clone)]
pub struct CanonicalWord {
    word: PathWord,
    key: String,
    hash: u64,
}

impl PartialEq for CanonicalWord {
    fn eq(&self, other: &Self) -> bool {
        self.hash == other.hash && self.word == other.word
    }
}

impl Eq for CanonicalWord {}

impl Hash for CanonicalWord {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.hash.hash(state);
    }
}

impl CanonicalWord {
    pub fn word(&self) -> &PathWord {
        &self.word
    }

    pub fn into_word(self) -> PathWord {
        self.word
    }

    /// Stable serialization in the token syntax; used as the JSON key.
    pub fn key(&self) -> &str {
        &self.key
    }

    pub fn hash_value(&self) -> u64 {
        self.hash
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty() && self.word.start() == self.word.end()
    }
}

/// `word = conjugator · core · conjugator⁻¹`, with `core` cyclically reduced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicReduction {
    pub core: PathWord,
    pub conjugator: PathWord,
}

impl GbsGroup {
    /// Divisor for a pinch `l a^k l⁻¹`, and the label the quotient arrives with.
    fn pinch(&self, l: Letter, k: &BigInt) -> Option<BigInt> {
        let (right, left) = l.labels(self.graph());
        if k.is_multiple_of(right) {
            Some(k / right * left)
        } else {
            None
        }
    }

    /// Britton reduction: fires pinches until none is left. Each pinch is
    /// applied as soon as its right letter is read, so the result is the
    /// innermost-leftmost fixpoint.
    pub fn reduce(&self, w: &PathWord) -> Result<PathWord> {
        let mut head = w.head().clone();
        let mut stack: Vec<(Letter, BigInt)> = Vec::with_capacity(w.letter_count());
        for (x, k) in w.tail() {
            if let Some((y, m)) = stack.last() {
                if *y == x.inverse() {
                    if let Some(moved) = self.pinch(*y, m) {
                        stack.pop();
                        let prev = match stack.last_mut() {
                            Some((_, e)) => e,
                            None => &mut head,
                        };
                        *prev += moved + k;
                        self.check_exponent(prev)?;
                        continue;
                    }
                }
            }
            stack.push((*x, k.clone()));
        }
        Ok(PathWord::from_raw(w.start(), w.end(), head, stack))
    }

    /// Reduces, then normalizes residues from right to left.
    pub fn canonical_form(&self, w: &PathWord) -> Result<CanonicalWord> {
        let r = self.reduce(w)?;
        let mut head = r.head().clone();
        let mut tail: Vec<(Letter, BigInt)> = r.tail().to_vec();
        for i in (0..tail.len()).rev() {
            let (right, left) = tail[i].0.labels(self.graph());
            let k = &tail[i].1;
            let q = k.div_euclid(right);
            let rem = k.rem_euclid(right);
            tail[i].1 = rem;
            if !q.is_zero() {
                let carry = q * left;
                let prev = if i == 0 { &mut head } else { &mut tail[i - 1].1 };
                *prev += carry;
                self.check_exponent(prev)?;
            }
        }
        let word = PathWord::from_raw(r.start(), r.end(), head, tail);
        let key = self.format_path(&word);
        let mut hasher = DefaultHasher::new();
        key.hash(&mut hasher);
        word.start().hash(&mut hasher);
        Ok(CanonicalWord { word, key, hash: hasher.finish() })
    }

    pub fn is_identity(&self, w: &PathWord) -> Result<bool> {
        if w.start() != w.end() {
            return Ok(false);
        }
        Ok(self.reduce(w)?.is_empty())
    }

    pub fn equal(&self, u: &PathWord, v: &PathWord) -> Result<bool> {
        if u.start() != v.start() || u.end() != v.end() {
            return Ok(false);
        }
        Ok(self.canonical_form(u)? == self.canonical_form(v)?)
    }

    /// Conjugates a loop until no cyclic rotation admits a pinch.
    ///
    /// The core may end up as a loop at a vertex other than the start of `w`;
    /// the conjugator is then a path from `w.start()` to that vertex.
    pub fn cyclic_reduce(&self, w: &PathWord) -> Result<CyclicReduction> {
        assert_eq!(w.start(), w.end(), "cyclic reduction needs a loop");
        let mut core = self.reduce(w)?;
        let mut conjugator = PathWord::identity(w.start());
        loop {
            let n = core.letter_count();
            if n == 0 {
                break;
            }
            let at = core.start();
            let last = core.exponent(n).clone();
            if !last.is_zero() {
                // a^k · core · a^-k
                let g = PathWord::vertex_power(at, last);
                core = self.reduce(&g.mul(&core).mul(&g.inverse()))?;
                conjugator = conjugator.mul(&g.inverse());
                continue;
            }
            let first = core.tail()[0].0;
            let final_letter = core.tail()[n - 1].0;
            if n >= 2 && final_letter == first.inverse() && self.pinch(final_letter, core.head()).is_some() {
                let g = PathWord::letter(self.graph(), final_letter);
                core = self.reduce(&g.mul(&core).mul(&g.inverse()))?;
                conjugator = conjugator.mul(&g.inverse());
                continue;
            }
            break;
        }
        let core = self.canonical_form(&core)?.into_word();
        let conjugator = self.reduce(&conjugator)?;
        Ok(CyclicReduction { core, conjugator })
    }

    /// `w^k` for any integer `k`. Elliptic words are powered in their vertex
    /// group; hyperbolic ones are spelled out, up to a size cap.
    pub fn power(&self, w: &PathWord, k: &BigInt) -> Result<PathWord> {
        assert_eq!(w.start(), w.end(), "only loops can be powered");
        if k.is_zero() {
            return Ok(PathWord::identity(w.start()));
        }
        let cr = self.cyclic_reduce(w)?;
        if cr.core.letter_count() == 0 {
            let exp = cr.core.head() * k;
            self.check_exponent(&exp)?;
            let p = PathWord::vertex_power(cr.core.start(), exp);
            return self.reduce(&cr.conjugator.mul(&p).mul(&cr.conjugator.inverse()));
        }
        let reps: usize = k
            .abs()
            .try_into()
            .ok()
            .filter(|r: &usize| r.saturating_mul(cr.core.letter_count()) <= MAX_POWER_LETTERS)
            .ok_or(Error::ExponentOverflow { max_digits: self.limits().max_digits })?;
        let unit = if k.is_negative() { cr.core.inverse() } else { cr.core.clone() };
        let mut p = PathWord::identity(unit.start());
        for _ in 0..reps {
            p.append(&unit);
        }
        self.reduce(&cr.conjugator.mul(&p).mul(&cr.conjugator.inverse()))
    }

    /// Seeded random loop at the base with at most `length` letters and vertex
    /// exponents in `-8..=8`.
    pub fn random_word(&self, seed: u64, length: usize) -> PathWord {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.random_word_with(&mut rng, length)
    }

    pub(crate) fn random_word_with(&self, rng: &mut ChaCha8Rng, length: usize) -> PathWord {
        let g = self.graph();
        let depth = |v: crate::graph::VertexId| self.tree_path(v).letter_count();
        let mut w = self.identity();
        w.push_power(&BigInt::from(rng.random_range(-8..=8)));
        let mut used = 0usize;
        loop {
            let at = w.end();
            let options: Vec<Letter> = (0..g.edges().len())
                .flat_map(|i| {
                    [true, false].map(|f| Letter::new(crate::graph::EdgeId(i), f))
                })
                .filter(|l| l.source(g) == at && used + 1 + depth(l.target(g)) <= length)
                .collect();
            if options.is_empty() {
                break;
            }
            let l = options[rng.random_range(0..options.len())];
            w.push_letter(g, l);
            w.push_power(&BigInt::from(rng.random_range(-8..=8)));
            used += 1;
        }
        let home = self.tree_path(w.end()).inverse();
        for l in home.letters() {
            w.push_letter(g, l);
            w.push_power(&BigInt::from(rng.random_range(-8..=8)));
        }
        w
    }

    /// Seeded random word over the presentation generators.
    pub fn random_user_word(&self, seed: u64, syllables: usize) -> UserWord {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gens = self.generators();
        let mut w = UserWord::new();
        let mut last: Option<Generator> = None;
        for _ in 0..syllables {
            let choices: Vec<Generator> =
                gens.iter().copied().filter(|g| Some(*g) != last || gens.len() == 1).collect();
            let g = choices[rng.random_range(0..choices.len())];
            let mut k = 0i64;
            while k == 0 {
                k = rng.random_range(-8..=8);
            }
            w.push(g, k.into());
            last = Some(g);
        }
        w
    }

    /// Seeded product of conjugated relators (a trivial element). With no
    /// relators, a random word times its inverse.
    pub fn random_trivial_word(&self, seed: u64, factors: usize, conjugator_len: usize) -> PathWord {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let relators: Vec<PathWord> = self
            .presentation()
            .relators
            .iter()
            .map(|r| self.lift(r).expect("relators lift"))
            .collect();
        let mut w = self.identity();
        for _ in 0..factors {
            let h = self.random_word_with(&mut rng, conjugator_len);
            let r = if relators.is_empty() {
                let x = self.random_word_with(&mut rng, conjugator_len);
                x.mul(&x.inverse())
            } else {
                let r = &relators[rng.random_range(0..relators.len())];
                if rng.random_bool(0.5) { r.inverse() } else { r.clone() }
            };
            w.append(&h.mul(&r).mul(&h.inverse()));
        }
        w
    }
}
