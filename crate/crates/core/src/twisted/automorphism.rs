use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::group::GbsGroup;
use crate::word::{Generator, PathWord, UserWord};

/// A map on the presentation generators together with a claimed inverse.
///
/// Surjectivity cannot be decided by bounded search and BS groups need not
/// be Hopfian, so an automorphism is only accepted with an explicit inverse
/// that checks out on every generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automorphism {
    forward: Vec<UserWord>,
    backward: Vec<UserWord>,
    forward_paths: Vec<PathWord>,
    validated: bool,
    id: String,
}

impl Automorphism {
    /// Images of the presentation generators, in [`GbsGroup::generators`] order.
    pub fn forward(&self) -> &[UserWord] {
        &self.forward
    }

    pub fn backward(&self) -> &[UserWord] {
        &self.backward
    }

    pub fn is_validated(&self) -> bool {
        self.validated
    }

    /// First 16 hex digits of the SHA-256 of the canonical map-file text.
    pub fn id(&self) -> &str {
        &self.id
    }

    pub(crate) fn forward_paths(&self) -> &[PathWord] {
        &self.forward_paths
    }

    /// The inverse automorphism (forward and backward swapped).
    pub fn inverse(&self, g: &GbsGroup) -> Result<Automorphism> {
        let mut inv = g.automorphism_candidate(&self.backward, &self.forward)?;
        inv.validated = self.validated;
        Ok(inv)
    }
}

impl GbsGroup {
    pub fn identity_automorphism(&self) -> Automorphism {
        let images: Vec<UserWord> = self.generators().iter().map(|&s| UserWord::generator(s)).collect();
        let mut phi = self.automorphism_candidate(&images, &images).expect("generators lift");
        phi.validated = true;
        phi
    }

    /// Unvalidated automorphism from image lists aligned with `generators()`.
    pub fn automorphism_candidate(&self, forward: &[UserWord], backward: &[UserWord]) -> Result<Automorphism> {
        let n = self.generators().len();
        for list in [forward, backward] {
            if list.len() < n {
                return Err(Error::MissingImage {
                    generator: self.generator_name(self.generators()[list.len()]).to_string(),
                });
            }
        }
        let forward_paths = forward.iter().map(|w| self.lift(w)).collect::<Result<Vec<_>>>()?;
        let mut phi = Automorphism {
            forward: forward[..n].to_vec(),
            backward: backward[..n].to_vec(),
            forward_paths,
            validated: false,
            id: String::new(),
        };
        phi.id = automorphism_id(&self.format_automorphism(&phi));
        Ok(phi)
    }

    /// Checks that both maps kill every relator and are mutually inverse on
    /// the generators.
    pub fn validate_automorphism(
        &self,
        forward: &[(Generator, UserWord)],
        backward: &[(Generator, UserWord)],
    ) -> Result<Automorphism> {
        let arrange = |pairs: &[(Generator, UserWord)]| -> Result<Vec<UserWord>> {
            self.generators()
                .iter()
                .map(|s| {
                    pairs.iter().find(|(g, _)| g == s).map(|(_, w)| w.clone()).ok_or_else(|| {
                        Error::MissingImage { generator: self.generator_name(*s).to_string() }
                    })
                })
                .collect()
        };
        let candidate = self.automorphism_candidate(&arrange(forward)?, &arrange(backward)?)?;
        self.validate_candidate(candidate)
    }

    pub fn validate_candidate(&self, mut phi: Automorphism) -> Result<Automorphism> {
        let backward_paths = phi.backward.iter().map(|w| self.lift(w)).collect::<Result<Vec<_>>>()?;
        for r in &self.presentation().relators {
            for images in [&phi.forward_paths, &backward_paths] {
                if !self.is_identity(&self.apply_images(images, r)?)? {
                    return Err(Error::RelatorNotPreserved { relator: self.format_user_word(r) });
                }
            }
        }
        for (i, s) in self.generators().iter().enumerate() {
            let target = self.lift_generator(*s);
            let there_and_back = self.apply_images(&backward_paths, &phi.forward[i])?;
            let back_and_there = self.apply_images(&phi.forward_paths, &phi.backward[i])?;
            if !self.equal(&there_and_back, &target)? || !self.equal(&back_and_there, &target)? {
                return Err(Error::InverseCheckFailed { generator: self.generator_name(*s).to_string() });
            }
        }
        phi.validated = true;
        Ok(phi)
    }

    /// Substitutes the lifted generator images into a user word and reduces.
    pub(crate) fn apply_images(&self, images: &[PathWord], w: &UserWord) -> Result<PathWord> {
        let mut out = self.identity();
        for (s, k) in w.syllables() {
            let idx = self
                .generators()
                .iter()
                .position(|g| g == s)
                .ok_or_else(|| Error::UnknownGenerator { position: 0, token: format!("{s:?}") })?;
            out.append(&self.power(&images[idx], k)?);
        }
        self.reduce(&out)
    }

    pub fn apply(&self, phi: &Automorphism, w: &PathWord) -> Result<PathWord> {
        self.apply_images(phi.forward_paths(), &self.to_user_word(w))
    }

    /// `h · g · φ(h)⁻¹`, reduced.
    pub fn twisted_conjugate(&self, h: &PathWord, g: &PathWord, phi: &Automorphism) -> Result<PathWord> {
        let image = self.apply(phi, h)?;
        self.reduce(&h.mul(g).mul(&image.inverse()))
    }

    /// Parses `map <gen> -> <word>` / `inv <gen> -> <word>` lines. Does not
    /// validate; see [`GbsGroup::validate_candidate`].
    pub fn parse_automorphism(&self, text: &str) -> Result<Automorphism> {
        let n = self.generators().len();
        let mut forward: Vec<Option<UserWord>> = vec![None; n];
        let mut backward: Vec<Option<UserWord>> = vec![None; n];
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let syntax = |message: String| Error::AutomorphismSyntax { line, message };
            let (keyword, rest) = content
                .split_once(char::is_whitespace)
                .ok_or_else(|| syntax("expected `map|inv <gen> -> <word>`".into()))?;
            let table = match keyword {
                "map" => &mut forward,
                "inv" => &mut backward,
                other => return Err(syntax(format!("unknown keyword `{other}`"))),
            };
            let (name, word) = rest.split_once("->").ok_or_else(|| syntax("expected `->`".into()))?;
            let name = name.trim();
            let gen = self
                .generator_by_name(name)
                .ok_or_else(|| syntax(format!("`{name}` is not a presentation generator")))?;
            let slot = self.generators().iter().position(|g| *g == gen).expect("listed generator");
            if table[slot].is_some() {
                return Err(syntax(format!("`{name}` mapped twice")));
            }
            let w = self.parse_user_word(word).map_err(|e| syntax(e.to_string()))?;
            table[slot] = Some(w);
        }
        let collect = |table: Vec<Option<UserWord>>| -> Result<Vec<UserWord>> {
            table
                .into_iter()
                .enumerate()
                .map(|(i, w)| {
                    w.ok_or_else(|| Error::MissingImage {
                        generator: self.generator_name(self.generators()[i]).to_string(),
                    })
                })
                .collect()
        };
        self.automorphism_candidate(&collect(forward)?, &collect(backward)?)
    }

    /// Canonical map-file text for an automorphism.
    pub fn format_automorphism(&self, phi: &Automorphism) -> String {
        let mut out = String::new();
        for (keyword, images) in [("map", &phi.forward), ("inv", &phi.backward)] {
            for (s, w) in self.generators().iter().zip(images) {
                out.push_str(&format!("{keyword} {} -> {}\n", self.generator_name(*s), self.format_user_word(w)));
            }
        }
        out
    }
}

fn automorphism_id(text: &str) -> String {
    let digest = Sha256::digest(text.as_bytes());
    digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

/// Convenience for building image lists in code and tests.
pub fn images(g: &GbsGroup, words: &[&str]) -> Result<Vec<UserWord>> {
    words.iter().map(|w| g.parse_user_word(w)).collect()
}
