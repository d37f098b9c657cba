//! Deterministic enumeration of conjugator balls.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::group::GbsGroup;
use crate::word::UserWord;

fn check_cap(g: &GbsGroup, size: u128) -> Result<()> {
    let cap = g.limits().max_ball;
    if size > cap as u128 {
        Err(Error::RadiusTooLarge { size: size.to_string(), cap })
    } else {
        Ok(())
    }
}

/// Number of words with at most `radius` syllables (adjacent generators
/// distinct) and exponents in `[-radius, radius] \ {0}`.
pub fn syllable_ball_size(generators: usize, radius: usize) -> u128 {
    let (gens, r) = (generators as u128, radius as u128);
    let mut total: u128 = 1;
    let mut level: u128 = 1;
    for len in 1..=r {
        let choices = if len == 1 { gens } else { gens.saturating_sub(1) };
        level = level.saturating_mul(choices).saturating_mul(2 * r);
        if level == 0 {
            break;
        }
        total = total.saturating_add(level);
    }
    total
}

/// Number of freely reduced words of length at most `radius` over the
/// generators and their inverses.
pub fn cayley_ball_size(generators: usize, radius: usize) -> u128 {
    let letters = 2 * generators as u128;
    let mut total: u128 = 1;
    let mut level: u128 = 1;
    for len in 1..=radius {
        let choices = if len == 1 { letters } else { letters.saturating_sub(1) };
        level = level.saturating_mul(choices);
        if level == 0 {
            break;
        }
        total = total.saturating_add(level);
    }
    total
}

/// The syllable ball in enumeration order: by syllable count, then by the
/// serialized word.
pub fn syllable_ball(g: &GbsGroup, radius: usize) -> Result<Vec<UserWord>> {
    check_cap(g, syllable_ball_size(g.generators().len(), radius))?;
    let r = radius as i64;
    let exps: Vec<i64> = (-r..=r).filter(|&k| k != 0).collect();
    let mut out = vec![UserWord::new()];
    let mut frontier = vec![UserWord::new()];
    for _ in 0..radius {
        let mut next = Vec::new();
        for w in &frontier {
            let last = w.syllables().last().map(|(s, _)| *s);
            for &s in g.generators() {
                if Some(s) == last {
                    continue;
                }
                for &k in &exps {
                    let mut x = w.clone();
                    x.push(s, BigInt::from(k));
                    next.push(x);
                }
            }
        }
        sort_level(g, &mut next);
        out.extend(next.iter().cloned());
        frontier = next;
    }
    Ok(out)
}

/// Cayley-graph ball split into spheres; sphere `i` holds the words of length `i`.
pub fn cayley_spheres(g: &GbsGroup, radius: usize) -> Result<Vec<Vec<UserWord>>> {
    check_cap(g, cayley_ball_size(g.generators().len(), radius))?;
    let mut spheres = vec![vec![UserWord::new()]];
    // track the last letter to keep words freely reduced
    let mut frontier: Vec<(UserWord, Option<(usize, bool)>)> = vec![(UserWord::new(), None)];
    for _ in 0..radius {
        let mut next = Vec::new();
        for (w, last) in &frontier {
            for (i, &s) in g.generators().iter().enumerate() {
                for positive in [true, false] {
                    if *last == Some((i, !positive)) {
                        continue;
                    }
                    let mut x = w.clone();
                    x.push(s, BigInt::from(if positive { 1 } else { -1 }));
                    next.push((x, Some((i, positive))));
                }
            }
        }
        next.sort_by_cached_key(|(w, _)| g.format_user_word(w));
        spheres.push(next.iter().map(|(w, _)| w.clone()).collect());
        frontier = next;
    }
    Ok(spheres)
}

fn sort_level(g: &GbsGroup, level: &mut [UserWord]) {
    level.sort_by_cached_key(|w| g.format_user_word(w));
}
