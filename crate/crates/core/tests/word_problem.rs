mod common;

use common::*;
use gbskit_core::{GbsGroup, PathWord};
use num_bigint::BigInt;

fn timed<F: FnOnce()>(label: &str, f: F) {
    let start = std::time::Instant::now();
    f();
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 5 || cfg!(debug_assertions), "{label} took {elapsed:?}");
}

#[test]
fn oracle_kills_relators() {
    for (name, g) in named_groups() {
        let oracle = AffineOracle::new(&g);
        for r in g.presentation().relators {
            assert_eq!(oracle.eval_user(&r), Affine::identity(), "{name}: {}", g.format_user_word(&r));
        }
    }
}

#[test]
fn w_times_inverse_is_trivial() {
    for (name, g) in named_groups() {
        timed(name, || {
            for seed in 0..1000 {
                let w = g.random_word(seed, 12);
                assert!(g.is_identity(&w.mul(&w.inverse())).unwrap(), "{name} seed {seed}");
            }
        });
    }
}

#[test]
fn canonical_form_preserves_the_element() {
    for (name, g) in named_groups() {
        let oracle = AffineOracle::new(&g);
        for seed in 0..300 {
            let w = g.random_word(seed, 10);
            let c = g.canonical_form(&w).unwrap();
            assert_eq!(oracle.eval(&g, c.word()), oracle.eval(&g, &w), "{name} seed {seed}");
        }
    }
}

#[test]
fn britton_nontriviality() {
    let g = group(BS23);
    let x = g.parse_loop("t a t^-1").unwrap();
    let a2 = g.parse_loop("a^2").unwrap();
    assert!(!g.equal(&x, &a2).unwrap());
    assert!(!g.is_identity(&g.parse_loop("t a t^-1 a^-1").unwrap()).unwrap());
    // the affine image separates them too
    let oracle = AffineOracle::new(&g);
    assert_ne!(oracle.eval(&g, &x), oracle.eval(&g, &a2));
}

#[test]
fn canonical_uniqueness() {
    for (name, g) in named_groups() {
        for seed in 0..500 {
            let u = g.random_word(2 * seed, 8);
            let v = g.random_word(2 * seed + 1, 8);
            let lhs = g.canonical_form(&u.mul(&v).mul(&v.inverse())).unwrap();
            let rhs = g.canonical_form(&u).unwrap();
            assert_eq!(lhs.key(), rhs.key(), "{name} seed {seed}");
        }
    }
}

#[test]
fn products_of_conjugated_relators_are_trivial() {
    for (name, g) in named_groups() {
        for seed in 0..200 {
            let w = g.random_trivial_word(seed, 4, 5);
            assert!(g.is_identity(&w).unwrap(), "{name} seed {seed}");
        }
    }
}

#[test]
fn word_problem_agrees_with_faithful_oracle() {
    let g = group(BS12);
    let oracle = AffineOracle::new(&g);
    let mut trivial = 0;
    for seed in 0..400 {
        let w = if seed % 2 == 0 { g.random_trivial_word(seed, 3, 4) } else { g.random_word(seed, 6) };
        let expected = oracle.eval(&g, &w) == Affine::identity();
        assert_eq!(g.is_identity(&w).unwrap(), expected, "seed {seed}");
        trivial += usize::from(expected);
    }
    assert!(trivial >= 200);
}

#[test]
fn lifts_are_valid_loops() {
    for (name, g) in named_groups() {
        let oracle = AffineOracle::new(&g);
        for seed in 0..1000 {
            let u = g.random_user_word(seed, 6);
            let w = g.lift(&u).unwrap();
            assert!(w.is_valid(g.graph()) && w.is_loop_at(g.base()), "{name} seed {seed}");
            assert_eq!(oracle.eval(&g, &w), oracle.eval_user(&u), "{name} seed {seed}");
        }
    }
}

#[test]
fn residues_are_pushed_left() {
    // brute force over a^j t a^r with r in the residue range
    let g = group(BS23);
    let oracle = AffineOracle::new(&g);
    let target = oracle.eval(&g, &g.parse_loop("t a^5").unwrap());
    let mut hits = Vec::new();
    for j in -20..=20 {
        for r in 0..2 {
            let cand = g.parse_loop(&format!("a^{j} t a^{r}")).unwrap();
            if oracle.eval(&g, &cand) == target {
                hits.push(cand);
            }
        }
    }
    assert_eq!(hits.len(), 1);
    let c = g.canonical_form(&g.parse_loop("t a^5").unwrap()).unwrap();
    assert_eq!(c.key(), g.canonical_form(&hits[0]).unwrap().key());
    assert_eq!(c.key(), "a^6 t a");
}

#[test]
fn theta_powers() {
    let g: GbsGroup = group(THETA);
    let e2 = g.parse_user_word("e2").unwrap();
    let w: PathWord = g.lift(&e2).unwrap();
    let cube = g.power(&w, &BigInt::from(3)).unwrap();
    assert!(g.equal(&cube, &w.mul(&w).mul(&w)).unwrap());
}
