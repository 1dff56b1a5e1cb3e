mod common;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use satmat_core::constructions::*;
use satmat_core::saturation::{greedy_complete_with, is_saturating, GreedyOptions};
use satmat_core::search::{sat_exact, Budget};
use satmat_core::staircase::{below_staircase_zero, extremal_staircase, verify_level_lemmas};
use satmat_core::{HostMatrix, Pattern, Position};

fn random_saturating(p: &Pattern, m: usize, n: usize, rng: &mut ChaCha8Rng) -> HostMatrix {
    let mut order: Vec<Position> = HostMatrix::zeros(m, n).positions().collect();
    order.shuffle(rng);
    greedy_complete_with(
        &HostMatrix::zeros(m, n),
        p,
        &GreedyOptions {
            mask: None,
            order: Some(&order),
        },
    )
    .unwrap()
}

#[test]
fn frames_saturate_every_small_pattern() {
    let mut patterns = common::all_patterns(2, 2);
    patterns.extend(common::all_patterns(2, 3));
    for p in &patterns {
        let (k, l) = p.dims();
        for m in k..=5 {
            for n in l..=5 {
                for pivot in p.ones_positions() {
                    let f = gen_frame(p, m, n, Some(pivot)).unwrap();
                    assert!(is_saturating(&f, p).unwrap(), "{p:?} {pivot} {m}x{n}");
                    assert_eq!(f.weight(), frame_weight(k, l, m, n));
                }
            }
        }
    }
}

#[test]
fn identity_recursion_on_exact_values() {
    let i2 = gen_named(Named::Identity, 2).unwrap();
    let i3 = gen_named(Named::Identity, 3).unwrap();
    let budget = Budget::unlimited();
    for m in 3..=5 {
        for n in 3..=5 {
            let big = sat_exact(&i3, m, n, &budget).unwrap();
            let small = sat_exact(&i2, m - 1, n - 1, &budget).unwrap();
            assert_eq!(big.value, small.value + m + n - 1);

            let up = extendcorner_extend(&small.certificate, &i2).unwrap();
            assert!(is_saturating(&up, &i3).unwrap());
            assert_eq!(up.weight(), big.value);

            let down = extendcorner_reduce(&big.certificate, &i3).unwrap();
            assert!(is_saturating(&down, &i2).unwrap());
            assert_eq!(down.weight() + m + n - 1, big.value);
        }
    }
}

#[test]
fn reduce_inverts_extend_on_random_saturating_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let base = gen_named(Named::JkReflected, 3).unwrap();
    let extended = extend_pattern_corner(&base).unwrap();
    for (m, n) in [(4, 4), (4, 6), (6, 5), (7, 7)] {
        for _ in 0..20 {
            let big = random_saturating(&extended, m, n, &mut rng);
            let down = extendcorner_reduce(&big, &extended).unwrap();
            assert!(is_saturating(&down, &base).unwrap());
            assert_eq!(down.weight() + m + n - 1, big.weight());
            let small = random_saturating(&base, m - 1, n - 1, &mut rng);
            let up = extendcorner_extend(&small, &base).unwrap();
            assert!(is_saturating(&up, &extended).unwrap());
        }
    }
}

#[test]
fn reduce_rejects_bad_inputs() {
    let i3 = gen_named(Named::Identity, 3).unwrap();
    assert!(extendcorner_reduce(&HostMatrix::zeros(4, 4), &i3).is_err());
    let q = pattern_q();
    let m = HostMatrix::ones(4, 4);
    assert!(extendcorner_reduce(&m, &q).is_err());
}

#[test]
fn level_structure_on_every_saturating_matrix_for_jk_reflected_3() {
    let p = gen_named(Named::JkReflected, 3).unwrap();
    let mut seen = 0;
    for (m, n) in [(3, 3), (3, 4), (4, 3), (4, 4)] {
        for code in 0..1u64 << (m * n) {
            let h = HostMatrix::new(common::decode(m, n, code));
            if !is_saturating(&h, &p).unwrap() {
                continue;
            }
            seen += 1;
            let s = extremal_staircase(&h).unwrap();
            assert_eq!(s.len(), m + n - 1);
            assert!(below_staircase_zero(&h, &s));
            let report = verify_level_lemmas(&h, 3).unwrap();
            assert!(report.passed(), "{h:?}\n{:#?}", report.clauses);
            assert!(report.clauses.iter().all(|c| c.passed), "{h:?}\n{:#?}", report.clauses);
        }
    }
    assert!(seen > 0);
}

#[test]
fn level_structure_on_random_saturating_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for k in 3..=5 {
        let p = gen_named(Named::JkReflected, k).unwrap();
        for (m, n) in [(k, k), (k + 1, k + 2), (k + 3, k + 1), (9, 9)] {
            for _ in 0..25 {
                let h = random_saturating(&p, m, n, &mut rng);
                let report = verify_level_lemmas(&h, k).unwrap();
                assert!(report.passed(), "k={k}\n{h:?}\n{:#?}", report.clauses);
            }
        }
    }
}

#[test]
fn jk_bounds_bracket_exact_values() {
    let budget = Budget::unlimited();
    for k in 3..=4 {
        let p = gen_named(Named::Jk, k).unwrap();
        for m in k..=5 {
            for n in k..=5 {
                let v = sat_exact(&p, m, n, &budget).unwrap();
                assert!(v.exhausted);
                assert!(jk_lower_bound(k, m, n).unwrap() <= v.value);
                assert!(v.value <= jk_upper_bound(k, m, n));
            }
        }
    }
}

#[test]
fn block_pattern_bound_holds() {
    let budget = Budget::unlimited();
    let p = pattern_ik_ik(3, 1).unwrap();
    for m in 4..=5 {
        for n in 4..=5 {
            let b = cor_ikik_bound(3, 1, m, n).unwrap();
            let v = sat_exact(&p, m, n, &budget).unwrap();
            assert!(v.exhausted && b.value <= v.value, "{m}x{n}: {} > {}", b.value, v.value);
        }
    }
}
