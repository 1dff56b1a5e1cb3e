mod common;

use common::pat;
use satmat_core::classifier::*;
use satmat_core::constructions::*;
use satmat_core::saturation::{is_saturating, is_semisaturating};
use satmat_core::search::{ssat_exact, Budget};

#[test]
fn permutations_have_bounded_semisaturation() {
    let mut perms = vec![pattern_q()];
    for k in 1..=6 {
        perms.push(gen_named(Named::Identity, k).unwrap());
        perms.push(gen_named(Named::IdentityReflected, k).unwrap());
    }
    for k in 2..=6 {
        perms.push(gen_named(Named::Jk, k).unwrap());
        perms.push(gen_named(Named::JkReflected, k).unwrap());
    }
    for p in &perms {
        let c = ssat_classify(p).unwrap();
        assert_eq!(c.verdict, Verdict::Constant, "{p:?}");
        assert_eq!(c.rule, Rule::SsatPropertiesHold);
    }
}

#[test]
fn semisaturation_verdicts_are_consistent_with_small_values() {
    for (k, l) in [(2, 2), (2, 3), (3, 2)] {
        for p in common::all_patterns(k, l) {
            let c = ssat_classify(&p).unwrap();
            match c.verdict {
                Verdict::Constant => {
                    let want = (2 * k - 2) * (2 * l - 2);
                    for n in 2 * k.max(l)..=10 {
                        let h = corner_construction(&p, n, n).unwrap();
                        assert_eq!(h.weight(), want);
                        assert!(is_semisaturating(&h, &p).unwrap(), "{p:?} at {n}");
                    }
                }
                Verdict::Linear => {
                    assert!(matches!(c.rule, Rule::SsatPropertyFails(1..=3)));
                    for n in 1..=4 {
                        let r = ssat_exact(&p, n, n, &Budget::unlimited()).unwrap();
                        assert!(r.value >= n, "{p:?} ssat at {n} is {}", r.value);
                    }
                }
                Verdict::Unknown => panic!("semisaturation is always decided"),
            }
        }
    }
}

#[test]
fn named_patterns_with_linear_saturation() {
    let q1 = linear_sufficient(&pattern_q_prime()).unwrap().unwrap();
    assert_eq!(q1.verdict, Verdict::Linear);
    let q2 = linear_sufficient(&pattern_q_double_prime()).unwrap().unwrap();
    assert_eq!(q2.rule, Rule::EveryRowTwoOnes);
    let i2 = linear_sufficient(&gen_named(Named::Identity, 2).unwrap()).unwrap().unwrap();
    assert_eq!(i2.rule, Rule::BlockDiagonal { rows: 1, cols: 1 });
    assert_eq!(
        linear_sufficient(&pat("10\n00\n01")).unwrap().unwrap().rule,
        Rule::BlockDiagonal { rows: 1, cols: 1 }
    );
    assert_eq!(
        linear_sufficient(&pat("1\n1")).unwrap().unwrap().rule,
        Rule::EveryColTwoOnes
    );
    assert!(linear_sufficient(&pattern_q()).unwrap().is_none());
    assert!(linear_sufficient(&gen_named(Named::Jk, 4).unwrap()).unwrap().is_none());
}

#[test]
fn q_witness_pumps_stay_saturating() {
    let q = pattern_q();
    let out = witness_search(&q, &WitnessSearchParams::default()).unwrap();
    let w = out.witness.expect("default search finds a witness for Q");
    assert!(w.matrix.weight() < 400);
    for t in [1, 2, 5, 9] {
        let grown = pump(&w, t).unwrap();
        assert_eq!(grown.weight(), w.matrix.weight());
        assert!(is_saturating(&grown, &q).unwrap());
    }
}

#[test]
fn classification_of_saturation() {
    let budget = Budget::seconds(5.0);
    let quick = WitnessSearchParams {
        budget: Budget::seconds(5.0),
        ..WitnessSearchParams::default()
    };
    let c = sat_classify(&pattern_q(), &budget, &quick).unwrap();
    assert_eq!(c.verdict, Verdict::Constant);
    match c.certificate {
        Some(Certificate::Witness(w)) => assert!(witness_check(&w.matrix, &pattern_q()).is_ok()),
        other => panic!("expected a witness, got {other:?}"),
    }
    let c = sat_classify(&pattern_q_prime(), &budget, &quick).unwrap();
    assert_eq!(c.verdict, Verdict::Linear);
    let small = WitnessSearchParams {
        sizes: 1..=10,
        restarts: 5,
        ..quick
    };
    let c = sat_classify(&gen_named(Named::Jk, 4).unwrap(), &budget, &small).unwrap();
    assert_eq!(c.verdict, Verdict::Unknown);
}
