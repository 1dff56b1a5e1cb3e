mod common;

use common::{all_patterns, decode, optimum, Kind};
use satmat_core::containment::{
    contains, contains_using, count_occurrences, enumerate_occurrences, find_occurrence,
};
use satmat_core::search::{exact, Budget, SearchKind};
use satmat_core::{HostMatrix, Pattern};

fn small_patterns() -> Vec<Pattern> {
    let mut out = Vec::new();
    for (k, l) in [(1, 1), (1, 2), (2, 1), (1, 3), (3, 1), (2, 2)] {
        out.extend(all_patterns(k, l));
    }
    out
}

#[test]
fn containment_matches_enumeration_on_all_3x3_hosts() {
    let patterns = small_patterns();
    for code in 0..1u64 << 9 {
        let h = HostMatrix::new(decode(3, 3, code));
        for p in &patterns {
            let brute = common::occurrences(&h, p);
            assert_eq!(contains(&h, p).unwrap(), !brute.is_empty(), "{h:?} {p:?}");
            assert_eq!(find_occurrence(&h, p).unwrap().is_some(), !brute.is_empty());
            let listed: Vec<_> = enumerate_occurrences(&h, p, usize::MAX)
                .unwrap()
                .occurrences
                .into_iter()
                .map(|o| (o.rows, o.cols))
                .collect();
            assert_eq!(listed, brute, "{h:?} {p:?}");
        }
    }
}

#[test]
fn contains_using_detects_new_occurrences() {
    let patterns = small_patterns();
    for code in (0..1u64 << 12).step_by(7) {
        let h = HostMatrix::new(decode(3, 4, code));
        for p in &patterns {
            let before = common::count(&h, p);
            for q in h.zero_positions() {
                let after = common::count(&h.flipped(q), p);
                assert_eq!(contains_using(&h, q, p).unwrap(), after > before);
            }
        }
    }
}

#[test]
fn occurrence_counts_on_larger_hosts() {
    let p = common::pat("10\n01");
    let h = HostMatrix::ones(4, 5);
    // C(4,2) * C(5,2)
    assert_eq!(count_occurrences(&h, &p).unwrap(), 60);
    let list = enumerate_occurrences(&h, &p, 10).unwrap();
    assert_eq!(list.occurrences.len(), 10);
    assert!(list.truncated);
    let exact_fit = enumerate_occurrences(&h, &p, 60).unwrap();
    assert!(!exact_fit.truncated);
}

fn check_search(p: &Pattern, m: usize, n: usize) {
    for (kind, oracle_kind) in [
        (SearchKind::Sat, Kind::Sat),
        (SearchKind::Ssat, Kind::Ssat),
        (SearchKind::Ex, Kind::Ex),
    ] {
        let r = exact(kind, p, m, n, &Budget::unlimited()).unwrap();
        let (value, cert) = optimum(oracle_kind, p, m, n);
        assert!(r.exhausted);
        assert_eq!(r.value, value, "{kind:?} {p:?} at {m}x{n}");
        assert_eq!(r.proven_bound, value);
        assert_eq!(*r.certificate, cert, "{kind:?} {p:?} at {m}x{n}");
    }
}

#[test]
fn exact_search_matches_enumeration_for_small_patterns() {
    for p in small_patterns() {
        for (m, n) in [(1, 1), (1, 3), (2, 2), (2, 3), (3, 2), (3, 3), (2, 4), (4, 2)] {
            check_search(&p, m, n);
        }
    }
}

#[test]
fn exact_search_matches_enumeration_for_3x3_patterns() {
    let named = [
        "100\n010\n001",
        "010\n001\n100",
        "001\n010\n100",
        "010\n100\n001",
        "101\n000\n010",
        "000\n010\n000",
        "110\n001\n000",
    ];
    for s in named {
        let p = common::pat(s);
        for (m, n) in [(3, 3), (3, 4), (4, 3)] {
            check_search(&p, m, n);
        }
    }
}
