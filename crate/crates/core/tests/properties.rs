mod common;

use proptest::prelude::*;
use satmat_core::containment::{contains, contains_using, find_occurrence};
use satmat_core::saturation::{greedy_complete, is_saturating};
use satmat_core::search::{certificate_ok, exact, Budget, SearchKind};
use satmat_core::{BitMatrix, HostMatrix, Pattern, Position, Style, Transform};

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = BitMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        proptest::collection::vec(any::<bool>(), r * c)
            .prop_map(move |bits| BitMatrix::from_fn(r, c, |i, j| bits[i * c + j]))
    })
}

fn pattern(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Pattern> {
    matrix(max_rows, max_cols)
        .prop_filter("pattern needs a 1", |m| !m.is_all_zero())
        .prop_map(Pattern::new)
}

fn host(max_rows: usize, max_cols: usize) -> impl Strategy<Value = HostMatrix> {
    matrix(max_rows, max_cols).prop_map(HostMatrix::new)
}

proptest! {
    #[test]
    fn containment_agrees_with_enumeration(h in host(5, 5), p in pattern(3, 3)) {
        prop_assert_eq!(contains(&h, &p).unwrap(), common::contains(&h, &p));
    }

    #[test]
    fn found_occurrence_is_valid(h in host(6, 6), p in pattern(3, 3)) {
        let found = find_occurrence(&h, &p).unwrap();
        prop_assert_eq!(found.is_some(), contains(&h, &p).unwrap());
        if let Some(o) = found {
            prop_assert!(o.rows.windows(2).all(|w| w[0] < w[1]));
            prop_assert!(o.cols.windows(2).all(|w| w[0] < w[1]));
            for q in p.ones_positions() {
                prop_assert!(h.get(Position::new(o.rows[q.row], o.cols[q.col])));
            }
        }
    }

    #[test]
    fn containment_is_monotone(h in host(5, 5), p in pattern(3, 3), seed in any::<u64>()) {
        let extra = h.positions().nth(seed as usize % (h.rows() * h.cols())).unwrap();
        if contains(&h, &p).unwrap() {
            prop_assert!(contains(&h.with_one(extra), &p).unwrap());
        }
    }

    #[test]
    fn containment_commutes_with_symmetries(h in host(5, 5), p in pattern(3, 3)) {
        let base = contains(&h, &p).unwrap();
        for t in Transform::ALL {
            prop_assert_eq!(contains(&h.transform(t), &p.transform(t)).unwrap(), base);
        }
    }

    #[test]
    fn pattern_contains_itself(p in pattern(4, 4)) {
        prop_assert!(contains(&p.as_host(), &p).unwrap());
    }

    #[test]
    fn occurrence_through_a_zero(h in host(5, 5), p in pattern(3, 3)) {
        let avoiding = !contains(&h, &p).unwrap();
        for q in h.zero_positions() {
            let using = contains_using(&h, q, &p).unwrap();
            let flipped = contains(&h.flipped(q), &p).unwrap();
            if using {
                prop_assert!(flipped);
            }
            if avoiding {
                prop_assert_eq!(using, flipped);
            }
        }
    }

    #[test]
    fn text_round_trip(m in matrix(8, 64)) {
        prop_assert_eq!(BitMatrix::parse(&m.render(Style::Binary)).unwrap(), m.clone());
        prop_assert_eq!(BitMatrix::parse(&m.render(Style::Dots)).unwrap(), m);
    }

    #[test]
    fn greedy_completion_saturates(p in pattern(3, 3), m in 1usize..7, n in 1usize..7) {
        let g = greedy_complete(&HostMatrix::zeros(m, n), &p).unwrap();
        prop_assert!(is_saturating(&g, &p).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn search_values_are_sandwiched_and_certified(p in pattern(3, 3), m in 1usize..5, n in 1usize..5) {
        let budget = Budget::unlimited();
        let sat = exact(SearchKind::Sat, &p, m, n, &budget).unwrap();
        let ssat = exact(SearchKind::Ssat, &p, m, n, &budget).unwrap();
        let ex = exact(SearchKind::Ex, &p, m, n, &budget).unwrap();
        prop_assert!(ssat.value <= sat.value && sat.value <= ex.value);
        for r in [&sat, &ssat, &ex] {
            prop_assert!(r.exhausted);
            prop_assert_eq!(r.certificate.weight(), r.value);
            prop_assert!(certificate_ok(r.kind, &r.certificate, &p).unwrap());
        }
    }

    #[test]
    fn search_values_are_symmetric(p in pattern(3, 3), m in 1usize..5, n in 1usize..5) {
        let budget = Budget::unlimited();
        for kind in [SearchKind::Sat, SearchKind::Ssat, SearchKind::Ex] {
            let base = exact(kind, &p, m, n, &budget).unwrap().value;
            let t = exact(kind, &p.transform(Transform::Transpose), n, m, &budget).unwrap().value;
            let v = exact(kind, &p.transform(Transform::ReflectVertical), m, n, &budget).unwrap().value;
            let h = exact(kind, &p.transform(Transform::ReflectHorizontal), m, n, &budget).unwrap().value;
            prop_assert_eq!(base, t);
            prop_assert_eq!(base, v);
            prop_assert_eq!(base, h);
        }
    }

    #[test]
    fn search_agrees_with_enumeration(p in pattern(2, 3), m in 1usize..4, n in 1usize..5) {
        for (kind, oracle) in [
            (SearchKind::Sat, common::Kind::Sat),
            (SearchKind::Ssat, common::Kind::Ssat),
            (SearchKind::Ex, common::Kind::Ex),
        ] {
            let r = exact(kind, &p, m, n, &Budget::unlimited()).unwrap();
            let (value, cert) = common::optimum(oracle, &p, m, n);
            prop_assert_eq!(r.value, value);
            prop_assert_eq!(r.certificate.matrix(), &cert);
        }
    }
}
