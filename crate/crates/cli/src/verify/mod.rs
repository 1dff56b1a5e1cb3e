//! The verification suite: exact values, constructions and classifier
//! verdicts checked on small instances, grouped into numbered criteria.

pub mod oracle;

use std::sync::OnceLock;
use std::time::Instant;

use rayon::prelude::*;
use satmat_core::classifier::{
    corner_construction, pump, ssat_classify, witness_check, witness_search, Verdict,
    WitnessSearchParams,
};
use satmat_core::constructions::{
    extend_pattern_corner, extendcorner_extend, extendcorner_reduce, frame_weight, gen_frame,
    gen_named, jk_lower_bound, jk_upper_bound, pattern_ik_ik, pattern_q, pattern_q_double_prime,
    pattern_q_prime, pattern_q_without_center, Named,
};
use satmat_core::saturation::{is_saturating, is_semisaturating};
use satmat_core::search::{exact, ex_exact, sat_exact, ssat_exact, Budget, SearchKind, SearchResult};
use satmat_core::staircase::{below_staircase_zero, extremal_staircase, verify_level_lemmas};
use satmat_core::{BitMatrix, HostMatrix, Pattern, Position};

use crate::args::Scope;

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Wall-clock budget for the witness search on `Q`.
    pub witness_seconds: f64,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            witness_seconds: 600.0,
            seed: 0,
        }
    }
}

pub const TITLES: [&str; 11] = [
    "identity patterns: sat = ex = (k-1)(m+n-k+1)",
    "J_3: sat = ex = 2(m+n-2)",
    "frame construction saturates and bounds sat on the corpus",
    "J_4 at 4x4 lies between the staircase lower bound and the frame bound",
    "corner extension recursion for identity patterns",
    "staircase and level structure of matrices saturating for J'_3",
    "semisaturation classifier verdicts on the corpus",
    "single-1 patterns: ssat = sat = frame weight",
    "ssat <= sat <= ex on the corpus",
    "witness checking, pumping and search",
    "exact search agrees with exhaustive enumeration",
];

pub fn scope_criteria(scope: Scope) -> Vec<u8> {
    match scope {
        Scope::All => (1..=11).collect(),
        Scope::Ik => vec![1],
        Scope::Jk => vec![2, 4, 6],
        Scope::Dichotomy => vec![3, 9, 11],
        Scope::Ssat => vec![7, 8],
        Scope::Extendcorner => vec![5],
        Scope::Witness => vec![10],
    }
}

#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub cases: usize,
    /// First failures, at most [`MAX_FAILURES`].
    pub failures: Vec<String>,
    pub notes: Vec<String>,
    pub seconds: f64,
}

pub const MAX_FAILURES: usize = 20;

#[derive(Default)]
struct Tally {
    cases: usize,
    failed: usize,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < MAX_FAILURES {
                self.failures.push(what());
            }
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    fn merge(&mut self, other: Tally) {
        self.cases += other.cases;
        self.failed += other.failed;
        for f in other.failures {
            if self.failures.len() < MAX_FAILURES {
                self.failures.push(f);
            }
        }
        self.notes.extend(other.notes);
    }
}

fn search_budget() -> Budget {
    Budget {
        max_nodes: 100_000_000,
        max_seconds: 30.0,
    }
}

fn named(family: Named, k: usize) -> Pattern {
    gen_named(family, k).expect("valid size")
}

fn label(p: &Pattern) -> String {
    p.row_strings().join("/")
}

pub fn run_criterion(id: u8, opts: &VerifyOptions) -> CriterionReport {
    let started = Instant::now();
    let tally = match id {
        1 => identity_exactness(),
        2 => j3_exactness(),
        3 => frame_bounds(),
        4 => j4_sandwich(),
        5 => corner_recursion(),
        6 => staircase_levels(),
        7 => semisaturation_dichotomy(),
        8 => single_one_patterns(),
        9 => sandwich(),
        10 => witnesses(opts),
        11 => oracle_equivalence(),
        _ => panic!("no criterion {id}"),
    };
    CriterionReport {
        id,
        title: TITLES[id as usize - 1],
        passed: tally.failed == 0 && tally.cases > 0,
        cases: tally.cases,
        failures: tally.failures,
        notes: tally.notes,
        seconds: started.elapsed().as_secs_f64(),
    }
}

fn exact_value(kind: SearchKind, p: &Pattern, m: usize, n: usize) -> SearchResult {
    exact(kind, p, m, n, &search_budget()).expect("valid search input")
}

fn identity_exactness() -> Tally {
    let mut t = Tally::default();
    for k in 2..=3 {
        let p = named(Named::Identity, k);
        for m in k..=5 {
            for n in k..=5 {
                let want = (k - 1) * (m + n - (k - 1));
                let sat = exact_value(SearchKind::Sat, &p, m, n);
                let ex = exact_value(SearchKind::Ex, &p, m, n);
                t.check(sat.exhausted && sat.value == want, || {
                    format!("sat(I_{k},{m},{n}) = {} (complete: {}), expected {want}", sat.value, sat.exhausted)
                });
                t.check(ex.exhausted && ex.value == want, || {
                    format!("ex(I_{k},{m},{n}) = {} (complete: {}), expected {want}", ex.value, ex.exhausted)
                });
            }
        }
    }
    t
}

fn j3_exactness() -> Tally {
    let mut t = Tally::default();
    let p = named(Named::Jk, 3);
    for m in 3..=4 {
        for n in 3..=4 {
            let want = 2 * (m + n - 2);
            let sat = exact_value(SearchKind::Sat, &p, m, n);
            let ex = exact_value(SearchKind::Ex, &p, m, n);
            t.check(sat.exhausted && sat.value == want, || {
                format!("sat(J_3,{m},{n}) = {}, expected {want}", sat.value)
            });
            t.check(ex.exhausted && ex.value == want, || {
                format!("ex(J_3,{m},{n}) = {}, expected {want}", ex.value)
            });
        }
    }
    t
}

/// Patterns shared by the corpus-wide criteria: every nonzero 2x2 and 2x3
/// pattern plus the named families.
pub fn corpus() -> Vec<Pattern> {
    let mut out = Vec::new();
    for (k, l) in [(2, 2), (2, 3)] {
        for code in 1u32..1 << (k * l) {
            out.push(Pattern::new(BitMatrix::from_fn(k, l, |r, c| {
                code >> (r * l + c) & 1 == 1
            })));
        }
    }
    for k in 1..=4 {
        out.push(named(Named::Identity, k));
    }
    out.push(named(Named::IdentityReflected, 3));
    for k in 3..=4 {
        out.push(named(Named::Jk, k));
        out.push(named(Named::JkReflected, k));
    }
    out.push(pattern_q());
    out.push(pattern_q_prime());
    out.push(pattern_q_double_prime());
    out.push(pattern_q_without_center());
    out.push(pattern_ik_ik(3, 1).expect("valid size"));
    out
}

fn corpus_sizes(p: &Pattern) -> Vec<(usize, usize)> {
    let (k, l) = p.dims();
    let mut out = Vec::new();
    for m in k..=k + 1 {
        for n in l..=l + 1 {
            if m * n <= 25 {
                out.push((m, n));
            }
        }
    }
    out
}

struct CorpusEntry {
    pattern: Pattern,
    m: usize,
    n: usize,
    sat: SearchResult,
    ssat: SearchResult,
    ex: SearchResult,
}

fn corpus_table() -> &'static [CorpusEntry] {
    static TABLE: OnceLock<Vec<CorpusEntry>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let jobs: Vec<(Pattern, usize, usize)> = corpus()
            .into_iter()
            .flat_map(|p| corpus_sizes(&p).into_iter().map(move |(m, n)| (p.clone(), m, n)))
            .collect();
        jobs.into_par_iter()
            .map(|(pattern, m, n)| {
                let sat = exact_value(SearchKind::Sat, &pattern, m, n);
                let ssat = exact_value(SearchKind::Ssat, &pattern, m, n);
                let ex = exact_value(SearchKind::Ex, &pattern, m, n);
                CorpusEntry { pattern, m, n, sat, ssat, ex }
            })
            .collect()
    })
}

fn frame_bounds() -> Tally {
    let mut t = Tally::default();
    let patterns = corpus();
    t.note(format!("{} corpus patterns", patterns.len()));
    for p in &patterns {
        let (k, l) = p.dims();
        for (m, n) in corpus_sizes(p) {
            for pivot in std::iter::once(None).chain(p.ones_positions().map(Some)) {
                let f = gen_frame(p, m, n, pivot).expect("valid frame input");
                let ok = is_saturating(&f, p).unwrap_or(false) && f.weight() == frame_weight(k, l, m, n);
                t.check(ok, || format!("frame for {} at {m}x{n}, pivot {pivot:?}", label(p)));
            }
        }
    }
    let mut terminated = 0;
    for e in corpus_table() {
        let (k, l) = e.pattern.dims();
        if e.sat.exhausted {
            terminated += 1;
            let bound = frame_weight(k, l, e.m, e.n);
            t.check(e.sat.value <= bound, || {
                format!("sat({}, {}, {}) = {} exceeds {bound}", label(&e.pattern), e.m, e.n, e.sat.value)
            });
        }
    }
    t.note(format!("{terminated} of {} exact searches completed", corpus_table().len()));
    t
}

fn j4_sandwich() -> Tally {
    let mut t = Tally::default();
    let p = named(Named::Jk, 4);
    let lower = jk_lower_bound(4, 4, 4).expect("valid size");
    let upper = jk_upper_bound(4, 4, 4);
    t.check(lower == 12 && upper == 15, || format!("bounds are {lower} and {upper}"));
    let sat = exact_value(SearchKind::Sat, &p, 4, 4);
    t.check(sat.exhausted && lower <= sat.value && sat.value <= upper, || {
        format!("sat(J_4,4,4) = {} outside [{lower}, {upper}]", sat.value)
    });
    t.note(format!("sat(J_4,4,4) = {}", sat.value));
    t
}

fn corner_recursion() -> Tally {
    let mut t = Tally::default();
    let i2 = named(Named::Identity, 2);
    let i3 = named(Named::Identity, 3);
    let budget = search_budget();
    for m in 3..=5 {
        for n in 3..=5 {
            let big = sat_exact(&i3, m, n, &budget).expect("valid size");
            let small = sat_exact(&i2, m - 1, n - 1, &budget).expect("valid size");
            let step = m + n - 1;
            t.check(big.exhausted && small.exhausted && big.value == small.value + step, || {
                format!("sat(I_3,{m},{n}) = {} but sat(I_2,{},{}) + {step} = {}", big.value, m - 1, n - 1, small.value + step)
            });

            let down = extendcorner_reduce(&big.certificate, &i3);
            t.check(
                down.as_ref().is_ok_and(|d| {
                    d.weight() + step == big.value && is_saturating(d, &i2).unwrap_or(false)
                }),
                || format!("reduce of the sat(I_3,{m},{n}) certificate"),
            );
            let up = extendcorner_extend(&small.certificate, &i2);
            t.check(
                up.as_ref().is_ok_and(|u| {
                    u.weight() == small.value + step && is_saturating(u, &i3).unwrap_or(false)
                }),
                || format!("extend of the sat(I_2,{},{}) certificate", m - 1, n - 1),
            );
            if let Ok(d) = &down {
                let round = extendcorner_extend(d, &i2);
                t.check(round.is_ok_and(|r| r.weight() == big.value), || {
                    format!("extend after reduce at {m}x{n}")
                });
            }
        }
    }
    // the same recursion for a non-identity base
    let base = named(Named::JkReflected, 3);
    let extended = extend_pattern_corner(&base).expect("valid pattern");
    for (m, n) in [(4, 4), (4, 5), (5, 4)] {
        let big = sat_exact(&extended, m, n, &budget).expect("valid size");
        let small = sat_exact(&base, m - 1, n - 1, &budget).expect("valid size");
        t.check(big.exhausted && small.exhausted && big.value == small.value + m + n - 1, || {
            format!("extended J'_3 at {m}x{n}: {} vs {} + {}", big.value, small.value, m + n - 1)
        });
    }
    t
}

fn staircase_clauses(t: &mut Tally, h: &HostMatrix, what: &str) {
    let (m, n) = h.dims();
    match extremal_staircase(h) {
        Ok(s) => {
            t.check(s.len() == m + n - 1, || format!("{what}: staircase size {}", s.len()));
            t.check(below_staircase_zero(h, &s), || format!("{what}: 1 below the staircase"));
        }
        Err(e) => t.check(false, || format!("{what}: {e}")),
    }
    match verify_level_lemmas(h, 3) {
        Ok(r) => {
            for c in &r.clauses {
                t.check(c.passed, || {
                    format!("{what}: clause {} fails at {:?} ({})", c.name, c.witness, c.detail)
                });
            }
        }
        Err(e) => t.check(false, || format!("{what}: {e}")),
    }
}

fn staircase_levels() -> Tally {
    let mut t = Tally::default();
    let p = named(Named::JkReflected, 3);
    let mut all = 0;
    for m in 3..=4 {
        for n in 3..=4 {
            let r = sat_exact(&p, m, n, &search_budget()).expect("valid size");
            t.check(r.exhausted, || format!("sat(J'_3,{m},{n}) did not complete"));
            staircase_clauses(&mut t, &r.certificate, &format!("certificate at {m}x{n}"));
            // every saturating matrix of this size, not only the optimum
            let cells = m * n;
            let saturating: Vec<HostMatrix> = (0u32..1 << cells)
                .into_par_iter()
                .map(|code| HostMatrix::new(BitMatrix::from_fn(m, n, |r, c| code >> (r * n + c) & 1 == 1)))
                .filter(|h| is_saturating(h, &p).unwrap_or(false))
                .collect();
            all += saturating.len();
            for h in &saturating {
                staircase_clauses(&mut t, h, &format!("saturating matrix {}", label(&h.as_pattern())));
            }
        }
    }
    t.note(format!("{all} saturating matrices checked in addition to the certificates"));
    t
}

fn classify_and_cross_check(p: &Pattern) -> Tally {
    let mut t = Tally::default();
    let c = match ssat_classify(p) {
        Ok(c) => c,
        Err(e) => {
            t.check(false, || format!("{}: {e}", label(p)));
            return t;
        }
    };
    let (k, l) = p.dims();
    match c.verdict {
        Verdict::Constant => {
            let full = 2 * (k - 1).max(l - 1);
            for n in k.max(l)..=12 {
                let ok = corner_construction(p, n, n).is_ok_and(|h| {
                    let want = if n > full { (2 * k - 2) * (2 * l - 2) } else { n * n };
                    h.weight() == want && is_semisaturating(&h, p).unwrap_or(false)
                });
                t.check(ok, || format!("corner construction for {} at {n}x{n}", label(p)));
            }
        }
        Verdict::Linear => {
            for n in 1..=5 {
                let r = ssat_exact(p, n, n, &search_budget()).expect("valid size");
                let lower = if r.exhausted { r.value } else { r.proven_bound };
                t.check(lower >= n, || format!("ssat({}, {n}, {n}) >= {lower} < {n}", label(p)));
            }
        }
        Verdict::Unknown => t.check(false, || format!("{}: no semisaturation verdict", label(p))),
    }
    t
}

fn semisaturation_dichotomy() -> Tally {
    let mut t = Tally::default();
    let patterns = corpus();
    let parts: Vec<Tally> = patterns.par_iter().map(classify_and_cross_check).collect();
    let constant = patterns
        .iter()
        .filter(|p| ssat_classify(p).is_ok_and(|c| c.verdict == Verdict::Constant))
        .count();
    for part in parts {
        t.merge(part);
    }
    t.note(format!("{constant} of {} corpus patterns bounded", patterns.len()));
    let mut perms: Vec<(String, Pattern)> = Vec::new();
    for k in 1..=5 {
        perms.push((format!("I_{k}"), named(Named::Identity, k)));
    }
    for k in 2..=5 {
        perms.push((format!("J_{k}"), named(Named::Jk, k)));
    }
    perms.push(("I'_3".into(), named(Named::IdentityReflected, 3)));
    perms.push(("J'_3".into(), named(Named::JkReflected, 3)));
    perms.push(("Q".into(), pattern_q()));
    for (name, p) in &perms {
        let v = ssat_classify(p).map(|c| c.verdict);
        t.check(v == Ok(Verdict::Constant), || format!("{name} classified {v:?}"));
        t.merge(classify_and_cross_check(p));
    }
    t
}

fn single_one_patterns() -> Tally {
    let jobs: Vec<(usize, usize, Position)> = (1..=3)
        .flat_map(|k| (1..=3).map(move |l| (k, l)))
        .flat_map(|(k, l)| {
            (0..k).flat_map(move |r| (0..l).map(move |c| (k, l, Position::new(r, c))))
        })
        .collect();
    let parts: Vec<Tally> = jobs
        .into_par_iter()
        .map(|(k, l, q)| {
            let mut t = Tally::default();
            let p = Pattern::new(BitMatrix::from_fn(k, l, |r, c| Position::new(r, c) == q));
            for m in k..=4 {
                for n in l..=4 {
                    let want = frame_weight(k, l, m, n);
                    let sat = exact_value(SearchKind::Sat, &p, m, n);
                    let ssat = exact_value(SearchKind::Ssat, &p, m, n);
                    t.check(sat.exhausted && ssat.exhausted && sat.value == want && ssat.value == want, || {
                        format!("{} at {m}x{n}: sat {} ssat {}, expected {want}", label(&p), sat.value, ssat.value)
                    });
                }
            }
            t
        })
        .collect();
    let mut t = Tally::default();
    for part in parts {
        t.merge(part);
    }
    t
}

fn sandwich() -> Tally {
    let mut t = Tally::default();
    let mut complete = 0;
    for e in corpus_table() {
        if !(e.sat.exhausted && e.ssat.exhausted && e.ex.exhausted) {
            continue;
        }
        complete += 1;
        t.check(e.ssat.value <= e.sat.value && e.sat.value <= e.ex.value, || {
            format!(
                "{} at {}x{}: ssat {} sat {} ex {}",
                label(&e.pattern), e.m, e.n, e.ssat.value, e.sat.value, e.ex.value
            )
        });
    }
    t.note(format!("{complete} of {} instances completed all three searches", corpus_table().len()));
    t
}

fn witnesses(opts: &VerifyOptions) -> Tally {
    let mut t = Tally::default();
    let i1 = named(Named::Identity, 1);
    for m in 1..=4 {
        for n in 1..=4 {
            let h = HostMatrix::zeros(m, n);
            match witness_check(&h, &i1) {
                Ok(w) => {
                    for step in [1, 2, 5] {
                        let ok = pump(&w, step).is_ok_and(|g| {
                            g.dims() == (m + step, n + step)
                                && g.weight() == 0
                                && is_saturating(&g, &i1).unwrap_or(false)
                        });
                        t.check(ok, || format!("pump {step} of the empty {m}x{n} matrix"));
                    }
                }
                Err(e) => t.check(false, || format!("empty {m}x{n} matrix rejected: {e}")),
            }
        }
    }

    let i2 = named(Named::Identity, 2);
    match witness_search(&i2, &WitnessSearchParams::default()) {
        Ok(out) => t.check(out.witness.is_none(), || "witness found for I_2".into()),
        Err(e) => t.check(false, || format!("search on I_2: {e}")),
    }

    let q = pattern_q();
    let params = WitnessSearchParams {
        seed: opts.seed,
        budget: Budget::seconds(opts.witness_seconds),
        ..WitnessSearchParams::default()
    };
    match witness_search(&q, &params) {
        Ok(out) => match (&out.witness, out.found_at) {
            (Some(w), Some((n, b, restart))) => {
                t.note(format!(
                    "Q witness found: {n}x{n} host, corner blocks {b}, restart {restart}, weight {}, {} attempts",
                    w.matrix.weight(),
                    out.attempts
                ));
                t.check(w.matrix.weight() < 400, || format!("Q witness weight {}", w.matrix.weight()));
                t.check(witness_check(&w.matrix, &q).is_ok(), || "Q witness fails re-check".into());
                for step in [1, 2, 5] {
                    let ok = pump(w, step).is_ok_and(|g| is_saturating(&g, &q).unwrap_or(false));
                    t.check(ok, || format!("Q witness pumped by {step}"));
                }
            }
            _ => t.note(format!(
                "Q witness search ended without a witness after {} attempts (budget exhausted: {})",
                out.attempts, out.budget_exhausted
            )),
        },
        Err(e) => t.check(false, || format!("search on Q: {e}")),
    }
    t
}

fn oracle_patterns() -> Vec<Pattern> {
    let mut out = Vec::new();
    for (k, l) in [(1, 1), (1, 2), (2, 1), (1, 3), (3, 1), (1, 4), (4, 1), (2, 2)] {
        for code in 1u32..1 << (k * l) {
            out.push(Pattern::new(BitMatrix::from_fn(k, l, |r, c| code >> (r * l + c) & 1 == 1)));
        }
    }
    out
}

fn oracle_equivalence() -> Tally {
    let hosts: Vec<(usize, usize)> = (1..=12)
        .flat_map(|m| (1..=12 / m).map(move |n| (m, n)))
        .collect();
    let jobs: Vec<(Pattern, usize, usize)> = oracle_patterns()
        .into_iter()
        .flat_map(|p| hosts.iter().map(move |&(m, n)| (p.clone(), m, n)))
        .collect();
    let parts: Vec<Tally> = jobs
        .into_par_iter()
        .map(|(p, m, n)| {
            let mut t = Tally::default();
            let want = oracle::optima(&p, m, n);
            let budget = Budget::unlimited();
            let got = [
                ("sat", sat_exact(&p, m, n, &budget), &want.sat),
                ("ssat", ssat_exact(&p, m, n, &budget), &want.ssat),
                ("ex", ex_exact(&p, m, n, &budget), &want.ex),
            ];
            for (name, r, w) in got {
                let ok = r.as_ref().is_ok_and(|r| {
                    r.exhausted && r.value == w.value && *r.certificate.matrix() == w.certificate
                });
                t.check(ok, || {
                    format!("{name}({}, {m}, {n}): engine {:?}, enumeration {}", label(&p), r.map(|r| r.value), w.value)
                });
            }
            t
        })
        .collect();
    let mut t = Tally::default();
    for part in parts {
        t.merge(part);
    }
    t.note(format!("{} patterns, {} host shapes", oracle_patterns().len(), hosts.len()));
    t
}
