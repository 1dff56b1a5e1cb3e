//! Constant-versus-linear verdicts for saturation and semisaturation.
//!
//! Semisaturation is decided exactly by three structural properties of the
//! pattern. Saturation has no known decision procedure, so the classifier
//! combines sufficient conditions for linear growth with a search for witness
//! matrices, and answers `Unknown` when neither settles the question.

use std::fmt;
use std::ops::{Range, RangeInclusive};
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error as ThisError;

use crate::error::{Error, Result};
use crate::matrix::{BitMatrix, HostMatrix, Pattern, Position};
use crate::saturation::{greedy_complete_with, GreedyOptions};
use crate::search::{sat_exact, Budget};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Constant,
    Linear,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Constant => "Constant",
            Verdict::Linear => "Linear",
            Verdict::Unknown => "Unknown",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Boundary {
    FirstRow,
    LastRow,
    FirstCol,
    LastCol,
}

impl fmt::Display for Boundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Boundary::FirstRow => "first row",
            Boundary::LastRow => "last row",
            Boundary::FirstCol => "first column",
            Boundary::LastCol => "last column",
        })
    }
}

/// The criterion behind a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    /// All three semisaturation properties hold.
    SsatPropertiesHold,
    /// Semisaturation property 1, 2 or 3 fails (the first failing one).
    SsatPropertyFails(u8),
    /// Every row has at least two 1 entries.
    EveryRowTwoOnes,
    /// Every column has at least two 1 entries.
    EveryColTwoOnes,
    /// A boundary line of the pattern is all-zero.
    ZeroBoundary(Boundary),
    /// The pattern splits as `[A 0; 0 B]` with `A` on the first `rows` rows
    /// and `cols` columns, both blocks nonzero.
    BlockDiagonal { rows: usize, cols: usize },
    /// A witness matrix was found and verified.
    Witness,
    /// Nothing applied within the budget.
    Undecided,
}

impl Rule {
    pub fn tag(&self) -> String {
        match self {
            Rule::SsatPropertiesHold => "ssat-properties-hold".into(),
            Rule::SsatPropertyFails(i) => format!("ssat-property-{i}-fails"),
            Rule::EveryRowTwoOnes => "every-row-two-ones".into(),
            Rule::EveryColTwoOnes => "every-column-two-ones".into(),
            Rule::ZeroBoundary(b) => format!("zero-{}", b.to_string().replace(' ', "-")),
            Rule::BlockDiagonal { .. } => "block-diagonal".into(),
            Rule::Witness => "witness".into(),
            Rule::Undecided => "undecided".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Witness(WitnessCertificate),
    /// 1-based index of a semisaturation property.
    Property(u8),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub verdict: Verdict,
    pub rule: Rule,
    pub certificate: Option<Certificate>,
}

/// A saturating matrix whose empty row and column runs can be pumped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessCertificate {
    pub matrix: HostMatrix,
    /// 0-based half-open run of all-zero rows.
    pub empty_rows: Range<usize>,
    /// 0-based half-open run of all-zero columns.
    pub empty_cols: Range<usize>,
    /// All-zero rows of the pattern.
    pub s_rows: usize,
    /// All-zero columns of the pattern.
    pub s_cols: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, ThisError)]
pub enum WitnessFailure {
    #[error(transparent)]
    Input(#[from] Error),
    #[error("the matrix contains the pattern")]
    ContainsPattern,
    #[error("flipping {0} creates no occurrence, so the matrix is not saturating")]
    NotMaximal(Position),
    #[error("no run of {needed} consecutive empty rows")]
    NoEmptyRows { needed: usize },
    #[error("no run of {needed} consecutive empty columns")]
    NoEmptyCols { needed: usize },
}

/// The three semisaturation properties, in order:
/// 1. first and last row each hold a 1 that is alone in its column;
/// 2. first and last column each hold a 1 that is alone in its row;
/// 3. some 1 is alone in both its row and its column.
pub fn ssat_properties(pattern: &Pattern) -> Result<[bool; 3]> {
    pattern.ensure_nonzero()?;
    let (k, l) = pattern.dims();
    let row_w: Vec<usize> = (0..k).map(|r| pattern.row_weight(r)).collect();
    let col_w: Vec<usize> = (0..l).map(|c| pattern.col_weight(c)).collect();
    let lonely_in_col = |r: usize| {
        (0..l).any(|c| pattern.get(Position::new(r, c)) && col_w[c] == 1)
    };
    let lonely_in_row = |c: usize| {
        (0..k).any(|r| pattern.get(Position::new(r, c)) && row_w[r] == 1)
    };
    Ok([
        lonely_in_col(0) && lonely_in_col(k - 1),
        lonely_in_row(0) && lonely_in_row(l - 1),
        pattern
            .ones_positions()
            .any(|p| row_w[p.row] == 1 && col_w[p.col] == 1),
    ])
}

/// Exact constant-versus-linear verdict for the semisaturation function.
pub fn ssat_classify(pattern: &Pattern) -> Result<Classification> {
    let props = ssat_properties(pattern)?;
    Ok(match props.iter().position(|&ok| !ok) {
        None => Classification {
            verdict: Verdict::Constant,
            rule: Rule::SsatPropertiesHold,
            certificate: None,
        },
        Some(i) => Classification {
            verdict: Verdict::Linear,
            rule: Rule::SsatPropertyFails(i as u8 + 1),
            certificate: Some(Certificate::Property(i as u8 + 1)),
        },
    })
}

/// All-1 blocks of size `(k-1) x (l-1)` in the four corners, zeros elsewhere.
///
/// Requires all three semisaturation properties. When
/// `min(m, n) <= max(2k-2, 2l-2)` the corners would overlap and the all-1
/// matrix is returned instead.
pub fn corner_construction(pattern: &Pattern, m: usize, n: usize) -> Result<HostMatrix> {
    let props = ssat_properties(pattern)?;
    if let Some(i) = props.iter().position(|&ok| !ok) {
        return Err(Error::Precondition(format!(
            "semisaturation property {} fails for the pattern",
            i + 1
        )));
    }
    BitMatrix::try_zeros(m, n)?;
    let (k, l) = pattern.dims();
    if m.min(n) <= (2 * k - 2).max(2 * l - 2) {
        return Ok(HostMatrix::ones(m, n));
    }
    let (bh, bw) = (k - 1, l - 1);
    Ok(HostMatrix::new(BitMatrix::from_fn(m, n, |r, c| {
        (r < bh || r >= m - bh) && (c < bw || c >= n - bw)
    })))
}

/// Splits `[A 0; 0 B]` with nonzero blocks; returns the size of `A`.
pub fn block_split(pattern: &Pattern) -> Option<(usize, usize)> {
    let (k, l) = pattern.dims();
    for r in 1..k {
        for c in 1..l {
            let top_right_zero =
                (0..r).all(|i| pattern.row_word(i) >> c == 0);
            let low = crate::matrix::low_mask(c);
            let bottom_left_zero = (r..k).all(|i| pattern.row_word(i) & low == 0);
            let a_nonzero = (0..r).any(|i| pattern.row_word(i) & low != 0);
            let b_nonzero = (r..k).any(|i| pattern.row_word(i) >> c != 0);
            if top_right_zero && bottom_left_zero && a_nonzero && b_nonzero {
                return Some((r, c));
            }
        }
    }
    None
}

/// First sufficient condition for linear saturation that the pattern meets.
pub fn linear_sufficient(pattern: &Pattern) -> Result<Option<Classification>> {
    pattern.ensure_nonzero()?;
    let (k, l) = pattern.dims();
    let linear = |rule| {
        Some(Classification {
            verdict: Verdict::Linear,
            rule,
            certificate: None,
        })
    };
    if (0..k).all(|r| pattern.row_weight(r) >= 2) {
        return Ok(linear(Rule::EveryRowTwoOnes));
    }
    if (0..l).all(|c| pattern.col_weight(c) >= 2) {
        return Ok(linear(Rule::EveryColTwoOnes));
    }
    let boundaries = [
        (Boundary::FirstRow, pattern.is_zero_row(0)),
        (Boundary::LastRow, pattern.is_zero_row(k - 1)),
        (Boundary::FirstCol, pattern.is_zero_col(0)),
        (Boundary::LastCol, pattern.is_zero_col(l - 1)),
    ];
    if let Some((b, _)) = boundaries.iter().find(|(_, zero)| *zero) {
        return Ok(linear(Rule::ZeroBoundary(*b)));
    }
    if let Some((rows, cols)) = block_split(pattern) {
        return Ok(linear(Rule::BlockDiagonal { rows, cols }));
    }
    Ok(None)
}

fn longest_run(len: usize, empty: impl Fn(usize) -> bool) -> Range<usize> {
    let mut best = 0..0;
    let mut start = None;
    for i in 0..=len {
        if i < len && empty(i) {
            start.get_or_insert(i);
        } else if let Some(s) = start.take() {
            if i - s > best.len() {
                best = s..i;
            }
        }
    }
    best
}

/// Checks that `host` is a witness for `pattern`: saturating, with a run of
/// at least `s_rows + 1` empty rows and one of at least `s_cols + 1` empty
/// columns, where `s_rows`/`s_cols` count the pattern's all-zero rows/columns.
/// The longest qualifying runs are reported.
pub fn witness_check(
    host: &HostMatrix,
    pattern: &Pattern,
) -> std::result::Result<WitnessCertificate, WitnessFailure> {
    pattern.ensure_nonzero()?;
    if crate::containment::contains_unchecked(host, pattern) {
        return Err(WitnessFailure::ContainsPattern);
    }
    if let Some(q) = crate::saturation::first_free_zero(host, pattern)? {
        return Err(WitnessFailure::NotMaximal(q));
    }
    structural_witness(host, pattern)
}

fn structural_witness(
    host: &HostMatrix,
    pattern: &Pattern,
) -> std::result::Result<WitnessCertificate, WitnessFailure> {
    let s_rows = pattern.zero_rows();
    let s_cols = pattern.zero_cols();
    let empty_rows = longest_run(host.rows(), |r| host.is_zero_row(r));
    if empty_rows.len() < s_rows + 1 {
        return Err(WitnessFailure::NoEmptyRows { needed: s_rows + 1 });
    }
    let empty_cols = longest_run(host.cols(), |c| host.is_zero_col(c));
    if empty_cols.len() < s_cols + 1 {
        return Err(WitnessFailure::NoEmptyCols { needed: s_cols + 1 });
    }
    Ok(WitnessCertificate {
        matrix: host.clone(),
        empty_rows,
        empty_cols,
        s_rows,
        s_cols,
    })
}

/// Inserts `t` empty rows inside the empty row run and `t` empty columns
/// inside the empty column run. Weight is unchanged and saturation is kept.
pub fn pump(witness: &WitnessCertificate, t: usize) -> Result<HostMatrix> {
    let m = &witness.matrix;
    let rows_ok = witness.empty_rows.end <= m.rows()
        && witness.empty_rows.len() > witness.s_rows
        && witness.empty_rows.clone().all(|r| m.is_zero_row(r));
    let cols_ok = witness.empty_cols.end <= m.cols()
        && witness.empty_cols.len() > witness.s_cols
        && witness.empty_cols.clone().all(|c| m.is_zero_col(c));
    if !rows_ok || !cols_ok {
        return Err(Error::Precondition(
            "witness certificate does not describe empty runs of the required length".into(),
        ));
    }
    if t == 0 {
        return Ok(m.clone());
    }
    let grown = m
        .insert_zero_rows(witness.empty_rows.start, t)?
        .insert_zero_cols(witness.empty_cols.start, t)?;
    Ok(HostMatrix::new(grown))
}

/// Parameters of [`witness_search`].
#[derive(Clone, Debug)]
pub struct WitnessSearchParams {
    /// Side lengths `b` of the four fillable corner blocks.
    pub block_sizes: RangeInclusive<usize>,
    /// Host sizes `n` (hosts are `n x n`).
    pub sizes: RangeInclusive<usize>,
    /// Randomized scan orders tried per skeleton; the first is row-major.
    pub restarts: usize,
    pub seed: u64,
    /// `max_nodes` caps the number of completions tried.
    pub budget: Budget,
}

impl Default for WitnessSearchParams {
    fn default() -> Self {
        WitnessSearchParams {
            block_sizes: 1..=10,
            sizes: 1..=23,
            restarts: 100,
            seed: 0,
            budget: Budget::seconds(30.0),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessSearchOutcome {
    pub witness: Option<WitnessCertificate>,
    pub attempts: u64,
    /// True when the budget stopped the search before every skeleton was tried.
    pub budget_exhausted: bool,
    /// `(n, b, restart)` of the successful attempt.
    pub found_at: Option<(usize, usize, usize)>,
}

/// Corner-block skeleton: four `b x b` blocks fillable, the cross between them empty.
pub fn corner_mask(n: usize, b: usize) -> BitMatrix {
    BitMatrix::from_fn(n, n, |r, c| (r < b || r >= n - b) && (c < b || c >= n - b))
}

/// Searches for a witness of constant saturation.
///
/// Each skeleton is an `n x n` host whose four `b x b` corners may be filled
/// and whose middle cross stays empty. Corners are filled greedily in
/// row-major and then shuffled orders, and a completion is accepted only if
/// it is saturating over the whole host, empty cross included, and passes
/// [`witness_check`]. Failure is not a proof of linearity.
pub fn witness_search(
    pattern: &Pattern,
    params: &WitnessSearchParams,
) -> Result<WitnessSearchOutcome> {
    pattern.ensure_nonzero()?;
    let started = Instant::now();
    let gap = pattern.zero_rows().max(pattern.zero_cols()) + 1;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut attempts = 0u64;
    let zero_host = |n| HostMatrix::zeros(n, n);
    for n in params.sizes.clone() {
        if n == 0 || n > crate::matrix::MAX_DIM {
            continue;
        }
        for b in params.block_sizes.clone() {
            if 2 * b + gap > n {
                break;
            }
            let mask = corner_mask(n, b);
            let mut order: Vec<Position> = mask.ones_positions().collect();
            for restart in 0..params.restarts.max(1) {
                if attempts >= params.budget.max_nodes
                    || started.elapsed().as_secs_f64() >= params.budget.max_seconds
                {
                    return Ok(WitnessSearchOutcome {
                        witness: None,
                        attempts,
                        budget_exhausted: true,
                        found_at: None,
                    });
                }
                if restart > 0 {
                    order.shuffle(&mut rng);
                }
                attempts += 1;
                let filled = greedy_complete_with(
                    &zero_host(n),
                    pattern,
                    &GreedyOptions {
                        mask: Some(&mask),
                        order: Some(&order),
                    },
                )?;
                if let Ok(w) = witness_check(&filled, pattern) {
                    return Ok(WitnessSearchOutcome {
                        witness: Some(w),
                        attempts,
                        budget_exhausted: false,
                        found_at: Some((n, b, restart)),
                    });
                }
            }
        }
    }
    Ok(WitnessSearchOutcome {
        witness: None,
        attempts,
        budget_exhausted: false,
        found_at: None,
    })
}

/// Best-effort verdict for the saturation function.
///
/// Linear when a sufficient condition applies. Otherwise exact optima at
/// desk-scale square sizes `n0 >= max(k, l)` with weight below
/// `n0 / (max(k, l) - 1)` are scanned for witness runs, then
/// [`witness_search`] runs with `witness` parameters. `Unknown` when neither
/// produces a certificate.
pub fn sat_classify(
    pattern: &Pattern,
    search_budget: &Budget,
    witness: &WitnessSearchParams,
) -> Result<Classification> {
    if let Some(c) = linear_sufficient(pattern)? {
        return Ok(c);
    }
    let (k, l) = pattern.dims();
    let kk = k.max(l);
    if kk > 1 {
        let mut n0 = kk;
        while n0 * n0 <= 25 {
            let r = sat_exact(pattern, n0, n0, search_budget)?;
            if r.exhausted && r.value * (kk - 1) < n0 {
                if let Ok(w) = witness_check(&r.certificate, pattern) {
                    return Ok(constant(w));
                }
            }
            n0 += 1;
        }
    }
    let outcome = witness_search(pattern, witness)?;
    Ok(match outcome.witness {
        Some(w) => constant(w),
        None => Classification {
            verdict: Verdict::Unknown,
            rule: Rule::Undecided,
            certificate: None,
        },
    })
}

fn constant(w: WitnessCertificate) -> Classification {
    Classification {
        verdict: Verdict::Constant,
        rule: Rule::Witness,
        certificate: Some(Certificate::Witness(w)),
    }
}
