//! Staircases of a host matrix and the level structure of the region above
//! one, used to analyse matrices saturating for `J'_k`.

use std::fmt;

use thiserror::Error;

use crate::constructions::{gen_named, Named};
use crate::error::{Error, Result};
use crate::matrix::{HostMatrix, Position};
use crate::saturation::is_saturating;

/// Why a set of positions fails to be a staircase.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StaircaseViolation {
    #[error("corner {0} is missing")]
    MissingCorner(Position),
    #[error("{0} needs exactly one of its upper and right neighbours in the set")]
    UpRight(Position),
    #[error("{0} needs exactly one of its lower and left neighbours in the set")]
    DownLeft(Position),
    #[error("expected {expected} positions, found {found}")]
    Size { expected: usize, found: usize },
    #[error("{0} lies outside the matrix")]
    OutOfBounds(Position),
}

/// A monotone lattice path from the top-right to the bottom-left corner of an
/// `m x n` grid. Each row meets it in a contiguous span of columns.
#[derive(Clone, PartialEq, Eq)]
pub struct Staircase {
    cols: usize,
    /// Inclusive column span per row.
    spans: Vec<(usize, usize)>,
}

impl Staircase {
    /// Validates `positions` against the staircase axioms.
    pub fn from_positions(
        rows: usize,
        cols: usize,
        positions: &[Position],
    ) -> Result<Self, StaircaseViolation> {
        let mut grid = vec![vec![false; cols]; rows];
        for &p in positions {
            if p.row >= rows || p.col >= cols {
                return Err(StaircaseViolation::OutOfBounds(p));
            }
            grid[p.row][p.col] = true;
        }
        let has = |r: Option<usize>, c: Option<usize>| match (r, c) {
            (Some(r), Some(c)) if r < rows && c < cols => grid[r][c],
            _ => false,
        };
        let top_right = Position::new(0, cols - 1);
        let bottom_left = Position::new(rows - 1, 0);
        for corner in [top_right, bottom_left] {
            if !grid[corner.row][corner.col] {
                return Err(StaircaseViolation::MissingCorner(corner));
            }
        }
        let mut found = 0;
        for (r, line) in grid.iter().enumerate() {
            for (c, _) in line.iter().enumerate().filter(|(_, &set)| set) {
                found += 1;
                let p = Position::new(r, c);
                if p != top_right && has(r.checked_sub(1), Some(c)) == has(Some(r), Some(c + 1)) {
                    return Err(StaircaseViolation::UpRight(p));
                }
                if p != bottom_left && has(Some(r + 1), Some(c)) == has(Some(r), c.checked_sub(1)) {
                    return Err(StaircaseViolation::DownLeft(p));
                }
            }
        }
        let expected = rows + cols - 1;
        if found != expected {
            return Err(StaircaseViolation::Size { expected, found });
        }
        // With the axioms and the size settled the set is exactly the walk
        // from the top-right corner, so every row is one span.
        let mut spans = vec![(usize::MAX, 0); rows];
        let (mut r, mut c) = (0, cols - 1);
        loop {
            let span = &mut spans[r];
            span.0 = span.0.min(c);
            span.1 = span.1.max(c);
            if (r, c) == (rows - 1, 0) {
                break;
            }
            if r + 1 < rows && grid[r + 1][c] {
                r += 1;
            } else {
                c -= 1;
            }
        }
        Ok(Staircase { cols, spans })
    }

    pub fn rows(&self) -> usize {
        self.spans.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn len(&self) -> usize {
        self.rows() + self.cols - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Inclusive column span of row `r`.
    pub fn span(&self, r: usize) -> (usize, usize) {
        self.spans[r]
    }

    pub fn contains(&self, p: Position) -> bool {
        let (a, b) = self.spans[p.row];
        (a..=b).contains(&p.col)
    }

    /// Left of the staircase in its row (equivalently, above it in its column).
    pub fn is_above(&self, p: Position) -> bool {
        p.col < self.spans[p.row].0
    }

    /// Right of the staircase in its row (equivalently, below it in its column).
    pub fn is_below(&self, p: Position) -> bool {
        p.col > self.spans[p.row].1
    }

    /// Positions in row-major order.
    pub fn positions(&self) -> Vec<Position> {
        self.spans
            .iter()
            .enumerate()
            .flat_map(|(r, &(a, b))| (a..=b).map(move |c| Position::new(r, c)))
            .collect()
    }
}

impl fmt::Debug for Staircase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Staircase")
            .field("cols", &self.cols)
            .field("spans", &self.spans)
            .finish()
    }
}

/// The 1 entries with no 1 entry strictly below and to the right.
pub fn extremal_positions(host: &HostMatrix) -> Vec<Position> {
    let (m, n) = host.dims();
    // rightmost column holding a 1 strictly below each row
    let mut right_below: Vec<Option<usize>> = vec![None; m];
    let mut acc: Option<usize> = None;
    for r in (0..m).rev() {
        right_below[r] = acc;
        let w = host.row_word(r);
        if w != 0 {
            let top = 63 - w.leading_zeros() as usize;
            acc = Some(acc.map_or(top, |a| a.max(top)));
        }
    }
    let _ = n;
    host.ones_positions()
        .filter(|p| right_below[p.row].is_none_or(|c| c <= p.col))
        .collect()
}

/// The staircase formed by the extremal 1 entries.
pub fn extremal_staircase(host: &HostMatrix) -> Result<Staircase> {
    let (m, n) = host.dims();
    Ok(Staircase::from_positions(m, n, &extremal_positions(host))?)
}

/// True iff every position below the staircase holds a 0.
pub fn below_staircase_zero(host: &HostMatrix, stairs: &Staircase) -> bool {
    host.ones_positions().all(|p| !stairs.is_below(p))
}

fn check_shape(host: &HostMatrix, stairs: &Staircase) -> Result<()> {
    if host.dims() != (stairs.rows(), stairs.cols()) {
        return Err(Error::Precondition(format!(
            "staircase is {}x{} but the matrix is {}x{}",
            stairs.rows(),
            stairs.cols(),
            host.rows(),
            host.cols()
        )));
    }
    Ok(())
}

/// Level of every position above the staircase; `None` elsewhere.
///
/// A position `p` is on level `l` when `l` is the largest size of an
/// anti-diagonal `I'_l` with bottom-left entry `p` whose other entries are 1s
/// and whose bounding box lies above the staircase.
pub fn levels(host: &HostMatrix, stairs: &Staircase) -> Result<Vec<Vec<Option<usize>>>> {
    check_shape(host, stairs)?;
    let (m, n) = host.dims();
    let mut out = vec![vec![None; n]; m];
    for (r, row) in out.iter_mut().enumerate() {
        let bound = stairs.span(r).0;
        if bound == 0 {
            continue;
        }
        // best[c]: longest up-right chain of 1s starting in column c, using
        // rows processed so far and columns below `bound`
        let mut best = vec![0usize; bound];
        for rr in 0..r {
            let mut next = best.clone();
            let mut suffix = 0;
            for c in (0..bound).rev() {
                if host.get(Position::new(rr, c)) {
                    next[c] = next[c].max(suffix + 1);
                }
                suffix = suffix.max(best[c]);
            }
            best = next;
        }
        let mut suffix = 0;
        for c in (0..bound).rev() {
            row[c] = Some(suffix + 1);
            suffix = suffix.max(best[c]);
        }
    }
    Ok(out)
}

/// Level of a single position above the staircase.
pub fn level_of(host: &HostMatrix, stairs: &Staircase, p: Position) -> Result<usize> {
    host.check_in_bounds(p)?;
    levels(host, stairs)?[p.row][p.col].ok_or_else(|| {
        Error::Precondition(format!("position {p} is not above the staircase"))
    })
}

/// Mirror-image levels: the largest `I'_l` with top-right entry `p`, other
/// entries 1, bounding box above the staircase.
#[allow(clippy::needless_range_loop)]
pub fn co_levels(host: &HostMatrix, stairs: &Staircase) -> Result<Vec<Vec<Option<usize>>>> {
    check_shape(host, stairs)?;
    let (m, n) = host.dims();
    let mut out = vec![vec![None; n]; m];
    for c0 in 0..n {
        // rows whose span starts right of c0 form a prefix
        let depth = (0..m).take_while(|&r| stairs.span(r).0 > c0).count();
        // best[c]: longest down-left chain of 1s starting in column c among
        // rows processed so far (bottom-up), columns below c0
        let mut best = vec![0usize; c0];
        for r in (0..depth).rev() {
            let mut prefix = 0;
            for b in &best {
                prefix = prefix.max(*b);
            }
            out[r][c0] = Some(prefix + 1);
            let mut next = best.clone();
            let mut prefix = 0;
            for c in 0..c0 {
                if host.get(Position::new(r, c)) {
                    next[c] = next[c].max(prefix + 1);
                }
                prefix = prefix.max(best[c]);
            }
            best = next;
        }
    }
    Ok(out)
}

/// Outcome of one structural check in [`verify_level_lemmas`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelClause {
    pub name: &'static str,
    pub passed: bool,
    /// Reported but not part of the overall verdict.
    pub experimental: bool,
    /// First offending position, when there is one.
    pub witness: Option<Position>,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct LevelReport {
    pub k: usize,
    pub staircase: Staircase,
    pub levels: Vec<Vec<Option<usize>>>,
    pub clauses: Vec<LevelClause>,
}

impl LevelReport {
    /// All non-experimental clauses hold.
    pub fn passed(&self) -> bool {
        self.clauses.iter().all(|c| c.passed || c.experimental)
    }

    pub fn clause(&self, name: &str) -> Option<&LevelClause> {
        self.clauses.iter().find(|c| c.name == name)
    }
}

struct Clauses(Vec<LevelClause>);

impl Clauses {
    fn push(&mut self, name: &'static str, witness: Option<Position>, detail: String) {
        self.0.push(LevelClause {
            name,
            passed: witness.is_none(),
            experimental: false,
            witness,
            detail,
        });
    }
}

/// Checks the level structure of a matrix saturating for `J'_k`: the
/// extremal staircase with nothing below it, level bounds for 1s and 0s,
/// first and last levels in each row, unit steps between neighbours, 1s at
/// the leftmost entry of each level, and the two weight counts.
pub fn verify_level_lemmas(host: &HostMatrix, k: usize) -> Result<LevelReport> {
    let pattern = gen_named(Named::JkReflected, k)?;
    let (m, n) = host.dims();
    if m < k || n < k {
        return Err(Error::Precondition(format!(
            "host {m}x{n} is smaller than the {k}x{k} pattern"
        )));
    }
    if !is_saturating(host, &pattern)? {
        return Err(Error::NotSaturating);
    }
    let stairs = extremal_staircase(host)?;
    let lv = levels(host, &stairs)?;
    let level = |p: Position| lv[p.row][p.col];
    let above: Vec<Position> = host.positions().filter(|&p| stairs.is_above(p)).collect();
    let mut clauses = Clauses(Vec::new());

    let below = host.ones_positions().find(|&p| stairs.is_below(p));
    clauses.push("below-staircase-zero", below, format!("staircase of {} positions", stairs.len()));

    let ones_max = k - 2;
    let bad = above.iter().copied().find(|&p| host.get(p) && level(p) > Some(ones_max));
    clauses.push("ones-level-bound", bad, format!("1s above the staircase on level <= {ones_max}"));

    let bad = above.iter().copied().find(|&p| !host.get(p) && level(p) > Some(k - 1));
    clauses.push("zeros-level-bound", bad, format!("0s above the staircase on level <= {}", k - 1));

    // first position of each row but the last
    let mut deep = [0usize; 2];
    let mut bad = None;
    for r in 0..m - 1 {
        let p = Position::new(r, 0);
        let i = r + 1;
        let ok = match level(p) {
            None => false,
            Some(l) if i <= k - 2 => l == i,
            Some(l) if l == k - 2 => {
                deep[0] += 1;
                true
            }
            Some(l) if l == k - 1 => {
                deep[1] += 1;
                true
            }
            Some(_) => false,
        };
        if !ok && bad.is_none() {
            bad = Some(p);
        }
    }
    clauses.push(
        "row-start-level",
        bad,
        format!(
            "rows past k-2 start on level k-2 {} times and on level k-1 {} times",
            deep[0], deep[1]
        ),
    );

    let bad = (0..m - 1).find_map(|r| {
        let a = stairs.span(r).0;
        let p = Position::new(r, a.wrapping_sub(1));
        (a == 0 || level(p) != Some(1)).then_some(p)
    });
    clauses.push("row-end-level", bad, "last position above the staircase is on level 1".into());

    let bad = above.iter().copied().filter(|p| p.col > 0).find(|&p| {
        let (l, left) = (level(p), level(Position::new(p.row, p.col - 1)));
        match (l, left) {
            (Some(l), Some(left)) => !(l <= left && left <= l + 1),
            _ => true,
        }
    });
    clauses.push("adjacent-levels", bad, "left neighbour is on the same level or one higher".into());

    let mut bad = None;
    for l in 1..=k - 2 {
        for r in (l - 1)..(m - 1) {
            let leftmost = (0..n)
                .map(|c| Position::new(r, c))
                .find(|&p| level(p) == Some(l));
            match leftmost {
                Some(p) if host.get(p) => {}
                Some(p) => bad = bad.or(Some(p)),
                None => bad = bad.or(Some(Position::new(r, 0))),
            }
        }
    }
    clauses.push("leftmost-level-entry", bad, "leftmost entry of each level is a 1".into());

    let w = host.weight();
    let by_rows = (m + n - 1) + (1..=k - 2).map(|l| n - l).sum::<usize>();
    let by_cols = (m + n - 1) + (1..=k - 2).map(|l| m - l).sum::<usize>();
    let fail = |bound: usize| (bound > w).then_some(Position::new(0, 0));
    clauses.push("count-by-rows", fail(by_rows), format!("{by_rows} <= weight {w}"));
    clauses.push("count-by-cols", fail(by_cols), format!("{by_cols} <= weight {w}"));

    if k >= 3 {
        let co = co_levels(host, &stairs)?;
        let first_on = |l: usize| -> Vec<Position> {
            (0..m)
                .filter_map(|r| (0..n).map(|c| Position::new(r, c)).find(|&p| lv[p.row][p.col] == Some(l)))
                .collect()
        };
        let top_on = |l: usize| -> Vec<Position> {
            (0..n)
                .filter_map(|c| (0..m).map(|r| Position::new(r, c)).find(|&p| co[p.row][p.col] == Some(l)))
                .collect()
        };
        let l1 = first_on(1);
        let lk = top_on(k - 2);
        let shared = l1
            .iter()
            .copied()
            .find(|p| lk.contains(p) && !(k == 3 && *p == Position::new(0, 0)));
        clauses.0.push(LevelClause {
            name: "level-sets-disjoint",
            passed: shared.is_none(),
            experimental: k != 3,
            witness: shared,
            detail: format!("{} leftmost level-1 entries, {} topmost co-level-{} entries", l1.len(), lk.len(), k - 2),
        });
    }

    Ok(LevelReport {
        k,
        staircase: stairs,
        levels: lv,
        clauses: clauses.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn host(s: &str) -> HostMatrix {
        HostMatrix::parse(s).unwrap()
    }

    #[test]
    fn staircase_axioms() {
        let s = Staircase::from_positions(
            2,
            3,
            &[Position::new(0, 1), Position::new(0, 2), Position::new(1, 0), Position::new(1, 1)],
        )
        .unwrap();
        assert_eq!(s.span(0), (1, 2));
        assert_eq!(s.span(1), (0, 1));
        assert!(s.is_above(Position::new(0, 0)));
        assert!(s.is_below(Position::new(1, 2)));
        assert_eq!(s.positions().len(), s.len());

        assert!(matches!(
            Staircase::from_positions(2, 2, &[Position::new(0, 1), Position::new(1, 0)]),
            Err(StaircaseViolation::DownLeft(_))
        ));
        assert!(matches!(
            Staircase::from_positions(2, 2, &[Position::new(0, 1)]),
            Err(StaircaseViolation::MissingCorner(_))
        ));
    }

    #[test]
    fn extremal_staircase_of_frame() {
        let m = host("111\n100\n100");
        let s = extremal_staircase(&m).unwrap();
        assert_eq!(s.len(), 5);
        assert!(below_staircase_zero(&m, &s));
        assert!(extremal_staircase(&host("00\n00")).is_err());
    }

    #[test]
    fn levels_count_antidiagonals() {
        // staircase is the last row and column, everything else above it
        let m = host("0011\n0101\n1001\n1111");
        let s = extremal_staircase(&m).unwrap();
        assert_eq!(s.span(0), (3, 3));
        let lv = levels(&m, &s).unwrap();
        assert_eq!(lv[0][0], Some(1));
        assert_eq!(lv[1][0], Some(2));
        assert_eq!(lv[2][0], Some(3));
        assert_eq!(lv[2][1], Some(2));
        assert_eq!(lv[1][2], Some(1));
        assert_eq!(lv[3][0], None);
        assert_eq!(level_of(&m, &s, Position::new(1, 1)).unwrap(), 2);
        let co = co_levels(&m, &s).unwrap();
        assert_eq!(co[0][2], Some(3));
        assert_eq!(co[0][0], Some(1));
        assert_eq!(co[1][2], Some(2));
        assert_eq!(co[3][0], None);
    }

    #[test]
    fn lemmas_on_small_saturating_matrix() {
        let jp3 = gen_named(Named::JkReflected, 3).unwrap();
        let m = crate::saturation::greedy_complete(&HostMatrix::zeros(4, 4), &jp3).unwrap();
        let report = verify_level_lemmas(&m, 3).unwrap();
        assert!(report.passed(), "{report:#?}");
        assert_eq!(
            verify_level_lemmas(&HostMatrix::zeros(4, 4), 3).unwrap_err(),
            Error::NotSaturating
        );
    }

    #[test]
    fn frame_and_corrupted_matrices() {
        let jp3 = gen_named(Named::JkReflected, 3).unwrap();
        for (m, n) in [(3, 3), (4, 5), (6, 4)] {
            let frame = crate::constructions::gen_frame(&jp3, m, n, None).unwrap();
            let report = verify_level_lemmas(&frame, 3).unwrap();
            assert!(report.clauses.iter().all(|c| c.passed), "{frame:?}");

            let one = frame.ones_positions().next().unwrap();
            let broken = frame.flipped(one);
            assert_eq!(verify_level_lemmas(&broken, 3).unwrap_err(), Error::NotSaturating);
        }
    }

    #[test]
    fn ones_below_a_staircase() {
        let all = HostMatrix::ones(3, 4);
        let s = extremal_staircase(&all).unwrap();
        assert!(below_staircase_zero(&all, &s));
        // the first row and column as the staircase leave a 1 below it
        let l_shape: Vec<Position> = (0..4)
            .map(|c| Position::new(0, c))
            .chain((1..3).map(|r| Position::new(r, 0)))
            .collect();
        let s = Staircase::from_positions(3, 4, &l_shape).unwrap();
        assert!(!below_staircase_zero(&all, &s));
        assert!(level_of(&all, &s, Position::new(1, 1)).is_err());
    }
}
