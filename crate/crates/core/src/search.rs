//! Exact minimum- and maximum-weight searches for `sat`, `ssat` and `ex`.
//!
//! The host is flattened into at most 128 cells (row-major) and every
//! row/column selection of the pattern becomes a cell mask, its *edge*. A
//! host contains the pattern iff it covers an edge, so
//!
//! * avoiding hosts are independent sets of the edge hypergraph,
//! * a 0 entry `q` is *completed* when some edge `e` through `q` has
//!   `e \ {q}` covered by ones (a new occurrence appears when `q` flips),
//! * saturating hosts are maximal independent sets, semisaturating hosts are
//!   sets completing every 0 entry.
//!
//! Every search runs iterative deepening on the weight. Each level is a
//! depth-first search deciding cells in row-major order, 0 before 1, so the
//! first certificate found at the optimal level is the lexicographically
//! smallest optimum in row-major bit order. The result does not depend on
//! visit order or timing unless the budget runs out.

use std::time::{Duration, Instant};

use crate::containment::contains_unchecked;
use crate::error::{Error, Result};
use crate::matrix::{BitMatrix, HostMatrix, Pattern, Position};
use crate::saturation::greedy_complete;

/// Largest host (in cells) the exact searches accept.
pub const MAX_SEARCH_CELLS: usize = 128;
/// Largest edge hypergraph the exact searches build.
pub const MAX_EDGES: usize = 2_000_000;

/// Resource limits for a search.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Budget {
    pub max_nodes: u64,
    pub max_seconds: f64,
}

impl Budget {
    pub fn new(max_nodes: u64, max_seconds: f64) -> Result<Self> {
        if max_nodes == 0 || max_seconds.is_nan() || max_seconds <= 0.0 {
            return Err(Error::Precondition(
                "budget limits must be positive".to_owned(),
            ));
        }
        Ok(Budget {
            max_nodes,
            max_seconds,
        })
    }

    pub fn seconds(max_seconds: f64) -> Self {
        Budget {
            max_nodes: u64::MAX,
            max_seconds,
        }
    }

    pub fn nodes(max_nodes: u64) -> Self {
        Budget {
            max_nodes,
            max_seconds: f64::INFINITY,
        }
    }

    pub fn unlimited() -> Self {
        Budget {
            max_nodes: u64::MAX,
            max_seconds: f64::INFINITY,
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_nodes: 200_000_000,
            max_seconds: 60.0,
        }
    }
}

/// Which extremal quantity a search computes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SearchKind {
    Sat,
    Ssat,
    Ex,
}

impl SearchKind {
    pub fn name(self) -> &'static str {
        match self {
            SearchKind::Sat => "sat",
            SearchKind::Ssat => "ssat",
            SearchKind::Ex => "ex",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub kind: SearchKind,
    /// Optimal weight when `exhausted`, otherwise the best known bound
    /// (an upper bound for `sat`/`ssat`, a lower bound for `ex`).
    pub value: usize,
    /// A matrix of weight `value` satisfying the search predicate.
    pub certificate: HostMatrix,
    pub nodes_explored: u64,
    /// True iff optimality was proven.
    pub exhausted: bool,
    /// Proven bound on the optimum: a lower bound for `sat`/`ssat`, an upper
    /// bound for `ex`. Equals `value` when `exhausted`.
    pub proven_bound: usize,
}

/// Minimum weight of an `m x n` matrix saturating for `pattern`.
pub fn sat_exact(pattern: &Pattern, m: usize, n: usize, budget: &Budget) -> Result<SearchResult> {
    run(SearchKind::Sat, pattern, m, n, budget)
}

/// Minimum weight of an `m x n` matrix semisaturating for `pattern`.
pub fn ssat_exact(pattern: &Pattern, m: usize, n: usize, budget: &Budget) -> Result<SearchResult> {
    run(SearchKind::Ssat, pattern, m, n, budget)
}

/// Maximum weight of an `m x n` matrix avoiding `pattern`.
pub fn ex_exact(pattern: &Pattern, m: usize, n: usize, budget: &Budget) -> Result<SearchResult> {
    run(SearchKind::Ex, pattern, m, n, budget)
}

pub fn exact(
    kind: SearchKind,
    pattern: &Pattern,
    m: usize,
    n: usize,
    budget: &Budget,
) -> Result<SearchResult> {
    run(kind, pattern, m, n, budget)
}

fn trivial(kind: SearchKind, certificate: HostMatrix) -> SearchResult {
    let value = certificate.weight();
    SearchResult {
        kind,
        value,
        certificate,
        nodes_explored: 0,
        exhausted: true,
        proven_bound: value,
    }
}

fn run(kind: SearchKind, pattern: &Pattern, m: usize, n: usize, budget: &Budget) -> Result<SearchResult> {
    BitMatrix::try_zeros(m, n)?;
    let (k, l) = pattern.dims();
    if m < k || n < l {
        // no m x n matrix can contain the pattern
        return Ok(trivial(kind, HostMatrix::ones(m, n)));
    }
    if pattern.all_zero() {
        return match kind {
            SearchKind::Sat | SearchKind::Ssat => Ok(trivial(kind, HostMatrix::zeros(m, n))),
            SearchKind::Ex => Err(Error::AllZeroPattern),
        };
    }
    let fallback = greedy_complete(&HostMatrix::zeros(m, n), pattern)?;
    let problem = Problem::build(kind, pattern, m, n);
    let Some(problem) = problem else {
        let bound = match kind {
            SearchKind::Ex => m * n,
            _ => 0,
        };
        return Ok(SearchResult {
            kind,
            value: fallback.weight(),
            certificate: fallback,
            nodes_explored: 0,
            exhausted: false,
            proven_bound: bound,
        });
    };
    let mut dfs = Dfs {
        pb: &problem,
        kind,
        target: 0,
        nodes: 0,
        max_nodes: budget.max_nodes,
        deadline: Instant::now().checked_add(Duration::from_secs_f64(
            budget.max_seconds.min(1.0e9),
        )),
        out_of_budget: false,
        found: 0,
    };
    let full = problem.full;
    let outcome = match kind {
        SearchKind::Sat | SearchKind::Ssat => {
            let start = problem.root_lower_bound();
            let mut result = None;
            let mut w = start;
            while w <= problem.cells {
                dfs.target = w;
                if dfs.min_dfs(0, 0, 0, 0) {
                    result = Some(Ok(w));
                    break;
                }
                if dfs.out_of_budget {
                    result = Some(Err(w));
                    break;
                }
                w += 1;
            }
            result.expect("the all-ones level always succeeds")
        }
        SearchKind::Ex => {
            let start = problem.root_upper_bound();
            let mut result = None;
            let mut w = start as isize;
            while w >= 0 {
                dfs.target = w as usize;
                if dfs.max_dfs(0, 0, 0, 0) {
                    result = Some(Ok(w as usize));
                    break;
                }
                if dfs.out_of_budget {
                    result = Some(Err(w as usize));
                    break;
                }
                w -= 1;
            }
            result.expect("the all-zero level always succeeds")
        }
    };
    debug_assert_eq!(dfs.found & !full, 0);
    Ok(match outcome {
        Ok(w) => {
            let certificate = problem.to_host(dfs.found);
            debug_assert_eq!(certificate.weight(), w);
            SearchResult {
                kind,
                value: w,
                certificate,
                nodes_explored: dfs.nodes,
                exhausted: true,
                proven_bound: w,
            }
        }
        Err(level) => {
            // levels strictly better than `level` were refuted
            let (proven_bound, value) = match kind {
                SearchKind::Ex => (level, fallback.weight()),
                _ => (level, fallback.weight()),
            };
            SearchResult {
                kind,
                value,
                certificate: fallback,
                nodes_explored: dfs.nodes,
                exhausted: false,
                proven_bound,
            }
        }
    })
}

#[inline]
fn bit(c: usize) -> u128 {
    1u128 << c
}

struct BitIter128(u128);

impl Iterator for BitIter128 {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let i = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(i)
        }
    }
}

/// Occupancy facts every certificate must satisfy, derived from the
/// pattern's shape.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub(crate) struct Occupancy {
    /// Every host row holds a 1.
    pub every_row: bool,
    /// Every host column holds a 1.
    pub every_col: bool,
    /// The host cannot have an empty row and an empty column at once.
    pub no_empty_cross: bool,
    /// Leading/trailing host rows and columns that must be all-1.
    pub full_top: usize,
    pub full_bottom: usize,
    pub full_left: usize,
    pub full_right: usize,
}

impl Occupancy {
    /// Facts shared by saturating and semisaturating hosts (a saturating host
    /// is semisaturating), plus the block-diagonal fact for saturation.
    pub(crate) fn of(pattern: &Pattern, kind: SearchKind) -> Occupancy {
        let (k, l) = pattern.dims();
        let rows: Vec<u64> = (0..k).map(|r| pattern.row_word(r)).collect();
        let cols: Vec<u64> = (0..l).map(|c| pattern.col_word(c)).collect();
        let lonely_in_col = |r: usize| {
            (0..l).any(|c| (rows[r] >> c) & 1 == 1 && cols[c].count_ones() == 1)
        };
        let lonely_in_row = |c: usize| {
            (0..k).any(|r| (cols[c] >> r) & 1 == 1 && rows[r].count_ones() == 1)
        };
        let doubly_lonely = pattern
            .ones_positions()
            .any(|p| rows[p.row].count_ones() == 1 && cols[p.col].count_ones() == 1);

        let mut occ = Occupancy {
            full_top: rows.iter().take_while(|&&w| w == 0).count(),
            full_bottom: rows.iter().rev().take_while(|&&w| w == 0).count(),
            full_left: cols.iter().take_while(|&&w| w == 0).count(),
            full_right: cols.iter().rev().take_while(|&&w| w == 0).count(),
            ..Occupancy::default()
        };
        // a flip in an empty host row lands in a pattern row needing a second 1
        occ.every_row = rows.iter().all(|&w| w == 0 || w.count_ones() >= 2);
        occ.every_col = cols.iter().all(|&w| w == 0 || w.count_ones() >= 2);
        // the top (bottom) cell of an empty column can only play a 1 of the
        // first (last) pattern row that is alone in its column
        if !lonely_in_col(0) || !lonely_in_col(k - 1) {
            occ.every_col = true;
        }
        if !lonely_in_row(0) || !lonely_in_row(l - 1) {
            occ.every_row = true;
        }
        if !doubly_lonely {
            occ.no_empty_cross = true;
        }
        if kind == SearchKind::Sat && crate::classifier::block_split(pattern).is_some() {
            occ.every_row = true;
            occ.every_col = true;
        }
        occ
    }
}

struct Problem {
    rows: usize,
    cols: usize,
    cells: usize,
    full: u128,
    edges: Vec<u128>,
    by_cell: Vec<Vec<u128>>,
    nbr: Vec<u128>,
    row_masks: Vec<u128>,
    col_masks: Vec<u128>,
    forced: u128,
    occ: Occupancy,
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - k + i {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

impl Problem {
    fn build(kind: SearchKind, pattern: &Pattern, m: usize, n: usize) -> Option<Problem> {
        let cells = m * n;
        if cells > MAX_SEARCH_CELLS {
            return None;
        }
        let (k, l) = pattern.dims();
        if binomial(m, k) * binomial(n, l) > MAX_EDGES as u128 {
            return None;
        }
        let ones: Vec<Position> = pattern.ones_positions().collect();
        let row_sels = combinations(m, k);
        let col_sels = combinations(n, l);
        let mut edges = Vec::with_capacity(row_sels.len() * col_sels.len());
        for rs in &row_sels {
            for cs in &col_sels {
                let e = ones
                    .iter()
                    .fold(0u128, |acc, p| acc | bit(rs[p.row] * n + cs[p.col]));
                edges.push(e);
            }
        }
        edges.sort_unstable();
        edges.dedup();
        let mut by_cell = vec![Vec::new(); cells];
        let mut nbr = vec![0u128; cells];
        for &e in &edges {
            for c in BitIter128(e) {
                by_cell[c].push(e);
                nbr[c] |= e;
            }
        }
        for (c, nb) in nbr.iter_mut().enumerate() {
            *nb &= !bit(c);
        }
        let row_masks: Vec<u128> = (0..m)
            .map(|r| (0..n).fold(0u128, |a, c| a | bit(r * n + c)))
            .collect();
        let col_masks: Vec<u128> = (0..n)
            .map(|c| (0..m).fold(0u128, |a, r| a | bit(r * n + c)))
            .collect();
        let full = if cells == 128 {
            u128::MAX
        } else {
            bit(cells) - 1
        };
        let mut forced = 0u128;
        let occ = match kind {
            SearchKind::Ex => Occupancy::default(),
            _ => Occupancy::of(pattern, kind),
        };
        for r in (0..occ.full_top.min(m)).chain(m.saturating_sub(occ.full_bottom)..m) {
            forced |= row_masks[r];
        }
        for c in (0..occ.full_left.min(n)).chain(n.saturating_sub(occ.full_right)..n) {
            forced |= col_masks[c];
        }
        Some(Problem {
            rows: m,
            cols: n,
            cells,
            full,
            edges,
            by_cell,
            nbr,
            row_masks,
            col_masks,
            forced,
            occ,
        })
    }

    fn to_host(&self, ones: u128) -> HostMatrix {
        let mut h = HostMatrix::zeros(self.rows, self.cols);
        for c in BitIter128(ones) {
            h.matrix_mut()
                .set(Position::new(c / self.cols, c % self.cols), true);
        }
        h
    }

    fn root_lower_bound(&self) -> usize {
        let mut lb = self.forced.count_ones() as usize;
        if self.occ.every_row {
            lb = lb.max(self.rows);
        }
        if self.occ.every_col {
            lb = lb.max(self.cols);
        }
        if self.occ.no_empty_cross {
            lb = lb.max(self.rows.min(self.cols));
        }
        lb
    }

    fn root_upper_bound(&self) -> usize {
        let mut used = 0u128;
        let mut packed = 0;
        for &e in &self.edges {
            if e & used == 0 {
                used |= e;
                packed += 1;
            }
        }
        self.cells - packed
    }
}

struct Dfs<'a> {
    pb: &'a Problem,
    kind: SearchKind,
    target: usize,
    nodes: u64,
    max_nodes: u64,
    deadline: Option<Instant>,
    out_of_budget: bool,
    found: u128,
}

impl Dfs<'_> {
    #[inline]
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            self.out_of_budget = true;
        } else if self.nodes & 0x3ff == 0 {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.out_of_budget = true;
                }
            }
        }
        !self.out_of_budget
    }

    /// A 0 at `q` can still be completed: some edge through `q` avoids the other zeros.
    #[inline]
    fn viable(&self, q: usize, zeros: u128) -> bool {
        let qb = bit(q);
        self.pb.by_cell[q].iter().any(|&e| e & zeros == qb)
    }

    #[inline]
    fn completed(&self, q: usize, ones: u128) -> bool {
        let qb = bit(q);
        self.pb.by_cell[q].iter().any(|&e| (e & !qb) & !ones == 0)
    }

    #[inline]
    fn independent_with(&self, c: usize, ones: u128) -> bool {
        self.pb.by_cell[c].iter().all(|&e| e & !ones != 0)
    }

    fn zero_ok(&self, c: usize, ones: u128, zeros: u128) -> bool {
        if !self.viable(c, zeros) {
            return false;
        }
        if BitIter128(self.pb.nbr[c] & zeros).any(|q| !self.viable(q, zeros)) {
            return false;
        }
        let pb = self.pb;
        let (r, col) = (c / pb.cols, c % pb.cols);
        if pb.occ.every_row && col == pb.cols - 1 && ones & pb.row_masks[r] == 0 {
            return false;
        }
        if pb.occ.every_col && r == pb.rows - 1 && ones & pb.col_masks[col] == 0 {
            return false;
        }
        true
    }

    fn min_lower_bound(&self, idx: usize, ones: u128, zeros: u128) -> usize {
        let pb = self.pb;
        let mut lb = 0;
        if idx < pb.cells {
            let cur = idx / pb.cols;
            if pb.occ.every_row {
                let mut need = pb.rows - cur - 1;
                if ones & pb.row_masks[cur] == 0 {
                    need += 1;
                }
                lb = lb.max(need);
            }
            if pb.occ.every_col {
                let need = pb.col_masks.iter().filter(|&&cm| cm & ones == 0).count();
                lb = lb.max(need);
            }
        }
        let undecided = pb.full & !(ones | zeros);
        let mut used = 0u128;
        let mut packed = 0;
        for q in BitIter128(zeros) {
            let qb = bit(q);
            let mut need = 0u128;
            let mut done = false;
            for &e in &pb.by_cell[q] {
                if e & zeros != qb {
                    continue;
                }
                let rest = e & undecided;
                if rest == 0 {
                    done = true;
                    break;
                }
                need |= rest;
            }
            if !done && need & used == 0 {
                used |= need;
                packed += 1;
            }
        }
        lb.max(packed)
    }

    fn cross_ok(&self, ones: u128) -> bool {
        if !self.pb.occ.no_empty_cross {
            return true;
        }
        let empty_row = self.pb.row_masks.iter().any(|&m| m & ones == 0);
        let empty_col = self.pb.col_masks.iter().any(|&m| m & ones == 0);
        !(empty_row && empty_col)
    }

    fn min_dfs(&mut self, idx: usize, ones: u128, zeros: u128, count: usize) -> bool {
        if !self.tick() {
            return false;
        }
        if count + self.min_lower_bound(idx, ones, zeros) > self.target {
            return false;
        }
        if idx == self.pb.cells {
            debug_assert!(BitIter128(zeros).all(|q| self.completed(q, ones)));
            if !self.cross_ok(ones) {
                return false;
            }
            self.found = ones;
            return true;
        }
        let b = bit(idx);
        if self.pb.forced & b == 0 {
            let z = zeros | b;
            if self.zero_ok(idx, ones, z) {
                if self.min_dfs(idx + 1, ones, z, count) {
                    return true;
                }
                if self.out_of_budget {
                    return false;
                }
            }
        }
        if count < self.target
            && (self.kind == SearchKind::Ssat || self.independent_with(idx, ones | b))
        {
            return self.min_dfs(idx + 1, ones | b, zeros, count + 1);
        }
        false
    }

    fn max_upper_bound(&self, ones: u128, zeros: u128) -> usize {
        let undecided = self.pb.full & !(ones | zeros);
        let mut used = 0u128;
        let mut packed = 0;
        for &e in &self.pb.edges {
            if e & zeros != 0 {
                continue;
            }
            let rest = e & undecided;
            if rest & used == 0 {
                used |= rest;
                packed += 1;
            }
        }
        undecided.count_ones() as usize - packed
    }

    fn max_dfs(&mut self, idx: usize, ones: u128, zeros: u128, count: usize) -> bool {
        if !self.tick() {
            return false;
        }
        if count + self.max_upper_bound(ones, zeros) < self.target {
            return false;
        }
        if idx == self.pb.cells {
            self.found = ones;
            return true;
        }
        let b = bit(idx);
        if self.max_dfs(idx + 1, ones, zeros | b, count) {
            return true;
        }
        if self.out_of_budget {
            return false;
        }
        if self.independent_with(idx, ones | b) {
            return self.max_dfs(idx + 1, ones | b, zeros, count + 1);
        }
        false
    }
}

/// True iff `host` satisfies the defining predicate of `kind`'s certificates.
pub fn certificate_ok(kind: SearchKind, host: &HostMatrix, pattern: &Pattern) -> Result<bool> {
    if pattern.all_zero() {
        return Ok(kind != SearchKind::Ex || host.rows() < pattern.rows() || host.cols() < pattern.cols());
    }
    match kind {
        SearchKind::Sat => crate::saturation::is_saturating(host, pattern),
        SearchKind::Ssat => crate::saturation::is_semisaturating(host, pattern),
        SearchKind::Ex => Ok(!contains_unchecked(host, pattern)),
    }
}
