//! Exhaustive reference values: every `m x n` matrix is enumerated and
//! occurrences are counted directly from row and column selections.

use satmat_core::{BitMatrix, Pattern};

/// Row-major cell masks (`cell 0` is the most significant of `m*n` bits) of
/// the image of every occurrence position of `pattern` in an `m x n` grid.
fn images(pattern: &Pattern, m: usize, n: usize) -> Vec<u32> {
    let (k, l) = pattern.dims();
    let cells = m * n;
    let mut out = Vec::new();
    if k > m || l > n {
        return out;
    }
    let rows = subsets(m, k);
    let cols = subsets(n, l);
    for r in &rows {
        for c in &cols {
            let mut mask = 0u32;
            for p in pattern.ones_positions() {
                mask |= 1 << (cells - 1 - (r[p.row] * n + c[p.col]));
            }
            out.push(mask);
        }
    }
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0u32..1 << n)
        .filter(|s| s.count_ones() as usize == k)
        .map(|s| (0..n).filter(|i| s >> i & 1 == 1).collect())
        .collect();
    out.sort();
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Optimum {
    pub value: usize,
    pub certificate: BitMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Optima {
    pub sat: Optimum,
    pub ssat: Optimum,
    pub ex: Optimum,
}

fn decode(m: usize, n: usize, code: u32) -> BitMatrix {
    let cells = m * n;
    BitMatrix::from_fn(m, n, |r, c| code >> (cells - 1 - (r * n + c)) & 1 == 1)
}

/// `sat`, `ssat` and `ex` with their lexicographically smallest optimal
/// matrices (row-major, 0 before 1). Hosts are limited to 20 cells.
pub fn optima(pattern: &Pattern, m: usize, n: usize) -> Optima {
    let cells = m * n;
    assert!(cells <= 20, "host too large for enumeration");
    let imgs = images(pattern, m, n);
    let total = 1u32 << cells;
    let counts: Vec<u32> = (0..total)
        .map(|code| imgs.iter().filter(|&&i| code & i == i).count() as u32)
        .collect();
    // codes ascend in row-major lexicographic order, so the first optimum
    // met is the smallest
    let mut best: [Option<(u32, u32)>; 3] = [None; 3];
    for code in 0..total {
        let c = counts[code as usize];
        let w = code.count_ones();
        let mut sat = c == 0;
        let mut ssat = true;
        for i in 0..cells {
            let bit = 1u32 << i;
            if code & bit == 0 {
                let after = counts[(code | bit) as usize];
                sat &= after > 0;
                ssat &= after > c;
            }
        }
        let mut offer = |slot: usize, better: fn(u32, u32) -> bool| {
            if best[slot].is_none_or(|(bw, _)| better(w, bw)) {
                best[slot] = Some((w, code));
            }
        };
        if sat {
            offer(0, |a, b| a < b);
        }
        if ssat {
            offer(1, |a, b| a < b);
        }
        if c == 0 {
            offer(2, |a, b| a > b);
        }
    }
    let take = |slot: Option<(u32, u32)>| {
        let (w, code) = slot.expect("all-one and all-zero matrices always qualify");
        Optimum {
            value: w as usize,
            certificate: decode(m, n, code),
        }
    };
    Optima {
        sat: take(best[0]),
        ssat: take(best[1]),
        ex: take(best[2]),
    }
}
