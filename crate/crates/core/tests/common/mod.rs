//! Exhaustive reference implementations used to cross-check the engine.
#![allow(dead_code)]

use satmat_core::{BitMatrix, HostMatrix, Pattern, Position};

pub fn pat(s: &str) -> Pattern {
    Pattern::parse(s).unwrap()
}

pub fn host(s: &str) -> HostMatrix {
    HostMatrix::parse(s).unwrap()
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Occurrences as `(rows, cols)` pairs, lexicographic.
pub fn occurrences(m: &BitMatrix, p: &BitMatrix) -> Vec<(Vec<usize>, Vec<usize>)> {
    let (k, l) = p.dims();
    let mut out = Vec::new();
    if k > m.rows() || l > m.cols() {
        return out;
    }
    let col_sets = subsets(m.cols(), l);
    for rows in subsets(m.rows(), k) {
        for cols in &col_sets {
            let fits = p
                .ones_positions()
                .all(|q| m.get(Position::new(rows[q.row], cols[q.col])));
            if fits {
                out.push((rows.clone(), cols.clone()));
            }
        }
    }
    out
}

pub fn count(m: &BitMatrix, p: &BitMatrix) -> usize {
    occurrences(m, p).len()
}

pub fn contains(m: &BitMatrix, p: &BitMatrix) -> bool {
    count(m, p) > 0
}

/// Matrix whose row-major cell `i` is bit `mn - 1 - i` of `code`, so
/// increasing codes enumerate matrices in row-major lexicographic order.
pub fn decode(m: usize, n: usize, code: u64) -> BitMatrix {
    let cells = m * n;
    BitMatrix::from_fn(m, n, |r, c| code >> (cells - 1 - (r * n + c)) & 1 == 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Sat,
    Ssat,
    Ex,
}

/// Optimal value and lexicographically smallest optimal matrix by full enumeration.
pub fn optimum(kind: Kind, p: &BitMatrix, m: usize, n: usize) -> (usize, BitMatrix) {
    let cells = m * n;
    assert!(cells <= 16, "enumeration too large");
    let counts: Vec<usize> = (0..1u64 << cells)
        .map(|code| count(&decode(m, n, code), p))
        .collect();
    let bit = |i: usize| 1u64 << (cells - 1 - i);
    let mut best: Option<(usize, u64)> = None;
    for code in 0..1u64 << cells {
        let c = counts[code as usize];
        let ok = match kind {
            Kind::Ex => c == 0,
            Kind::Sat => {
                c == 0 && (0..cells).all(|i| code & bit(i) != 0 || counts[(code | bit(i)) as usize] > 0)
            }
            Kind::Ssat => (0..cells).all(|i| code & bit(i) != 0 || counts[(code | bit(i)) as usize] > c),
        };
        if !ok {
            continue;
        }
        let w = code.count_ones() as usize;
        let better = match best {
            None => true,
            Some((bw, _)) => match kind {
                Kind::Ex => w > bw,
                _ => w < bw,
            },
        };
        if better {
            best = Some((w, code));
        }
    }
    let (w, code) = best.expect("the all-zero or all-one matrix always qualifies");
    (w, decode(m, n, code))
}

/// Every nonzero `k x l` 0-1 matrix.
pub fn all_patterns(k: usize, l: usize) -> Vec<Pattern> {
    (1..1u64 << (k * l))
        .map(|code| Pattern::new(decode(k, l, code)))
        .collect()
}
