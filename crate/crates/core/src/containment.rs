//! Pattern containment.
//!
//! The engine picks host lines for the pattern's columns one at a time in
//! increasing order and matches pattern rows to host rows greedily top-down.
//! Greedy earliest matching is complete because row order is the only
//! constraint between consecutive pattern rows, so a partial column choice
//! that cannot be matched greedily cannot be extended either. The same test
//! prunes every node of the column search.
//!
//! Lexicographically ordered enumeration runs the same machinery on the
//! transposed inputs, so that host rows become the search dimension.

use std::ops::ControlFlow;

use crate::error::Result;
use crate::matrix::{low_mask, HostMatrix, Pattern, Position};

/// A selection of host rows and columns witnessing containment. Indices are
/// 0-based and strictly increasing; two occurrences are equal iff both
/// selections are equal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Occurrence {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

impl Occurrence {
    /// Host positions the pattern's 1 entries land on.
    pub fn image(&self, pattern: &Pattern) -> Vec<Position> {
        pattern
            .ones_positions()
            .map(|p| Position::new(self.rows[p.row], self.cols[p.col]))
            .collect()
    }

    /// True iff every 1 of `pattern` maps onto a 1 of `host`.
    pub fn is_valid(&self, host: &HostMatrix, pattern: &Pattern) -> bool {
        self.rows.len() == pattern.rows()
            && self.cols.len() == pattern.cols()
            && self.rows.windows(2).all(|w| w[0] < w[1])
            && self.cols.windows(2).all(|w| w[0] < w[1])
            && self.rows.last().is_some_and(|&r| r < host.rows())
            && self.cols.last().is_some_and(|&c| c < host.cols())
            && self.image(pattern).into_iter().all(|p| host.get(p))
    }
}

/// Result of [`enumerate_occurrences`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OccurrenceList {
    pub occurrences: Vec<Occurrence>,
    /// True when the limit cut the enumeration short.
    pub truncated: bool,
}

impl OccurrenceList {
    /// Total number of occurrences, known only when not truncated.
    pub fn total(&self) -> Option<usize> {
        (!self.truncated).then_some(self.occurrences.len())
    }
}

/// Forces pattern entry `(pat_row, pat_col)` onto host entry `(host_row, host_col)`.
#[derive(Clone, Copy, Debug)]
struct Anchor {
    pat_row: usize,
    pat_col: usize,
    host_row: usize,
    host_col: usize,
}

/// Line-selection search over one orientation of a host/pattern pair.
struct Embedder<'a> {
    /// Host cross lines (rows in the default orientation) as bit words.
    host: &'a [u64],
    host_width: usize,
    pattern: &'a [u64],
    pat_width: usize,
    anchor: Option<Anchor>,
}

impl<'a> Embedder<'a> {
    fn new(host: &'a [u64], host_width: usize, pattern: &'a [u64], pat_width: usize) -> Self {
        Embedder {
            host,
            host_width,
            pattern,
            pat_width,
            anchor: None,
        }
    }

    #[inline]
    fn fits(&self, packed: &[u64], host_row: usize, pat_row: usize, mask: u64) -> bool {
        let need = self.pattern[pat_row] & mask;
        packed[host_row] & need == need
    }

    /// Greedily matches pattern rows `pat` into host rows `host`, pushing the
    /// chosen host rows into `out` when given. Returns false on failure.
    fn greedy(
        &self,
        packed: &[u64],
        mask: u64,
        pat: std::ops::Range<usize>,
        host: std::ops::Range<usize>,
        mut out: Option<&mut Vec<usize>>,
    ) -> bool {
        let mut i = pat.start;
        if i == pat.end {
            return true;
        }
        for r in host {
            if self.fits(packed, r, i, mask) {
                if let Some(o) = out.as_deref_mut() {
                    o.push(r);
                }
                i += 1;
                if i == pat.end {
                    return true;
                }
            }
        }
        false
    }

    /// Row matching for the first `depth` pattern columns.
    fn rows_fit(&self, packed: &[u64], depth: usize, mut out: Option<&mut Vec<usize>>) -> bool {
        let mask = low_mask(depth);
        let k = self.pattern.len();
        let m = self.host.len();
        match self.anchor {
            None => self.greedy(packed, mask, 0..k, 0..m, out),
            Some(a) => {
                self.greedy(packed, mask, 0..a.pat_row, 0..a.host_row, out.as_deref_mut())
                    && self.fits(packed, a.host_row, a.pat_row, mask)
                    && {
                        if let Some(o) = out.as_deref_mut() {
                            o.push(a.host_row);
                        }
                        self.greedy(packed, mask, a.pat_row + 1..k, a.host_row + 1..m, out)
                    }
            }
        }
    }

    /// Depth-first search over line selections in lexicographic order. `leaf`
    /// receives the selected lines and the packed cross lines.
    fn search<F>(&self, leaf: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[usize], &[u64]) -> ControlFlow<()>,
    {
        if self.pat_width > self.host_width || self.pattern.len() > self.host.len() {
            return ControlFlow::Continue(());
        }
        let mut sel = Vec::with_capacity(self.pat_width);
        let mut packed = vec![0u64; self.host.len()];
        self.descend(0, 0, &mut sel, &mut packed, leaf)
    }

    fn descend<F>(
        &self,
        depth: usize,
        next: usize,
        sel: &mut Vec<usize>,
        packed: &mut [u64],
        leaf: &mut F,
    ) -> ControlFlow<()>
    where
        F: FnMut(&[usize], &[u64]) -> ControlFlow<()>,
    {
        if depth == self.pat_width {
            return leaf(sel, packed);
        }
        let mut lo = next;
        let mut hi = self.host_width - (self.pat_width - depth);
        if let Some(a) = self.anchor {
            if depth == a.pat_col {
                if a.host_col < lo || a.host_col > hi {
                    return ControlFlow::Continue(());
                }
                lo = a.host_col;
                hi = a.host_col;
            } else if depth < a.pat_col {
                let room = a.pat_col - depth;
                if a.host_col < room {
                    return ControlFlow::Continue(());
                }
                hi = hi.min(a.host_col - room);
            }
        }
        let bit = 1u64 << depth;
        for c in lo..=hi {
            for (p, &w) in packed.iter_mut().zip(self.host) {
                *p |= ((w >> c) & 1) << depth;
            }
            if self.rows_fit(packed, depth + 1, None) {
                sel.push(c);
                let flow = self.descend(depth + 1, c + 1, sel, packed, leaf);
                sel.pop();
                if flow.is_break() {
                    for p in packed.iter_mut() {
                        *p &= !bit;
                    }
                    return flow;
                }
            }
            for p in packed.iter_mut() {
                *p &= !bit;
            }
        }
        ControlFlow::Continue(())
    }

    /// All cross-line selections compatible with a complete line selection,
    /// in lexicographic order.
    fn all_cross<F>(&self, packed: &[u64], f: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        fn go<F: FnMut(&[usize]) -> ControlFlow<()>>(
            e: &Embedder<'_>,
            packed: &[u64],
            i: usize,
            next: usize,
            acc: &mut Vec<usize>,
            f: &mut F,
        ) -> ControlFlow<()> {
            let k = e.pattern.len();
            if i == k {
                return f(acc);
            }
            let mask = low_mask(e.pat_width);
            let last = e.host.len() - (k - i);
            for r in next..=last {
                if e.fits(packed, r, i, mask) {
                    acc.push(r);
                    let flow = go(e, packed, i + 1, r + 1, acc, f);
                    acc.pop();
                    flow?;
                }
            }
            ControlFlow::Continue(())
        }
        let mut acc = Vec::with_capacity(self.pattern.len());
        go(self, packed, 0, 0, &mut acc, f)
    }
}

fn transposed_words(m: &crate::matrix::BitMatrix) -> Vec<u64> {
    (0..m.cols()).map(|c| m.col_word(c)).collect()
}

/// True iff `host` contains `pattern`.
pub fn contains(host: &HostMatrix, pattern: &Pattern) -> Result<bool> {
    pattern.ensure_nonzero()?;
    Ok(contains_unchecked(host, pattern))
}

pub(crate) fn contains_unchecked(host: &HostMatrix, pattern: &Pattern) -> bool {
    let e = Embedder::new(
        host.row_words(),
        host.cols(),
        pattern.row_words(),
        pattern.cols(),
    );
    e.search(&mut |_, _| ControlFlow::Break(())).is_break()
}

/// The lexicographically smallest occurrence under `(rows, cols)` ordering.
pub fn find_occurrence(host: &HostMatrix, pattern: &Pattern) -> Result<Option<Occurrence>> {
    Ok(enumerate_occurrences(host, pattern, 1)?
        .occurrences
        .pop())
}

/// Occurrences in lexicographic `(rows, cols)` order, at most `limit` of them.
pub fn enumerate_occurrences(
    host: &HostMatrix,
    pattern: &Pattern,
    limit: usize,
) -> Result<OccurrenceList> {
    pattern.ensure_nonzero()?;
    let host_t = transposed_words(host);
    let pat_t = transposed_words(pattern);
    // Rows of the original are the search lines of the transposed embedder.
    let e = Embedder::new(&host_t, host.rows(), &pat_t, pattern.rows());
    let mut occurrences = Vec::new();
    let mut truncated = false;
    let _ = e.search(&mut |rows, packed| {
        e.all_cross(packed, &mut |cols| {
            if occurrences.len() == limit {
                truncated = true;
                return ControlFlow::Break(());
            }
            occurrences.push(Occurrence {
                rows: rows.to_vec(),
                cols: cols.to_vec(),
            });
            ControlFlow::Continue(())
        })
    });
    Ok(OccurrenceList {
        occurrences,
        truncated,
    })
}

/// Number of occurrences of `pattern` in `host`.
pub fn count_occurrences(host: &HostMatrix, pattern: &Pattern) -> Result<usize> {
    Ok(enumerate_occurrences(host, pattern, usize::MAX)?
        .occurrences
        .len())
}

/// True iff `host` with `q` forced to 1 has an occurrence that selects `q`
/// and aligns it with a 1 entry of `pattern`.
///
/// For a host avoiding the pattern this is equivalent to "flipping `q`
/// creates an occurrence", and in general to "flipping `q` creates a new
/// occurrence".
pub fn contains_using(host: &HostMatrix, q: Position, pattern: &Pattern) -> Result<bool> {
    pattern.ensure_nonzero()?;
    host.check_in_bounds(q)?;
    Ok(occurrence_using_unchecked(host, q, pattern).is_some())
}

/// An occurrence through `q` as in [`contains_using`], if one exists.
pub fn occurrence_using(
    host: &HostMatrix,
    q: Position,
    pattern: &Pattern,
) -> Result<Option<Occurrence>> {
    pattern.ensure_nonzero()?;
    host.check_in_bounds(q)?;
    Ok(occurrence_using_unchecked(host, q, pattern))
}

pub(crate) fn occurrence_using_unchecked(
    host: &HostMatrix,
    q: Position,
    pattern: &Pattern,
) -> Option<Occurrence> {
    let mut words = host.row_words().to_vec();
    words[q.row] |= 1 << q.col;
    let mut e = Embedder::new(&words, host.cols(), pattern.row_words(), pattern.cols());
    for one in pattern.ones_positions() {
        e.anchor = Some(Anchor {
            pat_row: one.row,
            pat_col: one.col,
            host_row: q.row,
            host_col: q.col,
        });
        let mut found = None;
        let _ = e.search(&mut |cols, packed| {
            let mut rows = Vec::with_capacity(pattern.rows());
            let ok = e.rows_fit(packed, pattern.cols(), Some(&mut rows));
            debug_assert!(ok);
            found = Some(Occurrence {
                rows,
                cols: cols.to_vec(),
            });
            ControlFlow::Break(())
        });
        if found.is_some() {
            return found;
        }
    }
    None
}
