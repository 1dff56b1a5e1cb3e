//! Avoidance, saturation and semisaturation predicates and greedy completion.

use crate::containment::{contains_unchecked, occurrence_using_unchecked};
use crate::error::{Error, Result};
use crate::matrix::{BitMatrix, HostMatrix, Pattern, Position};

/// True iff `host` does not contain `pattern`.
pub fn is_avoiding(host: &HostMatrix, pattern: &Pattern) -> Result<bool> {
    pattern.ensure_nonzero()?;
    Ok(!contains_unchecked(host, pattern))
}

/// True iff `host` avoids `pattern` and flipping any 0 entry creates an occurrence.
pub fn is_saturating(host: &HostMatrix, pattern: &Pattern) -> Result<bool> {
    pattern.ensure_nonzero()?;
    Ok(!contains_unchecked(host, pattern) && every_zero_completes(host, pattern))
}

/// True iff flipping any 0 entry creates a new occurrence. Avoidance is not required.
pub fn is_semisaturating(host: &HostMatrix, pattern: &Pattern) -> Result<bool> {
    pattern.ensure_nonzero()?;
    Ok(every_zero_completes(host, pattern))
}

/// First 0 entry whose flip creates no new occurrence, if any.
pub fn first_free_zero(host: &HostMatrix, pattern: &Pattern) -> Result<Option<Position>> {
    pattern.ensure_nonzero()?;
    Ok(host
        .zero_positions()
        .find(|&q| occurrence_using_unchecked(host, q, pattern).is_none()))
}

fn every_zero_completes(host: &HostMatrix, pattern: &Pattern) -> bool {
    host.zero_positions()
        .all(|q| occurrence_using_unchecked(host, q, pattern).is_some())
}

/// Options for [`greedy_complete_with`].
#[derive(Clone, Debug, Default)]
pub struct GreedyOptions<'a> {
    /// Only positions set in the mask may be flipped.
    pub mask: Option<&'a BitMatrix>,
    /// Scan order; defaults to row-major.
    pub order: Option<&'a [Position]>,
}

/// Flips 0 entries to 1 in row-major order while the host keeps avoiding
/// `pattern`. The result is saturating.
pub fn greedy_complete(start: &HostMatrix, pattern: &Pattern) -> Result<HostMatrix> {
    greedy_complete_with(start, pattern, &GreedyOptions::default())
}

/// Greedy maximalization restricted to `opts.mask` and scanned in `opts.order`.
///
/// Passes repeat until no allowed 0 can be flipped. With no mask the result is
/// saturating for `pattern`.
pub fn greedy_complete_with(
    start: &HostMatrix,
    pattern: &Pattern,
    opts: &GreedyOptions<'_>,
) -> Result<HostMatrix> {
    pattern.ensure_nonzero()?;
    if let Some(mask) = opts.mask {
        if mask.dims() != start.dims() {
            return Err(Error::Precondition(format!(
                "mask is {}x{} but the matrix is {}x{}",
                mask.rows(),
                mask.cols(),
                start.rows(),
                start.cols()
            )));
        }
    }
    if contains_unchecked(start, pattern) {
        return Err(Error::ContainsPattern);
    }
    let default_order: Vec<Position>;
    let order = match opts.order {
        Some(o) => {
            if let Some(&bad) = o.iter().find(|&&p| !start.in_bounds(p)) {
                return Err(Error::OutOfBounds(bad));
            }
            o
        }
        None => {
            default_order = start.positions().collect();
            &default_order
        }
    };
    let mut m = start.clone();
    loop {
        let mut changed = false;
        for &q in order {
            if m.get(q) || opts.mask.is_some_and(|mask| !mask.get(q)) {
                continue;
            }
            if occurrence_using_unchecked(&m, q, pattern).is_none() {
                m.matrix_mut().set(q, true);
                changed = true;
            }
        }
        if !changed {
            return Ok(m);
        }
    }
}
