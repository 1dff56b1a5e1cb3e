//! Named patterns, the frame construction, the corner extension recursion and
//! the closed-form bounds for `J_k`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::matrix::{BitMatrix, HostMatrix, Pattern, Position};
use crate::saturation::is_saturating;
use crate::staircase::extremal_staircase;

/// Pattern families generated by [`gen_named`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Named {
    /// `I_k`, the identity.
    Identity,
    /// `I'_k`, the identity mirrored about the vertical axis (anti-diagonal).
    IdentityReflected,
    /// `J_k`, the identity with its first row moved below the last.
    Jk,
    /// `J'_k`, `J_k` mirrored about the vertical axis.
    JkReflected,
}

impl FromStr for Named {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "identity" | "I" => Ok(Named::Identity),
            "identity_reflected" | "I'" => Ok(Named::IdentityReflected),
            "jk" | "J" => Ok(Named::Jk),
            "jk_reflected" | "J'" => Ok(Named::JkReflected),
            other => Err(Error::Precondition(format!("unknown pattern family {other:?}"))),
        }
    }
}

impl fmt::Display for Named {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Named::Identity => "identity",
            Named::IdentityReflected => "identity_reflected",
            Named::Jk => "jk",
            Named::JkReflected => "jk_reflected",
        })
    }
}

pub fn gen_named(name: Named, k: usize) -> Result<Pattern> {
    let min = match name {
        Named::Identity | Named::IdentityReflected => 1,
        Named::Jk | Named::JkReflected => 2,
    };
    if k < min || k > crate::matrix::MAX_DIM {
        return Err(Error::Precondition(format!(
            "{name} needs {min} <= k <= {}, got {k}",
            crate::matrix::MAX_DIM
        )));
    }
    let jk = || BitMatrix::from_fn(k, k, |r, c| c == (r + 1) % k);
    let m = match name {
        Named::Identity => BitMatrix::identity(k),
        Named::IdentityReflected => BitMatrix::identity(k).reflect_vertical(),
        Named::Jk => jk(),
        Named::JkReflected => jk().reflect_vertical(),
    };
    Ok(Pattern::new(m))
}

/// The 5x5 permutation pattern `Q` with bounded saturation function.
pub fn pattern_q() -> Pattern {
    Pattern::parse(".1...\n....1\n..1..\n1....\n...1.").expect("static pattern")
}

/// `Q` with its leftmost 1 entry deleted.
pub fn pattern_q_prime() -> Pattern {
    let mut m = pattern_q().into_matrix();
    m.set(Position::new(3, 0), false);
    Pattern::new(m)
}

/// The all-1 5x5 pattern.
pub fn pattern_q_double_prime() -> Pattern {
    Pattern::new(BitMatrix::ones(5, 5))
}

/// `Q` with its third row and third column removed.
pub fn pattern_q_without_center() -> Pattern {
    let q = pattern_q();
    Pattern::new(q.select(&[0, 1, 3, 4], &[0, 1, 3, 4]))
}

/// The block pattern `[0 I_{k-1}; I'_{l+1} 0]`; `l = 0` gives `J_k`.
pub fn pattern_ik_ik(k: usize, l: usize) -> Result<Pattern> {
    if k < 2 || k + l > crate::matrix::MAX_DIM {
        return Err(Error::Precondition(format!(
            "block pattern needs k >= 2 and k + l <= {}",
            crate::matrix::MAX_DIM
        )));
    }
    let size = k + l;
    Ok(Pattern::new(BitMatrix::from_fn(size, size, |r, c| {
        if r < k - 1 {
            c == l + 1 + r
        } else {
            c <= l && r - (k - 1) == l - c
        }
    })))
}

/// Weight of the frame construction for a `k x l` pattern in an `m x n` host.
pub fn frame_weight(k: usize, l: usize, m: usize, n: usize) -> usize {
    (k - 1) * n + (l - 1) * m - (k - 1) * (l - 1)
}

/// Frame around the pattern's 1 at `pivot` (default: first 1 in row-major
/// order): all-1 first `k'-1` and last `k-k'` rows, first `l'-1` and last
/// `l-l'` columns, where `(k', l')` is the 1-based pivot.
pub fn gen_frame(pattern: &Pattern, m: usize, n: usize, pivot: Option<Position>) -> Result<HostMatrix> {
    pattern.ensure_nonzero()?;
    let (k, l) = pattern.dims();
    BitMatrix::try_zeros(m, n)?;
    if m < k || n < l {
        return Err(Error::Precondition(format!(
            "a {k}x{l} pattern needs a host of at least {k}x{l}, got {m}x{n}"
        )));
    }
    let pivot = match pivot {
        Some(p) => {
            pattern.check_in_bounds(p)?;
            if !pattern.get(p) {
                return Err(Error::PivotNotOne(p));
            }
            p
        }
        None => pattern.ones_positions().next().expect("nonzero pattern"),
    };
    let (top, bottom) = (pivot.row, k - 1 - pivot.row);
    let (left, right) = (pivot.col, l - 1 - pivot.col);
    Ok(HostMatrix::new(BitMatrix::from_fn(m, n, |r, c| {
        r < top || r >= m - bottom || c < left || c >= n - right
    })))
}

/// Lower bound `(k-2)max(m,n) + m + n - 1 - (k-2)(k-1)/2` on `sat(J_k, m, n)`.
pub fn jk_lower_bound(k: usize, m: usize, n: usize) -> Result<usize> {
    if k < 2 {
        return Err(Error::Precondition(format!("J_k needs k >= 2, got {k}")));
    }
    if m < k || n < k {
        return Err(Error::Precondition(format!(
            "dimensions {m}x{n} are below k = {k}; there sat(J_k, m, n) = m*n"
        )));
    }
    Ok((k - 2) * m.max(n) + m + n - 1 - (k - 2) * (k - 1) / 2)
}

/// The frame upper bound `(k-1)(m+n-(k-1))` for `sat(J_k, m, n)` and `sat(I_k, m, n)`.
pub fn jk_upper_bound(k: usize, m: usize, n: usize) -> usize {
    (k - 1) * (m + n - (k - 1))
}

/// Appends a row and a column whose only 1 is their shared corner.
pub fn extend_pattern_corner(pattern: &Pattern) -> Result<Pattern> {
    let l = pattern.cols();
    let mut words: Vec<u64> = pattern.row_words().to_vec();
    words.push(1 << l);
    Ok(Pattern::new(BitMatrix::from_row_words(l + 1, words)?))
}

/// If `pattern` has the form `[A 0 0; 0 1 0; 0 0 1]` returns `[A 0; 0 1]`.
pub fn corner_reduced_pattern(pattern: &Pattern) -> Option<Pattern> {
    let (k, l) = pattern.dims();
    if k < 2 || l < 2 {
        return None;
    }
    let unit_row = |r: usize, c: usize| pattern.row_word(r) == 1 << c;
    let unit_col = |c: usize, r: usize| pattern.col_word(c) == 1 << r;
    if !(unit_row(k - 1, l - 1) && unit_col(l - 1, k - 1) && unit_row(k - 2, l - 2) && unit_col(l - 2, k - 2)) {
        return None;
    }
    let rows: Vec<usize> = (0..k - 1).collect();
    let cols: Vec<usize> = (0..l - 1).collect();
    Some(Pattern::new(pattern.select(&rows, &cols)))
}

/// Appends an all-1 last row and last column to a matrix saturating for
/// `reduced`. The result saturates `reduced` extended by a corner 1.
pub fn extendcorner_extend(host: &HostMatrix, reduced: &Pattern) -> Result<HostMatrix> {
    if !is_saturating(host, reduced)? {
        return Err(Error::NotSaturating);
    }
    let (m, n) = host.dims();
    let mut words: Vec<u64> = host.row_words().iter().map(|w| w | 1 << n).collect();
    words.push(crate::matrix::low_mask(n + 1));
    debug_assert_eq!(words.len(), m + 1);
    Ok(HostMatrix::new(BitMatrix::from_row_words(n + 1, words)?))
}

/// Deletes the extremal staircase of a matrix saturating for a pattern of the
/// form `[A 0 0; 0 1 0; 0 0 1]`, shifting the (empty) region below it one step
/// up and to the left. The `(m-1) x (n-1)` result saturates `[A 0; 0 1]` and
/// weighs exactly `m + n - 1` less.
pub fn extendcorner_reduce(host: &HostMatrix, pattern: &Pattern) -> Result<HostMatrix> {
    if corner_reduced_pattern(pattern).is_none() {
        return Err(Error::Precondition(
            "pattern is not of the form [A 0 0; 0 1 0; 0 0 1]".into(),
        ));
    }
    if !is_saturating(host, pattern)? {
        return Err(Error::NotSaturating);
    }
    let (m, n) = host.dims();
    if m < 2 || n < 2 {
        return Err(Error::Precondition("host must be at least 2x2".into()));
    }
    let stairs = extremal_staircase(host)?;
    let reduced = BitMatrix::from_fn(m - 1, n - 1, |r, c| {
        let p = Position::new(r, c);
        stairs.is_above(p) && host.get(p)
    });
    if reduced.weight() + m + n - 1 != host.weight() {
        return Err(Error::Precondition(
            "1 entries found below the staircase".into(),
        ));
    }
    Ok(HostMatrix::new(reduced))
}

/// The corner-extension bound for `[0 I_{k-1}; I'_{l+1} 0]` with its
/// constant term spelled out.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockBound {
    /// `jk_lower_bound(k, m-l, n-l)` plus `m' + n' - 1` for each of the `l`
    /// corner extensions at dimensions `(m', n') = (m-i, n-i)`, `i < l`.
    pub value: usize,
    /// `(k-2) max(m,n) + (l+1)(m+n)`.
    pub leading: usize,
    /// `leading - value`.
    pub constant: i64,
}

pub fn cor_ikik_bound(k: usize, l: usize, m: usize, n: usize) -> Result<BlockBound> {
    if m < l + k || n < l + k {
        return Err(Error::Precondition(format!(
            "dimensions {m}x{n} too small: need at least {0}x{0}",
            k + l
        )));
    }
    let mut value = jk_lower_bound(k, m - l, n - l)?;
    for i in 0..l {
        value += (m - i) + (n - i) - 1;
    }
    let leading = (k - 2) * m.max(n) + (l + 1) * (m + n);
    Ok(BlockBound {
        value,
        leading,
        constant: leading as i64 - value as i64,
    })
}
