//! Dense 0-1 matrices stored as one `u64` word per row.
//!
//! Bit `c` of row word `r` is the entry in row `r`, column `c`. Indices are
//! 0-based in the API; [`Position`] prints itself 1-based, which is the
//! convention of every external format.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use crate::error::{Error, ParseErrorKind, Result};

/// Hard cap on the number of rows and columns of any matrix.
pub const MAX_DIM: usize = 64;

#[inline]
pub(crate) fn low_mask(width: usize) -> u64 {
    if width >= 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    }
}

/// A cell of a matrix, 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Position {
    pub row: usize,
    pub col: usize,
}

impl Position {
    pub const fn new(row: usize, col: usize) -> Self {
        Position { row, col }
    }

    /// Builds a position from the 1-based coordinates used in files and reports.
    pub fn from_one_based(row: usize, col: usize) -> Option<Self> {
        if row == 0 || col == 0 {
            None
        } else {
            Some(Position::new(row - 1, col - 1))
        }
    }

    pub fn one_based(self) -> (usize, usize) {
        (self.row + 1, self.col + 1)
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row + 1, self.col + 1)
    }
}

/// Symmetry transforms of a rectangular matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Transform {
    Transpose,
    /// Mirror about the horizontal axis: row order reversed.
    ReflectHorizontal,
    /// Mirror about the vertical axis: column order reversed. Maps `I_k` to `I'_k`.
    ReflectVertical,
    Rotate180,
}

impl Transform {
    pub const ALL: [Transform; 4] = [
        Transform::Transpose,
        Transform::ReflectHorizontal,
        Transform::ReflectVertical,
        Transform::Rotate180,
    ];
}

/// Text rendering of a matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Style {
    /// `1` and `0`.
    #[default]
    Binary,
    /// `1` and `.`.
    Dots,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    /// All-zero matrix.
    ///
    /// Panics if either dimension is 0 or exceeds [`MAX_DIM`]; use
    /// [`BitMatrix::try_zeros`] for untrusted sizes.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::try_zeros(rows, cols).expect("matrix dimensions out of range")
    }

    pub fn try_zeros(rows: usize, cols: usize) -> Result<Self> {
        check_dims(rows, cols)?;
        Ok(BitMatrix {
            rows,
            cols,
            data: vec![0; rows],
        })
    }

    pub fn ones(rows: usize, cols: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        let full = low_mask(cols);
        m.data.iter_mut().for_each(|w| *w = full);
        m
    }

    pub fn identity(k: usize) -> Self {
        Self::from_fn(k, k, |r, c| r == c)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                if f(r, c) {
                    m.data[r] |= 1 << c;
                }
            }
        }
        m
    }

    /// Builds a matrix from row words; bits at or above `cols` must be clear.
    pub fn from_row_words(cols: usize, words: Vec<u64>) -> Result<Self> {
        check_dims(words.len(), cols)?;
        let full = low_mask(cols);
        if words.iter().any(|w| w & !full != 0) {
            return Err(Error::Precondition(format!(
                "row word has bits beyond column {cols}"
            )));
        }
        Ok(BitMatrix {
            rows: words.len(),
            cols,
            data: words,
        })
    }

    pub fn from_ones(rows: usize, cols: usize, ones: &[Position]) -> Result<Self> {
        let mut m = Self::try_zeros(rows, cols)?;
        for &p in ones {
            m.check_in_bounds(p)?;
            m.set(p, true);
        }
        Ok(m)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, p: Position) -> bool {
        debug_assert!(self.in_bounds(p));
        (self.data[p.row] >> p.col) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, p: Position, value: bool) {
        debug_assert!(self.in_bounds(p));
        if value {
            self.data[p.row] |= 1 << p.col;
        } else {
            self.data[p.row] &= !(1 << p.col);
        }
    }

    /// Copy of `self` with the entry at `p` inverted.
    pub fn flipped(&self, p: Position) -> Self {
        let mut m = self.clone();
        m.data[p.row] ^= 1 << p.col;
        m
    }

    /// Copy of `self` with the entry at `p` set to 1.
    pub fn with_one(&self, p: Position) -> Self {
        let mut m = self.clone();
        m.set(p, true);
        m
    }

    #[inline]
    pub fn in_bounds(&self, p: Position) -> bool {
        p.row < self.rows && p.col < self.cols
    }

    pub fn check_in_bounds(&self, p: Position) -> Result<()> {
        if self.in_bounds(p) {
            Ok(())
        } else {
            Err(Error::OutOfBounds(p))
        }
    }

    #[inline]
    pub fn row_word(&self, r: usize) -> u64 {
        self.data[r]
    }

    pub fn row_words(&self) -> &[u64] {
        &self.data
    }

    /// Column `c` as a word with bit `r` set iff entry `(r, c)` is 1.
    pub fn col_word(&self, c: usize) -> u64 {
        self.data
            .iter()
            .enumerate()
            .fold(0, |acc, (r, w)| acc | (((w >> c) & 1) << r))
    }

    pub fn weight(&self) -> usize {
        self.data.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_all_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn is_zero_row(&self, r: usize) -> bool {
        self.data[r] == 0
    }

    pub fn is_zero_col(&self, c: usize) -> bool {
        self.data.iter().all(|w| (w >> c) & 1 == 0)
    }

    pub fn row_weight(&self, r: usize) -> usize {
        self.data[r].count_ones() as usize
    }

    pub fn col_weight(&self, c: usize) -> usize {
        self.col_word(c).count_ones() as usize
    }

    /// Positions of the 1 entries in row-major order.
    pub fn ones_positions(&self) -> impl Iterator<Item = Position> + '_ {
        self.data.iter().enumerate().flat_map(|(r, &w)| {
            BitIter(w).map(move |c| Position::new(r, c as usize))
        })
    }

    /// Positions of the 0 entries in row-major order.
    pub fn zero_positions(&self) -> impl Iterator<Item = Position> + '_ {
        let full = low_mask(self.cols);
        self.data.iter().enumerate().flat_map(move |(r, &w)| {
            BitIter(!w & full).map(move |c| Position::new(r, c as usize))
        })
    }

    pub fn positions(&self) -> impl Iterator<Item = Position> {
        let cols = self.cols;
        (0..self.rows).flat_map(move |r| (0..cols).map(move |c| Position::new(r, c)))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for c in 0..self.cols {
            t.data[c] = self.col_word(c);
        }
        t
    }

    pub fn reflect_horizontal(&self) -> Self {
        let mut m = self.clone();
        m.data.reverse();
        m
    }

    pub fn reflect_vertical(&self) -> Self {
        let shift = 64 - self.cols;
        let data = self
            .data
            .iter()
            .map(|w| w.reverse_bits() >> shift)
            .collect();
        BitMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn rotate180(&self) -> Self {
        self.reflect_vertical().reflect_horizontal()
    }

    pub fn transform(&self, t: Transform) -> Self {
        match t {
            Transform::Transpose => self.transpose(),
            Transform::ReflectHorizontal => self.reflect_horizontal(),
            Transform::ReflectVertical => self.reflect_vertical(),
            Transform::Rotate180 => self.rotate180(),
        }
    }

    /// Image of position `p` under `t`.
    pub fn transform_position(&self, t: Transform, p: Position) -> Position {
        match t {
            Transform::Transpose => Position::new(p.col, p.row),
            Transform::ReflectHorizontal => Position::new(self.rows - 1 - p.row, p.col),
            Transform::ReflectVertical => Position::new(p.row, self.cols - 1 - p.col),
            Transform::Rotate180 => Position::new(self.rows - 1 - p.row, self.cols - 1 - p.col),
        }
    }

    /// Inserts `count` all-zero rows before row `at`.
    pub fn insert_zero_rows(&self, at: usize, count: usize) -> Result<Self> {
        assert!(at <= self.rows);
        check_dims(self.rows + count, self.cols)?;
        let mut data = self.data.clone();
        data.splice(at..at, std::iter::repeat_n(0, count));
        Ok(BitMatrix {
            rows: self.rows + count,
            cols: self.cols,
            data,
        })
    }

    /// Inserts `count` all-zero columns before column `at`.
    pub fn insert_zero_cols(&self, at: usize, count: usize) -> Result<Self> {
        assert!(at <= self.cols);
        check_dims(self.rows, self.cols + count)?;
        let low = low_mask(at);
        let data = self
            .data
            .iter()
            .map(|&w| (w & low) | ((w & !low) << count))
            .collect();
        Ok(BitMatrix {
            rows: self.rows,
            cols: self.cols + count,
            data,
        })
    }

    /// The submatrix on rows `rows` and columns `cols`, both given in increasing order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| {
            self.get(Position::new(rows[i], cols[j]))
        })
    }

    /// Compares two equally sized matrices as row-major bit strings with `0 < 1`.
    pub fn cmp_row_major(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.dims(), other.dims());
        for (a, b) in self.data.iter().zip(&other.data) {
            if a != b {
                // lowest differing column decides
                let diff = a ^ b;
                let bit = diff.trailing_zeros();
                return if (a >> bit) & 1 == 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                };
            }
        }
        Ordering::Equal
    }

    pub fn render(&self, style: Style) -> String {
        let one = '1';
        let zero = match style {
            Style::Binary => '0',
            Style::Dots => '.',
        };
        let mut s = String::with_capacity(self.rows * (self.cols + 1));
        for r in 0..self.rows {
            if r > 0 {
                s.push('\n');
            }
            for c in 0..self.cols {
                s.push(if self.get(Position::new(r, c)) { one } else { zero });
            }
        }
        s
    }

    /// Rows rendered in binary style, one string per row.
    pub fn row_strings(&self) -> Vec<String> {
        self.render(Style::Binary)
            .lines()
            .map(str::to_owned)
            .collect()
    }

    /// Parses the matrix text format: one line per row, `1` for a one, `0`
    /// or `.` for a zero. Whitespace inside a line and blank lines are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut words = Vec::new();
        let mut width = None;
        for (idx, line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let mut word = 0u64;
            let mut len = 0usize;
            for ch in line.chars() {
                let bit = match ch {
                    '1' => 1,
                    '0' | '.' => 0,
                    c if c.is_whitespace() => continue,
                    c => {
                        return Err(Error::Parse {
                            line: line_no,
                            kind: ParseErrorKind::IllegalChar(c),
                        })
                    }
                };
                if len >= MAX_DIM {
                    return Err(Error::Parse {
                        line: line_no,
                        kind: ParseErrorKind::TooLarge(MAX_DIM),
                    });
                }
                word |= bit << len;
                len += 1;
            }
            if len == 0 {
                continue;
            }
            match width {
                None => width = Some(len),
                Some(w) if w != len => {
                    return Err(Error::Parse {
                        line: line_no,
                        kind: ParseErrorKind::Ragged {
                            expected: w,
                            found: len,
                        },
                    })
                }
                _ => {}
            }
            if words.len() == MAX_DIM {
                return Err(Error::Parse {
                    line: line_no,
                    kind: ParseErrorKind::TooLarge(MAX_DIM),
                });
            }
            words.push(word);
        }
        match width {
            None => Err(Error::Parse {
                line: text.lines().count().max(1),
                kind: ParseErrorKind::Empty,
            }),
            Some(cols) => Ok(BitMatrix {
                rows: words.len(),
                cols,
                data: words,
            }),
        }
    }
}

fn check_dims(rows: usize, cols: usize) -> Result<()> {
    if (1..=MAX_DIM).contains(&rows) && (1..=MAX_DIM).contains(&cols) {
        Ok(())
    } else {
        Err(Error::Dimensions {
            rows,
            cols,
            max: MAX_DIM,
        })
    }
}

/// Iterates the indices of set bits, lowest first.
pub(crate) struct BitIter(pub u64);

impl Iterator for BitIter {
    type Item = u32;

    #[inline]
    fn next(&mut self) -> Option<u32> {
        if self.0 == 0 {
            None
        } else {
            let i = self.0.trailing_zeros();
            self.0 &= self.0 - 1;
            Some(i)
        }
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Style::Binary))
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMatrix {}x{} [", self.rows, self.cols)?;
        for (i, row) in self.row_strings().iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(row)?;
        }
        f.write_str("]")
    }
}

impl FromStr for BitMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BitMatrix::parse(s)
    }
}

macro_rules! matrix_newtype {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Clone, PartialEq, Eq, Hash)]
        pub struct $name(BitMatrix);

        impl $name {
            pub fn new(matrix: BitMatrix) -> Self {
                $name(matrix)
            }

            pub fn matrix(&self) -> &BitMatrix {
                &self.0
            }

            pub fn into_matrix(self) -> BitMatrix {
                self.0
            }

            pub fn parse(text: &str) -> Result<Self> {
                BitMatrix::parse(text).map($name)
            }

            pub fn transform(&self, t: Transform) -> Self {
                $name(self.0.transform(t))
            }
        }

        impl Deref for $name {
            type Target = BitMatrix;

            fn deref(&self) -> &BitMatrix {
                &self.0
            }
        }

        impl From<BitMatrix> for $name {
            fn from(m: BitMatrix) -> Self {
                $name(m)
            }
        }

        impl FromStr for $name {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                $name::parse(s)
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                fmt::Display::fmt(&self.0, f)
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}(", stringify!($name))?;
                fmt::Debug::fmt(&self.0, f)?;
                f.write_str(")")
            }
        }
    };
}

matrix_newtype!(
    /// A forbidden pattern `P` of size `k x l`.
    Pattern
);

matrix_newtype!(
    /// A host matrix `M` of size `m x n` that is searched or constructed.
    HostMatrix
);

impl Pattern {
    /// True iff the pattern has no 1 entry.
    pub fn all_zero(&self) -> bool {
        self.0.is_all_zero()
    }

    pub(crate) fn ensure_nonzero(&self) -> Result<()> {
        if self.all_zero() {
            Err(Error::AllZeroPattern)
        } else {
            Ok(())
        }
    }

    /// Number of all-zero rows.
    pub fn zero_rows(&self) -> usize {
        (0..self.rows()).filter(|&r| self.is_zero_row(r)).count()
    }

    /// Number of all-zero columns.
    pub fn zero_cols(&self) -> usize {
        (0..self.cols()).filter(|&c| self.is_zero_col(c)).count()
    }

    /// True iff the pattern is square with exactly one 1 per row and column.
    pub fn is_permutation(&self) -> bool {
        self.rows() == self.cols()
            && (0..self.rows()).all(|r| self.row_weight(r) == 1)
            && (0..self.cols()).all(|c| self.col_weight(c) == 1)
    }

    pub fn as_host(&self) -> HostMatrix {
        HostMatrix(self.0.clone())
    }
}

impl HostMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        HostMatrix(BitMatrix::zeros(rows, cols))
    }

    pub fn ones(rows: usize, cols: usize) -> Self {
        HostMatrix(BitMatrix::ones(rows, cols))
    }

    pub fn matrix_mut(&mut self) -> &mut BitMatrix {
        &mut self.0
    }

    pub fn as_pattern(&self) -> Pattern {
        Pattern(self.0.clone())
    }

    pub fn flipped(&self, p: Position) -> Self {
        HostMatrix(self.0.flipped(p))
    }

    pub fn with_one(&self, p: Position) -> Self {
        HostMatrix(self.0.with_one(p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_identity() {
        let m = BitMatrix::parse("10\n01").unwrap();
        assert_eq!(m, BitMatrix::identity(2));
    }

    #[test]
    fn parse_dots_and_whitespace() {
        let q = BitMatrix::parse(".1...\n....1\n..1..\n1....\n...1.").unwrap();
        let ones: Vec<_> = q.ones_positions().map(Position::one_based).collect();
        assert_eq!(ones, vec![(1, 2), (2, 5), (3, 3), (4, 1), (5, 4)]);
        let spaced = BitMatrix::parse("1 0\n 0 1 \n").unwrap();
        assert_eq!(spaced, BitMatrix::identity(2));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        assert_eq!(
            BitMatrix::parse("1\n11"),
            Err(Error::Parse {
                line: 2,
                kind: ParseErrorKind::Ragged {
                    expected: 1,
                    found: 2
                }
            })
        );
        assert_eq!(
            BitMatrix::parse("10\n0x"),
            Err(Error::Parse {
                line: 2,
                kind: ParseErrorKind::IllegalChar('x')
            })
        );
        assert!(matches!(
            BitMatrix::parse(""),
            Err(Error::Parse {
                kind: ParseErrorKind::Empty,
                ..
            })
        ));
        let wide = "1".repeat(65);
        assert!(matches!(
            BitMatrix::parse(&wide),
            Err(Error::Parse {
                kind: ParseErrorKind::TooLarge(64),
                ..
            })
        ));
    }

    #[test]
    fn render_styles() {
        assert_eq!(BitMatrix::identity(2).render(Style::Binary), "10\n01");
        assert_eq!(BitMatrix::zeros(1, 3).render(Style::Dots), "...");
    }

    #[test]
    fn reflections() {
        let i4 = BitMatrix::identity(4);
        let anti = BitMatrix::from_fn(4, 4, |r, c| r + c == 3);
        assert_eq!(i4.reflect_vertical(), anti);
        assert_eq!(i4.reflect_horizontal(), anti);
        let m = BitMatrix::parse("110\n001").unwrap();
        assert_eq!(m.reflect_vertical(), BitMatrix::parse("011\n100").unwrap());
        assert_eq!(m.reflect_horizontal(), BitMatrix::parse("001\n110").unwrap());
        assert_eq!(m.rotate180(), BitMatrix::parse("100\n011").unwrap());
        assert_eq!(m.transpose(), BitMatrix::parse("10\n10\n01").unwrap());
        for t in Transform::ALL {
            if t != Transform::Transpose {
                assert_eq!(m.transform(t).transform(t), m);
            }
        }
        assert_eq!(m.transpose().transpose(), m);
    }

    #[test]
    fn full_width_rows() {
        let m = BitMatrix::ones(2, 64);
        assert_eq!(m.weight(), 128);
        assert_eq!(m.reflect_vertical(), m);
        assert_eq!(m.transpose().dims(), (64, 2));
    }

    #[test]
    fn insert_zero_lines() {
        let m = BitMatrix::parse("11\n11").unwrap();
        let r = m.insert_zero_rows(1, 2).unwrap();
        assert_eq!(r, BitMatrix::parse("11\n00\n00\n11").unwrap());
        let c = m.insert_zero_cols(1, 1).unwrap();
        assert_eq!(c, BitMatrix::parse("101\n101").unwrap());
    }

    #[test]
    fn row_major_order() {
        let a = BitMatrix::parse("01\n00").unwrap();
        let b = BitMatrix::parse("10\n00").unwrap();
        let c = BitMatrix::parse("00\n11").unwrap();
        assert_eq!(a.cmp_row_major(&b), Ordering::Less);
        assert_eq!(c.cmp_row_major(&a), Ordering::Less);
        assert_eq!(a.cmp_row_major(&a), Ordering::Equal);
    }
}
