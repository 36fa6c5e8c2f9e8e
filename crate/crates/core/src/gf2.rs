//! Dense linear algebra over GF(2).
//!
//! Rows (and vectors) are packed into a single `u64`, so matrices are limited to
//! 64 columns. That comfortably covers every matroid this crate deals with.
//! Bit `j` of a packed word is entry `j` of the vector (0-based); for a vector of
//! length `k` this makes the packed word equal to its integer label, which the
//! enumeration code relies on.

use std::fmt;
use std::ops::{BitAnd, BitXor, BitXorAssign};

use thiserror::Error;

/// Largest supported vector length / column count.
pub const MAX_LEN: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum Gf2Error {
    #[error("pivot entry ({row}, {col}) is zero")]
    PivotOnZero { row: usize, col: usize },
    #[error("target vector is not in the span of the given columns")]
    NotInSpan,
    #[error("columns are linearly dependent")]
    DependentColumns,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("vectors longer than {MAX_LEN} entries are not supported (got {0})")]
    TooLong(usize),
    #[error("matrix is singular")]
    Singular,
    #[error("entry {0} is not 0 or 1")]
    NotBinary(u8),
}

#[inline]
fn mask(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

fn check_len(len: usize) -> Result<(), Gf2Error> {
    if len > MAX_LEN {
        Err(Gf2Error::TooLong(len))
    } else {
        Ok(())
    }
}

/// A vector in GF(2)^len.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Gf2Vector {
    bits: u64,
    len: usize,
}

impl Gf2Vector {
    pub fn zeros(len: usize) -> Self {
        assert!(len <= MAX_LEN, "vector length {len} exceeds {MAX_LEN}");
        Self { bits: 0, len }
    }

    /// Builds a vector from packed bits; bits at positions `>= len` are discarded.
    pub fn from_bits(bits: u64, len: usize) -> Self {
        assert!(len <= MAX_LEN, "vector length {len} exceeds {MAX_LEN}");
        Self {
            bits: bits & mask(len),
            len,
        }
    }

    pub fn from_entries(entries: &[u8]) -> Result<Self, Gf2Error> {
        check_len(entries.len())?;
        let mut bits = 0u64;
        for (j, &e) in entries.iter().enumerate() {
            match e {
                0 => {}
                1 => bits |= 1 << j,
                other => return Err(Gf2Error::NotBinary(other)),
            }
        }
        Ok(Self {
            bits,
            len: entries.len(),
        })
    }

    pub fn unit(j: usize, len: usize) -> Self {
        assert!(j < len);
        Self::from_bits(1 << j, len)
    }

    #[inline]
    pub fn bits(&self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    #[inline]
    pub fn get(&self, j: usize) -> bool {
        assert!(j < self.len);
        self.bits >> j & 1 == 1
    }

    pub fn set(&mut self, j: usize, value: bool) {
        assert!(j < self.len);
        if value {
            self.bits |= 1 << j;
        } else {
            self.bits &= !(1 << j);
        }
    }

    /// Scalar product: parity of the bitwise AND.
    pub fn dot(&self, other: &Self) -> bool {
        debug_assert_eq!(self.len, other.len);
        (self.bits & other.bits).count_ones() % 2 == 1
    }

    pub fn weight(&self) -> usize {
        self.bits.count_ones() as usize
    }

    /// Positions of the nonzero entries, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> {
        BitIter(self.bits)
    }

    pub fn entries(&self) -> Vec<u8> {
        (0..self.len).map(|j| (self.bits >> j & 1) as u8).collect()
    }
}

impl BitXor for Gf2Vector {
    type Output = Gf2Vector;
    fn bitxor(self, rhs: Self) -> Self {
        debug_assert_eq!(self.len, rhs.len);
        Self {
            bits: self.bits ^ rhs.bits,
            len: self.len,
        }
    }
}

impl BitXorAssign for Gf2Vector {
    fn bitxor_assign(&mut self, rhs: Self) {
        debug_assert_eq!(self.len, rhs.len);
        self.bits ^= rhs.bits;
    }
}

impl BitAnd for Gf2Vector {
    type Output = Gf2Vector;
    fn bitand(self, rhs: Self) -> Self {
        debug_assert_eq!(self.len, rhs.len);
        Self {
            bits: self.bits & rhs.bits,
            len: self.len,
        }
    }
}

impl fmt::Display for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in 0..self.len {
            f.write_str(if self.bits >> j & 1 == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Vector({self})")
    }
}

/// Iterator over set bit positions of a word.
#[derive(Clone)]
pub struct BitIter(pub u64);

impl Iterator for BitIter {
    type Item = usize;
    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let j = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(j)
    }
}

/// Incrementally maintained basis of a subspace of GF(2)^m, kept in echelon form
/// keyed by leading (highest) bit. Each stored vector also remembers which inserted
/// vectors it is a combination of, so membership queries can return coefficients.
#[derive(Clone, Debug, Default)]
pub struct SpanBasis {
    vecs: Vec<(u64, u64)>,
    inserted: usize,
}

impl SpanBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.vecs.len()
    }

    /// Reduces `v` against the basis; returns the remainder and the combination
    /// of inserted vectors that was subtracted.
    fn reduce_with_combo(&self, mut v: u64) -> (u64, u64) {
        let mut combo = 0;
        for &(b, c) in &self.vecs {
            let lead = 63 - b.leading_zeros();
            if v >> lead & 1 == 1 {
                v ^= b;
                combo ^= c;
            }
        }
        (v, combo)
    }

    pub fn reduce(&self, v: u64) -> u64 {
        self.reduce_with_combo(v).0
    }

    pub fn contains(&self, v: u64) -> bool {
        self.reduce(v) == 0
    }

    /// Inserts `v`; returns `false` (and leaves the basis unchanged apart from the
    /// insertion counter) if `v` was already in the span.
    pub fn insert(&mut self, v: u64) -> bool {
        let tag = 1u64 << self.inserted.min(63);
        self.inserted += 1;
        let (r, combo) = self.reduce_with_combo(v);
        if r == 0 {
            return false;
        }
        let lead = 63 - r.leading_zeros();
        let pos = self
            .vecs
            .iter()
            .position(|&(b, _)| 63 - b.leading_zeros() < lead)
            .unwrap_or(self.vecs.len());
        self.vecs.insert(pos, (r, combo ^ tag));
        true
    }

    /// Coefficients (bit `i` = inserted vector `i`) expressing `v` in terms of the
    /// inserted vectors, or `None` if `v` is outside the span. Only meaningful when
    /// every inserted vector was independent.
    pub fn coefficients(&self, v: u64) -> Option<u64> {
        let (r, combo) = self.reduce_with_combo(v);
        (r == 0).then_some(combo)
    }
}

/// A `nrows × ncols` matrix over GF(2), stored row-wise.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    rows: Vec<u64>,
    ncols: usize,
}

/// Reduced row echelon form together with the pivot column of each nonzero row.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub matrix: Gf2Matrix,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl Gf2Matrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        assert!(ncols <= MAX_LEN, "column count {ncols} exceeds {MAX_LEN}");
        Self {
            rows: vec![0; nrows],
            ncols,
        }
    }

    pub fn identity(k: usize) -> Self {
        let mut m = Self::zeros(k, k);
        for i in 0..k {
            m.rows[i] = 1 << i;
        }
        m
    }

    /// Rows given as packed words (bit `j` = column `j`).
    pub fn from_packed_rows(ncols: usize, rows: Vec<u64>) -> Result<Self, Gf2Error> {
        check_len(ncols)?;
        let m = mask(ncols);
        Ok(Self {
            rows: rows.into_iter().map(|r| r & m).collect(),
            ncols,
        })
    }

    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self, Gf2Error> {
        let ncols = rows.first().map_or(0, |r| r.as_ref().len());
        check_len(ncols)?;
        let mut packed = Vec::with_capacity(rows.len());
        for r in rows {
            let r = r.as_ref();
            if r.len() != ncols {
                return Err(Gf2Error::DimensionMismatch {
                    expected: ncols,
                    found: r.len(),
                });
            }
            packed.push(Gf2Vector::from_entries(r)?.bits);
        }
        Ok(Self {
            rows: packed,
            ncols,
        })
    }

    /// Columns given as packed words of length `nrows` (bit `i` = row `i`).
    pub fn from_columns(nrows: usize, columns: &[u64]) -> Result<Self, Gf2Error> {
        check_len(columns.len())?;
        check_len(nrows)?;
        let mut rows = vec![0u64; nrows];
        for (j, &c) in columns.iter().enumerate() {
            for i in BitIter(c & mask(nrows)) {
                rows[i] |= 1 << j;
            }
        }
        Ok(Self {
            rows,
            ncols: columns.len(),
        })
    }

    #[inline]
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn ncols(&self) -> usize {
        self.ncols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(j < self.ncols);
        self.rows[i] >> j & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(j < self.ncols);
        if value {
            self.rows[i] |= 1 << j;
        } else {
            self.rows[i] &= !(1 << j);
        }
    }

    pub fn row(&self, i: usize) -> Gf2Vector {
        Gf2Vector::from_bits(self.rows[i], self.ncols)
    }

    pub fn packed_rows(&self) -> &[u64] {
        &self.rows
    }

    /// Column `j` packed as a word of length `nrows`.
    pub fn column_bits(&self, j: usize) -> u64 {
        assert!(j < self.ncols);
        assert!(self.nrows() <= MAX_LEN);
        self.rows
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &r)| acc | ((r >> j & 1) << i))
    }

    pub fn column(&self, j: usize) -> Gf2Vector {
        Gf2Vector::from_bits(self.column_bits(j), self.nrows())
    }

    pub fn columns(&self) -> Vec<u64> {
        (0..self.ncols).map(|j| self.column_bits(j)).collect()
    }

    pub fn transpose(&self) -> Gf2Matrix {
        Gf2Matrix::from_packed_rows(self.nrows(), self.columns())
            .expect("transpose of a matrix with more than 64 rows")
    }

    /// Keeps the listed columns, in the listed order.
    pub fn select_columns(&self, cols: &[usize]) -> Gf2Matrix {
        let rows = self
            .rows
            .iter()
            .map(|&r| {
                cols.iter()
                    .enumerate()
                    .fold(0, |acc, (t, &j)| acc | ((r >> j & 1) << t))
            })
            .collect();
        Gf2Matrix {
            rows,
            ncols: cols.len(),
        }
    }

    pub fn select_rows(&self, rows: &[usize]) -> Gf2Matrix {
        Gf2Matrix {
            rows: rows.iter().map(|&i| self.rows[i]).collect(),
            ncols: self.ncols,
        }
    }

    /// Matrix–vector product `M·v` where `v` has length `ncols`; result has length `nrows`.
    pub fn mul_vec(&self, v: &Gf2Vector) -> Result<Gf2Vector, Gf2Error> {
        if v.len() != self.ncols {
            return Err(Gf2Error::DimensionMismatch {
                expected: self.ncols,
                found: v.len(),
            });
        }
        Ok(Gf2Vector::from_bits(self.mul_bits(v.bits), self.nrows()))
    }

    #[inline]
    pub(crate) fn mul_bits(&self, v: u64) -> u64 {
        self.rows.iter().enumerate().fold(0, |acc, (i, &r)| {
            acc | (((r & v).count_ones() as u64) & 1) << i
        })
    }

    pub fn mul(&self, other: &Gf2Matrix) -> Result<Gf2Matrix, Gf2Error> {
        if other.nrows() != self.ncols {
            return Err(Gf2Error::DimensionMismatch {
                expected: self.ncols,
                found: other.nrows(),
            });
        }
        let rows = self
            .rows
            .iter()
            .map(|&r| BitIter(r).fold(0, |acc, t| acc ^ other.rows[t]))
            .collect();
        Ok(Gf2Matrix {
            rows,
            ncols: other.ncols,
        })
    }

    /// Reduced row echelon form; pivots are taken in column order `0..ncols`.
    pub fn rref(&self) -> Echelon {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for j in 0..self.ncols {
            if r == rows.len() {
                break;
            }
            let Some(p) = (r..rows.len()).find(|&i| rows[i] >> j & 1 == 1) else {
                continue;
            };
            rows.swap(r, p);
            let pr = rows[r];
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && *row >> j & 1 == 1 {
                    *row ^= pr;
                }
            }
            pivots.push(j);
            r += 1;
        }
        Echelon {
            matrix: Gf2Matrix {
                rows,
                ncols: self.ncols,
            },
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        let mut basis = SpanBasis::new();
        for &r in &self.rows {
            basis.insert(r);
        }
        basis.rank()
    }

    /// The nonzero rows of the reduced echelon form: a canonical basis of the row space.
    pub fn row_basis(&self) -> Gf2Matrix {
        let e = self.rref();
        let r = e.rank();
        let mut m = e.matrix;
        m.rows.truncate(r);
        m
    }

    /// A basis of the orthogonal complement of the row space, one row per non-pivot column.
    pub fn nullspace_basis(&self) -> Gf2Matrix {
        let e = self.rref();
        let n = self.ncols;
        let mut is_pivot = vec![false; n];
        for &p in &e.pivots {
            is_pivot[p] = true;
        }
        let mut out = Vec::with_capacity(n - e.rank());
        for free in (0..n).filter(|&j| !is_pivot[j]) {
            let mut v = 1u64 << free;
            for (i, &p) in e.pivots.iter().enumerate() {
                if e.matrix.rows[i] >> free & 1 == 1 {
                    v |= 1 << p;
                }
            }
            out.push(v);
        }
        Gf2Matrix {
            rows: out,
            ncols: n,
        }
    }

    /// All distinct vectors of the row space, zero vector first.
    pub fn row_space(&self) -> Vec<Gf2Vector> {
        let basis = self.row_basis();
        let r = basis.nrows();
        assert!(
            r < 32,
            "row space of dimension {r} is too large to enumerate"
        );
        let mut out = Vec::with_capacity(1 << r);
        let mut acc = 0u64;
        out.push(Gf2Vector::from_bits(0, self.ncols));
        // Gray code walk: each step toggles one basis row.
        for step in 1u64..(1 << r) {
            acc ^= basis.rows[step.trailing_zeros() as usize];
            out.push(Gf2Vector::from_bits(acc, self.ncols));
        }
        out
    }

    /// Pivot on entry `(alpha, beta)` in the standard-matrix sense:
    /// `y[g][d] = x[g][d] + x[g][beta]·x[alpha][d]` for `g != alpha`, `d != beta`,
    /// every other entry unchanged.
    pub fn pivot(&self, alpha: usize, beta: usize) -> Result<Gf2Matrix, Gf2Error> {
        if !self.get(alpha, beta) {
            return Err(Gf2Error::PivotOnZero {
                row: alpha,
                col: beta,
            });
        }
        let pivot_row = self.rows[alpha] & !(1u64 << beta);
        let rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(g, &r)| {
                if g != alpha && r >> beta & 1 == 1 {
                    r ^ pivot_row
                } else {
                    r
                }
            })
            .collect();
        Ok(Gf2Matrix {
            rows,
            ncols: self.ncols,
        })
    }

    /// Solves `self · c = target` where the columns of `self` are independent.
    pub fn solve_in_basis(&self, target: &Gf2Vector) -> Result<Gf2Vector, Gf2Error> {
        if target.len() != self.nrows() {
            return Err(Gf2Error::DimensionMismatch {
                expected: self.nrows(),
                found: target.len(),
            });
        }
        let mut basis = SpanBasis::new();
        for c in self.columns() {
            if !basis.insert(c) {
                return Err(Gf2Error::DependentColumns);
            }
        }
        let coeffs = basis.coefficients(target.bits).ok_or(Gf2Error::NotInSpan)?;
        Ok(Gf2Vector::from_bits(coeffs, self.ncols))
    }

    pub fn is_invertible(&self) -> bool {
        self.nrows() == self.ncols && self.rank() == self.ncols
    }

    pub fn inverse(&self) -> Result<Gf2Matrix, Gf2Error> {
        let k = self.nrows();
        if k != self.ncols {
            return Err(Gf2Error::DimensionMismatch {
                expected: k,
                found: self.ncols,
            });
        }
        let mut a = self.rows.clone();
        let mut inv: Vec<u64> = (0..k).map(|i| 1u64 << i).collect();
        for j in 0..k {
            let p = (j..k)
                .find(|&i| a[i] >> j & 1 == 1)
                .ok_or(Gf2Error::Singular)?;
            a.swap(j, p);
            inv.swap(j, p);
            for i in 0..k {
                if i != j && a[i] >> j & 1 == 1 {
                    a[i] ^= a[j];
                    inv[i] ^= inv[j];
                }
            }
        }
        Ok(Gf2Matrix {
            rows: inv,
            ncols: k,
        })
    }
}

impl fmt::Display for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, _) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{}", self.row(i))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Matrix {}x{} [", self.nrows(), self.ncols)?;
        for i in 0..self.nrows() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", self.row(i))?;
        }
        f.write_str("]")
    }
}

/// Every invertible `k×k` matrix, as the tuple of its column words.
///
/// Exhaustive; only sensible for small `k` (|GL_4(2)| = 20160).
pub fn invertible_column_tuples(k: usize) -> Vec<Vec<u64>> {
    fn extend(k: usize, cols: &mut Vec<u64>, basis: &SpanBasis, out: &mut Vec<Vec<u64>>) {
        if cols.len() == k {
            out.push(cols.clone());
            return;
        }
        for v in 1..(1u64 << k) {
            if basis.contains(v) {
                continue;
            }
            let mut next = basis.clone();
            next.insert(v);
            cols.push(v);
            extend(k, cols, &next, out);
            cols.pop();
        }
    }
    let mut out = Vec::new();
    extend(k, &mut Vec::with_capacity(k), &SpanBasis::new(), &mut out);
    out
}

/// Order of GL_k(2), saturating.
pub fn general_linear_order(k: usize) -> u128 {
    let mut order: u128 = 1;
    for i in 0..k as u32 {
        let term = (1u128 << k).saturating_sub(1u128 << i);
        order = order.saturating_mul(term);
    }
    order
}
