//! Tutte polynomials of binary matroids.
//!
//! The main route sums `x^i(B) y^e(B)` over all bases `B`, where `e(B)` counts
//! non-basis elements that are the largest element of their fundamental circuit
//! and `i(B)` counts basis elements that are the largest element of their
//! fundamental cocircuit. Deletion–contraction is kept as an independent check.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::gf2::{Gf2Vector, SpanBasis};
use crate::matroid::{BinaryMatroid, GroundSubset, MatroidError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TutteParseError {
    #[error("missing `k n` header")]
    MissingHeader,
    #[error("malformed integer `{0}`")]
    BadInteger(String),
    #[error("expected a {rows}x{cols} grid")]
    Shape { rows: usize, cols: usize },
}

/// Coefficients `t[i][j]` of `x^i y^j`, `0 ≤ i ≤ k`, `0 ≤ j ≤ n − k`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TuttePolynomial {
    rank: usize,
    size: usize,
    coeff: Vec<Vec<u64>>,
}

impl TuttePolynomial {
    pub fn zero(rank: usize, size: usize) -> Self {
        assert!(rank <= size);
        Self {
            rank,
            size,
            coeff: vec![vec![0; size - rank + 1]; rank + 1],
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn coefficient(&self, i: usize, j: usize) -> u64 {
        self.coeff
            .get(i)
            .and_then(|row| row.get(j))
            .copied()
            .unwrap_or(0)
    }

    pub fn grid(&self) -> &[Vec<u64>] {
        &self.coeff
    }

    fn bump(&mut self, i: usize, j: usize, by: u64) {
        self.coeff[i][j] += by;
    }

    /// Sum of all coefficients, i.e. the number of bases.
    pub fn total(&self) -> u64 {
        self.coeff.iter().flatten().sum()
    }

    /// Exact value at integer `(x, y)`.
    pub fn evaluate(&self, x: i64, y: i64) -> i128 {
        let mut acc: i128 = 0;
        let mut xp: i128 = 1;
        for row in &self.coeff {
            let mut yp: i128 = 1;
            for &c in row {
                acc += c as i128 * xp * yp;
                yp *= y as i128;
            }
            xp *= x as i128;
        }
        acc
    }

    /// Polynomial of the dual matroid: `T*(x, y) = T(y, x)`.
    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.size - self.rank, self.size);
        for (i, row) in self.coeff.iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                t.coeff[j][i] = c;
            }
        }
        t
    }

    /// Sum of polynomials of minors, placed in the grid of a rank-`rank`,
    /// size-`size` matroid.
    fn add_into(&mut self, other: &Self) {
        for (i, row) in other.coeff.iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                if c != 0 {
                    self.coeff[i][j] += c;
                }
            }
        }
    }

    /// Grid rows separated by `;`, entries by `,`.
    pub fn to_inline(&self) -> String {
        self.coeff
            .iter()
            .map(|row| row.iter().map(u64::to_string).collect::<Vec<_>>().join(","))
            .collect::<Vec<_>>()
            .join(";")
    }

    pub fn from_inline(rank: usize, size: usize, s: &str) -> Result<Self, TutteParseError> {
        let rows: Vec<Vec<u64>> = s
            .split(';')
            .map(|row| row.split(',').map(parse_u64).collect::<Result<_, _>>())
            .collect::<Result<_, _>>()?;
        Self::from_grid(rank, size, rows)
    }

    fn from_grid(rank: usize, size: usize, rows: Vec<Vec<u64>>) -> Result<Self, TutteParseError> {
        let shape = TutteParseError::Shape {
            rows: rank + 1,
            cols: size.saturating_sub(rank) + 1,
        };
        if rank > size || rows.len() != rank + 1 || rows.iter().any(|r| r.len() != size - rank + 1)
        {
            return Err(shape);
        }
        Ok(Self {
            rank,
            size,
            coeff: rows,
        })
    }

    /// Header `k n`, then `k + 1` lines of `n − k + 1` space-separated integers.
    pub fn to_grid_text(&self) -> String {
        let mut s = format!("{} {}\n", self.rank, self.size);
        for row in &self.coeff {
            let line: Vec<String> = row.iter().map(u64::to_string).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }
}

fn parse_u64(s: &str) -> Result<u64, TutteParseError> {
    s.trim()
        .parse()
        .map_err(|_| TutteParseError::BadInteger(s.to_string()))
}

impl FromStr for TuttePolynomial {
    type Err = TutteParseError;

    /// Parses the text produced by [`TuttePolynomial::to_grid_text`].
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut lines = s.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or(TutteParseError::MissingHeader)?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| {
                t.parse()
                    .map_err(|_| TutteParseError::BadInteger(t.to_string()))
            })
            .collect::<Result<_, _>>()?;
        let [rank, size] = dims[..] else {
            return Err(TutteParseError::MissingHeader);
        };
        let rows = lines
            .map(|l| {
                l.split_whitespace()
                    .map(parse_u64)
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_grid(rank, size, rows)
    }
}

impl fmt::Display for TuttePolynomial {
    /// Human-readable sum of monomials, e.g. `x^2 + x + y`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for i in (0..self.coeff.len()).rev() {
            for j in 0..self.coeff[i].len() {
                let c = self.coeff[i][j];
                if c == 0 {
                    continue;
                }
                let mut mono = String::new();
                match i {
                    0 => {}
                    1 => mono.push('x'),
                    _ => mono.push_str(&format!("x^{i}")),
                }
                match j {
                    0 => {}
                    1 => mono.push('y'),
                    _ => mono.push_str(&format!("y^{j}")),
                }
                terms.push(match (c, mono.is_empty()) {
                    (_, true) => c.to_string(),
                    (1, false) => mono,
                    (_, false) => format!("{c}{mono}"),
                });
            }
        }
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ActivityPair {
    pub internal: usize,
    pub external: usize,
}

/// All bases in lexicographic order of their element lists.
pub fn bases(m: &BinaryMatroid) -> Vec<GroundSubset> {
    fn dfs(
        cols: &[u64],
        k: usize,
        start: usize,
        chosen: GroundSubset,
        span: &SpanBasis,
        out: &mut Vec<GroundSubset>,
    ) {
        if span.rank() == k {
            out.push(chosen);
            return;
        }
        let needed = k - span.rank();
        for p in start..cols.len() {
            if cols.len() - p < needed {
                break;
            }
            let mut next = span.clone();
            if !next.insert(cols[p]) {
                continue;
            }
            // The remaining columns must still be able to complete a basis.
            let mut reach = next.clone();
            for &c in &cols[p + 1..] {
                if reach.rank() == k {
                    break;
                }
                reach.insert(c);
            }
            if reach.rank() < k {
                continue;
            }
            let mut with = chosen;
            with.insert(p + 1);
            dfs(cols, k, p + 1, with, &next, out);
        }
    }
    let mut out = Vec::new();
    dfs(
        m.column_words(),
        m.rank(),
        0,
        GroundSubset::empty(),
        &SpanBasis::new(),
        &mut out,
    );
    out
}

/// Expresses every column in terms of the basis `b`: returns, per 0-based
/// position, the basis elements (as a subset) whose columns sum to it.
fn basis_coordinates(
    m: &BinaryMatroid,
    b: GroundSubset,
) -> Result<Vec<GroundSubset>, MatroidError> {
    if !m.is_basis(b) {
        return Err(MatroidError::NotABasis(b));
    }
    let members = b.elements();
    let mut span = SpanBasis::new();
    for &e in &members {
        span.insert(m.column_words()[e - 1]);
    }
    Ok(m.column_words()
        .iter()
        .map(|&c| {
            let coeffs = span.coefficients(c).expect("basis spans every column");
            GroundSubset::from_elements(crate::gf2::BitIter(coeffs).map(|t| members[t]))
        })
        .collect())
}

/// The unique circuit inside `b ∪ {x}`.
pub fn fundamental_circuit(
    m: &BinaryMatroid,
    b: GroundSubset,
    x: usize,
) -> Result<GroundSubset, MatroidError> {
    if x == 0 || x > m.size() {
        return Err(MatroidError::ElementOutOfRange {
            element: x,
            size: m.size(),
        });
    }
    if b.contains(x) {
        return Err(MatroidError::ElementInBasis(x));
    }
    if !m.is_basis(b) {
        return Err(MatroidError::NotABasis(b));
    }
    let members = b.elements();
    let cols = m
        .matrix()
        .select_columns(&members.iter().map(|e| e - 1).collect::<Vec<_>>());
    let target = Gf2Vector::from_bits(m.column_words()[x - 1], m.rank());
    let coeffs = cols.solve_in_basis(&target)?;
    let mut c = GroundSubset::from_elements(coeffs.support().map(|t| members[t]));
    c.insert(x);
    Ok(c)
}

fn external_from_coordinates(coords: &[GroundSubset], b: GroundSubset) -> usize {
    coords
        .iter()
        .enumerate()
        .filter(|(p, c)| !b.contains(p + 1) && c.max_element().is_none_or(|top| top < p + 1))
        .count()
}

/// Number of `x ∉ B` that are the largest element of their fundamental circuit.
pub fn external_activity(m: &BinaryMatroid, b: GroundSubset) -> Result<usize, MatroidError> {
    let coords = basis_coordinates(m, b)?;
    Ok(external_from_coordinates(&coords, b))
}

/// Number of `x ∈ B` that are the largest element of their fundamental
/// cocircuit, computed as the external activity of `E \ B` in the dual.
pub fn internal_activity(m: &BinaryMatroid, b: GroundSubset) -> Result<usize, MatroidError> {
    if !m.is_basis(b) {
        return Err(MatroidError::NotABasis(b));
    }
    external_activity(&m.dual(), b.complement(m.size()))
}

/// Activity pair of every basis, in basis order.
pub fn activities(m: &BinaryMatroid) -> Result<Vec<(GroundSubset, ActivityPair)>, MatroidError> {
    let dual = m.dual();
    let n = m.size();
    bases(m)
        .into_iter()
        .map(|b| {
            let external = external_activity(m, b)?;
            let internal = external_activity(&dual, b.complement(n))?;
            Ok((b, ActivityPair { internal, external }))
        })
        .collect()
}

/// `T(M; x, y) = Σ_B x^i(B) y^e(B)`.
pub fn tutte_by_activities(m: &BinaryMatroid) -> Result<TuttePolynomial, MatroidError> {
    let mut t = TuttePolynomial::zero(m.rank(), m.size());
    for (_, a) in activities(m)? {
        t.bump(a.internal, a.external, 1);
    }
    Ok(t)
}

/// Recursive `T(M) = T(M \ a) + T(M / a)` on the smallest element that is neither
/// a loop nor a coloop; minors seen before are looked up by their reduced column
/// multiset.
pub fn tutte_by_deletion_contraction(m: &BinaryMatroid) -> Result<TuttePolynomial, MatroidError> {
    let mut memo = HashMap::new();
    dc(m, &mut memo)
}

type MemoKey = (usize, Vec<u64>);

fn memo_key(m: &BinaryMatroid) -> MemoKey {
    // Identical column multisets in the reduced echelon basis are isomorphic minors.
    let mut cols = m.matrix().rref().matrix.columns();
    cols.sort_unstable();
    (m.rank(), cols)
}

fn dc(
    m: &BinaryMatroid,
    memo: &mut HashMap<MemoKey, TuttePolynomial>,
) -> Result<TuttePolynomial, MatroidError> {
    let key = memo_key(m);
    if let Some(t) = memo.get(&key) {
        return Ok(t.clone());
    }
    let n = m.size();
    let pivot = (1..=n).find(|&e| !m.is_loop(e) && !m.is_coloop(e));
    let t = match pivot {
        None => {
            let loops = m.loops().len();
            let mut t = TuttePolynomial::zero(m.rank(), n);
            t.bump(n - loops, loops, 1);
            t
        }
        Some(a) => {
            let deleted = dc(&m.delete(a)?, memo)?;
            let contracted = dc(
                &m.contract_independent(GroundSubset::from_elements([a]))?,
                memo,
            )?;
            let mut t = TuttePolynomial::zero(m.rank(), n);
            t.add_into(&deleted);
            t.add_into(&contracted);
            t
        }
    };
    memo.insert(key, t.clone());
    Ok(t)
}

/// Exact value of `T` at `(x, y)`.
pub fn evaluate(t: &TuttePolynomial, x: i64, y: i64) -> i128 {
    t.evaluate(x, y)
}
