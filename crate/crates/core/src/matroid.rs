//! Binary matroids given by a full-row-rank representing matrix.
//!
//! Elements are the columns, labelled `1..=n` from left to right. Minors
//! (contractions, deletions, simplifications) are relabelled `1..=n'` keeping the
//! relative order of the surviving columns.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::gf2::{self, BitIter, Gf2Error, Gf2Matrix, SpanBasis};

/// Nullity / rank above which circuit or cocircuit enumeration refuses to run.
pub const MAX_ENUMERATED_DIMENSION: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatroidError {
    #[error("representing matrix has {rows} rows but rank {rank}")]
    NotFullRank { rows: usize, rank: usize },
    #[error("corank {corank} exceeds matroid rank {rank}")]
    CorankTooLarge { corank: usize, rank: usize },
    #[error("contraction set {0} is dependent")]
    DependentContractionSet(GroundSubset),
    #[error("element {element} is outside the ground set 1..={size}")]
    ElementOutOfRange { element: usize, size: usize },
    #[error("{0} is not a basis")]
    NotABasis(GroundSubset),
    #[error("element {0} lies in the basis")]
    ElementInBasis(usize),
    #[error(
        "enumerating a space of dimension {0} exceeds the limit of {MAX_ENUMERATED_DIMENSION}"
    )]
    SpaceTooLarge(usize),
    #[error("isomorphism oracle would search {order} group elements (bound {bound})")]
    OracleTooLarge { order: u128, bound: u128 },
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
}

/// A subset of a ground set `{1, …, n}` with `n ≤ 64`.
///
/// Ordering is lexicographic on the ascending element lists, so `{1,2,6} < {1,3}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct GroundSubset(u64);

impl GroundSubset {
    pub const fn empty() -> Self {
        GroundSubset(0)
    }

    /// The full ground set `{1, …, n}`.
    pub fn ground(n: usize) -> Self {
        assert!(n <= gf2::MAX_LEN);
        GroundSubset(if n == 64 { u64::MAX } else { (1u64 << n) - 1 })
    }

    /// Elements are 1-based labels.
    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Self {
        let mut s = Self::empty();
        for e in elements {
            s.insert(e);
        }
        s
    }

    /// Bit `i` of the mask stands for element `i + 1`.
    pub const fn from_mask(mask: u64) -> Self {
        GroundSubset(mask)
    }

    pub const fn mask(self) -> u64 {
        self.0
    }

    pub fn contains(self, e: usize) -> bool {
        (1..=64).contains(&e) && self.0 >> (e - 1) & 1 == 1
    }

    pub fn insert(&mut self, e: usize) {
        assert!((1..=64).contains(&e), "element label {e} out of range");
        self.0 |= 1 << (e - 1);
    }

    pub fn remove(&mut self, e: usize) {
        if (1..=64).contains(&e) {
            self.0 &= !(1 << (e - 1));
        }
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        GroundSubset(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        GroundSubset(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        GroundSubset(self.0 & !other.0)
    }

    /// Complement within `{1, …, n}`.
    pub fn complement(self, n: usize) -> Self {
        Self::ground(n).difference(self)
    }

    pub fn max_element(self) -> Option<usize> {
        (self.0 != 0).then(|| 64 - self.0.leading_zeros() as usize)
    }

    pub fn min_element(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    /// Ascending 1-based labels.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        BitIter(self.0).map(|i| i + 1)
    }

    pub fn elements(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Ascending 0-based column positions.
    pub(crate) fn positions(self) -> impl Iterator<Item = usize> {
        BitIter(self.0)
    }
}

impl Ord for GroundSubset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for GroundSubset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GroundSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (t, e) in self.iter().enumerate() {
            if t > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for GroundSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Column matroid of a `k × n` binary matrix of rank `k`.
#[derive(Clone)]
pub struct BinaryMatroid {
    matrix: Gf2Matrix,
    columns: Vec<u64>,
    circuits: OnceLock<Vec<GroundSubset>>,
    cocircuits: OnceLock<Vec<GroundSubset>>,
}

impl fmt::Debug for BinaryMatroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BinaryMatroid")
            .field("rank", &self.rank())
            .field("size", &self.size())
            .field("matrix", &self.matrix)
            .finish()
    }
}

/// A representation in standard form: row `i` is labelled by basis element
/// `row_labels[i]` (1-based) and that element's column is the `i`-th unit vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardForm {
    pub matrix: Gf2Matrix,
    pub row_labels: Vec<usize>,
}

/// Result of simplification: the simple matroid plus, for each of its elements
/// `i + 1`, the parallel class `classes[i]` of the original matroid it stands for.
#[derive(Clone, Debug)]
pub struct Simplification {
    pub matroid: BinaryMatroid,
    pub classes: Vec<GroundSubset>,
    pub loops: GroundSubset,
}

impl BinaryMatroid {
    /// Wraps a matrix whose rows are linearly independent.
    pub fn new(matrix: Gf2Matrix) -> Result<Self, MatroidError> {
        let rank = matrix.rank();
        if rank != matrix.nrows() {
            return Err(MatroidError::NotFullRank {
                rows: matrix.nrows(),
                rank,
            });
        }
        Ok(Self::from_full_rank(matrix))
    }

    /// Column matroid of an arbitrary matrix; dependent rows are reduced away.
    pub fn from_spanning_rows(matrix: &Gf2Matrix) -> Self {
        Self::from_full_rank(matrix.row_basis())
    }

    /// Matroid whose columns are the given words of length `k` (bit `i` = row `i`).
    pub fn from_columns(k: usize, columns: &[u64]) -> Result<Self, MatroidError> {
        Self::new(Gf2Matrix::from_columns(k, columns)?)
    }

    fn from_full_rank(matrix: Gf2Matrix) -> Self {
        let columns = matrix.columns();
        Self {
            matrix,
            columns,
            circuits: OnceLock::new(),
            cocircuits: OnceLock::new(),
        }
    }

    pub fn matrix(&self) -> &Gf2Matrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn size(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn ground(&self) -> GroundSubset {
        GroundSubset::ground(self.size())
    }

    /// Column words (bit `i` = row `i`), indexed by 0-based position.
    pub fn column_words(&self) -> &[u64] {
        &self.columns
    }

    fn check_element(&self, e: usize) -> Result<(), MatroidError> {
        if e == 0 || e > self.size() {
            Err(MatroidError::ElementOutOfRange {
                element: e,
                size: self.size(),
            })
        } else {
            Ok(())
        }
    }

    fn check_subset(&self, s: GroundSubset) -> Result<(), MatroidError> {
        match s.max_element() {
            Some(e) if e > self.size() => Err(MatroidError::ElementOutOfRange {
                element: e,
                size: self.size(),
            }),
            _ => Ok(()),
        }
    }

    fn span_of(&self, s: GroundSubset) -> SpanBasis {
        let mut basis = SpanBasis::new();
        for p in s.positions() {
            basis.insert(self.columns[p]);
        }
        basis
    }

    pub fn rank_of(&self, s: GroundSubset) -> usize {
        self.span_of(s).rank()
    }

    pub fn is_independent(&self, s: GroundSubset) -> bool {
        self.rank_of(s) == s.len()
    }

    pub fn is_basis(&self, s: GroundSubset) -> bool {
        s.len() == self.rank() && self.is_independent(s)
    }

    pub fn is_loop(&self, e: usize) -> bool {
        self.columns[e - 1] == 0
    }

    /// An element lying in every basis.
    pub fn is_coloop(&self, e: usize) -> bool {
        let others = self.ground().difference(GroundSubset::from_elements([e]));
        self.rank_of(others) < self.rank()
    }

    pub fn loops(&self) -> GroundSubset {
        GroundSubset::from_mask(
            self.columns
                .iter()
                .enumerate()
                .filter(|(_, &c)| c == 0)
                .fold(0, |acc, (p, _)| acc | 1 << p),
        )
    }

    /// Inclusion-minimal nonempty supports of row-space vectors.
    pub fn cocircuits(&self) -> Result<&[GroundSubset], MatroidError> {
        if let Some(c) = self.cocircuits.get() {
            return Ok(c);
        }
        if self.rank() > MAX_ENUMERATED_DIMENSION {
            return Err(MatroidError::SpaceTooLarge(self.rank()));
        }
        let supports = self
            .matrix
            .row_space()
            .into_iter()
            .filter(|v| !v.is_zero())
            .map(|v| GroundSubset::from_mask(v.bits()));
        let minimal = minimal_sets(supports);
        Ok(self.cocircuits.get_or_init(|| minimal))
    }

    /// Inclusion-minimal nonempty supports of vectors orthogonal to the row space.
    pub fn circuits(&self) -> Result<&[GroundSubset], MatroidError> {
        if let Some(c) = self.circuits.get() {
            return Ok(c);
        }
        let nullity = self.size() - self.rank();
        if nullity > MAX_ENUMERATED_DIMENSION {
            return Err(MatroidError::SpaceTooLarge(nullity));
        }
        let computed = self.dual().cocircuits()?.to_vec();
        Ok(self.circuits.get_or_init(|| computed))
    }

    pub fn hyperplanes(&self) -> Result<Vec<GroundSubset>, MatroidError> {
        let n = self.size();
        let mut hs: Vec<_> = self.cocircuits()?.iter().map(|d| d.complement(n)).collect();
        hs.sort();
        Ok(hs)
    }

    /// All flats of rank `k − corank`, sorted.
    ///
    /// Built by intersecting corank-(c−1) flats with hyperplanes and keeping the
    /// maximal proper intersections.
    pub fn flats_of_corank(&self, corank: usize) -> Result<Vec<GroundSubset>, MatroidError> {
        let k = self.rank();
        if corank > k {
            return Err(MatroidError::CorankTooLarge { corank, rank: k });
        }
        if corank == 0 {
            return Ok(vec![self.ground()]);
        }
        let hyperplanes = self.hyperplanes()?;
        let mut flats = hyperplanes.clone();
        for _ in 1..corank {
            let mut candidates = HashSet::new();
            for &f in &flats {
                for &h in &hyperplanes {
                    let x = f.intersection(h);
                    if x != f {
                        candidates.insert(x);
                    }
                }
            }
            flats = maximal_sets(candidates);
        }
        flats.sort();
        Ok(flats)
    }

    pub fn closure(&self, s: GroundSubset) -> Result<GroundSubset, MatroidError> {
        self.check_subset(s)?;
        let span = self.span_of(s);
        Ok(GroundSubset::from_mask(
            self.columns
                .iter()
                .enumerate()
                .filter(|(_, &c)| span.contains(c))
                .fold(0, |acc, (p, _)| acc | 1 << p),
        ))
    }

    /// Greedy independent subset of `s` with the same span, ascending labels.
    pub fn independent_spanning_subset(&self, s: GroundSubset) -> GroundSubset {
        let mut span = SpanBasis::new();
        let mut out = GroundSubset::empty();
        for e in s.iter() {
            if span.insert(self.columns[e - 1]) {
                out.insert(e);
            }
        }
        out
    }

    pub fn simplify(&self) -> Simplification {
        let mut reps: Vec<(u64, GroundSubset)> = Vec::new();
        let mut loops = GroundSubset::empty();
        for (p, &c) in self.columns.iter().enumerate() {
            if c == 0 {
                loops.insert(p + 1);
            } else if let Some(entry) = reps.iter_mut().find(|(col, _)| *col == c) {
                entry.1.insert(p + 1);
            } else {
                reps.push((c, GroundSubset::from_elements([p + 1])));
            }
        }
        let cols: Vec<u64> = reps.iter().map(|(c, _)| *c).collect();
        let matroid = Self::from_full_rank(
            Gf2Matrix::from_columns(self.rank(), &cols).expect("column count shrinks"),
        );
        Simplification {
            matroid,
            classes: reps.into_iter().map(|(_, s)| s).collect(),
            loops,
        }
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = HashSet::new();
        self.columns.iter().all(|&c| c != 0 && seen.insert(c))
    }

    /// Standard form with respect to a basis containing the independent set `set`.
    ///
    /// Starts from the reduced echelon basis; each element of `set` outside it is
    /// pivoted in on the smallest-index row carrying a 1 in its column whose label
    /// is not itself in `set`.
    pub fn standard_form_containing(
        &self,
        set: GroundSubset,
    ) -> Result<StandardForm, MatroidError> {
        self.check_subset(set)?;
        if !self.is_independent(set) {
            return Err(MatroidError::DependentContractionSet(set));
        }
        let echelon = self.matrix.rref();
        let mut rows = echelon.matrix.packed_rows().to_vec();
        let mut labels: Vec<usize> = echelon.pivots.iter().map(|&p| p + 1).collect();
        for x in set.iter() {
            if labels.contains(&x) {
                continue;
            }
            let col = x - 1;
            let r = (0..rows.len())
                .find(|&i| rows[i] >> col & 1 == 1 && !set.contains(labels[i]))
                .expect("independent set extends to a basis");
            let pr = rows[r];
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && *row >> col & 1 == 1 {
                    *row ^= pr;
                }
            }
            labels[r] = x;
        }
        Ok(StandardForm {
            matrix: Gf2Matrix::from_packed_rows(self.size(), rows)?,
            row_labels: labels,
        })
    }

    /// `M / set` for an independent `set`: standard form w.r.t. a basis containing
    /// `set`, then the rows and columns labelled by `set` are dropped.
    pub fn contract_independent(&self, set: GroundSubset) -> Result<Self, MatroidError> {
        let sf = self.standard_form_containing(set)?;
        let keep_rows: Vec<usize> = (0..sf.row_labels.len())
            .filter(|&i| !set.contains(sf.row_labels[i]))
            .collect();
        let keep_cols: Vec<usize> = (0..self.size()).filter(|&p| !set.contains(p + 1)).collect();
        let m = sf.matrix.select_rows(&keep_rows).select_columns(&keep_cols);
        Ok(Self::from_full_rank(m))
    }

    /// `M / F` for an arbitrary subset, contracting a greedy independent spanning subset
    /// and deleting the remaining (now loop) elements of `F`.
    pub fn contract(&self, set: GroundSubset) -> Result<Self, MatroidError> {
        self.check_subset(set)?;
        let independent = self.independent_spanning_subset(set);
        let contracted = self.contract_independent(independent)?;
        // Positions of set \ independent among the survivors.
        let survivors: Vec<usize> = (1..=self.size())
            .filter(|e| !independent.contains(*e))
            .collect();
        let keep: Vec<usize> = survivors
            .iter()
            .enumerate()
            .filter(|(_, e)| !set.contains(**e))
            .map(|(p, _)| p)
            .collect();
        Ok(Self::from_full_rank(
            contracted.matrix.select_columns(&keep),
        ))
    }

    /// `M \ e`; the representation is reduced if `e` was a coloop.
    pub fn delete(&self, e: usize) -> Result<Self, MatroidError> {
        self.check_element(e)?;
        self.delete_set(GroundSubset::from_elements([e]))
    }

    pub fn delete_set(&self, set: GroundSubset) -> Result<Self, MatroidError> {
        self.check_subset(set)?;
        let keep: Vec<usize> = (0..self.size()).filter(|&p| !set.contains(p + 1)).collect();
        let m = self.matrix.select_columns(&keep);
        if m.rank() == m.nrows() {
            Ok(Self::from_full_rank(m))
        } else {
            Ok(Self::from_spanning_rows(&m))
        }
    }

    /// Restriction to `set`, relabelled in order.
    pub fn restrict(&self, set: GroundSubset) -> Result<Self, MatroidError> {
        self.delete_set(set.complement(self.size()))
    }

    /// Dual matroid: the rows span the orthogonal complement of the row space.
    pub fn dual(&self) -> Self {
        Self::from_full_rank(self.matrix.nullspace_basis())
    }

    /// Every pair of elements lies on a common circuit; a single element is
    /// connected iff it is not a loop.
    pub fn is_connected(&self) -> Result<bool, MatroidError> {
        let n = self.size();
        if n == 0 {
            return Ok(false);
        }
        if n == 1 {
            return Ok(!self.is_loop(1));
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut covered = GroundSubset::empty();
        for c in self.circuits()? {
            covered = covered.union(*c);
            let mut it = c.positions();
            let first = it.next().expect("circuits are nonempty");
            for p in it {
                let (a, b) = (find(&mut parent, first), find(&mut parent, p));
                parent[a] = b;
            }
        }
        if covered != self.ground() {
            return Ok(false);
        }
        let root = find(&mut parent, 0);
        Ok((1..n).all(|p| find(&mut parent, p) == root))
    }
}

/// Exhaustive isomorphism test: some `G ∈ GL_k(2)` maps the column multiset of
/// one matroid onto the other's. Refuses when `|GL_k(2)|` exceeds `max_group_order`.
pub fn is_isomorphic_bruteforce_bounded(
    a: &BinaryMatroid,
    b: &BinaryMatroid,
    max_group_order: u128,
) -> Result<bool, MatroidError> {
    if a.rank() != b.rank() || a.size() != b.size() {
        return Ok(false);
    }
    let k = a.rank();
    let order = gf2::general_linear_order(k);
    if order > max_group_order {
        return Err(MatroidError::OracleTooLarge {
            order,
            bound: max_group_order,
        });
    }
    let mut target = b.column_words().to_vec();
    target.sort_unstable();
    for cols in gf2::invertible_column_tuples(k) {
        let g = Gf2Matrix::from_columns(k, &cols)?;
        let mut image: Vec<u64> = a.column_words().iter().map(|&c| g.mul_bits(c)).collect();
        image.sort_unstable();
        if image == target {
            return Ok(true);
        }
    }
    Ok(false)
}

/// [`is_isomorphic_bruteforce_bounded`] with the default bound `|GL_4(2)|`.
pub fn is_isomorphic_bruteforce(
    a: &BinaryMatroid,
    b: &BinaryMatroid,
) -> Result<bool, MatroidError> {
    is_isomorphic_bruteforce_bounded(a, b, gf2::general_linear_order(4))
}

fn minimal_sets(sets: impl IntoIterator<Item = GroundSubset>) -> Vec<GroundSubset> {
    let mut all: Vec<GroundSubset> = sets.into_iter().collect();
    all.sort_by_key(|s| s.len());
    all.dedup();
    let mut kept: Vec<GroundSubset> = Vec::new();
    for s in all {
        if !kept.iter().any(|t| t.is_subset(s)) {
            kept.push(s);
        }
    }
    kept.sort();
    kept
}

fn maximal_sets(sets: impl IntoIterator<Item = GroundSubset>) -> Vec<GroundSubset> {
    let mut all: Vec<GroundSubset> = sets.into_iter().collect();
    all.sort_by_key(|s| std::cmp::Reverse(s.len()));
    let mut kept: Vec<GroundSubset> = Vec::new();
    for s in all {
        if !kept.iter().any(|t| s.is_subset(*t)) {
            kept.push(s);
        }
    }
    kept
}
