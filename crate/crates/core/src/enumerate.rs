//! Isomorph-free generation of binary matrix matroids.
//!
//! A rank-`k` binary matroid on `n` elements is a multiset of `n` vectors of
//! GF(2)^k, i.e. a multiplicity function `f` on the labels `0..2^k`. Two
//! multisets describe isomorphic matroids iff they lie in one orbit of GL_k(2).
//! The standard representative of an orbit is its lexicographically largest
//! multiplicity vector, which is the lexicographically smallest sorted label
//! vector.
//!
//! The default generator walks the tree of canonical multisets, where the parent
//! of a multiset drops one copy of its largest label. Removing the largest label
//! from a canonical multiset leaves a canonical multiset, so pruning non-canonical
//! nodes loses nothing. [`GenerationStrategy::Descent`] is the plain scan over
//! all candidates and is kept as a cross-check for small shapes.

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::gf2::{Gf2Error, Gf2Matrix, Gf2Vector, SpanBasis};
use crate::matroid::BinaryMatroid;

/// Largest rank accepted by the generator.
pub const MAX_RANK: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error("label {label} is out of range for rank {rank}")]
    LabelOutOfRange { label: usize, rank: usize },
    #[error("matrix is not invertible")]
    SingularMatrix,
    #[error("invalid shape: rank {rank}, size {size}")]
    InvalidShape { rank: usize, size: usize },
    #[error("invalid multiplicity function: {0}")]
    InvalidMultiplicity(String),
    #[error("invalid label vector: {0}")]
    InvalidLabels(String),
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
}

/// `ρ(v) = Σ v_j 2^(j−1)`: the first entry is the least significant bit.
pub fn rho(v: &Gf2Vector) -> usize {
    v.bits() as usize
}

/// Inverse of [`rho`] for vectors of length `k`.
pub fn unrho(label: usize, k: usize) -> Result<Gf2Vector, EnumerateError> {
    if k > MAX_RANK || label >> k != 0 {
        return Err(EnumerateError::LabelOutOfRange { label, rank: k });
    }
    Ok(Gf2Vector::from_bits(label as u64, k))
}

/// `π_G(j) = ρ(G · ρ⁻¹(j))`.
pub fn pi(g: &Gf2Matrix, label: usize) -> Result<usize, EnumerateError> {
    if !g.is_invertible() {
        return Err(EnumerateError::SingularMatrix);
    }
    let v = unrho(label, g.nrows())?;
    Ok(rho(&g.mul_vec(&v)?))
}

/// Which columns a generated multiset may contain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ColumnClass {
    /// No zero columns; repeats allowed.
    Loopless,
    /// No zero columns and no repeats.
    Simple,
}

/// Multiplicities `f(0), …, f(2^k − 1)` of a spanning loopless multiset.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiplicityFunction {
    rank: usize,
    counts: Vec<u32>,
}

impl MultiplicityFunction {
    pub fn new(rank: usize, counts: Vec<u32>) -> Result<Self, EnumerateError> {
        if rank == 0 || rank > MAX_RANK || counts.len() != 1 << rank {
            return Err(EnumerateError::InvalidMultiplicity(format!(
                "expected {} entries for rank {rank}, got {}",
                1usize.checked_shl(rank as u32).unwrap_or(0),
                counts.len()
            )));
        }
        if counts[0] != 0 {
            return Err(EnumerateError::InvalidMultiplicity(
                "zero vector has positive multiplicity".into(),
            ));
        }
        if counts.iter().all(|&c| c == 0) {
            return Err(EnumerateError::InvalidMultiplicity("empty multiset".into()));
        }
        if support_rank(&counts) != rank {
            return Err(EnumerateError::InvalidMultiplicity(format!(
                "multiset does not span GF(2)^{rank}"
            )));
        }
        Ok(Self { rank, counts })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn size(&self) -> usize {
        self.counts.iter().map(|&c| c as usize).sum()
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn get(&self, label: usize) -> u32 {
        self.counts[label]
    }

    pub fn to_label_vector(&self) -> LabelVector {
        let labels = self
            .counts
            .iter()
            .enumerate()
            .flat_map(|(label, &c)| std::iter::repeat_n(label, c as usize))
            .collect();
        LabelVector {
            rank: self.rank,
            labels,
        }
    }

    /// Image under `g`: the multiset of columns `g·v`, so `f'(π_g(j)) = f(j)`.
    pub fn image(&self, g: &Gf2Matrix) -> Result<Self, EnumerateError> {
        if g.nrows() != self.rank || !g.is_invertible() {
            return Err(EnumerateError::SingularMatrix);
        }
        let mut counts = vec![0; self.counts.len()];
        for (j, &c) in self.counts.iter().enumerate() {
            counts[g.mul_bits(j as u64) as usize] += c;
        }
        Ok(Self {
            rank: self.rank,
            counts,
        })
    }

    /// Whether `f` is the lexicographically largest member of its orbit.
    pub fn is_canonical(&self) -> bool {
        matches!(self.canonicity(), Canonicity::Canonical)
    }

    /// Canonicity test returning a witness `G` with a larger image on failure.
    ///
    /// The unit-label conditions `f(2^j) > 0` and `f(2^j) ≥ f(r)` for `r > 2^j` are
    /// checked first; then a backtracking search over GL_k(2) builds the inverse
    /// of `G` one unit-vector image at a time and prunes any prefix that compares
    /// smaller.
    pub fn canonicity(&self) -> Canonicity {
        match larger_image_witness(&self.counts, self.rank) {
            None => Canonicity::Canonical,
            Some(h_cols) => {
                let h = Gf2Matrix::from_columns(self.rank, &h_cols).expect("rank within word size");
                Canonicity::Beaten {
                    witness: h.inverse().expect("witness columns are independent"),
                }
            }
        }
    }

    /// The standard representative of the orbit.
    pub fn canonical_form(&self) -> Self {
        Self {
            rank: self.rank,
            counts: lex_max_image(&self.counts, self.rank),
        }
    }
}

impl PartialOrd for MultiplicityFunction {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        (self.rank == other.rank).then(|| self.counts.cmp(&other.counts))
    }
}

/// Outcome of [`MultiplicityFunction::canonicity`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Canonicity {
    Canonical,
    /// `witness` maps the multiset to a lexicographically larger one.
    Beaten {
        witness: Gf2Matrix,
    },
}

/// Sorted labels `r_1 ≤ … ≤ r_n` of the columns of a multiset.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct LabelVector {
    rank: usize,
    labels: Vec<usize>,
}

impl LabelVector {
    /// Labels must be non-decreasing, nonzero and below `2^rank`, and span.
    pub fn new(rank: usize, labels: Vec<usize>) -> Result<Self, EnumerateError> {
        if rank == 0 || rank > MAX_RANK {
            return Err(EnumerateError::InvalidLabels(format!(
                "unsupported rank {rank}"
            )));
        }
        if labels.is_empty() {
            return Err(EnumerateError::InvalidLabels("empty label vector".into()));
        }
        if labels.windows(2).any(|w| w[0] > w[1]) {
            return Err(EnumerateError::InvalidLabels(
                "labels are not sorted".into(),
            ));
        }
        if let Some(&bad) = labels.iter().find(|&&l| l == 0 || l >> rank != 0) {
            return Err(EnumerateError::LabelOutOfRange { label: bad, rank });
        }
        let lv = Self { rank, labels };
        lv.to_multiplicity()?;
        Ok(lv)
    }

    /// Sorts arbitrary column labels into a label vector.
    pub fn from_unsorted(rank: usize, mut labels: Vec<usize>) -> Result<Self, EnumerateError> {
        labels.sort_unstable();
        Self::new(rank, labels)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn to_multiplicity(&self) -> Result<MultiplicityFunction, EnumerateError> {
        let mut counts = vec![0u32; 1 << self.rank];
        for &l in &self.labels {
            counts[l] += 1;
        }
        MultiplicityFunction::new(self.rank, counts)
    }

    pub fn is_simple(&self) -> bool {
        self.labels.windows(2).all(|w| w[0] != w[1])
    }

    pub fn to_matroid(&self) -> BinaryMatroid {
        let cols: Vec<u64> = self.labels.iter().map(|&l| l as u64).collect();
        BinaryMatroid::from_columns(self.rank, &cols).expect("label vectors span")
    }
}

impl fmt::Display for LabelVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, l) in self.labels.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        f.write_str(")")
    }
}

fn support_rank(counts: &[u32]) -> usize {
    let mut basis = SpanBasis::new();
    for (label, &c) in counts.iter().enumerate() {
        if c > 0 {
            basis.insert(label as u64);
        }
    }
    basis.rank()
}

/// Mass of `counts` over labels `< bound`.
fn prefix_mass(counts: &[u32], bound: usize) -> u64 {
    counts[..bound].iter().map(|&c| c as u64).sum()
}

/// Completes independent columns to a basis of GF(2)^k with unit vectors.
fn complete_basis(mut cols: Vec<u64>, k: usize) -> Vec<u64> {
    let mut basis = SpanBasis::new();
    for &c in &cols {
        basis.insert(c);
    }
    for j in 0..k {
        if cols.len() == k {
            break;
        }
        if basis.insert(1 << j) {
            cols.push(1 << j);
        }
    }
    cols
}

/// Searches for `H ∈ GL_k(2)` with `(f(π_H(1)), f(π_H(2)), …)` lexicographically
/// larger than `f`; returns the columns of such an `H`.
///
/// Works for any multiset, spanning or not. Position `l` of the permuted vector
/// only depends on the images of the unit vectors `e_1, …, e_{bitlen(l)}`, so the
/// comparison proceeds in blocks `[2^i, 2^(i+1))`.
fn larger_image_witness(counts: &[u32], k: usize) -> Option<Vec<u64>> {
    // A later label heavier than the unit label 2^i: keep e_1..e_i, send e_{i+1} there.
    for i in 0..k {
        let unit = 1usize << i;
        if let Some(r) = (unit + 1..counts.len()).find(|&r| counts[r] > counts[unit]) {
            let mut cols: Vec<u64> = (0..i).map(|j| 1u64 << j).collect();
            cols.push(r as u64);
            return Some(complete_basis(cols, k));
        }
    }
    let total: u64 = counts.iter().map(|&c| c as u64).sum();
    let mut img = vec![0usize; counts.len()];
    let mut chosen = Vec::with_capacity(k);
    witness_level(
        counts,
        k,
        total,
        0,
        &mut img,
        &mut chosen,
        &SpanBasis::new(),
    )
}

fn witness_level(
    counts: &[u32],
    k: usize,
    total: u64,
    level: usize,
    img: &mut [usize],
    chosen: &mut Vec<u64>,
    span: &SpanBasis,
) -> Option<Vec<u64>> {
    let start = 1usize << level;
    if level == k || prefix_mass(counts, start) == total {
        return None;
    }
    let threshold = counts[start];
    for h in 1..counts.len() {
        if counts[h] < threshold || span.contains(h as u64) {
            continue;
        }
        let mut verdict = std::cmp::Ordering::Equal;
        for t in 0..start {
            let p = img[t] ^ h;
            img[start + t] = p;
            verdict = counts[p].cmp(&counts[start + t]);
            if verdict != std::cmp::Ordering::Equal {
                break;
            }
        }
        match verdict {
            std::cmp::Ordering::Greater => {
                let mut cols = chosen.clone();
                cols.push(h as u64);
                return Some(complete_basis(cols, k));
            }
            std::cmp::Ordering::Less => continue,
            std::cmp::Ordering::Equal => {
                let mut next = span.clone();
                next.insert(h as u64);
                chosen.push(h as u64);
                let found = witness_level(counts, k, total, level + 1, img, chosen, &next);
                chosen.pop();
                if found.is_some() {
                    return found;
                }
            }
        }
    }
    None
}

/// Lexicographically largest vector in the GL_k(2)-orbit of `counts`.
fn lex_max_image(counts: &[u32], k: usize) -> Vec<u32> {
    // `None` marks positions whose best value is not yet known.
    let mut best: Vec<Option<u32>> = counts.iter().map(|&c| Some(c)).collect();
    let total: u64 = counts.iter().map(|&c| c as u64).sum();
    let mut img = vec![0usize; counts.len()];
    maximize_level(counts, k, total, 0, &mut img, &SpanBasis::new(), &mut best);
    best.into_iter().map(|c| c.unwrap_or(0)).collect()
}

fn maximize_level(
    counts: &[u32],
    k: usize,
    total: u64,
    level: usize,
    img: &mut [usize],
    span: &SpanBasis,
    best: &mut Vec<Option<u32>>,
) {
    let start = 1usize << level;
    let covered: u64 = img[..start].iter().map(|&p| counts[p] as u64).sum();
    if level == k || covered == total {
        // Completed image: positions beyond the covered span are empty.
        let cand: Vec<u32> = (0..counts.len())
            .map(|l| if l < start { counts[img[l]] } else { 0 })
            .collect();
        let better = cand
            .iter()
            .zip(best.iter())
            .find_map(|(&c, &b)| match b {
                None => Some(true),
                Some(b) if c != b => Some(c > b),
                _ => None,
            })
            .unwrap_or(false);
        if better {
            *best = cand.into_iter().map(Some).collect();
        }
        return;
    }
    for h in 1..counts.len() {
        if counts[h] == 0 || span.contains(h as u64) {
            continue;
        }
        if let Some(b) = best[start] {
            if counts[h] < b {
                continue;
            }
        }
        let mut verdict = std::cmp::Ordering::Equal;
        for t in 0..start {
            let p = img[t] ^ h;
            img[start + t] = p;
            if verdict == std::cmp::Ordering::Equal {
                verdict = match best[start + t] {
                    None => std::cmp::Ordering::Greater,
                    Some(b) => counts[p].cmp(&b),
                };
                if verdict == std::cmp::Ordering::Less {
                    break;
                }
            }
        }
        if verdict == std::cmp::Ordering::Less {
            continue;
        }
        if verdict == std::cmp::Ordering::Greater {
            for (t, slot) in best[start..].iter_mut().enumerate() {
                *slot = (t < start).then(|| counts[img[start + t]]);
            }
        }
        let mut next = span.clone();
        next.insert(h as u64);
        maximize_level(counts, k, total, level + 1, img, &next, best);
    }
}

/// The permutations `π_G` of `0..2^k` for every `G ∈ GL_k(2)`. Exhaustive (`k ≤ 4`).
pub fn label_permutations(k: usize) -> Vec<Vec<usize>> {
    crate::gf2::invertible_column_tuples(k)
        .into_iter()
        .map(|cols| {
            (0..1usize << k)
                .map(|j| crate::gf2::BitIter(j as u64).fold(0, |acc, b| acc ^ cols[b] as usize))
                .collect()
        })
        .collect()
}

/// Canonicity by comparing against every image under `perms` (from [`label_permutations`]).
pub fn is_canonical_among(f: &MultiplicityFunction, perms: &[Vec<usize>]) -> bool {
    let mut image = vec![0u32; f.counts.len()];
    perms.iter().all(|pi| {
        for (j, &c) in f.counts.iter().enumerate() {
            image[pi[j]] = c;
        }
        image <= f.counts
    })
}

/// Canonicity by brute force over all of GL_k(2); for cross-checking (`k ≤ 4`).
pub fn is_canonical_exhaustive(f: &MultiplicityFunction) -> bool {
    is_canonical_among(f, &label_permutations(f.rank()))
}

/// How candidates are visited.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GenerationStrategy {
    /// Depth-first over canonical multisets, one label appended per level.
    #[default]
    CanonicalTree,
    /// Every non-decreasing label vector in increasing order, filtered by the
    /// unit-label conditions and the canonicity test.
    Descent,
}

/// Standard representatives of all rank-`k`, size-`n` binary matroids of the
/// class, in increasing label-vector order.
pub fn generate(
    k: usize,
    n: usize,
    class: ColumnClass,
) -> Result<Vec<LabelVector>, EnumerateError> {
    generate_with(k, n, class, GenerationStrategy::default())
}

pub fn generate_with(
    k: usize,
    n: usize,
    class: ColumnClass,
    strategy: GenerationStrategy,
) -> Result<Vec<LabelVector>, EnumerateError> {
    if k == 0 || k > n || k > MAX_RANK {
        return Err(EnumerateError::InvalidShape { rank: k, size: n });
    }
    if class == ColumnClass::Simple && n >= 1 << k {
        return Ok(Vec::new());
    }
    let mut out = match strategy {
        GenerationStrategy::CanonicalTree => tree_generate(k, n, class),
        GenerationStrategy::Descent => descent_generate(k, n, class),
    };
    out.sort();
    Ok(out)
}

struct TreeNode {
    counts: Vec<u32>,
    labels: Vec<usize>,
    span: SpanBasis,
}

impl TreeNode {
    fn child(&self, label: usize) -> TreeNode {
        let mut counts = self.counts.clone();
        counts[label] += 1;
        let mut labels = self.labels.clone();
        labels.push(label);
        let mut span = self.span.clone();
        span.insert(label as u64);
        TreeNode {
            counts,
            labels,
            span,
        }
    }
}

fn child_labels(
    k: usize,
    n: usize,
    class: ColumnClass,
    labels: &[usize],
    span_rank: usize,
) -> std::ops::Range<usize> {
    let first = match (labels.last(), class) {
        (None, _) => 1,
        (Some(&l), ColumnClass::Loopless) => l,
        (Some(&l), ColumnClass::Simple) => l + 1,
    };
    // Not enough room left to reach full rank.
    if span_rank + (n - labels.len()) < k {
        return 0..0;
    }
    first..(1 << k)
}

fn tree_generate(k: usize, n: usize, class: ColumnClass) -> Vec<LabelVector> {
    // Expand a frontier sequentially, then fan the subtrees out.
    let frontier_depth = n.min(3);
    let mut frontier = vec![TreeNode {
        counts: vec![0; 1 << k],
        labels: Vec::new(),
        span: SpanBasis::new(),
    }];
    for _ in 0..frontier_depth {
        let mut next = Vec::new();
        for node in &frontier {
            for label in child_labels(k, n, class, &node.labels, node.span.rank()) {
                let child = node.child(label);
                if larger_image_witness(&child.counts, k).is_none() {
                    next.push(child);
                }
            }
        }
        frontier = next;
    }
    frontier
        .par_iter()
        .map(|node| {
            let mut out = Vec::new();
            let mut counts = node.counts.clone();
            let mut labels = node.labels.clone();
            tree_descend(k, n, class, &mut counts, &mut labels, &node.span, &mut out);
            out
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

fn tree_descend(
    k: usize,
    n: usize,
    class: ColumnClass,
    counts: &mut Vec<u32>,
    labels: &mut Vec<usize>,
    span: &SpanBasis,
    out: &mut Vec<LabelVector>,
) {
    if labels.len() == n {
        if span.rank() == k {
            out.push(LabelVector {
                rank: k,
                labels: labels.clone(),
            });
        }
        return;
    }
    for label in child_labels(k, n, class, labels, span.rank()) {
        counts[label] += 1;
        labels.push(label);
        if larger_image_witness(counts, k).is_none() {
            let mut next = span.clone();
            next.insert(label as u64);
            tree_descend(k, n, class, counts, labels, &next, out);
        }
        labels.pop();
        counts[label] -= 1;
    }
}

fn descent_generate(k: usize, n: usize, class: ColumnClass) -> Vec<LabelVector> {
    fn walk(
        k: usize,
        n: usize,
        class: ColumnClass,
        labels: &mut Vec<usize>,
        out: &mut Vec<LabelVector>,
    ) {
        if labels.len() == n {
            let mut counts = vec![0u32; 1 << k];
            for &l in labels.iter() {
                counts[l] += 1;
            }
            if let Ok(f) = MultiplicityFunction::new(k, counts) {
                if f.is_canonical() {
                    out.push(f.to_label_vector());
                }
            }
            return;
        }
        let first = match (labels.last(), class) {
            (None, _) => 1,
            (Some(&l), ColumnClass::Loopless) => l,
            (Some(&l), ColumnClass::Simple) => l + 1,
        };
        for label in first..(1 << k) {
            labels.push(label);
            walk(k, n, class, labels, out);
            labels.pop();
        }
    }
    let mut out = Vec::new();
    walk(k, n, class, &mut Vec::with_capacity(n), &mut out);
    out
}
