//! Regularity of binary matroids via Fano minors.
//!
//! A binary matroid of rank `k` is regular iff no flat of rank `k − 3` contracts
//! (after simplification) to the Fano plane and no flat of rank `k − 4`
//! contracts to its dual. Both obstructions are recognised by their column sets,
//! so no general isomorphism test is needed.

use std::fmt;

use crate::matroid::{BinaryMatroid, GroundSubset, MatroidError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FanoKind {
    Fano,
    FanoDual,
}

impl fmt::Display for FanoKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FanoKind::Fano => "F7",
            FanoKind::FanoDual => "F7*",
        })
    }
}

/// A flat whose simplified contraction is the named obstruction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FanoWitness {
    pub flat: GroundSubset,
    pub kind: FanoKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Regularity {
    pub regular: bool,
    pub witness: Option<FanoWitness>,
}

/// The seven nonzero vectors of GF(2)^3, each exactly once.
fn is_fano_column_set(columns: &[u64]) -> bool {
    if columns.len() != 7 {
        return false;
    }
    let seen = columns.iter().fold(0u32, |acc, &c| {
        if (1..8).contains(&c) {
            acc | 1 << c
        } else {
            acc
        }
    });
    seen == 0b1111_1110
}

/// `M` is the Fano plane: rank 3 with all seven nonzero columns.
pub fn is_fano(m: &BinaryMatroid) -> bool {
    m.rank() == 3 && is_fano_column_set(m.column_words())
}

/// `M` is the dual Fano matroid: rank 4 on 7 elements whose orthogonal
/// complement, read column-wise, is the Fano column set.
pub fn is_fano_dual(m: &BinaryMatroid) -> bool {
    if m.rank() != 4 || m.size() != 7 {
        return false;
    }
    is_fano_column_set(&m.matrix().nullspace_basis().columns())
}

/// Whether contracting `flat` and simplifying gives the obstruction `kind`.
pub fn contracts_to(
    m: &BinaryMatroid,
    flat: GroundSubset,
    kind: FanoKind,
) -> Result<bool, MatroidError> {
    let independent = m.independent_spanning_subset(flat);
    let expected_rank = match kind {
        FanoKind::Fano => 3,
        FanoKind::FanoDual => 4,
    };
    if m.rank() - independent.len() != expected_rank {
        return Ok(false);
    }
    let minor = m.contract_independent(independent)?.simplify().matroid;
    if minor.size() != 7 {
        return Ok(false);
    }
    Ok(match kind {
        FanoKind::Fano => is_fano(&minor),
        FanoKind::FanoDual => is_fano_dual(&minor),
    })
}

fn witnesses(m: &BinaryMatroid, first_only: bool) -> Result<Vec<FanoWitness>, MatroidError> {
    let mut out = Vec::new();
    for (kind, corank) in [(FanoKind::Fano, 3), (FanoKind::FanoDual, 4)] {
        if m.rank() < corank {
            continue;
        }
        for flat in m.flats_of_corank(corank)? {
            if contracts_to(m, flat, kind)? {
                out.push(FanoWitness { flat, kind });
                if first_only {
                    return Ok(out);
                }
            }
        }
    }
    Ok(out)
}

/// Every obstruction flat, Fano witnesses first, each kind in flat order.
pub fn fano_witnesses(m: &BinaryMatroid) -> Result<Vec<FanoWitness>, MatroidError> {
    witnesses(m, false)
}

/// Regularity test. On failure the witness is the smallest Fano flat if any,
/// else the smallest dual-Fano flat.
pub fn is_regular(m: &BinaryMatroid) -> Result<Regularity, MatroidError> {
    let witness = witnesses(m, true)?.into_iter().next();
    Ok(Regularity {
        regular: witness.is_none(),
        witness,
    })
}
