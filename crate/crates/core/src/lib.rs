//! Enumeration of binary matroids, regularity testing and Tutte polynomials.
//!
//! * [`gf2`]: linear algebra over GF(2).
//! * [`matroid`]: binary matroids, their circuits, cocircuits, flats and minors.
//! * [`enumerate`]: isomorph-free generation of binary matrix matroids.
//! * [`regularity`]: regularity via Fano and dual-Fano contractions.
//! * [`tutte`]: Tutte polynomials by basis activities and by deletion–contraction.
//! * [`catalogue`]: the catalogue runs driven by the `regmat` binary.

pub mod catalogue;
pub mod enumerate;
pub mod gf2;
pub mod matroid;
pub mod regularity;
pub mod tutte;

pub use enumerate::{ColumnClass, LabelVector, MultiplicityFunction};
pub use gf2::{Gf2Matrix, Gf2Vector};
pub use matroid::{BinaryMatroid, GroundSubset, MatroidError};
pub use regularity::{is_regular, FanoKind, FanoWitness};
pub use tutte::TuttePolynomial;
