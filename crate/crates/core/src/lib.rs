//! Exact combinatorial linear algebra around the McMullen transfer matrices.
//!
//! The crate builds the transfer matrices `M_d` and the path matrices `W_n`,
//! converts between f-, h- and g-vectors of simplicial polytopes, tests
//! M-sequences through the Macaulay boundary operator, and certifies total
//! nonnegativity in two independent ways: by scanning every minor, and by
//! counting non-intersecting lattice path families on the weighted planar
//! graphs `T_n`.
//!
//! All arithmetic is exact ([`Integer`] and [`Rational`] are arbitrary
//! precision).

pub mod error;
pub mod exactnum;
pub mod io;
pub mod lgv;
pub mod macaulay;
pub mod polyvec;
pub mod tnn;
pub mod transfer;

pub use error::{Error, Result};
pub use exactnum::{ballot_paths, binomial, choose, Integer, Rational};
pub use lgv::{LatticeGraph, PathFamily};
pub use macaulay::{boundary, is_m_sequence, macaulay_expand, MSequenceVerdict, MacaulayExpansion};
pub use polyvec::{FVector, GVector, HVector};
pub use tnn::{determinant, is_totally_nonnegative, ExactMatrix, TnnReport};
pub use transfer::{build_m, build_w, strip_leading_column, PathMatrix, TransferMatrix};
