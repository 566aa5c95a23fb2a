//! Exact-arithmetic machinery for linear subspaces of projective hypersurface
//! intersections: apolarity and generalized rank of homogeneous form tuples,
//! the discrete stratification formulas they control, and brute-force
//! enumeration oracles over small prime fields.
//!
//! Everything here is pure and exact: coefficients are arbitrary-precision
//! rationals or prime-field elements, subspaces are canonical reduced
//! row-echelon bases, and all counts are exact integers. The crate is
//! `no_std` (with `alloc`); IO, serialization, and the command-line front end
//! live in the companion `fano-strata-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod apolarity;
pub mod error;
pub mod field;
pub mod linalg;
pub mod oracle;
pub mod poly;
pub mod strata;
pub mod text;

pub use error::Error;
pub use field::{Field, FieldSpec, PrimeField, Rationals};
pub use linalg::{Mat, Subspace};
pub use poly::{Covector, Form, FormTuple, Monomial, MultiDegree};
