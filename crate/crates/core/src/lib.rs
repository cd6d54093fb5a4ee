//! Exact determinant tooling for upper Hessenberg matrices with a constant
//! subdiagonal and entries drawn from small populations.
//!
//! The crate is `no_std` (it needs `alloc`). Every computation is exact:
//! scalars are arbitrary-precision rationals and polynomials have integer
//! coefficients.

#![no_std]

extern crate alloc;

pub mod arith;
pub mod constructions;
pub mod error;
pub mod hessenberg;
pub mod oracles;
pub mod search;
pub mod transitions;

pub use arith::{IsolatingInterval, RealPoint, Scalar, UniPoly};
pub use constructions::Family;
pub use error::{Error, Result};
pub use hessenberg::{CoeffVector, EntryPattern, HessMatrix, Population};
