//! Exact computational Gorenstein homological algebra over finite-dimensional
//! algebras: syzygies, Ext, complete resolutions, Gorenstein-projective
//! approximations, stable Hom-spaces and chain-complex class predicates.
//!
//! The crate is `no_std` and needs only `alloc`. Scalars live in a prime
//! field `F_p` or in the rationals; nothing is ever rounded.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod algebra;
pub mod complexes;
pub mod error;
pub mod exactlin;
pub mod field;
pub mod gorenstein;
pub mod resolve;

pub use error::Error;
pub use exactlin::Matrix;
pub use field::{Field, Scalar};
