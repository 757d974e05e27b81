//! Exact arithmetic for hyperelliptic curves built from composite tuples.
//!
//! Everything in this crate is pure computation and builds without `std`
//! (an allocator is required). File formats and the command line live in
//! the `ccurve` crate.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod algebra;
pub mod composite;
pub mod curve;
pub mod error;
pub mod field;
pub mod forge;
pub mod invariants;
pub mod jacobian;
pub mod poly;
pub mod rational;

pub use error::{Degeneracy, Error, Result};
pub use field::Field;
pub use poly::Poly;
pub use rational::Rational;
