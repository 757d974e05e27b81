//! Quadratic and cyclotomic extensions of the rationals.

mod cyclo;
mod quad;

pub use cyclo::{is_prime_u32, CycloElem};
pub use quad::{norm_one_param, QuadAlg, QuadElem};
