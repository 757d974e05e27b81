//! Jacobians of odd-degree hyperelliptic curves over prime fields.

mod fp;
mod mumford;
mod reduce;
mod sieve;

pub use fp::{is_prime_u64, Fp, Modulus, MAX_MODULUS_BITS};
pub use mumford::{FpCurve, MumfordDivisor};
pub use reduce::{reduce_class, reduce_curve, ClassKind};
pub use sieve::{
    claimed_relations, expected_survivors, relation_sieve, select_primes, sieve_curve,
    RelationReport, SieveParams, Verdict, SCOPE_NOTE,
};
