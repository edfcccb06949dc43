//! Finite field arithmetic and univariate polynomials.

mod field;
mod poly;
mod prime;

pub use field::{FieldContext, FieldElement, Fp, Fp2};
pub use poly::{DensePolynomial, SCAN_THRESHOLD};
pub use prime::{is_perfect_square, is_prime, isqrt, primes_between};
pub(crate) use prime::pow_mod;
