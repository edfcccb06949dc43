//! Supersingular ℓ-isogeny graphs for ℓ ∈ {2, 3}.
//!
//! Builds the graph over F_p (one vertex per F_p-isomorphism class), the
//! graph over the algebraic closure (one vertex per j-invariant in F_p²) and
//! the spine, i.e. the subgraph of the latter induced by j ∈ F_p. On top of
//! that sit eccentricity metrics, congruence-based structure predictions and
//! a verifier comparing the two.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod arith;
pub mod classgrp;
pub mod curves;
pub mod error;
pub mod graph;
pub mod metrics;
pub mod modpoly;
pub mod nullmodel;
pub mod oracle;

pub use error::Error;
