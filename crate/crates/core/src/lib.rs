//! Exact Cayley-Dickson tensor algebras and the complex tori they induce.
//!
//! The crate builds `C ⊗ H^⊗p ⊗ O^⊗q` as a signed-permutation structure
//! table, realizes its componentwise adjoint operators as integer matrices,
//! and verifies rank statements about the torus `B / B_Z` exactly.

pub mod adjoint;
pub mod cayley_dickson;
pub mod elliptic;
pub mod error;
pub mod linalg;
pub mod report;
pub mod tensor;
pub mod torus;

pub use adjoint::AdjointGeneratorSet;
pub use cayley_dickson::{AlgebraElement, AlgebraTable, Sign};
pub use elliptic::LatticeBasis2D;
pub use error::{Error, Result};
pub use linalg::{ExactMatrix, RankPolicy, SpanBasis};
pub use report::{Check, VerificationReport, VerifyOptions};
pub use tensor::{ResourceGuard, TensorAlgebra};
pub use torus::{EndomorphismCandidate, TorusModel};

/// Environment variable holding the seed for randomized checks.
pub const SEED_ENV: &str = "CDTORUS_SEED";
pub const DEFAULT_SEED: u64 = 0x00C0_FFEE;

/// Seed from `CDTORUS_SEED`, or [`DEFAULT_SEED`] when unset or unparsable.
pub fn seed_from_env() -> u64 {
    std::env::var(SEED_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SEED)
}
