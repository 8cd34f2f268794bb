//! Exact Stirling numbers of both kinds and binomial coefficients, the
//! identities connecting them, and the Stirling inverse-pair transforms.
//!
//! Everything is computed with arbitrary-precision integers. Each counting
//! family has a brute-force enumeration oracle in [`oracles`] that shares no
//! code with the recurrences in [`numbers`].
//!
//! The `parallel` feature (default) runs sweeps, oracle comparisons and
//! transforms on rayon; see [`Execution`].

pub mod error;
pub mod exec;
pub mod identities;
pub mod numbers;
pub mod cli;
pub mod oracles;
mod report;
pub mod transforms;

pub use error::{Error, Result};
pub use exec::Execution;
pub use identities::{
    sweep, sweep_all, sweep_with, CheckReport, Counterexample, Identity, OrthoVariant, SideValues,
    Status, Summation, Tables,
};
pub use numbers::{
    bell_number, binomial, build_triangle, factorial, stirling_first_signed,
    stirling_first_unsigned, stirling_second, Count, Family, SignedValue, Triangle,
};
pub use oracles::{count_permutations_by_cycles, count_set_partitions, count_subsets};
pub use transforms::{
    replay_proof_identity_2, stirling_first_signed_transform, stirling_second_transform,
    verify_inversion_roundtrip, ProofReplay, Sequence,
};
