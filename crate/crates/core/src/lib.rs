//! Exact computations on Brieskorn homology spheres `Σ(a_1, ..., a_n)`.
//!
//! * [`exact`]: rational arithmetic and rounding functions
//! * [`sums`]: Dedekind and Dedekind-Rademacher sums
//! * [`brieskorn`]: Seifert invariants of a tuple
//! * [`lattice`]: simplex counts and the parallelepiped census
//! * [`invariants`]: `F`, `σ`, `λ`, `χ_SW` and the identity `-16C = F + σ`
//! * [`sweep`]: verification over all tuples up to a product bound

pub mod brieskorn;
pub mod error;
pub mod exact;
pub mod invariants;
pub mod lattice;
pub mod sums;
pub mod sweep;

pub use brieskorn::{derive, enumerate_tuples, is_pairwise_coprime, BrieskornData};
pub use error::{Error, Result};
pub use exact::Rational;
pub use invariants::{km_verify, KmRecord, KmReport, Verdict};
pub use lattice::LatticeCensus;
pub use sums::RademacherParams;
