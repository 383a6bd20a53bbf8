//! Lie ring of partitions with bounded multiplicities over `ℤ_m`.
//!
//! The crate builds the ring `𝔏(n)` whose basis elements `x^Λ ∂_k` are
//! indexed by integer partitions, computes the idealizer chain that starts
//! from the abelian subring spanned by `∂₁, …, ∂_n`, and checks its layers
//! against partition counts, unrefinable partitions and (for `m = 2`) the
//! calculus of rigid commutators.
//!
//! Modules, bottom up:
//!
//! - [`partitions`]: partitions, counting sequences, refinements, excludants
//! - [`liering`]: truncated monomials, the basis, the bracket, idealizers
//! - [`chain`]: the idealizer chain and its closed-form predictions
//! - [`rigid`]: rigid commutators and the bijection with the basis at `m = 2`
//! - [`properties`]: exhaustive and sampled structural checks
//! - [`cli`]: the `partlie` command line front end

pub mod chain;
pub mod cli;
pub mod error;
pub mod liering;
pub mod partitions;
pub mod properties;
pub mod report;
pub mod rigid;

pub use error::{Error, Result};
pub use liering::{BasisElement, HomogeneousSet, LieElement, LieRing, Monomial};
pub use partitions::{MultiplicityBound, Partition};
