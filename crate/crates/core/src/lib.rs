//! Numerics for the two-parameter deformed oscillator algebra with
//! structure function `f(n) = (p^{-(alpha n + beta)} - q^{alpha n + beta}) / (p^{-l} - q^l)`.
//!
//! Structure functions, truncated Fock representations, the difference
//! operator realization, the Hamiltonian spectrum and the Hopf coefficient
//! system, each with residual checks of the identities they satisfy.

pub mod calculus;
pub mod cli;
pub mod fock;
pub mod hopf;
pub mod numeric;
pub mod params;
pub mod report;
pub mod spectrum;
pub mod structure;

pub use calculus::{CalculusError, ExpSeries};
pub use fock::{FockError, FockRep, Generator, RelationMode};
pub use hopf::{HopfCoefficients, HopfError, HopfParams};
pub use numeric::NumericError;
pub use params::{DeformationParams, ParamError};
pub use report::{CheckEntry, CheckReport};
pub use spectrum::{lambda_n, SpectrumTable};
pub use structure::{f_general, pq_sum_oracle, Scheme};
