//! Exact and Monte Carlo evaluation of the Haar integrals
//! `Z_{p,n}(J,K) = int dU (tr KU)^p (tr JU^+)^n` over `U(N)` and `SU(N)`.
//!
//! * [`exactmath`]: polynomials and rational functions in `N` over `Q`
//! * [`partitions`]: partitions, characters of `S_n`, `GL(N)` dimensions
//! * [`weingarten`]: coefficients `z_alpha` of the sector `p = n`
//! * [`su_shifted`]: coefficients `d_alpha` of the sector `p = n + N`
//! * [`largen`]: large-`N` series
//! * [`haar_mc`]: Haar sampling and Monte Carlo estimates
//! * [`verify`]: regression suites

pub mod error;
pub mod exactmath;
pub mod fixtures;
pub mod haar_mc;
pub mod largen;
pub mod partitions;
pub mod recursion;
pub mod sector;
pub mod sources;
pub mod su_shifted;
pub mod tables;
pub mod verify;
pub mod weingarten;

pub use error::{Error, Result};
pub use exactmath::{BigInt, BigRational, PolyN, RatFuncN};
pub use haar_mc::{Group, GroupSpec, MCEstimate};
pub use largen::{SeriesFamily, TraceSeries};
pub use partitions::{Partition, YoungDiagram};
pub use sources::{CMatrix, SourceMatrices, TraceVector};
pub use tables::{CoeffTable, Family};
