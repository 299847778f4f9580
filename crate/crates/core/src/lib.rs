//! Nonclassical correlation of bipartite quantum states.
//!
//! A bipartite state is classically correlated when its density matrix has a
//! product eigenbasis. This crate provides
//!
//! - the truncation measure `M`: polynomial time, computed from the reduced
//!   spectra of the state restricted to each of its eigenspaces
//!   ([`measures::measure_m`]);
//! - the partition measure `G`: exponential time, comparing local spectra
//!   with sums of equal-size groups of global eigenvalues
//!   ([`measures::measure_g`]);
//! - polynomial-time product-eigenbasis detectors combined into a
//!   three-valued verdict ([`detect::classify`]);
//! - the named example states and seeded random generators ([`states`]);
//! - parameter sweeps and a runtime-scaling benchmark ([`sweep`], [`bench`]).
//!
//! ```
//! use nonclassical::{measures::measure_m, states, Tolerances};
//!
//! let report = measure_m(&states::varsigma(), &Tolerances::default()).unwrap();
//! assert!((report.m - 0.2197).abs() < 1e-3);
//! ```

pub mod bench;
pub mod detect;
pub mod error;
pub mod linalg;
pub mod measures;
pub mod spectral;
pub mod states;
pub mod sweep;
pub mod tolerance;

pub use detect::{classify, DetectionVerdict, Verdict};
pub use error::{Error, Result};
pub use linalg::{BipartiteDims, ComplexMatrix, DensityMatrix, Side};
pub use measures::{measure_g, measure_m, MeasureReport};
pub use tolerance::Tolerances;
