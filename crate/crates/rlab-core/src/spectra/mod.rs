//! Spectra of operator families, trivial spectra, reference spectra of
//! universal covers, Ramanujan verdicts, lifts, and family scans.

pub mod eig;
pub mod lift;
pub mod reference;
pub mod scan;
pub mod spectrum;
pub mod trivial;
pub mod verdict;

use thiserror::Error;

use crate::complex::CoverDefect;

#[derive(Debug, Error)]
pub enum SpectraError {
    #[error("operators {a} and {b} do not commute (defect {defect:.3e})")]
    NotCommuting { a: usize, b: usize, defect: f64 },
    #[error("operator {index} is not normal (defect {defect:.3e})")]
    NotNormal { index: usize, defect: f64 },
    #[error("colour partition is not equitable between classes {from_class} and {to_class}")]
    NotEquitable { from_class: u32, to_class: u32 },
    #[error("tuple arity mismatch: {got} vs expected {want}")]
    ArityMismatch { got: usize, want: usize },
    #[error("projection is not a cover map: {0}")]
    NotACover(CoverDefect),
    #[error("operation only supports complexes of dimension <= {max} (got {got})")]
    DimensionUnsupported { got: usize, max: usize },
    #[error("unsupported reference kind: {0}")]
    UnsupportedKind(String),
    #[error("empty operator family")]
    EmptyFamily,
    #[error("basis mismatch: {0}")]
    BasisMismatch(String),
    #[error("numerical failure: {0}")]
    NumericalFailure(String),
}

pub use reference::{MembershipReport, ReferenceSpectrum, TorusOpts};
pub use scan::{alon_boppana_scan, cover_monotonicity_check, injectivity_radius, ScanReport};
pub use spectrum::{direct_sum_spectrum_check, joint_spectrum, SpectrumPoint, SpectrumSet};
pub use trivial::{trivial_spectrum, trivial_spectrum_interior, TrivialSpectrum};
pub use verdict::{ramanujan_verdict, PointClass, RamanujanVerdict};
pub use lift::random_lift;
