//! Finite simplicial complexes, quotients of affine buildings, the operator
//! families living on them (Laplacians, cell-adjacency operators, colored
//! Hecke operators), their joint spectra, and Ramanujan verdicts against
//! universal-cover reference spectra.
//!
//! The narrative guide lives in the `book/` directory of the repository; its
//! code snippets double as doc-tests through the companion `rlab-book` crate.

pub mod action;
pub mod building;
pub mod colored;
pub mod complex;
pub mod generate;
pub mod gf;
pub mod io;
pub mod lattice;
pub mod laurent;
pub mod operators;
pub mod spectra;

pub use action::{
    is_admissible_subgroup, quotient_by_action, GroupAction, QuotientResult, DEFAULT_GROUP_CAP,
};
pub use building::{building_ball, BuildingBall, LocalFieldParams, DEFAULT_VERTEX_BUDGET};
pub use colored::{ColoredComplex, HeckeFamily};
pub use complex::{build_complex, check_cover_map, Cell, SimplicialComplex, VertexMap};
pub use operators::{
    adjacency, boundary, chain_basis, coboundary, edge_adjacency, laplacian, pushforward,
    verify_naturality, BasisKind, ChainBasis, ChainOperator, LaplacianVariant, OperatorFamily,
    OperatorKind,
};
pub use spectra::{
    alon_boppana_scan, cover_monotonicity_check, direct_sum_spectrum_check, injectivity_radius,
    joint_spectrum, ramanujan_verdict, random_lift, trivial_spectrum, PointClass,
    RamanujanVerdict, ReferenceSpectrum, SpectraError, SpectrumSet, TorusOpts, TrivialSpectrum,
};
