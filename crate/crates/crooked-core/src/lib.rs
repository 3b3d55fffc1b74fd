//! Computational geometry for crooked planes in Minkowski 2+1 spacetime.
//!
//! The crate is organised bottom-up:
//!
//! * [`minkowski`] — Lorentzian linear algebra: the signature (2,1) scalar
//!   product, causal classification, the Lorentzian cross product, null
//!   frames of spacelike vectors, and affine isometries.
//! * [`crooked`] — crooked planes (stem and two wings), classification of
//!   director pairs, consistent orientation, and the two analytic
//!   disjointness criteria (the Drumm–Goldman inequality and the cone
//!   criterion).
//! * [`flows`] — one-parameter groups of isometries with hyperbolic or
//!   parabolic linear part, their orbit regions, which orbits admit crooked
//!   foliations, and calibration of a flow through a pair of planes.
//! * [`foliation`] — foliation specifications (closed-form or sampled
//!   vertex/director curves) and the numerical verifier that combines the
//!   infinitesimal tangency criterion with pairwise disjointness checks.
//! * [`oracle`] — a brute-force piecewise-linear intersection oracle:
//!   crooked planes are meshed into triangles and tested pairwise, giving an
//!   analytic-free ground truth for the disjointness criteria.

#![forbid(unsafe_code)]

pub mod crooked;
pub mod flows;
pub mod foliation;
pub mod minkowski;
pub mod oracle;

pub use crooked::{
    cone_disjoint, consistently_oriented, dg_disjoint, dg_terms, in_stem_quadrant,
    normalize_consistent, pair_class, CrookedError, CrookedPlane, DgTerms, PairClass,
    QuadrantPosition,
};
pub use flows::{
    calibrate, CalibrateError, Calibration, CalibrationKind, FlowError, HyperbolicFlow,
    OrbitParams, ParabolicFlow, Region,
};
pub use foliation::{
    uniform_grid, verify, CurveSpec, DirectorFamily, FoliationSpec, InfinitesimalRecord,
    PairRecord, VerificationReport, VerifyError,
};
pub use minkowski::{
    linear_class, null_frame, AffinePoint, CausalClass, Isometry, LinearClass, LorentzVector, Mat3,
    MinkowskiError, NullFrame, EPS_NULL, EPS_ORTH,
};
pub use oracle::{
    mesh_crooked_plane, oracle_disjoint, OracleError, OracleVerdict, PieceTag, TriangleMesh,
};
