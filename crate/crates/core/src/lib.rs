//! Exact computation with quasimonotone multivalued operators given as
//! finite graphs in R^d x R^d.
//!
//! The crate provides:
//!
//! - relation tests (quasimonotone, monotone) and polar membership with
//!   witnesses ([`operator`]);
//! - exact polyhedral polar fibers, normal cones, and cone geometry with
//!   H/V conversion ([`cones`]);
//! - maximality certificates: maximal, pre-maximal, and AE-maximal
//!   quasimonotonicity, exactly refutable where a single witness suffices
//!   and grid-qualified where the claim quantifies over the whole space
//!   ([`certify`]);
//! - Minty variational inequality solution sets over finite constraint
//!   sets, for a graph and for its polar ([`mvip`]);
//! - a deterministic scenario corpus with expected-claim tables, JSON
//!   serialization, and SVG/CSV region plots ([`scenario`], [`json`],
//!   [`plot`]).
//!
//! Arithmetic is exact (arbitrary-precision rationals) by default; float
//! mode with a tolerance is available for inputs that are not rational.

pub mod certify;
pub mod cones;
pub mod error;
pub mod json;
pub mod lp;
pub mod mvip;
pub mod operator;
pub mod plot;
pub mod scalar;
pub mod scenario;

pub use certify::{
    bipolar_member_falsify, certify_ae_maximal, certify_maximal, certify_monotone,
    certify_premaximal, certify_quasimonotone, Certificate, Claim, Grid, GridDigest, Verdict,
    Witness,
};
pub use cones::{
    cone_contains, cone_equal, extreme_rays, normal_cone_of_points, ConeRef, HCone, HPolyhedron,
    SetClass, VCone, DD_DIMENSION_GUARD,
};
pub use error::Error;
pub use lp::{lp_feasible, Constraint, LpProblem, LpResult, Sense};
pub use mvip::{minty_global, minty_solve, minty_solve_polar, polar_e_polyhedron, ConstraintSet};
pub use operator::{mono_related, qm_related, ConicOperator, OperatorGraph, Pair};
pub use scalar::{dot, Mode, Scalar, Vector};
pub use scenario::{generate_scenario, verify_scenario, Scenario, ScenarioParams, SCENARIO_NAMES};
