//! Exact arithmetic for Campana constellations over Q.
//!
//! The crate covers numerical and lattice monoids, toroidal firmaments and
//! the constellations they support, constellation curves and their
//! Kodaira classification, soft and firm integral points on `(P^1/Δ)`, and
//! height and counting-function instrumentation of the abc conjecture.

pub mod curves;
pub mod error;
pub mod firmament;
pub mod heights;
mod linalg;
pub mod monoid;
pub mod number;
pub mod points;

pub use error::{Error, Result};
pub use monoid::{gaps, min_multiple, ray_restriction, LatticeMonoid, RayRestriction};
pub use number::{
    canonicalize, factorize, is_n_powerful, radical, valuation, ExactRational, Factorization,
    Multiplicity, ProjectivePoint,
};
pub use curves::{
    arithmetic_prediction, classify, constellation_degree, curve_iitaka_dimension, delta_from_fibers,
    minimal_general_type_profiles, IitakaDimension, Kappa, KodairaClass, MultiplicityProfile, Prediction,
    PredictionKind,
};
pub use firmament::{
    base_firmament, firm_integral_test, induced_membership, induced_membership_grid, morphism_check, multiplicity_at,
    supported_constellation, ExponentMap, Firmament, ReductionDatum,
};
pub use heights::{
    abc_quality, abc_scan, counting_function, log_discriminant_term, naive_height, vojta_gap, vojta_gap_trace,
    AbcHit, AbcTriple, CountingReport, Form, FormDivisor, GapRecord, HeightReport,
};
pub use points::{
    campana_abc_bound_check, campana_abc_bound_exact, enumerate_soft_points, is_soft_integral_3pt,
    is_soft_integral_general, is_soft_integral_weighted, AbcBoundCheck, DeltaSupport3, GeneralDelta, P1Point,
};
