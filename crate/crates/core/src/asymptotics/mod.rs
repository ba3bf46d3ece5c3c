//! Airy numerics, bound-family certification and constant extrapolation.

mod airy;
mod bounds;
mod extrapolation;
mod interval;
mod ratios;

pub use airy::{
    airy_ai, airy_ai_prime, airy_prime_root, airy_root_a1, phi, psi, psi_root_x0, Airy, AIRY_MIN_X,
};
pub use bounds::{
    bound_profile, check_inequality, clamp_threshold_reached, raw_profile, BoundCertificate,
    BoundFamily, BoundFamilyParams, GridPoint, MarginRecord, Outcome, ParamsRecord,
    ProfileEvaluator, Verdict, MIN_CERT_PREC, VIOLATION_LIST_CAP,
};
pub use extrapolation::{
    decimal, extrapolate_gamma, extrapolate_v, min_extrapolation_prec, u_sequence, v_csv,
    v_sequence, ExtrapolationEstimate, USequence, STABILITY_WINDOWS,
};
pub use interval::Interval;
pub use ratios::{ratio_constant, ratio_csv, ratio_diagnostics, RatioRow};
