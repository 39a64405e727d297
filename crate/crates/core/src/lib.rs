//! Mismatched guesswork: tilted families, I-projections, large-deviation rate
//! functions and moment exponents of log-guesswork, one-to-one coding costs,
//! and exact finite-`n` oracles to check them against.
//!
//! All logarithms are natural.

pub mod coding;
pub mod dist;
pub mod error;
pub mod experiment;
pub mod format;
pub mod oracle;
pub mod rate;
pub mod solver;
pub mod tilt;

pub use coding::{
    asymptotic_report, code_length, finite_average_length, reliability, CodingReport,
};
pub use dist::{cross_entropy, entropy, kl_divergence, renyi_entropy, Alphabet, Dist};
pub use error::{Error, Result};
pub use oracle::{
    build_guess_table, exact_guesswork_enum, exact_ldp_window, exact_moment, mc_log_guesswork,
    GuessTable, TypeRecord,
};
pub use rate::{
    check_hypothesis, e_rho_matched, e_rho_mismatched, matched_rate, mismatch_penalty_gap,
    mismatched_rate, rate_curve, MomentPoint, RateFunction, RatePoint,
};
pub use solver::{
    solve_alpha_for_entropy, solve_gamma_intersection, solve_projection, RootConfig, TiltRoot,
};
pub use tilt::{family_membership, linear_family_level, tilt, Membership, TiltCurve, TiltParam};
