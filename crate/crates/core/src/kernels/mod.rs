//! Quadrature engine and evaluators for the integral representations of
//! harmonic functions in the annulus.

mod lemma;
mod quadrature;
mod theorem;

pub use lemma::{
    partial_reconstruct, reconstruct_analytic, reconstruct_parts, truncation_bound, AnalyticBoundary, LaurentPoly,
};
pub use quadrature::{
    composite_legendre, gauss_laguerre, gauss_legendre, trapezoid_period, GaussRule, QuadratureSpec,
    MAX_LAGUERRE_ORDER,
};
pub use theorem::{
    eq3_lambda_term_quadrature, eq3_log_term, lambda_cutoff_rule, solve_cauchy_eq3, solve_theorem1,
    solve_theorem1_without_jacobian, solve_theorem2_modal, solve_theorem2_quadrature, Eq3Mode,
    MAX_QUADRATURE_DEGREE,
};
