//! Evaluators for the closed-form solution of the Cauchy problem
//! `Δu = 0` in `ρ < r < 1`, `u(1,φ) = g(φ)`, `u_r(1,φ) = h(φ)`.
//!
//! The `g`-part is the real part of the two-circle reconstruction with both
//! contours on `|ζ| = 1`:
//!
//! ```text
//! u_g = (1/2π) ∫₀^∞ e^{−ε} ∫₀^{2π} Re[ e^{εz e^{−it}} + (e^{it}/z) e^{εe^{it}/z} ] g(t) dt dε
//! ```
//!
//! The `h`-part is
//!
//! ```text
//! u_h = −h̄ ln r + (1/2π) ∫₀^∞ (1/λ)(e^{−λ/r} − e^{−λr})
//!                     ∫₀^{2π} e^{λcos(φ−ψ)} cos(λ sin(φ−ψ)) h(ψ) dψ dλ
//! ```
//!
//! with the angular integrals inner. For the mean of `h` the λ-integral is a
//! Frullani integral worth `2h̄ ln r`, so the two pieces add up to `+h̄ ln r`.
//!
//! # Angular contours
//!
//! On the unit circle the inner integrands reach `e^{ε/r}` and `e^{λ}` while
//! the integrals themselves are of polynomial size, so evaluating them there
//! loses every digit to cancellation once `ε/r` or `λ` exceeds ~35. Boundary
//! data here are trig polynomials, whose Laurent extension is analytic on
//! `ℂ∖{0}`; the angular integral over `|ζ| = 1` therefore equals the one over
//! `|ζ| = R` for any `R > 0`. Each quadrature node picks `R` so the
//! exponential factor stays near `e^{N+1}`, which keeps the summands within a
//! modest factor of the result.

use std::f64::consts::TAU;

use num_complex::Complex64;

use super::quadrature::{circle_mean, composite_legendre, gauss_laguerre, roots_of_unity, GaussRule, QuadratureSpec};
use crate::boundary::{CauchyData, TrigSeries};
use crate::error::{Error, Result};
use crate::oracle::{check_overflow, solve_mode, Annulus, Field, ModeKind, PolarGrid, PolarPoint};

/// Degree limit for the quadrature evaluators.
pub const MAX_QUADRATURE_DEGREE: usize = 24;

/// Margin added to the degree in the λ-cutoff rule `Λ ≥ (N + 40)/r`.
const LAMBDA_TAIL_MARGIN: f64 = 40.0;

/// Selects how the `h`-part of the solution is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Eq3Mode {
    /// Closed-form λ-integral per Fourier mode.
    Modal,
    /// Numerical λ- and ψ-integration.
    Quadrature,
}

impl Eq3Mode {
    pub fn tag(self) -> &'static str {
        match self {
            Eq3Mode::Modal => "eq3-modal",
            Eq3Mode::Quadrature => "eq3-quadrature",
        }
    }
}

fn check_point(point: PolarPoint, degree: usize) -> Result<()> {
    let r = point.radius;
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::guard("radius", format!("radius {r} is outside (0, 1)")));
    }
    if !point.angle.is_finite() {
        return Err(Error::guard("angle", "angle is not finite"));
    }
    check_overflow(degree, r)
}

fn check_quadrature_degree(field: &'static str, f: &TrigSeries) -> Result<()> {
    if f.degree() > MAX_QUADRATURE_DEGREE {
        return Err(Error::guard(
            field,
            format!("degree {} exceeds the quadrature limit {MAX_QUADRATURE_DEGREE}", f.degree()),
        ));
    }
    Ok(())
}

/// Smallest admissible λ-cutoff for degree `n` at radius `r`.
pub fn lambda_cutoff_rule(degree: usize, r: f64) -> f64 {
    (degree as f64 + LAMBDA_TAIL_MARGIN) / r
}

/// Precomputed tables for the `g`-part.
struct Theorem1Tables {
    laguerre: GaussRule,
    roots: Vec<Complex64>,
}

impl Theorem1Tables {
    fn new(spec: &QuadratureSpec) -> Result<Self> {
        spec.validate()?;
        Ok(Theorem1Tables { laguerre: gauss_laguerre(spec.laguerre_order)?, roots: roots_of_unity(spec.angular_nodes) })
    }
}

fn theorem1_at(g: &TrigSeries, point: PolarPoint, tables: &Theorem1Tables, with_jacobian: bool) -> Complex64 {
    let z = Complex64::from_polar(point.radius, point.angle);
    let r = point.radius;
    let c = (g.degree() + 1) as f64;
    let mut acc = Complex64::default();
    for (eps, w) in tables.laguerre.pairs() {
        // e^{εz/ζ} on |ζ| = R ≥ 1
        let big = (eps * r / c).max(1.0);
        let outer = circle_mean(&tables.roots, |u| {
            let zeta = u * big;
            (eps * z / zeta).exp() * g.evaluate_laurent(zeta)
        });
        // e^{εζ/z} on |ζ| = R ≤ 1; the Jacobian of dζ = iζ dt contributes ζ
        let small = if eps > 0.0 { (c * r / eps).min(1.0) } else { 1.0 };
        let inner = circle_mean(&tables.roots, |u| {
            let zeta = u * small;
            let jac = if with_jacobian { zeta } else { Complex64::new(1.0, 0.0) };
            jac * (eps * zeta / z).exp() * g.evaluate_laurent(zeta) / z
        });
        acc += (outer + inner) * w;
    }
    acc
}

/// `g`-part of the solution (Dirichlet datum `g`, zero Neumann datum).
///
/// Exact up to roundoff for trig polynomials of degree `N` when
/// `laguerre_order ≥ ⌈(N+1)/2⌉`.
pub fn solve_theorem1(g: &TrigSeries, point: PolarPoint, spec: &QuadratureSpec) -> Result<f64> {
    check_quadrature_degree("g", g)?;
    check_point(point, g.degree())?;
    let tables = Theorem1Tables::new(spec)?;
    Ok(theorem1_at(g, point, &tables, true).re)
}

/// The `g`-part with the second kernel taken literally as `(1/z)e^{εe^{it}/z}`,
/// i.e. without the `e^{it}` factor from `dζ = ie^{it}dt`. Kept to document
/// that this variant does not solve the problem: for `g = cos nφ` it returns
/// `rⁿ cos nφ / 2 + r^{−n−1} cos((n+1)φ) / 2` instead of
/// `(rⁿ + r^{−n}) cos nφ / 2`.
pub fn solve_theorem1_without_jacobian(g: &TrigSeries, point: PolarPoint, spec: &QuadratureSpec) -> Result<f64> {
    check_quadrature_degree("g", g)?;
    check_point(point, g.degree() + 1)?;
    let tables = Theorem1Tables::new(spec)?;
    Ok(theorem1_at(g, point, &tables, false).re)
}

/// `h`-part with the λ-integral done in closed form per mode:
/// `∫₀^∞ λ^{n−1}(e^{−λ/r} − e^{−λr}) dλ = (n−1)!(rⁿ − r^{−n})`, giving
/// `h̄ ln r + Σ (a_n cos nφ + b_n sin nφ)(rⁿ − r^{−n})/(2n)`.
pub fn solve_theorem2_modal(h: &TrigSeries, point: PolarPoint) -> Result<f64> {
    check_point(point, h.degree())?;
    let PolarPoint { radius: r, angle: phi } = point;
    let mut u = h.mean() * solve_mode(ModeKind::Neumann, 0, r)?;
    for (n, a, b) in h.modes() {
        let (s, c) = (n as f64 * phi).sin_cos();
        u += (a * c + b * s) * solve_mode(ModeKind::Neumann, n, r)?;
    }
    Ok(u)
}

/// The explicit logarithmic term `−h̄ ln r` of the `h`-part.
pub fn eq3_log_term(h: &TrigSeries, r: f64) -> f64 {
    -h.mean() * r.ln()
}

/// The λ-integral of the `h`-part (including the mean of `h`), evaluated
/// numerically: ψ by the periodic trapezoid, λ by composite Gauss–Legendre
/// on `[0, Λ]`.
pub fn eq3_lambda_term_quadrature(h: &TrigSeries, point: PolarPoint, spec: &QuadratureSpec) -> Result<f64> {
    check_quadrature_degree("h", h)?;
    check_point(point, h.degree())?;
    spec.validate()?;
    let r = point.radius;
    let rule_min = lambda_cutoff_rule(h.degree(), r);
    let cutoff = spec.lambda_cutoff.unwrap_or(rule_min);
    if cutoff < rule_min {
        return Err(Error::guard(
            "lambda_cutoff",
            format!("Λ = {cutoff} is below (N + 40)/r = {rule_min} for degree {} at r = {r}", h.degree()),
        ));
    }
    let rule = composite_legendre(0.0, cutoff, spec.nodes_for_length(cutoff));
    let roots = roots_of_unity(spec.angular_nodes);
    let e_phi = Complex64::from_polar(1.0, point.angle);
    let c = (h.degree() + 1) as f64;
    let gap = 1.0 / r - r;
    let total = rule.integrate(|lambda| {
        // (e^{−λ/r} − e^{−λr})/λ without cancellation near λ = 0
        let radial = (-lambda * r).exp() * (-lambda * gap).exp_m1() / lambda;
        // ∫ e^{λ e^{i(φ−ψ)}} h(ψ) dψ with e^{iψ} moved to |w| = R
        let big = (lambda / c).max(1.0);
        let angular = circle_mean(&roots, |u| {
            let w = u * big;
            (lambda * e_phi / w).exp() * h.evaluate_laurent(w)
        });
        radial * TAU * angular.re
    });
    Ok(total / TAU)
}

/// `h`-part by numerical integration of the λ/ψ double integral plus the
/// logarithmic term.
pub fn solve_theorem2_quadrature(h: &TrigSeries, point: PolarPoint, spec: &QuadratureSpec) -> Result<f64> {
    let lambda_part = eq3_lambda_term_quadrature(h, point, spec)?;
    Ok(eq3_log_term(h, point.radius) + lambda_part)
}

/// Full solution on a grid: `g`-part by [`solve_theorem1`], `h`-part by the
/// evaluator selected with `mode`.
pub fn solve_cauchy_eq3(
    data: &CauchyData,
    annulus: &Annulus,
    grid: &PolarGrid,
    spec: &QuadratureSpec,
    mode: Eq3Mode,
) -> Result<Field> {
    grid.check_inside(annulus)?;
    check_quadrature_degree("g", &data.g)?;
    if mode == Eq3Mode::Quadrature {
        check_quadrature_degree("h", &data.h)?;
    }
    for &r in &grid.radii {
        check_overflow(data.max_degree(), r)?;
        if let (Eq3Mode::Quadrature, Some(cutoff)) = (mode, spec.lambda_cutoff) {
            let min = lambda_cutoff_rule(data.h.degree(), r);
            if cutoff < min {
                return Err(Error::guard(
                    "lambda_cutoff",
                    format!("Λ = {cutoff} is below (N + 40)/r = {min} for r = {r}"),
                ));
            }
        }
    }
    let tables = Theorem1Tables::new(spec)?;
    let g_zero = data.g.is_zero();
    Field::tabulate(grid, mode.tag(), |p| {
        let ug = if g_zero { 0.0 } else { theorem1_at(&data.g, p, &tables, true).re };
        let uh = match mode {
            Eq3Mode::Modal => solve_theorem2_modal(&data.h, p)?,
            Eq3Mode::Quadrature if data.h.is_zero() => 0.0,
            Eq3Mode::Quadrature => solve_theorem2_quadrature(&data.h, p, spec)?,
        };
        Ok(ug + uh)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::oracle_value;

    fn at(r: f64, phi: f64) -> PolarPoint {
        PolarPoint::new(r, phi)
    }

    fn quad_spec() -> QuadratureSpec {
        QuadratureSpec { angular_nodes: 64, ..Default::default() }
    }

    #[test]
    fn theorem1_examples() {
        let spec = QuadratureSpec::default();
        let one = TrigSeries::constant(1.0);
        for p in [at(0.3, 0.0), at(0.77, 2.0)] {
            assert!((solve_theorem1(&one, p, &spec).unwrap() - 1.0).abs() < 1e-10);
        }
        let v = solve_theorem1(&TrigSeries::cosine(1, 1.0), at(0.5, 0.0), &spec).unwrap();
        assert!((v - 1.25).abs() < 1e-9);
        let v = solve_theorem1(&TrigSeries::cosine(3, 1.0), at(0.8, 0.0), &spec).unwrap();
        assert!((v - 1.232_562_5).abs() < 1e-9);
    }

    #[test]
    fn theorem1_without_jacobian_is_wrong() {
        let spec = QuadratureSpec::default();
        // r/2 from the outer kernel plus r^{-2} cos 2φ / 2 from the inner one
        let v = solve_theorem1_without_jacobian(&TrigSeries::cosine(1, 1.0), at(0.5, 0.0), &spec).unwrap();
        assert!((v - 2.25).abs() < 1e-9, "{v}");
        let v = solve_theorem1_without_jacobian(&TrigSeries::cosine(2, 1.0), at(0.6, 0.3), &spec).unwrap();
        let expected = 0.5 * 0.36 * (0.6f64).cos() + 0.5 * 0.6f64.powi(-3) * (0.9f64).cos();
        assert!((v - expected).abs() < 1e-9, "{v} vs {expected}");
    }

    #[test]
    fn theorem1_guards() {
        let spec = QuadratureSpec::default();
        let g = TrigSeries::cosine(25, 1.0);
        assert_eq!(solve_theorem1(&g, at(0.5, 0.0), &spec).unwrap_err().field(), "g");
        let g = TrigSeries::cosine(2, 1.0);
        assert_eq!(solve_theorem1(&g, at(1.2, 0.0), &spec).unwrap_err().field(), "radius");
    }

    #[test]
    fn theorem2_modal_examples() {
        let v = solve_theorem2_modal(&TrigSeries::cosine(1, 1.0), at(0.5, 0.0)).unwrap();
        assert!((v + 0.75).abs() < 1e-15);
        let v = solve_theorem2_modal(&TrigSeries::constant(1.0), at(0.5, 1.0)).unwrap();
        assert!((v + std::f64::consts::LN_2).abs() < 1e-7);
        assert_eq!(solve_theorem2_modal(&TrigSeries::zero(), at(0.5, 1.0)).unwrap(), 0.0);
    }

    #[test]
    fn theorem2_quadrature_examples() {
        let spec = QuadratureSpec { lambda_cutoff: Some(82.0), lambda_nodes: Some(2000), ..Default::default() };
        let v = solve_theorem2_quadrature(&TrigSeries::cosine(1, 1.0), at(0.5, 0.0), &spec).unwrap();
        assert!((v + 0.75).abs() < 1e-6, "{v}");
        assert_eq!(solve_theorem2_quadrature(&TrigSeries::zero(), at(0.5, 0.0), &spec).unwrap(), 0.0);
        let spec = QuadratureSpec { lambda_cutoff: Some(84.0), lambda_nodes: Some(2100), ..Default::default() };
        let v = solve_theorem2_quadrature(&TrigSeries::cosine(2, 1.0), at(0.5, 0.0), &spec).unwrap();
        assert!((v + 0.9375).abs() < 1e-6, "{v}");
    }

    #[test]
    fn lambda_cutoff_rule_enforced() {
        let spec = QuadratureSpec { lambda_cutoff: Some(50.0), ..quad_spec() };
        let err = solve_theorem2_quadrature(&TrigSeries::cosine(1, 1.0), at(0.5, 0.0), &spec).unwrap_err();
        assert_eq!(err.field(), "lambda_cutoff");
        let h = TrigSeries::cosine(30, 1.0);
        assert_eq!(solve_theorem2_quadrature(&h, at(0.5, 0.0), &quad_spec()).unwrap_err().field(), "h");
        // the modal path has no such limit
        assert!(solve_theorem2_modal(&h, at(0.5, 0.0)).is_ok());
    }

    #[test]
    fn mean_term_sign() {
        // explicit log term alone has the wrong sign; the λ-integral of the
        // mean contributes 2 h̄ ln r and restores it
        let h = TrigSeries::constant(1.0);
        let p = at(0.5, 0.0);
        let ln = 0.5f64.ln();
        assert!((eq3_log_term(&h, 0.5) + ln).abs() < 1e-15);
        let lambda = eq3_lambda_term_quadrature(&h, p, &quad_spec()).unwrap();
        assert!((lambda - 2.0 * ln).abs() < 1e-9, "{lambda}");
        let total = solve_theorem2_quadrature(&h, p, &quad_spec()).unwrap();
        let oracle = oracle_value(&CauchyData::new(TrigSeries::zero(), h), p).unwrap();
        assert!((total - oracle).abs() < 1e-9);
        assert!((total + std::f64::consts::LN_2).abs() < 1e-6);
    }

    #[test]
    fn eq3_examples() {
        let annulus = Annulus::new(0.25).unwrap();
        let grid = PolarGrid::new(vec![0.5], vec![0.0]).unwrap();
        let spec = QuadratureSpec::default();
        let d = CauchyData::new(TrigSeries::cosine(1, 1.0), TrigSeries::cosine(2, 1.0));
        let f = solve_cauchy_eq3(&d, &annulus, &grid, &spec, Eq3Mode::Modal).unwrap();
        assert!((f.values[0] - 0.3125).abs() < 1e-8);
        assert_eq!(f.solver_tag, "eq3-modal");

        let big = PolarGrid::uniform(0.3, 0.9, 3, 8).unwrap();
        let z = solve_cauchy_eq3(&CauchyData::zero(), &annulus, &big, &spec, Eq3Mode::Modal).unwrap();
        assert_eq!(z.max_abs(), 0.0);

        let n = 9usize;
        let h = TrigSeries::cosine(n, (-3.0f64).exp() / 9.0);
        let d = CauchyData::new(TrigSeries::zero(), h);
        let f = solve_cauchy_eq3(&d, &annulus, &grid, &spec, Eq3Mode::Modal).unwrap();
        let closed = (-3.0f64).exp() * (0.5f64.powi(9) - 2f64.powi(9)) / (2.0 * 81.0);
        assert!((f.values[0] - closed).abs() < 1e-12);
        assert!((f.values[0] + 0.157_351_122).abs() < 1e-6);
    }

    #[test]
    fn eq3_rejects_outside_grid() {
        let annulus = Annulus::new(0.25).unwrap();
        let grid = PolarGrid::new(vec![1.5], vec![0.0]).unwrap();
        let err = solve_cauchy_eq3(&CauchyData::zero(), &annulus, &grid, &QuadratureSpec::default(), Eq3Mode::Modal)
            .unwrap_err();
        assert_eq!(err.field(), "radius");
    }
}
