//! Reconstruction of a function analytic in the annulus from its values on
//! two circles, through the pair of exponential kernels
//!
//! ```text
//! f(z) = (1/2πi) ∫₀^∞ e^{−ε} ∮_{C_{r₁}} e^{εz/ζ} f(ζ) dζ/ζ
//!      + (1/2πi) ∫₀^∞ e^{−ε} ∮_{C_{r₂}} (1/z) e^{εζ/z} f(ζ) dζ
//! ```
//!
//! The outer-circle kernel reproduces the non-negative Laurent powers and
//! the inner-circle kernel the negative ones. Truncating the ε-integrals at
//! `N` gives `f_N`, whose distance to `f` is bounded by [`truncation_bound`].

use num_complex::Complex64;
use serde::Deserialize;

use super::quadrature::{composite_legendre, gauss_laguerre, GaussRule, QuadratureSpec};
use crate::boundary::json_error;
use crate::error::{Error, Result};
use crate::oracle::Annulus;

/// Samples of `f` on the circles `|ζ| = r₁` (outer) and `|ζ| = r₂` (inner),
/// `M` equispaced points each, starting at angle 0.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalyticBoundary {
    annulus: Annulus,
    outer_radius: f64,
    inner_radius: f64,
    outer: Vec<Complex64>,
    inner: Vec<Complex64>,
    outer_points: Vec<Complex64>,
    inner_points: Vec<Complex64>,
}

impl AnalyticBoundary {
    pub fn new(
        annulus: Annulus,
        outer_radius: f64,
        inner_radius: f64,
        outer: Vec<Complex64>,
        inner: Vec<Complex64>,
    ) -> Result<Self> {
        let rho = annulus.inner_radius();
        if !(rho <= inner_radius && inner_radius <= outer_radius && outer_radius <= 1.0) {
            return Err(Error::guard(
                "contour_radius",
                format!("need {rho} ≤ r₂ ≤ r₁ ≤ 1, got r₂={inner_radius}, r₁={outer_radius}"),
            ));
        }
        if outer.len() != inner.len() {
            return Err(Error::schema(
                "samples",
                format!("outer circle has {} samples, inner has {}", outer.len(), inner.len()),
            ));
        }
        if outer.len() < 8 {
            return Err(Error::schema("samples", "need at least 8 samples per circle"));
        }
        if outer.iter().chain(&inner).any(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::schema("samples", "sample is not finite"));
        }
        let m = outer.len();
        Ok(AnalyticBoundary {
            annulus,
            outer_radius,
            inner_radius,
            outer_points: circle_points(outer_radius, m),
            inner_points: circle_points(inner_radius, m),
            outer,
            inner,
        })
    }

    /// Samples `f` at `m` points on each circle.
    pub fn sample<F>(annulus: Annulus, outer_radius: f64, inner_radius: f64, m: usize, f: F) -> Result<Self>
    where
        F: Fn(Complex64) -> Complex64,
    {
        let circle = |r: f64| -> Vec<Complex64> { circle_points(r, m).into_iter().map(&f).collect() };
        Self::new(annulus, outer_radius, inner_radius, circle(outer_radius), circle(inner_radius))
    }

    pub fn annulus(&self) -> Annulus {
        self.annulus
    }

    pub fn samples_per_circle(&self) -> usize {
        self.outer.len()
    }

    /// Largest sampled modulus; by the maximum principle this approximates
    /// `max |f|` over the ring between the two circles.
    pub fn max_modulus(&self) -> f64 {
        self.outer.iter().chain(&self.inner).fold(0.0, |m, v| m.max(v.norm()))
    }

    /// The two inner contour integrals at a fixed ε, each already divided by
    /// `2πi` (trapezoid in `t` with `ζ = r e^{it}`).
    fn kernel_terms(&self, z: Complex64, eps: f64) -> (Complex64, Complex64) {
        let scale = 1.0 / self.outer.len() as f64;
        // dζ/ζ = i dt
        let first: Complex64 =
            self.outer_points.iter().zip(&self.outer).map(|(&zeta, &f)| (eps * z / zeta).exp() * f).sum();
        // dζ = i ζ dt
        let second: Complex64 = self.inner_points
            .iter()
            .zip(&self.inner)
            .map(|(&zeta, &f)| (zeta / z) * (eps * zeta / z).exp() * f)
            .sum();
        (first * scale, second * scale)
    }

    fn check_point(&self, z: Complex64) -> Result<()> {
        let r = z.norm();
        if !self.annulus.contains_radius(r) {
            return Err(Error::guard(
                "z",
                format!("|z| = {r} is outside the open annulus ({}, 1)", self.annulus.inner_radius()),
            ));
        }
        Ok(())
    }

    fn integrate_terms(&self, z: Complex64, rule: &GaussRule, weight: impl Fn(f64) -> f64) -> (Complex64, Complex64) {
        rule.pairs().fold((Complex64::default(), Complex64::default()), |(a, b), (eps, w)| {
            let (t1, t2) = self.kernel_terms(z, eps);
            let w = w * weight(eps);
            (a + t1 * w, b + t2 * w)
        })
    }
}

fn circle_points(r: f64, m: usize) -> Vec<Complex64> {
    (0..m)
        .map(|j| Complex64::from_polar(r, std::f64::consts::TAU * j as f64 / m as f64))
        .collect()
}

/// Outer-circle and inner-circle terms of the reconstruction separately.
pub fn reconstruct_parts(f: &AnalyticBoundary, z: Complex64, spec: &QuadratureSpec) -> Result<(Complex64, Complex64)> {
    spec.validate()?;
    f.check_point(z)?;
    let rule = gauss_laguerre(spec.laguerre_order)?;
    // Gauss–Laguerre already carries the e^{−ε} weight
    Ok(f.integrate_terms(z, &rule, |_| 1.0))
}

/// `f(z)` from the two-circle kernel representation; ε by Gauss–Laguerre.
pub fn reconstruct_analytic(f: &AnalyticBoundary, z: Complex64, spec: &QuadratureSpec) -> Result<Complex64> {
    let (a, b) = reconstruct_parts(f, z, spec)?;
    Ok(a + b)
}

/// `f_N(z)`: the same representation with both ε-integrals cut at `N`,
/// evaluated by composite Gauss–Legendre on `[0, N]`.
pub fn partial_reconstruct(
    f: &AnalyticBoundary,
    z: Complex64,
    truncation: f64,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    spec.validate()?;
    f.check_point(z)?;
    if !(truncation.is_finite() && truncation > 0.0) {
        return Err(Error::schema("truncation", format!("must be positive, got {truncation}")));
    }
    let rule = composite_legendre(0.0, truncation, spec.nodes_for_length(truncation));
    let (a, b) = f.integrate_terms(z, &rule, |eps| (-eps).exp());
    Ok(a + b)
}

/// Upper bound on `|f_N(z) − f(z)|`:
/// `M·[e^{−N(1−|z|)}/(1−|z|) + e^{−N(1−ρ/|z|)}/(|z|−ρ)]`, with `M` the
/// maximum of `|f|` on the closed ring.
pub fn truncation_bound(max_modulus: f64, abs_z: f64, rho: f64, truncation: f64) -> Result<f64> {
    if !(rho > 0.0 && rho < abs_z && abs_z < 1.0) {
        return Err(Error::guard("abs_z", format!("need ρ < |z| < 1, got ρ={rho}, |z|={abs_z}")));
    }
    if max_modulus.is_nan() || max_modulus < 0.0 {
        return Err(Error::schema("max_modulus", format!("must be non-negative, got {max_modulus}")));
    }
    if truncation.is_nan() || truncation < 0.0 {
        return Err(Error::schema("truncation", format!("must be non-negative, got {truncation}")));
    }
    let outer = (-truncation * (1.0 - abs_z)).exp() / (1.0 - abs_z);
    let inner = (-truncation * (1.0 - rho / abs_z)).exp() / (abs_z - rho);
    Ok(max_modulus * (outer + inner))
}

/// Laurent polynomial `Σ c_k z^k` over a finite set of integer powers.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentPoly {
    terms: Vec<(i32, Complex64)>,
}

#[derive(Deserialize)]
struct RawLaurent {
    powers: Vec<i32>,
    re: Vec<f64>,
    im: Vec<f64>,
}

impl LaurentPoly {
    pub fn new(terms: Vec<(i32, Complex64)>) -> Result<Self> {
        if terms.iter().any(|(_, c)| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::schema("coefficients", "coefficient is not finite"));
        }
        Ok(LaurentPoly { terms })
    }

    /// Parses `{"powers": [k...], "re": [...], "im": [...]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawLaurent = serde_json::from_str(text).map_err(|e| json_error("laurent", e))?;
        if raw.re.len() != raw.powers.len() {
            return Err(Error::schema("re", format!("expected {} values, got {}", raw.powers.len(), raw.re.len())));
        }
        if raw.im.len() != raw.powers.len() {
            return Err(Error::schema("im", format!("expected {} values, got {}", raw.powers.len(), raw.im.len())));
        }
        let terms = raw
            .powers
            .into_iter()
            .zip(raw.re.into_iter().zip(raw.im))
            .map(|(k, (re, im))| (k, Complex64::new(re, im)))
            .collect();
        Self::new(terms)
    }

    pub fn terms(&self) -> &[(i32, Complex64)] {
        &self.terms
    }

    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        self.terms.iter().map(|&(k, c)| c * z.powi(k)).sum()
    }

    /// Only the terms with `k ≥ 0` (`nonnegative = true`) or `k < 0`.
    pub fn part(&self, nonnegative: bool) -> Self {
        LaurentPoly { terms: self.terms.iter().copied().filter(|&(k, _)| (k >= 0) == nonnegative).collect() }
    }
}
