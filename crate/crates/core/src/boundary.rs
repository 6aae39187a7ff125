//! Boundary data on the unit circle.
//!
//! Every boundary function is a finite real trigonometric polynomial
//!
//! ```text
//! f(φ) = a0 + Σ_{n=1..N} (a_n cos nφ + b_n sin nφ)
//! ```
//!
//! stored as a [`TrigSeries`]. The same coefficients define the Laurent
//! polynomial `F(ζ) = a0 + Σ ((a_n − i b_n)/2 ζⁿ + (a_n + i b_n)/2 ζ⁻ⁿ)`,
//! which agrees with `f` on `|ζ| = 1` and is what the kernel evaluators use
//! when they move an angular contour off the unit circle.

use std::f64::consts::{PI, TAU};
use std::ops::Add;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Finite real trigonometric polynomial on the circle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawTrigSeries", into = "RawTrigSeries")]
pub struct TrigSeries {
    a0: f64,
    cos: Vec<f64>,
    sin: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct RawTrigSeries {
    a0: f64,
    #[serde(default)]
    cos: Vec<f64>,
    #[serde(default)]
    sin: Vec<f64>,
}

impl TryFrom<RawTrigSeries> for TrigSeries {
    type Error = Error;

    fn try_from(raw: RawTrigSeries) -> Result<Self> {
        TrigSeries::new(raw.a0, raw.cos, raw.sin)
    }
}

impl From<TrigSeries> for RawTrigSeries {
    fn from(f: TrigSeries) -> Self {
        RawTrigSeries { a0: f.a0, cos: f.cos, sin: f.sin }
    }
}

impl TrigSeries {
    /// Builds a series from `a0`, `[a_1..a_N]` and `[b_1..b_N]`.
    pub fn new(a0: f64, cos: Vec<f64>, sin: Vec<f64>) -> Result<Self> {
        if cos.len() != sin.len() {
            return Err(Error::schema(
                "sin",
                format!("expected {} sine coefficients, got {}", cos.len(), sin.len()),
            ));
        }
        if !a0.is_finite() {
            return Err(Error::schema("a0", "coefficient is not finite"));
        }
        if cos.iter().any(|c| !c.is_finite()) {
            return Err(Error::schema("cos", "coefficient is not finite"));
        }
        if sin.iter().any(|c| !c.is_finite()) {
            return Err(Error::schema("sin", "coefficient is not finite"));
        }
        Ok(TrigSeries { a0, cos, sin })
    }

    pub fn zero() -> Self {
        TrigSeries { a0: 0.0, cos: Vec::new(), sin: Vec::new() }
    }

    pub fn constant(a0: f64) -> Self {
        TrigSeries { a0, cos: Vec::new(), sin: Vec::new() }
    }

    /// `amplitude · cos nφ`; `n = 0` gives the constant `amplitude`.
    pub fn cosine(n: usize, amplitude: f64) -> Self {
        Self::single_mode(n, amplitude, 0.0)
    }

    /// `amplitude · sin nφ`; `n = 0` gives the zero series.
    pub fn sine(n: usize, amplitude: f64) -> Self {
        if n == 0 {
            return Self::zero();
        }
        Self::single_mode(n, 0.0, amplitude)
    }

    fn single_mode(n: usize, a: f64, b: f64) -> Self {
        if n == 0 {
            return Self::constant(a);
        }
        let mut cos = vec![0.0; n];
        let mut sin = vec![0.0; n];
        cos[n - 1] = a;
        sin[n - 1] = b;
        TrigSeries { a0: 0.0, cos, sin }
    }

    pub fn degree(&self) -> usize {
        self.cos.len()
    }

    pub fn a0(&self) -> f64 {
        self.a0
    }

    pub fn cos_coeffs(&self) -> &[f64] {
        &self.cos
    }

    pub fn sin_coeffs(&self) -> &[f64] {
        &self.sin
    }

    /// `(a_n, b_n)` for `n ≥ 1`; zero beyond the degree.
    pub fn mode(&self, n: usize) -> (f64, f64) {
        if n == 0 {
            return (self.a0, 0.0);
        }
        match (self.cos.get(n - 1), self.sin.get(n - 1)) {
            (Some(&a), Some(&b)) => (a, b),
            _ => (0.0, 0.0),
        }
    }

    /// Iterator over `(n, a_n, b_n)` for `n = 1..=N`.
    pub fn modes(&self) -> impl Iterator<Item = (usize, f64, f64)> + '_ {
        self.cos.iter().zip(&self.sin).enumerate().map(|(i, (&a, &b))| (i + 1, a, b))
    }

    /// Mean value over the circle (equals `a0`).
    pub fn mean(&self) -> f64 {
        self.a0
    }

    pub fn without_mean(&self) -> Self {
        TrigSeries { a0: 0.0, ..self.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.a0 == 0.0 && self.cos.iter().chain(&self.sin).all(|&c| c == 0.0)
    }

    pub fn scaled(&self, alpha: f64) -> Self {
        TrigSeries {
            a0: alpha * self.a0,
            cos: self.cos.iter().map(|c| alpha * c).collect(),
            sin: self.sin.iter().map(|c| alpha * c).collect(),
        }
    }

    /// `φ ↦ f(φ − φ0)`.
    pub fn rotated(&self, phi0: f64) -> Self {
        let (cos, sin) = self
            .modes()
            .map(|(n, a, b)| {
                let (s, c) = (n as f64 * phi0).sin_cos();
                (a * c - b * s, a * s + b * c)
            })
            .unzip();
        TrigSeries { a0: self.a0, cos, sin }
    }

    /// Angular derivative `f′(φ)`.
    pub fn derivative(&self) -> Self {
        let (cos, sin) = self.modes().map(|(n, a, b)| (n as f64 * b, -(n as f64) * a)).unzip();
        TrigSeries { a0: 0.0, cos, sin }
    }

    /// Sum of the absolute values of all coefficients.
    pub fn coefficient_l1(&self) -> f64 {
        self.a0.abs() + self.cos.iter().chain(&self.sin).map(|c| c.abs()).sum::<f64>()
    }

    /// `f(φ)`, with `φ` reduced modulo 2π and modes summed in ascending order.
    pub fn evaluate(&self, phi: f64) -> f64 {
        let phi = phi.rem_euclid(TAU);
        let mut acc = self.a0;
        for (n, a, b) in self.modes() {
            let (s, c) = (n as f64 * phi).sin_cos();
            acc += a * c + b * s;
        }
        acc
    }

    /// Laurent extension `F(ζ)`; equals `f(arg ζ)` on the unit circle.
    pub fn evaluate_laurent(&self, zeta: Complex64) -> Complex64 {
        let inv = zeta.inv();
        let mut pos = Complex64::new(1.0, 0.0);
        let mut neg = Complex64::new(1.0, 0.0);
        let mut acc = Complex64::new(self.a0, 0.0);
        for (_, a, b) in self.modes() {
            pos *= zeta;
            neg *= inv;
            acc += Complex64::new(0.5 * a, -0.5 * b) * pos + Complex64::new(0.5 * a, 0.5 * b) * neg;
        }
        acc
    }

    /// Values at the `m` equispaced angles `2πj/m`.
    pub fn samples(&self, m: usize) -> Vec<f64> {
        (0..m).map(|j| self.evaluate(TAU * j as f64 / m as f64)).collect()
    }

    /// Discrete Fourier coefficients of equispaced samples, truncated to
    /// `degree`. Requires `samples.len() ≥ 2·degree + 2`.
    pub fn coeffs_from_samples(samples: &[f64], degree: usize) -> Result<Self> {
        let m = samples.len();
        if m < 2 * degree + 2 {
            return Err(Error::schema(
                "samples",
                format!("{m} samples cannot resolve degree {degree} (need at least {})", 2 * degree + 2),
            ));
        }
        if samples.iter().any(|s| !s.is_finite()) {
            return Err(Error::schema("samples", "sample is not finite"));
        }
        let mf = m as f64;
        let a0 = samples.iter().sum::<f64>() / mf;
        let (cos, sin) = (1..=degree)
            .map(|n| {
                let (mut a, mut b) = (0.0, 0.0);
                for (j, &f) in samples.iter().enumerate() {
                    // n·j reduced mod m keeps the angle in [0, 2π)
                    let angle = TAU * ((n * j) % m) as f64 / mf;
                    let (s, c) = angle.sin_cos();
                    a += f * c;
                    b += f * s;
                }
                (2.0 * a / mf, 2.0 * b / mf)
            })
            .unzip();
        TrigSeries::new(a0, cos, sin)
    }

    /// Fourier-weighted Sobolev norm
    /// `sqrt(2π a0² + π Σ (1+n²)^s (a_n² + b_n²))`.
    pub fn norm_sobolev(&self, s: SobolevOrder) -> f64 {
        let mut acc = TAU * self.a0 * self.a0;
        for (n, a, b) in self.modes() {
            let weight = (1.0 + (n * n) as f64).powf(s.get());
            acc += PI * weight * (a * a + b * b);
        }
        acc.sqrt()
    }

    /// Grid approximation of the sup norm: `max_j |f(2πj/grid_size)|`.
    pub fn norm_sup(&self, grid_size: usize) -> Result<f64> {
        let min = 8 * (self.degree() + 1);
        if grid_size < min {
            return Err(Error::schema(
                "grid_size",
                format!("{grid_size} points under-resolve degree {} (need at least {min})", self.degree()),
            ));
        }
        Ok(self.samples(grid_size).into_iter().fold(0.0, |m, v| m.max(v.abs())))
    }

    /// Dirichlet datum of the auxiliary problem used to reduce the
    /// Neumann-data case to the Dirichlet-data case:
    /// `g(φ) = (1/2π) ∫₀^{2π} ψ h(φ+ψ) dψ`, in closed form per mode.
    ///
    /// `a0(g) = π·mean(h)` and `a cos nφ + b sin nφ ↦ (a sin nφ − b cos nφ)/n`,
    /// so `g′ = h − mean(h)`.
    pub fn auxiliary_dirichlet_data(&self) -> Self {
        let (cos, sin) = self.modes().map(|(n, a, b)| (-b / n as f64, a / n as f64)).unzip();
        TrigSeries { a0: PI * self.a0, cos, sin }
    }

    /// Parses the `{"a0": .., "cos": [..], "sin": [..]}` schema.
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| json_error("trig_series", e))
    }

    /// Reads one real per line (blank lines ignored); row `j` is the value at
    /// angle `2πj/M`.
    pub fn read_samples_csv(path: &Path) -> Result<Vec<f64>> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path.display().to_string(), e))?;
        parse_samples(&text)
    }
}

pub(crate) fn parse_samples(text: &str) -> Result<Vec<f64>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .enumerate()
        .map(|(i, l)| {
            l.parse::<f64>()
                .map_err(|e| Error::schema("samples", format!("row {i}: {e}")))
        })
        .collect()
}

/// serde_json wraps our own validation errors in its message; keep the field
/// name of the innermost failure where possible.
pub(crate) fn json_error(field: &'static str, e: serde_json::Error) -> Error {
    let msg = e.to_string();
    for inner in ["a0", "cos", "sin"] {
        let prefix = format!("invalid `{inner}`: ");
        if let Some(pos) = msg.find(&prefix) {
            let inner: &'static str = match inner {
                "a0" => "a0",
                "cos" => "cos",
                _ => "sin",
            };
            return Error::schema(inner, &msg[pos + prefix.len()..]);
        }
    }
    Error::schema(field, msg)
}

impl Add for &TrigSeries {
    type Output = TrigSeries;

    fn add(self, rhs: &TrigSeries) -> TrigSeries {
        let n = self.degree().max(rhs.degree());
        let (cos, sin) = (1..=n)
            .map(|k| {
                let (a1, b1) = self.mode(k);
                let (a2, b2) = rhs.mode(k);
                (a1 + a2, b1 + b2)
            })
            .unzip();
        TrigSeries { a0: self.a0 + rhs.a0, cos, sin }
    }
}

/// Smoothness order `s ≥ 0` of a Sobolev norm.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct SobolevOrder(f64);

impl SobolevOrder {
    pub fn new(s: f64) -> Result<Self> {
        if !(s.is_finite() && s >= 0.0) {
            return Err(Error::schema("sobolev", format!("order must be finite and non-negative, got {s}")));
        }
        Ok(SobolevOrder(s))
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// Cauchy data on the outer circle: the value `g` and the outward normal
/// derivative `h = ∂u/∂r`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CauchyData {
    pub g: TrigSeries,
    pub h: TrigSeries,
}

impl CauchyData {
    pub fn new(g: TrigSeries, h: TrigSeries) -> Self {
        CauchyData { g, h }
    }

    pub fn zero() -> Self {
        CauchyData { g: TrigSeries::zero(), h: TrigSeries::zero() }
    }

    pub fn max_degree(&self) -> usize {
        self.g.degree().max(self.h.degree())
    }

    /// `α·self + β·other`.
    pub fn combine(&self, alpha: f64, other: &CauchyData, beta: f64) -> Self {
        CauchyData {
            g: &self.g.scaled(alpha) + &other.g.scaled(beta),
            h: &self.h.scaled(alpha) + &other.h.scaled(beta),
        }
    }

    pub fn rotated(&self, phi0: f64) -> Self {
        CauchyData { g: self.g.rotated(phi0), h: self.h.rotated(phi0) }
    }

    /// Parses `{"g": TrigSeries, "h": TrigSeries}`.
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| json_error("cauchy_data", e))
    }
}
