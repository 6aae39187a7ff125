//! Quadrature rules behind the kernel evaluators.

use std::f64::consts::TAU;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub const MAX_LAGUERRE_ORDER: usize = 64;

/// Points per panel of the composite Gauss–Legendre rule.
const PANEL_POINTS: usize = 8;

/// Integration parameters shared by the kernel evaluators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    /// Gauss–Laguerre nodes for `∫₀^∞ e^{−ε}(…) dε`.
    pub laguerre_order: usize,
    /// Periodic trapezoid points for the angular integrals.
    pub angular_nodes: usize,
    /// Upper limit of the λ-integral; `None` picks the smallest admissible
    /// value `(N + 40)/r` per evaluation point.
    pub lambda_cutoff: Option<f64>,
    /// Nodes of the composite rule on a finite interval; `None` means
    /// `⌈25·length⌉`.
    pub lambda_nodes: Option<usize>,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec { laguerre_order: 16, angular_nodes: 256, lambda_cutoff: None, lambda_nodes: None }
    }
}

impl QuadratureSpec {
    pub fn new(
        laguerre_order: usize,
        angular_nodes: usize,
        lambda_cutoff: Option<f64>,
        lambda_nodes: Option<usize>,
    ) -> Result<Self> {
        let spec = QuadratureSpec { laguerre_order, angular_nodes, lambda_cutoff, lambda_nodes };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(1..=MAX_LAGUERRE_ORDER).contains(&self.laguerre_order) {
            return Err(Error::schema(
                "laguerre",
                format!("order must lie in 1..={MAX_LAGUERRE_ORDER}, got {}", self.laguerre_order),
            ));
        }
        if self.angular_nodes < 8 || !self.angular_nodes.is_multiple_of(2) {
            return Err(Error::schema(
                "angular",
                format!("node count must be even and at least 8, got {}", self.angular_nodes),
            ));
        }
        if let Some(cutoff) = self.lambda_cutoff {
            if !(cutoff.is_finite() && cutoff > 0.0) {
                return Err(Error::schema("lambda_cutoff", format!("must be positive, got {cutoff}")));
            }
        }
        if let Some(l) = self.lambda_nodes {
            if l < 16 {
                return Err(Error::schema("lambda_nodes", format!("need at least 16 nodes, got {l}")));
            }
        }
        Ok(())
    }

    /// Node count for a composite rule on an interval of the given length.
    pub(crate) fn nodes_for_length(&self, length: f64) -> usize {
        self.lambda_nodes.unwrap_or_else(|| ((25.0 * length).ceil() as usize).max(16))
    }
}

/// Nodes and weights of an interpolatory rule.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.nodes.iter().copied().zip(self.weights.iter().copied())
    }

    /// `Σ w_i f(x_i)`, summed in node order.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.pairs().map(|(x, w)| w * f(x)).sum()
    }
}

/// Eigenvalues and squared first eigenvector components of the symmetric
/// tridiagonal Jacobi matrix, sorted by eigenvalue.
fn golub_welsch(diag: &[f64], off: &[f64]) -> Vec<(f64, f64)> {
    let n = diag.len();
    let jacobi = DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            diag[i]
        } else if i + 1 == j {
            off[i]
        } else if j + 1 == i {
            off[j]
        } else {
            0.0
        }
    });
    let eig = SymmetricEigen::new(jacobi);
    let mut out: Vec<(f64, f64)> =
        (0..n).map(|k| (eig.eigenvalues[k], eig.eigenvectors[(0, k)].powi(2))).collect();
    out.sort_by(|a, b| a.0.total_cmp(&b.0));
    out
}

/// `(L_q(x), L_{q−1}(x))` by the three-term recurrence.
fn laguerre_pair(q: usize, x: f64) -> (f64, f64) {
    let (mut prev, mut cur) = (1.0, 1.0 - x);
    if q == 0 {
        return (1.0, 0.0);
    }
    for k in 1..q {
        let k = k as f64;
        let next = ((2.0 * k + 1.0 - x) * cur - k * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    (cur, prev)
}

/// Gauss–Laguerre rule of order `q`: exact for `∫₀^∞ e^{−x} p(x) dx` with
/// `deg p ≤ 2q − 1`.
///
/// Nodes come from the eigenvalues of the Jacobi matrix (diagonal `2k+1`,
/// off-diagonal `k`), refined by Newton steps on `L_q`. Weights use
/// `w = x / ((q+1) L_{q+1}(x))²` so that tiny weights keep full relative
/// accuracy.
pub fn gauss_laguerre(q: usize) -> Result<GaussRule> {
    if !(1..=MAX_LAGUERRE_ORDER).contains(&q) {
        return Err(Error::schema("laguerre", format!("order must lie in 1..={MAX_LAGUERRE_ORDER}, got {q}")));
    }
    let diag: Vec<f64> = (0..q).map(|k| (2 * k + 1) as f64).collect();
    let off: Vec<f64> = (1..q).map(|k| k as f64).collect();
    let qf = q as f64;
    let (nodes, weights) = golub_welsch(&diag, &off)
        .into_iter()
        .map(|(mut x, _)| {
            for _ in 0..3 {
                let (lq, lq1) = laguerre_pair(q, x);
                // x L_q' = q (L_q − L_{q−1})
                let deriv = qf * (lq - lq1) / x;
                let step = lq / deriv;
                x -= step;
                if step.abs() <= 1e-16 * x {
                    break;
                }
            }
            let (lnext, _) = laguerre_pair(q + 1, x);
            let w = x / ((qf + 1.0) * lnext).powi(2);
            (x, w)
        })
        .unzip();
    Ok(GaussRule { nodes, weights })
}

/// Gauss–Legendre rule on `[−1, 1]`.
pub fn gauss_legendre(n: usize) -> GaussRule {
    let diag = vec![0.0; n];
    let off: Vec<f64> = (1..n).map(|k| k as f64 / ((4 * k * k - 1) as f64).sqrt()).collect();
    let (nodes, weights) = golub_welsch(&diag, &off).into_iter().map(|(x, v)| (x, 2.0 * v)).unzip();
    GaussRule { nodes, weights }
}

/// Composite Gauss–Legendre rule on `[a, b]` with at least `min_nodes`
/// nodes (rounded up to whole 8-point panels).
pub fn composite_legendre(a: f64, b: f64, min_nodes: usize) -> GaussRule {
    let base = gauss_legendre(PANEL_POINTS);
    let panels = min_nodes.div_ceil(PANEL_POINTS).max(1);
    let width = (b - a) / panels as f64;
    let mut nodes = Vec::with_capacity(panels * PANEL_POINTS);
    let mut weights = Vec::with_capacity(panels * PANEL_POINTS);
    for p in 0..panels {
        let mid = a + (p as f64 + 0.5) * width;
        for (x, w) in base.pairs() {
            nodes.push(mid + 0.5 * width * x);
            weights.push(0.5 * width * w);
        }
    }
    GaussRule { nodes, weights }
}

fn check_periodic_nodes(m: usize) -> Result<()> {
    if m < 8 || !m.is_multiple_of(2) {
        return Err(Error::schema("angular", format!("node count must be even and at least 8, got {m}")));
    }
    Ok(())
}

/// Periodic trapezoid rule `(2π/M) Σ_{j<M} f(2πj/M)`; exact for trig
/// polynomials of degree below `M`.
pub fn trapezoid_period<F: FnMut(f64) -> f64>(m: usize, mut integrand: F) -> Result<f64> {
    check_periodic_nodes(m)?;
    let sum: f64 = (0..m).map(|j| integrand(TAU * j as f64 / m as f64)).sum();
    Ok(sum * TAU / m as f64)
}

/// Mean of `f` over the `m` roots of unity, i.e. `(1/2π)` times the
/// trapezoid value of `∮ f(e^{it}) dt`. Takes the unit-circle point.
pub(crate) fn circle_mean<F: FnMut(Complex64) -> Complex64>(roots: &[Complex64], mut f: F) -> Complex64 {
    let sum: Complex64 = roots.iter().map(|&w| f(w)).sum();
    sum / roots.len() as f64
}

/// `e^{2πij/m}` for `j < m`.
pub(crate) fn roots_of_unity(m: usize) -> Vec<Complex64> {
    (0..m).map(|j| Complex64::from_polar(1.0, TAU * j as f64 / m as f64)).collect()
}
