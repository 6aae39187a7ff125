//! Hadamard's instability example and a spectral-cutoff regularizer.
//!
//! The data `u = 0`, `∂u/∂r = e^{−√n} cos nφ / n` vanish in every Sobolev
//! norm as `n → ∞`, while the solution
//! `e^{−√n}(rⁿ − r^{−n}) cos nφ / (2n²)` blows up on every circle `r < 1`.
//! [`instability_table`] measures both sides of that; [`solve_cauchy_filtered`]
//! restores a Lipschitz bound by dropping modes whose gain at a probe radius
//! exceeds a cap.

use std::fmt::Write as _;

use serde::Serialize;

use crate::boundary::{CauchyData, SobolevOrder, TrigSeries};
use crate::error::{Error, Result};
use crate::kernels::{solve_cauchy_eq3, Eq3Mode, QuadratureSpec};
use crate::oracle::{amplification, solve_cauchy_oracle, Annulus, Field, ModeKind, PolarGrid};

/// Relative tolerance of the closed-form cross-check in [`instability_table`].
pub const CLOSED_FORM_RTOL: f64 = 1e-9;

/// `g = 0`, `h = e^{−√n} cos nφ / n`.
pub fn hadamard_datum(n: usize) -> Result<CauchyData> {
    if n == 0 {
        return Err(Error::schema("n", "mode index must be at least 1"));
    }
    let nf = n as f64;
    Ok(CauchyData::new(TrigSeries::zero(), TrigSeries::cosine(n, (-nf.sqrt()).exp() / nf)))
}

/// `e^{−√n}(rⁿ − r^{−n}) / (2n²)`, the solution for [`hadamard_datum`] at `φ = 0`.
pub fn hadamard_closed_form(n: usize, r: f64) -> f64 {
    let nf = n as f64;
    let p = r.powi(n as i32);
    (-nf.sqrt()).exp() * (p - p.recip()) / (2.0 * nf * nf)
}

/// Which solver produces the instability table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableSolver {
    Oracle,
    Eq3Modal,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InstabilityRecord {
    pub n: usize,
    /// Sobolev norm of the Neumann datum.
    pub data_norm: f64,
    /// Grid sup of `|u − u₀|` on the probe circle, `u₀ ≡ 0`.
    pub solution_sup: f64,
    /// `solution_sup / data_norm`.
    pub amplification: f64,
    /// Closed-form value at `φ = 0`, matched against the solver.
    pub closed_form: f64,
}

/// Angles used to measure the sup over the probe circle.
pub fn sup_grid_size(n: usize) -> usize {
    (8 * n).max(256)
}

/// One record per requested `n`, in input order.
pub fn instability_table(
    n_list: &[usize],
    s: SobolevOrder,
    r_probe: f64,
    annulus: &Annulus,
    solver: TableSolver,
) -> Result<Vec<InstabilityRecord>> {
    annulus.check_radius(r_probe)?;
    let spec = QuadratureSpec::default();
    n_list
        .iter()
        .map(|&n| {
            let data = hadamard_datum(n)?;
            let grid = PolarGrid::uniform(r_probe, r_probe, 1, sup_grid_size(n))?;
            let field = match solver {
                TableSolver::Oracle => solve_cauchy_oracle(&data, annulus, &grid)?,
                TableSolver::Eq3Modal => solve_cauchy_eq3(&data, annulus, &grid, &spec, Eq3Mode::Modal)?,
            };
            let baseline = solve_cauchy_oracle(&CauchyData::zero(), annulus, &grid)?;
            let solution_sup = field
                .values
                .iter()
                .zip(&baseline.values)
                .fold(0.0f64, |m, (u, u0)| m.max((u - u0).abs()));
            let closed_form = hadamard_closed_form(n, r_probe);
            // angle 0 is the first grid column
            let at_zero = field.values[0];
            if (at_zero - closed_form).abs() > CLOSED_FORM_RTOL * closed_form.abs() {
                return Err(Error::guard(
                    "closed_form",
                    format!("n={n}: solver gives {at_zero:e}, closed form {closed_form:e}"),
                ));
            }
            let data_norm = data.h.norm_sobolev(s);
            Ok(InstabilityRecord { n, data_norm, solution_sup, amplification: solution_sup / data_norm, closed_form })
        })
        .collect()
}

/// CSV with header `n,data_norm,solution_sup,amplification`.
pub fn instability_csv(records: &[InstabilityRecord]) -> String {
    let mut out = String::from("n,data_norm,solution_sup,amplification\n");
    for r in records {
        let _ = writeln!(out, "{},{:.16e},{:.16e},{:.16e}", r.n, r.data_norm, r.solution_sup, r.amplification);
    }
    out
}

/// Spectral-cutoff parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FilterSpec {
    pub r_probe: f64,
    /// Largest admissible per-mode gain; `f64::INFINITY` disables filtering.
    pub gain_cap: f64,
}

impl FilterSpec {
    pub fn new(r_probe: f64, gain_cap: f64) -> Result<Self> {
        if gain_cap.is_nan() || gain_cap <= 0.0 {
            return Err(Error::schema("gain_cap", format!("must be positive, got {gain_cap}")));
        }
        if !(r_probe > 0.0 && r_probe < 1.0) {
            return Err(Error::schema("probe_r", format!("must lie in (0, 1), got {r_probe}")));
        }
        Ok(FilterSpec { r_probe, gain_cap })
    }
}

/// A suppressed Fourier mode of `g` or `h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DroppedMode {
    pub component: Component,
    pub n: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Component {
    G,
    H,
}

/// Gain of mode `n` at the probe radius; overflow counts as unbounded.
fn mode_gain(kind: ModeKind, n: usize, r: f64) -> Result<f64> {
    if n == 0 {
        return Ok(match kind {
            ModeKind::Dirichlet => 1.0,
            ModeKind::Neumann => r.ln().abs(),
        });
    }
    match amplification(kind, n, r) {
        Ok(g) => Ok(g),
        Err(Error::Guard { field: "degree", .. }) => Ok(f64::INFINITY),
        Err(e) => Err(e),
    }
}

fn filter_series(
    f: &TrigSeries,
    kind: ModeKind,
    filter: &FilterSpec,
    component: Component,
    dropped: &mut Vec<DroppedMode>,
) -> Result<TrigSeries> {
    let keep = |n: usize| -> Result<bool> { Ok(mode_gain(kind, n, filter.r_probe)? <= filter.gain_cap) };
    let mut a0 = f.a0();
    if a0 != 0.0 && !keep(0)? {
        dropped.push(DroppedMode { component, n: 0 });
        a0 = 0.0;
    }
    let mut cos = Vec::with_capacity(f.degree());
    let mut sin = Vec::with_capacity(f.degree());
    for (n, a, b) in f.modes() {
        if (a != 0.0 || b != 0.0) && !keep(n)? {
            dropped.push(DroppedMode { component, n });
            cos.push(0.0);
            sin.push(0.0);
        } else {
            cos.push(a);
            sin.push(b);
        }
    }
    // trailing zeros would only inflate the degree (and the overflow guard)
    while cos.last() == Some(&0.0) && sin.last() == Some(&0.0) {
        cos.pop();
        sin.pop();
    }
    TrigSeries::new(a0, cos, sin)
}

/// Data with every mode whose gain exceeds the cap removed, plus the list of
/// removed modes (`g` before `h`, ascending `n`).
pub fn filter_data(data: &CauchyData, filter: &FilterSpec) -> Result<(CauchyData, Vec<DroppedMode>)> {
    let mut dropped = Vec::new();
    let g = filter_series(&data.g, ModeKind::Dirichlet, filter, Component::G, &mut dropped)?;
    let h = filter_series(&data.h, ModeKind::Neumann, filter, Component::H, &mut dropped)?;
    Ok((CauchyData::new(g, h), dropped))
}

/// Oracle solution of the filtered data.
pub fn solve_cauchy_filtered(
    data: &CauchyData,
    annulus: &Annulus,
    grid: &PolarGrid,
    filter: &FilterSpec,
) -> Result<(Field, Vec<DroppedMode>)> {
    annulus.check_radius(filter.r_probe)?;
    let (filtered, dropped) = filter_data(data, filter)?;
    let mut field = solve_cauchy_oracle(&filtered, annulus, grid)?;
    field.solver_tag = "oracle-filtered".to_string();
    Ok((field, dropped))
}

pub fn dropped_modes_json(dropped: &[DroppedMode]) -> String {
    serde_json::to_string(dropped).expect("dropped-mode list serializes")
}
