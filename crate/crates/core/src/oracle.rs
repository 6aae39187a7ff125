//! Separation-of-variables solver for the Cauchy problem on the annulus
//! `ρ < |z| < 1` with data `u = g`, `∂u/∂r = h` on the outer circle.
//!
//! Each Fourier mode of the data has a closed-form radial profile, so the
//! solution for trig-polynomial data is an exact finite sum. This module is
//! the ground truth the kernel evaluators are checked against.

use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;

use crate::boundary::CauchyData;
use crate::error::{Error, Result};

/// Largest admissible `n·|ln r|`; `e^690` stays clear of the f64 ceiling.
pub const OVERFLOW_GUARD: f64 = 690.0;

/// The ring `ρ < |z| < 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Annulus {
    inner_radius: f64,
}

impl Annulus {
    pub fn new(inner_radius: f64) -> Result<Self> {
        if !(inner_radius > 0.0 && inner_radius < 1.0) {
            return Err(Error::guard(
                "inner_radius",
                format!("inner radius must lie in (0, 1), got {inner_radius}"),
            ));
        }
        Ok(Annulus { inner_radius })
    }

    pub fn inner_radius(&self) -> f64 {
        self.inner_radius
    }

    pub fn contains_radius(&self, r: f64) -> bool {
        r > self.inner_radius && r < 1.0
    }

    pub(crate) fn check_radius(&self, r: f64) -> Result<()> {
        if self.contains_radius(r) {
            Ok(())
        } else {
            Err(Error::guard(
                "radius",
                format!("radius {r} is outside the open annulus ({}, 1)", self.inner_radius),
            ))
        }
    }
}

/// `z = r e^{iφ}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarPoint {
    pub radius: f64,
    pub angle: f64,
}

impl PolarPoint {
    pub fn new(radius: f64, angle: f64) -> Self {
        PolarPoint { radius, angle }
    }
}

/// Radial profile family of a single Fourier mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeKind {
    /// `u(1) = 1`, `u_r(1) = 0`.
    Dirichlet,
    /// `u(1) = 0`, `u_r(1) = 1`.
    Neumann,
}

/// Rejects `(n, r)` for which `r^{±n}` would leave the safe f64 range.
pub fn check_overflow(n: usize, r: f64) -> Result<()> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::guard("radius", format!("radius must be positive and finite, got {r}")));
    }
    let exponent = n as f64 * r.ln().abs();
    if exponent > OVERFLOW_GUARD {
        return Err(Error::guard(
            "degree",
            format!("mode n={n} at r={r} gives n·|ln r| = {exponent:.3} > {OVERFLOW_GUARD}"),
        ));
    }
    Ok(())
}

/// Radial profile of mode `n` (the caller supplies `cos nφ` / `sin nφ`).
pub fn solve_mode(kind: ModeKind, n: usize, r: f64) -> Result<f64> {
    check_overflow(n, r)?;
    Ok(match (kind, n) {
        (ModeKind::Dirichlet, 0) => 1.0,
        (ModeKind::Neumann, 0) => r.ln(),
        (ModeKind::Dirichlet, n) => {
            let p = r.powi(n as i32);
            0.5 * (p + p.recip())
        }
        (ModeKind::Neumann, n) => {
            let p = r.powi(n as i32);
            (p - p.recip()) / (2.0 * n as f64)
        }
    })
}

/// Per-mode data-to-solution gain `|solve_mode(kind, n, r)|`.
pub fn amplification(kind: ModeKind, n: usize, r: f64) -> Result<f64> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::guard("radius", format!("probe radius must lie in (0, 1), got {r}")));
    }
    Ok(solve_mode(kind, n, r)?.abs())
}

/// Oracle solution at one point. Summation order: `g` mean, `g` modes
/// ascending, `h` mean, `h` modes ascending.
pub fn oracle_value(data: &CauchyData, point: PolarPoint) -> Result<f64> {
    let PolarPoint { radius: r, angle: phi } = point;
    check_overflow(data.max_degree(), r)?;
    let mut u = data.g.a0();
    for (n, a, b) in data.g.modes() {
        let (s, c) = (n as f64 * phi).sin_cos();
        u += (a * c + b * s) * solve_mode(ModeKind::Dirichlet, n, r)?;
    }
    u += data.h.a0() * r.ln();
    for (n, a, b) in data.h.modes() {
        let (s, c) = (n as f64 * phi).sin_cos();
        u += (a * c + b * s) * solve_mode(ModeKind::Neumann, n, r)?;
    }
    Ok(u)
}

/// Tensor grid of radii × angles.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarGrid {
    pub radii: Vec<f64>,
    pub angles: Vec<f64>,
}

impl PolarGrid {
    pub fn new(radii: Vec<f64>, angles: Vec<f64>) -> Result<Self> {
        if radii.is_empty() {
            return Err(Error::schema("grid_r", "no radii"));
        }
        if angles.is_empty() {
            return Err(Error::schema("grid_phi", "no angles"));
        }
        Ok(PolarGrid { radii, angles })
    }

    /// `n_r` radii evenly spaced on `[r_min, r_max]` (inclusive) and `n_phi`
    /// angles `2πj/n_phi`.
    pub fn uniform(r_min: f64, r_max: f64, n_r: usize, n_phi: usize) -> Result<Self> {
        if n_r == 0 {
            return Err(Error::schema("grid_r", "radius count must be positive"));
        }
        let radii = if n_r == 1 {
            vec![r_min]
        } else {
            (0..n_r).map(|i| r_min + (r_max - r_min) * i as f64 / (n_r - 1) as f64).collect()
        };
        let angles = (0..n_phi).map(|j| std::f64::consts::TAU * j as f64 / n_phi as f64).collect();
        PolarGrid::new(radii, angles)
    }

    pub fn check_inside(&self, annulus: &Annulus) -> Result<()> {
        self.radii.iter().try_for_each(|&r| annulus.check_radius(r))
    }

    pub fn len(&self) -> usize {
        self.radii.len() * self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Points in row-major order (radii outer).
    pub fn points(&self) -> impl Iterator<Item = PolarPoint> + '_ {
        self.radii
            .iter()
            .flat_map(move |&r| self.angles.iter().map(move |&phi| PolarPoint::new(r, phi)))
    }
}

/// Samples `u(r_i, φ_j)` with the name of the solver that produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct Field {
    pub radii: Vec<f64>,
    pub angles: Vec<f64>,
    /// Row-major: `values[i * angles.len() + j] = u(radii[i], angles[j])`.
    pub values: Vec<f64>,
    pub solver_tag: String,
}

impl Field {
    /// Evaluates `f` at every grid point in parallel. Ordering of the output
    /// does not depend on scheduling.
    pub fn tabulate<F>(grid: &PolarGrid, solver_tag: impl Into<String>, f: F) -> Result<Field>
    where
        F: Fn(PolarPoint) -> Result<f64> + Sync,
    {
        let points: Vec<PolarPoint> = grid.points().collect();
        let values = points.par_iter().map(|&p| f(p)).collect::<Result<Vec<f64>>>()?;
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            let p = points[pos];
            return Err(Error::guard(
                "value",
                format!("non-finite solution at r={}, φ={}", p.radius, p.angle),
            ));
        }
        Ok(Field {
            radii: grid.radii.clone(),
            angles: grid.angles.clone(),
            values,
            solver_tag: solver_tag.into(),
        })
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.angles.len() + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        let m = self.angles.len();
        &self.values[i * m..(i + 1) * m]
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Max and mean absolute pointwise difference. Grids must match.
    pub fn discrepancy(&self, other: &Field) -> Result<(f64, f64)> {
        if self.radii != other.radii || self.angles != other.angles {
            return Err(Error::schema("grid", "fields are sampled on different grids"));
        }
        let diffs = self.values.iter().zip(&other.values).map(|(a, b)| (a - b).abs());
        let (max, sum) = diffs.fold((0.0f64, 0.0), |(m, s), d| (m.max(d), s + d));
        Ok((max, sum / self.values.len() as f64))
    }

    /// CSV text: a `# solver_tag: <tag>` line, the `r,phi,u` header, then one
    /// row per point, radii outer, 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(64 * self.values.len() + 64);
        let _ = writeln!(out, "# solver_tag: {}", self.solver_tag);
        out.push_str("r,phi,u\n");
        for (i, &r) in self.radii.iter().enumerate() {
            for (j, &phi) in self.angles.iter().enumerate() {
                let _ = writeln!(out, "{r:.16e},{phi:.16e},{:.16e}", self.get(i, j));
            }
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Field> {
        let mut lines = text.lines();
        let tag = lines
            .next()
            .and_then(|l| l.strip_prefix("# solver_tag:"))
            .ok_or_else(|| Error::schema("solver_tag", "missing `# solver_tag:` line"))?
            .trim()
            .to_string();
        match lines.next() {
            Some("r,phi,u") => {}
            _ => return Err(Error::schema("header", "expected `r,phi,u`")),
        }
        let mut rows = Vec::new();
        for (k, line) in lines.enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            let cols: Vec<f64> = line
                .split(',')
                .map(|c| c.trim().parse::<f64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::schema("row", format!("row {k}: {e}")))?;
            if cols.len() != 3 {
                return Err(Error::schema("row", format!("row {k}: expected 3 columns, got {}", cols.len())));
            }
            rows.push((cols[0], cols[1], cols[2]));
        }
        let mut radii: Vec<f64> = Vec::new();
        for &(r, _, _) in &rows {
            if radii.last() != Some(&r) {
                radii.push(r);
            }
        }
        if radii.is_empty() || rows.len() % radii.len() != 0 {
            return Err(Error::schema("row", "rows do not form a radii × angles grid"));
        }
        let m = rows.len() / radii.len();
        let angles: Vec<f64> = rows[..m].iter().map(|&(_, phi, _)| phi).collect();
        for (k, &(r, phi, _)) in rows.iter().enumerate() {
            if r != radii[k / m] || phi != angles[k % m] {
                return Err(Error::schema("row", format!("row {k} breaks the radii-outer grid order")));
            }
        }
        Ok(Field { radii, angles, values: rows.iter().map(|&(_, _, u)| u).collect(), solver_tag: tag })
    }

    pub fn read_csv(path: &Path) -> Result<Field> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path.display().to_string(), e))?;
        Field::from_csv(&text)
    }
}

/// Oracle field on a grid inside the annulus.
pub fn solve_cauchy_oracle(data: &CauchyData, annulus: &Annulus, grid: &PolarGrid) -> Result<Field> {
    grid.check_inside(annulus)?;
    for &r in &grid.radii {
        check_overflow(data.max_degree(), r)?;
    }
    Field::tabulate(grid, "oracle", |p| oracle_value(data, p))
}

/// Five-point polar Laplacian
/// `u_rr + u_r/r + u_φφ/r²` with steps `dr`, `dphi`.
pub fn polar_laplacian<F>(u: F, point: PolarPoint, dr: f64, dphi: f64) -> f64
where
    F: Fn(f64, f64) -> f64,
{
    let PolarPoint { radius: r, angle: phi } = point;
    let c = u(r, phi);
    let (rp, rm) = (u(r + dr, phi), u(r - dr, phi));
    let (pp, pm) = (u(r, phi + dphi), u(r, phi - dphi));
    (rp - 2.0 * c + rm) / (dr * dr) + (rp - rm) / (2.0 * dr * r) + (pp - 2.0 * c + pm) / (r * r * dphi * dphi)
}
