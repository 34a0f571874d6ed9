//! Dense collocation solve of the boundary-value problem and the
//! convergence experiment machinery.
//!
//! The M x N matrix has entries `(i/4) H_0^(1)(k |x_m - y_j|)`; rows are
//! scaled by sqrt(w_m) so the least-squares residual approximates the
//! boundary L2 norm, and the system is solved by plain (non-pivoted)
//! Householder QR. No column scaling, pivoting or truncation is applied:
//! the growth of the coefficient norm in ill-conditioned regimes is the
//! phenomenon under study, and regularizing it away would change the
//! results.

use crate::bdata::BoundaryData;
use crate::error::{Error, Result};
use crate::geometry::{
    self, AdaptiveParams, BoundaryNodes, ChargeSet, Shape, ShapeKind, Spacing,
};
use crate::specialfn;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;
use std::time::{Duration, Instant};

/// Fundamental-solution kernel of the expansion.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Kernel {
    /// (i/4) H_0^(1)(k r): never vanishes for real argument.
    Hankel1,
    /// (i/4)(Y_0 + i eta J_0)(k r), eta != 0; an alternative that also
    /// avoids spurious zeros.
    Y0Mixed { eta: f64 },
}

impl Kernel {
    pub fn eval(&self, kr: f64) -> Complex64 {
        let (j0, y0) = specialfn::j0y0(kr);
        match self {
            Kernel::Hankel1 => Complex64::new(-0.25 * y0, 0.25 * j0),
            Kernel::Y0Mixed { eta } => Complex64::new(-0.25 * eta * j0, 0.25 * y0),
        }
    }
}

/// Charge placement request resolved against a shape at solve time.
#[derive(Clone, Debug)]
pub enum Placement {
    DiscCircle { r: f64 },
    Annular { r: f64, spacing: Spacing },
    Adaptive(AdaptiveParams),
}

impl Placement {
    pub fn build(&self, shape: &Shape, k: f64, n: usize) -> Result<ChargeSet> {
        match self {
            Placement::DiscCircle { r } => {
                let cs = geometry::place_disc(n, *r)?;
                if *shape.kind() != ShapeKind::Disc {
                    // the concentric circle is only guaranteed exterior for
                    // the disc; validate elsewhere
                    for p in &cs.points {
                        if !shape.is_exterior(*p) {
                            return Err(Error::Geometry(format!(
                                "disc-circle charge at {p} is not exterior to this shape"
                            )));
                        }
                    }
                }
                Ok(cs)
            }
            Placement::Annular { r, spacing } => geometry::place_annular(shape, n, *r, *spacing),
            Placement::Adaptive(params) => geometry::place_adaptive(shape, k, n, params),
        }
    }
}

/// Default oversampling: M = max(3N/2, ceil(8k)).
pub fn default_m(n: usize, k: f64) -> usize {
    (((3 * n) as f64 / 2.0).ceil() as usize).max((8.0 * k).ceil() as usize)
}

/// Outcome of one collocation solve.
#[derive(Clone, Debug)]
pub struct SolveResult {
    pub alpha: Vec<Complex64>,
    /// Weighted boundary residual norm.
    pub t: f64,
    /// Euclidean norm |alpha|.
    pub coeff_norm: f64,
    pub n: usize,
    pub m: usize,
    /// Unweighted residual (A alpha - v) at each boundary node.
    pub residual_samples: Vec<Complex64>,
    pub wall_time: Duration,
    /// Perimeter estimate (sum of quadrature weights).
    pub perimeter: f64,
    /// Basis functions per boundary wavelength, 2 pi N / (perimeter k).
    pub dof_per_wavelength: f64,
    pub placement_warnings: Vec<String>,
}

/// Dense collocation matrix A_{mj} = kernel(k |x_m - y_j|).
pub fn assemble(
    nodes: &BoundaryNodes,
    charges: &ChargeSet,
    k: f64,
    kernel: Kernel,
) -> Result<DMatrix<Complex64>> {
    let m = nodes.len();
    let n = charges.len();
    let rows: Vec<Result<Vec<Complex64>>> = nodes
        .points
        .par_iter()
        .map(|&x| {
            let mut row = Vec::with_capacity(n);
            for &y in &charges.points {
                let r = (x - y).norm();
                if r == 0.0 {
                    return Err(Error::Geometry(format!(
                        "boundary node coincides with charge point at {x}"
                    )));
                }
                row.push(kernel.eval(k * r));
            }
            Ok(row)
        })
        .collect();
    let mut flat = Vec::with_capacity(m * n);
    for row in rows {
        flat.extend(row?);
    }
    Ok(DMatrix::from_row_slice(m, n, &flat))
}

/// Boundary data samples at the nodes.
pub fn boundary_values(
    data: &BoundaryData,
    nodes: &BoundaryNodes,
    k: f64,
) -> Result<DVector<Complex64>> {
    let vals: Vec<Complex64> =
        nodes.points.iter().map(|&x| data.evaluate(x, k)).collect::<Result<_>>()?;
    Ok(DVector::from_vec(vals))
}

/// Row-weighted least squares by plain Householder QR.
///
/// Minimizes sum_m w_m |(A alpha - v)_m|^2. Rank warnings are deliberately
/// not acted on; ill-conditioning is expected here.
pub fn least_squares(
    a: &DMatrix<Complex64>,
    v: &DVector<Complex64>,
    weights: &[f64],
) -> Result<DVector<Complex64>> {
    let (m, n) = a.shape();
    if m < n {
        return Err(Error::Numerical(format!("least squares needs M >= N, got {m} x {n}")));
    }
    if v.len() != m || weights.len() != m {
        return Err(Error::Numerical("dimension mismatch in least squares".into()));
    }
    if a.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::Numerical("matrix contains non-finite entries".into()));
    }
    let mut b = a.clone();
    let mut c = v.clone();
    for (i, &w) in weights.iter().enumerate() {
        if !(w > 0.0) || !w.is_finite() {
            return Err(Error::Numerical(format!("nonpositive quadrature weight w[{i}] = {w}")));
        }
        let s = w.sqrt();
        for j in 0..n {
            b[(i, j)] *= s;
        }
        c[i] *= s;
    }
    let qr = b.qr();
    qr.q_tr_mul(&mut c);
    let qtv = c.rows(0, n).into_owned();
    let alpha = qr
        .r()
        .solve_upper_triangular(&qtv)
        .ok_or_else(|| Error::Numerical("triangular factor is exactly singular".into()))?;
    if alpha.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::Numerical("least-squares solution is non-finite".into()));
    }
    Ok(alpha)
}

/// Weighted residual norm sqrt(sum w_m |A alpha - v|_m^2) and the raw
/// residual samples.
pub fn residual_norm(
    a: &DMatrix<Complex64>,
    alpha: &DVector<Complex64>,
    v: &DVector<Complex64>,
    weights: &[f64],
) -> (f64, Vec<Complex64>) {
    let r = a * alpha - v;
    let t2: f64 = r.iter().zip(weights.iter()).map(|(z, w)| w * z.norm_sqr()).sum();
    (t2.sqrt(), r.iter().copied().collect())
}

/// Full pipeline: nodes, charges, matrix, weighted QR solve, diagnostics.
pub fn solve_bvp(
    shape: &Shape,
    k: f64,
    data: &BoundaryData,
    placement: &Placement,
    n: usize,
    m: Option<usize>,
    kernel: Kernel,
) -> Result<SolveResult> {
    let start = Instant::now();
    let m = m.unwrap_or_else(|| default_m(n, k));
    if m < n {
        return Err(Error::Config(format!("M = {m} must be at least N = {n}")));
    }
    let nodes = shape.boundary_nodes(m)?;
    let charges = placement.build(shape, k, n)?;
    let a = assemble(&nodes, &charges, k, kernel)?;
    let v = boundary_values(data, &nodes, k)?;
    let alpha = least_squares(&a, &v, &nodes.weights)?;
    let (t, residual_samples) = residual_norm(&a, &alpha, &v, &nodes.weights);
    let coeff_norm = alpha.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let perimeter = nodes.perimeter();
    Ok(SolveResult {
        alpha: alpha.iter().copied().collect(),
        t,
        coeff_norm,
        n,
        m,
        residual_samples,
        wall_time: start.elapsed(),
        perimeter,
        dof_per_wavelength: 2.0 * std::f64::consts::PI * n as f64 / (perimeter * k),
        placement_warnings: charges.warnings.clone(),
    })
}

/// Field evaluation u(x) = (i/4) sum alpha_j H_0(k |x - y_j|); None marks
/// points coinciding with a charge.
pub fn evaluate_field(
    alpha: &[Complex64],
    charges: &ChargeSet,
    k: f64,
    points: &[Complex64],
    kernel: Kernel,
) -> Vec<Option<Complex64>> {
    points
        .par_iter()
        .map(|&x| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (&y, &a) in charges.points.iter().zip(alpha.iter()) {
                let r = (x - y).norm();
                if r == 0.0 {
                    return None;
                }
                acc += a * kernel.eval(k * r);
            }
            Some(acc)
        })
        .collect()
}

/// One row of a convergence sweep.
#[derive(Clone, Copy, Debug)]
pub struct SweepRow {
    /// Value of the sweep variable (N or R).
    pub var: f64,
    pub n: usize,
    pub m: usize,
    pub t: f64,
    pub coeff_norm: f64,
    pub wall_ms: f64,
}

/// Fitted decay/growth rates over the pre-plateau window.
#[derive(Clone, Copy, Debug)]
pub struct RateFit {
    /// d ln t / d var.
    pub t_slope: f64,
    /// d ln |alpha| / d var.
    pub coeff_slope: f64,
    /// Inclusive var range of fitted rows.
    pub window: (f64, f64),
    /// RMS deviation of ln t from the fitted line.
    pub t_fit_rms: f64,
    /// Index of the first plateau row, if a plateau was detected.
    pub plateau_start: Option<usize>,
}

/// Sweep results plus per-row failures (a failed row does not abort the
/// sweep).
#[derive(Clone, Debug)]
pub struct ConvergenceRecord {
    pub rows: Vec<SweepRow>,
    pub errors: Vec<(f64, String)>,
    pub fit: Option<RateFit>,
}

impl ConvergenceRecord {
    /// First detected plateau row.
    pub fn plateau_row(&self) -> Option<&SweepRow> {
        self.fit.as_ref().and_then(|f| f.plateau_start).map(|i| &self.rows[i])
    }

    /// Smallest t over the plateau (or over the whole sweep without one).
    pub fn plateau_t(&self) -> Option<f64> {
        let from = self.fit.as_ref().and_then(|f| f.plateau_start)?;
        self.rows[from..].iter().map(|r| r.t).min_by(f64::total_cmp)
    }
}

/// Convergence sweep over basis size N.
pub fn sweep_n(
    shape: &Shape,
    k: f64,
    data: &BoundaryData,
    placement: &Placement,
    n_list: &[usize],
    m: Option<usize>,
    kernel: Kernel,
) -> ConvergenceRecord {
    if !n_list.windows(2).all(|w| w[0] < w[1]) {
        return ConvergenceRecord {
            rows: vec![],
            errors: vec![(0.0, "N list must be strictly increasing".into())],
            fit: None,
        };
    }
    let results: Vec<(f64, Result<SolveResult>)> = n_list
        .par_iter()
        .map(|&n| (n as f64, solve_bvp(shape, k, data, placement, n, m, kernel)))
        .collect();
    collect_record(results)
}

/// Coefficient-growth sweep over the placement radius R at fixed N.
pub fn sweep_r(
    shape: &Shape,
    k: f64,
    data: &BoundaryData,
    placement: &Placement,
    r_list: &[f64],
    n: usize,
    m: Option<usize>,
    kernel: Kernel,
) -> ConvergenceRecord {
    if !r_list.windows(2).all(|w| w[0] < w[1]) {
        return ConvergenceRecord {
            rows: vec![],
            errors: vec![(0.0, "R list must be strictly increasing".into())],
            fit: None,
        };
    }
    let results: Vec<(f64, Result<SolveResult>)> = r_list
        .par_iter()
        .map(|&r| {
            let p = match placement {
                Placement::DiscCircle { .. } => Placement::DiscCircle { r },
                Placement::Annular { spacing, .. } => Placement::Annular { r, spacing: *spacing },
                Placement::Adaptive(_) => {
                    return (
                        r,
                        Err(Error::Config(
                            "R sweep is undefined for adaptive placement".into(),
                        )),
                    )
                }
            };
            (r, solve_bvp(shape, k, data, &p, n, m, kernel))
        })
        .collect();
    collect_record(results)
}

fn collect_record(results: Vec<(f64, Result<SolveResult>)>) -> ConvergenceRecord {
    let mut rows = Vec::new();
    let mut errors = Vec::new();
    for (var, res) in results {
        match res {
            Ok(s) => rows.push(SweepRow {
                var,
                n: s.n,
                m: s.m,
                t: s.t,
                coeff_norm: s.coeff_norm,
                wall_ms: s.wall_time.as_secs_f64() * 1e3,
            }),
            Err(e) => errors.push((var, e.to_string())),
        }
    }
    let fit = fit_rate(&rows).ok();
    ConvergenceRecord { rows, errors, fit }
}

/// First row index where three consecutive improvements fall below 3%.
pub fn detect_plateau(ts: &[f64]) -> Option<usize> {
    if ts.len() < 4 {
        return None;
    }
    for p in 1..=(ts.len() - 3) {
        let stalled = (0..3).all(|o| {
            let a = ts[p + o - 1];
            let b = ts[p + o];
            (a - b) / a < 0.03
        });
        if stalled {
            return Some(p);
        }
    }
    None
}

/// Least-squares line fit of ln t (and ln |alpha|) against the sweep
/// variable over the pre-plateau window.
pub fn fit_rate(rows: &[SweepRow]) -> Result<RateFit> {
    fit_rate_from(rows, f64::NEG_INFINITY)
}

/// As [`fit_rate`] but ignoring rows with var below `var_min`.
pub fn fit_rate_from(rows: &[SweepRow], var_min: f64) -> Result<RateFit> {
    let ts: Vec<f64> = rows.iter().map(|r| r.t).collect();
    let plateau = detect_plateau(&ts);
    let end = plateau.unwrap_or(rows.len());
    let window: Vec<&SweepRow> =
        rows[..end].iter().filter(|r| r.var >= var_min).collect();
    if window.len() < 4 {
        return Err(Error::NonConvergence(format!(
            "rate fit needs at least 4 pre-plateau rows, have {}",
            window.len()
        )));
    }
    let (t_slope, t_rms) = line_fit(&window, |r| r.t.ln());
    let (c_slope, _) = line_fit(&window, |r| r.coeff_norm.ln());
    Ok(RateFit {
        t_slope,
        coeff_slope: c_slope,
        window: (window[0].var, window[window.len() - 1].var),
        t_fit_rms: t_rms,
        plateau_start: plateau,
    })
}

fn line_fit(rows: &[&SweepRow], f: impl Fn(&SweepRow) -> f64) -> (f64, f64) {
    let n = rows.len() as f64;
    let sx: f64 = rows.iter().map(|r| r.var).sum();
    let sy: f64 = rows.iter().map(|r| f(r)).sum();
    let sxx: f64 = rows.iter().map(|r| r.var * r.var).sum();
    let sxy: f64 = rows.iter().map(|r| r.var * f(r)).sum();
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    let icpt = (sy - slope * sx) / n;
    let rms = (rows.iter().map(|r| (f(r) - slope * r.var - icpt).powi(2)).sum::<f64>() / n).sqrt();
    (slope, rms)
}
