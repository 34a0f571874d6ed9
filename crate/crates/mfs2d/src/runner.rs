//! File-driven experiment commands shared by the `mfs` binary and the
//! examples: single solves with optional field export, N/R convergence
//! sweeps, the disc spectral model tables, and shape/singularity reports.

use crate::bdata::BoundaryData;
use crate::config::ExperimentConfig;
use crate::csvio::{fmt_f, write_csv};
use crate::discmodel::{
    self, halt_surface, predict, predict_halt, spectrum_table, DiscDataCoeffs, Prediction,
    SpectrumModel,
};
use crate::error::{Error, Result};
use crate::geometry::{adaptive_curve, AdaptiveParams, Shape, SingularityKind};
use crate::solver::{self, ConvergenceRecord, SolveResult};
use num_complex::Complex64;
use std::path::{Path, PathBuf};

pub const SWEEP_HEADER: &str = "sweep_var,N,M,t,coeff_norm,wall_ms";

/// Output directory precedence: CLI flag, config value, MFS_OUT_DIR, ./out.
pub fn resolve_out_dir(cli: Option<&Path>, cfg_out: Option<&str>) -> PathBuf {
    if let Some(p) = cli {
        return p.to_path_buf();
    }
    if let Some(p) = cfg_out {
        return PathBuf::from(p);
    }
    if let Ok(p) = std::env::var("MFS_OUT_DIR") {
        if !p.is_empty() {
            return PathBuf::from(p);
        }
    }
    PathBuf::from("out")
}

fn sweep_row_csv(r: &solver::SweepRow) -> String {
    format!(
        "{},{},{},{},{},{}",
        fmt_f(r.var),
        r.n,
        r.m,
        fmt_f(r.t),
        fmt_f(r.coeff_norm),
        fmt_f(r.wall_ms)
    )
}

/// Single solve; writes `solve.csv` (one sweep-schema row) and optionally
/// `field.csv` on a square grid covering the domain.
pub fn cmd_solve(cfg: &ExperimentConfig, out_dir: &Path) -> Result<SolveResult> {
    let shape = cfg.build_shape()?;
    let data = cfg.build_data()?;
    let placement = cfg.build_placement()?;
    let kernel = cfg.build_kernel()?;
    let n = cfg
        .discretization
        .n
        .ok_or_else(|| Error::Config("solve needs discretization.N".into()))?;
    let k = cfg.problem.k;
    let res = solver::solve_bvp(&shape, k, &data, &placement, n, cfg.discretization.m, kernel)?;

    let meta = vec![
        ("command".to_string(), "solve".to_string()),
        ("shape".to_string(), shape.kind().id().to_string()),
        ("k".to_string(), fmt_f(k)),
        ("dof_per_wavelength".to_string(), fmt_f(res.dof_per_wavelength)),
        ("perimeter".to_string(), fmt_f(res.perimeter)),
    ];
    write_csv(
        &out_dir.join("solve.csv"),
        &meta,
        Some(&cfg.to_toml()),
        SWEEP_HEADER,
        vec![sweep_row_csv(&solver::SweepRow {
            var: res.n as f64,
            n: res.n,
            m: res.m,
            t: res.t,
            coeff_norm: res.coeff_norm,
            wall_ms: res.wall_time.as_secs_f64() * 1e3,
        })],
    )?;

    if let Some(h) = cfg.outputs.field_grid {
        write_field_csv(cfg, &shape, &res, h, out_dir)?;
    }
    println!(
        "solve: shape={} k={} N={} M={} t={:.3e} |alpha|={:.3e} wall={:.1} ms",
        shape.kind().id(),
        k,
        res.n,
        res.m,
        res.t,
        res.coeff_norm,
        res.wall_time.as_secs_f64() * 1e3
    );
    for w in &res.placement_warnings {
        eprintln!("warning: {w}");
    }
    Ok(res)
}

fn write_field_csv(
    cfg: &ExperimentConfig,
    shape: &Shape,
    res: &SolveResult,
    h: f64,
    out_dir: &Path,
) -> Result<()> {
    if !(h > 0.0) {
        return Err(Error::Config(format!("outputs.field_grid must be positive, got {h}")));
    }
    let margin = cfg.outputs.field_margin.unwrap_or(0.2);
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for p in shape.polyline() {
        x0 = x0.min(p.re);
        x1 = x1.max(p.re);
        y0 = y0.min(p.im);
        y1 = y1.max(p.im);
    }
    x0 -= margin;
    x1 += margin;
    y0 -= margin;
    y1 += margin;
    let charges = cfg.build_placement()?.build(shape, cfg.problem.k, res.n)?;
    let nx = ((x1 - x0) / h).floor() as usize + 1;
    let ny = ((y1 - y0) / h).floor() as usize + 1;
    let mut points = Vec::with_capacity(nx * ny);
    for iy in 0..ny {
        for ix in 0..nx {
            points.push(Complex64::new(x0 + ix as f64 * h, y0 + iy as f64 * h));
        }
    }
    let kernel = cfg.build_kernel()?;
    let vals = solver::evaluate_field(&res.alpha, &charges, cfg.problem.k, &points, kernel);
    let meta = vec![
        ("k".to_string(), fmt_f(cfg.problem.k)),
        ("N".to_string(), res.n.to_string()),
        ("shape".to_string(), shape.kind().id().to_string()),
        ("grid_spacing".to_string(), fmt_f(h)),
    ];
    let rows = points.iter().zip(vals.iter()).map(|(p, v)| {
        let (re, im) = match v {
            Some(u) => (u.re, u.im),
            None => (f64::NAN, f64::NAN),
        };
        format!("{},{},{},{}", fmt_f(p.re), fmt_f(p.im), fmt_f(re), fmt_f(im))
    });
    write_csv(&out_dir.join("field.csv"), &meta, Some(&cfg.to_toml()), "x,y,re_u,im_u", rows)
}

/// Convergence sweep (N_list) or growth sweep (R_list); writes `sweep.csv`.
pub fn cmd_sweep(cfg: &ExperimentConfig, out_dir: &Path) -> Result<ConvergenceRecord> {
    let shape = cfg.build_shape()?;
    let data = cfg.build_data()?;
    let placement = cfg.build_placement()?;
    let kernel = cfg.build_kernel()?;
    let k = cfg.problem.k;
    let record = if let Some(n_list) = &cfg.discretization.n_list {
        solver::sweep_n(&shape, k, &data, &placement, n_list, cfg.discretization.m, kernel)
    } else if let Some(r_list) = &cfg.discretization.r_list {
        let n = cfg
            .discretization
            .n
            .ok_or_else(|| Error::Config("an R sweep needs discretization.N".into()))?;
        solver::sweep_r(&shape, k, &data, &placement, r_list, n, cfg.discretization.m, kernel)
    } else {
        return Err(Error::Config("sweep needs discretization.N_list or R_list".into()));
    };

    let mut meta = vec![
        ("command".to_string(), "sweep".to_string()),
        ("shape".to_string(), shape.kind().id().to_string()),
        ("k".to_string(), fmt_f(k)),
    ];
    if let Some(fit) = &record.fit {
        meta.push(("t_slope".to_string(), fmt_f(fit.t_slope)));
        meta.push(("coeff_slope".to_string(), fmt_f(fit.coeff_slope)));
        meta.push(("fit_window".to_string(), format!("{}..{}", fit.window.0, fit.window.1)));
        meta.push(("t_fit_rms".to_string(), fmt_f(fit.t_fit_rms)));
    }
    for (var, msg) in &record.errors {
        meta.push(("row_error".to_string(), format!("var={var}: {msg}")));
    }
    write_csv(
        &out_dir.join("sweep.csv"),
        &meta,
        Some(&cfg.to_toml()),
        SWEEP_HEADER,
        record.rows.iter().map(sweep_row_csv),
    )?;
    if let Some(fit) = &record.fit {
        println!(
            "sweep: {} rows, t_slope={:.4}, coeff_slope={:.4} over [{}, {}]",
            record.rows.len(),
            fit.t_slope,
            fit.coeff_slope,
            fit.window.0,
            fit.window.1
        );
    } else {
        println!("sweep: {} rows (no rate fit)", record.rows.len());
    }
    Ok(record)
}

/// Arguments of the disc-model command.
#[derive(Clone, Debug)]
pub struct DiscModelArgs {
    pub k: f64,
    pub r: f64,
    /// Fundamental-data singularity radius; used when no config given.
    pub rho: Option<f64>,
    pub eps: f64,
    pub m_max: Option<usize>,
    /// Even N grid for the predicted t(N), |alpha|(N) curves.
    pub n_max: Option<usize>,
    pub rho_list: Vec<f64>,
    pub r_list: Vec<f64>,
}

/// Disc spectral tables and halting prediction; writes `spectrum.csv`,
/// `prediction.csv`, `predicted_curves.csv` and (in grid mode) `rsweep.csv`.
pub fn cmd_disc_model(
    args: &DiscModelArgs,
    data: Option<&BoundaryData>,
    out_dir: &Path,
) -> Result<Prediction> {
    let coeffs = match data {
        Some(d) => DiscDataCoeffs::from_boundary_data(d)?,
        None => {
            let rho = args
                .rho
                .ok_or_else(|| Error::Config("disc-model needs --rho or a data config".into()))?;
            DiscDataCoeffs::Fundamental { rho, phi: 0.0 }
        }
    };
    let m_max = args.m_max.unwrap_or_else(|| ((2.5 * args.k) as usize).max(400));
    let rows = spectrum_table(args.k, args.r, m_max)?;
    let meta = vec![
        ("command".to_string(), "disc-model".to_string()),
        ("k".to_string(), fmt_f(args.k)),
        ("R".to_string(), fmt_f(args.r)),
        ("eps".to_string(), fmt_f(args.eps)),
    ];
    write_csv(
        &out_dir.join("spectrum.csv"),
        &meta,
        None,
        "m,log10_abs_s_exact,log10_laplace,log10_improved,log10_uniform",
        rows.iter().map(|r| {
            format!(
                "{},{},{},{},{}",
                r.m,
                fmt_f(r.log10_abs_exact),
                fmt_f(r.log10_laplace),
                fmt_f(r.log10_improved),
                fmt_f(r.log10_uniform)
            )
        }),
    )?;

    // The halting model; uniform magnitudes keep the scan smooth through
    // the oscillatory band at high wavenumber.
    let model = SpectrumModel::Uniform;
    let pred = predict_halt(args.k, args.r, &coeffs, args.eps, model)?;
    let mut pred_meta = meta.clone();
    pred_meta.push(("N0_closed_form".to_string(), fmt_f(pred.n0_closed_form)));
    write_csv(
        &out_dir.join("prediction.csv"),
        &pred_meta,
        None,
        "rho,R,N0,log10_t0",
        vec![format!(
            "{},{},{},{}",
            fmt_f(coeffs.singularity_radius()),
            fmt_f(args.r),
            pred.n0,
            fmt_f(pred.t0.log10())
        )],
    )?;

    let n_max = args.n_max.unwrap_or(((3.0 * args.k) as usize).max(pred.n0 + 200));
    let mut curve_rows = Vec::new();
    let mut n = 2usize;
    while n <= n_max {
        let (t_pred, a_pred) = predict(n, args.k, args.r, &coeffs, model)?;
        curve_rows.push(format!("{},{},{}", n, fmt_f(t_pred), fmt_f(a_pred)));
        n += 2;
    }
    write_csv(
        &out_dir.join("predicted_curves.csv"),
        &meta,
        None,
        "N,t_pred,coeff_norm_pred",
        curve_rows,
    )?;

    if !args.rho_list.is_empty() && !args.r_list.is_empty() {
        let surf = halt_surface(args.k, &args.rho_list, &args.r_list, args.eps, model)?;
        write_csv(
            &out_dir.join("rsweep.csv"),
            &meta,
            None,
            "rho,R,N0,log10_t0",
            surf.iter().map(|r| {
                format!("{},{},{},{}", fmt_f(r.rho), fmt_f(r.r), r.n0, fmt_f(r.log10_t0))
            }),
        )?;
    }
    println!(
        "disc-model: k={} R={} rho={} eps={} -> N0={} t0={:.3e} (closed form {:.1})",
        args.k,
        args.r,
        coeffs.singularity_radius(),
        args.eps,
        pred.n0,
        pred.t0,
        pred.n0_closed_form
    );
    Ok(pred)
}

/// Geometry report: boundary polyline, singularity catalog, and (when k is
/// given) the adaptive curve profile data.
pub fn cmd_shapes(shape: &Shape, k: Option<f64>, out_dir: &Path) -> Result<()> {
    let meta = vec![
        ("command".to_string(), "shapes".to_string()),
        ("shape".to_string(), shape.kind().id().to_string()),
    ];
    let n_samp = 1024usize;
    let rows = (0..n_samp).map(|q| {
        let s = 2.0 * std::f64::consts::PI * q as f64 / n_samp as f64;
        let z = shape.boundary_point(Complex64::new(s, 0.0)).expect("boundary sample");
        format!("{},{},{}", fmt_f(s), fmt_f(z.re), fmt_f(z.im))
    });
    write_csv(&out_dir.join("boundary.csv"), &meta, None, "s,x,y", rows)?;

    let sings = shape.find_singularities()?;
    write_csv(
        &out_dir.join("singularities.csv"),
        &meta,
        None,
        "chi,tau,s_re,s_im,z_re,z_im,kind,exterior",
        sings.iter().map(|s| {
            format!(
                "{},{},{},{},{},{},{},{}",
                fmt_f(s.chi()),
                fmt_f(s.tau()),
                fmt_f(s.s_location.re),
                fmt_f(s.s_location.im),
                fmt_f(s.z_location.re),
                fmt_f(s.z_location.im),
                match s.kind {
                    SingularityKind::Pole => "pole",
                    SingularityKind::Branch => "branch",
                },
                s.exterior
            )
        }),
    )?;
    println!(
        "shapes: {} -> {} singularities ({} exterior)",
        shape.kind().id(),
        sings.len(),
        sings.iter().filter(|s| s.exterior).count()
    );

    if let Some(k) = k {
        let params = AdaptiveParams::default();
        let curve = adaptive_curve(shape, k, &sings, &params)?;
        let meta_k = {
            let mut m = meta.clone();
            m.push(("k".to_string(), fmt_f(k)));
            m.push(("dmax".to_string(), fmt_f(curve.dmax)));
            m
        };
        let rows: Result<Vec<String>> = (0..n_samp)
            .map(|q| {
                let chi = 2.0 * std::f64::consts::PI * q as f64 / n_samp as f64;
                let y = curve.y(shape, chi)?;
                let zp = shape.boundary_deriv(Complex64::new(chi, 0.0))?.norm();
                let p = curve.point(shape, chi)?;
                Ok(format!(
                    "{},{},{},{},{}",
                    fmt_f(chi),
                    fmt_f(y),
                    fmt_f(zp / curve.dmax),
                    fmt_f(p.re),
                    fmt_f(p.im)
                ))
            })
            .collect();
        write_csv(
            &out_dir.join("adaptive_curve.csv"),
            &meta_k,
            None,
            "chi,y,abs_zprime_over_dmax,curve_x,curve_y",
            rows?,
        )?;
    }
    Ok(())
}

/// Re-parse a config embedded in a result file (reproducibility hook).
pub fn config_from_result(path: &Path) -> Result<ExperimentConfig> {
    let cfg = crate::csvio::embedded_config(path)?
        .ok_or_else(|| Error::Config(format!("no embedded config in {}", path.display())))?;
    ExperimentConfig::from_toml(&cfg)
}

/// Predicted curves for a disc configuration, as (N, t_pred, alpha_pred)
/// triples; shared by tests and examples.
pub fn predicted_curves(
    k: f64,
    r: f64,
    data: &DiscDataCoeffs,
    n_list: &[usize],
    model: SpectrumModel,
) -> Result<Vec<(usize, f64, f64)>> {
    n_list
        .iter()
        .map(|&n| discmodel::predict(n, k, r, data, model).map(|(t, a)| (n, t, a)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::ExperimentConfig;

    const CFG: &str = r#"
[problem]
k = 8.0

[shape]
kind = "disc"

[data]
data = "fundamental"
source_re = 1.2

[placement]
strategy = "disc-circle"
R = 1.5

[discretization]
N = 40
M = 120
"#;

    #[test]
    fn solve_writes_reproducible_csv() {
        let dir = std::env::temp_dir().join("mfs2d-runner-solve");
        std::fs::remove_dir_all(&dir).ok();
        let cfg = ExperimentConfig::from_toml(CFG).unwrap();
        let res = cmd_solve(&cfg, &dir).unwrap();
        assert!(res.t.is_finite() && res.t > 0.0);
        // round-trip: the embedded config reproduces t
        let cfg2 = config_from_result(&dir.join("solve.csv")).unwrap();
        let res2 = cmd_solve(&cfg2, &dir).unwrap();
        assert!((res.t - res2.t).abs() <= 1e-12 * res.t);
        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn determinism_modulo_wall_time() {
        let dir_a = std::env::temp_dir().join("mfs2d-runner-det-a");
        let dir_b = std::env::temp_dir().join("mfs2d-runner-det-b");
        std::fs::remove_dir_all(&dir_a).ok();
        std::fs::remove_dir_all(&dir_b).ok();
        let mut cfg = ExperimentConfig::from_toml(CFG).unwrap();
        cfg.discretization.n = None;
        cfg.discretization.n_list = Some(vec![16, 24, 32, 40, 48]);
        cmd_sweep(&cfg, &dir_a).unwrap();
        cmd_sweep(&cfg, &dir_b).unwrap();
        let strip = |p: &Path| -> Vec<String> {
            std::fs::read_to_string(p)
                .unwrap()
                .lines()
                .map(|l| {
                    // drop the wall_ms column (last) from data rows
                    if l.starts_with('#') || l.starts_with("sweep_var") {
                        l.to_string()
                    } else {
                        l.rsplit_once(',').map(|(a, _)| a.to_string()).unwrap_or(l.to_string())
                    }
                })
                .collect()
        };
        assert_eq!(strip(&dir_a.join("sweep.csv")), strip(&dir_b.join("sweep.csv")));
        std::fs::remove_dir_all(&dir_a).ok();
        std::fs::remove_dir_all(&dir_b).ok();
    }
}
