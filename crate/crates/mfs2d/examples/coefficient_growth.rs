//! Coefficient norm against the placement radius R at fixed N, for the
//! disc and the three catalog shapes with constant data. Growth switches
//! on only when the charge curve passes the nearest exterior singularity
//! of the analytic continuation; the rounded triangle (entire
//! continuation) never grows.
//!
//! Run: cargo run --release --example coefficient_growth

use mfs2d::bdata::BoundaryData;
use mfs2d::csvio::{fmt_f, write_csv};
use mfs2d::geometry::{Shape, Spacing};
use mfs2d::runner::resolve_out_dir;
use mfs2d::solver::{sweep_r, Kernel, Placement};
use num_complex::Complex64;

fn main() -> mfs2d::Result<()> {
    let out = resolve_out_dir(None, None).join("coefficient_growth");
    let k = 5.0;
    let grid: Vec<f64> = (0..=18).map(|q| 1.02 + 0.03 * q as f64).collect();

    // unit disc with fundamental data at rho = 1.2 (singularity in the data)
    let disc = Shape::disc();
    let vfund = BoundaryData::Fundamental { source: Complex64::new(1.2, 0.0) };
    let rec = sweep_r(&disc, k, &vfund, &Placement::DiscCircle { r: 1.2 }, &grid, 200, None, Kernel::Hankel1);
    report(&out, "disc", &rec)?;

    // shapes with v = 1 (singularities from the boundary reflection)
    let cases: [(&str, Shape, usize); 3] = [
        ("rounded-triangle", Shape::rounded_triangle(0.3)?, 200),
        ("inverted-ellipse", Shape::inverted_ellipse(0.25)?, 200),
        ("crescent", Shape::crescent(0.1, 0.9)?, 400),
    ];
    let ones = BoundaryData::constant_one();
    for (name, shape, n) in cases {
        let rmax = (shape.strip_limit().exp() - 1e-3).min(1.56);
        let grid: Vec<f64> = (0..)
            .map(|q| 1.02 + 0.03 * q as f64)
            .take_while(|&r| r <= rmax)
            .collect();
        let rec = sweep_r(
            &shape,
            k,
            &ones,
            &Placement::Annular { r: 1.1, spacing: Spacing::ConformalAngle },
            &grid,
            n,
            None,
            Kernel::Hankel1,
        );
        report(&out, name, &rec)?;
    }
    println!("wrote {}", out.display());
    Ok(())
}

fn report(out: &std::path::Path, name: &str, rec: &mfs2d::solver::ConvergenceRecord) -> mfs2d::Result<()> {
    let base = rec.rows.first().map(|r| r.coeff_norm).unwrap_or(f64::NAN);
    let top = rec.rows.last().map(|r| r.coeff_norm).unwrap_or(f64::NAN);
    println!("{name}: |alpha| grows {:.2e} x across the R grid", top / base);
    for (var, err) in &rec.errors {
        println!("  {name}: row R={var} failed: {err}");
    }
    write_csv(
        &out.join(format!("rsweep_{name}.csv")),
        &[("shape".into(), name.into())],
        None,
        "sweep_var,N,M,t,coeff_norm,wall_ms",
        rec.rows.iter().map(|r| {
            format!("{},{},{},{},{},{}", fmt_f(r.var), r.n, r.m, fmt_f(r.t), fmt_f(r.coeff_norm), fmt_f(r.wall_ms))
        }),
    )
}
