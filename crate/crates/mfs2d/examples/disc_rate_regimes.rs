//! Convergence of the disc problem at k = 8 in the three rate regimes.
//!
//! Charges sit on R = 1.5; the data is a single exterior fundamental
//! solution at radius rho in {3.0, 1.8, 1.2}, giving the alias-limited,
//! data-limited, and growing-coefficient regimes. Writes one sweep CSV per
//! regime and prints the fitted rates next to the asymptotic ones.
//!
//! Run: cargo run --release --example disc_rate_regimes

use mfs2d::bdata::BoundaryData;
use mfs2d::discmodel::rate_regime;
use mfs2d::geometry::Shape;
use mfs2d::runner::resolve_out_dir;
use mfs2d::solver::{sweep_n, Kernel, Placement};
use mfs2d::csvio::{fmt_f, write_csv};
use num_complex::Complex64;

fn main() -> mfs2d::Result<()> {
    let out = resolve_out_dir(None, None).join("disc_rate_regimes");
    let shape = Shape::disc();
    let placement = Placement::DiscCircle { r: 1.5 };
    for (rho, n_max) in [(3.0, 140usize), (1.8, 164), (1.2, 236)] {
        let data = BoundaryData::Fundamental { source: Complex64::new(rho, 0.0) };
        let n_list: Vec<usize> = (20..=n_max).step_by(8).collect();
        let rec = sweep_n(&shape, 8.0, &data, &placement, &n_list, Some(240), Kernel::Hankel1);
        let regime = rate_regime(rho, 1.5)?;
        // fit over rows clearly above the rounding plateau
        let tmin = rec.rows.iter().map(|r| r.t).fold(f64::INFINITY, f64::min);
        let pre: Vec<_> = rec.rows.iter().filter(|r| r.t > 10.0 * tmin).collect();
        let n = pre.len() as f64;
        let sx: f64 = pre.iter().map(|r| r.var).sum();
        let sy: f64 = pre.iter().map(|r| r.t.ln()).sum();
        let sxx: f64 = pre.iter().map(|r| r.var * r.var).sum();
        let sxy: f64 = pre.iter().map(|r| r.var * r.t.ln()).sum();
        let fitted = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        println!(
            "rho = {rho}: asymptotic slope {:+.4} per unit N, pre-plateau fit {fitted:+.4}, plateau t ~ {tmin:.1e}, growth: {}",
            -(1.0f64 / regime.rate_base).ln(),
            regime.coeff_growth
        );
        write_csv(
            &out.join(format!("sweep_rho{rho}.csv")),
            &[("rho".into(), fmt_f(rho)), ("k".into(), fmt_f(8.0)), ("R".into(), fmt_f(1.5))],
            None,
            "sweep_var,N,M,t,coeff_norm,wall_ms",
            rec.rows.iter().map(|r| {
                format!("{},{},{},{},{},{}", fmt_f(r.var), r.n, r.m, fmt_f(r.t), fmt_f(r.coeff_norm), fmt_f(r.wall_ms))
            }),
        )?;
    }
    println!("wrote {}", out.display());
    Ok(())
}
