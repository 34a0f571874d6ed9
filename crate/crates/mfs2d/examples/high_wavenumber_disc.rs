//! The k = 500 disc experiment: no convergence until the semiclassical
//! basis size N = 2k, then a drop of ten orders of magnitude within ~150
//! further degrees of freedom, halting near machine precision. The
//! model curves predicted from the uniform eigenvalue magnitudes are
//! written alongside the measured sweep.
//!
//! Takes a few minutes on one core.
//! Run: cargo run --release --example high_wavenumber_disc

use mfs2d::bdata::BoundaryData;
use mfs2d::csvio::{fmt_f, write_csv};
use mfs2d::discmodel::{predict, predict_halt, DiscDataCoeffs, SpectrumModel};
use mfs2d::geometry::Shape;
use mfs2d::runner::resolve_out_dir;
use mfs2d::solver::{sweep_n, Kernel, Placement};
use num_complex::Complex64;

fn main() -> mfs2d::Result<()> {
    let out = resolve_out_dir(None, None).join("high_wavenumber_disc");
    let (k, rho, r, m) = (500.0, 1.1, 1.2, 1500);
    let shape = Shape::disc();
    let data = BoundaryData::Fundamental { source: Complex64::new(rho, 0.0) };
    let coeffs = DiscDataCoeffs::Fundamental { rho, phi: 0.0 };

    let n_list: Vec<usize> = (600..=1300).step_by(50).collect();
    let rec = sweep_n(&shape, k, &data, &Placement::DiscCircle { r }, &n_list, Some(m), Kernel::Hankel1);
    for row in &rec.rows {
        let (tp, ap) = predict(row.n, k, r, &coeffs, SpectrumModel::Uniform)?;
        println!(
            "N={:4}  t={:.3e} (pred {:.1e})   |alpha|={:.3e} (pred {:.1e})",
            row.n, row.t, tp, row.coeff_norm, ap
        );
    }
    let pred = predict_halt(k, r, &coeffs, 1e-16, SpectrumModel::Uniform)?;
    println!("halting model: N0 = {}, t0 = {:.2e}", pred.n0, pred.t0);

    let rows: Vec<String> = rec
        .rows
        .iter()
        .map(|row| {
            let (tp, ap) = predict(row.n, k, r, &coeffs, SpectrumModel::Uniform).unwrap();
            format!("{},{},{},{},{}", row.n, fmt_f(row.t), fmt_f(row.coeff_norm), fmt_f(tp), fmt_f(ap))
        })
        .collect();
    write_csv(
        &out.join("sweep_with_predictions.csv"),
        &[("k".into(), fmt_f(k)), ("rho".into(), fmt_f(rho)), ("R".into(), fmt_f(r))],
        None,
        "N,t,coeff_norm,t_pred,coeff_norm_pred",
        rows,
    )?;
    println!("wrote {}", out.display());
    Ok(())
}
