//! The finite-precision halting model on one configuration: where does
//! convergence stop, and at what error? Compares the model against a
//! measured sweep at k = 8, rho = 1.2, R = 1.5 (the growing-coefficient
//! regime, where roundoff ends convergence long before machine epsilon).
//!
//! Run: cargo run --release --example halting_prediction

use mfs2d::bdata::BoundaryData;
use mfs2d::discmodel::{predict, predict_halt, DiscDataCoeffs, SpectrumModel};
use mfs2d::geometry::Shape;
use mfs2d::solver::{sweep_n, Kernel, Placement};
use num_complex::Complex64;

fn main() -> mfs2d::Result<()> {
    let (k, rho, r) = (8.0, 1.2, 1.5);
    let coeffs = DiscDataCoeffs::Fundamental { rho, phi: 0.0 };
    let pred = predict_halt(k, r, &coeffs, 1e-16, SpectrumModel::Uniform)?;
    println!(
        "model: halting at N0 = {} (closed form {:.0}), exact-arithmetic t there {:.2e}",
        pred.n0, pred.n0_closed_form, pred.t0
    );

    let shape = Shape::disc();
    let data = BoundaryData::Fundamental { source: Complex64::new(rho, 0.0) };
    let n_list: Vec<usize> = (20..=220).step_by(16).collect();
    let rec = sweep_n(&shape, k, &data, &Placement::DiscCircle { r }, &n_list, Some(240), Kernel::Hankel1);
    println!("measured sweep (t against the mode-by-mode prediction):");
    for row in &rec.rows {
        let (tp, ap) = predict(row.n, k, r, &coeffs, SpectrumModel::Exact)?;
        println!(
            "  N={:3}  t={:.3e} (model {:.1e})  |alpha|={:.3e} (model {:.1e})",
            row.n, row.t, tp, row.coeff_norm, ap
        );
    }
    let tmin = rec.rows.iter().map(|x| x.t).fold(f64::INFINITY, f64::min);
    println!("measured floor: {tmin:.2e}; ratio to |alpha| there ~ machine epsilon");
    Ok(())
}
