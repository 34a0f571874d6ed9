//! Predicted minimum achievable error t0 and halting basis size N0 over a
//! grid of data radii rho and charge radii R at k = 500. The N0 curves for
//! different rho coincide (halting is set by the eigenvalue decay alone),
//! while t0 improves as R approaches rho from above.
//!
//! Run: cargo run --release --example halting_surface

use mfs2d::discmodel::{halt_surface, SpectrumModel};
use mfs2d::csvio::{fmt_f, write_csv};
use mfs2d::runner::resolve_out_dir;

fn main() -> mfs2d::Result<()> {
    let out = resolve_out_dir(None, None).join("halting_surface");
    let k = 500.0;
    let rhos = [1.002, 1.005, 1.01, 1.02, 1.05, 1.1];
    let rs: Vec<f64> = (0..=40).map(|q| 1.01 + 0.01 * q as f64).collect();
    let rows = halt_surface(k, &rhos, &rs, 1e-16, SpectrumModel::Uniform)?;
    write_csv(
        &out.join("rsweep.csv"),
        &[("k".into(), fmt_f(k)), ("eps".into(), fmt_f(1e-16))],
        None,
        "rho,R,N0,log10_t0",
        rows.iter()
            .map(|r| format!("{},{},{},{}", fmt_f(r.rho), fmt_f(r.r), r.n0, fmt_f(r.log10_t0))),
    )?;
    for rho in rhos {
        let best = rows
            .iter()
            .filter(|r| r.rho == rho)
            .min_by(|a, b| a.log10_t0.total_cmp(&b.log10_t0))
            .unwrap();
        println!(
            "rho={rho}: best log10 t0 = {:.2} at R = {:.2} (N0 = {})",
            best.log10_t0, best.r, best.n0
        );
    }
    println!("wrote {}", out.display());
    Ok(())
}
