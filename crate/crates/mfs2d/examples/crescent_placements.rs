//! The concavity problem on the crescent at k = 3 with constant data:
//! charge points equispaced in conformal angle on the annular curve at
//! R = sqrt(rho), the same curve with arclength spacing, and the
//! singularity-adapted curve. The adapted curve reaches t ~ 1e-13 with a
//! fifth of the basis size the annular curves need.
//!
//! Run: cargo run --release --example crescent_placements

use mfs2d::bdata::BoundaryData;
use mfs2d::csvio::{fmt_f, write_csv};
use mfs2d::geometry::{Shape, Spacing};
use mfs2d::runner::resolve_out_dir;
use mfs2d::solver::{sweep_n, ConvergenceRecord, Kernel, Placement};

fn main() -> mfs2d::Result<()> {
    let out = resolve_out_dir(None, None).join("crescent_placements");
    let shape = Shape::crescent(0.1, 0.9)?;
    let data = BoundaryData::constant_one();
    let k = 3.0;
    let r_conf = (1.0f64 / 0.9).sqrt(); // sqrt of the singularity radius

    let annular_ns: Vec<usize> = (100..=700).step_by(50).collect();
    let adaptive_ns: Vec<usize> = (40..=200).step_by(20).collect();

    let cases: [(&str, Placement, &[usize]); 3] = [
        (
            "conformal_angle",
            Placement::Annular { r: r_conf, spacing: Spacing::ConformalAngle },
            &annular_ns,
        ),
        ("arclength", Placement::Annular { r: r_conf, spacing: Spacing::Arclength }, &annular_ns),
        ("adaptive", Placement::Adaptive(Default::default()), &adaptive_ns),
    ];
    for (name, placement, ns) in cases {
        let rec: ConvergenceRecord =
            sweep_n(&shape, k, &data, &placement, ns, None, Kernel::Hankel1);
        let reach = rec.rows.iter().find(|r| r.t <= 1e-12).map(|r| r.n);
        println!("{name}: first N with t <= 1e-12: {reach:?}");
        write_csv(
            &out.join(format!("{name}.csv")),
            &[("placement".into(), name.into()), ("k".into(), fmt_f(k))],
            None,
            "sweep_var,N,M,t,coeff_norm,wall_ms",
            rec.rows.iter().map(|r| {
                format!(
                    "{},{},{},{},{},{}",
                    fmt_f(r.var),
                    r.n,
                    r.m,
                    fmt_f(r.t),
                    fmt_f(r.coeff_norm),
                    fmt_f(r.wall_ms)
                )
            }),
        )?;
    }
    println!("wrote {}", out.display());
    Ok(())
}
