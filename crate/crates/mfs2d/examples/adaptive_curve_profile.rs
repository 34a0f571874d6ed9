//! The s-plane profile of the singularity-adapted charge curve on the
//! generalized crescent, at k = 3 and k = 100. At low wavenumber the
//! depth y(chi) is limited only near the three pole singularities; at
//! high wavenumber the |Z'(chi)|/dmax term caps the physical distance at
//! about four wavelengths everywhere. Singularity catalogs and boundary
//! polylines are emitted through the shapes report.
//!
//! Run: cargo run --release --example adaptive_curve_profile

use mfs2d::geometry::Shape;
use mfs2d::runner::{cmd_shapes, resolve_out_dir};
use num_complex::Complex64;

fn main() -> mfs2d::Result<()> {
    let out = resolve_out_dir(None, None).join("adaptive_curve_profile");
    let gc = Shape::generalized_crescent(
        Complex64::new(0.9, 0.0),
        Complex64::new(-0.8, -0.2),
        Complex64::new(-0.2, 0.5),
    )?;
    for k in [3.0, 100.0] {
        let dir = out.join(format!("k{k}"));
        cmd_shapes(&gc, Some(k), &dir)?;
    }
    // catalog reports for the other domains (no curve, just singularities)
    for shape in [
        Shape::disc(),
        Shape::rounded_triangle(0.3)?,
        Shape::inverted_ellipse(0.25)?,
        Shape::crescent(0.1, 0.9)?,
        Shape::radial_star(0.3, 5)?,
    ] {
        cmd_shapes(&shape, None, &out.join(shape.kind().id()))?;
    }
    println!("wrote {}", out.display());
    Ok(())
}
