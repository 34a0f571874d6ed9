//! Property tests of the cross-cutting invariants: reflection formulas,
//! the Wronskian identity, log-scaled consistency, Parseval's identity for
//! the discrete Fourier pair, boundary reflection as an involution, and
//! Fourier self-consistency of the data analysis.

use mfs2d::bdata::{fourier_coeffs, BoundaryData};
use mfs2d::discmodel::{diagonal_solve, iter_window, DiscDataCoeffs};
use mfs2d::geometry::Shape;
use mfs2d::specialfn::{bessel_j, bessel_j_log, bessel_y, bessel_y_log, iax};
use num_complex::Complex64;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bessel_reflection(m in -50i64..=50, x in 0.1f64..100.0) {
        let sign = if m.rem_euclid(2) == 1 { -1.0 } else { 1.0 };
        prop_assert_eq!(bessel_j(-m, x).unwrap(), sign * bessel_j(m, x).unwrap());
        prop_assert_eq!(bessel_y(-m, x).unwrap(), sign * bessel_y(m, x).unwrap());
    }

    #[test]
    fn bessel_wronskian(m in 0i64..=100, x in 0.5f64..200.0) {
        let lhs = bessel_j(m + 1, x).unwrap() * bessel_y(m, x).unwrap()
            - bessel_j(m, x).unwrap() * bessel_y(m + 1, x).unwrap();
        let rhs = 2.0 / (std::f64::consts::PI * x);
        prop_assert!(((lhs - rhs) / rhs).abs() < 1e-10, "lhs {lhs} rhs {rhs}");
    }

    #[test]
    fn log_scaled_consistency(m in 0u64..=120, x in 0.2f64..150.0) {
        let dj = bessel_j(m as i64, x).unwrap();
        if dj.abs() > 1e-280 {
            let lj = bessel_j_log(m, x).unwrap().to_f64();
            prop_assert!(((lj - dj) / dj).abs() < 1e-11);
        }
        let dy = bessel_y(m as i64, x).unwrap();
        if dy.is_finite() && dy.abs() > 1e-280 {
            let ly = bessel_y_log(m, x).unwrap().to_f64();
            prop_assert!(((ly - dy) / dy).abs() < 1e-11);
        }
    }

    #[test]
    fn turning_integral_monotone(a in 1.0f64..2000.0, f1 in 0.01f64..1.0, f2 in 0.01f64..1.0) {
        let x1 = a * f1.min(f2);
        let x2 = a * f1.max(f2);
        prop_assume!(x1 < x2);
        let i1 = iax(a, x1).unwrap();
        let i2 = iax(a, x2).unwrap();
        prop_assert!(i1 < i2, "I_a not increasing: {i1} vs {i2}");
        prop_assert!(i2 <= 1e-12);
    }

    #[test]
    fn reflection_involution_near_boundary(
        s in 0.0f64..std::f64::consts::TAU,
        off_param in 0.002f64..0.02,
    ) {
        // Perturb along the outward normal by a fraction of the local
        // analyticity strip (the crescent's interior branch points sit at
        // strip depth 0.047, so parameter offsets must stay well inside
        // that; plain z-space offsets cross the branch cut where |Z'| is
        // small and the reflection is genuinely multivalued there). Seed
        // Newton with the known parameter.
        let shape = Shape::crescent(0.1, 0.9).unwrap();
        let sc = Complex64::new(s, 0.0);
        let zb = shape.boundary_point(sc).unwrap();
        let tangent = shape.boundary_deriv(sc).unwrap();
        let normal = -Complex64::i() * tangent / tangent.norm();
        let z = zb + normal * (off_param * tangent.norm());
        let r = shape.reflect(z, sc).unwrap();
        let back = shape.reflect(r, sc).unwrap();
        prop_assert!((back - z).norm() < 1e-8 * (1.0 + z.norm()));
        // boundary points are fixed points
        let fixed = shape.reflect(zb, sc).unwrap();
        prop_assert!((fixed - zb).norm() < 1e-9);
    }

    #[test]
    fn fft_band_is_resolution_independent(rho in 1.1f64..3.0, k in 0.5f64..12.0) {
        let data = BoundaryData::Fundamental { source: Complex64::new(rho, 0.0) };
        let a = fourier_coeffs(&data, k, 1024).unwrap();
        let b = fourier_coeffs(&data, k, 2048).unwrap();
        for m in (-(a.m_safe())..=a.m_safe()).step_by(16) {
            prop_assert!((a.coeff(m) - b.coeff(m)).norm() < 1e-12);
        }
    }
}

#[test]
fn disc_growth_onset_brackets_the_data_singularity() {
    // R sweep at fixed N on the disc with source data at rho = 1.2:
    // |alpha| stays flat while the charge circle is inside the singularity
    // and turns exponential beyond it; the onset sits in [0.95, 1.2] rho.
    use mfs2d::solver::{sweep_r, Kernel, Placement};
    let shape = Shape::disc();
    let data = BoundaryData::Fundamental { source: Complex64::new(1.2, 0.0) };
    let grid: Vec<f64> = (0..=14).map(|q| 1.02 + 0.035 * q as f64).collect();
    let rec = sweep_r(
        &shape,
        8.0,
        &data,
        &Placement::DiscCircle { r: 1.2 },
        &grid,
        200,
        None,
        Kernel::Hankel1,
    );
    assert!(rec.errors.is_empty(), "{:?}", rec.errors);
    let base = rec.rows[0].coeff_norm;
    let onset = rec
        .rows
        .iter()
        .find(|r| r.coeff_norm > 30.0 * base)
        .map(|r| r.var)
        .expect("growth must switch on inside the grid");
    assert!(
        (0.95 * 1.2..=1.2 * 1.2).contains(&onset),
        "onset at R = {onset}, outside [0.95, 1.2] x rho"
    );
    // flat below the singularity radius
    let below: Vec<f64> =
        rec.rows.iter().filter(|r| r.var < 1.14).map(|r| r.coeff_norm).collect();
    let spread = below.iter().fold(0.0f64, |a, &b| a.max(b))
        / below.iter().fold(f64::INFINITY, |a, &b| a.min(b));
    assert!(spread < 10.0, "|alpha| not flat below rho: spread {spread}");
}

#[test]
fn high_k_prediction_is_flat_then_falls() {
    // t_pred stays O(1) until the semiclassical threshold N = 2k, then
    // decays steeply.
    use mfs2d::discmodel::{predict, SpectrumModel};
    let data = DiscDataCoeffs::Fundamental { rho: 1.1, phi: 0.0 };
    let (t800, _) = predict(800, 500.0, 1.2, &data, SpectrumModel::Uniform).unwrap();
    let (t990, _) = predict(990, 500.0, 1.2, &data, SpectrumModel::Uniform).unwrap();
    let (t1150, _) = predict(1150, 500.0, 1.2, &data, SpectrumModel::Uniform).unwrap();
    assert!(t800 > 1e-4 && t990 > 1e-4, "prediction fell before 2k: {t800:.2e}, {t990:.2e}");
    assert!(t1150 < 1e-8 * t990, "prediction did not fall after 2k: {t1150:.2e}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn parseval_for_diagonal_solve(n in 4usize..=64, rho in 1.5f64..4.0) {
        let n = n * 2;
        let data = DiscDataCoeffs::Fundamental { rho, phi: 0.3 };
        let sol = diagonal_solve(n, 5.0, 1.4, &data).unwrap();
        let alpha = sol.alpha().unwrap();
        // |alpha|^2 = N |alpha_hat|^2
        let direct: f64 = alpha.iter().map(|a| a.norm_sqr()).sum();
        let hat: f64 = iter_window(n).map(|m| sol.alpha_hat(m).abs_f64().powi(2)).sum();
        prop_assert!((direct - n as f64 * hat).abs() < 1e-12 * direct.max(1e-30));
        prop_assert!((direct.sqrt() - sol.coeff_norm_f64()).abs() < 1e-12 * direct.sqrt());
    }
}
