//! Location and classification of Schwarz-function singularities.
//!
//! For a parametrization f(w) with w = e^{is}, the continuation of an
//! interior solution develops singularities at
//!
//! - reflections w* = 1/conj(p) of parametrization poles p inside the unit
//!   circle (pole type), and
//! - critical points of f (roots of df/dw; branch type). Exterior-side
//!   roots give exterior branch points directly; interior-side critical
//!   values are reported too, flagged interior.
//!
//! Only entries with `exterior = true` matter for the interior problem.

use super::{LaurentRational, Shape};
use crate::error::{Error, Result};
use num_complex::Complex64;

/// One singularity of the Schwarz function / analytic continuation.
#[derive(Clone, Debug)]
pub struct Singularity {
    /// Annular-coordinate location chi - i tau (tau > 0 for exterior side).
    pub s_location: Complex64,
    /// Physical location Z(s_location).
    pub z_location: Complex64,
    pub kind: SingularityKind,
    /// True when z_location lies outside the closed boundary curve.
    pub exterior: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SingularityKind {
    Pole,
    Branch,
}

impl Singularity {
    /// Real part of the s-plane location.
    pub fn chi(&self) -> f64 {
        self.s_location.re
    }

    /// Distance from the real axis in the s-plane (positive outside).
    pub fn tau(&self) -> f64 {
        -self.s_location.im
    }
}

/// s = -i Log w with the angle folded to [0, 2pi).
fn s_of_w(w: Complex64) -> Complex64 {
    let chi = w.arg().rem_euclid(2.0 * std::f64::consts::PI);
    Complex64::new(chi, -w.norm().ln())
}

pub(super) fn find(shape: &Shape) -> Result<Vec<Singularity>> {
    let form = shape.form();
    let mut out = Vec::new();

    // Reflected interior poles (skip w = 0, whose reflection is at infinity).
    for p in form.poles() {
        let r = p.norm();
        if r > 1e-12 && r < 1.0 {
            let w_star = 1.0 / p.conj();
            let z = form.eval(w_star)?;
            out.push(Singularity {
                s_location: s_of_w(w_star),
                z_location: z,
                kind: SingularityKind::Pole,
                exterior: shape.is_exterior(z),
            });
        }
    }

    // Critical points of the map: roots of f'(w) (denominator cleared).
    let poly = derivative_numerator(form);
    let roots = polynomial_roots(&poly)?;
    for w in roots {
        let r = w.norm();
        if !(1e-6..=1e3).contains(&r) {
            continue; // artifacts of denominator clearing
        }
        if form.poles().iter().any(|p| (w - p).norm() < 1e-8) {
            continue;
        }
        // Confirm on f' itself; clearing can introduce spurious roots.
        let fp = form.deriv(w)?;
        if fp.norm() > 1e-6 {
            continue;
        }
        let z = form.eval(w)?;
        out.push(Singularity {
            s_location: s_of_w(w),
            z_location: z,
            kind: SingularityKind::Branch,
            exterior: shape.is_exterior(z),
        });
    }

    out.sort_by(|a, b| a.chi().total_cmp(&b.chi()));
    Ok(out)
}

/// Coefficients (ascending powers) of f'(w) with all denominators cleared:
/// `P(w) = f'(w) * w^shift * prod_j (w + a_j)^2`.
fn derivative_numerator(form: &LaurentRational) -> Vec<Complex64> {
    // Laurent part of f': sum n c_n w^{n-1}
    let mut min_exp = 0i32;
    for &(n, c) in &form.laurent {
        if n != 0 && c.norm() > 0.0 {
            min_exp = min_exp.min(n - 1);
        }
    }
    let shift = (-min_exp) as usize;

    // prod (w + a_j)^2 and the partial products without the j-th factor
    let mut denom = vec![Complex64::new(1.0, 0.0)];
    for &(_, a) in &form.rational {
        let f = [a * a, 2.0 * a, Complex64::new(1.0, 0.0)]; // (w+a)^2
        denom = poly_mul(&denom, &f);
    }

    // Laurent-part contribution: sum n c_n w^{n-1+shift} * denom
    let mut lp = vec![Complex64::new(0.0, 0.0); 1];
    for &(n, c) in &form.laurent {
        if n == 0 || c.norm() == 0.0 {
            continue;
        }
        let pow = (n - 1 + shift as i32) as usize;
        if lp.len() <= pow {
            lp.resize(pow + 1, Complex64::new(0.0, 0.0));
        }
        lp[pow] += c * n as f64;
    }
    let mut total = poly_mul(&lp, &denom);

    // Rational-part contribution: -c_j w^shift * prod_{i != j} (w + a_i)^2
    for (j, &(c, _)) in form.rational.iter().enumerate() {
        let mut partial = vec![Complex64::new(1.0, 0.0)];
        for (i, &(_, ai)) in form.rational.iter().enumerate() {
            if i != j {
                partial = poly_mul(&partial, &[ai * ai, 2.0 * ai, Complex64::new(1.0, 0.0)]);
            }
        }
        let mut shifted = vec![Complex64::new(0.0, 0.0); shift];
        shifted.push(Complex64::new(1.0, 0.0)); // w^shift
        partial = poly_mul(&partial, &shifted);
        let neg_c = -c;
        for (t, v) in partial.iter().enumerate() {
            if total.len() <= t {
                total.resize(t + 1, Complex64::new(0.0, 0.0));
            }
            total[t] += neg_c * v;
        }
    }
    total
}

fn poly_mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// All roots of a dense complex polynomial by Durand-Kerner iteration.
fn polynomial_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    // Trim negligible leading (high-power) coefficients.
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return Ok(Vec::new());
    }
    let mut c: Vec<Complex64> = coeffs.to_vec();
    while c.len() > 1 && c.last().unwrap().norm() < 1e-14 * scale {
        c.pop();
    }
    // Factor out exact powers of w (roots at zero are clearing artifacts).
    let mut low = 0usize;
    while low < c.len() && c[low].norm() < 1e-14 * scale {
        low += 1;
    }
    let c = &c[low..];
    let deg = c.len() - 1;
    if deg == 0 {
        return Ok(Vec::new());
    }
    let lead = c[deg];
    let monic: Vec<Complex64> = c.iter().map(|v| v / lead).collect();

    // Start on a slightly irrational circle to break symmetry.
    let radius = 1.0
        + monic[..deg]
            .iter()
            .map(|v| v.norm())
            .fold(0.0, f64::max);
    let mut roots: Vec<Complex64> = (0..deg)
        .map(|q| {
            Complex64::from_polar(
                radius.min(4.0),
                2.0 * std::f64::consts::PI * q as f64 / deg as f64 + 0.35,
            )
        })
        .collect();

    let eval = |z: Complex64| -> Complex64 {
        let mut v = Complex64::new(0.0, 0.0);
        for &cf in monic.iter().rev() {
            v = v * z + cf;
        }
        v
    };

    let mut converged = false;
    for _ in 0..600 {
        let mut max_move = 0.0f64;
        for q in 0..deg {
            let mut denom = Complex64::new(1.0, 0.0);
            for r in 0..deg {
                if r != q {
                    denom *= roots[q] - roots[r];
                }
            }
            if denom.norm() < 1e-290 {
                continue;
            }
            let delta = eval(roots[q]) / denom;
            roots[q] -= delta;
            max_move = max_move.max(delta.norm() / (1.0 + roots[q].norm()));
        }
        if max_move < 1e-14 {
            converged = true;
            break;
        }
    }
    if !converged {
        // Multiple roots converge slowly; accept any root whose residual is
        // tiny and report the rest.
        let bad: Vec<String> = roots
            .iter()
            .filter(|&&z| eval(z).norm() > 1e-8 * (1.0 + z.norm().powi(deg as i32)))
            .map(|z| format!("{z}"))
            .collect();
        if !bad.is_empty() {
            return Err(Error::NonConvergence(format!(
                "root search did not settle; unresolved candidates: {}",
                bad.join(", ")
            )));
        }
    }
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Shape;

    #[test]
    fn disc_has_no_singularities() {
        assert!(Shape::disc().find_singularities().unwrap().is_empty());
    }

    #[test]
    fn rounded_triangle_has_no_exterior_singularities() {
        let sings = Shape::rounded_triangle(0.3).unwrap().find_singularities().unwrap();
        assert!(sings.iter().all(|s| !s.exterior), "{sings:?}");
        // but it does have the three interior critical points
        assert_eq!(sings.iter().filter(|s| s.kind == SingularityKind::Branch).count(), 3);
    }

    #[test]
    fn crescent_reflected_pole() {
        let cr = Shape::crescent(0.1, 0.9).unwrap();
        let sings = cr.find_singularities().unwrap();
        let ext: Vec<_> = sings.iter().filter(|s| s.exterior).collect();
        assert_eq!(ext.len(), 1, "{sings:?}");
        let s = ext[0];
        assert_eq!(s.kind, SingularityKind::Pole);
        // s-plane: chi = pi, tau = ln(1/a4)
        assert!((s.chi() - std::f64::consts::PI).abs() < 1e-10);
        assert!((s.tau() - (1.0f64 / 0.9).ln()).abs() < 1e-10);
        // z = Z(s) with w = -1/a4
        let w = Complex64::new(-1.0 / 0.9, 0.0);
        let want = w - 0.1 / (w + 0.9);
        assert!((s.z_location - want).norm() < 1e-10);
        // interior branch points exist and are flagged interior
        assert!(sings
            .iter()
            .filter(|s| s.kind == SingularityKind::Branch)
            .all(|s| !s.exterior));
    }

    #[test]
    fn inverted_ellipse_branch_points() {
        let ie = Shape::inverted_ellipse(0.25).unwrap();
        let sings = ie.find_singularities().unwrap();
        let ext: Vec<_> = sings.iter().filter(|s| s.exterior).collect();
        // roots of 1 - a2 w^2 = 0 at w = +-2, critical values z = +-1
        assert_eq!(ext.len(), 2, "{sings:?}");
        for s in ext {
            assert_eq!(s.kind, SingularityKind::Branch);
            assert!((s.z_location.norm() - 1.0).abs() < 1e-9);
            assert!(s.z_location.im.abs() < 1e-9);
            assert!((s.tau() - 2.0f64.ln()).abs() < 1e-9);
        }
    }

    #[test]
    fn generalized_crescent_three_exterior_poles() {
        let gc = Shape::generalized_crescent(
            Complex64::new(0.9, 0.0),
            Complex64::new(-0.8, -0.2),
            Complex64::new(-0.2, 0.5),
        )
        .unwrap();
        let sings = gc.find_singularities().unwrap();
        // Exterior-side singularities (tau > 0) that drive the adaptive
        // curve: exactly the three reflected poles. Interior-side critical
        // points may map to z outside the nonconvex boundary; those carry
        // tau < 0 and are not curve terms.
        let ext: Vec<_> = sings.iter().filter(|s| s.exterior && s.tau() > 0.0).collect();
        assert_eq!(ext.len(), 3, "{sings:?}");
        assert!(ext.iter().all(|s| s.kind == SingularityKind::Pole));
        let mut taus: Vec<f64> = ext.iter().map(|s| s.tau()).collect();
        taus.sort_by(f64::total_cmp);
        let mut want = [
            (1.0f64 / 0.9).ln(),
            (1.0 / Complex64::new(-0.8, -0.2).norm()).ln(),
            (1.0 / Complex64::new(-0.2, 0.5).norm()).ln(),
        ];
        want.sort_by(f64::total_cmp);
        for (a, b) in taus.iter().zip(want.iter()) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn pentafoil_five_exterior_branches_close_to_boundary() {
        let star = Shape::radial_star(0.3, 5).unwrap();
        let sings = star.find_singularities().unwrap();
        let ext: Vec<_> = sings.iter().filter(|s| s.exterior).collect();
        assert_eq!(ext.len(), 5, "{sings:?}");
        for s in &ext {
            assert_eq!(s.kind, SingularityKind::Branch);
            // |w| = (-v2)^(1/5) with v2 from 0.9 v^2 + v - 0.6 = 0
            assert!((s.tau() - 1.54315f64.powf(0.2).ln()).abs() < 1e-4);
        }
    }

    #[test]
    fn residual_invariant_z_equals_z_of_s() {
        for shape in [
            Shape::crescent(0.1, 0.9).unwrap(),
            Shape::inverted_ellipse(0.25).unwrap(),
            Shape::radial_star(0.3, 5).unwrap(),
        ] {
            for s in shape.find_singularities().unwrap() {
                let z = shape.boundary_point(s.s_location).unwrap();
                assert!((z - s.z_location).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn pole_blowup_on_approach() {
        // |Z| grows monotonically approaching the crescent pole radially.
        let cr = Shape::crescent(0.1, 0.9).unwrap();
        let w_pole = Complex64::new(-0.9, 0.0);
        let mut prev = 0.0;
        for &eps in &[1e-2, 1e-4, 1e-6, 1e-8] {
            let w = w_pole * (1.0 + eps);
            let z = cr.form().eval(w).unwrap();
            assert!(z.norm() > prev);
            prev = z.norm();
        }
        assert!(prev > 1e6);
    }
}
