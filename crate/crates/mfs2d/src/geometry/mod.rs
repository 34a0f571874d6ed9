//! Analytic boundary curves and charge-point placement.
//!
//! Every catalog shape is a finite Laurent polynomial plus simple rational
//! terms in `w = e^{is}`:
//!
//! ```text
//! Z(s) = f(e^{is}),   f(w) = sum_n c_n w^n + sum_j c_j / (w + a_j)
//! ```
//!
//! which extends `Z` to complex parameter `s = chi - i tau` (the annular
//! coordinate; `tau > 0` is the exterior side, `|w| = e^tau`). The same
//! form drives exact derivatives, Newton inversion, Schwarz reflection and
//! closed-form singularity location.

mod placement;
mod singularities;

pub use placement::{
    adaptive_curve, place_adaptive, place_annular, place_disc, AdaptiveCurve, AdaptiveParams,
    BoundaryNodes, ChargeSet, PlacementStrategy, Spacing,
};
pub use singularities::{Singularity, SingularityKind};

use crate::error::{Error, Result};
use num_complex::Complex64;

const POLYLINE_SAMPLES: usize = 4096;
const BOUNDARY_TOL: f64 = 1e-9;

/// Laurent-plus-rational form of the parametrization in `w = e^{is}`.
#[derive(Clone, Debug)]
pub struct LaurentRational {
    /// (exponent, coefficient) pairs of the Laurent part.
    pub laurent: Vec<(i32, Complex64)>,
    /// (c, a) pairs for terms c / (w + a).
    pub rational: Vec<(Complex64, Complex64)>,
}

impl LaurentRational {
    fn eval(&self, w: Complex64) -> Result<Complex64> {
        let mut z = Complex64::new(0.0, 0.0);
        for &(n, c) in &self.laurent {
            z += c * w.powi(n);
        }
        for &(c, a) in &self.rational {
            let d = w + a;
            if d.norm() < 1e-13 * (1.0 + w.norm()) {
                return Err(Error::Geometry(format!(
                    "evaluation at a pole of the parametrization (w = {w})"
                )));
            }
            z += c / d;
        }
        Ok(z)
    }

    /// df/dw.
    fn deriv(&self, w: Complex64) -> Result<Complex64> {
        let mut z = Complex64::new(0.0, 0.0);
        for &(n, c) in &self.laurent {
            if n != 0 {
                z += c * n as f64 * w.powi(n - 1);
            }
        }
        for &(c, a) in &self.rational {
            let d = w + a;
            if d.norm() < 1e-13 * (1.0 + w.norm()) {
                return Err(Error::Geometry(format!(
                    "derivative at a pole of the parametrization (w = {w})"
                )));
            }
            z -= c / (d * d);
        }
        Ok(z)
    }

    /// Finite poles of f (locations w = -a).
    pub fn poles(&self) -> Vec<Complex64> {
        self.rational.iter().map(|&(_, a)| -a).collect()
    }
}

/// Catalog identifier for a boundary shape.
#[derive(Clone, Debug, PartialEq)]
pub enum ShapeKind {
    Disc,
    RoundedTriangle { a1: f64 },
    InvertedEllipse { a2: f64 },
    Crescent { a3: f64, a4: f64 },
    GeneralizedCrescent { a5: Complex64, a6: Complex64, a7: Complex64 },
    RadialStar { amplitude: f64, frequency: u32 },
    CustomLaurent,
}

impl ShapeKind {
    pub fn id(&self) -> &'static str {
        match self {
            ShapeKind::Disc => "disc",
            ShapeKind::RoundedTriangle { .. } => "rounded-triangle",
            ShapeKind::InvertedEllipse { .. } => "inverted-ellipse",
            ShapeKind::Crescent { .. } => "crescent",
            ShapeKind::GeneralizedCrescent { .. } => "generalized-crescent",
            ShapeKind::RadialStar { .. } => "radial-star",
            ShapeKind::CustomLaurent => "custom-laurent",
        }
    }
}

/// An analytic Jordan boundary with complex-parameter extension.
#[derive(Clone, Debug)]
pub struct Shape {
    kind: ShapeKind,
    form: LaurentRational,
    polyline: Vec<Complex64>,
}

impl Shape {
    pub fn disc() -> Shape {
        Self::build(
            ShapeKind::Disc,
            LaurentRational { laurent: vec![(1, Complex64::new(1.0, 0.0))], rational: vec![] },
        )
        .expect("unit circle is valid")
    }

    /// Z(s) = e^{is} + a1 e^{-2is}; default a1 = 0.3.
    pub fn rounded_triangle(a1: f64) -> Result<Shape> {
        Self::build(
            ShapeKind::RoundedTriangle { a1 },
            LaurentRational {
                laurent: vec![(1, 1.0.into()), (-2, Complex64::new(a1, 0.0))],
                rational: vec![],
            },
        )
    }

    /// Z(s) = e^{is} / (1 + a2 e^{2is}); default a2 = 0.25.
    ///
    /// Expanded in partial fractions with poles at w = +-i/sqrt(a2).
    pub fn inverted_ellipse(a2: f64) -> Result<Shape> {
        if a2 <= 0.0 || a2 >= 1.0 {
            return Err(Error::Geometry(format!("inverted ellipse needs 0 < a2 < 1, got {a2}")));
        }
        let p = Complex64::new(0.0, 1.0 / a2.sqrt()); // i/sqrt(a2)
        let c = Complex64::new(1.0 / (2.0 * a2), 0.0);
        Self::build(
            ShapeKind::InvertedEllipse { a2 },
            LaurentRational { laurent: vec![], rational: vec![(c, -p), (c, p)] },
        )
    }

    /// Z(s) = e^{is} - a3 / (e^{is} + a4); defaults a3 = 0.1, a4 = 0.9.
    pub fn crescent(a3: f64, a4: f64) -> Result<Shape> {
        Self::build(
            ShapeKind::Crescent { a3, a4 },
            LaurentRational {
                laurent: vec![(1, 1.0.into())],
                rational: vec![(Complex64::new(-a3, 0.0), Complex64::new(a4, 0.0))],
            },
        )
    }

    /// Three-pole crescent with the fixed numerators -0.1, -(0.07+0.02i),
    /// 0.2; defaults a5 = 0.9, a6 = -0.8-0.2i, a7 = -0.2+0.5i.
    pub fn generalized_crescent(a5: Complex64, a6: Complex64, a7: Complex64) -> Result<Shape> {
        Self::build(
            ShapeKind::GeneralizedCrescent { a5, a6, a7 },
            LaurentRational {
                laurent: vec![(1, 1.0.into())],
                rational: vec![
                    (Complex64::new(-0.1, 0.0), a5),
                    (Complex64::new(-0.07, -0.02), a6),
                    (Complex64::new(0.2, 0.0), a7),
                ],
            },
        )
    }

    /// r(theta) = 1 + amplitude cos(frequency theta), as a Laurent
    /// polynomial; the 5-foil of the experiments is (0.3, 5).
    pub fn radial_star(amplitude: f64, frequency: u32) -> Result<Shape> {
        if !(0.0 < amplitude && amplitude < 1.0) || frequency < 2 {
            return Err(Error::Geometry(format!(
                "radial star needs 0 < amplitude < 1 and frequency >= 2, got ({amplitude}, {frequency})"
            )));
        }
        let half = Complex64::new(amplitude / 2.0, 0.0);
        let f = frequency as i32;
        Self::build(
            ShapeKind::RadialStar { amplitude, frequency },
            LaurentRational {
                laurent: vec![(1, 1.0.into()), (1 + f, half), (1 - f, half)],
                rational: vec![],
            },
        )
    }

    /// User-supplied Laurent coefficients plus optional rational terms.
    pub fn custom_laurent(form: LaurentRational) -> Result<Shape> {
        Self::build(ShapeKind::CustomLaurent, form)
    }

    fn build(kind: ShapeKind, form: LaurentRational) -> Result<Shape> {
        for p in form.poles() {
            if (p.norm() - 1.0).abs() < 1e-6 {
                return Err(Error::Geometry(format!(
                    "parametrization pole at |w| = {:.6} sits on the unit circle",
                    p.norm()
                )));
            }
        }
        let mut shape = Shape { kind, form, polyline: Vec::new() };
        let mut poly = Vec::with_capacity(POLYLINE_SAMPLES);
        let mut min_deriv = f64::INFINITY;
        for q in 0..POLYLINE_SAMPLES {
            let s = 2.0 * std::f64::consts::PI * q as f64 / POLYLINE_SAMPLES as f64;
            let w = Complex64::from_polar(1.0, s);
            poly.push(shape.form.eval(w)?);
            min_deriv = min_deriv.min((Complex64::i() * w * shape.form.deriv(w)?).norm());
        }
        if min_deriv < 1e-9 {
            return Err(Error::Geometry(
                "boundary derivative vanishes on [0, 2pi]; parametrization is singular".into(),
            ));
        }
        shape.polyline = poly;
        Ok(shape)
    }

    pub fn kind(&self) -> &ShapeKind {
        &self.kind
    }

    pub(crate) fn form(&self) -> &LaurentRational {
        &self.form
    }

    /// Dense boundary polyline used for winding and distance queries.
    pub fn polyline(&self) -> &[Complex64] {
        &self.polyline
    }

    /// Z(s) for complex parameter s.
    pub fn boundary_point(&self, s: Complex64) -> Result<Complex64> {
        self.form.eval((Complex64::i() * s).exp())
    }

    /// dZ/ds for complex parameter s.
    pub fn boundary_deriv(&self, s: Complex64) -> Result<Complex64> {
        let w = (Complex64::i() * s).exp();
        Ok(Complex64::i() * w * self.form.deriv(w)?)
    }

    /// Equispaced-parameter quadrature nodes with arclength weights
    /// w_m = (2 pi / M) |Z'(s_m)|.
    pub fn boundary_nodes(&self, m: usize) -> Result<BoundaryNodes> {
        if m < 8 {
            return Err(Error::Geometry(format!("need at least 8 boundary nodes, got {m}")));
        }
        let mut points = Vec::with_capacity(m);
        let mut params = Vec::with_capacity(m);
        let mut weights = Vec::with_capacity(m);
        let h = 2.0 * std::f64::consts::PI / m as f64;
        for q in 0..m {
            let s = h * q as f64;
            let sc = Complex64::new(s, 0.0);
            points.push(self.boundary_point(sc)?);
            weights.push(h * self.boundary_deriv(sc)?.norm());
            params.push(s);
        }
        Ok(BoundaryNodes { points, params, weights })
    }

    /// Newton inversion of Z: find s with Z(s) = z, started at `s_guess`.
    pub fn invert_parametrization(&self, z: Complex64, s_guess: Complex64) -> Result<Complex64> {
        let mut s = s_guess;
        let tol = 1e-12 * (1.0 + z.norm());
        for _ in 0..50 {
            let f = self.boundary_point(s)? - z;
            if f.norm() <= tol {
                return Ok(s);
            }
            let d = self.boundary_deriv(s)?;
            if d.norm() < 1e-300 {
                return Err(Error::NonConvergence(
                    "parametrization derivative vanished during inversion".into(),
                ));
            }
            s -= f / d;
        }
        let f = self.boundary_point(s)? - z;
        if f.norm() <= tol {
            Ok(s)
        } else {
            Err(Error::NonConvergence(format!(
                "inversion of z = {z} did not converge within 50 Newton steps (residual {:.3e})",
                f.norm()
            )))
        }
    }

    /// Parameter of the closest boundary sample; a cheap inversion guess.
    pub fn nearest_parameter(&self, z: Complex64) -> f64 {
        let mut best = 0usize;
        let mut best_d = f64::INFINITY;
        for (q, p) in self.polyline.iter().enumerate() {
            let d = (p - z).norm_sqr();
            if d < best_d {
                best_d = d;
                best = q;
            }
        }
        2.0 * std::f64::consts::PI * best as f64 / self.polyline.len() as f64
    }

    /// Schwarz function G(z) = conj(Z(conj(S(z)))).
    pub fn schwarz(&self, z: Complex64, s_guess: Complex64) -> Result<Complex64> {
        let s = self.invert_parametrization(z, s_guess)?;
        Ok(self.boundary_point(s.conj())?.conj())
    }

    /// Reflection of z across the boundary: conj(G(z)) = Z(conj(S(z))).
    pub fn reflect(&self, z: Complex64, s_guess: Complex64) -> Result<Complex64> {
        let s = self.invert_parametrization(z, s_guess)?;
        self.boundary_point(s.conj())
    }

    /// Winding-number location of a point relative to the boundary.
    pub fn locate(&self, z: Complex64) -> PointLocation {
        if self.distance_to_boundary(z) < BOUNDARY_TOL {
            return PointLocation::NearBoundary;
        }
        if winding_number(&self.polyline, z) == 0 {
            PointLocation::Exterior
        } else {
            PointLocation::Interior
        }
    }

    /// True iff z lies strictly outside the closed boundary curve.
    /// Points within 1e-9 of the polyline count as not exterior.
    pub fn is_exterior(&self, z: Complex64) -> bool {
        matches!(self.locate(z), PointLocation::Exterior)
    }

    /// Distance from z to the boundary polyline.
    pub fn distance_to_boundary(&self, z: Complex64) -> f64 {
        let n = self.polyline.len();
        let mut best = f64::INFINITY;
        for q in 0..n {
            let a = self.polyline[q];
            let b = self.polyline[(q + 1) % n];
            best = best.min(segment_distance(a, b, z));
        }
        best
    }

    /// Schwarz-function singularities of the analytic continuation:
    /// reflections of interior parametrization poles and critical points of
    /// the map, each classified interior/exterior.
    pub fn find_singularities(&self) -> Result<Vec<Singularity>> {
        singularities::find(self)
    }

    /// Exterior clearance of the annular coordinate: the smallest `ln |p|`
    /// over parametrization poles with |p| > 1 (curves must stay below it),
    /// or +inf when the extension is entire outside.
    pub fn strip_limit(&self) -> f64 {
        self.form
            .poles()
            .iter()
            .map(|p| p.norm())
            .filter(|&r| r > 1.0)
            .map(|r| r.ln())
            .fold(f64::INFINITY, f64::min)
    }

    /// Perimeter from the dense polyline.
    pub fn perimeter(&self) -> f64 {
        let n = self.polyline.len();
        (0..n).map(|q| (self.polyline[(q + 1) % n] - self.polyline[q]).norm()).sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointLocation {
    Interior,
    Exterior,
    /// Within 1e-9 of the boundary polyline: classification is ambiguous.
    NearBoundary,
}

fn winding_number(poly: &[Complex64], z: Complex64) -> i32 {
    let mut wn = 0i32;
    let n = poly.len();
    for q in 0..n {
        let p = poly[q];
        let r = poly[(q + 1) % n];
        if p.im <= z.im {
            if r.im > z.im && cross(r - p, z - p) > 0.0 {
                wn += 1;
            }
        } else if r.im <= z.im && cross(r - p, z - p) < 0.0 {
            wn -= 1;
        }
    }
    wn
}

fn cross(a: Complex64, b: Complex64) -> f64 {
    a.re * b.im - a.im * b.re
}

fn segment_distance(a: Complex64, b: Complex64, z: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (z - a).norm();
    }
    let t = (((z - a).re * ab.re + (z - a).im * ab.im) / len2).clamp(0.0, 1.0);
    (z - (a + ab * t)).norm()
}

/// Shared charge-point sanity check: all strictly exterior, clear of the
/// boundary by more than 1e-6.
pub(crate) fn validate_exterior_points(shape: &Shape, points: &[Complex64]) -> Result<()> {
    for (j, &y) in points.iter().enumerate() {
        if !shape.is_exterior(y) {
            return Err(Error::Geometry(format!(
                "charge point {j} at {y} is not exterior to the boundary"
            )));
        }
        let d = shape.distance_to_boundary(y);
        if d <= 1e-6 {
            return Err(Error::Geometry(format!(
                "charge point {j} at {y} is only {d:.2e} from the boundary"
            )));
        }
    }
    Ok(())
}

/// Segment-intersection scan of a closed polyline.
pub(crate) fn self_intersects(poly: &[Complex64]) -> bool {
    let n = poly.len();
    for i in 0..n {
        let a1 = poly[i];
        let a2 = poly[(i + 1) % n];
        for j in (i + 2)..n {
            if i == 0 && j == n - 1 {
                continue; // shared endpoint with the closing segment
            }
            let b1 = poly[j];
            let b2 = poly[(j + 1) % n];
            if segments_cross(a1, a2, b1, b2) {
                return true;
            }
        }
    }
    false
}

fn segments_cross(a1: Complex64, a2: Complex64, b1: Complex64, b2: Complex64) -> bool {
    let d1 = cross(a2 - a1, b1 - a1);
    let d2 = cross(a2 - a1, b2 - a1);
    let d3 = cross(b2 - b1, a1 - b1);
    let d4 = cross(b2 - b1, a2 - b1);
    (d1 * d2 < 0.0) && (d3 * d4 < 0.0)
}
