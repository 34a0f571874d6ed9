//! Dirichlet boundary data with known analytic-continuation singularities.
//!
//! Three families cover the experiments: a constant, a single real-valued
//! fundamental solution `-(1/4) Y_0(k |z - z0|)` sourced outside the
//! domain, and the harmonic pole `Re (z - z0)^{-n}`. For the unit disc the
//! Fourier coefficients are available by FFT of boundary samples; the
//! solver consumes pointwise evaluation on other shapes.

use crate::error::{Error, Result};
use crate::specialfn;
use num_complex::Complex64;
use rustfft::FftPlanner;

/// Dirichlet data v on the boundary.
#[derive(Clone, Debug, PartialEq)]
pub enum BoundaryData {
    Constant(Complex64),
    /// v(z) = -(1/4) Y_0(k |z - source|); the wavenumber comes in at
    /// evaluation time.
    Fundamental { source: Complex64 },
    /// v(z) = Re (z - location)^{-order}.
    Pole { order: u32, location: Complex64 },
}

impl BoundaryData {
    pub fn constant_one() -> Self {
        BoundaryData::Constant(Complex64::new(1.0, 0.0))
    }

    /// Location of the data singularity, if any.
    pub fn singularity(&self) -> Option<Complex64> {
        match self {
            BoundaryData::Constant(_) => None,
            BoundaryData::Fundamental { source } => Some(*source),
            BoundaryData::Pole { location, .. } => Some(*location),
        }
    }

    /// Radius of the closest singularity of the analytic continuation on
    /// the unit disc: |z0|, or infinity for entire data.
    pub fn singularity_radius(&self) -> f64 {
        self.singularity().map(|z| z.norm()).unwrap_or(f64::INFINITY)
    }

    /// Evaluate v at a point. The fundamental form uses k; others ignore it.
    pub fn evaluate(&self, z: Complex64, k: f64) -> Result<Complex64> {
        match self {
            BoundaryData::Constant(c) => Ok(*c),
            BoundaryData::Fundamental { source } => {
                let r = (z - source).norm();
                if r == 0.0 {
                    return Err(Error::Domain("evaluation at the data source point".into()));
                }
                let y0 = specialfn::bessel_y(0, k * r)?;
                Ok(Complex64::new(-0.25 * y0, 0.0))
            }
            BoundaryData::Pole { order, location } => {
                let d = z - location;
                if d.norm() == 0.0 {
                    return Err(Error::Domain("evaluation at the data pole".into()));
                }
                let v = d.powi(-(*order as i32));
                Ok(Complex64::new(v.re, 0.0))
            }
        }
    }

    /// True when the exact field of the data source solves the Helmholtz
    /// equation, so it can serve as an interior reference solution. Only
    /// the fundamental form qualifies; the pole form is harmonic, not a
    /// Helmholtz solution, and the constant has no closed-form interior
    /// field.
    pub fn exact_interior_field(&self, z: Complex64, k: f64) -> Option<Complex64> {
        match self {
            BoundaryData::Fundamental { .. } => self.evaluate(z, k).ok(),
            _ => None,
        }
    }
}

/// Fourier coefficients of the restriction of v to the unit circle,
/// indexed -m_fft/2 < m <= m_fft/2.
#[derive(Clone, Debug)]
pub struct FourierCoeffs {
    coeffs: Vec<Complex64>,
    m_fft: usize,
}

impl FourierCoeffs {
    /// v_hat(m); zero outside the computed band.
    pub fn coeff(&self, m: i64) -> Complex64 {
        let half = (self.m_fft / 2) as i64;
        if m <= -half || m > half {
            return Complex64::new(0.0, 0.0);
        }
        let idx = m.rem_euclid(self.m_fft as i64) as usize;
        self.coeffs[idx]
    }

    /// Largest |m| free of aliasing contamination at the chosen resolution
    /// (quarter-band rule).
    pub fn m_safe(&self) -> i64 {
        (self.m_fft / 4) as i64
    }

    pub fn m_fft(&self) -> usize {
        self.m_fft
    }
}

/// FFT Fourier analysis of v on the unit circle with `m_fft` samples
/// (power of two; 4096 is the usual choice).
pub fn fourier_coeffs(data: &BoundaryData, k: f64, m_fft: usize) -> Result<FourierCoeffs> {
    if !m_fft.is_power_of_two() || m_fft < 8 {
        return Err(Error::Config(format!("m_fft must be a power of two >= 8, got {m_fft}")));
    }
    if let Some(z0) = data.singularity() {
        if (z0.norm() - 1.0).abs() < 1e-12 {
            return Err(Error::Domain(
                "data singularity lies on the unit circle; Fourier analysis undefined".into(),
            ));
        }
    }
    let mut buf: Vec<Complex64> = (0..m_fft)
        .map(|q| {
            let theta = 2.0 * std::f64::consts::PI * q as f64 / m_fft as f64;
            data.evaluate(Complex64::from_polar(1.0, theta), k)
        })
        .collect::<Result<_>>()?;
    FftPlanner::new().plan_fft_forward(m_fft).process(&mut buf);
    for c in &mut buf {
        *c /= m_fft as f64;
    }
    Ok(FourierCoeffs { coeffs: buf, m_fft })
}
