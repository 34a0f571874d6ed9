//! Spectral analysis of the MFS on the unit disc and the finite-precision
//! halting model.
//!
//! With charges equispaced on a circle of radius R > 1, the single-layer
//! operator is diagonal in the Fourier basis with eigenvalues
//!
//! ```text
//! s_hat(m) = (i pi / 2) H_m^(1)(kR) J_m(k)
//! ```
//!
//! The discrete N-point source set maps Fourier coefficient alpha_hat to
//! boundary frequencies through the aliased matrix
//! `q_{mj} = (N / 2 pi) s_hat(m) delta_N(m - j)`, so the least-squares
//! problem splits into independent scalar problems and both the achievable
//! error and the coefficient growth follow from the decay of `s_hat`
//! against the decay of the data coefficients `v_hat`.
//!
//! Everything here is formed in log space; plain numbers appear only at
//! the final prediction step.

use crate::bdata::BoundaryData;
use crate::error::{Error, Result};
use crate::specialfn::{
    self, bessel_j_log, bessel_y_log, turning_window, wkbj_h_log, wkbj_j_log, LogScaled,
    TurningPointData, UniformRegime,
};
use num_complex::Complex64;

/// Exact layer-potential eigenvalue s_hat(m) = (i pi/2) H_m(kR) J_m(k),
/// log-scaled. Even in m by the reflection formulas.
pub fn s_hat(m: i64, k: f64, r: f64) -> Result<LogScaled> {
    if k <= 0.0 || r <= 1.0 {
        return Err(Error::Domain(format!("s_hat requires k > 0, R > 1 (k={k}, R={r})")));
    }
    let ma = m.unsigned_abs();
    let j = bessel_j_log(ma, k)?;
    let h = specialfn::hankel1_log(ma as i64, k * r)?;
    Ok(half_pi_i() * h * j)
}

fn half_pi_i() -> LogScaled {
    LogScaled::new((std::f64::consts::PI / 2.0).ln(), Complex64::new(0.0, 1.0))
}

/// Leading large-order / small-k form: (1/2|m|) R^{-|m|}.
pub fn s_hat_laplace(m: i64, r: f64) -> Result<LogScaled> {
    if m == 0 {
        return Err(Error::Domain("laplace form undefined at m = 0".into()));
    }
    if r <= 1.0 {
        return Err(Error::Domain(format!("laplace form requires R > 1, got {r}")));
    }
    let ma = m.unsigned_abs() as f64;
    Ok(LogScaled::new_real(-(2.0 * ma).ln() - ma * r.ln(), false))
}

/// Improved large-order form: (1/2|m|) R^{-|m|} e^{k^2 (R^2-1) / 4|m|}.
pub fn s_hat_improved(m: i64, k: f64, r: f64) -> Result<LogScaled> {
    let base = s_hat_laplace(m, r)?;
    let ma = m.unsigned_abs() as f64;
    let corr = k * k * (r * r - 1.0) / (4.0 * ma);
    Ok(LogScaled::new_real(base.log_mag() + corr, false))
}

/// Uniform WKBJ magnitude of s_hat across the three regimes split at the
/// turning points a = k and a = kR. Returns the magnitude and a flag for
/// evaluation inside a turning window (still usable as an upper bound).
pub fn s_hat_uniform(m: i64, k: f64, r: f64) -> Result<(LogScaled, bool)> {
    let ma = m.unsigned_abs();
    if ma < 1 {
        return Err(Error::Domain("uniform form requires |m| >= 1".into()));
    }
    let (j, fj) = wkbj_j_log(ma as i64, k)?;
    let (h, fh) = wkbj_h_log(ma as i64, k * r)?;
    let mag = LogScaled::new_real((std::f64::consts::PI / 2.0).ln(), false) * j * h;
    Ok((mag, fj || fh))
}

/// Regime of an order against the two turning points of the eigenvalue.
pub fn uniform_regime(m: i64, k: f64, r: f64) -> UniformRegime {
    TurningPointData::new(m, k, k * r).regime
}

/// Matrix element of the aliasing map Q: zero unless m = j (mod N), else
/// (N / 2 pi) s_hat(m).
pub fn q_element(m: i64, j: i64, n: usize, k: f64, r: f64) -> Result<LogScaled> {
    if n == 0 || !n.is_multiple_of(2) {
        return Err(Error::Domain(format!("Q is defined for even N >= 2, got {n}")));
    }
    if (m - j).rem_euclid(n as i64) != 0 {
        return Ok(LogScaled::zero());
    }
    let scale = LogScaled::from_f64(n as f64 / (2.0 * std::f64::consts::PI));
    Ok(scale * s_hat(m, k, r)?)
}

/// Fourier coefficient of the fundamental-solution data
/// v(z) = -(1/4) Y_0(k |z - rho|) on the unit circle: -(1/4) Y_m(k rho) J_m(k).
pub fn vfund_coeff(m: i64, k: f64, rho: f64) -> Result<LogScaled> {
    if rho <= 1.0 {
        return Err(Error::Domain(format!("fundamental data needs rho > 1, got {rho}")));
    }
    let ma = m.unsigned_abs();
    let y = bessel_y_log(ma, k * rho)?;
    let j = bessel_j_log(ma, k)?;
    Ok(LogScaled::from_f64(-0.25) * y * j)
}

/// Analytic disc-circle Fourier coefficients for the boundary-data catalog,
/// exact in log scale at any order.
#[derive(Clone, Debug)]
pub enum DiscDataCoeffs {
    Constant(Complex64),
    /// Source at rho e^{i phi}, rho > 1.
    Fundamental { rho: f64, phi: f64 },
    /// Pole of the given order at rho e^{i phi}, rho > 1.
    Pole { order: u32, rho: f64, phi: f64 },
    /// A single Fourier mode amp * e^{i m0 theta}.
    Mode { m0: i64, amp: Complex64 },
}

impl DiscDataCoeffs {
    pub fn from_boundary_data(data: &BoundaryData) -> Result<Self> {
        match data {
            BoundaryData::Constant(c) => Ok(DiscDataCoeffs::Constant(*c)),
            BoundaryData::Fundamental { source } => {
                let rho = source.norm();
                if rho <= 1.0 {
                    return Err(Error::Domain(format!(
                        "fundamental source must lie outside the unit disc (|z0| = {rho})"
                    )));
                }
                Ok(DiscDataCoeffs::Fundamental { rho, phi: source.arg() })
            }
            BoundaryData::Pole { order, location } => {
                let rho = location.norm();
                if rho <= 1.0 {
                    return Err(Error::Domain(format!(
                        "data pole must lie outside the unit disc (|z0| = {rho})"
                    )));
                }
                Ok(DiscDataCoeffs::Pole { order: *order, rho, phi: location.arg() })
            }
        }
    }

    /// Radius of the data singularity (infinity for entire data).
    pub fn singularity_radius(&self) -> f64 {
        match self {
            DiscDataCoeffs::Constant(_) | DiscDataCoeffs::Mode { .. } => f64::INFINITY,
            DiscDataCoeffs::Fundamental { rho, .. } | DiscDataCoeffs::Pole { rho, .. } => *rho,
        }
    }

    /// v_hat(m) in log-scaled form.
    pub fn coeff(&self, m: i64, k: f64) -> Result<LogScaled> {
        match self {
            DiscDataCoeffs::Constant(c) => {
                Ok(if m == 0 { LogScaled::from_complex(*c) } else { LogScaled::zero() })
            }
            DiscDataCoeffs::Mode { m0, amp } => {
                Ok(if m == *m0 { LogScaled::from_complex(*amp) } else { LogScaled::zero() })
            }
            DiscDataCoeffs::Fundamental { rho, phi } => {
                let base = vfund_coeff(m, k, *rho)?;
                let ph = Complex64::from_polar(1.0, -(m as f64) * phi);
                Ok(base * LogScaled::new(0.0, ph))
            }
            DiscDataCoeffs::Pole { order, rho, phi } => Ok(pole_coeff(m, *order, *rho, *phi)),
        }
    }

    /// Smooth magnitude model of |v_hat(m)|: the uniform eigenvalue form
    /// with rho substituted for R (and the 1/4 vs pi/2 prefactor), for the
    /// fundamental family; other families are already smooth in m.
    pub fn coeff_uniform_mag(&self, m: i64, k: f64) -> Result<LogScaled> {
        match self {
            DiscDataCoeffs::Fundamental { rho, .. } => {
                let (s, _) = s_hat_uniform(m, k, *rho)?;
                // |v_hat| = (1/4)|Y J| vs |s_hat| = (pi/2)|H J|: ratio 1/(2 pi)
                Ok(LogScaled::from_f64(1.0 / (2.0 * std::f64::consts::PI)) * s)
            }
            _ => Ok(self.coeff(m, k)?.abs()),
        }
    }
}

fn pole_coeff(m: i64, order: u32, rho: f64, phi: f64) -> LogScaled {
    // (z - z0)^{-n} = (-1)^n z0^{-n} sum_q C(q+n-1, n-1) (z/z0)^q; the real
    // part folds conjugate coefficients onto negative m.
    let n = order as i64;
    let q = m.abs();
    let ln_binom = specialfn_ln_gamma(q + n) - specialfn_ln_gamma(q + 1) - specialfn_ln_gamma(n);
    let half = if m == 0 { 0.0 } else { std::f64::consts::LN_2 };
    let log_mag = ln_binom - (n + q) as f64 * rho.ln() - half;
    // phase: (-1)^n e^{-i (q+n) phi}, conjugated for m < 0
    let ang = -((q + n) as f64) * phi + if n % 2 != 0 { std::f64::consts::PI } else { 0.0 };
    let ph = Complex64::from_polar(1.0, if m < 0 { -ang } else { ang });
    if m == 0 {
        // real part of f_hat(0)
        let v = log_mag.exp() * ph.re;
        LogScaled::from_f64(v)
    } else {
        LogScaled::new(log_mag, ph)
    }
}

fn specialfn_ln_gamma(n: i64) -> f64 {
    crate::specialfn::ln_gamma_int(n.max(1) as u64)
}

/// Eigenvalue table over 0..=m_max built from single recurrence sweeps.
#[derive(Clone, Debug)]
pub struct DiscSpectrum {
    pub k: f64,
    pub r: f64,
    eigen: Vec<LogScaled>,
}

impl DiscSpectrum {
    pub fn build(k: f64, r: f64, m_max: usize) -> Result<DiscSpectrum> {
        if k <= 0.0 || r <= 1.0 {
            return Err(Error::Domain(format!("spectrum requires k > 0, R > 1 (k={k}, R={r})")));
        }
        let j_k = specialfn::j_sequence_log(m_max, k);
        let j_kr = specialfn::j_sequence_log(m_max, k * r);
        let y_kr = specialfn::y_sequence_log(m_max, k * r);
        let c = half_pi_i();
        let eigen = (0..=m_max)
            .map(|m| c * j_kr[m].add(&y_kr[m].mul_i()) * j_k[m])
            .collect();
        Ok(DiscSpectrum { k, r, eigen })
    }

    pub fn m_max(&self) -> usize {
        self.eigen.len() - 1
    }

    /// s_hat(m); symmetric in m.
    pub fn eigenvalue(&self, m: i64) -> LogScaled {
        self.eigen[m.unsigned_abs() as usize]
    }
}

/// Outcome of the diagonal (mode-by-mode) solve on the disc.
#[derive(Clone, Debug)]
pub struct DiagonalSolve {
    pub n: usize,
    /// alpha_hat over -N/2 < m <= N/2, indexed by wrap.
    alpha_hat: Vec<LogScaled>,
    /// Model boundary error (aliasing + truncation tails), log-scaled.
    pub t: LogScaled,
    /// Euclidean coefficient norm |alpha| = sqrt(N) |alpha_hat|, log-scaled.
    pub coeff_norm: LogScaled,
}

impl DiagonalSolve {
    fn idx(&self, m: i64) -> usize {
        m.rem_euclid(self.n as i64) as usize
    }

    pub fn alpha_hat(&self, m: i64) -> LogScaled {
        self.alpha_hat[self.idx(m)]
    }

    pub fn t_f64(&self) -> f64 {
        self.t.abs_f64()
    }

    pub fn coeff_norm_f64(&self) -> f64 {
        self.coeff_norm.abs_f64()
    }

    /// Materialize alpha by inverse DFT; errors if any mode overflows f64.
    pub fn alpha(&self) -> Result<Vec<Complex64>> {
        let n = self.n;
        for m in iter_window(n) {
            if self.alpha_hat(m).overflows_f64() {
                return Err(Error::Numerical(format!(
                    "alpha_hat({m}) exceeds the binary64 range; keep it log-scaled"
                )));
            }
        }
        let mut alpha = Vec::with_capacity(n);
        for j in 1..=n {
            let phi = 2.0 * std::f64::consts::PI * j as f64 / n as f64;
            let mut acc = Complex64::new(0.0, 0.0);
            for m in iter_window(n) {
                acc += self.alpha_hat(m).to_complex64()
                    * Complex64::from_polar(1.0, m as f64 * phi);
            }
            alpha.push(acc);
        }
        Ok(alpha)
    }
}

/// Frequencies of the principal window -N/2 < m <= N/2.
pub fn iter_window(n: usize) -> impl Iterator<Item = i64> {
    let half = (n / 2) as i64;
    (-half + 1)..=half
}

/// Mode-by-mode solve: alpha_hat(m) = (2 pi / N) v_hat(m) / s_hat(m) inside
/// the window; the reported t gathers the aliasing overtones and the data
/// tail outside the window.
pub fn diagonal_solve(
    n: usize,
    k: f64,
    r: f64,
    data: &DiscDataCoeffs,
) -> Result<DiagonalSolve> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::Domain(format!("diagonal solve needs even N >= 2, got {n}")));
    }
    // Tail length: overtone terms decay at least like R^{-m}, so run until
    // they can no longer contribute at double precision.
    let extra = (81.0 / r.ln()).ceil() as usize + n;
    let m_hi = n / 2 + extra.max(200);
    let spec = DiscSpectrum::build(k, r, m_hi)?;

    let scale = LogScaled::from_f64(2.0 * std::f64::consts::PI / n as f64);
    let mut alpha_hat = vec![LogScaled::zero(); n];
    for m in iter_window(n) {
        let s = spec.eigenvalue(m);
        if s.is_zero() || s.log_mag() < (1e-290f64).ln() {
            return Err(Error::Resonance { m });
        }
        let v = data.coeff(m, k)?;
        alpha_hat[m.rem_euclid(n as i64) as usize] = scale * v / s;
    }
    let solve = DiagonalSolve {
        n,
        alpha_hat,
        t: LogScaled::zero(),
        coeff_norm: LogScaled::zero(),
    };

    // t^2 = 2 pi sum_{m outside window} |s_hat(m) v_hat(wrap m)/s_hat(wrap m) - v_hat(m)|^2
    let q_scale = LogScaled::from_f64(n as f64 / (2.0 * std::f64::consts::PI));
    let mut sum_sq = LogScaled::zero();
    let push = |m: i64, sum_sq: &mut LogScaled| -> Result<f64> {
        let qa = q_scale * spec.eigenvalue(m) * solve.alpha_hat(m);
        let res = qa.sub(&data.coeff(m, k)?);
        let sq = res.abs() * res.abs();
        *sum_sq = sum_sq.add(&sq);
        Ok(sq.log_mag())
    };
    // m = -N/2 sits just outside the window
    push(-(n as i64) / 2, &mut sum_sq)?;
    let mut m = n as i64 / 2 + 1;
    let mut stale = 0usize;
    while m <= m_hi as i64 {
        let a = push(m, &mut sum_sq)?;
        let b = push(-m, &mut sum_sq)?;
        let top = sum_sq.log_mag();
        if a.max(b) < top - 80.0 {
            stale += 1;
            if stale > 8 && m as f64 > k * r + 10.0 {
                break;
            }
        } else {
            stale = 0;
        }
        m += 1;
    }
    let t = LogScaled::new_real(
        0.5 * (sum_sq.log_mag() + (2.0 * std::f64::consts::PI).ln()),
        false,
    );

    // Parseval: |alpha|^2 = N |alpha_hat|^2
    let mut a2 = LogScaled::zero();
    for m in iter_window(n) {
        let a = solve.alpha_hat(m).abs();
        a2 = a2.add(&(a * a));
    }
    let coeff_norm = LogScaled::new_real(0.5 * (a2.log_mag() + (n as f64).ln()), false);

    Ok(DiagonalSolve { t, coeff_norm, ..solve })
}

/// Which eigenvalue/data model feeds the predictions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpectrumModel {
    /// Exact log-scaled eigenvalues and coefficients.
    Exact,
    /// WKBJ magnitudes for both; smooth through the oscillatory band.
    Uniform,
}

/// Order-of-magnitude predictions at basis size N:
/// t ~ |v_hat(N/2)| and |alpha| ~ max[(1/sqrt N) |v_hat/s_hat|(N/2), 1].
pub fn predict(
    n: usize,
    k: f64,
    r: f64,
    data: &DiscDataCoeffs,
    model: SpectrumModel,
) -> Result<(f64, f64)> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::Domain(format!("predict needs even N >= 2, got {n}")));
    }
    let m = (n / 2) as i64;
    let (vh, sh) = match model {
        SpectrumModel::Exact => (data.coeff(m, k)?.abs(), s_hat(m, k, r)?.abs()),
        SpectrumModel::Uniform => (data.coeff_uniform_mag(m, k)?, s_hat_uniform(m, k, r)?.0),
    };
    let t_pred = vh.abs_f64();
    let log_alpha = vh.log_mag() - sh.log_mag() - 0.5 * (n as f64).ln();
    let alpha_pred = if log_alpha <= 0.0 { 1.0 } else { log_alpha.exp() };
    Ok((t_pred, alpha_pred.max(1.0)))
}

/// Halting prediction: the basis size where convergence stops and the
/// error level there.
#[derive(Clone, Copy, Debug)]
pub struct Prediction {
    /// Halting basis size (even).
    pub n0: usize,
    /// Predicted minimum achievable boundary error.
    pub t0: f64,
    /// The closed-form estimate 2 ln(1/eps) / ln R from the leading-order
    /// eigenvalue decay, for comparison.
    pub n0_closed_form: f64,
    pub eps: f64,
}

/// Scan even N for the halting criterion. For R > rho the criterion is
/// sqrt(N) |s_hat(N/2)| <= eps and t0 = |v_hat(N0/2)|; when the charge
/// circle stays inside the data singularity (R <= rho) coefficients stay
/// bounded and convergence runs down to t ~ eps instead.
pub fn predict_halt(
    k: f64,
    r: f64,
    data: &DiscDataCoeffs,
    eps: f64,
    model: SpectrumModel,
) -> Result<Prediction> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::Domain(format!("eps must lie in (0,1), got {eps}")));
    }
    let rho = data.singularity_radius();
    let n_cap = (10.0 * k) as usize + 4000;
    let n0_closed_form = 2.0 * (1.0 / eps).ln() / r.ln();
    let growth_regime = r > rho; // charges beyond the data singularity
    let mut n = 2usize;
    while n <= n_cap {
        let m = (n / 2) as i64;
        if growth_regime {
            let sh = match model {
                SpectrumModel::Exact => s_hat(m, k, r)?.abs(),
                SpectrumModel::Uniform => s_hat_uniform(m, k, r)?.0,
            };
            if (n as f64).sqrt() * sh.abs_f64() <= eps {
                let vh = match model {
                    SpectrumModel::Exact => data.coeff(m, k)?.abs(),
                    SpectrumModel::Uniform => data.coeff_uniform_mag(m, k)?,
                };
                return Ok(Prediction { n0: n, t0: vh.abs_f64(), n0_closed_form, eps });
            }
        } else {
            let vh = match model {
                SpectrumModel::Exact => data.coeff(m, k)?.abs(),
                SpectrumModel::Uniform => data.coeff_uniform_mag(m, k)?,
            };
            if vh.abs_f64() <= eps {
                return Ok(Prediction { n0: n, t0: eps, n0_closed_form, eps });
            }
        }
        n += 2;
    }
    Err(Error::NonConvergence(format!(
        "halting criterion not met for any even N <= {n_cap} (k={k}, R={r})"
    )))
}

/// Convergence-rate regime of (rho, R) per the disc theory.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RateRegime {
    /// t decays like rate_base^N (pre-plateau).
    pub rate_base: f64,
    /// Which of the three cases applies.
    pub case: RateCase,
    /// Coefficient norm grows iff R exceeds the data singularity radius.
    pub coeff_growth: bool,
    /// Growth base g with |alpha| ~ g^N when growing.
    pub growth_base: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RateCase {
    /// rho < R^2: rate rho^{-1/2} per unit N.
    DataLimited,
    /// rho = R^2 boundary case (algebraic factor on top of R^{-N}).
    Balanced,
    /// rho > R^2: rate R^{-1} per unit N.
    AliasLimited,
}

pub fn rate_regime(rho: f64, r: f64) -> Result<RateRegime> {
    if rho <= 1.0 || r <= 1.0 {
        return Err(Error::Domain(format!("rate_regime requires rho, R > 1 (rho={rho}, R={r})")));
    }
    let r2 = r * r;
    let (case, rate_base) = if (rho - r2).abs() < 1e-12 {
        (RateCase::Balanced, 1.0 / r)
    } else if rho < r2 {
        (RateCase::DataLimited, 1.0 / rho.sqrt())
    } else {
        (RateCase::AliasLimited, 1.0 / r)
    };
    let coeff_growth = r > rho;
    let growth_base = coeff_growth.then(|| (r / rho).sqrt());
    Ok(RateRegime { rate_base, case, coeff_growth, growth_base })
}

/// One row of the spectrum comparison table.
#[derive(Clone, Copy, Debug)]
pub struct SpectrumRow {
    pub m: i64,
    pub log10_abs_exact: f64,
    pub log10_laplace: f64,
    pub log10_improved: f64,
    pub log10_uniform: f64,
}

/// Table of log10 |s_hat(m)| against the three approximations.
pub fn spectrum_table(k: f64, r: f64, m_max: usize) -> Result<Vec<SpectrumRow>> {
    let spec = DiscSpectrum::build(k, r, m_max)?;
    let mut rows = Vec::with_capacity(m_max);
    for m in 1..=m_max as i64 {
        rows.push(SpectrumRow {
            m,
            log10_abs_exact: spec.eigenvalue(m).log10_mag(),
            log10_laplace: s_hat_laplace(m, r)?.log10_mag(),
            log10_improved: s_hat_improved(m, k, r)?.log10_mag(),
            log10_uniform: s_hat_uniform(m, k, r)?.0.log10_mag(),
        });
    }
    Ok(rows)
}

/// One row of the (rho, R) halting surface.
#[derive(Clone, Copy, Debug)]
pub struct HaltRow {
    pub rho: f64,
    pub r: f64,
    pub n0: usize,
    pub log10_t0: f64,
}

/// Halting predictions over a grid of data radii and charge radii.
pub fn halt_surface(
    k: f64,
    rhos: &[f64],
    rs: &[f64],
    eps: f64,
    model: SpectrumModel,
) -> Result<Vec<HaltRow>> {
    let mut rows = Vec::new();
    for &rho in rhos {
        let data = DiscDataCoeffs::Fundamental { rho, phi: 0.0 };
        for &r in rs {
            let p = predict_halt(k, r, &data, eps, model)?;
            rows.push(HaltRow { rho, r, n0: p.n0, log10_t0: p.t0.log10() });
        }
    }
    Ok(rows)
}

/// Envelope of the exact eigenvalue for oscillatory orders: the J factor is
/// replaced by its modulus sqrt(J^2 + Y^2), which tracks the amplitude.
pub fn s_hat_envelope(m: i64, k: f64, r: f64) -> Result<LogScaled> {
    let ma = m.unsigned_abs();
    let mod_j = specialfn::hankel1_log(ma as i64, k)?.abs();
    let h = specialfn::hankel1_log(ma as i64, k * r)?.abs();
    Ok(LogScaled::from_f64(std::f64::consts::PI / 2.0) * h * mod_j)
}

/// Turning windows to exclude when comparing asymptotics pointwise.
pub fn in_turning_window(m: i64, k: f64, r: f64) -> bool {
    let w = turning_window(m);
    let mf = m.unsigned_abs() as f64;
    (mf - k).abs() <= w || (mf - k * r).abs() <= w
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigenvalue_symmetry_and_composition() {
        for m in 1..=50 {
            let a = s_hat(m, 8.0, 1.5).unwrap();
            let b = s_hat(-m, 8.0, 1.5).unwrap();
            assert!((a.log_mag() - b.log_mag()).abs() < 1e-14);
        }
        // frozen oracle value for s_hat(10, 5, 1.5)
        let v = s_hat(10, 5.0, 1.5).unwrap().to_complex64();
        let want = Complex64::new(2.944141579967920311e-3, 8.991512462406634648e-5);
        assert!((v - want).norm() < 1e-12 * want.norm());
    }

    #[test]
    fn laplace_limit_at_tiny_wavenumber() {
        // closed form at m = 1, R = 2 is exactly 1/4
        assert!((s_hat_laplace(1, 2.0).unwrap().to_f64() - 0.25).abs() < 1e-15);
        for m in 1..=20i64 {
            let exact = s_hat(m, 1e-4, 1.5).unwrap();
            let lap = s_hat_laplace(m, 1.5).unwrap();
            let ratio = (exact.abs().log_mag() - lap.log_mag()).exp();
            assert!((ratio - 1.0).abs() < 1e-3, "m={m}: ratio {ratio}");
        }
        // At k = 8 the leading form converges from above like
        // e^{k^2(R^2-1)/4m}: still ~40% high at m = 60, inside 10% once
        // that correction has died off.
        let ratio_60 = (s_hat(60, 8.0, 1.5).unwrap().abs().log_mag()
            - s_hat_laplace(60, 1.5).unwrap().log_mag())
        .exp();
        assert!(ratio_60 > 1.0 && ratio_60 < 1.6, "ratio {ratio_60}");
        let ratio_400 = (s_hat(400, 8.0, 1.5).unwrap().abs().log_mag()
            - s_hat_laplace(400, 1.5).unwrap().log_mag())
        .exp();
        assert!((ratio_400 - 1.0).abs() < 0.10, "ratio {ratio_400}");
    }

    #[test]
    fn improved_form_beats_leading_form_at_low_k() {
        for m in 10..=60i64 {
            let exact = s_hat(m, 8.0, 1.5).unwrap().abs().log_mag();
            let lap = (s_hat_laplace(m, 1.5).unwrap().log_mag() - exact).abs();
            let imp = (s_hat_improved(m, 8.0, 1.5).unwrap().log_mag() - exact).abs();
            assert!(imp < lap, "m={m}: improved {imp} vs leading {lap}");
        }
    }

    #[test]
    fn uniform_is_an_envelope_in_the_oscillatory_band() {
        // Below the first turning point the exact eigenvalues oscillate in
        // [-1, 1] times the amplitude; the uniform magnitude bounds at
        // least 90% of them from above.
        let (k, r) = (500.0, 1.25);
        let spec = DiscSpectrum::build(k, r, 460).unwrap();
        let mut above = 0usize;
        let mut total = 0usize;
        for m in 1..=450i64 {
            let (u, _) = s_hat_uniform(m, k, r).unwrap();
            total += 1;
            if u.log_mag() >= spec.eigenvalue(m).log_mag() {
                above += 1;
            }
        }
        assert!(above as f64 >= 0.9 * total as f64, "{above}/{total}");
    }

    #[test]
    fn eigenvalue_bounds_have_moderate_constants() {
        // c/|m| R^{-|m|} <= |s_hat(m)| <= C/|m| R^{-|m|} with C/c spanning
        // fewer than four orders of magnitude at low wavenumber. The
        // spread widens with k (about 5 decades already at k = 20, from
        // the e^{k^2(R^2-1)/4m} bulge near the turning point).
        for k in [5.0, 8.0] {
            let r = 1.5f64;
            let mut lo = f64::INFINITY;
            let mut hi = f64::NEG_INFINITY;
            for m in 1..=200i64 {
                let s = s_hat(m, k, r).unwrap().abs().log_mag();
                let scaled = s + (m as f64) * r.ln() + (m as f64).ln();
                lo = lo.min(scaled);
                hi = hi.max(scaled);
            }
            let span = (hi - lo) / std::f64::consts::LN_10;
            assert!(span < 4.0, "k={k}: C/c spans {span:.2} decades");
        }
    }

    #[test]
    fn q_is_dominated_by_its_main_diagonal() {
        // |q_{m, m mod N}| with |m| <= N/2 exceeds every overtone
        // |q_{bN+m, m}|, b != 0, at R = 1.5, k = 8, N = 40. At the edge
        // mode m = N/2 the first mirror overtone sits at -N/2 with exactly
        // equal magnitude (reflection symmetry), so equality is allowed
        // there.
        let (k, r, n) = (8.0, 1.5, 40usize);
        for m in -19i64..=20 {
            let main = s_hat(m, k, r).unwrap().abs().log_mag();
            for b in 1..=5i64 {
                for overtone in [m + b * n as i64, m - b * n as i64] {
                    let o = s_hat(overtone, k, r).unwrap().abs().log_mag();
                    if m == 20 && overtone == -20 {
                        assert!((o - main).abs() < 1e-13);
                    } else {
                        assert!(o < main, "m={m}, overtone {overtone}");
                    }
                }
            }
        }
    }

    #[test]
    fn prediction_is_monotone_past_the_oscillatory_band() {
        let data = DiscDataCoeffs::Fundamental { rho: 1.3, phi: 0.0 };
        let mut prev = f64::INFINITY;
        let mut n = 20usize; // 2k = 16
        while n <= 240 {
            let (t, _) = predict(n, 8.0, 1.5, &data, SpectrumModel::Exact).unwrap();
            assert!(t <= prev * (1.0 + 1e-12), "t_pred increased at N={n}");
            prev = t;
            n += 2;
        }
    }

    #[test]
    fn halting_scan_cap_is_an_error() {
        // Growth regime (R > rho) with R so close to 1 that halting would
        // need N far beyond the scan cap 10k + 4000.
        let data = DiscDataCoeffs::Fundamental { rho: 1.000_01, phi: 0.0 };
        match predict_halt(2.0, 1.000_05, &data, 1e-16, SpectrumModel::Exact) {
            Err(Error::NonConvergence(_)) => {}
            other => panic!("expected a scan-cap error, got {other:?}"),
        }
    }

    #[test]
    fn halting_size_is_independent_of_the_data_radius() {
        // In the growth regime the halting criterion involves only the
        // eigenvalues, so N0 curves for different rho coincide.
        let rows = halt_surface(
            50.0,
            &[1.01, 1.05],
            &[1.2, 1.3, 1.4],
            1e-16,
            SpectrumModel::Uniform,
        )
        .unwrap();
        for r in [1.2, 1.3, 1.4] {
            let n0s: Vec<usize> =
                rows.iter().filter(|row| row.r == r).map(|row| row.n0).collect();
            assert!(n0s.windows(2).all(|w| w[0] == w[1]), "R={r}: {n0s:?}");
        }
    }

    #[test]
    fn improved_form_reduces_to_laplace_as_k_vanishes() {
        for m in [1i64, 7, 33] {
            let a = s_hat_improved(m, 1e-9, 1.5).unwrap();
            let b = s_hat_laplace(m, 1.5).unwrap();
            assert!((a.log_mag() - b.log_mag()).abs() < 1e-12);
        }
        // closed-form spot check at m=100, k=20, R=1.5
        let v = s_hat_improved(100, 20.0, 1.5).unwrap();
        let want = -(200.0f64).ln() - 100.0 * 1.5f64.ln() + 400.0 * 1.25 / 400.0;
        assert!((v.log_mag() - want).abs() < 1e-12);
    }

    #[test]
    fn uniform_accuracy_recovers_at_window_edges() {
        // Just outside the turning windows around m = k and m = kR the
        // uniform magnitude is back within 25% of the exact eigenvalue
        // (envelope on the oscillatory side). k = 500, R = 1.25.
        let (k, r) = (500.0, 1.25);
        for m in [440i64, 560, 700] {
            assert!(!in_turning_window(m, k, r), "m={m} still inside a window");
            let (u, flagged) = s_hat_uniform(m, k, r).unwrap();
            assert!(!flagged);
            let exact = if (m as f64) < k {
                s_hat_envelope(m, k, r).unwrap()
            } else {
                s_hat(m, k, r).unwrap().abs()
            };
            let dl = (u.log_mag() - exact.log_mag()).abs();
            assert!(dl < 0.25f64.ln_1p(), "m={m}: log offset {dl}");
        }
    }

    #[test]
    fn q_matrix_structure() {
        let k = 2.0;
        let r = 1.5;
        let diag = q_element(3, 3, 10, k, r).unwrap();
        let want = LogScaled::from_f64(10.0 / (2.0 * std::f64::consts::PI))
            * s_hat(3, k, r).unwrap();
        assert!((diag.log_mag() - want.log_mag()).abs() < 1e-14);
        let overtone = q_element(13, 3, 10, k, r).unwrap();
        let want_o = LogScaled::from_f64(10.0 / (2.0 * std::f64::consts::PI))
            * s_hat(13, k, r).unwrap();
        assert!((overtone.log_mag() - want_o.log_mag()).abs() < 1e-14);
        assert!(q_element(4, 3, 10, k, r).unwrap().is_zero());
    }

    #[test]
    fn diagonal_solve_single_mode_matches_overtone_sum() {
        // v = e^{i m0 theta}: the only residual is the aliasing tail
        // t^2 = 2 pi sum_{b != 0} |s_hat(bN + m0) / s_hat(m0)|^2.
        let (n, k, r, m0) = (10usize, 2.0, 1.5, 3i64);
        let data = DiscDataCoeffs::Mode { m0, amp: Complex64::new(1.0, 0.0) };
        let sol = diagonal_solve(n, k, r, &data).unwrap();
        let s0 = s_hat(m0, k, r).unwrap();
        let mut sum = 0.0f64;
        for b in 1..=40i64 {
            for m in [m0 + b * n as i64, m0 - b * n as i64] {
                let ratio = s_hat(m, k, r).unwrap().abs().log_mag() - s0.abs().log_mag();
                sum += (2.0 * ratio).exp();
            }
        }
        let want = (2.0 * std::f64::consts::PI * sum).sqrt();
        assert!(
            (sol.t_f64() - want).abs() < 1e-10 * want,
            "t {} vs {want}",
            sol.t_f64()
        );
    }

    #[test]
    fn bounded_coefficients_when_charges_inside_singularity() {
        // R < rho: |alpha| stays O(1) as N grows.
        let data = DiscDataCoeffs::Fundamental { rho: 1.8, phi: 0.0 };
        let mut norms = Vec::new();
        for n in [40usize, 80, 120, 160] {
            norms.push(diagonal_solve(n, 8.0, 1.5, &data).unwrap().coeff_norm_f64());
        }
        let max = norms.iter().cloned().fold(0.0, f64::max);
        let min = norms.iter().cloned().fold(f64::INFINITY, f64::min);
        assert!(max / min < 10.0, "norms {norms:?}");
    }

    #[test]
    fn parseval_identity_round_trip() {
        let data = DiscDataCoeffs::Fundamental { rho: 3.0, phi: 0.4 };
        let sol = diagonal_solve(64, 8.0, 1.5, &data).unwrap();
        let alpha = sol.alpha().unwrap();
        let direct: f64 = alpha.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        assert!(
            (direct - sol.coeff_norm_f64()).abs() < 1e-12 * direct.max(1.0),
            "{direct} vs {}",
            sol.coeff_norm_f64()
        );
    }

    #[test]
    fn resonance_guard_behavior() {
        // A double-precision near-zero of J_0 is NOT treated as resonant;
        // the diagonal solve stays finite (near-misses must not poison the
        // model).
        let k0 = 2.404825557695773; // first zero of J_0 to ~1e-16
        let data = DiscDataCoeffs::Constant(Complex64::new(1.0, 0.0));
        let sol = diagonal_solve(8, k0, 1.5, &data).unwrap();
        assert!(sol.coeff_norm.log_mag().is_finite());

        // The guard does fire when an eigenvalue drops below the 1e-290
        // materialization floor (here via deep exponential decay).
        match diagonal_solve(3400, 1.0, 1.5, &data) {
            Err(Error::Resonance { m }) => assert!(m.unsigned_abs() > 1600),
            other => panic!("expected resonance-style rejection, got {other:?}"),
        }
    }

    #[test]
    fn prediction_clamps_alpha_when_charges_are_inside() {
        let data = DiscDataCoeffs::Fundamental { rho: 1.8, phi: 0.0 };
        for n in [40usize, 100, 160] {
            let (_, a) = predict(n, 8.0, 1.5, &data, SpectrumModel::Exact).unwrap();
            assert_eq!(a, 1.0);
        }
    }

    #[test]
    fn halting_scan_matches_low_wavenumber_closed_form() {
        let data = DiscDataCoeffs::Fundamental { rho: 1.2, phi: 0.0 };
        let p = predict_halt(8.0, 1.5, &data, 1e-16, SpectrumModel::Exact).unwrap();
        assert!((p.n0_closed_form - 181.7).abs() < 1.0);
        assert!(p.n0 >= 140 && p.n0 <= 230, "N0 = {}", p.n0);
        assert!(p.t0 > 0.0);
    }

    #[test]
    fn vfund_cross_checks_against_fft() {
        // Two fully independent routes to the same coefficients: the
        // analytic Bessel product vs an FFT of boundary samples.
        let (k, rho) = (8.0, 1.2);
        let data = BoundaryData::Fundamental { source: Complex64::new(rho, 0.0) };
        let fc = crate::bdata::fourier_coeffs(&data, k, 4096).unwrap();
        for m in (-100i64..=100).step_by(10) {
            let exact = vfund_coeff(m, k, rho).unwrap().to_f64();
            let fft = fc.coeff(m);
            assert!(
                (fft.re - exact).abs() < 1e-10 && fft.im.abs() < 1e-10,
                "m={m}: {fft} vs {exact}"
            );
        }
    }

    #[test]
    fn pole_coeffs_match_fft() {
        let loc = Complex64::new(1.1, 0.45);
        let data = BoundaryData::Pole { order: 2, location: loc };
        let dc = DiscDataCoeffs::from_boundary_data(&data).unwrap();
        let fc = crate::bdata::fourier_coeffs(&data, 1.0, 4096).unwrap();
        for m in [-40i64, -7, 0, 3, 25, 80] {
            let a = dc.coeff(m, 1.0).unwrap().to_complex64();
            let b = fc.coeff(m);
            assert!((a - b).norm() < 1e-9 * b.norm().max(1e-8), "m={m}: {a} vs {b}");
        }
    }

    #[test]
    fn rate_regimes() {
        let a = rate_regime(3.0, 1.5).unwrap();
        assert_eq!(a.case, RateCase::AliasLimited);
        assert!((a.rate_base - 1.0 / 1.5).abs() < 1e-15);
        assert!(!a.coeff_growth);

        let b = rate_regime(1.8, 1.5).unwrap();
        assert_eq!(b.case, RateCase::DataLimited);
        assert!((b.rate_base - 1.0 / 1.8f64.sqrt()).abs() < 1e-15);
        assert!(!b.coeff_growth);

        let c = rate_regime(1.2, 1.5).unwrap();
        assert_eq!(c.case, RateCase::DataLimited);
        assert!(c.coeff_growth);
        assert!((c.growth_base.unwrap() - (1.5f64 / 1.2).sqrt()).abs() < 1e-15);
    }
}
