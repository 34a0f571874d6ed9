//! Large-order approximations: the factorial-type forms valid for m >> z
//! and the Liouville-Green (WKBJ) amplitude/magnitude forms with their
//! turning-point bookkeeping.

use super::engine::ln_gamma_int;
use super::LogScaled;
use crate::error::{Error, Result};

/// Turning-point integral `I_a(x) = sqrt(a^2-x^2) - a ln[(a+sqrt(a^2-x^2))/x]`.
///
/// Defined for 0 < x <= a; zero at x = a, strictly increasing in x,
/// negative below the turning point.
pub fn iax(a: f64, x: f64) -> Result<f64> {
    if !(a > 0.0) || !(x > 0.0) {
        return Err(Error::Domain(format!("iax requires a, x > 0, got a={a}, x={x}")));
    }
    if x > a {
        return Err(Error::Domain(format!(
            "iax undefined for x > a (oscillatory side), got a={a}, x={x}"
        )));
    }
    let s = ((a - x) * (a + x)).sqrt();
    Ok(s - a * ((a + s) / x).ln())
}

/// Where an order m sits relative to the two turning points of the
/// eigenvalue product: the J factor turns at argument k, the Hankel factor
/// at argument kR.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UniformRegime {
    /// a < k: both factors oscillatory.
    Oscillatory,
    /// k < a < kR: J evanescent, Hankel still oscillatory.
    EvanescentBetween,
    /// a > kR: both evanescent.
    EvanescentBeyond,
}

/// Order parameters for the uniform magnitude formulas: `a^2 = m^2 - 1/4`
/// and the regime classification against the turning points k and kR.
#[derive(Clone, Copy, Debug)]
pub struct TurningPointData {
    pub m: i64,
    pub a: f64,
    pub regime: UniformRegime,
}

impl TurningPointData {
    pub fn new(m: i64, k: f64, k_r: f64) -> Self {
        let mf = m.unsigned_abs() as f64;
        let a2 = mf * mf - 0.25;
        let a = a2.max(0.0).sqrt();
        let regime = if a2 < k * k {
            UniformRegime::Oscillatory
        } else if a2 < k_r * k_r {
            UniformRegime::EvanescentBetween
        } else {
            UniformRegime::EvanescentBeyond
        };
        TurningPointData { m, a, regime }
    }
}

/// Half-width of the window around a turning point where the WKBJ forms
/// have their weak algebraic singularity: values inside are still returned
/// but flagged.
pub fn turning_window(m: i64) -> f64 {
    (0.1 * m.unsigned_abs() as f64).max(5.0)
}

/// Factorial-form approximation `J_m(z) ~ (1/m!) (z/2)^m e^{-z^2/4m}`,
/// log-scaled. Valid for m >> z.
pub fn largeorder_j_log(m: u64, z: f64) -> Result<LogScaled> {
    if m < 1 || z <= 0.0 {
        return Err(Error::Domain(format!("largeorder_j requires m >= 1, z > 0 (m={m}, z={z})")));
    }
    let mf = m as f64;
    let lm = mf * (z / 2.0).ln() - ln_gamma_int(m + 1) - z * z / (4.0 * mf);
    Ok(LogScaled::new_real(lm, false))
}

/// Counterpart `Y_m(z) ~ -((m-1)!/pi) (z/2)^{-m} e^{z^2/4m}`, log-scaled.
pub fn largeorder_y_log(m: u64, z: f64) -> Result<LogScaled> {
    if m < 1 || z <= 0.0 {
        return Err(Error::Domain(format!("largeorder_y requires m >= 1, z > 0 (m={m}, z={z})")));
    }
    let mf = m as f64;
    let lm = ln_gamma_int(m) - mf * (z / 2.0).ln() + z * z / (4.0 * mf)
        - std::f64::consts::PI.ln();
    Ok(LogScaled::new_real(lm, true))
}

/// Plain-f64 variants (may under/overflow; the log forms never do).
pub fn largeorder_j(m: u64, z: f64) -> Result<f64> {
    largeorder_j_log(m, z).map(|v| v.to_f64())
}

pub fn largeorder_y(m: u64, z: f64) -> Result<f64> {
    largeorder_y_log(m, z).map(|v| v.to_f64())
}

/// WKBJ magnitude for J_m: amplitude of the oscillation for r > a, plain
/// magnitude for r < a. Normalized so that it tends to sqrt(2/(pi r)) as
/// r -> infinity. The boolean marks evaluation inside the turning window.
pub fn wkbj_j_log(m: i64, r: f64) -> Result<(LogScaled, bool)> {
    wkbj_log(m, r, true)
}

/// WKBJ magnitude for |H^{(1)}_m| = sqrt(J^2 + Y^2); same amplitude as J on
/// the oscillatory side, growing magnitude on the evanescent side.
pub fn wkbj_h_log(m: i64, r: f64) -> Result<(LogScaled, bool)> {
    wkbj_log(m, r, false)
}

fn wkbj_log(m: i64, r: f64, is_j: bool) -> Result<(LogScaled, bool)> {
    if m.unsigned_abs() < 1 || r <= 0.0 || !r.is_finite() {
        return Err(Error::Domain(format!("wkbj magnitude requires |m| >= 1, r > 0 (m={m}, r={r})")));
    }
    let mf = m.unsigned_abs() as f64;
    let a2 = mf * mf - 0.25;
    let a = a2.sqrt();
    let flagged = (mf - r).abs() <= turning_window(m);
    // Normalization sqrt(2/pi) matches the true Bessel amplitude at infinity.
    let half_ln_2_over_pi = 0.5 * (2.0 / std::f64::consts::PI).ln();
    let d = (r * r - a2).abs().max(0.25); // floor avoids the exact turning point
    let lm = if r > a {
        half_ln_2_over_pi - 0.25 * d.ln()
    } else {
        let i = iax(a, r)?;
        if is_j {
            half_ln_2_over_pi - std::f64::consts::LN_2 - 0.25 * d.ln() + i
        } else {
            half_ln_2_over_pi - 0.25 * d.ln() - i
        }
    };
    Ok((LogScaled::new_real(lm, false), flagged))
}

/// Plain-f64 WKBJ magnitudes.
pub fn wkbj_j_mag(m: i64, r: f64) -> Result<(f64, bool)> {
    wkbj_j_log(m, r).map(|(v, f)| (v.to_f64(), f))
}

pub fn wkbj_h_mag(m: i64, r: f64) -> Result<(f64, bool)> {
    wkbj_h_log(m, r).map(|(v, f)| (v.to_f64(), f))
}
