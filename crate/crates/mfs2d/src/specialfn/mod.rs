//! Integer-order Bessel and Hankel functions of positive real argument,
//! in plain and log-scaled form, plus the large-order and WKBJ
//! approximations used by the disc spectral model.
//!
//! The log-scaled variants exist because eigenvalue products like
//! `H_m(kR) J_m(k)` at k ~ 500, m ~ 1500 pair factors of size e^{+900}
//! and e^{-1200}; neither factor is representable in binary64 but their
//! product is meaningful.

mod asymptotic;
mod engine;
mod logscaled;

pub use asymptotic::{
    iax, largeorder_j, largeorder_j_log, largeorder_y, largeorder_y_log, turning_window,
    wkbj_h_log, wkbj_h_mag, wkbj_j_log, wkbj_j_mag, TurningPointData, UniformRegime,
};
pub use logscaled::LogScaled;

use crate::error::Result;
use num_complex::Complex64;

pub(crate) use engine::{j_sequence_log, ln_gamma_int, y_sequence_log};

/// Fast (J_0(x), Y_0(x)) pair used in matrix assembly; x > 0.
pub fn j0y0(x: f64) -> (f64, f64) {
    engine::j0y0(x)
}

/// J_m(x) for any integer order; negative orders use J_{-m} = (-1)^m J_m.
/// Underflow materializes as 0 (use [`bessel_j_log`] to keep the exponent).
pub fn bessel_j(m: i64, x: f64) -> Result<f64> {
    engine::check_j_domain(m, x)?;
    Ok(bessel_j_log_signed(m, x).to_f64())
}

/// Y_m(x) for any integer order; negative orders use Y_{-m} = (-1)^m Y_m.
/// Overflow materializes as signed infinity.
pub fn bessel_y(m: i64, x: f64) -> Result<f64> {
    engine::check_y_domain(x)?;
    Ok(bessel_y_log_signed(m, x).to_f64())
}

/// H^{(1)}_m(x) = J_m(x) + i Y_m(x).
pub fn hankel1(m: i64, x: f64) -> Result<Complex64> {
    engine::check_y_domain(x)?;
    Ok(Complex64::new(
        bessel_j_log_signed(m, x).to_f64(),
        bessel_y_log_signed(m, x).to_f64(),
    ))
}

/// H^{(1)}_m(x) as a log-scaled complex number; finite log magnitude even
/// when Y overflows.
pub fn hankel1_log(m: i64, x: f64) -> Result<LogScaled> {
    engine::check_y_domain(x)?;
    let j = bessel_j_log_signed(m, x);
    let y = bessel_y_log_signed(m, x);
    Ok(j.add(&y.mul_i()))
}

/// Log-scaled J_m(x) for m >= 0.
pub fn bessel_j_log(m: u64, x: f64) -> Result<LogScaled> {
    engine::check_j_domain(m as i64, x)?;
    Ok(engine::j_log(m, x))
}

/// Log-scaled Y_m(x) for m >= 0.
pub fn bessel_y_log(m: u64, x: f64) -> Result<LogScaled> {
    engine::check_y_domain(x)?;
    Ok(engine::y_log(m, x))
}

pub(crate) fn bessel_j_log_signed(m: i64, x: f64) -> LogScaled {
    let v = engine::j_log(m.unsigned_abs(), x);
    if m < 0 && m % 2 != 0 {
        -v
    } else {
        v
    }
}

pub(crate) fn bessel_y_log_signed(m: i64, x: f64) -> LogScaled {
    let v = engine::y_log(m.unsigned_abs(), x);
    if m < 0 && m % 2 != 0 {
        -v
    } else {
        v
    }
}
