//! Numbers stored as (natural-log magnitude, unit phase).
//!
//! High-order Bessel products span many thousands of orders of magnitude,
//! far beyond what binary64 can hold, so eigenvalues and coefficient ratios
//! are formed in log space and materialized only at the end.

use num_complex::Complex64;

/// A number represented as `exp(log_mag) * phase` with `|phase| = 1`.
///
/// `log_mag = -inf` if and only if the value is exactly zero. Real values
/// keep `phase.im == 0.0` with `phase.re` equal to `+1` or `-1`, so sign
/// information survives exactly.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogScaled {
    log_mag: f64,
    phase: Complex64,
}

impl LogScaled {
    pub fn zero() -> Self {
        LogScaled { log_mag: f64::NEG_INFINITY, phase: Complex64::new(1.0, 0.0) }
    }

    pub fn one() -> Self {
        LogScaled { log_mag: 0.0, phase: Complex64::new(1.0, 0.0) }
    }

    /// Build from a log magnitude and a sign, for real quantities.
    pub fn new_real(log_mag: f64, negative: bool) -> Self {
        let s = if negative { -1.0 } else { 1.0 };
        LogScaled { log_mag, phase: Complex64::new(s, 0.0) }
    }

    pub fn new(log_mag: f64, phase: Complex64) -> Self {
        let n = phase.norm();
        assert!(n > 0.0, "phase must be nonzero");
        LogScaled { log_mag, phase: phase / n }
    }

    pub fn from_f64(v: f64) -> Self {
        if v == 0.0 {
            return Self::zero();
        }
        LogScaled { log_mag: v.abs().ln(), phase: Complex64::new(v.signum(), 0.0) }
    }

    pub fn from_complex(z: Complex64) -> Self {
        let n = z.norm();
        if n == 0.0 {
            return Self::zero();
        }
        LogScaled { log_mag: n.ln(), phase: z / n }
    }

    pub fn is_zero(&self) -> bool {
        self.log_mag == f64::NEG_INFINITY
    }

    /// Natural log of |value|.
    pub fn log_mag(&self) -> f64 {
        self.log_mag
    }

    /// Base-10 log of |value|.
    pub fn log10_mag(&self) -> f64 {
        self.log_mag / std::f64::consts::LN_10
    }

    pub fn phase(&self) -> Complex64 {
        self.phase
    }

    /// True when `to_f64`/`to_complex64` would underflow to zero.
    pub fn underflows_f64(&self) -> bool {
        !self.is_zero() && self.log_mag < -745.0
    }

    /// True when materialization would overflow to infinity.
    pub fn overflows_f64(&self) -> bool {
        self.log_mag > 709.7
    }

    /// Magnitude as a plain positive number (0 on underflow, inf on overflow).
    pub fn abs_f64(&self) -> f64 {
        self.log_mag.exp()
    }

    /// Materialize a real-valued quantity. Panics in debug builds if the
    /// phase is not purely real.
    pub fn to_f64(&self) -> f64 {
        debug_assert!(self.phase.im == 0.0, "to_f64 on a non-real LogScaled");
        self.phase.re * self.log_mag.exp()
    }

    pub fn to_complex64(&self) -> Complex64 {
        self.phase * self.log_mag.exp()
    }

    /// |self| as a LogScaled (phase +1).
    pub fn abs(&self) -> Self {
        LogScaled { log_mag: self.log_mag, phase: Complex64::new(1.0, 0.0) }
    }

    pub fn conj(&self) -> Self {
        LogScaled { log_mag: self.log_mag, phase: self.phase.conj() }
    }

    pub fn recip(&self) -> Self {
        LogScaled { log_mag: -self.log_mag, phase: self.phase.conj() / self.phase.norm_sqr().max(f64::MIN_POSITIVE) }
    }

    /// Multiply by i (quarter turn).
    pub fn mul_i(&self) -> Self {
        LogScaled {
            log_mag: self.log_mag,
            phase: Complex64::new(-self.phase.im, self.phase.re),
        }
    }

    /// Sum with correct phase handling; exact for widely separated magnitudes.
    pub fn add(&self, other: &LogScaled) -> Self {
        if self.is_zero() {
            return *other;
        }
        if other.is_zero() {
            return *self;
        }
        let (hi, lo) = if self.log_mag >= other.log_mag { (self, other) } else { (other, self) };
        let d = lo.log_mag - hi.log_mag;
        if d < -750.0 {
            return *hi;
        }
        let z = hi.phase + lo.phase * d.exp();
        let n = z.norm();
        if n == 0.0 {
            return Self::zero();
        }
        LogScaled { log_mag: hi.log_mag + n.ln(), phase: z / n }
    }

    pub fn sub(&self, other: &LogScaled) -> Self {
        self.add(&-*other)
    }

    /// Raise the magnitude to an integer power (phase follows).
    pub fn powi(&self, n: i32) -> Self {
        if self.is_zero() {
            return if n == 0 { Self::one() } else { Self::zero() };
        }
        let phase = self.phase.powi(n);
        let nn = phase.norm();
        LogScaled { log_mag: self.log_mag * n as f64, phase: phase / nn }
    }
}

impl std::ops::Mul for LogScaled {
    type Output = LogScaled;
    fn mul(self, rhs: LogScaled) -> LogScaled {
        if self.is_zero() || rhs.is_zero() {
            return LogScaled::zero();
        }
        let phase = self.phase * rhs.phase;
        let n = phase.norm();
        LogScaled { log_mag: self.log_mag + rhs.log_mag, phase: phase / n }
    }
}

impl std::ops::Div for LogScaled {
    type Output = LogScaled;
    fn div(self, rhs: LogScaled) -> LogScaled {
        assert!(!rhs.is_zero(), "division by zero LogScaled");
        if self.is_zero() {
            return LogScaled::zero();
        }
        let phase = self.phase / rhs.phase;
        let n = phase.norm();
        LogScaled { log_mag: self.log_mag - rhs.log_mag, phase: phase / n }
    }
}

impl std::ops::Neg for LogScaled {
    type Output = LogScaled;
    fn neg(self) -> LogScaled {
        LogScaled { log_mag: self.log_mag, phase: -self.phase }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_and_invariants() {
        let v = LogScaled::from_f64(-3.25);
        assert_eq!(v.to_f64(), -3.25);
        assert_eq!(v.phase().re, -1.0);
        assert_eq!(v.phase().im, 0.0);
        assert!((v.phase().norm() - 1.0).abs() == 0.0);

        let z = LogScaled::from_complex(Complex64::new(3.0, -4.0));
        let back = z.to_complex64();
        assert!((back - Complex64::new(3.0, -4.0)).norm() < 1e-14);

        assert!(LogScaled::from_f64(0.0).is_zero());
        assert_eq!(LogScaled::zero().to_f64(), 0.0);
    }

    #[test]
    fn survives_extreme_magnitudes() {
        let tiny = LogScaled::new_real(-5000.0, false);
        let tiny2 = tiny * tiny;
        assert_eq!(tiny2.log_mag(), -10000.0);
        assert_eq!(tiny2.to_f64(), 0.0); // underflow on materialize only
        assert!(tiny2.underflows_f64());
        let huge = LogScaled::new_real(5000.0, true);
        assert!(huge.overflows_f64());
        let ratio = huge / tiny; // e^{10000}, sign -
        assert_eq!(ratio.log_mag(), 10000.0);
        assert_eq!(ratio.phase().re, -1.0);
    }

    #[test]
    fn addition_handles_cancellation_and_spread() {
        // Cancellation down to 1e-6 of the operands keeps ~9 digits; the
        // floor is the exp() rounding of the aligned small operand.
        let a = LogScaled::from_f64(1.0);
        let b = LogScaled::from_f64(-1.0 + 1e-6);
        let s = a.add(&b);
        assert!((s.to_f64() - 1e-6).abs() < 1e-15);

        let big = LogScaled::new_real(800.0, false);
        let small = LogScaled::new_real(-800.0, false);
        let t = big.add(&small);
        assert_eq!(t.log_mag(), 800.0);
    }

    #[test]
    fn real_phases_stay_exact() {
        let mut v = LogScaled::from_f64(-2.0);
        for _ in 0..1000 {
            v = v * LogScaled::from_f64(-1.5);
        }
        assert_eq!(v.phase().im, 0.0);
        assert_eq!(v.phase().re.abs(), 1.0);
    }
}
