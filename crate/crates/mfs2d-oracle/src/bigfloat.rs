//! Minimal arbitrary-precision binary floating point on top of `BigInt`.
//!
//! A value is `mant * 2^exp` with the mantissa kept at [`PREC`] bits after
//! every operation, giving roughly 150 decimal digits of working precision.
//! Only the operations needed by the reference Bessel evaluations are
//! provided: field arithmetic, `sqrt`, `ln`, and decimal parsing.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::OnceLock;

/// Working mantissa precision in bits (~154 decimal digits).
pub const PREC: u64 = 512;

#[derive(Clone, Debug)]
pub struct Bf {
    mant: BigInt,
    exp: i64,
}

impl Bf {
    pub fn zero() -> Self {
        Bf { mant: BigInt::zero(), exp: 0 }
    }

    pub fn from_i64(v: i64) -> Self {
        Bf { mant: BigInt::from(v), exp: 0 }.normalized()
    }

    pub fn from_bigint(v: BigInt) -> Self {
        Bf { mant: v, exp: 0 }.normalized()
    }

    pub fn from_f64(v: f64) -> Self {
        assert!(v.is_finite(), "Bf::from_f64 requires a finite value");
        if v == 0.0 {
            return Bf::zero();
        }
        // Exact decomposition: f64 mantissa is at most 53 bits.
        let bits = v.to_bits();
        let sign = if bits >> 63 == 1 { -1i64 } else { 1 };
        let biased = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mant, exp) = if biased == 0 {
            (frac, -1074i64) // subnormal
        } else {
            (frac | (1u64 << 52), biased - 1075)
        };
        Bf { mant: BigInt::from(sign * mant as i64), exp }.normalized()
    }

    /// Parse a positive decimal literal like `"0.57721566490"` or `"3.14159"`.
    pub fn parse_decimal(s: &str) -> Self {
        let (int_part, frac_part) = match s.split_once('.') {
            Some((a, b)) => (a, b),
            None => (s, ""),
        };
        let digits: String = format!("{int_part}{frac_part}");
        let n: BigInt = digits.parse().expect("decimal digits");
        let denom = BigInt::from(10u32).pow(frac_part.len() as u32);
        Bf::from_bigint(n) / Bf::from_bigint(denom)
    }

    fn normalized(mut self) -> Self {
        if self.mant.is_zero() {
            self.exp = 0;
            return self;
        }
        let bits = self.mant.bits();
        if bits > PREC {
            let shift = bits - PREC;
            self.mant >>= shift;
            self.exp += shift as i64;
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn abs(&self) -> Self {
        Bf { mant: self.mant.abs(), exp: self.exp }
    }

    /// log2 of |self| to within one bit; used for truncation decisions.
    pub fn log2_approx(&self) -> i64 {
        if self.is_zero() {
            return i64::MIN / 2;
        }
        self.mant.bits() as i64 + self.exp
    }

    pub fn cmp_abs(&self, other: &Bf) -> Ordering {
        (self.abs() - other.abs()).mant.sign().cmp(&num_bigint::Sign::NoSign)
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits();
        // Keep 64 bits, convert, then scale.
        let (top, shift) = if bits > 64 {
            let s = bits - 64;
            ((&self.mant >> s).to_i64().map(|v| v as f64).unwrap_or_else(|| {
                // i64 overflow only if exactly 64 magnitude bits with sign; drop one more.
                (&self.mant >> (s + 1)).to_i64().unwrap() as f64 * 2.0
            }), s as i64)
        } else {
            (self.mant.to_i64().map(|v| v as f64).unwrap_or(0.0), 0)
        };
        let e = self.exp + shift;
        top * pow2_f64(e)
    }

    pub fn powi(&self, mut n: u64) -> Bf {
        let mut base = self.clone();
        let mut acc = Bf::from_i64(1);
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        acc
    }

    /// Square root of a non-negative value.
    pub fn sqrt(&self) -> Bf {
        assert!(!self.is_negative(), "sqrt of negative Bf");
        if self.is_zero() {
            return Bf::zero();
        }
        // Shift mantissa so it carries ~2*PREC bits and an even exponent.
        let mut m = self.mant.clone();
        let mut e = self.exp;
        let want = 2 * PREC + 2;
        let bits = m.bits();
        let mut shift = want.saturating_sub(bits) as i64;
        if (e - shift) % 2 != 0 {
            shift += 1;
        }
        m <<= shift as u64;
        e -= shift;
        let r = m.sqrt();
        Bf { mant: r, exp: e / 2 }.normalized()
    }

    /// Natural logarithm of a positive value.
    pub fn ln(&self) -> Bf {
        assert!(!self.is_negative() && !self.is_zero(), "ln requires positive Bf");
        // self = m * 2^k with m in [1, 2)
        let bits = self.mant.bits() as i64;
        let k = self.exp + bits - 1;
        let m = Bf { mant: self.mant.clone(), exp: -(bits - 1) };
        // Reduce m toward 1 by repeated square roots, then atanh series.
        let mut x = m;
        let reductions = 24u32;
        for _ in 0..reductions {
            x = x.sqrt();
        }
        let one = Bf::from_i64(1);
        let u = (&x - &one) / (&x + &one);
        // ln x = 2 * (u + u^3/3 + u^5/5 + ...)
        let u2 = &u * &u;
        let mut term = u.clone();
        let mut sum = u.clone();
        let mut j = 1i64;
        while !term.is_zero() {
            term = &term * &u2;
            j += 2;
            let contrib = &term / &Bf::from_i64(j);
            if contrib.is_zero()
                || contrib.log2_approx() < sum.log2_approx() - (PREC as i64 + 32)
            {
                break;
            }
            sum = &sum + &contrib;
        }
        let ln_m = &Bf::from_i64(2i64.pow(reductions + 1)) * &sum;
        &ln_m + &(&Bf::from_i64(k) * ln2())
    }
}

fn pow2_f64(e: i64) -> f64 {
    // 2^e with saturation, valid across the full f64 range via two steps.
    if e > 2000 {
        return f64::INFINITY;
    }
    if e < -2000 {
        return 0.0;
    }
    let half = (e / 2) as i32;
    let rest = (e - half as i64) as i32;
    2f64.powi(half) * 2f64.powi(rest)
}

impl Add for &Bf {
    type Output = Bf;
    fn add(self, rhs: &Bf) -> Bf {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let (hi, lo) = if self.exp >= rhs.exp { (self, rhs) } else { (rhs, self) };
        let diff = (hi.exp - lo.exp) as u64;
        // The low part is negligible beyond the working precision.
        if diff > PREC + 64 + hi.mant.bits() {
            return hi.clone();
        }
        let mant = (&hi.mant << diff) + &lo.mant;
        Bf { mant, exp: lo.exp }.normalized()
    }
}

impl Sub for &Bf {
    type Output = Bf;
    fn sub(self, rhs: &Bf) -> Bf {
        self + &(-rhs.clone())
    }
}

impl Neg for Bf {
    type Output = Bf;
    fn neg(self) -> Bf {
        Bf { mant: -self.mant, exp: self.exp }
    }
}

impl Mul for &Bf {
    type Output = Bf;
    fn mul(self, rhs: &Bf) -> Bf {
        Bf { mant: &self.mant * &rhs.mant, exp: self.exp + rhs.exp }.normalized()
    }
}

impl Div for &Bf {
    type Output = Bf;
    fn div(self, rhs: &Bf) -> Bf {
        assert!(!rhs.is_zero(), "division by zero Bf");
        if self.is_zero() {
            return Bf::zero();
        }
        // Shift so the quotient keeps PREC + 64 significant bits even when
        // the numerator mantissa is much narrower than the denominator's.
        let extra = rhs.mant.bits().saturating_sub(self.mant.bits());
        let scale = (PREC + 64 + extra) as i64;
        let num = &self.mant << scale as u64;
        Bf { mant: num / &rhs.mant, exp: self.exp - rhs.exp - scale }.normalized()
    }
}

macro_rules! owned_ops {
    ($($trait:ident, $fn:ident);*) => {$(
        impl $trait for Bf {
            type Output = Bf;
            fn $fn(self, rhs: Bf) -> Bf { (&self).$fn(&rhs) }
        }
    )*};
}
owned_ops!(Add, add; Sub, sub; Mul, mul; Div, div);

/// ln 2 = 2 atanh(1/3).
pub fn ln2() -> &'static Bf {
    static LN2: OnceLock<Bf> = OnceLock::new();
    LN2.get_or_init(|| {
        let third = Bf::from_i64(1) / Bf::from_i64(3);
        let t2 = &third * &third;
        let mut term = third.clone();
        let mut sum = third;
        let mut j = 1i64;
        loop {
            term = &term * &t2;
            j += 2;
            let contrib = &term / &Bf::from_i64(j);
            if contrib.log2_approx() < sum.log2_approx() - (PREC as i64 + 32) {
                break;
            }
            sum = &sum + &contrib;
        }
        &Bf::from_i64(2) * &sum
    })
}

/// pi by Machin's formula: 16 atan(1/5) - 4 atan(1/239).
pub fn pi() -> &'static Bf {
    static PI: OnceLock<Bf> = OnceLock::new();
    PI.get_or_init(|| {
        fn atan_inv(n: i64) -> Bf {
            let x = Bf::from_i64(1) / Bf::from_i64(n);
            let x2 = &x * &x;
            let mut term = x.clone();
            let mut sum = x;
            let mut j = 1i64;
            let mut sign = -1i64;
            loop {
                term = &term * &x2;
                j += 2;
                let contrib = &(&term / &Bf::from_i64(j)) * &Bf::from_i64(sign);
                sign = -sign;
                if contrib.log2_approx() < sum.log2_approx() - (PREC as i64 + 32) {
                    break;
                }
                sum = &sum + &contrib;
            }
            sum
        }
        &(&Bf::from_i64(16) * &atan_inv(5)) - &(&Bf::from_i64(4) * &atan_inv(239))
    })
}

/// Euler-Mascheroni constant, 110 decimal digits.
pub fn euler_gamma() -> &'static Bf {
    static G: OnceLock<Bf> = OnceLock::new();
    G.get_or_init(|| {
        Bf::parse_decimal(
            "0.57721566490153286060651209008240243104215933593992359880576723488486772677766467093694706329174674951463144725",
        )
    })
}
