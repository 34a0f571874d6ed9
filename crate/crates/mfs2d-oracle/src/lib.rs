//! Arbitrary-precision reference evaluations for cylinder functions.
//!
//! Everything here exists to pin expected values in tests of the fast
//! double-precision routines. It is deliberately simple and slow: plain
//! Taylor series for `J`, the standard ascending series for `Y`, and exact
//! formula evaluation for the turning-point integral. None of this code is
//! reachable from production builds; the solver crate lists it only as a
//! dev-dependency.

mod bigfloat;

pub use bigfloat::{euler_gamma, ln2, pi, Bf, PREC};

/// J_m(x) by the ascending power series, summed in ~150-digit arithmetic.
pub fn bessel_j_ref(m: u32, x: &Bf) -> Bf {
    let half_x = x / &Bf::from_i64(2);
    let neg_q = -(&half_x * &half_x); // -x^2/4
    let mut term = Bf::from_i64(1);
    let mut sum = Bf::from_i64(1);
    let mut max_log2 = sum.log2_approx();
    let mut q: i64 = 0;
    loop {
        q += 1;
        term = &(&term * &neg_q) / &Bf::from_i64(q * (m as i64 + q));
        sum = &sum + &term;
        max_log2 = max_log2.max(term.log2_approx());
        if q > 4 && term.log2_approx() < max_log2 - (PREC as i64 + 48) {
            break;
        }
    }
    let prefix = &half_x.powi(m as u64) / &factorial(m as i64);
    &prefix * &sum
}

/// Y_m(x) by the standard ascending series
/// (finite sum + logarithmic term + digamma series).
pub fn bessel_y_ref(m: u32, x: &Bf) -> Bf {
    let half_x = x / &Bf::from_i64(2);
    let q_pos = &half_x * &half_x; // x^2/4
    let inv_pi = &Bf::from_i64(1) / pi();

    // -( (x/2)^{-m} / pi ) * sum_{q=0}^{m-1} (m-q-1)!/q! * (x^2/4)^q
    let mut finite = Bf::zero();
    if m > 0 {
        let mut term = factorial(m as i64 - 1); // q = 0
        let mut sum = term.clone();
        for q in 1..m as i64 {
            // term_{q} = term_{q-1} * (x^2/4) / (q * (m-q))  [ratio of (m-q-1)!/q!]
            term = &(&term * &q_pos) / &Bf::from_i64(q * (m as i64 - q));
            sum = &sum + &term;
        }
        let pref = &Bf::from_i64(1) / &half_x.powi(m as u64);
        finite = -(&(&pref * &sum) * &inv_pi);
    }

    // (2/pi) ln(x/2) J_m(x)
    let log_term = &(&(&Bf::from_i64(2) * &inv_pi) * &half_x.ln()) * &bessel_j_ref(m, x);

    // -( (x/2)^m / pi ) sum_{q>=0} (psi(q+1)+psi(m+q+1)) (-x^2/4)^q / (q! (m+q)!)
    let neg_q = -q_pos.clone();
    let mut term = &Bf::from_i64(1) / &factorial(m as i64); // q = 0: 1/(0! m!)
    let mut harmonic_q = Bf::zero(); // H_0
    let mut harmonic_mq = harmonic(m as i64); // H_m
    let two_gamma = &Bf::from_i64(2) * euler_gamma();
    let psi_sum = |hq: &Bf, hmq: &Bf| -> Bf { &(hq + hmq) - &two_gamma };
    let mut sum = &term * &psi_sum(&harmonic_q, &harmonic_mq);
    let mut max_log2 = sum.log2_approx();
    let mut q: i64 = 0;
    loop {
        q += 1;
        term = &(&term * &neg_q) / &Bf::from_i64(q * (m as i64 + q));
        harmonic_q = &harmonic_q + &(&Bf::from_i64(1) / &Bf::from_i64(q));
        harmonic_mq = &harmonic_mq + &(&Bf::from_i64(1) / &Bf::from_i64(m as i64 + q));
        let contrib = &term * &psi_sum(&harmonic_q, &harmonic_mq);
        sum = &sum + &contrib;
        max_log2 = max_log2.max(contrib.log2_approx());
        if q > 4 && contrib.log2_approx() < max_log2 - (PREC as i64 + 48) {
            break;
        }
    }
    let digamma_term = -(&(&half_x.powi(m as u64) * &inv_pi) * &sum);

    &(&finite + &log_term) + &digamma_term
}

/// Turning-point integral: sqrt(a^2-x^2) - a ln((a+sqrt(a^2-x^2))/x).
pub fn iax_ref(a: &Bf, x: &Bf) -> Bf {
    let s = (&(a * a) - &(x * x)).sqrt();
    let ratio = &(a + &s) / x;
    &s - &(a * &ratio.ln())
}

pub fn factorial(n: i64) -> Bf {
    let mut acc = num_bigint::BigInt::from(1u32);
    for q in 2..=n {
        acc *= q;
    }
    Bf::from_bigint(acc)
}

fn harmonic(n: i64) -> Bf {
    let mut acc = Bf::zero();
    for q in 1..=n {
        acc = &acc + &(&Bf::from_i64(1) / &Bf::from_i64(q));
    }
    acc
}

/// ln |v| as f64, usable far outside the f64 range.
pub fn ln_abs_f64(v: &Bf) -> f64 {
    v.abs().ln().to_f64()
}

/// Sign of the value: -1, 0 or +1.
pub fn sign_f64(v: &Bf) -> f64 {
    if v.is_zero() {
        0.0
    } else if v.is_negative() {
        -1.0
    } else {
        1.0
    }
}
