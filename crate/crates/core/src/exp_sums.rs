//! Polynomial exponential sums, rational approximation, and bound envelopes.
//!
//! The sum evaluated here is
//!
//! ```text
//! f(alpha; X) = sum_{x=1..X} e(alpha_1 x + alpha_2 x^2 + ... + alpha_k x^k)
//! ```
//!
//! with e(t) = exp(2 pi i t). The specialization g(beta; X) keeps only the
//! leading coefficient.
//!
//! # Argument reduction
//!
//! For X around 10^6 and degree 8, the monomial x^k reaches 10^48, so the
//! phase cannot be reduced mod 1 in double precision: the product
//! `alpha * x^k` has long since lost every fractional bit. Instead each
//! coefficient is taken apart exactly — every f64 is a dyadic rational
//! m / 2^t — and the whole polynomial is evaluated by Horner's rule in
//! 128-bit fixed point, where multiplication by the integer x and addition
//! are exact mod 1 (wrapping arithmetic *is* reduction mod 1 in this
//! representation). Coefficients with t <= 128, which covers every
//! coefficient of magnitude at least 2^-76, contribute exactly; smaller
//! ones are reduced per term with integer arithmetic mod 2^t so that their
//! truncation error (< 2^-128) is never amplified by later Horner steps.
//! Only the final conversion of the reduced phase to f64, and sin/cos,
//! round at all.
//!
//! Terms are accumulated with Kahan compensation, in fixed-size chunks
//! folded in a canonical order, so results are bit-identical for any
//! thread count.

use num_bigint::BigUint;
use num_traits::One;

use crate::config::ComputeConfig;
use crate::error::{invalid, Result};
use crate::numeric::{Complex, KahanComplex};
use crate::parallel;

/// Phase coefficients (alpha_1 .. alpha_k), each reduced mod 1.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseVector {
    alpha: Vec<f64>,
}

impl PhaseVector {
    pub fn new(alpha: &[f64]) -> Result<Self> {
        if alpha.is_empty() {
            return Err(invalid("phase vector needs at least one coefficient"));
        }
        if alpha.iter().any(|a| !a.is_finite()) {
            return Err(invalid("phase coefficients must be finite"));
        }
        let reduced = alpha
            .iter()
            .map(|&a| {
                let r = a.rem_euclid(1.0);
                if r >= 1.0 {
                    0.0
                } else {
                    r
                }
            })
            .collect();
        Ok(PhaseVector { alpha: reduced })
    }

    pub fn components(&self) -> &[f64] {
        &self.alpha
    }

    pub fn degree(&self) -> usize {
        self.alpha.len()
    }
}

// ---------------------------------------------------------------------------
// Exact phase evaluation in 128-bit fixed point
// ---------------------------------------------------------------------------

/// alpha = m / 2^t exactly, m odd unless zero. Requires 0 <= alpha < 1.
fn dyadic(alpha: f64) -> (u64, u32) {
    debug_assert!((0.0..1.0).contains(&alpha));
    if alpha == 0.0 {
        return (0, 0);
    }
    let bits = alpha.to_bits();
    let raw_exp = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    let (mut m, mut t) = if raw_exp == 0 {
        (frac, 1074i64)
    } else {
        (frac | (1u64 << 52), 1075 - raw_exp)
    };
    let tz = m.trailing_zeros();
    m >>= tz;
    t -= tz as i64;
    debug_assert!(t >= 1);
    (m, t as u32)
}

/// A phase polynomial prepared for exact evaluation. `horner[i]` is the
/// fixed-point image of alpha_{i+1} when its denominator exponent is at most
/// 128; wider coefficients are reduced per term.
struct PreparedPhase {
    horner: Vec<u128>,
    wide: Vec<(u32, u64, u32)>, // (power j, m, t) with t > 128
}

impl PreparedPhase {
    fn new(alpha: &[f64]) -> Self {
        let mut horner = vec![0u128; alpha.len()];
        let mut wide = Vec::new();
        for (i, &a) in alpha.iter().enumerate() {
            let (m, t) = dyadic(a);
            if m == 0 {
                continue;
            }
            if t <= 128 {
                horner[i] = (m as u128) << (128 - t);
            } else {
                wide.push((i as u32 + 1, m, t));
            }
        }
        PreparedPhase { horner, wide }
    }

    /// Fractional part of the phase at integer x, in units of 2^-128.
    fn phase_at(&self, x: u64) -> u128 {
        let mut acc: u128 = 0;
        for &coeff in self.horner.iter().rev() {
            acc = acc.wrapping_add(coeff).wrapping_mul(x as u128);
        }
        for &(j, m, t) in &self.wide {
            acc = acc.wrapping_add(wide_term(x, j, m, t));
        }
        acc
    }
}

/// frac(m * x^j / 2^t) in units of 2^-128, for t > 128, by exact reduction
/// mod 2^t.
fn wide_term(x: u64, j: u32, m: u64, t: u32) -> u128 {
    let modulus = BigUint::one() << t;
    let xj = BigUint::from(x).modpow(&BigUint::from(j), &modulus);
    let r = (xj * m) % &modulus;
    let shifted: BigUint = r >> (t - 128);
    shifted
        .iter_u64_digits()
        .rev()
        .fold(0u128, |acc, d| (acc << 64) | d as u128)
}

fn phase_to_unit_f64(phase: u128) -> f64 {
    ((phase >> 64) as u64 as f64) * 2.0f64.powi(-64)
}

/// Distance from the phase to the nearest integer, in units of 2^-128.
fn phase_distance(phase: u128) -> u128 {
    phase.min(phase.wrapping_neg())
}

// ---------------------------------------------------------------------------
// The sums
// ---------------------------------------------------------------------------

const EVAL_CHUNK: u64 = 1 << 16;

/// Evaluates f(alpha; X) with compensated summation.
pub fn eval_f(alpha: &PhaseVector, x_max: u64, cfg: &ComputeConfig) -> Complex {
    let prepared = PreparedPhase::new(&alpha.alpha);
    let chunks = parallel::fixed_chunks(x_max, EVAL_CHUNK);
    cfg.progress.begin(x_max);
    let partials = parallel::run_jobs(chunks.len(), cfg.threads, |i| {
        let (lo, hi) = chunks[i];
        let mut acc = KahanComplex::default();
        for x in lo + 1..=hi {
            acc.add(Complex::unit_phase(phase_to_unit_f64(prepared.phase_at(x))));
        }
        cfg.progress.advance(hi - lo);
        acc
    });
    let mut total = KahanComplex::default();
    for p in &partials {
        total.add_partial(p);
    }
    total.value()
}

/// Evaluates g(beta; X) = sum e(beta x^k): f with only the degree-k
/// coefficient set.
pub fn eval_g(beta: f64, k: u32, x_max: u64, cfg: &ComputeConfig) -> Result<Complex> {
    if k < 1 {
        return Err(invalid("degree must be at least 1"));
    }
    let mut alpha = vec![0.0; k as usize];
    alpha[k as usize - 1] = beta;
    Ok(eval_f(&PhaseVector::new(&alpha)?, x_max, cfg))
}

// ---------------------------------------------------------------------------
// Rational approximation
// ---------------------------------------------------------------------------

/// A rational approximation a/q to a real number: q <= Q, gcd(a, q) = 1,
/// and |q alpha - a| < 1/Q.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalApprox {
    pub numerator: i64,
    pub denominator: u64,
    pub err: f64,
}

/// Exact rational image of a finite f64: (sign, numerator, log2 denominator).
fn exact_rational(value: f64) -> (bool, BigUint, u32) {
    let negative = value < 0.0;
    let v = value.abs();
    if v == 0.0 {
        return (false, BigUint::ZERO, 0);
    }
    let bits = v.to_bits();
    let raw_exp = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    let (m, e) = if raw_exp == 0 {
        (frac, -1074i64)
    } else {
        (frac | (1u64 << 52), raw_exp - 1075)
    };
    if e >= 0 {
        (negative, BigUint::from(m) << e as u32, 0)
    } else {
        (negative, BigUint::from(m), (-e) as u32)
    }
}

/// Continued-fraction convergents p/q of (+-) num / 2^t, visited in order of
/// increasing q. Stops when the callback returns false or the expansion
/// terminates.
fn for_each_convergent(
    negative: bool,
    num: &BigUint,
    t: u32,
    mut visit: impl FnMut(&num_bigint::BigInt, &BigUint) -> bool,
) {
    use num_bigint::BigInt;
    let mut n = BigInt::from(num.clone());
    if negative {
        n = -n;
    }
    let mut d = BigInt::from(BigUint::one() << t);
    // seeds p_{-2} = 0, p_{-1} = 1 and q_{-2} = 1, q_{-1} = 0
    let (mut p_prev, mut p) = (BigInt::from(0), BigInt::from(1));
    let (mut q_prev, mut q) = (BigInt::from(1), BigInt::from(0));
    loop {
        // floor division keeps partial quotients correct for negative input
        let (a, r) = num_integer::Integer::div_mod_floor(&n, &d);
        let p_next = &a * &p + &p_prev;
        let q_next = &a * &q + &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
        let q_mag = q.magnitude().clone();
        if !visit(&p, &q_mag) {
            return;
        }
        if r == BigInt::from(0) {
            return;
        }
        n = d;
        d = r;
    }
}

/// |q * alpha - a| where alpha = (+-) num / 2^t, exactly, as a numerator
/// over 2^t.
fn approx_error_numerator(
    negative: bool,
    num: &BigUint,
    t: u32,
    a: &num_bigint::BigInt,
    q: &BigUint,
) -> BigUint {
    use num_bigint::BigInt;
    let mut alpha_num = BigInt::from(num.clone());
    if negative {
        alpha_num = -alpha_num;
    }
    let lhs = alpha_num * BigInt::from(q.clone());
    let rhs = a * BigInt::from(BigUint::one() << t);
    (lhs - rhs).magnitude().clone()
}

fn ratio_to_f64(num: &BigUint, log2_den: u32) -> f64 {
    if num == &BigUint::ZERO {
        return 0.0;
    }
    (crate::numeric::ln_biguint(num) - log2_den as f64 * std::f64::consts::LN_2).exp()
}

/// Best rational approximation with denominator at most `q_bound`: the
/// continued-fraction convergent of largest denominator <= Q. The pigeonhole
/// bound |q alpha - a| < 1/Q then holds automatically, because a
/// convergent's error is below 1/q_next and the next denominator exceeds Q
/// (or the expansion terminated, with error zero).
pub fn dirichlet_approx(alpha: f64, q_bound: u64) -> Result<RationalApprox> {
    if q_bound < 1 {
        return Err(invalid("Q must be at least 1"));
    }
    if !alpha.is_finite() {
        return Err(invalid("alpha must be finite"));
    }
    let (negative, num, t) = exact_rational(alpha);
    let bound = BigUint::from(q_bound);
    let mut best: Option<(num_bigint::BigInt, BigUint)> = None;
    for_each_convergent(negative, &num, t, |p, q| {
        if *q > bound {
            return false;
        }
        best = Some((p.clone(), q.clone()));
        true
    });
    let (a, q) = best.expect("the q=1 convergent is always admissible");
    let err_num = approx_error_numerator(negative, &num, t, &a, &q);
    let err = ratio_to_f64(&err_num, t);
    let a_i64 = i64::try_from(&a).map_err(|_| invalid("approximation numerator exceeds i64"))?;
    let q_u64 = u64::try_from(&q).expect("q <= Q fits u64");
    Ok(RationalApprox {
        numerator: a_i64,
        denominator: q_u64,
        err,
    })
}

/// True iff no reduced fraction a/q with q <= X satisfies
/// |q beta - a| <= X^{1-k}. Decided exactly: the minimum of |q beta - a|
/// over q <= X is attained at a continued-fraction convergent, and the
/// comparison against X^{1-k} is carried out in integer arithmetic.
pub fn is_minor_arc(beta: f64, k: u32, x_max: u64) -> Result<bool> {
    if k < 2 {
        return Err(invalid("minor arcs need degree k >= 2"));
    }
    if x_max < 1 {
        return Err(invalid("X must be positive"));
    }
    if !beta.is_finite() {
        return Err(invalid("beta must be finite"));
    }
    let (negative, num, t) = exact_rational(beta);
    let x_big = BigUint::from(x_max);
    let x_pow = x_big.pow(k - 1); // threshold is 1 / X^{k-1}
    let mut major = false;
    for_each_convergent(negative, &num, t, |p, q| {
        if *q > x_big {
            return false;
        }
        let err_num = approx_error_numerator(negative, &num, t, p, q);
        // |q beta - a| <= X^{1-k}  <=>  err_num * X^{k-1} <= 2^t
        if err_num * &x_pow <= (BigUint::one() << t) {
            major = true;
            return false;
        }
        true
    });
    Ok(!major)
}

// ---------------------------------------------------------------------------
// Bound envelopes
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnvelopeKind {
    Weyl,
    Vinogradov,
}

impl EnvelopeKind {
    pub fn name(self) -> &'static str {
        match self {
            EnvelopeKind::Weyl => "weyl",
            EnvelopeKind::Vinogradov => "vinogradov",
        }
    }
}

/// A pointwise bound envelope value, with the epsilon that was used.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundEnvelope {
    pub kind: EnvelopeKind,
    pub value: f64,
    pub epsilon: f64,
}

/// X^{1+eps} (q^{-1} + X^{-1} + q X^{-k})^{2^{1-k}}.
pub fn weyl_envelope(q: u64, k: u32, x_max: u64, epsilon: f64) -> Result<BoundEnvelope> {
    if q < 1 || k < 1 || x_max < 1 {
        return Err(invalid("q, k, X must be positive"));
    }
    let x = x_max as f64;
    let base = 1.0 / q as f64 + 1.0 / x + q as f64 * x.powi(-(k as i32));
    let value = x.powf(1.0 + epsilon) * base.powf(2.0f64.powi(1 - k as i32));
    Ok(BoundEnvelope {
        kind: EnvelopeKind::Weyl,
        value,
        epsilon,
    })
}

/// X^{1+eps} (q^{-1} + X^{-1} + q X^{-j})^{sigma(k)} with
/// sigma(k)^{-1} = 2 (k-1)(k-2); degree must be at least 3.
pub fn vinogradov_envelope(
    q: u64,
    j: u32,
    k: u32,
    x_max: u64,
    epsilon: f64,
) -> Result<BoundEnvelope> {
    let sigma = sigma_exponent(k)?;
    if j < 2 || j > k {
        return Err(invalid("coefficient index j must satisfy 2 <= j <= k"));
    }
    if q < 1 || x_max < 1 {
        return Err(invalid("q and X must be positive"));
    }
    let x = x_max as f64;
    let base = 1.0 / q as f64 + 1.0 / x + q as f64 * x.powi(-(j as i32));
    let value = x.powf(1.0 + epsilon) * base.powf(sigma);
    Ok(BoundEnvelope {
        kind: EnvelopeKind::Vinogradov,
        value,
        epsilon,
    })
}

/// sigma(k) = 1 / (2 (k-1)(k-2)) for k >= 3.
pub fn sigma_exponent(k: u32) -> Result<f64> {
    if k < 3 {
        return Err(invalid("the mean-value envelope needs degree k >= 3"));
    }
    Ok(1.0 / (2.0 * (k as f64 - 1.0) * (k as f64 - 2.0)))
}

// ---------------------------------------------------------------------------
// Polynomial equidistribution
// ---------------------------------------------------------------------------

/// Scan cap; beyond this an exhaustive scan stops being a desk computation.
pub const EQUIDISTRIBUTION_MAX_N: u64 = 100_000_000;

/// Minimizes the distance of alpha_1 n + ... + alpha_k n^k to the nearest
/// integer over 1 <= n <= n_max by exhaustive scan. Returns the smallest
/// minimizing n and the minimum.
pub fn equidistribution_min(
    alpha: &PhaseVector,
    n_max: u64,
    cfg: &ComputeConfig,
) -> Result<(u64, f64)> {
    if n_max < 1 {
        return Err(invalid("N must be positive"));
    }
    if n_max > EQUIDISTRIBUTION_MAX_N {
        return Err(invalid(format!(
            "N = {n_max} exceeds the exhaustive-scan cap {EQUIDISTRIBUTION_MAX_N}"
        )));
    }
    let prepared = PreparedPhase::new(&alpha.alpha);
    let chunks = parallel::fixed_chunks(n_max, EVAL_CHUNK);
    cfg.progress.begin(n_max);
    let partials = parallel::run_jobs(chunks.len(), cfg.threads, |i| {
        let (lo, hi) = chunks[i];
        let mut best_dist = u128::MAX;
        let mut best_n = 0u64;
        for n in lo + 1..=hi {
            let d = phase_distance(prepared.phase_at(n));
            if d < best_dist {
                best_dist = d;
                best_n = n;
            }
        }
        cfg.progress.advance(hi - lo);
        (best_dist, best_n)
    });
    let (mut best_dist, mut best_n) = (u128::MAX, 0u64);
    for (d, n) in partials {
        // chunks arrive in ascending n order; strict inequality keeps the
        // first minimizer
        if d < best_dist {
            best_dist = d;
            best_n = n;
        }
    }
    Ok((best_n, (best_dist as f64) * 2.0f64.powi(-128)))
}

// ---------------------------------------------------------------------------
// Reference evaluator
// ---------------------------------------------------------------------------

/// Independent slow-path evaluator used to validate [`eval_f`]: the phase is
/// reduced with big-integer arithmetic over the common power-of-two
/// denominator, and terms are accumulated in double-double precision. No
/// code is shared with the fixed-point fast path.
pub fn reference_eval_f(alpha: &[f64], x_max: u64) -> Complex {
    struct DoubleDouble {
        hi: f64,
        lo: f64,
    }
    impl DoubleDouble {
        fn add(&mut self, v: f64) {
            let s = self.hi + v;
            let bb = s - self.hi;
            let err = (self.hi - (s - bb)) + (v - bb);
            self.lo += err;
            self.hi = s;
        }
        fn value(&self) -> f64 {
            self.hi + self.lo
        }
    }

    let parts: Vec<(u64, u32)> = alpha
        .iter()
        .map(|&a| {
            let r = a.rem_euclid(1.0);
            dyadic(if r >= 1.0 { 0.0 } else { r })
        })
        .collect();
    let t_common = parts.iter().map(|&(_, t)| t).max().unwrap_or(0);
    let modulus = BigUint::one() << t_common;
    let mut re = DoubleDouble { hi: 0.0, lo: 0.0 };
    let mut im = DoubleDouble { hi: 0.0, lo: 0.0 };
    for x in 1..=x_max {
        let mut numerator = BigUint::ZERO;
        for (j, &(m, t)) in parts.iter().enumerate() {
            if m == 0 {
                continue;
            }
            let term = (BigUint::from(x).pow(j as u32 + 1) * m) << (t_common - t);
            numerator = (numerator + term) % &modulus;
        }
        let frac = if t_common == 0 {
            0.0
        } else if t_common <= 64 {
            let v = numerator.iter_u64_digits().next().unwrap_or(0);
            v as f64 * 2.0f64.powi(-(t_common as i32))
        } else {
            let top: BigUint = &numerator >> (t_common - 64);
            let v = top.iter_u64_digits().next().unwrap_or(0);
            v as f64 * 2.0f64.powi(-64)
        };
        let z = Complex::unit_phase(frac);
        re.add(z.re);
        im.add(z.im);
    }
    Complex::new(re.value(), im.value())
}
