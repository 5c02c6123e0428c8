//! Small numeric building blocks: complex values, compensated summation,
//! and logarithms of big integers.

use num_bigint::BigUint;

/// A double-precision complex value.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Complex {
    pub re: f64,
    pub im: f64,
}

impl Complex {
    pub const ZERO: Complex = Complex { re: 0.0, im: 0.0 };
    pub const ONE: Complex = Complex { re: 1.0, im: 0.0 };

    pub fn new(re: f64, im: f64) -> Self {
        Complex { re, im }
    }

    /// e(t) = exp(2*pi*i*t) for t in [0, 1).
    pub fn unit_phase(t: f64) -> Self {
        let (s, c) = (2.0 * std::f64::consts::PI * t).sin_cos();
        Complex { re: c, im: s }
    }

    pub fn conj(self) -> Self {
        Complex::new(self.re, -self.im)
    }

    pub fn norm(self) -> f64 {
        self.re.hypot(self.im)
    }

    pub fn scale(self, k: f64) -> Self {
        Complex::new(self.re * k, self.im * k)
    }

    /// Integer power by repeated squaring.
    pub fn powu(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Complex::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

impl std::ops::Add for Complex {
    type Output = Complex;
    fn add(self, rhs: Complex) -> Complex {
        Complex::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl std::ops::Sub for Complex {
    type Output = Complex;
    fn sub(self, rhs: Complex) -> Complex {
        Complex::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl std::ops::Mul for Complex {
    type Output = Complex;
    fn mul(self, rhs: Complex) -> Complex {
        Complex::new(
            self.re * rhs.re - self.im * rhs.im,
            self.re * rhs.im + self.im * rhs.re,
        )
    }
}

/// Kahan compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    err: f64,
}

impl KahanSum {
    pub fn add(&mut self, value: f64) {
        let y = value - self.err;
        let t = self.sum + y;
        self.err = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum
    }
}

/// Kahan accumulator over complex terms.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanComplex {
    re: KahanSum,
    im: KahanSum,
}

impl KahanComplex {
    pub fn add(&mut self, z: Complex) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    /// Folds another compensated partial in; used when combining chunked
    /// partial sums in canonical order.
    pub fn add_partial(&mut self, other: &KahanComplex) {
        self.re.add(other.re.value());
        self.im.add(other.im.value());
    }

    pub fn value(&self) -> Complex {
        Complex::new(self.re.value(), self.im.value())
    }
}

/// Natural log of a nonzero big integer without overflowing f64.
pub fn ln_biguint(n: &BigUint) -> f64 {
    assert!(*n != BigUint::from(0u32), "ln of zero");
    let bits = n.bits();
    if bits <= 64 {
        let v: u64 = n.iter_u64_digits().next().unwrap_or(0);
        return (v as f64).ln();
    }
    // Take the top 64 bits as mantissa and account for the shift.
    let shift = bits - 64;
    let top: BigUint = n >> shift;
    let mantissa: u64 = top.iter_u64_digits().next().unwrap();
    (mantissa as f64).ln() + shift as f64 * std::f64::consts::LN_2
}

/// f64 value of a big integer, going through `ln` when it exceeds f64 range.
pub fn biguint_to_f64(n: &BigUint) -> f64 {
    if n.bits() <= 1023 {
        let mut acc = 0.0f64;
        for d in n.iter_u64_digits().rev() {
            acc = acc * 1.8446744073709552e19 + d as f64;
        }
        acc
    } else {
        f64::INFINITY
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    #[test]
    fn unit_phase_half_turn() {
        let z = Complex::unit_phase(0.5);
        assert!((z.re + 1.0).abs() < 1e-15);
        assert!(z.im.abs() < 1e-15);
    }

    #[test]
    fn kahan_beats_naive_on_magnitude_spread() {
        let mut k = KahanSum::default();
        k.add(1e16);
        for _ in 0..10 {
            k.add(1.0);
        }
        k.add(-1e16);
        assert_eq!(k.value(), 10.0);
    }

    #[test]
    fn ln_biguint_matches_f64_in_range() {
        let n = BigUint::from(123456789u64);
        assert!((ln_biguint(&n) - (123456789f64).ln()).abs() < 1e-12);
        let big = BigUint::from(10u32).pow(60);
        assert!((ln_biguint(&big) - 60.0 * (10f64).ln()).abs() < 1e-9);
    }

    #[test]
    fn biguint_to_f64_roundtrip() {
        let n = BigUint::from(10u32).pow(30);
        let v = biguint_to_f64(&n);
        assert!((v - 1e30).abs() / 1e30 < 1e-12);
    }
}
