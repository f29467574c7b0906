//! Exact amplitudes for the circuit simulator: elements of `Z[ω]` with
//! `ω = e^{iπ/4}` (so `ω⁴ = -1`), divided by a power of `√2`.
//!
//! Every gate in the parity circuit maps this ring to itself: Hadamards
//! contribute `1/√2` and all other gates contribute powers of `i = ω²`.
//! Ring equality is decidable because values are kept in a canonical form:
//! either no `√2` denominator remains, or the numerator is not divisible by
//! `√2 = ω - ω³`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// `(a + bω + cω² + dω³) / √2^half_powers`, canonicalized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Amplitude {
    coeffs: [BigInt; 4],
    half_powers: u32,
}

impl Amplitude {
    pub fn zero() -> Self {
        Amplitude { coeffs: Default::default(), half_powers: 0 }
    }

    pub fn one() -> Self {
        Amplitude::from_int(1)
    }

    pub fn from_int(v: i64) -> Self {
        let mut coeffs: [BigInt; 4] = Default::default();
        coeffs[0] = BigInt::from(v);
        Amplitude { coeffs, half_powers: 0 }
    }

    /// `ω^k` for any integer `k` (period 8, `ω⁴ = -1`).
    pub fn omega_pow(k: i64) -> Self {
        let k = k.rem_euclid(8) as usize;
        let mut coeffs: [BigInt; 4] = Default::default();
        coeffs[k % 4] = if k < 4 { BigInt::one() } else { -BigInt::one() };
        Amplitude { coeffs, half_powers: 0 }
    }

    /// `i^k = ω^{2k}`.
    pub fn i_pow(k: i64) -> Self {
        Amplitude::omega_pow(2 * k)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.half_powers == 0
            && self.coeffs[0].is_one()
            && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn coeffs(&self) -> &[BigInt; 4] {
        &self.coeffs
    }

    pub fn half_powers(&self) -> u32 {
        self.half_powers
    }

    /// Multiply the represented value by `√2 = ω - ω³` (numerator only).
    fn sqrt2_times(coeffs: &[BigInt; 4]) -> [BigInt; 4] {
        let [a, b, c, d] = coeffs;
        [b - d, a + c, b + d, c - a]
    }

    /// Reduce to canonical form: strip `√2` factors shared by numerator and
    /// denominator. Idempotent and deterministic.
    fn normalize(&mut self) {
        if self.is_zero() {
            self.half_powers = 0;
            return;
        }
        while self.half_powers > 0 {
            // Divisible by √2 iff a ≡ c and b ≡ d (mod 2); the quotient is
            // (ω - ω³)·X / 2.
            let [a, b, c, d] = &self.coeffs;
            if !((a - c).is_even() && (b - d).is_even()) {
                break;
            }
            let halved = Self::sqrt2_times(&self.coeffs).map(|x| x / 2);
            self.coeffs = halved;
            self.half_powers -= 1;
        }
    }

    /// Multiply by `1/√2` (raise the denominator by one power).
    pub fn times_inv_sqrt2(mut self) -> Self {
        if self.is_zero() {
            return self;
        }
        self.half_powers += 1;
        self.normalize();
        self
    }

    /// Complex conjugate (`ω ↦ ω⁻¹ = -ω³`).
    pub fn conj(&self) -> Self {
        let [a, b, c, d] = &self.coeffs;
        Amplitude {
            coeffs: [a.clone(), -d.clone(), -c.clone(), -b.clone()],
            half_powers: self.half_powers,
        }
    }

    /// `|z|²` as an exact ring element.
    pub fn norm_sq(&self) -> Amplitude {
        self * &self.conj()
    }

    /// Floating-point embedding, for sanity checks only.
    pub fn to_complex(&self) -> Complex64 {
        let omega = Complex64::new(0.5f64.sqrt(), 0.5f64.sqrt());
        let mut z = Complex64::new(0.0, 0.0);
        let mut w = Complex64::new(1.0, 0.0);
        for c in &self.coeffs {
            z += w * c.to_f64().expect("coefficient fits in f64 for embedding");
            w *= omega;
        }
        z / 2f64.powf(self.half_powers as f64 / 2.0)
    }
}

impl Default for Amplitude {
    fn default() -> Self {
        Amplitude::zero()
    }
}

impl Add for &Amplitude {
    type Output = Amplitude;

    fn add(self, rhs: &Amplitude) -> Amplitude {
        let k = self.half_powers.max(rhs.half_powers);
        let raise = |a: &Amplitude| {
            let mut coeffs = a.coeffs.clone();
            for _ in a.half_powers..k {
                coeffs = Amplitude::sqrt2_times(&coeffs);
            }
            coeffs
        };
        let x = raise(self);
        let y = raise(rhs);
        let mut out = Amplitude {
            coeffs: [&x[0] + &y[0], &x[1] + &y[1], &x[2] + &y[2], &x[3] + &y[3]],
            half_powers: k,
        };
        out.normalize();
        out
    }
}

impl Sub for &Amplitude {
    type Output = Amplitude;

    fn sub(self, rhs: &Amplitude) -> Amplitude {
        self + &(-rhs)
    }
}

impl Neg for &Amplitude {
    type Output = Amplitude;

    fn neg(self) -> Amplitude {
        Amplitude {
            coeffs: self.coeffs.clone().map(|c| -c),
            half_powers: self.half_powers,
        }
    }
}

impl Mul for &Amplitude {
    type Output = Amplitude;

    fn mul(self, rhs: &Amplitude) -> Amplitude {
        let a = &self.coeffs;
        let b = &rhs.coeffs;
        // Convolution with ω⁴ = -1 folding degrees 4..6 back down.
        let coeffs = [
            &a[0] * &b[0] - &a[1] * &b[3] - &a[2] * &b[2] - &a[3] * &b[1],
            &a[0] * &b[1] + &a[1] * &b[0] - &a[2] * &b[3] - &a[3] * &b[2],
            &a[0] * &b[2] + &a[1] * &b[1] + &a[2] * &b[0] - &a[3] * &b[3],
            &a[0] * &b[3] + &a[1] * &b[2] + &a[2] * &b[1] + &a[3] * &b[0],
        ];
        let mut out = Amplitude {
            coeffs,
            half_powers: self.half_powers + rhs.half_powers,
        };
        out.normalize();
        out
    }
}

impl fmt::Display for Amplitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["", "ω", "ω²", "ω³"];
        let mut first = true;
        for (c, name) in self.coeffs.iter().zip(names) {
            if c.is_zero() {
                continue;
            }
            if first {
                write!(f, "{c}{name}")?;
                first = false;
            } else if c.sign() == num_bigint::Sign::Minus {
                write!(f, " - {}{}", -c, name)?;
            } else {
                write!(f, " + {c}{name}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        if self.half_powers > 0 {
            write!(f, " /√2^{}", self.half_powers)?;
        }
        Ok(())
    }
}

/// Wire form used by the `--trace` output: coefficient 4-tuple (as decimal
/// strings) plus the `√2` power.
#[derive(Serialize)]
pub struct AmplitudeJson {
    pub coeffs: [String; 4],
    pub half_powers: u32,
}

impl From<&Amplitude> for AmplitudeJson {
    fn from(a: &Amplitude) -> Self {
        AmplitudeJson {
            coeffs: [
                a.coeffs[0].to_string(),
                a.coeffs[1].to_string(),
                a.coeffs[2].to_string(),
                a.coeffs[3].to_string(),
            ],
            half_powers: a.half_powers,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn amp(a: i64, b: i64, c: i64, d: i64, k: u32) -> Amplitude {
        let mut x = Amplitude {
            coeffs: [a.into(), b.into(), c.into(), d.into()],
            half_powers: k,
        };
        x.normalize();
        x
    }

    #[test]
    fn omega_powers_cycle() {
        assert_eq!(Amplitude::omega_pow(8), Amplitude::one());
        assert_eq!(Amplitude::omega_pow(4), -&Amplitude::one());
        assert_eq!(Amplitude::i_pow(2), -&Amplitude::one());
        assert_eq!(
            &Amplitude::omega_pow(3) * &Amplitude::omega_pow(7),
            Amplitude::omega_pow(10)
        );
    }

    #[test]
    fn sqrt2_reduction() {
        // (ω - ω³)/√2 = 1
        let sqrt2 = amp(0, 1, 0, -1, 1);
        assert_eq!(sqrt2, Amplitude::one());
        // 2/√2² = 1
        assert_eq!(amp(2, 0, 0, 0, 2), Amplitude::one());
        // 1/√2 is already canonical
        let half = amp(1, 0, 0, 0, 1);
        assert_eq!(half.half_powers(), 1);
    }

    #[test]
    fn hadamard_arithmetic() {
        // (1 + 1)/√2 · 1/√2 = 1: the two-H round trip on |0⟩.
        let x = Amplitude::one();
        let plus = (&x + &x).times_inv_sqrt2(); // amplitude √2 = 2/√2
        let back = plus.times_inv_sqrt2();
        assert_eq!(back, Amplitude::one());
    }

    #[test]
    fn conjugation_and_norm() {
        let z = amp(1, 2, -1, 3, 1);
        let n = z.norm_sq();
        // |z|² is real: coefficients of ω and ω³ cancel, ω² part vanishes.
        let c = n.to_complex();
        assert!(c.im.abs() < 1e-12);
        assert!((c.re - z.to_complex().norm_sqr()).abs() < 1e-9);
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(amp(1, 0, -2, 0, 1).to_string(), "1 - 2ω² /√2^1");
        assert_eq!(Amplitude::zero().to_string(), "0");
    }

    fn arb_amp() -> impl Strategy<Value = Amplitude> {
        (
            -20i64..20,
            -20i64..20,
            -20i64..20,
            -20i64..20,
            0u32..4,
        )
            .prop_map(|(a, b, c, d, k)| amp(a, b, c, d, k))
    }

    proptest! {
        #[test]
        fn normalization_is_idempotent(z in arb_amp()) {
            let mut again = z.clone();
            again.normalize();
            prop_assert_eq!(z, again);
        }

        #[test]
        fn ring_laws(x in arb_amp(), y in arb_amp(), z in arb_amp()) {
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&x + &y, &y + &x);
        }

        #[test]
        fn embedding_matches_ring_product(x in arb_amp(), y in arb_amp()) {
            let exact = (&x * &y).to_complex();
            let float = x.to_complex() * y.to_complex();
            prop_assert!((exact - float).norm() < 1e-9);
        }

        #[test]
        fn addition_respects_embedding(x in arb_amp(), y in arb_amp()) {
            let exact = (&x + &y).to_complex();
            let float = x.to_complex() + y.to_complex();
            prop_assert!((exact - float).norm() < 1e-9);
        }
    }
}
