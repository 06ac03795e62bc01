//! Scaled fixed-point arithmetic over big integers.
//!
//! A `Precise` holds `mant * 2^(-scale)`. Addition and subtraction are
//! exact; multiplication and division round to the nearest unit in the
//! last place. That single-unit error model keeps the accounting easy:
//! a computation with N rounded operations is correct to N units of
//! 2^(-scale), and callers pick `scale` with generous guard bits.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Euler's constant to 50 decimal digits (OEIS A001620).
const EULER_GAMMA_DIGITS: &str = "57721566490153286060651209008240243104215933593992";

/// Fixed-point real: `mant * 2^(-scale)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Precise {
    mant: BigInt,
    scale: u32,
}

impl Precise {
    pub fn zero(scale: u32) -> Self {
        Self {
            mant: BigInt::zero(),
            scale,
        }
    }

    pub fn from_u64(n: u64, scale: u32) -> Self {
        Self {
            mant: BigInt::from(n) << scale,
            scale,
        }
    }

    /// Rounded value of `num/den`; `den` must be nonzero.
    pub fn from_ratio(num: &BigInt, den: &BigInt, scale: u32) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Domain {
                what: "fixed-point ratio needs a nonzero denominator",
                value: 0.0,
            });
        }
        Ok(Self {
            mant: div_round(&(num << scale), den),
            scale,
        })
    }

    /// Embeds a finite f64. Exact whenever the value's fractional part
    /// fits in `scale` bits, which `fractional_bits` guarantees.
    pub fn from_f64(v: f64, scale: u32) -> Result<Self> {
        if !v.is_finite() {
            return Err(Error::Domain {
                what: "fixed-point embedding needs a finite value",
                value: v,
            });
        }
        let (m, e) = decompose(v);
        let mut mant = BigInt::from(m);
        let shift = e + scale as i64;
        if shift >= 0 {
            mant <<= shift as u64;
        } else {
            mant = shr_round(&mant, (-shift) as u64);
        }
        if v < 0.0 {
            mant = -mant;
        }
        Ok(Self { mant, scale })
    }

    /// Euler's constant, rounded from its 50-digit expansion. The
    /// digit string itself is accurate to about 3.6e-51, so requesting
    /// more precision than that only adds resolution, not accuracy.
    pub fn euler_gamma(scale: u32) -> Self {
        let num: BigInt = EULER_GAMMA_DIGITS.parse().expect("literal digits");
        let den = BigInt::from(10u8).pow(EULER_GAMMA_DIGITS.len() as u32);
        Self::from_ratio(&num, &den, scale).expect("den > 0")
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn neg(&self) -> Self {
        Self {
            mant: -&self.mant,
            scale: self.scale,
        }
    }

    pub fn abs(&self) -> Self {
        Self {
            mant: self.mant.abs(),
            scale: self.scale,
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let (a, b, scale) = align(self, rhs);
        Self { mant: a + b, scale }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let (a, b, scale) = align(self, rhs);
        Self { mant: a - b, scale }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let (a, b, scale) = align(self, rhs);
        Self {
            mant: shr_round(&(a * b), scale as u64),
            scale,
        }
    }

    /// Rounded quotient. Panics if `rhs` is zero; every call site in
    /// this module divides by quantities that are positive by
    /// construction.
    pub fn div(&self, rhs: &Self) -> Self {
        let (a, b, scale) = align(self, rhs);
        assert!(!b.is_zero(), "fixed-point division by zero");
        Self {
            mant: div_round(&(a << scale), &b),
            scale,
        }
    }

    /// Exact product with a machine integer.
    pub fn mul_int(&self, n: i64) -> Self {
        Self {
            mant: &self.mant * n,
            scale: self.scale,
        }
    }

    /// Rounded quotient by a nonzero machine integer.
    pub fn div_int(&self, n: i64) -> Self {
        assert!(n != 0, "fixed-point division by zero");
        Self {
            mant: div_round(&self.mant, &BigInt::from(n)),
            scale: self.scale,
        }
    }

    pub fn cmp_value(&self, rhs: &Self) -> Ordering {
        let (a, b, _) = align(self, rhs);
        a.cmp(&b)
    }

    /// True iff `|self| <= 10^(-digits)`, decided exactly.
    pub fn abs_le_pow10(&self, digits: u32) -> bool {
        let lhs = self.mant.magnitude() * num_bigint::BigUint::from(10u8).pow(digits);
        lhs <= (num_bigint::BigUint::one() << self.scale)
    }

    /// Nearest f64 (up to a couple of ulp from the two-step scaling).
    pub fn to_f64(&self) -> f64 {
        if self.mant.is_zero() {
            return 0.0;
        }
        let neg = self.mant.is_negative();
        let mag = self.mant.magnitude();
        let excess = mag.bits() as i64 - 64;
        let v = if excess > 0 {
            let t = mag >> excess as u64;
            t.to_f64().unwrap_or(f64::INFINITY) * pow2(excess - self.scale as i64)
        } else {
            mag.to_f64().unwrap_or(f64::INFINITY) * pow2(-(self.scale as i64))
        };
        if neg {
            -v
        } else {
            v
        }
    }

    /// Decimal rendering with `frac_digits` digits after the point,
    /// rounded half away from zero.
    pub fn to_decimal_string(&self, frac_digits: usize) -> String {
        let pow = BigInt::from(10u8).pow(frac_digits as u32);
        let scaled = div_round(&(&self.mant * &pow), &(BigInt::one() << self.scale));
        let neg = scaled.is_negative();
        let digits = scaled.magnitude().to_string();
        let digits = if digits.len() <= frac_digits {
            format!("{:0>width$}", digits, width = frac_digits + 1)
        } else {
            digits
        };
        let split = digits.len() - frac_digits;
        let sign = if neg { "-" } else { "" };
        if frac_digits == 0 {
            format!("{}{}", sign, &digits[..split])
        } else {
            format!("{}{}.{}", sign, &digits[..split], &digits[split..])
        }
    }

    /// e^self by argument halving, a short Taylor sum, and repeated
    /// squaring. Panics for |self| > 2^20; the oracle never
    /// exponentiates anything near that.
    pub fn exp(&self) -> Self {
        let scale = self.scale;
        let int_bits = self.mant.magnitude().bits() as i64 - scale as i64;
        assert!(int_bits <= 20, "exp argument out of supported range");
        // Halve until |y| < 1/2.
        let halvings = (int_bits + 1).max(0) as u64;
        let y = Self {
            mant: shr_round(&self.mant, halvings),
            scale,
        };
        // exp(y) = sum y^j / j!.
        let mut sum = Self::from_u64(1, scale);
        let mut term = Self::from_u64(1, scale);
        let mut j = 1i64;
        loop {
            term = term.mul(&y).div_int(j);
            if term.is_zero() {
                break;
            }
            sum = sum.add(&term);
            j += 1;
        }
        for _ in 0..halvings {
            sum = sum.mul(&sum);
        }
        sum
    }

    /// Natural logarithm; domain error unless self > 0.
    pub fn ln(&self) -> Result<Self> {
        if !self.mant.is_positive() {
            return Err(Error::Domain {
                what: "logarithm needs a positive value",
                value: self.to_f64(),
            });
        }
        let scale = self.scale;
        // Pull out 2^k so that m = self * 2^(-k) lands in [0.75, 1.5).
        let mut k = self.mant.magnitude().bits() as i64 - 1 - scale as i64;
        let mut m = self.shift_value(-k);
        let three_halves = Self {
            mant: BigInt::from(3) << (scale - 1),
            scale,
        };
        if m.cmp_value(&three_halves) != Ordering::Less {
            k += 1;
            m = m.shift_value(-1);
        }
        // ln m = 2 atanh(t), t = (m-1)/(m+1), |t| <= 1/5.
        let one = Self::from_u64(1, scale);
        let t = m.sub(&one).div(&m.add(&one));
        let mut ln_m = atanh_small(&t).mul_int(2);
        if k != 0 {
            ln_m = ln_m.add(&ln2(scale).mul_int(k));
        }
        Ok(ln_m)
    }

    /// Rounded value of `self * 2^k` (exact for k >= 0).
    fn shift_value(&self, k: i64) -> Self {
        let mant = if k >= 0 {
            &self.mant << k as u64
        } else {
            shr_round(&self.mant, (-k) as u64)
        };
        Self {
            mant,
            scale: self.scale,
        }
    }
}

impl fmt::Display for Precise {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Enough digits to reflect the full scale.
        let digits = (self.scale as f64 / 3.3219) as usize + 1;
        f.write_str(&self.to_decimal_string(digits))
    }
}

/// ln 2 = 2 atanh(1/3).
pub fn ln2(scale: u32) -> Precise {
    let third = Precise::from_ratio(&BigInt::one(), &BigInt::from(3), scale).expect("den > 0");
    atanh_small(&third).mul_int(2)
}

/// atanh by its odd power series; callers keep |t| <= 1/3 so the tail
/// shrinks by at least 9x per term.
fn atanh_small(t: &Precise) -> Precise {
    let t2 = t.mul(t);
    let mut sum = t.clone();
    let mut power = t.clone();
    let mut j = 1i64;
    loop {
        power = power.mul(&t2);
        let term = power.div_int(2 * j + 1);
        if term.is_zero() {
            break;
        }
        sum = sum.add(&term);
        j += 1;
    }
    sum
}

/// Minimum fractional bits that make `Precise::from_f64(v, _)` exact.
pub fn fractional_bits(v: f64) -> u32 {
    let (m, e) = decompose(v);
    if m == 0 || e >= 0 {
        0
    } else {
        (-e).min(1074) as u32
    }
}

/// Exact decomposition |v| = m * 2^e for finite v.
fn decompose(v: f64) -> (u64, i64) {
    let bits = v.abs().to_bits();
    let exp_raw = (bits >> 52) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    if exp_raw == 0 {
        (frac, -1074)
    } else {
        (frac | (1u64 << 52), exp_raw - 1075)
    }
}

/// Exact 2^e across the whole f64 range, including the denormal band
/// that `powi` cannot reach (it builds 2^|e| first, which overflows).
pub(crate) fn pow2(e: i64) -> f64 {
    if e < -1074 {
        0.0
    } else if e > 1023 {
        f64::INFINITY
    } else if e >= -1022 {
        f64::from_bits(((e + 1023) as u64) << 52)
    } else {
        f64::from_bits(1u64 << (e + 1074))
    }
}

/// Brings both operands to the larger scale (exact) and returns the
/// adjusted mantissas.
fn align(a: &Precise, b: &Precise) -> (BigInt, BigInt, u32) {
    let scale = a.scale.max(b.scale);
    let am = &a.mant << (scale - a.scale) as u64;
    let bm = &b.mant << (scale - b.scale) as u64;
    (am, bm, scale)
}

/// Round-half-away integer division.
fn div_round(n: &BigInt, d: &BigInt) -> BigInt {
    let (n, d) = if d.is_negative() {
        (-n, -d)
    } else {
        (n.clone(), d.clone())
    };
    let (q, r) = n.div_rem(&d);
    if (r.magnitude() << 1u8) >= *d.magnitude() {
        if n.is_negative() {
            q - 1
        } else {
            q + 1
        }
    } else {
        q
    }
}

/// Round-half-away right shift.
fn shr_round(n: &BigInt, k: u64) -> BigInt {
    if k == 0 {
        return n.clone();
    }
    div_round(n, &(BigInt::one() << k))
}

#[cfg(test)]
mod tests {
    use super::*;

    const S: u32 = 256;

    fn approx(p: &Precise, v: f64, tol: f64) {
        assert!(
            (p.to_f64() - v).abs() <= tol,
            "got {}, want {}",
            p.to_f64(),
            v
        );
    }

    #[test]
    fn arithmetic_round_trip() {
        let a = Precise::from_ratio(&BigInt::from(7), &BigInt::from(3), S).unwrap();
        let b = Precise::from_u64(2, S);
        approx(&a.add(&b), 7.0 / 3.0 + 2.0, 1e-15);
        approx(&a.sub(&b), 7.0 / 3.0 - 2.0, 1e-15);
        approx(&a.mul(&b), 14.0 / 3.0, 1e-15);
        approx(&a.div(&b), 7.0 / 6.0, 1e-15);
        approx(&a.mul_int(-3), -7.0, 1e-15);
        approx(&a.div_int(7), 1.0 / 3.0, 1e-15);
    }

    #[test]
    fn f64_embedding_is_exact() {
        for &v in &[1.5, -0.1, 1e-300, 3.0e300, 0.0009765625] {
            let p = Precise::from_f64(v, 64 + fractional_bits(v)).unwrap();
            assert_eq!(p.to_f64(), v, "round trip of {v}");
        }
        assert!(Precise::from_f64(f64::INFINITY, S).is_err());
    }

    #[test]
    fn exp_and_ln_invert() {
        let x = Precise::from_ratio(&BigInt::from(5), &BigInt::from(4), S).unwrap();
        let back = x.exp().ln().unwrap();
        assert!(back.sub(&x).abs_le_pow10(70));
        approx(&Precise::from_u64(1, S).exp(), std::f64::consts::E, 1e-14);
        approx(&ln2(S), std::f64::consts::LN_2, 1e-15);
        assert!(Precise::zero(S).ln().is_err());
    }

    #[test]
    fn ln_handles_extreme_magnitudes() {
        let big = Precise::from_f64(1e300, S).unwrap();
        approx(&big.ln().unwrap(), 690.77552789821368, 1e-10);
        let small = Precise::from_ratio(&BigInt::one(), &BigInt::from(10u8).pow(30), S).unwrap();
        approx(&small.ln().unwrap(), -69.077552789821368, 1e-12);
    }

    #[test]
    fn gamma_constant_digits() {
        let g = Precise::euler_gamma(S);
        approx(&g, 0.5772156649015329, 1e-16);
        let s = g.to_decimal_string(20);
        assert_eq!(s, "0.57721566490153286061");
    }

    #[test]
    fn pow10_bound_is_exact() {
        // 2^-100 ~ 7.9e-31 sits between 1e-30 and 1e-31 and is exactly
        // representable, so both answers are unambiguous.
        let tiny = Precise {
            mant: BigInt::one() << (S - 100),
            scale: S,
        };
        assert!(tiny.abs_le_pow10(30));
        assert!(!tiny.abs_le_pow10(31));
        assert!(tiny.neg().abs_le_pow10(30));
    }

    #[test]
    fn decimal_rendering() {
        let p = Precise::from_ratio(&BigInt::from(-1), &BigInt::from(8), S).unwrap();
        assert_eq!(p.to_decimal_string(4), "-0.1250");
        assert_eq!(p.to_decimal_string(1), "-0.1");
        let q = Precise::from_u64(42, S);
        assert_eq!(q.to_decimal_string(0), "42");
    }
}
