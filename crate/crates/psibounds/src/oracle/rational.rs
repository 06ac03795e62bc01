//! Exact rational arithmetic for harmonic numbers.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::{Error, Result};

/// Default ceiling for harmonic sweeps.
pub const DEFAULT_HARMONIC_CAP: u64 = 1_000_000;

/// An arbitrary-precision fraction stored in lowest terms with a
/// positive denominator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactRational {
    num: BigInt,
    den: BigInt,
}

impl ExactRational {
    /// Builds the reduced fraction `num/den`; `den` must be nonzero.
    pub fn new(num: BigInt, den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Domain {
                what: "rational denominator must be nonzero",
                value: 0.0,
            });
        }
        let mut num = num;
        let mut den = den;
        if den.sign() == Sign::Minus {
            num = -num;
            den = -den;
        }
        let g = num.gcd(&den);
        if !g.is_one() {
            num /= &g;
            den /= &g;
        }
        Ok(Self { num, den })
    }

    pub fn from_integer(n: i64) -> Self {
        Self {
            num: BigInt::from(n),
            den: BigInt::one(),
        }
    }

    pub fn numer(&self) -> &BigInt {
        &self.num
    }

    pub fn denom(&self) -> &BigInt {
        &self.den
    }

    /// Nearest-f64 conversion, good to well under one ulp even when
    /// numerator and denominator are far outside the f64 range.
    pub fn to_f64(&self) -> f64 {
        let (sign, mag) = match self.num.sign() {
            Sign::NoSign => return 0.0,
            Sign::Plus => (1.0, self.num.magnitude().clone()),
            Sign::Minus => (-1.0, self.num.magnitude().clone()),
        };
        sign * ratio_to_f64(&mag, self.den.magnitude())
    }

    /// Exact comparison against a finite f64.
    pub fn cmp_f64(&self, v: f64) -> Ordering {
        cmp_ratio_f64(&self.num, &self.den, v)
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// `p/q` rounded into f64, assuming `p/q >= 2^-60` (harmonic numbers
/// are >= 1). Scales the quotient to ~64 significant bits first.
fn ratio_to_f64(p: &BigUint, q: &BigUint) -> f64 {
    if p.is_zero() {
        return 0.0;
    }
    let shift = 64i64 + q.bits() as i64 - p.bits() as i64;
    let shift = shift.max(0) as u64;
    let t = (p << shift) / q;
    big_to_f64(&t) * super::precise::pow2(-(shift as i64))
}

fn big_to_f64(v: &BigUint) -> f64 {
    // BigUint::to_f64 saturates to infinity only past the f64 range,
    // which scaled quotients never reach.
    v.to_f64().unwrap_or(f64::INFINITY)
}

/// Exact ordering of `num/den` (den > 0) against a finite f64.
fn cmp_ratio_f64(num: &BigInt, den: &BigInt, v: f64) -> Ordering {
    debug_assert!(v.is_finite());
    if v == 0.0 {
        return num.sign().cmp(&Sign::NoSign);
    }
    // Decompose v = sign * m * 2^e exactly.
    let bits = v.abs().to_bits();
    let exp_raw = (bits >> 52) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    let (m, e) = if exp_raw == 0 {
        (frac, -1074i64)
    } else {
        (frac | (1u64 << 52), exp_raw - 1075)
    };
    let mut lhs = num.clone();
    let mut rhs = BigInt::from(m) * den;
    if v < 0.0 {
        rhs = -rhs;
    }
    if e >= 0 {
        rhs <<= e as u64;
    } else {
        lhs <<= (-e) as u64;
    }
    lhs.cmp(&rhs)
}

/// Incremental exact harmonic numbers `H_n = sum_{k<=n} 1/k`.
///
/// The state keeps `H_n = num / den` with `den = lcm(1..=n)`, so each
/// step costs one exact scalar division plus one addition; no per-step
/// gcd is needed. `den` grows only when `n` is a prime power. A
/// compensated f64 mirror of the sum rides along for cheap approximate
/// queries; it stays within a few 1e-16 of the true value.
///
/// One caller owns a sweep at a time; `advance` returns a resource
/// error past the cap instead of grinding on unboundedly.
#[derive(Debug, Clone)]
pub struct HarmonicSweep {
    n: u64,
    num: BigUint,
    den: BigUint,
    approx_sum: f64,
    approx_carry: f64,
    cap: u64,
}

impl HarmonicSweep {
    /// Starts before n = 1 with the default cap.
    pub fn new() -> Self {
        Self::with_cap(DEFAULT_HARMONIC_CAP)
    }

    pub fn with_cap(cap: u64) -> Self {
        Self {
            n: 0,
            num: BigUint::zero(),
            den: BigUint::one(),
            approx_sum: 0.0,
            approx_carry: 0.0,
            cap,
        }
    }

    /// Steps from `H_n` to `H_{n+1}`; errors past the cap.
    pub fn advance(&mut self) -> Result<u64> {
        let k = self.n + 1;
        if k > self.cap {
            return Err(Error::Resource {
                what: "harmonic sweep exceeds its cap",
                needed: k,
                cap: self.cap,
            });
        }
        match prime_power_base(k) {
            Some(p) => {
                // lcm gains one factor of p; renormalize the numerator.
                self.den *= p;
                self.num = &self.num * p + &self.den / k;
            }
            None => {
                // Every prime-power divisor of k is < k, so k | den.
                self.num += &self.den / k;
            }
        }
        // Kahan update of the f64 mirror.
        let term = 1.0 / k as f64 - self.approx_carry;
        let t = self.approx_sum + term;
        self.approx_carry = (t - self.approx_sum) - term;
        self.approx_sum = t;
        self.n = k;
        Ok(k)
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// Compensated f64 mirror of `H_n` (absolute error a few 1e-16).
    pub fn approx(&self) -> f64 {
        self.approx_sum
    }

    /// `H_n` correctly rounded into f64 from the exact state.
    pub fn value_f64(&self) -> f64 {
        ratio_to_f64(&self.num, &self.den)
    }

    /// Exact ordering of `H_n` against a finite f64.
    pub fn cmp_f64(&self, v: f64) -> Ordering {
        let num = BigInt::from(self.num.clone());
        let den = BigInt::from(self.den.clone());
        cmp_ratio_f64(&num, &den, v)
    }

    /// Reduces the current state into an `ExactRational`.
    pub fn to_exact(&self) -> ExactRational {
        ExactRational::new(BigInt::from(self.num.clone()), BigInt::from(self.den.clone()))
            .expect("den = lcm(1..=n) > 0")
    }
}

impl Default for HarmonicSweep {
    fn default() -> Self {
        Self::new()
    }
}

/// `Some(p)` iff `k = p^a` for a prime p (and k >= 2).
fn prime_power_base(k: u64) -> Option<u64> {
    if k < 2 {
        return None;
    }
    let mut m = k;
    let mut d = 2u64;
    while d * d <= m {
        if m % d == 0 {
            while m % d == 0 {
                m /= d;
            }
            return if m == 1 { Some(d) } else { None };
        }
        d += 1;
    }
    Some(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_power_detection() {
        assert_eq!(prime_power_base(1), None);
        assert_eq!(prime_power_base(2), Some(2));
        assert_eq!(prime_power_base(8), Some(2));
        assert_eq!(prime_power_base(9), Some(3));
        assert_eq!(prime_power_base(12), None);
        assert_eq!(prime_power_base(97), Some(97));
        assert_eq!(prime_power_base(100), None);
    }

    #[test]
    fn reduction_and_sign_normalization() {
        let r = ExactRational::new(BigInt::from(-50), BigInt::from(-60)).unwrap();
        assert_eq!(r.numer(), &BigInt::from(5));
        assert_eq!(r.denom(), &BigInt::from(6));
        assert!(ExactRational::new(BigInt::from(1), BigInt::from(0)).is_err());
        assert_eq!(format!("{}", r), "5/6");
        assert_eq!(format!("{}", ExactRational::from_integer(7)), "7");
    }

    #[test]
    fn sweep_matches_known_values() {
        let mut s = HarmonicSweep::new();
        for _ in 0..10 {
            s.advance().unwrap();
        }
        // H_10 = 7381/2520.
        let h10 = ExactRational::new(BigInt::from(7381), BigInt::from(2520)).unwrap();
        assert_eq!(s.to_exact(), h10);
        assert_eq!(s.n(), 10);
        assert!((s.value_f64() - 2.9289682539682538).abs() < 1e-15);
        assert!((s.approx() - 2.9289682539682538).abs() < 1e-14);
    }

    #[test]
    fn exact_comparison_with_f64() {
        let mut s = HarmonicSweep::new();
        s.advance().unwrap();
        assert_eq!(s.cmp_f64(1.0), Ordering::Equal);
        assert_eq!(s.cmp_f64(1.0 - 1e-16), Ordering::Greater);
        for _ in 0..3 {
            s.advance().unwrap();
        }
        // fl(25/12) rounds up, so the exact H_4 sits strictly below it.
        let v = 25.0 / 12.0;
        assert_eq!(s.cmp_f64(v), Ordering::Less);
        assert_eq!(s.cmp_f64(v - 1e-15), Ordering::Greater);
    }

    #[test]
    fn cap_is_enforced() {
        let mut s = HarmonicSweep::with_cap(3);
        for _ in 0..3 {
            s.advance().unwrap();
        }
        let err = s.advance().unwrap_err();
        assert!(matches!(err, Error::Resource { needed: 4, cap: 3, .. }));
    }

    #[test]
    fn conversion_handles_huge_state() {
        let mut s = HarmonicSweep::new();
        for _ in 0..2000 {
            s.advance().unwrap();
        }
        let v = s.value_f64();
        assert!((v - s.approx()).abs() < 5e-15 * v);
    }
}
