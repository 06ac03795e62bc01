//! Certified interval enclosures for psi(x) and harmonic numbers.
//!
//! Both enclosures come from the same pair of sharp inequalities:
//! with L(x) = ln(e^(1/x) - 1),
//!
//! ```text
//! -gamma - L(x) < psi(x) < -L(x)                       for x > 0
//! 1 + ln(sqrt(e)-1) - L(n+1) <= H_n < gamma - L(n+1)   for n >= 1
//! ```
//!
//! The constants are best possible: the psi interval has width exactly
//! gamma, the harmonic interval width exactly gamma - 1 - ln(sqrt(e)-1)
//! (about 9.97e-3), and H_1 = 1 attains the harmonic lower endpoint.
//!
//! Endpoints are evaluated in plain f64 without directed rounding; the
//! analytic margins dwarf representation error everywhere except deep
//! in the asymptotic regimes, and the verifier covers those with exact
//! rational and extended-precision oracles.

use std::sync::OnceLock;

use crate::kernel::{log_expm1_recip_raw, PositiveAbscissa};
use crate::{Error, Result, EULER_MASCHERONI};

/// A one-dimensional enclosure with explicit endpoint strictness, so
/// attainable bounds ("<=") and open bounds ("<") stay distinguishable
/// in tests.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
    lo_strict: bool,
    hi_strict: bool,
}

impl Interval {
    /// Validates finiteness and ordering of the endpoints.
    pub fn new(lo: f64, hi: f64, lo_strict: bool, hi_strict: bool) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() {
            return Err(Error::Overflow {
                what: "interval endpoint is not finite",
                x: if lo.is_finite() { hi } else { lo },
            });
        }
        if lo > hi {
            return Err(Error::Config {
                what: "interval endpoints out of order",
                value: lo,
            });
        }
        Ok(Self {
            lo,
            hi,
            lo_strict,
            hi_strict,
        })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn lo_strict(&self) -> bool {
        self.lo_strict
    }

    pub fn hi_strict(&self) -> bool {
        self.hi_strict
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    /// Membership respecting endpoint strictness.
    pub fn contains(&self, v: f64) -> bool {
        let above = if self.lo_strict {
            v > self.lo
        } else {
            v >= self.lo
        };
        let below = if self.hi_strict {
            v < self.hi
        } else {
            v <= self.hi
        };
        above && below
    }
}

/// Index into the harmonic sequence; always >= 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct HarmonicIndex(u64);

impl HarmonicIndex {
    pub fn new(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain {
                what: "harmonic index must be at least 1",
                value: 0.0,
            });
        }
        Ok(Self(n))
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

/// `ln(sqrt(e) - 1)`, i.e. L(2). Computed once from the same stable
/// logarithm the enclosures use, rather than stored as a decimal
/// literal: sharing the primitive keeps the n = 1 cancellation in
/// `harmonic_enclosure` bit-exact.
fn log_sqrt_e_minus_one() -> f64 {
    static CACHE: OnceLock<f64> = OnceLock::new();
    *CACHE.get_or_init(|| log_expm1_recip_raw(2.0))
}

/// Width of every harmonic enclosure: gamma - 1 - ln(sqrt(e) - 1),
/// about 9.97e-3.
pub fn harmonic_width_constant() -> f64 {
    EULER_MASCHERONI - 1.0 - log_sqrt_e_minus_one()
}

/// Open enclosure (-gamma - L(x), -L(x)) of psi(x); its width is the
/// constant gamma.
///
/// Both inequalities are strict for every positive x, and both
/// constants are best possible (the gap at either end tends to zero).
/// Overflow error if L(x) itself leaves the f64 range, which happens
/// only for denormal x below roughly 5.6e-309.
pub fn psi_enclosure(x: PositiveAbscissa) -> Result<Interval> {
    let l = log_expm1_recip_raw(x.get());
    Interval::new(-(EULER_MASCHERONI + l), -l, true, true)
}

/// Enclosure [1 + ln(sqrt(e)-1) - L(n+1), gamma - L(n+1)) of H_n.
///
/// The lower endpoint is attainable: at n = 1 the two logarithms
/// cancel exactly and lo = H_1 = 1. The grouping `1 + (C - L(n+1))`
/// performs that cancellation before anything else touches the value,
/// so lo is 1.0 bit-exactly there. The upper bound is strict for all
/// n. Width is the constant gamma - 1 - ln(sqrt(e) - 1) ~ 9.97e-3.
pub fn harmonic_enclosure(n: HarmonicIndex) -> Interval {
    let l = log_expm1_recip_raw(n.get() as f64 + 1.0);
    let lo = 1.0 + (log_sqrt_e_minus_one() - l);
    let hi = EULER_MASCHERONI - l;
    Interval::new(lo, hi, false, true).expect("endpoints finite and ordered for every index")
}

/// Reference value of psi(n+1) through the identity H_n = psi(n+1) +
/// gamma: the exact rational H_n rounded to f64, minus gamma. Resource
/// error past the harmonic oracle cap.
pub fn digamma_from_harmonic(n: HarmonicIndex) -> Result<f64> {
    let h = crate::oracle::harmonic_exact(n)?;
    Ok(h.to_f64() - EULER_MASCHERONI)
}
