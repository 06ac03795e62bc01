//! Machine-checks of the analytic claims behind the kernels and
//! enclosures: monotonicity and concavity of phi, positivity of
//! psi'^2 + psi'', the two phi limits, harmonic-number containment,
//! and the polygamma recurrences. Each check walks a configurable
//! grid and returns a structured report instead of panicking.

use crate::bounds::{harmonic_enclosure, HarmonicIndex};
use crate::kernel::{
    digamma_raw, log_expm1_recip_raw, phi_raw, tetragamma_raw, trigamma_raw, KernelConfig,
    PositiveAbscissa,
};
use crate::oracle::HarmonicSweep;
use crate::{Error, Result, EULER_MASCHERONI};

/// Largest admissible grid abscissa. Everything the checks evaluate
/// (x + 1, exp(psi(x)) ~ x, 2 * x_large) stays finite below this.
const MAX_ABSCISSA: f64 = 1e306;

/// Pairwise comparisons of nearly equal phi values get this much
/// floating-point slack; strictness itself is asserted through the
/// derivative, which is far better conditioned.
const PAIRWISE_SLACK: f64 = 1e-13;

/// Second differences must stay below this multiple of step^2.
const CONCAVITY_TOL: f64 = 1e-10;

/// Per-report cap on recorded counterexamples; the counts still
/// reflect every violation.
const MAX_COUNTEREXAMPLES: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Log,
    Linear,
}

/// A finite evaluation grid on the positive axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    pub spacing: Spacing,
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.start > 0.0) || !self.start.is_finite() {
            return Err(Error::Grid {
                what: "grid start must be positive and finite",
            });
        }
        if !(self.stop > self.start) || !self.stop.is_finite() {
            return Err(Error::Grid {
                what: "grid stop must exceed start and be finite",
            });
        }
        if self.stop > MAX_ABSCISSA {
            return Err(Error::Grid {
                what: "grid stop exceeds the supported abscissa range",
            });
        }
        if self.count < 2 {
            return Err(Error::Grid {
                what: "grid needs at least 2 points",
            });
        }
        Ok(())
    }

    /// The grid points, endpoints included exactly.
    pub fn points(&self) -> Result<Vec<f64>> {
        self.validate()?;
        let n = self.count;
        let mut pts = Vec::with_capacity(n);
        match self.spacing {
            Spacing::Linear => {
                let step = (self.stop - self.start) / (n - 1) as f64;
                for i in 0..n {
                    pts.push(self.start + step * i as f64);
                }
            }
            Spacing::Log => {
                let la = self.start.ln();
                let lb = self.stop.ln();
                let step = (lb - la) / (n - 1) as f64;
                for i in 0..n {
                    pts.push((la + step * i as f64).exp());
                }
            }
        }
        pts[0] = self.start;
        pts[n - 1] = self.stop;
        Ok(pts)
    }
}

/// One point where an asserted inequality `lhs > rhs` (or the
/// documented variant) failed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Counterexample {
    pub x: f64,
    pub lhs: f64,
    pub rhs: f64,
}

/// Outcome of one property check.
///
/// `worst_margin` is the minimum over the grid of the quantity the
/// property asserts to be positive. `passed` is true exactly when no
/// violation occurred; recorded counterexamples are capped, so
/// `counterexamples.len()` can be smaller than the violation count but
/// is nonempty whenever `passed` is false -- with one exception: a
/// check that aborted before evaluating anything (for example a
/// concavity grid with too few points) reports `passed = false`,
/// `points_checked = 0`, an empty counterexample list, and the reason
/// in `note`.
#[derive(Debug, Clone, PartialEq)]
pub struct PropertyReport {
    pub property_name: String,
    pub points_checked: usize,
    pub passed: bool,
    pub worst_margin: f64,
    pub counterexamples: Vec<Counterexample>,
    pub note: Option<String>,
}

impl PropertyReport {
    /// One-line rendering: `PROPERTY <name> points=<k> result=<PASS|FAIL>
    /// worst_margin=<g>`.
    pub fn line(&self) -> String {
        format!(
            "PROPERTY {} points={} result={} worst_margin={:e}",
            self.property_name,
            self.points_checked,
            if self.passed { "PASS" } else { "FAIL" },
            self.worst_margin
        )
    }
}

/// Accumulates margins and capped counterexamples for one property.
struct Check {
    name: &'static str,
    points: usize,
    violations: usize,
    worst_margin: f64,
    counterexamples: Vec<Counterexample>,
}

impl Check {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            points: 0,
            violations: 0,
            worst_margin: f64::INFINITY,
            counterexamples: Vec::new(),
        }
    }

    /// Records a quantity asserted to be strictly positive.
    fn assert_positive(&mut self, x: f64, lhs: f64, rhs: f64) {
        let margin = lhs - rhs;
        if margin < self.worst_margin {
            self.worst_margin = margin;
        }
        if !(margin > 0.0) {
            self.violations += 1;
            if self.counterexamples.len() < MAX_COUNTEREXAMPLES {
                self.counterexamples.push(Counterexample { x, lhs, rhs });
            }
        }
    }

    /// Tracks a margin without treating it as an assertion.
    fn observe_margin(&mut self, margin: f64) {
        if margin < self.worst_margin {
            self.worst_margin = margin;
        }
    }

    fn finish(self) -> PropertyReport {
        let truncated = self.violations > self.counterexamples.len();
        PropertyReport {
            property_name: self.name.to_string(),
            points_checked: self.points,
            passed: self.violations == 0,
            worst_margin: self.worst_margin,
            counterexamples: self.counterexamples,
            note: truncated.then(|| {
                format!(
                    "{} violations in total; counterexample list capped at {}",
                    self.violations, MAX_COUNTEREXAMPLES
                )
            }),
        }
    }
}

fn report_aborted(name: &'static str, err: &Error) -> PropertyReport {
    PropertyReport {
        property_name: name.to_string(),
        points_checked: 0,
        passed: false,
        worst_margin: f64::NAN,
        counterexamples: Vec::new(),
        note: Some(err.to_string()),
    }
}

/// Strict increase of phi. The strict claim is routed through the
/// derivative witness f'(x) = h(x+1) - h(x) > 0 at every grid point;
/// consecutive phi values additionally may not drop by more than the
/// pairwise slack. The reported margin is the smallest consecutive
/// increase phi(x_{i+1}) - phi(x_i).
pub fn verify_monotonicity(grid: &GridSpec) -> Result<PropertyReport> {
    let pts = grid.points()?;
    let cfg = KernelConfig::default();
    let mut check = Check::new("monotonicity");
    check.points = pts.len();
    // The reported margin is the smallest pairwise increase; the f'
    // assertions contribute pass/fail and counterexamples only.
    let mut pair_margin = f64::INFINITY;
    let mut prev_phi = f64::NAN;
    for (i, &x) in pts.iter().enumerate() {
        let a = PositiveAbscissa::new(x).expect("grid points are positive");
        // Finite for validated grids: exp(psi(x+1)) ~ x + 0.5 stays
        // inside the f64 range below MAX_ABSCISSA.
        let fp = crate::kernel::f_prime(a, &cfg).expect("f' finite on validated grids");
        if !(fp > 0.0) {
            check.violations += 1;
            if check.counterexamples.len() < MAX_COUNTEREXAMPLES {
                check.counterexamples.push(Counterexample {
                    x,
                    lhs: fp,
                    rhs: 0.0,
                });
            }
        }
        let phi = phi_raw(x, &cfg);
        if i > 0 {
            pair_margin = pair_margin.min(phi - prev_phi);
            if !(phi > prev_phi - PAIRWISE_SLACK) {
                check.violations += 1;
                if check.counterexamples.len() < MAX_COUNTEREXAMPLES {
                    check.counterexamples.push(Counterexample {
                        x,
                        lhs: phi,
                        rhs: prev_phi - PAIRWISE_SLACK,
                    });
                }
            }
        }
        prev_phi = phi;
    }
    check.worst_margin = pair_margin;
    Ok(check.finish())
}

/// Strict concavity of phi via centered second differences on a
/// uniform linear grid: at every interior point,
/// phi(x-h) - 2 phi(x) + phi(x+h) must stay below CONCAVITY_TOL * h^2.
/// Needs at least 3 points and linear spacing.
pub fn verify_concavity(grid: &GridSpec) -> Result<PropertyReport> {
    grid.validate()?;
    if grid.spacing != Spacing::Linear {
        return Err(Error::Grid {
            what: "concavity check needs a linear grid (the claim is in x, not ln x)",
        });
    }
    if grid.count < 3 {
        return Err(Error::Arity {
            what: "concavity needs interior points",
            got: grid.count,
            need: 3,
        });
    }
    let pts = grid.points()?;
    let cfg = KernelConfig::default();
    let h = pts[1] - pts[0];
    let tol = CONCAVITY_TOL * h * h;
    let mut check = Check::new("concavity");
    check.points = pts.len();
    let phis: Vec<f64> = pts.iter().map(|&x| phi_raw(x, &cfg)).collect();
    for i in 1..pts.len() - 1 {
        let d2 = phis[i - 1] - 2.0 * phis[i] + phis[i + 1];
        check.assert_positive(pts[i], tol, d2);
    }
    Ok(check.finish())
}

/// psi'(x)^2 + psi''(x) > 0 at every grid point.
pub fn verify_positivity(grid: &GridSpec) -> Result<PropertyReport> {
    let pts = grid.points()?;
    let cfg = KernelConfig::default();
    let mut check = Check::new("positivity");
    check.points = pts.len();
    for &x in &pts {
        let t = trigamma_raw(x, &cfg);
        let q = t * t + tetragamma_raw(x, &cfg);
        check.assert_positive(x, q, 0.0);
    }
    Ok(check.finish())
}

/// The two limits of phi: |phi(x_small) + gamma| <= tol_small,
/// |phi(x_large)| <= tol_large, and both gaps strictly shrink when the
/// argument is pushed further toward its limit (halved resp. doubled).
pub fn verify_limits(
    x_small: f64,
    x_large: f64,
    tol_small: f64,
    tol_large: f64,
) -> Result<PropertyReport> {
    for (what, v) in [
        ("limit abscissa x_small", x_small),
        ("limit abscissa x_large", x_large),
        ("limit tolerance tol_small", tol_small),
        ("limit tolerance tol_large", tol_large),
    ] {
        if !v.is_finite() || v <= 0.0 {
            return Err(Error::Config { what, value: v });
        }
    }
    if x_large > MAX_ABSCISSA {
        return Err(Error::Config {
            what: "limit abscissa x_large exceeds the supported range",
            value: x_large,
        });
    }
    let cfg = KernelConfig::default();
    let gap_small = |x: f64| (phi_raw(x, &cfg) + EULER_MASCHERONI).abs();
    let gap_large = |x: f64| phi_raw(x, &cfg).abs();

    let e_small = gap_small(x_small);
    let e_small_half = gap_small(x_small / 2.0);
    let e_large = gap_large(x_large);
    let e_large_dbl = gap_large(x_large * 2.0);

    let mut check = Check::new("limits");
    check.points = 4;
    check.assert_positive(x_small, tol_small, e_small);
    check.assert_positive(x_large, tol_large, e_large);
    // Monotone approach: the gap strictly shrinks toward each limit.
    check.assert_positive(x_small / 2.0, e_small, e_small_half);
    check.assert_positive(x_large * 2.0, e_large, e_large_dbl);
    Ok(check.finish())
}

/// Containment of the exact H_n in its enclosure for n in [1, n_max],
/// with the right strictness: equality with the lower endpoint happens
/// at n = 1 only (checked exactly, asserted to within one ulp), strict
/// inequalities everywhere else.
///
/// The sweep carries the exact rational H_n and a compensated f64
/// mirror whose error stays below ~1e-14; margins larger than 1e-12
/// are decided from the mirror, anything closer falls back to exact
/// rational-versus-f64 comparison.
pub fn verify_harmonic_bounds(n_max: u64) -> Result<PropertyReport> {
    if n_max < 1 {
        return Err(Error::Config {
            what: "harmonic check needs n_max >= 1",
            value: n_max as f64,
        });
    }
    const APPROX_MARGIN: f64 = 1e-12;
    let mut check = Check::new("harmonic_bounds");
    check.points = n_max as usize;
    let mut sweep = HarmonicSweep::with_cap(n_max);
    for n in 1..=n_max {
        sweep.advance()?;
        let idx = HarmonicIndex::new(n).expect("n >= 1");
        let iv = harmonic_enclosure(idx);
        let h = sweep.approx();
        let lower = h - iv.lo();
        let upper = iv.hi() - h;
        if n == 1 {
            // Attained endpoint: |H_1 - lo| must vanish to within one
            // ulp of 1; the construction makes it exactly zero.
            let diff = (sweep.value_f64() - iv.lo()).abs();
            check.assert_positive(1.0, f64::EPSILON, diff);
            check.assert_positive(1.0, upper, 0.0);
            continue;
        }
        if lower > APPROX_MARGIN && upper > APPROX_MARGIN {
            check.observe_margin(lower.min(upper));
            continue;
        }
        // Too close to call from the mirror: compare exactly.
        use std::cmp::Ordering;
        let exact = sweep.value_f64();
        if sweep.cmp_f64(iv.lo()) != Ordering::Greater {
            check.assert_positive(n as f64, exact, iv.lo());
        }
        if sweep.cmp_f64(iv.hi()) != Ordering::Less {
            check.assert_positive(n as f64, iv.hi(), exact);
        }
        check.observe_margin((exact - iv.lo()).min(iv.hi() - exact));
    }
    Ok(check.finish())
}

/// Recurrence residuals of the three kernels: psi(x+1) = psi(x) + 1/x,
/// psi'(x+1) = psi'(x) - 1/x^2, psi''(x+1) = psi''(x) + 2/x^3, each
/// within 1e-12 relative to the function's own magnitude (at least
/// 1e-12 absolute).
pub fn verify_recurrence(grid: &GridSpec) -> Result<PropertyReport> {
    let pts = grid.points()?;
    let cfg = KernelConfig::default();
    let mut check = Check::new("recurrence");
    check.points = pts.len();
    for &x in &pts {
        let d = digamma_raw(x, &cfg);
        let r1 = digamma_raw(x + 1.0, &cfg) - d - 1.0 / x;
        let t = trigamma_raw(x, &cfg);
        let r2 = trigamma_raw(x + 1.0, &cfg) - t + 1.0 / (x * x);
        let g = tetragamma_raw(x, &cfg);
        let r3 = tetragamma_raw(x + 1.0, &cfg) - g - 2.0 / (x * x * x);
        for (value, resid) in [(d, r1), (t, r2), (g, r3)] {
            let tol = 1e-12 * value.abs().max(1.0);
            check.assert_positive(x, tol, resid.abs());
        }
    }
    Ok(check.finish())
}

/// Grids, limit abscissas, and the harmonic range for `run_all`.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifierConfig {
    /// Shared grid for monotonicity, positivity, and recurrence.
    pub grid: GridSpec,
    /// Linear grid for the concavity second differences.
    pub concavity_grid: GridSpec,
    pub x_small: f64,
    pub tol_small: f64,
    pub x_large: f64,
    pub tol_large: f64,
    pub n_max: u64,
}

impl Default for VerifierConfig {
    fn default() -> Self {
        Self {
            grid: GridSpec {
                start: 1e-3,
                stop: 1e3,
                count: 100_000,
                spacing: Spacing::Log,
            },
            concavity_grid: GridSpec {
                start: 0.1,
                stop: 100.0,
                count: 10_000,
                spacing: Spacing::Linear,
            },
            x_small: 1e-3,
            tol_small: 1e-2,
            x_large: 1e4,
            tol_large: 1e-4,
            n_max: 10_000,
        }
    }
}

impl VerifierConfig {
    /// Usage-level validation, run before any evaluation.
    pub fn validate(&self) -> Result<()> {
        self.grid.validate()?;
        self.concavity_grid.validate()?;
        for (what, v) in [
            ("limit abscissa x_small", self.x_small),
            ("limit abscissa x_large", self.x_large),
            ("limit tolerance tol_small", self.tol_small),
            ("limit tolerance tol_large", self.tol_large),
        ] {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::Config { what, value: v });
            }
        }
        if self.n_max < 1 {
            return Err(Error::Config {
                what: "harmonic check needs n_max >= 1",
                value: self.n_max as f64,
            });
        }
        Ok(())
    }
}

/// Runs the whole suite in a fixed order: monotonicity, concavity,
/// positivity, limits, harmonic_bounds, recurrence. Configuration
/// problems surface as errors before anything is evaluated, with one
/// exception: a concavity grid that is individually unusable (too few
/// points, or log spacing) turns into a failed report with the reason
/// in its note, leaving the other checks untouched.
pub fn run_all(config: &VerifierConfig) -> Result<Vec<PropertyReport>> {
    config.validate()?;
    let mut reports = Vec::with_capacity(6);
    reports.push(verify_monotonicity(&config.grid)?);
    reports.push(match verify_concavity(&config.concavity_grid) {
        Ok(r) => r,
        Err(e @ (Error::Arity { .. } | Error::Grid { .. })) => report_aborted("concavity", &e),
        Err(e) => return Err(e),
    });
    reports.push(verify_positivity(&config.grid)?);
    reports.push(verify_limits(
        config.x_small,
        config.x_large,
        config.tol_small,
        config.tol_large,
    )?);
    reports.push(verify_harmonic_bounds(config.n_max)?);
    reports.push(verify_recurrence(&config.grid)?);
    Ok(reports)
}

/// True iff the log-stable logarithm is finite and strictly decreasing
/// across the given grid; used by stability sweeps.
pub fn log_kernel_decreasing(grid: &GridSpec) -> Result<PropertyReport> {
    let pts = grid.points()?;
    let mut check = Check::new("log_kernel_decreasing");
    check.points = pts.len();
    let mut prev = f64::NAN;
    for (i, &x) in pts.iter().enumerate() {
        let l = log_expm1_recip_raw(x);
        if !l.is_finite() {
            check.assert_positive(x, f64::NEG_INFINITY, 0.0);
            prev = l;
            continue;
        }
        if i > 0 {
            check.assert_positive(x, prev, l);
        }
        prev = l;
    }
    Ok(check.finish())
}
