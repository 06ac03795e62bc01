//! Cross-checks of the double-precision kernels against values and
//! identities computed independently of the implementation: zeta
//! partial sums with Euler-Maclaurin tails, the duplication formulas,
//! exact collapse identities of the stable logarithm, and frozen
//! extended-precision spot values.

use psibounds::kernel::{
    digamma, f_func, f_prime, log_expm1_recip, phi, positivity_expr, tetragamma, trigamma,
    KernelConfig, PositiveAbscissa,
};
use psibounds::EULER_MASCHERONI;

fn cfg() -> KernelConfig {
    KernelConfig::default()
}

fn pa(v: f64) -> PositiveAbscissa {
    PositiveAbscissa::new(v).unwrap()
}

/// Kahan-compensated sum of `1/k^2` for `k = 1..=n` (ascending k) plus
/// the Euler-Maclaurin tail through `n^-5`; absolute error stays below
/// 1e-16 for n >= 400.
fn zeta2_oracle(n: u64) -> f64 {
    let mut sum = 0.0;
    let mut c = 0.0;
    for k in (1..=n).rev() {
        let term = 1.0 / (k as f64 * k as f64);
        let t = sum + term;
        c += if sum.abs() >= term.abs() {
            (sum - t) + term
        } else {
            (term - t) + sum
        };
        sum = t;
    }
    let m = n as f64;
    sum + c + 1.0 / m - 1.0 / (2.0 * m * m) + 1.0 / (6.0 * m * m * m)
        - 1.0 / (30.0 * m.powi(5))
}

/// Same scheme for `1/k^3`, tail through `n^-6`.
fn zeta3_oracle(n: u64) -> f64 {
    let mut sum = 0.0;
    let mut c = 0.0;
    for k in (1..=n).rev() {
        let term = 1.0 / (k as f64 * k as f64 * k as f64);
        let t = sum + term;
        c += if sum.abs() >= term.abs() {
            (sum - t) + term
        } else {
            (term - t) + sum
        };
        sum = t;
    }
    let m = n as f64;
    sum + c + 1.0 / (2.0 * m * m) - 1.0 / (2.0 * m * m * m) + 1.0 / (4.0 * m.powi(4))
        - 1.0 / (12.0 * m.powi(6))
}

#[test]
fn trigamma_and_tetragamma_match_zeta_oracles() {
    let k = cfg();
    let z2 = zeta2_oracle(500);
    let z3 = zeta3_oracle(500);
    // psi'(1) = zeta(2), psi'(2) = zeta(2) - 1,
    // psi''(1) = -2 zeta(3), psi''(2) = 2 - 2 zeta(3).
    assert!((trigamma(pa(1.0), &k) - z2).abs() < 4e-15);
    assert!((trigamma(pa(2.0), &k) - (z2 - 1.0)).abs() < 4e-15);
    assert!((tetragamma(pa(1.0), &k) + 2.0 * z3).abs() < 8e-15);
    assert!((tetragamma(pa(2.0), &k) - (2.0 - 2.0 * z3)).abs() < 8e-15);
}

#[test]
fn duplication_formulas_hold() {
    let k = cfg();
    for &v in &[0.25, 0.6, 1.0, 2.5, 7.3, 40.0, 333.0] {
        let half_up = v + 0.5;
        // psi(2x) = psi(x)/2 + psi(x + 1/2)/2 + ln 2
        let lhs = digamma(pa(2.0 * v), &k);
        let rhs = 0.5 * digamma(pa(v), &k) + 0.5 * digamma(pa(half_up), &k)
            + std::f64::consts::LN_2;
        assert!(
            (lhs - rhs).abs() <= 1e-13 * lhs.abs().max(1.0),
            "digamma duplication at {v}: {lhs} vs {rhs}"
        );
        // psi'(2x) = (psi'(x) + psi'(x + 1/2))/4
        let lhs = trigamma(pa(2.0 * v), &k);
        let rhs = 0.25 * (trigamma(pa(v), &k) + trigamma(pa(half_up), &k));
        assert!((lhs - rhs).abs() <= 1e-13 * lhs.abs().max(1.0));
        // psi''(2x) = (psi''(x) + psi''(x + 1/2))/8
        let lhs = tetragamma(pa(2.0 * v), &k);
        let rhs = 0.125 * (tetragamma(pa(v), &k) + tetragamma(pa(half_up), &k));
        assert!((lhs - rhs).abs() <= 1e-13 * lhs.abs().max(1.0));
    }
}

#[test]
fn digamma_matches_harmonic_identity_at_integers() {
    let k = cfg();
    // psi(n+1) = H_n - gamma with hand-checked rationals.
    for &(n, h) in &[
        (1u64, 1.0),
        (2, 1.5),
        (4, 25.0 / 12.0),
        (10, 7381.0 / 2520.0),
    ] {
        let lhs = digamma(pa((n + 1) as f64), &k) + EULER_MASCHERONI;
        assert!(
            (lhs - h).abs() < 5e-15,
            "psi({}) + gamma = {lhs}, H_{n} = {h}",
            n + 1
        );
    }
}

#[test]
fn log_kernel_collapses_exactly_once_the_exponential_underflows() {
    // For 1/x > ~36.7 the f64 image of e^(-1/x) rounds to zero inside
    // ln(1 - e^(-1/x)) and the whole kernel is exactly fl(1/x).
    for &v in &[0.02, 1e-3, 1e-120, 1e-300] {
        assert_eq!(log_expm1_recip(pa(v)), 1.0 / v);
    }
    // Just above the collapse region the logarithm still contributes.
    assert!(log_expm1_recip(pa(0.05)) < 1.0 / 0.05);
}

#[test]
fn f_prime_agrees_with_centered_difference_of_f() {
    let k = cfg();
    for &v in &[0.05, 0.5, 5.0, 90.0] {
        let step = 1e-5 * v;
        let (x1, x2) = (v + step, v - step);
        let diff = (f_func(pa(x1), &k) - f_func(pa(x2), &k)) / (x1 - x2);
        let exact = f_prime(pa(v), &k).unwrap();
        let rel = (exact - diff).abs() / exact.abs();
        assert!(rel <= 1e-6, "derivative mismatch at {v}: rel = {rel:e}");
    }
}

#[test]
fn positivity_expression_decays_like_inverse_quartic() {
    // [psi'(x)]^2 + psi''(x) = 1/(12 x^4) + O(x^-5); the leading
    // constant pins both tail tables at once.
    let k = cfg();
    for &v in &[30.0f64, 100.0, 300.0] {
        let scaled = 12.0 * v.powi(4) * positivity_expr(pa(v), &k);
        assert!(
            (scaled - 1.0).abs() < 3.0 / v,
            "12 x^4 (psi'^2 + psi'') = {scaled} at x = {v}"
        );
    }
}

#[test]
fn phi_spot_values_across_all_branches() {
    let k = cfg();
    // Direct form, split form, and far series, against values computed
    // with 50-digit working precision.
    for &(v, want) in &[
        (0.01, -0.5608854578686745),
        (1.0, -0.03589081028861475),
        (11.0, -0.00034380937265847437),
        (100.0, -4.1665868095178815e-6),
        (1000.0, -4.1666658680559516e-8),
        (1e4, -4.1666666586805554e-10),
    ] {
        let p = phi(pa(v), &k);
        assert!(
            (p - want).abs() <= 1e-12 * want.abs(),
            "phi({v}) = {p:e}, want {want:e}"
        );
    }
}
