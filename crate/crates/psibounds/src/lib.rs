//! Digamma-family kernels with sharp two-sided enclosures.
//!
//! The library is organized around the function
//! `phi(x) = psi(x) + ln(e^(1/x) - 1)`, where `psi` is the digamma
//! function. `phi` is strictly increasing and strictly concave on
//! `(0, inf)` with limits `-gamma` at `0+` and `0` at `inf`, which
//! pins the sharp enclosures
//!
//! * `-gamma - ln(e^(1/x) - 1) < psi(x) < -ln(e^(1/x) - 1)`, and
//! * `1 + ln(sqrt(e) - 1) - ln(e^(1/(n+1)) - 1) <= H_n < gamma - ln(e^(1/(n+1)) - 1)`
//!
//! for the harmonic numbers `H_n`. Both enclosures have constant width
//! and the constants cannot be improved.
//!
//! Modules:
//!
//! * [`kernel`]: f64 evaluation of `psi`, `psi'`, `psi''`, the
//!   cancellation-safe logarithm term, `phi`, and the auxiliary
//!   monotonicity witnesses `h`, `f`, `f'`.
//! * [`bounds`]: interval enclosures built from the kernels.
//! * [`oracle`]: exact rational harmonic numbers and an independent
//!   extended-precision digamma reference.
//! * [`verifier`]: grid-based machine checks of every claimed property,
//!   with counterexample reporting.

mod error;

pub mod bounds;
pub mod kernel;
pub mod oracle;
pub mod verifier;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Euler-Mascheroni constant to 20 significant digits (rounds to the
/// nearest f64, 0.5772156649015329).
pub const EULER_MASCHERONI: f64 = 0.57721566490153286061;
