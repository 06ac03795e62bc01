use std::fmt;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Input outside a function's domain.
    Domain { what: &'static str, value: f64 },
    /// A configuration value violates its invariant.
    Config { what: &'static str, value: f64 },
    /// A grid specification violates its invariant.
    Grid { what: &'static str },
    /// A result left the representable f64 range.
    Overflow { what: &'static str, x: f64 },
    /// A computation would exceed its resource cap.
    Resource { what: &'static str, needed: u64, cap: u64 },
    /// Too few points for the requested check.
    Arity { what: &'static str, got: usize, need: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain { what, value } => write!(f, "domain: {what} (got {value})"),
            Error::Config { what, value } => write!(f, "config: {what} (got {value})"),
            Error::Grid { what } => write!(f, "grid: {what}"),
            Error::Overflow { what, x } => write!(f, "overflow: {what} (x = {x})"),
            Error::Resource { what, needed, cap } => {
                write!(f, "resource: {what} (needed {needed}, cap {cap})")
            }
            Error::Arity { what, got, need } => {
                write!(f, "arity: {what} (got {got}, need at least {need})")
            }
        }
    }
}

impl std::error::Error for Error {}
