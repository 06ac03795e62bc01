//! Number renderings used by the subcommands.
//!
//! Two flavors cover every output: a fixed 17-significant-digit form
//! that keeps trailing zeros (interval endpoints, where uniform width
//! matters to a human reader), and a maximally short 17-digit form
//! with trailing zeros stripped (CSV cells, where round-tripping is
//! the contract and `1` beats `1.0000000000000000`).

/// Mantissa digits and decimal exponent of `v` at 17 significant
/// digits: `v = [-]0.d1..d17 * 10^(exp+1)`, roughly speaking.
fn sig17_parts(v: f64) -> (bool, String, i32) {
    let s = format!("{:.16e}", v);
    let neg = s.starts_with('-');
    let body = s.trim_start_matches('-');
    let (mantissa, exp) = body.split_once('e').expect("exponent part");
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    debug_assert_eq!(digits.len(), 17);
    (neg, digits, exp.parse().expect("decimal exponent"))
}

/// Positional rendering with exactly 17 significant digits, trailing
/// zeros kept: `1.0000000000000000`, `-0.54132485461291810`.
pub fn fixed17(v: f64) -> String {
    let (neg, digits, exp) = sig17_parts(v);
    let sign = if neg { "-" } else { "" };
    if exp >= 16 {
        // All 17 digits sit left of the point (largest case here is
        // far below this, but stay total).
        let mut out = digits;
        out.push_str(&"0".repeat(exp as usize - 16));
        return format!("{sign}{out}");
    }
    if exp >= 0 {
        let split = exp as usize + 1;
        return format!("{sign}{}.{}", &digits[..split], &digits[split..]);
    }
    format!("{sign}0.{}{}", "0".repeat(-exp as usize - 1), digits)
}

/// Shortest-faithful rendering at up to 17 significant digits:
/// trailing zeros stripped, integers bare, scientific notation only
/// when the exponent leaves [-4, 16]. Mirrors printf's %.17g except
/// for also trimming zeros.
pub fn compact17(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let (neg, digits, exp) = sig17_parts(v);
    let sign = if neg { "-" } else { "" };
    let trimmed = digits.trim_end_matches('0');
    if exp < -4 || exp >= 17 {
        let rest = &trimmed[1..];
        return if rest.is_empty() {
            format!("{sign}{}e{exp}", &trimmed[..1])
        } else {
            format!("{sign}{}.{rest}e{exp}", &trimmed[..1])
        };
    }
    if exp >= 0 {
        let split = exp as usize + 1;
        if trimmed.len() <= split {
            let mut out = trimmed.to_string();
            out.push_str(&"0".repeat(split - trimmed.len()));
            return format!("{sign}{out}");
        }
        return format!("{sign}{}.{}", &trimmed[..split], &trimmed[split..]);
    }
    format!("{sign}0.{}{}", "0".repeat(-exp as usize - 1), trimmed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_keeps_width() {
        // 17 significant digits of the stored double, zeros kept.
        assert_eq!(fixed17(1.0), "1.0000000000000000");
        assert_eq!(fixed17(0.125), "0.12500000000000000");
        assert_eq!(fixed17(-0.5413248546129181), "-0.54132485461291813");
        assert_eq!(fixed17(25.0 / 12.0), "2.0833333333333335");
    }

    #[test]
    fn compact_strips() {
        assert_eq!(compact17(0.0), "0");
        assert_eq!(compact17(1.0), "1");
        assert_eq!(compact17(-2.0), "-2");
        assert_eq!(compact17(0.125), "0.125");
        assert_eq!(compact17(25.0 / 12.0), "2.0833333333333335");
        assert_eq!(compact17(0.009967794468721432), "0.0099677944687214318");
        assert_eq!(compact17(4.165833450333751e-10), "4.1658334503337512e-10");
        // 1e16 and 1e17 are exactly representable; the g-style switch
        // to scientific notation happens between them.
        assert_eq!(compact17(1e16), "10000000000000000");
        assert_eq!(compact17(1e17), "1e17");
    }

    #[test]
    fn round_trips() {
        for &v in &[
            1.0,
            -1.0,
            25.0 / 12.0,
            0.009967794468721432,
            4.165833450333751e-10,
            9.787606036044382,
            1e-300,
            -0.5413248546129181,
        ] {
            let c: f64 = compact17(v).parse().unwrap();
            assert_eq!(c, v, "compact {v}");
            let f: f64 = fixed17(v).parse().unwrap();
            assert_eq!(f, v, "fixed {v}");
        }
    }
}
