//! Strict parsing, formatting and integer rounding for exact rationals.
//!
//! The wire grammar for a rational is `-?[0-9]+(/[1-9][0-9]*)?` — an
//! optional sign, a decimal numerator, and an optional denominator that
//! must not start with zero. This is deliberately stricter than
//! `BigRational::from_str` (no `-p/-q`, no whitespace) so documents are
//! portable across implementations.

use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::{Int, Rat};

#[derive(Debug, Error, PartialEq, Eq)]
#[error("malformed rational {text:?}: {reason}")]
pub struct RationalParseError {
    pub text: String,
    pub reason: &'static str,
}

fn err(text: &str, reason: &'static str) -> RationalParseError {
    RationalParseError {
        text: text.to_string(),
        reason,
    }
}

/// Shorthand for small rational constants.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

/// Parse `p` or `p/q` under the strict grammar.
pub fn parse_rational(text: &str) -> Result<Rat, RationalParseError> {
    let (num_part, den_part) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let unsigned = num_part.strip_prefix('-').unwrap_or(num_part);
    if unsigned.is_empty() || !unsigned.bytes().all(|b| b.is_ascii_digit()) {
        return Err(err(text, "numerator must match -?[0-9]+"));
    }
    let numer: Int = num_part.parse().expect("validated digits");
    let denom: Int = match den_part {
        None => Int::from(1),
        Some(d) => {
            if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                return Err(err(text, "denominator must match [1-9][0-9]*"));
            }
            if d.starts_with('0') {
                return Err(err(text, "denominator must not start with 0"));
            }
            d.parse().expect("validated digits")
        }
    };
    Ok(Rat::new(numer, denom))
}

/// Render as `p/q`, or `p` when the denominator is one.
pub fn format_rational(r: &Rat) -> String {
    r.to_string()
}

/// Exact ceiling as a big integer.
pub fn ceil_int(r: &Rat) -> Int {
    r.ceil().to_integer()
}

/// Rational gcd: the largest rational of which every entry is an integer
/// multiple; zero for an empty slice. Equals `gcd(numerators)/lcm(denominators)`
/// after clearing to a common denominator.
pub fn rational_gcd(values: &[Rat]) -> Rat {
    let mut q = Int::from(1);
    for v in values {
        q = q.lcm(v.denom());
    }
    let mut g = Int::zero();
    for v in values {
        let scaled = v.numer() * (&q / v.denom());
        g = g.gcd(&scaled.abs());
    }
    if g.is_zero() {
        return Rat::zero();
    }
    Rat::new(g, q)
}
