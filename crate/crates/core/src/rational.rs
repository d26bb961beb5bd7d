//! Exact rationals and their fixed-point rendering.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::Signed;

pub type Rational = Ratio<i64>;

/// How a rational is cut to a fixed number of decimals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rendering {
    /// Drop digits past the last place (toward zero).
    Truncate,
    /// Round half away from zero.
    Round,
}

pub fn render(value: Rational, places: u32, mode: Rendering) -> String {
    let scale = 10i128.pow(places);
    let num = *value.numer() as i128 * scale;
    let den = *value.denom() as i128;
    let (q, r) = num.abs().div_rem(&den);
    let scaled = match mode {
        Rendering::Truncate => q,
        Rendering::Round if 2 * r >= den => q + 1,
        Rendering::Round => q,
    };
    let sign = if value.is_negative() && scaled != 0 { "-" } else { "" };
    if places == 0 {
        return format!("{sign}{scaled}");
    }
    let int = scaled / scale;
    let frac = scaled % scale;
    format!("{sign}{int}.{frac:0width$}", width = places as usize)
}

/// Five-decimal truncated rendering, the display format for bounds and E(s^2).
pub fn decimal5(value: Rational) -> String {
    render(value, 5, Rendering::Truncate)
}

/// Reduced `num/den` form; integers print with `/1`.
pub fn fraction(value: Rational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

pub fn parse_fraction(s: &str) -> Option<Rational> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse().ok()?, d.trim().parse().ok()?),
        None => (s.trim().parse().ok()?, 1),
    };
    if d == 0 {
        return None;
    }
    Some(Rational::new(n, d))
}
