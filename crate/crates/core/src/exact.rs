//! Exact rational values and their decimal rendering.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational, always kept normalized (gcd 1, positive denominator).
pub type ExactRational = BigRational;

/// Renders `value` with exactly `digits` fractional digits, rounding half to even.
pub fn render_decimal(value: &ExactRational, digits: usize) -> String {
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled_num = value.numer().abs() * &scale;
    let den = value.denom();
    let (mut q, r) = scaled_num.div_rem(den);
    let twice = r * 2u32;
    match twice.cmp(den) {
        std::cmp::Ordering::Greater => q += 1u32,
        std::cmp::Ordering::Equal if q.is_odd() => q += 1u32,
        _ => {}
    }

    let mut body = q.to_str_radix(10);
    if digits > 0 {
        if body.len() <= digits {
            body = format!("{}{}", "0".repeat(digits + 1 - body.len()), body);
        }
        body.insert(body.len() - digits, '.');
    }
    if value.numer().sign() == Sign::Minus && !q.is_zero() {
        body.insert(0, '-');
    }
    body
}

/// `num/den` with the denominator always printed, e.g. `2/1`.
pub fn render_fraction(value: &ExactRational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Nearest-ish `f64`; exact enough for comparing against Monte Carlo means.
pub fn to_f64(value: &ExactRational) -> f64 {
    value.to_f64().unwrap_or_else(|| {
        // Ratio of huge integers: shift both down before dividing.
        let n = value.numer();
        let d = value.denom();
        let shift = n.bits().max(d.bits()).saturating_sub(1000);
        let n = (n >> shift).to_f64().unwrap_or(f64::NAN);
        let d = (d >> shift).to_f64().unwrap_or(f64::NAN);
        n / d
    })
}
