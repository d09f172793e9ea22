//! Parsing and printing of exact rationals.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::Rational;

pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Parses `"p/q"`, integers, decimals (`"0.4302"`) and scientific notation
/// (`"1e-6"`) into an exact rational. Decimals are never routed through
/// binary floating point.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::Parse(text.to_string());
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }

    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let exp: i64 = s[pos + 1..].parse().map_err(|_| bad())?;
            (&s[..pos], exp)
        }
        None => (s, 0),
    };
    let (negative, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{whole}{frac}");
    let mut numer: BigInt = digits.parse().map_err(|_| bad())?;
    if negative {
        numer = -numer;
    }
    let scale = exponent - frac.len() as i64;
    let ten = BigInt::from(10);
    let value = if scale >= 0 {
        Rational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    Ok(value)
}

/// Canonical `"p/q"` form; integers keep their `/1`.
pub fn to_fraction_string(value: &Rational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Decimal rendering rounded half away from zero to `places` digits.
pub fn to_decimal(value: &Rational, places: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), places);
    let scaled = (value * Rational::from_integer(scale.clone())).round();
    let n = scaled.to_integer();
    let negative = n.is_negative();
    let digits = n.abs().to_string();
    let body = if places == 0 {
        digits
    } else {
        let padded = format!("{:0>width$}", digits, width = places + 1);
        let (w, f) = padded.split_at(padded.len() - places);
        format!("{w}.{f}")
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

/// Approximate value for display and for comparing against printed constants.
pub fn to_f64(value: &Rational) -> f64 {
    // Shift both parts down to a safe size before dividing; exact values are
    // never derived from this.
    use num_traits::ToPrimitive;
    let n = value.numer();
    let d = value.denom();
    let shift = n.bits().max(d.bits()).saturating_sub(1000);
    let (n, d) = (n >> shift, d >> shift);
    match (n.to_f64(), d.to_f64()) {
        (Some(n), Some(d)) if !d.is_zero() => n / d,
        _ => f64::NAN,
    }
}

pub fn half() -> Rational {
    ratio(1, 2)
}

pub fn is_lambda_in_range(lambda: &Rational) -> bool {
    lambda.is_positive() && *lambda < half()
}

pub fn check_lambda(lambda: &Rational) -> Result<()> {
    if is_lambda_in_range(lambda) {
        Ok(())
    } else {
        Err(Error::LambdaOutOfRange(lambda.to_string()))
    }
}

/// `10^-places` as an exact rational.
pub fn ten_to_minus(places: usize) -> Rational {
    Rational::new(BigInt::one(), num_traits::pow(BigInt::from(10), places))
}

/// Serde adapter writing a rational as a `"p/q"` string.
pub mod fraction {
    use serde::{de, Deserialize, Deserializer, Serializer};

    use super::{parse_rational, to_fraction_string};
    use crate::Rational;

    pub fn serialize<S: Serializer>(value: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&to_fraction_string(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(de::Error::custom)
    }
}
