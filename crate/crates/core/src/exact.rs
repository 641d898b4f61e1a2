//! Exact rational helpers: parsing probabilities from decimal text and
//! printing rationals as decimals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProbabilityError {
    #[error("`{0}` is not a number")]
    NotANumber(String),
    #[error("probability {0} outside [0, 1]")]
    OutOfRange(String),
}

/// Parses `0.15`, `.5`, `1`, `3/20` or `1e-3` into an exact rational in
/// `[0, 1]`.
pub fn parse_probability(text: &str) -> Result<BigRational, ProbabilityError> {
    let s = text.trim();
    let bad = || ProbabilityError::NotANumber(text.to_owned());
    let value = if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        BigRational::new(num, den)
    } else {
        parse_decimal(s).ok_or_else(bad)?
    };
    if value.is_negative() || value > BigRational::one() {
        return Err(ProbabilityError::OutOfRange(text.to_owned()));
    }
    Ok(value)
}

fn parse_decimal(s: &str) -> Option<BigRational> {
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    let digits_ok = |d: &str| d.chars().all(|c| c.is_ascii_digit());
    let int_digits = int_part.strip_prefix(['+', '-']).unwrap_or(int_part);
    if !digits_ok(int_digits) || !digits_ok(frac_part) {
        return None;
    }
    let negative = int_part.starts_with('-');
    let digits: BigInt = format!("{int_digits}{frac_part}")
        .trim_start_matches('0')
        .parse()
        .unwrap_or_else(|_| BigInt::zero());
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut r = if scale >= 0 {
        BigRational::from_integer(digits * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(digits, num_traits::pow(ten, (-scale) as usize))
    };
    if negative {
        r = -r;
    }
    Some(r)
}

pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Decimal expansion of `r`: exact when the reduced denominator has no
/// prime factors other than 2 and 5, otherwise the shortest round-trip
/// form of the nearest `f64`.
pub fn to_decimal_string(r: &BigRational) -> String {
    let mut den = r.denom().clone();
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    let mut twos = 0usize;
    let mut fives = 0usize;
    while den.is_even() {
        den /= &two;
        twos += 1;
    }
    while (&den % &five).is_zero() {
        den /= &five;
        fives += 1;
    }
    if !den.is_one() {
        // shortest decimal that round-trips to the nearest f64
        return format!("{}", to_f64(r));
    }
    let places = twos.max(fives);
    let scaled = r * BigRational::from_integer(num_traits::pow(BigInt::from(10), places));
    debug_assert!(scaled.is_integer());
    let n = scaled.to_integer();
    let negative = n.is_negative();
    let digits = n.abs().to_string();
    let s = if places == 0 {
        digits
    } else if digits.len() <= places {
        format!("0.{}{}", "0".repeat(places - digits.len()), digits)
    } else {
        let (i, f) = digits.split_at(digits.len() - places);
        format!("{i}.{f}")
    };
    if negative {
        format!("-{s}")
    } else {
        s
    }
}
