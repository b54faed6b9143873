//! Exact rational scalars and their text representation.
//!
//! Every coordinate, height and objective value in this crate is a
//! [`Rational`]. Instance files carry numbers as decimal strings (`"1.5"`,
//! `"-0.25"`) or, for values without a finite decimal expansion, as
//! fractions (`"p/q"`). Scientific notation is rejected.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `n/d`.
pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses a decimal string (`"12"`, `"-3.25"`) or a fraction (`"7/3"`).
pub fn parse_number(text: &str) -> Result<Rational, String> {
    let s = text.trim();
    if s.is_empty() {
        return Err("empty number".into());
    }
    if s.contains(['e', 'E']) {
        return Err(format!("scientific notation is not accepted: {s}"));
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num
            .parse()
            .map_err(|_| format!("bad fraction numerator: {num}"))?;
        let d: BigInt = den
            .parse()
            .map_err(|_| format!("bad fraction denominator: {den}"))?;
        if d.is_zero() {
            return Err(format!("zero denominator: {s}"));
        }
        return Ok(Rational::new(n, d));
    }
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(format!("bad number: {s}"));
    }
    if !int_part.chars().all(|c| c.is_ascii_digit()) || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return Err(format!("bad number: {s}"));
    }
    let digits = format!("{int_part}{frac_part}");
    let value: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().map_err(|_| format!("bad number: {s}"))?
    };
    let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
    Ok(Rational::new(BigInt::from(sign) * value, scale))
}

/// Formats a rational exactly: as a decimal when the reduced denominator is
/// of the form `2^a 5^b`, otherwise as `p/q`. `parse_number` round-trips both.
pub fn format_number(value: &Rational) -> String {
    let num = value.numer();
    let den = value.denom();
    if den.is_one() {
        return num.to_string();
    }
    let mut d = den.clone();
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    let mut twos = 0u32;
    let mut fives = 0u32;
    while (&d % &two).is_zero() {
        d /= &two;
        twos += 1;
    }
    while (&d % &five).is_zero() {
        d /= &five;
        fives += 1;
    }
    if !d.is_one() {
        return format!("{num}/{den}");
    }
    let digits = twos.max(fives);
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = (num * &scale) / den;
    let negative = scaled.is_negative();
    let abs = scaled.abs().to_string();
    let abs = if abs.len() <= digits as usize {
        format!("{}{}", "0".repeat(digits as usize + 1 - abs.len()), abs)
    } else {
        abs
    };
    let split = abs.len() - digits as usize;
    let (int_part, frac_part) = abs.split_at(split);
    let frac_part = frac_part.trim_end_matches('0');
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    out.push_str(int_part);
    if !frac_part.is_empty() {
        out.push('.');
        out.push_str(frac_part);
    }
    out
}
