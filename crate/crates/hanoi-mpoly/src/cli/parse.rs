//! Parsers for flag values that clap hands over as raw strings: instance
//! ranges, Randić exponents, and sequence names. All of them are total
//! functions of their input; malformed text becomes a usage error, never a
//! panic.

use std::ops::RangeInclusive;

use crate::error::{Error, Result};
use crate::indices::Alpha;
use crate::scalar::parse_decimal;

/// "A" or "A..B", both inclusive. Reversed or empty ranges are rejected
/// rather than silently producing zero work.
pub fn parse_range(s: &str) -> Result<RangeInclusive<u32>> {
    let bad = || Error::InvalidRange(s.to_string());
    if let Some((lo, hi)) = s.split_once("..") {
        let lo: u32 = lo.trim().parse().map_err(|_| bad())?;
        let hi: u32 = hi.trim().parse().map_err(|_| bad())?;
        if lo > hi {
            return Err(bad());
        }
        Ok(lo..=hi)
    } else {
        let v: u32 = s.trim().parse().map_err(|_| bad())?;
        Ok(v..=v)
    }
}

fn alpha_from_parts(numer: i64, denom: i64) -> Option<Alpha> {
    // i64::MIN has no negation, which both Ratio normalization and the
    // later RR_α sign flip need.
    if numer == i64::MIN || denom == i64::MIN || denom == 0 {
        return None;
    }
    Some(Alpha::new(numer, denom))
}

/// An exponent for the general Randić indices: an integer ("2", "-1"), a
/// fraction ("1/2", "-3/4"), or a decimal ("0.5").
pub fn parse_alpha(s: &str) -> Result<Alpha> {
    let bad = || Error::InvalidAlpha(s.to_string());
    let t = s.trim();
    if let Some((numer, denom)) = t.split_once('/') {
        let numer: i64 = numer.trim().parse().map_err(|_| bad())?;
        let denom: i64 = denom.trim().parse().map_err(|_| bad())?;
        return alpha_from_parts(numer, denom).ok_or_else(bad);
    }
    if t.contains('.') {
        let q = parse_decimal(t).ok_or_else(bad)?;
        let numer = num_traits::ToPrimitive::to_i64(q.numer()).ok_or_else(bad)?;
        let denom = num_traits::ToPrimitive::to_i64(q.denom()).ok_or_else(bad)?;
        return alpha_from_parts(numer, denom).ok_or_else(bad);
    }
    let numer: i64 = t.parse().map_err(|_| bad())?;
    alpha_from_parts(numer, 1).ok_or_else(bad)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("4").unwrap(), 4..=4);
        assert_eq!(parse_range("1..8").unwrap(), 1..=8);
        assert_eq!(parse_range("0..0").unwrap(), 0..=0);
        assert_eq!(parse_range(" 2 .. 5 ").unwrap(), 2..=5);
        for bad in ["", "..", "3..", "..7", "5..2", "a..b", "1..2..3", "-1..4", "1..=4"] {
            assert!(
                matches!(parse_range(bad), Err(Error::InvalidRange(_))),
                "{bad:?}"
            );
        }
    }

    #[test]
    fn alphas() {
        assert_eq!(parse_alpha("2").unwrap(), Alpha::from_integer(2));
        assert_eq!(parse_alpha("-1").unwrap(), Alpha::from_integer(-1));
        assert_eq!(parse_alpha("1/2").unwrap(), Alpha::new(1, 2));
        assert_eq!(parse_alpha("-3/4").unwrap(), Alpha::new(-3, 4));
        assert_eq!(parse_alpha("2/-4").unwrap(), Alpha::new(-1, 2));
        assert_eq!(parse_alpha("0.5").unwrap(), Alpha::new(1, 2));
        assert_eq!(parse_alpha("-0.25").unwrap(), Alpha::new(-1, 4));
        assert_eq!(parse_alpha("6/4").unwrap(), Alpha::new(3, 2));
        for bad in ["", "one", "1/0", "1e3", "1.2.3", ".", "1/2/3", "--2",
                    "9223372036854775808", "-9223372036854775808"] {
            assert!(
                matches!(parse_alpha(bad), Err(Error::InvalidAlpha(_))),
                "{bad:?}"
            );
        }
    }
}
