//! Exact-or-approximate scalar values and decimal rendering.
//!
//! Index values stay exact ([`Exact`]) as long as the underlying arithmetic
//! is rational. Fractional operator powers force a term into binary64; a
//! [`Scalar`] records which regime a value is in, and any arithmetic that
//! mixes the two collapses to binary64.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::combinatorics::{Count, Exact};

/// A numeric value that is exact when the math producing it was rational.
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Exact(Exact),
    Approx(f64),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Exact(Exact::zero())
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn as_exact(&self) -> Option<&Exact> {
        match self {
            Scalar::Exact(q) => Some(q),
            Scalar::Approx(_) => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(q) => exact_to_f64(q),
            Scalar::Approx(v) => *v,
        }
    }

    /// Two-decimal rendering; round-half-even in both regimes.
    pub fn decimal2(&self) -> String {
        match self {
            Scalar::Exact(q) => decimal2(q),
            Scalar::Approx(v) => format!("{v:.2}"),
        }
    }

    pub fn mul_exact(self, factor: &Exact) -> Scalar {
        match self {
            Scalar::Exact(a) => Scalar::Exact(a * factor),
            Scalar::Approx(v) => Scalar::Approx(v * exact_to_f64(factor)),
        }
    }
}

impl std::ops::Add for Scalar {
    type Output = Scalar;

    fn add(self, other: Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a + b),
            (a, b) => Scalar::Approx(a.to_f64() + b.to_f64()),
        }
    }
}

pub fn count_to_exact(c: &Count) -> Exact {
    Exact::from_integer(BigInt::from(c.clone()))
}

/// Exact rational to nonnegative integer; `None` when the value has a
/// fractional part or is negative.
pub fn exact_to_count(q: &Exact) -> Option<Count> {
    if !q.is_integer() || q.is_negative() {
        return None;
    }
    q.to_integer().to_biguint()
}

pub fn exact_to_f64(q: &Exact) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Render an exact rational with exactly two decimal places, rounding ties
/// to the even last digit. `5/8` renders as `"0.62"`, `-3/2` as `"-1.50"`.
pub fn decimal2(q: &Exact) -> String {
    let negative = q.is_negative();
    let abs = q.abs();
    let scaled: BigInt = abs.numer() * BigInt::from(100u32);
    let (mut quot, rem) = scaled.div_rem(abs.denom());
    let doubled = &rem * BigInt::from(2u32);
    let round_up = match doubled.cmp(abs.denom()) {
        std::cmp::Ordering::Greater => true,
        std::cmp::Ordering::Equal => quot.is_odd(),
        std::cmp::Ordering::Less => false,
    };
    if round_up {
        quot += 1;
    }
    let hundredths: BigUint = quot.to_biguint().expect("absolute value is nonnegative");
    let whole = &hundredths / BigUint::from(100u32);
    let frac = &hundredths % BigUint::from(100u32);
    let sign = if negative && !hundredths.is_zero() {
        "-"
    } else {
        ""
    };
    format!("{sign}{whole}.{frac:02}")
}

/// Parse a plain decimal literal such as `"0.63"` or `"-12.5"` into an exact
/// rational. Used for fixtures and for accepting decimal exponents.
pub fn parse_decimal(s: &str) -> Option<Exact> {
    let (sign, rest) = match s.strip_prefix('-') {
        Some(r) => (-1, r),
        None => (1, s),
    };
    let (int_part, frac_part) = match rest.split_once('.') {
        Some((i, f)) => (i, f),
        None => (rest, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    let digits_ok = |t: &str| t.bytes().all(|b| b.is_ascii_digit());
    if !digits_ok(int_part) || !digits_ok(frac_part) {
        return None;
    }
    let joined = format!("{int_part}{frac_part}");
    let numer: BigInt = joined.parse().ok()?;
    let denom = BigInt::from(10u32).pow(frac_part.len() as u32);
    Some(Exact::new(numer * BigInt::from(sign), denom))
}
