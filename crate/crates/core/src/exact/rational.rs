//! Exact rational scalars and their string form.
//!
//! Every scalar in the crate is a [`Rational`], i.e. a `BigRational` which is
//! kept in lowest terms with a positive denominator by construction. The
//! textual form is `"p/q"`, or `"p"` when `q = 1`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Rational = BigRational;

/// Exact sign of a scalar.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(x: &Rational) -> Sign {
        if x.is_zero() {
            Sign::Zero
        } else if x.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    pub fn of_int(x: &BigInt) -> Sign {
        if x.is_zero() {
            Sign::Zero
        } else if x.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    pub fn negate(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }

    pub fn mul(self, other: Sign) -> Sign {
        match (self, other) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (a, b) if a == b => Sign::Positive,
            _ => Sign::Negative,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Negative => "-",
            Sign::Zero => "0",
            Sign::Positive => "+",
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid rational literal {0:?}: expected \"p\" or \"p/q\" with integers p, q")]
    Malformed(String),
    #[error("rational literal {0:?} has zero denominator")]
    ZeroDenominator(String),
}

/// Parses `"p"` or `"p/q"` exactly. Non-reduced input is normalized.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let int = |part: &str| -> Result<BigInt, ParseRationalError> {
        let part = part.trim();
        let digits = part.strip_prefix(['-', '+']).unwrap_or(part);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(ParseRationalError::Malformed(s.to_string()));
        }
        BigInt::from_str(part).map_err(|_| ParseRationalError::Malformed(s.to_string()))
    };
    match s.split_once('/') {
        None => Ok(Rational::from_integer(int(s)?)),
        Some((p, q)) => {
            let p = int(p)?;
            let q = int(q)?;
            if q.is_zero() {
                return Err(ParseRationalError::ZeroDenominator(s.to_string()));
            }
            Ok(Rational::new(p, q))
        }
    }
}

pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Midpoint of two rationals.
pub fn midpoint(a: &Rational, b: &Rational) -> Rational {
    (a + b) / int(2)
}

/// The rational with the smallest denominator (then smallest absolute
/// numerator) in the open interval `(lo, hi)`; `lo < hi` required.
pub fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    assert!(lo < hi, "simplest_between needs lo < hi");
    if lo.is_negative() && hi.is_positive() {
        return Rational::zero();
    }
    if !lo.is_negative() {
        simplest_nonneg(lo, hi)
    } else {
        -simplest_nonneg(&-hi, &-lo)
    }
}

// Stern-Brocot descent on 0 <= lo < hi; strict interior.
fn simplest_nonneg(lo: &Rational, hi: &Rational) -> Rational {
    let fl = lo.floor();
    let candidate = &fl + Rational::one();
    if &candidate < hi {
        // an integer lies strictly inside; take the smallest one
        return candidate;
    }
    // lo and hi share the integer part fl (hi may equal fl + 1)
    let frac_lo = lo - &fl;
    let frac_hi = hi - &fl;
    if frac_lo.is_zero() {
        // (fl, fl + frac_hi): need 1/k with k > 1/frac_hi
        let k = (Rational::one() / &frac_hi).floor() + Rational::one();
        return fl + Rational::one() / k;
    }
    // invert: x in (frac_lo, frac_hi)  <=>  1/x in (1/frac_hi, 1/frac_lo)
    let inner = simplest_nonneg(&(Rational::one() / &frac_hi), &(Rational::one() / &frac_lo));
    fl + Rational::one() / inner
}

/// Exact decimal rendering truncated to `digits` fractional places, used only
/// for human-readable approximations.
pub fn decimal_approx(x: &Rational, digits: usize) -> String {
    let neg = x.is_negative();
    let x = x.abs();
    let (whole, mut rem) = x.numer().div_rem(x.denom());
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    out.push_str(&whole.to_string());
    if digits > 0 {
        out.push('.');
        let ten = BigInt::from(10);
        for _ in 0..digits {
            rem *= &ten;
            let (q, r) = rem.div_rem(x.denom());
            out.push_str(&q.to_string());
            rem = r;
        }
    }
    out
}
