//! Dense univariate polynomials over the rationals.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{format_rational, Rational, Sign};

/// Name of the indeterminate. Only used for display and for catching
/// accidental mixing of polynomials in different variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    /// Hilbert twist variable `m` (also used for the twisted variable `k`).
    M,
    /// Segment parameter `t`.
    T,
}

impl Var {
    pub fn name(self) -> &'static str {
        match self {
            Var::M => "m",
            Var::T => "t",
        }
    }
}

/// Degree of a polynomial, with the zero polynomial strictly below every
/// constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// `coeffs[k]` is the coefficient of `var^k`. Trailing zeros are always
/// trimmed, so structural equality is polynomial equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
    var: Var,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>, var: Var) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs, var }
    }

    pub fn zero(var: Var) -> Self {
        Polynomial { coeffs: Vec::new(), var }
    }

    pub fn constant(c: Rational, var: Var) -> Self {
        Polynomial::new(vec![c], var)
    }

    /// `a + b·var`
    pub fn linear(a: Rational, b: Rational, var: Var) -> Self {
        Polynomial::new(vec![a, b], var)
    }

    pub fn from_ints(coeffs: &[i64], var: Var) -> Self {
        Polynomial::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect(), var)
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn with_var(mut self, var: Var) -> Self {
        self.var = var;
        self
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `var^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_sign(&self, x: &Rational) -> Sign {
        Sign::of(&self.eval(x))
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|a| a * c).collect(), self.var)
    }

    pub fn derivative(&self) -> Polynomial {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * Rational::from_integer(k.into()))
            .collect();
        Polynomial::new(coeffs, self.var)
    }

    pub fn monic(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&(Rational::one() / self.leading()))
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Polynomial) -> (Polynomial, Polynomial) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let dd = divisor.coeffs.len() - 1;
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Polynomial::zero(self.var), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lead;
            if !c.is_zero() {
                for (i, dc) in divisor.coeffs.iter().enumerate() {
                    rem[k + i] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Polynomial::new(quot, self.var), Polynomial::new(rem, self.var))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Product of the distinct irreducible factors, monic.
    pub fn square_free(&self) -> Polynomial {
        if self.degree() <= Degree::Finite(0) {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Integer coefficients with content 1 and positive leading coefficient,
    /// same roots as `self`.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if ints.last().is_some_and(|c| c.is_negative()) {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        ints.into_iter().map(|c| c / &content * &sign).collect()
    }

    /// Exact `f(x)` for a polynomial with integer coefficients at `x`, used
    /// by callers holding `primitive_integer` output.
    pub fn eval_int_coeffs(coeffs: &[BigInt], x: &Rational) -> Rational {
        coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + Rational::from_integer(c.clone()))
    }
}

/// Order of `p(m)` against `q(m)` for all sufficiently large `m`: the
/// coefficients are compared lexicographically from the top degree down,
/// with the shorter polynomial padded by zeros.
pub fn eventual_compare(p: &Polynomial, q: &Polynomial) -> Ordering {
    let n = p.coeffs.len().max(q.coeffs.len());
    for k in (0..n).rev() {
        match p.coeff(k).cmp(&q.coeff(k)) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

fn check_vars(a: &Polynomial, b: &Polynomial) -> Var {
    // zero polynomials are variable-agnostic
    if a.is_zero() {
        return b.var;
    }
    if b.is_zero() {
        return a.var;
    }
    assert_eq!(a.var, b.var, "mixing polynomials in different variables");
    a.var
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let var = check_vars(self, rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect(), var)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let var = check_vars(self, rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect(), var)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let var = check_vars(self, rhs);
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero(var);
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out, var)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect(), self.var)
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let x = self.var.name();
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let body = format_rational(&mag);
            let show_coeff = k == 0 || !mag.is_one();
            match (k, show_coeff) {
                (0, _) => f.write_str(&body)?,
                (_, true) if mag.denom().is_one() => write!(f, "{body}{x}")?,
                (_, true) => write!(f, "({body}){x}")?,
                (_, false) => f.write_str(x)?,
            }
            if k > 1 {
                write!(f, "^{k}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};
    use proptest::prelude::*;

    fn m(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c, Var::M)
    }

    #[test]
    fn eventual_compare_examples() {
        // m^2 + 1 vs m^2 + m
        assert_eq!(eventual_compare(&m(&[1, 0, 1]), &m(&[0, 1, 1])), Ordering::Less);
        let p = m(&[3, -2, 5]);
        assert_eq!(eventual_compare(&p, &p), Ordering::Equal);
        // 3m + 7 vs m^2
        assert_eq!(eventual_compare(&m(&[7, 3]), &m(&[0, 0, 1])), Ordering::Less);
        assert_eq!(eventual_compare(&Polynomial::zero(Var::M), &m(&[-1])), Ordering::Greater);
    }

    #[test]
    fn canonical_form_and_degree() {
        let p = Polynomial::new(vec![int(1), int(0), int(0)], Var::T);
        assert_eq!(p.degree(), Degree::Finite(0));
        assert_eq!(Polynomial::zero(Var::T).degree(), Degree::NegInfinity);
        assert!(Degree::NegInfinity < Degree::Finite(0));
    }

    #[test]
    fn division_and_gcd() {
        let t = |c: &[i64]| Polynomial::from_ints(c, Var::T);
        // (2t - 1)(2t + 1) = 4t^2 - 1
        let f = t(&[-1, 0, 4]);
        let (q, r) = f.div_rem(&t(&[-1, 2]));
        assert_eq!(q, t(&[1, 2]));
        assert!(r.is_zero());
        let g = t(&[-1, 0, 4]).gcd(&t(&[-1, 2]));
        assert_eq!(g, Polynomial::linear(rat(-1, 2), int(1), Var::T));
        // (t-1)^2 (t+2) -> (t-1)(t+2)
        let sq = &(&t(&[-1, 1]) * &t(&[-1, 1])) * &t(&[2, 1]);
        assert_eq!(sq.square_free(), t(&[-2, 1, 1]));
        assert_eq!(t(&[1, 0, 2]).primitive_integer(), vec![1.into(), 0.into(), 2.into()]);
        assert_eq!(
            Polynomial::new(vec![rat(-1, 2), rat(0, 1), rat(-3, 4)], Var::T).primitive_integer(),
            vec![2.into(), 0.into(), 3.into()]
        );
    }

    #[test]
    fn display() {
        assert_eq!(m(&[1, 2]).to_string(), "2m + 1");
        assert_eq!(Polynomial::new(vec![int(0), int(1), rat(1, 2)], Var::M).to_string(), "(1/2)m^2 + m");
        assert_eq!(Polynomial::from_ints(&[1, -4], Var::T).to_string(), "-4t + 1");
    }

    fn poly_strategy() -> impl Strategy<Value = Polynomial> {
        prop::collection::vec((-20i64..20, 1i64..6), 0..5).prop_map(|cs| {
            Polynomial::new(cs.into_iter().map(|(n, d)| rat(n, d)).collect(), Var::M)
        })
    }

    proptest! {
        #[test]
        fn eventual_compare_is_antisymmetric(p in poly_strategy(), q in poly_strategy()) {
            prop_assert_eq!(eventual_compare(&p, &q), eventual_compare(&q, &p).reverse());
            prop_assert_eq!(eventual_compare(&p, &q) == Ordering::Equal, p == q);
        }

        #[test]
        fn eventual_compare_translation_invariant(
            p in poly_strategy(), q in poly_strategy(), r in poly_strategy()
        ) {
            prop_assert_eq!(eventual_compare(&(&p + &r), &(&q + &r)), eventual_compare(&p, &q));
        }

        #[test]
        fn eventual_compare_matches_large_evaluation(p in poly_strategy(), q in poly_strategy()) {
            // coefficients are bounded by 20 with denominators < 6, so
            // m = 10^6 lies beyond every crossing point of p - q
            let big = Rational::from_integer(1_000_000.into());
            prop_assert_eq!(eventual_compare(&p, &q), p.eval(&big).cmp(&q.eval(&big)));
        }

        #[test]
        fn div_rem_reconstructs(p in poly_strategy(), q in poly_strategy()) {
            prop_assume!(!q.is_zero());
            let (quot, rem) = p.div_rem(&q);
            prop_assert!(rem.degree() < q.degree());
            prop_assert_eq!(&(&quot * &q) + &rem, p);
        }
    }
}
