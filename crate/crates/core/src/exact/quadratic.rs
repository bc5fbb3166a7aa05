//! Arithmetic in `Q(√D)` for locating and evaluating at irrational roots of
//! quadratics.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use super::poly::{Degree, Polynomial};
use super::rational::{int, Rational, Sign};
use super::roots::IsolatedRoot;

/// `a + b·√radicand` with a fixed positive non-square radicand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticNumber {
    pub a: Rational,
    pub b: Rational,
    pub radicand: Rational,
}

impl QuadraticNumber {
    pub fn rational(a: Rational, radicand: Rational) -> Self {
        QuadraticNumber { a, b: Rational::zero(), radicand }
    }

    pub fn add(&self, other: &QuadraticNumber) -> QuadraticNumber {
        debug_assert_eq!(self.radicand, other.radicand);
        QuadraticNumber { a: &self.a + &other.a, b: &self.b + &other.b, radicand: self.radicand.clone() }
    }

    pub fn add_rational(&self, c: &Rational) -> QuadraticNumber {
        QuadraticNumber { a: &self.a + c, ..self.clone() }
    }

    pub fn mul(&self, other: &QuadraticNumber) -> QuadraticNumber {
        debug_assert_eq!(self.radicand, other.radicand);
        QuadraticNumber {
            a: &self.a * &other.a + &self.b * &other.b * &self.radicand,
            b: &self.a * &other.b + &self.b * &other.a,
            radicand: self.radicand.clone(),
        }
    }

    /// Exact sign; relies on the radicand not being a rational square.
    pub fn sign(&self) -> Sign {
        let sa = Sign::of(&self.a);
        let sb = Sign::of(&self.b);
        if sb == Sign::Zero {
            return sa;
        }
        if sa == Sign::Zero || sa == sb {
            return if sa == Sign::Zero { sb } else { sa };
        }
        let lhs = &self.a * &self.a;
        let rhs = &self.b * &self.b * &self.radicand;
        match lhs.cmp(&rhs) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => Sign::Zero,
        }
    }

    pub fn cmp_rational(&self, c: &Rational) -> Ordering {
        match self.add_rational(&-c).sign() {
            Sign::Negative => Ordering::Less,
            Sign::Zero => Ordering::Equal,
            Sign::Positive => Ordering::Greater,
        }
    }
}

/// Evaluates `f` at `x` exactly.
pub fn eval_at(f: &Polynomial, x: &QuadraticNumber) -> QuadraticNumber {
    let zero = QuadraticNumber::rational(Rational::zero(), x.radicand.clone());
    f.coeffs().iter().rev().fold(zero, |acc, c| acc.mul(x).add_rational(c))
}

pub fn discriminant(f: &Polynomial) -> Option<Rational> {
    if f.degree() != Degree::Finite(2) {
        return None;
    }
    let (c, b, a) = (f.coeff(0), f.coeff(1), f.coeff(2));
    Some(&b * &b - int(4) * a * c)
}

/// The root of the quadratic carrier of `root` lying in its isolating
/// interval, as an element of `Q(√D)`. `None` unless the carrier is a
/// quadratic with irrational roots.
pub fn quadratic_root(root: &IsolatedRoot) -> Option<QuadraticNumber> {
    let f = &root.poly;
    let disc = discriminant(f)?;
    if disc <= Rational::zero() || is_rational_square(&disc) {
        return None;
    }
    let (b, a) = (f.coeff(1), f.coeff(2));
    let two_a = int(2) * a;
    for branch in [Rational::one(), -Rational::one()] {
        let x = QuadraticNumber { a: -&b / &two_a, b: branch / &two_a, radicand: disc.clone() };
        if x.cmp_rational(&root.lo) != Ordering::Less && x.cmp_rational(&root.hi) != Ordering::Greater {
            return Some(x);
        }
    }
    None
}

pub fn is_rational_square(x: &Rational) -> bool {
    if x < &Rational::zero() {
        return false;
    }
    let n = x.numer();
    let d = x.denom();
    let rn = n.sqrt();
    let rd = d.sqrt();
    &(&rn * &rn) == n && &(&rd * &rd) == d
}
