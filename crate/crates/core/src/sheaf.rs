//! Numerical sheaf types and multi-Gieseker (semi)stability.
//!
//! A [`SheafClass`] is the numerical shadow of a sheaf: one Hilbert
//! polynomial `m ↦ χ(E ⊗ L_j^m)` per polarization. The stability verdict is
//! always relative to an explicit, finite list of candidate subsheaf classes.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::exact::rational::factorial;
use crate::exact::{eventual_compare, Degree, Polynomial, Rational, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SheafError {
    #[error("length mismatch: expected {expected} entries, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("stability parameter is zero")]
    ZeroParameter,
    #[error("stability parameter has a negative entry")]
    NegativeParameter,
    #[error("stability parameter is empty")]
    EmptyParameter,
    #[error("sheaf class {name}: leading coefficient r^sigma vanishes")]
    DegenerateLeading { name: String },
    #[error("sheaf class {name}: {reason}")]
    InvalidSheaf { name: String, reason: String },
    #[error("sheaf class {name} has dimension {found}, expected {expected}")]
    DimensionMismatch { name: String, expected: usize, found: usize },
    #[error("candidate {name} is numerically identical to the target and cannot be a proper subsheaf")]
    NotProper { name: String },
}

/// Numerical type of a sheaf of dimension `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SheafClass {
    name: String,
    d: usize,
    rank: Rational,
    hilbert: Vec<Polynomial>,
    twisted_hilbert: Option<Vec<Polynomial>>,
}

impl SheafClass {
    pub fn new(name: impl Into<String>, d: usize, rank: Rational, hilbert: Vec<Polynomial>) -> Result<Self, SheafError> {
        let name = name.into();
        let invalid = |reason: &str| SheafError::InvalidSheaf { name: name.clone(), reason: reason.to_string() };
        if hilbert.is_empty() {
            return Err(invalid("needs at least one Hilbert polynomial"));
        }
        if !rank.is_positive() {
            return Err(invalid("rank must be positive"));
        }
        if hilbert.iter().any(|p| p.degree() > Degree::Finite(d)) {
            return Err(invalid("a Hilbert polynomial exceeds the sheaf dimension"));
        }
        if !hilbert.iter().any(|p| p.degree() == Degree::Finite(d)) {
            return Err(invalid("no Hilbert polynomial reaches the sheaf dimension"));
        }
        if hilbert.iter().any(|p| p.coeff(d).is_negative()) {
            return Err(invalid("negative top-degree coefficient"));
        }
        let hilbert = hilbert.into_iter().map(|p| p.with_var(Var::M)).collect();
        Ok(SheafClass { name, d, rank, hilbert, twisted_hilbert: None })
    }

    /// Attaches `k ↦ χ(E ⊗ L_j^k ⊗ B_j)`, one per polarization.
    pub fn with_twisted(mut self, twisted: Vec<Polynomial>) -> Result<Self, SheafError> {
        if twisted.len() != self.hilbert.len() {
            return Err(SheafError::LengthMismatch { expected: self.hilbert.len(), found: twisted.len() });
        }
        self.twisted_hilbert = Some(twisted.into_iter().map(|p| p.with_var(Var::M)).collect());
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn rank(&self) -> &Rational {
        &self.rank
    }

    pub fn j0(&self) -> usize {
        self.hilbert.len()
    }

    pub fn hilbert(&self) -> &[Polynomial] {
        &self.hilbert
    }

    pub fn twisted_hilbert(&self) -> Option<&[Polynomial]> {
        self.twisted_hilbert.as_deref()
    }

    /// The same class with the twisted polynomials promoted to the Hilbert
    /// polynomials, i.e. stability computed with the twisted multi-Hilbert
    /// polynomial.
    pub fn twisted_view(&self) -> Option<Result<SheafClass, SheafError>> {
        let twisted = self.twisted_hilbert.clone()?;
        Some(SheafClass::new(self.name.clone(), self.d, self.rank.clone(), twisted))
    }
}

/// `σ = (σ_1, …, σ_{j0})`, nonnegative and not all zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StabilityParameter {
    sigma: Vec<Rational>,
}

impl StabilityParameter {
    pub fn new(sigma: Vec<Rational>) -> Result<Self, SheafError> {
        if sigma.is_empty() {
            return Err(SheafError::EmptyParameter);
        }
        if sigma.iter().any(Signed::is_negative) {
            return Err(SheafError::NegativeParameter);
        }
        if sigma.iter().all(Zero::is_zero) {
            return Err(SheafError::ZeroParameter);
        }
        Ok(StabilityParameter { sigma })
    }

    /// Standard basis vector `e_j` (zero-based `j`).
    pub fn basis(j0: usize, j: usize) -> Self {
        let sigma = (0..j0).map(|i| if i == j { Rational::from_integer(1.into()) } else { Rational::zero() }).collect();
        StabilityParameter { sigma }
    }

    pub fn entries(&self) -> &[Rational] {
        &self.sigma
    }

    pub fn len(&self) -> usize {
        self.sigma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sigma.is_empty()
    }

    /// All entries strictly positive.
    pub fn is_positive(&self) -> bool {
        self.sigma.iter().all(Signed::is_positive)
    }

    /// `λσ` for `λ > 0`.
    pub fn scaled(&self, lambda: &Rational) -> Result<Self, SheafError> {
        StabilityParameter::new(self.sigma.iter().map(|s| s * lambda).collect())
    }

    /// First `j_prime` entries; fails if those are all zero.
    pub fn truncated(&self, j_prime: usize) -> Result<Self, SheafError> {
        StabilityParameter::new(self.sigma[..j_prime.min(self.sigma.len())].to_vec())
    }
}

/// Outcome of comparing a target against its candidate list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Verdict {
    Stable,
    /// Candidates comparing `Equal`, sorted by name.
    StrictlySemistable { witnesses: Vec<String> },
    /// Candidates comparing `Greater`, sorted by name.
    Unstable { witnesses: Vec<String> },
}

impl Verdict {
    /// Verdict determined by per-candidate orderings of `p_F` against `p_E`.
    pub fn from_orderings<'a>(orderings: impl IntoIterator<Item = (&'a str, Ordering)>) -> Verdict {
        let mut greater = Vec::new();
        let mut equal = Vec::new();
        for (name, ord) in orderings {
            match ord {
                Ordering::Greater => greater.push(name.to_string()),
                Ordering::Equal => equal.push(name.to_string()),
                Ordering::Less => {}
            }
        }
        if !greater.is_empty() {
            greater.sort();
            Verdict::Unstable { witnesses: greater }
        } else if !equal.is_empty() {
            equal.sort();
            Verdict::StrictlySemistable { witnesses: equal }
        } else {
            Verdict::Stable
        }
    }

    pub fn is_semistable(&self) -> bool {
        !matches!(self, Verdict::Unstable { .. })
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Verdict::Stable => "stable",
            Verdict::StrictlySemistable { .. } => "strictly-semistable",
            Verdict::Unstable { .. } => "unstable",
        }
    }

    pub fn witnesses(&self) -> &[String] {
        match self {
            Verdict::Stable => &[],
            Verdict::StrictlySemistable { witnesses } | Verdict::Unstable { witnesses } => witnesses,
        }
    }
}

fn check_len(e: &SheafClass, sigma: &StabilityParameter) -> Result<(), SheafError> {
    if sigma.len() != e.j0() {
        return Err(SheafError::LengthMismatch { expected: e.j0(), found: sigma.len() });
    }
    Ok(())
}

/// `P_E^σ(m) = Σ_j σ_j χ(E ⊗ L_j^m)`.
pub fn multi_hilbert(e: &SheafClass, sigma: &StabilityParameter) -> Result<Polynomial, SheafError> {
    check_len(e, sigma)?;
    Ok(e.hilbert
        .iter()
        .zip(sigma.entries())
        .fold(Polynomial::zero(Var::M), |acc, (p, s)| &acc + &p.scale(s)))
}

/// Coefficients `α_i` of `P = Σ_i α_i m^i / i!`, for `i = 0..=d`.
pub fn alpha_coefficients(p: &Polynomial, d: usize) -> Vec<Rational> {
    (0..=d)
        .map(|i| p.coeff(i) * Rational::from_integer(factorial(i)))
        .collect()
}

/// `r_E^σ = α_d^σ(E)`.
pub fn leading_alpha(e: &SheafClass, sigma: &StabilityParameter) -> Result<Rational, SheafError> {
    let p = multi_hilbert(e, sigma)?;
    Ok(p.coeff(e.d) * Rational::from_integer(factorial(e.d)))
}

/// `p_E^σ = P_E^σ / r_E^σ`; its leading coefficient is `1/d!`.
pub fn reduced_multi_hilbert(e: &SheafClass, sigma: &StabilityParameter) -> Result<Polynomial, SheafError> {
    let p = multi_hilbert(e, sigma)?;
    let r = p.coeff(e.d) * Rational::from_integer(factorial(e.d));
    if r.is_zero() {
        return Err(SheafError::DegenerateLeading { name: e.name.clone() });
    }
    Ok(p.scale(&(Rational::from_integer(1.into()) / r)))
}

fn check_compatible(e: &SheafClass, f: &SheafClass) -> Result<(), SheafError> {
    if f.j0() != e.j0() {
        return Err(SheafError::LengthMismatch { expected: e.j0(), found: f.j0() });
    }
    if f.d != e.d {
        return Err(SheafError::DimensionMismatch { name: f.name.clone(), expected: e.d, found: f.d });
    }
    Ok(())
}

/// Eventual order of `p_F^σ` against `p_E^σ`.
pub fn compare_reduced(f: &SheafClass, e: &SheafClass, sigma: &StabilityParameter) -> Result<Ordering, SheafError> {
    check_compatible(e, f)?;
    let pf = reduced_multi_hilbert(f, sigma)?;
    let pe = reduced_multi_hilbert(e, sigma)?;
    Ok(eventual_compare(&pf, &pe))
}

/// Rejects candidates that cannot be non-trivial proper subsheaves of `e`.
pub fn check_candidates(e: &SheafClass, candidates: &[SheafClass]) -> Result<(), SheafError> {
    for f in candidates {
        check_compatible(e, f)?;
        if f.name == e.name || f.hilbert == e.hilbert {
            return Err(SheafError::NotProper { name: f.name.clone() });
        }
    }
    Ok(())
}

/// Per-candidate orderings of `p_F^σ` against `p_E^σ`, in input order.
pub fn comparisons(
    e: &SheafClass,
    candidates: &[SheafClass],
    sigma: &StabilityParameter,
) -> Result<Vec<(String, Ordering)>, SheafError> {
    check_candidates(e, candidates)?;
    let pe = reduced_multi_hilbert(e, sigma)?;
    candidates
        .iter()
        .map(|f| Ok((f.name.clone(), eventual_compare(&reduced_multi_hilbert(f, sigma)?, &pe))))
        .collect()
}

/// Multi-Gieseker verdict of `e` relative to `candidates`.
pub fn stability_verdict(
    e: &SheafClass,
    candidates: &[SheafClass],
    sigma: &StabilityParameter,
) -> Result<Verdict, SheafError> {
    let ords = comparisons(e, candidates, sigma)?;
    Ok(Verdict::from_orderings(ords.iter().map(|(n, o)| (n.as_str(), *o))))
}
