//! Uniformity of a stability segment on a supplied family.
//!
//! The reduced twisted sum `Σ_j σ_j(t)·χ(E ⊗ L_j^k ⊗ B_j) / rank(E)` is
//! expanded in powers of `k`; a segment is uniform on the family when the
//! `k^d` coefficient is `1/d!`, the `k^{d−1}, …, k^1` coefficients do not
//! depend on `t` and the constant term is at most linear in `t`. The check
//! covers exactly the classes passed in.

use super::{SegmentError, StabilitySegment};
use crate::exact::rational::factorial;
use crate::exact::{Degree, Polynomial, Rational, Var};
use crate::sheaf::SheafClass;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OffenseKind {
    /// The `k^d` coefficient is not the constant `1/d!`.
    LeadingNotNormalized,
    /// A coefficient of `k^i`, `1 ≤ i < d`, varies with `t`.
    DependsOnT,
    /// The constant term is not linear in `t`.
    NonlinearConstant,
    /// A nonzero coefficient above `k^d`.
    ExceedsDimension,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Offense {
    pub sheaf: String,
    pub index: usize,
    pub kind: OffenseKind,
}

/// `coeffs[i]` is the coefficient of `k^i` as a polynomial in `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientTable {
    pub sheaf: String,
    pub coeffs: Vec<Polynomial>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniformityReport {
    pub uniform: bool,
    pub tables: Vec<CoefficientTable>,
    pub offending: Vec<Offense>,
}

pub fn uniformity_check(family: &[SheafClass], seg: &StabilitySegment) -> Result<UniformityReport, SegmentError> {
    let sig = seg.sigma_polys();
    let d = seg.dim();
    let mut tables = Vec::with_capacity(family.len());
    let mut offending = Vec::new();
    for e in family {
        let twisted = e
            .twisted_hilbert()
            .ok_or_else(|| SegmentError::MissingTwistData { name: e.name().to_string() })?;
        if twisted.len() != sig.len() {
            return Err(SegmentError::LengthMismatch { expected: sig.len(), found: twisted.len() });
        }
        let inv_rank = Rational::from_integer(1.into()) / e.rank();
        let top = twisted.iter().filter_map(|p| p.degree().finite()).max().unwrap_or(0).max(d);
        let coeffs: Vec<Polynomial> = (0..=top)
            .map(|i| {
                twisted
                    .iter()
                    .zip(&sig)
                    .fold(Polynomial::zero(Var::T), |acc, (p, s)| &acc + &s.scale(&(p.coeff(i) * &inv_rank)))
            })
            .collect();

        let name = e.name().to_string();
        let mut flag = |index: usize, kind: OffenseKind| offending.push(Offense { sheaf: name.clone(), index, kind });
        for (i, c) in coeffs.iter().enumerate() {
            if i > d {
                if !c.is_zero() {
                    flag(i, OffenseKind::ExceedsDimension);
                }
            } else if i == d && d > 0 {
                // for d = 0 the constant term is also the leading one and is unconstrained
                let normal = Rational::from_integer(1.into()) / Rational::from_integer(factorial(d));
                if *c != Polynomial::constant(normal, Var::T) {
                    flag(i, OffenseKind::LeadingNotNormalized);
                }
            } else if i >= 1 {
                if !c.is_constant() {
                    flag(i, OffenseKind::DependsOnT);
                }
            } else if c.degree() > Degree::Finite(1) {
                flag(i, OffenseKind::NonlinearConstant);
            }
        }
        tables.push(CoefficientTable { sheaf: e.name().to_string(), coeffs });
    }
    Ok(UniformityReport { uniform: offending.is_empty(), tables, offending })
}
