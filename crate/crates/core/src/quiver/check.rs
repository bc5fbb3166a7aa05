//! Exact θ-semistability over small finite fields and a randomized
//! falsifier over the rationals.

use num_traits::{Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::linalg::{closure_from_bases, convert_maps, Field, PrimeField, RationalField};
use super::subspace::enumerate_subspaces;
use super::{theta_pairing, FieldKind, QuiverError, Representation, SubDimVector, ThetaVector};
use crate::exact::Rational;

pub const DEFAULT_DIMENSION_CAP: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuiverVerdict {
    /// No non-trivial proper subrepresentation has positive θ-value. The
    /// optional witness is a proper non-trivial subrepresentation with
    /// θ-value zero, which rules out strict stability.
    Semistable { zero_theta_witness: Option<SubDimVector> },
    Unstable { witness: SubDimVector, value: Rational },
}

impl QuiverVerdict {
    pub fn is_semistable(&self) -> bool {
        matches!(self, QuiverVerdict::Semistable { .. })
    }

    pub fn tag(&self) -> &'static str {
        match self {
            QuiverVerdict::Semistable { .. } => "semistable",
            QuiverVerdict::Unstable { .. } => "unstable",
        }
    }
}

fn validate(rep: &Representation, theta: &ThetaVector, cap: usize) -> Result<(), QuiverError> {
    let d = rep.dims();
    if theta.len() != d.entries().len() {
        return Err(QuiverError::LengthMismatch { expected: d.entries().len(), found: theta.len() });
    }
    if d.is_zero() {
        return Err(QuiverError::ZeroDimensionVector);
    }
    if let Some(&found) = d.entries().iter().find(|&&x| x as usize > cap) {
        return Err(QuiverError::DimensionCapExceeded { cap, found });
    }
    Ok(())
}

/// Decides θ-semistability by running over every tuple of source subspaces
/// `(V′_1, …, V′_{j0})` and taking the generated sinks. Since every
/// `θ_{j2} ≤ 0`, the generated closure maximizes θ among subrepresentations
/// with those sources. The first unstable tuple in enumeration order is
/// returned as the witness.
pub fn semistability_check(rep: &Representation, theta: &ThetaVector, cap: usize) -> Result<QuiverVerdict, QuiverError> {
    let q = match rep.field() {
        FieldKind::FiniteField(q @ (2 | 3)) => q,
        FieldKind::FiniteField(q) => return Err(QuiverError::UnsupportedField { q }),
        FieldKind::Rationals => return Err(QuiverError::RequiresFiniteField),
    };
    validate(rep, theta, cap)?;
    let f = PrimeField::new(q);
    let j0 = rep.quiver().j0();
    let dims = rep.dims();
    let maps = convert_maps(&f, rep);
    let spaces: Vec<Vec<Vec<Vec<u32>>>> = (0..j0).map(|i| enumerate_subspaces(q, dims.source(i))).collect();

    let total: u64 = dims.entries().iter().sum();
    let mut zero_witness: Option<SubDimVector> = None;
    let mut counter = vec![0usize; j0];
    let mut buf = Vec::with_capacity(2 * j0);
    loop {
        let sources: Vec<&[Vec<u32>]> = counter.iter().zip(&spaces).map(|(&c, s)| s[c].as_slice()).collect();
        closure_from_bases(&f, rep, &maps, &sources, &mut buf);
        let sub = SubDimVector::from_entries(buf.clone());
        let value = theta_pairing(theta, &sub);
        if value.is_positive() {
            return Ok(QuiverVerdict::Unstable { witness: sub, value });
        }
        if value.is_zero() && zero_witness.is_none() {
            zero_witness = zero_theta_enlargement(&buf, theta, dims.entries(), total);
        }
        // advance the mixed-radix counter, last vertex fastest
        let mut i = j0;
        loop {
            if i == 0 {
                return Ok(QuiverVerdict::Semistable { zero_theta_witness: zero_witness });
            }
            i -= 1;
            counter[i] += 1;
            if counter[i] < spaces[i].len() {
                break;
            }
            counter[i] = 0;
        }
    }
}

/// A proper non-trivial subrepresentation with θ-value zero obtained from a
/// closure of θ-value zero, enlarging sinks only in rows of weight zero.
fn zero_theta_enlargement(closure: &[u64], theta: &ThetaVector, d: &[u64], total: u64) -> Option<SubDimVector> {
    let size: u64 = closure.iter().sum();
    if size > 0 && size < total {
        return Some(SubDimVector::from_entries(closure.to_vec()));
    }
    if size == total {
        return None;
    }
    // the zero closure: add one sink direction in a weight-zero row
    let j = (0..d.len() / 2).find(|&j| theta.sink_weight(j).is_zero() && d[2 * j + 1] > 0)?;
    if total == 1 {
        return None;
    }
    let mut entries = closure.to_vec();
    entries[2 * j + 1] = 1;
    Some(SubDimVector::from_entries(entries))
}

/// Result of the randomized search. A missing witness proves nothing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FalsifierReport {
    pub witness: Option<(SubDimVector, Rational)>,
    pub trials: u64,
    pub note: &'static str,
}

pub const FALSIFIER_NOTE: &str = "randomized search: may miss witnesses";

fn random_basis<F: Field, R: Rng>(f: &F, rng: &mut R, n: usize) -> Vec<Vec<F::E>> {
    let k = rng.gen_range(0..=n);
    (0..k)
        .map(|_| (0..n).map(|_| f.from_rational(&Rational::from_integer(rng.gen_range(-3i64..=3).into()))).collect())
        .collect()
}

fn falsify<F: Field>(f: &F, rep: &Representation, theta: &ThetaVector, trials: u64, seed: u64) -> Option<(SubDimVector, Rational)> {
    let mut rng = StdRng::seed_from_u64(seed);
    let maps = convert_maps(f, rep);
    let j0 = rep.quiver().j0();
    let mut buf = Vec::new();
    for _ in 0..trials {
        let bases: Vec<Vec<Vec<F::E>>> = (0..j0).map(|i| random_basis(f, &mut rng, rep.dims().source(i))).collect();
        let refs: Vec<&[Vec<F::E>]> = bases.iter().map(Vec::as_slice).collect();
        closure_from_bases(f, rep, &maps, &refs, &mut buf);
        let sub = SubDimVector::from_entries(buf.clone());
        let value = theta_pairing(theta, &sub);
        if value.is_positive() {
            return Some((sub, value));
        }
    }
    None
}

/// Looks for a destabilizing subrepresentation among `trials` random
/// source-subspace tuples and their closures. Works over any field kind.
pub fn falsify_over_rationals(rep: &Representation, theta: &ThetaVector, trials: u64, seed: u64) -> Result<FalsifierReport, QuiverError> {
    validate(rep, theta, usize::MAX)?;
    let witness = match rep.field() {
        FieldKind::Rationals => falsify(&RationalField, rep, theta, trials, seed),
        FieldKind::FiniteField(q) => falsify(&PrimeField::new(q), rep, theta, trials, seed),
    };
    Ok(FalsifierReport { witness, trials, note: FALSIFIER_NOTE })
}
