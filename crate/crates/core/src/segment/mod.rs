//! Stability segments `σ(t) = (1 − t)·σ(0) + t·σ(1)` and the walls, chambers
//! and flip schedules they induce on a target against a candidate list.

mod chambers;
mod uniform;

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact::quadratic::{eval_at, QuadraticNumber};
use crate::exact::rational::factorial;
use crate::exact::{ExactError, Polynomial, Rational, Sign, Var};
use crate::sheaf::{SheafClass, SheafError, StabilityParameter};

pub use chambers::{
    chamber_decomposition, find_walls, flip_schedule, grid_oracle, nonexceeding_locus, CandidateFlip, Chamber,
    ChamberReport, ExceptionalPoint, Flip, FlipSchedule, GridOracleReport, LocusEnd, LocusInterval, Location,
    PointReport, Trigger, Wall, schedule_from_report,
};
pub use uniform::{uniformity_check, CoefficientTable, Offense, OffenseKind, UniformityReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SegmentError {
    #[error("length mismatch: expected {expected} entries, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("volume of polarization {index} must be positive")]
    NonPositiveVolume { index: usize },
    #[error("segment endpoint t={endpoint} is not normalized: sum of vol(L_j)·sigma_j is {sum}, expected 1")]
    NotNormalized { endpoint: u8, sum: String },
    #[error("stability parameter is zero")]
    ZeroParameter,
    #[error("stability parameter has a negative entry")]
    NegativeParameter,
    #[error("sheaf class {name}: leading coefficient r^sigma(t) vanishes somewhere on [0,1]")]
    DegenerateLeading { name: String },
    #[error("sheaf class {name} carries no twisted Hilbert polynomials")]
    MissingTwistData { name: String },
    #[error("sheaf class {name} has dimension {found}, segment has dimension {expected}")]
    DimensionMismatch { name: String, expected: usize, found: usize },
    #[error(transparent)]
    Sheaf(#[from] SheafError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// A validated stability segment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilitySegment {
    from: StabilityParameter,
    to: StabilityParameter,
    volumes: Vec<Rational>,
    d: usize,
}

fn endpoint(raw: &[Rational]) -> Result<StabilityParameter, SegmentError> {
    StabilityParameter::new(raw.to_vec()).map_err(|e| match e {
        SheafError::ZeroParameter | SheafError::EmptyParameter => SegmentError::ZeroParameter,
        SheafError::NegativeParameter => SegmentError::NegativeParameter,
        other => SegmentError::Sheaf(other),
    })
}

/// Checks `Σ_j vol(L_j)·σ_j(t) = 1` at both endpoints (linearity extends it
/// to all of `[0, 1]`).
pub fn validate_segment(
    from: &[Rational],
    to: &[Rational],
    volumes: &[Rational],
    d: usize,
) -> Result<StabilitySegment, SegmentError> {
    if to.len() != from.len() {
        return Err(SegmentError::LengthMismatch { expected: from.len(), found: to.len() });
    }
    if volumes.len() != from.len() {
        return Err(SegmentError::LengthMismatch { expected: from.len(), found: volumes.len() });
    }
    if let Some(index) = volumes.iter().position(|v| !v.is_positive()) {
        return Err(SegmentError::NonPositiveVolume { index });
    }
    let from = endpoint(from)?;
    let to = endpoint(to)?;
    for (tag, sigma) in [(0u8, &from), (1u8, &to)] {
        let sum: Rational = sigma.entries().iter().zip(volumes).map(|(s, v)| s * v).sum();
        if !sum.is_one() {
            return Err(SegmentError::NotNormalized { endpoint: tag, sum: crate::exact::format_rational(&sum) });
        }
    }
    Ok(StabilitySegment { from, to, volumes: volumes.to_vec(), d })
}

impl StabilitySegment {
    pub fn from(&self) -> &StabilityParameter {
        &self.from
    }

    pub fn to(&self) -> &StabilityParameter {
        &self.to
    }

    pub fn volumes(&self) -> &[Rational] {
        &self.volumes
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn j0(&self) -> usize {
        self.from.len()
    }

    pub fn is_constant(&self) -> bool {
        self.from == self.to
    }

    /// `σ_j(t)` as linear polynomials in `t`.
    pub fn sigma_polys(&self) -> Vec<Polynomial> {
        self.from
            .entries()
            .iter()
            .zip(self.to.entries())
            .map(|(a, b)| Polynomial::linear(a.clone(), b - a, Var::T))
            .collect()
    }

    /// `σ(t)` for `t ∈ [0, 1]`.
    pub fn at(&self, t: &Rational) -> StabilityParameter {
        let sigma = self
            .from
            .entries()
            .iter()
            .zip(self.to.entries())
            .map(|(a, b)| a + (b - a) * t)
            .collect();
        // a convex combination of nonzero nonnegative vectors never vanishes
        StabilityParameter::new(sigma).expect("sigma(t) is a valid parameter on [0, 1]")
    }

    /// Endpoints scaled by `λ > 0`, volumes by `1/λ`.
    pub fn rescaled(&self, lambda: &Rational) -> Result<StabilitySegment, SegmentError> {
        let from: Vec<Rational> = self.from.entries().iter().map(|s| s * lambda).collect();
        let to: Vec<Rational> = self.to.entries().iter().map(|s| s * lambda).collect();
        let volumes: Vec<Rational> = self.volumes.iter().map(|v| v / lambda).collect();
        validate_segment(&from, &to, &volumes, self.d)
    }
}

/// `α_i^{σ(t)}(E)` for `i = 0..=d`, each linear in `t`.
fn alpha_t(e: &SheafClass, seg: &StabilitySegment) -> Vec<Polynomial> {
    let sig = seg.sigma_polys();
    (0..=seg.d)
        .map(|i| {
            let fact = Rational::from_integer(factorial(i));
            e.hilbert()
                .iter()
                .zip(&sig)
                .fold(Polynomial::zero(Var::T), |acc, (p, s)| &acc + &s.scale(&(p.coeff(i) * &fact)))
        })
        .collect()
}

fn check_class(e: &SheafClass, seg: &StabilitySegment) -> Result<(), SegmentError> {
    if e.j0() != seg.j0() {
        return Err(SegmentError::LengthMismatch { expected: seg.j0(), found: e.j0() });
    }
    if e.dim() != seg.d {
        return Err(SegmentError::DimensionMismatch { name: e.name().to_string(), expected: seg.d, found: e.dim() });
    }
    Ok(())
}

fn positive_leading(e: &SheafClass, alpha: &[Polynomial]) -> Result<(), SegmentError> {
    let r = alpha.last().expect("alpha has d + 1 entries");
    let zero = Rational::zero();
    let one = Rational::one();
    if r.eval_sign(&zero) != Sign::Positive || r.eval_sign(&one) != Sign::Positive {
        return Err(SegmentError::DegenerateLeading { name: e.name().to_string() });
    }
    Ok(())
}

/// Cross-multiplied coefficient functions of `p_F − p_E` along a segment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WallPolynomials {
    pub candidate: String,
    /// `coeffs[i] = c_i(t) = r_E·α_i(F) − r_F·α_i(E)`, for `i = 0..=d`.
    pub coeffs: Vec<Polynomial>,
}

impl WallPolynomials {
    /// `c_d, c_{d−1}, …, c_0`.
    pub fn descending(&self) -> impl Iterator<Item = (usize, &Polynomial)> {
        self.coeffs.iter().enumerate().rev()
    }

    /// Highest `i` with `c_i ≢ 0`; `None` when `F` is numerically
    /// proportional to `E` along the whole segment.
    pub fn governing_index(&self) -> Option<usize> {
        self.descending().find(|(_, c)| !c.is_zero()).map(|(i, _)| i)
    }

    pub fn is_identically_zero(&self) -> bool {
        self.governing_index().is_none()
    }

    /// Lexicographic sign of `(c_{d}, …, c_0)` at a rational `t`.
    pub fn sign_at(&self, t: &Rational) -> Sign {
        self.descending()
            .map(|(_, c)| c.eval_sign(t))
            .find(|s| *s != Sign::Zero)
            .unwrap_or(Sign::Zero)
    }

    /// Lexicographic sign at an element of `Q(√D)`.
    pub fn sign_at_surd(&self, t: &QuadraticNumber) -> Sign {
        self.descending()
            .map(|(_, c)| eval_at(c, t).sign())
            .find(|s| *s != Sign::Zero)
            .unwrap_or(Sign::Zero)
    }

    pub fn ordering_at(&self, t: &Rational) -> Ordering {
        sign_to_ordering(self.sign_at(t))
    }
}

pub(crate) fn sign_to_ordering(s: Sign) -> Ordering {
    match s {
        Sign::Negative => Ordering::Less,
        Sign::Zero => Ordering::Equal,
        Sign::Positive => Ordering::Greater,
    }
}

/// `p_F^{σ(t)} > p_E^{σ(t)}` iff the first nonzero `c_i(t)` from the top is
/// positive; `c_d ≡ 0` always.
pub fn wall_polynomials(f: &SheafClass, e: &SheafClass, seg: &StabilitySegment) -> Result<WallPolynomials, SegmentError> {
    check_class(e, seg)?;
    check_class(f, seg)?;
    let ae = alpha_t(e, seg);
    let af = alpha_t(f, seg);
    positive_leading(e, &ae)?;
    positive_leading(f, &af)?;
    let re = &ae[seg.d];
    let rf = &af[seg.d];
    let coeffs = (0..=seg.d).map(|i| &(re * &af[i]) - &(rf * &ae[i])).collect();
    Ok(WallPolynomials { candidate: f.name().to_string(), coeffs })
}
