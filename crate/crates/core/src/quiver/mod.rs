//! The labelled quiver attached to `j0` polarizations and King-style
//! θ-semistability of its representations.
//!
//! The quiver has source vertices `v_1, …, v_{j0}`, sink vertices
//! `w_1, …, w_{j0}` and one arrow `v_i → w_j` labelled by a space of
//! dimension `hom_dims[i][j]`. Only those dimensions are stored.

mod check;
mod linalg;
mod subspace;

pub use check::{falsify_over_rationals, semistability_check, FalsifierReport, QuiverVerdict, DEFAULT_DIMENSION_CAP};
pub use subspace::enumerate_subspaces;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact::Rational;
use crate::sheaf::{SheafClass, StabilityParameter};
use linalg::{PrimeField, RationalField};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("hom_dims must be a nonempty square matrix")]
    HomDimsShape,
    #[error("dimension vector has {found} entries, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("a dimension vector needs a positive even number of entries, found {found}")]
    OddLength { found: usize },
    #[error("map {i},{j} has shape {found_rows}x{found_cols}, expected {rows}x{cols}")]
    ShapeMismatch { i: usize, j: usize, rows: usize, cols: usize, found_rows: usize, found_cols: usize },
    #[error("entry {value} is not an element of F_{q}")]
    NotAFieldElement { q: u32, value: String },
    #[error("{q} is not a supported field size")]
    UnsupportedField { q: u32 },
    #[error("exact semistability needs a finite field")]
    RequiresFiniteField,
    #[error("Hilbert polynomial of {name} takes value {value}, which is not a dimension")]
    NotRepresentable { name: String, value: String },
    #[error("twists must satisfy m0 > n0 (got n0 = {n0}, m0 = {m0})")]
    TwistOrder { n0: i64, m0: i64 },
    #[error("theta denominator for the {which} vertices vanishes")]
    DegenerateDenominator { which: &'static str },
    #[error("dimension {found} exceeds the cap {cap}")]
    DimensionCapExceeded { cap: usize, found: u64 },
    #[error("dimension vector is zero")]
    ZeroDimensionVector,
    #[error("j' = {j_prime} is outside 1..={j0}")]
    RangeError { j_prime: usize, j0: usize },
    #[error("expected {expected} source subspaces, found {found}")]
    SourceCount { expected: usize, found: usize },
    #[error("source subspace {index} does not live in a space of dimension {ambient}")]
    SourceShape { index: usize, ambient: u64 },
}

/// Arrow multiplicities of the quiver; vertices are implicit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelledQuiver {
    hom_dims: Vec<Vec<u64>>,
}

impl LabelledQuiver {
    pub fn new(hom_dims: Vec<Vec<u64>>) -> Result<Self, QuiverError> {
        let n = hom_dims.len();
        if n == 0 || hom_dims.iter().any(|row| row.len() != n) {
            return Err(QuiverError::HomDimsShape);
        }
        Ok(LabelledQuiver { hom_dims })
    }

    pub fn j0(&self) -> usize {
        self.hom_dims.len()
    }

    pub fn hom_dim(&self, i: usize, j: usize) -> usize {
        self.hom_dims[i][j] as usize
    }

    pub fn hom_dims(&self) -> &[Vec<u64>] {
        &self.hom_dims
    }

    /// The full subquiver on the first `j_prime` rows.
    pub fn truncated(&self, j_prime: usize) -> LabelledQuiver {
        LabelledQuiver { hom_dims: self.hom_dims[..j_prime].iter().map(|r| r[..j_prime].to_vec()).collect() }
    }
}

/// Dimensions laid out as `(d_11, d_12, …, d_{j0 1}, d_{j0 2})`, where
/// `d_j1 = dim V_j` and `d_j2 = dim W_j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DimensionVector {
    entries: Vec<u64>,
}

impl DimensionVector {
    pub fn new(entries: Vec<u64>) -> Result<Self, QuiverError> {
        if entries.is_empty() || entries.len() % 2 != 0 {
            return Err(QuiverError::OddLength { found: entries.len() });
        }
        Ok(DimensionVector { entries })
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn j0(&self) -> usize {
        self.entries.len() / 2
    }

    /// `dim V_j` (0-based `j`).
    pub fn source(&self, j: usize) -> usize {
        self.entries[2 * j] as usize
    }

    /// `dim W_j` (0-based `j`).
    pub fn sink(&self, j: usize) -> usize {
        self.entries[2 * j + 1] as usize
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }
}

/// Dimension data of a subrepresentation, bounded entrywise by the
/// dimension vector it was taken from.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubDimVector {
    entries: Vec<u64>,
}

impl SubDimVector {
    pub fn new(entries: Vec<u64>, within: &DimensionVector) -> Result<Self, QuiverError> {
        if entries.len() != within.entries.len() {
            return Err(QuiverError::LengthMismatch { expected: within.entries.len(), found: entries.len() });
        }
        if let Some((&x, _)) = entries.iter().zip(&within.entries).find(|(x, d)| x > d) {
            return Err(QuiverError::DimensionCapExceeded { cap: within.entries.iter().copied().max().unwrap_or(0) as usize, found: x });
        }
        Ok(SubDimVector { entries })
    }

    /// A sub-dimension vector without a reference bound, e.g. one living on
    /// a subquiver.
    pub fn from_entries(entries: Vec<u64>) -> Self {
        SubDimVector { entries }
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }
}

impl From<&DimensionVector> for SubDimVector {
    fn from(d: &DimensionVector) -> Self {
        SubDimVector { entries: d.entries.clone() }
    }
}

/// Weights `(θ_11, θ_12, …, θ_{j0 1}, θ_{j0 2})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaVector {
    entries: Vec<Rational>,
}

impl ThetaVector {
    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn source_weight(&self, j: usize) -> &Rational {
        &self.entries[2 * j]
    }

    pub fn sink_weight(&self, j: usize) -> &Rational {
        &self.entries[2 * j + 1]
    }
}

/// `d = (P_1(n0), P_1(m0), …, P_{j0}(n0), P_{j0}(m0))`.
pub fn dimension_vector_from_hilbert(e: &SheafClass, n0: i64, m0: i64) -> Result<DimensionVector, QuiverError> {
    if m0 <= n0 {
        return Err(QuiverError::TwistOrder { n0, m0 });
    }
    let at = |x: i64| Rational::from_integer(x.into());
    let mut entries = Vec::with_capacity(2 * e.j0());
    for p in e.hilbert() {
        for x in [n0, m0] {
            let value = p.eval(&at(x));
            let bad = || QuiverError::NotRepresentable { name: e.name().to_string(), value: crate::exact::format_rational(&value) };
            if !value.is_integer() || value.is_negative() {
                return Err(bad());
            }
            entries.push(u64::try_from(value.to_integer()).map_err(|_| bad())?);
        }
    }
    DimensionVector::new(entries)
}

/// `θ_{j1} = σ_j / Σ_i σ_i d_{i1}` and `θ_{j2} = −σ_j / Σ_i σ_i d_{i2}`.
pub fn theta_from_sigma(sigma: &StabilityParameter, d: &DimensionVector) -> Result<ThetaVector, QuiverError> {
    if sigma.len() != d.j0() {
        return Err(QuiverError::LengthMismatch { expected: 2 * sigma.len(), found: d.entries.len() });
    }
    let weighted = |offset: usize| -> Rational {
        sigma
            .entries()
            .iter()
            .enumerate()
            .map(|(i, s)| s * Rational::from_integer(d.entries[2 * i + offset].into()))
            .sum()
    };
    let s1 = weighted(0);
    let s2 = weighted(1);
    if s1.is_zero() {
        return Err(QuiverError::DegenerateDenominator { which: "source" });
    }
    if s2.is_zero() {
        return Err(QuiverError::DegenerateDenominator { which: "sink" });
    }
    let mut entries = Vec::with_capacity(d.entries.len());
    for s in sigma.entries() {
        entries.push(s / &s1);
        entries.push(-(s / &s2));
    }
    Ok(ThetaVector { entries })
}

/// `θ(M′) = Σ_j θ_{j1} dim V′_j + Σ_j θ_{j2} dim W′_j`. Panics if the
/// lengths differ.
pub fn theta_pairing(theta: &ThetaVector, sub: &SubDimVector) -> Rational {
    assert_eq!(theta.entries.len(), sub.entries.len(), "theta and sub-dimension vector lengths differ");
    theta
        .entries
        .iter()
        .zip(&sub.entries)
        .filter(|(_, &x)| x != 0)
        .map(|(t, &x)| t * Rational::from_integer(x.into()))
        .sum()
}

/// Pads a sub-dimension vector of the subquiver on the first rows with zero
/// spaces up to `j0` rows.
pub fn extend_by_zero(sub: &SubDimVector, j0: usize) -> SubDimVector {
    let mut entries = sub.entries.clone();
    entries.resize(2 * j0.max(sub.entries.len() / 2), 0);
    SubDimVector { entries }
}

/// Ground field of a representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldKind {
    Rationals,
    FiniteField(u32),
}

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has the wrong length");
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    /// Builds a matrix from its rows; all rows must have `cols` entries.
    pub fn from_rows(rows: Vec<Vec<Rational>>, cols: usize) -> Option<Self> {
        if rows.iter().any(|r| r.len() != cols) {
            return None;
        }
        let n = rows.len();
        Some(Matrix { rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Rational) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }
}

/// A representation: spaces of the given dimensions and, for each arrow,
/// the map `φ_ij : V_i ⊗ H_ij → W_j` as a `d_{j2} × (d_{i1}·h_ij)` matrix.
/// Column `a·h_ij + k` is the image of `e_a ⊗ h_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    quiver: LabelledQuiver,
    dims: DimensionVector,
    field: FieldKind,
    maps: Vec<Vec<Matrix>>,
}

impl Representation {
    /// `maps[i][j]` is `φ_ij`. Over `F_q` the entries must be integers in
    /// `0..q`.
    pub fn new(quiver: LabelledQuiver, dims: DimensionVector, field: FieldKind, maps: Vec<Vec<Matrix>>) -> Result<Self, QuiverError> {
        let j0 = quiver.j0();
        if dims.j0() != j0 {
            return Err(QuiverError::LengthMismatch { expected: 2 * j0, found: dims.entries.len() });
        }
        if maps.len() != j0 || maps.iter().any(|r| r.len() != j0) {
            return Err(QuiverError::HomDimsShape);
        }
        if let FieldKind::FiniteField(q) = field {
            if !linalg::is_prime(q) {
                return Err(QuiverError::UnsupportedField { q });
            }
        }
        for i in 0..j0 {
            for j in 0..j0 {
                let m = &maps[i][j];
                let (rows, cols) = (dims.sink(j), dims.source(i) * quiver.hom_dim(i, j));
                if m.rows != rows || m.cols != cols {
                    return Err(QuiverError::ShapeMismatch { i, j, rows, cols, found_rows: m.rows, found_cols: m.cols });
                }
                if let FieldKind::FiniteField(q) = field {
                    let modulus = Rational::from_integer(q.into());
                    if let Some(bad) = m.data.iter().find(|x| !x.is_integer() || x.is_negative() || **x >= modulus) {
                        return Err(QuiverError::NotAFieldElement { q, value: crate::exact::format_rational(bad) });
                    }
                }
            }
        }
        Ok(Representation { quiver, dims, field, maps })
    }

    /// The representation with every map zero.
    pub fn zero(quiver: LabelledQuiver, dims: DimensionVector, field: FieldKind) -> Result<Self, QuiverError> {
        let j0 = quiver.j0();
        let maps = (0..j0)
            .map(|i| (0..j0).map(|j| Matrix::zeros(dims.sink(j), dims.source(i) * quiver.hom_dim(i, j))).collect())
            .collect();
        Representation::new(quiver, dims, field, maps)
    }

    pub fn quiver(&self) -> &LabelledQuiver {
        &self.quiver
    }

    pub fn dims(&self) -> &DimensionVector {
        &self.dims
    }

    pub fn field(&self) -> FieldKind {
        self.field
    }

    pub fn map(&self, i: usize, j: usize) -> &Matrix {
        &self.maps[i][j]
    }

    pub fn maps(&self) -> &[Vec<Matrix>] {
        &self.maps
    }
}

/// Keeps the spaces and maps of the first `j_prime` rows.
pub fn truncate_rep(rep: &Representation, j_prime: usize) -> Result<Representation, QuiverError> {
    let j0 = rep.quiver.j0();
    if j_prime == 0 || j_prime > j0 {
        return Err(QuiverError::RangeError { j_prime, j0 });
    }
    let dims = DimensionVector::new(rep.dims.entries[..2 * j_prime].to_vec())?;
    let maps = rep.maps[..j_prime].iter().map(|r| r[..j_prime].to_vec()).collect();
    Representation::new(rep.quiver.truncated(j_prime), dims, rep.field, maps)
}

/// Dimension vector of the smallest subrepresentation whose source spaces
/// contain the given ones; `sources[i]` lists basis vectors of `V′_i` as
/// rows.
pub fn generated_subrep(rep: &Representation, sources: &[Matrix]) -> Result<SubDimVector, QuiverError> {
    let j0 = rep.quiver.j0();
    if sources.len() != j0 {
        return Err(QuiverError::SourceCount { expected: j0, found: sources.len() });
    }
    for (index, s) in sources.iter().enumerate() {
        if s.rows > 0 && s.cols != rep.dims.source(index) {
            return Err(QuiverError::SourceShape { index, ambient: rep.dims.source(index) as u64 });
        }
    }
    let entries = match rep.field {
        FieldKind::Rationals => linalg::closure_dims(&RationalField, rep, sources),
        FieldKind::FiniteField(q) => linalg::closure_dims(&PrimeField::new(q), rep, sources),
    };
    Ok(SubDimVector { entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};
    use crate::exact::{Polynomial, Var};

    fn sigma(v: &[i64]) -> StabilityParameter {
        StabilityParameter::new(v.iter().map(|&x| int(x)).collect()).unwrap()
    }

    fn dv(v: &[u64]) -> DimensionVector {
        DimensionVector::new(v.to_vec()).unwrap()
    }

    fn sub(v: &[u64]) -> SubDimVector {
        SubDimVector::from_entries(v.to_vec())
    }

    #[test]
    fn dimension_vectors_from_hilbert() {
        let e = SheafClass::new("E", 1, int(2), vec![Polynomial::from_ints(&[1, 2], Var::M)]).unwrap();
        assert_eq!(dimension_vector_from_hilbert(&e, 1, 3).unwrap(), dv(&[3, 7]));
        let e = SheafClass::new(
            "E",
            1,
            int(2),
            vec![Polynomial::from_ints(&[1, 2], Var::M), Polynomial::from_ints(&[3, 2], Var::M)],
        )
        .unwrap();
        assert_eq!(dimension_vector_from_hilbert(&e, 1, 3).unwrap(), dv(&[3, 7, 5, 9]));
        let e = SheafClass::new("E", 1, int(1), vec![Polynomial::from_ints(&[-5, 1], Var::M)]).unwrap();
        assert!(matches!(dimension_vector_from_hilbert(&e, 1, 3), Err(QuiverError::NotRepresentable { .. })));
        let e = SheafClass::new("E", 1, int(1), vec![Polynomial::new(vec![int(0), rat(1, 2)], Var::M)]).unwrap();
        assert!(matches!(dimension_vector_from_hilbert(&e, 1, 3), Err(QuiverError::NotRepresentable { .. })));
        assert!(matches!(dimension_vector_from_hilbert(&e, 3, 3), Err(QuiverError::TwistOrder { .. })));
    }

    #[test]
    fn theta_examples() {
        let d = dv(&[1, 2, 1, 2]);
        let t = theta_from_sigma(&sigma(&[1, 1]), &d).unwrap();
        assert_eq!(t.entries(), &[rat(1, 2), rat(-1, 4), rat(1, 2), rat(-1, 4)]);
        let t = theta_from_sigma(&sigma(&[1, 0]), &d).unwrap();
        assert_eq!(t.entries(), &[int(1), rat(-1, 2), int(0), int(0)]);
        assert_eq!(theta_pairing(&t, &(&d).into()), int(0));
        assert_eq!(theta_pairing(&t, &sub(&[0, 1, 0, 0])), rat(-1, 2));
        assert_eq!(theta_pairing(&t, &sub(&[0, 0, 0, 0])), int(0));
        assert_eq!(
            theta_from_sigma(&sigma(&[0, 1]), &dv(&[1, 2, 0, 2])),
            Err(QuiverError::DegenerateDenominator { which: "source" })
        );
    }

    #[test]
    fn extension_by_zero_examples() {
        assert_eq!(extend_by_zero(&sub(&[1, 1]), 2), sub(&[1, 1, 0, 0]));
        assert_eq!(extend_by_zero(&sub(&[1, 1]), 1), sub(&[1, 1]));
        let s = sigma(&[1, 0]);
        let full = theta_from_sigma(&s, &dv(&[1, 2, 1, 2])).unwrap();
        let trunc = theta_from_sigma(&s.truncated(1).unwrap(), &dv(&[1, 2])).unwrap();
        assert_eq!(theta_pairing(&trunc, &sub(&[1, 1])), rat(1, 2));
        assert_eq!(theta_pairing(&full, &extend_by_zero(&sub(&[1, 1]), 2)), rat(1, 2));
    }

    fn kronecker(lambda: i64, q: u32) -> Representation {
        let quiver = LabelledQuiver::new(vec![vec![1]]).unwrap();
        Representation::new(quiver, dv(&[1, 1]), FieldKind::FiniteField(q), vec![vec![Matrix::new(1, 1, vec![int(lambda)])]]).unwrap()
    }

    #[test]
    fn generated_closure_in_kronecker_case() {
        let full = vec![Matrix::identity(1)];
        let none = vec![Matrix::zeros(0, 1)];
        assert_eq!(generated_subrep(&kronecker(1, 2), &full).unwrap(), sub(&[1, 1]));
        assert_eq!(generated_subrep(&kronecker(0, 2), &full).unwrap(), sub(&[1, 0]));
        assert_eq!(generated_subrep(&kronecker(1, 2), &none).unwrap(), sub(&[0, 0]));
    }

    #[test]
    fn representation_validation() {
        let quiver = LabelledQuiver::new(vec![vec![2]]).unwrap();
        let bad = Representation::new(quiver.clone(), dv(&[1, 1]), FieldKind::FiniteField(2), vec![vec![Matrix::zeros(1, 1)]]);
        assert!(matches!(bad, Err(QuiverError::ShapeMismatch { .. })));
        let bad = Representation::new(quiver.clone(), dv(&[1, 1]), FieldKind::FiniteField(2), vec![vec![Matrix::new(1, 2, vec![int(2), int(0)])]]);
        assert!(matches!(bad, Err(QuiverError::NotAFieldElement { .. })));
        let bad = Representation::new(quiver, dv(&[1, 1]), FieldKind::FiniteField(4), vec![vec![Matrix::zeros(1, 2)]]);
        assert!(matches!(bad, Err(QuiverError::UnsupportedField { q: 4 })));
    }

    #[test]
    fn truncation_keeps_top_block() {
        let quiver = LabelledQuiver::new(vec![vec![1, 1], vec![1, 1]]).unwrap();
        let d = dv(&[1, 2, 2, 1]);
        let rep = Representation::zero(quiver, d, FieldKind::FiniteField(2)).unwrap();
        let t = truncate_rep(&rep, 1).unwrap();
        assert_eq!(t.dims(), &dv(&[1, 2]));
        assert_eq!(t.quiver().j0(), 1);
        assert_eq!(t.map(0, 0).rows(), 2);
        assert_eq!(truncate_rep(&rep, 2).unwrap(), rep);
        assert!(matches!(truncate_rep(&rep, 0), Err(QuiverError::RangeError { .. })));
        assert!(matches!(truncate_rep(&rep, 3), Err(QuiverError::RangeError { .. })));
    }
}
