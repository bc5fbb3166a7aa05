//! Row reduction over `F_q` and over the rationals.

use num_traits::{One, Zero};

use super::Representation;
use crate::exact::Rational;

pub(crate) trait Field {
    type E: Clone;
    fn zero(&self) -> Self::E;
    fn is_zero(&self, x: &Self::E) -> bool;
    fn from_rational(&self, x: &Rational) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
}

pub(crate) fn is_prime(q: u32) -> bool {
    q >= 2 && (2..q).take_while(|p| p * p <= q).all(|p| q % p != 0)
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct PrimeField {
    q: u32,
}

impl PrimeField {
    pub(crate) fn new(q: u32) -> Self {
        debug_assert!(is_prime(q));
        PrimeField { q }
    }
}

impl Field for PrimeField {
    type E = u32;
    fn zero(&self) -> u32 {
        0
    }
    fn is_zero(&self, x: &u32) -> bool {
        *x == 0
    }
    fn from_rational(&self, x: &Rational) -> u32 {
        let q = num_bigint::BigInt::from(self.q);
        let n = ((x.numer() % &q) + &q) % &q;
        let d = ((x.denom() % &q) + &q) % &q;
        let n = u32::try_from(n).expect("reduced mod q");
        let d = u32::try_from(d).expect("reduced mod q");
        self.mul(&n, &self.inv(&d))
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        (a + b) % self.q
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.q as u64) as u32
    }
    fn neg(&self, a: &u32) -> u32 {
        (self.q - a) % self.q
    }
    fn inv(&self, a: &u32) -> u32 {
        assert!(*a != 0, "division by zero in F_q");
        // a^(q-2)
        let mut result = 1u64;
        let mut base = *a as u64;
        let mut e = self.q - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = result * base % self.q as u64;
            }
            base = base * base % self.q as u64;
            e >>= 1;
        }
        result as u32
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct RationalField;

impl Field for RationalField {
    type E = Rational;
    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn is_zero(&self, x: &Rational) -> bool {
        x.is_zero()
    }
    fn from_rational(&self, x: &Rational) -> Rational {
        x.clone()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn inv(&self, a: &Rational) -> Rational {
        Rational::one() / a
    }
}

/// Rank of the span of `rows` (consumed by elimination).
pub(crate) fn rank<F: Field>(f: &F, mut rows: Vec<Vec<F::E>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !f.is_zero(&rows[r][c])) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = f.inv(&rows[rank][c]);
        let pivot: Vec<F::E> = rows[rank].iter().map(|x| f.mul(x, &inv)).collect();
        for row in rows.iter_mut().skip(rank + 1) {
            if f.is_zero(&row[c]) {
                continue;
            }
            let factor = f.neg(&row[c]);
            for (x, p) in row.iter_mut().zip(&pivot) {
                *x = f.add(x, &f.mul(&factor, p));
            }
        }
        rows[rank] = pivot;
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Image of `v ⊗ h_k` under `φ_ij`, with `map` given in field elements.
pub(crate) fn apply<F: Field>(f: &F, map: &[Vec<F::E>], h: usize, v: &[F::E], k: usize) -> Vec<F::E> {
    map.iter()
        .map(|row| {
            v.iter()
                .enumerate()
                .filter(|(_, x)| !f.is_zero(x))
                .fold(f.zero(), |acc, (a, x)| f.add(&acc, &f.mul(x, &row[a * h + k])))
        })
        .collect()
}

/// `maps[i][j]` as rows of field elements.
pub(crate) fn convert_maps<F: Field>(f: &F, rep: &Representation) -> Vec<Vec<Vec<Vec<F::E>>>> {
    rep.maps()
        .iter()
        .map(|row| {
            row.iter()
                .map(|m| (0..m.rows()).map(|r| m.row(r).iter().map(|x| f.from_rational(x)).collect()).collect())
                .collect()
        })
        .collect()
}

/// Dimensions of `V′_i` and of `W′_j = Σ_i φ_ij(V′_i ⊗ H_ij)`.
pub(crate) fn closure_from_bases<F: Field>(
    f: &F,
    rep: &Representation,
    maps: &[Vec<Vec<Vec<F::E>>>],
    sources: &[&[Vec<F::E>]],
    out: &mut Vec<u64>,
) {
    let j0 = rep.quiver().j0();
    out.clear();
    let mut source_dims = Vec::with_capacity(j0);
    for s in sources {
        source_dims.push(rank(f, s.to_vec()) as u64);
    }
    for j in 0..j0 {
        let mut images = Vec::new();
        for (i, basis) in sources.iter().enumerate() {
            let h = rep.quiver().hom_dim(i, j);
            for v in basis.iter() {
                for k in 0..h {
                    images.push(apply(f, &maps[i][j], h, v, k));
                }
            }
        }
        out.push(source_dims[j]);
        out.push(if images.is_empty() || rep.dims().sink(j) == 0 { 0 } else { rank(f, images) as u64 });
    }
}

pub(crate) fn closure_dims<F: Field>(f: &F, rep: &Representation, sources: &[super::Matrix]) -> Vec<u64> {
    let maps = convert_maps(f, rep);
    let bases: Vec<Vec<Vec<F::E>>> = sources
        .iter()
        .map(|m| (0..m.rows()).map(|r| m.row(r).iter().map(|x| f.from_rational(x)).collect()).collect())
        .collect();
    let refs: Vec<&[Vec<F::E>]> = bases.iter().map(Vec::as_slice).collect();
    let mut out = Vec::new();
    closure_from_bases(f, rep, &maps, &refs, &mut out);
    out
}
