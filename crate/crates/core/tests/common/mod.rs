//! Test-side oracles and generators, written independently of the library's
//! comparison and search code.
#![allow(dead_code)]

use mgstab::exact::{Polynomial, Rational, Var};
use mgstab::quiver::{DimensionVector, FieldKind, LabelledQuiver, Matrix, Representation};
use mgstab::sheaf::SheafClass;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;

pub fn r(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn factorial(n: usize) -> Rational {
    (1..=n).fold(Rational::one(), |acc, k| acc * r(k as i64))
}

/// `Σ_j σ_j P_j` as an ascending coefficient vector of length `d + 1`.
pub fn weighted(hilbert: &[Vec<Rational>], sigma: &[Rational], d: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); d + 1];
    for (p, s) in hilbert.iter().zip(sigma) {
        for (k, c) in p.iter().enumerate() {
            out[k] += s * c;
        }
    }
    out
}

/// Sign of `p_F − p_E` for large `m`, by cross-multiplying with the leading
/// α-coefficients: `r_E·P_F − r_F·P_E`.
pub fn cross_compare(pf: &[Rational], pe: &[Rational], d: usize) -> std::cmp::Ordering {
    let rf = &pf[d] * factorial(d);
    let re = &pe[d] * factorial(d);
    for k in (0..=d).rev() {
        let c = &re * &pf[k] - &rf * &pe[k];
        if c.is_positive() {
            return std::cmp::Ordering::Greater;
        }
        if c.is_negative() {
            return std::cmp::Ordering::Less;
        }
    }
    std::cmp::Ordering::Equal
}

/// `(status, witnesses)` in the library's tag vocabulary.
pub fn oracle_verdict(
    e: &[Vec<Rational>],
    cands: &[(String, Vec<Vec<Rational>>)],
    sigma: &[Rational],
    d: usize,
) -> (String, Vec<String>) {
    let pe = weighted(e, sigma, d);
    let mut greater = Vec::new();
    let mut equal = Vec::new();
    for (name, h) in cands {
        match cross_compare(&weighted(h, sigma, d), &pe, d) {
            std::cmp::Ordering::Greater => greater.push(name.clone()),
            std::cmp::Ordering::Equal => equal.push(name.clone()),
            std::cmp::Ordering::Less => {}
        }
    }
    greater.sort();
    equal.sort();
    if !greater.is_empty() {
        ("unstable".into(), greater)
    } else if !equal.is_empty() {
        ("strictly-semistable".into(), equal)
    } else {
        ("stable".into(), vec![])
    }
}

/// Coefficients of a random polynomial of degree exactly `d` with positive
/// top coefficient.
pub fn random_hilbert<R: Rng>(rng: &mut R, d: usize, bound: i64) -> Vec<Rational> {
    let mut c: Vec<Rational> = (0..d).map(|_| r(rng.gen_range(-bound..=bound))).collect();
    c.push(r(rng.gen_range(1..=bound.max(1))));
    c
}

pub fn class(name: &str, d: usize, rank: Rational, hilbert: &[Vec<Rational>]) -> SheafClass {
    SheafClass::new(name, d, rank, hilbert.iter().map(|c| Polynomial::new(c.clone(), Var::M)).collect()).unwrap()
}

pub fn as_rationals(v: &BigInt) -> Rational {
    Rational::from_integer(v.clone())
}

// ---- exhaustive quiver instances over F_2 ----

/// One instance of the exhaustive family: hom dims, dimension vector, and
/// the bit pattern of all map entries.
#[derive(Debug, Clone)]
pub struct Instance {
    pub j0: usize,
    pub hom: Vec<Vec<u64>>,
    pub dims: Vec<u64>,
    pub bits: u64,
}

fn map_shapes(j0: usize, hom: &[Vec<u64>], dims: &[u64]) -> Vec<(usize, usize, usize, usize)> {
    let mut shapes = Vec::new();
    for i in 0..j0 {
        for j in 0..j0 {
            let rows = dims[2 * j + 1] as usize;
            let cols = (dims[2 * i] * hom[i][j]) as usize;
            shapes.push((i, j, rows, cols));
        }
    }
    shapes
}

pub fn entry_count(inst_j0: usize, hom: &[Vec<u64>], dims: &[u64]) -> usize {
    map_shapes(inst_j0, hom, dims).iter().map(|s| s.2 * s.3).sum()
}

/// All (hom, dims) shapes with `hom ≤ 1` and every dimension `≤ max_dim`,
/// excluding the zero dimension vector.
pub fn shapes(j0: usize, max_dim: u64) -> Vec<(Vec<Vec<u64>>, Vec<u64>)> {
    let mut out = Vec::new();
    for hmask in 0..(1u32 << (j0 * j0)) {
        let hom: Vec<Vec<u64>> = (0..j0).map(|i| (0..j0).map(|j| ((hmask >> (i * j0 + j)) & 1) as u64).collect()).collect();
        let n = 2 * j0;
        let base = max_dim + 1;
        for code in 0..base.pow(n as u32) {
            let dims: Vec<u64> = (0..n).map(|k| (code / base.pow(k as u32)) % base).collect();
            if dims.iter().all(|&x| x == 0) {
                continue;
            }
            out.push((hom.clone(), dims));
        }
    }
    out
}

/// Matrices as bitmask columns: `cols[i][j][a]` is column `a` of `φ_ij`
/// (all `h_ij ≤ 1`, so column `a` is the image of `e_a`).
pub fn columns(inst: &Instance) -> Vec<Vec<Vec<u8>>> {
    let mut bit = 0;
    let mut cols = vec![vec![Vec::new(); inst.j0]; inst.j0];
    for (i, j, rows, ncols) in map_shapes(inst.j0, &inst.hom, &inst.dims) {
        let mut m = vec![0u8; ncols];
        for row in 0..rows {
            for (c, col) in m.iter_mut().enumerate() {
                if (inst.bits >> bit) & 1 == 1 {
                    *col |= 1 << row;
                }
                let _ = c;
                bit += 1;
            }
        }
        cols[i][j] = m;
    }
    cols
}

pub fn representation(inst: &Instance) -> Representation {
    let quiver = LabelledQuiver::new(inst.hom.clone()).unwrap();
    let dims = DimensionVector::new(inst.dims.clone()).unwrap();
    let mut bit = 0;
    let mut maps = vec![Vec::new(); inst.j0];
    for (i, _j, rows, cols) in map_shapes(inst.j0, &inst.hom, &inst.dims) {
        let mut data = Vec::with_capacity(rows * cols);
        for _ in 0..rows * cols {
            data.push(r(((inst.bits >> bit) & 1) as i64));
            bit += 1;
        }
        maps[i].push(Matrix::new(rows, cols, data));
    }
    Representation::new(quiver, dims, FieldKind::FiniteField(2), maps).unwrap()
}

/// Subspaces of `F_2^n` (n ≤ 3) as membership masks over the `2^n`
/// vectors, found as XOR-closed subsets containing zero.
pub fn f2_subspaces(n: usize) -> Vec<(u32, u64)> {
    let size = 1usize << n;
    let mut out = Vec::new();
    for set in 0u32..(1u32 << size) {
        if set & 1 == 0 {
            continue;
        }
        let members: Vec<usize> = (0..size).filter(|v| (set >> v) & 1 == 1).collect();
        let closed = members.iter().all(|&a| members.iter().all(|&b| (set >> (a ^ b)) & 1 == 1));
        if closed {
            out.push((set, members.len().trailing_zeros() as u64));
        }
    }
    out
}

fn image(cols: &[u8], v: usize) -> usize {
    cols.iter().enumerate().filter(|(a, _)| (v >> a) & 1 == 1).fold(0usize, |acc, (_, &c)| acc ^ c as usize)
}

/// Outcome of enumerating every subrepresentation.
pub struct BruteForce {
    /// Largest scaled θ over non-trivial proper subrepresentations.
    pub max_theta: Option<i64>,
    /// Dimension vectors of subrepresentations with positive θ.
    pub positive: Vec<Vec<u64>>,
    /// Whether, for every source tuple, the minimal sinks give the largest θ.
    pub closure_maximal: bool,
    pub proper_zero_exists: bool,
}

/// Enumerates all subspace tuples at all vertices, keeps those satisfying
/// `φ_ij(V′_i) ⊆ W′_j`, and evaluates `θ` scaled to integers by `weights`
/// (source weight, sink weight) per row.
pub fn brute_force(inst: &Instance, weights: &[(i64, i64)]) -> BruteForce {
    let j0 = inst.j0;
    let cols = columns(inst);
    let spaces: Vec<Vec<(u32, u64)>> = inst.dims.iter().map(|&n| f2_subspaces(n as usize)).collect();
    let total: u64 = inst.dims.iter().sum();
    let mut result = BruteForce { max_theta: None, positive: Vec::new(), closure_maximal: true, proper_zero_exists: false };
    let nv = 2 * j0;
    let mut counter = vec![0usize; nv];
    // per source tuple: (best θ, θ at minimal sinks, minimal sink size)
    let mut per_source: std::collections::HashMap<Vec<usize>, (i64, i64, u64)> = std::collections::HashMap::new();
    loop {
        let chosen: Vec<(u32, u64)> = (0..nv).map(|k| spaces[k][counter[k]]).collect();
        let mut ok = true;
        'check: for i in 0..j0 {
            let vset = chosen[2 * i].0;
            for j in 0..j0 {
                if inst.hom[i][j] == 0 {
                    continue;
                }
                let wset = chosen[2 * j + 1].0;
                for v in 0..(1usize << inst.dims[2 * i]) {
                    if (vset >> v) & 1 == 1 && (wset >> image(&cols[i][j], v)) & 1 == 0 {
                        ok = false;
                        break 'check;
                    }
                }
            }
        }
        if ok {
            let dims: Vec<u64> = chosen.iter().map(|c| c.1).collect();
            let theta: i64 = (0..j0).map(|j| weights[j].0 * dims[2 * j] as i64 + weights[j].1 * dims[2 * j + 1] as i64).sum();
            let size: u64 = dims.iter().sum();
            if size > 0 && size < total {
                result.max_theta = Some(result.max_theta.map_or(theta, |m| m.max(theta)));
                if theta > 0 {
                    result.positive.push(dims.clone());
                }
                if theta == 0 {
                    result.proper_zero_exists = true;
                }
            }
            let key: Vec<usize> = (0..j0).map(|i| counter[2 * i]).collect();
            let sink_size: u64 = (0..j0).map(|j| dims[2 * j + 1]).sum();
            let entry = per_source.entry(key).or_insert((theta, theta, sink_size));
            entry.0 = entry.0.max(theta);
            if sink_size < entry.2 {
                entry.1 = theta;
                entry.2 = sink_size;
            }
        }
        let mut k = nv;
        loop {
            if k == 0 {
                for (best, at_min, _) in per_source.values() {
                    if at_min != best {
                        result.closure_maximal = false;
                    }
                }
                return result;
            }
            k -= 1;
            counter[k] += 1;
            if counter[k] < spaces[k].len() {
                break;
            }
            counter[k] = 0;
        }
    }
}

/// Integer weights proportional to θ: row `j` gets `(σ_j·S2, −σ_j·S1)` with
/// `S1 = Σ σ_i d_i1`, `S2 = Σ σ_i d_i2`; `None` when a denominator vanishes.
pub fn scaled_weights(sigma: &[i64], dims: &[u64]) -> Option<Vec<(i64, i64)>> {
    let s1: i64 = sigma.iter().enumerate().map(|(i, s)| s * dims[2 * i] as i64).sum();
    let s2: i64 = sigma.iter().enumerate().map(|(i, s)| s * dims[2 * i + 1] as i64).sum();
    if s1 == 0 || s2 == 0 {
        return None;
    }
    Some(sigma.iter().map(|&s| (s * s2, -s * s1)).collect())
}

/// Runs `f` over `items` on all available cores and collects the results in
/// order.
pub fn parallel_map<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> U + Sync) -> Vec<U> {
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get()).min(items.len().max(1));
    let next = std::sync::atomic::AtomicUsize::new(0);
    let mut slots: Vec<Option<U>> = (0..items.len()).map(|_| None).collect();
    let results = std::sync::Mutex::new(Vec::new());
    std::thread::scope(|s| {
        for _ in 0..threads {
            s.spawn(|| {
                let mut local = Vec::new();
                loop {
                    let k = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                    if k >= items.len() {
                        break;
                    }
                    local.push((k, f(&items[k])));
                }
                results.lock().unwrap().extend(local);
            });
        }
    });
    for (k, u) in results.into_inner().unwrap() {
        slots[k] = Some(u);
    }
    slots.into_iter().map(|u| u.expect("every item processed")).collect()
}
