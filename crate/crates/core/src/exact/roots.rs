//! Real-root isolation with Sturm sequences and rational bisection.
//!
//! Intervals returned here are closed, pairwise disjoint, and contain exactly
//! one distinct real root of the polynomial they carry. Rational roots are
//! always reported exactly with a degenerate interval `[r, r]`.

use num_bigint::BigInt;
use num_traits::One;

use super::poly::{Degree, Polynomial, Var};
use super::rational::{midpoint, Rational, Sign};
use super::ExactError;

/// One isolated real root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsolatedRoot {
    /// Polynomial having this root; exactly one of its distinct real roots
    /// lies in `[lo, hi]`.
    pub poly: Polynomial,
    pub lo: Rational,
    pub hi: Rational,
    /// Present iff the root is rational; then `lo == hi == exact`.
    pub exact: Option<Rational>,
    /// The root is simple for the polynomial it was isolated from.
    pub multiplicity_free: bool,
}

impl IsolatedRoot {
    fn exact(poly: Polynomial, r: Rational) -> Self {
        IsolatedRoot { poly, lo: r.clone(), hi: r.clone(), exact: Some(r), multiplicity_free: true }
    }

    pub fn is_rational(&self) -> bool {
        self.exact.is_some()
    }

    /// Whether `x` lies in the closed isolating interval.
    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    /// A representative rational inside the interval (the root itself when
    /// rational).
    pub fn representative(&self) -> Rational {
        self.exact.clone().unwrap_or_else(|| midpoint(&self.lo, &self.hi))
    }

    /// Halves the interval once, keeping the root inside.
    pub fn bisect(&mut self) {
        if self.exact.is_some() {
            return;
        }
        let g = self.poly.square_free();
        let mid = midpoint(&self.lo, &self.hi);
        let s_mid = g.eval_sign(&mid);
        if s_mid == Sign::Zero {
            // only possible for a rational root of a reducible carrier
            *self = IsolatedRoot { multiplicity_free: self.multiplicity_free, ..IsolatedRoot::exact(self.poly.clone(), mid) };
            return;
        }
        if g.eval_sign(&self.lo) == s_mid {
            self.lo = mid;
        } else {
            self.hi = mid;
        }
    }

    /// Exact order of the root against `x`, refining a private copy of the
    /// interval when `x` falls inside it.
    pub fn cmp_rational(&self, x: &Rational) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        if let Some(r) = &self.exact {
            return r.cmp(x);
        }
        let mut probe = self.clone();
        loop {
            if let Some(r) = &probe.exact {
                return r.cmp(x);
            }
            if x < &probe.lo {
                return Ordering::Greater;
            }
            if x > &probe.hi {
                return Ordering::Less;
            }
            if x == &probe.lo {
                // endpoints of an irrational interval are never roots
                return Ordering::Greater;
            }
            if x == &probe.hi {
                return Ordering::Less;
            }
            probe.bisect();
        }
    }

    /// Refines until the interval is no wider than `width`.
    pub fn refine_to(&mut self, width: &Rational) {
        while self.exact.is_none() && &self.width() > width {
            self.bisect();
        }
    }
}

/// Sturm chain of a square-free polynomial.
struct SturmChain {
    chain: Vec<Polynomial>,
}

impl SturmChain {
    fn new(g: &Polynomial) -> Self {
        let mut chain = vec![g.clone()];
        let d = g.derivative();
        if !d.is_zero() {
            chain.push(d);
            loop {
                let n = chain.len();
                let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
                if r.is_zero() {
                    break;
                }
                chain.push(-&r);
            }
        }
        SturmChain { chain }
    }

    fn variations(&self, x: &Rational) -> usize {
        let mut count = 0;
        let mut last = Sign::Zero;
        for p in &self.chain {
            let s = p.eval_sign(x);
            if s == Sign::Zero {
                continue;
            }
            if last != Sign::Zero && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Distinct roots in the open interval `(a, b)`. For square-free input
    /// the variation count is right-continuous, so `V(a) - V(b)` counts
    /// `(a, b]`.
    fn count_open(&self, a: &Rational, b: &Rational) -> usize {
        let half_open = self.variations(a) - self.variations(b);
        if self.chain[0].eval_sign(b) == Sign::Zero {
            half_open - 1
        } else {
            half_open
        }
    }
}

/// Number of distinct real roots of `f` in the open interval `(a, b)`.
pub fn count_roots_open(f: &Polynomial, a: &Rational, b: &Rational) -> usize {
    if f.is_zero() || f.is_constant() || a >= b {
        return 0;
    }
    SturmChain::new(&f.square_free()).count_open(a, b)
}

/// Exact sign of `f(at)`.
pub fn eval_sign(f: &Polynomial, at: &Rational) -> Sign {
    f.eval_sign(at)
}

/// Isolates every distinct real root of `f` in `[lo, hi]`.
pub fn sturm_isolate(f: &Polynomial, lo: &Rational, hi: &Rational) -> Result<Vec<IsolatedRoot>, ExactError> {
    if f.is_zero() {
        return Err(ExactError::IdenticallyZero);
    }
    if lo >= hi {
        return Err(ExactError::EmptyInterval);
    }
    let g = f.square_free();
    let mut roots = isolate_square_free(&g, lo, hi);
    separate(&mut roots);
    let repeated = f.gcd(&f.derivative());
    for r in &mut roots {
        r.poly = f.clone();
        r.multiplicity_free = !vanishes_at(&repeated, r);
    }
    Ok(roots)
}

fn isolate_square_free(g: &Polynomial, lo: &Rational, hi: &Rational) -> Vec<IsolatedRoot> {
    let mut found = Vec::new();
    if g.degree() <= Degree::Finite(0) {
        return found;
    }
    let sturm = SturmChain::new(g);
    let ints = g.primitive_integer();
    let lead = Rational::from_integer(ints.last().cloned().unwrap_or_else(BigInt::one));
    let is_root = |x: &Rational| g.eval_sign(x) == Sign::Zero;

    for end in [lo, hi] {
        if is_root(end) {
            found.push(IsolatedRoot::exact(g.clone(), end.clone()));
        }
    }
    let mut stack = vec![(lo.clone(), hi.clone())];
    while let Some((a, b)) = stack.pop() {
        let count = sturm.count_open(&a, &b);
        if count == 0 {
            continue;
        }
        if count == 1 && !is_root(&a) && !is_root(&b) {
            found.push(settle_simple_root(g, &lead, a, b));
            continue;
        }
        let mid = midpoint(&a, &b);
        if is_root(&mid) {
            found.push(IsolatedRoot::exact(g.clone(), mid.clone()));
        }
        stack.push((a, mid.clone()));
        stack.push((mid, b));
    }
    found.sort_by(|x, y| x.lo.cmp(&y.lo));
    found
}

/// `(a, b)` holds exactly one root and neither endpoint is a root. A rational
/// root `p/q` of the primitive integer form has `q | lead`, so once the
/// interval is narrower than `1/lead` at most one candidate `k/lead` remains.
fn settle_simple_root(g: &Polynomial, lead: &Rational, mut a: Rational, mut b: Rational) -> IsolatedRoot {
    let s_a = g.eval_sign(&a);
    while (&b - &a) * lead >= Rational::one() {
        let mid = midpoint(&a, &b);
        let s = g.eval_sign(&mid);
        if s == Sign::Zero {
            return IsolatedRoot::exact(g.clone(), mid);
        }
        if s == s_a {
            a = mid;
        } else {
            b = mid;
        }
    }
    let k = (&b * lead).floor();
    if k > &a * lead {
        let candidate = k / lead;
        if g.eval_sign(&candidate) == Sign::Zero {
            return IsolatedRoot::exact(g.clone(), candidate);
        }
    }
    IsolatedRoot { poly: g.clone(), lo: a, hi: b, exact: None, multiplicity_free: true }
}

/// Bisects overlapping or touching neighbours until the closed intervals are
/// pairwise disjoint. Roots are distinct, so this terminates.
fn separate(roots: &mut [IsolatedRoot]) {
    loop {
        roots.sort_by(|x, y| x.lo.cmp(&y.lo));
        let mut clean = true;
        for k in 1..roots.len() {
            if roots[k - 1].hi >= roots[k].lo {
                clean = false;
                let (left, right) = roots.split_at_mut(k);
                left[k - 1].bisect();
                right[0].bisect();
            }
        }
        if clean {
            return;
        }
    }
}

/// Whether `h` vanishes at the root isolated by `root`. Requires every root of
/// `h` in the interval to be a root of the carrier (e.g. `h | carrier`).
fn vanishes_at(h: &Polynomial, root: &IsolatedRoot) -> bool {
    if h.is_zero() {
        return true;
    }
    if h.is_constant() {
        return false;
    }
    match &root.exact {
        Some(r) => h.eval_sign(r) == Sign::Zero,
        None => count_roots_open(h, &root.lo, &root.hi) == 1,
    }
}

/// A root shared by a family of polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommonRoot {
    /// `poly` is the lowest-degree monic factor among the vanishing members
    /// (a linear form for rational roots).
    pub root: IsolatedRoot,
    /// Indices into the input family of the polynomials vanishing here.
    pub vanishing: Vec<usize>,
}

/// Isolates the union of the real roots of `polys` in `[lo, hi]` with one
/// disjoint interval per distinct root. Equal roots of different members are
/// identified through gcds, never through interval overlap. Zero members are
/// ignored.
pub fn isolate_common(polys: &[Polynomial], lo: &Rational, hi: &Rational) -> Result<Vec<CommonRoot>, ExactError> {
    if lo >= hi {
        return Err(ExactError::EmptyInterval);
    }
    let members: Vec<(usize, Polynomial)> = polys
        .iter()
        .enumerate()
        .filter(|(_, p)| !p.is_zero())
        .map(|(k, p)| (k, p.square_free()))
        .collect();
    let var = polys.first().map(Polynomial::var).unwrap_or(Var::T);
    let product = members
        .iter()
        .fold(Polynomial::constant(Rational::one(), var), |acc, (_, p)| &acc * p);
    let g = product.square_free();
    let mut roots = isolate_square_free(&g, lo, hi);
    separate(&mut roots);

    let factors: Vec<(usize, Polynomial)> = members.iter().map(|(k, p)| (*k, p.gcd(&g))).collect();
    let mut out = Vec::with_capacity(roots.len());
    for mut root in roots {
        let mut vanishing = Vec::new();
        let mut carrier: Option<&Polynomial> = None;
        for (k, h) in &factors {
            if vanishes_at(h, &root) {
                vanishing.push(*k);
                if carrier.is_none_or(|c| h.degree() < c.degree()) {
                    carrier = Some(h);
                }
            }
        }
        root.poly = match &root.exact {
            Some(r) => Polynomial::linear(-r, Rational::one(), var),
            None => carrier.cloned().unwrap_or_else(|| g.clone()),
        };
        out.push(CommonRoot { root, vanishing });
    }
    Ok(out)
}

/// Sign of `f` just to the right of `x` (`f` not identically zero).
pub fn sign_right_of(f: &Polynomial, x: &Rational) -> Sign {
    let mut g = f.clone();
    loop {
        let s = g.eval_sign(x);
        if s != Sign::Zero {
            return s;
        }
        g = g.derivative();
    }
}

/// Sign of `f` just to the left of `x` (`f` not identically zero).
pub fn sign_left_of(f: &Polynomial, x: &Rational) -> Sign {
    let mut g = f.clone();
    let mut flips = false;
    loop {
        let s = g.eval_sign(x);
        if s != Sign::Zero {
            return if flips { s.negate() } else { s };
        }
        g = g.derivative();
        flips = !flips;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};
    use proptest::prelude::*;

    fn t(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c, Var::T)
    }

    #[test]
    fn isolates_rational_root_of_difference_of_squares() {
        let roots = sturm_isolate(&t(&[-1, 0, 4]), &int(0), &int(1)).unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].exact, Some(rat(1, 2)));
        assert!(roots[0].multiplicity_free);
    }

    #[test]
    fn no_real_roots() {
        assert!(sturm_isolate(&t(&[1, 0, 1]), &int(0), &int(1)).unwrap().is_empty());
    }

    #[test]
    fn endpoint_roots_are_degenerate() {
        let roots = sturm_isolate(&t(&[0, -1, 1]), &int(0), &int(1)).unwrap();
        assert_eq!(roots.len(), 2);
        assert_eq!((roots[0].lo.clone(), roots[0].hi.clone()), (int(0), int(0)));
        assert_eq!((roots[1].lo.clone(), roots[1].hi.clone()), (int(1), int(1)));
    }

    #[test]
    fn zero_polynomial_is_rejected() {
        assert_eq!(sturm_isolate(&Polynomial::zero(Var::T), &int(0), &int(1)), Err(ExactError::IdenticallyZero));
    }

    #[test]
    fn irrational_roots_get_disjoint_intervals() {
        // t^2 - 2 on [-2, 2]
        let roots = sturm_isolate(&t(&[-2, 0, 1]), &int(-2), &int(2)).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots.iter().all(|r| r.exact.is_none()));
        assert!(roots[0].hi < roots[1].lo);
        for r in &roots {
            assert_ne!(eval_sign(&r.poly, &r.lo), eval_sign(&r.poly, &r.hi));
        }
    }

    #[test]
    fn multiple_roots_are_flagged() {
        // (2t - 1)^2 (t - 3/4)... scaled: (2t-1)^2 (4t-3)
        let f = &(&t(&[-1, 2]) * &t(&[-1, 2])) * &t(&[-3, 4]);
        let roots = sturm_isolate(&f, &int(0), &int(1)).unwrap();
        assert_eq!(roots.len(), 2);
        assert_eq!(roots[0].exact, Some(rat(1, 2)));
        assert!(!roots[0].multiplicity_free);
        assert_eq!(roots[1].exact, Some(rat(3, 4)));
        assert!(roots[1].multiplicity_free);
    }

    #[test]
    fn common_roots_identify_shared_irrational_root() {
        // t^2 - 1/2 and 2t^2 - 1 share their roots; 4t - 1 does not
        let a = Polynomial::new(vec![rat(-1, 2), int(0), int(1)], Var::T);
        let b = t(&[-1, 0, 2]);
        let c = t(&[-1, 4]);
        let roots = isolate_common(&[a, b, c, Polynomial::zero(Var::T)], &int(0), &int(1)).unwrap();
        assert_eq!(roots.len(), 2);
        assert_eq!(roots[0].root.exact, Some(rat(1, 4)));
        assert_eq!(roots[0].vanishing, vec![2]);
        assert!(roots[1].root.exact.is_none());
        assert_eq!(roots[1].vanishing, vec![0, 1]);
        assert_eq!(roots[1].root.poly.degree(), Degree::Finite(2));
    }

    #[test]
    fn one_sided_signs() {
        let f = t(&[-1, 4]);
        assert_eq!(sign_left_of(&f, &rat(1, 4)), Sign::Negative);
        assert_eq!(sign_right_of(&f, &rat(1, 4)), Sign::Positive);
        let sq = &t(&[-1, 2]) * &t(&[-1, 2]);
        assert_eq!(sign_left_of(&sq, &rat(1, 2)), Sign::Positive);
        assert_eq!(sign_right_of(&sq, &rat(1, 2)), Sign::Positive);
    }

    fn factored() -> impl Strategy<Value = (Polynomial, Vec<Rational>)> {
        // product of linear factors with small rational roots times t^2 + c
        (prop::collection::vec((-12i64..12, 1i64..7), 1..4), 0i64..3).prop_map(|(rs, c)| {
            let roots: Vec<Rational> = rs.iter().map(|&(n, d)| rat(n, d)).collect();
            let mut f = Polynomial::from_ints(&[c, 0, 1], Var::T);
            if c == 0 {
                f = Polynomial::constant(int(1), Var::T);
            }
            for r in &roots {
                f = &f * &Polynomial::linear(-r, int(1), Var::T);
            }
            (f, roots)
        })
    }

    proptest! {
        #[test]
        fn every_rational_zero_on_a_grid_is_covered((f, roots) in factored(), k in 0i64..61) {
            let (lo, hi) = (int(-2), int(2));
            let isolated = sturm_isolate(&f, &lo, &hi).unwrap();
            for r in &roots {
                if &lo <= r && r <= &hi {
                    prop_assert!(isolated.iter().any(|iso| iso.exact.as_ref() == Some(r)));
                }
            }
            let x = int(-2) + rat(k, 15);
            if eval_sign(&f, &x) == Sign::Zero {
                prop_assert!(isolated.iter().any(|iso| iso.contains(&x)));
            }
            for w in isolated.windows(2) {
                prop_assert!(w[0].hi < w[1].lo);
            }
            for iso in &isolated {
                if iso.exact.is_none() {
                    let g = iso.poly.square_free();
                    prop_assert_eq!(eval_sign(&g, &iso.lo).mul(eval_sign(&g, &iso.hi)), Sign::Negative);
                }
            }
        }
    }
}
