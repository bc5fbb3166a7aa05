//! Subspaces of `F_q^n` in reduced row-echelon form.

/// Every subspace of `F_q^n` exactly once, as an RREF basis (rows).
///
/// Ordered by dimension, then by pivot columns (lexicographically), then by
/// the free entries read row by row as a base-`q` counter.
pub fn enumerate_subspaces(q: u32, n: usize) -> Vec<Vec<Vec<u32>>> {
    let mut out = Vec::new();
    for k in 0..=n {
        let mut pivots: Vec<usize> = (0..k).collect();
        loop {
            push_pattern(q, n, &pivots, &mut out);
            if !next_combination(&mut pivots, n) {
                break;
            }
        }
    }
    out
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn push_pattern(q: u32, n: usize, pivots: &[usize], out: &mut Vec<Vec<Vec<u32>>>) {
    // free positions: right of the row's pivot and not under another pivot
    let free: Vec<(usize, usize)> = pivots
        .iter()
        .enumerate()
        .flat_map(|(r, &p)| (p + 1..n).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
        .collect();
    let mut digits = vec![0u32; free.len()];
    loop {
        let mut basis = vec![vec![0u32; n]; pivots.len()];
        for (r, &p) in pivots.iter().enumerate() {
            basis[r][p] = 1;
        }
        for (&(r, c), &x) in free.iter().zip(&digits) {
            basis[r][c] = x;
        }
        out.push(basis);
        let mut i = digits.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < q {
                break;
            }
            digits[i] = 0;
        }
    }
}
