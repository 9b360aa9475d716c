//! Polynomial matrices, determinants and minor enumeration.

use std::collections::HashMap;
use std::sync::Arc;

use rand::Rng;

use crate::exec::Exec;
use crate::poly::{Field, PolyError, PolyRing, Polynomial};

pub type PolyMatrix<F> = Vec<Vec<Polynomial<F>>>;

/// Jacobian matrix `d h_i / d x_j`.
pub fn jacobian_matrix<F: Field>(gens: &[Polynomial<F>], ring: &Arc<PolyRing<F>>) -> Result<PolyMatrix<F>, PolyError> {
    gens.iter()
        .map(|h| (0..ring.nvars()).map(|j| h.partial_derivative(j)).collect())
        .collect()
}

/// All `k x k` minors of the rows in `rows`, keyed by column bitmask.
/// Laplace expansion along successive rows shares work between minors.
pub fn minors_of_rows<F: Field>(
    m: &PolyMatrix<F>,
    rows: &[usize],
    ring: &Arc<PolyRing<F>>,
) -> HashMap<u64, Polynomial<F>> {
    let ncols = m.first().map_or(0, |r| r.len());
    assert!(ncols <= 64);
    let mut level: HashMap<u64, Polynomial<F>> = HashMap::new();
    level.insert(0, ring.one());
    for (depth, &r) in rows.iter().enumerate() {
        let mut next: HashMap<u64, Polynomial<F>> = HashMap::new();
        for (&mask, d) in &level {
            if d.is_zero() {
                continue;
            }
            for j in 0..ncols {
                if mask & (1 << j) != 0 || m[r][j].is_zero() {
                    continue;
                }
                let nm = mask | (1 << j);
                // position of j among the columns of the new minor
                let pos = (nm & ((1u64 << j) - 1)).count_ones() as usize;
                let term = m[r][j].try_mul(d).unwrap();
                let e = next.entry(nm).or_insert_with(|| ring.zero());
                *e = if (depth + pos).is_multiple_of(2) {
                    e.try_add(&term).unwrap()
                } else {
                    e.try_sub(&term).unwrap()
                };
            }
        }
        level = next;
    }
    level.retain(|_, d| !d.is_zero());
    level
}

/// Determinant of a square polynomial matrix.
pub fn determinant<F: Field>(m: &PolyMatrix<F>, ring: &Arc<PolyRing<F>>) -> Polynomial<F> {
    let n = m.len();
    if n == 0 {
        return ring.one();
    }
    let rows: Vec<usize> = (0..n).collect();
    minors_of_rows(m, &rows, ring)
        .remove(&((1u64 << n) - 1))
        .unwrap_or_else(|| ring.zero())
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Every nonzero `k x k` minor, in a deterministic order.
pub fn all_minors<F: Field>(m: &PolyMatrix<F>, k: usize, ring: &Arc<PolyRing<F>>, exec: Exec) -> Vec<Polynomial<F>> {
    let row_sets = subsets(m.len(), k);
    let per_rows = exec.map(&row_sets, |rows| {
        let mut v: Vec<(u64, Polynomial<F>)> = minors_of_rows(m, rows, ring).into_iter().collect();
        v.sort_by_key(|(mask, _)| *mask);
        v.into_iter().map(|(_, p)| p).collect::<Vec<_>>()
    });
    per_rows.into_iter().flatten().collect()
}

/// One `k x k` minor with the given rows and columns.
pub fn minor<F: Field>(m: &PolyMatrix<F>, rows: &[usize], cols: &[usize], ring: &Arc<PolyRing<F>>) -> Polynomial<F> {
    let sub: PolyMatrix<F> = rows
        .iter()
        .map(|&r| cols.iter().map(|&c| m[r][c].clone()).collect())
        .collect();
    determinant(&sub, ring)
}

/// `k` distinct indices below `n`, sorted.
pub fn random_subset<R: Rng>(rng: &mut R, n: usize, k: usize) -> Vec<usize> {
    let mut v: Vec<usize> = (0..n).collect();
    for i in 0..k {
        let j = rng.random_range(i..n);
        v.swap(i, j);
    }
    let mut s = v[..k].to_vec();
    s.sort_unstable();
    s
}
