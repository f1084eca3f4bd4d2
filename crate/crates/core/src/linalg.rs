//! Small exact linear algebra over Q for cone and span computations.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

fn to_rational_columns(cols: &[&[u64]], target: Option<&[u64]>) -> Vec<Vec<BigRational>> {
    let rows = cols.first().map(|c| c.len()).or(target.map(|t| t.len())).unwrap_or(0);
    (0..rows)
        .map(|i| {
            let mut row: Vec<BigRational> = cols
                .iter()
                .map(|c| BigRational::from_integer(BigInt::from(c[i])))
                .collect();
            if let Some(t) = target {
                row.push(BigRational::from_integer(BigInt::from(t[i])));
            }
            row
        })
        .collect()
}

/// Row-reduce in place; returns the pivot columns (restricted to the first
/// `ncols` columns).
fn row_reduce(m: &mut [Vec<BigRational>], ncols: usize) -> Vec<usize> {
    let mut pivots = vec![];
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = BigRational::one() / m[r][c].clone();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let (head, tail) = if i < r {
                    let (a, b) = m.split_at_mut(r);
                    (&mut a[i], &b[0])
                } else {
                    let (a, b) = m.split_at_mut(i);
                    (&mut b[0], &a[r])
                };
                for (x, y) in head.iter_mut().zip(tail.iter()) {
                    *x = &*x - &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    pivots
}

/// Indices of a maximal linearly independent subset of `vectors`, chosen
/// greedily in order.
pub(crate) fn independent_subset(vectors: &[Vec<u64>]) -> Vec<usize> {
    if vectors.is_empty() {
        return vec![];
    }
    let cols: Vec<&[u64]> = vectors.iter().map(|v| v.as_slice()).collect();
    let mut m = to_rational_columns(&cols, None);
    row_reduce(&mut m, cols.len())
}

pub(crate) fn rank(vectors: &[Vec<u64>]) -> usize {
    independent_subset(vectors).len()
}

/// Solves `Σ x_j cols[j] = target` for linearly independent columns.
/// Returns `None` if `target` is outside their span.
pub(crate) fn solve_independent(cols: &[&[u64]], target: &[u64]) -> Option<Vec<BigRational>> {
    let n = cols.len();
    let mut m = to_rational_columns(cols, Some(target));
    let pivots = row_reduce(&mut m, n + 1);
    if pivots.last() == Some(&n) {
        return None;
    }
    debug_assert_eq!(pivots.len(), n);
    Some((0..n).map(|j| m[j][n].clone()).collect())
}

/// If `target` lies in the closed rational cone spanned by `gens`, returns
/// a positive integer `k` with `k * target` a nonnegative integer
/// combination of `gens`. Uses Carathéodory: some linearly independent
/// subset of generators already spans a cone containing the target.
pub(crate) fn cone_clearing_multiple(gens: &[Vec<u64>], target: &[u64]) -> Option<BigInt> {
    let d = target.len();
    let max_size = rank(gens).min(d);
    let mut best: Option<BigInt> = None;
    let mut subset = Vec::with_capacity(max_size);
    fn walk(
        start: usize,
        gens: &[Vec<u64>],
        target: &[u64],
        max_size: usize,
        subset: &mut Vec<usize>,
        best: &mut Option<BigInt>,
    ) {
        if !subset.is_empty() {
            let cols: Vec<&[u64]> = subset.iter().map(|&i| gens[i].as_slice()).collect();
            let owned: Vec<Vec<u64>> = cols.iter().map(|c| c.to_vec()).collect();
            if rank(&owned) == cols.len() {
                if let Some(x) = solve_independent(&cols, target) {
                    if x.iter().all(|q| !q.is_negative()) {
                        let k = x
                            .iter()
                            .fold(BigInt::one(), |acc, q| num_integer::Integer::lcm(&acc, q.denom()));
                        if best.as_ref().is_none_or(|b| &k < b) {
                            *best = Some(k);
                        }
                    }
                }
            } else {
                return;
            }
        }
        if subset.len() == max_size {
            return;
        }
        for i in start..gens.len() {
            subset.push(i);
            walk(i + 1, gens, target, max_size, subset, best);
            subset.pop();
        }
    }
    walk(0, gens, target, max_size, &mut subset, &mut best);
    best
}

/// Integer determinant by Bareiss fraction-free elimination.
pub(crate) fn determinant(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.to_vec();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                return 0;
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// Adjugate of a square integer matrix, so that `adj * m = det * I`.
pub(crate) fn adjugate(m: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let n = m.len();
    if n == 1 {
        return vec![vec![1]];
    }
    let mut adj = vec![vec![0i128; n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<i128>> = (0..n)
                .filter(|&r| r != i)
                .map(|r| (0..n).filter(|&c| c != j).map(|c| m[r][c]).collect())
                .collect();
            let cof = determinant(&minor);
            adj[j][i] = if (i + j) % 2 == 0 { cof } else { -cof };
        }
    }
    adj
}
