//! Finitely generated submonoids of ℕ^d.
//!
//! Membership is decided by splitting the generators into a linearly
//! independent basis and the rest: the coefficients of the non-basis
//! generators are enumerated inside the box bounded by the target vector,
//! and the remaining residual is solved exactly against the basis using a
//! precomputed integer adjugate.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::linalg;

/// Default cap on the incremental search in [`min_multiple`].
pub const DEFAULT_MULTIPLE_CAP: u64 = 1_000_000;

#[derive(Clone, Debug)]
struct BasisSolver {
    basis: Vec<usize>,
    others: Vec<usize>,
    rows: Vec<usize>,
    adj: Vec<Vec<i128>>,
    det: i128,
}

impl BasisSolver {
    fn new(generators: &[Vec<u64>]) -> Self {
        let basis = linalg::independent_subset(generators);
        let others = (0..generators.len()).filter(|i| !basis.contains(i)).collect();
        // Rows of the d x r basis matrix with a nonsingular r x r minor.
        let row_vectors: Vec<Vec<u64>> = (0..generators[0].len())
            .map(|i| basis.iter().map(|&j| generators[j][i]).collect())
            .collect();
        let rows = linalg::independent_subset(&row_vectors);
        let minor: Vec<Vec<i128>> = rows
            .iter()
            .map(|&i| basis.iter().map(|&j| generators[j][i] as i128).collect())
            .collect();
        let det = linalg::determinant(&minor);
        let adj = linalg::adjugate(&minor);
        BasisSolver {
            basis,
            others,
            rows,
            adj,
            det,
        }
    }

    fn solves(&self, generators: &[Vec<u64>], residual: &[u64]) -> bool {
        let mut coeffs = Vec::with_capacity(self.basis.len());
        for adj_row in &self.adj {
            let num: i128 = adj_row
                .iter()
                .zip(&self.rows)
                .map(|(&a, &r)| a * residual[r] as i128)
                .sum();
            if num % self.det != 0 {
                return false;
            }
            let x = num / self.det;
            if x < 0 {
                return false;
            }
            coeffs.push(x);
        }
        (0..residual.len()).all(|i| {
            let s: i128 = self
                .basis
                .iter()
                .zip(&coeffs)
                .map(|(&j, &x)| generators[j][i] as i128 * x)
                .sum();
            s == residual[i] as i128
        })
    }
}

/// A finitely generated submonoid of ℕ^d, stored by a deduplicated,
/// lexicographically sorted generator list.
#[derive(Clone, Debug)]
pub struct LatticeMonoid {
    dim: usize,
    generators: Vec<Vec<u64>>,
    solver: BasisSolver,
}

impl PartialEq for LatticeMonoid {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.generators == other.generators
    }
}

impl Eq for LatticeMonoid {}

impl LatticeMonoid {
    pub fn new(dim: usize, generators: impl IntoIterator<Item = Vec<u64>>) -> Result<Self> {
        let set: BTreeSet<Vec<u64>> = generators.into_iter().collect();
        for g in &set {
            if g.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: g.len(),
                });
            }
            if g.iter().all(|&x| x == 0) {
                return Err(Error::ZeroVector);
            }
        }
        if set.is_empty() || dim == 0 {
            return Err(Error::EmptyMonoid);
        }
        let generators: Vec<Vec<u64>> = set.into_iter().collect();
        let solver = BasisSolver::new(&generators);
        Ok(LatticeMonoid {
            dim,
            generators,
            solver,
        })
    }

    /// Convenience constructor for submonoids of ℕ.
    pub fn numerical(generators: &[u64]) -> Result<Self> {
        LatticeMonoid::new(1, generators.iter().map(|&g| vec![g]))
    }

    /// The full monoid ℕ^d.
    pub fn full(dim: usize) -> Self {
        LatticeMonoid::new(
            dim,
            (0..dim).map(|i| {
                let mut e = vec![0; dim];
                e[i] = 1;
                e
            }),
        )
        .expect("unit vectors are valid generators")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Vec<u64>] {
        &self.generators
    }

    /// Rank of the group generated by the monoid.
    pub fn rank(&self) -> usize {
        self.solver.basis.len()
    }

    /// Whether the generators span a full-dimensional cone.
    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.dim
    }

    pub fn member(&self, v: &[u64]) -> Result<bool> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        Ok(self.member_unchecked(v))
    }

    pub(crate) fn member_unchecked(&self, v: &[u64]) -> bool {
        if v.iter().all(|&x| x == 0) {
            return true;
        }
        let mut residual = v.to_vec();
        self.search(0, &mut residual)
    }

    fn search(&self, k: usize, residual: &mut Vec<u64>) -> bool {
        if k == self.solver.others.len() {
            return self.solver.solves(&self.generators, residual);
        }
        let g = &self.generators[self.solver.others[k]];
        let max = g
            .iter()
            .zip(residual.iter())
            .filter(|(&gi, _)| gi > 0)
            .map(|(&gi, &ri)| ri / gi)
            .min()
            .unwrap_or(0);
        for c in 0..=max {
            if c > 0 {
                for (r, &gi) in residual.iter_mut().zip(g) {
                    *r -= gi;
                }
            }
            if self.search(k + 1, residual) {
                return true;
            }
        }
        for (r, &gi) in residual.iter_mut().zip(g) {
            *r += gi * max;
        }
        false
    }

    /// Whether `other ⊆ self`.
    pub fn contains(&self, other: &LatticeMonoid) -> Result<bool> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(other.generators.iter().all(|g| self.member_unchecked(g)))
    }

    /// Equality as sets, independent of the generator list.
    pub fn same_monoid(&self, other: &LatticeMonoid) -> bool {
        self.dim == other.dim
            && self.contains(other).unwrap_or(false)
            && other.contains(self).unwrap_or(false)
    }

    /// The same monoid presented by its minimal generating set.
    pub fn minimalized(&self) -> LatticeMonoid {
        let mut gens = self.generators.clone();
        // Larger generators (by coordinate sum) can only be sums of smaller
        // ones, so test them first.
        gens.sort_by_key(|g| std::cmp::Reverse(g.iter().sum::<u64>()));
        let mut i = 0;
        while i < gens.len() && gens.len() > 1 {
            let rest: Vec<Vec<u64>> = gens
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, g)| g.clone())
                .collect();
            let without = LatticeMonoid::new(self.dim, rest).expect("nonempty");
            if without.member_unchecked(&gens[i]) {
                gens.remove(i);
            } else {
                i += 1;
            }
        }
        LatticeMonoid::new(self.dim, gens).expect("nonempty")
    }

    /// If `n` lies in the rational cone of this monoid, a positive `k` with
    /// `k·n` in the monoid.
    pub(crate) fn cone_multiple(&self, n: &[u64]) -> Option<u64> {
        linalg::cone_clearing_multiple(&self.generators, n).map(|k| k.to_u64().unwrap_or(u64::MAX))
    }
}

impl fmt::Display for LatticeMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str("(")?;
            for (j, x) in g.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

fn check_ray(dim: usize, n: &[u64]) -> Result<()> {
    if n.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: n.len(),
        });
    }
    if n.iter().all(|&x| x == 0) {
        return Err(Error::ZeroVector);
    }
    Ok(())
}

fn scaled(n: &[u64], k: u64) -> Option<Vec<u64>> {
    n.iter().map(|&x| x.checked_mul(k)).collect()
}

/// Smallest `k ≥ 1` with `k·n` in one of `monoids`.
pub fn min_multiple(monoids: &[LatticeMonoid], n: &[u64]) -> Result<u64> {
    min_multiple_with_cap(monoids, n, DEFAULT_MULTIPLE_CAP)
}

pub fn min_multiple_with_cap(monoids: &[LatticeMonoid], n: &[u64], cap: u64) -> Result<u64> {
    let dim = monoids.first().ok_or(Error::EmptyMonoid)?.dim();
    check_ray(dim, n)?;
    if let Some(m) = monoids.iter().find(|m| m.dim() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: m.dim(),
        });
    }
    let supported: Vec<&LatticeMonoid> = monoids
        .iter()
        .filter(|m| m.cone_multiple(n).is_some())
        .collect();
    if supported.is_empty() {
        return Err(Error::RayUnsupported(n.to_vec()));
    }
    for k in 1..=cap {
        let v = scaled(n, k).ok_or(Error::Overflow)?;
        if supported.iter().any(|m| m.member_unchecked(&v)) {
            return Ok(k);
        }
    }
    Err(Error::BoundExceeded(cap))
}

/// The set `{k ≤ B : k·n ∈ Γ_i for some i}` as a bitmap, with an eventual
/// period when one is visible in the second half of the window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayRestriction {
    pub base_point: Vec<u64>,
    pub membership: Vec<bool>,
    pub detected_period: Option<u64>,
}

impl RayRestriction {
    pub fn gaps(&self) -> Vec<u64> {
        self.membership
            .iter()
            .enumerate()
            .filter(|(_, &b)| !b)
            .map(|(k, _)| k as u64)
            .collect()
    }

    pub fn all_true(&self) -> bool {
        self.membership.iter().all(|&b| b)
    }
}

pub fn ray_restriction(monoids: &[LatticeMonoid], n: &[u64], bound: u64) -> Result<RayRestriction> {
    let dim = monoids.first().ok_or(Error::EmptyMonoid)?.dim();
    check_ray(dim, n)?;
    let candidates: Vec<&LatticeMonoid> = monoids
        .iter()
        .filter(|m| m.cone_multiple(n).is_some())
        .collect();
    let membership = (0..=bound)
        .map(|k| {
            let v = scaled(n, k).ok_or(Error::Overflow)?;
            Ok(k == 0 || candidates.iter().any(|m| m.member_unchecked(&v)))
        })
        .collect::<Result<Vec<bool>>>()?;
    let detected_period = detect_period(&membership);
    Ok(RayRestriction {
        base_point: n.to_vec(),
        membership,
        detected_period,
    })
}

fn detect_period(bits: &[bool]) -> Option<u64> {
    let len = bits.len();
    let start = len / 2;
    (1..=(len - start) / 2).find_map(|p| {
        (start..len - p)
            .all(|k| bits[k] == bits[k + p])
            .then_some(p as u64)
    })
}

/// Gaps of a numerical semigroup, i.e. `ℕ ∖ Γ` for `d = 1`.
pub fn gaps(monoid: &LatticeMonoid) -> Result<Vec<u64>> {
    if monoid.dim() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: monoid.dim(),
        });
    }
    let gens: Vec<u64> = monoid.generators().iter().map(|g| g[0]).collect();
    let g = gens.iter().fold(0u64, |acc, &x| acc.gcd(&x));
    if g > 1 {
        return Err(Error::InfiniteGapSet(g));
    }
    let smallest = gens[0] as usize;
    // Once `smallest` consecutive members appear, everything beyond is a member.
    let mut reach = vec![true];
    let mut run = 0usize;
    let mut out = vec![];
    let mut k = 1usize;
    while run < smallest {
        let hit = gens.iter().any(|&g| (g as usize) <= k && reach[k - g as usize]);
        reach.push(hit);
        if hit {
            run += 1;
        } else {
            run = 0;
            out.push(k as u64);
        }
        k += 1;
    }
    Ok(out)
}
