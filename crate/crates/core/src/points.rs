//! Soft S-integral points on `(ℙ¹/Δ)` over Q.
//!
//! A point `a/c` meets the support point `z = u/v` at a prime `p` with
//! multiplicity `v_p(a·v - c·u)`. For the standard support `{0, 1, ∞}` these
//! values are `a`, `c - a` and `c`, so soft integrality becomes a
//! powerfulness condition on `a`, `b = c - a` and `c`.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::number::{factorize, is_n_powerful, powerful_numbers_up_to, ExactRational, Multiplicity};

/// Tolerance on the logarithmic Campana–abc inequality.
pub const LOG_TOLERANCE: f64 = 1e-9;

/// A point `(a:c)` of ℙ¹(Q) with coprime coordinates, `c > 0`, or the point
/// at infinity `(1:0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct P1Point {
    a: i64,
    c: i64,
}

impl P1Point {
    pub fn new(a: i64, c: i64) -> Result<Self> {
        if a == 0 && c == 0 {
            return Err(Error::ZeroVector);
        }
        let g = a.unsigned_abs().gcd(&c.unsigned_abs()) as i64;
        let (mut a, mut c) = (a / g, c / g);
        if c < 0 || (c == 0 && a < 0) {
            a = -a;
            c = -c;
        }
        Ok(P1Point { a, c })
    }

    pub const ZERO: P1Point = P1Point { a: 0, c: 1 };
    pub const ONE: P1Point = P1Point { a: 1, c: 1 };
    pub const INFINITY: P1Point = P1Point { a: 1, c: 0 };

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn c(&self) -> i64 {
        self.c
    }

    /// `b = c - a`.
    pub fn b(&self) -> i128 {
        self.c as i128 - self.a as i128
    }

    /// `a·v - c·u`, the value whose p-adic valuation is the intersection
    /// multiplicity with `z = (u:v)` at `p`.
    pub fn intersection_value(&self, z: &P1Point) -> i128 {
        self.a as i128 * z.c as i128 - self.c as i128 * z.a as i128
    }

    /// Naive height `max(|a|, |c|)`.
    pub fn height(&self) -> u64 {
        self.a.unsigned_abs().max(self.c.unsigned_abs())
    }
}

impl fmt::Display for P1Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}:{})", self.a, self.c)
    }
}

/// Multiplicities at `0`, `1` and `∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DeltaSupport3 {
    pub n0: Multiplicity,
    pub n1: Multiplicity,
    pub n_inf: Multiplicity,
}

impl DeltaSupport3 {
    pub fn new(n0: Multiplicity, n1: Multiplicity, n_inf: Multiplicity) -> Self {
        DeltaSupport3 { n0, n1, n_inf }
    }

    pub fn uniform(m: Multiplicity) -> Self {
        DeltaSupport3::new(m, m, m)
    }

    pub fn is_nontrivial(&self) -> bool {
        self.n0 > Multiplicity::ONE || self.n1 > Multiplicity::ONE || self.n_inf > Multiplicity::ONE
    }

    /// Componentwise `self ≤ other`.
    pub fn weaker_or_equal(&self, other: &DeltaSupport3) -> bool {
        self.n0 <= other.n0 && self.n1 <= other.n1 && self.n_inf <= other.n_inf
    }

    /// `1/n0 + 1/n1 + 1/n∞`.
    pub fn reciprocal_sum(&self) -> ExactRational {
        self.n0.reciprocal() + self.n1.reciprocal() + self.n_inf.reciprocal()
    }

    /// The same divisor as a general support with `S = ∅`; marks of
    /// multiplicity 1 are dropped.
    pub fn to_general(&self) -> GeneralDelta {
        let support = [
            (P1Point::ZERO, self.n0),
            (P1Point::ONE, self.n1),
            (P1Point::INFINITY, self.n_inf),
        ]
        .into_iter()
        .filter(|&(_, m)| m > Multiplicity::ONE)
        .collect();
        GeneralDelta::new(support, vec![]).expect("0, 1 and ∞ have disjoint reductions everywhere")
    }
}

impl fmt::Display for DeltaSupport3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.n0, self.n1, self.n_inf)
    }
}

impl std::str::FromStr for DeltaSupport3 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 3 {
            return Err(Error::parse(0, "expected three multiplicities `n0,n1,ninf`"));
        }
        let mut ms = [Multiplicity::ONE; 3];
        let mut pos = 0;
        for (slot, part) in ms.iter_mut().zip(&parts) {
            *slot = part
                .parse()
                .map_err(|_| Error::parse(pos, format!("bad multiplicity {:?}", part.trim())))?;
            pos += part.len() + 1;
        }
        Ok(DeltaSupport3::new(ms[0], ms[1], ms[2]))
    }
}

/// A divisor supported at arbitrary rational points, with a finite set of
/// excluded primes `S` containing every prime where two support points
/// reduce to the same point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralDelta {
    support: Vec<(P1Point, Multiplicity)>,
    excluded: Vec<u64>,
}

impl GeneralDelta {
    pub fn new(support: Vec<(P1Point, Multiplicity)>, mut excluded: Vec<u64>) -> Result<Self> {
        excluded.sort_unstable();
        excluded.dedup();
        if let Some(&p) = excluded.iter().find(|&&p| !crate::number::is_prime(p)) {
            return Err(Error::NotPrime(p));
        }
        for i in 0..support.len() {
            for j in i + 1..support.len() {
                let v = support[i].0.intersection_value(&support[j].0);
                if v == 0 {
                    return Err(Error::DuplicateLabel(support[i].0.to_string()));
                }
                let v = u64::try_from(v.unsigned_abs()).map_err(|_| Error::Overflow)?;
                if let Some(p) = factorize(v)?
                    .primes()
                    .find(|p| excluded.binary_search(p).is_err())
                {
                    return Err(Error::SupportNotDisjoint(i, j, p));
                }
            }
        }
        Ok(GeneralDelta { support, excluded })
    }

    /// Builds the divisor and enlarges `S` until the support is disjoint.
    pub fn with_disjoint_closure(support: Vec<(P1Point, Multiplicity)>, mut excluded: Vec<u64>) -> Result<Self> {
        for i in 0..support.len() {
            for j in i + 1..support.len() {
                let v = support[i].0.intersection_value(&support[j].0);
                if v == 0 {
                    return Err(Error::DuplicateLabel(support[i].0.to_string()));
                }
                let v = u64::try_from(v.unsigned_abs()).map_err(|_| Error::Overflow)?;
                excluded.extend(factorize(v)?.primes());
            }
        }
        GeneralDelta::new(support, excluded)
    }

    pub fn support(&self) -> &[(P1Point, Multiplicity)] {
        &self.support
    }

    pub fn excluded_primes(&self) -> &[u64] {
        &self.excluded
    }

    fn intersections(&self, p: &P1Point) -> Result<Vec<(Multiplicity, Vec<(u64, u32)>)>> {
        self.support
            .iter()
            .map(|(z, m)| {
                let v = p.intersection_value(z);
                if v == 0 {
                    return Err(Error::PointOnDelta);
                }
                let v = u64::try_from(v.unsigned_abs()).map_err(|_| Error::Overflow)?;
                let local = factorize(v)?
                    .factors()
                    .iter()
                    .copied()
                    .filter(|(q, _)| self.excluded.binary_search(q).is_err())
                    .collect();
                Ok((*m, local))
            })
            .collect()
    }
}

fn value_is_soft(value: i128, m: Multiplicity) -> Result<bool> {
    if value == 0 {
        return if m == Multiplicity::ONE {
            Ok(true)
        } else {
            Err(Error::PointOnDelta)
        };
    }
    is_n_powerful(value, m)
}

/// Soft integrality for a divisor supported at `0, 1, ∞`: `|a|` is
/// `n0`-powerful, `|c - a|` is `n1`-powerful and `|c|` is `n∞`-powerful.
pub fn is_soft_integral_3pt(p: &P1Point, delta: &DeltaSupport3) -> Result<bool> {
    Ok(value_is_soft(p.a as i128, delta.n0)?
        && value_is_soft(p.b(), delta.n1)?
        && value_is_soft(p.c as i128, delta.n_inf)?)
}

/// For each support point `z` and prime `p ∉ S` dividing the intersection
/// value, the valuation must reach `m_z` (for `m_z = ∞` no such prime may
/// exist).
pub fn is_soft_integral_general(p: &P1Point, delta: &GeneralDelta) -> Result<bool> {
    Ok(delta.intersections(p)?.iter().all(|(m, local)| match m {
        Multiplicity::Infinite => local.is_empty(),
        Multiplicity::Finite(m) => local.iter().all(|&(_, e)| e as u64 >= *m),
    }))
}

/// Weighted condition: at every prime `p ∉ S` meeting the support,
/// `Σ_z v_p(a·v_z - c·u_z) / m_z ≥ 1`.
pub fn is_soft_integral_weighted(p: &P1Point, delta: &GeneralDelta) -> Result<bool> {
    let rows = delta.intersections(p)?;
    let mut primes: Vec<u64> = rows.iter().flat_map(|(_, l)| l.iter().map(|&(q, _)| q)).collect();
    primes.sort_unstable();
    primes.dedup();
    Ok(primes.into_iter().all(|q| {
        let total: ExactRational = rows
            .iter()
            .filter_map(|(m, local)| {
                let e = local.iter().find(|&&(r, _)| r == q)?.1;
                Some(match m {
                    Multiplicity::Finite(m) => ExactRational::new(e as i64, *m as i64),
                    Multiplicity::Infinite => ExactRational::zero(),
                })
            })
            .sum();
        total >= ExactRational::one()
    }))
}

fn candidate_values(m: Multiplicity, limit: u64) -> Vec<u64> {
    powerful_numbers_up_to(limit, m)
}

/// Soft points for `delta` with `1 ≤ c ≤ max_height`, `0 < |a| ≤ max_height`,
/// `a ≠ c`, ordered by `c` then `a`. With `positive_only`, restricts to
/// `0 < a < c`.
pub fn enumerate_soft_points(delta: &DeltaSupport3, max_height: u64, positive_only: bool) -> Vec<P1Point> {
    let cs = candidate_values(delta.n_inf, max_height);
    let abs_as = candidate_values(delta.n0, max_height);
    cs.par_iter()
        .flat_map_iter(|&c| soft_points_with_denominator(delta, c, &abs_as, positive_only))
        .collect()
}

/// Sequential version of [`enumerate_soft_points`] for a single `c`.
fn soft_points_with_denominator(
    delta: &DeltaSupport3,
    c: u64,
    abs_as: &[u64],
    positive_only: bool,
) -> Vec<P1Point> {
    let mut out = vec![];
    let negatives = if positive_only {
        &[][..]
    } else {
        abs_as
    };
    let c_i = c as i64;
    for a in negatives.iter().rev().map(|&x| -(x as i64)).chain(abs_as.iter().map(|&x| x as i64)) {
        if a == c_i {
            continue;
        }
        if positive_only && a >= c_i {
            break;
        }
        if a.unsigned_abs().gcd(&c) != 1 {
            continue;
        }
        let b = c_i as i128 - a as i128;
        if is_n_powerful(b, delta.n1).unwrap_or(false) {
            out.push(P1Point { a, c: c_i });
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AbcBoundCheck {
    /// `(1/n0 + 1/n1 + 1/n∞) · log M` with `M = max(|a|, |b|, |c|)`.
    pub lhs: f64,
    /// `log rad(|abc|)`.
    pub rhs: f64,
    pub holds: bool,
}

fn finite_triple(delta: &DeltaSupport3) -> Result<[u64; 3]> {
    let f = |m: Multiplicity| m.as_finite().ok_or_else(|| Error::InvalidMultiplicity("inf".into()));
    Ok([f(delta.n0)?, f(delta.n1)?, f(delta.n_inf)?])
}

fn abc_values(p: &P1Point) -> Result<(u128, u64)> {
    let (a, b, c) = (p.a.unsigned_abs(), p.b().unsigned_abs(), p.c.unsigned_abs());
    if a == 0 || b == 0 || c == 0 {
        return Err(Error::PointOnDelta);
    }
    let b = u64::try_from(b).map_err(|_| Error::Overflow)?;
    let height = a.max(b).max(c) as u128;
    let mut primes: Vec<u64> = [a, b, c]
        .iter()
        .map(|&x| factorize(x).map(|f| f.primes().collect::<Vec<_>>()))
        .collect::<Result<Vec<_>>>()?
        .concat();
    primes.sort_unstable();
    primes.dedup();
    let rad = primes.iter().try_fold(1u64, |acc, &q| acc.checked_mul(q)).ok_or(Error::Overflow)?;
    Ok((height, rad))
}

/// `M^{1/n0 + 1/n1 + 1/n∞} ≥ rad(abc)` on the log scale.
pub fn campana_abc_bound_check(p: &P1Point, delta: &DeltaSupport3) -> Result<AbcBoundCheck> {
    finite_triple(delta)?;
    let (height, rad) = abc_values(p)?;
    let lhs = delta.reciprocal_sum().to_f64() * (height as f64).ln();
    let rhs = (rad as f64).ln();
    Ok(AbcBoundCheck {
        lhs,
        rhs,
        holds: lhs >= rhs - LOG_TOLERANCE,
    })
}

/// Exact form of [`campana_abc_bound_check`]: with `Σ 1/n_i = r/s`,
/// compares `M^r ≥ rad^s` in big integers.
pub fn campana_abc_bound_exact(p: &P1Point, delta: &DeltaSupport3) -> Result<bool> {
    finite_triple(delta)?;
    let (height, rad) = abc_values(p)?;
    let sum = delta.reciprocal_sum();
    let r = sum.numerator().to_u32().ok_or(Error::Overflow)?;
    let s = sum.denominator().to_u32().ok_or(Error::Overflow)?;
    Ok(BigUint::from(height).pow(r) >= BigUint::from(rad).pow(s))
}
