//! Heights, counting functions and the abc instance of Vojta's inequality
//! over Q.
//!
//! For a point with primitive integer coordinates every finite place
//! contributes 1 to the multiplicative height, so `H(P) = max |x_i|`. The
//! counting function of a divisor cut out by integral forms `F_j` records,
//! prime by prime, `n_p = Σ_j v_p(F_j(P))`.

use std::cmp::Ordering;

use num_integer::Integer;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::number::{factorize, Factorization, ProjectivePoint, SmallestFactorSieve};

/// A homogeneous form with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Form {
    vars: usize,
    terms: Vec<(i64, Vec<u32>)>,
}

impl Form {
    pub fn new(vars: usize, terms: Vec<(i64, Vec<u32>)>) -> Result<Self> {
        let terms: Vec<(i64, Vec<u32>)> = terms.into_iter().filter(|(c, _)| *c != 0).collect();
        if terms.is_empty() {
            return Err(Error::ZeroVector);
        }
        if let Some((_, e)) = terms.iter().find(|(_, e)| e.len() != vars) {
            return Err(Error::DimensionMismatch {
                expected: vars,
                found: e.len(),
            });
        }
        let degree: u32 = terms[0].1.iter().sum();
        if terms.iter().any(|(_, e)| e.iter().sum::<u32>() != degree) {
            return Err(Error::NotHomogeneous);
        }
        let content = terms.iter().fold(0u64, |g, (c, _)| g.gcd(&c.unsigned_abs()));
        if content != 1 {
            return Err(Error::NonPrimitiveForm(content));
        }
        Ok(Form { vars, terms })
    }

    /// The coordinate form `x_i`.
    pub fn coordinate(vars: usize, i: usize) -> Self {
        let mut e = vec![0; vars];
        e[i] = 1;
        Form::new(vars, vec![(1, e)]).expect("a coordinate is a primitive form")
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn evaluate(&self, x: &[i64]) -> Result<i128> {
        if x.len() != self.vars {
            return Err(Error::DimensionMismatch {
                expected: self.vars,
                found: x.len(),
            });
        }
        self.terms.iter().try_fold(0i128, |acc, (c, e)| {
            let mono = x.iter().zip(e).try_fold(*c as i128, |m, (&xi, &ei)| {
                (xi as i128).checked_pow(ei).and_then(|p| m.checked_mul(p))
            });
            mono.and_then(|m| acc.checked_add(m)).ok_or(Error::Overflow)
        })
    }
}

/// A divisor given as the union of the zero loci of primitive forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormDivisor {
    forms: Vec<Form>,
}

impl FormDivisor {
    pub fn new(forms: Vec<Form>) -> Result<Self> {
        let vars = forms.first().ok_or(Error::ZeroVector)?.vars();
        if let Some(f) = forms.iter().find(|f| f.vars() != vars) {
            return Err(Error::DimensionMismatch {
                expected: vars,
                found: f.vars(),
            });
        }
        Ok(FormDivisor { forms })
    }

    /// `x_0 x_1 ... x_r = 0`, the union of the coordinate hyperplanes.
    pub fn coordinate_hyperplanes(vars: usize) -> Self {
        FormDivisor {
            forms: (0..vars).map(|i| Form::coordinate(vars, i)).collect(),
        }
    }

    pub fn forms(&self) -> &[Form] {
        &self.forms
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HeightReport {
    /// Multiplicative height `max |x_i|`.
    pub height: u64,
    /// `log H`.
    pub log_height: f64,
}

pub fn naive_height(p: &ProjectivePoint) -> HeightReport {
    let height = p.coords().iter().map(|x| x.unsigned_abs()).max().unwrap_or(1);
    HeightReport {
        height,
        log_height: (height as f64).ln(),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CountingReport {
    /// `Σ n_p log p` over primes outside `S`.
    pub counting: f64,
    /// `Σ min(1, n_p) log p` over primes outside `S`.
    pub truncated: f64,
    /// Primes outside `S` with `n_p > 0`, ascending.
    pub per_prime: Vec<(u64, u32)>,
}

/// Sum of `log p` over ascending distinct primes. Every truncated counting
/// value in the crate goes through this so scans and single evaluations
/// agree to the last bit.
pub fn log_of_prime_product(primes: &[u64]) -> f64 {
    primes.iter().map(|&p| (p as f64).ln()).sum()
}

pub fn counting_function(divisor: &FormDivisor, p: &ProjectivePoint, excluded: &[u64]) -> Result<CountingReport> {
    let mut local: Vec<(u64, u32)> = vec![];
    for form in divisor.forms() {
        let value = form.evaluate(p.coords())?;
        if value == 0 {
            return Err(Error::PointOnDivisor);
        }
        let value = u64::try_from(value.unsigned_abs()).map_err(|_| Error::Overflow)?;
        for &(q, e) in factorize(value)?.factors() {
            if excluded.contains(&q) {
                continue;
            }
            match local.iter_mut().find(|(r, _)| *r == q) {
                Some((_, n)) => *n += e,
                None => local.push((q, e)),
            }
        }
    }
    local.sort_unstable();
    let counting = local.iter().map(|&(q, n)| n as f64 * (q as f64).ln()).sum();
    let primes: Vec<u64> = local.iter().map(|&(q, _)| q).collect();
    Ok(CountingReport {
        counting,
        truncated: log_of_prime_product(&primes),
        per_prime: local,
    })
}

/// Coprime positive integers with `a + b = c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbcTriple {
    factors: [Factorization; 3],
}

impl AbcTriple {
    pub fn new(a: u64, b: u64, c: u64) -> Result<Self> {
        if a == 0 || b == 0 {
            return Err(Error::NotATriple(format!("{a} + {b} = {c} has a zero term")));
        }
        if a.checked_add(b) != Some(c) {
            return Err(Error::NotATriple(format!("{a} + {b} != {c}")));
        }
        if a.gcd(&b) != 1 {
            return Err(Error::NotATriple(format!("gcd({a}, {b}) > 1")));
        }
        Ok(AbcTriple {
            factors: [factorize(a)?, factorize(b)?, factorize(c)?],
        })
    }

    pub fn a(&self) -> u64 {
        self.factors[0].value()
    }

    pub fn b(&self) -> u64 {
        self.factors[1].value()
    }

    pub fn c(&self) -> u64 {
        self.factors[2].value()
    }

    pub fn factorizations(&self) -> &[Factorization; 3] {
        &self.factors
    }

    /// Distinct primes dividing `abc`, ascending.
    pub fn primes(&self) -> Vec<u64> {
        let mut ps: Vec<u64> = self.factors.iter().flat_map(|f| f.primes()).collect();
        ps.sort_unstable();
        ps
    }

    pub fn radical(&self) -> u64 {
        self.factors.iter().map(Factorization::radical).product()
    }

    /// The point `(a : b : -c)` on the line `x + y + z = 0`.
    pub fn line_point(&self) -> Result<ProjectivePoint> {
        let to_i64 = |x: u64| i64::try_from(x).map_err(|_| Error::Overflow);
        crate::number::canonicalize(&[to_i64(self.a())?, to_i64(self.b())?, -to_i64(self.c())?])
    }
}

/// `log c / log rad(abc)`.
pub fn abc_quality(t: &AbcTriple) -> f64 {
    (t.c() as f64).ln() / (t.radical() as f64).ln()
}

/// `ε'` with `1 - ε' = 1/(1 + ε)`, translating `h ≤ (1+ε) N + C` into the
/// Vojta form `(1 - ε') h ≤ N + C'`.
pub fn eps_prime_for(eps: f64) -> f64 {
    1.0 - 1.0 / (1.0 + eps)
}

fn check_eps_prime(eps_prime: f64) -> Result<()> {
    if !(eps_prime > 0.0 && eps_prime < 1.0) {
        return Err(Error::InvalidArgument(format!("eps' = {eps_prime} is not in (0, 1)")));
    }
    Ok(())
}

/// `(1 - ε') h(P) - N^{(1)}(D, P)` for `D = {xyz = 0}` on the line
/// `x + y + z = 0`, with no finite primes excluded.
pub fn vojta_gap(p: &ProjectivePoint, eps_prime: f64) -> Result<f64> {
    check_eps_prime(eps_prime)?;
    let x = p.coords();
    if x.len() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            found: x.len(),
        });
    }
    if x.iter().map(|&v| v as i128).sum::<i128>() != 0 {
        return Err(Error::InvalidArgument(format!("{p} is not on x + y + z = 0")));
    }
    if x.contains(&0) {
        return Err(Error::DegeneratePoint);
    }
    let h = naive_height(p).log_height;
    let n = counting_function(&FormDivisor::coordinate_hyperplanes(3), p, &[])?;
    Ok((1.0 - eps_prime) * h - n.truncated)
}

/// The relative logarithmic discriminant; only the trivial extension
/// `Q/Q` is supported.
pub fn log_discriminant_term(field: &str) -> Result<f64> {
    match field.trim() {
        "Q" | "QQ" | "ℚ" => Ok(0.0),
        other => Err(Error::UnsupportedField(other.to_string())),
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AbcHit {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub rad: u64,
    pub quality: f64,
}

/// Orders hits by quality descending, then `c` and `a` ascending.
pub fn hit_order(x: &AbcHit, y: &AbcHit) -> Ordering {
    y.quality
        .total_cmp(&x.quality)
        .then(x.c.cmp(&y.c))
        .then(x.a.cmp(&y.a))
}

/// Every coprime triple `a ≤ b`, `a + b = c ≤ max_c` with quality at least
/// `min_quality`, sorted by [`hit_order`].
///
/// Quality `≥ q` means `rad(a)·rad(b)·rad(c) ≤ c^{1/q}`, so for each `c` only
/// `a` with small radical are visited, in order of increasing radical.
pub fn abc_scan(max_c: u64, min_quality: f64) -> Result<Vec<AbcHit>> {
    if !(min_quality > 0.0) {
        return Err(Error::InvalidArgument(format!("min quality {min_quality} must be positive")));
    }
    let limit = u32::try_from(max_c).map_err(|_| Error::Overflow)?;
    let rad = SmallestFactorSieve::new(limit).radicals();
    let mut by_rad: Vec<u32> = (1..=limit).collect();
    by_rad.sort_by_key(|&n| (rad[n as usize], n));
    let mut hits: Vec<AbcHit> = (2..=max_c)
        .into_par_iter()
        .flat_map_iter(|c| {
            let rad_c = rad[c as usize];
            // inclusive bound on rad(abc), padded against rounding; the
            // final filter uses the exact quality value
            let bound = ((c as f64).ln() / min_quality).exp() * (1.0 + 1e-9) + 1.0;
            let bound = if bound >= u64::MAX as f64 { u64::MAX } else { bound as u64 };
            let limit_ab = bound / rad_c;
            let rad = &rad;
            by_rad
                .iter()
                .take_while(move |&&n| rad[n as usize] <= limit_ab)
                .filter_map(move |&n| {
                    let a = n as u64;
                    let b = c.checked_sub(a)?;
                    if a > b || a.gcd(&c) != 1 {
                        return None;
                    }
                    let r = rad[a as usize] as u128 * rad[b as usize] as u128 * rad_c as u128;
                    if r > bound as u128 {
                        return None;
                    }
                    let r = r as u64;
                    let quality = (c as f64).ln() / (r as f64).ln();
                    (quality >= min_quality).then_some(AbcHit { a, b, c, rad: r, quality })
                })
        })
        .collect();
    hits.sort_by(hit_order);
    Ok(hits)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GapRecord {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub gap: f64,
}

/// Running-maximum trace of [`vojta_gap`] over coprime `0 < a < b`,
/// `c = a + b ≤ max_c`, scanned by `c` then `a`: one record each time the
/// maximum strictly increases.
pub fn vojta_gap_trace(eps_prime: f64, max_c: u64) -> Result<Vec<GapRecord>> {
    check_eps_prime(eps_prime)?;
    let limit = u32::try_from(max_c).map_err(|_| Error::Overflow)?;
    let sieve = SmallestFactorSieve::new(limit);
    let per_c: Vec<Vec<GapRecord>> = (3..=max_c)
        .into_par_iter()
        .map(|c| {
            let mut local = vec![];
            let mut best = f64::NEG_INFINITY;
            for a in 1..c.div_ceil(2) {
                let b = c - a;
                if a.gcd(&b) != 1 {
                    continue;
                }
                let mut primes = vec![];
                for x in [a, b, c] {
                    primes.extend(sieve.distinct_primes(x as u32));
                }
                primes.sort_unstable();
                let gap = (1.0 - eps_prime) * (c as f64).ln() - log_of_prime_product(&primes);
                if gap > best {
                    best = gap;
                    local.push(GapRecord { a, b, c, gap });
                }
            }
            local
        })
        .collect();
    let mut trace = vec![];
    let mut best = f64::NEG_INFINITY;
    for r in per_c.into_iter().flatten() {
        if r.gap > best {
            best = r.gap;
            trace.push(r);
        }
    }
    Ok(trace)
}
