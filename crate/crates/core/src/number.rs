//! Exact integer and rational arithmetic: factorization, p-adic valuations,
//! radicals, powerful-number tests and primitive projective coordinates.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Default size above which [`Factorizer`] switches from trial division to
/// Pollard rho.
pub const DEFAULT_RHO_THRESHOLD: u64 = 100_000_000;

/// Prime factorization of a positive integer, primes ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Factorization {
    value: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn exponent_of(&self, p: u64) -> u32 {
        self.factors
            .binary_search_by_key(&p, |&(q, _)| q)
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    pub fn radical(&self) -> u64 {
        self.primes().product()
    }

    /// Product of `prime^exponent`, computed with overflow checks.
    pub fn reconstruct(&self) -> Option<u64> {
        self.factors
            .iter()
            .try_fold(1u64, |acc, &(p, e)| acc.checked_mul(p.checked_pow(e)?))
    }

    fn from_primes(value: u64, mut primes: Vec<u64>) -> Self {
        primes.sort_unstable();
        let mut factors: Vec<(u64, u32)> = Vec::new();
        for p in primes {
            match factors.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => factors.push((p, 1)),
            }
        }
        Factorization { value, factors }
    }
}

/// Trial-division factorizer with Pollard rho above a size threshold.
#[derive(Clone, Copy, Debug)]
pub struct Factorizer {
    pub rho_threshold: u64,
}

impl Default for Factorizer {
    fn default() -> Self {
        Factorizer {
            rho_threshold: DEFAULT_RHO_THRESHOLD,
        }
    }
}

impl Factorizer {
    pub fn factorize(&self, n: u64) -> Result<Factorization> {
        if n == 0 {
            return Err(Error::NonPositive(0));
        }
        let mut primes = Vec::new();
        let mut rest = n;
        while rest.is_multiple_of(2) {
            primes.push(2);
            rest /= 2;
        }
        let mut d = 3u64;
        while rest > 1 && d.saturating_mul(d) <= rest {
            if rest > self.rho_threshold {
                break;
            }
            while rest.is_multiple_of(d) {
                primes.push(d);
                rest /= d;
            }
            d += 2;
        }
        if rest > 1 {
            if rest <= self.rho_threshold || d.saturating_mul(d) > rest {
                primes.push(rest);
            } else {
                split_rho(rest, &mut primes);
            }
        }
        Ok(Factorization::from_primes(n, primes))
    }
}

pub fn factorize(n: u64) -> Result<Factorization> {
    Factorizer::default().factorize(n)
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn split_rho(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = rho_divisor(n);
    split_rho(d, out);
    split_rho(n / d, out);
}

// Brent's variant; n is odd and composite.
fn rho_divisor(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

/// Exponent of the prime `p` in `n`.
pub fn valuation(p: u64, n: i128) -> Result<u32> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n == 0 {
        return Err(Error::ZeroValuation);
    }
    let p = p as u128;
    let mut rest = n.unsigned_abs();
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    Ok(e)
}

pub fn radical(n: u64) -> Result<u64> {
    Ok(factorize(n)?.radical())
}

/// A Campana multiplicity: a positive integer or infinity, with infinity
/// ordered above every integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Multiplicity {
    Finite(u64),
    Infinite,
}

impl Multiplicity {
    pub const ONE: Multiplicity = Multiplicity::Finite(1);

    pub fn finite(m: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidMultiplicity("0".into()));
        }
        Ok(Multiplicity::Finite(m))
    }

    pub fn is_infinite(self) -> bool {
        self == Multiplicity::Infinite
    }

    pub fn as_finite(self) -> Option<u64> {
        match self {
            Multiplicity::Finite(m) => Some(m),
            Multiplicity::Infinite => None,
        }
    }

    /// `1/m`, with `1/∞ = 0`.
    pub fn reciprocal(self) -> ExactRational {
        match self {
            Multiplicity::Finite(m) => ExactRational::new(1, m as i64),
            Multiplicity::Infinite => ExactRational::zero(),
        }
    }

    /// The coefficient `1 - 1/m` of a point of multiplicity `m`.
    pub fn delta(self) -> ExactRational {
        ExactRational::one() - self.reciprocal()
    }
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::Finite(m) => write!(f, "{m}"),
            Multiplicity::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Multiplicity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "inf" | "∞" | "infinity" => Ok(Multiplicity::Infinite),
            _ => s
                .parse::<u64>()
                .map_err(|_| Error::InvalidMultiplicity(s.to_string()))
                .and_then(Multiplicity::finite),
        }
    }
}

/// Whether every prime exponent of `|n|` is at least `m`.
pub fn is_n_powerful(n: i128, m: Multiplicity) -> Result<bool> {
    if n == 0 {
        return Err(Error::NonPositive(0));
    }
    let abs = n.unsigned_abs();
    if abs == 1 {
        return Ok(true);
    }
    let m = match m {
        Multiplicity::Infinite => return Ok(false),
        Multiplicity::Finite(1) => return Ok(true),
        Multiplicity::Finite(m) => m,
    };
    let abs = u64::try_from(abs).map_err(|_| Error::Overflow)?;
    Ok(factorize(abs)?
        .factors()
        .iter()
        .all(|&(_, e)| e as u64 >= m))
}

/// A point of projective space over Q in primitive integer coordinates whose
/// first nonzero coordinate is positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectivePoint {
    coords: Vec<i64>,
}

impl ProjectivePoint {
    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    /// Projective dimension r for a point with r + 1 coordinates.
    pub fn dimension(&self) -> usize {
        self.coords.len() - 1
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(":")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

pub fn canonicalize(coords: &[i64]) -> Result<ProjectivePoint> {
    let g = coords
        .iter()
        .fold(0u64, |g, &x| g.gcd(&x.unsigned_abs()));
    if g == 0 {
        return Err(Error::ZeroVector);
    }
    let first = coords.iter().copied().find(|&x| x != 0).unwrap_or(1);
    let sign: i128 = if first < 0 { -1 } else { 1 };
    let coords = coords
        .iter()
        .map(|&x| {
            let y = sign * (x as i128 / g as i128);
            i64::try_from(y).map_err(|_| Error::Overflow)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ProjectivePoint { coords })
}

/// Reduced rational number with positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExactRational(BigRational);

impl ExactRational {
    pub fn new(numerator: i64, denominator: i64) -> Self {
        assert!(denominator != 0, "zero denominator");
        ExactRational(BigRational::new(numerator.into(), denominator.into()))
    }

    pub fn from_integer(n: i64) -> Self {
        ExactRational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        ExactRational(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactRational(BigRational::one())
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn signum(&self) -> Ordering {
        self.0.cmp(&BigRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl From<BigRational> for ExactRational {
    fn from(r: BigRational) -> Self {
        ExactRational(r)
    }
}

impl Add for ExactRational {
    type Output = ExactRational;
    fn add(self, rhs: Self) -> Self {
        ExactRational(self.0 + rhs.0)
    }
}

impl Sub for ExactRational {
    type Output = ExactRational;
    fn sub(self, rhs: Self) -> Self {
        ExactRational(self.0 - rhs.0)
    }
}

impl Neg for ExactRational {
    type Output = ExactRational;
    fn neg(self) -> Self {
        ExactRational(-self.0)
    }
}

impl std::iter::Sum for ExactRational {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(ExactRational::zero(), Add::add)
    }
}

/// Prints `p/q`, or just `p` when the denominator is 1.
impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Sieve of smallest prime factors, for fast radicals and factorizations of
/// every integer up to a bound.
#[derive(Clone, Debug)]
pub struct SmallestFactorSieve {
    spf: Vec<u32>,
}

impl SmallestFactorSieve {
    pub fn new(limit: u32) -> Self {
        let n = limit as usize;
        let mut spf = vec![0u32; n + 1];
        for i in 2..=n {
            if spf[i] == 0 {
                let mut j = i;
                while j <= n {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
        }
        SmallestFactorSieve { spf }
    }

    pub fn limit(&self) -> u32 {
        (self.spf.len() - 1) as u32
    }

    pub fn radical(&self, n: u32) -> u64 {
        let mut rest = n;
        let mut rad = 1u64;
        while rest > 1 {
            let p = self.spf[rest as usize];
            rad *= p as u64;
            while rest.is_multiple_of(p) {
                rest /= p;
            }
        }
        rad
    }

    /// Distinct prime factors of `n`, ascending.
    pub fn distinct_primes(&self, n: u32) -> impl Iterator<Item = u64> + '_ {
        let mut rest = n;
        std::iter::from_fn(move || {
            if rest <= 1 {
                return None;
            }
            let p = self.spf[rest as usize];
            while rest.is_multiple_of(p) {
                rest /= p;
            }
            Some(p as u64)
        })
    }

    /// Radicals of `0..=limit` (index 0 holds 0).
    pub fn radicals(&self) -> Vec<u64> {
        let mut rad = vec![1u64; self.spf.len()];
        rad[0] = 0;
        for n in 2..self.spf.len() {
            let p = self.spf[n] as usize;
            let m = n / p;
            rad[n] = if m.is_multiple_of(p) { rad[m] } else { rad[m] * p as u64 };
        }
        rad
    }
}

/// All `m`-powerful positive integers up to `limit`, ascending.
pub fn powerful_numbers_up_to(limit: u64, m: Multiplicity) -> Vec<u64> {
    match m {
        Multiplicity::Infinite => return if limit >= 1 { vec![1] } else { vec![] },
        Multiplicity::Finite(1) => return (1..=limit).collect(),
        Multiplicity::Finite(_) => {}
    }
    let m = m.as_finite().unwrap();
    let mut out = vec![];
    // Every m-powerful number is a product of p^e with e >= m; extend
    // prime by prime over primes with p^m <= limit.
    let mut primes = vec![];
    let mut p = 2u64;
    while p.checked_pow(m as u32).is_some_and(|q| q <= limit) {
        if is_prime(p) {
            primes.push(p);
        }
        p += 1;
    }
    fn extend(start: usize, acc: u64, limit: u64, m: u32, primes: &[u64], out: &mut Vec<u64>) {
        out.push(acc);
        for (i, &p) in primes.iter().enumerate().skip(start) {
            let Some(mut q) = p.checked_pow(m).and_then(|q| acc.checked_mul(q)) else {
                break;
            };
            if q > limit {
                break;
            }
            loop {
                extend(i + 1, q, limit, m, primes, out);
                match q.checked_mul(p) {
                    Some(next) if next <= limit => q = next,
                    _ => break,
                }
            }
        }
    }
    if limit >= 1 {
        extend(0, 1, limit, m as u32, &primes, &mut out);
    }
    out.sort_unstable();
    out
}
