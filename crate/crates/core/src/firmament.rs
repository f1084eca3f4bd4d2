//! Toroidal firmaments on a single affine chart `σ = ℝ^d_{≥0}`.
//!
//! A firmament is a finite irredundant collection of submonoids of ℕ^d. The
//! multiplicity it assigns to a lattice point `n` is the least `k ≥ 1` with
//! `k·n` in one of the monoids, and the supported constellation puts
//! coefficient `1 - 1/m` on each ray.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::monoid::{self, LatticeMonoid};
use crate::number::{is_prime, ExactRational, Multiplicity};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Firmament {
    dim: usize,
    monoids: Vec<LatticeMonoid>,
    partial: bool,
}

impl Firmament {
    /// Builds a firmament, keeping only the maximal monoids of the
    /// collection (the first of any equal pair survives).
    pub fn new(dim: usize, monoids: Vec<LatticeMonoid>) -> Result<Self> {
        if monoids.is_empty() {
            return Err(Error::EmptyMonoid);
        }
        for m in &monoids {
            if m.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: m.dim(),
                });
            }
        }
        let mut kept: Vec<LatticeMonoid> = Vec::with_capacity(monoids.len());
        for (i, m) in monoids.iter().enumerate() {
            let dominated = monoids.iter().enumerate().any(|(j, other)| {
                j != i
                    && other.contains(m).unwrap_or(false)
                    && (!m.contains(other).unwrap_or(false) || j < i)
            });
            if !dominated {
                kept.push(m.clone());
            }
        }
        let partial = kept.iter().any(|m| !m.is_full_rank());
        Ok(Firmament {
            dim,
            monoids: kept,
            partial,
        })
    }

    /// The trivial firmament `{ℕ^d}`.
    pub fn trivial(dim: usize) -> Self {
        Firmament {
            dim,
            monoids: vec![LatticeMonoid::full(dim)],
            partial: false,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn monoids(&self) -> &[LatticeMonoid] {
        &self.monoids
    }

    /// Set when some monoid does not span a full-dimensional cone.
    pub fn is_partial(&self) -> bool {
        self.partial
    }

    pub fn is_trivial(&self) -> bool {
        self.monoids
            .iter()
            .any(|m| m.contains(&LatticeMonoid::full(self.dim)).unwrap_or(false))
    }

    pub fn member(&self, v: &[u64]) -> Result<bool> {
        self.check_dim(v.len())?;
        Ok(self.monoids.iter().any(|m| m.member_unchecked(v)))
    }

    fn check_dim(&self, found: usize) -> Result<()> {
        if found != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found,
            });
        }
        Ok(())
    }

    /// Equality of the underlying collections of monoids as sets.
    pub fn same_as(&self, other: &Firmament) -> bool {
        self.dim == other.dim
            && self.monoids.len() == other.monoids.len()
            && self
                .monoids
                .iter()
                .all(|m| other.monoids.iter().any(|o| o.same_monoid(m)))
    }

    /// Restriction to the coordinate face spanned by `face` (the other
    /// coordinates are set to zero), expressed in ℕ^{|face|}. Returns `None`
    /// when no monoid meets the face away from the origin.
    pub fn face_view(&self, face: &[usize]) -> Result<Option<Firmament>> {
        if let Some(&bad) = face.iter().find(|&&i| i >= self.dim) {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: bad + 1,
            });
        }
        let restricted: Vec<LatticeMonoid> = self
            .monoids
            .iter()
            .filter_map(|m| {
                // A nonnegative combination lies on the face iff every
                // generator it uses does.
                let gens: Vec<Vec<u64>> = m
                    .generators()
                    .iter()
                    .filter(|g| g.iter().enumerate().all(|(i, &x)| x == 0 || face.contains(&i)))
                    .map(|g| face.iter().map(|&i| g[i]).collect())
                    .collect();
                LatticeMonoid::new(face.len(), gens).ok()
            })
            .collect();
        if restricted.is_empty() {
            return Ok(None);
        }
        Firmament::new(face.len(), restricted).map(Some)
    }
}

/// Plain-text form: a `dim d` header, then one line per monoid of the form
/// `d; (g1) (g2) ...`.
impl fmt::Display for Firmament {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "dim {}", self.dim)?;
        for m in &self.monoids {
            writeln!(f, "{}; {}", self.dim, m)?;
        }
        Ok(())
    }
}

impl FromStr for Firmament {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (n, header) = lines.next().ok_or_else(|| Error::parse(1, "missing `dim d` header"))?;
        let dim: usize = header
            .strip_prefix("dim")
            .and_then(|d| d.trim().parse().ok())
            .filter(|&d| d > 0)
            .ok_or_else(|| Error::parse(n, "expected `dim d` with d >= 1"))?;
        let mut monoids = vec![];
        for (n, line) in lines {
            let (head, body) = line
                .split_once(';')
                .ok_or_else(|| Error::parse(n, "expected `d; (..) (..)`"))?;
            let d: usize = head
                .trim()
                .parse()
                .map_err(|_| Error::parse(n, "bad dimension prefix"))?;
            if d != dim {
                return Err(Error::parse(n, format!("monoid dimension {d} differs from header {dim}")));
            }
            let gens = parse_vectors(body).map_err(|msg| Error::parse(n, msg))?;
            let m = LatticeMonoid::new(dim, gens).map_err(|e| Error::parse(n, e.to_string()))?;
            monoids.push(m);
        }
        if monoids.is_empty() {
            return Err(Error::parse(n, "no monoids listed"));
        }
        Firmament::new(dim, monoids)
    }
}

/// Parses whitespace-separated vectors such as `(2,0) (1,1)`; a bare
/// integer is accepted as a one-dimensional vector.
pub fn parse_vectors(s: &str) -> std::result::Result<Vec<Vec<u64>>, String> {
    let mut out = vec![];
    let mut rest = s.trim();
    while !rest.is_empty() {
        if let Some(inner) = rest.strip_prefix('(') {
            let close = inner.find(')').ok_or("unclosed `(`")?;
            out.push(parse_vector(&inner[..close])?);
            rest = inner[close + 1..].trim_start();
        } else {
            let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
            out.push(parse_vector(&rest[..end])?);
            rest = rest[end..].trim_start();
        }
    }
    Ok(out)
}

pub fn parse_vector(s: &str) -> std::result::Result<Vec<u64>, String> {
    s.trim()
        .trim_start_matches('(')
        .trim_end_matches(')')
        .split(',')
        .map(|x| {
            x.trim()
                .parse::<u64>()
                .map_err(|_| format!("bad coordinate {:?}", x.trim()))
        })
        .collect()
}

/// Matrix of monomial exponents of a toric map `ℕ^{d_X} → ℕ^{d_Y}`: column
/// `j` is the image of the `j`-th source basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentMap {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<u64>>,
}

impl ExponentMap {
    /// Row-major entries, `entries[i][j]` = exponent of source variable `j`
    /// in target monomial `i`.
    pub fn from_rows(entries: Vec<Vec<u64>>) -> Result<Self> {
        let rows = entries.len();
        let cols = entries.first().map_or(0, |r| r.len());
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyMonoid);
        }
        if let Some(r) = entries.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: cols,
                found: r.len(),
            });
        }
        if let Some(j) = (0..cols).find(|&j| entries.iter().all(|r| r[j] == 0)) {
            return Err(Error::ZeroColumn(j));
        }
        Ok(ExponentMap { rows, cols, entries })
    }

    pub fn from_columns(columns: Vec<Vec<u64>>) -> Result<Self> {
        let rows = columns.first().map_or(0, |c| c.len());
        if let Some(c) = columns.iter().find(|c| c.len() != rows) {
            return Err(Error::DimensionMismatch {
                expected: rows,
                found: c.len(),
            });
        }
        let entries = (0..rows).map(|i| columns.iter().map(|c| c[i]).collect()).collect();
        ExponentMap::from_rows(entries)
    }

    pub fn target_dim(&self) -> usize {
        self.rows
    }

    pub fn source_dim(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        self.entries.iter().map(|r| r[j]).collect()
    }

    pub fn apply(&self, v: &[u64]) -> Result<Vec<u64>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        self.entries
            .iter()
            .map(|r| {
                r.iter().zip(v).try_fold(0u64, |acc, (&a, &x)| {
                    a.checked_mul(x).and_then(|p| acc.checked_add(p)).ok_or(Error::Overflow)
                })
            })
            .collect()
    }

    /// The image monoid `f(ℕ^{d_X})`.
    pub fn image(&self) -> LatticeMonoid {
        LatticeMonoid::new(self.rows, (0..self.cols).map(|j| self.column(j)))
            .expect("columns are nonzero")
            .minimalized()
    }
}

/// The firmament generated by the images of the source cones, one per map,
/// reduced to its maximal elements.
pub fn base_firmament(maps: &[ExponentMap]) -> Result<Firmament> {
    let dim = maps.first().ok_or(Error::EmptyMonoid)?.target_dim();
    if let Some(m) = maps.iter().find(|m| m.target_dim() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: m.target_dim(),
        });
    }
    Firmament::new(dim, maps.iter().map(ExponentMap::image).collect())
}

pub fn multiplicity_at(firmament: &Firmament, n: &[u64]) -> Result<u64> {
    monoid::min_multiple(&firmament.monoids, n)
}

pub fn supported_constellation(
    firmament: &Firmament,
    rays: &[Vec<u64>],
) -> Result<Vec<(Vec<u64>, ExactRational)>> {
    rays.iter()
        .map(|ray| {
            let m = multiplicity_at(firmament, ray)?;
            Ok((ray.clone(), Multiplicity::Finite(m).delta()))
        })
        .collect()
}

/// Whether `f` maps every monoid of `source` into a single monoid of `target`.
pub fn morphism_check(f: &ExponentMap, source: &Firmament, target: &Firmament) -> Result<bool> {
    source.check_dim(f.source_dim())?;
    target.check_dim(f.target_dim())?;
    for m in source.monoids() {
        let images = m
            .generators()
            .iter()
            .map(|g| f.apply(g))
            .collect::<Result<Vec<_>>>()?;
        let lands = target
            .monoids()
            .iter()
            .any(|t| images.iter().all(|v| t.member_unchecked(v)));
        if !lands {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Membership of `v` in the firmament induced on the source of `f`.
pub fn induced_membership(f: &ExponentMap, target: &Firmament, v: &[u64]) -> Result<bool> {
    target.check_dim(f.target_dim())?;
    target.member(&f.apply(v)?)
}

/// Membership of every source vector in the box `[0, side]^{d_X}` in the
/// induced firmament, in lexicographic order.
pub fn induced_membership_grid(f: &ExponentMap, target: &Firmament, side: u64) -> Result<Vec<(Vec<u64>, bool)>> {
    let d = f.source_dim();
    let mut out = vec![];
    let mut v = vec![0u64; d];
    loop {
        out.push((v.clone(), induced_membership(f, target, &v)?));
        let Some(i) = (0..d).rev().find(|&i| v[i] < side) else {
            return Ok(out);
        };
        v[i] += 1;
        v[i + 1..].iter_mut().for_each(|x| *x = 0);
    }
}

/// Reduction of a point at a prime: the lattice point recording the
/// valuations of the boundary monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionDatum {
    prime: u64,
    stratum_point: Vec<u64>,
}

impl ReductionDatum {
    pub fn new(prime: u64, stratum_point: Vec<u64>) -> Result<Self> {
        if !is_prime(prime) {
            return Err(Error::NotPrime(prime));
        }
        Ok(ReductionDatum { prime, stratum_point })
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn stratum_point(&self) -> &[u64] {
        &self.stratum_point
    }
}

/// True iff every reduction lands in some monoid of the firmament.
pub fn firm_integral_test(firmament: &Firmament, reductions: &[ReductionDatum]) -> Result<bool> {
    for r in reductions {
        if !firmament.member(&r.stratum_point)? {
            return Ok(false);
        }
    }
    Ok(true)
}
