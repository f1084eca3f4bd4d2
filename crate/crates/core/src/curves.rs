//! Constellation curves `(Y/Δ)` with `Δ = Σ (1 - 1/m_p) p`.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::number::{ExactRational, Multiplicity};

/// Genus plus labelled marked points with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityProfile {
    genus: u64,
    marks: Vec<(String, Multiplicity)>,
}

impl MultiplicityProfile {
    pub fn new(genus: u64, marks: Vec<(String, Multiplicity)>) -> Result<Self> {
        let mut seen = HashSet::new();
        for (label, m) in &marks {
            if *m == Multiplicity::Finite(0) {
                return Err(Error::InvalidMultiplicity("0".into()));
            }
            if !seen.insert(label.as_str()) {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        Ok(MultiplicityProfile { genus, marks })
    }

    /// Profile with marks labelled `p1, p2, ...`.
    pub fn unlabelled(genus: u64, mults: impl IntoIterator<Item = Multiplicity>) -> Self {
        let marks = mults
            .into_iter()
            .enumerate()
            .map(|(i, m)| (format!("p{}", i + 1), m))
            .collect();
        MultiplicityProfile::new(genus, marks).expect("generated labels are unique")
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }

    pub fn marks(&self) -> &[(String, Multiplicity)] {
        &self.marks
    }

    pub fn multiplicities(&self) -> impl Iterator<Item = Multiplicity> + '_ {
        self.marks.iter().map(|(_, m)| *m)
    }

    /// All marks have multiplicity 1 or ∞, i.e. the profile is a plain
    /// curve with a reduced boundary.
    pub fn is_classical(&self) -> bool {
        self.multiplicities()
            .all(|m| m == Multiplicity::ONE || m.is_infinite())
    }
}

/// Compact form `g=0;m=2,3,7` (labels are not printed).
impl fmt::Display for MultiplicityProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g={};m=", self.genus)?;
        for (i, m) in self.multiplicities().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

impl FromStr for MultiplicityProfile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (g_part, m_part) = s
            .split_once(';')
            .ok_or_else(|| Error::parse(0, "expected `g=<genus>;m=<list>`"))?;
        let genus = g_part
            .trim()
            .strip_prefix("g=")
            .ok_or_else(|| Error::parse(0, "expected `g=`"))?
            .trim()
            .parse::<u64>()
            .map_err(|_| Error::parse(2, "genus must be a nonnegative integer"))?;
        let m_start = g_part.len() + 1;
        let offset = m_part.len() - m_part.trim_start().len();
        let list = m_part
            .trim()
            .strip_prefix("m=")
            .ok_or_else(|| Error::parse(m_start + offset, "expected `m=`"))?;
        let mut pos = m_start + offset + 2;
        let mut mults = vec![];
        if !list.trim().is_empty() {
            for item in list.split(',') {
                let m = item
                    .parse::<Multiplicity>()
                    .map_err(|_| Error::parse(pos, format!("bad multiplicity {:?}", item.trim())))?;
                mults.push(m);
                pos += item.len() + 1;
            }
        }
        Ok(MultiplicityProfile::unlabelled(genus, mults))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kappa {
    Negative,
    Zero,
    One,
}

impl fmt::Display for Kappa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kappa::Negative => "negative",
            Kappa::Zero => "zero",
            Kappa::One => "one",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KodairaClass {
    pub degree: ExactRational,
    pub kappa: Kappa,
    pub general_type: bool,
    /// Degree zero on a curve of positive genus with nontrivial marks: the
    /// class of `K + Δ` need not be torsion, so `kappa = zero` is only the
    /// expected value.
    pub torsion_caveat: bool,
}

/// `2g - 2 + Σ (1 - 1/m_i)`, with `1 - 1/∞ = 1`.
pub fn constellation_degree(profile: &MultiplicityProfile) -> ExactRational {
    let base = ExactRational::from_integer(2 * profile.genus as i64 - 2);
    base + profile.multiplicities().map(Multiplicity::delta).sum()
}

pub fn classify(profile: &MultiplicityProfile) -> KodairaClass {
    let degree = constellation_degree(profile);
    let kappa = match degree.signum() {
        std::cmp::Ordering::Less => Kappa::Negative,
        std::cmp::Ordering::Equal => Kappa::Zero,
        std::cmp::Ordering::Greater => Kappa::One,
    };
    let torsion_caveat = kappa == Kappa::Zero
        && profile.genus >= 1
        && profile.multiplicities().any(|m| m > Multiplicity::ONE);
    KodairaClass {
        degree,
        kappa,
        general_type: kappa == Kappa::One,
        torsion_caveat,
    }
}

/// Per label, the constellation multiplicity `m_p = min_i m_i` over the
/// fiber component multiplicities.
pub fn delta_from_fibers(fibers: &[(String, Vec<u64>)]) -> Result<Vec<(String, Multiplicity)>> {
    let mut seen = HashSet::new();
    fibers
        .iter()
        .map(|(label, mults)| {
            if !seen.insert(label.as_str()) {
                return Err(Error::DuplicateLabel(label.clone()));
            }
            let m = *mults.iter().min().ok_or_else(|| Error::EmptyFiber(label.clone()))?;
            Ok((label.clone(), Multiplicity::finite(m)?))
        })
        .collect()
}

fn finite_degree(mults: &[u64]) -> ExactRational {
    ExactRational::from_integer(-2) + mults.iter().map(|&m| Multiplicity::Finite(m).delta()).sum()
}

/// Minimal general-type multiplicity multisets on ℙ¹ with at most
/// `max_marks` marks and entries in `2..=max_mult`, sorted ascending inside
/// each profile and lexicographically overall.
///
/// A profile is minimal when each single-step weakening (lower one entry
/// by one, or drop an entry equal to 2) is special. Degree is monotone in
/// every entry, so only prefixes that are still special are extended, and
/// the last entry is the least value making the profile general type.
pub fn minimal_general_type_profiles(max_marks: usize, max_mult: u64) -> Vec<Vec<u64>> {
    fn extend(prefix: &mut Vec<u64>, max_marks: usize, max_mult: u64, out: &mut Vec<Vec<u64>>) {
        if prefix.len() == max_marks {
            return;
        }
        let low = prefix.last().copied().unwrap_or(2);
        for m in low..=max_mult {
            prefix.push(m);
            let general = finite_degree(prefix).is_positive();
            if general {
                if is_minimal(prefix) {
                    out.push(prefix.clone());
                }
                prefix.pop();
                // larger last entries only weaken to this one
                break;
            }
            extend(prefix, max_marks, max_mult, out);
            prefix.pop();
        }
    }
    let mut out = vec![];
    extend(&mut vec![], max_marks, max_mult, &mut out);
    out.sort();
    out
}

/// Every single-step weakening of `mults` (entries ≥ 2) as a sorted list.
pub fn single_step_weakenings(mults: &[u64]) -> Vec<Vec<u64>> {
    let mut out = vec![];
    for i in 0..mults.len() {
        let mut w = mults.to_vec();
        if w[i] > 2 {
            w[i] -= 1;
        } else {
            w.remove(i);
        }
        w.sort_unstable();
        if !out.contains(&w) {
            out.push(w);
        }
    }
    out
}

fn is_minimal(mults: &[u64]) -> bool {
    single_step_weakenings(mults)
        .iter()
        .all(|w| !finite_degree(w).is_positive())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IitakaDimension {
    One,
    Zero,
    Negative,
}

/// Iitaka dimension of a line bundle on a curve from its degree.
pub fn curve_iitaka_dimension(degree: i64, is_torsion: bool) -> Result<IitakaDimension> {
    if degree != 0 && is_torsion {
        return Err(Error::InconsistentTorsion);
    }
    Ok(match degree {
        d if d > 0 => IitakaDimension::One,
        0 if is_torsion => IitakaDimension::Zero,
        _ => IitakaDimension::Negative,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PredictionKind {
    PotentiallyDense,
    ConjecturallyNotDense,
}

impl fmt::Display for PredictionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PredictionKind::PotentiallyDense => "potentially_dense",
            PredictionKind::ConjecturallyNotDense => "conjecturally_not_dense",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Prediction {
    pub kind: PredictionKind,
    /// Known unconditionally: classical profiles (all marks 1 or ∞), where
    /// finiteness is the Faltings/Siegel theorem and density is classical.
    /// For genuine constellations the finite direction is conjectural.
    pub established: bool,
}

pub fn arithmetic_prediction(profile: &MultiplicityProfile) -> Prediction {
    let kind = if classify(profile).general_type {
        PredictionKind::ConjecturallyNotDense
    } else {
        PredictionKind::PotentiallyDense
    };
    Prediction {
        kind,
        established: profile.is_classical(),
    }
}
