//! Each subcommand computes its rows in full, then renders them; nothing is
//! written while workers are still running.

use campana::monoid::min_multiple_with_cap;
use campana::{
    abc_scan, arithmetic_prediction, classify, enumerate_soft_points, is_soft_integral_general,
    minimal_general_type_profiles, radical, vojta_gap_trace, DeltaSupport3, Error, Firmament, GeneralDelta,
    Multiplicity, MultiplicityProfile, P1Point,
};
use num_integer::Integer;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::config::{Command, Format, RunConfig};
use crate::CliError;

/// Rendered output plus whether any row was flagged.
pub struct Output {
    pub text: String,
    pub flagged: usize,
}

fn round9<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    let rounded: f64 = format!("{x:.9}").parse().unwrap_or(*x);
    s.serialize_f64(rounded)
}

trait Row: Serialize {
    fn header() -> &'static [&'static str];
    fn cells(&self) -> Vec<String>;
}

fn render<R: Row>(rows: &[R], format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Tsv => {
            out.push_str(&R::header().join("\t"));
            out.push('\n');
            for r in rows {
                out.push_str(&r.cells().join("\t"));
                out.push('\n');
            }
        }
        Format::Jsonl => {
            for r in rows {
                out.push_str(&serde_json::to_string(r).expect("rows serialize"));
                out.push('\n');
            }
        }
    }
    out
}

pub fn run(config: &RunConfig) -> Result<Output, CliError> {
    let format = config.format;
    let text = match &config.command {
        Command::Classify { profiles } => render(&classify_rows(profiles)?, format),
        Command::Enumerate { delta, positive } => {
            render(&enumerate_rows(delta, config.height_bound, *positive, &config.primes)?, format)
        }
        Command::Firmament { file, rays } => {
            let rows = firmament_rows(file, rays, config.multiple_cap)?;
            let flagged = rows.iter().filter(|r| r.m.is_none()).count();
            return Ok(Output {
                text: render(&rows, format),
                flagged,
            });
        }
        Command::AbcScan { min_quality } => render(&abc_rows(config.height_bound, *min_quality)?, format),
        Command::VojtaGap { eps_prime } => render(&gap_rows(config.height_bound, *eps_prime)?, format),
        Command::MinimalProfiles { max_marks, max_mult } => render(&minimal_rows(*max_marks, *max_mult), format),
    };
    Ok(Output { text, flagged: 0 })
}

#[derive(Serialize)]
struct ClassifyRow {
    profile: String,
    degree: String,
    kappa: String,
    general_type: bool,
    prediction: String,
    established: bool,
    torsion_caveat: bool,
}

impl Row for ClassifyRow {
    fn header() -> &'static [&'static str] {
        &["profile", "degree", "kappa", "prediction"]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.profile.clone(),
            self.degree.clone(),
            self.kappa.clone(),
            self.prediction.clone(),
        ]
    }
}

fn classify_rows(profiles: &[String]) -> Result<Vec<ClassifyRow>, CliError> {
    profiles
        .iter()
        .map(|text| {
            let profile: MultiplicityProfile = text.parse().map_err(|e| CliError::input(text, e))?;
            let class = classify(&profile);
            let prediction = arithmetic_prediction(&profile);
            Ok(ClassifyRow {
                profile: profile.to_string(),
                degree: class.degree.to_string(),
                kappa: class.kappa.to_string(),
                general_type: class.general_type,
                prediction: prediction.kind.to_string(),
                established: prediction.established,
                torsion_caveat: class.torsion_caveat,
            })
        })
        .collect()
}

#[derive(Serialize)]
struct PointRow {
    a: i64,
    c: i64,
    b: i128,
    soft: bool,
    #[serde(rename = "M")]
    height: u128,
    rad: u64,
}

impl Row for PointRow {
    fn header() -> &'static [&'static str] {
        &["a", "c", "b", "soft", "M", "rad"]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.a.to_string(),
            self.c.to_string(),
            self.b.to_string(),
            self.soft.to_string(),
            self.height.to_string(),
            self.rad.to_string(),
        ]
    }
}

fn point_row(p: &P1Point) -> Result<PointRow, CliError> {
    let b = p.b();
    let abs_b = u64::try_from(b.unsigned_abs()).map_err(|_| Error::Overflow)?;
    // a, b and c are pairwise coprime
    let rad = [p.a().unsigned_abs(), abs_b, p.c().unsigned_abs()]
        .into_iter()
        .try_fold(1u64, |acc, x| acc.checked_mul(radical(x)?).ok_or(Error::Overflow))?;
    Ok(PointRow {
        a: p.a(),
        c: p.c(),
        b,
        soft: true,
        height: (p.a().unsigned_abs() as u128).max(b.unsigned_abs()).max(p.c() as u128),
        rad,
    })
}

fn enumerate_rows(delta: &DeltaSupport3, max: u64, positive: bool, primes: &[u64]) -> Result<Vec<PointRow>, CliError> {
    let points = if primes.is_empty() {
        enumerate_soft_points(delta, max, positive)
    } else {
        enumerate_outside(delta, max, positive, primes)?
    };
    points.iter().map(point_row).collect()
}

/// With primes waived the candidates are no longer powerful numbers, so
/// every coprime pair in range is tested.
fn enumerate_outside(delta: &DeltaSupport3, max: u64, positive: bool, primes: &[u64]) -> Result<Vec<P1Point>, CliError> {
    let general = GeneralDelta::new(delta.to_general().support().to_vec(), primes.to_vec())?;
    let max = i64::try_from(max).map_err(|_| Error::Overflow)?;
    let per_c: Vec<Result<Vec<P1Point>, Error>> = (1..=max)
        .into_par_iter()
        .map(|c| {
            let lo = if positive { 1 } else { -max };
            let hi = if positive { c - 1 } else { max };
            let mut out = vec![];
            for a in lo..=hi {
                if a == 0 || a == c || a.unsigned_abs().gcd(&(c as u64)) != 1 {
                    continue;
                }
                let p = P1Point::new(a, c)?;
                if is_soft_integral_general(&p, &general)? {
                    out.push(p);
                }
            }
            Ok(out)
        })
        .collect();
    let mut points = vec![];
    for chunk in per_c {
        points.extend(chunk?);
    }
    Ok(points)
}

#[derive(Serialize)]
struct RayRow {
    ray: Vec<u64>,
    m: Option<u64>,
    delta: Option<String>,
    unsupported: bool,
}

impl Row for RayRow {
    fn header() -> &'static [&'static str] {
        &["ray", "m", "delta"]
    }

    fn cells(&self) -> Vec<String> {
        let ray = self.ray.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        match (&self.m, &self.delta) {
            (Some(m), Some(d)) => vec![ray, m.to_string(), d.clone()],
            _ => vec![ray, "-".into(), "unsupported".into()],
        }
    }
}

fn firmament_rows(path: &std::path::Path, rays: &[Vec<u64>], cap: u64) -> Result<Vec<RayRow>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    let firmament: Firmament = text
        .parse()
        .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    rays.iter()
        .map(|ray| match min_multiple_with_cap(firmament.monoids(), ray, cap) {
            Ok(m) => Ok(RayRow {
                ray: ray.clone(),
                m: Some(m),
                delta: Some(Multiplicity::Finite(m).delta().to_string()),
                unsupported: false,
            }),
            Err(Error::RayUnsupported(_)) => Ok(RayRow {
                ray: ray.clone(),
                m: None,
                delta: None,
                unsupported: true,
            }),
            Err(e @ Error::DimensionMismatch { .. }) => Err(CliError::input(&format!("{ray:?}"), e)),
            Err(e) => Err(e.into()),
        })
        .collect()
}

#[derive(Serialize)]
struct AbcRow {
    a: u64,
    b: u64,
    c: u64,
    rad: u64,
    #[serde(serialize_with = "round9")]
    quality: f64,
}

impl Row for AbcRow {
    fn header() -> &'static [&'static str] {
        &["a", "b", "c", "rad", "quality"]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.a.to_string(),
            self.b.to_string(),
            self.c.to_string(),
            self.rad.to_string(),
            format!("{:.9}", self.quality),
        ]
    }
}

fn abc_rows(max_c: u64, min_quality: f64) -> Result<Vec<AbcRow>, CliError> {
    Ok(abc_scan(max_c, min_quality)?
        .into_iter()
        .map(|h| AbcRow {
            a: h.a,
            b: h.b,
            c: h.c,
            rad: h.rad,
            quality: h.quality,
        })
        .collect())
}

#[derive(Serialize)]
struct GapRow {
    a: u64,
    b: u64,
    c: u64,
    #[serde(serialize_with = "round9")]
    gap: f64,
}

impl Row for GapRow {
    fn header() -> &'static [&'static str] {
        &["a", "b", "c", "gap"]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.a.to_string(),
            self.b.to_string(),
            self.c.to_string(),
            format!("{:.9}", self.gap),
        ]
    }
}

fn gap_rows(max_c: u64, eps_prime: f64) -> Result<Vec<GapRow>, CliError> {
    Ok(vojta_gap_trace(eps_prime, max_c)?
        .into_iter()
        .map(|r| GapRow {
            a: r.a,
            b: r.b,
            c: r.c,
            gap: r.gap,
        })
        .collect())
}

#[derive(Serialize)]
struct ProfileRow {
    profile: String,
    degree: String,
}

impl Row for ProfileRow {
    fn header() -> &'static [&'static str] {
        &["profile", "degree"]
    }

    fn cells(&self) -> Vec<String> {
        vec![self.profile.clone(), self.degree.clone()]
    }
}

fn minimal_rows(max_marks: usize, max_mult: u64) -> Vec<ProfileRow> {
    minimal_general_type_profiles(max_marks, max_mult)
        .into_iter()
        .map(|mults| {
            let profile = MultiplicityProfile::unlabelled(0, mults.into_iter().map(Multiplicity::Finite));
            ProfileRow {
                profile: profile.to_string(),
                degree: classify(&profile).degree.to_string(),
            }
        })
        .collect()
}
