//! Flag and config-file resolution into a [`RunConfig`].

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use campana::DeltaSupport3;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::CliError;

#[derive(Parser, Debug)]
#[command(name = "campana", version, about = "Exact computations with Campana constellations over Q")]
pub struct Cli {
    /// Plain `key = value` file supplying defaults for any flag.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Worker threads for scans; output does not depend on this.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[command(subcommand)]
    pub command: CommandArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Jsonl,
}

#[derive(Subcommand, Debug)]
pub enum CommandArgs {
    /// Degree, Kodaira dimension and density prediction of curve profiles.
    Classify(ClassifyArgs),
    /// Soft integral points on P^1 for a divisor at 0, 1 and infinity.
    Enumerate(EnumerateArgs),
    /// Multiplicities and deltas of a firmament along rays.
    Firmament(FirmamentArgs),
    /// Coprime triples a + b = c ordered by abc quality.
    AbcScan(AbcScanArgs),
    /// Running maximum of the Vojta gap over abc triples.
    VojtaGap(VojtaGapArgs),
    /// Minimal general-type multiplicity profiles on P^1.
    MinimalProfiles(MinimalProfilesArgs),
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    /// Profiles such as `g=0;m=2,3,7` or `g=1;m=inf`.
    pub profiles: Vec<String>,
}

#[derive(Args, Debug)]
pub struct EnumerateArgs {
    /// Multiplicities at 0, 1 and infinity, e.g. `2,2,2` or `inf,2,3`.
    #[arg(long)]
    pub delta: Option<String>,
    /// Height bound M on the denominator and |a|.
    #[arg(long)]
    pub max: Option<u64>,
    /// Only points with 0 < a < c.
    #[arg(long)]
    pub positive: bool,
    /// Primes S where the conditions are waived, e.g. `2,3`.
    #[arg(long)]
    pub primes: Option<String>,
}

#[derive(Args, Debug)]
pub struct FirmamentArgs {
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// A ray such as `1,0`; repeatable.
    #[arg(long = "ray")]
    pub rays: Vec<String>,
    /// Largest multiple tried before giving up.
    #[arg(long)]
    pub cap: Option<u64>,
}

#[derive(Args, Debug)]
pub struct AbcScanArgs {
    #[arg(long)]
    pub max_c: Option<u64>,
    #[arg(long)]
    pub min_quality: Option<f64>,
}

#[derive(Args, Debug)]
pub struct VojtaGapArgs {
    #[arg(long)]
    pub eps_prime: Option<f64>,
    #[arg(long)]
    pub max_c: Option<u64>,
}

#[derive(Args, Debug)]
pub struct MinimalProfilesArgs {
    #[arg(long)]
    pub max_marks: Option<usize>,
    #[arg(long)]
    pub max_mult: Option<u64>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Command {
    Classify { profiles: Vec<String> },
    Enumerate { delta: DeltaSupport3, positive: bool },
    Firmament { file: PathBuf, rays: Vec<Vec<u64>> },
    AbcScan { min_quality: f64 },
    VojtaGap { eps_prime: f64 },
    MinimalProfiles { max_marks: usize, max_mult: u64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    /// `--max` for enumerate, `--max-c` for the triple scans.
    pub height_bound: u64,
    pub primes: Vec<u64>,
    pub format: Format,
    pub workers: Option<usize>,
    pub multiple_cap: u64,
}

const KEYS: &[&str] = &[
    "workers",
    "format",
    "profiles",
    "delta",
    "max",
    "positive",
    "primes",
    "file",
    "rays",
    "cap",
    "max-c",
    "min-quality",
    "eps-prime",
    "max-marks",
    "max-mult",
];

/// Reads `key = value` lines; `#` starts a comment line.
pub fn read_config_file(path: &Path) -> Result<BTreeMap<String, String>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    parse_config(&text).map_err(|(line, msg)| CliError::Config(format!("{}:{line}: {msg}", path.display())))
}

pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>, (usize, String)> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or((i + 1, "expected `key = value`".to_string()))?;
        let key = k.trim().replace('_', "-");
        if !KEYS.contains(&key.as_str()) {
            return Err((i + 1, format!("unknown key {key:?}")));
        }
        if out.insert(key.clone(), v.trim().to_string()).is_some() {
            return Err((i + 1, format!("duplicate key {key:?}")));
        }
    }
    Ok(out)
}

struct Layer<'a> {
    file: &'a BTreeMap<String, String>,
}

impl Layer<'_> {
    fn get<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<Option<T>, CliError> {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.file.get(key) {
            None => Ok(None),
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|_| CliError::Config(format!("config key {key}: cannot parse {v:?}"))),
        }
    }

    fn require<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<T, CliError> {
        self.get(flag, key)?
            .ok_or_else(|| CliError::Config(format!("missing --{key} (flag or config key)")))
    }
}

fn positive<T: PartialOrd + Default + std::fmt::Display>(v: T, key: &str) -> Result<T, CliError> {
    if v > T::default() {
        Ok(v)
    } else {
        Err(CliError::Config(format!("--{key} must be positive, got {v}")))
    }
}

fn parse_primes(s: &str) -> Result<Vec<u64>, CliError> {
    let mut out = vec![];
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let p: u64 = part
            .parse()
            .map_err(|_| CliError::Config(format!("bad prime {part:?}")))?;
        if !campana::number::is_prime(p) {
            return Err(CliError::Config(format!("{p} is not prime")));
        }
        out.push(p);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

impl RunConfig {
    pub fn resolve(cli: Cli) -> Result<RunConfig, CliError> {
        let file = match &cli.config {
            Some(path) => read_config_file(path)?,
            None => BTreeMap::new(),
        };
        let layer = Layer { file: &file };
        let workers = layer.get(cli.workers, "workers")?.map(|w| positive(w, "workers")).transpose()?;
        let format_from_file = match file.get("format") {
            None => None,
            Some(v) => Some(
                Format::from_str(v, true).map_err(|_| CliError::Config(format!("config key format: {v:?}")))?,
            ),
        };
        let format = cli.format.or(format_from_file);
        let mut primes = vec![];
        let mut height_bound = 0;
        let mut multiple_cap = campana::monoid::DEFAULT_MULTIPLE_CAP;
        let (command, default_format) = match cli.command {
            CommandArgs::Classify(a) => {
                let mut profiles = a.profiles;
                if profiles.is_empty() {
                    if let Some(v) = file.get("profiles") {
                        profiles = v.split_whitespace().map(String::from).collect();
                    }
                }
                if profiles.is_empty() {
                    return Err(CliError::Config("no profiles given".into()));
                }
                (Command::Classify { profiles }, Format::Tsv)
            }
            CommandArgs::Enumerate(a) => {
                let text: String = layer.require(a.delta, "delta")?;
                let delta = text
                    .parse()
                    .map_err(|e: campana::Error| CliError::Config(format!("--delta {text:?}: {e}")))?;
                height_bound = positive(layer.require(a.max, "max")?, "max")?;
                let positive_only = a.positive || layer.get(None, "positive")?.unwrap_or(false);
                if let Some(s) = layer.get(a.primes, "primes")? {
                    primes = parse_primes(&s)?;
                }
                (
                    Command::Enumerate {
                        delta,
                        positive: positive_only,
                    },
                    Format::Jsonl,
                )
            }
            CommandArgs::Firmament(a) => {
                let file_path = layer.require(a.file, "file")?;
                let mut ray_texts = a.rays;
                if ray_texts.is_empty() {
                    if let Some(v) = file.get("rays") {
                        ray_texts = v.split_whitespace().map(String::from).collect();
                    }
                }
                if ray_texts.is_empty() {
                    return Err(CliError::Config("no rays given".into()));
                }
                let rays = ray_texts
                    .iter()
                    .map(|r| {
                        campana::firmament::parse_vector(r).map_err(|e| CliError::Config(format!("--ray {r:?}: {e}")))
                    })
                    .collect::<Result<_, _>>()?;
                multiple_cap = positive(layer.get(a.cap, "cap")?.unwrap_or(multiple_cap), "cap")?;
                (Command::Firmament { file: file_path, rays }, Format::Tsv)
            }
            CommandArgs::AbcScan(a) => {
                height_bound = at_least_two(layer.require(a.max_c, "max-c")?)?;
                let min_quality = positive(layer.get(a.min_quality, "min-quality")?.unwrap_or(1.0), "min-quality")?;
                (Command::AbcScan { min_quality }, Format::Tsv)
            }
            CommandArgs::VojtaGap(a) => {
                height_bound = at_least_two(layer.require(a.max_c, "max-c")?)?;
                let eps_prime: f64 = layer.require(a.eps_prime, "eps-prime")?;
                if !(eps_prime > 0.0 && eps_prime < 1.0) {
                    return Err(CliError::Config(format!("--eps-prime must lie in (0, 1), got {eps_prime}")));
                }
                (Command::VojtaGap { eps_prime }, Format::Tsv)
            }
            CommandArgs::MinimalProfiles(a) => {
                let max_marks = positive(layer.get(a.max_marks, "max-marks")?.unwrap_or(5), "max-marks")?;
                let max_mult = positive(layer.get(a.max_mult, "max-mult")?.unwrap_or(7), "max-mult")?;
                (Command::MinimalProfiles { max_marks, max_mult }, Format::Tsv)
            }
        };
        Ok(RunConfig {
            command,
            height_bound,
            primes,
            format: format.unwrap_or(default_format),
            workers,
            multiple_cap,
        })
    }
}

fn at_least_two(max_c: u64) -> Result<u64, CliError> {
    if max_c >= 2 {
        Ok(max_c)
    } else {
        Err(CliError::Config(format!("--max-c must be at least 2, got {max_c}")))
    }
}
