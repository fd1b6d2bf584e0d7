use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::Rng;
use skew_pentagram::dskp::wide_rational;
use skew_pentagram::field::{is_prime, FieldElem, Fp, GaussianRational};
use skew_pentagram::geometry::FieldKind;
use skew_pentagram::lattice::{LocalRule, SkewParams};
use skew_pentagram::sample::random_fp;

#[derive(Parser, Debug)]
#[command(
    name = "skewpent",
    version,
    about = "Skew pentagram map experiments and checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Apply a map to a polygon read from a JSON file.
    Iterate(IterateArgs),
    /// Degree sequence of a map by generic-line specialization.
    Degseq(DegseqArgs),
    /// Growth-rate estimates from a degree sequence.
    DdEstimate(DdEstimateArgs),
    /// Height growth of rational polygons under a skew map.
    Heights(HeightsArgs),
    /// Full check of the map induced on symmetric octagons.
    OctagonVerify(OctagonArgs),
    /// Menelaus products on constructed configurations and along orbits.
    Menelaus(MenelausArgs),
    /// dSKP residuals of equal-length orbits.
    Dskp(DskpArgs),
    /// Look for a full-rank differential of a closed-polygon map.
    Dominance(DominanceArgs),
}

/// A local rule: `a,b,c,d`, `heat` or `shift:<j>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MapSpec(pub LocalRule);

impl FromStr for MapSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "heat" {
            return Ok(MapSpec(LocalRule::Heat));
        }
        if let Some(j) = s.strip_prefix("shift:") {
            let j = j.parse().map_err(|_| format!("bad shift {j:?}"))?;
            return Ok(MapSpec(LocalRule::Shift(j)));
        }
        let p: SkewParams = s.parse().map_err(|e| format!("{e}"))?;
        Ok(MapSpec(LocalRule::Skew(p)))
    }
}

impl std::fmt::Display for MapSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.0 {
            LocalRule::Skew(p) => write!(f, "{p}"),
            LocalRule::Heat => write!(f, "heat"),
            LocalRule::Shift(j) => write!(f, "shift:{j}"),
        }
    }
}

/// `q`, `qi` or `fp:<p>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FieldSpec(pub FieldKind);

impl FromStr for FieldSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "q" => Ok(FieldSpec(FieldKind::Rational)),
            "qi" => Ok(FieldSpec(FieldKind::Gaussian)),
            other => {
                let p = other
                    .strip_prefix("fp:")
                    .and_then(|p| p.parse::<u64>().ok())
                    .ok_or_else(|| format!("expected q, qi or fp:<prime>, got {other:?}"))?;
                if p < 3 || !is_prime(p) {
                    return Err(format!("{p} is not an odd prime"));
                }
                Ok(FieldSpec(FieldKind::Prime(p)))
            }
        }
    }
}

impl std::fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.0 {
            FieldKind::Rational => write!(f, "q"),
            FieldKind::Gaussian => write!(f, "qi"),
            FieldKind::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FieldSpec {
    /// A random element: three-digit over ℚ and ℚ(i), uniform over F_p.
    pub fn random(&self, rng: &mut impl Rng) -> FieldElem {
        match self.0 {
            FieldKind::Rational => wide_rational(rng).into(),
            FieldKind::Gaussian => {
                GaussianRational::new(wide_rational(rng), wide_rational(rng)).into()
            }
            FieldKind::Prime(p) => FieldElem::Prime(random_fp(rng, p)),
        }
    }

    pub fn from_i64(&self, n: i64) -> FieldElem {
        match self.0 {
            FieldKind::Prime(p) => FieldElem::Prime(Fp::new(n, p)),
            kind => kind.from_i64(n),
        }
    }
}

/// Comma-separated odd primes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Primes(pub Vec<u64>);

impl FromStr for Primes {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let primes: Vec<u64> = parse_list(s)?;
        match primes.iter().find(|&&p| p < 3 || !is_prime(p)) {
            Some(p) => Err(format!("{p} is not an odd prime")),
            None => Ok(Primes(primes)),
        }
    }
}

/// Comma-separated degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Degrees(pub Vec<usize>);

impl FromStr for Degrees {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_list(s).map(Degrees)
    }
}

fn parse_list<T: FromStr>(s: &str) -> Result<Vec<T>, String> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<T>()
                .map_err(|_| format!("bad list entry {x:?}"))
        })
        .collect()
}

fn parse_skew(s: &str) -> Result<SkewParams, String> {
    s.parse()
        .map_err(|e: skew_pentagram::lattice::LatticeError| e.to_string())
}

#[derive(Args, Debug)]
pub struct IterateArgs {
    #[arg(long)]
    pub map: MapSpec,
    /// Polygon JSON: {"indexing": {"cyclic": n} | {"interval": [lo, hi]}, "vertices": [...]}.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value = "q")]
    pub field: FieldSpec,
    #[arg(long, default_value_t = 1)]
    pub steps: usize,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct DegreeRunArgs {
    #[arg(long)]
    pub map: MapSpec,
    #[arg(long, default_value_t = 5)]
    pub mmax: usize,
    #[arg(long, default_value = "10009,65537")]
    pub primes: Primes,
    #[arg(long, default_value_t = 3)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Measure on a closed n-gon instead of an interval window.
    #[arg(long)]
    pub cyclic: Option<usize>,
}

#[derive(Args, Debug)]
pub struct DegseqArgs {
    #[command(flatten)]
    pub run: DegreeRunArgs,
    /// `csv` for the per-trial records, `json` for the consensus summary.
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct DdEstimateArgs {
    /// Use these degrees instead of measuring.
    #[arg(long, conflicts_with = "map")]
    pub degrees: Option<Degrees>,
    #[arg(long, required_unless_present = "degrees")]
    pub map: Option<MapSpec>,
    #[arg(long, default_value_t = 5)]
    pub mmax: usize,
    #[arg(long, default_value = "10009,65537")]
    pub primes: Primes,
    #[arg(long, default_value_t = 3)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Start {
    /// Single-digit random vertices.
    Random,
    /// Normalized octagon with quarter-turn symmetry (needs n = 8).
    Symmetric,
}

#[derive(Args, Debug)]
pub struct HeightsArgs {
    #[arg(long, value_parser = parse_skew)]
    pub map: SkewParams,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 8)]
    pub mmax: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "random")]
    pub start: Start,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct OctagonArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct MenelausArgs {
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value = "q")]
    pub field: FieldSpec,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct DskpArgs {
    /// With `--c`, check only `Skew(0,b,c,b+c)`; otherwise the pairs
    /// (2,1), (3,1) and (3,2).
    #[arg(long, requires = "c", allow_hyphen_values = true)]
    pub b: Option<i64>,
    #[arg(long, requires = "b", allow_hyphen_values = true)]
    pub c: Option<i64>,
    /// Vertices in the initial interval window.
    #[arg(long, default_value_t = 36)]
    pub len: usize,
    #[arg(long, default_value_t = 4)]
    pub steps: usize,
    #[arg(long, default_value = "q")]
    pub field: FieldSpec,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct DominanceArgs {
    #[arg(long)]
    pub map: MapSpec,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 10009)]
    pub prime: u64,
    #[arg(long, default_value_t = 4)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_is_well_formed() {
        Cli::command().debug_assert();
    }

    #[test]
    fn map_specs() {
        assert_eq!("heat".parse::<MapSpec>().unwrap().0, LocalRule::Heat);
        assert_eq!(
            "shift:-2".parse::<MapSpec>().unwrap().0,
            LocalRule::Shift(-2)
        );
        let m: MapSpec = "0,2,1,4".parse().unwrap();
        assert_eq!(m.to_string(), "0,2,1,4");
        assert!("0,0,1,2".parse::<MapSpec>().is_err());
    }

    #[test]
    fn field_specs() {
        assert_eq!("q".parse::<FieldSpec>().unwrap().0, FieldKind::Rational);
        assert_eq!("qi".parse::<FieldSpec>().unwrap().0, FieldKind::Gaussian);
        assert_eq!(
            "fp:97".parse::<FieldSpec>().unwrap().0,
            FieldKind::Prime(97)
        );
        assert!("fp:91".parse::<FieldSpec>().is_err());
        assert!("r".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn prime_lists() {
        assert_eq!("97, 193".parse::<Primes>().unwrap().0, vec![97, 193]);
        assert!("97,2".parse::<Primes>().is_err());
        assert_eq!("4,16".parse::<Degrees>().unwrap().0, vec![4, 16]);
    }
}
