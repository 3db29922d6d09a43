//! Run configuration: a JSON file overlaid by command-line flags, validated before any work starts.

use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use ermm_core::combinatorics::{ModelKind, Regime, RegimeTag};
use ermm_core::diagrams::DiagramFilter;
use ermm_core::graphsim::{RegimeSchedule, DILUTE_DEFAULT_EXPONENT, VERY_SPARSE_DEFAULT_EXPONENT};
use ermm_core::num::to_f64;
use ermm_core::Rational;

use crate::error::{CliError, CliResult};
use crate::report::OutputFormat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    Tables,
    Verify,
    Simulate,
    FreeEnergy,
    DiagramsDump,
    OracleDump,
}

/// Sequences printable by `tables`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Sequence {
    H,
    D,
    Psi,
    T,
    Rooted,
    Unrooted,
    Catalan,
    WalkCensus,
    Limit,
}

/// Identity suites run by `verify`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Series,
    Oracle,
    Diagrams,
    Walks,
    All,
}

/// A number given either as JSON number or as a string (`"1/3"`, `"0.3"`, `"1e5"`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Number {
    Float(f64),
    Text(String),
}

impl Number {
    pub fn to_rational(&self) -> CliResult<Rational> {
        match self {
            Number::Float(v) => parse_rational(&format!("{v}")),
            Number::Text(s) => parse_rational(s),
        }
    }
}

impl std::str::FromStr for Number {
    type Err = CliError;
    fn from_str(s: &str) -> CliResult<Self> {
        parse_rational(s)?;
        Ok(Number::Text(s.to_string()))
    }
}

/// Exact value of `a/b`, a decimal, or a decimal with exponent.
pub fn parse_rational(text: &str) -> CliResult<Rational> {
    let bad = || CliError::Usage(format!("cannot read {text:?} as a number"));
    let s = text.trim();
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(num, den));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all: BigInt = format!("{int_part}{frac_part}0").parse::<BigInt>().map_err(|_| bad())? / 10;
    let shift = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut value = Rational::from_integer(all);
    if shift >= 0 {
        value *= Rational::from_integer(num_traits::pow(ten, shift as usize));
    } else {
        value /= Rational::from_integer(num_traits::pow(ten, (-shift) as usize));
    }
    Ok(if negative { -value } else { value })
}

/// Every configurable field; `None` means "not given".
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "kebab-case")]
pub struct RunConfig {
    pub command: Option<CommandKind>,
    pub seq: Option<Sequence>,
    pub suite: Option<Suite>,
    pub model: Option<String>,
    pub q: Option<u32>,
    pub k: Option<u32>,
    pub kmax: Option<u32>,
    pub regime: Option<String>,
    pub p: Option<Number>,
    pub c: Option<Number>,
    pub exponent: Option<f64>,
    pub prefactor: Option<f64>,
    pub n: Option<Vec<Number>>,
    pub samples: Option<u64>,
    pub seed: Option<u64>,
    pub order: Option<u32>,
    pub t: Option<Vec<Number>>,
    pub clt: Option<bool>,
    pub filter: Option<String>,
    pub format: Option<OutputFormat>,
    pub output: Option<PathBuf>,
    pub plot: Option<PathBuf>,
}

macro_rules! overlay_fields {
    ($dst:ident, $src:ident, $($field:ident),*) => {
        $( if $src.$field.is_some() { $dst.$field = $src.$field.clone(); } )*
    };
}

impl RunConfig {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("invalid config {}: {e}", path.display())))
    }

    /// Fields set in `flags` replace those in `self`.
    pub fn overlay(mut self, flags: &RunConfig) -> Self {
        overlay_fields!(
            self, flags, command, seq, suite, model, q, k, kmax, regime, p, c, exponent, prefactor, n, samples, seed,
            order, t, clt, filter, format, output, plot
        );
        self
    }

    pub fn format(&self) -> OutputFormat {
        self.format.unwrap_or(OutputFormat::Csv)
    }

    fn require<T: Clone>(value: &Option<T>, name: &str) -> CliResult<T> {
        value.clone().ok_or_else(|| CliError::Usage(format!("missing required option --{name}")))
    }

    pub fn model(&self) -> CliResult<ModelKind> {
        Ok(Self::require(&self.model, "model")?.parse()?)
    }

    pub fn model_or(&self, default: ModelKind) -> CliResult<ModelKind> {
        match &self.model {
            Some(m) => Ok(m.parse()?),
            None => Ok(default),
        }
    }

    pub fn q(&self) -> CliResult<u32> {
        let q = Self::require(&self.q, "q")?;
        if q == 0 {
            return Err(CliError::Usage("q must be at least 1".into()));
        }
        Ok(q)
    }

    pub fn kmax(&self, default: u32) -> u32 {
        self.kmax.unwrap_or(default)
    }

    pub fn regime_tag(&self) -> CliResult<RegimeTag> {
        Ok(Self::require(&self.regime, "regime")?.parse()?)
    }

    pub fn p_exact(&self) -> CliResult<Rational> {
        Self::require(&self.p, "p")?.to_rational()
    }

    pub fn c_exact(&self) -> CliResult<Rational> {
        Self::require(&self.c, "c")?.to_rational()
    }

    /// Regime with its parameter (`--p` for full, `--c` for sparse).
    pub fn regime(&self) -> CliResult<Regime> {
        Ok(match self.regime_tag()? {
            RegimeTag::Full => Regime::full(self.p_exact()?)?,
            RegimeTag::Dilute => Regime::Dilute,
            RegimeTag::Sparse => Regime::sparse(self.c_exact()?)?,
            RegimeTag::VerySparse => Regime::VerySparse,
        })
    }

    /// Vertex counts from `--n`, each a whole number at least 2.
    pub fn sizes(&self) -> CliResult<Vec<usize>> {
        let list = Self::require(&self.n, "n")?;
        if list.is_empty() {
            return Err(CliError::Usage("--n needs at least one size".into()));
        }
        list.iter()
            .map(|v| {
                let r = v.to_rational()?;
                if !r.is_integer() || r < Rational::from_integer(2.into()) {
                    return Err(CliError::Usage(format!("vertex count must be an integer >= 2, got {v:?}")));
                }
                r.to_integer().to_usize().ok_or_else(|| CliError::Usage("vertex count too large".into()))
            })
            .collect()
    }

    pub fn schedule(&self) -> CliResult<RegimeSchedule> {
        let sizes = self.sizes()?;
        let schedule = match self.regime_tag()? {
            RegimeTag::Full => {
                let p = self.p_exact()?;
                if !p.is_positive() || p >= Rational::one() {
                    return Err(CliError::Usage("full regime needs 0 < p < 1".into()));
                }
                RegimeSchedule::full(to_f64(&p), &sizes)?
            }
            RegimeTag::Dilute => match &self.c {
                Some(c) => RegimeSchedule::from_points(
                    RegimeTag::Dilute,
                    sizes.iter().map(|&n| point_with_c(n, to_f64(&c.to_rational()?))).collect::<CliResult<_>>()?,
                )?,
                None => RegimeSchedule::dilute(&sizes, self.exponent.unwrap_or(DILUTE_DEFAULT_EXPONENT))?,
            },
            RegimeTag::Sparse => RegimeSchedule::sparse(to_f64(&self.c_exact()?), &sizes)?,
            RegimeTag::VerySparse => RegimeSchedule::very_sparse(
                &sizes,
                self.prefactor.unwrap_or(1.0),
                self.exponent.unwrap_or(VERY_SPARSE_DEFAULT_EXPONENT),
            )?,
        };
        Ok(schedule)
    }

    pub fn samples(&self) -> u64 {
        self.samples.unwrap_or(2000)
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(7)
    }

    pub fn filter(&self) -> CliResult<DiagramFilter> {
        match self.filter.as_deref().unwrap_or("tree-arcs") {
            "all" => Ok(DiagramFilter::All),
            "connected" => Ok(DiagramFilter::Connected),
            "tree-arcs" | "treearcs" => Ok(DiagramFilter::TreeArcs),
            other => Err(CliError::Usage(format!("unknown filter {other:?} (all, connected, tree-arcs)"))),
        }
    }

    /// Evaluation points for `free-energy`; defaults to `0, 0.1, ..., 1`.
    pub fn times(&self) -> CliResult<Vec<Rational>> {
        match &self.t {
            Some(list) => list.iter().map(Number::to_rational).collect(),
            None => Ok((0..=10).map(|i| Rational::new(i.into(), 10.into())).collect()),
        }
    }

    /// Config echo for report metadata, in a fixed key order.
    pub fn echo(&self) -> String {
        serde_json::to_string(self).unwrap_or_default()
    }
}

fn point_with_c(n: usize, c: f64) -> CliResult<ermm_core::graphsim::SchedulePoint> {
    Ok(ermm_core::graphsim::SchedulePoint { n, p: c / n as f64 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use ermm_core::num::rat;

    #[test]
    fn parses_exact_numbers() {
        assert_eq!(parse_rational("1/3").unwrap(), rat(1, 3));
        assert_eq!(parse_rational("0.3").unwrap(), rat(3, 10));
        assert_eq!(parse_rational("1e5").unwrap(), rat(100_000, 1));
        assert_eq!(parse_rational("-2.5e-1").unwrap(), rat(-1, 4));
        assert_eq!(parse_rational(".5").unwrap(), rat(1, 2));
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn flags_override_file_values() {
        let file: RunConfig = serde_json::from_str(r#"{"command": "simulate", "q": 2, "p": 0.3, "n": [1000, "1e4"], "seed": 1}"#).unwrap();
        let flags = RunConfig { seed: Some(9), ..Default::default() };
        let merged = file.overlay(&flags);
        assert_eq!(merged.seed(), 9);
        assert_eq!(merged.q().unwrap(), 2);
        assert_eq!(merged.p_exact().unwrap(), rat(3, 10));
        assert_eq!(merged.sizes().unwrap(), vec![1000, 10_000]);
    }

    #[test]
    fn rejects_unknown_keys_and_bad_sizes() {
        assert!(serde_json::from_str::<RunConfig>(r#"{"sides": 3}"#).is_err());
        let cfg = RunConfig { n: Some(vec![Number::Text("2.5".into())]), ..Default::default() };
        assert!(cfg.sizes().is_err());
    }
}
