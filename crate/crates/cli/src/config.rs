//! TOML run configuration and its validation.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use swalg_core::opalg::{Rational, Scalar};
use swalg_core::qoscillator::admissible_branches;

use crate::CliError;

/// Symbolic and numerical suites a run can select.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    SwRelations,
    Substructures,
    RacahChain,
    Su11,
    Casimirs,
    Spectra,
    Numeric,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::SwRelations,
        Suite::Substructures,
        Suite::RacahChain,
        Suite::Su11,
        Suite::Casimirs,
        Suite::Spectra,
        Suite::Numeric,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::SwRelations => "sw_relations",
            Suite::Substructures => "substructures",
            Suite::RacahChain => "racah_chain",
            Suite::Su11 => "su11",
            Suite::Casimirs => "casimirs",
            Suite::Spectra => "spectra",
            Suite::Numeric => "numeric",
        }
    }

    fn parse(s: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|x| x.name() == s)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Verify,
    Derive,
    Numcheck,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Verify => "verify",
            Command::Derive => "derive",
            Command::Numcheck => "numcheck",
        }
    }

    pub fn suites(self) -> &'static [Suite] {
        match self {
            Command::Verify => &[
                Suite::SwRelations,
                Suite::Substructures,
                Suite::RacahChain,
                Suite::Su11,
                Suite::Casimirs,
            ],
            Command::Derive => &[Suite::Spectra],
            Command::Numcheck => &[Suite::Numeric],
        }
    }
}

/// A model parameter: its exact value when one was given, and its float value.
#[derive(Clone, Debug, PartialEq)]
pub struct Param {
    pub exact: Option<Rational>,
    pub value: f64,
}

impl Param {
    fn from_rational(r: Rational) -> Self {
        Param {
            value: r.to_f64(),
            exact: Some(r),
        }
    }

    fn from_f64(v: f64) -> Self {
        Param {
            exact: None,
            value: v,
        }
    }

    pub fn text(&self) -> String {
        match &self.exact {
            Some(r) => r.to_string(),
            None => format!("{:e}", self.value),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum RawNumber {
    Int(i64),
    Float(f64),
    Text(String),
}

impl RawNumber {
    fn parse(&self, what: &str) -> Result<Param, CliError> {
        match self {
            RawNumber::Int(k) => Ok(Param::from_rational(Rational::from_integer((*k).into()))),
            RawNumber::Float(v) if v.is_finite() => Ok(Param::from_f64(*v)),
            RawNumber::Float(v) => Err(CliError::Config(format!("{what} = {v} is not finite"))),
            RawNumber::Text(t) => parse_rational(t).map(Param::from_rational).ok_or_else(|| {
                CliError::Config(format!("{what} = {t:?} is not a rational number"))
            }),
        }
    }
}

/// `"p/q"`, an integer, or a terminating decimal.
fn parse_rational(t: &str) -> Option<Rational> {
    let t = t.trim();
    if let Some((p, q)) = t.split_once('/') {
        let p: num_bigint::BigInt = p.trim().parse().ok()?;
        let q: num_bigint::BigInt = q.trim().parse().ok()?;
        if q == 0.into() {
            return None;
        }
        return Some(Rational::new(p, q));
    }
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty()
        || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit())
    {
        return None;
    }
    let digits: num_bigint::BigInt = format!("{int}{frac}").parse().ok()?;
    let den = num_bigint::BigInt::from(10u32).pow(frac.len() as u32);
    let r = Rational::new(digits, den);
    Some(if neg { -r } else { r })
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum RawParams {
    One(RawNumber),
    Many(Vec<RawNumber>),
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCutoffs {
    n_max: Option<u32>,
    p_max: Option<u32>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGrid {
    intervals: Option<usize>,
    x_min_factor: Option<f64>,
    x_max_factor: Option<f64>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTolerances {
    eigen_rel: Option<f64>,
    ratio_min: Option<f64>,
    ratio_max: Option<f64>,
    residual: Option<f64>,
    rayleigh: Option<f64>,
    spectrum_rel: Option<f64>,
    proportionality: Option<f64>,
    root: Option<f64>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawNumeric {
    levels: Option<usize>,
    samples: Option<usize>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawReport {
    timings: Option<bool>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFault {
    corrupt: Option<String>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    #[serde(alias = "N")]
    n: Option<usize>,
    a: Option<RawParams>,
    b: Option<RawNumber>,
    s: Option<RawNumber>,
    branches: Option<Vec<i64>>,
    suites: Option<Vec<String>>,
    coverage: Option<String>,
    cutoffs: Option<RawCutoffs>,
    grid: Option<RawGrid>,
    tolerances: Option<RawTolerances>,
    numeric: Option<RawNumeric>,
    report: Option<RawReport>,
    fault: Option<RawFault>,
}

/// How many index tuples the relation suite instantiates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CoverageMode {
    /// All tuples for `N ≤ 4`, one tuple per relation above.
    Auto,
    All,
    Spot,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GridConfig {
    pub intervals: usize,
    pub x_min_factor: f64,
    pub x_max_factor: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Tolerances {
    pub eigen_rel: f64,
    pub ratio_min: f64,
    pub ratio_max: f64,
    pub residual: f64,
    pub rayleigh: f64,
    pub spectrum_rel: f64,
    pub proportionality: f64,
    /// Pair-substructure ratio spread and root residuals.
    pub root: f64,
}

/// Generator corruption used to exercise the failure path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Fault {
    B(usize),
    A(usize, usize),
}

impl Fault {
    fn parse(t: &str, n: usize) -> Option<Fault> {
        let t = t.trim();
        let idx = |c: char| {
            c.to_digit(10)
                .map(|d| d as usize)
                .filter(|d| (1..=n).contains(d))
        };
        let mut chars = t.chars();
        match (
            chars.next()?.to_ascii_uppercase(),
            chars.next(),
            chars.next(),
            chars.next(),
        ) {
            ('B', Some(i), None, None) => Some(Fault::B(idx(i)? - 1)),
            ('A', Some(i), Some(j), None) if i != j => Some(Fault::A(idx(i)? - 1, idx(j)? - 1)),
            _ => None,
        }
    }

    pub fn label(&self) -> String {
        match self {
            Fault::B(i) => format!("B{}", i + 1),
            Fault::A(i, j) => format!("A{}{}", i + 1, j + 1),
        }
    }
}

/// Validated configuration.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub n: usize,
    /// Empty when the config gives no numeric parameters.
    pub a: Vec<Param>,
    pub b: Option<Param>,
    /// `√(2b)`.
    pub s: Option<Param>,
    /// Explicit branch signs; `None` selects every admissible sign vector.
    pub branches: Option<Vec<i8>>,
    pub suites: BTreeSet<Suite>,
    pub coverage: CoverageMode,
    pub n_max: u32,
    pub p_max: u32,
    pub grid: GridConfig,
    pub tolerances: Tolerances,
    pub levels: usize,
    pub samples: usize,
    pub timings: bool,
    pub fault: Option<Fault>,
    /// Defaults and fallbacks applied during validation.
    pub notes: Vec<String>,
}

/// Command-line overrides.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub n: Option<usize>,
}

impl RunConfig {
    pub fn load(path: &Path, command: Command, ov: &Overrides) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml(&text, command, ov)
    }

    pub fn from_toml(text: &str, command: Command, ov: &Overrides) -> Result<Self, CliError> {
        let raw: RawConfig =
            toml::from_str(text).map_err(|e| CliError::Config(e.message().to_string()))?;
        Self::validate(raw, command, ov)
    }

    fn validate(raw: RawConfig, command: Command, ov: &Overrides) -> Result<Self, CliError> {
        let bad = |m: String| Err(CliError::Config(m));
        let mut notes = Vec::new();
        let n = match ov.n.or(raw.n) {
            Some(n) => n,
            None => return bad("missing dimension `n`".into()),
        };
        if n < 2 {
            return bad(format!(
                "n = {n}: the symmetry algebra and its substructures need n >= 2"
            ));
        }

        let a: Vec<Param> = match &raw.a {
            None => Vec::new(),
            Some(RawParams::One(x)) => vec![x.parse("a")?; n],
            Some(RawParams::Many(xs)) => {
                if xs.len() != n {
                    return bad(format!("`a` has {} entries but n = {n}", xs.len()));
                }
                xs.iter()
                    .enumerate()
                    .map(|(i, x)| x.parse(&format!("a{}", i + 1)))
                    .collect::<Result<_, _>>()?
            }
        };
        for (i, ai) in a.iter().enumerate() {
            if 1.0 + 8.0 * ai.value < 0.0 {
                return bad(format!("a{} = {} gives 1 + 8a < 0", i + 1, ai.text()));
            }
        }

        let (b, s) = match (&raw.b, &raw.s) {
            (Some(_), Some(_)) => return bad("give either `b` or `s`, not both".into()),
            (Some(b), None) => {
                let b = b.parse("b")?;
                if !(b.value > 0.0) {
                    return bad(format!("b = {} must be positive", b.text()));
                }
                let s = match &b.exact {
                    Some(r) => match (r * Rational::from_integer(2.into())).sqrt() {
                        Some(s) => Param::from_rational(s),
                        None => Param::from_f64((2.0 * b.value).sqrt()),
                    },
                    None => Param::from_f64((2.0 * b.value).sqrt()),
                };
                (Some(b), Some(s))
            }
            (None, Some(s)) => {
                let s = s.parse("s")?;
                if !(s.value > 0.0) {
                    return bad(format!("s = {} must be positive", s.text()));
                }
                let b = match &s.exact {
                    Some(r) => Param::from_rational(r * r / Rational::from_integer(2.into())),
                    None => Param::from_f64(s.value * s.value / 2.0),
                };
                (Some(b), Some(s))
            }
            (None, None) => (None, None),
        };

        let branches = match &raw.branches {
            None => None,
            Some(v) => {
                if v.len() != n {
                    return bad(format!("`branches` has {} entries but n = {n}", v.len()));
                }
                if a.is_empty() {
                    return bad("`branches` needs `a`".into());
                }
                let signs: Vec<i8> = v
                    .iter()
                    .map(|x| match x {
                        1 => Ok(1i8),
                        -1 => Ok(-1i8),
                        _ => Err(CliError::Config(format!("branch sign {x} is not ±1"))),
                    })
                    .collect::<Result<_, _>>()?;
                let values: Vec<f64> = a.iter().map(|p| p.value).collect();
                if !admissible_branches(&values).contains(&signs) {
                    return bad(format!(
                        "branches {signs:?}: the minus sign is only admitted for -1/8 < a_i < 3/8"
                    ));
                }
                Some(signs)
            }
        };

        let requested: BTreeSet<Suite> = match &raw.suites {
            None => command.suites().iter().copied().collect(),
            Some(list) => {
                if list.is_empty() {
                    return bad("`suites` is empty".into());
                }
                list.iter()
                    .map(|s| {
                        Suite::parse(s)
                            .ok_or_else(|| CliError::Config(format!("unknown suite {s:?}")))
                    })
                    .collect::<Result<_, _>>()?
            }
        };
        let suites: BTreeSet<Suite> = requested
            .iter()
            .copied()
            .filter(|s| command.suites().contains(s))
            .collect();
        if suites.is_empty() {
            return bad(format!(
                "none of the configured suites belongs to `{}`",
                command.name()
            ));
        }

        if matches!(command, Command::Derive | Command::Numcheck) && (a.is_empty() || b.is_none()) {
            return bad(format!(
                "`{}` needs numeric `a` and `b` (or `s`)",
                command.name()
            ));
        }

        let coverage = match raw.coverage.as_deref() {
            None | Some("auto") => CoverageMode::Auto,
            Some("all") => CoverageMode::All,
            Some("spot") => CoverageMode::Spot,
            Some(other) => return bad(format!("unknown coverage {other:?}")),
        };

        let cut = raw.cutoffs.unwrap_or_default();
        let n_max = cut.n_max.unwrap_or(8);
        let p_max = cut.p_max.unwrap_or(4);

        let grid = match raw.grid {
            None => {
                if command == Command::Numcheck {
                    notes.push("no [grid] section: reference grid defaults applied".into());
                }
                RawGrid::default()
            }
            Some(g) => g,
        };
        let grid = GridConfig {
            intervals: grid.intervals.unwrap_or(4000),
            x_min_factor: grid.x_min_factor.unwrap_or(1e-3),
            x_max_factor: grid.x_max_factor.unwrap_or(12.0),
        };
        if grid.intervals < 8
            || !(grid.x_min_factor > 0.0)
            || !(grid.x_max_factor > grid.x_min_factor)
        {
            return bad("grid needs intervals >= 8 and 0 < x_min_factor < x_max_factor".into());
        }

        let t = raw.tolerances.unwrap_or_default();
        let tolerances = Tolerances {
            eigen_rel: t.eigen_rel.unwrap_or(1e-3),
            ratio_min: t.ratio_min.unwrap_or(3.5),
            ratio_max: t.ratio_max.unwrap_or(4.5),
            residual: t.residual.unwrap_or(1e-7),
            rayleigh: t.rayleigh.unwrap_or(1e-6),
            spectrum_rel: t.spectrum_rel.unwrap_or(1e-12),
            proportionality: t.proportionality.unwrap_or(1e-8),
            root: t.root.unwrap_or(1e-10),
        };
        let all_tols = [
            tolerances.eigen_rel,
            tolerances.residual,
            tolerances.rayleigh,
            tolerances.spectrum_rel,
            tolerances.proportionality,
            tolerances.root,
        ];
        if all_tols.iter().any(|v| !(*v > 0.0)) || !(tolerances.ratio_min < tolerances.ratio_max) {
            return bad("tolerances must be positive and ratio_min < ratio_max".into());
        }

        let num = raw.numeric.unwrap_or_default();
        let levels = num.levels.unwrap_or(5);
        let samples = num.samples.unwrap_or(20);
        if levels == 0 || samples == 0 {
            return bad("numeric levels and samples must be positive".into());
        }

        let fault = match raw.fault.and_then(|f| f.corrupt) {
            None => None,
            Some(t) => Some(Fault::parse(&t, n).ok_or_else(|| {
                CliError::Config(format!(
                    "fault {t:?}: expected B<i> or A<ij> with indices in 1..={n}"
                ))
            })?),
        };

        Ok(RunConfig {
            n,
            a,
            b,
            s,
            branches,
            suites,
            coverage,
            n_max,
            p_max,
            grid,
            tolerances,
            levels,
            samples,
            timings: raw.report.and_then(|r| r.timings).unwrap_or(false),
            fault,
            notes,
        })
    }

    /// Branch sign vectors to run: the configured one or every admissible one.
    pub fn branch_sets(&self) -> Vec<Vec<i8>> {
        match &self.branches {
            Some(b) => vec![b.clone()],
            None => admissible_branches(&self.a.iter().map(|p| p.value).collect::<Vec<_>>()),
        }
    }

    pub fn a_f64(&self) -> Vec<f64> {
        self.a.iter().map(|p| p.value).collect()
    }

    /// Exact `a` and `s` when all are rational and every `ν_i` is rational.
    pub fn exact_params(&self) -> Result<(Vec<Rational>, Rational), String> {
        let s = self
            .s
            .as_ref()
            .and_then(|s| s.exact.clone())
            .ok_or_else(|| "s = sqrt(2b) is not rational".to_string())?;
        let a = self
            .a
            .iter()
            .enumerate()
            .map(|(i, p)| {
                p.exact
                    .clone()
                    .ok_or_else(|| format!("a{} is given as a float", i + 1))
            })
            .collect::<Result<Vec<_>, _>>()?;
        for (i, ai) in a.iter().enumerate() {
            let disc = Rational::from_integer(1.into()) + ai * Rational::from_integer(8.into());
            if disc.sqrt().is_none() {
                return Err(format!("nu_{} is irrational", i + 1));
            }
        }
        Ok((a, s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn load(text: &str, cmd: Command) -> Result<RunConfig, CliError> {
        RunConfig::from_toml(text, cmd, &Overrides::default())
    }

    #[test]
    fn rational_text_forms() {
        assert_eq!(
            parse_rational("3/2"),
            Some(Rational::new(3.into(), 2.into()))
        );
        assert_eq!(
            parse_rational("-0.25"),
            Some(Rational::new((-1).into(), 4.into()))
        );
        assert_eq!(parse_rational("7"), Some(Rational::from_integer(7.into())));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("abc"), None);
        assert_eq!(parse_rational("."), None);
    }

    #[test]
    fn scalar_a_broadcasts_and_b_gives_s() {
        let c = load("n = 3\na = 1\nb = \"1/2\"", Command::Derive).unwrap();
        assert_eq!(c.a.len(), 3);
        assert_eq!(
            c.s.as_ref().unwrap().exact,
            Some(Rational::from_integer(1.into()))
        );
        assert_eq!(c.branch_sets(), vec![vec![1, 1, 1]]);
    }

    #[test]
    fn rejects_invalid_inputs() {
        assert!(load("n = 1", Command::Verify).is_err());
        assert!(load("n = 3\na = [1, 1]\nb = 1", Command::Derive).is_err());
        assert!(load("n = 2\na = 1\nb = 0", Command::Derive).is_err());
        assert!(load("n = 2\na = 1\nb = 1\ns = 1", Command::Derive).is_err());
        assert!(load(
            "n = 2\na = [1, 1]\nb = 1\nbranches = [1, -1]",
            Command::Derive
        )
        .is_err());
        assert!(load("n = 2\nsuites = [\"numeric\"]", Command::Verify).is_err());
        assert!(load("n = 2\nsuites = [\"bogus\"]", Command::Verify).is_err());
        assert!(load("n = 2\nfault = { corrupt = \"C1\" }", Command::Verify).is_err());
        assert!(load("n = 2\nwhat = 1", Command::Verify).is_err());
        assert!(load("n = 2", Command::Derive).is_err());
    }

    #[test]
    fn dimension_override() {
        let c = RunConfig::from_toml("n = 3", Command::Verify, &Overrides { n: Some(4) }).unwrap();
        assert_eq!(c.n, 4);
    }

    #[test]
    fn exact_params_need_rational_nu() {
        let c = load("n = 2\na = [1, 3]\nb = \"1/2\"", Command::Derive).unwrap();
        assert!(c.exact_params().is_ok());
        let c = load("n = 2\na = [1, 2]\nb = \"1/2\"", Command::Derive).unwrap();
        assert!(c.exact_params().is_err());
        let c = load("n = 2\na = [1, 3]\nb = 1", Command::Derive).unwrap();
        assert!(c.exact_params().is_err());
    }

    #[test]
    fn missing_grid_is_noted() {
        let c = load("n = 2\na = 1\nb = 1", Command::Numcheck).unwrap();
        assert_eq!(c.grid.intervals, 4000);
        assert_eq!(c.notes.len(), 1);
    }
}
