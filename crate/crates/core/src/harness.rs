//! Seeded Monte Carlo sweeps over (n, p) schedules, with Wilson score
//! intervals for property estimates and z-scores against the exact closed
//! forms for statistic means.
//!
//! Reproducibility contract: per-cell seeds are pure functions of
//! (config seed, n, target name); per-trial sampling is pure in
//! (cell seed, trial index); aggregation is order-independent. Two runs of
//! the same config produce byte-identical output.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::gnp::{derive_seed, regime_stats, GnpParams, RegimeStats};
use crate::observables::{Property, Statistic};

/// 97.5% standard normal quantile, for 95% Wilson score intervals.
const Z95: f64 = 1.959963984540054;

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("missing required key {0:?}")]
    MissingKey(&'static str),
    #[error("unknown key {0:?}")]
    UnknownKey(String),
    #[error("line {line}: expected `key = value`, got {got:?}")]
    MalformedLine { line: usize, got: String },
    #[error("bad value {value:?} for key {key:?}")]
    BadValue { key: &'static str, value: String },
    #[error("unknown schedule {0:?} (constant, c_over_n, c_n_alpha, one_minus_c_n_beta)")]
    UnknownSchedule(String),
    #[error("schedule {schedule} takes {expected} parameter(s), got {got}")]
    WrongParamCount {
        schedule: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("trials must be at least 1")]
    NoTrials,
    #[error("nothing to do: no properties or statistics listed")]
    NothingToDo,
}

/// How p varies with n across a sweep. Evaluated values are clamped to
/// [0, 1] and recorded per row.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PSchedule {
    Constant { c: f64 },
    COverN { c: f64 },
    CnAlpha { c: f64, alpha: f64 },
    OneMinusCnBeta { c: f64, beta: f64 },
}

impl PSchedule {
    pub fn evaluate(&self, n: usize) -> f64 {
        let nf = n as f64;
        let raw = match *self {
            PSchedule::Constant { c } => c,
            PSchedule::COverN { c } => c / nf,
            PSchedule::CnAlpha { c, alpha } => c * nf.powf(alpha),
            PSchedule::OneMinusCnBeta { c, beta } => 1.0 - c * nf.powf(-beta),
        };
        raw.clamp(0.0, 1.0)
    }

    fn parse(name: &str, params: &[f64]) -> Result<Self, ConfigError> {
        let arity = |expected: usize, schedule: &'static str| {
            if params.len() == expected {
                Ok(())
            } else {
                Err(ConfigError::WrongParamCount {
                    schedule,
                    expected,
                    got: params.len(),
                })
            }
        };
        match name {
            "constant" => {
                arity(1, "constant")?;
                Ok(PSchedule::Constant { c: params[0] })
            }
            "c_over_n" => {
                arity(1, "c_over_n")?;
                Ok(PSchedule::COverN { c: params[0] })
            }
            "c_n_alpha" => {
                arity(2, "c_n_alpha")?;
                Ok(PSchedule::CnAlpha {
                    c: params[0],
                    alpha: params[1],
                })
            }
            "one_minus_c_n_beta" => {
                arity(2, "one_minus_c_n_beta")?;
                Ok(PSchedule::OneMinusCnBeta {
                    c: params[0],
                    beta: params[1],
                })
            }
            other => Err(ConfigError::UnknownSchedule(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub n_values: Vec<usize>,
    pub schedule: PSchedule,
    pub trials: u64,
    pub seed: u64,
    pub properties: Vec<Property>,
    pub statistics: Vec<Statistic>,
}

impl ExperimentConfig {
    /// Parses the flat `key = value` config format. Keys: n_values,
    /// p_schedule, p_param, trials, seed, properties, statistics.
    /// `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut n_values = None;
        let mut schedule_name = None;
        let mut p_params = None;
        let mut trials = None;
        let mut seed = None;
        let mut properties = Vec::new();
        let mut statistics = Vec::new();

        for (idx, raw_line) in text.lines().enumerate() {
            let line = raw_line.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or(ConfigError::MalformedLine {
                line: idx + 1,
                got: raw_line.to_string(),
            })?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "n_values" => {
                    n_values = Some(parse_list::<usize>(value).map_err(|_| {
                        ConfigError::BadValue {
                            key: "n_values",
                            value: value.to_string(),
                        }
                    })?);
                }
                "p_schedule" => schedule_name = Some(value.to_string()),
                "p_param" => {
                    p_params = Some(parse_list::<f64>(value).map_err(|_| {
                        ConfigError::BadValue {
                            key: "p_param",
                            value: value.to_string(),
                        }
                    })?);
                }
                "trials" => {
                    trials = Some(value.parse().map_err(|_| ConfigError::BadValue {
                        key: "trials",
                        value: value.to_string(),
                    })?);
                }
                "seed" => {
                    seed = Some(value.parse().map_err(|_| ConfigError::BadValue {
                        key: "seed",
                        value: value.to_string(),
                    })?);
                }
                "properties" => {
                    properties = parse_names(value).map_err(|_| ConfigError::BadValue {
                        key: "properties",
                        value: value.to_string(),
                    })?;
                }
                "statistics" => {
                    statistics = parse_names(value).map_err(|_| ConfigError::BadValue {
                        key: "statistics",
                        value: value.to_string(),
                    })?;
                }
                other => return Err(ConfigError::UnknownKey(other.to_string())),
            }
        }

        let schedule = PSchedule::parse(
            &schedule_name.ok_or(ConfigError::MissingKey("p_schedule"))?,
            &p_params.ok_or(ConfigError::MissingKey("p_param"))?,
        )?;
        let trials = trials.ok_or(ConfigError::MissingKey("trials"))?;
        if trials == 0 {
            return Err(ConfigError::NoTrials);
        }
        if properties.is_empty() && statistics.is_empty() {
            return Err(ConfigError::NothingToDo);
        }
        Ok(ExperimentConfig {
            n_values: n_values.ok_or(ConfigError::MissingKey("n_values"))?,
            schedule,
            trials,
            seed: seed.ok_or(ConfigError::MissingKey("seed"))?,
            properties,
            statistics,
        })
    }
}

fn parse_list<T: std::str::FromStr>(value: &str) -> Result<Vec<T>, ()> {
    value
        .split(',')
        .map(|v| v.trim().parse().map_err(|_| ()))
        .collect()
}

fn parse_names<T: std::str::FromStr>(value: &str) -> Result<Vec<T>, ()> {
    if value.trim().is_empty() {
        return Ok(Vec::new());
    }
    parse_list(value)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowKind {
    Property,
    Statistic,
}

/// One sweep cell. Property rows carry successes and a Wilson interval;
/// statistic rows carry the closed-form mean and a z-score.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub n: usize,
    pub p: f64,
    pub target: String,
    pub kind: RowKind,
    pub trials: u64,
    pub successes: Option<u64>,
    pub estimate: f64,
    pub ci_low: Option<f64>,
    pub ci_high: Option<f64>,
    pub closed_form: Option<f64>,
    pub z_score: Option<f64>,
    pub regime: RegimeStats,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSummary {
    pub rows: Vec<SweepRow>,
}

pub const CSV_HEADER: &str =
    "n,p,target,kind,trials,successes,estimate,ci_low,ci_high,closed_form,z_score";

impl SweepSummary {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for row in &self.rows {
            let kind = match row.kind {
                RowKind::Property => "property",
                RowKind::Statistic => "statistic",
            };
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{}\n",
                row.n,
                row.p,
                row.target,
                kind,
                row.trials,
                opt(row.successes),
                row.estimate,
                opt(row.ci_low),
                opt(row.ci_high),
                opt(row.closed_form),
                opt(row.z_score),
            ));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("sweep rows serialize")
    }
}

fn opt<T: std::fmt::Display>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// 95% Wilson score interval for `successes` out of `trials`.
pub fn wilson_interval(successes: u64, trials: u64) -> (f64, f64) {
    assert!(trials >= 1, "interval needs at least one trial");
    assert!(successes <= trials);
    let n = trials as f64;
    let phat = successes as f64 / n;
    let z2 = Z95 * Z95;
    let denom = 1.0 + z2 / n;
    let center = (phat + z2 / (2.0 * n)) / denom;
    let half = Z95 * (phat * (1.0 - phat) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    let mut low = (center - half).max(0.0);
    let mut high = (center + half).min(1.0);
    if successes == 0 {
        low = 0.0;
    }
    if successes == trials {
        high = 1.0;
    }
    (low, high)
}

fn fnv1a(name: &str) -> u64 {
    let mut hash = 0xcbf2_9ce4_8422_2325u64;
    for byte in name.bytes() {
        hash ^= byte as u64;
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}

/// Per-cell seed: a pure function of (sweep seed, n, target name).
pub fn cell_seed(seed: u64, n: usize, target: &str) -> u64 {
    derive_seed(derive_seed(seed, n as u64), fnv1a(target))
}

/// Estimates P[property] at one cell with a 95% Wilson interval.
pub fn estimate_property(
    n: usize,
    p: f64,
    trials: u64,
    seed: u64,
    property: Property,
) -> SweepRow {
    let params = GnpParams::new(n, p, seed).expect("p is clamped to [0, 1]");
    let successes: u64 = (0..trials)
        .into_par_iter()
        .map(|t| u64::from(property.evaluate(&params.sample(t))))
        .sum();
    let estimate = successes as f64 / trials as f64;
    let (ci_low, ci_high) = wilson_interval(successes, trials);
    SweepRow {
        n,
        p,
        target: property.name().to_string(),
        kind: RowKind::Property,
        trials,
        successes: Some(successes),
        estimate,
        ci_low: Some(ci_low),
        ci_high: Some(ci_high),
        closed_form: None,
        z_score: None,
        regime: regime_stats(n, p),
    }
}

/// Compares the empirical mean of a statistic against its exact closed form.
pub fn compare_statistic(
    n: usize,
    p: f64,
    trials: u64,
    seed: u64,
    statistic: Statistic,
) -> SweepRow {
    let params = GnpParams::new(n, p, seed).expect("p is clamped to [0, 1]");
    // per-trial values collected in trial order, then reduced sequentially,
    // so the float total never depends on scheduling
    let values: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|t| statistic.evaluate(&params.sample(t)))
        .collect();
    let mean = values.iter().sum::<f64>() / trials as f64;
    let variance = if trials > 1 {
        values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (trials - 1) as f64
    } else {
        0.0
    };
    let closed = statistic.closed_form_mean(n as u64, p);
    let se = (variance / trials as f64).sqrt();
    let diff = mean - closed;
    let z_score = if se > 0.0 {
        diff / se
    } else if diff == 0.0 {
        0.0
    } else {
        f64::INFINITY * diff.signum()
    };
    SweepRow {
        n,
        p,
        target: statistic.name().to_string(),
        kind: RowKind::Statistic,
        trials,
        successes: None,
        estimate: mean,
        ci_low: None,
        ci_high: None,
        closed_form: Some(closed),
        z_score: Some(z_score),
        regime: regime_stats(n, p),
    }
}

/// Runs the full cross product of n_values × (properties, statistics), in
/// deterministic row order.
pub fn run_sweep(config: &ExperimentConfig) -> SweepSummary {
    let mut rows = Vec::new();
    for &n in &config.n_values {
        let p = config.schedule.evaluate(n);
        for &property in &config.properties {
            let seed = cell_seed(config.seed, n, property.name());
            rows.push(estimate_property(n, p, config.trials, seed, property));
        }
        for &statistic in &config.statistics {
            let seed = cell_seed(config.seed, n, statistic.name());
            rows.push(compare_statistic(n, p, config.trials, seed, statistic));
        }
    }
    SweepSummary { rows }
}
