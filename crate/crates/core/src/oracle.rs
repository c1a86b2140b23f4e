//! Brute-force ground truth over the full G(n, p) measure: exact
//! expectations and probabilities by enumerating every labeled graph on up
//! to 7 vertices (2^21 graphs).
//!
//! Enumeration follows the shared lexicographic edge-mask order and is
//! chunked for parallel evaluation; partial sums are combined in fixed chunk
//! order, so totals are identical no matter how the chunks were scheduled.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::gnp::mass_by_edge_count;
use crate::graph::{labeled_graph_count, Graph, ENUMERATION_CAP};
use crate::observables::{Property, Statistic};

/// Largest vertex count the oracle will exhaust.
pub const ORACLE_CAP: usize = ENUMERATION_CAP;

const CHUNK_BITS: u32 = 14;

#[derive(Debug, Error, PartialEq)]
pub enum OracleError {
    #[error("oracle enumeration capped at n <= {cap}, got n = {n}")]
    TooLarge { n: usize, cap: usize },
    #[error("edge probability {0} is not in [0, 1]")]
    ProbabilityOutOfRange(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleTarget {
    Statistic(Statistic),
    Predicate(Property),
}

/// A request for one exact quantity: n, p, and the target statistic or
/// predicate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleQuery {
    pub n: usize,
    pub p: f64,
    pub target: OracleTarget,
}

fn validate(n: usize, p: f64) -> Result<(), OracleError> {
    if n > ORACLE_CAP {
        return Err(OracleError::TooLarge { n, cap: ORACLE_CAP });
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(OracleError::ProbabilityOutOfRange(p));
    }
    Ok(())
}

#[derive(Clone, Copy, Default)]
struct KahanSum {
    sum: f64,
    compensation: f64,
}

impl KahanSum {
    fn add(&mut self, value: f64) {
        let y = value - self.compensation;
        let t = self.sum + y;
        self.compensation = (t - self.sum) - y;
        self.sum = t;
    }
}

/// Mass-weighted sum of `f` over every labeled graph on `n` vertices.
fn weighted_sum<F>(n: usize, p: f64, f: F) -> f64
where
    F: Fn(&Graph) -> f64 + Sync,
{
    let masses = mass_by_edge_count(n, p);
    let total = labeled_graph_count(n);
    let chunk = 1u64 << CHUNK_BITS;
    let chunks = total.div_ceil(chunk);

    let partials: Vec<f64> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut acc = KahanSum::default();
            let start = c * chunk;
            for mask in start..(start + chunk).min(total) {
                let g = Graph::from_edge_mask(n, mask).expect("cap keeps masks in range");
                let weight = masses[mask.count_ones() as usize];
                if weight != 0.0 {
                    acc.add(f(&g) * weight);
                }
            }
            acc.sum
        })
        .collect();

    let mut total = KahanSum::default();
    for part in partials {
        total.add(part);
    }
    total.sum
}

/// Exact E[statistic] over G(n, p). Errors when given a predicate target.
pub fn exact_expectation(query: &OracleQuery) -> Result<f64, OracleError> {
    validate(query.n, query.p)?;
    match query.target {
        OracleTarget::Statistic(stat) => {
            Ok(weighted_sum(query.n, query.p, |g| stat.evaluate(g)))
        }
        OracleTarget::Predicate(prop) => Ok(weighted_sum(query.n, query.p, |g| {
            if prop.evaluate(g) {
                1.0
            } else {
                0.0
            }
        })),
    }
}

/// Exact P[predicate] over G(n, p).
pub fn exact_probability(query: &OracleQuery) -> Result<f64, OracleError> {
    validate(query.n, query.p)?;
    match query.target {
        OracleTarget::Predicate(prop) => Ok(weighted_sum(query.n, query.p, |g| {
            if prop.evaluate(g) {
                1.0
            } else {
                0.0
            }
        })),
        OracleTarget::Statistic(stat) => Ok(weighted_sum(query.n, query.p, |g| {
            if stat.evaluate(g) > 0.0 {
                1.0
            } else {
                0.0
            }
        })),
    }
}

/// Convenience wrappers used throughout the validation suites.
pub fn expectation_of(n: usize, p: f64, stat: Statistic) -> Result<f64, OracleError> {
    exact_expectation(&OracleQuery {
        n,
        p,
        target: OracleTarget::Statistic(stat),
    })
}

pub fn probability_of(n: usize, p: f64, prop: Property) -> Result<f64, OracleError> {
    exact_probability(&OracleQuery {
        n,
        p,
        target: OracleTarget::Predicate(prop),
    })
}

/// One closed-form-vs-oracle comparison.
#[derive(Debug, Clone, Serialize)]
pub struct CheckRow {
    pub formula: &'static str,
    pub n: usize,
    pub p: f64,
    pub closed_form: f64,
    pub oracle: f64,
    pub abs_error: f64,
    pub tolerance: f64,
    pub pass: bool,
}

pub const CLOSED_FORM_TOLERANCE: f64 = 1e-10;

/// Runs every closed-form mean against the enumeration oracle at one (n, p).
pub fn closed_form_checks(n: usize, p: f64) -> Result<Vec<CheckRow>, OracleError> {
    validate(n, p)?;
    let mut rows = Vec::with_capacity(Statistic::ALL.len());
    for stat in Statistic::ALL {
        let closed = stat.closed_form_mean(n as u64, p);
        let oracle = expectation_of(n, p, stat)?;
        let abs_error = (closed - oracle).abs();
        rows.push(CheckRow {
            formula: stat.name(),
            n,
            p,
            closed_form: closed,
            oracle,
            abs_error,
            tolerance: CLOSED_FORM_TOLERANCE,
            pass: abs_error <= CLOSED_FORM_TOLERANCE,
        });
    }
    Ok(rows)
}
