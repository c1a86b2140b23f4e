//! Exact closed-form moments of the square, transvection, and
//! partial-conjugation statistics over G(n, p), in pre-asymptotic
//! falling-factorial form, plus the asymptotic ratio diagnostics and the
//! partial-conjugation upper bound.
//!
//! Every formula here is validated against exhaustive enumeration of all
//! labeled graphs at small n (see the `oracle` module); that check is the
//! ground truth for the coefficients.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum MomentError {
    #[error("requires 0 < p < 1, got {0}")]
    ProbabilityNotInterior(f64),
    #[error("ratio diagnostics need n >= 4, got {0}")]
    TooFewVertices(u64),
}

/// Falling factorial n·(n-1)···(n-k+1) as an exact integer; 1 when k = 0,
/// 0 when k > n.
pub fn falling_factorial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| {
        acc.checked_mul((n - i) as u128)
            .expect("falling factorial overflows u128")
    })
}

fn ff(n: u64, k: u64) -> f64 {
    if k > n {
        return 0.0;
    }
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64)
}

fn binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut c = 1.0;
    for j in 0..k {
        c = c * (n - j) as f64 / (j + 1) as f64;
    }
    c
}

/// Expected number of absent edges: C(n,2)·(1-p).
pub fn expected_missing_edges(n: u64, p: f64) -> f64 {
    (n * n.saturating_sub(1) / 2) as f64 * (1.0 - p)
}

/// Mean of the ordered 4-tuple square statistic:
/// n(n-1)(n-2)(n-3)·p⁴(1-p)².
pub fn expected_square_tuples(n: u64, p: f64) -> f64 {
    ff(n, 4) * p.powi(4) * (1.0 - p).powi(2)
}

/// The six structural classes of ordered tuple pairs contributing to the
/// second moment of the square statistic, as
/// (prefactor, shared-vertex count k giving n!/(n-k)!, p exponent, q exponent).
///
/// The 5th entry (three shared vertices) uses prefactor 32; all six are
/// pinned by exhaustive enumeration over every labeled graph on 5 and 6
/// vertices.
const SQUARE_PAIR_CASES: [(f64, u64, i32, i32); 6] = [
    (1.0, 8, 8, 4),  // vertex-disjoint squares
    (16.0, 7, 8, 4), // exactly one shared vertex
    (8.0, 6, 8, 3),  // shared diagonal pair
    (32.0, 6, 7, 4), // shared side
    (32.0, 5, 6, 3), // three shared vertices
    (8.0, 4, 4, 2),  // same square
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SquareMoments {
    /// E(X), the ordered-tuple mean.
    pub mean_ordered_tuples: f64,
    /// The six case contributions, in the order of increasing overlap.
    pub case_terms: [f64; 6],
    /// E(X²), the sum of the case terms.
    pub second_moment: f64,
    /// E(X²)/E(X)²; +∞ when E(X) = 0.
    pub ratio: f64,
}

pub fn square_second_moment(n: u64, p: f64) -> SquareMoments {
    let q = 1.0 - p;
    let mut case_terms = [0.0; 6];
    for (i, &(coeff, k, pe, qe)) in SQUARE_PAIR_CASES.iter().enumerate() {
        case_terms[i] = coeff * ff(n, k) * p.powi(pe) * q.powi(qe);
    }
    let second_moment: f64 = case_terms.iter().sum();
    let mean = expected_square_tuples(n, p);
    let ratio = if mean > 0.0 {
        second_moment / (mean * mean)
    } else {
        f64::INFINITY
    };
    SquareMoments {
        mean_ordered_tuples: mean,
        case_terms,
        second_moment,
        ratio,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RatioDiagnostics {
    /// E(X²)/E(X)² from the exact falling-factorial terms.
    pub exact_ratio: f64,
    /// Leading-order form of each case term over E(X)².
    pub asymptotic_terms: [f64; 6],
    pub asymptotic_sum: f64,
}

/// Convergence diagnostics for the second-moment ratio: the exact ratio
/// next to its six-term large-n approximation
/// 1 + 16/n + 8/(n²q) + 32/(n²p) + 32/(n³p²q) + 8/(n⁴p⁴q²).
pub fn second_moment_ratio_terms(n: u64, p: f64) -> Result<RatioDiagnostics, MomentError> {
    if !(p > 0.0 && p < 1.0) {
        return Err(MomentError::ProbabilityNotInterior(p));
    }
    if n < 4 {
        return Err(MomentError::TooFewVertices(n));
    }
    let q = 1.0 - p;
    let nf = n as f64;
    let asymptotic_terms = [
        1.0,
        16.0 / nf,
        8.0 / (nf * nf * q),
        32.0 / (nf * nf * p),
        32.0 / (nf * nf * nf * p * p * q),
        8.0 / (nf.powi(4) * p.powi(4) * q * q),
    ];
    Ok(RatioDiagnostics {
        exact_ratio: square_second_moment(n, p).ratio,
        asymptotic_terms,
        asymptotic_sum: asymptotic_terms.iter().sum(),
    })
}

// Above this size, the ^(n-2)-style closed forms switch to log-space
// evaluation so that huge exponents cannot underflow before the polynomial
// prefactor is applied.
const DIRECT_EVAL_LIMIT: u64 = 64;

/// prefactor · base^k without premature underflow.
fn prefactor_times_pow(prefactor: f64, base: f64, k: u64) -> f64 {
    if k == 0 {
        return prefactor;
    }
    if base <= 0.0 {
        return 0.0;
    }
    if k <= DIRECT_EVAL_LIMIT {
        prefactor * base.powi(k as i32)
    } else if prefactor == 0.0 {
        0.0
    } else {
        (prefactor.ln() + k as f64 * base.ln()).exp()
    }
}

/// Mean number of ordered dominated pairs (v, w) with lk(v) ⊆ st(w):
/// n(n-1)·(1-p+p²)^(n-2).
pub fn expected_domination_pairs(n: u64, p: f64) -> f64 {
    if n < 2 {
        return 0.0;
    }
    prefactor_times_pow((n * (n - 1)) as f64, 1.0 - p + p * p, n - 2)
}

/// The same mean in unsummed form, n(n-1)·Σ_k C(n-2,k)·p^(2k)·(1-p)^(n-2-k),
/// exposing the binomial identity behind the closed form.
pub fn expected_domination_pairs_unsummed(n: u64, p: f64) -> f64 {
    if n < 2 {
        return 0.0;
    }
    let q = 1.0 - p;
    let m = n - 2;
    let sum: f64 = (0..=m)
        .map(|k| binomial(m, k) * p.powi(2 * k as i32) * q.powi((m - k) as i32))
        .sum();
    (n * (n - 1)) as f64 * sum
}

/// Mean number of ordered separating-star witnesses (v, L, S, T):
/// n·Σ C(n-1,ℓ)·C(n-1-ℓ,s)·p^ℓ·(1-p)^(n-ℓ-1+st) over s ≥ 1, t ≥ 1,
/// 1+ℓ+s+t = n.
pub fn expected_separating_witnesses(n: u64, p: f64) -> f64 {
    if n < 3 {
        return 0.0;
    }
    let q = 1.0 - p;
    if n <= DIRECT_EVAL_LIMIT {
        let mut total = 0.0;
        for l in 0..=n - 3 {
            let outer = binomial(n - 1, l) * p.powi(l as i32);
            for s in 1..=n - 2 - l {
                let t = n - 1 - l - s;
                total += outer
                    * binomial(n - 1 - l, s)
                    * q.powi((n - 1 - l + s * t) as i32);
            }
        }
        return n as f64 * total;
    }

    // log-space per term; guards keep 0·ln(0) out of the accumulation
    if q == 0.0 {
        return 0.0; // every witness needs at least one absent S-T edge
    }
    let (ln_p, ln_q) = (p.ln(), q.ln());
    let mut total = 0.0;
    let mut ln_c_outer = 0.0; // ln C(n-1, l)
    for l in 0..=n - 3 {
        if !(p == 0.0 && l > 0) {
            let ln_outer = ln_c_outer + if l == 0 { 0.0 } else { l as f64 * ln_p };
            let mut ln_c_inner = ((n - 1 - l) as f64).ln(); // ln C(n-1-l, 1)
            for s in 1..=n - 2 - l {
                let t = n - 1 - l - s;
                total += (ln_outer + ln_c_inner + (n - 1 - l + s * t) as f64 * ln_q).exp();
                // advance C(n-1-l, s) -> C(n-1-l, s+1)
                ln_c_inner += ((n - 1 - l - s) as f64 / (s + 1) as f64).ln();
            }
        }
        ln_c_outer += ((n - 1 - l) as f64 / (l + 1) as f64).ln();
    }
    n as f64 * total
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeparatingBound {
    /// 2n²(1-p)⁻¹(1-x)^(n-1) + n(1-p)⁻⁴(1-y)^(n-1).
    pub bound: f64,
    /// x = p - p².
    pub x: f64,
    /// y = (1-p) - 2(1-p)³; positive exactly for 1 - 1/√2 < p < 1.
    pub y: f64,
}

pub fn bound_x(p: f64) -> f64 {
    p - p * p
}

pub fn bound_y(p: f64) -> f64 {
    let q = 1.0 - p;
    q - 2.0 * q * q * q
}

/// Closed-form upper bound on [`expected_separating_witnesses`], valid for
/// interior p.
pub fn separating_upper_bound(n: u64, p: f64) -> Result<SeparatingBound, MomentError> {
    if !(p > 0.0 && p < 1.0) {
        return Err(MomentError::ProbabilityNotInterior(p));
    }
    let q = 1.0 - p;
    let x = bound_x(p);
    let y = bound_y(p);
    let first = prefactor_times_pow(2.0 * (n * n) as f64 / q, 1.0 - x, n.saturating_sub(1));
    let second = prefactor_times_pow(n as f64 / q.powi(4), 1.0 - y, n.saturating_sub(1));
    Ok(SeparatingBound {
        bound: first + second,
        x,
        y,
    })
}

/// The automorphism-side moments bundled for reporting; the bound fields are
/// absent at the boundary probabilities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AutMoments {
    pub mean_domination_pairs: f64,
    pub mean_separating_witnesses: f64,
    pub separating_upper_bound: Option<f64>,
    pub x_value: Option<f64>,
    pub y_value: Option<f64>,
}

pub fn aut_moments(n: u64, p: f64) -> AutMoments {
    let bound = separating_upper_bound(n, p).ok();
    AutMoments {
        mean_domination_pairs: expected_domination_pairs(n, p),
        mean_separating_witnesses: expected_separating_witnesses(n, p),
        separating_upper_bound: bound.map(|b| b.bound),
        x_value: bound.map(|b| b.x),
        y_value: bound.map(|b| b.y),
    }
}

/// Every closed-form quantity at one (n, p), in the stable JSON shape shared
/// by the CLI and the Python bindings. Fields that require interior p (or
/// n >= 4 for the ratio diagnostics) are null outside their domain, and the
/// ratio serializes as null when E(X) = 0.
#[derive(Debug, Clone, Serialize)]
pub struct MomentsReport {
    pub n: u64,
    pub p: f64,
    pub expected_missing_edges: f64,
    pub expected_square_tuples: f64,
    pub square_case_terms: [f64; 6],
    pub square_second_moment: f64,
    pub square_ratio: f64,
    pub ratio_asymptotic_terms: Option<[f64; 6]>,
    pub ratio_asymptotic_sum: Option<f64>,
    pub expected_domination_pairs: f64,
    pub expected_domination_pairs_unsummed: f64,
    pub expected_separating_witnesses: f64,
    pub separating_upper_bound: Option<f64>,
    pub x_value: Option<f64>,
    pub y_value: Option<f64>,
    pub regime: crate::gnp::RegimeStats,
}

pub fn moments_report(n: u64, p: f64) -> MomentsReport {
    let square = square_second_moment(n, p);
    let diagnostics = second_moment_ratio_terms(n, p).ok();
    let bound = separating_upper_bound(n, p).ok();
    MomentsReport {
        n,
        p,
        expected_missing_edges: expected_missing_edges(n, p),
        expected_square_tuples: square.mean_ordered_tuples,
        square_case_terms: square.case_terms,
        square_second_moment: square.second_moment,
        square_ratio: square.ratio,
        ratio_asymptotic_terms: diagnostics.as_ref().map(|d| d.asymptotic_terms),
        ratio_asymptotic_sum: diagnostics.as_ref().map(|d| d.asymptotic_sum),
        expected_domination_pairs: expected_domination_pairs(n, p),
        expected_domination_pairs_unsummed: expected_domination_pairs_unsummed(n, p),
        expected_separating_witnesses: expected_separating_witnesses(n, p),
        separating_upper_bound: bound.map(|b| b.bound),
        x_value: bound.map(|b| b.x),
        y_value: bound.map(|b| b.y),
        regime: crate::gnp::regime_stats(n as usize, p),
    }
}
