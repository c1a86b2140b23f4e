//! Group-theoretic properties of graph products read off from graph
//! predicates, together with the probabilistic machinery to study them over
//! Erdős–Rényi random graphs: exact closed-form moments, an exhaustive
//! small-n enumeration oracle, and seeded Monte Carlo sweeps.

pub mod classifier;
pub mod detectors;
pub mod edgelist;
pub mod gnp;
pub mod graph;
pub mod harness;
pub mod moments;
pub mod observables;
pub mod oracle;

pub use classifier::{classify, GroupKind, GroupVerdict, TriState, VertexGroupSpec};
pub use detectors::{
    analyze, count_empty_squares, domination_pairs, has_domination_pair, has_empty_square,
    is_star_two_connected, separating_stars, split_predicates,
};
pub use gnp::{graph_log_mass, graph_mass, regime_stats, GnpParams, RegimeStats};
pub use graph::{all_graphs, Graph, VertexSet, ENUMERATION_CAP};
pub use harness::{
    compare_statistic, estimate_property, run_sweep, wilson_interval, ExperimentConfig,
    SweepSummary,
};
pub use observables::{Property, Statistic};
pub use oracle::{exact_expectation, exact_probability, OracleQuery, OracleTarget, ORACLE_CAP};
