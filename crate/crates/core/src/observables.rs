//! The closed vocabulary of per-graph statistics and boolean properties used
//! by the exact oracle and the Monte Carlo harness.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::detectors;
use crate::graph::{max_edges, Graph};
use crate::moments;

/// Integer-valued graph statistics with known closed-form means over G(n,p).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Statistic {
    MissingEdges,
    SquareTuples,
    SquareTuplesSquared,
    DominationPairs,
    SeparatingWitnesses,
}

impl Statistic {
    pub const ALL: [Statistic; 5] = [
        Statistic::MissingEdges,
        Statistic::SquareTuples,
        Statistic::SquareTuplesSquared,
        Statistic::DominationPairs,
        Statistic::SeparatingWitnesses,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Statistic::MissingEdges => "missing_edges",
            Statistic::SquareTuples => "square_tuples",
            Statistic::SquareTuplesSquared => "square_tuples_squared",
            Statistic::DominationPairs => "domination_pairs",
            Statistic::SeparatingWitnesses => "separating_witnesses",
        }
    }

    pub fn evaluate(self, g: &Graph) -> f64 {
        match self {
            Statistic::MissingEdges => (max_edges(g.n()) - g.edge_count()) as f64,
            Statistic::SquareTuples => {
                detectors::count_empty_squares(g).ordered_tuple_count as f64
            }
            Statistic::SquareTuplesSquared => {
                let t = detectors::count_empty_squares(g).ordered_tuple_count as f64;
                t * t
            }
            Statistic::DominationPairs => detectors::domination_pairs(g).pairs.len() as f64,
            Statistic::SeparatingWitnesses => detectors::separating_witness_count(g),
        }
    }

    /// The exact closed-form mean of this statistic over G(n, p).
    pub fn closed_form_mean(self, n: u64, p: f64) -> f64 {
        match self {
            Statistic::MissingEdges => moments::expected_missing_edges(n, p),
            Statistic::SquareTuples => moments::expected_square_tuples(n, p),
            Statistic::SquareTuplesSquared => moments::square_second_moment(n, p).second_moment,
            Statistic::DominationPairs => moments::expected_domination_pairs(n, p),
            Statistic::SeparatingWitnesses => moments::expected_separating_witnesses(n, p),
        }
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Statistic {
    type Err = UnknownName;

    fn from_str(s: &str) -> Result<Self, UnknownName> {
        Statistic::ALL
            .into_iter()
            .find(|stat| stat.name() == s)
            .ok_or_else(|| UnknownName {
                kind: "statistic",
                name: s.to_string(),
            })
    }
}

/// Boolean graph properties estimated by the harness and integrated exactly
/// by the oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    HasEmptySquare,
    HasDominationPair,
    StarTwoConnected,
    Connected,
    ComplementConnected,
    Complete,
    /// No domination pair and star 2-connected: finite outer automorphism
    /// group for the associated right-angled Artin group.
    OutFiniteRaag,
}

impl Property {
    pub const ALL: [Property; 7] = [
        Property::HasEmptySquare,
        Property::HasDominationPair,
        Property::StarTwoConnected,
        Property::Connected,
        Property::ComplementConnected,
        Property::Complete,
        Property::OutFiniteRaag,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::HasEmptySquare => "has_empty_square",
            Property::HasDominationPair => "has_domination_pair",
            Property::StarTwoConnected => "star_two_connected",
            Property::Connected => "connected",
            Property::ComplementConnected => "complement_connected",
            Property::Complete => "complete",
            Property::OutFiniteRaag => "out_finite_raag",
        }
    }

    pub fn evaluate(self, g: &Graph) -> bool {
        match self {
            Property::HasEmptySquare => detectors::has_empty_square(g),
            Property::HasDominationPair => detectors::has_domination_pair(g),
            Property::StarTwoConnected => detectors::is_star_two_connected(g),
            Property::Connected => g.is_connected(),
            Property::ComplementConnected => g.complement().is_connected(),
            Property::Complete => g.edge_count() == max_edges(g.n()),
            // domination first: it is the cheaper of the two detectors
            Property::OutFiniteRaag => {
                !detectors::has_domination_pair(g) && detectors::is_star_two_connected(g)
            }
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = UnknownName;

    fn from_str(s: &str) -> Result<Self, UnknownName> {
        Property::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| UnknownName {
                kind: "property",
                name: s.to_string(),
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown {kind} name {name:?}")]
pub struct UnknownName {
    pub kind: &'static str,
    pub name: String,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    #[test]
    fn names_round_trip() {
        for s in Statistic::ALL {
            assert_eq!(s.name().parse::<Statistic>().unwrap(), s);
        }
        for p in Property::ALL {
            assert_eq!(p.name().parse::<Property>().unwrap(), p);
        }
        assert!("no_such_thing".parse::<Statistic>().is_err());
        assert!("no_such_thing".parse::<Property>().is_err());
    }

    #[test]
    fn evaluation_smoke() {
        let c4 = Graph::from_edge_list(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(Statistic::MissingEdges.evaluate(&c4), 2.0);
        assert_eq!(Statistic::SquareTuples.evaluate(&c4), 8.0);
        assert_eq!(Statistic::SquareTuplesSquared.evaluate(&c4), 64.0);
        assert!(Property::HasEmptySquare.evaluate(&c4));
        assert!(Property::Connected.evaluate(&c4));
        assert!(!Property::Complete.evaluate(&c4));

        let c5 = Graph::from_edge_list(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert!(Property::OutFiniteRaag.evaluate(&c5));
        assert!(!Property::OutFiniteRaag.evaluate(&Graph::complete(5)));
    }
}
