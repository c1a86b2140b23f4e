//! Translates graph predicates into verdicts about the graph product
//! 𝒢(Γ, {G_v}), given the kind of each vertex group.
//!
//! Verdicts are tri-state where the underlying criteria are one-directional:
//! the classifier answers `Unknown` rather than overclaim.

use serde::Serialize;
use thiserror::Error;

use crate::detectors::{has_domination_pair, has_empty_square, is_star_two_connected,
    split_predicates};
use crate::graph::Graph;

#[derive(Debug, Error, PartialEq)]
pub enum ClassifyError {
    #[error("graph has {graph_n} vertices but the group spec lists {spec_len}")]
    LengthMismatch { graph_n: usize, spec_len: usize },
    #[error("finite vertex groups must have order >= 2, got {0}")]
    TrivialGroup(u64),
    #[error("unknown vertex group kind {0:?} (expected z, c<order>, or fg)")]
    UnknownKind(String),
    #[error("spec {0:?} is not coxeter, artin, or a per-vertex list of length n")]
    BadSpec(String),
}

/// Kind of one vertex group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupKind {
    /// Finite cyclic group of the given order (>= 2).
    Finite(u64),
    /// Infinite cyclic group Z.
    InfiniteCyclic,
    /// An arbitrary non-trivial finitely generated group.
    GeneralFinitelyGenerated,
}

/// Per-vertex group assignment for a graph product.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexGroupSpec {
    kinds: Vec<GroupKind>,
}

impl VertexGroupSpec {
    pub fn new(kinds: Vec<GroupKind>) -> Result<Self, ClassifyError> {
        for kind in &kinds {
            if let GroupKind::Finite(order) = kind {
                if *order < 2 {
                    return Err(ClassifyError::TrivialGroup(*order));
                }
            }
        }
        Ok(VertexGroupSpec { kinds })
    }

    /// All vertex groups of order 2: the right-angled Coxeter group W_Γ.
    pub fn all_order_two(n: usize) -> Self {
        VertexGroupSpec {
            kinds: vec![GroupKind::Finite(2); n],
        }
    }

    /// All vertex groups infinite cyclic: the right-angled Artin group A_Γ.
    pub fn all_infinite_cyclic(n: usize) -> Self {
        VertexGroupSpec {
            kinds: vec![GroupKind::InfiniteCyclic; n],
        }
    }

    /// Parses `coxeter`, `artin`, or a comma-separated per-vertex list of
    /// `z`, `c<order>`, `fg` entries.
    pub fn parse(n: usize, spec: &str) -> Result<Self, ClassifyError> {
        match spec.trim() {
            "coxeter" => Ok(Self::all_order_two(n)),
            "artin" => Ok(Self::all_infinite_cyclic(n)),
            list => {
                let kinds: Vec<GroupKind> = list
                    .split(',')
                    .map(|entry| {
                        let entry = entry.trim();
                        match entry {
                            "z" => Ok(GroupKind::InfiniteCyclic),
                            "fg" => Ok(GroupKind::GeneralFinitelyGenerated),
                            _ => entry
                                .strip_prefix('c')
                                .and_then(|o| o.parse().ok())
                                .map(GroupKind::Finite)
                                .ok_or_else(|| ClassifyError::UnknownKind(entry.to_string())),
                        }
                    })
                    .collect::<Result<_, _>>()?;
                if kinds.len() != n {
                    return Err(ClassifyError::BadSpec(spec.to_string()));
                }
                Self::new(kinds)
            }
        }
    }

    pub fn len(&self) -> usize {
        self.kinds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kinds.is_empty()
    }

    pub fn kinds(&self) -> &[GroupKind] {
        &self.kinds
    }

    fn is_all_finite(&self) -> bool {
        self.kinds.iter().all(|k| matches!(k, GroupKind::Finite(_)))
    }

    fn is_all_infinite_cyclic(&self) -> bool {
        self.kinds
            .iter()
            .all(|k| matches!(k, GroupKind::InfiniteCyclic))
    }

    fn is_all_cyclic(&self) -> bool {
        self.kinds
            .iter()
            .all(|k| !matches!(k, GroupKind::GeneralFinitelyGenerated))
    }

    fn has_infinite_cyclic_factor(&self) -> bool {
        self.kinds
            .iter()
            .any(|k| matches!(k, GroupKind::InfiniteCyclic))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TriState {
    Yes,
    No,
    Unknown,
}

/// One (verdict field, rule) pair explaining a determined verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Reason {
    pub verdict: &'static str,
    pub rule: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroupVerdict {
    pub is_finite: TriState,
    pub is_direct_product_of_vertex_groups: bool,
    pub hyperbolic: TriState,
    pub weakly_relatively_hyperbolic: bool,
    /// Only meaningful for all-infinite-cyclic specs.
    pub raag_free_product_split: Option<bool>,
    pub raag_direct_product_split: Option<bool>,
    pub out_finite: TriState,
    pub reasons: Vec<Reason>,
}

pub fn classify(g: &Graph, spec: &VertexGroupSpec) -> Result<GroupVerdict, ClassifyError> {
    if spec.len() != g.n() {
        return Err(ClassifyError::LengthMismatch {
            graph_n: g.n(),
            spec_len: spec.len(),
        });
    }

    let splits = split_predicates(g);
    let complete = splits.graph_complete;
    let square = has_empty_square(g);
    let domination = has_domination_pair(g);
    let star_two_connected = is_star_two_connected(g);

    let mut reasons = Vec::new();
    let mut reason = |verdict: &'static str, rule: &str| {
        reasons.push(Reason {
            verdict,
            rule: rule.to_string(),
        });
    };

    let is_direct_product = complete;
    if is_direct_product {
        reason(
            "is_direct_product_of_vertex_groups",
            "complete graph: all vertex groups commute pairwise",
        );
    }

    let hyperbolic = if spec.is_all_finite() {
        if square {
            reason("hyperbolic", "empty square with finite vertex groups");
            TriState::No
        } else {
            reason("hyperbolic", "no empty square and finite vertex groups");
            TriState::Yes
        }
    } else {
        TriState::Unknown
    };

    let weakly_relatively_hyperbolic = !square;
    reason(
        "weakly_relatively_hyperbolic",
        if square {
            "empty square present"
        } else {
            "no empty square"
        },
    );

    let (raag_free_product_split, raag_direct_product_split) = if spec.is_all_infinite_cyclic() {
        if splits.graph_disconnected {
            reason("raag_free_product_split", "graph disconnected");
        }
        if splits.complement_disconnected {
            reason("raag_direct_product_split", "complement disconnected");
        }
        (
            Some(splits.graph_disconnected),
            Some(splits.complement_disconnected),
        )
    } else {
        (None, None)
    };

    let no_generators = !domination && star_two_connected;
    let out_finite = if spec.is_all_infinite_cyclic() {
        if no_generators {
            reason("out_finite", "no domination pair and star 2-connected");
            TriState::Yes
        } else {
            reason(
                "out_finite",
                if domination {
                    "domination pair permits an infinite-order transvection"
                } else {
                    "separating star permits an infinite-order partial conjugation"
                },
            );
            TriState::No
        }
    } else if spec.is_all_cyclic() {
        if no_generators {
            reason(
                "out_finite",
                "no domination pair and star 2-connected (cyclic vertex groups)",
            );
            TriState::Yes
        } else {
            // order restrictions on transvections between finite cyclic
            // factors are not modeled, so presence is inconclusive
            TriState::Unknown
        }
    } else {
        TriState::Unknown
    };

    let is_finite = if complete && spec.is_all_finite() {
        reason("is_finite", "complete graph with finite vertex groups");
        TriState::Yes
    } else if spec.has_infinite_cyclic_factor() {
        reason("is_finite", "an infinite cyclic vertex group embeds");
        TriState::No
    } else if spec.is_all_finite() && g.n() >= 2 {
        reason(
            "is_finite",
            "extension: two non-adjacent non-trivial vertex groups generate an infinite subgroup",
        );
        TriState::No
    } else {
        TriState::Unknown
    };

    Ok(GroupVerdict {
        is_finite,
        is_direct_product_of_vertex_groups: is_direct_product,
        hyperbolic,
        weakly_relatively_hyperbolic,
        raag_free_product_split,
        raag_direct_product_split,
        out_finite,
        reasons,
    })
}
