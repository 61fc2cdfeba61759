//! Pairwise test outcomes and round-by-round traces.

use serde::{Deserialize, Serialize};
use std::fmt;

/// Outcome of a pairwise non-isomorphism test.
///
/// Rounds are 0-based: round 0 is the initial coloring, round `t` the state
/// after `t` refinement steps. `Distinguished { at_round }` carries the first
/// round whose fingerprints differ; it proves the inputs are non-isomorphic.
/// `PossiblyIsomorphic { converged_at }` carries the round at which the joint
/// partition stabilized (or the round cap, if it was hit first) and proves
/// nothing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Verdict {
    Distinguished { at_round: usize },
    PossiblyIsomorphic { converged_at: usize },
}

impl Verdict {
    #[inline]
    pub fn is_distinguished(&self) -> bool {
        matches!(self, Verdict::Distinguished { .. })
    }

    /// The round the verdict was reached at, either way.
    #[inline]
    pub fn round(&self) -> usize {
        match *self {
            Verdict::Distinguished { at_round } => at_round,
            Verdict::PossiblyIsomorphic { converged_at } => converged_at,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Verdict::Distinguished { at_round } => write!(f, "DISTINGUISHED@{at_round}"),
            Verdict::PossiblyIsomorphic { converged_at } => {
                write!(f, "POSSIBLY_ISOMORPHIC@{converged_at}")
            }
        }
    }
}

/// One side's state at one round of a traced test.
///
/// `colors` is the raw color vector of whatever units the tester refines:
/// node colors for 1-WL, ordered-pair colors (row-major) for 2-FWL, and
/// subgraph colors (in bag order) for the bag testers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SideTrace {
    pub colors: Vec<u32>,
    /// `(color, count)` pairs sorted by color.
    pub histogram: Vec<(u32, u32)>,
}

impl SideTrace {
    pub fn from_colors(colors: &[u32]) -> Self {
        Self {
            colors: colors.to_vec(),
            histogram: crate::graph::color_histogram(colors),
        }
    }
}

/// Both sides' states at one round.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundTrace {
    pub round: usize,
    pub left: SideTrace,
    pub right: SideTrace,
}
