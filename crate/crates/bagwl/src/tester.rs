//! Tester configuration strings, dispatch, and cross-tester comparisons.
//!
//! A tester is named by a compact string: `wl` and `fwl2` are the node- and
//! pair-level refiners on the whole graph; `ds:<policy>` runs per-subgraph
//! refinement over the policy's bag (append `:fwl2` for the pair-level
//! base); `dss:<policy>` runs the joint cross-subgraph refiner. Policy
//! strings are those of [`PolicySpec::parse`].

use std::fmt;

use crate::bag::{ds_wl_test_bags, dss_wl_test_bags, BaseRefiner, DssOptions};
use crate::fwl2::{fwl2_test_impl, fwl2_test_traced};
use crate::graph::Graph;
use crate::iso::{enumerate_graphs, IsoError};
use crate::policy::{apply_policy, PolicyError, PolicySpec};
use crate::verdict::{RoundTrace, Verdict};
use crate::wl::{wl_test_impl, wl_test_traced};

// ============================================================================
// Configuration
// ============================================================================

/// A parsed tester selection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TesterConfig {
    /// Node-level refinement on the whole graph.
    Wl,
    /// Pair-level (folklore 2-dimensional) refinement on the whole graph.
    Fwl2,
    /// Independent per-subgraph refinement over a policy's bag.
    Ds { policy: PolicySpec, base: BaseRefiner },
    /// Joint cross-subgraph refinement over a policy's bag.
    Dss { policy: PolicySpec },
}

/// Per-run knobs shared by every tester.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TestOptions {
    /// Round cap; `None` picks a cap large enough that convergence always
    /// fires first.
    pub max_rounds: Option<usize>,
    /// Joint-engine experiment, see [`DssOptions`].
    pub needle_excludes_self: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TesterParseError {
    Empty,
    Unknown { spec: String },
    Policy(PolicyError),
}

impl fmt::Display for TesterParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TesterParseError::Empty => write!(f, "empty tester spec"),
            TesterParseError::Unknown { spec } => write!(f, "unknown tester {spec:?}"),
            TesterParseError::Policy(e) => write!(f, "bad tester policy: {e}"),
        }
    }
}

impl std::error::Error for TesterParseError {}

impl From<PolicyError> for TesterParseError {
    fn from(e: PolicyError) -> Self {
        TesterParseError::Policy(e)
    }
}

impl TesterConfig {
    /// Parses `wl`, `fwl2`, `ds:<policy>[:fwl2]`, or `dss:<policy>`.
    pub fn parse(spec: &str) -> Result<Self, TesterParseError> {
        if spec.is_empty() {
            return Err(TesterParseError::Empty);
        }
        match spec {
            "wl" => return Ok(TesterConfig::Wl),
            "fwl2" => return Ok(TesterConfig::Fwl2),
            _ => {}
        }
        if let Some(rest) = spec.strip_prefix("dss:") {
            return Ok(TesterConfig::Dss { policy: PolicySpec::parse(rest)? });
        }
        if let Some(rest) = spec.strip_prefix("ds:") {
            let (policy_spec, base) = match rest.strip_suffix(":fwl2") {
                Some(stripped) => (stripped, BaseRefiner::Fwl2),
                None => (rest, BaseRefiner::Wl1),
            };
            return Ok(TesterConfig::Ds { policy: PolicySpec::parse(policy_spec)?, base });
        }
        Err(TesterParseError::Unknown { spec: spec.to_string() })
    }

    /// The policy the tester applies, if any.
    pub fn policy(&self) -> Option<&PolicySpec> {
        match self {
            TesterConfig::Wl | TesterConfig::Fwl2 => None,
            TesterConfig::Ds { policy, .. } | TesterConfig::Dss { policy } => Some(policy),
        }
    }

    /// Runs the tester on a graph pair.
    pub fn run(
        &self,
        g1: &Graph,
        g2: &Graph,
        opts: &TestOptions,
    ) -> Result<Verdict, PolicyError> {
        match self {
            TesterConfig::Wl => Ok(wl_test_impl(g1, g2, opts.max_rounds, None)),
            TesterConfig::Fwl2 => Ok(fwl2_test_impl(g1, g2, opts.max_rounds, None)),
            TesterConfig::Ds { policy, base } => {
                let (b1, b2) = (apply_policy(g1, policy)?, apply_policy(g2, policy)?);
                Ok(ds_wl_test_bags(&b1, &b2, *base, opts.max_rounds, None))
            }
            TesterConfig::Dss { policy } => {
                let (b1, b2) = (apply_policy(g1, policy)?, apply_policy(g2, policy)?);
                let dss = DssOptions { needle_excludes_self: opts.needle_excludes_self };
                Ok(dss_wl_test_bags(&b1, &b2, opts.max_rounds, &dss, None))
            }
        }
    }

    /// Runs the tester, also returning per-round color traces (node colors
    /// for the whole-graph testers, subgraph colors for the bag testers).
    pub fn run_traced(
        &self,
        g1: &Graph,
        g2: &Graph,
        opts: &TestOptions,
    ) -> Result<(Verdict, Vec<RoundTrace>), PolicyError> {
        match self {
            TesterConfig::Wl => Ok(wl_test_traced(g1, g2, opts.max_rounds)),
            TesterConfig::Fwl2 => Ok(fwl2_test_traced(g1, g2, opts.max_rounds)),
            TesterConfig::Ds { policy, base } => {
                let (b1, b2) = (apply_policy(g1, policy)?, apply_policy(g2, policy)?);
                let mut trace = Vec::new();
                let verdict =
                    ds_wl_test_bags(&b1, &b2, *base, opts.max_rounds, Some(&mut trace));
                Ok((verdict, trace))
            }
            TesterConfig::Dss { policy } => {
                let (b1, b2) = (apply_policy(g1, policy)?, apply_policy(g2, policy)?);
                let dss = DssOptions { needle_excludes_self: opts.needle_excludes_self };
                let mut trace = Vec::new();
                let verdict =
                    dss_wl_test_bags(&b1, &b2, opts.max_rounds, &dss, Some(&mut trace));
                Ok((verdict, trace))
            }
        }
    }
}

impl fmt::Display for TesterConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TesterConfig::Wl => write!(f, "wl"),
            TesterConfig::Fwl2 => write!(f, "fwl2"),
            TesterConfig::Ds { policy, base: BaseRefiner::Wl1 } => write!(f, "ds:{policy}"),
            TesterConfig::Ds { policy, base: BaseRefiner::Fwl2 } => {
                write!(f, "ds:{policy}:fwl2")
            }
            TesterConfig::Dss { policy } => write!(f, "dss:{policy}"),
        }
    }
}

// ============================================================================
// Matrix runs
// ============================================================================

/// Verdicts of every tester on one unordered graph pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixEntry {
    pub left: usize,
    pub right: usize,
    pub verdicts: Vec<Verdict>,
}

/// Runs every tester on every unordered pair of `graphs`. Entries come back
/// in lexicographic pair order regardless of how the work is scheduled.
pub fn power_matrix(
    testers: &[TesterConfig],
    graphs: &[Graph],
    opts: &TestOptions,
) -> Result<Vec<MatrixEntry>, PolicyError> {
    let pairs: Vec<(usize, usize)> = (0..graphs.len())
        .flat_map(|i| ((i + 1)..graphs.len()).map(move |j| (i, j)))
        .collect();
    let rows: Vec<Result<MatrixEntry, PolicyError>> = crate::par::par_map(&pairs, |&(i, j)| {
        let verdicts = testers
            .iter()
            .map(|t| t.run(&graphs[i], &graphs[j], opts))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(MatrixEntry { left: i, right: j, verdicts })
    });
    rows.into_iter().collect()
}

// ============================================================================
// Separation search
// ============================================================================

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchError {
    Enumeration(IsoError),
    Policy(PolicyError),
}

impl fmt::Display for SearchError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchError::Enumeration(e) => write!(f, "{e}"),
            SearchError::Policy(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for SearchError {}

impl From<IsoError> for SearchError {
    fn from(e: IsoError) -> Self {
        SearchError::Enumeration(e)
    }
}

impl From<PolicyError> for SearchError {
    fn from(e: PolicyError) -> Self {
        SearchError::Policy(e)
    }
}

/// Pairs (as indices into [`enumerate_graphs`]`(n)`) that `stronger`
/// distinguishes and `weaker` does not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    /// Number of isomorphism classes searched over.
    pub classes: usize,
    pub pairs: Vec<(usize, usize)>,
}

/// Searches all unordered pairs of `n`-node isomorphism classes (`n <= 7`)
/// for separations: pairs where `stronger` distinguishes and `weaker` does
/// not.
pub fn search_separations(
    n: usize,
    stronger: &TesterConfig,
    weaker: &TesterConfig,
    opts: &TestOptions,
) -> Result<SearchResult, SearchError> {
    let graphs = enumerate_graphs(n)?;
    let entries = power_matrix(std::slice::from_ref(stronger), &graphs, opts)?;
    let mut pairs = Vec::new();
    for entry in entries {
        if !entry.verdicts[0].is_distinguished() {
            continue;
        }
        let verdict = weaker.run(&graphs[entry.left], &graphs[entry.right], opts)?;
        if !verdict.is_distinguished() {
            pairs.push((entry.left, entry.right));
        }
    }
    Ok(SearchResult { classes: graphs.len(), pairs })
}

// ============================================================================
// Tests
// ============================================================================
