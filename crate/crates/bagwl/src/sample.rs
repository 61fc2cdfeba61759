//! Subsampled bag testing with majority voting.
//!
//! A draw picks one random index subset and restricts BOTH bags to it, so
//! the two sides always see positionally matching sub-bags. Each draw runs
//! the chosen bag tester on the sub-bags; the reported verdict is the
//! majority over an odd number of draws. With a ratio of 1 every draw is
//! the full bag and the result reproduces the deterministic tester.
//!
//! Subsampling trades soundness for speed: isomorphic inputs can yield
//! non-isomorphic sub-bags when their bags align differently, so a sampled
//! run may distinguish graphs the full tester would not. Callers that care
//! should measure that false-distinguish rate on known-isomorphic pairs.

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bag::{ds_wl_test_bags, dss_wl_test_bags, BaseRefiner, DssOptions};
use crate::graph::Graph;
use crate::policy::{apply_policy, Bag, PolicyError, PolicySpec};
use crate::verdict::Verdict;

// ============================================================================
// Configuration
// ============================================================================

/// Which bag tester the draws run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BagEngine {
    /// Joint cross-subgraph refinement.
    Joint(DssOptions),
    /// Independent per-subgraph refinement.
    Independent(BaseRefiner),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SampleConfig {
    ratio: f64,
    votes: usize,
    seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SampleError {
    /// The kept fraction must be in (0, 1].
    BadRatio { ratio: f64 },
    /// Majorities need an odd, positive number of draws.
    BadVotes { votes: usize },
}

impl fmt::Display for SampleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SampleError::BadRatio { ratio } => {
                write!(f, "sample ratio must be in (0, 1], got {ratio}")
            }
            SampleError::BadVotes { votes } => {
                write!(f, "vote count must be odd and positive, got {votes}")
            }
        }
    }
}

impl std::error::Error for SampleError {}

impl SampleConfig {
    pub fn new(ratio: f64, votes: usize, seed: u64) -> Result<Self, SampleError> {
        if !(ratio > 0.0 && ratio <= 1.0) {
            return Err(SampleError::BadRatio { ratio });
        }
        if votes == 0 || votes % 2 == 0 {
            return Err(SampleError::BadVotes { votes });
        }
        Ok(Self { ratio, votes, seed })
    }

    #[inline]
    pub fn ratio(&self) -> f64 {
        self.ratio
    }

    #[inline]
    pub fn votes(&self) -> usize {
        self.votes
    }

    #[inline]
    pub fn seed(&self) -> u64 {
        self.seed
    }
}

// ============================================================================
// Drawing
// ============================================================================

/// Subgraphs kept from a bag of `bag_len`: at least one, at most all.
pub fn sample_size(bag_len: usize, ratio: f64) -> usize {
    if bag_len == 0 {
        return 0;
    }
    ((ratio * bag_len as f64).round() as usize).clamp(1, bag_len)
}

/// A sorted subset of `size` distinct indices below `len`.
fn sample_indices(len: usize, size: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    debug_assert!(size <= len);
    let mut all: Vec<usize> = (0..len).collect();
    let (picked, _) = all.partial_shuffle(rng, size);
    let mut picked = picked.to_vec();
    picked.sort_unstable();
    picked
}

/// The sub-bag at `indices` (in the given order), preserving roots and
/// source labels.
pub fn sample_bag(bag: &Bag, indices: &[usize]) -> Bag {
    let edges: Vec<Vec<(u32, u32)>> = indices
        .iter()
        .map(|&i| bag.subgraph(i).edges().to_vec())
        .collect();
    let roots: Vec<Option<u32>> = indices.iter().map(|&i| bag.subgraph(i).root()).collect();
    let labels = bag.source_labels().map(<[u32]>::to_vec);
    Bag::from_parts(bag.num_nodes(), edges, roots, labels)
        .expect("subgraphs of a valid bag stay valid")
        .with_source_edges(bag.source_edges().map(<[(u32, u32)]>::to_vec))
}

// ============================================================================
// Voting
// ============================================================================

/// Per-draw verdicts of one sampled run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VoteTally {
    pub verdicts: Vec<Verdict>,
}

impl VoteTally {
    pub fn distinguished(&self) -> usize {
        self.verdicts.iter().filter(|v| v.is_distinguished()).count()
    }

    pub fn possibly_isomorphic(&self) -> usize {
        self.verdicts.len() - self.distinguished()
    }

    /// Majority verdict. When the majority distinguishes, the earliest
    /// distinguishing round is reported; otherwise the latest convergence
    /// round.
    pub fn majority(&self) -> Verdict {
        assert!(!self.verdicts.is_empty(), "majority of zero draws");
        let wins = self.distinguished();
        if 2 * wins > self.verdicts.len() {
            let at_round = self
                .verdicts
                .iter()
                .filter(|v| v.is_distinguished())
                .map(Verdict::round)
                .min()
                .expect("a distinguishing draw exists");
            Verdict::Distinguished { at_round }
        } else {
            let converged_at = self
                .verdicts
                .iter()
                .filter(|v| !v.is_distinguished())
                .map(Verdict::round)
                .max()
                .expect("a non-distinguishing draw exists");
            Verdict::PossiblyIsomorphic { converged_at }
        }
    }
}

/// Runs `cfg.votes()` sampled draws of `engine` over the two bags and
/// returns the majority verdict with the tally. Each draw `d` derives its
/// subset from stream `d` of the seeded generator, so runs are reproducible
/// and draws are independent.
pub fn vote_test(
    b1: &Bag,
    b2: &Bag,
    engine: BagEngine,
    cfg: &SampleConfig,
    max_rounds: Option<usize>,
) -> (Verdict, VoteTally) {
    if b1.len() != b2.len() {
        let verdict = Verdict::Distinguished { at_round: 0 };
        return (verdict, VoteTally { verdicts: vec![verdict; cfg.votes()] });
    }
    let size = sample_size(b1.len(), cfg.ratio());
    let mut verdicts = Vec::with_capacity(cfg.votes());
    for draw in 0..cfg.votes() {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed());
        rng.set_stream(draw as u64);
        let indices = sample_indices(b1.len(), size, &mut rng);
        let (s1, s2) = (sample_bag(b1, &indices), sample_bag(b2, &indices));
        let verdict = match engine {
            BagEngine::Joint(opts) => dss_wl_test_bags(&s1, &s2, max_rounds, &opts, None),
            BagEngine::Independent(base) => ds_wl_test_bags(&s1, &s2, base, max_rounds, None),
        };
        verdicts.push(verdict);
    }
    let tally = VoteTally { verdicts };
    (tally.majority(), tally)
}

/// Applies `spec` to both graphs and runs [`vote_test`].
pub fn sampled_policy_test(
    g1: &Graph,
    g2: &Graph,
    spec: &PolicySpec,
    engine: BagEngine,
    cfg: &SampleConfig,
    max_rounds: Option<usize>,
) -> Result<(Verdict, VoteTally), PolicyError> {
    let (b1, b2) = (apply_policy(g1, spec)?, apply_policy(g2, spec)?);
    Ok(vote_test(&b1, &b2, engine, cfg, max_rounds))
}

// ============================================================================
// Tests
// ============================================================================
