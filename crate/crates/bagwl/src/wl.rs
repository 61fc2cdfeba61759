//! Classic 1-dimensional color refinement and the pairwise test built on it.
//!
//! A node's next color is the interned pair (own color, sorted multiset of
//! neighbor colors). Refinement runs until the induced partition stops
//! changing; a pairwise test runs both graphs in lockstep under one shared
//! interner and compares the sorted color multisets every round.

use crate::graph::{
    key_tags, partitions_equal, sorted_colors, ColorInterner, Graph, NodePartition,
};
use crate::verdict::{RoundTrace, SideTrace, Verdict};

// ============================================================================
// Coloring history
// ============================================================================

/// Round-by-round record of one graph's refinement.
#[derive(Clone, Debug)]
pub struct ColoringHistory {
    rounds: Vec<Vec<u32>>,
    converged_at: Option<usize>,
    fingerprints: Vec<Vec<u32>>,
}

impl ColoringHistory {
    pub(crate) fn from_parts(
        rounds: Vec<Vec<u32>>,
        converged_at: Option<usize>,
        fingerprints: Vec<Vec<u32>>,
    ) -> Self {
        Self { rounds, converged_at, fingerprints }
    }

    /// Color vectors per round; index 0 is the initial coloring.
    #[inline]
    pub fn rounds(&self) -> &[Vec<u32>] {
        &self.rounds
    }

    #[inline]
    pub fn colors_at(&self, round: usize) -> &[u32] {
        &self.rounds[round]
    }

    /// Colors of the last computed round.
    #[inline]
    pub fn final_colors(&self) -> &[u32] {
        self.rounds.last().expect("history has at least the initial round")
    }

    /// First round whose partition equals the previous round's, or `None`
    /// when the round cap cut refinement short.
    #[inline]
    pub fn converged_at(&self) -> Option<usize> {
        self.converged_at
    }

    /// Sorted color multiset per round.
    #[inline]
    pub fn fingerprints(&self) -> &[Vec<u32>] {
        &self.fingerprints
    }

    #[inline]
    pub fn fingerprint_at(&self, round: usize) -> &[u32] {
        &self.fingerprints[round]
    }
}

// ============================================================================
// Refinement
// ============================================================================

/// Initial node colors: the interned `(label, 0)` per node. The second slot
/// is the root-mark channel used by rooted subgraphs; plain graphs leave it 0.
pub(crate) fn initial_colors(g: &Graph, interner: &mut ColorInterner) -> Vec<u32> {
    (0..g.num_nodes() as u32)
        .map(|v| interner.intern_tuple(key_tags::NODE_INIT, &[g.label(v), 0]))
        .collect()
}

/// One refinement round over `g`.
pub(crate) fn refine_step(g: &Graph, colors: &[u32], interner: &mut ColorInterner) -> Vec<u32> {
    let mut next = Vec::with_capacity(colors.len());
    let mut scratch: Vec<u32> = Vec::new();
    for v in 0..g.num_nodes() as u32 {
        scratch.clear();
        scratch.extend(g.neighbors(v).iter().map(|&w| colors[w as usize]));
        scratch.sort_unstable();
        let neighborhood = interner.intern_tuple(key_tags::MULTISET, &scratch);
        next.push(interner.intern_tuple(key_tags::WL_STEP, &[colors[v as usize], neighborhood]));
    }
    next
}

/// Refines `g` for at most `max_rounds` rounds with a private interner.
pub fn wl_refine(g: &Graph, max_rounds: usize) -> ColoringHistory {
    let mut interner = ColorInterner::new();
    wl_refine_with(g, max_rounds, &mut interner)
}

/// Refines `g` under a caller-supplied interner, so several histories share
/// one color space and their color ids are mutually comparable.
pub fn wl_refine_with(
    g: &Graph,
    max_rounds: usize,
    interner: &mut ColorInterner,
) -> ColoringHistory {
    let mut colors = initial_colors(g, interner);
    let mut partition = NodePartition::from_colors(&colors);
    let mut history = ColoringHistory {
        fingerprints: vec![sorted_colors(&colors)],
        rounds: vec![colors.clone()],
        converged_at: None,
    };
    for t in 1..=max_rounds {
        colors = refine_step(g, &colors, interner);
        let next_partition = NodePartition::from_colors(&colors);
        history.fingerprints.push(sorted_colors(&colors));
        history.rounds.push(colors.clone());
        let stable = partitions_equal(&partition, &next_partition);
        partition = next_partition;
        if stable {
            history.converged_at = Some(t);
            break;
        }
    }
    history
}

/// Default round cap for a pairwise node-refinement test: the joint unit
/// count, which upper-bounds the rounds until the joint partition stabilizes.
pub fn default_max_rounds(g1: &Graph, g2: &Graph) -> usize {
    (g1.num_nodes() + g2.num_nodes()).max(1)
}

// ============================================================================
// Pairwise test
// ============================================================================

/// Runs the pairwise refinement test on `g1` and `g2`. A `max_rounds` of
/// `None` uses [`default_max_rounds`], which is always enough for the
/// convergence check to fire first.
pub fn wl_test(g1: &Graph, g2: &Graph, max_rounds: Option<usize>) -> Verdict {
    wl_test_impl(g1, g2, max_rounds, None)
}

/// [`wl_test`], also returning the per-round color vectors and histograms.
pub fn wl_test_traced(
    g1: &Graph,
    g2: &Graph,
    max_rounds: Option<usize>,
) -> (Verdict, Vec<RoundTrace>) {
    let mut trace = Vec::new();
    let verdict = wl_test_impl(g1, g2, max_rounds, Some(&mut trace));
    (verdict, trace)
}

pub(crate) fn wl_test_impl(
    g1: &Graph,
    g2: &Graph,
    max_rounds: Option<usize>,
    mut trace: Option<&mut Vec<RoundTrace>>,
) -> Verdict {
    let max_rounds = max_rounds.unwrap_or_else(|| default_max_rounds(g1, g2));
    let mut interner = ColorInterner::new();
    let mut c1 = initial_colors(g1, &mut interner);
    let mut c2 = initial_colors(g2, &mut interner);

    let record = |round: usize, c1: &[u32], c2: &[u32], trace: &mut Option<&mut Vec<RoundTrace>>| {
        if let Some(t) = trace {
            t.push(RoundTrace {
                round,
                left: SideTrace::from_colors(c1),
                right: SideTrace::from_colors(c2),
            });
        }
    };

    record(0, &c1, &c2, &mut trace);
    if sorted_colors(&c1) != sorted_colors(&c2) {
        return Verdict::Distinguished { at_round: 0 };
    }
    let mut joint = joint_partition(&c1, &c2);
    for t in 1..=max_rounds {
        c1 = refine_step(g1, &c1, &mut interner);
        c2 = refine_step(g2, &c2, &mut interner);
        record(t, &c1, &c2, &mut trace);
        if sorted_colors(&c1) != sorted_colors(&c2) {
            return Verdict::Distinguished { at_round: t };
        }
        let next_joint = joint_partition(&c1, &c2);
        if partitions_equal(&joint, &next_joint) {
            return Verdict::PossiblyIsomorphic { converged_at: t };
        }
        joint = next_joint;
    }
    Verdict::PossiblyIsomorphic { converged_at: max_rounds }
}

/// Partition of both sides' units viewed as one color vector. Stability of
/// the joint partition is the sound stopping rule: from that point on, every
/// later round renames colors consistently and equal fingerprints stay equal.
pub(crate) fn joint_partition(c1: &[u32], c2: &[u32]) -> NodePartition {
    let mut all = Vec::with_capacity(c1.len() + c2.len());
    all.extend_from_slice(c1);
    all.extend_from_slice(c2);
    NodePartition::from_colors(&all)
}

// ============================================================================
// Tests
// ============================================================================

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{csl, cycle, disjoint_cycles, path, rooks4, shrikhande, star};
    use crate::graph::color_histogram;
    use crate::policy::{apply_policy, PolicySpec};

    fn hist_count(hist: &[(u32, u32)], color: u32) -> u32 {
        hist.iter().find(|&&(c, _)| c == color).map_or(0, |&(_, n)| n)
    }

    // -------------------------------------------------------------------------
    // Refinement histories
    // -------------------------------------------------------------------------

    #[test]
    fn cycle_converges_immediately_to_one_class() {
        let h = wl_refine(&cycle(6).unwrap(), 10);
        assert_eq!(h.converged_at(), Some(1));
        let hist = color_histogram(h.final_colors());
        assert_eq!(hist.len(), 1, "vertex-transitive 2-regular graph stays monochrome");
    }

    #[test]
    fn round_partitions_refine_monotonically() {
        let g = path(7).unwrap();
        let h = wl_refine(&g, 10);
        for t in 1..h.rounds().len() {
            let prev = NodePartition::from_colors(h.colors_at(t - 1));
            let next = NodePartition::from_colors(h.colors_at(t));
            // Refinement: equal colors at t imply equal colors at t-1.
            let mut seen: std::collections::HashMap<u32, u32> = std::collections::HashMap::new();
            for v in 0..7 {
                let entry = seen.entry(next.class_of()[v]).or_insert(prev.class_of()[v]);
                assert_eq!(*entry, prev.class_of()[v], "round {t} merged two classes");
            }
        }
    }

    #[test]
    fn convergence_is_within_node_count_rounds() {
        for g in [path(9).unwrap(), star(5).unwrap(), csl(9, 3).unwrap()] {
            let n = g.num_nodes();
            let h = wl_refine(&g, n);
            assert!(h.converged_at().is_some(), "must converge within {n} rounds");
        }
    }

    #[test]
    fn five_edge_path_grows_a_class_the_broken_triangles_lack() {
        // Both graphs are an edge-deleted 6-cycle vs an edge-deleted pair of
        // triangles; the path's second-from-the-end nodes see one endpoint
        // and one interior node, a neighborhood mix the other graph never
        // produces by round 2.
        let p6 = path(6).unwrap();
        let b = apply_policy(
            &disjoint_cycles(&[3, 3]).unwrap(),
            &PolicySpec::parse("ed").unwrap(),
        )
        .unwrap();
        let broken = b.subgraph_as_graph(0);

        let mut interner = ColorInterner::new();
        let h1 = wl_refine_with(&p6, 10, &mut interner);
        let h2 = wl_refine_with(&broken, 10, &mut interner);
        let hist1 = color_histogram(h1.colors_at(2));
        let hist2 = color_histogram(h2.colors_at(2));
        let witness = hist1
            .iter()
            .find(|&&(color, count)| count == 2 && hist_count(&hist2, color) == 0);
        assert!(
            witness.is_some(),
            "expected a size-2 round-2 class unique to the path: {hist1:?} vs {hist2:?}"
        );
    }

    #[test]
    fn edge_deleted_rook_round2_classes_are_2_2_6_6() {
        let g = rooks4();
        let deleted: Vec<(u32, u32)> =
            g.edges().iter().copied().filter(|&e| e != (0, 1)).collect();
        let g = Graph::new(16, &deleted).unwrap();
        let h = wl_refine(&g, 16);
        let mut sizes: Vec<u32> = color_histogram(h.colors_at(2)).iter().map(|&(_, n)| n).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, [2, 2, 6, 6]);
    }

    // -------------------------------------------------------------------------
    // Pairwise tests
    // -------------------------------------------------------------------------

    #[test]
    fn distinguishes_path_from_star_at_round_1() {
        let verdict = wl_test(&path(4).unwrap(), &star(3).unwrap(), Some(8));
        assert_eq!(verdict, Verdict::Distinguished { at_round: 1 });
    }

    #[test]
    fn cannot_distinguish_cycle6_from_two_triangles() {
        let verdict = wl_test(&cycle(6).unwrap(), &disjoint_cycles(&[3, 3]).unwrap(), Some(12));
        assert_eq!(verdict, Verdict::PossiblyIsomorphic { converged_at: 1 });
    }

    #[test]
    fn cannot_distinguish_the_two_strongly_regular_grid_graphs() {
        let verdict = wl_test(&rooks4(), &shrikhande(), Some(32));
        assert!(!verdict.is_distinguished());
    }

    #[test]
    fn different_node_counts_are_distinguished_at_round_0() {
        let verdict = wl_test(&cycle(5).unwrap(), &cycle(6).unwrap(), Some(8));
        assert_eq!(verdict, Verdict::Distinguished { at_round: 0 });
    }

    #[test]
    fn labels_enter_at_round_0() {
        let a = cycle(4).unwrap().with_labels(vec![0, 0, 0, 0]).unwrap();
        let b = cycle(4).unwrap().with_labels(vec![0, 0, 0, 1]).unwrap();
        assert_eq!(wl_test(&a, &b, Some(8)), Verdict::Distinguished { at_round: 0 });
    }

    #[test]
    fn trace_covers_every_round_up_to_the_verdict() {
        let (verdict, trace) = wl_test_traced(&path(4).unwrap(), &star(3).unwrap(), Some(8));
        assert_eq!(verdict, Verdict::Distinguished { at_round: 1 });
        assert_eq!(trace.len(), 2);
        assert_eq!(trace[0].round, 0);
        assert_eq!(trace[1].left.colors.len(), 4);
        // Round 1 histograms must differ, matching the verdict.
        assert_ne!(trace[1].left.histogram, trace[1].right.histogram);
    }
}
