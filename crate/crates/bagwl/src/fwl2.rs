//! Folklore 2-dimensional refinement: colors live on ordered node pairs, and
//! a pair's next color folds in the multiset over all nodes `w` of the color
//! pair `(c(u,w), c(w,v))`. Strictly more distinguishing than 1-WL; used as
//! the stronger base refiner for per-subgraph testing.

use crate::graph::{key_tags, partitions_equal, sorted_colors, ColorInterner, Graph};
use crate::verdict::{RoundTrace, SideTrace, Verdict};
use crate::wl::{joint_partition, ColoringHistory};

// ============================================================================
// Pair refinement primitives
// ============================================================================

/// Initial colors for all ordered pairs `(u, v)`, row-major: the interned
/// atomic type `(label_u, root_u, label_v, root_v, edge?, u==v?)`.
pub(crate) fn initial_pair_colors(
    n: usize,
    label: impl Fn(u32) -> u32,
    root: Option<u32>,
    has_edge: impl Fn(u32, u32) -> bool,
    interner: &mut ColorInterner,
) -> Vec<u32> {
    let mut colors = Vec::with_capacity(n * n);
    for u in 0..n as u32 {
        for v in 0..n as u32 {
            let key = [
                label(u),
                u32::from(root == Some(u)),
                label(v),
                u32::from(root == Some(v)),
                u32::from(u != v && has_edge(u, v)),
                u32::from(u == v),
            ];
            colors.push(interner.intern_tuple(key_tags::PAIR_INIT, &key));
        }
    }
    colors
}

/// One refinement round over all ordered pairs.
pub(crate) fn pair_refine_step(
    n: usize,
    colors: &[u32],
    interner: &mut ColorInterner,
) -> Vec<u32> {
    debug_assert_eq!(colors.len(), n * n);
    let mut next = Vec::with_capacity(n * n);
    let mut scratch: Vec<u32> = Vec::with_capacity(n);
    for u in 0..n {
        for v in 0..n {
            scratch.clear();
            for w in 0..n {
                let through =
                    interner.intern_tuple(key_tags::PAIR, &[colors[u * n + w], colors[w * n + v]]);
                scratch.push(through);
            }
            scratch.sort_unstable();
            let around = interner.intern_tuple(key_tags::MULTISET, &scratch);
            next.push(interner.intern_tuple(key_tags::PAIR_STEP, &[colors[u * n + v], around]));
        }
    }
    next
}

// ============================================================================
// Refinement and pairwise test
// ============================================================================

/// Refines `g`'s pair coloring for at most `max_rounds` rounds with a private
/// interner. The history's color vectors are row-major over ordered pairs.
pub fn fwl2_refine(g: &Graph, max_rounds: usize) -> ColoringHistory {
    let mut interner = ColorInterner::new();
    fwl2_refine_with(g, max_rounds, &mut interner)
}

/// [`fwl2_refine`] under a caller-supplied interner.
pub fn fwl2_refine_with(
    g: &Graph,
    max_rounds: usize,
    interner: &mut ColorInterner,
) -> ColoringHistory {
    let n = g.num_nodes();
    let mut colors =
        initial_pair_colors(n, |v| g.label(v), None, |u, v| g.has_edge(u, v), interner);
    let mut partition = crate::graph::NodePartition::from_colors(&colors);
    let mut rounds = vec![colors.clone()];
    let mut fingerprints = vec![sorted_colors(&colors)];
    let mut converged_at = None;
    for t in 1..=max_rounds {
        colors = pair_refine_step(n, &colors, interner);
        let next_partition = crate::graph::NodePartition::from_colors(&colors);
        rounds.push(colors.clone());
        fingerprints.push(sorted_colors(&colors));
        let stable = partitions_equal(&partition, &next_partition);
        partition = next_partition;
        if stable {
            converged_at = Some(t);
            break;
        }
    }
    ColoringHistory::from_parts(rounds, converged_at, fingerprints)
}

/// Default round cap for a pairwise 2-FWL test: the joint pair count.
pub fn default_max_rounds(g1: &Graph, g2: &Graph) -> usize {
    (g1.num_nodes() * g1.num_nodes() + g2.num_nodes() * g2.num_nodes()).max(1)
}

/// Runs the pairwise 2-FWL test on `g1` and `g2`. A `max_rounds` of `None`
/// uses [`default_max_rounds`].
pub fn fwl2_test(g1: &Graph, g2: &Graph, max_rounds: Option<usize>) -> Verdict {
    fwl2_test_impl(g1, g2, max_rounds, None)
}

/// [`fwl2_test`], also returning per-round pair-color traces.
pub fn fwl2_test_traced(
    g1: &Graph,
    g2: &Graph,
    max_rounds: Option<usize>,
) -> (Verdict, Vec<RoundTrace>) {
    let mut trace = Vec::new();
    let verdict = fwl2_test_impl(g1, g2, max_rounds, Some(&mut trace));
    (verdict, trace)
}

pub(crate) fn fwl2_test_impl(
    g1: &Graph,
    g2: &Graph,
    max_rounds: Option<usize>,
    mut trace: Option<&mut Vec<RoundTrace>>,
) -> Verdict {
    let max_rounds = max_rounds.unwrap_or_else(|| default_max_rounds(g1, g2));
    let (n1, n2) = (g1.num_nodes(), g2.num_nodes());
    let mut interner = ColorInterner::new();
    let mut c1 =
        initial_pair_colors(n1, |v| g1.label(v), None, |u, v| g1.has_edge(u, v), &mut interner);
    let mut c2 =
        initial_pair_colors(n2, |v| g2.label(v), None, |u, v| g2.has_edge(u, v), &mut interner);

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
        c1 = pair_refine_step(n1, &c1, &mut interner);
        c2 = pair_refine_step(n2, &c2, &mut interner);
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

// ============================================================================
// Tests
// ============================================================================

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{csl, cycle, disjoint_cycles, rooks4, shrikhande};
    use crate::wl::wl_test;

    #[test]
    fn distinguishes_cycle6_from_two_triangles() {
        let verdict = fwl2_test(&cycle(6).unwrap(), &disjoint_cycles(&[3, 3]).unwrap(), Some(80));
        assert!(verdict.is_distinguished(), "got {verdict}");
    }

    #[test]
    fn cannot_distinguish_the_two_strongly_regular_grid_graphs() {
        let verdict = fwl2_test(&rooks4(), &shrikhande(), Some(512));
        assert!(!verdict.is_distinguished(), "got {verdict}");
    }

    #[test]
    fn identical_inputs_are_possibly_isomorphic() {
        let g = csl(8, 3).unwrap();
        assert!(!fwl2_test(&g, &g, Some(128)).is_distinguished());
    }

    #[test]
    fn pair_refinement_subsumes_node_refinement_on_small_cases() {
        // Any pair 1-WL separates, 2-FWL separates too.
        let cases = [
            (cycle(6).unwrap(), disjoint_cycles(&[3, 3]).unwrap()),
            (cycle(6).unwrap(), cycle(7).unwrap()),
            (csl(8, 2).unwrap(), csl(8, 3).unwrap()),
        ];
        for (a, b) in cases {
            let wl_verdict = wl_test(&a, &b, Some(32));
            let fwl_verdict = fwl2_test(&a, &b, Some(256));
            if wl_verdict.is_distinguished() {
                assert!(fwl_verdict.is_distinguished());
            }
        }
    }

    #[test]
    fn initial_pair_colors_separate_atomic_types() {
        let g = cycle(4).unwrap();
        let mut interner = ColorInterner::new();
        let colors = initial_pair_colors(4, |v| g.label(v), None, |u, v| g.has_edge(u, v), &mut interner);
        // Exactly three atomic types on an unlabeled graph: diagonal, edge,
        // non-edge.
        let mut distinct: Vec<u32> = colors.clone();
        distinct.sort_unstable();
        distinct.dedup();
        assert_eq!(distinct.len(), 3);
        assert_eq!(colors[0], colors[5], "diagonal entries share a color");
        assert_ne!(colors[1], colors[2], "edge (0,1) vs non-edge (0,2)");
    }
}
