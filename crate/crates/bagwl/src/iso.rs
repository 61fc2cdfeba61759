//! Exact isomorphism checking, bag matching, and small-graph enumeration.
//!
//! The pairwise check is a backtracking search over node maps, pruned by
//! stable refinement colors (a valid map must preserve them) and by an
//! incremental adjacency-consistency test on 64-bit neighborhood masks. It
//! is exact: a returned witness is re-verified edge by edge, and exhaustion
//! of the search space is a proof of non-isomorphism. It is meant for small
//! graphs (up to 64 nodes structurally, comfortably fast to ~20).
//!
//! Bags are compared as multisets: subgraphs are bucketed by cheap exact-
//! preserving invariants, then matched within buckets by maximum bipartite
//! matching over the pairwise-isomorphism relation.

use std::collections::HashMap;

use crate::graph::{sorted_colors, ColorInterner, Graph};
use crate::policy::Bag;
use crate::wl::wl_refine_with;

// ============================================================================
// Errors
// ============================================================================

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsoError {
    /// The backtracking oracle packs neighborhoods into single machine words.
    TooLarge { num_nodes: usize },
    /// Exhaustive enumeration is only tabulated for very small sizes.
    EnumerationTooLarge { num_nodes: usize },
    EnumerationEmpty,
}

impl std::fmt::Display for IsoError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            IsoError::TooLarge { num_nodes } => {
                write!(f, "isomorphism oracle supports at most 64 nodes, got {num_nodes}")
            }
            IsoError::EnumerationTooLarge { num_nodes } => {
                write!(f, "graph enumeration supports at most 7 nodes, got {num_nodes}")
            }
            IsoError::EnumerationEmpty => write!(f, "graph enumeration needs at least 1 node"),
        }
    }
}

impl std::error::Error for IsoError {}

// ============================================================================
// Pairwise oracle
// ============================================================================

/// Outcome of an exact isomorphism check. A witness maps nodes of the first
/// graph to nodes of the second and has been re-verified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoResult {
    pub isomorphic: bool,
    pub witness: Option<Vec<u32>>,
}

impl IsoResult {
    fn no() -> Self {
        Self { isomorphic: false, witness: None }
    }
}

/// Exact isomorphism test between two labeled graphs.
pub fn are_isomorphic(g1: &Graph, g2: &Graph) -> Result<IsoResult, IsoError> {
    let n = g1.num_nodes();
    if n > 64 || g2.num_nodes() > 64 {
        return Err(IsoError::TooLarge { num_nodes: n.max(g2.num_nodes()) });
    }
    if n != g2.num_nodes() || g1.num_edges() != g2.num_edges() {
        return Ok(IsoResult::no());
    }
    if n == 0 {
        return Ok(IsoResult { isomorphic: true, witness: Some(Vec::new()) });
    }

    // Refine both graphs to stability under one interner. Any color-
    // histogram difference proves non-isomorphism; otherwise the stable
    // colors constrain candidate targets for each node.
    let mut interner = ColorInterner::new();
    let hist1 = wl_refine_with(g1, n, &mut interner);
    let hist2 = wl_refine_with(g2, n, &mut interner);
    let c1 = hist1.final_colors().to_vec();
    let c2 = hist2.final_colors().to_vec();
    if sorted_colors(&c1) != sorted_colors(&c2) {
        return Ok(IsoResult::no());
    }

    let adj2 = adjacency_masks(g2);
    let mut targets_by_color: HashMap<u32, Vec<u32>> = HashMap::new();
    for (w, &c) in c2.iter().enumerate() {
        targets_by_color.entry(c).or_default().push(w as u32);
    }

    let order = search_order(g1, &c1, &targets_by_color);
    let mut search = Search {
        g1,
        adj2: &adj2,
        c1: &c1,
        targets_by_color: &targets_by_color,
        order: &order,
        map: vec![u32::MAX; n],
        used: 0u64,
    };
    if !search.extend(0) {
        return Ok(IsoResult::no());
    }
    let witness = search.map;
    debug_assert!(verify_witness(g1, g2, &witness));
    Ok(IsoResult { isomorphic: true, witness: Some(witness) })
}

/// Neighborhoods as single-word bitsets.
fn adjacency_masks(g: &Graph) -> Vec<u64> {
    let mut masks = vec![0u64; g.num_nodes()];
    for &(u, v) in g.edges() {
        masks[u as usize] |= 1 << v;
        masks[v as usize] |= 1 << u;
    }
    masks
}

/// Assignment order: start from the most constrained color class, then
/// greedily prefer nodes with the most already-placed neighbors (ties break
/// toward rarer colors, then lower index). Keeping placed neighbors dense
/// makes the adjacency-consistency prune bite early.
fn search_order(
    g: &Graph,
    colors: &[u32],
    targets_by_color: &HashMap<u32, Vec<u32>>,
) -> Vec<u32> {
    let n = g.num_nodes();
    let class_size = |v: u32| targets_by_color[&colors[v as usize]].len();
    let mut order: Vec<u32> = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    let mut placed_neighbors = vec![0usize; n];
    for _ in 0..n {
        let next = (0..n as u32)
            .filter(|&v| !placed[v as usize])
            .min_by_key(|&v| {
                (
                    usize::MAX - placed_neighbors[v as usize],
                    class_size(v),
                    v,
                )
            })
            .expect("an unplaced node remains");
        placed[next as usize] = true;
        order.push(next);
        for &w in g.neighbors(next) {
            placed_neighbors[w as usize] += 1;
        }
    }
    order
}

struct Search<'a> {
    g1: &'a Graph,
    adj2: &'a [u64],
    c1: &'a [u32],
    targets_by_color: &'a HashMap<u32, Vec<u32>>,
    order: &'a [u32],
    map: Vec<u32>,
    used: u64,
}

impl Search<'_> {
    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let u = self.order[depth];
        // Targets already consumed by mapped neighbors of u must be exactly
        // the neighbors (in g2) of u's image, restricted to used targets.
        let mut required = 0u64;
        for &p in self.g1.neighbors(u) {
            let image = self.map[p as usize];
            if image != u32::MAX {
                required |= 1 << image;
            }
        }
        for &w in &self.targets_by_color[&self.c1[u as usize]] {
            let bit = 1u64 << w;
            if self.used & bit != 0 {
                continue;
            }
            if self.adj2[w as usize] & self.used != required {
                continue;
            }
            self.map[u as usize] = w;
            self.used |= bit;
            if self.extend(depth + 1) {
                return true;
            }
            self.map[u as usize] = u32::MAX;
            self.used &= !bit;
        }
        false
    }
}

/// Full re-check of a candidate witness: bijective, label-preserving, and an
/// exact edge correspondence.
fn verify_witness(g1: &Graph, g2: &Graph, map: &[u32]) -> bool {
    if !crate::graph::is_permutation(map, g2.num_nodes()) {
        return false;
    }
    let n = g1.num_nodes();
    if n != g2.num_nodes() || g1.num_edges() != g2.num_edges() {
        return false;
    }
    for v in 0..n as u32 {
        if g1.label(v) != g2.label(map[v as usize]) {
            return false;
        }
    }
    g1.edges()
        .iter()
        .all(|&(u, v)| g2.has_edge(map[u as usize], map[v as usize]))
}

// ============================================================================
// Bag matching
// ============================================================================

/// Whether two bags are equal as multisets of labeled-isomorphism classes.
///
/// Subgraphs (with roots folded into labels) are bucketed by stable
/// refinement fingerprints under a shared interner; buckets are then matched
/// exactly with the pairwise oracle via maximum bipartite matching.
pub fn bags_isomorphic(b1: &Bag, b2: &Bag) -> Result<bool, IsoError> {
    if b1.len() != b2.len() || b1.num_nodes() != b2.num_nodes() {
        return Ok(false);
    }
    if b1.is_empty() {
        return Ok(true);
    }
    let gs1: Vec<Graph> = (0..b1.len()).map(|i| b1.subgraph_as_graph(i)).collect();
    let gs2: Vec<Graph> = (0..b2.len()).map(|i| b2.subgraph_as_graph(i)).collect();

    let mut interner = ColorInterner::new();
    let mut buckets: HashMap<Vec<u32>, (Vec<usize>, Vec<usize>)> = HashMap::new();
    for (side, gs) in [(0usize, &gs1), (1, &gs2)] {
        for (i, g) in gs.iter().enumerate() {
            let history = wl_refine_with(g, g.num_nodes().max(1), &mut interner);
            let key = sorted_colors(history.final_colors());
            let bucket = buckets.entry(key).or_default();
            if side == 0 {
                bucket.0.push(i);
            } else {
                bucket.1.push(i);
            }
        }
    }

    for (lefts, rights) in buckets.values() {
        if lefts.len() != rights.len() {
            return Ok(false);
        }
        if !bucket_matches(&gs1, &gs2, lefts, rights)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Perfect matching between one bucket's two sides under the isomorphism
/// relation, by augmenting paths.
fn bucket_matches(
    gs1: &[Graph],
    gs2: &[Graph],
    lefts: &[usize],
    rights: &[usize],
) -> Result<bool, IsoError> {
    let k = lefts.len();
    let mut compatible = vec![vec![false; k]; k];
    for (a, &i) in lefts.iter().enumerate() {
        for (b, &j) in rights.iter().enumerate() {
            compatible[a][b] = are_isomorphic(&gs1[i], &gs2[j])?.isomorphic;
        }
    }
    let mut match_right: Vec<Option<usize>> = vec![None; k];
    for a in 0..k {
        let mut visited = vec![false; k];
        if !augment(a, &compatible, &mut match_right, &mut visited) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn augment(
    a: usize,
    compatible: &[Vec<bool>],
    match_right: &mut Vec<Option<usize>>,
    visited: &mut Vec<bool>,
) -> bool {
    for b in 0..compatible.len() {
        if compatible[a][b] && !visited[b] {
            visited[b] = true;
            let free = match match_right[b] {
                None => true,
                Some(prev) => augment(prev, compatible, match_right, visited),
            };
            if free {
                match_right[b] = Some(a);
                return true;
            }
        }
    }
    false
}

// ============================================================================
// Exhaustive enumeration
// ============================================================================

/// All unlabeled simple graphs on `n` nodes (1 <= n <= 7), one representative
/// per isomorphism class, in a deterministic order.
pub fn enumerate_graphs(n: usize) -> Result<Vec<Graph>, IsoError> {
    if n == 0 {
        return Err(IsoError::EnumerationEmpty);
    }
    if n > 7 {
        return Err(IsoError::EnumerationTooLarge { num_nodes: n });
    }
    let pairs: Vec<(u32, u32)> = (0..n as u32)
        .flat_map(|u| ((u + 1)..n as u32).map(move |v| (u, v)))
        .collect();
    let num_pairs = pairs.len();

    let mut reps: Vec<Graph> = Vec::new();
    let mut buckets: HashMap<(Vec<u32>, Vec<u32>), Vec<usize>> = HashMap::new();
    'masks: for mask in 0u32..(1u32 << num_pairs) {
        // Only keep edge sets whose degree sequence is already non-
        // increasing along the node order; every class has at least one
        // such labeling, so nothing is lost and the candidate pool shrinks
        // by roughly a factorial factor.
        let mut degrees = vec![0u32; n];
        let mut bits = mask;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            degrees[pairs[i].0 as usize] += 1;
            degrees[pairs[i].1 as usize] += 1;
        }
        if degrees.windows(2).any(|w| w[0] < w[1]) {
            continue;
        }

        let edges: Vec<(u32, u32)> = (0..num_pairs)
            .filter(|&i| mask & (1 << i) != 0)
            .map(|i| pairs[i])
            .collect();
        let g = Graph::new(n, &edges).expect("mask edges are simple and in range");

        let mut triangles: Vec<u32> = (0..n as u32)
            .map(|v| {
                g.neighbors(v)
                    .iter()
                    .map(|&w| {
                        g.neighbors(v)
                            .iter()
                            .filter(|&&x| x > w && g.has_edge(w, x))
                            .count() as u32
                    })
                    .sum()
            })
            .collect();
        triangles.sort_unstable();

        let bucket = buckets.entry((degrees, triangles)).or_default();
        for &rep in bucket.iter() {
            if are_isomorphic(&reps[rep], &g)?.isomorphic {
                continue 'masks;
            }
        }
        bucket.push(reps.len());
        reps.push(g);
    }
    Ok(reps)
}

// ============================================================================
// Tests
// ============================================================================

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{csl, cycle, disjoint_cycles, path, rooks4, shrikhande, star};
    use crate::policy::{apply_policy, PolicySpec};
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_permutation(n: usize, rng: &mut ChaCha8Rng) -> Vec<u32> {
        let mut sigma: Vec<u32> = (0..n as u32).collect();
        sigma.shuffle(rng);
        sigma
    }

    // -------------------------------------------------------------------------
    // Pairwise oracle
    // -------------------------------------------------------------------------

    #[test]
    fn permuted_graphs_are_isomorphic_with_verified_witness() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for g in [
            cycle(9).unwrap(),
            csl(12, 3).unwrap(),
            rooks4(),
            disjoint_cycles(&[3, 4, 5]).unwrap(),
        ] {
            let sigma = random_permutation(g.num_nodes(), &mut rng);
            let h = g.apply_permutation(&sigma).unwrap();
            let result = are_isomorphic(&g, &h).unwrap();
            assert!(result.isomorphic);
            let witness = result.witness.unwrap();
            for &(u, v) in g.edges() {
                assert!(h.has_edge(witness[u as usize], witness[v as usize]));
            }
        }
    }

    #[test]
    fn strongly_regular_twins_are_not_isomorphic() {
        let result = are_isomorphic(&rooks4(), &shrikhande()).unwrap();
        assert!(!result.isomorphic);
        assert!(result.witness.is_none());
    }

    #[test]
    fn skip_lengths_give_nonisomorphic_circulants() {
        assert!(!are_isomorphic(&csl(12, 2).unwrap(), &csl(12, 3).unwrap()).unwrap().isomorphic);
        assert!(!are_isomorphic(&csl(12, 3).unwrap(), &csl(12, 5).unwrap()).unwrap().isomorphic);
        // Skips k and n-k wrap to the same graph.
        assert!(are_isomorphic(&csl(12, 3).unwrap(), &csl(12, 9).unwrap()).unwrap().isomorphic);
    }

    #[test]
    fn cycle_and_split_cycles_differ() {
        let c6 = cycle(6).unwrap();
        let cc = disjoint_cycles(&[3, 3]).unwrap();
        assert!(!are_isomorphic(&c6, &cc).unwrap().isomorphic);
    }

    #[test]
    fn labels_must_be_preserved() {
        let a = path(3).unwrap().with_labels(vec![1, 0, 0]).unwrap();
        let b = path(3).unwrap().with_labels(vec![0, 1, 0]).unwrap();
        let c = path(3).unwrap().with_labels(vec![1, 0, 0]).unwrap();
        assert!(!are_isomorphic(&a, &b).unwrap().isomorphic);
        assert!(are_isomorphic(&a, &c).unwrap().isomorphic);
        // End labels swap under the path reversal.
        let d = path(3).unwrap().with_labels(vec![0, 0, 1]).unwrap();
        assert!(are_isomorphic(&a, &d).unwrap().isomorphic);
    }

    #[test]
    fn size_64_limit_is_enforced() {
        let big = cycle(65).unwrap();
        assert_eq!(
            are_isomorphic(&big, &big),
            Err(IsoError::TooLarge { num_nodes: 65 })
        );
    }

    #[test]
    fn empty_graphs_are_isomorphic() {
        let a = Graph::new(0, &[]).unwrap();
        let b = Graph::new(0, &[]).unwrap();
        let result = are_isomorphic(&a, &b).unwrap();
        assert!(result.isomorphic);
        assert_eq!(result.witness, Some(vec![]));
    }

    // -------------------------------------------------------------------------
    // Bag matching
    // -------------------------------------------------------------------------

    #[test]
    fn policy_bags_of_permuted_graphs_match() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let g = csl(8, 3).unwrap();
        let sigma = random_permutation(8, &mut rng);
        let h = g.apply_permutation(&sigma).unwrap();
        for spec in ["nd", "ed", "ego:1", "ego+:2", "se"] {
            let spec = PolicySpec::parse(spec).unwrap();
            let b1 = apply_policy(&g, &spec).unwrap();
            let b2 = apply_policy(&h, &spec).unwrap();
            assert!(bags_isomorphic(&b1, &b2).unwrap(), "{spec}");
        }
    }

    #[test]
    fn bags_with_different_contents_do_not_match() {
        let spec = PolicySpec::parse("nd").unwrap();
        let b1 = apply_policy(&cycle(6).unwrap(), &spec).unwrap();
        let b2 = apply_policy(&disjoint_cycles(&[3, 3]).unwrap(), &spec).unwrap();
        assert!(!bags_isomorphic(&b1, &b2).unwrap());
    }

    #[test]
    fn roots_participate_in_bag_matching() {
        let g = path(3).unwrap();
        let edges = vec![g.edges().to_vec(), g.edges().to_vec()];
        let rooted_ends = Bag::from_parts(3, edges.clone(), vec![Some(0), Some(2)], None).unwrap();
        let rooted_mid = Bag::from_parts(3, edges, vec![Some(1), Some(1)], None).unwrap();
        assert!(!bags_isomorphic(&rooted_ends, &rooted_mid).unwrap());
        // The two end roots are exchangeable with each other.
        let rooted_ends_swapped =
            Bag::from_parts(3, vec![g.edges().to_vec(), g.edges().to_vec()], vec![Some(2), Some(0)], None)
                .unwrap();
        assert!(bags_isomorphic(&rooted_ends, &rooted_ends_swapped).unwrap());
    }

    #[test]
    fn deleted_node_subgraphs_of_a_circulant_are_all_alike() {
        let spec = PolicySpec::parse("nd").unwrap();
        let bag = apply_policy(&csl(8, 2).unwrap(), &spec).unwrap();
        let first = bag.subgraph_as_graph(0);
        for i in 1..bag.len() {
            assert!(are_isomorphic(&first, &bag.subgraph_as_graph(i)).unwrap().isomorphic);
        }
    }

    // -------------------------------------------------------------------------
    // Enumeration
    // -------------------------------------------------------------------------

    #[test]
    fn class_counts_match_the_known_sequence() {
        let expected = [1usize, 2, 4, 11, 34, 156, 1044];
        for (n, &want) in expected.iter().enumerate().map(|(i, w)| (i + 1, w)) {
            let got = enumerate_graphs(n).unwrap().len();
            assert_eq!(got, want, "n = {n}");
        }
    }

    #[test]
    fn enumerated_representatives_are_pairwise_distinct() {
        let graphs = enumerate_graphs(5).unwrap();
        for i in 0..graphs.len() {
            for j in (i + 1)..graphs.len() {
                assert!(!are_isomorphic(&graphs[i], &graphs[j]).unwrap().isomorphic);
            }
        }
    }

    #[test]
    fn enumeration_contains_the_usual_suspects() {
        let graphs = enumerate_graphs(5).unwrap();
        let targets = [
            cycle(5).unwrap(),
            path(5).unwrap(),
            star(4).unwrap(),
            crate::generators::complete(5).unwrap(),
            Graph::new(5, &[]).unwrap(),
        ];
        for t in &targets {
            assert!(
                graphs.iter().any(|g| are_isomorphic(g, t).unwrap().isomorphic),
                "missing a 5-node class"
            );
        }
    }

    #[test]
    fn enumeration_bounds_are_enforced() {
        assert_eq!(enumerate_graphs(0), Err(IsoError::EnumerationEmpty));
        assert_eq!(
            enumerate_graphs(8),
            Err(IsoError::EnumerationTooLarge { num_nodes: 8 })
        );
    }
}
