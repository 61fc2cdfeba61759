//! Constructors for the graph families the testers are measured on, plus a
//! strong-regularity analyzer.

use crate::graph::Graph;
use std::fmt;

/// Errors from generator parameter validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorError {
    /// A size parameter is below the family's minimum.
    TooSmall { what: &'static str, min: usize, got: usize },
    /// A skip-link width falls outside `[2, n-2]`, where the skip edges would
    /// coincide with cycle edges or leave the vertex set.
    BadSkip { n: usize, k: usize },
}

impl fmt::Display for GeneratorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorError::TooSmall { what, min, got } => {
                write!(f, "{what} must be at least {min}, got {got}")
            }
            GeneratorError::BadSkip { n, k } => {
                write!(f, "skip width {k} invalid for {n} nodes: need 2 <= k <= n-2")
            }
        }
    }
}

impl std::error::Error for GeneratorError {}

// ============================================================================
// Elementary families
// ============================================================================

/// The cycle on `n >= 3` nodes.
pub fn cycle(n: usize) -> Result<Graph, GeneratorError> {
    if n < 3 {
        return Err(GeneratorError::TooSmall { what: "cycle size", min: 3, got: n });
    }
    let edges: Vec<(u32, u32)> = (0..n).map(|i| (i as u32, ((i + 1) % n) as u32)).collect();
    Ok(Graph::new(n, &edges).expect("cycle edges are valid"))
}

/// The path on `n >= 1` nodes (`n - 1` edges).
pub fn path(n: usize) -> Result<Graph, GeneratorError> {
    if n < 1 {
        return Err(GeneratorError::TooSmall { what: "path size", min: 1, got: n });
    }
    let edges: Vec<(u32, u32)> = (1..n).map(|i| ((i - 1) as u32, i as u32)).collect();
    Ok(Graph::new(n, &edges).expect("path edges are valid"))
}

/// The star with `k >= 1` leaves: node 0 is the center, `k + 1` nodes total.
pub fn star(k: usize) -> Result<Graph, GeneratorError> {
    if k < 1 {
        return Err(GeneratorError::TooSmall { what: "leaf count", min: 1, got: k });
    }
    let edges: Vec<(u32, u32)> = (1..=k).map(|i| (0, i as u32)).collect();
    Ok(Graph::new(k + 1, &edges).expect("star edges are valid"))
}

/// The complete graph on `n >= 1` nodes.
pub fn complete(n: usize) -> Result<Graph, GeneratorError> {
    if n < 1 {
        return Err(GeneratorError::TooSmall { what: "node count", min: 1, got: n });
    }
    let mut edges = Vec::with_capacity(n * (n - 1) / 2);
    for u in 0..n {
        for v in (u + 1)..n {
            edges.push((u as u32, v as u32));
        }
    }
    Ok(Graph::new(n, &edges).expect("complete-graph edges are valid"))
}

/// Disjoint cycles of the given sizes (each `>= 3`), laid out consecutively.
pub fn disjoint_cycles(sizes: &[usize]) -> Result<Graph, GeneratorError> {
    if sizes.is_empty() {
        return Err(GeneratorError::TooSmall { what: "cycle count", min: 1, got: 0 });
    }
    let mut edges = Vec::new();
    let mut offset = 0usize;
    for &s in sizes {
        if s < 3 {
            return Err(GeneratorError::TooSmall { what: "cycle size", min: 3, got: s });
        }
        for i in 0..s {
            edges.push(((offset + i) as u32, (offset + (i + 1) % s) as u32));
        }
        offset += s;
    }
    Ok(Graph::new(offset, &edges).expect("cycle edges are valid"))
}

// ============================================================================
// Circulant skip-link graphs
// ============================================================================

/// The circulant skip-link graph on `n >= 7` nodes: an `n`-cycle plus chords
/// `i <-> i +- k (mod n)`.
///
/// `k` must lie in `[2, n-2]` so the chords neither coincide with cycle edges
/// nor leave the vertex set. When `k = n/2` each chord is generated from both
/// ends and stored once, so the graph is 3-regular instead of 4-regular.
pub fn csl(n: usize, k: usize) -> Result<Graph, GeneratorError> {
    if n < 7 {
        return Err(GeneratorError::TooSmall { what: "node count", min: 7, got: n });
    }
    if k < 2 || k > n - 2 {
        return Err(GeneratorError::BadSkip { n, k });
    }
    let mut edges = Vec::with_capacity(2 * n);
    for i in 0..n {
        edges.push((i as u32, ((i + 1) % n) as u32));
        edges.push((i as u32, ((i + k) % n) as u32));
    }
    Ok(Graph::new(n, &edges).expect("skip-link edges are valid"))
}

// ============================================================================
// Strongly regular 4x4 grid graphs
// ============================================================================

/// Node index of grid cell `(row, col)`: cells are numbered left to right,
/// then top to bottom, so node 0 is the top-left corner and node 1 sits to
/// its right. With this numbering, edge `(0, 1)` is the same grid edge in
/// both 16-node constructions below.
#[inline]
fn grid16(row: usize, col: usize) -> u32 {
    (row * 4 + col) as u32
}

/// The 4x4 rook's graph: cells of a 4x4 grid, adjacent iff they share a row
/// or a column. Strongly regular with parameters (16, 6, 2, 2).
pub fn rooks4() -> Graph {
    let mut edges = Vec::new();
    for r in 0..4 {
        for c in 0..4 {
            let v = grid16(r, c);
            for c2 in (c + 1)..4 {
                edges.push((v, grid16(r, c2)));
            }
            for r2 in (r + 1)..4 {
                edges.push((v, grid16(r2, c)));
            }
        }
    }
    Graph::new(16, &edges).expect("rook edges are valid")
}

/// The Shrikhande graph on the 4x4 torus: cell `(r, c)` is adjacent to the
/// cells at offsets `(0, +-1)`, `(+-1, 0)`, and `+-(1, 1)` (mod 4). Strongly
/// regular with the same parameters (16, 6, 2, 2) as the rook's graph, yet
/// not isomorphic to it.
pub fn shrikhande() -> Graph {
    const OFFSETS: [(usize, usize); 6] = [(0, 1), (0, 3), (1, 0), (3, 0), (1, 1), (3, 3)];
    let mut edges = Vec::new();
    for r in 0..4 {
        for c in 0..4 {
            for &(dr, dc) in &OFFSETS {
                edges.push((grid16(r, c), grid16((r + dr) % 4, (c + dc) % 4)));
            }
        }
    }
    Graph::new(16, &edges).expect("torus edges are valid")
}

// ============================================================================
// Strong regularity
// ============================================================================

/// Parameters `(n, k, lambda, mu)` of a strongly regular graph: `k`-regular
/// on `n` nodes, adjacent pairs share exactly `lambda` neighbors, and
/// non-adjacent pairs exactly `mu`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SrParams {
    pub n: usize,
    pub k: usize,
    pub lambda: usize,
    pub mu: usize,
}

/// Brute-force strong-regularity check. Returns `None` when the graph is
/// irregular, has non-uniform common-neighbor counts, or is complete or
/// edgeless (where one of the two counts is vacuous).
pub fn sr_parameters(g: &Graph) -> Option<SrParams> {
    let n = g.num_nodes();
    if n < 2 {
        return None;
    }
    let k = g.degree(0);
    if (1..n).any(|v| g.degree(v as u32) != k) {
        return None;
    }

    let mut lambda: Option<usize> = None;
    let mut mu: Option<usize> = None;
    for u in 0..n as u32 {
        for v in (u + 1)..n as u32 {
            let common = common_neighbor_count(g, u, v);
            let slot = if g.has_edge(u, v) { &mut lambda } else { &mut mu };
            match *slot {
                None => *slot = Some(common),
                Some(prev) if prev != common => return None,
                Some(_) => {}
            }
        }
    }
    // Complete or edgeless graphs leave one count unobserved.
    let (lambda, mu) = (lambda?, mu?);
    let params = SrParams { n, k, lambda, mu };
    debug_assert_eq!(
        (n - k - 1) * mu,
        k * (k - lambda - 1),
        "strongly regular parameter identity violated"
    );
    Some(params)
}

fn common_neighbor_count(g: &Graph, u: u32, v: u32) -> usize {
    // Both neighbor lists are sorted; walk them together.
    let (a, b) = (g.neighbors(u), g.neighbors(v));
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

// ============================================================================
// Tests
// ============================================================================

#[cfg(test)]
mod tests {
    use super::*;

    // -------------------------------------------------------------------------
    // Elementary families
    // -------------------------------------------------------------------------

    #[test]
    fn path_and_star_degree_sequences() {
        let p = path(4).unwrap();
        let mut degrees: Vec<usize> = (0..4).map(|v| p.degree(v)).collect();
        degrees.sort_unstable();
        assert_eq!(degrees, [1, 1, 2, 2]);

        let s = star(3).unwrap();
        let mut degrees: Vec<usize> = (0..4).map(|v| s.degree(v)).collect();
        degrees.sort_unstable();
        assert_eq!(degrees, [1, 1, 1, 3]);
    }

    #[test]
    fn two_triangles_are_six_nodes_six_edges_two_regular() {
        let g = disjoint_cycles(&[3, 3]).unwrap();
        assert_eq!(g.num_nodes(), 6);
        assert_eq!(g.num_edges(), 6);
        assert!((0..6).all(|v| g.degree(v) == 2));
    }

    #[test]
    fn complete_graph_edge_count() {
        assert_eq!(complete(5).unwrap().num_edges(), 10);
        assert_eq!(complete(1).unwrap().num_edges(), 0);
    }

    #[test]
    fn size_minimums_are_enforced() {
        assert!(cycle(2).is_err());
        assert!(path(0).is_err());
        assert!(star(0).is_err());
        assert!(disjoint_cycles(&[3, 2]).is_err());
        assert!(disjoint_cycles(&[]).is_err());
    }

    // -------------------------------------------------------------------------
    // Skip-link graphs
    // -------------------------------------------------------------------------

    #[test]
    fn skip_link_is_4_regular_with_2n_edges() {
        let g = csl(8, 2).unwrap();
        assert_eq!(g.num_edges(), 16);
        assert!((0..8).all(|v| g.degree(v) == 4));

        let g = csl(41, 9).unwrap();
        assert_eq!(g.num_edges(), 82);
        assert!((0..41).all(|v| g.degree(v) == 4));
    }

    #[test]
    fn skip_width_bounds_are_enforced() {
        assert_eq!(csl(7, 1).unwrap_err(), GeneratorError::BadSkip { n: 7, k: 1 });
        assert_eq!(csl(7, 6).unwrap_err(), GeneratorError::BadSkip { n: 7, k: 6 });
        assert!(csl(6, 2).is_err());
    }

    #[test]
    fn half_width_skip_stores_each_chord_once() {
        // k = n/2 generates every chord from both ends; dedup leaves a
        // 3-regular graph.
        let g = csl(8, 4).unwrap();
        assert_eq!(g.num_edges(), 12);
        assert!((0..8).all(|v| g.degree(v) == 3));
    }

    // -------------------------------------------------------------------------
    // Strongly regular graphs
    // -------------------------------------------------------------------------

    #[test]
    fn rook_and_shrikhande_share_parameters() {
        let expected = SrParams { n: 16, k: 6, lambda: 2, mu: 2 };
        assert_eq!(sr_parameters(&rooks4()), Some(expected));
        assert_eq!(sr_parameters(&shrikhande()), Some(expected));
    }

    #[test]
    fn grid_edge_0_1_exists_in_both_grid_graphs() {
        // Nodes 0 and 1 are horizontally adjacent grid cells under the
        // row-major numbering; several tests delete exactly this edge.
        assert!(rooks4().has_edge(0, 1));
        assert!(shrikhande().has_edge(0, 1));
    }

    #[test]
    fn pentagon_is_strongly_regular() {
        assert_eq!(
            sr_parameters(&cycle(5).unwrap()),
            Some(SrParams { n: 5, k: 2, lambda: 0, mu: 1 })
        );
    }

    #[test]
    fn irregular_and_degenerate_graphs_are_not_strongly_regular() {
        assert_eq!(sr_parameters(&path(4).unwrap()), None);
        assert_eq!(sr_parameters(&cycle(6).unwrap()), None);
        // Complete graphs have no non-adjacent pair to measure.
        assert_eq!(sr_parameters(&complete(4).unwrap()), None);
    }
}
