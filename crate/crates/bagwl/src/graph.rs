//! Undirected graph representation, the permutation action on it, and the
//! color-interning machinery shared by every refinement engine.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

// ============================================================================
// Graph
// ============================================================================

/// A simple undirected graph on nodes `0..num_nodes`, immutable after
/// construction.
///
/// Optional per-node labels are small integers that act as initial refinement
/// colors; an absent label vector is equivalent to the constant label `0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    num_nodes: usize,
    /// Sorted, deduplicated edges `(u, v)` with `u < v`.
    edges: Vec<(u32, u32)>,
    /// Sorted neighbor lists derived from `edges`.
    adj: Vec<Vec<u32>>,
    labels: Option<Vec<u32>>,
}

/// Errors from graph construction and the permutation action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphError {
    /// An edge joins a node to itself.
    SelfLoop { node: u32 },
    /// An edge endpoint is `>= num_nodes`.
    NodeOutOfRange { node: u32, num_nodes: usize },
    /// The label vector length differs from the node count.
    LabelCountMismatch { expected: usize, got: usize },
    /// The claimed permutation is not a bijection on `0..num_nodes`.
    NotAPermutation { num_nodes: usize },
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::SelfLoop { node } => write!(f, "self-loop at node {node}"),
            GraphError::NodeOutOfRange { node, num_nodes } => {
                write!(f, "node {node} out of range for {num_nodes} nodes")
            }
            GraphError::LabelCountMismatch { expected, got } => {
                write!(f, "expected {expected} labels, got {got}")
            }
            GraphError::NotAPermutation { num_nodes } => {
                write!(f, "input is not a permutation of 0..{num_nodes}")
            }
        }
    }
}

impl std::error::Error for GraphError {}

impl Graph {
    /// Builds a graph from an edge list. Edges may appear in any order and
    /// orientation; duplicates collapse to a single edge.
    pub fn new(num_nodes: usize, edges: &[(u32, u32)]) -> Result<Self, GraphError> {
        let mut set = BTreeSet::new();
        for &(a, b) in edges {
            if a == b {
                return Err(GraphError::SelfLoop { node: a });
            }
            for node in [a, b] {
                if node as usize >= num_nodes {
                    return Err(GraphError::NodeOutOfRange { node, num_nodes });
                }
            }
            set.insert((a.min(b), a.max(b)));
        }
        let edges: Vec<(u32, u32)> = set.into_iter().collect();
        let mut adj = vec![Vec::new(); num_nodes];
        for &(u, v) in &edges {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Self { num_nodes, edges, adj, labels: None })
    }

    /// Attaches one label per node.
    pub fn with_labels(mut self, labels: Vec<u32>) -> Result<Self, GraphError> {
        if labels.len() != self.num_nodes {
            return Err(GraphError::LabelCountMismatch {
                expected: self.num_nodes,
                got: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    #[inline]
    pub fn num_nodes(&self) -> usize {
        self.num_nodes
    }

    #[inline]
    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Edges as sorted `(u, v)` pairs with `u < v`.
    #[inline]
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    /// Sorted neighbors of `v`.
    ///
    /// # Panics
    /// Panics if `v` is out of range.
    #[inline]
    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }

    /// Number of edges incident to `v`.
    ///
    /// # Panics
    /// Panics if `v` is out of range.
    #[inline]
    pub fn degree(&self, v: u32) -> usize {
        self.adj[v as usize].len()
    }

    #[inline]
    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.adj[u as usize].binary_search(&v).is_ok()
    }

    /// The label of `v`; nodes of an unlabeled graph all carry label `0`.
    #[inline]
    pub fn label(&self, v: u32) -> u32 {
        match &self.labels {
            Some(l) => l[v as usize],
            None => 0,
        }
    }

    #[inline]
    pub fn labels(&self) -> Option<&[u32]> {
        self.labels.as_deref()
    }

    /// Relabels nodes by `sigma`: node `v` of `self` becomes node `sigma[v]`.
    /// Labels move with their nodes.
    pub fn apply_permutation(&self, sigma: &[u32]) -> Result<Graph, GraphError> {
        if !is_permutation(sigma, self.num_nodes) {
            return Err(GraphError::NotAPermutation { num_nodes: self.num_nodes });
        }
        let edges: Vec<(u32, u32)> = self
            .edges
            .iter()
            .map(|&(u, v)| (sigma[u as usize], sigma[v as usize]))
            .collect();
        let mut g = Graph::new(self.num_nodes, &edges)?;
        if let Some(labels) = &self.labels {
            let mut moved = vec![0u32; self.num_nodes];
            for v in 0..self.num_nodes {
                moved[sigma[v] as usize] = labels[v];
            }
            g = g.with_labels(moved)?;
        }
        Ok(g)
    }
}

/// Returns true iff `sigma` is a bijection on `0..n`.
pub fn is_permutation(sigma: &[u32], n: usize) -> bool {
    if sigma.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &s in sigma {
        if s as usize >= n || seen[s as usize] {
            return false;
        }
        seen[s as usize] = true;
    }
    true
}

// ============================================================================
// Edge-list text format
// ============================================================================

/// Errors from [`parse_edge_list`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseError {
    /// The input has no `n m` header line.
    MissingHeader,
    /// A token could not be read as the expected integer.
    BadToken { line: usize, token: String },
    /// A line has the wrong number of fields.
    BadLine { line: usize, expected: &'static str },
    /// Fewer edge lines than the header promised.
    TruncatedEdges { expected: usize, got: usize },
    /// Fewer label lines than nodes after a `labels:` marker.
    TruncatedLabels { expected: usize, got: usize },
    /// The edges or labels violate a graph invariant.
    Graph(GraphError),
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::MissingHeader => write!(f, "missing `n m` header line"),
            ParseError::BadToken { line, token } => {
                write!(f, "line {line}: cannot parse {token:?} as an integer")
            }
            ParseError::BadLine { line, expected } => {
                write!(f, "line {line}: expected {expected}")
            }
            ParseError::TruncatedEdges { expected, got } => {
                write!(f, "expected {expected} edge lines, found {got}")
            }
            ParseError::TruncatedLabels { expected, got } => {
                write!(f, "expected {expected} label lines, found {got}")
            }
            ParseError::Graph(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for ParseError {}

impl From<GraphError> for ParseError {
    fn from(e: GraphError) -> Self {
        ParseError::Graph(e)
    }
}

/// Parses the edge-list text format:
///
/// ```text
/// n m
/// u v        (m lines, 0-based endpoints)
/// labels:    (optional)
/// l          (n lines, one label per node)
/// ```
///
/// Blank lines and `#` comment lines are ignored.
pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (line_no, header) = lines.next().ok_or(ParseError::MissingHeader)?;
    let mut header_it = header.split_whitespace();
    let n = parse_int(header_it.next(), line_no)?;
    let m = parse_int(header_it.next(), line_no)?;
    if header_it.next().is_some() {
        return Err(ParseError::BadLine { line: line_no, expected: "`n m`" });
    }

    let mut edges = Vec::with_capacity(m as usize);
    while edges.len() < m as usize {
        let (line_no, line) = lines.next().ok_or(ParseError::TruncatedEdges {
            expected: m as usize,
            got: edges.len(),
        })?;
        let mut it = line.split_whitespace();
        let u = parse_int(it.next(), line_no)?;
        let v = parse_int(it.next(), line_no)?;
        if it.next().is_some() {
            return Err(ParseError::BadLine { line: line_no, expected: "`u v`" });
        }
        edges.push((u, v));
    }

    let graph = Graph::new(n as usize, &edges)?;
    match lines.next() {
        None => Ok(graph),
        Some((line_no, marker)) => {
            if marker != "labels:" {
                return Err(ParseError::BadLine { line: line_no, expected: "`labels:`" });
            }
            let mut labels = Vec::with_capacity(n as usize);
            while labels.len() < n as usize {
                let (line_no, line) = lines.next().ok_or(ParseError::TruncatedLabels {
                    expected: n as usize,
                    got: labels.len(),
                })?;
                labels.push(parse_int(Some(line), line_no)?);
            }
            Ok(graph.with_labels(labels)?)
        }
    }
}

fn parse_int(token: Option<&str>, line: usize) -> Result<u32, ParseError> {
    let token = token.ok_or(ParseError::BadLine { line, expected: "more fields" })?;
    token
        .parse()
        .map_err(|_| ParseError::BadToken { line, token: token.to_string() })
}

/// Renders a graph in the edge-list text format accepted by
/// [`parse_edge_list`].
pub fn format_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    out.push_str(&format!("{} {}\n", g.num_nodes(), g.num_edges()));
    for &(u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    if let Some(labels) = g.labels() {
        out.push_str("labels:\n");
        for &l in labels {
            out.push_str(&format!("{l}\n"));
        }
    }
    out
}

// ============================================================================
// Color interner
// ============================================================================

/// Tag bytes separating the key spaces of the different refinement update
/// rules. Two keys with different tags can never collide.
pub mod key_tags {
    /// `(label, root_flag)` initial node color.
    pub const NODE_INIT: u8 = 1;
    /// A sorted multiset of color ids.
    pub const MULTISET: u8 = 2;
    /// `(previous color, neighbor-multiset id)` node update.
    pub const WL_STEP: u8 = 3;
    /// `(previous color, neighbor-multiset id, own-needle id, neighborhood-needle-multiset id)` update.
    pub const BAG_STEP: u8 = 4;
    /// Sorted multiset of a subgraph's node (or pair) colors.
    pub const SUBGRAPH: u8 = 5;
    /// `(label_u, root_u, label_v, root_v, edge_flag, diagonal_flag)` initial pair color.
    pub const PAIR_INIT: u8 = 6;
    /// `(previous color, pair-multiset id)` pair update.
    pub const PAIR_STEP: u8 = 7;
    /// `(color(u,w), color(w,v))` intermediate pair of colors.
    pub const PAIR: u8 = 8;
}

/// Injective map from canonical byte keys to dense color ids.
///
/// Ids start at 0 and are assigned in first-seen order. Every multiset inside
/// a key must be sorted ascending before interning, which is what makes the
/// map injective on the intended key space without any hashing tricks: equal
/// ids imply byte-identical keys.
///
/// One interner is shared across both sides of a pairwise test so their color
/// ids are comparable; ids from different interners are not.
#[derive(Clone, Debug, Default)]
pub struct ColorInterner {
    table: HashMap<Vec<u8>, u32>,
    scratch: Vec<u8>,
}

impl ColorInterner {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of distinct colors allocated so far.
    #[inline]
    pub fn len(&self) -> usize {
        self.table.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    /// Interns a raw canonical key.
    pub fn intern(&mut self, key: &[u8]) -> u32 {
        if let Some(&id) = self.table.get(key) {
            return id;
        }
        let id = self.table.len() as u32;
        self.table.insert(key.to_vec(), id);
        id
    }

    /// Interns `tag` followed by `fields` in order. Fields that represent a
    /// multiset must be sorted by the caller.
    pub fn intern_tuple(&mut self, tag: u8, fields: &[u32]) -> u32 {
        let mut scratch = std::mem::take(&mut self.scratch);
        scratch.clear();
        scratch.push(tag);
        for f in fields {
            scratch.extend_from_slice(&f.to_le_bytes());
        }
        let id = self.intern(&scratch);
        self.scratch = scratch;
        id
    }
}

// ============================================================================
// Node partitions
// ============================================================================

/// The set partition induced by a color vector, canonicalized so that class
/// ids are dense and assigned in first-occurrence order. Two color vectors
/// induce the same partition iff their canonical forms are identical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodePartition {
    class_of: Vec<u32>,
    class_count: usize,
}

impl NodePartition {
    /// Canonicalizes `colors` into a partition.
    pub fn from_colors(colors: &[u32]) -> Self {
        let mut remap: HashMap<u32, u32> = HashMap::new();
        let mut class_of = Vec::with_capacity(colors.len());
        for &c in colors {
            let next = remap.len() as u32;
            let id = *remap.entry(c).or_insert(next);
            class_of.push(id);
        }
        Self { class_of, class_count: remap.len() }
    }

    #[inline]
    pub fn class_of(&self) -> &[u32] {
        &self.class_of
    }

    #[inline]
    pub fn class_count(&self) -> usize {
        self.class_count
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.class_of.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.class_of.is_empty()
    }
}

/// True iff `p` and `q` induce the same set partition, ignoring class-id
/// names.
///
/// # Panics
/// Panics if the partitions cover different numbers of nodes.
pub fn partitions_equal(p: &NodePartition, q: &NodePartition) -> bool {
    assert_eq!(p.len(), q.len(), "partitions cover different node counts");
    p.class_of == q.class_of
}

// ============================================================================
// Color-vector helpers
// ============================================================================

/// Sorted copy of a color vector: the canonical multiset-of-colors form used
/// as a fingerprint.
pub fn sorted_colors(colors: &[u32]) -> Vec<u32> {
    let mut sorted = colors.to_vec();
    sorted.sort_unstable();
    sorted
}

/// `(color, count)` pairs sorted by color.
pub fn color_histogram(colors: &[u32]) -> Vec<(u32, u32)> {
    let sorted = sorted_colors(colors);
    let mut hist: Vec<(u32, u32)> = Vec::new();
    for c in sorted {
        match hist.last_mut() {
            Some((color, count)) if *color == c => *count += 1,
            _ => hist.push((c, 1)),
        }
    }
    hist
}

// ============================================================================
// Tests
// ============================================================================
