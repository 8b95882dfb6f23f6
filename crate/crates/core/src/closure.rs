//! Breadth-first closure of a labelled multigraph under pluggable moves,
//! deduplicating states up to isomorphism.
//!
//! Isomorphism is decided by canonical forms. A form is the lexicographic
//! minimum of a position-ordered encoding over every discrete ordering
//! reachable by colour refinement and individualization. Refinement only
//! ever splits cells by isomorphism-invariant data, so the set of candidate
//! encodings is the same for isomorphic graphs and the minimum is a
//! complete invariant. The search is exhaustive inside each cell, which is
//! why node counts are bounded.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::triple::{canonical, involution, shift, Triple};

pub const DEFAULT_MAX_NODES: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge endpoint {0} is not a node")]
    MissingNode(usize),
    #[error("edge multiplicity must be at least 1")]
    ZeroMultiplicity,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("graph has {nodes} nodes, canonicalizer limit is {limit}")]
pub struct SizeLimitError {
    pub nodes: usize,
    pub limit: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClosureError {
    #[error(transparent)]
    SizeLimit(#[from] SizeLimitError),
    #[error("closure budget exceeded after {classes} classes and {steps} expansions")]
    BudgetExceeded { classes: usize, steps: usize },
}

/// Undirected multigraph with integer node and edge labels.
///
/// Parallel edges with equal labels are merged into one edge with summed
/// multiplicity; edges with different labels between the same nodes stay
/// distinct. Self-loops are allowed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LabeledGraph {
    labels: Vec<i64>,
    edges: BTreeMap<(usize, usize, i64), u64>,
}

impl LabeledGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_node(&mut self, label: i64) -> usize {
        self.labels.push(label);
        self.labels.len() - 1
    }

    pub fn add_edge(&mut self, u: usize, v: usize, label: i64, mult: u64) -> Result<(), GraphError> {
        for n in [u, v] {
            if n >= self.labels.len() {
                return Err(GraphError::MissingNode(n));
            }
        }
        if mult == 0 {
            return Err(GraphError::ZeroMultiplicity);
        }
        let key = (u.min(v), u.max(v), label);
        *self.edges.entry(key).or_insert(0) += mult;
        Ok(())
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[i64] {
        &self.labels
    }

    /// `(u, v, label, multiplicity)` with `u <= v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, i64, u64)> + '_ {
        self.edges.iter().map(|(&(u, v, l), &m)| (u, v, l, m))
    }

    /// Copy with nodes renumbered so that old node `i` becomes `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> LabeledGraph {
        assert_eq!(perm.len(), self.labels.len());
        let mut labels = vec![0; self.labels.len()];
        for (i, &p) in perm.iter().enumerate() {
            labels[p] = self.labels[i];
        }
        let mut g = LabeledGraph { labels, edges: BTreeMap::new() };
        for (u, v, l, m) in self.edges() {
            g.add_edge(perm[u], perm[v], l, m).expect("permutation keeps nodes");
        }
        g
    }

    /// Serialize in the graph spec format read by [`parse_graph`].
    pub fn to_spec(&self) -> String {
        let mut out = String::new();
        for (i, l) in self.labels.iter().enumerate() {
            out.push_str(&format!("node {i} label={l}\n"));
        }
        for (u, v, l, m) in self.edges() {
            out.push_str(&format!("edge {u} {v} label={l} mult={m}\n"));
        }
        out
    }
}

/// Parse the line-oriented graph spec format:
///
/// ```text
/// node <id> label=<int>
/// edge <id> <id> label=<int> [mult=<int>]
/// ```
///
/// Node ids are arbitrary tokens, numbered in order of declaration. `#`
/// starts a comment line.
pub fn parse_graph(text: &str) -> Result<LabeledGraph, GraphError> {
    let mut g = LabeledGraph::new();
    let mut ids: HashMap<String, usize> = HashMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let err = |message: String| GraphError::Parse { line, message };
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        let (positional, keyed): (Vec<&str>, Vec<&str>) = tokens.iter().partition(|t| !t.contains('='));
        let mut fields: HashMap<&str, i64> = HashMap::new();
        for kv in keyed {
            let (k, v) = kv.split_once('=').expect("partitioned on '='");
            let v: i64 = v.parse().map_err(|_| err(format!("`{v}` is not an integer")))?;
            if fields.insert(k, v).is_some() {
                return Err(err(format!("repeated key `{k}`")));
            }
        }
        let take = |fields: &mut HashMap<&str, i64>, key: &str| fields.remove(key);
        match positional.as_slice() {
            ["node", id] => {
                let label = take(&mut fields, "label").ok_or_else(|| err("node needs label=".into()))?;
                if let Some(k) = fields.keys().next() {
                    return Err(err(format!("unknown key `{k}`")));
                }
                if ids.contains_key(*id) {
                    return Err(err(format!("duplicate node `{id}`")));
                }
                ids.insert(id.to_string(), g.add_node(label));
            }
            ["edge", a, b] => {
                let label = take(&mut fields, "label").ok_or_else(|| err("edge needs label=".into()))?;
                let mult = take(&mut fields, "mult").unwrap_or(1);
                if let Some(k) = fields.keys().next() {
                    return Err(err(format!("unknown key `{k}`")));
                }
                let u = *ids.get(*a).ok_or_else(|| err(format!("unknown node `{a}`")))?;
                let v = *ids.get(*b).ok_or_else(|| err(format!("unknown node `{b}`")))?;
                let mult = u64::try_from(mult)
                    .ok()
                    .filter(|m| *m >= 1)
                    .ok_or_else(|| err("mult must be at least 1".into()))?;
                g.add_edge(u, v, label, mult).map_err(|e| err(e.to_string()))?;
            }
            _ => return Err(err(format!("cannot parse `{trimmed}`"))),
        }
    }
    Ok(g)
}

/// Isomorphism-invariant byte encoding of a graph.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm(")?;
        for b in &self.0 {
            write!(f, "{b:02x}")?;
        }
        write!(f, ")")
    }
}

/// Adjacency as `(neighbour, edge label, multiplicity)`.
fn adjacency(g: &LabeledGraph) -> Vec<Vec<(usize, i64, u64)>> {
    let mut adj = vec![Vec::new(); g.node_count()];
    for (u, v, l, m) in g.edges() {
        adj[u].push((v, l, m));
        if u != v {
            adj[v].push((u, l, m));
        }
    }
    adj
}

/// Replace colours by their rank among the distinct values of `keys`.
fn rank<K: Ord + Clone>(keys: &[K]) -> Vec<usize> {
    let distinct: BTreeSet<K> = keys.iter().cloned().collect();
    let order: Vec<K> = distinct.into_iter().collect();
    keys.iter()
        .map(|k| order.binary_search(k).expect("key present"))
        .collect()
}

fn refine(adj: &[Vec<(usize, i64, u64)>], mut colors: Vec<usize>) -> Vec<usize> {
    let mut classes = colors.iter().collect::<BTreeSet<_>>().len();
    loop {
        let keys: Vec<(usize, Vec<(i64, u64, usize)>)> = adj
            .iter()
            .enumerate()
            .map(|(v, nbrs)| {
                let mut sig: Vec<(i64, u64, usize)> =
                    nbrs.iter().map(|&(w, l, m)| (l, m, colors[w])).collect();
                sig.sort_unstable();
                (colors[v], sig)
            })
            .collect();
        let next = rank(&keys);
        let next_classes = next.iter().collect::<BTreeSet<_>>().len();
        colors = next;
        if next_classes == classes {
            return colors;
        }
        classes = next_classes;
    }
}

fn encode(g: &LabeledGraph, position: &[usize]) -> Vec<i64> {
    let n = g.node_count();
    let mut out = Vec::with_capacity(2 + n + 4 * g.edges.len());
    out.push(n as i64);
    let mut labels = vec![0; n];
    for (v, &p) in position.iter().enumerate() {
        labels[p] = g.labels[v];
    }
    out.extend(labels);
    let mut edges: Vec<[i64; 4]> = g
        .edges()
        .map(|(u, v, l, m)| {
            let (a, b) = (position[u], position[v]);
            [a.min(b) as i64, a.max(b) as i64, l, m as i64]
        })
        .collect();
    edges.sort_unstable();
    out.push(edges.len() as i64);
    out.extend(edges.into_iter().flatten());
    out
}

/// Neighbourhood of `v` ignoring `other`: loops, then edges to every node
/// other than `v` and `other`.
fn neighbourhood(adj: &[Vec<(usize, i64, u64)>], v: usize, other: usize) -> Vec<(usize, i64, u64)> {
    let mut n: Vec<(usize, i64, u64)> = adj[v]
        .iter()
        .filter(|(w, _, _)| *w != other)
        .map(|&(w, l, m)| (if w == v { usize::MAX } else { w }, l, m))
        .collect();
    n.sort_unstable();
    n
}

/// One vertex per twin class of `cell`. Twins are vertices whose
/// transposition is an automorphism; individualizing either one leads to
/// isomorphic subtrees with the same minimum encoding.
fn twin_representatives(adj: &[Vec<(usize, i64, u64)>], cell: &[usize]) -> Vec<usize> {
    let mut reps: Vec<usize> = Vec::new();
    for &v in cell {
        let twin = reps
            .iter()
            .any(|&r| neighbourhood(adj, r, v) == neighbourhood(adj, v, r));
        if !twin {
            reps.push(v);
        }
    }
    reps
}

fn search(g: &LabeledGraph, adj: &[Vec<(usize, i64, u64)>], colors: Vec<usize>, best: &mut Option<Vec<i64>>) {
    let mut cells: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (v, &c) in colors.iter().enumerate() {
        cells.entry(c).or_default().push(v);
    }
    match cells.values().find(|cell| cell.len() > 1) {
        None => {
            let candidate = encode(g, &colors);
            if best.as_ref().map_or(true, |b| candidate < *b) {
                *best = Some(candidate);
            }
        }
        Some(cell) => {
            for v in twin_representatives(adj, cell) {
                let keys: Vec<(usize, bool)> = colors
                    .iter()
                    .enumerate()
                    .map(|(w, &c)| (c, w != v))
                    .collect();
                let individualized = refine(adj, rank(&keys));
                search(g, adj, individualized, best);
            }
        }
    }
}

pub fn canonical_graph_bounded(g: &LabeledGraph, max_nodes: usize) -> Result<CanonicalForm, SizeLimitError> {
    if g.node_count() > max_nodes {
        return Err(SizeLimitError {
            nodes: g.node_count(),
            limit: max_nodes,
        });
    }
    let adj = adjacency(g);
    let colors = refine(&adj, rank(&g.labels));
    let mut best = None;
    search(g, &adj, colors, &mut best);
    let words = best.unwrap_or_else(|| vec![0, 0]);
    Ok(CanonicalForm(
        words.iter().flat_map(|w| w.to_be_bytes()).collect(),
    ))
}

pub fn canonical_graph(g: &LabeledGraph) -> Result<CanonicalForm, SizeLimitError> {
    canonical_graph_bounded(g, DEFAULT_MAX_NODES)
}

pub fn iso(g1: &LabeledGraph, g2: &LabeledGraph) -> Result<bool, SizeLimitError> {
    if g1.node_count() != g2.node_count() || g1.edges.len() != g2.edges.len() {
        // still enforce the bound so callers see the same error either way
        canonical_graph(g1)?;
        canonical_graph(g2)?;
        return Ok(false);
    }
    Ok(canonical_graph(g1)? == canonical_graph(g2)?)
}

/// A named transition rule on graphs.
pub trait MoveOperator: Send + Sync {
    fn name(&self) -> &str;

    /// Every graph reachable from `g` by one application of this move.
    /// Must be deterministic in `g`.
    fn apply_all(&self, g: &LabeledGraph) -> Vec<LabeledGraph>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClosureConfig {
    pub max_nodes: usize,
    pub max_classes: usize,
    pub max_steps: usize,
}

impl Default for ClosureConfig {
    fn default() -> Self {
        ClosureConfig {
            max_nodes: DEFAULT_MAX_NODES,
            max_classes: 1_000_000,
            max_steps: 1_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureResult {
    pub classes: BTreeSet<CanonicalForm>,
    pub class_count: usize,
    /// Number of class representatives whose moves were expanded.
    pub expansion_steps: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClosureSummary {
    pub class_count: usize,
    pub expansion_steps: usize,
}

impl ClosureResult {
    pub fn summary(&self) -> ClosureSummary {
        ClosureSummary {
            class_count: self.class_count,
            expansion_steps: self.expansion_steps,
        }
    }
}

/// Single-threaded breadth-first closure. This is the reference mode.
pub fn closure(
    seed: &LabeledGraph,
    moves: &[Box<dyn MoveOperator>],
    config: &ClosureConfig,
) -> Result<ClosureResult, ClosureError> {
    let mut visited: HashSet<CanonicalForm> = HashSet::new();
    let mut queue: VecDeque<LabeledGraph> = VecDeque::new();
    visited.insert(canonical_graph_bounded(seed, config.max_nodes)?);
    queue.push_back(seed.clone());
    let mut steps = 0;

    while let Some(g) = queue.pop_front() {
        if steps >= config.max_steps {
            return Err(ClosureError::BudgetExceeded { classes: visited.len(), steps });
        }
        steps += 1;
        for m in moves {
            for next in m.apply_all(&g) {
                let form = canonical_graph_bounded(&next, config.max_nodes)?;
                if visited.insert(form) {
                    if visited.len() > config.max_classes {
                        return Err(ClosureError::BudgetExceeded { classes: visited.len(), steps });
                    }
                    queue.push_back(next);
                }
            }
        }
    }

    Ok(ClosureResult {
        class_count: visited.len(),
        classes: visited.into_iter().collect(),
        expansion_steps: steps,
    })
}

/// Level-synchronous closure with each frontier expanded on the rayon pool.
///
/// Successors are canonicalized in parallel and merged into the visited set
/// in frontier order, so the result matches [`closure`] exactly.
pub fn closure_parallel(
    seed: &LabeledGraph,
    moves: &[Box<dyn MoveOperator>],
    config: &ClosureConfig,
) -> Result<ClosureResult, ClosureError> {
    let mut visited: HashSet<CanonicalForm> = HashSet::new();
    visited.insert(canonical_graph_bounded(seed, config.max_nodes)?);
    let mut frontier = vec![seed.clone()];
    let mut steps = 0;

    while !frontier.is_empty() {
        if steps + frontier.len() > config.max_steps {
            return Err(ClosureError::BudgetExceeded { classes: visited.len(), steps });
        }
        steps += frontier.len();
        let expanded: Vec<Vec<(CanonicalForm, LabeledGraph)>> = frontier
            .par_iter()
            .map(|g| {
                moves
                    .iter()
                    .flat_map(|m| m.apply_all(g))
                    .map(|next| Ok((canonical_graph_bounded(&next, config.max_nodes)?, next)))
                    .collect::<Result<Vec<_>, SizeLimitError>>()
            })
            .collect::<Result<_, _>>()?;
        let mut next_frontier = Vec::new();
        for (form, g) in expanded.into_iter().flatten() {
            if visited.insert(form) {
                if visited.len() > config.max_classes {
                    return Err(ClosureError::BudgetExceeded { classes: visited.len(), steps });
                }
                next_frontier.push(g);
            }
        }
        frontier = next_frontier;
    }

    Ok(ClosureResult {
        class_count: visited.len(),
        classes: visited.into_iter().collect(),
        expansion_steps: steps,
    })
}

// Triple encodings used to test the engine against the direct group action.

const EDGE_01: i64 = 1;
const EDGE_12: i64 = 2;
const EDGE_20: i64 = 3;

/// Labelled triangle whose distinct edge labels pin every node to its
/// position, so two encodings are isomorphic iff the triples are equal.
pub fn encode_triple(t: Triple) -> LabeledGraph {
    let mut g = LabeledGraph::new();
    let [a, b, c] = t.to_array();
    let n0 = g.add_node(a);
    let n1 = g.add_node(b);
    let n2 = g.add_node(c);
    g.add_edge(n0, n1, EDGE_01, 1).expect("nodes exist");
    g.add_edge(n1, n2, EDGE_12, 1).expect("nodes exist");
    g.add_edge(n2, n0, EDGE_20, 1).expect("nodes exist");
    g
}

/// Encoding of the orbit class: the rigid encoding of the canonical triple.
pub fn encode_orbit_class(t: Triple) -> LabeledGraph {
    encode_triple(canonical(t))
}

/// Inverse of [`encode_triple`] on any isomorphic copy.
pub fn decode_triple(g: &LabeledGraph) -> Option<Triple> {
    if g.node_count() != 3 {
        return None;
    }
    let edges: Vec<_> = g.edges().collect();
    if edges.len() != 3 {
        return None;
    }
    let find = |label: i64| {
        edges
            .iter()
            .find(|e| e.2 == label && e.3 == 1 && e.0 != e.1)
            .map(|e| (e.0, e.1))
    };
    let (e01, e12, e20) = (find(EDGE_01)?, find(EDGE_12)?, find(EDGE_20)?);
    let shared = |x: (usize, usize), y: (usize, usize)| {
        [x.0, x.1].into_iter().find(|n| *n == y.0 || *n == y.1)
    };
    let p0 = shared(e01, e20)?;
    let p1 = shared(e01, e12)?;
    let p2 = shared(e12, e20)?;
    if p0 == p1 || p1 == p2 || p0 == p2 {
        return None;
    }
    let l = g.labels();
    Triple::new(l[p0], l[p1], l[p2]).ok()
}

/// Group generators acting on rigid triple encodings. Graphs that do not
/// decode as triples have no successors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TripleMove {
    Shift,
    Involution,
}

impl MoveOperator for TripleMove {
    fn name(&self) -> &str {
        match self {
            TripleMove::Shift => "shift",
            TripleMove::Involution => "involution",
        }
    }

    fn apply_all(&self, g: &LabeledGraph) -> Vec<LabeledGraph> {
        let Some(t) = decode_triple(g) else {
            return Vec::new();
        };
        let image = match self {
            TripleMove::Shift => shift(t),
            TripleMove::Involution => involution(t),
        };
        vec![encode_triple(image)]
    }
}

pub const MOVE_SET_NAMES: [&str; 4] = ["triple-group", "shift", "involution", "none"];

/// Built-in move sets by name.
pub fn move_set(name: &str) -> Option<Vec<Box<dyn MoveOperator>>> {
    let moves: Vec<Box<dyn MoveOperator>> = match name {
        "triple-group" => vec![Box::new(TripleMove::Shift), Box::new(TripleMove::Involution)],
        "shift" => vec![Box::new(TripleMove::Shift)],
        "involution" => vec![Box::new(TripleMove::Involution)],
        "none" => Vec::new(),
        _ => return None,
    };
    Some(moves)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triple::orbit;

    fn t(a: i64, b: i64, c: i64) -> Triple {
        Triple::new(a, b, c).unwrap()
    }

    fn cycle(labels: [i64; 3]) -> LabeledGraph {
        let mut g = LabeledGraph::new();
        for l in labels {
            g.add_node(l);
        }
        g.add_edge(0, 1, 0, 1).unwrap();
        g.add_edge(1, 2, 0, 1).unwrap();
        g.add_edge(2, 0, 0, 1).unwrap();
        g
    }

    #[test]
    fn single_node_form_is_index_free() {
        let mut a = LabeledGraph::new();
        a.add_node(5);
        let mut b = LabeledGraph::new();
        b.add_node(5);
        assert_eq!(canonical_graph(&a).unwrap(), canonical_graph(&b).unwrap());
    }

    #[test]
    fn three_cycles() {
        let g = cycle([1, 2, 3]);
        for perm in [[0, 1, 2], [1, 2, 0], [2, 0, 1], [0, 2, 1], [2, 1, 0], [1, 0, 2]] {
            assert!(iso(&g, &g.permuted(&perm)).unwrap());
        }
        assert!(!iso(&g, &cycle([1, 2, 4])).unwrap());
    }

    #[test]
    fn iso_basics() {
        let g = cycle([1, 1, 2]);
        assert!(iso(&g, &g).unwrap());
        let mut one = LabeledGraph::new();
        one.add_node(0);
        assert!(!iso(&LabeledGraph::new(), &one).unwrap());
    }

    #[test]
    fn multiplicity_and_edge_labels_matter() {
        let mut a = LabeledGraph::new();
        a.add_node(0);
        a.add_node(0);
        a.add_edge(0, 1, 7, 1).unwrap();
        let mut b = a.clone();
        b.add_edge(1, 0, 7, 1).unwrap();
        let mut c = a.clone();
        c.add_edge(0, 1, 8, 1).unwrap();
        assert_eq!(b.edges().next(), Some((0, 1, 7, 2)));
        assert!(!iso(&a, &b).unwrap());
        assert!(!iso(&b, &c).unwrap());
    }

    #[test]
    fn regular_graphs_need_individualization() {
        // two triangles vs. a hexagon: both 2-regular on 6 unlabelled nodes
        let mut two = LabeledGraph::new();
        let mut hex = LabeledGraph::new();
        for _ in 0..6 {
            two.add_node(0);
            hex.add_node(0);
        }
        for (u, v) in [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)] {
            two.add_edge(u, v, 0, 1).unwrap();
        }
        for i in 0..6 {
            hex.add_edge(i, (i + 1) % 6, 0, 1).unwrap();
        }
        assert!(!iso(&two, &hex).unwrap());
        assert!(iso(&hex, &hex.permuted(&[3, 5, 1, 0, 2, 4])).unwrap());
    }

    #[test]
    fn size_limit() {
        let mut g = LabeledGraph::new();
        for _ in 0..13 {
            g.add_node(0);
        }
        assert_eq!(
            canonical_graph(&g),
            Err(SizeLimitError { nodes: 13, limit: 12 })
        );
        assert!(canonical_graph_bounded(&g, 13).is_ok());
    }

    #[test]
    fn edge_validation() {
        let mut g = LabeledGraph::new();
        g.add_node(0);
        assert_eq!(g.add_edge(0, 1, 0, 1), Err(GraphError::MissingNode(1)));
        assert_eq!(g.add_edge(0, 0, 0, 0), Err(GraphError::ZeroMultiplicity));
    }

    #[test]
    fn parse_spec() {
        let text = "# triangle\nnode a label=1\nnode b label=2\nnode c label=3\n\
                    edge a b label=0 mult=2\nedge b c label=0\nedge c a label=0\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edges().next(), Some((0, 1, 0, 2)));
        assert_eq!(parse_graph(&g.to_spec()).unwrap(), g);

        for bad in [
            "node a",
            "node a label=x",
            "node a label=1\nnode a label=2",
            "node a label=1\nedge a b label=0",
            "node a label=1\nedge a a label=0 mult=0",
            "node a label=1 colour=3",
            "vertex a label=1",
        ] {
            assert!(matches!(parse_graph(bad), Err(GraphError::Parse { .. })), "{bad}");
        }
    }

    #[test]
    fn triple_encoding_round_trip() {
        let x = t(-6, 0, 3);
        let g = encode_triple(x);
        assert_eq!(decode_triple(&g), Some(x));
        assert_eq!(decode_triple(&g.permuted(&[2, 0, 1])), Some(x));
        assert_eq!(decode_triple(&cycle([1, 2, 3])), None);
    }

    #[test]
    fn rigid_encoding_distinguishes_rotations() {
        let x = t(1, 2, 3);
        assert!(!iso(&encode_triple(x), &encode_triple(shift(x))).unwrap());
    }

    #[test]
    fn orbit_class_encoding() {
        let a = encode_orbit_class(t(-6, 0, 3));
        let b = encode_orbit_class(t(-3, 0, 6));
        assert!(iso(&a, &b).unwrap());
        assert!(!iso(&encode_triple(t(-6, 0, 3)), &encode_triple(t(-3, 0, 6))).unwrap());
    }

    #[test]
    fn closure_examples() {
        let config = ClosureConfig::default();
        let none = move_set("none").unwrap();
        let group = move_set("triple-group").unwrap();
        assert_eq!(closure(&cycle([4, 4, 1]), &none, &config).unwrap().class_count, 1);
        let r = closure(&encode_triple(t(-6, 0, 3)), &group, &config).unwrap();
        assert_eq!(r.class_count, orbit(t(-6, 0, 3)).len());
        assert_eq!(r.class_count, 6);
        assert_eq!(r.expansion_steps, 6);
        let r = closure(&encode_triple(t(0, 0, 0)), &group, &config).unwrap();
        assert_eq!(r.class_count, 1);
    }

    #[test]
    fn parallel_matches_reference() {
        let group = move_set("triple-group").unwrap();
        let config = ClosureConfig::default();
        for x in [t(-6, 0, 3), t(1, 1, 1), t(0, -1, 1), t(0, 0, 0)] {
            let seed = encode_triple(x);
            assert_eq!(
                closure(&seed, &group, &config).unwrap(),
                closure_parallel(&seed, &group, &config).unwrap()
            );
        }
    }

    struct Grow;

    impl MoveOperator for Grow {
        fn name(&self) -> &str {
            "grow"
        }

        fn apply_all(&self, g: &LabeledGraph) -> Vec<LabeledGraph> {
            let mut next = g.clone();
            next.add_node(0);
            vec![next]
        }
    }

    #[test]
    fn budgets() {
        let moves: Vec<Box<dyn MoveOperator>> = vec![Box::new(Grow)];
        let seed = LabeledGraph::new();
        let config = ClosureConfig { max_nodes: 100, max_classes: 5, max_steps: 1000 };
        assert!(matches!(
            closure(&seed, &moves, &config),
            Err(ClosureError::BudgetExceeded { classes: 6, .. })
        ));
        assert!(matches!(
            closure_parallel(&seed, &moves, &config),
            Err(ClosureError::BudgetExceeded { .. })
        ));
        let config = ClosureConfig { max_nodes: 100, max_classes: 1000, max_steps: 3 };
        assert!(matches!(
            closure(&seed, &moves, &config),
            Err(ClosureError::BudgetExceeded { steps: 3, .. })
        ));
        // default node bound stops growth before the class budget
        assert!(matches!(
            closure(&seed, &moves, &ClosureConfig::default()),
            Err(ClosureError::SizeLimit(_))
        ));
    }

    #[test]
    fn move_set_names() {
        for name in MOVE_SET_NAMES {
            assert!(move_set(name).is_some());
        }
        assert!(move_set("flop").is_none());
        let names: Vec<String> = move_set("triple-group").unwrap().iter().map(|m| m.name().to_string()).collect();
        assert_eq!(names, ["shift", "involution"]);
    }
}
