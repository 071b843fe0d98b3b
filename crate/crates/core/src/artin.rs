//! Artin groups with tree presentation graphs.
//!
//! A presentation graph has one vertex per generator and an edge of weight
//! `m >= 2` for every relation of length `m`; missing edges mean no
//! relation. When the graph is a *big* tree the group is the fundamental
//! group of a non-geometric graph manifold, and [`artin_to_decomposition`]
//! produces its colored decomposition graph.
//!
//! File format, one statement per line, `#` comments:
//!
//! ```text
//! v x1
//! v x2
//! e x1 x2 3
//! ```

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::format::statements;
use crate::graph::{canonical_form, BicoloredGraph, Color};
use crate::refine::minimize;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ArtinError {
    #[error("line {line}: malformed statement `{text}`")]
    Malformed { line: usize, text: String },
    #[error("line {line}: unknown vertex `{name}`")]
    UnknownVertex { line: usize, name: String },
    #[error("line {line}: vertex `{name}` declared twice")]
    DuplicateVertex { line: usize, name: String },
    #[error("line {line}: bad weight `{token}` (must be an integer >= 2)")]
    BadWeight { line: usize, token: String },
    #[error("edge {0}-{1} is a loop")]
    Loop(usize, usize),
    #[error("vertices {0} and {1} are joined twice")]
    DuplicateEdge(usize, usize),
    #[error("edge endpoint {0} is not a vertex")]
    BadVertex(usize),
    #[error("weight {0} is below 2")]
    WeightTooSmall(u32),
    #[error("presentation graph has no vertices")]
    Empty,
    #[error("presentation graph is not a tree")]
    NotATree,
    #[error("presentation tree is not big")]
    NotBig,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeightedEdge {
    pub a: usize,
    pub b: usize,
    pub weight: u32,
}

/// Artin presentation graph: any finite simple graph with weights `>= 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    names: Vec<String>,
    edges: Vec<WeightedEdge>,
}

impl LabeledGraph {
    pub fn new(names: Vec<String>, edges: Vec<WeightedEdge>) -> Result<Self, ArtinError> {
        let n = names.len();
        let mut seen = BTreeSet::new();
        for e in &edges {
            for v in [e.a, e.b] {
                if v >= n {
                    return Err(ArtinError::BadVertex(v));
                }
            }
            if e.a == e.b {
                return Err(ArtinError::Loop(e.a, e.b));
            }
            if e.weight < 2 {
                return Err(ArtinError::WeightTooSmall(e.weight));
            }
            if !seen.insert((e.a.min(e.b), e.a.max(e.b))) {
                return Err(ArtinError::DuplicateEdge(e.a, e.b));
            }
        }
        Ok(LabeledGraph { names, edges })
    }

    /// Vertices named `x0, x1, ...`.
    pub fn unnamed(n: usize, edges: &[(usize, usize, u32)]) -> Result<Self, ArtinError> {
        let names = (0..n).map(|i| format!("x{i}")).collect();
        let edges = edges
            .iter()
            .map(|&(a, b, weight)| WeightedEdge { a, b, weight })
            .collect();
        LabeledGraph::new(names, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn edges(&self) -> &[WeightedEdge] {
        &self.edges
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.names.len()];
        for e in &self.edges {
            adj[e.a].push(e.b);
            adj[e.b].push(e.a);
        }
        adj
    }

    /// Vertex sets of the connected components.
    fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.names.len()];
        let mut out = Vec::new();
        for start in 0..self.names.len() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut i = 0;
            while i < comp.len() {
                for &w in &adj[comp[i]] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
                i += 1;
            }
            out.push(comp);
        }
        out
    }
}

impl fmt::Display for LabeledGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for name in &self.names {
            writeln!(f, "v {name}")?;
        }
        for e in &self.edges {
            writeln!(f, "e {} {} {}", self.names[e.a], self.names[e.b], e.weight)?;
        }
        Ok(())
    }
}

pub fn parse_labeled_graph(text: &str) -> Result<LabeledGraph, ArtinError> {
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut names = Vec::new();
    let mut edges = Vec::new();
    for (line, tokens) in statements(text) {
        let malformed = || ArtinError::Malformed {
            line,
            text: tokens.join(" "),
        };
        match (tokens[0], tokens.len()) {
            ("v", 2) => {
                if index.insert(tokens[1].to_string(), names.len()).is_some() {
                    return Err(ArtinError::DuplicateVertex {
                        line,
                        name: tokens[1].to_string(),
                    });
                }
                names.push(tokens[1].to_string());
            }
            ("e", 4) => {
                let lookup = |name: &str| {
                    index.get(name).copied().ok_or_else(|| ArtinError::UnknownVertex {
                        line,
                        name: name.to_string(),
                    })
                };
                let a = lookup(tokens[1])?;
                let b = lookup(tokens[2])?;
                let weight = tokens[3]
                    .parse::<u32>()
                    .ok()
                    .filter(|&w| w >= 2)
                    .ok_or_else(|| ArtinError::BadWeight {
                        line,
                        token: tokens[3].to_string(),
                    })?;
                edges.push(WeightedEdge { a, b, weight });
            }
            _ => return Err(malformed()),
        }
    }
    LabeledGraph::new(names, edges)
}

/// A presentation graph that is a tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArtinTree {
    graph: LabeledGraph,
}

impl ArtinTree {
    pub fn new(graph: LabeledGraph) -> Result<Self, ArtinError> {
        if graph.vertex_count() == 0 {
            return Err(ArtinError::Empty);
        }
        if graph.edges.len() + 1 != graph.vertex_count() || graph.components().len() != 1 {
            return Err(ArtinError::NotATree);
        }
        Ok(ArtinTree { graph })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize, u32)]) -> Result<Self, ArtinError> {
        ArtinTree::new(LabeledGraph::unnamed(n, edges)?)
    }

    /// Path `x0 - x1 - ... ` with the given weights in order.
    pub fn path(weights: &[u32]) -> Result<Self, ArtinError> {
        let edges: Vec<_> = weights.iter().enumerate().map(|(i, &w)| (i, i + 1, w)).collect();
        ArtinTree::from_edges(weights.len() + 1, &edges)
    }

    pub fn graph(&self) -> &LabeledGraph {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn edges(&self) -> &[WeightedEdge] {
        &self.graph.edges
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count()];
        for e in self.edges() {
            deg[e.a] += 1;
            deg[e.b] += 1;
        }
        deg
    }

    /// Longest path, counted in edges.
    pub fn diameter(&self) -> usize {
        let adj = self.graph.adjacency();
        let farthest = |start: usize| {
            let mut dist = vec![usize::MAX; adj.len()];
            dist[start] = 0;
            let mut queue = std::collections::VecDeque::from([start]);
            let mut last = (start, 0);
            while let Some(v) = queue.pop_front() {
                if dist[v] > last.1 {
                    last = (v, dist[v]);
                }
                for &w in &adj[v] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[v] + 1;
                        queue.push_back(w);
                    }
                }
            }
            last
        };
        let (end, _) = farthest(0);
        farthest(end).1
    }
}

impl fmt::Display for ArtinTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.graph.fmt(f)
    }
}

/// Diameter at least 3, or diameter 2 with some weight above 2.
pub fn is_big(t: &ArtinTree) -> bool {
    match t.diameter() {
        0 | 1 => false,
        2 => t.edges().iter().any(|e| e.weight > 2),
        _ => true,
    }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut root = x;
    while parent[root] != root {
        root = parent[root];
    }
    let mut cur = x;
    while parent[cur] != root {
        let next = parent[cur];
        parent[cur] = root;
        cur = next;
    }
    root
}

/// Colored decomposition graph of the graph manifold of a big tree.
///
/// 1. All vertices become black.
/// 2. Every odd edge is contracted (chains of odd edges merge into one
///    vertex) and the merged vertex gets one new white leaf per odd edge.
/// 3. Weight-2 edges at a leaf are deleted together with the leaf; other
///    weight-2 edges keep just the edge.
/// 4. An even weight above 2 on an edge at a leaf keeps just the edge;
///    between two non-leaves the edge is subdivided by a white vertex.
///
/// Leaves in steps 3 and 4 are those of the tree after step 2, before any
/// deletion.
pub fn artin_to_decomposition(t: &ArtinTree) -> Result<BicoloredGraph, ArtinError> {
    if !is_big(t) {
        return Err(ArtinError::NotBig);
    }
    let n = t.vertex_count();
    let mut parent: Vec<usize> = (0..n).collect();
    for e in t.edges().iter().filter(|e| e.weight % 2 == 1) {
        let (ra, rb) = (find(&mut parent, e.a), find(&mut parent, e.b));
        parent[ra.max(rb)] = ra.min(rb);
    }
    // merged vertices, numbered by their smallest original vertex
    let mut merged = vec![usize::MAX; n];
    let mut merged_count = 0;
    for v in 0..n {
        let r = find(&mut parent, v);
        if merged[r] == usize::MAX {
            merged[r] = merged_count;
            merged_count += 1;
        }
        merged[v] = merged[r];
    }
    let white_leaves: Vec<usize> = t
        .edges()
        .iter()
        .filter(|e| e.weight % 2 == 1)
        .map(|e| merged[e.a])
        .collect();
    let even: Vec<(usize, usize, u32)> = t
        .edges()
        .iter()
        .filter(|e| e.weight % 2 == 0)
        .map(|e| (merged[e.a], merged[e.b], e.weight))
        .collect();

    let mut degree = vec![0usize; merged_count];
    for &v in &white_leaves {
        degree[v] += 1;
    }
    for &(a, b, _) in &even {
        degree[a] += 1;
        degree[b] += 1;
    }
    let is_leaf = |v: usize| degree[v] == 1;

    let mut removed = vec![false; merged_count];
    let mut kept_edges = Vec::new();
    let mut subdivided = Vec::new();
    for &(a, b, w) in &even {
        let at_leaf = is_leaf(a) || is_leaf(b);
        if w == 2 && at_leaf {
            let leaf = if is_leaf(b) { b } else { a };
            removed[leaf] = true;
        } else if w > 2 && !at_leaf {
            subdivided.push((a, b));
        } else {
            kept_edges.push((a, b));
        }
    }

    let mut index = vec![usize::MAX; merged_count];
    let mut colors = Vec::new();
    for v in 0..merged_count {
        if !removed[v] {
            index[v] = colors.len();
            colors.push(Color::Black);
        }
    }
    let mut edges = Vec::new();
    for (a, b) in kept_edges {
        edges.push((index[a], index[b]));
    }
    for (a, b) in subdivided {
        let mid = colors.len();
        colors.push(Color::White);
        edges.push((index[a], mid));
        edges.push((mid, index[b]));
    }
    for v in white_leaves {
        let leaf = colors.len();
        colors.push(Color::White);
        edges.push((index[v], leaf));
    }
    Ok(BicoloredGraph::from_edges(colors, edges).expect("indices are in range"))
}

/// Quasi-isometry class of the Artin group of a presentation tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QiClass {
    Z,
    Z2,
    FreeTimesZ,
    /// Canonical form of the minimal bicolored graph.
    GraphManifold(BicoloredGraph),
}

impl fmt::Display for QiClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QiClass::Z => write!(f, "Z"),
            QiClass::Z2 => write!(f, "Z^2"),
            QiClass::FreeTimesZ => write!(f, "F2 x Z"),
            QiClass::GraphManifold(g) => {
                write!(f, "graph manifold, minimal graph with {} vertices", g.vertex_count())
            }
        }
    }
}

pub fn classify_artin(t: &ArtinTree) -> QiClass {
    if t.vertex_count() == 1 {
        return QiClass::Z;
    }
    if t.vertex_count() == 2 && t.edges()[0].weight == 2 {
        return QiClass::Z2;
    }
    if !is_big(t) {
        return QiClass::FreeTimesZ;
    }
    let decomposition = artin_to_decomposition(t).expect("tree is big");
    let minimal = minimize(&decomposition).expect("decomposition graphs are connected");
    QiClass::GraphManifold(canonical_form(&minimal.graph).expect("minimized graphs are minimal"))
}

/// Whether the group is quasi-isometric to a right-angled tree group: the
/// tree is big, every weight is even, and edges between two non-leaves have
/// weight 2.
pub fn is_qi_to_right_angled_tree_group(t: &ArtinTree) -> bool {
    let deg = t.degrees();
    is_big(t)
        && t.edges().iter().all(|e| e.weight % 2 == 0)
        && t
            .edges()
            .iter()
            .all(|e| deg[e.a] == 1 || deg[e.b] == 1 || e.weight == 2)
}

/// Whether the Artin group is a 3-manifold group: every component of the
/// presentation graph is a tree or a triangle with all weights 2.
pub fn is_3manifold_artin(g: &LabeledGraph) -> bool {
    let mut comp_of = vec![0; g.vertex_count()];
    let comps = g.components();
    for (i, comp) in comps.iter().enumerate() {
        for &v in comp {
            comp_of[v] = i;
        }
    }
    let mut edge_count = vec![0usize; comps.len()];
    let mut all_two = vec![true; comps.len()];
    for e in g.edges() {
        edge_count[comp_of[e.a]] += 1;
        all_two[comp_of[e.a]] &= e.weight == 2;
    }
    comps.iter().enumerate().all(|(i, comp)| {
        edge_count[i] + 1 == comp.len() || (comp.len() == 3 && edge_count[i] == 3 && all_two[i])
    })
}

/// Edge lists of the non-isomorphic trees on `n` vertices.
pub fn tree_shapes(n: usize) -> Vec<Vec<(usize, usize)>> {
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![Vec::new()];
    }
    if n == 2 {
        return vec![vec![(0, 1)]];
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut code = vec![0usize; n - 2];
    loop {
        let edges = prufer_decode(&code, n);
        if seen.insert(tree_signature(&edges, n)) {
            out.push(edges);
        }
        // next Prüfer sequence
        let mut i = 0;
        while i < code.len() {
            code[i] += 1;
            if code[i] < n {
                break;
            }
            code[i] = 0;
            i += 1;
        }
        if i == code.len() {
            return out;
        }
    }
}

fn prufer_decode(code: &[usize], n: usize) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n];
    for &c in code {
        degree[c] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &c in code {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf exists");
        edges.push((leaf, c));
        degree[leaf] -= 1;
        degree[c] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// Smallest rooted encoding over all roots; equal exactly for isomorphic trees.
fn tree_signature(edges: &[(usize, usize)], n: usize) -> String {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    fn encode(adj: &[Vec<usize>], v: usize, from: usize) -> String {
        let mut parts: Vec<String> = adj[v]
            .iter()
            .filter(|&&w| w != from)
            .map(|&w| encode(adj, w, v))
            .collect();
        parts.sort();
        format!("({})", parts.concat())
    }
    (0..n).map(|r| encode(&adj, r, usize::MAX)).min().expect("n > 0")
}

/// Every tree shape with at most `max_vertices` vertices under every
/// assignment of weights from `weights`.
pub fn weighted_trees(max_vertices: usize, weights: &[u32]) -> Vec<ArtinTree> {
    let mut out = Vec::new();
    for n in 1..=max_vertices {
        for shape in tree_shapes(n) {
            let m = shape.len();
            let mut choice = vec![0usize; m];
            loop {
                let edges: Vec<_> = shape
                    .iter()
                    .zip(&choice)
                    .map(|(&(a, b), &i)| (a, b, weights[i]))
                    .collect();
                out.push(ArtinTree::from_edges(n, &edges).expect("shapes are trees"));
                let mut i = 0;
                while i < m {
                    choice[i] += 1;
                    if choice[i] < weights.len() {
                        break;
                    }
                    choice[i] = 0;
                    i += 1;
                }
                if i == m {
                    break;
                }
            }
        }
    }
    out
}
