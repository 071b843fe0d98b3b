//! Bicolored multigraphs: storage, connectivity, isomorphism and canonical forms.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::refine;

/// Vertex color. Black vertices stand for Seifert pieces that meet the
/// boundary, white ones for pieces that do not.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Black,
    White,
}

impl Color {
    pub fn swap(self) -> Color {
        match self {
            Color::Black => Color::White,
            Color::White => Color::Black,
        }
    }

    /// Single-letter token used by the text formats.
    pub fn token(self) -> char {
        match self {
            Color::Black => 'b',
            Color::White => 'w',
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.token())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("a graph needs at least one vertex")]
    Empty,
    #[error("edge endpoint {0} is not a vertex")]
    BadVertex(usize),
    #[error("isomorphism search is limited to {limit} vertices, got {got}")]
    TooLarge { limit: usize, got: usize },
    #[error("graph is not minimal")]
    NotMinimal,
}

/// A finite multigraph with loops whose vertices are colored black or white.
///
/// Vertices are identified by index. Edges are unordered pairs stored as
/// `(min, max)` with a multiplicity, so two graphs compare equal exactly when
/// they have the same colors and the same edge multiset.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BicoloredGraph {
    colors: Vec<Color>,
    edges: BTreeMap<(usize, usize), usize>,
}

fn pair(u: usize, v: usize) -> (usize, usize) {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

impl BicoloredGraph {
    pub fn new(colors: Vec<Color>) -> Result<Self, GraphError> {
        if colors.is_empty() {
            return Err(GraphError::Empty);
        }
        Ok(BicoloredGraph {
            colors,
            edges: BTreeMap::new(),
        })
    }

    /// Builds a graph from colors and an edge list; repeated pairs add multiplicity.
    pub fn from_edges<I>(colors: Vec<Color>, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = BicoloredGraph::new(colors)?;
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        self.add_edges(u, v, 1)
    }

    pub fn add_edges(&mut self, u: usize, v: usize, count: usize) -> Result<(), GraphError> {
        for w in [u, v] {
            if w >= self.colors.len() {
                return Err(GraphError::BadVertex(w));
            }
        }
        if count > 0 {
            *self.edges.entry(pair(u, v)).or_insert(0) += count;
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.colors.len()
    }

    pub fn color(&self, v: usize) -> Color {
        self.colors[v]
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn black_count(&self) -> usize {
        self.colors.iter().filter(|&&c| c == Color::Black).count()
    }

    /// Distinct edges as `((u, v), multiplicity)` with `u <= v`.
    pub fn edges(&self) -> impl Iterator<Item = ((usize, usize), usize)> + '_ {
        self.edges.iter().map(|(&p, &m)| (p, m))
    }

    /// Number of edges counted with multiplicity.
    pub fn edge_count(&self) -> usize {
        self.edges.values().sum()
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        self.edges.get(&pair(u, v)).copied().unwrap_or(0)
    }

    pub fn has_loop(&self, v: usize) -> bool {
        self.multiplicity(v, v) > 0
    }

    /// True when no pair carries more than one edge. Loops are allowed.
    pub fn is_simple(&self) -> bool {
        self.edges.values().all(|&m| m <= 1)
    }

    /// Distinct neighbors of every vertex, sorted. A vertex with a loop is
    /// its own neighbor.
    pub fn neighbor_sets(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.colors.len()];
        for &(u, v) in self.edges.keys() {
            out[u].push(v);
            if u != v {
                out[v].push(u);
            }
        }
        for list in &mut out {
            list.sort_unstable();
        }
        out
    }

    /// Degree counting multiplicity; a loop contributes one.
    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|((a, b), _)| *a == v || *b == v)
            .map(|(_, &m)| m)
            .sum()
    }

    pub fn is_connected(&self) -> bool {
        let neighbors = self.neighbor_sets();
        let mut seen = vec![false; self.colors.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &neighbors[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Relabels vertices: vertex `v` of `self` becomes vertex `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> BicoloredGraph {
        assert_eq!(perm.len(), self.colors.len());
        let mut colors = vec![Color::Black; self.colors.len()];
        for (v, &c) in self.colors.iter().enumerate() {
            colors[perm[v]] = c;
        }
        let mut edges = BTreeMap::new();
        for (&(u, v), &m) in &self.edges {
            edges.insert(pair(perm[u], perm[v]), m);
        }
        BicoloredGraph { colors, edges }
    }

    /// Same graph with black and white exchanged.
    pub fn color_swapped(&self) -> BicoloredGraph {
        BicoloredGraph {
            colors: self.colors.iter().map(|c| c.swap()).collect(),
            edges: self.edges.clone(),
        }
    }

    /// Disjoint union; vertices of `other` are shifted past those of `self`.
    pub fn disjoint_union(&self, other: &BicoloredGraph) -> BicoloredGraph {
        let shift = self.colors.len();
        let mut colors = self.colors.clone();
        colors.extend_from_slice(&other.colors);
        let mut edges = self.edges.clone();
        for (&(u, v), &m) in &other.edges {
            edges.insert((u + shift, v + shift), m);
        }
        BicoloredGraph { colors, edges }
    }
}

/// A map between vertex sets: vertex `v` of the source goes to `images[v]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexMap {
    images: Vec<usize>,
}

impl VertexMap {
    pub fn new(images: Vec<usize>) -> Self {
        VertexMap { images }
    }

    pub fn identity(n: usize) -> Self {
        VertexMap {
            images: (0..n).collect(),
        }
    }

    pub fn image(&self, v: usize) -> usize {
        self.images[v]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// Inverse of a bijection.
    pub fn inverse(&self) -> VertexMap {
        let mut inv = vec![0; self.images.len()];
        for (v, &w) in self.images.iter().enumerate() {
            inv[w] = v;
        }
        VertexMap { images: inv }
    }
}

pub const ISOMORPHISM_LIMIT: usize = 12;
pub const AUTOMORPHISM_LIMIT: usize = 10;

/// Finds a color-preserving bijection carrying the edge multiset of `g1`
/// onto that of `g2`.
///
/// Minimal graphs are compared through their canonical forms, with no size
/// limit. Anything else falls back to a backtracking search capped at
/// [`ISOMORPHISM_LIMIT`] vertices.
pub fn are_isomorphic(
    g1: &BicoloredGraph,
    g2: &BicoloredGraph,
) -> Result<Option<VertexMap>, GraphError> {
    if g1.vertex_count() != g2.vertex_count()
        || g1.black_count() != g2.black_count()
        || g1.edge_count() != g2.edge_count()
    {
        return Ok(None);
    }
    if is_minimal_quiet(g1) && is_minimal_quiet(g2) {
        let l1 = canonical_labeling(g1)?;
        let l2 = canonical_labeling(g2)?;
        if g1.permuted(l1.images()) != g2.permuted(l2.images()) {
            return Ok(None);
        }
        let back = l2.inverse();
        let images = l1.images().iter().map(|&c| back.image(c)).collect();
        return Ok(Some(VertexMap::new(images)));
    }
    let n = g1.vertex_count();
    if n > ISOMORPHISM_LIMIT {
        return Err(GraphError::TooLarge {
            limit: ISOMORPHISM_LIMIT,
            got: n,
        });
    }
    let mut found = None;
    search_isomorphisms(g1, g2, &mut |m| {
        found = Some(VertexMap::new(m.to_vec()));
        false
    });
    Ok(found)
}

/// Number of color- and edge-preserving self-bijections.
pub fn automorphism_count(g: &BicoloredGraph) -> Result<u64, GraphError> {
    let n = g.vertex_count();
    if n > AUTOMORPHISM_LIMIT {
        return Err(GraphError::TooLarge {
            limit: AUTOMORPHISM_LIMIT,
            got: n,
        });
    }
    let mut count = 0u64;
    search_isomorphisms(g, g, &mut |_| {
        count += 1;
        true
    });
    Ok(count)
}

fn is_minimal_quiet(g: &BicoloredGraph) -> bool {
    refine::is_minimal(g).unwrap_or(false)
}

/// Backtracking over bijections that keep colors, degrees and all pairwise
/// multiplicities among the vertices assigned so far. `visit` returns false
/// to stop the search.
fn search_isomorphisms(
    g1: &BicoloredGraph,
    g2: &BicoloredGraph,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) {
    let n = g1.vertex_count();
    if n != g2.vertex_count() {
        return;
    }
    let deg1: Vec<_> = (0..n).map(|v| (g1.degree(v), g1.multiplicity(v, v))).collect();
    let deg2: Vec<_> = (0..n).map(|v| (g2.degree(v), g2.multiplicity(v, v))).collect();
    let mut images = vec![usize::MAX; n];
    let mut used = vec![false; n];

    fn step(
        v: usize,
        g1: &BicoloredGraph,
        g2: &BicoloredGraph,
        deg1: &[(usize, usize)],
        deg2: &[(usize, usize)],
        images: &mut [usize],
        used: &mut [bool],
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        let n = images.len();
        if v == n {
            return visit(images);
        }
        for w in 0..n {
            if used[w] || g1.color(v) != g2.color(w) || deg1[v] != deg2[w] {
                continue;
            }
            let consistent = (0..v).all(|u| g1.multiplicity(u, v) == g2.multiplicity(images[u], w));
            if !consistent {
                continue;
            }
            images[v] = w;
            used[w] = true;
            let go_on = step(v + 1, g1, g2, deg1, deg2, images, used, visit);
            used[w] = false;
            images[v] = usize::MAX;
            if !go_on {
                return false;
            }
        }
        true
    }

    step(0, g1, g2, &deg1, &deg2, &mut images, &mut used, visit);
}

/// Ranks the vertices of a minimal graph in a label-independent order.
///
/// Each round keys a vertex by its previous rank, the sorted multiset of
/// its neighbors' ranks (loops excluded) and whether it has a loop; keys are
/// sorted and re-ranked. The first round ranks black before white. On a
/// minimal graph the rounds end with every vertex in its own class, so the
/// ranks form a permutation: `images[v]` is the position of `v`.
pub fn canonical_labeling(g: &BicoloredGraph) -> Result<VertexMap, GraphError> {
    if !is_minimal_quiet(g) {
        return Err(GraphError::NotMinimal);
    }
    let n = g.vertex_count();
    let mut rank: Vec<usize> = g
        .colors()
        .iter()
        .map(|&c| if c == Color::Black { 0 } else { 1 })
        .collect();
    let mut classes = distinct_count(&rank);
    loop {
        let keys: Vec<(usize, Vec<usize>, bool)> = (0..n)
            .map(|v| {
                let mut around = Vec::new();
                for ((a, b), m) in g.edges() {
                    if a == b {
                        continue;
                    }
                    if a == v {
                        around.extend(std::iter::repeat_n(rank[b], m));
                    } else if b == v {
                        around.extend(std::iter::repeat_n(rank[a], m));
                    }
                }
                around.sort_unstable();
                (rank[v], around, g.has_loop(v))
            })
            .collect();
        let mut sorted = keys.clone();
        sorted.sort();
        sorted.dedup();
        rank = keys
            .iter()
            .map(|k| sorted.binary_search(k).expect("key present"))
            .collect();
        if sorted.len() == classes {
            break;
        }
        classes = sorted.len();
    }
    // Minimality guarantees a discrete partition.
    if classes != n {
        return Err(GraphError::NotMinimal);
    }
    Ok(VertexMap::new(rank))
}

/// Relabels a minimal graph into its canonical vertex order. Two minimal
/// graphs are isomorphic exactly when their canonical forms are equal.
pub fn canonical_form(g: &BicoloredGraph) -> Result<BicoloredGraph, GraphError> {
    let labeling = canonical_labeling(g)?;
    Ok(g.permuted(labeling.images()))
}

fn distinct_count(values: &[usize]) -> usize {
    let mut v = values.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

/// Replaces every multiple edge (and multiple loop) by a single one. The
/// returned identity map is a weak covering onto the result.
pub fn collapse_multiedges(g: &BicoloredGraph) -> (BicoloredGraph, VertexMap) {
    let mut out = g.clone();
    for m in out.edges.values_mut() {
        *m = 1;
    }
    (out, VertexMap::identity(g.vertex_count()))
}

/// Undirected DOT document. Black vertices are filled, white ones are not;
/// each parallel edge or loop gets its own statement.
pub fn to_dot(g: &BicoloredGraph) -> String {
    let mut out = String::from("graph bicolored {\n");
    for (v, &c) in g.colors().iter().enumerate() {
        match c {
            Color::Black => out.push_str(&format!(
                "  v{v} [label=\"{v}\", style=filled, fillcolor=black, fontcolor=white];\n"
            )),
            Color::White => out.push_str(&format!(
                "  v{v} [label=\"{v}\", style=solid, fillcolor=white];\n"
            )),
        }
    }
    for ((u, v), m) in g.edges() {
        for _ in 0..m {
            out.push_str(&format!("  v{u} -- v{v};\n"));
        }
    }
    out.push_str("}\n");
    out
}
