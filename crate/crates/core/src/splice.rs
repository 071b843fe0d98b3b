//! Splice diagrams of connected sums of `(2, n)` torus links.
//!
//! The Artin group of a weighted tree is the fundamental group of the
//! complement of a connected sum of torus links, one per edge. Building the
//! splice diagram of that link and reading off its nodes gives the colored
//! decomposition graph without going through the move sequence in
//! [`crate::artin::artin_to_decomposition`], which makes it a cross-check.
//!
//! Arrowheads are modeled as valence-one vertices of kind
//! [`SpliceVertexKind::Arrowtip`]. Edge weights are kept for display only.

use std::fmt::Write as _;

use thiserror::Error;

use crate::artin::{is_big, ArtinTree};
use crate::graph::{BicoloredGraph, Color};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpliceError {
    #[error("torus link (2, {0}) needs n >= 2")]
    BadTorusParameter(u32),
    #[error("vertex {0} is not an arrowtip")]
    NotArrowtip(usize),
    #[error("arrowtips {0} and {1} belong to the same link component")]
    SameComponent(usize, usize),
    #[error("internal vertex {vertex} has valence {valence}, expected at least 3")]
    LowValence { vertex: usize, valence: usize },
    #[error("presentation tree is not big")]
    NotBig,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpliceVertexKind {
    Internal,
    Leaf,
    Arrowtip,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SpliceEdge {
    pub a: usize,
    pub b: usize,
    /// `None` stands for the default weight 1.
    pub weight: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SpliceDiagram {
    kinds: Vec<SpliceVertexKind>,
    edges: Vec<SpliceEdge>,
}

impl SpliceDiagram {
    pub fn kinds(&self) -> &[SpliceVertexKind] {
        &self.kinds
    }

    pub fn edges(&self) -> &[SpliceEdge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.kinds.len()
    }

    pub fn count(&self, kind: SpliceVertexKind) -> usize {
        self.kinds.iter().filter(|&&k| k == kind).count()
    }

    pub fn valence(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.a == v || e.b == v).count()
    }

    pub fn incident(&self, v: usize) -> impl Iterator<Item = &SpliceEdge> {
        self.edges.iter().filter(move |e| e.a == v || e.b == v)
    }

    /// The underlying graph is a tree and leaves and arrowtips have valence 1.
    pub fn is_well_formed(&self) -> bool {
        let n = self.kinds.len();
        if n == 0 || self.edges.len() + 1 != n {
            return false;
        }
        let valence_ok = (0..n).all(|v| self.kinds[v] == SpliceVertexKind::Internal || self.valence(v) == 1);
        let mut parent: Vec<usize> = (0..n).collect();
        fn root(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for e in &self.edges {
            let (ra, rb) = (root(&mut parent, e.a), root(&mut parent, e.b));
            if ra == rb {
                return false;
            }
            parent[ra] = rb;
        }
        valence_ok
    }

    fn add_vertex(&mut self, kind: SpliceVertexKind) -> usize {
        self.kinds.push(kind);
        self.kinds.len() - 1
    }

    fn add_edge(&mut self, a: usize, b: usize, weight: Option<i64>) {
        self.edges.push(SpliceEdge { a, b, weight });
    }

    /// Appends a copy of `other`; returns the index shift of its vertices.
    fn absorb(&mut self, other: &SpliceDiagram) -> usize {
        let shift = self.kinds.len();
        self.kinds.extend_from_slice(&other.kinds);
        self.edges.extend(other.edges.iter().map(|e| SpliceEdge {
            a: e.a + shift,
            b: e.b + shift,
            weight: e.weight,
        }));
        shift
    }

    /// The edge at an arrowtip, by position.
    fn arrow_edge(&self, tip: usize) -> Result<usize, SpliceError> {
        if self.kinds.get(tip) != Some(&SpliceVertexKind::Arrowtip) {
            return Err(SpliceError::NotArrowtip(tip));
        }
        self.edges
            .iter()
            .position(|e| e.a == tip || e.b == tip)
            .ok_or(SpliceError::NotArrowtip(tip))
    }

    /// Connected sum along the components of two arrowtips of this diagram.
    ///
    /// The two arrowheads become one ordinary vertex joined to both former
    /// neighbors, carrying a new arrow of weight 0 for the summed component.
    /// An arrow that already has weight 0 marks a component produced by an
    /// earlier sum; summing along it again extends that node rather than
    /// creating a new one.
    ///
    /// Leaves the two tips as dead vertices of valence 0; [`Self::compact`]
    /// removes them. Returns the new arrowtip.
    fn sum_in_place(&mut self, tip1: usize, tip2: usize) -> Result<usize, SpliceError> {
        let e1 = self.arrow_edge(tip1)?;
        let e2 = self.arrow_edge(tip2)?;
        let other = |e: &SpliceEdge, tip: usize| if e.a == tip { e.b } else { e.a };
        let (n1, w1) = (other(&self.edges[e1], tip1), self.edges[e1].weight);
        let (n2, w2) = (other(&self.edges[e2], tip2), self.edges[e2].weight);
        if tip1 == tip2 || n1 == tip2 {
            return Err(SpliceError::SameComponent(tip1, tip2));
        }
        self.edges.retain(|e| e.a != tip1 && e.b != tip1 && e.a != tip2 && e.b != tip2);
        let zero1 = w1 == Some(0);
        let zero2 = w2 == Some(0);
        let node = match (zero1, zero2) {
            (false, false) => {
                let node = self.add_vertex(SpliceVertexKind::Internal);
                self.add_edge(node, n1, w1);
                self.add_edge(node, n2, w2);
                node
            }
            (true, false) => {
                self.add_edge(n1, n2, w2);
                n1
            }
            (false, true) => {
                self.add_edge(n2, n1, w1);
                n2
            }
            (true, true) => {
                // fold the second node into the first
                for e in &mut self.edges {
                    if e.a == n2 {
                        e.a = n1;
                    }
                    if e.b == n2 {
                        e.b = n1;
                    }
                }
                n1
            }
        };
        let arrow = self.add_vertex(SpliceVertexKind::Arrowtip);
        self.add_edge(node, arrow, Some(0));
        Ok(arrow)
    }

    /// Drops vertices left without edges by sums. Returns the old-to-new
    /// index map (`usize::MAX` for dropped vertices).
    fn compact(&mut self) -> Vec<usize> {
        let n = self.kinds.len();
        let mut used = vec![false; n];
        for e in &self.edges {
            used[e.a] = true;
            used[e.b] = true;
        }
        if self.edges.is_empty() && n == 1 {
            used[0] = true;
        }
        let mut map = vec![usize::MAX; n];
        let mut kinds = Vec::new();
        for v in 0..n {
            if used[v] {
                map[v] = kinds.len();
                kinds.push(self.kinds[v]);
            }
        }
        for e in &mut self.edges {
            e.a = map[e.a];
            e.b = map[e.b];
        }
        self.kinds = kinds;
        map
    }
}

/// Splice diagram of one torus link with the arrowtips of its components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusLink {
    pub diagram: SpliceDiagram,
    /// Two arrowtips for even `n`, one for odd `n`.
    pub handles: Vec<usize>,
}

/// Splice diagram of the `(2, n)` torus link.
///
/// * `n = 2`: one edge between two arrowtips.
/// * `n = 2k > 2`: a node with two arrows and a leaf edge of weight `k`.
/// * `n = 2k + 1`: a node with leaf edges of weights 2 and `n` and one arrow.
pub fn torus_link_splice(n: u32) -> Result<TorusLink, SpliceError> {
    use SpliceVertexKind::*;
    let mut d = SpliceDiagram::default();
    let handles = match n {
        0 | 1 => return Err(SpliceError::BadTorusParameter(n)),
        2 => {
            let a = d.add_vertex(Arrowtip);
            let b = d.add_vertex(Arrowtip);
            d.add_edge(a, b, None);
            vec![a, b]
        }
        _ if n.is_multiple_of(2) => {
            let node = d.add_vertex(Internal);
            let a = d.add_vertex(Arrowtip);
            let b = d.add_vertex(Arrowtip);
            let leaf = d.add_vertex(Leaf);
            d.add_edge(node, a, None);
            d.add_edge(node, b, None);
            d.add_edge(node, leaf, Some(i64::from(n / 2)));
            vec![a, b]
        }
        _ => {
            let node = d.add_vertex(Internal);
            let two = d.add_vertex(Leaf);
            let odd = d.add_vertex(Leaf);
            let a = d.add_vertex(Arrowtip);
            d.add_edge(node, two, Some(2));
            d.add_edge(node, odd, Some(i64::from(n)));
            d.add_edge(node, a, None);
            vec![a]
        }
    };
    Ok(TorusLink { diagram: d, handles })
}

/// Connected sum of two links along the components of `a1` in `d1` and
/// `a2` in `d2`. Vertices of `d2` come after those of `d1` in the result;
/// the returned index is the new weight-0 arrow.
pub fn splice_connected_sum(
    d1: &SpliceDiagram,
    a1: usize,
    d2: &SpliceDiagram,
    a2: usize,
) -> Result<(SpliceDiagram, usize), SpliceError> {
    d1.arrow_edge(a1)?;
    d2.arrow_edge(a2)?;
    let mut out = d1.clone();
    let shift = out.absorb(d2);
    let arrow = out.sum_in_place(a1, a2 + shift)?;
    let map = out.compact();
    Ok((out, map[arrow]))
}

/// Splice diagram of the link whose complement has the tree's Artin group
/// as fundamental group.
///
/// Each edge contributes a torus link. An even edge gives one component to
/// each end, an odd edge gives its single component to both ends. At every
/// vertex the components of the incident edges are summed one after another
/// in edge order.
pub fn artin_tree_to_splice(t: &ArtinTree) -> Result<SpliceDiagram, SpliceError> {
    if !is_big(t) {
        return Err(SpliceError::NotBig);
    }
    let mut d = SpliceDiagram::default();
    // current arrowtip of each link component; components merge as sums happen
    let mut component_tip: Vec<usize> = Vec::new();
    let mut component_parent: Vec<usize> = Vec::new();
    // for each tree vertex, the components of its incident edges in edge order
    let mut at_vertex: Vec<Vec<usize>> = vec![Vec::new(); t.vertex_count()];
    for e in t.edges() {
        let link = torus_link_splice(e.weight)?;
        let shift = d.absorb(&link.diagram);
        let mut new_component = |tip: usize| {
            component_tip.push(tip + shift);
            component_parent.push(component_parent.len());
            component_parent.len() - 1
        };
        if let [only] = link.handles[..] {
            let c = new_component(only);
            at_vertex[e.a].push(c);
            at_vertex[e.b].push(c);
        } else {
            let ca = new_component(link.handles[0]);
            let cb = new_component(link.handles[1]);
            at_vertex[e.a].push(ca);
            at_vertex[e.b].push(cb);
        }
    }
    fn root(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for components in at_vertex.iter().filter(|c| c.len() >= 2) {
        let mut current = root(&mut component_parent, components[0]);
        for &c in &components[1..] {
            let other = root(&mut component_parent, c);
            let arrow = d.sum_in_place(component_tip[current], component_tip[other])?;
            component_parent[other] = current;
            component_tip[current] = arrow;
            current = root(&mut component_parent, current);
        }
    }
    d.compact();
    Ok(d)
}

/// Colored decomposition graph of a splice diagram: one vertex per node
/// (internal vertex), black when an arrow is attached, with the edges that
/// join two nodes.
pub fn splice_to_decomposition(d: &SpliceDiagram) -> Result<BicoloredGraph, SpliceError> {
    let mut index = vec![usize::MAX; d.vertex_count()];
    let mut colors = Vec::new();
    for (v, &kind) in d.kinds().iter().enumerate() {
        if kind != SpliceVertexKind::Internal {
            continue;
        }
        let valence = d.valence(v);
        if valence < 3 {
            return Err(SpliceError::LowValence { vertex: v, valence });
        }
        let arrow = d.incident(v).any(|e| {
            let w = if e.a == v { e.b } else { e.a };
            d.kinds()[w] == SpliceVertexKind::Arrowtip
        });
        index[v] = colors.len();
        colors.push(if arrow { Color::Black } else { Color::White });
    }
    let edges: Vec<(usize, usize)> = d
        .edges()
        .iter()
        .filter(|e| index[e.a] != usize::MAX && index[e.b] != usize::MAX)
        .map(|e| (index[e.a], index[e.b]))
        .collect();
    BicoloredGraph::from_edges(colors, edges).map_err(|_| SpliceError::NotBig)
}

fn kind_token(kind: SpliceVertexKind) -> &'static str {
    match kind {
        SpliceVertexKind::Internal => "node",
        SpliceVertexKind::Leaf => "leaf",
        SpliceVertexKind::Arrowtip => "arrow",
    }
}

/// Line-based dump: `n <id> <node|leaf|arrow>` and `s <id> <id> [weight]`.
pub fn write_splice(d: &SpliceDiagram) -> String {
    let mut out = String::from("splice-diagram v1\n");
    for (v, &k) in d.kinds().iter().enumerate() {
        let _ = writeln!(out, "n {v} {}", kind_token(k));
    }
    for e in d.edges() {
        match e.weight {
            Some(w) => {
                let _ = writeln!(out, "s {} {} {w}", e.a, e.b);
            }
            None => {
                let _ = writeln!(out, "s {} {}", e.a, e.b);
            }
        }
    }
    out
}

pub fn splice_to_dot(d: &SpliceDiagram) -> String {
    let mut out = String::from("graph splice {\n");
    for (v, &k) in d.kinds().iter().enumerate() {
        let shape = match k {
            SpliceVertexKind::Internal => "shape=circle, width=0.15, label=\"\"",
            SpliceVertexKind::Leaf => "shape=circle, width=0.1, label=\"\", style=filled",
            SpliceVertexKind::Arrowtip => "shape=triangle, width=0.15, label=\"\"",
        };
        let _ = writeln!(out, "  s{v} [{shape}];");
    }
    for e in d.edges() {
        match e.weight {
            Some(w) => {
                let _ = writeln!(out, "  s{} -- s{} [label=\"{w}\"];", e.a, e.b);
            }
            None => {
                let _ = writeln!(out, "  s{} -- s{};", e.a, e.b);
            }
        }
    }
    out.push_str("}\n");
    out
}
