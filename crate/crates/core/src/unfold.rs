//! Finite-depth types of the bicolored Bass-Serre tree.
//!
//! The tree is built from a graph by repeating each edge countably many
//! times and passing to the universal cover. Cut at depth `d`, the subtree
//! below a vertex is determined by its color and the *set* of depth `d-1`
//! types of its neighbors: with infinitely many copies of each edge, child
//! types only matter up to presence.
//!
//! Types are hash-consed in an [`Unfolder`], so comparing two vertices at
//! depth `d` costs `O(|V| d)` instead of exploring the tree.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::graph::{BicoloredGraph, Color};

/// Depth-truncated isomorphism type of the tree below a vertex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UnfoldingType {
    color: Color,
    depth: usize,
    /// Sorted, without duplicates.
    children: Vec<Arc<UnfoldingType>>,
}

impl UnfoldingType {
    pub fn color(&self) -> Color {
        self.color
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn children(&self) -> impl Iterator<Item = &UnfoldingType> {
        self.children.iter().map(|c| c.as_ref())
    }
}

/// Handle to a type interned in an [`Unfolder`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TypeId(u32);

#[derive(Debug)]
struct Node {
    color: Color,
    depth: usize,
    children: Vec<TypeId>,
}

/// Interning table for unfolding types. Ids from one table are equal
/// exactly when the types are, across every graph unfolded through it.
#[derive(Debug, Default)]
pub struct Unfolder {
    index: HashMap<(Color, usize, Vec<TypeId>), TypeId>,
    nodes: Vec<Node>,
}

impl Unfolder {
    pub fn new() -> Self {
        Self::default()
    }

    fn intern(&mut self, color: Color, depth: usize, children: Vec<TypeId>) -> TypeId {
        if let Some(&id) = self.index.get(&(color, depth, children.clone())) {
            return id;
        }
        let id = TypeId(self.nodes.len() as u32);
        self.nodes.push(Node {
            color,
            depth,
            children: children.clone(),
        });
        self.index.insert((color, depth, children), id);
        id
    }

    /// Types of every vertex of `g` at `depth`.
    pub fn level(&mut self, g: &BicoloredGraph, depth: usize) -> Vec<TypeId> {
        let neighbors = g.neighbor_sets();
        let mut current: Vec<TypeId> = (0..g.vertex_count())
            .map(|v| self.intern(g.color(v), 0, Vec::new()))
            .collect();
        for d in 1..=depth {
            current = (0..g.vertex_count())
                .map(|v| {
                    let mut kids: Vec<TypeId> = neighbors[v].iter().map(|&w| current[w]).collect();
                    kids.sort_unstable();
                    kids.dedup();
                    self.intern(g.color(v), d, kids)
                })
                .collect();
        }
        current
    }

    pub fn type_of(&mut self, g: &BicoloredGraph, v: usize, depth: usize) -> TypeId {
        self.level(g, depth)[v]
    }

    /// Builds the explicit type; equal ids share their subtrees.
    pub fn materialize(&self, id: TypeId) -> UnfoldingType {
        let mut memo: HashMap<TypeId, Arc<UnfoldingType>> = HashMap::new();
        self.build(id, &mut memo).as_ref().clone()
    }

    fn build(&self, id: TypeId, memo: &mut HashMap<TypeId, Arc<UnfoldingType>>) -> Arc<UnfoldingType> {
        if let Some(t) = memo.get(&id) {
            return t.clone();
        }
        let node = &self.nodes[id.0 as usize];
        let mut children: Vec<Arc<UnfoldingType>> =
            node.children.iter().map(|&c| self.build(c, memo)).collect();
        children.sort();
        let t = Arc::new(UnfoldingType {
            color: node.color,
            depth: node.depth,
            children,
        });
        memo.insert(id, t.clone());
        t
    }

    /// Same string as [`unfolding_key`] on the materialized type.
    pub fn key(&self, id: TypeId) -> String {
        let mut memo = HashMap::new();
        self.key_memo(id, &mut memo)
    }

    fn key_memo(&self, id: TypeId, memo: &mut HashMap<TypeId, String>) -> String {
        if let Some(k) = memo.get(&id) {
            return k.clone();
        }
        let node = &self.nodes[id.0 as usize];
        let parts: Vec<String> = node.children.iter().map(|&c| self.key_memo(c, memo)).collect();
        let k = assemble_key(node.color, parts);
        memo.insert(id, k.clone());
        k
    }
}

fn assemble_key(color: Color, mut parts: Vec<String>) -> String {
    parts.sort();
    format!("{}[{}]", color.token(), parts.join(","))
}

/// Depth-`depth` type of the Bass-Serre tree at vertex `v`.
pub fn unfolding(g: &BicoloredGraph, v: usize, depth: usize) -> UnfoldingType {
    let mut unfolder = Unfolder::new();
    let id = unfolder.type_of(g, v, depth);
    unfolder.materialize(id)
}

/// Canonical string: the color token followed by the sorted keys of the
/// children in brackets, e.g. `b[w[b[]]]`. Two types of the same depth are
/// equal exactly when their keys are.
pub fn unfolding_key(t: &UnfoldingType) -> String {
    let parts = t.children().map(unfolding_key).collect();
    assemble_key(t.color, parts)
}

pub const DOT_NODE_LIMIT: usize = 20_000;

/// Explicit tree to `depth`, giving each vertex `multiplicity` children per
/// distinct neighbor. Only meant for pictures: unlike [`unfolding`], the
/// result is not a bisimilarity invariant. Returns `None` past
/// [`DOT_NODE_LIMIT`] nodes.
pub fn unfolding_dot(g: &BicoloredGraph, root: usize, depth: usize, multiplicity: usize) -> Option<String> {
    let neighbors = g.neighbor_sets();
    let mut out = String::from("graph unfolding {\n");
    let mut frontier = vec![(0usize, root)];
    let mut next_id = 1usize;
    let style = |v: usize| match g.color(v) {
        Color::Black => "style=filled, fillcolor=black, fontcolor=white",
        Color::White => "style=solid",
    };
    let _ = writeln!(out, "  t0 [label=\"{root}\", {}];", style(root));
    for _ in 0..depth {
        let mut next = Vec::new();
        for &(id, v) in &frontier {
            for &w in &neighbors[v] {
                for _ in 0..multiplicity {
                    if next_id >= DOT_NODE_LIMIT {
                        return None;
                    }
                    let _ = writeln!(out, "  t{next_id} [label=\"{w}\", {}];", style(w));
                    let _ = writeln!(out, "  t{id} -- t{next_id};");
                    next.push((next_id, w));
                    next_id += 1;
                }
            }
        }
        frontier = next;
    }
    out.push_str("}\n");
    Some(out)
}
