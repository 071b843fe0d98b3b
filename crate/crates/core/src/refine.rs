//! Weak coverings, bisimilarity and minimal bicolored graphs.
//!
//! A coloring of the vertices induces a quotient graph. The coarsest coloring
//! that refines black/white and is *stable* (vertices of one class see the
//! same set of classes) gives the minimal graph of the bisimilarity class.
//! Two routes compute it: [`minimize_faithful`] splits one class at a time,
//! restarting the scan after every split, while [`minimize`] splits every
//! class at once in key-sorted rounds.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::graph::{are_isomorphic, BicoloredGraph, Color, GraphError, VertexMap};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RefineError {
    #[error("graph is not connected")]
    Disconnected,
    #[error("invalid coloring: {0}")]
    InvalidColoring(String),
    #[error("brute-force oracle is limited to {limit} vertices, got {got}")]
    TooLarge { limit: usize, got: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Assignment of class ids `0..class_count` to vertices. Every id is used,
/// and vertices sharing a class share a color.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    classes: Vec<usize>,
    count: usize,
}

impl Coloring {
    pub fn new(g: &BicoloredGraph, classes: Vec<usize>) -> Result<Self, RefineError> {
        if classes.len() != g.vertex_count() {
            return Err(RefineError::InvalidColoring(format!(
                "{} classes for {} vertices",
                classes.len(),
                g.vertex_count()
            )));
        }
        let count = classes.iter().max().map_or(0, |m| m + 1);
        let mut class_color: Vec<Option<Color>> = vec![None; count];
        for (v, &c) in classes.iter().enumerate() {
            match class_color[c] {
                None => class_color[c] = Some(g.color(v)),
                Some(col) if col != g.color(v) => {
                    return Err(RefineError::InvalidColoring(format!(
                        "class {c} mixes black and white"
                    )))
                }
                _ => {}
            }
        }
        if let Some(c) = class_color.iter().position(Option::is_none) {
            return Err(RefineError::InvalidColoring(format!("class {c} is empty")));
        }
        Ok(Coloring { classes, count })
    }

    /// Black vertices in class 0 and white in class 1; a one-colored graph
    /// gets the single class 0.
    pub fn initial(g: &BicoloredGraph) -> Self {
        let raw: Vec<usize> = g
            .colors()
            .iter()
            .map(|&c| usize::from(c == Color::White))
            .collect();
        Coloring::compacted(raw)
    }

    pub fn discrete(n: usize) -> Self {
        Coloring {
            classes: (0..n).collect(),
            count: n,
        }
    }

    /// Renumbers ids onto `0..k` keeping their relative order.
    fn compacted(raw: Vec<usize>) -> Self {
        let used: BTreeSet<usize> = raw.iter().copied().collect();
        let index: BTreeMap<usize, usize> = used.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        Coloring {
            classes: raw.iter().map(|c| index[c]).collect(),
            count: used.len(),
        }
    }

    pub fn class_of(&self, v: usize) -> usize {
        self.classes[v]
    }

    pub fn classes(&self) -> &[usize] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.count
    }

    pub fn is_discrete(&self) -> bool {
        self.count == self.classes.len()
    }

    /// Vertices of each class, in class order.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.count];
        for (v, &c) in self.classes.iter().enumerate() {
            out[c].push(v);
        }
        out
    }

    /// Same blocks, regardless of how the classes are numbered.
    pub fn same_partition(&self, other: &Coloring) -> bool {
        let mut a = self.blocks();
        let mut b = other.blocks();
        a.sort();
        b.sort();
        a == b
    }

    /// The quotient map, vertex to class.
    pub fn as_vertex_map(&self) -> VertexMap {
        VertexMap::new(self.classes.clone())
    }
}

/// Set of class ids adjacent to a vertex.
pub type AdjacentSet = BTreeSet<usize>;

/// Classes of the vertices joined to `v` by an edge, including `v`'s own
/// class when it has a loop.
pub fn adjacent_colors(g: &BicoloredGraph, c: &Coloring, v: usize) -> AdjacentSet {
    g.edges()
        .filter_map(|((a, b), _)| {
            if a == v {
                Some(c.class_of(b))
            } else if b == v {
                Some(c.class_of(a))
            } else {
                None
            }
        })
        .collect()
}

/// One vertex per class, with an edge between two classes (possibly a loop)
/// when some edge of `g` joins their members. The result is simple.
pub fn quotient_graph(g: &BicoloredGraph, c: &Coloring) -> BicoloredGraph {
    let mut colors = vec![Color::Black; c.class_count()];
    for v in 0..g.vertex_count() {
        colors[c.class_of(v)] = g.color(v);
    }
    let mut q = BicoloredGraph::new(colors).expect("at least one class");
    let pairs: BTreeSet<(usize, usize)> = g
        .edges()
        .map(|((a, b), _)| {
            let (x, y) = (c.class_of(a), c.class_of(b));
            (x.min(y), x.max(y))
        })
        .collect();
    for (x, y) in pairs {
        q.add_edge(x, y).expect("class ids are vertices");
    }
    q
}

/// Checks that `map` is a weak covering from `source` onto `target`: it keeps
/// colors, sends every edge onto an edge, and every edge at `map(v)` lifts to
/// an edge at `v`.
///
/// Edges are matched at the level of vertex pairs. When the target has a
/// pair of multiplicity `m`, at least `m` edges at `v` must lie over it.
pub fn is_weak_covering(source: &BicoloredGraph, target: &BicoloredGraph, map: &VertexMap) -> bool {
    let n = source.vertex_count();
    if map.len() != n || map.images().iter().any(|&w| w >= target.vertex_count()) {
        return false;
    }
    if (0..n).any(|v| source.color(v) != target.color(map.image(v))) {
        return false;
    }
    // over[v][pair] = number of edges at v lying over the target pair
    let mut over: Vec<BTreeMap<(usize, usize), usize>> = vec![BTreeMap::new(); n];
    for ((a, b), m) in source.edges() {
        let (x, y) = (map.image(a), map.image(b));
        let image = (x.min(y), x.max(y));
        if target.multiplicity(image.0, image.1) == 0 {
            return false;
        }
        *over[a].entry(image).or_insert(0) += m;
        if a != b {
            *over[b].entry(image).or_insert(0) += m;
        }
    }
    for v in 0..n {
        let fv = map.image(v);
        for ((x, y), m) in target.edges() {
            if (x == fv || y == fv) && over[v].get(&(x, y)).copied().unwrap_or(0) < m {
                return false;
            }
        }
    }
    true
}

/// A minimal graph together with the quotient map onto it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Minimization {
    pub graph: BicoloredGraph,
    pub coloring: Coloring,
}

fn require_connected(g: &BicoloredGraph) -> Result<(), RefineError> {
    if g.is_connected() {
        Ok(())
    } else {
        Err(RefineError::Disconnected)
    }
}

/// Single-split refinement.
///
/// Starting from the black/white coloring with the current color at 0, look
/// for two vertices of the current color with different adjacent sets. If
/// found, the vertices whose adjacent set equals that of the first such
/// vertex in index order move to a fresh color and the scan restarts at 0;
/// otherwise move on to the next color. Stops once every color is stable.
pub fn minimize_faithful(g: &BicoloredGraph) -> Result<Minimization, RefineError> {
    require_connected(g)?;
    let n = g.vertex_count();
    let neighbors = g.neighbor_sets();
    let mut color: Vec<usize> = g
        .colors()
        .iter()
        .map(|&c| usize::from(c == Color::White))
        .collect();
    let mut current = 0;
    let mut max_color = 1;
    let adjacent = |color: &[usize], v: usize| -> BTreeSet<usize> {
        neighbors[v].iter().map(|&w| color[w]).collect()
    };
    while current <= max_color {
        let members: Vec<usize> = (0..n).filter(|&v| color[v] == current).collect();
        let sets: Vec<BTreeSet<usize>> = members.iter().map(|&v| adjacent(&color, v)).collect();
        if sets.iter().any(|s| *s != sets[0]) {
            max_color += 1;
            for (&v, s) in members.iter().zip(&sets) {
                if *s == sets[0] {
                    color[v] = max_color;
                }
            }
            current = 0;
        } else {
            current += 1;
        }
    }
    let coloring = Coloring::compacted(color);
    Ok(Minimization {
        graph: quotient_graph(g, &coloring),
        coloring,
    })
}

/// One round of simultaneous refinement. Each vertex is keyed by its class
/// and the set of classes it sees; keys are sorted and ranked.
fn refine_round(neighbors: &[Vec<usize>], classes: &[usize]) -> Vec<usize> {
    let keys: Vec<(usize, Vec<usize>)> = neighbors
        .iter()
        .enumerate()
        .map(|(v, around)| {
            let mut seen: Vec<usize> = around.iter().map(|&w| classes[w]).collect();
            seen.sort_unstable();
            seen.dedup();
            (classes[v], seen)
        })
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    sorted.dedup();
    keys.iter()
        .map(|k| sorted.binary_search(k).expect("key present"))
        .collect()
}

/// Coarsest stable coloring refining black/white, by simultaneous rounds.
/// Does not require connectivity. Class ids come out in key order, so they
/// do not depend on the vertex labeling.
pub(crate) fn stable_partition(g: &BicoloredGraph) -> Coloring {
    refinement_rounds(g).pop().expect("at least the initial coloring")
}

/// Colorings after each round of simultaneous refinement, starting with
/// black/white and ending at the stable coloring (which appears once).
pub(crate) fn refinement_rounds(g: &BicoloredGraph) -> Vec<Coloring> {
    let neighbors = g.neighbor_sets();
    let mut current = Coloring::initial(g);
    let mut rounds = vec![current.clone()];
    loop {
        let next = refine_round(&neighbors, current.classes());
        let next = Coloring::compacted(next);
        if next.class_count() == current.class_count() {
            return rounds;
        }
        rounds.push(next.clone());
        current = next;
    }
}

/// Class counts of the successive refinement rounds, ending at the stable
/// partition. Strictly increasing, and never longer than the vertex count.
pub fn refinement_history(g: &BicoloredGraph) -> Vec<usize> {
    refinement_rounds(g).iter().map(Coloring::class_count).collect()
}

/// Classes after exactly `rounds` simultaneous refinement rounds (the
/// stable coloring if it is reached earlier).
pub fn coloring_after_rounds(g: &BicoloredGraph, rounds: usize) -> Coloring {
    let all = refinement_rounds(g);
    all[rounds.min(all.len() - 1)].clone()
}

/// Minimal graph of the bisimilarity class of `g` and the weak covering onto it.
pub fn minimize(g: &BicoloredGraph) -> Result<Minimization, RefineError> {
    require_connected(g)?;
    let coloring = stable_partition(g);
    Ok(Minimization {
        graph: quotient_graph(g, &coloring),
        coloring,
    })
}

/// A graph is minimal when it is simple and its stable partition is discrete.
pub fn is_minimal(g: &BicoloredGraph) -> Result<bool, RefineError> {
    require_connected(g)?;
    Ok(g.is_simple() && stable_partition(g).is_discrete())
}

/// Witness of bisimilarity: both minimal graphs and the isomorphism
/// `matching` from the first onto the second.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bisimulation {
    pub left: Minimization,
    pub right: Minimization,
    pub matching: VertexMap,
}

impl Bisimulation {
    /// For each vertex of the first input, the vertex of the second
    /// input's minimal graph it corresponds to.
    pub fn vertex_correspondence(&self) -> Vec<usize> {
        self.left
            .coloring
            .classes()
            .iter()
            .map(|&c| self.matching.image(c))
            .collect()
    }
}

pub fn bisimilar(g1: &BicoloredGraph, g2: &BicoloredGraph) -> Result<Option<Bisimulation>, RefineError> {
    let left = minimize(g1)?;
    let right = minimize(g2)?;
    let matching = are_isomorphic(&left.graph, &right.graph)?;
    Ok(matching.map(|matching| Bisimulation {
        left,
        right,
        matching,
    }))
}

pub const ORACLE_LIMIT: usize = 6;

/// Brute-force minimality: no partition of the vertices into color-pure
/// classes, with fewer classes than vertices, has a quotient map that is a
/// weak covering.
pub fn brute_force_minimal_oracle(g: &BicoloredGraph) -> Result<bool, RefineError> {
    let n = g.vertex_count();
    if n > ORACLE_LIMIT {
        return Err(RefineError::TooLarge {
            limit: ORACLE_LIMIT,
            got: n,
        });
    }
    require_connected(g)?;
    let mut labels = vec![0usize; n];
    Ok(!any_coarser_covering(g, &mut labels, 0, 0))
}

/// Walks restricted-growth strings (set partitions) over the vertices.
fn any_coarser_covering(g: &BicoloredGraph, labels: &mut [usize], v: usize, used: usize) -> bool {
    let n = labels.len();
    if v == n {
        if used == n {
            return false;
        }
        let Ok(coloring) = Coloring::new(g, labels.to_vec()) else {
            return false;
        };
        let q = quotient_graph(g, &coloring);
        return q.is_connected() && is_weak_covering(g, &q, &coloring.as_vertex_map());
    }
    for class in 0..=used {
        // keep classes color-pure as we go
        if (0..v).any(|u| labels[u] == class && g.color(u) != g.color(v)) {
            continue;
        }
        labels[v] = class;
        let next_used = if class == used { used + 1 } else { used };
        if any_coarser_covering(g, labels, v + 1, next_used) {
            return true;
        }
    }
    false
}
