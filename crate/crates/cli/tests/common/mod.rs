//! Graph generators shared by the integration tests.

use rand::seq::SliceRandom;
use rand::Rng;

use bisimqi::{BicoloredGraph, Color};

/// Connected simple-with-loops graph with `lo..=hi` vertices; each possible
/// edge or loop is present with probability `p`. Retries until connected.
pub fn random_connected<R: Rng>(rng: &mut R, lo: usize, hi: usize, p: f64) -> BicoloredGraph {
    loop {
        let n = rng.gen_range(lo..=hi);
        let colors: Vec<Color> = (0..n)
            .map(|_| if rng.gen_bool(0.5) { Color::Black } else { Color::White })
            .collect();
        let mut g = BicoloredGraph::new(colors).unwrap();
        for u in 0..n {
            for v in u..n {
                if rng.gen_bool(p) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        if g.is_connected() {
            return g;
        }
    }
}

/// Random connected graph that weakly covers `base` (which must be
/// connected), with at most `max_vertices` vertices when `base` allows it.
/// Vertices are shuffled and some edges doubled.
pub fn random_cover<R: Rng>(rng: &mut R, base: &BicoloredGraph, max_vertices: usize) -> BicoloredGraph {
    let n = base.vertex_count();
    let budget = max_vertices.max(n);
    loop {
        let mut copies = vec![1usize; n];
        let mut total = n;
        while total < budget && rng.gen_bool(0.6) {
            copies[rng.gen_range(0..n)] += 1;
            total += 1;
        }
        let mut first = Vec::with_capacity(n);
        let mut acc = 0;
        for &k in &copies {
            first.push(acc);
            acc += k;
        }
        let mut colors = Vec::with_capacity(total);
        for (a, &k) in copies.iter().enumerate() {
            colors.extend(std::iter::repeat_n(base.color(a), k));
        }
        let mut edges = Vec::new();
        for ((a, b), _) in base.edges() {
            let pick = |rng: &mut R, x: usize| first[x] + rng.gen_range(0..copies[x]);
            if a == b {
                for i in 0..copies[a] {
                    edges.push((first[a] + i, pick(rng, a)));
                }
            } else {
                let mut covered_b = vec![false; copies[b]];
                for i in 0..copies[a] {
                    let j = pick(rng, b);
                    covered_b[j - first[b]] = true;
                    edges.push((first[a] + i, j));
                }
                for (j, covered) in covered_b.iter().enumerate() {
                    if !covered || rng.gen_bool(0.2) {
                        edges.push((pick(rng, a), first[b] + j));
                    }
                }
            }
        }
        let doubled: Vec<_> = edges.iter().copied().filter(|_| rng.gen_bool(0.1)).collect();
        edges.extend(doubled);
        let mut perm: Vec<usize> = (0..total).collect();
        perm.shuffle(rng);
        let g = BicoloredGraph::from_edges(colors, edges).unwrap().permuted(&perm);
        if g.is_connected() {
            return g;
        }
    }
}

/// Every connected simple-with-loops graph on `n` labeled vertices, over
/// every coloring.
pub fn all_connected(n: usize) -> Vec<BicoloredGraph> {
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|u| (u..n).map(move |v| (u, v))).collect();
    let mut out = Vec::new();
    for coloring in 0..1u32 << n {
        let colors: Vec<Color> = (0..n)
            .map(|v| if coloring >> v & 1 == 1 { Color::Black } else { Color::White })
            .collect();
        for mask in 0..1u64 << slots.len() {
            let edges = (0..slots.len()).filter(|i| mask >> i & 1 == 1).map(|i| slots[i]);
            let g = BicoloredGraph::from_edges(colors.clone(), edges).unwrap();
            if g.is_connected() {
                out.push(g);
            }
        }
    }
    out
}
