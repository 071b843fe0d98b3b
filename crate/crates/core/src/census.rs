//! Counting connected minimal bicolored graphs.
//!
//! Vertices `0..b` are black and `b..n` white. Every subset of the
//! `n(n+1)/2` possible edges and loops is tried; connected minimal ones are
//! counted, and the total is divided by `b!(n-b)!`. Minimal graphs have no
//! automorphisms, so each isomorphism class is hit exactly that many times
//! and the division must be exact.
//!
//! Edge subsets are split into fixed-size shards that are summed in
//! parallel; the result does not depend on the worker count.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{canonical_form, BicoloredGraph, Color};

pub const MAX_VERTICES: usize = 6;
const SHARD_BITS: u32 = 12;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CensusError {
    #[error("vertex count must be between 1 and {MAX_VERTICES}, got {0}")]
    VertexCount(usize),
    #[error("black count {b} exceeds vertex count {n}")]
    BlackCount { n: usize, b: usize },
    #[error("labeled count {labeled} for n={n}, b={b} is not divisible by {divisor}")]
    Divisibility {
        n: usize,
        b: usize,
        labeled: u64,
        divisor: u64,
    },
    #[error("could not build worker pool: {0}")]
    Pool(String),
}

/// Number of connected minimal graphs with `n` vertices, by number of black vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub n: usize,
    pub counts: Vec<u64>,
    pub total: u64,
}

impl fmt::Display for CensusRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:>2} |", self.n)?;
        for c in &self.counts {
            write!(f, " {c:>8}")?;
        }
        write!(f, " | {:>9}", self.total)
    }
}

fn check(n: usize, b: usize) -> Result<(), CensusError> {
    if !(1..=MAX_VERTICES).contains(&n) {
        return Err(CensusError::VertexCount(n));
    }
    if b > n {
        return Err(CensusError::BlackCount { n, b });
    }
    Ok(())
}

fn factorial(k: usize) -> u64 {
    (1..=k as u64).product()
}

/// Possible edges on `n` labeled vertices, loops included, in a fixed order.
fn edge_slots(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(n * (n + 1) / 2);
    for u in 0..n {
        for v in u..n {
            out.push((u, v));
        }
    }
    out
}

/// Adjacency bit sets for the edge subset `mask`; a loop sets the vertex's own bit.
#[inline]
fn adjacency(slots: &[(usize, usize)], mask: u64) -> [u8; MAX_VERTICES] {
    let mut adj = [0u8; MAX_VERTICES];
    let mut bits = mask;
    while bits != 0 {
        let i = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let (u, v) = slots[i];
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    adj
}

#[inline]
fn connected(adj: &[u8], n: usize) -> bool {
    let full = ((1u16 << n) - 1) as u8;
    let mut reach = 1u8;
    loop {
        let mut next = reach;
        let mut bits = reach;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            next |= adj[v];
        }
        if next == reach {
            return reach == full;
        }
        reach = next;
    }
}

/// Simultaneous refinement on bit sets. Keys pack the class id above the
/// bit set of adjacent class ids. Returns true when the stable partition
/// is discrete.
#[inline]
fn discrete_stable_partition(adj: &[u8], n: usize, b: usize) -> bool {
    let mut class = [0u8; MAX_VERTICES];
    let mut count = if b == 0 || b == n {
        1
    } else {
        for c in class.iter_mut().take(n).skip(b) {
            *c = 1;
        }
        2
    };
    loop {
        if count == n {
            return true;
        }
        let mut keys = [0u16; MAX_VERTICES];
        for v in 0..n {
            let mut seen = 0u8;
            let mut bits = adj[v];
            while bits != 0 {
                let w = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                seen |= 1 << class[w];
            }
            keys[v] = (u16::from(class[v]) << 8) | u16::from(seen);
        }
        let mut sorted = keys;
        let sorted = &mut sorted[..n];
        sorted.sort_unstable();
        let mut distinct = 1;
        for i in 1..n {
            if sorted[i] != sorted[distinct - 1] {
                sorted[distinct] = sorted[i];
                distinct += 1;
            }
        }
        if distinct == count {
            return false;
        }
        for v in 0..n {
            class[v] = sorted[..distinct].binary_search(&keys[v]).expect("key present") as u8;
        }
        count = distinct;
    }
}

#[inline]
fn is_counted(slots: &[(usize, usize)], n: usize, b: usize, mask: u64) -> bool {
    // the two edgeless one-vertex graphs are left out
    if mask == 0 && n == 1 {
        return false;
    }
    let adj = adjacency(slots, mask);
    connected(&adj, n) && discrete_stable_partition(&adj, n, b)
}

fn labeled_count(n: usize, b: usize) -> u64 {
    let slots = edge_slots(n);
    let total: u64 = 1 << slots.len();
    let shard = 1u64 << SHARD_BITS.min(slots.len() as u32);
    let shards = total / shard;
    (0..shards)
        .into_par_iter()
        .map(|s| {
            (s * shard..(s + 1) * shard)
                .filter(|&mask| is_counted(&slots, n, b, mask))
                .count() as u64
        })
        .sum()
}

fn classes_from_labeled(n: usize, b: usize, labeled: u64) -> Result<u64, CensusError> {
    let divisor = factorial(b) * factorial(n - b);
    if !labeled.is_multiple_of(divisor) {
        return Err(CensusError::Divisibility {
            n,
            b,
            labeled,
            divisor,
        });
    }
    Ok(labeled / divisor)
}

fn with_jobs<T: Send>(
    jobs: Option<usize>,
    work: impl FnOnce() -> T + Send,
) -> Result<T, CensusError> {
    match jobs {
        None => Ok(work()),
        Some(j) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(j.max(1))
                .build()
                .map_err(|e| CensusError::Pool(e.to_string()))?;
            Ok(pool.install(work))
        }
    }
}

/// Number of isomorphism classes of connected minimal graphs with `n`
/// vertices of which `b` are black. `jobs` caps the worker count.
pub fn count_minimal(n: usize, b: usize, jobs: Option<usize>) -> Result<u64, CensusError> {
    check(n, b)?;
    // color swap is a bijection on minimal graphs
    let b = b.min(n - b);
    let labeled = with_jobs(jobs, || labeled_count(n, b))?;
    classes_from_labeled(n, b, labeled)
}

/// Full row for `n`: counts for `b = 0..=n`.
pub fn enumerate_minimal(n: usize, jobs: Option<usize>) -> Result<CensusRow, CensusError> {
    check(n, 0)?;
    let mut counts = vec![0u64; n + 1];
    for b in 0..=n / 2 {
        let c = count_minimal(n, b, jobs)?;
        counts[b] = c;
        counts[n - b] = c;
    }
    let total = counts.iter().sum();
    Ok(CensusRow { n, counts, total })
}

/// Calls `emit` once per isomorphism class with its canonical
/// representative, in increasing edge-subset order. Returns the class count.
pub fn for_each_minimal(
    n: usize,
    b: usize,
    mut emit: impl FnMut(&BicoloredGraph),
) -> Result<u64, CensusError> {
    check(n, b)?;
    let slots = edge_slots(n);
    let colors: Vec<Color> = (0..n)
        .map(|v| if v < b { Color::Black } else { Color::White })
        .collect();
    let mut labeled = 0u64;
    let mut classes = 0u64;
    for mask in 0..(1u64 << slots.len()) {
        if !is_counted(&slots, n, b, mask) {
            continue;
        }
        labeled += 1;
        let g = BicoloredGraph::from_edges(
            colors.clone(),
            (0..slots.len()).filter(|i| mask >> i & 1 == 1).map(|i| slots[i]),
        )
        .expect("slots are valid");
        if canonical_form(&g).expect("counted graphs are minimal") == g {
            classes += 1;
            emit(&g);
        }
    }
    let expected = classes_from_labeled(n, b, labeled)?;
    assert_eq!(expected, classes, "one canonical representative per class");
    Ok(classes)
}

/// Canonical representatives of every class with `n` vertices and `b` black.
pub fn list_minimal(n: usize, b: usize) -> Result<Vec<BicoloredGraph>, CensusError> {
    let mut out = Vec::new();
    for_each_minimal(n, b, |g| out.push(g.clone()))?;
    Ok(out)
}

/// Number of quasi-isometry classes with at most `max_n` Seifert pieces,
/// i.e. the census totals for `n = 1..=max_n` added up.
pub fn cumulative_qi_classes(max_n: usize) -> Result<u64, CensusError> {
    check(max_n, 0)?;
    (1..=max_n)
        .map(|n| enumerate_minimal(n, None).map(|row| row.total))
        .sum()
}
