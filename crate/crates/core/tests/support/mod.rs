//! Shared fixtures and independent oracles for the integration tests.
//!
//! The oracles here deliberately avoid the library's algorithms: the
//! triangulation oracle enumerates every subset of the missing edges, and
//! the exhaustive generators enumerate every labeled graph of a class. They
//! are slow and obviously correct, which is the point.

// Each test target pulls in a different subset of these helpers.
#![allow(dead_code)]

use imsets::graph::{GraphClass, MixedGraph};

/// The undirected cycle `0 - 1 - … - (n-1) - 0`.
pub fn cycle(n: usize) -> MixedGraph {
    let mut g = MixedGraph::new(n).unwrap();
    for i in 0..n {
        g.add_undirected(i, (i + 1) % n).unwrap();
    }
    g
}

/// An undirected graph from an edge list.
pub fn ug(n: usize, edges: &[(usize, usize)]) -> MixedGraph {
    let mut g = MixedGraph::new(n).unwrap();
    for &(a, b) in edges {
        g.add_undirected(a, b).unwrap();
    }
    g
}

fn vertex_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect()
}

/// Every labeled undirected graph on `n` vertices.
pub fn all_ugs(n: usize) -> Vec<MixedGraph> {
    let pairs = vertex_pairs(n);
    (0u64..1 << pairs.len())
        .map(|mask| {
            let mut g = MixedGraph::new(n).unwrap();
            for (k, &(a, b)) in pairs.iter().enumerate() {
                if mask >> k & 1 != 0 {
                    g.add_undirected(a, b).unwrap();
                }
            }
            g
        })
        .collect()
}

/// Every labeled chain graph on `n` vertices: each vertex pair gets one of
/// no edge / undirected / either direction, and assignments with a
/// semi-directed cycle are dropped.
pub fn all_chain_graphs(n: usize) -> Vec<MixedGraph> {
    let pairs = vertex_pairs(n);
    let mut out = Vec::new();
    for code in 0u64..4u64.pow(pairs.len() as u32) {
        let mut g = MixedGraph::new(n).unwrap();
        let mut c = code;
        for &(a, b) in &pairs {
            match c % 4 {
                1 => g.add_undirected(a, b).unwrap(),
                2 => g.add_directed(a, b).unwrap(),
                3 => g.add_directed(b, a).unwrap(),
                _ => {}
            }
            c /= 4;
        }
        if g.classify().is_chain_graph() {
            out.push(g);
        }
    }
    out
}

/// Every labeled DAG on `n` vertices (the edgeless graph included).
pub fn all_dags(n: usize) -> Vec<MixedGraph> {
    let pairs = vertex_pairs(n);
    let mut out = Vec::new();
    for code in 0u64..3u64.pow(pairs.len() as u32) {
        let mut g = MixedGraph::new(n).unwrap();
        let mut c = code;
        for &(a, b) in &pairs {
            match c % 3 {
                1 => g.add_directed(a, b).unwrap(),
                2 => g.add_directed(b, a).unwrap(),
                _ => {}
            }
            c /= 3;
        }
        if g.classify() == GraphClass::Dag || g.edge_count() == 0 {
            out.push(g);
        }
    }
    out
}

/// Chordality without the library's search-order machinery: repeatedly
/// eliminate any simplicial vertex (one whose neighbourhood is a clique);
/// the graph is chordal iff every vertex can be eliminated this way.
fn oracle_is_chordal(g: &MixedGraph) -> bool {
    let mut remaining = g.vertices();
    'outer: while !remaining.is_empty() {
        for v in remaining.iter() {
            let nb = g.neighbours(v) & remaining;
            let simplicial = nb
                .iter()
                .all(|x| nb.iter().all(|y| x == y || g.has_undirected(x, y)));
            if simplicial {
                remaining = remaining.without(v);
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// All minimal triangulations of an undirected graph by brute force: try
/// every subset of the missing edges, keep the chordal results, and filter
/// to the subset-minimal fills. Exponential in the number of non-edges.
pub fn oracle_minimal_triangulations(g: &MixedGraph) -> Vec<MixedGraph> {
    let missing: Vec<(usize, usize)> = vertex_pairs(g.universe_size())
        .into_iter()
        .filter(|&(a, b)| {
            g.vertices().contains(a) && g.vertices().contains(b) && !g.has_undirected(a, b)
        })
        .collect();
    let mut chordal_fills: Vec<u64> = Vec::new();
    for mask in 0u64..1 << missing.len() {
        let mut h = g.clone();
        for (k, &(a, b)) in missing.iter().enumerate() {
            if mask >> k & 1 != 0 {
                h.add_undirected(a, b).unwrap();
            }
        }
        if oracle_is_chordal(&h) {
            chordal_fills.push(mask);
        }
    }
    // Ascending popcount; a fill is minimal iff it contains no kept fill.
    chordal_fills.sort_by_key(|m| m.count_ones());
    let mut minimal: Vec<u64> = Vec::new();
    for &m in &chordal_fills {
        if minimal.iter().all(|&keep| keep & m != keep) {
            minimal.push(m);
        }
    }
    minimal
        .into_iter()
        .map(|mask| {
            let mut h = g.clone();
            for (k, &(a, b)) in missing.iter().enumerate() {
                if mask >> k & 1 != 0 {
                    h.add_undirected(a, b).unwrap();
                }
            }
            h
        })
        .collect()
}

/// Canonical form for comparing graph sets: sorted edge lists.
pub fn edge_key(g: &MixedGraph) -> (Vec<(usize, usize)>, Vec<(usize, usize)>) {
    (g.undirected_edges(), g.directed_edges())
}
