//! Seeded random graph generators for cross-validation runs.
//!
//! Everything here is deterministic given the RNG state, so test failures
//! reproduce from a seed alone.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::Result;
use crate::graph::MixedGraph;

/// An Erdős–Rényi undirected graph: each pair is an edge with probability
/// `p`.
pub fn random_ug<R: Rng>(n: usize, p: f64, rng: &mut R) -> Result<MixedGraph> {
    let mut g = MixedGraph::new(n)?;
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                g.add_undirected(a, b)?;
            }
        }
    }
    Ok(g)
}

/// Like [`random_ug`], but edges are added along a random spanning tree
/// first so the result is connected.
pub fn random_connected_ug<R: Rng>(n: usize, p: f64, rng: &mut R) -> Result<MixedGraph> {
    let mut g = MixedGraph::new(n)?;
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    for i in 1..n {
        let j = rng.gen_range(0..i);
        g.add_undirected(order[i], order[j])?;
    }
    for a in 0..n {
        for b in a + 1..n {
            if !g.has_undirected(a, b) && rng.gen_bool(p) {
                g.add_undirected(a, b)?;
            }
        }
    }
    Ok(g)
}

/// A random chain graph: vertices are split into consecutive blocks,
/// undirected edges appear within blocks and directed edges point from
/// earlier blocks to later ones. Every output is a valid chain graph by
/// construction.
pub fn random_chain_graph<R: Rng>(
    n: usize,
    p_undirected: f64,
    p_directed: f64,
    rng: &mut R,
) -> Result<MixedGraph> {
    let mut block = vec![0usize; n];
    let mut next = 0usize;
    for b in block.iter_mut() {
        // Start a new block with probability 1/2; the first vertex always does.
        if next == 0 || rng.gen_bool(0.5) {
            next += 1;
        }
        *b = next;
    }
    let mut g = MixedGraph::new(n)?;
    for a in 0..n {
        for b in a + 1..n {
            if block[a] == block[b] {
                if rng.gen_bool(p_undirected) {
                    g.add_undirected(a, b)?;
                }
            } else if rng.gen_bool(p_directed) {
                // Blocks are assigned in vertex order, so a's block is earlier.
                g.add_directed(a, b)?;
            }
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphClass;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generators_are_seeded() {
        let mut r1 = ChaCha8Rng::seed_from_u64(7);
        let mut r2 = ChaCha8Rng::seed_from_u64(7);
        assert_eq!(
            random_ug(6, 0.5, &mut r1).unwrap(),
            random_ug(6, 0.5, &mut r2).unwrap()
        );
    }

    #[test]
    fn connected_generator_connects() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let g = random_connected_ug(7, 0.1, &mut rng).unwrap();
            assert_eq!(g.undirected_components().len(), 1);
        }
    }

    #[test]
    fn chain_generator_makes_chain_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut saw_mixed = false;
        for _ in 0..100 {
            let g = random_chain_graph(6, 0.5, 0.3, &mut rng).unwrap();
            assert!(g.classify().is_chain_graph(), "{g:?}");
            if g.classify() == GraphClass::Chain {
                saw_mixed = true;
            }
        }
        assert!(saw_mixed);
    }
}
