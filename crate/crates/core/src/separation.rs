//! Graph separation for undirected and chain graphs.
//!
//! Chain-graph separation follows the classical route: take the smallest
//! ancestral set containing the three sets of the query, moralise the induced
//! subgraph, and test plain undirected separation there. Two chain graphs are
//! Markov equivalent exactly when they share the skeleton and the complexes,
//! which is what [`frydenberg_equivalent`] checks.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{GraphClass, MixedGraph, Triplet};
use crate::set::VertexSet;

/// Hard limit for [`independence_model`]: the model has one entry per
/// disjoint triplet, which grows like `4^n`.
pub const MAX_MODEL_VERTICES: usize = 8;

fn require_chain_graph(g: &MixedGraph) -> Result<()> {
    if g.classify().is_chain_graph() {
        Ok(())
    } else {
        Err(Error::NotChainGraph)
    }
}

fn require_undirected(g: &MixedGraph) -> Result<()> {
    if g.classify() == GraphClass::Undirected {
        Ok(())
    } else {
        Err(Error::NotUndirected)
    }
}

fn require_triplet_in(g: &MixedGraph, t: &Triplet) -> Result<()> {
    if t.span().is_subset_of(g.vertices()) {
        Ok(())
    } else {
        Err(Error::ForeignSet(t.span() - g.vertices()))
    }
}

/// Undirected separation: no path from `A` to `B` avoiding `C`.
pub fn ug_separates(g: &MixedGraph, t: &Triplet) -> Result<bool> {
    require_undirected(g)?;
    require_triplet_in(g, t)?;
    let alive = g.vertices() - t.c();
    let mut reach = t.a();
    let mut frontier = reach;
    while !frontier.is_empty() {
        let mut next = VertexSet::EMPTY;
        for v in frontier.iter() {
            next = next | (g.neighbours(v) & alive) - reach;
        }
        reach = reach | next;
        frontier = next;
    }
    Ok(reach.is_disjoint_from(t.b()))
}

/// The moral graph: underlying edges plus marriages between the parents of
/// every chain component.
pub fn moral_graph(g: &MixedGraph) -> Result<MixedGraph> {
    require_chain_graph(g)?;
    let mut m = g.underlying();
    for comp in g.chain_components()? {
        let pa = g.parents_of_set(comp);
        for (a, b) in pa.pairs() {
            if !m.has_undirected(a, b) {
                m.add_undirected(a, b)?;
            }
        }
    }
    Ok(m)
}

/// Chain-graph separation of `⟨A, B | C⟩`.
pub fn cg_separates(g: &MixedGraph, t: &Triplet) -> Result<bool> {
    require_chain_graph(g)?;
    require_triplet_in(g, t)?;
    let anc = g.ancestral_set(t.span())?;
    let moral = moral_graph(&g.induced(anc)?)?;
    ug_separates(&moral, t)
}

/// A complex: two non-adjacent vertices sending arrows into the ends of an
/// undirected path, with no further edges among the vertices involved.
/// `left < right`; the path runs from the child of `left` to the child of
/// `right` and may have length one (both arrows meet in a single vertex).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Complex {
    pub left: usize,
    pub path: Vec<usize>,
    pub right: usize,
}

impl Complex {
    fn new(u: usize, path: Vec<usize>, w: usize) -> Complex {
        if u <= w {
            Complex {
                left: u,
                path,
                right: w,
            }
        } else {
            Complex {
                left: w,
                path: path.into_iter().rev().collect(),
                right: u,
            }
        }
    }
}

/// All complexes of a chain graph.
///
/// For each non-adjacent pair `(u, w)` the search walks chordless undirected
/// paths that start in a child of `u`, never touch any other vertex adjacent
/// to `u` or `w`, and close at a child of `w`. Built directly from the
/// induced-subgraph definition, so each complex is found exactly once per
/// unordered pair.
pub fn complexes(g: &MixedGraph) -> Result<BTreeSet<Complex>> {
    require_chain_graph(g)?;
    let mut out = BTreeSet::new();
    let verts: Vec<usize> = g.vertices().iter().collect();
    for (i, &u) in verts.iter().enumerate() {
        for &w in &verts[i + 1..] {
            if g.is_adjacent(u, w) {
                continue;
            }
            for p in g.children(u).iter() {
                // The path start may serve only as the meeting point of both
                // arrows; any other adjacency to `w` disqualifies it.
                if g.children(w).contains(p) {
                    out.insert(Complex::new(u, vec![p], w));
                }
                if g.adjacent(w).contains(p) {
                    continue;
                }
                let mut path = vec![p];
                extend_complex_paths(g, u, w, &mut path, &mut out);
            }
        }
    }
    Ok(out)
}

fn extend_complex_paths(
    g: &MixedGraph,
    u: usize,
    w: usize,
    path: &mut Vec<usize>,
    out: &mut BTreeSet<Complex>,
) {
    let end = *path.last().unwrap();
    for v in g.neighbours(end).iter() {
        if path.contains(&v) || g.adjacent(u).contains(v) {
            continue;
        }
        // Chordless: `v` may touch the path only at its current end.
        if path[..path.len() - 1]
            .iter()
            .any(|&x| g.is_adjacent(x, v))
        {
            continue;
        }
        if g.children(w).contains(v) {
            // `w -> v` closes the complex; `v` cannot also continue the path
            // because interior vertices must avoid `w` entirely.
            let mut full = path.clone();
            full.push(v);
            out.insert(Complex::new(u, full, w));
            continue;
        }
        if g.adjacent(w).contains(v) {
            continue;
        }
        path.push(v);
        extend_complex_paths(g, u, w, path, out);
        path.pop();
    }
}

/// Markov equivalence of chain graphs: same skeleton and same complexes.
pub fn frydenberg_equivalent(g: &MixedGraph, h: &MixedGraph) -> Result<bool> {
    require_chain_graph(g)?;
    require_chain_graph(h)?;
    if g.universe_size() != h.universe_size() || g.vertices() != h.vertices() {
        return Err(Error::UniverseMismatch);
    }
    if g.underlying() != h.underlying() {
        return Ok(false);
    }
    Ok(complexes(g)? == complexes(h)?)
}

/// Every disjoint triplet `⟨A, B | C⟩` over the graph's vertices with both
/// sides non-empty, listed once in canonical orientation.
pub fn all_triplets(vertices: VertexSet) -> Vec<Triplet> {
    let mut out = Vec::new();
    for a in vertices.subsets() {
        if a.is_empty() {
            continue;
        }
        let rest = vertices - a;
        for b in rest.subsets() {
            // Canonical orientation: keep A's encoding below B's.
            if b.is_empty() || b.bits() < a.bits() {
                continue;
            }
            let free = rest - b;
            for c in free.subsets() {
                out.push(Triplet::new(a, b, c).expect("disjoint by construction"));
            }
        }
    }
    out
}

/// The full separation model of a chain graph: all separated triplets.
pub fn independence_model(g: &MixedGraph) -> Result<BTreeSet<Triplet>> {
    require_chain_graph(g)?;
    if g.vertices().len() > MAX_MODEL_VERTICES {
        return Err(Error::GuardExceeded(format!(
            "independence model over {} vertices (maximum {})",
            g.vertices().len(),
            MAX_MODEL_VERTICES
        )));
    }
    let mut out = BTreeSet::new();
    for t in all_triplets(g.vertices()) {
        if cg_separates(g, &t)? {
            out.insert(t);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(vals: &[usize]) -> VertexSet {
        VertexSet::from_indices(vals.iter().copied())
    }

    fn t(a: &[usize], b: &[usize], c: &[usize]) -> Triplet {
        Triplet::new(vs(a), vs(b), vs(c)).unwrap()
    }

    #[test]
    fn square_separation() {
        // 4-cycle 0-1-2-3-0: opposite corners are separated by the other two.
        let mut g = MixedGraph::new(4).unwrap();
        for (a, b) in [(0, 1), (1, 2), (2, 3), (3, 0)] {
            g.add_undirected(a, b).unwrap();
        }
        assert!(ug_separates(&g, &t(&[0], &[2], &[1, 3])).unwrap());
        assert!(!ug_separates(&g, &t(&[0], &[2], &[1])).unwrap());
        assert!(!ug_separates(&g, &t(&[0], &[2], &[])).unwrap());
    }

    #[test]
    fn moral_graph_marries_parents() {
        // 0 -> 2 <- 1: moralisation adds 0 - 1.
        let mut g = MixedGraph::new(3).unwrap();
        g.add_directed(0, 2).unwrap();
        g.add_directed(1, 2).unwrap();
        let m = moral_graph(&g).unwrap();
        assert!(m.has_undirected(0, 1));
        assert!(m.has_undirected(0, 2));
        assert!(m.has_undirected(1, 2));
        assert_eq!(m.classify(), GraphClass::Undirected);
    }

    #[test]
    fn moral_graph_marries_component_parents() {
        // 0 -> 2, 1 -> 3, 2 - 3: both 0 and 1 are parents of the component
        // {2,3}, so they get married even though their arrows point at
        // different vertices.
        let mut g = MixedGraph::new(4).unwrap();
        g.add_directed(0, 2).unwrap();
        g.add_directed(1, 3).unwrap();
        g.add_undirected(2, 3).unwrap();
        let m = moral_graph(&g).unwrap();
        assert!(m.has_undirected(0, 1));
    }

    #[test]
    fn cg_separation_examples() {
        // 0 -> 1 - 2: conditioning on the middle vertex separates the ends;
        // marginally they are connected.
        let mut g = MixedGraph::new(3).unwrap();
        g.add_directed(0, 1).unwrap();
        g.add_undirected(1, 2).unwrap();
        assert!(cg_separates(&g, &t(&[0], &[2], &[1])).unwrap());
        assert!(!cg_separates(&g, &t(&[0], &[2], &[])).unwrap());

        // Collider 0 -> 2 <- 1: marginally independent, dependent given 2.
        let mut h = MixedGraph::new(3).unwrap();
        h.add_directed(0, 2).unwrap();
        h.add_directed(1, 2).unwrap();
        assert!(cg_separates(&h, &t(&[0], &[1], &[])).unwrap());
        assert!(!cg_separates(&h, &t(&[0], &[1], &[2])).unwrap());
    }

    #[test]
    fn cg_separation_on_component_collider() {
        // 0 -> 2, 1 -> 3, 2 - 3: the chain-component analogue of a collider.
        let mut g = MixedGraph::new(4).unwrap();
        g.add_directed(0, 2).unwrap();
        g.add_directed(1, 3).unwrap();
        g.add_undirected(2, 3).unwrap();
        assert!(cg_separates(&g, &t(&[0], &[1], &[])).unwrap());
        assert!(!cg_separates(&g, &t(&[0], &[1], &[2, 3])).unwrap());
    }

    #[test]
    fn complexes_found_and_canonical() {
        // Minimal complex: 0 -> 2 <- 1.
        let mut g = MixedGraph::new(3).unwrap();
        g.add_directed(0, 2).unwrap();
        g.add_directed(1, 2).unwrap();
        let cs = complexes(&g).unwrap();
        assert_eq!(cs.len(), 1);
        let c = cs.iter().next().unwrap();
        assert_eq!((c.left, c.path.clone(), c.right), (0, vec![2], 1));

        // Longer complex: 0 -> 1 - 2 <- 3.
        let mut h = MixedGraph::new(4).unwrap();
        h.add_directed(0, 1).unwrap();
        h.add_undirected(1, 2).unwrap();
        h.add_directed(3, 2).unwrap();
        let cs = complexes(&h).unwrap();
        assert_eq!(cs.len(), 1);
        let c = cs.iter().next().unwrap();
        assert_eq!((c.left, c.path.clone(), c.right), (0, vec![1, 2], 3));

        // An extra edge 0 - 3 destroys the complex (parents adjacent).
        let mut k = h.clone();
        k.add_undirected(0, 3).unwrap();
        assert!(complexes(&k).unwrap().is_empty());

        // A chord from a parent into the path interior destroys it too.
        let mut h5 = MixedGraph::new(5).unwrap();
        h5.add_directed(0, 1).unwrap();
        h5.add_undirected(1, 2).unwrap();
        h5.add_undirected(2, 3).unwrap();
        h5.add_directed(4, 3).unwrap();
        assert_eq!(complexes(&h5).unwrap().len(), 1);
        let mut h5x = h5.clone();
        h5x.add_directed(0, 2).unwrap();
        // 0 -> 2 shortens the complex instead of killing it: 0 -> 2 - 3 <- 4.
        let cs = complexes(&h5x).unwrap();
        assert_eq!(cs.len(), 1);
        let c = cs.iter().next().unwrap();
        assert_eq!((c.left, c.path.clone(), c.right), (0, vec![2, 3], 4));
    }

    #[test]
    fn no_complexes_in_ug_or_perfect_dag() {
        let mut g = MixedGraph::new(3).unwrap();
        g.add_undirected(0, 1).unwrap();
        g.add_undirected(1, 2).unwrap();
        assert!(complexes(&g).unwrap().is_empty());

        // 0 -> 1 -> 2 has converging arrows nowhere.
        let mut d = MixedGraph::new(3).unwrap();
        d.add_directed(0, 1).unwrap();
        d.add_directed(1, 2).unwrap();
        assert!(complexes(&d).unwrap().is_empty());
    }

    #[test]
    fn frydenberg_on_small_pairs() {
        // 0 -> 1 -> 2 is equivalent to the undirected chain, but not to the
        // collider.
        let mut chain = MixedGraph::new(3).unwrap();
        chain.add_directed(0, 1).unwrap();
        chain.add_directed(1, 2).unwrap();
        let mut ug = MixedGraph::new(3).unwrap();
        ug.add_undirected(0, 1).unwrap();
        ug.add_undirected(1, 2).unwrap();
        let mut collider = MixedGraph::new(3).unwrap();
        collider.add_directed(0, 1).unwrap();
        collider.add_directed(2, 1).unwrap();
        assert!(frydenberg_equivalent(&chain, &ug).unwrap());
        assert!(!frydenberg_equivalent(&chain, &collider).unwrap());
        assert!(!frydenberg_equivalent(&ug, &collider).unwrap());

        let mut other = MixedGraph::new(4).unwrap();
        other.add_undirected(0, 1).unwrap();
        assert_eq!(
            frydenberg_equivalent(&ug, &other),
            Err(Error::UniverseMismatch)
        );
    }

    #[test]
    fn triplet_enumeration_counts() {
        // Over n vertices each vertex goes to one of A, B, C or outside, with
        // both sides non-empty and A canonically below B.
        assert_eq!(all_triplets(VertexSet::full(2)).len(), 1);
        assert_eq!(all_triplets(VertexSet::full(3)).len(), 9);
        assert_eq!(all_triplets(VertexSet::full(4)).len(), 55);
        assert_eq!(all_triplets(VertexSet::full(5)).len(), 285);
    }

    #[test]
    fn model_guard() {
        let g = MixedGraph::new(9).unwrap();
        assert!(matches!(
            independence_model(&g),
            Err(Error::GuardExceeded(_))
        ));
    }

    #[test]
    fn model_of_empty_graph_is_everything() {
        let g = MixedGraph::new(3).unwrap();
        let m = independence_model(&g).unwrap();
        assert_eq!(m.len(), 9);
    }
}
