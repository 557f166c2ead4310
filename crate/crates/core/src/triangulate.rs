//! Minimal triangulations of undirected and chain graphs.
//!
//! A triangulation of an undirected graph is a chordal supergraph on the same
//! vertices; it is *minimal* when no proper subset of its fill edges already
//! triangulates. Minimality is decided by the separator criterion: a
//! triangulation is minimal iff for every fill edge `u - v` no minimal
//! `(u,v)`-separator of the base graph is complete in the triangulated graph.
//!
//! Enumeration splits along the maximal prime components: fills never cross a
//! component boundary (two components overlap in a complete separator), so
//! the minimal triangulations of the whole graph are exactly the products of
//! the minimal triangulations of its components.
//!
//! For chain graphs the object triangulated is the *closure graph* of each
//! chain component `C`: the moral graph of the subgraph induced on
//! `C ∪ pa(C)`. A chain graph is Markov equivalent to some DAG iff every
//! closure graph is chordal; when it is not, the minimal triangulations of
//! the closure graphs map back to minimal chain-graph supergraphs, each fill
//! oriented by the chain-component order. Parents of a component are pairwise
//! married inside its closure graph, so a mapped-back fill never connects two
//! parents and the per-component choices stay independent.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{GraphClass, MixedGraph};
use crate::guards::Guards;
use crate::mpd::{self, MpDecomposition};
use crate::separation::{self};
use crate::set::VertexSet;

/// Hard limit for [`minimal_triangulations_prime`].
pub const MAX_PRIME_TRIANGULATION_VERTICES: usize = 12;

fn require_undirected(g: &MixedGraph) -> Result<()> {
    if g.classify() == GraphClass::Undirected {
        Ok(())
    } else {
        Err(Error::NotUndirected)
    }
}

fn require_chain_graph(g: &MixedGraph) -> Result<()> {
    if g.classify().is_chain_graph() {
        Ok(())
    } else {
        Err(Error::NotChainGraph)
    }
}

/// Decides whether `h2` is a minimal triangulation of `h`.
///
/// Errors distinguish the failure modes: the graphs must be undirected over
/// the same vertices, `h2` must contain every edge of `h`, and `h2` must be
/// chordal. With those given, minimality is the separator criterion on the
/// fill edges.
pub fn is_minimal_triangulation(h: &MixedGraph, h2: &MixedGraph) -> Result<bool> {
    require_undirected(h)?;
    require_undirected(h2)?;
    if h.universe_size() != h2.universe_size() || h.vertices() != h2.vertices() {
        return Err(Error::UniverseMismatch);
    }
    let missing = h
        .undirected_edges()
        .iter()
        .filter(|&&(a, b)| !h2.has_undirected(a, b))
        .count();
    if missing > 0 {
        return Err(Error::MissingBaseEdges(missing));
    }
    if !mpd::is_chordal(h2)? {
        return Err(Error::NotChordal);
    }
    let fills: Vec<(usize, usize)> = h2
        .undirected_edges()
        .into_iter()
        .filter(|&(a, b)| !h.has_undirected(a, b))
        .collect();
    if fills.is_empty() {
        return Ok(true);
    }
    let seps = mpd::minimal_vertex_separators(h)?;
    for (a, b) in fills {
        for s in mpd::minimal_uv_separators_from(h, &seps, a, b) {
            if h2.is_undirected_clique(s) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Finds one vertex sequence of a chordless cycle of length at least four,
/// or `None` when the graph is chordal.
///
/// For every vertex `v` with a non-adjacent pair `x, y` of neighbours, a
/// shortest `x`-`y` path avoiding the rest of `N[v]` closes a cycle through
/// `v`; shortest makes the path induced, and avoiding `N[v]` leaves the
/// cycle chordless. Some such triple succeeds iff the graph has a chordless
/// cycle.
fn find_chordless_cycle(g: &MixedGraph) -> Option<Vec<usize>> {
    for v in g.vertices().iter() {
        let nv = g.neighbours(v);
        for (x, y) in nv.pairs() {
            if g.has_undirected(x, y) {
                continue;
            }
            let allowed = (g.vertices() - nv.with(v)).with(x).with(y);
            if let Some(path) = shortest_path_within(g, x, y, allowed) {
                let mut cycle = vec![v];
                cycle.extend(path);
                return Some(cycle);
            }
        }
    }
    None
}

fn shortest_path_within(
    g: &MixedGraph,
    from: usize,
    to: usize,
    allowed: VertexSet,
) -> Option<Vec<usize>> {
    let mut prev = vec![usize::MAX; g.universe_size()];
    let mut seen = VertexSet::singleton(from);
    let mut frontier = vec![from];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &u in &frontier {
            for w in (g.neighbours(u) & allowed).iter() {
                if seen.contains(w) {
                    continue;
                }
                seen = seen.with(w);
                prev[w] = u;
                if w == to {
                    let mut path = vec![w];
                    let mut cur = w;
                    while cur != from {
                        cur = prev[cur];
                        path.push(cur);
                    }
                    path.reverse();
                    return Some(path);
                }
                next.push(w);
            }
        }
        frontier = next;
    }
    None
}

/// All minimal triangulations of one graph, enumerated directly.
///
/// Branches on the chords of a chordless cycle: every triangulation must
/// chord every chordless cycle, so recursing over the candidate chords of
/// one found cycle reaches every minimal fill; the chordal leaves are then
/// filtered through the minimality criterion. Intended for single maximal
/// prime components but correct for any undirected graph within the size
/// guard. Results are sorted by their edge sets.
pub fn minimal_triangulations_prime(g: &MixedGraph) -> Result<Vec<MixedGraph>> {
    require_undirected(g)?;
    if g.vertices().len() > MAX_PRIME_TRIANGULATION_VERTICES {
        return Err(Error::GuardExceeded(format!(
            "triangulation enumeration over {} vertices (maximum {})",
            g.vertices().len(),
            MAX_PRIME_TRIANGULATION_VERTICES
        )));
    }
    let mut fills: BTreeSet<Vec<(usize, usize)>> = BTreeSet::new();
    let mut work = g.clone();
    let mut fill = Vec::new();
    collect_chordal_fills(&mut work, &mut fill, &mut fills)?;
    let mut out = Vec::new();
    for f in fills {
        let mut h2 = g.clone();
        for &(a, b) in &f {
            h2.add_undirected(a, b)?;
        }
        if is_minimal_triangulation(g, &h2)? {
            out.push(h2);
        }
    }
    out.sort_unstable_by_key(graph_edge_key);
    Ok(out)
}

fn collect_chordal_fills(
    g: &mut MixedGraph,
    fill: &mut Vec<(usize, usize)>,
    out: &mut BTreeSet<Vec<(usize, usize)>>,
) -> Result<()> {
    let Some(cycle) = find_chordless_cycle(g) else {
        let mut f = fill.clone();
        f.sort_unstable();
        out.insert(f);
        return Ok(());
    };
    let k = cycle.len();
    for i in 0..k {
        for j in i + 1..k {
            let (a, b) = (cycle[i], cycle[j]);
            if g.has_undirected(a, b) {
                continue;
            }
            g.add_undirected(a, b)?;
            fill.push((a.min(b), a.max(b)));
            collect_chordal_fills(g, fill, out)?;
            fill.pop();
            g.remove_edge(a, b);
        }
    }
    Ok(())
}

fn graph_edge_key(g: &MixedGraph) -> (Vec<(usize, usize)>, Vec<(usize, usize)>) {
    (g.undirected_edges(), g.directed_edges())
}

/// All minimal triangulations of an undirected graph, composed per maximal
/// prime component. A chordal graph yields itself.
pub fn minimal_triangulations(g: &MixedGraph, guards: &Guards) -> Result<Vec<MixedGraph>> {
    require_undirected(g)?;
    let d = mpd_for(g)?;
    minimal_triangulations_with(g, &d, guards)
}

fn mpd_for(g: &MixedGraph) -> Result<MpDecomposition> {
    mpd::mpd_decompose(g)
}

fn minimal_triangulations_with(
    g: &MixedGraph,
    d: &MpDecomposition,
    guards: &Guards,
) -> Result<Vec<MixedGraph>> {
    let mut per_component: Vec<Vec<Vec<(usize, usize)>>> = Vec::new();
    let mut product: u64 = 1;
    for &comp in &d.components {
        let sub = g.induced(comp)?;
        let tris = minimal_triangulations_prime(&sub)?;
        if tris.len() > guards.max_component_triangulations {
            return Err(Error::GuardExceeded(format!(
                "component {:?} has {} minimal triangulations (maximum {})",
                comp,
                tris.len(),
                guards.max_component_triangulations
            )));
        }
        let fills: Vec<Vec<(usize, usize)>> = tris
            .iter()
            .map(|t| {
                t.undirected_edges()
                    .into_iter()
                    .filter(|&(a, b)| !sub.has_undirected(a, b))
                    .collect()
            })
            .collect();
        product = product.saturating_mul(fills.len().max(1) as u64);
        if product > guards.max_triangulation_product {
            return Err(Error::GuardExceeded(format!(
                "triangulation product exceeds {}",
                guards.max_triangulation_product
            )));
        }
        per_component.push(fills);
    }
    // Cartesian product over the per-component fill choices. Components
    // overlap only in complete separators, so fills never repeat; the
    // dedup through the set is defensive.
    let mut results: BTreeSet<Vec<(usize, usize)>> = BTreeSet::new();
    let mut choice = vec![0usize; per_component.len()];
    loop {
        let mut combined: Vec<(usize, usize)> = Vec::new();
        for (c, fills) in choice.iter().zip(&per_component) {
            if !fills.is_empty() {
                combined.extend(fills[*c].iter().copied());
            }
        }
        combined.sort_unstable();
        results.insert(combined);
        // Next choice vector.
        let mut k = 0;
        loop {
            if k == choice.len() {
                let mut out = Vec::new();
                for f in results {
                    let mut h2 = g.clone();
                    for (a, b) in f {
                        h2.add_undirected(a, b)?;
                    }
                    out.push(h2);
                }
                out.sort_unstable_by_key(graph_edge_key);
                return Ok(out);
            }
            choice[k] += 1;
            if choice[k] < per_component[k].len().max(1) {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

/// The closure graph of a chain component `c`: the moral graph of the
/// subgraph induced on `c ∪ pa(c)`. Undirected, defined on that sub-universe.
pub fn closure_graph(g: &MixedGraph, c: VertexSet) -> Result<MixedGraph> {
    require_chain_graph(g)?;
    if !g.chain_components()?.contains(&c) {
        return Err(Error::NotAChainComponent(c));
    }
    let span = c | g.parents_of_set(c);
    separation::moral_graph(&g.induced(span)?)
}

/// Per-component report for [`is_dag_equivalent`].
///
/// The closure graph of a component is chordal iff all three conditions
/// hold: the component's own undirected graph is chordal; for every single
/// parent, its children in the component are separated pairwise by the rest
/// of the children; and for every two parents, their private children are
/// separated by the union of both child sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentDagReport {
    pub component: VertexSet,
    pub closure_chordal: bool,
    /// The component's induced undirected graph is chordal.
    pub component_chordal: bool,
    /// For every parent `a` and non-adjacent `c, d ∈ ch(a)`:
    /// `c ⟂ d | ch(a) − {c,d}` inside the component.
    pub single_parent_children_separated: bool,
    /// For every two parents `a ≠ b`, `c ∈ ch(a) − ch(b)`,
    /// `d ∈ ch(b) − ch(a)`: `c ⟂ d | (ch(a) ∪ ch(b)) − {c,d}`.
    pub parent_pair_children_separated: bool,
}

/// The full verdict: equivalent to some DAG iff every closure graph is
/// chordal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DagEquivalence {
    pub equivalent: bool,
    pub reports: Vec<ComponentDagReport>,
}

/// Decides whether a chain graph is Markov equivalent to some DAG, with a
/// per-component diagnosis of what blocks it.
pub fn is_dag_equivalent(g: &MixedGraph) -> Result<DagEquivalence> {
    require_chain_graph(g)?;
    let mut reports = Vec::new();
    for c in g.chain_components()? {
        let clo = closure_graph(g, c)?;
        let sub = g.induced(c)?;
        let pa = g.parents_of_set(c);

        let component_chordal = mpd::is_chordal(&sub)?;
        let mut single = true;
        for a in pa.iter() {
            let ch = g.children(a) & c;
            for (x, y) in ch.pairs() {
                if sub.is_adjacent(x, y) {
                    continue;
                }
                let t = crate::graph::Triplet::new(
                    VertexSet::singleton(x),
                    VertexSet::singleton(y),
                    ch.without(x).without(y),
                )?;
                if !separation::ug_separates(&sub, &t)? {
                    single = false;
                }
            }
        }
        let mut pair = true;
        for a in pa.iter() {
            for b in pa.iter() {
                if b <= a {
                    continue;
                }
                let cha = g.children(a) & c;
                let chb = g.children(b) & c;
                for x in (cha - chb).iter() {
                    for y in (chb - cha).iter() {
                        if sub.is_adjacent(x, y) {
                            pair = false;
                            continue;
                        }
                        let t = crate::graph::Triplet::new(
                            VertexSet::singleton(x),
                            VertexSet::singleton(y),
                            (cha | chb).without(x).without(y),
                        )?;
                        if !separation::ug_separates(&sub, &t)? {
                            pair = false;
                        }
                    }
                }
            }
        }
        reports.push(ComponentDagReport {
            component: c,
            closure_chordal: mpd::is_chordal(&clo)?,
            component_chordal,
            single_parent_children_separated: single,
            parent_pair_children_separated: pair,
        });
    }
    Ok(DagEquivalence {
        equivalent: reports.iter().all(|r| r.closure_chordal),
        reports,
    })
}

/// All minimal chain-graph triangulations: per chain component, the minimal
/// triangulations of its closure graph, with each fill mapped back into the
/// chain graph (undirected inside a component, directed toward the later
/// component otherwise).
pub fn cg_minimal_triangulations(g: &MixedGraph, guards: &Guards) -> Result<Vec<MixedGraph>> {
    require_chain_graph(g)?;
    let comps = g.chain_components()?;
    let comp_index = |v: usize| -> usize {
        comps
            .iter()
            .position(|c| c.contains(v))
            .expect("vertex lies in a chain component")
    };
    // Per component: list of fill sets of its closure graph.
    let mut per_component: Vec<Vec<Vec<(usize, usize)>>> = Vec::new();
    let mut product: u64 = 1;
    for &c in &comps {
        let clo = closure_graph(g, c)?;
        let tris = minimal_triangulations(&clo, guards)?;
        if tris.len() > guards.max_component_triangulations {
            return Err(Error::GuardExceeded(format!(
                "closure graph of {:?} has {} minimal triangulations (maximum {})",
                c,
                tris.len(),
                guards.max_component_triangulations
            )));
        }
        let fills: Vec<Vec<(usize, usize)>> = tris
            .iter()
            .map(|t| {
                t.undirected_edges()
                    .into_iter()
                    .filter(|&(a, b)| !clo.has_undirected(a, b))
                    .collect()
            })
            .collect();
        product = product.saturating_mul(fills.len().max(1) as u64);
        if product > guards.max_triangulation_product {
            return Err(Error::GuardExceeded(format!(
                "triangulation product exceeds {}",
                guards.max_triangulation_product
            )));
        }
        per_component.push(fills);
    }
    let mut results: BTreeSet<(Vec<(usize, usize)>, Vec<(usize, usize)>)> = BTreeSet::new();
    let mut choice = vec![0usize; per_component.len()];
    'outer: loop {
        let mut h2 = g.clone();
        for ((c, fills), &comp) in choice.iter().zip(&per_component).zip(&comps) {
            if fills.is_empty() {
                continue;
            }
            for &(a, b) in &fills[*c] {
                if h2.is_adjacent(a, b) {
                    // Fills of different closure graphs never collide.
                    return Err(Error::Internal(format!(
                        "fill {a}-{b} already present while composing triangulations"
                    )));
                }
                let (ia, ib) = (comp_index(a), comp_index(b));
                if ia == ib {
                    // Parents of a component are married in its closure, so a
                    // same-component fill can only lie inside the component
                    // being closed.
                    if comps[ia] != comp {
                        return Err(Error::Internal(format!(
                            "undirected fill {a}-{b} outside its chain component"
                        )));
                    }
                    h2.add_undirected(a, b)?;
                } else if ia < ib {
                    h2.add_directed(a, b)?;
                } else {
                    h2.add_directed(b, a)?;
                }
            }
        }
        if !h2.classify().is_chain_graph() {
            return Err(Error::Internal(
                "composed triangulation is not a chain graph".into(),
            ));
        }
        results.insert(graph_edge_key(&h2));
        let mut k = 0;
        loop {
            if k == choice.len() {
                break 'outer;
            }
            choice[k] += 1;
            if choice[k] < per_component[k].len().max(1) {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
    // Rebuild graphs from the deduplicated edge keys.
    let mut out = Vec::new();
    for (und, dir) in results {
        let mut h2 = MixedGraph::new(g.universe_size())?;
        h2 = h2.induced(g.vertices())?;
        for (a, b) in und {
            h2.add_undirected(a, b)?;
        }
        for (a, b) in dir {
            h2.add_directed(a, b)?;
        }
        out.push(h2);
    }
    out.sort_unstable_by_key(graph_edge_key);
    Ok(out)
}
