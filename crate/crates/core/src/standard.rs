//! Standard imsets of graphical models and the queries built on them.
//!
//! Each supported graph class gets its standard imset:
//!
//! * DAG: `δ_N − δ_∅ + Σ_i (δ_pa(i) − δ_{i ∪ pa(i)})`.
//! * Decomposable (chordal undirected): `δ_N − Σ_K δ_K + Σ_S ν(S)·δ_S` over
//!   the maximal cliques `K` and the separator multiset `(S, ν)`.
//! * Undirected: `δ_N − Σ_V δ_V + Σ_S ν(S)·δ_S` over the maximal prime
//!   components `V` and their separators, plus, for every component, the sum
//!   of the decomposable imsets of all minimal triangulations of that
//!   component (each taken over the component's own vertex set).
//! * Chain graph: `δ_N − δ_∅ + Σ_C (δ_pa(C) − δ_{C ∪ pa(C)} + u_C)` over the
//!   chain components `C`, where `u_C` is the undirected standard imset of
//!   the closure graph of `C`, embedded literally.
//!
//! The undirected construction agrees with summing over whole-graph minimal
//! triangulations ([`triangulation_sum_imset`]) exactly when the graph is
//! prime or decomposable; in general the two differ, and the per-component
//! version is the standard one. All four constructions produce combinatorial
//! imsets whose independence model equals the separation model of the graph,
//! which is what makes the imset-based CI test and the equivalence test
//! below exact.
//!
//! Two chain graphs are Markov equivalent iff their standard imsets are
//! equal; the largest chain graph of an equivalence class is reached by
//! exhausting feasible merges.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{GraphClass, MixedGraph, Triplet};
use crate::guards::Guards;
use crate::imset::{self, Imset};
use crate::mpd::{self, MpDecomposition};
use crate::separation;
use crate::set::VertexSet;
use crate::triangulate;

/// The standard imset of a DAG.
pub fn standard_imset_dag(g: &MixedGraph) -> Result<Imset> {
    if g.classify() != GraphClass::Dag && g.edge_count() > 0 {
        return Err(Error::NotDag);
    }
    let n = g.vertices();
    let mut u = Imset::zero(n);
    u.add_to(n, 1)?;
    u.add_to(VertexSet::EMPTY, -1)?;
    for i in n.iter() {
        let pa = g.parents(i);
        u.add_to(pa, 1)?;
        u.add_to(pa.with(i), -1)?;
    }
    Ok(u)
}

/// The standard imset of a decomposable graph, from its clique decomposition.
///
/// `d` must be the decomposition of `g` (as produced by
/// [`mpd::mpd_decompose`]); for a chordal graph its components are the
/// maximal cliques.
pub fn standard_imset_decomposable(g: &MixedGraph, d: &MpDecomposition) -> Result<Imset> {
    if !mpd::is_chordal(g)? {
        return Err(Error::NotChordal);
    }
    let n = g.vertices();
    let mut u = Imset::zero(n);
    u.add_to(n, 1)?;
    for &k in &d.components {
        u.add_to(k, -1)?;
    }
    for (&s, &nu) in &d.separators {
        u.add_to(s, nu as i64)?;
    }
    Ok(u)
}

/// The sum of the decomposable standard imsets of *all* minimal
/// triangulations of an undirected graph.
pub fn triangulation_sum_imset(g: &MixedGraph, guards: &Guards) -> Result<Imset> {
    if g.classify() != GraphClass::Undirected {
        return Err(Error::NotUndirected);
    }
    let mut u = Imset::zero(g.vertices());
    for t in triangulate::minimal_triangulations(g, guards)? {
        let d = mpd::mpd_decompose(&t)?;
        u = u.try_add(&standard_imset_decomposable(&t, &d)?)?;
    }
    Ok(u)
}

/// The standard imset of an undirected graph, via its maximal prime
/// components.
pub fn standard_imset_ug(g: &MixedGraph, guards: &Guards) -> Result<Imset> {
    if g.classify() != GraphClass::Undirected {
        return Err(Error::NotUndirected);
    }
    let n = g.vertices();
    let d = mpd::mpd_decompose(g)?;
    let mut u = Imset::zero(n);
    u.add_to(n, 1)?;
    for &v in &d.components {
        u.add_to(v, -1)?;
    }
    for (&s, &nu) in &d.separators {
        u.add_to(s, nu as i64)?;
    }
    for &v in &d.components {
        let sub = g.induced(v)?;
        let ts = triangulate::minimal_triangulations_prime(&sub)?;
        if ts.len() > guards.max_component_triangulations {
            return Err(Error::GuardExceeded(format!(
                "component {:?} has {} minimal triangulations (limit {})",
                v,
                ts.len(),
                guards.max_component_triangulations
            )));
        }
        for t in ts {
            let td = mpd::mpd_decompose(&t)?;
            let ut = standard_imset_decomposable(&t, &td)?;
            u = u.try_add(&ut.embedded_in(n)?)?;
        }
    }
    Ok(u)
}

/// The standard imset of a chain graph.
///
/// Reduces to the DAG form on DAGs and to the undirected form on undirected
/// graphs (the per-component terms telescope), so it is safe to call on any
/// chain graph.
pub fn standard_imset_cg(g: &MixedGraph, guards: &Guards) -> Result<Imset> {
    if !g.classify().is_chain_graph() {
        return Err(Error::NotChainGraph);
    }
    let n = g.vertices();
    let mut u = Imset::zero(n);
    u.add_to(n, 1)?;
    u.add_to(VertexSet::EMPTY, -1)?;
    for c in g.chain_components()? {
        let pa = g.parents_of_set(c);
        u.add_to(pa, 1)?;
        u.add_to(c | pa, -1)?;
        let clo = triangulate::closure_graph(g, c)?;
        let uc = standard_imset_ug(&clo, guards)?;
        u = u.try_add(&uc.embedded_in(n)?)?;
    }
    Ok(u)
}

/// Conditional independence by imset arithmetic: `⟨A, B | C⟩` holds for the
/// model of a standard imset `u` iff `u − u_⟨A,B|C⟩` is combinatorial.
///
/// `u` must be a standard imset (of some chain graph); on arbitrary imsets
/// this is not a CI oracle.
pub fn ci_test(u: &Imset, t: &Triplet) -> Result<bool> {
    let diff = u.try_sub(&imset::semi_elementary(u.universe(), t)?)?;
    imset::is_combinatorial(&diff)
}

/// Markov equivalence by standard imsets: equal iff equivalent.
pub fn imset_equivalent(g: &MixedGraph, h: &MixedGraph, guards: &Guards) -> Result<bool> {
    if g.universe_size() != h.universe_size() || g.vertices() != h.vertices() {
        return Err(Error::UniverseMismatch);
    }
    Ok(standard_imset_cg(g, guards)? == standard_imset_cg(h, guards)?)
}

/// Why a merge is infeasible: at least one flag is false.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InfeasibleMerge {
    /// The parents of the lower component inside the upper one form a
    /// clique.
    pub connector_is_clique: bool,
    /// Every parent of the lower component outside the upper one is also a
    /// parent of every connector vertex.
    pub outside_parents_shared: bool,
}

/// Result of [`feasible_merge`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MergeOutcome {
    /// The merged chain graph, Markov equivalent to the input.
    Merged(MixedGraph),
    /// The merge is not feasible; the flags say which condition failed.
    Infeasible(InfeasibleMerge),
}

/// Attempts to merge two chain components joined by directed edges.
///
/// `upper` and `lower` must be chain components of `g` with at least one
/// directed edge from `upper` into `lower`. The merge turns every such edge
/// undirected. It is feasible iff the connector `K = pa(lower) ∩ upper` is a
/// clique and every b ∈ K has all of `pa(lower) − upper` among its own
/// parents; a feasible merge preserves the complexes, hence the Markov
/// equivalence class.
pub fn feasible_merge(g: &MixedGraph, upper: VertexSet, lower: VertexSet) -> Result<MergeOutcome> {
    let comps = g.chain_components()?;
    if !comps.contains(&upper) {
        return Err(Error::NotAChainComponent(upper));
    }
    if !comps.contains(&lower) {
        return Err(Error::NotAChainComponent(lower));
    }
    let pa = g.parents_of_set(lower);
    let connector = pa & upper;
    if connector.is_empty() {
        return Err(Error::NoMetaArrow(upper, lower));
    }
    let connector_is_clique = g.is_undirected_clique(connector);
    let outside = pa - upper;
    let outside_parents_shared = connector
        .iter()
        .all(|b| outside.is_subset_of(g.parents(b)));
    if !(connector_is_clique && outside_parents_shared) {
        return Ok(MergeOutcome::Infeasible(InfeasibleMerge {
            connector_is_clique,
            outside_parents_shared,
        }));
    }
    let mut merged = g.clone();
    for a in connector.iter() {
        for b in (g.children(a) & lower).iter() {
            merged.remove_edge(a, b);
            merged.add_undirected(a, b)?;
        }
    }
    if !merged.classify().is_chain_graph() {
        return Err(Error::Internal("feasible merge left a semi-directed cycle".into()));
    }
    if separation::complexes(&merged)? != separation::complexes(g)? {
        return Err(Error::Internal("feasible merge changed the complexes".into()));
    }
    Ok(MergeOutcome::Merged(merged))
}

/// The largest chain graph equivalent to `g`: feasible merges applied until
/// none applies, scanning component pairs in canonical order and restarting
/// after every success. The fixpoint is the unique largest member of the
/// equivalence class.
pub fn largest_equivalent(g: &MixedGraph) -> Result<MixedGraph> {
    let mut cur = g.clone();
    'restart: loop {
        let comps = cur.chain_components()?;
        let mut pairs: Vec<(VertexSet, VertexSet)> = Vec::new();
        for &lower in &comps {
            let pa = cur.parents_of_set(lower);
            for &upper in &comps {
                if !(pa & upper).is_empty() {
                    pairs.push((upper, lower));
                }
            }
        }
        pairs.sort_unstable();
        for (upper, lower) in pairs {
            if let MergeOutcome::Merged(next) = feasible_merge(&cur, upper, lower)? {
                cur = next;
                continue 'restart;
            }
        }
        return Ok(cur);
    }
}

/// The independence model induced by the standard imset of `g`: all triplets
/// passing [`ci_test`]. Mostly a cross-validation device; the separation
/// model is the cheaper route to the same set.
pub fn imset_independence_model(g: &MixedGraph, guards: &Guards) -> Result<BTreeSet<Triplet>> {
    let u = standard_imset_cg(g, guards)?;
    let mut out = BTreeSet::new();
    for t in separation::all_triplets(g.vertices()) {
        if ci_test(&u, &t)? {
            out.insert(t);
        }
    }
    Ok(out)
}
