//! Mixed graphs with undirected and directed edges.
//!
//! A [`MixedGraph`] lives over a fixed universe of indexed vertices but is
//! defined on an arbitrary subset of it (its *vertex set*), so that induced
//! subgraphs and sub-universe constructions keep their coordinates: the set
//! `{c, d}` means the same thing in a subgraph as in the whole graph. Graphs
//! are simple: at most one edge per vertex pair, no self-loops, and a pair is
//! never both directed and undirected.
//!
//! A *chain graph* is a mixed graph without semi-directed cycles: the
//! connected components of the undirected skeleton (the *chain components*)
//! admit a topological order in which every directed edge points from an
//! earlier to a later component. Undirected graphs and DAGs are the two
//! degenerate cases (one kind of edge only).

use crate::error::{Error, Result};
use crate::set::{VertexSet, MAX_VERTICES};

/// Classification of a mixed graph by its edge kinds and cycle structure.
#[derive(Debug, Copy, Clone, PartialEq, Eq)]
pub enum GraphClass {
    /// No directed edges.
    Undirected,
    /// No undirected edges, directed part acyclic.
    Dag,
    /// Both kinds of edges, no semi-directed cycle.
    Chain,
    /// Contains a semi-directed cycle (or a directed cycle).
    NotChainGraph,
}

impl GraphClass {
    /// Undirected graphs and DAGs are chain graphs too.
    pub fn is_chain_graph(self) -> bool {
        self != GraphClass::NotChainGraph
    }
}

/// A simple mixed graph over a subset of the vertex universe.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MixedGraph {
    n: usize,
    vertices: VertexSet,
    und: Vec<VertexSet>,
    par: Vec<VertexSet>,
    chi: Vec<VertexSet>,
}

impl MixedGraph {
    /// An edgeless graph on the full universe `{0, .., n-1}`.
    pub fn new(n: usize) -> Result<MixedGraph> {
        if n > MAX_VERTICES {
            return Err(Error::UniverseTooLarge(n, MAX_VERTICES));
        }
        Ok(MixedGraph {
            n,
            vertices: VertexSet::full(n),
            und: vec![VertexSet::EMPTY; n],
            par: vec![VertexSet::EMPTY; n],
            chi: vec![VertexSet::EMPTY; n],
        })
    }

    /// Universe size (indices run in `0..universe_size()`).
    pub fn universe_size(&self) -> usize {
        self.n
    }

    /// The vertices this graph is defined on.
    pub fn vertices(&self) -> VertexSet {
        self.vertices
    }

    fn check_pair(&self, a: usize, b: usize) -> Result<()> {
        if a == b {
            return Err(Error::SelfLoop(a));
        }
        for v in [a, b] {
            if !self.vertices.contains(v) {
                return Err(Error::ForeignVertex(v));
            }
        }
        if self.und[a].contains(b) || self.par[a].contains(b) || self.par[b].contains(a) {
            return Err(Error::DuplicateEdge(a, b));
        }
        Ok(())
    }

    /// Adds the undirected edge `a - b`.
    pub fn add_undirected(&mut self, a: usize, b: usize) -> Result<()> {
        self.check_pair(a, b)?;
        self.und[a] = self.und[a].with(b);
        self.und[b] = self.und[b].with(a);
        Ok(())
    }

    /// Adds the directed edge `a -> b`.
    pub fn add_directed(&mut self, a: usize, b: usize) -> Result<()> {
        self.check_pair(a, b)?;
        self.chi[a] = self.chi[a].with(b);
        self.par[b] = self.par[b].with(a);
        Ok(())
    }

    /// Removes whatever edge joins `a` and `b`, if any.
    pub fn remove_edge(&mut self, a: usize, b: usize) {
        self.und[a] = self.und[a].without(b);
        self.und[b] = self.und[b].without(a);
        self.chi[a] = self.chi[a].without(b);
        self.chi[b] = self.chi[b].without(a);
        self.par[a] = self.par[a].without(b);
        self.par[b] = self.par[b].without(a);
    }

    /// Undirected neighbours of `v`.
    pub fn neighbours(&self, v: usize) -> VertexSet {
        self.und[v]
    }

    /// Tails of directed edges into `v`.
    pub fn parents(&self, v: usize) -> VertexSet {
        self.par[v]
    }

    /// Heads of directed edges out of `v`.
    pub fn children(&self, v: usize) -> VertexSet {
        self.chi[v]
    }

    /// All vertices joined to `v` by any edge.
    pub fn adjacent(&self, v: usize) -> VertexSet {
        self.und[v] | self.par[v] | self.chi[v]
    }

    pub fn has_undirected(&self, a: usize, b: usize) -> bool {
        self.und[a].contains(b)
    }

    pub fn has_directed(&self, a: usize, b: usize) -> bool {
        self.chi[a].contains(b)
    }

    pub fn is_adjacent(&self, a: usize, b: usize) -> bool {
        self.adjacent(a).contains(b)
    }

    /// Parents of a set: tails of arrows into `s` from outside `s`.
    pub fn parents_of_set(&self, s: VertexSet) -> VertexSet {
        let mut p = VertexSet::EMPTY;
        for v in s.iter() {
            p = p | self.par[v];
        }
        p - s
    }

    /// Undirected edges as canonical pairs `(a, b)`, `a < b`.
    pub fn undirected_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in self.vertices.iter() {
            for b in self.und[a].iter() {
                if a < b {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Directed edges as pairs `(tail, head)`.
    pub fn directed_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in self.vertices.iter() {
            for b in self.chi[a].iter() {
                out.push((a, b));
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        let und: usize = self.vertices.iter().map(|v| self.und[v].len()).sum();
        let dir: usize = self.vertices.iter().map(|v| self.chi[v].len()).sum();
        und / 2 + dir
    }

    /// The induced subgraph on `s`, which keeps the universe and its
    /// coordinates.
    pub fn induced(&self, s: VertexSet) -> Result<MixedGraph> {
        if !s.is_subset_of(self.vertices) {
            return Err(Error::ForeignSet(s));
        }
        let mut g = self.clone();
        g.vertices = s;
        for v in 0..self.n {
            if s.contains(v) {
                g.und[v] = self.und[v] & s;
                g.par[v] = self.par[v] & s;
                g.chi[v] = self.chi[v] & s;
            } else {
                g.und[v] = VertexSet::EMPTY;
                g.par[v] = VertexSet::EMPTY;
                g.chi[v] = VertexSet::EMPTY;
            }
        }
        Ok(g)
    }

    /// The underlying undirected graph: every edge forgotten to `-`.
    pub fn underlying(&self) -> MixedGraph {
        let mut g = self.clone();
        for v in 0..self.n {
            g.und[v] = self.und[v] | self.par[v] | self.chi[v];
            g.par[v] = VertexSet::EMPTY;
            g.chi[v] = VertexSet::EMPTY;
        }
        g
    }

    /// True if all vertices of `s` are pairwise joined by undirected edges.
    pub fn is_undirected_clique(&self, s: VertexSet) -> bool {
        s.pairs().all(|(a, b)| self.has_undirected(a, b))
    }

    /// True if all vertices of `s` are pairwise adjacent (any edge kind).
    pub fn is_clique(&self, s: VertexSet) -> bool {
        s.pairs().all(|(a, b)| self.is_adjacent(a, b))
    }

    /// Connected components of the undirected skeleton, each sorted by their
    /// smallest vertex. Directed edges do not connect.
    pub fn undirected_components(&self) -> Vec<VertexSet> {
        let mut seen = VertexSet::EMPTY;
        let mut out = Vec::new();
        for v in self.vertices.iter() {
            if seen.contains(v) {
                continue;
            }
            let mut comp = VertexSet::singleton(v);
            let mut frontier = comp;
            while !frontier.is_empty() {
                let mut next = VertexSet::EMPTY;
                for u in frontier.iter() {
                    next = next | (self.und[u] - comp);
                }
                comp = comp | next;
                frontier = next;
            }
            seen = seen | comp;
            out.push(comp);
        }
        out
    }

    /// Classifies the graph; see [`GraphClass`].
    pub fn classify(&self) -> GraphClass {
        let has_dir = self.vertices.iter().any(|v| !self.chi[v].is_empty());
        let has_und = self.vertices.iter().any(|v| !self.und[v].is_empty());
        if !has_dir {
            return GraphClass::Undirected;
        }
        // A semi-directed cycle exists iff a directed edge stays inside one
        // undirected component, or the condensation on components has a
        // directed cycle.
        let comps = self.undirected_components();
        let comp_of = self.component_index(&comps);
        for (a, b) in self.directed_edges() {
            if comp_of[a] == comp_of[b] {
                return GraphClass::NotChainGraph;
            }
        }
        if self.topological_component_order(&comps, &comp_of).is_none() {
            return GraphClass::NotChainGraph;
        }
        if has_und {
            GraphClass::Chain
        } else {
            GraphClass::Dag
        }
    }

    fn component_index(&self, comps: &[VertexSet]) -> Vec<usize> {
        let mut idx = vec![usize::MAX; self.n];
        for (i, c) in comps.iter().enumerate() {
            for v in c.iter() {
                idx[v] = i;
            }
        }
        idx
    }

    /// Kahn's algorithm on the component condensation, smallest-vertex
    /// component first among the ready ones so the order is canonical.
    fn topological_component_order(
        &self,
        comps: &[VertexSet],
        comp_of: &[usize],
    ) -> Option<Vec<usize>> {
        let m = comps.len();
        let mut indeg = vec![0usize; m];
        let mut succ = vec![Vec::new(); m];
        for (a, b) in self.directed_edges() {
            let (i, j) = (comp_of[a], comp_of[b]);
            if i != j {
                succ[i].push(j);
            }
        }
        for s in &mut succ {
            s.sort_unstable();
            s.dedup();
        }
        for s in &succ {
            for &j in s {
                indeg[j] += 1;
            }
        }
        let mut order = Vec::with_capacity(m);
        let mut ready: Vec<usize> = (0..m).filter(|&i| indeg[i] == 0).collect();
        while let Some(&i) = ready.iter().min_by_key(|&&i| comps[i].min_vertex()) {
            ready.retain(|&x| x != i);
            order.push(i);
            for &j in &succ[i] {
                indeg[j] -= 1;
                if indeg[j] == 0 {
                    ready.push(j);
                }
            }
        }
        (order.len() == m).then_some(order)
    }

    /// Chain components in a canonical topological order: every directed edge
    /// runs from an earlier to a later component.
    ///
    /// Fails on graphs with semi-directed cycles.
    pub fn chain_components(&self) -> Result<Vec<VertexSet>> {
        let comps = self.undirected_components();
        let comp_of = self.component_index(&comps);
        for (a, b) in self.directed_edges() {
            if comp_of[a] == comp_of[b] {
                return Err(Error::NotChainGraph);
            }
        }
        let order = self
            .topological_component_order(&comps, &comp_of)
            .ok_or(Error::NotChainGraph)?;
        Ok(order.into_iter().map(|i| comps[i]).collect())
    }

    /// Smallest ancestral set containing `s`: the closure of `s` under
    /// parents and undirected neighbours.
    pub fn ancestral_set(&self, s: VertexSet) -> Result<VertexSet> {
        if !s.is_subset_of(self.vertices) {
            return Err(Error::ForeignSet(s));
        }
        let mut a = s;
        loop {
            let mut grow = a;
            for v in a.iter() {
                grow = grow | self.par[v] | self.und[v];
            }
            if grow == a {
                return Ok(a);
            }
            a = grow;
        }
    }

    /// True if the undirected graph is connected (vacuously for at most one
    /// vertex). Directed edges do not count.
    pub fn is_und_connected(&self) -> bool {
        self.undirected_components().len() <= 1
    }
}

impl std::fmt::Debug for MixedGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "MixedGraph({:?};", self.vertices)?;
        for (a, b) in self.undirected_edges() {
            write!(f, " {a}-{b}")?;
        }
        for (a, b) in self.directed_edges() {
            write!(f, " {a}>{b}")?;
        }
        write!(f, ")")
    }
}

/// A conditional independence statement `⟨A, B | C⟩`: the two sides are
/// non-empty and the three sets are pairwise disjoint.
#[derive(Debug, Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triplet {
    a: VertexSet,
    b: VertexSet,
    c: VertexSet,
}

impl Triplet {
    pub fn new(a: VertexSet, b: VertexSet, c: VertexSet) -> Result<Triplet> {
        if a.is_empty() || b.is_empty() {
            return Err(Error::EmptyTripletPart);
        }
        if !(a.is_disjoint_from(b) && a.is_disjoint_from(c) && b.is_disjoint_from(c)) {
            return Err(Error::OverlappingTriplet);
        }
        Ok(Triplet { a, b, c })
    }

    /// The elementary statement `⟨{u}, {v} | C⟩`.
    pub fn elementary(u: usize, v: usize, c: VertexSet) -> Result<Triplet> {
        Triplet::new(VertexSet::singleton(u), VertexSet::singleton(v), c)
    }

    pub fn a(&self) -> VertexSet {
        self.a
    }

    pub fn b(&self) -> VertexSet {
        self.b
    }

    pub fn c(&self) -> VertexSet {
        self.c
    }

    /// Union of all three sets.
    pub fn span(&self) -> VertexSet {
        self.a | self.b | self.c
    }

    /// The same statement with the two sides in canonical order (smaller
    /// encoding first). Separation and imset semantics are symmetric in the
    /// sides, so this is the form used for stored models and decompositions.
    pub fn canonical(&self) -> Triplet {
        if self.a.bits() <= self.b.bits() {
            *self
        } else {
            Triplet {
                a: self.b,
                b: self.a,
                c: self.c,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(vals: &[usize]) -> VertexSet {
        VertexSet::from_indices(vals.iter().copied())
    }

    #[test]
    fn rejects_bad_edges() {
        let mut g = MixedGraph::new(3).unwrap();
        assert_eq!(g.add_undirected(1, 1), Err(Error::SelfLoop(1)));
        g.add_undirected(0, 1).unwrap();
        assert_eq!(g.add_undirected(1, 0), Err(Error::DuplicateEdge(1, 0)));
        assert_eq!(g.add_directed(0, 1), Err(Error::DuplicateEdge(0, 1)));
        g.add_directed(1, 2).unwrap();
        assert_eq!(g.add_directed(2, 1), Err(Error::DuplicateEdge(2, 1)));
        assert_eq!(g.add_directed(1, 2), Err(Error::DuplicateEdge(1, 2)));
        assert_eq!(g.add_undirected(0, 3), Err(Error::ForeignVertex(3)));
    }

    #[test]
    fn universe_cap() {
        assert!(MixedGraph::new(32).is_ok());
        assert_eq!(MixedGraph::new(33), Err(Error::UniverseTooLarge(33, 32)));
    }

    #[test]
    fn classify_pure_kinds() {
        let mut ug = MixedGraph::new(3).unwrap();
        ug.add_undirected(0, 1).unwrap();
        assert_eq!(ug.classify(), GraphClass::Undirected);

        let mut dag = MixedGraph::new(3).unwrap();
        dag.add_directed(0, 1).unwrap();
        dag.add_directed(1, 2).unwrap();
        assert_eq!(dag.classify(), GraphClass::Dag);

        let mut cyc = MixedGraph::new(3).unwrap();
        cyc.add_directed(0, 1).unwrap();
        cyc.add_directed(1, 2).unwrap();
        cyc.add_directed(2, 0).unwrap();
        assert_eq!(cyc.classify(), GraphClass::NotChainGraph);

        assert_eq!(MixedGraph::new(2).unwrap().classify(), GraphClass::Undirected);
    }

    #[test]
    fn classify_chain_and_semi_directed_cycle() {
        // 0 -> 2, 1 -> 3, 2 - 3: a chain graph.
        let mut g = MixedGraph::new(4).unwrap();
        g.add_directed(0, 2).unwrap();
        g.add_directed(1, 3).unwrap();
        g.add_undirected(2, 3).unwrap();
        assert_eq!(g.classify(), GraphClass::Chain);

        // 0 -> 1, 1 - 2, 2 -> 0: semi-directed cycle through two components.
        let mut h = MixedGraph::new(3).unwrap();
        h.add_directed(0, 1).unwrap();
        h.add_undirected(1, 2).unwrap();
        h.add_directed(2, 0).unwrap();
        assert_eq!(h.classify(), GraphClass::NotChainGraph);

        // 0 -> 1 with 0 - 1 replaced: directed edge inside a component.
        let mut k = MixedGraph::new(3).unwrap();
        k.add_undirected(0, 1).unwrap();
        k.add_undirected(1, 2).unwrap();
        k.add_directed(0, 2).unwrap();
        assert_eq!(k.classify(), GraphClass::NotChainGraph);
    }

    #[test]
    fn chain_components_ordered() {
        // 0 -> 2, 1 -> 3, 2 - 3: components {0}, {1}, {2,3} in order.
        let mut g = MixedGraph::new(4).unwrap();
        g.add_directed(0, 2).unwrap();
        g.add_directed(1, 3).unwrap();
        g.add_undirected(2, 3).unwrap();
        let comps = g.chain_components().unwrap();
        assert_eq!(comps, vec![vs(&[0]), vs(&[1]), vs(&[2, 3])]);
        assert_eq!(g.parents_of_set(vs(&[2, 3])), vs(&[0, 1]));
    }

    #[test]
    fn induced_subgraph_keeps_coordinates() {
        let mut g = MixedGraph::new(4).unwrap();
        g.add_undirected(1, 2).unwrap();
        g.add_directed(0, 1).unwrap();
        g.add_directed(3, 2).unwrap();
        let h = g.induced(vs(&[0, 1, 2])).unwrap();
        assert_eq!(h.vertices(), vs(&[0, 1, 2]));
        assert!(h.has_directed(0, 1));
        assert!(h.has_undirected(1, 2));
        assert!(!h.is_adjacent(3, 2));
        assert!(g.induced(vs(&[0, 5])).is_err());
    }

    #[test]
    fn ancestral_closure() {
        // 0 -> 1, 1 - 2, 3 -> 4: ancestors of {2} pull in the whole chain
        // component {1,2} and its parent 0.
        let mut g = MixedGraph::new(5).unwrap();
        g.add_directed(0, 1).unwrap();
        g.add_undirected(1, 2).unwrap();
        g.add_directed(3, 4).unwrap();
        assert_eq!(g.ancestral_set(vs(&[2])).unwrap(), vs(&[0, 1, 2]));
        assert_eq!(g.ancestral_set(vs(&[4])).unwrap(), vs(&[3, 4]));
        assert_eq!(g.ancestral_set(vs(&[0])).unwrap(), vs(&[0]));
        // Idempotent.
        let a = g.ancestral_set(vs(&[2, 4])).unwrap();
        assert_eq!(g.ancestral_set(a).unwrap(), a);
    }

    #[test]
    fn triplet_validation() {
        let t = Triplet::new(vs(&[0]), vs(&[1]), vs(&[2])).unwrap();
        assert_eq!(t.span(), vs(&[0, 1, 2]));
        assert_eq!(
            Triplet::new(VertexSet::EMPTY, vs(&[1]), vs(&[2])),
            Err(Error::EmptyTripletPart)
        );
        assert_eq!(
            Triplet::new(vs(&[0, 1]), vs(&[1]), VertexSet::EMPTY),
            Err(Error::OverlappingTriplet)
        );
        let u = Triplet::new(vs(&[3]), vs(&[1]), vs(&[2])).unwrap();
        assert_eq!(u.canonical().a(), vs(&[1]));
        assert_eq!(u.canonical().b(), vs(&[3]));
    }
}
