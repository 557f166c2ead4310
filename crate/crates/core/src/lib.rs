//! Standard imsets for graphical models.
//!
//! An *imset* (integer-valued multiset) over a vertex universe `N` is an
//! integer function on the subsets of `N`. Every undirected graph, DAG, and
//! chain graph has a *standard imset* — a single integer vector that
//! captures its entire conditional-independence model:
//!
//! * `⟨A, B | C⟩` holds in the graph iff `u − u_⟨A,B|C⟩` stays inside the
//!   cone of combinatorial imsets ([`standard::ci_test`]), and
//! * two graphs are Markov equivalent iff their standard imsets are equal
//!   ([`standard::imset_equivalent`]).
//!
//! The crate provides the graph machinery needed to build these vectors
//! (chain components, c-separation, maximal prime decomposition, minimal
//! triangulation enumeration), the imset arithmetic to query them
//! (semi-elementary decomposition by exact search), and seeded generators to
//! cross-validate the two routes against each other.
//!
//! # Scope
//!
//! Membership in the *combinatorial* cone — sums of elementary imsets with
//! non-negative integer coefficients — is what [`imset::is_combinatorial`]
//! decides, and it is used here as the structural test throughout. For the
//! model sizes these tools accept it coincides with every characterisation
//! of "structural" the queries need; no separate rational-cone or
//! portfolio-of-degrees machinery is involved. Decomposition search is
//! capped at universes of [`imset::MAX_DECOMPOSE_VERTICES`] vertices, and
//! the separation routines at [`separation::MAX_MODEL_VERTICES`]; the caps
//! exist because the search spaces are genuinely exponential, not as tuning
//! knobs.
//!
//! # Example
//!
//! ```
//! use imsets::graph::{MixedGraph, Triplet};
//! use imsets::guards::Guards;
//! use imsets::set::VertexSet;
//! use imsets::{separation, standard};
//!
//! // The chain graph 0 -> 2, 1 -> 3, 2 - 3.
//! let mut g = MixedGraph::new(4).unwrap();
//! g.add_directed(0, 2).unwrap();
//! g.add_directed(1, 3).unwrap();
//! g.add_undirected(2, 3).unwrap();
//!
//! let u = standard::standard_imset_cg(&g, &Guards::default()).unwrap();
//! let t = Triplet::elementary(0, 1, VertexSet::EMPTY).unwrap();
//!
//! // The imset route and the separation route agree.
//! assert!(standard::ci_test(&u, &t).unwrap());
//! assert!(separation::cg_separates(&g, &t).unwrap());
//! ```

pub mod error;
pub mod graph;
pub mod guards;
pub mod imset;
pub mod io;
pub mod mpd;
pub mod random;
pub mod separation;
pub mod set;
pub mod standard;
pub mod triangulate;

pub use error::{Error, Result};
pub use graph::{GraphClass, MixedGraph, Triplet};
pub use guards::Guards;
pub use imset::Imset;
pub use set::VertexSet;
