//! Orbital colorings, the automorphism engine and 2-closures.

mod cache;
mod closure;
mod coloring;
mod engine;
mod graph;

pub use cache::ClosureCache;
pub use closure::{is_2_closed, two_closure};
pub use coloring::{orbitals, ColoredDigraph, OrbitalPartition};
pub use engine::{automorphisms, automorphisms_where, EngineLimits, EXTENDED_MAX_POINTS};
pub use graph::{import_graph, Graph};
