//! Actions on k-tuples and the k-orbit calculus built on them.
//!
//! Left action is coordinate-wise: `g·<v1..vk> = <g(v1)..g(vk)>`. The right
//! action permutes positions and only exists for full-length tuples. With
//! composition `p*q = p(q(x))`, the image array `[3,1,2]` reproduces both the
//! left and the right worked example for `{123, 132}`.

mod automorphic;
mod coherence;
mod cosets;
mod orbit;
mod tuple;

pub use automorphic::{
    aut_kset, automorphic_numbers, automorphic_status, automorphic_status_capped, automorphic_subsets,
    is_automorphic_tuple, is_suborbit, AutomorphicStatus, AutomorphicSubset, KSetAutomorphisms, MAX_SUBSET_DEGREE,
};
pub use coherence::{coherence, components, is_elementary_coherent, Coherence, CoherenceVerdict};
pub use cosets::{coset_partitions, orbits_on, partition_meet_join, CosetPartitionPair, LatticeOp, TuplePartition};
pub use orbit::{
    all_tuples, count_tuples, k_blocks, k_orbit, orb_k, CoordinateFamily, KBlock, KOrbit, DEFAULT_TUPLE_CAP,
};
pub use tuple::{project, KTuple, TupleSet};
