//! Permutations, explicit groups, block systems and subgroup lattices.

mod group;
mod grp;
mod partition;
mod permutation;
mod subgroups;
mod table;

pub use group::{close_group, PermutationGroup, StabilizerTarget, DEFAULT_ELEMENT_CAP};
pub use grp::GroupFile;
pub use partition::{
    block_systems, classify_md, is_primitive, partition_action, MdClass, PartitionAction, PartitionOfV,
};
pub use permutation::{CycleType, Permutation, MAX_DEGREE};
pub use subgroups::{subgroups, Subgroup, SubgroupClass, SubgroupLattice, SubgroupList, DEFAULT_LATTICE_GROUP_CAP};
pub use table::{ElementSet, GroupTable};
