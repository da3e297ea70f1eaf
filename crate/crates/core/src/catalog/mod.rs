//! The instance corpus: exhaustive transitive groups of small degree,
//! named families and imported graphs.

mod build;
mod entry;
mod families;

pub use build::{build_catalog, entry_from_graph, exhaustive_transitive, BuildOptions, BuildReport};
pub use entry::{Catalog, CatalogEntry, Provenance, Tags, LOAD_ELEMENT_CAP};
pub use families::{
    affine, alternating, cyclic, dihedral, named_families, regular_representation, small_groups, symmetric, wreath,
    FamilyMember,
};
