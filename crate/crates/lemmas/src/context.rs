use std::sync::OnceLock;

use korbit::catalog::CatalogEntry;
use korbit::closure2::{is_2_closed, two_closure};
use korbit::korbit::{automorphic_subsets, orb_k, AutomorphicSubset, KOrbit};
use korbit::perm::{block_systems, classify_md, MdClass, PartitionOfV, PermutationGroup, SubgroupLattice};
use korbit::Result;

use crate::config::{Convention, SuiteConfig};

/// One catalog group with lazily computed, shared invariants.
///
/// Several checks need the same block systems, lattice or k-orbits; the
/// context computes each at most once and is safe to share across threads.
pub struct GroupContext {
    pub entry: CatalogEntry,
    pub group: PermutationGroup,
    pub transitive: bool,
    engine: korbit::closure2::EngineLimits,
    tuple_cap: usize,
    subgroup_cap: usize,
    blocks: OnceLock<Vec<PartitionOfV>>,
    md: OnceLock<Result<MdClass>>,
    two_closed: OnceLock<Result<bool>>,
    closure_order: OnceLock<Option<usize>>,
    lattice: OnceLock<Result<SubgroupLattice>>,
    subsets: OnceLock<Result<Vec<AutomorphicSubset>>>,
    orbits: [OnceLock<Result<Vec<KOrbit>>>; 4],
}

impl GroupContext {
    pub fn new(entry: &CatalogEntry, cfg: &SuiteConfig) -> Result<Self> {
        let group = PermutationGroup::generate(entry.degree, entry.generators.clone(), cfg.element_cap.max(entry.order))?;
        Ok(GroupContext {
            entry: entry.clone(),
            transitive: group.is_transitive(),
            group,
            engine: cfg.engine,
            tuple_cap: cfg.tuple_cap,
            subgroup_cap: cfg.subgroup_cap,
            blocks: OnceLock::new(),
            md: OnceLock::new(),
            two_closed: OnceLock::new(),
            closure_order: OnceLock::new(),
            lattice: OnceLock::new(),
            subsets: OnceLock::new(),
            orbits: Default::default(),
        })
    }

    pub fn degree(&self) -> usize {
        self.group.degree()
    }

    pub fn engine(&self) -> &korbit::closure2::EngineLimits {
        &self.engine
    }

    /// Nontrivial block systems; empty for intransitive groups.
    pub fn blocks(&self) -> &[PartitionOfV] {
        self.blocks
            .get_or_init(|| block_systems(&self.group).unwrap_or_default())
    }

    pub fn is_primitive(&self) -> bool {
        self.transitive && self.degree() > 1 && self.blocks().is_empty()
    }

    pub fn primitive_under(&self, convention: Convention) -> bool {
        self.is_primitive() && (convention == Convention::Standard || !self.group.is_abelian())
    }

    pub fn md_class(&self) -> Result<&MdClass> {
        self.md.get_or_init(|| classify_md(&self.group)).as_ref().map_err(Clone::clone)
    }

    pub fn is_nmd(&self) -> Result<bool> {
        if !self.transitive {
            return Ok(false);
        }
        Ok(self.md_class()?.is_nmd())
    }

    pub fn two_closed(&self) -> Result<bool> {
        self.two_closed
            .get_or_init(|| is_2_closed(&self.group, &self.engine))
            .clone()
    }

    /// Order of the 2-closure, when the engine can enumerate it.
    pub fn closure_order(&self) -> Option<usize> {
        *self
            .closure_order
            .get_or_init(|| two_closure(&self.group, &self.engine).ok().map(|c| c.order()))
    }

    pub fn lattice(&self) -> Result<&SubgroupLattice> {
        self.lattice
            .get_or_init(|| SubgroupLattice::compute(&self.group, self.group.order(), self.subgroup_cap))
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn subgroup_cap(&self) -> usize {
        self.subgroup_cap
    }

    pub fn automorphic_subsets(&self) -> Result<&[AutomorphicSubset]> {
        self.subsets
            .get_or_init(|| automorphic_subsets(&self.group))
            .as_ref()
            .map(Vec::as_slice)
            .map_err(Clone::clone)
    }

    /// `Orb_k(G)` for `k <= 3`.
    pub fn orbits(&self, k: usize) -> Result<&[KOrbit]> {
        assert!(k < self.orbits.len(), "orbit cache covers k <= 3");
        self.orbits[k]
            .get_or_init(|| orb_k(&self.group, k, self.tuple_cap))
            .as_ref()
            .map(Vec::as_slice)
            .map_err(Clone::clone)
    }
}
