use rayon::prelude::*;

use crate::catalog::{named_families, symmetric, Catalog, CatalogEntry, Provenance, Tags};
use crate::closure2::{automorphisms, EngineLimits, Graph};
use crate::error::Result;
use crate::perm::{PermutationGroup, SubgroupLattice, DEFAULT_ELEMENT_CAP, DEFAULT_LATTICE_GROUP_CAP};

#[derive(Clone, Debug)]
pub struct BuildOptions {
    pub min_degree: usize,
    pub max_exhaustive_degree: usize,
    pub max_family_degree: usize,
    pub element_cap: usize,
    /// Largest `S_n` whose subgroup lattice is enumerated.
    pub lattice_cap: usize,
    pub engine: EngineLimits,
    pub compute_two_closed: bool,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            min_degree: 2,
            max_exhaustive_degree: 6,
            max_family_degree: 12,
            element_cap: DEFAULT_ELEMENT_CAP,
            lattice_cap: DEFAULT_LATTICE_GROUP_CAP,
            engine: EngineLimits::default(),
            compute_two_closed: true,
        }
    }
}

impl BuildOptions {
    /// Restricts the build to a single degree.
    pub fn only_degree(mut self, n: usize) -> Self {
        self.min_degree = n;
        self.max_exhaustive_degree = self.max_exhaustive_degree.min(n);
        self.max_family_degree = self.max_family_degree.min(n);
        self
    }
}

#[derive(Clone, Debug)]
pub struct BuildReport {
    pub catalog: Catalog,
    /// Skipped families, duplicate names and other notes, in build order.
    pub log: Vec<String>,
}

/// Transitive subgroups of `S_n` up to conjugacy, ordered by group order.
pub fn exhaustive_transitive(n: usize, lattice_cap: usize) -> Result<Vec<PermutationGroup>> {
    let sn = PermutationGroup::generate(n, symmetric(n).generators, lattice_cap.max(1))?;
    let lattice = SubgroupLattice::compute(&sn, sn.order(), lattice_cap)?;
    Ok(lattice
        .representatives()
        .into_iter()
        .filter(|g| g.is_transitive())
        .collect())
}

struct Slot {
    group: PermutationGroup,
    name: Option<String>,
    provenance: Provenance,
}

pub fn build_catalog(opts: &BuildOptions) -> Result<BuildReport> {
    let mut log = Vec::new();
    let families = named_families(opts.max_family_degree)?;
    let top = opts.max_exhaustive_degree.max(opts.max_family_degree);
    let mut entries = Vec::new();
    for n in opts.min_degree.max(2)..=top {
        let mut slots: Vec<Slot> = Vec::new();
        if n <= opts.max_exhaustive_degree {
            match exhaustive_transitive(n, opts.lattice_cap) {
                Ok(groups) => slots.extend(groups.into_iter().map(|group| Slot {
                    group,
                    name: None,
                    provenance: Provenance::ExhaustiveEnum,
                })),
                Err(e) => log.push(format!("degree {n}: exhaustive enumeration skipped: {e}")),
            }
        }
        for fam in families.iter().filter(|f| f.degree == n) {
            let group = match PermutationGroup::generate(n, fam.generators.clone(), opts.element_cap) {
                Ok(g) => g,
                Err(e) => {
                    log.push(format!("{}: skipped: {e}", fam.id));
                    continue;
                }
            };
            let existing = slots
                .iter_mut()
                .find(|s| s.group.order() == group.order() && s.group.conjugator_in_symmetric(&group).is_some());
            match existing {
                Some(slot) => match &slot.name {
                    Some(first) => log.push(format!("{}: conjugate to {first}, dropped", fam.id)),
                    None => {
                        // Same class; keep the family's own generators for readability.
                        slot.name = Some(fam.id.clone());
                        slot.group = group;
                    }
                },
                None => {
                    if n <= opts.max_exhaustive_degree {
                        log.push(format!("{}: not found among exhaustive classes", fam.id));
                    }
                    slots.push(Slot {
                        group,
                        name: Some(fam.id.clone()),
                        provenance: Provenance::NamedFamily,
                    });
                }
            }
        }
        slots.sort_by_key(|s| s.group.order());
        let mut counter: std::collections::HashMap<usize, usize> = Default::default();
        for slot in slots {
            let id = slot.name.unwrap_or_else(|| {
                let j = counter.entry(slot.group.order()).or_insert(0);
                *j += 1;
                format!("T{}.{}@{n}", slot.group.order(), j)
            });
            entries.push((CatalogEntry::new(id, &slot.group, slot.provenance), slot.group));
        }
    }
    let entries: Vec<CatalogEntry> = entries
        .into_par_iter()
        .map(|(mut entry, group)| {
            entry.tags = if opts.compute_two_closed {
                Tags::compute(&group, &opts.engine)
            } else {
                Tags::structural(&group)
            };
            entry
        })
        .collect();
    Ok(BuildReport {
        catalog: Catalog::new(entries)?,
        log,
    })
}

/// Catalog entry for the automorphism group of a graph.
pub fn entry_from_graph(graph: &Graph, limits: &EngineLimits) -> Result<CatalogEntry> {
    let group = automorphisms(&graph.to_coloring(), limits)?;
    let id = format!("graph-{}@{}", graph.to_graph6(), graph.order());
    let mut entry = CatalogEntry::new(id, &group, Provenance::GraphImport);
    entry.tags = Tags::compute(&group, limits);
    Ok(entry)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(n: usize) -> Vec<String> {
        let opts = BuildOptions {
            compute_two_closed: false,
            ..BuildOptions::default().only_degree(n)
        };
        build_catalog(&opts).unwrap().catalog.iter().map(|e| e.id.clone()).collect()
    }

    #[test]
    fn small_degrees() {
        assert_eq!(ids(2), vec!["C2@2"]);
        assert_eq!(ids(3), vec!["C3@3", "S3@3"]);
        assert_eq!(ids(4), vec!["V4-regular@4", "C4@4", "D4@4", "A4@4", "S4@4"]);
        assert_eq!(ids(5), vec!["C5@5", "D5@5", "F20@5", "A5@5", "S5@5"]);
    }

    #[test]
    fn degree_six_has_sixteen_classes() {
        let opts = BuildOptions {
            compute_two_closed: false,
            ..BuildOptions::default().only_degree(6)
        };
        let report = build_catalog(&opts).unwrap();
        assert_eq!(report.catalog.len(), 16);
        assert!(report.catalog.get("S3-regular@6").is_some());
        assert!(report.log.iter().all(|l| !l.contains("not found")), "{:?}", report.log);
    }
}
