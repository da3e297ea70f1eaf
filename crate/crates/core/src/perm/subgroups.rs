//! Subgroup classes up to conjugacy by cyclic extension.
//!
//! Starting from the trivial group, every class representative `H` is
//! extended to `<H, g>` for one `g` per double-coset-like shell `HgH`.
//! Extensions by elements normalizing `H` are the classical cyclic
//! extension step; the remaining extensions are what reach perfect
//! subgroups such as `A5 < S5`. A new subgroup registers its whole
//! conjugacy class at once, so later hits are recognised by a set lookup.

use std::collections::{HashSet, VecDeque};

use crate::error::Result;
use crate::perm::{ElementSet, GroupTable, PermutationGroup};

/// Largest group whose lattice is computed by default (covers S6).
pub const DEFAULT_LATTICE_GROUP_CAP: usize = 720;

#[derive(Clone, Debug)]
pub struct Subgroup {
    pub elements: ElementSet,
    /// Element indices generating the subgroup.
    pub generators: Vec<usize>,
    pub order: usize,
}

#[derive(Clone, Debug)]
pub struct SubgroupClass {
    /// The conjugate with the lexicographically smallest element-index list.
    pub representative: Subgroup,
    /// Every conjugate, the representative first.
    pub conjugates: Vec<Subgroup>,
}

impl SubgroupClass {
    pub fn order(&self) -> usize {
        self.representative.order
    }
}

pub struct SubgroupLattice {
    table: GroupTable,
    classes: Vec<SubgroupClass>,
    complete: bool,
    order_cap: usize,
}

impl SubgroupLattice {
    /// Enumerates all subgroups of order at most `order_cap` up to
    /// conjugacy. `complete()` reports whether larger subgroups were cut off.
    /// Requires `|G| <= group_cap` for the multiplication table.
    pub fn compute(group: &PermutationGroup, order_cap: usize, group_cap: usize) -> Result<Self> {
        let table = GroupTable::new(group, group_cap)?;
        let n = table.order();
        let mut seen: HashSet<ElementSet> = HashSet::new();
        let mut classes: Vec<SubgroupClass> = Vec::new();
        let mut complete = true;
        let mut trivial = ElementSet::empty(n);
        trivial.insert(table.identity());
        let mut queue = VecDeque::new();
        register(
            &table,
            Subgroup {
                elements: trivial,
                generators: vec![],
                order: 1,
            },
            &mut seen,
            &mut classes,
        );
        queue.push_back(0);
        while let Some(ci) = queue.pop_front() {
            let rep = classes[ci].representative.clone();
            let members: Vec<usize> = rep.elements.iter().collect();
            let mut done = rep.elements.clone();
            for g in 0..n {
                if done.contains(g) {
                    continue;
                }
                for &h in &members {
                    done.insert(table.mul(h, g));
                    done.insert(table.mul(g, h));
                }
                match extend(&table, &rep, &members, g, order_cap) {
                    None => complete = false,
                    Some(sub) => {
                        if !seen.contains(&sub.elements) {
                            register(&table, sub, &mut seen, &mut classes);
                            queue.push_back(classes.len() - 1);
                        }
                    }
                }
            }
        }
        classes.sort_by(|a, b| {
            a.order()
                .cmp(&b.order())
                .then_with(|| index_key(&a.representative).cmp(&index_key(&b.representative)))
        });
        Ok(SubgroupLattice {
            table,
            classes,
            complete,
            order_cap,
        })
    }

    pub fn table(&self) -> &GroupTable {
        &self.table
    }

    pub fn group(&self) -> &PermutationGroup {
        self.table.group()
    }

    pub fn classes(&self) -> &[SubgroupClass] {
        &self.classes
    }

    pub fn complete(&self) -> bool {
        self.complete
    }

    pub fn order_cap(&self) -> usize {
        self.order_cap
    }

    pub fn representatives(&self) -> Vec<PermutationGroup> {
        self.classes.iter().map(|c| self.to_group(&c.representative)).collect()
    }

    /// Every subgroup (all conjugates), class by class.
    pub fn all(&self) -> impl Iterator<Item = &Subgroup> {
        self.classes.iter().flat_map(|c| c.conjugates.iter())
    }

    pub fn to_group(&self, sub: &Subgroup) -> PermutationGroup {
        self.table.to_group(&sub.elements, &sub.generators)
    }

    pub fn total_subgroups(&self) -> usize {
        self.classes.iter().map(|c| c.conjugates.len()).sum()
    }
}

/// Conjugacy class representatives of subgroups, as groups.
#[derive(Debug, Clone)]
pub struct SubgroupList {
    pub groups: Vec<PermutationGroup>,
    pub complete: bool,
}

/// Subgroups of `group` up to conjugacy, omitting those above `order_cap`.
pub fn subgroups(group: &PermutationGroup, order_cap: usize) -> Result<SubgroupList> {
    let lattice = SubgroupLattice::compute(group, order_cap, group.order().max(DEFAULT_LATTICE_GROUP_CAP))?;
    Ok(SubgroupList {
        groups: lattice.representatives(),
        complete: lattice.complete(),
    })
}

fn index_key(s: &Subgroup) -> Vec<usize> {
    s.elements.iter().collect()
}

fn extend(
    table: &GroupTable,
    base: &Subgroup,
    members: &[usize],
    g: usize,
    cap: usize,
) -> Option<Subgroup> {
    let mut gens = base.generators.clone();
    gens.push(g);
    let mut set = base.elements.clone();
    let mut count = members.len();
    let mut frontier: Vec<usize> = members.to_vec();
    while let Some(e) = frontier.pop() {
        for &s in &gens {
            let p = table.mul(e, s);
            if set.insert(p) {
                count += 1;
                if count > cap {
                    return None;
                }
                frontier.push(p);
            }
        }
    }
    Some(Subgroup {
        elements: set,
        generators: gens,
        order: count,
    })
}

fn register(
    table: &GroupTable,
    sub: Subgroup,
    seen: &mut HashSet<ElementSet>,
    classes: &mut Vec<SubgroupClass>,
) {
    let n = table.order();
    let members: Vec<usize> = sub.elements.iter().collect();
    let mut conjugates: Vec<Subgroup> = Vec::new();
    let mut local: HashSet<ElementSet> = HashSet::new();
    for x in 0..n {
        let mut set = ElementSet::empty(n);
        for &h in &members {
            set.insert(table.conj(h, x));
        }
        if local.insert(set.clone()) {
            conjugates.push(Subgroup {
                elements: set,
                generators: sub.generators.iter().map(|&h| table.conj(h, x)).collect(),
                order: sub.order,
            });
        }
    }
    conjugates.sort_by_key(index_key);
    for c in &conjugates {
        seen.insert(c.elements.clone());
    }
    classes.push(SubgroupClass {
        representative: conjugates[0].clone(),
        conjugates,
    });
}
