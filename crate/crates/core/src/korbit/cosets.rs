use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::korbit::{k_orbit, KOrbit, KTuple, TupleSet};
use crate::perm::{PermutationGroup, StabilizerTarget};
use crate::util::UnionFind;

/// A partition of a tuple set, classes sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TuplePartition {
    carrier: TupleSet,
    classes: Vec<TupleSet>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LatticeOp {
    Meet,
    Join,
}

impl TuplePartition {
    pub fn new(mut classes: Vec<TupleSet>) -> Result<Self> {
        if classes.iter().any(TupleSet::is_empty) {
            return Err(Error::MalformedPartition("empty class".into()));
        }
        let total: usize = classes.iter().map(TupleSet::len).sum();
        let carrier: TupleSet = classes.iter().flat_map(|c| c.iter().cloned()).collect();
        if carrier.len() != total {
            return Err(Error::MalformedPartition("classes overlap".into()));
        }
        classes.sort();
        Ok(TuplePartition { carrier, classes })
    }

    pub fn singletons(carrier: &TupleSet) -> Self {
        TuplePartition {
            carrier: carrier.clone(),
            classes: carrier.iter().cloned().map(TupleSet::singleton).collect(),
        }
    }

    pub fn whole(carrier: &TupleSet) -> Self {
        TuplePartition {
            carrier: carrier.clone(),
            classes: if carrier.is_empty() { vec![] } else { vec![carrier.clone()] },
        }
    }

    pub fn carrier(&self) -> &TupleSet {
        &self.carrier
    }

    pub fn classes(&self) -> &[TupleSet] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    /// Whether every class of `self` lies inside a class of `coarser`.
    pub fn refines(&self, coarser: &TuplePartition) -> bool {
        self.carrier == coarser.carrier
            && self
                .classes
                .iter()
                .all(|c| coarser.classes.iter().any(|d| c.is_subset(d)))
    }

    fn class_of(&self) -> HashMap<&KTuple, usize> {
        self.classes
            .iter()
            .enumerate()
            .flat_map(|(i, c)| c.iter().map(move |t| (t, i)))
            .collect()
    }

    /// Nonempty pairwise intersections of classes.
    pub fn meet(&self, other: &TuplePartition) -> Result<TuplePartition> {
        if self.carrier != other.carrier {
            return Err(Error::CarrierMismatch);
        }
        let theirs = other.class_of();
        let mut groups: HashMap<(usize, usize), Vec<KTuple>> = HashMap::new();
        for (i, c) in self.classes.iter().enumerate() {
            for t in c {
                groups.entry((i, theirs[t])).or_default().push(t.clone());
            }
        }
        TuplePartition::new(groups.into_values().map(TupleSet::from_iter).collect())
    }

    /// Connected components of the class-overlap relation.
    pub fn join(&self, other: &TuplePartition) -> Result<TuplePartition> {
        if self.carrier != other.carrier {
            return Err(Error::CarrierMismatch);
        }
        let offset = self.classes.len();
        let mut uf = UnionFind::new(offset + other.classes.len());
        let mine = self.class_of();
        for (j, c) in other.classes.iter().enumerate() {
            for t in c {
                uf.union(mine[t], offset + j);
            }
        }
        let mut groups: HashMap<usize, Vec<KTuple>> = HashMap::new();
        for (i, c) in self.classes.iter().enumerate() {
            let root = uf.find(i);
            groups.entry(root).or_default().extend(c.iter().cloned());
        }
        TuplePartition::new(groups.into_values().map(TupleSet::from_iter).collect())
    }

    pub fn combine(&self, other: &TuplePartition, op: LatticeOp) -> Result<TuplePartition> {
        match op {
            LatticeOp::Meet => self.meet(other),
            LatticeOp::Join => self.join(other),
        }
    }
}

pub fn partition_meet_join(p: &TuplePartition, r: &TuplePartition, op: LatticeOp) -> Result<TuplePartition> {
    p.combine(r, op)
}

/// Left translates of `Y` and the orbits of `Stab(Y)` on the k-orbit `X ⊇ Y`.
#[derive(Clone, Debug)]
pub struct CosetPartitionPair {
    pub orbit: KOrbit,
    /// `{g·Y : g ∈ G}`, deduplicated and sorted; may overlap.
    pub left: Vec<TupleSet>,
    pub right: TuplePartition,
    /// Setwise stabilizer of `Y` in `G`.
    pub stabilizer: PermutationGroup,
    pub stabilizer_transitive_on_y: bool,
    pub l_is_partition: bool,
    pub l_equals_r: bool,
}

impl CosetPartitionPair {
    /// `L` as a partition, when its classes are disjoint.
    pub fn left_partition(&self) -> Option<TuplePartition> {
        if self.l_is_partition {
            TuplePartition::new(self.left.clone()).ok()
        } else {
            None
        }
    }
}

pub fn coset_partitions(group: &PermutationGroup, y: &TupleSet) -> Result<CosetPartitionPair> {
    let first = y
        .first()
        .ok_or_else(|| Error::MalformedPartition("empty tuple set".into()))?;
    let orbit = k_orbit(group, first)?;
    if !y.is_subset(orbit.tuples()) {
        return Err(Error::NotContained);
    }
    let mut left: Vec<TupleSet> = group.elements().iter().map(|g| y.act(g)).collect();
    left.sort();
    left.dedup();
    let stabilizer = group.stabilizer(StabilizerTarget::TupleSet(y));
    let right = orbits_on(&stabilizer, orbit.tuples());
    let stabilizer_transitive_on_y = right.classes.iter().any(|c| c == y);
    let l_is_partition = left.len() * y.len() == orbit.len();
    let l_equals_r = left == right.classes;
    Ok(CosetPartitionPair {
        orbit,
        left,
        right,
        stabilizer,
        stabilizer_transitive_on_y,
        l_is_partition,
        l_equals_r,
    })
}

/// Orbits of `group` on an invariant tuple set.
pub fn orbits_on(group: &PermutationGroup, tuples: &TupleSet) -> TuplePartition {
    let mut assigned = vec![false; tuples.len()];
    let mut classes = Vec::new();
    for (i, t) in tuples.iter().enumerate() {
        if assigned[i] {
            continue;
        }
        let orbit: TupleSet = group.elements().iter().map(|g| t.act(g)).collect();
        for u in &orbit {
            if let Some(j) = tuples.position(u) {
                assigned[j] = true;
            }
        }
        classes.push(orbit);
    }
    TuplePartition::new(classes).expect("orbits are disjoint")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{close_group, Permutation};

    fn group(n: usize, gens: &[&str]) -> PermutationGroup {
        let g: Vec<_> = gens.iter().map(|s| Permutation::parse(s, n).unwrap()).collect();
        close_group(n, &g, 1000).unwrap()
    }

    fn t(p: &[usize]) -> KTuple {
        KTuple::from_one_based(p).unwrap()
    }

    #[test]
    fn s3_single_tuple() {
        let s3 = group(3, &["(1 2)", "(1 2 3)"]);
        let pair = coset_partitions(&s3, &TupleSet::singleton(t(&[1, 2]))).unwrap();
        assert_eq!(pair.left.len(), 6);
        assert_eq!(pair.right.num_classes(), 6);
        assert!(pair.l_is_partition && pair.l_equals_r);
    }

    #[test]
    fn whole_orbit() {
        let c4 = group(4, &["[2,3,4,1]"]);
        let x = k_orbit(&c4, &t(&[1, 2])).unwrap();
        let pair = coset_partitions(&c4, x.tuples()).unwrap();
        assert_eq!(pair.left, vec![x.tuples().clone()]);
        assert!(pair.l_equals_r);
        let outside = TupleSet::from_iter([t(&[1, 2]), t(&[1, 3])]);
        assert_eq!(coset_partitions(&c4, &outside).unwrap_err(), Error::NotContained);
    }

    #[test]
    fn lattice_bounds() {
        let c4 = group(4, &["[2,3,4,1]"]);
        let x = k_orbit(&c4, &t(&[1, 2])).unwrap();
        let bottom = TuplePartition::singletons(x.tuples());
        let top = TuplePartition::whole(x.tuples());
        assert_eq!(bottom.meet(&top).unwrap(), bottom);
        assert_eq!(bottom.join(&top).unwrap(), top);
        assert_eq!(top.meet(&top).unwrap(), top);
        let other = TuplePartition::whole(&TupleSet::singleton(t(&[1, 2])));
        assert_eq!(top.meet(&other), Err(Error::CarrierMismatch));
    }
}
