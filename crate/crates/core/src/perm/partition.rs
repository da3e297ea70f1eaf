use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::perm::{Permutation, PermutationGroup};
use crate::util::UnionFind;

/// A partition of `{0, .., n-1}`. Classes are sorted internally and ordered
/// by their smallest point.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartitionOfV {
    degree: usize,
    classes: Vec<Vec<usize>>,
}

impl PartitionOfV {
    pub fn new(degree: usize, classes: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; degree];
        let mut classes = classes;
        for class in &mut classes {
            if class.is_empty() {
                return Err(Error::MalformedPartition("empty class".into()));
            }
            class.sort_unstable();
            for &x in class.iter() {
                if x >= degree {
                    return Err(Error::PointOutOfRange { point: x + 1, degree });
                }
                if std::mem::replace(&mut seen[x], true) {
                    return Err(Error::MalformedPartition(format!("point {} repeated", x + 1)));
                }
            }
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::MalformedPartition(format!("point {} missing", missing + 1)));
        }
        classes.sort_unstable_by_key(|c| c[0]);
        Ok(PartitionOfV { degree, classes })
    }

    pub(crate) fn from_sorted_classes(degree: usize, classes: Vec<Vec<usize>>) -> Self {
        PartitionOfV { degree, classes }
    }

    pub fn from_labels(labels: &[usize]) -> Self {
        let mut uf = UnionFind::new(labels.len());
        let mut first = std::collections::HashMap::new();
        for (x, &l) in labels.iter().enumerate() {
            if let Some(&y) = first.get(&l) {
                uf.union(x, y);
            } else {
                first.insert(l, x);
            }
        }
        PartitionOfV::from_sorted_classes(labels.len(), uf.classes())
    }

    pub fn whole(degree: usize) -> Self {
        PartitionOfV {
            degree,
            classes: vec![(0..degree).collect()],
        }
    }

    pub fn singletons(degree: usize) -> Self {
        PartitionOfV {
            degree,
            classes: (0..degree).map(|x| vec![x]).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    /// Common class size, if all classes have the same size.
    pub fn class_size(&self) -> Option<usize> {
        let s = self.classes.first()?.len();
        self.classes.iter().all(|c| c.len() == s).then_some(s)
    }

    pub fn is_trivial(&self) -> bool {
        self.classes.len() <= 1 || self.classes.len() == self.degree
    }

    pub fn class_index_map(&self) -> Vec<usize> {
        let mut of = vec![0; self.degree];
        for (i, c) in self.classes.iter().enumerate() {
            for &x in c {
                of[x] = i;
            }
        }
        of
    }

    /// True iff every class of `self` lies inside a class of `coarser`.
    pub fn refines(&self, coarser: &PartitionOfV) -> bool {
        let of = coarser.class_index_map();
        self.classes.iter().all(|c| c.iter().all(|&x| of[x] == of[c[0]]))
    }

    /// Finest common coarsening.
    pub fn join(&self, other: &PartitionOfV) -> PartitionOfV {
        let mut uf = UnionFind::new(self.degree);
        for c in self.classes.iter().chain(other.classes.iter()) {
            for &x in &c[1..] {
                uf.union(c[0], x);
            }
        }
        PartitionOfV::from_sorted_classes(self.degree, uf.classes())
    }

    pub fn is_invariant_under(&self, group: &PermutationGroup) -> bool {
        let of = self.class_index_map();
        group.generators().iter().all(|g| {
            self.classes.iter().all(|c| {
                let target = of[g.apply(c[0])];
                c.iter().all(|&x| of[g.apply(x)] == target)
            })
        })
    }

    pub fn to_one_based(&self) -> Vec<Vec<usize>> {
        self.classes
            .iter()
            .map(|c| c.iter().map(|x| x + 1).collect())
            .collect()
    }

    pub fn from_one_based(degree: usize, classes: &[Vec<usize>]) -> Result<Self> {
        let zero = classes
            .iter()
            .map(|c| {
                c.iter()
                    .map(|&x| {
                        if x == 0 || x > degree {
                            Err(Error::PointOutOfRange { point: x, degree })
                        } else {
                            Ok(x - 1)
                        }
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        PartitionOfV::new(degree, zero)
    }
}

impl fmt::Display for PartitionOfV {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.classes.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            let pts: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "{{{}}}", pts.join(","))?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for PartitionOfV {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for PartitionOfV {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_one_based().serialize(s)
    }
}

impl<'de> Deserialize<'de> for PartitionOfV {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let classes = Vec::<Vec<usize>>::deserialize(d)?;
        let degree = classes.iter().map(|c| c.len()).sum();
        PartitionOfV::from_one_based(degree, &classes).map_err(serde::de::Error::custom)
    }
}

/// Smallest block system in which `a` and `b` share a class.
fn minimal_block_system(group: &PermutationGroup, a: usize, b: usize) -> PartitionOfV {
    let n = group.degree();
    let mut uf = UnionFind::new(n);
    uf.union(a, b);
    let mut pending = vec![(a, b)];
    while let Some((x, y)) = pending.pop() {
        for g in group.generators() {
            let (gx, gy) = (g.apply(x), g.apply(y));
            if uf.union(gx, gy) {
                pending.push((gx, gy));
            }
        }
    }
    PartitionOfV::from_sorted_classes(n, uf.classes())
}

/// All nontrivial block systems of a transitive group, sorted by class size
/// and then lexicographically.
pub fn block_systems(group: &PermutationGroup) -> Result<Vec<PartitionOfV>> {
    if !group.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let n = group.degree();
    let mut found: BTreeSet<PartitionOfV> = (1..n)
        .map(|v| minimal_block_system(group, 0, v))
        .collect();
    // Every block system is a join of minimal ones: close under joins.
    loop {
        let current: Vec<PartitionOfV> = found.iter().cloned().collect();
        let mut grew = false;
        for (i, a) in current.iter().enumerate() {
            for b in &current[i + 1..] {
                if found.insert(a.join(b)) {
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    let mut out: Vec<PartitionOfV> = found.into_iter().filter(|q| !q.is_trivial()).collect();
    out.sort_by(|a, b| {
        a.class_size()
            .cmp(&b.class_size())
            .then_with(|| a.classes.cmp(&b.classes))
    });
    Ok(out)
}

pub fn is_primitive(group: &PermutationGroup) -> bool {
    group.is_transitive() && block_systems(group).map(|b| b.is_empty()).unwrap_or(false)
}

/// The induced action of a group on the classes of an invariant partition.
#[derive(Debug, Clone)]
pub struct PartitionAction {
    pub partition: PartitionOfV,
    /// Acts on class indices in the partition's class order.
    pub image: PermutationGroup,
    /// Elements fixing every class setwise.
    pub kernel: PermutationGroup,
    pub faithful: bool,
}

pub fn partition_action(group: &PermutationGroup, partition: &PartitionOfV) -> Result<PartitionAction> {
    if partition.degree() != group.degree() {
        return Err(Error::DegreeMismatch {
            left: group.degree(),
            right: partition.degree(),
        });
    }
    if !partition.is_invariant_under(group) {
        return Err(Error::InvalidPartition);
    }
    let of = partition.class_index_map();
    let induce = |g: &Permutation| -> Permutation {
        let images: Vec<usize> = partition.classes().iter().map(|c| of[g.apply(c[0])]).collect();
        Permutation::from_images(&images).expect("invariant partition induces a bijection")
    };
    let mut image_elems: Vec<Permutation> = group.elements().iter().map(induce).collect();
    image_elems.sort_unstable();
    image_elems.dedup();
    let image_gens = group.generators().iter().map(induce).collect();
    let image = PermutationGroup::from_parts(partition.num_classes(), image_gens, image_elems);
    let kernel = group.subgroup_where(|g| induce(g).is_identity());
    let faithful = kernel.is_trivial();
    Ok(PartitionAction {
        partition: partition.clone(),
        image,
        kernel,
        faithful,
    })
}

/// Minimal-degree classification of a transitive group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MdClass {
    /// No nontrivial block system carries a faithful action.
    Md,
    /// Faithful on the blocks of `witness`, the coarsest such system.
    Nmd { witness: PartitionOfV },
}

impl MdClass {
    pub fn is_nmd(&self) -> bool {
        matches!(self, MdClass::Nmd { .. })
    }
}

pub fn classify_md(group: &PermutationGroup) -> Result<MdClass> {
    let systems = block_systems(group)?;
    let mut best: Option<PartitionOfV> = None;
    for q in systems {
        if partition_action(group, &q)?.faithful {
            let coarser = match &best {
                None => true,
                Some(b) => q.class_size() > b.class_size(),
            };
            if coarser {
                best = Some(q);
            }
        }
    }
    Ok(match best {
        Some(witness) => MdClass::Nmd { witness },
        None => MdClass::Md,
    })
}
