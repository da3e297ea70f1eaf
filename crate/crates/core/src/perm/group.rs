use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::korbit::TupleSet;
use crate::perm::{PartitionOfV, Permutation};
use crate::util::UnionFind;

/// Default element cap for closures: |S8| / 2.
pub const DEFAULT_ELEMENT_CAP: usize = 20_160;

/// A permutation group stored with its complete, lexicographically sorted
/// element list. Cloning is cheap; the element list is shared.
#[derive(Clone)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Arc<[Permutation]>,
}

/// What `stabilizer` should fix. Points are 0-based.
#[derive(Debug, Clone, Copy)]
pub enum StabilizerTarget<'a> {
    Point(usize),
    /// Pointwise stabilizer of every coordinate.
    Tuple(&'a [usize]),
    /// Setwise stabilizer.
    PointSet(&'a [usize]),
    /// `{g : g·Y = Y}` for a set of tuples under the left action.
    TupleSet(&'a TupleSet),
}

/// Breadth-first closure of `generators`, failing once more than `cap`
/// elements have been found.
pub fn close_group(
    degree: usize,
    generators: &[Permutation],
    cap: usize,
) -> Result<PermutationGroup> {
    PermutationGroup::generate(degree, generators.to_vec(), cap)
}

impl PermutationGroup {
    pub fn generate(degree: usize, generators: Vec<Permutation>, cap: usize) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        let identity = Permutation::identity(degree);
        let mut seen: HashSet<Permutation> = HashSet::new();
        seen.insert(identity.clone());
        let mut queue = VecDeque::from([identity]);
        while let Some(e) = queue.pop_front() {
            for g in &generators {
                let next = g.compose_unchecked(&e);
                if !seen.contains(&next) {
                    if seen.len() >= cap {
                        return Err(Error::GroupTooLarge {
                            cap,
                            partial: seen.len(),
                        });
                    }
                    seen.insert(next.clone());
                    queue.push_back(next);
                }
            }
        }
        let mut elements: Vec<Permutation> = seen.into_iter().collect();
        elements.sort_unstable();
        Ok(PermutationGroup {
            degree,
            generators,
            elements: elements.into(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermutationGroup {
            degree,
            generators: Vec::new(),
            elements: vec![Permutation::identity(degree)].into(),
        }
    }

    /// Wraps an element list already known to be a group. `elements` must be
    /// sorted; a small generating set is chosen greedily.
    pub(crate) fn from_sorted_elements(degree: usize, elements: Vec<Permutation>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        let generators = greedy_generators(degree, &elements);
        PermutationGroup {
            degree,
            generators,
            elements: elements.into(),
        }
    }

    pub(crate) fn from_parts(
        degree: usize,
        generators: Vec<Permutation>,
        elements: Vec<Permutation>,
    ) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        PermutationGroup {
            degree,
            generators,
            elements: elements.into(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Elements in canonical (lexicographic image-array) order; the identity is first.
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.index_of(p).is_some()
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.elements.binary_search(p).ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    /// Greedy small generating set in canonical element order.
    pub fn small_generating_set(&self) -> Vec<Permutation> {
        greedy_generators(self.degree, &self.elements)
    }

    pub fn orbit_of(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[point] = true;
        let mut out = vec![point];
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            for g in &self.generators {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out.sort_unstable();
        out
    }

    pub fn orbits(&self) -> PartitionOfV {
        let mut uf = UnionFind::new(self.degree);
        for g in &self.generators {
            for x in 0..self.degree {
                uf.union(x, g.apply(x));
            }
        }
        PartitionOfV::from_sorted_classes(self.degree, uf.classes())
    }

    pub fn is_transitive(&self) -> bool {
        self.degree > 0 && self.orbit_of(0).len() == self.degree
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generators;
        gens.iter()
            .enumerate()
            .all(|(i, a)| gens[i + 1..].iter().all(|b| a * b == b * a))
    }

    /// Elements satisfying `keep`; the caller guarantees they form a subgroup.
    pub fn subgroup_where(&self, keep: impl Fn(&Permutation) -> bool) -> PermutationGroup {
        let elements: Vec<Permutation> = self.elements.iter().filter(|g| keep(g)).cloned().collect();
        PermutationGroup::from_sorted_elements(self.degree, elements)
    }

    pub fn stabilizer(&self, target: StabilizerTarget<'_>) -> PermutationGroup {
        match target {
            StabilizerTarget::Point(x) => self.subgroup_where(|g| g.apply(x) == x),
            StabilizerTarget::Tuple(xs) => self.subgroup_where(|g| xs.iter().all(|&x| g.apply(x) == x)),
            StabilizerTarget::PointSet(xs) => {
                let mut inside = vec![false; self.degree];
                for &x in xs {
                    inside[x] = true;
                }
                self.subgroup_where(|g| xs.iter().all(|&x| inside[g.apply(x)]))
            }
            StabilizerTarget::TupleSet(ys) => {
                self.subgroup_where(|g| ys.iter().all(|t| ys.contains(&t.act(g))))
            }
        }
    }

    pub fn is_subgroup_of(&self, ambient: &PermutationGroup) -> bool {
        self.degree == ambient.degree && self.elements.iter().all(|g| ambient.contains(g))
    }

    /// `{g in self : g A g^-1 = A}`.
    pub fn normalizer(&self, sub: &PermutationGroup) -> Result<PermutationGroup> {
        if !sub.is_subgroup_of(self) {
            return Err(Error::NotContained);
        }
        let gens = sub.generators();
        Ok(self.subgroup_where(|g| gens.iter().all(|h| sub.contains(&h.conjugate_by(g)))))
    }

    pub fn is_normal_subgroup(&self, sub: &PermutationGroup) -> bool {
        sub.is_subgroup_of(self)
            && self
                .generators
                .iter()
                .all(|g| sub.generators().iter().all(|h| sub.contains(&h.conjugate_by(g))))
    }

    /// Setwise image `x G x^-1` as a new group.
    pub fn conjugate(&self, x: &Permutation) -> PermutationGroup {
        let mut elements: Vec<Permutation> = self.elements.iter().map(|g| g.conjugate_by(x)).collect();
        elements.sort_unstable();
        PermutationGroup {
            degree: self.degree,
            generators: self.generators.iter().map(|g| g.conjugate_by(x)).collect(),
            elements: elements.into(),
        }
    }

    /// Finds `x` in `Sym(n)` with `x G x^-1 = H`, if one exists.
    ///
    /// Picks the element of `G` whose cycle type has the smallest centralizer
    /// in `Sym(n)`, enumerates every `x` carrying it onto an element of `H` of
    /// the same cycle type, and tests the remaining generators.
    pub fn conjugator_in_symmetric(&self, other: &PermutationGroup) -> Option<Permutation> {
        if self.degree != other.degree || self.order() != other.order() {
            return None;
        }
        if self.cycle_type_profile() != other.cycle_type_profile() {
            return None;
        }
        if self.is_trivial() {
            return Some(Permutation::identity(self.degree));
        }
        let anchor = self
            .elements
            .iter()
            .filter(|g| !g.is_identity())
            .min_by_key(|g| (centralizer_size(g), (*g).clone()))?;
        let anchor_type = anchor.cycle_type();
        for h in other.elements.iter().filter(|h| h.cycle_type() == anchor_type) {
            let mut found = None;
            for_each_conjugator(anchor, h, &mut |x| {
                if self
                    .generators
                    .iter()
                    .all(|g| other.contains(&g.conjugate_by(x)))
                {
                    found = Some(x.clone());
                    true
                } else {
                    false
                }
            });
            if found.is_some() {
                return found;
            }
        }
        None
    }

    fn cycle_type_profile(&self) -> Vec<crate::perm::CycleType> {
        let mut v: Vec<_> = self.elements.iter().map(|g| g.cycle_type()).collect();
        v.sort_unstable();
        v
    }
}

impl PartialEq for PermutationGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}

impl Eq for PermutationGroup {}

impl fmt::Debug for PermutationGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PermutationGroup(degree {}, order {}, gens {:?})",
            self.degree,
            self.order(),
            self.generators
        )
    }
}

fn greedy_generators(degree: usize, elements: &[Permutation]) -> Vec<Permutation> {
    let mut gens: Vec<Permutation> = Vec::new();
    let mut current: HashSet<Permutation> = HashSet::from([Permutation::identity(degree)]);
    for e in elements {
        if current.len() == elements.len() {
            break;
        }
        if current.contains(e) {
            continue;
        }
        gens.push(e.clone());
        // The new subgroup is closed under right multiplication by the generators.
        let mut queue: Vec<Permutation> = current.iter().cloned().collect();
        while let Some(x) = queue.pop() {
            for g in &gens {
                let y = x.compose_unchecked(g);
                if current.insert(y.clone()) {
                    queue.push(y);
                }
            }
        }
    }
    gens
}

fn centralizer_size(g: &Permutation) -> u128 {
    g.cycle_type()
        .lengths()
        .map(|(l, m)| (l as u128).pow(m as u32) * (1..=m as u128).product::<u128>())
        .product()
}

/// Calls `visit` with every `x` such that `x g x^-1 = h`, stopping early
/// when `visit` returns true. `g` and `h` must share a cycle type.
fn for_each_conjugator(g: &Permutation, h: &Permutation, visit: &mut dyn FnMut(&Permutation) -> bool) {
    let n = g.degree();
    let gc = g.cycles();
    let hc = h.cycles();
    let mut x = vec![usize::MAX; n];
    let mut used = vec![false; hc.len()];

    fn rec(
        i: usize,
        gc: &[Vec<usize>],
        hc: &[Vec<usize>],
        used: &mut [bool],
        x: &mut Vec<usize>,
        visit: &mut dyn FnMut(&Permutation) -> bool,
    ) -> bool {
        if i == gc.len() {
            let p = Permutation::from_images(x).expect("conjugator is a bijection");
            return visit(&p);
        }
        let len = gc[i].len();
        for j in 0..hc.len() {
            if used[j] || hc[j].len() != len {
                continue;
            }
            used[j] = true;
            for shift in 0..len {
                for (t, &a) in gc[i].iter().enumerate() {
                    x[a] = hc[j][(t + shift) % len];
                }
                if rec(i + 1, gc, hc, used, x, visit) {
                    return true;
                }
                if len == 1 {
                    break;
                }
            }
            used[j] = false;
        }
        false
    }

    rec(0, &gc, &hc, &mut used, &mut x, visit);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(images: &[usize]) -> Permutation {
        Permutation::from_images_one_based(images).unwrap()
    }

    fn gen(degree: usize, gens: &[&[usize]]) -> PermutationGroup {
        close_group(degree, &gens.iter().map(|g| p(g)).collect::<Vec<_>>(), DEFAULT_ELEMENT_CAP).unwrap()
    }

    #[test]
    fn closure_orders() {
        assert_eq!(gen(4, &[&[2, 3, 4, 1]]).order(), 4);
        assert_eq!(gen(3, &[]).order(), 1);
        assert_eq!(gen(5, &[&[2, 1, 3, 4, 5], &[2, 3, 4, 5, 1]]).order(), 120);
    }

    #[test]
    fn closure_respects_cap() {
        let err = close_group(5, &[p(&[2, 1, 3, 4, 5]), p(&[2, 3, 4, 5, 1])], 50).unwrap_err();
        assert!(matches!(err, Error::GroupTooLarge { cap: 50, .. }));
    }

    #[test]
    fn elements_are_canonically_ordered() {
        let c4 = gen(4, &[&[2, 3, 4, 1]]);
        let imgs: Vec<Vec<usize>> = c4.elements().iter().map(|g| g.images_one_based()).collect();
        assert_eq!(
            imgs,
            vec![vec![1, 2, 3, 4], vec![2, 3, 4, 1], vec![3, 4, 1, 2], vec![4, 1, 2, 3]]
        );
    }

    #[test]
    fn orbits_examples() {
        assert_eq!(gen(4, &[&[2, 3, 4, 1]]).orbits().classes(), &[vec![0, 1, 2, 3]]);
        assert_eq!(gen(3, &[]).orbits().classes(), &[vec![0], vec![1], vec![2]]);
        assert_eq!(
            gen(4, &[&[2, 1, 3, 4]]).orbits().classes(),
            &[vec![0, 1], vec![2], vec![3]]
        );
    }

    #[test]
    fn stabilizer_examples() {
        let s3 = gen(3, &[&[2, 1, 3], &[2, 3, 1]]);
        let st = s3.stabilizer(StabilizerTarget::Point(0));
        assert_eq!(st.order(), 2);
        assert!(st.contains(&p(&[1, 3, 2])));
        assert!(s3.stabilizer(StabilizerTarget::Tuple(&[0, 1])).is_trivial());

        let c4 = gen(4, &[&[2, 3, 4, 1]]);
        let st = c4.stabilizer(StabilizerTarget::PointSet(&[0, 2]));
        assert_eq!(st.elements(), &[Permutation::identity(4), p(&[3, 4, 1, 2])]);
    }

    #[test]
    fn normalizer_examples() {
        let s3 = gen(3, &[&[2, 1, 3], &[2, 3, 1]]);
        let t = gen(3, &[&[2, 1, 3]]);
        assert_eq!(s3.normalizer(&t).unwrap(), t);
        let a3 = gen(3, &[&[2, 3, 1]]);
        assert_eq!(s3.normalizer(&a3).unwrap(), s3);
        assert_eq!(s3.normalizer(&s3).unwrap(), s3);
        let c4 = gen(4, &[&[2, 3, 4, 1]]);
        let foreign = gen(4, &[&[2, 1, 3, 4]]);
        assert_eq!(c4.normalizer(&foreign), Err(Error::NotContained));
    }

    #[test]
    fn conjugacy_in_symmetric_group() {
        let a = gen(4, &[&[2, 1, 3, 4]]);
        let b = gen(4, &[&[1, 2, 4, 3]]);
        let x = a.conjugator_in_symmetric(&b).unwrap();
        assert_eq!(a.conjugate(&x), b);
        let v4 = gen(4, &[&[2, 1, 4, 3], &[3, 4, 1, 2]]);
        let c4 = gen(4, &[&[2, 3, 4, 1]]);
        assert!(v4.conjugator_in_symmetric(&c4).is_none());
        // Intransitive Klein group vs regular Klein group: same order, different cycle types.
        let v4_intrans = gen(4, &[&[2, 1, 3, 4], &[1, 2, 4, 3]]);
        assert!(v4.conjugator_in_symmetric(&v4_intrans).is_none());
    }

    #[test]
    fn small_generating_set_regenerates() {
        let s4 = gen(4, &[&[2, 1, 3, 4], &[2, 3, 4, 1]]);
        let gens = s4.small_generating_set();
        assert!(gens.len() <= 3);
        assert_eq!(close_group(4, &gens, 100).unwrap(), s4);
    }
}
