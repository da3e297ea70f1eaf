use crate::error::{Error, Result};
use crate::perm::{Permutation, PermutationGroup};

/// Fixed-size bit set over element indices of a [`GroupTable`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ElementSet {
    words: Vec<u64>,
}

impl ElementSet {
    pub fn empty(len: usize) -> Self {
        ElementSet {
            words: vec![0; len.div_ceil(64)],
        }
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    /// Returns true if `i` was newly inserted.
    #[inline]
    pub fn insert(&mut self, i: usize) -> bool {
        let w = &mut self.words[i / 64];
        let bit = 1u64 << (i % 64);
        let fresh = *w & bit == 0;
        *w |= bit;
        fresh
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        ElementSet {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }
}

/// Multiplication and inverse tables over a group's canonical element order.
pub struct GroupTable {
    group: PermutationGroup,
    mul: Vec<u32>,
    inv: Vec<u32>,
}

impl GroupTable {
    /// Builds the full Cayley table; refuses groups larger than `cap`.
    pub fn new(group: &PermutationGroup, cap: usize) -> Result<Self> {
        let n = group.order();
        if n > cap {
            return Err(Error::LatticeTooLarge { order: n, cap });
        }
        let elems = group.elements();
        let index = |p: &Permutation| group.index_of(p).expect("group is closed") as u32;
        let mut mul = Vec::with_capacity(n * n);
        for a in elems {
            for b in elems {
                mul.push(index(&a.compose_unchecked(b)));
            }
        }
        let inv = elems.iter().map(|a| index(&a.inverse())).collect();
        Ok(GroupTable {
            group: group.clone(),
            mul,
            inv,
        })
    }

    pub fn group(&self) -> &PermutationGroup {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// The identity is always index 0 in canonical order.
    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order() + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `x a x^-1`.
    #[inline]
    pub fn conj(&self, a: usize, x: usize) -> usize {
        self.mul(self.mul(x, a), self.inv(x))
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.group.elements()[i]
    }

    pub fn to_group(&self, set: &ElementSet, generators: &[usize]) -> PermutationGroup {
        let elements: Vec<Permutation> = set.iter().map(|i| self.element(i).clone()).collect();
        let gens = generators.iter().map(|&i| self.element(i).clone()).collect();
        PermutationGroup::from_parts(self.group.degree(), gens, elements)
    }

    pub fn element_set_of(&self, sub: &PermutationGroup) -> Result<ElementSet> {
        let mut set = ElementSet::empty(self.order());
        for g in sub.elements() {
            set.insert(self.group.index_of(g).ok_or(Error::NotContained)?);
        }
        Ok(set)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::close_group;

    #[test]
    fn element_set_ops() {
        let mut s = ElementSet::empty(130);
        assert!(s.insert(3));
        assert!(!s.insert(3));
        s.insert(129);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![3, 129]);
        assert_eq!(s.count(), 2);
        let mut t = ElementSet::empty(130);
        t.insert(3);
        assert!(t.is_subset(&s) && !s.is_subset(&t));
        assert_eq!(s.intersection(&t), t);
    }

    #[test]
    fn table_matches_composition() {
        let g = close_group(
            4,
            &[
                Permutation::parse("(1 2)", 4).unwrap(),
                Permutation::parse("(1 2 3 4)", 4).unwrap(),
            ],
            100,
        )
        .unwrap();
        let t = GroupTable::new(&g, 100).unwrap();
        for a in 0..t.order() {
            assert_eq!(t.mul(a, t.inv(a)), t.identity());
            for b in 0..t.order() {
                assert_eq!(t.element(t.mul(a, b)), &(t.element(a) * t.element(b)));
            }
        }
        assert!(matches!(GroupTable::new(&g, 10), Err(Error::LatticeTooLarge { order: 24, cap: 10 })));
    }
}
