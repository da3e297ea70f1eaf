use std::collections::HashMap;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::perm::{Permutation, PermutationGroup};

/// A total coloring of `V × V`. Colors are numbered by first appearance in
/// row-major order, so two colorings are equal iff they induce the same
/// partition of pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ColoredDigraph {
    n: usize,
    colors: Vec<u32>,
    num_colors: usize,
}

impl ColoredDigraph {
    /// Builds a coloring from any labelling of pairs.
    pub fn from_fn<K: Eq + Hash>(n: usize, mut label: impl FnMut(usize, usize) -> K) -> Self {
        let mut ids: HashMap<K, u32> = HashMap::new();
        let mut colors = Vec::with_capacity(n * n);
        for u in 0..n {
            for v in 0..n {
                let next = ids.len() as u32;
                colors.push(*ids.entry(label(u, v)).or_insert(next));
            }
        }
        ColoredDigraph {
            n,
            colors,
            num_colors: ids.len(),
        }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn color(&self, u: usize, v: usize) -> u32 {
        self.colors[u * self.n + v]
    }

    pub fn num_colors(&self) -> usize {
        self.num_colors
    }

    /// Whether `p` preserves every pair color.
    pub fn is_automorphism(&self, p: &Permutation) -> bool {
        p.degree() == self.n
            && (0..self.n).all(|u| (0..self.n).all(|v| self.color(p.apply(u), p.apply(v)) == self.color(u, v)))
    }

    /// Colors used on the diagonal, sorted.
    pub fn diagonal_colors(&self) -> Vec<u32> {
        let mut c: Vec<u32> = (0..self.n).map(|v| self.color(v, v)).collect();
        c.sort_unstable();
        c.dedup();
        c
    }
}

/// The orbits of a group on ordered pairs, diagonal included.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitalPartition {
    coloring: ColoredDigraph,
}

impl OrbitalPartition {
    pub fn coloring(&self) -> &ColoredDigraph {
        &self.coloring
    }

    pub fn num_colors(&self) -> usize {
        self.coloring.num_colors()
    }

    pub fn color(&self, u: usize, v: usize) -> u32 {
        self.coloring.color(u, v)
    }
}

pub fn orbitals(group: &PermutationGroup) -> OrbitalPartition {
    let n = group.degree();
    let mut label = vec![u32::MAX; n * n];
    let mut next = 0u32;
    for u in 0..n {
        for v in 0..n {
            if label[u * n + v] != u32::MAX {
                continue;
            }
            for g in group.elements() {
                label[g.apply(u) * n + g.apply(v)] = next;
            }
            next += 1;
        }
    }
    OrbitalPartition {
        coloring: ColoredDigraph::from_fn(n, |u, v| label[u * n + v]),
    }
}
