//! Backtracking search for the automorphisms of a pair coloring.
//!
//! The search individualizes one point of the domain at a time along a fixed
//! path and tries every admissible image for it. After each choice both
//! sides are refined in lock-step: a point's new cell is determined by its
//! old cell together with the multiset of `(color(v,w), color(w,v), cell(w))`
//! over all `w`. Branches whose refined cell profiles differ are cut. Every
//! discrete leaf is verified against the coloring before it is accepted, so
//! refinement only affects speed.

use crate::closure2::ColoredDigraph;
use crate::error::{Error, Result};
use crate::perm::{Permutation, PermutationGroup, DEFAULT_ELEMENT_CAP};

/// Largest point count accepted with an extended budget.
pub const EXTENDED_MAX_POINTS: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EngineLimits {
    pub max_points: usize,
    /// Largest automorphism group that may be enumerated.
    pub max_elements: usize,
    /// Search-tree nodes visited before giving up.
    pub max_nodes: usize,
}

impl Default for EngineLimits {
    fn default() -> Self {
        EngineLimits {
            max_points: 16,
            max_elements: DEFAULT_ELEMENT_CAP,
            max_nodes: 5_000_000,
        }
    }
}

impl EngineLimits {
    pub fn extended() -> Self {
        EngineLimits {
            max_points: EXTENDED_MAX_POINTS,
            ..Default::default()
        }
    }
}

/// All color-preserving permutations.
pub fn automorphisms(c: &ColoredDigraph, limits: &EngineLimits) -> Result<PermutationGroup> {
    automorphisms_where(c, limits, &|_| true)
}

/// Color-preserving permutations that also satisfy `keep`. `keep` must
/// itself define a subgroup (for instance, stabilizing some structure), or
/// the result is not a group.
pub fn automorphisms_where(
    c: &ColoredDigraph,
    limits: &EngineLimits,
    keep: &dyn Fn(&Permutation) -> bool,
) -> Result<PermutationGroup> {
    let n = c.degree();
    if n > limits.max_points {
        return Err(Error::EngineCap {
            points: n,
            cap: limits.max_points,
        });
    }
    let mut search = Search {
        c,
        limits,
        keep,
        nodes: 0,
        found: Vec::new(),
    };
    let start: Vec<u32> = (0..n).map(|v| c.color(v, v)).collect();
    let mut left = start.clone();
    let mut right = start;
    if refine_pair(c, &mut left, &mut right) {
        search.descend(&left, &right)?;
    }
    let mut found = search.found;
    found.sort_unstable();
    Ok(PermutationGroup::from_sorted_elements(n, found))
}

struct Search<'a> {
    c: &'a ColoredDigraph,
    limits: &'a EngineLimits,
    keep: &'a dyn Fn(&Permutation) -> bool,
    nodes: usize,
    found: Vec<Permutation>,
}

impl Search<'_> {
    fn descend(&mut self, left: &[u32], right: &[u32]) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.limits.max_nodes {
            return Err(Error::SearchBudget {
                nodes: self.limits.max_nodes,
            });
        }
        let n = left.len();
        let cells = cell_count(left);
        if cells == n {
            let mut images = vec![0usize; n];
            for v in 0..n {
                images[v] = right.iter().position(|&r| r == left[v]).expect("profiles match");
            }
            let p = Permutation::from_images(&images).expect("bijection between discrete cells");
            if self.c.is_automorphism(&p) && (self.keep)(&p) {
                if self.found.len() >= self.limits.max_elements {
                    return Err(Error::GroupTooLarge {
                        cap: self.limits.max_elements,
                        partial: self.found.len(),
                    });
                }
                self.found.push(p);
            }
            return Ok(());
        }
        let target = first_nonsingleton_cell(left);
        let v = left.iter().position(|&l| l == target).expect("cell is nonempty");
        let fresh = cells as u32;
        for w in 0..n {
            if right[w] != target {
                continue;
            }
            let mut l = left.to_vec();
            let mut r = right.to_vec();
            l[v] = fresh;
            r[w] = fresh;
            if refine_pair(self.c, &mut l, &mut r) {
                self.descend(&l, &r)?;
            }
        }
        Ok(())
    }
}

fn cell_count(labels: &[u32]) -> usize {
    let mut l = labels.to_vec();
    l.sort_unstable();
    l.dedup();
    l.len()
}

/// Smallest label whose cell has at least two points.
fn first_nonsingleton_cell(labels: &[u32]) -> u32 {
    let mut sorted = labels.to_vec();
    sorted.sort_unstable();
    sorted
        .windows(2)
        .find(|w| w[0] == w[1])
        .map(|w| w[0])
        .expect("partition is not discrete")
}

fn signature(c: &ColoredDigraph, labels: &[u32], v: usize) -> Vec<u32> {
    let n = labels.len();
    let mut triples: Vec<[u32; 3]> = (0..n).map(|w| [c.color(v, w), c.color(w, v), labels[w]]).collect();
    triples.sort_unstable();
    let mut sig = Vec::with_capacity(1 + 3 * n);
    sig.push(labels[v]);
    sig.extend(triples.into_iter().flatten());
    sig
}

/// Refines both labelings to a common fixpoint. Returns false as soon as the
/// two sides stop matching.
fn refine_pair(c: &ColoredDigraph, left: &mut [u32], right: &mut [u32]) -> bool {
    let n = left.len();
    let mut cells = cell_count(left);
    loop {
        let ls: Vec<Vec<u32>> = (0..n).map(|v| signature(c, left, v)).collect();
        let rs: Vec<Vec<u32>> = (0..n).map(|v| signature(c, right, v)).collect();
        let mut lsorted = ls.clone();
        let mut rsorted = rs.clone();
        lsorted.sort_unstable();
        rsorted.sort_unstable();
        if lsorted != rsorted {
            return false;
        }
        lsorted.dedup();
        let rank = |s: &Vec<u32>| lsorted.binary_search(s).expect("signature present") as u32;
        for v in 0..n {
            left[v] = rank(&ls[v]);
            right[v] = rank(&rs[v]);
        }
        if lsorted.len() == cells {
            return true;
        }
        cells = lsorted.len();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> ColoredDigraph {
        ColoredDigraph::from_fn(n, |u, v| {
            if u == v {
                0
            } else if (u + 1) % n == v || (v + 1) % n == u {
                1
            } else {
                2
            }
        })
    }

    #[test]
    fn square_has_dihedral_symmetry() {
        assert_eq!(automorphisms(&cycle(4), &EngineLimits::default()).unwrap().order(), 8);
        assert_eq!(automorphisms(&cycle(6), &EngineLimits::default()).unwrap().order(), 12);
    }

    #[test]
    fn uniform_coloring_gives_symmetric_group() {
        let c = ColoredDigraph::from_fn(5, |u, v| u == v);
        assert_eq!(automorphisms(&c, &EngineLimits::default()).unwrap().order(), 120);
    }

    #[test]
    fn limits_are_enforced() {
        let c = ColoredDigraph::from_fn(17, |u, v| u == v);
        assert_eq!(
            automorphisms(&c, &EngineLimits::default()),
            Err(Error::EngineCap { points: 17, cap: 16 })
        );
        let small = EngineLimits {
            max_elements: 10,
            ..Default::default()
        };
        assert!(matches!(
            automorphisms(&ColoredDigraph::from_fn(5, |u, v| u == v), &small),
            Err(Error::GroupTooLarge { cap: 10, .. })
        ));
    }

    #[test]
    fn filter_restricts_result() {
        let keep = |p: &Permutation| p.apply(0) == 0;
        let g = automorphisms_where(&cycle(4), &EngineLimits::default(), &keep).unwrap();
        assert_eq!(g.order(), 2);
    }
}
