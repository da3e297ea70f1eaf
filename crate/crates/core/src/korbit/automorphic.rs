use std::collections::HashMap;

use crate::closure2::{automorphisms_where, ColoredDigraph, EngineLimits};
use crate::error::{Error, Result};
use crate::korbit::{KOrbit, KTuple, TupleSet};
use crate::perm::{Permutation, PermutationGroup, StabilizerTarget, SubgroupLattice};

/// Largest degree for which all point subsets are enumerated.
pub const MAX_SUBSET_DEGREE: usize = 20;

/// The automorphism group of a k-set, acting on the full point set and
/// fixing every point outside the ground set `∪Co(X)`.
#[derive(Clone, Debug)]
pub struct KSetAutomorphisms {
    pub ground: Vec<usize>,
    pub group: PermutationGroup,
    pub transitive_on_set: bool,
}

/// Every permutation of `∪Co(X)` mapping `X` onto itself.
///
/// The engine runs on a pair coloring of the ground set recording, for each
/// ordered pair of points, which pairs of positions they occupy together in
/// some tuple. Any automorphism of `X` preserves that coloring; leaves are
/// then filtered on `X` itself.
pub fn aut_kset(x: &KOrbit, limits: &EngineLimits) -> Result<KSetAutomorphisms> {
    let ground = x.ground();
    let m = ground.len();
    if m > limits.max_points {
        return Err(Error::EngineCap {
            points: m,
            cap: limits.max_points,
        });
    }
    let local: HashMap<usize, usize> = ground.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut profile: Vec<Vec<(u8, u8)>> = vec![Vec::new(); m * m];
    let local_tuples: Vec<Vec<usize>> = x
        .tuples()
        .iter()
        .map(|t| t.points().map(|p| local[&p]).collect())
        .collect();
    for t in &local_tuples {
        for (i, &u) in t.iter().enumerate() {
            for (j, &v) in t.iter().enumerate() {
                profile[u * m + v].push((i as u8, j as u8));
            }
        }
    }
    for p in &mut profile {
        p.sort_unstable();
        p.dedup();
    }
    let coloring = ColoredDigraph::from_fn(m, |u, v| profile[u * m + v].clone());
    let local_set: TupleSet = local_tuples
        .iter()
        .map(|t| KTuple::new(t).expect("distinct"))
        .collect();
    let keep = |p: &Permutation| local_set.iter().all(|t| local_set.contains(&t.act(p)));
    let local_group = automorphisms_where(&coloring, limits, &keep)?;

    let n = x.degree();
    let mut lifted: Vec<Permutation> = local_group
        .elements()
        .iter()
        .map(|p| {
            let mut images: Vec<usize> = (0..n).collect();
            for (i, &g) in ground.iter().enumerate() {
                images[g] = ground[p.apply(i)];
            }
            Permutation::from_images(&images).expect("lift of a bijection")
        })
        .collect();
    lifted.sort_unstable();
    let group = PermutationGroup::from_sorted_elements(n, lifted);
    let transitive_on_set = match x.least() {
        None => true,
        Some(t) => {
            let orbit: TupleSet = group.elements().iter().map(|g| t.act(g)).collect();
            orbit.len() == x.len()
        }
    };
    Ok(KSetAutomorphisms {
        ground,
        group,
        transitive_on_set,
    })
}

/// Whether a point set is an orbit of some subgroup, with the witness.
#[derive(Clone, Debug)]
pub struct AutomorphicStatus {
    pub automorphic: bool,
    pub witness: Option<PermutationGroup>,
    /// False when a capped search ran out before settling the question.
    pub complete: bool,
}

/// `S` is an orbit of some subgroup of `G` iff it is an orbit of its own
/// setwise stabilizer, so the stabilizer is the canonical witness.
pub fn automorphic_status(group: &PermutationGroup, points: &[usize]) -> AutomorphicStatus {
    let stab = group.stabilizer(StabilizerTarget::PointSet(points));
    let automorphic = is_orbit_of(&stab, points);
    AutomorphicStatus {
        automorphic,
        witness: automorphic.then_some(stab),
        complete: true,
    }
}

/// As [`automorphic_status`], but only subgroups of order at most
/// `order_cap` may serve as witnesses.
pub fn automorphic_status_capped(
    group: &PermutationGroup,
    points: &[usize],
    order_cap: usize,
    lattice_cap: usize,
) -> Result<AutomorphicStatus> {
    let stab = group.stabilizer(StabilizerTarget::PointSet(points));
    if !is_orbit_of(&stab, points) {
        return Ok(AutomorphicStatus {
            automorphic: false,
            witness: None,
            complete: true,
        });
    }
    if stab.order() <= order_cap {
        return Ok(AutomorphicStatus {
            automorphic: true,
            witness: Some(stab),
            complete: true,
        });
    }
    let lattice = SubgroupLattice::compute(&stab, order_cap, lattice_cap)?;
    let witness = lattice
        .representatives()
        .into_iter()
        .find(|h| is_orbit_of(h, points));
    Ok(AutomorphicStatus {
        automorphic: witness.is_some(),
        complete: witness.is_some() || lattice.complete(),
        witness,
    })
}

pub fn is_automorphic_tuple(group: &PermutationGroup, alpha: &KTuple) -> bool {
    automorphic_status(group, &alpha.coordinates()).automorphic
}

fn is_orbit_of(group: &PermutationGroup, points: &[usize]) -> bool {
    match points.first() {
        None => false,
        Some(&p) => {
            let mut orbit = group.orbit_of(p);
            orbit.sort_unstable();
            let mut s = points.to_vec();
            s.sort_unstable();
            orbit == s
        }
    }
}

/// An automorphic subset together with its setwise stabilizer.
#[derive(Clone, Debug)]
pub struct AutomorphicSubset {
    pub points: Vec<usize>,
    pub stabilizer: PermutationGroup,
}

/// One representative per G-orbit of nonempty automorphic subsets of `V`,
/// ordered by size and then lexicographically. Each representative is the
/// lexicographically least member of its G-orbit.
pub fn automorphic_subsets(group: &PermutationGroup) -> Result<Vec<AutomorphicSubset>> {
    let n = group.degree();
    if n > MAX_SUBSET_DEGREE {
        return Err(Error::EngineCap {
            points: n,
            cap: MAX_SUBSET_DEGREE,
        });
    }
    let total = 1usize << n;
    let mut seen = vec![false; total];
    let mut out = Vec::new();
    let mut by_size: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for mask in 1..total {
        by_size[(mask as u32).count_ones() as usize].push(mask);
    }
    for masks in by_size {
        let mut reps: Vec<Vec<usize>> = Vec::new();
        for mask in masks {
            if seen[mask] {
                continue;
            }
            for g in group.elements() {
                seen[image_mask(g, mask)] = true;
            }
            reps.push((0..n).filter(|&p| mask >> p & 1 == 1).collect());
        }
        reps.sort();
        for points in reps {
            let status = automorphic_status(group, &points);
            if let Some(stabilizer) = status.witness {
                out.push(AutomorphicSubset { points, stabilizer });
            }
        }
    }
    Ok(out)
}

fn image_mask(g: &Permutation, mask: usize) -> usize {
    let mut out = 0;
    let mut m = mask;
    while m != 0 {
        let p = m.trailing_zeros() as usize;
        out |= 1 << g.apply(p);
        m &= m - 1;
    }
    out
}

/// Sizes of subgroup orbits. Every such size divides `|G|`.
pub fn automorphic_numbers(group: &PermutationGroup) -> Result<Vec<usize>> {
    let mut sizes: Vec<usize> = automorphic_subsets(group)?
        .into_iter()
        .map(|s| s.points.len())
        .collect();
    sizes.dedup();
    Ok(sizes)
}

/// Whether a tuple set is an orbit of some subgroup of `G` (a suborbit).
pub fn is_suborbit(group: &PermutationGroup, y: &TupleSet) -> bool {
    let Some(first) = y.first() else {
        return false;
    };
    let stab = group.stabilizer(StabilizerTarget::TupleSet(y));
    let orbit: TupleSet = stab.elements().iter().map(|g| first.act(g)).collect();
    &orbit == y
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::korbit::k_orbit;
    use crate::perm::close_group;

    fn group(n: usize, gens: &[&str]) -> PermutationGroup {
        let g: Vec<_> = gens.iter().map(|s| Permutation::parse(s, n).unwrap()).collect();
        close_group(n, &g, 1000).unwrap()
    }

    fn t(p: &[usize]) -> KTuple {
        KTuple::from_one_based(p).unwrap()
    }

    #[test]
    fn aut_of_small_ksets() {
        let lim = EngineLimits::default();
        let s3 = group(3, &["(1 2)", "(1 2 3)"]);
        let all_pairs = k_orbit(&s3, &t(&[1, 2])).unwrap();
        let a = aut_kset(&all_pairs, &lim).unwrap();
        assert_eq!(a.group.order(), 6);
        assert!(a.transitive_on_set);

        let single = KOrbit::from_tuples(3, 2, TupleSet::singleton(t(&[1, 2]))).unwrap();
        let a = aut_kset(&single, &lim).unwrap();
        assert_eq!(a.ground, vec![0, 1]);
        assert_eq!(a.group.order(), 1);

        let c4 = group(4, &["[2,3,4,1]"]);
        let cyc = k_orbit(&c4, &t(&[1, 2])).unwrap();
        let a = aut_kset(&cyc, &lim).unwrap();
        assert_eq!(a.group, c4);
        assert!(a.transitive_on_set);
    }

    #[test]
    fn automorphic_points() {
        let c4 = group(4, &["[2,3,4,1]"]);
        let st = automorphic_status(&c4, &[0, 2]);
        assert!(st.automorphic);
        assert_eq!(st.witness.unwrap().elements()[1], Permutation::parse("[3,4,1,2]", 4).unwrap());
        assert!(!automorphic_status(&c4, &[0, 1]).automorphic);
        assert!(is_automorphic_tuple(&c4, &t(&[1, 2, 3, 4])));

        let s3 = group(3, &["(1 2)", "(1 2 3)"]);
        let capped = automorphic_status_capped(&s3, &[0, 1], 1, 100).unwrap();
        assert!(!capped.automorphic);
        assert!(!capped.complete);
        assert!(automorphic_status_capped(&s3, &[0, 1], 2, 100).unwrap().automorphic);
    }

    #[test]
    fn numbers() {
        assert_eq!(automorphic_numbers(&group(4, &["[2,3,4,1]"])).unwrap(), vec![1, 2, 4]);
        assert_eq!(automorphic_numbers(&group(3, &["(1 2)", "(1 2 3)"])).unwrap(), vec![1, 2, 3]);
        assert_eq!(automorphic_numbers(&PermutationGroup::trivial(3)).unwrap(), vec![1]);
    }

    #[test]
    fn suborbits() {
        let c4 = group(4, &["[2,3,4,1]"]);
        let opp = k_orbit(&c4, &t(&[1, 3])).unwrap();
        let half: TupleSet = [t(&[1, 3]), t(&[3, 1])].into_iter().collect();
        assert!(is_suborbit(&c4, &half));
        assert!(is_suborbit(&c4, opp.tuples()));
        let odd: TupleSet = [t(&[1, 3]), t(&[2, 4])].into_iter().collect();
        assert!(!is_suborbit(&c4, &odd));
    }
}
