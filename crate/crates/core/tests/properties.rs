use std::collections::HashSet;

use korbit::closure2::{is_2_closed, two_closure, EngineLimits};
use korbit::korbit::{count_tuples, k_orbit, orb_k, orbits_on, project, KTuple, TuplePartition, TupleSet};
use korbit::perm::{block_systems, partition_action, Permutation, PermutationGroup, StabilizerTarget};
use proptest::prelude::*;

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(&v).unwrap())
}

fn group_of_degree(n: usize) -> impl Strategy<Value = PermutationGroup> {
    prop::collection::vec(perm(n), 1..=3).prop_map(move |gens| PermutationGroup::generate(n, gens, 720).unwrap())
}

fn group() -> impl Strategy<Value = PermutationGroup> {
    (2usize..=6).prop_flat_map(group_of_degree)
}

/// A group with a permutation and a k-orbit seed of the same degree.
fn group_perm_seed() -> impl Strategy<Value = (PermutationGroup, Permutation, KTuple)> {
    (3usize..=6).prop_flat_map(|n| {
        (group_of_degree(n), perm(n), perm(n), 1..=3usize)
            .prop_map(|(g, s, t, k)| (g, s, KTuple::new(&t.images().take(k).collect::<Vec<_>>()).unwrap()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn orbit_times_stabilizer_is_order(g in group()) {
        for x in 0..g.degree() {
            let stab = g.stabilizer(StabilizerTarget::Point(x));
            prop_assert_eq!(g.orbit_of(x).len() * stab.order(), g.order());
        }
    }

    #[test]
    fn image_times_kernel_is_order(g in group()) {
        let mut partitions = vec![g.orbits()];
        if g.is_transitive() {
            partitions.extend(block_systems(&g).unwrap());
        }
        for q in partitions {
            let act = partition_action(&g, &q).unwrap();
            prop_assert_eq!(act.image.order() * act.kernel.order(), g.order());
            prop_assert_eq!(act.faithful, act.kernel.order() == 1);
        }
    }

    #[test]
    fn k_orbits_partition_the_tuples(g in group(), k in 1usize..=3) {
        prop_assume!(k <= g.degree());
        let orbits = orb_k(&g, k, 1_000_000).unwrap();
        let mut seen = HashSet::new();
        for x in &orbits {
            prop_assert_eq!(g.order() % x.len(), 0);
            for t in x.tuples() {
                prop_assert!(seen.insert(t.clone()));
            }
            prop_assert_eq!(&k_orbit(&g, x.least().unwrap()).unwrap(), x);
        }
        prop_assert_eq!(seen.len() as u128, count_tuples(g.degree(), k));
    }

    #[test]
    fn projection_commutes_with_the_action((g, s, seed) in group_perm_seed(), mask in 1u8..8) {
        let x = k_orbit(&g, &seed).unwrap();
        let positions: Vec<usize> = (0..seed.arity()).filter(|i| mask & (1 << i) != 0).collect();
        prop_assume!(!positions.is_empty());
        let lhs = project(&x.tuples().act(&s), &positions).unwrap();
        let rhs = project(x.tuples(), &positions).unwrap().act(&s);
        prop_assert_eq!(lhs, rhs);
        // Orbits are invariant under their own group.
        for h in g.generators() {
            prop_assert_eq!(&x.tuples().act(h), x.tuples());
        }
    }

    #[test]
    fn meet_and_join_obey_lattice_laws((a, b) in (2usize..=5).prop_flat_map(|n| (group_of_degree(n), group_of_degree(n)))) {
        let carrier: TupleSet = korbit::korbit::all_tuples(a.degree(), 2).into_iter().collect();
        let p = orbits_on(&a, &carrier);
        let q = orbits_on(&b, &carrier);
        let meet = p.meet(&q).unwrap();
        let join = p.join(&q).unwrap();
        prop_assert_eq!(&meet, &q.meet(&p).unwrap());
        prop_assert_eq!(&join, &q.join(&p).unwrap());
        prop_assert_eq!(&p.meet(&p).unwrap(), &p);
        prop_assert_eq!(&p.join(&p).unwrap(), &p);
        prop_assert_eq!(&p.meet(&join).unwrap(), &p);
        prop_assert_eq!(&p.join(&meet).unwrap(), &p);
        prop_assert!(meet.refines(&p) && meet.refines(&q));
        prop_assert!(p.refines(&join) && q.refines(&join));
        prop_assert!(TuplePartition::singletons(&carrier).refines(&meet));
        prop_assert!(join.refines(&TuplePartition::whole(&carrier)));
    }

    #[test]
    fn two_closure_contains_and_is_idempotent(g in group()) {
        let lim = EngineLimits::default();
        let c = two_closure(&g, &lim).unwrap();
        prop_assert!(g.is_subgroup_of(&c));
        prop_assert_eq!(&two_closure(&c, &lim).unwrap(), &c);
        prop_assert_eq!(is_2_closed(&g, &lim).unwrap(), c.order() == g.order());
        // Same orbitals: the closure has exactly as many 2-orbits on pairs.
        let pairs = |h: &PermutationGroup| orb_k(h, 2, 1_000).unwrap().len();
        prop_assert_eq!(pairs(&g), pairs(&c));
    }
}
