//! Checks on k-orbits, their suborbits and automorphism groups.

use std::collections::BTreeSet;

use serde_json::{json, Value};

use korbit::korbit::{
    aut_kset, coherence, coset_partitions, is_elementary_coherent, is_suborbit, k_orbit, orbits_on, Coherence, KOrbit,
    KTuple, TupleSet,
};
use korbit::perm::{Permutation, PermutationGroup, StabilizerTarget, SubgroupLattice};

use super::{conclusion_gate, field, group_json, is_orbit, one_based, points_from, tuple_from, tuples_from, usize_field, Outcome};
use crate::config::SuiteConfig;
use crate::context::GroupContext;
use crate::error::{LabError, LabResult};

fn k_values(n: usize) -> impl Iterator<Item = usize> {
    [2, 3].into_iter().filter(move |&k| k < n)
}

fn translates(group: &PermutationGroup, y: &TupleSet) -> Vec<TupleSet> {
    let mut out: Vec<TupleSet> = group.elements().iter().map(|g| y.act(g)).collect();
    out.sort();
    out.dedup();
    out
}

/// Proper subgroup orbits inside `x`, one per G-translation class, each the
/// least of its translates. Every suborbit is a translate of an orbit of a
/// lattice representative, so representatives suffice.
fn canonical_suborbits(ctx: &GroupContext, x: &KOrbit) -> LabResult<Vec<TupleSet>> {
    let lattice = ctx.lattice()?;
    let mut found = BTreeSet::new();
    for h in lattice.representatives() {
        for y in orbits_on(&h, x.tuples()).classes() {
            if y.len() < x.len() {
                let least = translates(&ctx.group, y).into_iter().next().expect("nonempty");
                found.insert(least);
            }
        }
    }
    Ok(found.into_iter().collect())
}

fn orbit_param(ctx: &GroupContext, params: &Value) -> LabResult<KOrbit> {
    let k = usize_field(params, "k")?;
    let seed = tuple_from(field(params, "orbit")?, ctx.degree())?;
    if seed.arity() != k {
        return Err(LabError::Params(format!("orbit seed has arity {}, expected {k}", seed.arity())));
    }
    Ok(k_orbit(&ctx.group, &seed)?)
}

pub(super) fn korbit_instances(ctx: &GroupContext) -> LabResult<Vec<Value>> {
    let mut out = Vec::new();
    for k in k_values(ctx.degree()) {
        for x in ctx.orbits(k)? {
            let seed = x.least().expect("orbits are nonempty");
            out.push(json!({ "k": k, "orbit": seed.to_one_based() }));
        }
    }
    Ok(out)
}

pub(super) fn p1_instances(ctx: &GroupContext, limit: usize) -> LabResult<Vec<Value>> {
    if !ctx.transitive {
        return Ok(Vec::new());
    }
    let n = ctx.degree();
    Ok(ctx
        .automorphic_subsets()?
        .iter()
        .filter(|s| s.points.len() >= 2 && s.points.len() < n)
        .take(limit + 1)
        .map(|s| json!({ "points": one_based(&s.points) }))
        .collect())
}

pub(super) fn p1(ctx: &GroupContext, params: &Value, cfg: &SuiteConfig) -> LabResult<Outcome> {
    let n = ctx.degree();
    let s = points_from(field(params, "points")?, n)?;
    if !ctx.transitive || s.len() < 2 || s.len() >= n {
        return Err(LabError::Params("needs a transitive group and 2 <= |S| < n".into()));
    }
    let stab = ctx.group.stabilizer(StabilizerTarget::PointSet(&s));
    if !is_orbit(&stab, &s) {
        return Ok(Outcome::vacuous());
    }
    if let Some(o) = conclusion_gate(cfg) {
        return Ok(o);
    }
    let alpha = KTuple::new(&s)?;
    let fixer = stab.stabilizer(StabilizerTarget::Tuple(&s));
    let x = k_orbit(&stab, &alpha)?;
    let aut = aut_kset(&x, ctx.engine())?.group;
    let normal = stab.is_normal_subgroup(&fixer);
    let order_match = aut.order() * fixer.order() == stab.order();
    // The map g -> g|S has kernel `fixer`; its image should be all of Aut(X).
    let mut restricted: Vec<Permutation> = stab
        .elements()
        .iter()
        .map(|g| {
            let mut images: Vec<usize> = (0..n).collect();
            for &p in &s {
                images[p] = g.apply(p);
            }
            Permutation::from_images(&images).expect("g preserves S")
        })
        .collect();
    restricted.sort_unstable();
    restricted.dedup();
    let restriction_is_aut = restricted.as_slice() == aut.elements();
    Ok(Outcome::verdict(
        normal && order_match && restriction_is_aut,
        json!({
            "stabilizer_order": stab.order(),
            "tuple_stabilizer_order": fixer.order(),
            "aut_order": aut.order(),
            "orbit_size": x.len(),
            "normal": normal,
            "order_match": order_match,
            "restriction_is_aut": restriction_is_aut,
        }),
    ))
}

pub(super) fn p2_instances(ctx: &GroupContext, limit: usize) -> LabResult<Vec<Value>> {
    let mut out = Vec::new();
    if !ctx.transitive {
        return Ok(out);
    }
    for k in k_values(ctx.degree()) {
        for x in ctx.orbits(k)? {
            for y in canonical_suborbits(ctx, x)? {
                out.push(json!({ "k": k, "y": y.to_one_based() }));
                if out.len() > limit {
                    return Ok(out);
                }
            }
        }
    }
    Ok(out)
}

fn proper_suborbit(ctx: &GroupContext, params: &Value, key: &str) -> LabResult<TupleSet> {
    let y = tuples_from(field(params, key)?, ctx.degree())?;
    let k = usize_field(params, "k")?;
    if y.is_empty() || y.iter().any(|t| t.arity() != k) {
        return Err(LabError::Params(format!("{key:?} must be a nonempty set of {k}-tuples")));
    }
    if !is_suborbit(&ctx.group, &y) {
        return Err(LabError::Params(format!("{key:?} is not a suborbit")));
    }
    Ok(y)
}

pub(super) fn p2(ctx: &GroupContext, params: &Value, cfg: &SuiteConfig) -> LabResult<Outcome> {
    let y = proper_suborbit(ctx, params, "y")?;
    let pair = coset_partitions(&ctx.group, &y)?;
    if y.len() >= pair.orbit.len() {
        return Err(LabError::Params("suborbit is not proper".into()));
    }
    if !pair.l_equals_r {
        return Ok(Outcome::vacuous());
    }
    if let Some(o) = conclusion_gate(cfg) {
        return Ok(o);
    }
    let normal = ctx.group.is_normal_subgroup(&pair.stabilizer);
    Ok(Outcome::verdict(
        normal,
        json!({ "stabilizer": group_json(&pair.stabilizer), "normal": normal }),
    ))
}

pub(super) fn p4_instances(ctx: &GroupContext, limit: usize) -> LabResult<Vec<Value>> {
    let mut out = Vec::new();
    if !ctx.transitive {
        return Ok(out);
    }
    for k in k_values(ctx.degree()) {
        for x in ctx.orbits(k)? {
            let canon = canonical_suborbits(ctx, x)?;
            let all: BTreeSet<TupleSet> = canon.iter().flat_map(|y| translates(&ctx.group, y)).collect();
            for y in &canon {
                // (Y, Z) and (Y, hZ) with h fixing Y are equivalent.
                let stab = ctx.group.stabilizer(StabilizerTarget::TupleSet(y));
                let partners: BTreeSet<TupleSet> = all
                    .iter()
                    .filter(|z| *z != y && !y.is_disjoint(z))
                    .map(|z| translates(&stab, z).into_iter().next().expect("nonempty"))
                    .collect();
                for z in partners {
                    out.push(json!({ "k": k, "y": y.to_one_based(), "z": z.to_one_based() }));
                    if out.len() > limit {
                        return Ok(out);
                    }
                }
            }
        }
    }
    Ok(out)
}

pub(super) fn p4(ctx: &GroupContext, params: &Value, cfg: &SuiteConfig) -> LabResult<Outcome> {
    let g = &ctx.group;
    let y = proper_suborbit(ctx, params, "y")?;
    let z = proper_suborbit(ctx, params, "z")?;
    let py = coset_partitions(g, &y)?;
    let pz = coset_partitions(g, &z)?;
    if py.orbit != pz.orbit || y == z {
        return Err(LabError::Params("y and z must be distinct suborbits of one k-orbit".into()));
    }
    let t = y.intersection(&z);
    let (Some(ly), Some(lz)) = (py.left_partition(), pz.left_partition()) else {
        return Ok(Outcome::vacuous());
    };
    if t.is_empty() {
        return Ok(Outcome::vacuous());
    }
    if let Some(o) = conclusion_gate(cfg) {
        return Ok(o);
    }
    let meet = ly.meet(&lz)?;
    let join = ly.join(&lz)?;
    let u = join
        .classes()
        .iter()
        .find(|c| y.is_subset(c))
        .cloned()
        .expect("join classes cover the orbit");
    let meet_matches = meet.classes() == translates(g, &t).as_slice();
    let join_matches = join.classes() == translates(g, &u).as_slice();
    let st = g.stabilizer(StabilizerTarget::TupleSet(&t));
    let su = g.stabilizer(StabilizerTarget::TupleSet(&u));
    let both = py.stabilizer.subgroup_where(|h| pz.stabilizer.contains(h));
    let stabilizer_meet_matches = st == both;
    let gens: Vec<Permutation> = py
        .stabilizer
        .generators()
        .iter()
        .chain(pz.stabilizer.generators())
        .cloned()
        .collect();
    let generated = PermutationGroup::generate(g.degree(), gens, g.order())?;
    let stabilizer_join_matches = su == generated;
    Ok(Outcome::verdict(
        meet_matches && join_matches && stabilizer_meet_matches && stabilizer_join_matches,
        json!({
            "intersection_size": t.len(),
            "join_class_size": u.len(),
            "meet_matches": meet_matches,
            "join_matches": join_matches,
            "stabilizer_meet_matches": stabilizer_meet_matches,
            "stabilizer_join_matches": stabilizer_join_matches,
        }),
    ))
}

pub(super) fn l5(ctx: &GroupContext, params: &Value, cfg: &SuiteConfig) -> LabResult<Outcome> {
    let x = orbit_param(ctx, params)?;
    let aut = aut_kset(&x, ctx.engine())?.group;
    let lattice = match SubgroupLattice::compute(&aut, aut.order(), ctx.subgroup_cap()) {
        Ok(l) => l,
        Err(e) if e.is_resource_cap() => return Ok(Outcome::unknown(format!("suborbits of Aut(X) not enumerated: {e}"))),
        Err(e) => return Err(e.into()),
    };
    for h in lattice.representatives() {
        for y in orbits_on(&h, x.tuples()).classes() {
            // Aut(X) is transitive on X, so its translates of Y cover X and
            // are disjoint exactly when their sizes add up.
            if translates(&aut, y).len() * y.len() != x.len() {
                return Ok(Outcome::vacuous());
            }
        }
    }
    if let Some(o) = conclusion_gate(cfg) {
        return Ok(o);
    }
    Ok(Outcome::verdict(
        aut.order() == x.len(),
        json!({ "aut": group_json(&aut), "orbit_size": x.len() }),
    ))
}

pub(super) fn p6(ctx: &GroupContext, params: &Value, cfg: &SuiteConfig) -> LabResult<Outcome> {
    let x = orbit_param(ctx, params)?;
    let verdict = coherence(&x);
    if verdict.kind != Coherence::Incoherent || x.ground().len() != x.degree() {
        return Ok(Outcome::vacuous());
    }
    let aut = aut_kset(&x, ctx.engine())?;
    if !aut.transitive_on_set {
        return Ok(Outcome::vacuous());
    }
    if let Some(o) = conclusion_gate(cfg) {
        return Ok(o);
    }
    let components: Vec<Vec<usize>> = verdict.components.iter().map(|c| one_based(c)).collect();
    Ok(Outcome::verdict(
        aut.group.order() > x.len(),
        json!({
            "aut_order": aut.group.order(),
            "orbit_size": x.len(),
            "components": components,
        }),
    ))
}

pub(super) fn l7(ctx: &GroupContext, params: &Value, cfg: &SuiteConfig) -> LabResult<Outcome> {
    let x = orbit_param(ctx, params)?;
    if coherence(&x).kind != Coherence::Coherent {
        return Ok(Outcome::vacuous());
    }
    let aut = aut_kset(&x, ctx.engine())?.group;
    if !is_elementary_coherent(&x, &aut)? {
        return Ok(Outcome::vacuous());
    }
    if let Some(o) = conclusion_gate(cfg) {
        return Ok(o);
    }
    Ok(Outcome::verdict(
        aut.order() == x.len(),
        json!({ "aut": group_json(&aut), "orbit_size": x.len() }),
    ))
}
