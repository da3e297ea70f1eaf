//! Concatenations of pairwise disjoint, G-isomorphic automorphic tuples.

use std::collections::BTreeSet;

use serde_json::{json, Value};

use korbit::perm::{PermutationGroup, StabilizerTarget};

use super::{conclusion_gate, field, image_of, is_orbit, one_based, points_from, Outcome};
use crate::config::SuiteConfig;
use crate::context::GroupContext;
use crate::error::{LabError, LabResult};

fn images(group: &PermutationGroup, s: &[usize]) -> Vec<Vec<usize>> {
    let set: BTreeSet<Vec<usize>> = group.elements().iter().map(|g| image_of(g, s)).collect();
    set.into_iter().collect()
}

fn disjoint(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|p| !b.contains(p))
}

/// Least image of a family of point sets under `group`, members sorted.
fn canonical_family(group: &PermutationGroup, family: &[Vec<usize>]) -> Vec<Vec<usize>> {
    group
        .elements()
        .iter()
        .map(|g| {
            let mut f: Vec<Vec<usize>> = family.iter().map(|s| image_of(g, s)).collect();
            f.sort();
            f
        })
        .min()
        .expect("groups are nonempty")
}

pub(super) fn l8_instances(ctx: &GroupContext, limit: usize) -> LabResult<Vec<Value>> {
    let mut out = Vec::new();
    if !ctx.transitive {
        return Ok(out);
    }
    let n = ctx.degree();
    for s in ctx.automorphic_subsets()? {
        let k = s.points.len();
        if 2 * k > n {
            continue;
        }
        let mut seen = BTreeSet::new();
        for other in images(&ctx.group, &s.points) {
            if !disjoint(&s.points, &other) {
                continue;
            }
            // Pairs (S, S') and (S, hS') with h fixing S are equivalent.
            let canon = s
                .stabilizer
                .elements()
                .iter()
                .map(|h| image_of(h, &other))
                .min()
                .expect("nonempty");
            if seen.insert(canon.clone()) {
                out.push(json!({ "s": one_based(&s.points), "s2": one_based(&canon) }));
                if out.len() > limit {
                    return Ok(out);
                }
            }
        }
    }
    Ok(out)
}

/// Shared hypothesis of the concatenation checks: the members are pairwise
/// disjoint G-images of one automorphic set and the leftover points hold
/// no further image.
fn family_hypothesis(ctx: &GroupContext, family: &[Vec<usize>]) -> bool {
    let g = &ctx.group;
    let first = &family[0];
    if !is_orbit(&g.stabilizer(StabilizerTarget::PointSet(first)), first) {
        return false;
    }
    let orbit = images(g, first);
    if !family.iter().all(|s| orbit.binary_search(s).is_ok()) {
        return false;
    }
    let rest: Vec<usize> = (0..ctx.degree())
        .filter(|p| family.iter().all(|s| !s.contains(p)))
        .collect();
    !orbit.iter().any(|s| s.iter().all(|p| rest.contains(p)))
}

struct FamilyFacts {
    union_automorphic: bool,
    intersection: PermutationGroup,
    normalizer_order: usize,
    on_union_order: usize,
    transitive_on_union: bool,
    blocks_preserved: bool,
}

fn family_facts(ctx: &GroupContext, family: &[Vec<usize>]) -> LabResult<FamilyFacts> {
    let g = &ctx.group;
    let mut union: Vec<usize> = family.concat();
    union.sort_unstable();
    let union_automorphic = is_orbit(&g.stabilizer(StabilizerTarget::PointSet(&union)), &union);
    let intersection = g.subgroup_where(|h| family.iter().all(|s| image_of(h, s) == *s));
    // The normalizer is taken inside G.
    let normalizer = g.normalizer(&intersection)?;
    let on_union = normalizer.subgroup_where(|h| image_of(h, &union) == union);
    let transitive_on_union = is_orbit(&on_union, &union);
    let blocks_preserved = on_union
        .elements()
        .iter()
        .all(|h| family.iter().all(|s| family.contains(&image_of(h, s))));
    Ok(FamilyFacts {
        union_automorphic,
        intersection,
        normalizer_order: normalizer.order(),
        on_union_order: on_union.order(),
        transitive_on_union,
        blocks_preserved,
    })
}

fn validate_family(ctx: &GroupContext, family: &[Vec<usize>], min_len: usize) -> LabResult<()> {
    let k = family[0].len();
    let ok = ctx.transitive
        && family.len() >= min_len
        && k > 0
        && family.iter().all(|s| s.len() == k)
        && family.len() * k <= ctx.degree()
        && family
            .iter()
            .enumerate()
            .all(|(i, a)| family[i + 1..].iter().all(|b| disjoint(a, b)));
    if ok {
        Ok(())
    } else {
        Err(LabError::Params(format!(
            "need a transitive group and at least {min_len} disjoint point sets of one size"
        )))
    }
}

pub(super) fn l8(ctx: &GroupContext, params: &Value, cfg: &SuiteConfig) -> LabResult<Outcome> {
    let n = ctx.degree();
    let family = vec![points_from(field(params, "s")?, n)?, points_from(field(params, "s2")?, n)?];
    validate_family(ctx, &family, 2)?;
    if !family_hypothesis(ctx, &family) {
        return Ok(Outcome::vacuous());
    }
    if let Some(o) = conclusion_gate(cfg) {
        return Ok(o);
    }
    let f = family_facts(ctx, &family)?;
    let nontrivial = !f.intersection.is_trivial();
    Ok(Outcome::verdict(
        f.union_automorphic && nontrivial && f.transitive_on_union && f.blocks_preserved,
        json!({
            "concatenation_automorphic": f.union_automorphic,
            "intersection_nontrivial": nontrivial,
            "intersection_order": f.intersection.order(),
            "normalizer_order": f.normalizer_order,
            "normalizer_on_union_order": f.on_union_order,
            "transitive_on_union": f.transitive_on_union,
            "blocks_preserved": f.blocks_preserved,
        }),
    ))
}

pub(super) fn l9_instances(ctx: &GroupContext, limit: usize) -> LabResult<Vec<Value>> {
    let mut out = Vec::new();
    if !ctx.transitive {
        return Ok(out);
    }
    let n = ctx.degree();
    let mut seen = BTreeSet::new();
    for s in ctx.automorphic_subsets()? {
        let k = s.points.len();
        if 3 * k > n {
            continue;
        }
        let others: Vec<Vec<usize>> = images(&ctx.group, &s.points)
            .into_iter()
            .filter(|o| disjoint(o, &s.points))
            .collect();
        let mut chosen = Vec::new();
        let mut visit = |picked: &[usize]| -> bool {
            if picked.len() < 2 {
                return true;
            }
            let mut family = vec![s.points.clone()];
            family.extend(picked.iter().map(|&i| others[i].clone()));
            let canon = canonical_family(&ctx.group, &family);
            if seen.insert(canon.clone()) {
                let sets: Vec<Vec<usize>> = canon.iter().map(|c| one_based(c)).collect();
                out.push(json!({ "sets": sets }));
            }
            out.len() <= limit
        };
        if !extend(&others, 0, &mut chosen, &mut visit) {
            break;
        }
    }
    Ok(out)
}

/// Visits every increasing selection of pairwise disjoint members of
/// `sets`; stops early when `visit` returns false.
fn extend(sets: &[Vec<usize>], start: usize, chosen: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    for i in start..sets.len() {
        if chosen.iter().any(|&j| !disjoint(&sets[i], &sets[j])) {
            continue;
        }
        chosen.push(i);
        let go_on = visit(chosen) && extend(sets, i + 1, chosen, visit);
        chosen.pop();
        if !go_on {
            return false;
        }
    }
    true
}

pub(super) fn l9(ctx: &GroupContext, params: &Value, cfg: &SuiteConfig) -> LabResult<Outcome> {
    let n = ctx.degree();
    let raw = field(params, "sets")?
        .as_array()
        .ok_or_else(|| LabError::Params("sets must be a list".into()))?;
    let family = raw.iter().map(|s| points_from(s, n)).collect::<LabResult<Vec<_>>>()?;
    if family.is_empty() {
        return Err(LabError::Params("empty family".into()));
    }
    validate_family(ctx, &family, 3)?;
    if !family_hypothesis(ctx, &family) {
        return Ok(Outcome::vacuous());
    }
    if let Some(o) = conclusion_gate(cfg) {
        return Ok(o);
    }
    let f = family_facts(ctx, &family)?;
    Ok(Outcome::verdict(
        f.union_automorphic && f.transitive_on_union && f.blocks_preserved,
        json!({
            "union_automorphic": f.union_automorphic,
            "intersection_trivial": f.intersection.is_trivial(),
            "intersection_order": f.intersection.order(),
            "normalizer_order": f.normalizer_order,
            "normalizer_on_union_order": f.on_union_order,
            "transitive_on_union": f.transitive_on_union,
            "blocks_preserved": f.blocks_preserved,
        }),
    ))
}
