//! Checks whose hypothesis asks for a primitive group.

use serde_json::{json, Value};

use korbit::closure2::is_2_closed;
use korbit::perm::{block_systems, classify_md, PermutationGroup, SubgroupLattice};

use super::{conclusion_gate, field, image_of, one_based, permutations_from, Outcome};
use crate::config::SuiteConfig;
use crate::context::GroupContext;
use crate::error::{LabError, LabResult};

pub(super) fn primitive_instances(ctx: &GroupContext) -> Vec<Value> {
    if ctx.is_primitive() {
        vec![json!({})]
    } else {
        Vec::new()
    }
}

fn require_primitive(ctx: &GroupContext) -> LabResult<()> {
    if ctx.is_primitive() {
        Ok(())
    } else {
        Err(LabError::Params("group is not primitive".into()))
    }
}

/// Exact cover of `0..n` by the bitmasks in `sets`, classes ordered by
/// their least point.
fn exact_cover(n: usize, sets: &[u32]) -> Option<Vec<u32>> {
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut by_low: Vec<Vec<u32>> = vec![Vec::new(); n];
    for &m in sets {
        by_low[m.trailing_zeros() as usize].push(m);
    }
    fn go(covered: u32, full: u32, by_low: &[Vec<u32>], chosen: &mut Vec<u32>) -> bool {
        if covered == full {
            return true;
        }
        let p = (!covered).trailing_zeros() as usize;
        // Any set covering p in a disjoint cover has p as its least free point,
        // hence as its least point.
        for &m in &by_low[p] {
            if m & covered == 0 {
                chosen.push(m);
                if go(covered | m, full, by_low, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = Vec::new();
    go(0, full, &by_low, &mut chosen).then_some(chosen)
}

fn mask_points(m: u32) -> Vec<usize> {
    (0..32).filter(|p| m >> p & 1 == 1).collect()
}

pub(super) fn t10(ctx: &GroupContext, _params: &Value, cfg: &SuiteConfig) -> LabResult<Outcome> {
    require_primitive(ctx)?;
    if !ctx.primitive_under(cfg.convention) {
        return Ok(Outcome::vacuous());
    }
    if let Some(o) = conclusion_gate(cfg) {
        return Ok(o);
    }
    let n = ctx.degree();
    let subsets = ctx.automorphic_subsets()?;
    let k = subsets
        .iter()
        .map(|s| s.points.len())
        .filter(|&s| s < n && n % s == 0)
        .max()
        .expect("singletons are automorphic");
    let classes: Vec<Vec<u32>> = subsets
        .iter()
        .filter(|s| s.points.len() == k)
        .map(|s| {
            let mut masks: Vec<u32> = ctx
                .group
                .elements()
                .iter()
                .map(|g| image_of(g, &s.points).iter().fold(0u32, |m, &p| m | 1 << p))
                .collect();
            masks.sort_unstable();
            masks.dedup();
            masks
        })
        .collect();
    let mut found = classes
        .iter()
        .find_map(|c| exact_cover(n, c))
        .map(|cover| ("one-orbit", cover));
    if found.is_none() {
        let all: Vec<u32> = classes.concat();
        found = exact_cover(n, &all).map(|cover| ("automorphic", cover));
    }
    let witness = match &found {
        Some((reading, cover)) => {
            let partition: Vec<Vec<usize>> = cover.iter().map(|&m| one_based(&mask_points(m))).collect();
            json!({ "k": k, "reading": reading, "partition": partition })
        }
        None => json!({ "k": k, "reading": null, "partition": null }),
    };
    Ok(Outcome::verdict(found.is_some(), witness))
}

/// Transitive, imprimitive, and faithful on none of its block systems.
fn imprimitive_md(a: &PermutationGroup) -> LabResult<bool> {
    if !a.is_transitive() || block_systems(a)?.is_empty() {
        return Ok(false);
    }
    Ok(!classify_md(a)?.is_nmd())
}

fn is_maximal_imprimitive_md(ctx: &GroupContext, lattice: &SubgroupLattice, a: &PermutationGroup) -> LabResult<bool> {
    if a.order() >= ctx.group.order() || !imprimitive_md(a)? {
        return Ok(false);
    }
    let a_set = lattice.table().element_set_of(a)?;
    for b in lattice.all() {
        if b.order > a.order() && b.order < ctx.group.order() && a_set.is_subset(&b.elements) && imprimitive_md(&lattice.to_group(b))? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub(super) fn l15_instances(ctx: &GroupContext) -> LabResult<Vec<Value>> {
    if !ctx.is_primitive() {
        return Ok(Vec::new());
    }
    let lattice = ctx.lattice()?;
    let mut out = Vec::new();
    for class in lattice.classes() {
        let a = lattice.to_group(&class.representative);
        if is_maximal_imprimitive_md(ctx, lattice, &a)? {
            out.push(json!({ "subgroup": a.small_generating_set() }));
        }
    }
    Ok(out)
}

pub(super) fn l15(ctx: &GroupContext, params: &Value, cfg: &SuiteConfig) -> LabResult<Outcome> {
    require_primitive(ctx)?;
    let gens = permutations_from(field(params, "subgroup")?)?;
    let a = PermutationGroup::generate(ctx.degree(), gens, ctx.group.order())?;
    if !a.is_subgroup_of(&ctx.group) {
        return Err(LabError::Params("subgroup is not contained in the group".into()));
    }
    if !ctx.primitive_under(cfg.convention) || !is_maximal_imprimitive_md(ctx, ctx.lattice()?, &a)? {
        return Ok(Outcome::vacuous());
    }
    if let Some(o) = conclusion_gate(cfg) {
        return Ok(o);
    }
    let group_closed = ctx.two_closed()?;
    let subgroup_closed = is_2_closed(&a, ctx.engine())?;
    Ok(Outcome::verdict(
        group_closed == subgroup_closed,
        json!({
            "group_two_closed": group_closed,
            "subgroup_two_closed": subgroup_closed,
            "subgroup_order": a.order(),
            "subgroup_blocks": block_systems(&a)?.first(),
        }),
    ))
}

pub(super) fn l16(ctx: &GroupContext, _params: &Value, cfg: &SuiteConfig) -> LabResult<Outcome> {
    require_primitive(ctx)?;
    if !ctx.primitive_under(cfg.convention) {
        return Ok(Outcome::vacuous());
    }
    let lattice = ctx.lattice()?;
    for h in lattice.representatives() {
        if h.order() < ctx.group.order() && h.is_transitive() && !block_systems(&h)?.is_empty() {
            return Ok(Outcome::vacuous());
        }
    }
    if let Some(o) = conclusion_gate(cfg) {
        return Ok(o);
    }
    let closed = ctx.two_closed()?;
    Ok(Outcome::verdict(
        !closed,
        json!({
            "two_closed": closed,
            "group_order": ctx.group.order(),
            "closure_order": ctx.closure_order(),
        }),
    ))
}
