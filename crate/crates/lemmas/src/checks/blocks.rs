//! Checks on block systems, faithful block actions and regular elements.

use serde_json::{json, Value};

use korbit::perm::{partition_action, MdClass, PartitionOfV, StabilizerTarget};
use korbit::regular::{find_fpf_prime_power, find_regular};
use korbit::util::{is_prime, prime_power_base};

use super::{conclusion_gate, field, group_json, partition_from, usize_field, Outcome};
use crate::config::SuiteConfig;
use crate::context::GroupContext;
use crate::error::{LabError, LabResult};

pub(super) fn transitive_instances(ctx: &GroupContext) -> Vec<Value> {
    if ctx.transitive {
        vec![json!({})]
    } else {
        Vec::new()
    }
}

pub(super) fn partition_instances(ctx: &GroupContext) -> Vec<Value> {
    ctx.blocks().iter().map(|q| json!({ "partition": q })).collect()
}

pub(super) fn l12_instances(ctx: &GroupContext) -> Vec<Value> {
    ctx.blocks()
        .iter()
        .flat_map(|q| (0..q.num_classes()).map(move |b| json!({ "partition": q, "block": b + 1 })))
        .collect()
}

pub(super) fn s33_instances(ctx: &GroupContext) -> Vec<Value> {
    ctx.blocks()
        .iter()
        .filter(|q| q.class_size().is_some_and(is_prime))
        .map(|q| json!({ "partition": q }))
        .collect()
}

/// The `partition` parameter, which must be a nontrivial block system.
fn block_system(ctx: &GroupContext, params: &Value) -> LabResult<PartitionOfV> {
    let q = partition_from(field(params, "partition")?, ctx.degree())?;
    if !ctx.transitive || q.is_trivial() || !q.is_invariant_under(&ctx.group) {
        return Err(LabError::Params("partition is not a nontrivial block system".into()));
    }
    Ok(q)
}

fn faithful(ctx: &GroupContext, q: &PartitionOfV) -> LabResult<bool> {
    Ok(partition_action(&ctx.group, q)?.faithful)
}

fn is_prime_power(m: usize) -> bool {
    prime_power_base(m).is_some()
}

pub(super) fn p3(ctx: &GroupContext, params: &Value, cfg: &SuiteConfig) -> LabResult<Outcome> {
    let q = block_system(ctx, params)?;
    if let Some(o) = conclusion_gate(cfg) {
        return Ok(o);
    }
    let kernel = partition_action(&ctx.group, &q)?.kernel;
    let normal = ctx.group.is_normal_subgroup(&kernel);
    Ok(Outcome::verdict(
        normal,
        json!({ "kernel": group_json(&kernel), "normal": normal }),
    ))
}

fn nmd_gate(ctx: &GroupContext) -> LabResult<Option<PartitionOfV>> {
    if !ctx.transitive {
        return Ok(None);
    }
    Ok(match ctx.md_class()? {
        MdClass::Nmd { witness } => Some(witness.clone()),
        MdClass::Md => None,
    })
}

pub(super) fn l11(ctx: &GroupContext, _params: &Value, cfg: &SuiteConfig) -> LabResult<Outcome> {
    let Some(blocks) = nmd_gate(ctx)? else {
        return Ok(Outcome::vacuous());
    };
    if let Some(o) = conclusion_gate(cfg) {
        return Ok(o);
    }
    let closed = ctx.two_closed()?;
    Ok(Outcome::verdict(
        closed,
        json!({
            "faithful_blocks": blocks,
            "two_closed": closed,
            "group_order": ctx.group.order(),
            "closure_order": ctx.closure_order(),
        }),
    ))
}

pub(super) fn l12(ctx: &GroupContext, params: &Value, cfg: &SuiteConfig) -> LabResult<Outcome> {
    let q = block_system(ctx, params)?;
    let b = usize_field(params, "block")?;
    if b == 0 || b > q.num_classes() {
        return Err(LabError::Params(format!("block {b} outside 1..={}", q.num_classes())));
    }
    if !ctx.is_nmd()? || !faithful(ctx, &q)? {
        return Ok(Outcome::vacuous());
    }
    if let Some(o) = conclusion_gate(cfg) {
        return Ok(o);
    }
    let block = &q.classes()[b - 1];
    let fixer = ctx.group.stabilizer(StabilizerTarget::Tuple(block));
    Ok(Outcome::verdict(
        fixer.is_trivial(),
        json!({ "pointwise_stabilizer": group_json(&fixer) }),
    ))
}

/// Block systems refining `q` (including `q` itself) with their class sizes.
fn refinements<'a>(ctx: &'a GroupContext, q: &'a PartitionOfV) -> impl Iterator<Item = (&'a PartitionOfV, usize)> + 'a {
    ctx.blocks()
        .iter()
        .filter(move |r| r.refines(q))
        .map(|r| (r, r.class_size().expect("block systems are uniform")))
}

pub(super) fn l13(ctx: &GroupContext, params: &Value, cfg: &SuiteConfig) -> LabResult<Outcome> {
    let q = block_system(ctx, params)?;
    let size = q.class_size().expect("block systems are uniform");
    if !faithful(ctx, &q)? || is_prime(size) {
        return Ok(Outcome::vacuous());
    }
    if let Some(o) = conclusion_gate(cfg) {
        return Ok(o);
    }
    // Refinements of a faithful system are faithful: their kernels are smaller.
    let prime_power = refinements(ctx, &q).find(|(_, s)| is_prime_power(*s)).map(|(r, _)| r);
    let prime = refinements(ctx, &q).find(|(_, s)| is_prime(*s)).map(|(r, _)| r);
    Ok(Outcome::verdict(
        prime_power.is_some(),
        json!({
            "block_size": size,
            "prime_power_refinement": prime_power,
            "prime_refinement": prime,
        }),
    ))
}

pub(super) fn l14(ctx: &GroupContext, params: &Value, cfg: &SuiteConfig) -> LabResult<Outcome> {
    let q = block_system(ctx, params)?;
    let size = q.class_size().expect("block systems are uniform");
    if is_prime_power(size) {
        return Ok(Outcome::vacuous());
    }
    if let Some(o) = conclusion_gate(cfg) {
        return Ok(o);
    }
    let q_faithful = faithful(ctx, &q)?;
    let mut carried = None;
    let mut preserved = None;
    for (r, s) in refinements(ctx, &q) {
        if !is_prime_power(s) {
            continue;
        }
        let r_faithful = faithful(ctx, r)?;
        if carried.is_none() && (!q_faithful || r_faithful) {
            carried = Some(r.clone());
        }
        if preserved.is_none() && r_faithful == q_faithful {
            preserved = Some(r.clone());
        }
    }
    Ok(Outcome::verdict(
        preserved.is_some(),
        json!({
            "block_size": size,
            "faithful": q_faithful,
            "status_preserving_refinement": preserved,
            "faithfulness_carrying_refinement": carried,
        }),
    ))
}

pub(super) fn s31(ctx: &GroupContext, _params: &Value, cfg: &SuiteConfig) -> LabResult<Outcome> {
    if nmd_gate(ctx)?.is_none() {
        return Ok(Outcome::vacuous());
    }
    if let Some(o) = conclusion_gate(cfg) {
        return Ok(o);
    }
    let report = find_regular(&ctx.group, false);
    Ok(Outcome::verdict(
        report.found,
        json!({ "element": report.witness, "cycle_len": report.witness_cycle_len }),
    ))
}

pub(super) fn s33(ctx: &GroupContext, params: &Value, cfg: &SuiteConfig) -> LabResult<Outcome> {
    let q = block_system(ctx, params)?;
    let p = q.class_size().expect("block systems are uniform");
    if !is_prime(p) {
        return Err(LabError::Params("block size is not prime".into()));
    }
    if ctx.is_nmd()? || !ctx.two_closed()? {
        return Ok(Outcome::vacuous());
    }
    if let Some(o) = conclusion_gate(cfg) {
        return Ok(o);
    }
    let kernel = partition_action(&ctx.group, &q)?.kernel;
    let witness = kernel
        .elements()
        .iter()
        .find(|h| h.order() == p && h.fixed_points() == 0 && h.cycle_type().is_uniform());
    Ok(Outcome::verdict(
        witness.is_some(),
        json!({ "prime": p, "kernel_order": kernel.order(), "element": witness }),
    ))
}

pub(super) fn fks(ctx: &GroupContext, _params: &Value, cfg: &SuiteConfig) -> LabResult<Outcome> {
    if !ctx.transitive {
        return Ok(Outcome::vacuous());
    }
    if let Some(o) = conclusion_gate(cfg) {
        return Ok(o);
    }
    let report = find_fpf_prime_power(&ctx.group)?;
    Ok(Outcome::verdict(
        report.found,
        json!({
            "element": report.witness,
            "order": report.witness.as_ref().map(|w| w.order()),
        }),
    ))
}
