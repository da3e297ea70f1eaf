//! One module per family of checks. Each check provides an instance
//! generator and an evaluator; the evaluator reads everything it needs from
//! the instance parameters so that rows can be re-evaluated in isolation.

mod blocks;
mod concat;
mod orbits;
mod primitive;

use serde_json::{json, Value};

use korbit::korbit::{KTuple, TupleSet};
use korbit::perm::{PartitionOfV, Permutation, PermutationGroup};

use crate::config::SuiteConfig;
use crate::context::GroupContext;
use crate::descriptor::CheckId;
use crate::error::{LabError, LabResult};
use crate::row::Status;

#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Outcome {
    pub status: Status,
    pub witness: Value,
}

impl Outcome {
    pub fn vacuous() -> Self {
        Outcome {
            status: Status::Vacuous,
            witness: Value::Null,
        }
    }

    pub fn verdict(holds: bool, witness: Value) -> Self {
        Outcome {
            status: if holds { Status::Pass } else { Status::Fail },
            witness,
        }
    }

    pub fn skipped(reason: impl Into<String>) -> Self {
        Outcome {
            status: Status::Skipped,
            witness: json!({ "reason": reason.into() }),
        }
    }

    pub fn unknown(reason: impl Into<String>) -> Self {
        Outcome {
            status: Status::Unknown,
            witness: json!({ "reason": reason.into() }),
        }
    }
}

/// Returns the SKIPPED outcome used when conclusions are switched off.
pub(crate) fn conclusion_gate(cfg: &SuiteConfig) -> Option<Outcome> {
    (!cfg.evaluate_conclusions).then(|| Outcome::skipped("conclusion not evaluated"))
}

/// Instance parameters for `check` on one group, independent of the
/// configuration. At most `limit + 1` are
/// returned so the caller can tell that the list was cut.
pub(crate) fn instances(check: CheckId, ctx: &GroupContext, limit: usize) -> LabResult<Vec<Value>> {
    let mut out = match check {
        CheckId::P1 => orbits::p1_instances(ctx, limit)?,
        CheckId::P2 => orbits::p2_instances(ctx, limit)?,
        CheckId::P4 => orbits::p4_instances(ctx, limit)?,
        CheckId::L5 | CheckId::P6 | CheckId::L7 => orbits::korbit_instances(ctx)?,
        CheckId::L8 => concat::l8_instances(ctx, limit)?,
        CheckId::L9 => concat::l9_instances(ctx, limit)?,
        CheckId::P3 | CheckId::L13 | CheckId::L14 => blocks::partition_instances(ctx),
        CheckId::L12 => blocks::l12_instances(ctx),
        CheckId::S33 => blocks::s33_instances(ctx),
        CheckId::L15 => primitive::l15_instances(ctx)?,
        CheckId::T10 | CheckId::L16 => primitive::primitive_instances(ctx),
        CheckId::L11 | CheckId::S31 | CheckId::Fks => blocks::transitive_instances(ctx),
    };
    out.truncate(limit + 1);
    Ok(out)
}

pub(crate) fn evaluate(check: CheckId, ctx: &GroupContext, params: &Value, cfg: &SuiteConfig) -> LabResult<Outcome> {
    match check {
        CheckId::P1 => orbits::p1(ctx, params, cfg),
        CheckId::P2 => orbits::p2(ctx, params, cfg),
        CheckId::P3 => blocks::p3(ctx, params, cfg),
        CheckId::P4 => orbits::p4(ctx, params, cfg),
        CheckId::L5 => orbits::l5(ctx, params, cfg),
        CheckId::P6 => orbits::p6(ctx, params, cfg),
        CheckId::L7 => orbits::l7(ctx, params, cfg),
        CheckId::L8 => concat::l8(ctx, params, cfg),
        CheckId::L9 => concat::l9(ctx, params, cfg),
        CheckId::T10 => primitive::t10(ctx, params, cfg),
        CheckId::L11 => blocks::l11(ctx, params, cfg),
        CheckId::L12 => blocks::l12(ctx, params, cfg),
        CheckId::L13 => blocks::l13(ctx, params, cfg),
        CheckId::L14 => blocks::l14(ctx, params, cfg),
        CheckId::L15 => primitive::l15(ctx, params, cfg),
        CheckId::L16 => primitive::l16(ctx, params, cfg),
        CheckId::S31 => blocks::s31(ctx, params, cfg),
        CheckId::S33 => blocks::s33(ctx, params, cfg),
        CheckId::Fks => blocks::fks(ctx, params, cfg),
    }
}

// JSON helpers. Points are 1-based in every parameter and witness.

pub(crate) fn one_based(points: &[usize]) -> Vec<usize> {
    points.iter().map(|p| p + 1).collect()
}

pub(crate) fn group_json(g: &PermutationGroup) -> Value {
    json!({
        "order": g.order(),
        "generators": g.small_generating_set(),
    })
}

pub(crate) fn field<'a>(params: &'a Value, key: &str) -> LabResult<&'a Value> {
    params
        .get(key)
        .ok_or_else(|| LabError::Params(format!("missing field {key:?}")))
}

pub(crate) fn usize_field(params: &Value, key: &str) -> LabResult<usize> {
    field(params, key)?
        .as_u64()
        .map(|v| v as usize)
        .ok_or_else(|| LabError::Params(format!("field {key:?} is not a number")))
}

/// A sorted 0-based point set from a 1-based JSON list.
pub(crate) fn points_from(value: &Value, n: usize) -> LabResult<Vec<usize>> {
    let raw: Vec<usize> =
        serde_json::from_value(value.clone()).map_err(|e| LabError::Params(format!("point list: {e}")))?;
    let mut pts = Vec::with_capacity(raw.len());
    for p in raw {
        if p == 0 || p > n {
            return Err(LabError::Params(format!("point {p} outside 1..={n}")));
        }
        pts.push(p - 1);
    }
    pts.sort_unstable();
    if pts.windows(2).any(|w| w[0] == w[1]) {
        return Err(LabError::Params("repeated point".into()));
    }
    Ok(pts)
}

pub(crate) fn tuple_from(value: &Value, n: usize) -> LabResult<KTuple> {
    let raw: Vec<usize> =
        serde_json::from_value(value.clone()).map_err(|e| LabError::Params(format!("tuple: {e}")))?;
    if raw.iter().any(|&p| p == 0 || p > n) {
        return Err(LabError::Params(format!("tuple point outside 1..={n}")));
    }
    Ok(KTuple::from_one_based(&raw)?)
}

pub(crate) fn tuples_from(value: &Value, n: usize) -> LabResult<TupleSet> {
    let raw: Vec<Value> =
        serde_json::from_value(value.clone()).map_err(|e| LabError::Params(format!("tuple list: {e}")))?;
    raw.iter().map(|t| tuple_from(t, n)).collect()
}

pub(crate) fn partition_from(value: &Value, n: usize) -> LabResult<PartitionOfV> {
    let raw: Vec<Vec<usize>> =
        serde_json::from_value(value.clone()).map_err(|e| LabError::Params(format!("partition: {e}")))?;
    Ok(PartitionOfV::from_one_based(n, &raw)?)
}

pub(crate) fn permutations_from(value: &Value) -> LabResult<Vec<Permutation>> {
    serde_json::from_value(value.clone()).map_err(|e| LabError::Params(format!("permutation list: {e}")))
}

/// Image of a sorted point set, sorted.
pub(crate) fn image_of(g: &Permutation, points: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = points.iter().map(|&p| g.apply(p)).collect();
    out.sort_unstable();
    out
}

/// Whether `points` is exactly one orbit of `group`.
pub(crate) fn is_orbit(group: &PermutationGroup, points: &[usize]) -> bool {
    points.first().is_some_and(|&p| group.orbit_of(p) == points)
}
