use serde_json::Value;

use korbit::catalog::Catalog;
use korbit::closure2::is_2_closed;
use korbit::perm::{classify_md, PartitionOfV, Permutation, PermutationGroup};
use korbit::util::prime_power_base;

use crate::checks::{evaluate, field, partition_from, permutations_from, points_from, usize_field};
use crate::config::SuiteConfig;
use crate::context::GroupContext;
use crate::descriptor::CheckId;
use crate::error::{LabError, LabResult};
use crate::row::{instance_id, CheckRow, Status};

/// Re-derives a PASS or FAIL row from the catalog and the row alone.
///
/// The instance is re-evaluated on a freshly built group (no shared
/// caches) and must reproduce the same status and witness; for the checks
/// whose witness is a concrete object, that object is also checked
/// directly against the group. Returns `Ok(false)` for rows that do not
/// hold up and an error for rows that cannot be read at all.
pub fn verify_witness(catalog: &Catalog, row: &CheckRow, cfg: &SuiteConfig) -> LabResult<bool> {
    if !matches!(row.status, Status::Pass | Status::Fail) {
        return Err(LabError::NotVerifiable(row.status));
    }
    let entry = catalog.require(&row.group_id)?;
    if row.instance != instance_id(&row.group_id, &row.params) {
        return Ok(false);
    }
    let fresh = SuiteConfig {
        evaluate_conclusions: true,
        ..cfg.clone()
    };
    let ctx = GroupContext::new(entry, &fresh)?;
    let outcome = match evaluate(row.check, &ctx, &row.params, &fresh) {
        Ok(o) => o,
        Err(LabError::Params(_)) => return Ok(false),
        Err(e) => return Err(e),
    };
    if outcome.status != row.status || outcome.witness != row.witness {
        return Ok(false);
    }
    direct(row, &ctx.group, &fresh)
}

fn element(witness: &Value, group: &PermutationGroup) -> LabResult<Option<Permutation>> {
    match witness.get("element") {
        None | Some(Value::Null) => Ok(None),
        Some(v) => {
            let p: Permutation =
                serde_json::from_value(v.clone()).map_err(|e| LabError::Params(format!("element: {e}")))?;
            Ok(group.contains(&p).then_some(p))
        }
    }
}

fn bool_field(witness: &Value, key: &str) -> LabResult<bool> {
    field(witness, key)?
        .as_bool()
        .ok_or_else(|| LabError::Params(format!("{key:?} is not a boolean")))
}

fn fixes_classes(g: &Permutation, q: &PartitionOfV) -> bool {
    q.classes().iter().all(|c| c.iter().all(|&p| c.contains(&g.apply(p))))
}

/// Checks that do not go through the check implementations.
fn direct(row: &CheckRow, group: &PermutationGroup, cfg: &SuiteConfig) -> LabResult<bool> {
    let pass = row.status == Status::Pass;
    let w = &row.witness;
    let n = group.degree();
    Ok(match row.check {
        CheckId::Fks => {
            let ok = |g: &Permutation| g.fixed_points() == 0 && prime_power_base(g.order()).is_some();
            match element(w, group)? {
                Some(g) => pass && ok(&g),
                None => !pass && !group.elements().iter().any(ok),
            }
        }
        CheckId::S31 => {
            let ok = |g: &Permutation| !g.is_identity() && g.cycle_type().is_uniform();
            match element(w, group)? {
                Some(g) => pass && ok(&g),
                None => !pass && !group.elements().iter().any(ok),
            }
        }
        CheckId::S33 => {
            let q = partition_from(field(&row.params, "partition")?, n)?;
            let p = usize_field(w, "prime")?;
            let ok = |g: &Permutation| {
                fixes_classes(g, &q) && g.order() == p && g.fixed_points() == 0 && g.cycle_type().is_uniform()
            };
            match element(w, group)? {
                Some(g) => pass && ok(&g),
                None => !pass && !group.elements().iter().any(ok),
            }
        }
        CheckId::L11 => {
            let nmd = classify_md(group)?.is_nmd();
            let closed = is_2_closed(group, &cfg.engine)?;
            nmd && closed == pass && closed == bool_field(w, "two_closed")?
        }
        CheckId::L16 => {
            let closed = is_2_closed(group, &cfg.engine)?;
            closed != pass && closed == bool_field(w, "two_closed")?
        }
        CheckId::P3 => {
            let q = partition_from(field(&row.params, "partition")?, n)?;
            let kernel_field = field(w, "kernel")?;
            let gens = permutations_from(field(kernel_field, "generators")?)?;
            let order = usize_field(kernel_field, "order")?;
            let brute = group.elements().iter().filter(|g| fixes_classes(g, &q)).count();
            let kernel = PermutationGroup::generate(n, gens, group.order())?;
            let normal = group
                .generators()
                .iter()
                .all(|g| kernel.generators().iter().all(|h| kernel.contains(&h.conjugate_by(g))));
            brute == order && kernel.order() == order && normal == pass
        }
        CheckId::L12 => {
            let q = partition_from(field(&row.params, "partition")?, n)?;
            let b = usize_field(&row.params, "block")?;
            let block = q
                .classes()
                .get(b.wrapping_sub(1))
                .ok_or_else(|| LabError::Params("block index".into()))?;
            let fixers = group
                .elements()
                .iter()
                .filter(|g| block.iter().all(|&p| g.apply(p) == p))
                .count();
            let order = usize_field(field(w, "pointwise_stabilizer")?, "order")?;
            fixers == order && (fixers == 1) == pass
        }
        CheckId::T10 if pass => {
            let k = usize_field(w, "k")?;
            let classes: Vec<Value> = field(w, "partition")?
                .as_array()
                .cloned()
                .ok_or_else(|| LabError::Params("partition".into()))?;
            let sets = classes.iter().map(|c| points_from(c, n)).collect::<LabResult<Vec<_>>>()?;
            let q = PartitionOfV::new(n, sets.clone())?;
            let automorphic = |s: &[usize]| {
                let stab: Vec<&Permutation> = group
                    .elements()
                    .iter()
                    .filter(|g| s.iter().all(|p| s.contains(&g.apply(*p))))
                    .collect();
                s.iter().all(|&p| stab.iter().any(|g| g.apply(s[0]) == p))
            };
            let one_orbit = field(w, "reading")?.as_str() == Some("one-orbit");
            let same_orbit = sets.iter().all(|s| {
                group.elements().iter().any(|g| {
                    let mut img: Vec<usize> = sets[0].iter().map(|&p| g.apply(p)).collect();
                    img.sort_unstable();
                    &img == s
                })
            });
            q.class_size() == Some(k) && sets.iter().all(|s| automorphic(s)) && (!one_orbit || same_orbit)
        }
        _ => true,
    })
}
