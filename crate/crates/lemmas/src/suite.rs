use std::time::Instant;

use rayon::prelude::*;
use serde_json::{json, Value};

use korbit::catalog::{Catalog, CatalogEntry};

use crate::checks::{evaluate, instances, Outcome};
use crate::config::SuiteConfig;
use crate::context::GroupContext;
use crate::descriptor::CheckId;
use crate::row::{instance_id, CheckCounts, CheckRow, Status, StatusCounts, SuiteSummary};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub rows: Vec<CheckRow>,
    pub summary: SuiteSummary,
}

impl SuiteReport {
    /// One JSON object per row, then the summary object.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            out.push_str(&serde_json::to_string(row).expect("rows serialize"));
            out.push('\n');
        }
        out.push_str(&serde_json::to_string(&self.summary).expect("summary serializes"));
        out.push('\n');
        out
    }

    pub fn count(&self, status: Status) -> usize {
        self.rows.iter().filter(|r| r.status == status).count()
    }
}

fn make_row(check: CheckId, group_id: &str, params: Value, outcome: Outcome, millis: u64) -> CheckRow {
    CheckRow {
        check,
        instance: instance_id(group_id, &params),
        group_id: group_id.to_string(),
        params,
        status: outcome.status,
        witness: outcome.witness,
        millis,
    }
}

/// Rows for one check on one group. A group with no instances still gets a
/// VACUOUS row, and a list cut at the instance cap ends in a SKIPPED row.
pub fn run_check(check: CheckId, ctx: &GroupContext, cfg: &SuiteConfig) -> Vec<CheckRow> {
    let id = ctx.entry.id.as_str();
    let cap = cfg.instance_cap.max(1);
    let mut list = match instances(check, ctx, cap) {
        Ok(list) => list,
        Err(e) => return vec![make_row(check, id, json!({}), Outcome::skipped(e.to_string()), 0)],
    };
    if list.is_empty() {
        return vec![make_row(check, id, json!({}), Outcome::vacuous(), 0)];
    }
    let truncated = list.len() > cap;
    list.truncate(cap);
    let mut rows: Vec<CheckRow> = list
        .into_iter()
        .map(|params| {
            let start = Instant::now();
            let outcome = evaluate(check, ctx, &params, cfg).unwrap_or_else(|e| Outcome::skipped(e.to_string()));
            let millis = if cfg.record_timing {
                start.elapsed().as_millis() as u64
            } else {
                0
            };
            make_row(check, id, params, outcome, millis)
        })
        .collect();
    if truncated {
        rows.push(make_row(
            check,
            id,
            json!({ "truncated_after": cap }),
            Outcome::skipped(format!("instance cap of {cap} reached")),
            0,
        ));
    }
    rows
}

fn rows_for(check: CheckId, entry: &CatalogEntry, ctx: &korbit::Result<GroupContext>, cfg: &SuiteConfig) -> Vec<CheckRow> {
    match ctx {
        Ok(ctx) => run_check(check, ctx, cfg),
        Err(e) => vec![make_row(check, &entry.id, json!({}), Outcome::skipped(e.to_string()), 0)],
    }
}

/// Runs the configured checks over the catalog. Rows are ordered by check
/// (roster order), then catalog order, then instance order, whatever the
/// degree of parallelism.
pub fn run_suite(catalog: &Catalog, cfg: &SuiteConfig) -> SuiteReport {
    let mut checks = cfg.checks.clone();
    checks.sort();
    checks.dedup();
    let entries: Vec<&CatalogEntry> = catalog
        .iter()
        .filter(|e| cfg.max_degree.is_none_or(|d| e.degree <= d))
        .collect();
    let contexts: Vec<korbit::Result<GroupContext>> = entries.iter().map(|e| GroupContext::new(e, cfg)).collect();
    let work: Vec<(CheckId, usize)> = checks
        .iter()
        .flat_map(|&c| (0..entries.len()).map(move |i| (c, i)))
        .collect();
    let run = || -> Vec<Vec<CheckRow>> {
        work.par_iter()
            .map(|&(c, i)| rows_for(c, entries[i], &contexts[i], cfg))
            .collect()
    };
    let chunks = match cfg.parallelism {
        Some(threads) => match rayon::ThreadPoolBuilder::new().num_threads(threads.max(1)).build() {
            Ok(pool) => pool.install(run),
            Err(_) => work.iter().map(|&(c, i)| rows_for(c, entries[i], &contexts[i], cfg)).collect(),
        },
        None => run(),
    };
    let rows: Vec<CheckRow> = chunks.into_iter().flatten().collect();
    let mut totals = StatusCounts::default();
    let per_check = checks
        .iter()
        .map(|&check| {
            let mut counts = StatusCounts::default();
            for r in rows.iter().filter(|r| r.check == check) {
                counts.add(r.status);
                totals.add(r.status);
            }
            CheckCounts { check, counts }
        })
        .collect();
    let summary = SuiteSummary {
        summary: true,
        rows: rows.len(),
        groups: entries.len(),
        convention: cfg.convention,
        instance_cap: cfg.instance_cap,
        per_check,
        totals,
    };
    SuiteReport { rows, summary }
}
