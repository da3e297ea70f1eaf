//! Sweep of a catalog checking that every 2-closed transitive group has a
//! regular element.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::CatalogEntry;
use crate::closure2::{is_2_closed, ClosureCache, EngineLimits};
use crate::error::Result;
use crate::perm::PermutationGroup;
use crate::regular::find_regular;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SurveyStatus {
    Confirmed,
    Refuted,
    NotApplicable,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyRow {
    pub group_id: String,
    pub degree: usize,
    pub order: usize,
    pub transitive: bool,
    pub two_closed: Option<bool>,
    pub status: SurveyStatus,
    /// 1-based image array of the witness.
    pub witness_images: Option<Vec<usize>>,
    pub witness_cycle_len: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reason: Option<String>,
}

#[derive(Clone, Debug, Default)]
pub struct SurveyOptions {
    pub include_identity: bool,
    pub engine: EngineLimits,
    /// Worker threads; `None` uses the global pool.
    pub parallelism: Option<usize>,
    pub cache: Option<ClosureCache>,
}

pub fn survey_entry(entry: &CatalogEntry, opts: &SurveyOptions) -> SurveyRow {
    let mut row = SurveyRow {
        group_id: entry.id.clone(),
        degree: entry.degree,
        order: entry.order,
        transitive: false,
        two_closed: None,
        status: SurveyStatus::Skipped,
        witness_images: None,
        witness_cycle_len: None,
        reason: None,
    };
    let group = match entry.group() {
        Ok(g) => g,
        Err(e) => {
            row.reason = Some(e.to_string());
            return row;
        }
    };
    row.transitive = group.is_transitive();
    if !row.transitive {
        row.status = SurveyStatus::NotApplicable;
        row.reason = Some("intransitive".into());
        return row;
    }
    let closed = match closed_test(&group, opts) {
        Ok(c) => c,
        Err(e) => {
            row.reason = Some(e.to_string());
            return row;
        }
    };
    row.two_closed = Some(closed);
    if !closed {
        row.status = SurveyStatus::NotApplicable;
        return row;
    }
    let report = find_regular(&group, opts.include_identity);
    match report.witness {
        Some(w) => {
            row.status = SurveyStatus::Confirmed;
            row.witness_images = Some(w.images_one_based());
            row.witness_cycle_len = report.witness_cycle_len;
        }
        None => row.status = SurveyStatus::Refuted,
    }
    row
}

fn closed_test(group: &PermutationGroup, opts: &SurveyOptions) -> Result<bool> {
    match &opts.cache {
        Some(cache) => cache.is_2_closed(group, &opts.engine),
        None => is_2_closed(group, &opts.engine),
    }
}

/// One row per entry, in catalog order regardless of parallelism.
pub fn polycirculant_survey(entries: &[CatalogEntry], opts: &SurveyOptions) -> Vec<SurveyRow> {
    let run = || entries.par_iter().map(|e| survey_entry(e, opts)).collect();
    match opts.parallelism {
        Some(threads) => rayon::ThreadPoolBuilder::new()
            .num_threads(threads.max(1))
            .build()
            .map(|pool| pool.install(run))
            .unwrap_or_else(|_| entries.iter().map(|e| survey_entry(e, opts)).collect()),
        None => run(),
    }
}

pub fn survey_to_jsonl(rows: &[SurveyRow]) -> String {
    let mut out = String::new();
    for r in rows {
        out.push_str(&serde_json::to_string(r).expect("rows serialize"));
        out.push('\n');
    }
    out
}
