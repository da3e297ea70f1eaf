use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::closure2::{is_2_closed, two_closure, EngineLimits};
use crate::error::{Error, Result};
use crate::perm::{Permutation, PermutationGroup};

/// On-disk memo of 2-closures, one JSON file per group keyed by a digest of
/// its degree and generators. Unreadable or inconsistent files are ignored
/// and overwritten.
#[derive(Clone, Debug)]
pub struct ClosureCache {
    dir: PathBuf,
}

#[derive(Serialize, Deserialize)]
struct Record {
    degree: usize,
    generators: Vec<Permutation>,
    closure_generators: Vec<Permutation>,
    closure_order: usize,
}

impl ClosureCache {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        std::fs::create_dir_all(&dir)?;
        Ok(ClosureCache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn key(group: &PermutationGroup) -> String {
        let mut h = Sha256::new();
        h.update(group.degree().to_le_bytes());
        for g in group.generators() {
            h.update([0xff]);
            h.update(g.images().map(|x| x as u8).collect::<Vec<u8>>());
        }
        hex::encode(h.finalize())
    }

    fn path(&self, group: &PermutationGroup) -> PathBuf {
        self.dir.join(format!("{}.json", Self::key(group)))
    }

    fn lookup(&self, group: &PermutationGroup) -> Option<PermutationGroup> {
        let text = std::fs::read_to_string(self.path(group)).ok()?;
        let rec: Record = serde_json::from_str(&text).ok()?;
        if rec.degree != group.degree() || rec.generators != group.generators() {
            return None;
        }
        let closure = PermutationGroup::generate(rec.degree, rec.closure_generators, rec.closure_order).ok()?;
        (closure.order() == rec.closure_order && group.is_subgroup_of(&closure)).then_some(closure)
    }

    pub fn two_closure(&self, group: &PermutationGroup, limits: &EngineLimits) -> Result<PermutationGroup> {
        if let Some(hit) = self.lookup(group) {
            return Ok(hit);
        }
        let closure = two_closure(group, limits)?;
        let rec = Record {
            degree: group.degree(),
            generators: group.generators().to_vec(),
            closure_generators: closure.small_generating_set(),
            closure_order: closure.order(),
        };
        let tmp = self.dir.join(format!("{}.tmp{}", Self::key(group), std::process::id()));
        std::fs::write(&tmp, serde_json::to_string(&rec).expect("record serializes"))?;
        std::fs::rename(&tmp, self.path(group))?;
        Ok(closure)
    }
}

impl ClosureCache {
    /// Uses a cached closure when present; otherwise computes and stores the
    /// closure, falling back to the early-exit test when it is too large.
    pub fn is_2_closed(&self, group: &PermutationGroup, limits: &EngineLimits) -> Result<bool> {
        match self.two_closure(group, limits) {
            Ok(c) => Ok(c.order() == group.order()),
            Err(Error::GroupTooLarge { .. }) => is_2_closed(group, limits),
            Err(e) => Err(e),
        }
    }
}
