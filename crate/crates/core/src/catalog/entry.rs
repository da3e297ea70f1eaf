use std::collections::HashSet;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::closure2::{is_2_closed, EngineLimits};
use crate::error::{Error, Result};
use crate::perm::{classify_md, is_primitive, PermutationGroup, Permutation};

/// Largest order re-closed when a catalog file is loaded.
pub const LOAD_ELEMENT_CAP: usize = 362_880;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    ExhaustiveEnum,
    NamedFamily,
    GraphImport,
}

/// Structural flags; `None` means not computed (or not applicable, such
/// as primitivity of an intransitive group).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tags {
    pub transitive: Option<bool>,
    pub primitive: Option<bool>,
    pub abelian: Option<bool>,
    pub nmd: Option<bool>,
    pub two_closed: Option<bool>,
}

impl Tags {
    /// All flags except 2-closedness, which needs the automorphism engine.
    pub fn structural(group: &PermutationGroup) -> Tags {
        let transitive = group.is_transitive();
        Tags {
            transitive: Some(transitive),
            primitive: transitive.then(|| is_primitive(group)),
            abelian: Some(group.is_abelian()),
            nmd: if transitive {
                classify_md(group).ok().map(|c| c.is_nmd())
            } else {
                None
            },
            two_closed: None,
        }
    }

    /// Structural flags plus 2-closedness, left unset when the engine hits a cap.
    pub fn compute(group: &PermutationGroup, limits: &EngineLimits) -> Tags {
        Tags {
            two_closed: is_2_closed(group, limits).ok(),
            ..Tags::structural(group)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub id: String,
    pub degree: usize,
    pub generators: Vec<Permutation>,
    pub order: usize,
    pub tags: Tags,
    pub provenance: Provenance,
}

impl CatalogEntry {
    pub fn new(id: impl Into<String>, group: &PermutationGroup, provenance: Provenance) -> Self {
        CatalogEntry {
            id: id.into(),
            degree: group.degree(),
            generators: group.small_generating_set(),
            order: group.order(),
            tags: Tags::default(),
            provenance,
        }
    }

    pub fn group(&self) -> Result<PermutationGroup> {
        let g = PermutationGroup::generate(self.degree, self.generators.clone(), self.order.max(1))?;
        if g.order() != self.order {
            return Err(Error::GroupTooLarge {
                cap: self.order,
                partial: g.order(),
            });
        }
        Ok(g)
    }
}

/// An ordered list of entries with unique ids.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Catalog {
    pub entries: Vec<CatalogEntry>,
}

impl Catalog {
    pub fn new(entries: Vec<CatalogEntry>) -> Result<Self> {
        let mut seen = HashSet::new();
        for (i, e) in entries.iter().enumerate() {
            if !seen.insert(e.id.as_str()) {
                return Err(Error::CatalogLoad {
                    line: i + 1,
                    reason: format!("duplicate id {:?}", e.id),
                });
            }
        }
        Ok(Catalog { entries })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    pub fn require(&self, id: &str) -> Result<&CatalogEntry> {
        self.get(id).ok_or_else(|| Error::UnknownGroup(id.to_string()))
    }

    pub fn iter(&self) -> std::slice::Iter<'_, CatalogEntry> {
        self.entries.iter()
    }

    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            out.push_str(&serde_json::to_string(e).expect("entries serialize"));
            out.push('\n');
        }
        out
    }

    /// Parses JSONL, re-closing every entry to validate its order.
    pub fn from_jsonl(text: &str) -> Result<Self> {
        let mut entries: Vec<CatalogEntry> = Vec::new();
        let mut ids = HashSet::new();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let err = |reason: String| Error::CatalogLoad { line: i + 1, reason };
            let e: CatalogEntry = serde_json::from_str(line).map_err(|e| err(e.to_string()))?;
            if let Some(g) = e.generators.iter().find(|g| g.degree() != e.degree) {
                return Err(err(format!("generator of degree {} in a degree-{} entry", g.degree(), e.degree)));
            }
            let cap = e.order.clamp(1, LOAD_ELEMENT_CAP);
            match PermutationGroup::generate(e.degree, e.generators.clone(), cap) {
                Ok(g) if g.order() == e.order => {}
                Ok(g) => return Err(err(format!("order field {} but generators give {}", e.order, g.order()))),
                Err(_) => return Err(err(format!("order field {} is smaller than the closure", e.order))),
            }
            if !ids.insert(e.id.clone()) {
                return Err(err(format!("duplicate id {:?}", e.id)));
            }
            entries.push(e);
        }
        Ok(Catalog { entries })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let mut f = std::fs::File::create(path)?;
        f.write_all(self.to_jsonl().as_bytes())?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        Catalog::from_jsonl(&std::fs::read_to_string(path)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::close_group;

    fn c4_entry() -> CatalogEntry {
        let g = close_group(4, &[Permutation::parse("[2,3,4,1]", 4).unwrap()], 10).unwrap();
        let mut e = CatalogEntry::new("C4@4", &g, Provenance::NamedFamily);
        e.tags = Tags::compute(&g, &EngineLimits::default());
        e
    }

    #[test]
    fn jsonl_round_trip() {
        let cat = Catalog::new(vec![c4_entry()]).unwrap();
        let text = cat.to_jsonl();
        assert!(text.contains("\"provenance\":\"named-family\""));
        assert_eq!(Catalog::from_jsonl(&text).unwrap(), cat);
    }

    #[test]
    fn wrong_order_rejected() {
        let mut e = c4_entry();
        e.order = 8;
        let text = Catalog { entries: vec![c4_entry(), e.clone()] }.to_jsonl();
        assert!(matches!(Catalog::from_jsonl(&text), Err(Error::CatalogLoad { line: 2, .. })));
        e.order = 2;
        let text = Catalog { entries: vec![e] }.to_jsonl();
        assert!(matches!(Catalog::from_jsonl(&text), Err(Error::CatalogLoad { line: 1, .. })));
        assert!(matches!(Catalog::from_jsonl("{not json"), Err(Error::CatalogLoad { line: 1, .. })));
    }

    #[test]
    fn duplicate_ids_rejected() {
        let text = Catalog { entries: vec![c4_entry(), c4_entry()] }.to_jsonl();
        assert!(matches!(Catalog::from_jsonl(&text), Err(Error::CatalogLoad { line: 2, .. })));
        assert!(Catalog::new(vec![c4_entry(), c4_entry()]).is_err());
    }

    #[test]
    fn tags_for_c4() {
        let t = c4_entry().tags;
        assert_eq!(t.transitive, Some(true));
        assert_eq!(t.primitive, Some(false));
        assert_eq!(t.abelian, Some(true));
        assert_eq!(t.nmd, Some(false));
        assert_eq!(t.two_closed, Some(true));
    }
}
