use serde::{Deserialize, Serialize};

use korbit::closure2::EngineLimits;
use korbit::korbit::DEFAULT_TUPLE_CAP;
use korbit::perm::{DEFAULT_ELEMENT_CAP, DEFAULT_LATTICE_GROUP_CAP};

use crate::descriptor::{CheckId, DESCRIPTORS};

/// Which groups count as primitive when a hypothesis asks for one.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    /// Primitive and non-Abelian; cyclic groups of prime degree are excluded.
    #[default]
    NonAbelian,
    /// Every primitive group.
    Standard,
}

impl std::str::FromStr for Convention {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "nonabelian" => Ok(Convention::NonAbelian),
            "standard" => Ok(Convention::Standard),
            other => Err(format!("unknown convention {other:?} (expected nonabelian or standard)")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub checks: Vec<CheckId>,
    /// Only catalog entries of at most this degree are visited.
    pub max_degree: Option<usize>,
    pub convention: Convention,
    /// When false, instances whose hypothesis holds are reported as
    /// SKIPPED instead of evaluating the conclusion.
    pub evaluate_conclusions: bool,
    /// Rows per (check, group) before the rest is summarised as one SKIPPED row.
    pub instance_cap: usize,
    pub parallelism: Option<usize>,
    pub record_timing: bool,
    pub engine: EngineLimits,
    pub element_cap: usize,
    pub tuple_cap: usize,
    /// Largest group whose subgroup lattice is enumerated.
    pub subgroup_cap: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            checks: DESCRIPTORS.iter().map(|d| d.id).collect(),
            max_degree: None,
            convention: Convention::NonAbelian,
            evaluate_conclusions: true,
            instance_cap: 500,
            parallelism: None,
            record_timing: false,
            engine: EngineLimits::default(),
            element_cap: DEFAULT_ELEMENT_CAP,
            tuple_cap: DEFAULT_TUPLE_CAP,
            subgroup_cap: DEFAULT_LATTICE_GROUP_CAP,
        }
    }
}
