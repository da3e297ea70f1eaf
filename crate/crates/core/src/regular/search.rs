use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{Permutation, PermutationGroup};
use crate::util::prime_power_base;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularElementReport {
    pub found: bool,
    pub witness: Option<Permutation>,
    /// Common cycle length when the witness has a uniform cycle type.
    pub witness_cycle_len: Option<usize>,
    /// Elements examined, including the witness.
    pub searched: usize,
}

impl RegularElementReport {
    fn scan(group: &PermutationGroup, pred: impl Fn(&Permutation) -> bool) -> Self {
        for (i, g) in group.elements().iter().enumerate() {
            if pred(g) {
                let ct = g.cycle_type();
                return RegularElementReport {
                    found: true,
                    witness: Some(g.clone()),
                    witness_cycle_len: ct.is_uniform().then(|| ct.lengths().next().map_or(1, |(l, _)| l)),
                    searched: i + 1,
                };
            }
        }
        RegularElementReport {
            found: false,
            witness: None,
            witness_cycle_len: None,
            searched: group.order(),
        }
    }
}

/// First element, in canonical order, whose cycles all have one length.
/// The identity only qualifies when `include_identity` is set.
pub fn find_regular(group: &PermutationGroup, include_identity: bool) -> RegularElementReport {
    RegularElementReport::scan(group, |g| {
        (include_identity || !g.is_identity()) && g.cycle_type().is_uniform()
    })
}

/// First fixed-point-free element of prime-power order. Transitive groups
/// always have one, so a miss signals a bug.
pub fn find_fpf_prime_power(group: &PermutationGroup) -> Result<RegularElementReport> {
    if !group.is_transitive() {
        return Err(Error::NotTransitive);
    }
    Ok(RegularElementReport::scan(group, |g| {
        g.fixed_points() == 0 && prime_power_base(g.order()).is_some()
    }))
}
