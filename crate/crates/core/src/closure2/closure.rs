use crate::closure2::{automorphisms, orbitals, EngineLimits};
use crate::error::{Error, Result};
use crate::perm::PermutationGroup;

/// The automorphism group of the orbital coloring of `group`.
pub fn two_closure(group: &PermutationGroup, limits: &EngineLimits) -> Result<PermutationGroup> {
    automorphisms(orbitals(group).coloring(), limits)
}

/// Stops as soon as the closure is known to be larger than `group`, so this
/// also works when the closure itself would exceed `limits.max_elements`.
pub fn is_2_closed(group: &PermutationGroup, limits: &EngineLimits) -> Result<bool> {
    let probe = EngineLimits {
        max_elements: group.order(),
        ..*limits
    };
    match two_closure(group, &probe) {
        Ok(c) => Ok(c.order() == group.order()),
        Err(Error::GroupTooLarge { .. }) => Ok(false),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{close_group, Permutation};

    fn group(n: usize, gens: &[&str]) -> PermutationGroup {
        let g: Vec<_> = gens.iter().map(|s| Permutation::parse(s, n).unwrap()).collect();
        close_group(n, &g, 1000).unwrap()
    }

    #[test]
    fn small_closures() {
        let lim = EngineLimits::default();
        let a4 = group(4, &["(1 2 3)", "(2 3 4)"]);
        assert_eq!(two_closure(&a4, &lim).unwrap().order(), 24);
        assert!(!is_2_closed(&a4, &lim).unwrap());
        let c4 = group(4, &["[2,3,4,1]"]);
        assert_eq!(two_closure(&c4, &lim).unwrap(), c4);
        let a6 = group(6, &["(1 2 3)", "(1 2 4)", "(1 2 5)", "(1 2 6)"]);
        let tight = EngineLimits {
            max_elements: 400,
            ..lim
        };
        assert_eq!(is_2_closed(&a6, &tight), Ok(false));
        let v4 = group(4, &["[2,1,4,3]", "[3,4,1,2]"]);
        assert_eq!(two_closure(&v4, &lim).unwrap(), v4);
    }

    #[test]
    fn closure_is_idempotent_and_contains_group() {
        let lim = EngineLimits::default();
        let d5 = group(5, &["(1 2 3 4 5)", "(2 5)(3 4)"]);
        let c = two_closure(&d5, &lim).unwrap();
        assert!(d5.is_subgroup_of(&c));
        assert_eq!(two_closure(&c, &lim).unwrap(), c);
    }
}
