use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::korbit::KOrbit;
use crate::perm::{PartitionOfV, PermutationGroup};
use crate::util::UnionFind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Coherence {
    Coherent,
    Incoherent,
    TrivialFull,
    Degenerate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoherenceVerdict {
    pub kind: Coherence,
    /// The `⊔Co(X)` partition of `∪Co(X)`: unions of overlapping coordinate sets.
    /// Points 0-based, classes sorted.
    pub components: Vec<Vec<usize>>,
}

impl CoherenceVerdict {
    /// Components as a partition of the full point set, with points outside
    /// `∪Co(X)` as singletons. Useful for invariance checks.
    pub fn as_partition(&self, n: usize) -> PartitionOfV {
        let mut classes = self.components.clone();
        let covered: Vec<bool> = {
            let mut c = vec![false; n];
            self.components.iter().flatten().for_each(|&p| c[p] = true);
            c
        };
        classes.extend((0..n).filter(|&p| !covered[p]).map(|p| vec![p]));
        PartitionOfV::new(n, classes).expect("components are disjoint")
    }
}

/// Union-find over coordinate sets sharing points.
pub fn components(x: &KOrbit) -> Vec<Vec<usize>> {
    let n = x.degree();
    let mut uf = UnionFind::new(n);
    let mut used = vec![false; n];
    for t in x.tuples() {
        let pts: Vec<usize> = t.points().collect();
        for &p in &pts {
            used[p] = true;
        }
        for w in pts.windows(2) {
            uf.union(w[0], w[1]);
        }
    }
    uf.classes()
        .into_iter()
        .filter(|c| used[c[0]])
        .collect()
}

/// Classifies a k-set by the overlap structure of its coordinate sets.
///
/// `k = 1` and k-sets made of a single k-block are `Degenerate`; `k = n`
/// is `TrivialFull`.
pub fn coherence(x: &KOrbit) -> CoherenceVerdict {
    let comps = components(x);
    let kind = if x.k() <= 1 {
        Coherence::Degenerate
    } else if x.k() >= x.degree() {
        Coherence::TrivialFull
    } else if comps.len() >= 2 {
        Coherence::Incoherent
    } else if x.coordinate_family().distinct() >= 2 {
        Coherence::Coherent
    } else {
        Coherence::Degenerate
    };
    CoherenceVerdict {
        kind,
        components: comps,
    }
}

/// Whether a coherent k-set has no proper sub-suborbit that is itself
/// coherent or incoherent on its own ground set.
///
/// `aut` must act on `X` (normally `aut_kset(X)`). A subgroup orbit with two
/// distinct coordinate sets contains a cyclic-subgroup orbit with the same
/// property and no larger ground, so scanning the cyclic subgroups generated
/// by each element of `aut` decides the question exactly.
pub fn is_elementary_coherent(x: &KOrbit, aut: &PermutationGroup) -> Result<bool> {
    if coherence(x).kind != Coherence::Coherent {
        return Err(Error::NotCoherent);
    }
    let ground = x.ground();
    for h in aut.elements().iter().filter(|h| !h.is_identity()) {
        let powers: Vec<_> = {
            let mut v = vec![h.clone()];
            loop {
                let next = h * v.last().unwrap();
                if next.is_identity() {
                    break;
                }
                v.push(next);
            }
            v
        };
        for alpha in x.tuples() {
            let co = alpha.coordinates();
            let mut support: Vec<usize> = co.clone();
            let mut distinct = false;
            for p in &powers {
                let image = alpha.act(p);
                if !x.contains(&image) {
                    return Err(Error::NotContained);
                }
                let ico = image.coordinates();
                if ico != co {
                    distinct = true;
                }
                support.extend(ico);
            }
            support.sort_unstable();
            support.dedup();
            if distinct && support.len() < ground.len() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
