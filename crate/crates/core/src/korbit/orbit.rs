use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::korbit::{KTuple, TupleSet};
use crate::perm::{Permutation, PermutationGroup};

/// Default bound on `n!/(n-k)!` for a full `Orb_k` sweep.
pub const DEFAULT_TUPLE_CAP: usize = 1_000_000;

/// A set of same-arity tuples over the points `0..n`, usually a single
/// orbit of some group but also used for arbitrary k-sets.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KOrbit {
    k: usize,
    n: usize,
    tuples: TupleSet,
}

/// Distinct coordinate sets of a k-set with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoordinateFamily {
    pub k: usize,
    /// `(Co, multiplicity)`, sorted by `Co`; points 0-based.
    pub sets: Vec<(Vec<usize>, usize)>,
}

impl CoordinateFamily {
    pub fn distinct(&self) -> usize {
        self.sets.len()
    }
}

/// Maximal subset of a k-set whose tuples share one coordinate set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KBlock {
    pub co: Vec<usize>,
    pub tuples: TupleSet,
}

impl KOrbit {
    /// Wraps an arbitrary tuple set; all tuples must have arity `k` and points below `n`.
    pub fn from_tuples(n: usize, k: usize, tuples: TupleSet) -> Result<Self> {
        for t in &tuples {
            if t.arity() != k {
                return Err(Error::InvalidPositions(format!(
                    "tuple {t} has arity {} instead of {k}",
                    t.arity()
                )));
            }
            if let Some(p) = t.points().find(|&p| p >= n) {
                return Err(Error::PointOutOfRange { point: p + 1, degree: n });
            }
        }
        Ok(KOrbit { k, n, tuples })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn tuples(&self) -> &TupleSet {
        &self.tuples
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn contains(&self, t: &KTuple) -> bool {
        self.tuples.contains(t)
    }

    pub fn least(&self) -> Option<&KTuple> {
        self.tuples.first()
    }

    /// `∪Co(X)`, sorted.
    pub fn ground(&self) -> Vec<usize> {
        self.tuples.support()
    }

    pub fn coordinate_family(&self) -> CoordinateFamily {
        CoordinateFamily {
            k: self.k,
            sets: self.tuples.coordinate_family(),
        }
    }

    pub fn act(&self, g: &Permutation) -> KOrbit {
        KOrbit {
            k: self.k,
            n: self.n,
            tuples: self.tuples.act(g),
        }
    }

    /// Text form: header `k=.. n=.. size=..` then one 1-based tuple per line.
    pub fn to_korb(&self) -> String {
        let mut out = format!("k={} n={} size={}\n", self.k, self.n, self.len());
        for t in &self.tuples {
            let _ = writeln!(out, "{t}");
        }
        out
    }

    pub fn parse_korb(text: &str) -> Result<Self> {
        let err = |line: usize, reason: &str| Error::KorbFile {
            line,
            reason: reason.to_string(),
        };
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (hl, header) = lines.next().ok_or_else(|| err(1, "missing header"))?;
        let mut fields: BTreeMap<&str, usize> = BTreeMap::new();
        for part in header.split_whitespace() {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| err(hl + 1, "header fields must be key=value"))?;
            let value = value
                .parse()
                .map_err(|_| err(hl + 1, &format!("bad number in {part}")))?;
            fields.insert(key, value);
        }
        let get = |key: &str| {
            fields
                .get(key)
                .copied()
                .ok_or_else(|| err(hl + 1, &format!("header lacks {key}")))
        };
        let (k, n, size) = (get("k")?, get("n")?, get("size")?);
        let mut tuples = Vec::with_capacity(size);
        for (i, line) in lines {
            let body = line
                .trim()
                .strip_prefix('(')
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(|| err(i + 1, "tuple must be written (a,b,...)"))?;
            let points = if body.trim().is_empty() {
                vec![]
            } else {
                body.split(',')
                    .map(|p| p.trim().parse::<usize>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| err(i + 1, "non-numeric coordinate"))?
            };
            if points.len() != k {
                return Err(err(i + 1, &format!("expected {k} coordinates")));
            }
            if points.iter().any(|&p| p == 0 || p > n) {
                return Err(err(i + 1, "coordinate out of range"));
            }
            let t = KTuple::from_one_based(&points).map_err(|e| err(i + 1, &e.to_string()))?;
            tuples.push(t);
        }
        if tuples.len() != size {
            return Err(err(hl + 1, &format!("size={size} but {} tuples listed", tuples.len())));
        }
        let set: TupleSet = tuples.into_iter().collect();
        if set.len() != size {
            return Err(err(hl + 1, "duplicate tuples"));
        }
        KOrbit::from_tuples(n, k, set)
    }
}

impl std::fmt::Debug for KOrbit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "KOrbit(k={}, n={}, {})", self.k, self.n, self.tuples)
    }
}

/// `{g·seed : g ∈ G}`.
pub fn k_orbit(group: &PermutationGroup, seed: &KTuple) -> Result<KOrbit> {
    if let Some(p) = seed.points().find(|&p| p >= group.degree()) {
        return Err(Error::PointOutOfRange {
            point: p + 1,
            degree: group.degree(),
        });
    }
    Ok(KOrbit {
        k: seed.arity(),
        n: group.degree(),
        tuples: group.elements().iter().map(|g| seed.act(g)).collect(),
    })
}

/// Number of non-diagonal k-tuples, `n!/(n-k)!`.
pub fn count_tuples(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    ((n - k + 1)..=n).map(|x| x as u128).product()
}

/// All k-tuples of distinct points in lexicographic order.
pub fn all_tuples(n: usize, k: usize) -> Vec<KTuple> {
    fn rec(n: usize, k: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<KTuple>) {
        if cur.len() == k {
            out.push(KTuple::new(cur).expect("distinct by construction"));
            return;
        }
        for p in 0..n {
            if !used[p] {
                used[p] = true;
                cur.push(p);
                rec(n, k, cur, used, out);
                cur.pop();
                used[p] = false;
            }
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(n, k, &mut Vec::new(), &mut vec![false; n], &mut out);
    }
    out
}

/// `Orb_k(G)`: the partition of `V^(k)` into G-orbits, ordered by least tuple.
pub fn orb_k(group: &PermutationGroup, k: usize, tuple_cap: usize) -> Result<Vec<KOrbit>> {
    let n = group.degree();
    if k == 0 || k > n {
        return Err(Error::InvalidPositions(format!("k={k} must lie in 1..={n}")));
    }
    let count = count_tuples(n, k);
    if count > tuple_cap as u128 {
        return Err(Error::TooManyTuples { count, cap: tuple_cap });
    }
    let mut assigned: HashSet<KTuple> = HashSet::new();
    let mut orbits = Vec::new();
    for t in all_tuples(n, k) {
        if assigned.contains(&t) {
            continue;
        }
        let orbit = k_orbit(group, &t)?;
        assigned.extend(orbit.tuples.iter().cloned());
        orbits.push(orbit);
    }
    Ok(orbits)
}

/// Groups the tuples of `x` by coordinate set; blocks ordered by `Co`.
pub fn k_blocks(x: &KOrbit) -> Vec<KBlock> {
    let mut m: BTreeMap<Vec<usize>, Vec<KTuple>> = BTreeMap::new();
    for t in x.tuples() {
        m.entry(t.coordinates()).or_default().push(t.clone());
    }
    m.into_iter()
        .map(|(co, ts)| KBlock {
            co,
            tuples: TupleSet::from_sorted_unchecked(ts),
        })
        .collect()
}
