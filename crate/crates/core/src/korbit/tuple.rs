use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// An ordered tuple of pairwise distinct points (a member of `V^(k)`).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KTuple(Vec<u8>);

impl KTuple {
    /// 0-based points; rejects repeated coordinates.
    pub fn new(points: &[usize]) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for &p in points {
            if p > u8::MAX as usize {
                return Err(Error::PointOutOfRange { point: p + 1, degree: u8::MAX as usize + 1 });
            }
            if !seen.insert(p) {
                return Err(Error::DiagonalViolation);
            }
        }
        Ok(KTuple(points.iter().map(|&p| p as u8).collect()))
    }

    pub fn from_one_based(points: &[usize]) -> Result<Self> {
        let zero = points
            .iter()
            .map(|&p| {
                p.checked_sub(1)
                    .ok_or(Error::PointOutOfRange { point: 0, degree: u8::MAX as usize })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(&zero)
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.0.iter().map(|&p| p as usize)
    }

    /// `Co(α)`: the sorted coordinate set.
    pub fn coordinates(&self) -> Vec<usize> {
        let mut c: Vec<usize> = self.points().collect();
        c.sort_unstable();
        c
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.points().map(|p| p + 1).collect()
    }

    /// Coordinate-wise image `<g v1 .. g vk>`.
    pub fn act(&self, g: &Permutation) -> KTuple {
        KTuple(self.0.iter().map(|&p| g.apply(p as usize) as u8).collect())
    }

    /// Position `i` of the result holds the coordinate at position `g(i)`.
    /// Only defined when the arity equals the degree of `g`.
    pub fn right_act(&self, g: &Permutation) -> Result<KTuple> {
        if self.arity() != g.degree() {
            return Err(Error::UnsupportedRightAction {
                arity: self.arity(),
                degree: g.degree(),
            });
        }
        Ok(KTuple((0..self.arity()).map(|i| self.0[g.apply(i)]).collect()))
    }

    /// Coordinates at `positions` (0-based), in that order.
    pub fn project(&self, positions: &[usize]) -> KTuple {
        KTuple(positions.iter().map(|&i| self.0[i]).collect())
    }

    /// `a` followed by `b`; the coordinate sets must be disjoint.
    pub fn concatenate(&self, other: &KTuple) -> Result<KTuple> {
        if self.0.iter().any(|p| other.0.contains(p)) {
            return Err(Error::DiagonalViolation);
        }
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Ok(KTuple(v))
    }
}

impl fmt::Display for KTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pts: Vec<String> = self.points().map(|p| (p + 1).to_string()).collect();
        write!(f, "({})", pts.join(","))
    }
}

impl fmt::Debug for KTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for KTuple {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_one_based().serialize(s)
    }
}

impl<'de> Deserialize<'de> for KTuple {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        KTuple::from_one_based(&v).map_err(serde::de::Error::custom)
    }
}

/// A finite set of tuples kept sorted and deduplicated, so equality is set equality.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TupleSet {
    tuples: Vec<KTuple>,
}

impl TupleSet {
    pub fn new() -> Self {
        TupleSet::default()
    }

    pub fn singleton(t: KTuple) -> Self {
        TupleSet { tuples: vec![t] }
    }

    pub fn from_sorted_unchecked(tuples: Vec<KTuple>) -> Self {
        debug_assert!(tuples.windows(2).all(|w| w[0] < w[1]));
        TupleSet { tuples }
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, KTuple> {
        self.tuples.iter()
    }

    pub fn as_slice(&self) -> &[KTuple] {
        &self.tuples
    }

    pub fn first(&self) -> Option<&KTuple> {
        self.tuples.first()
    }

    pub fn contains(&self, t: &KTuple) -> bool {
        self.tuples.binary_search(t).is_ok()
    }

    pub fn position(&self, t: &KTuple) -> Option<usize> {
        self.tuples.binary_search(t).ok()
    }

    pub fn is_subset(&self, other: &TupleSet) -> bool {
        self.tuples.iter().all(|t| other.contains(t))
    }

    pub fn is_disjoint(&self, other: &TupleSet) -> bool {
        self.tuples.iter().all(|t| !other.contains(t))
    }

    pub fn intersection(&self, other: &TupleSet) -> TupleSet {
        TupleSet {
            tuples: self.tuples.iter().filter(|t| other.contains(t)).cloned().collect(),
        }
    }

    pub fn union(&self, other: &TupleSet) -> TupleSet {
        self.iter().chain(other.iter()).cloned().collect()
    }

    /// Left action: the image set `{g·t}`.
    pub fn act(&self, g: &Permutation) -> TupleSet {
        self.tuples.iter().map(|t| t.act(g)).collect()
    }

    /// Right action applied tuple by tuple (each tuple must have full arity).
    pub fn right_act(&self, g: &Permutation) -> Result<TupleSet> {
        self.tuples.iter().map(|t| t.right_act(g)).collect()
    }

    /// Union of the coordinate sets, sorted.
    pub fn support(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.tuples.iter().flat_map(|t| t.points()).collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    /// Distinct coordinate sets `Co(X)` with their multiplicities, sorted.
    pub fn coordinate_family(&self) -> Vec<(Vec<usize>, usize)> {
        let mut m: std::collections::BTreeMap<Vec<usize>, usize> = Default::default();
        for t in &self.tuples {
            *m.entry(t.coordinates()).or_insert(0) += 1;
        }
        m.into_iter().collect()
    }

    pub fn to_one_based(&self) -> Vec<Vec<usize>> {
        self.tuples.iter().map(|t| t.to_one_based()).collect()
    }
}

impl FromIterator<KTuple> for TupleSet {
    fn from_iter<I: IntoIterator<Item = KTuple>>(iter: I) -> Self {
        let mut tuples: Vec<KTuple> = iter.into_iter().collect();
        tuples.sort_unstable();
        tuples.dedup();
        TupleSet { tuples }
    }
}

impl<'a> IntoIterator for &'a TupleSet {
    type Item = &'a KTuple;
    type IntoIter = std::slice::Iter<'a, KTuple>;

    fn into_iter(self) -> Self::IntoIter {
        self.tuples.iter()
    }
}

impl fmt::Display for TupleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.tuples.iter().map(|t| t.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl fmt::Debug for TupleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for TupleSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.tuples.serialize(s)
    }
}

impl<'de> Deserialize<'de> for TupleSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(Vec::<KTuple>::deserialize(d)?.into_iter().collect())
    }
}

/// Coordinate selection over a set of tuples; duplicates collapse.
pub fn project(tuples: &TupleSet, positions: &[usize]) -> Result<TupleSet> {
    let arity = tuples.first().map_or(usize::MAX, |t| t.arity());
    let mut seen = std::collections::HashSet::new();
    for &i in positions {
        if !seen.insert(i) {
            return Err(Error::InvalidPositions(format!("position {} repeated", i + 1)));
        }
        if i >= arity {
            return Err(Error::InvalidPositions(format!("position {} exceeds arity", i + 1)));
        }
    }
    if tuples.iter().any(|t| t.arity() != arity) {
        return Err(Error::InvalidPositions("tuples of mixed arity".into()));
    }
    Ok(tuples.iter().map(|t| t.project(positions)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(points: &[usize]) -> KTuple {
        KTuple::from_one_based(points).unwrap()
    }

    fn g(images: &[usize]) -> Permutation {
        Permutation::from_images_one_based(images).unwrap()
    }

    #[test]
    fn left_action_is_coordinatewise() {
        assert_eq!(t(&[1, 3]).act(&g(&[2, 3, 4, 1])), t(&[2, 4]));
        let s: TupleSet = [t(&[1, 2, 3]), t(&[1, 3, 2])].into_iter().collect();
        assert_eq!(s.act(&Permutation::identity(3)), s);
    }

    #[test]
    fn right_action_reindexes_positions() {
        let g = g(&[3, 1, 2]);
        assert_eq!(t(&[1, 2, 3]).right_act(&g).unwrap(), t(&[3, 1, 2]));
        assert_eq!(t(&[1, 3, 2]).right_act(&g).unwrap(), t(&[2, 1, 3]));
        assert_eq!(t(&[2, 3, 1]).right_act(&Permutation::identity(3)).unwrap(), t(&[2, 3, 1]));
        assert_eq!(
            t(&[1, 2]).right_act(&g),
            Err(Error::UnsupportedRightAction { arity: 2, degree: 3 })
        );
    }

    #[test]
    fn diagonal_tuples_rejected() {
        assert_eq!(KTuple::from_one_based(&[1, 1]), Err(Error::DiagonalViolation));
    }

    #[test]
    fn concatenation() {
        assert_eq!(t(&[1, 2]).concatenate(&t(&[3, 4])).unwrap(), t(&[1, 2, 3, 4]));
        assert_eq!(t(&[1, 2]).concatenate(&t(&[])).unwrap(), t(&[1, 2]));
        assert_eq!(t(&[1, 2]).concatenate(&t(&[2, 3])), Err(Error::DiagonalViolation));
    }

    #[test]
    fn projection() {
        let single = TupleSet::singleton(t(&[1, 2, 3]));
        assert_eq!(project(&single, &[1]).unwrap(), TupleSet::singleton(t(&[2])));
        assert_eq!(project(&single, &[0, 1, 2]).unwrap(), single);
        assert!(project(&single, &[0, 0]).is_err());
        assert!(project(&single, &[3]).is_err());
        let two: TupleSet = [t(&[1, 2, 3]), t(&[1, 3, 2])].into_iter().collect();
        assert_eq!(project(&two, &[0]).unwrap(), TupleSet::singleton(t(&[1])));
    }
}
