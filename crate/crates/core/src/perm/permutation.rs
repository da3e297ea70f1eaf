use std::collections::BTreeMap;
use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported degree; images are stored as bytes.
pub const MAX_DEGREE: usize = 255;

/// A bijection of `{0, .., n-1}` stored as its image array.
///
/// The derived ordering is lexicographic on image arrays, which is the
/// canonical element order used by every group in this crate.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[u8]>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        assert!(degree <= MAX_DEGREE, "degree {degree} exceeds {MAX_DEGREE}");
        Permutation {
            images: (0..degree).map(|i| i as u8).collect(),
        }
    }

    /// Builds a permutation from 0-based images.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n > MAX_DEGREE {
            return Err(Error::MalformedPermutation(format!(
                "degree {n} exceeds {MAX_DEGREE}"
            )));
        }
        let mut seen = vec![false; n];
        for &x in images {
            if x >= n {
                return Err(Error::MalformedPermutation(format!(
                    "image {} out of range 1..={n}",
                    x + 1
                )));
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(Error::MalformedPermutation(format!(
                    "image {} appears twice",
                    x + 1
                )));
            }
        }
        Ok(Permutation {
            images: images.iter().map(|&x| x as u8).collect(),
        })
    }

    /// Builds a permutation from 1-based images, as written in files.
    pub fn from_images_one_based(images: &[usize]) -> Result<Self> {
        let zero: Vec<usize> = images
            .iter()
            .map(|&x| {
                x.checked_sub(1).ok_or_else(|| {
                    Error::MalformedPermutation("point 0 in 1-based image list".into())
                })
            })
            .collect::<Result<_>>()?;
        Self::from_images(&zero)
    }

    /// Builds a permutation from 0-based cycles; each point maps to its
    /// successor in its cycle and the last point maps to the first.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x >= degree {
                    return Err(Error::MalformedPermutation(format!(
                        "point {} out of range 1..={degree}",
                        x + 1
                    )));
                }
                if std::mem::replace(&mut used[x], true) {
                    return Err(Error::MalformedPermutation(format!(
                        "point {} appears twice in cycle notation",
                        x + 1
                    )));
                }
                images[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Self::from_images(&images)
    }

    /// Parses `"[i1,...,in]"` (1-based image list) or cycle notation
    /// `"(a b c)(d e)"`; `"()"` is the identity.
    pub fn parse(text: &str, degree: usize) -> Result<Self> {
        let text = text.trim();
        if let Some(body) = text.strip_prefix('[') {
            let body = body.strip_suffix(']').ok_or_else(|| {
                Error::MalformedPermutation(format!("unterminated image list {text:?}"))
            })?;
            let images = parse_points(body)?;
            if images.len() != degree {
                return Err(Error::MalformedPermutation(format!(
                    "expected {degree} images, got {}",
                    images.len()
                )));
            }
            return Self::from_images_one_based(&images);
        }
        if text.starts_with('(') {
            let mut cycles = Vec::new();
            let mut rest = text;
            while !rest.is_empty() {
                let inner = rest
                    .strip_prefix('(')
                    .ok_or_else(|| Error::MalformedPermutation(format!("bad cycle text {rest:?}")))?;
                let close = inner.find(')').ok_or_else(|| {
                    Error::MalformedPermutation(format!("unterminated cycle in {text:?}"))
                })?;
                let points = parse_points(&inner[..close])?;
                let cycle = points
                    .into_iter()
                    .map(|p| {
                        if p == 0 || p > degree {
                            Err(Error::MalformedPermutation(format!(
                                "point {p} out of range 1..={degree}"
                            )))
                        } else {
                            Ok(p - 1)
                        }
                    })
                    .collect::<Result<Vec<_>>>()?;
                if !cycle.is_empty() {
                    cycles.push(cycle);
                }
                rest = inner[close + 1..].trim_start();
            }
            return Self::from_cycles(degree, &cycles);
        }
        Err(Error::MalformedPermutation(format!(
            "expected image list or cycle notation, got {text:?}"
        )))
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.images.iter().map(|&x| x as usize)
    }

    pub fn images_one_based(&self) -> Vec<usize> {
        self.images().map(|x| x + 1).collect()
    }

    /// `p.compose(q)` maps `x` to `p(q(x))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&x| self.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Permutation {
            images: inv.into_boxed_slice(),
        }
    }

    /// `x * self * x^-1`.
    pub fn conjugate_by(&self, x: &Permutation) -> Permutation {
        let mut out = vec![0u8; self.degree()];
        for i in 0..self.degree() {
            out[x.apply(i)] = x.images[self.apply(i)];
        }
        Permutation {
            images: out.into_boxed_slice(),
        }
    }

    pub fn pow(&self, mut e: usize) -> Permutation {
        let mut acc = Permutation::identity(self.degree());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose_unchecked(&base);
            }
            base = base.compose_unchecked(&base);
            e >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn fixed_points(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &x)| i == x as usize)
            .count()
    }

    /// All cycles including fixed points, each starting at its smallest
    /// point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        let mut counts = BTreeMap::new();
        for c in self.cycles() {
            *counts.entry(c.len()).or_insert(0) += 1;
        }
        CycleType(counts)
    }

    pub fn order(&self) -> usize {
        self.cycles()
            .iter()
            .fold(1, |acc, c| num_integer::lcm(acc, c.len()))
    }

    /// Cycle notation with 1-based points, fixed points omitted; `()` for the identity.
    pub fn to_cycle_string(&self) -> String {
        let parts: Vec<String> = self
            .cycles()
            .into_iter()
            .filter(|c| c.len() > 1)
            .map(|c| {
                let pts: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
                format!("({})", pts.join(" "))
            })
            .collect();
        if parts.is_empty() {
            "()".to_string()
        } else {
            parts.concat()
        }
    }
}

fn parse_points(body: &str) -> Result<Vec<usize>> {
    body.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<usize>()
                .map_err(|_| Error::MalformedPermutation(format!("not a point: {s:?}")))
        })
        .collect()
}

impl Mul for &Permutation {
    type Output = Permutation;

    /// Applies the right operand first. Panics on a degree mismatch.
    fn mul(self, rhs: &Permutation) -> Permutation {
        assert_eq!(self.degree(), rhs.degree(), "degree mismatch in composition");
        self.compose_unchecked(rhs)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.images().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", x + 1)?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.images_one_based().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let images = Vec::<usize>::deserialize(d)?;
        Permutation::from_images_one_based(&images).map_err(serde::de::Error::custom)
    }
}

/// Multiset of cycle lengths (fixed points count as 1-cycles).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CycleType(BTreeMap<usize, usize>);

impl CycleType {
    pub fn from_counts(counts: impl IntoIterator<Item = (usize, usize)>) -> Self {
        CycleType(counts.into_iter().filter(|&(_, m)| m > 0).collect())
    }

    /// True iff every cycle has the same length.
    pub fn is_uniform(&self) -> bool {
        self.0.len() == 1
    }

    pub fn multiplicity(&self, length: usize) -> usize {
        self.0.get(&length).copied().unwrap_or(0)
    }

    pub fn lengths(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.iter().map(|(&l, &m)| (l, m))
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|(l, m)| l * m).sum()
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(l, m)| format!("{l}:{m}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(images: &[usize]) -> Permutation {
        Permutation::from_images_one_based(images).unwrap()
    }

    #[test]
    fn parse_image_list_and_cycles() {
        assert_eq!(Permutation::parse("[2,3,4,1]", 4).unwrap(), p(&[2, 3, 4, 1]));
        assert_eq!(Permutation::parse("()", 3).unwrap(), Permutation::identity(3));
        assert_eq!(Permutation::parse("(1 2 3)(4 5)", 5).unwrap(), p(&[2, 3, 1, 5, 4]));
        assert_eq!(Permutation::parse("(1,3)", 3).unwrap(), p(&[3, 2, 1]));
    }

    #[test]
    fn parse_rejects_malformed() {
        for (text, n) in [
            ("[2,2,3]", 3),
            ("[1,2]", 3),
            ("[0,1,2]", 3),
            ("(1 4)", 3),
            ("(1 2)(2 3)", 3),
            ("(1 2", 3),
            ("1 2 3", 3),
        ] {
            assert!(
                matches!(Permutation::parse(text, n), Err(Error::MalformedPermutation(_))),
                "{text} should be rejected"
            );
        }
    }

    #[test]
    fn compose_applies_right_operand_first() {
        let a = p(&[2, 1, 3]);
        let b = p(&[1, 3, 2]);
        let c = a.compose(&b).unwrap();
        for x in 0..3 {
            assert_eq!(c.apply(x), a.apply(b.apply(x)));
        }
        assert_eq!(c, p(&[2, 3, 1]));
        assert_eq!(a.compose(&Permutation::identity(3)).unwrap(), a);
        assert!(a.compose(&a.inverse()).unwrap().is_identity());
        assert!(matches!(
            a.compose(&Permutation::identity(4)),
            Err(Error::DegreeMismatch { left: 3, right: 4 })
        ));
    }

    #[test]
    fn cycle_types() {
        assert_eq!(p(&[2, 1, 4, 3]).cycle_type(), CycleType::from_counts([(2, 2)]));
        assert_eq!(p(&[2, 1, 3]).cycle_type(), CycleType::from_counts([(2, 1), (1, 1)]));
        assert_eq!(
            Permutation::identity(5).cycle_type(),
            CycleType::from_counts([(1, 5)])
        );
        assert!(p(&[2, 1, 4, 3]).cycle_type().is_uniform());
        assert!(!p(&[2, 1, 3]).cycle_type().is_uniform());
    }

    #[test]
    fn order_power_and_conjugation() {
        let g = p(&[2, 3, 1, 5, 4]);
        assert_eq!(g.order(), 6);
        assert!(g.pow(6).is_identity());
        assert!(!g.pow(3).is_identity());
        let x = p(&[5, 4, 3, 2, 1]);
        assert_eq!(g.conjugate_by(&x), &(&x * &g) * &x.inverse());
        assert_eq!(g.to_cycle_string(), "(1 2 3)(4 5)");
    }

    #[test]
    fn serde_is_one_based() {
        let g = p(&[2, 3, 1]);
        assert_eq!(serde_json::to_string(&g).unwrap(), "[2,3,1]");
        let back: Permutation = serde_json::from_str("[2,3,1]").unwrap();
        assert_eq!(back, g);
        assert!(serde_json::from_str::<Permutation>("[1,1,2]").is_err());
    }
}
