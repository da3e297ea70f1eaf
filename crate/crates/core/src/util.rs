/// Union-find with path halving; `find` returns the smallest-index
/// representative so component labelling is deterministic.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true when two distinct classes were merged.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    /// Classes as sorted member lists, ordered by their smallest member.
    pub fn classes(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut slot = vec![usize::MAX; n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for x in 0..n {
            let r = self.find(x);
            if slot[r] == usize::MAX {
                slot[r] = out.len();
                out.push(Vec::new());
            }
            out[slot[r]].push(x);
        }
        out
    }
}

pub fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// `Some(p)` when `n = p^a` with `a >= 1`.
pub fn prime_power_base(n: usize) -> Option<usize> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n % d == 0)?;
    let mut m = n;
    while m % p == 0 {
        m /= p;
    }
    (m == 1).then_some(p)
}

pub fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n % d == 0).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn union_find_classes_are_ordered() {
        let mut uf = UnionFind::new(5);
        uf.union(3, 1);
        uf.union(4, 0);
        assert_eq!(uf.classes(), vec![vec![0, 4], vec![1, 3], vec![2]]);
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power_base(8), Some(2));
        assert_eq!(prime_power_base(9), Some(3));
        assert_eq!(prime_power_base(6), None);
        assert_eq!(prime_power_base(1), None);
        assert!(is_prime(7) && !is_prime(9));
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
    }
}
