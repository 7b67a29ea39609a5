//! Small combinatorial helpers: union-find and budgeted subset enumeration.

use crate::{Error, Result};

/// Default cap on enumerated items (paths, scenarios, subsets).
pub const DEFAULT_ENUMERATION_CAP: u128 = 1_000_000;

#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns `false` if `a` and `b` were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// Number of subsets of `{0..n}` with at most `k` elements.
pub fn count_subsets_up_to(n: usize, k: usize) -> u128 {
    (0..=k.min(n)).fold(0u128, |acc, j| acc.saturating_add(binomial(n, j)))
}

pub fn check_cap(count: u128, cap: u128) -> Result<()> {
    if count > cap {
        Err(Error::EnumerationTooLarge { count, cap })
    } else {
        Ok(())
    }
}

/// Visits every subset of `{0..n}` with at most `k` elements in
/// lexicographic order of the sorted index lists (`[] < [0] < [0,1] < [1]`).
pub fn for_each_subset_up_to<F: FnMut(&[usize])>(n: usize, k: usize, mut f: F) {
    fn rec<F: FnMut(&[usize])>(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, f: &mut F) {
        f(cur);
        if cur.len() == k {
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, k, i + 1, cur, f);
            cur.pop();
        }
    }
    let mut cur = Vec::with_capacity(k.min(n));
    rec(n, k, 0, &mut cur, &mut f);
}

/// Maximises `value` over subsets of size at most `k`; ties keep the
/// lexicographically smallest subset. Infinite values are allowed.
pub fn argmax_subset<F: FnMut(&[usize]) -> Result<f64>>(
    n: usize,
    k: usize,
    cap: u128,
    mut value: F,
) -> Result<(f64, Vec<usize>)> {
    check_cap(count_subsets_up_to(n, k), cap)?;
    let mut best = (f64::NEG_INFINITY, Vec::new());
    let mut err = None;
    for_each_subset_up_to(n, k, |s| {
        if err.is_some() {
            return;
        }
        match value(s) {
            Ok(v) => {
                let better = if best.0 == f64::NEG_INFINITY {
                    true
                } else if v.is_infinite() || best.0.is_infinite() {
                    v > best.0
                } else {
                    v > best.0 + 1e-9 * (1.0 + best.0.abs())
                };
                if better {
                    best = (v, s.to_vec());
                }
            }
            Err(e) => err = Some(e),
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(best),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_in_lexicographic_order() {
        let mut seen = Vec::new();
        for_each_subset_up_to(3, 2, |s| seen.push(s.to_vec()));
        let expected: Vec<Vec<usize>> = vec![
            vec![],
            vec![0],
            vec![0, 1],
            vec![0, 2],
            vec![1],
            vec![1, 2],
            vec![2],
        ];
        assert_eq!(seen, expected);
        assert_eq!(count_subsets_up_to(3, 2), 7);
        assert_eq!(count_subsets_up_to(4, 1), 5);
    }

    #[test]
    fn argmax_breaks_ties_lexicographically() {
        let (v, s) = argmax_subset(3, 1, 100, |s| Ok(if s.is_empty() { 0.0 } else { 1.0 })).unwrap();
        assert_eq!((v, s), (1.0, vec![0]));
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            argmax_subset(40, 20, DEFAULT_ENUMERATION_CAP, |_| Ok(0.0)),
            Err(Error::EnumerationTooLarge { .. })
        ));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(10, 3), 120);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(60, 30), 118264581564861424);
    }
}
