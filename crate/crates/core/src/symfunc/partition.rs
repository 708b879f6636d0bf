use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::kernel::{int, Rational};

/// Weakly decreasing sequence of positive integers.
///
/// Ordered by size, then reverse-lexicographically, so that within a degree
/// `(n)` comes first and `(1^n)` last.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Sorts the parts and drops zeros.
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Validates that `parts` is already a partition.
    pub fn from_parts(parts: Vec<usize>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Invalid(format!("{parts:?} is not a partition")));
        }
        Ok(Partition(parts))
    }

    /// Parses `"2,1"`, `"(2,1)"`, `"[]"` or `""`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim().trim_matches(|c| matches!(c, '(' | ')' | '[' | ']'));
        if s.trim().is_empty() {
            return Ok(Self::empty());
        }
        let parts = s
            .split(',')
            .map(|x| x.trim().parse::<usize>().map_err(|_| Error::Invalid(format!("bad part {x:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::from_parts(parts)
    }

    /// The rectangle `(r^s)`.
    pub fn rectangle(r: usize, s: usize) -> Self {
        Self::new(vec![r; s])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of parts equal to `i`.
    pub fn multiplicity(&self, i: usize) -> usize {
        self.0.iter().filter(|&&p| p == i).count()
    }

    /// `prod_i i^{m_i} m_i!`.
    pub fn z_lambda(&self) -> Rational {
        let mut z = int(1);
        let mut k = 0;
        while k < self.0.len() {
            let part = self.0[k];
            let mut m = 0;
            while k < self.0.len() && self.0[k] == part {
                m += 1;
                k += 1;
                z *= int((part * m) as i64);
            }
        }
        z
    }

    /// Multiset union.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Partition::new(v)
    }

    pub fn conjugate(&self) -> Partition {
        let n = self.0.first().copied().unwrap_or(0);
        Partition((1..=n).map(|j| self.0.iter().filter(|&&p| p >= j).count()).collect())
    }

    /// `self <= other` in dominance order; false for different sizes.
    pub fn dominance_leq(&self, other: &Partition) -> bool {
        if self.size() != other.size() {
            return false;
        }
        let (mut a, mut b) = (0, 0);
        for k in 0..self.0.len().max(other.0.len()) {
            a += self.0.get(k).copied().unwrap_or(0);
            b += other.0.get(k).copied().unwrap_or(0);
            if a > b {
                return false;
            }
        }
        true
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size().cmp(&other.size()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// All partitions of `n` in canonical order.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for k in (1..=max.min(n)).rev() {
            cur.push(k);
            rec(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::from_parts(v.to_vec()).unwrap()
    }

    #[test]
    fn z_values() {
        assert_eq!(Partition::empty().z_lambda(), int(1));
        assert_eq!(p(&[1, 1]).z_lambda(), int(2));
        assert_eq!(p(&[2, 1]).z_lambda(), int(2));
        assert_eq!(p(&[2, 2, 1]).z_lambda(), int(8));
    }

    #[test]
    fn dominance() {
        assert!(p(&[1, 1]).dominance_leq(&p(&[2])));
        assert!(p(&[3, 1]).dominance_leq(&p(&[3, 1])));
        assert!(!p(&[3, 1, 1, 1]).dominance_leq(&p(&[2, 2, 2])));
        assert!(!p(&[2, 2, 2]).dominance_leq(&p(&[3, 1, 1, 1])));
        assert!(!p(&[1]).dominance_leq(&p(&[2])));
    }

    #[test]
    fn canonical_order() {
        let ps = partitions(3);
        assert_eq!(ps, vec![p(&[3]), p(&[2, 1]), p(&[1, 1, 1])]);
        assert!(ps.windows(2).all(|w| w[0] < w[1]));
        assert!(p(&[1, 1]) > p(&[2]) && p(&[2]) > p(&[1]));
    }

    #[test]
    fn parse_and_conjugate() {
        assert_eq!(Partition::parse("2,2,1").unwrap(), p(&[2, 2, 1]));
        assert_eq!(Partition::parse("[]").unwrap(), Partition::empty());
        assert!(Partition::parse("1,2").is_err());
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
    }
}
