use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An integer partition, parts weakly decreasing and positive.
///
/// Labels both unipotent characters of `GL_n(q)` and two-sided cells of `S_n`
/// (through the RSK shape). Orders lexicographically on the parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition { parts })
    }

    /// The one-row partition `(n)`.
    pub fn row(n: usize) -> Self {
        Partition {
            parts: if n == 0 { vec![] } else { vec![n] },
        }
    }

    /// The one-column partition `(1^n)`.
    pub fn column(n: usize) -> Self {
        Partition { parts: vec![1; n] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn transpose(&self) -> Partition {
        let cols = self.parts.first().copied().unwrap_or(0);
        Partition {
            parts: (1..=cols)
                .map(|j| self.parts.iter().take_while(|&&p| p >= j).count())
                .collect(),
        }
    }

    /// `n(lambda) = sum (i-1) lambda_i`.
    pub fn n_statistic(&self) -> usize {
        self.parts.iter().enumerate().map(|(i, &p)| i * p).sum()
    }

    /// Hook lengths of all boxes, row by row.
    pub fn hooks(&self) -> Vec<usize> {
        let t = self.transpose();
        let mut out = Vec::with_capacity(self.size());
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row {
                out.push((row - j - 1) + (t.parts[j] - i - 1) + 1);
            }
        }
        out
    }

    /// Dominance order: `self` dominates `other` (both of the same size).
    pub fn dominates(&self, other: &Partition) -> bool {
        let mut a = 0;
        let mut b = 0;
        for k in 0..self.parts.len().max(other.parts.len()) {
            a += self.parts.get(k).copied().unwrap_or(0);
            b += other.parts.get(k).copied().unwrap_or(0);
            if a < b {
                return false;
            }
        }
        true
    }

    /// Partial comparison in dominance order.
    pub fn dominance_cmp(&self, other: &Partition) -> Option<Ordering> {
        match (self.dominates(other), other.dominates(self)) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Greater),
            (false, true) => Some(Ordering::Less),
            (false, false) => None,
        }
    }
}

/// All partitions of `n`, in decreasing lexicographic order (starting with `(n)`).
pub fn partitions(n: usize) -> Vec<Partition> {
    fn rec(remaining: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=remaining.min(max)).rev() {
            cur.push(p);
            rec(remaining - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Vec<usize> {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches(['[', '(']).trim_end_matches([']', ')']);
        if inner.trim().is_empty() {
            return Ok(Partition { parts: vec![] });
        }
        let parts = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidPartition(format!("bad part {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lam(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn basic_statistics() {
        assert_eq!(lam("[2,1]").hooks(), vec![3, 1, 1]);
        assert_eq!(lam("[2,1]").n_statistic(), 1);
        assert_eq!(Partition::column(4).n_statistic(), 6);
        assert_eq!(lam("[3,1]").transpose(), lam("[2,1,1]"));
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert_eq!(lam("(3,2)").to_string(), "[3,2]");
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=10).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
        assert_eq!(partitions(4)[0], Partition::row(4));
        assert_eq!(*partitions(4).last().unwrap(), Partition::column(4));
    }

    #[test]
    fn transpose_and_hook_identity() {
        for n in 1..=10 {
            for l in partitions(n) {
                assert_eq!(l.transpose().transpose(), l);
                let hook_sum: usize = l.hooks().iter().sum();
                assert_eq!(l.n_statistic() + l.transpose().n_statistic() + n, hook_sum);
            }
        }
    }

    #[test]
    fn dominance() {
        assert!(lam("[3,2]").dominates(&lam("[3,1,1]")));
        assert_eq!(lam("[3,1,1,1]").dominance_cmp(&lam("[2,2,2]")), None);
        for n in 1..=6 {
            let ps = partitions(n);
            for a in &ps {
                assert!(Partition::row(n).dominates(a));
                assert!(a.dominates(&Partition::column(n)));
                for b in &ps {
                    // transpose reverses dominance
                    assert_eq!(a.dominates(b), b.transpose().dominates(&a.transpose()));
                }
            }
        }
    }
}
