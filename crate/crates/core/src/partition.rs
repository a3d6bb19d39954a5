//! Integer partitions with a fixed deterministic enumeration order.

use std::fmt;

use serde::{Deserialize, Serialize};

/// A partition: non-increasing positive parts. The empty partition is the
/// unique partition of 0.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, Default)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Partition {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Partition {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of parts equal to `m`.
    pub fn multiplicity(&self, m: usize) -> usize {
        self.0.iter().filter(|&&p| p == m).count()
    }

    /// Add one part of size `m` (`m > 0`), keeping parts sorted.
    pub fn with_part(&self, m: usize) -> Partition {
        debug_assert!(m > 0);
        let mut v = self.0.clone();
        let pos = v.partition_point(|&p| p > m);
        v.insert(pos, m);
        Partition(v)
    }

    /// Remove one part equal to `m` and add one of size `m - k` when positive.
    /// Returns `None` when `m` is not a part.
    pub fn strip(&self, m: usize, k: usize) -> Option<Partition> {
        let pos = self.0.iter().position(|&p| p == m)?;
        let mut v = self.0.clone();
        v.remove(pos);
        let mut out = Partition(v);
        if m > k {
            out = out.with_part(m - k);
        }
        Some(out)
    }

    /// Product of factorials of part multiplicities (order of the symmetry
    /// group permuting equal parts).
    pub fn symmetry_order(&self) -> u64 {
        let mut acc = 1u64;
        let mut run = 1u64;
        for w in self.0.windows(2) {
            if w[0] == w[1] {
                run += 1;
                acc *= run;
            } else {
                run = 1;
            }
        }
        acc
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// All partitions of `m`, largest-first lexicographic order.
pub fn partitions_of(m: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut acc = Vec::new();
    fn rec(rem: usize, max: usize, acc: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition(acc.clone()));
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            acc.push(p);
            rec(rem - p, p, acc, out);
            acc.pop();
        }
    }
    rec(m, m, &mut acc, &mut out);
    out
}

/// Number of partitions of `m` by direct enumeration.
pub fn partition_count(m: usize) -> usize {
    partitions_of(m).len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_partition_lists() {
        assert_eq!(partitions_of(0), vec![Partition::empty()]);
        assert_eq!(partitions_of(4).len(), 5);
        let p4: Vec<String> = partitions_of(4).iter().map(|p| p.to_string()).collect();
        assert_eq!(p4, vec!["(4)", "(3,1)", "(2,2)", "(2,1,1)", "(1,1,1,1)"]);
    }

    #[test]
    fn counts_match_pentagonal_recurrence() {
        // independent oracle: Euler's pentagonal number recurrence
        let top = 20usize;
        let mut p = vec![0i64; top + 1];
        p[0] = 1;
        #[allow(clippy::needless_range_loop)]
        for m in 1..=top {
            let mut acc = 0i64;
            let mut k = 1i64;
            loop {
                let g1 = (k * (3 * k - 1) / 2) as usize;
                if g1 > m {
                    break;
                }
                let sign = if k % 2 == 1 { 1 } else { -1 };
                acc += sign * p[m - g1];
                let g2 = (k * (3 * k + 1) / 2) as usize;
                if g2 <= m {
                    acc += sign * p[m - g2];
                }
                k += 1;
            }
            p[m] = acc;
        }
        for (m, &expected) in p.iter().enumerate() {
            assert_eq!(partition_count(m) as i64, expected, "p({m})");
        }
    }

    #[test]
    fn strip_and_with_part() {
        let a = Partition::new(vec![3, 1]);
        assert_eq!(a.strip(3, 2), Some(Partition::new(vec![1, 1])));
        assert_eq!(a.strip(3, 3), Some(Partition::new(vec![1])));
        assert_eq!(a.strip(2, 1), None);
        assert_eq!(a.with_part(2), Partition::new(vec![3, 2, 1]));
    }

    #[test]
    fn symmetry_order() {
        assert_eq!(Partition::new(vec![2, 2, 2, 1]).symmetry_order(), 6);
        assert_eq!(Partition::new(vec![3, 2, 1]).symmetry_order(), 1);
        assert_eq!(Partition::empty().symmetry_order(), 1);
    }
}
