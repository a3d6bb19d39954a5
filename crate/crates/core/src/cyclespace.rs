//! The invariant cycle space attached to an order-two divisor class on the
//! (n+1)-fold self-product of a curve.
//!
//! Embeddings of the curve into its self-product, with each coordinate either
//! the identity or constant equal to one of the 2n marked points, fall into
//! orbits indexed by unordered pairs of partitions `{alpha, beta}` of total
//! weight at most n. Boundary points are indexed by pairs of total weight
//! n+1. The boundary conditions form an exact rational linear system; its
//! kernel is the space of invariant cycles.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, BigRational};
use thiserror::Error;

use crate::linalg::QMatrix;
use crate::partition::{partitions_of, Partition};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CycleSpaceError {
    #[error("invalid class: {0}")]
    InvalidClass(String),
    #[error("brute-force enumeration needs {0}^{1} raw maps; limit is n <= {2}")]
    TooLarge(usize, usize, usize),
}

/// Unordered pair of partitions with `|alpha| + |beta| <= n`, indexing an
/// orbit of embeddings. `k = n + 1 - |alpha| - |beta| >= 1` is the number of
/// identity coordinates.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EmbeddingClass {
    first: Partition,
    second: Partition,
    n: usize,
}

impl EmbeddingClass {
    pub fn new(a: Partition, b: Partition, n: usize) -> Result<EmbeddingClass, CycleSpaceError> {
        if a.weight() + b.weight() > n {
            return Err(CycleSpaceError::InvalidClass(format!(
                "|{a}| + |{b}| > {n}"
            )));
        }
        let (first, second) = if a <= b { (a, b) } else { (b, a) };
        Ok(EmbeddingClass { first, second, n })
    }

    pub fn first(&self) -> &Partition {
        &self.first
    }

    pub fn second(&self) -> &Partition {
        &self.second
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of identity coordinates.
    pub fn k(&self) -> usize {
        self.n + 1 - self.first.weight() - self.second.weight()
    }

    pub fn is_small_diagonal(&self) -> bool {
        self.first.is_empty() && self.second.is_empty()
    }

    pub fn label(&self) -> String {
        format!("{{{}|{}}}", self.first, self.second)
    }
}

impl fmt::Display for EmbeddingClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

impl fmt::Debug for EmbeddingClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// Unordered pair of partitions with `|alpha| + |beta| = n + 1`, indexing an
/// orbit of boundary points. The class `{(1,...,1), ()}` of weight n+1 is
/// excluded: there are only n marked points of each kind.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointClass {
    first: Partition,
    second: Partition,
    n: usize,
}

impl PointClass {
    pub fn new(a: Partition, b: Partition, n: usize) -> Result<PointClass, CycleSpaceError> {
        if a.weight() + b.weight() != n + 1 {
            return Err(CycleSpaceError::InvalidClass(format!(
                "|{a}| + |{b}| != {}",
                n + 1
            )));
        }
        let (first, second) = if a <= b { (a, b) } else { (b, a) };
        if Self::is_excluded(&first, &second, n) {
            return Err(CycleSpaceError::InvalidClass(format!(
                "{{{first}|{second}}} needs n+1 distinct letters of one kind"
            )));
        }
        Ok(PointClass { first, second, n })
    }

    fn is_excluded(first: &Partition, second: &Partition, n: usize) -> bool {
        let ones = |p: &Partition| p.len() == n + 1 && p.parts().iter().all(|&x| x == 1);
        (ones(first) && second.is_empty()) || (ones(second) && first.is_empty())
    }

    pub fn first(&self) -> &Partition {
        &self.first
    }

    pub fn second(&self) -> &Partition {
        &self.second
    }

    pub fn label(&self) -> String {
        format!("{{{}|{}}}", self.first, self.second)
    }
}

impl fmt::Display for PointClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

impl fmt::Debug for PointClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// All embedding classes for a given n, duplicate-free, in ascending order.
pub fn embedding_classes(n: usize) -> Vec<EmbeddingClass> {
    let mut out = Vec::new();
    for i in 0..=n {
        for j in 0..=(n - i) {
            for a in partitions_of(i) {
                for b in partitions_of(j) {
                    out.push(EmbeddingClass::new(a.clone(), b, n).unwrap());
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// All point classes for a given n, excluding `{(1,...,1), ()}`.
pub fn point_classes(n: usize) -> Vec<PointClass> {
    let mut out = Vec::new();
    for i in 0..=(n + 1) {
        let j = n + 1 - i;
        for a in partitions_of(i) {
            for b in partitions_of(j) {
                if let Ok(p) = PointClass::new(a.clone(), b, n) {
                    out.push(p);
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Fiber statistics of the incidence set relating embedding classes to the
/// point classes reached by filling the identity coordinates with one fresh
/// letter.
pub struct FiberReport {
    pub n: usize,
    /// `|p2^{-1}(P)|` per point class.
    pub point_fibers: Vec<(PointClass, usize)>,
    /// `|p1^{-1}(X)|` per embedding class (1 or 2).
    pub embedding_fibers: Vec<(EmbeddingClass, usize)>,
    /// Point classes with a single incidence.
    pub singleton_points: Vec<PointClass>,
    /// `1 + sum_{i=0}^{floor(n/2)} Pi(i)`: the count of embedding classes
    /// with a single incidence.
    pub partition_sum_bound: usize,
}

pub fn fiber_counts(n: usize) -> FiberReport {
    let embeddings = embedding_classes(n);
    let points = point_classes(n);
    let mut point_ix: BTreeMap<(Partition, Partition), usize> = BTreeMap::new();
    for (i, p) in points.iter().enumerate() {
        point_ix.insert((p.first.clone(), p.second.clone()), i);
    }
    let mut p2 = vec![0usize; points.len()];
    let mut p1 = Vec::with_capacity(embeddings.len());
    for x in &embeddings {
        let k = x.k();
        let mut incidences: Vec<(Partition, Partition)> = Vec::new();
        for (a, b) in [
            (x.first.clone(), x.second.with_part(k)),
            (x.first.with_part(k), x.second.clone()),
        ] {
            let key = if a <= b { (a, b) } else { (b, a) };
            if !incidences.contains(&key) {
                incidences.push(key);
            }
        }
        let mut count = 0;
        for key in incidences {
            if let Some(&ix) = point_ix.get(&key) {
                p2[ix] += 1;
                count += 1;
            }
        }
        p1.push((x.clone(), count));
    }
    let singleton_points: Vec<PointClass> = points
        .iter()
        .zip(&p2)
        .filter(|(_, &c)| c == 1)
        .map(|(p, _)| p.clone())
        .collect();
    let partition_sum_bound = 1 + (0..=(n / 2)).map(|i| partitions_of(i).len()).sum::<usize>();
    FiberReport {
        n,
        point_fibers: points.iter().cloned().zip(p2).collect(),
        embedding_fibers: p1,
        singleton_points,
        partition_sum_bound,
    }
}

/// The two families of point classes forced to have a single incidence:
/// `{(d,...,d), ()}` with `d > 1` dividing `n+1`, and `{alpha, alpha}` with
/// `alpha = (d,...,d)` and `d` dividing `(n+1)/2` for odd n.
pub fn forced_singleton(p: &PointClass, n: usize) -> bool {
    let rect = |q: &Partition| !q.is_empty() && q.parts().iter().all(|&x| x == q.parts()[0]);
    for (x, y) in [(&p.first, &p.second), (&p.second, &p.first)] {
        if y.is_empty() && rect(x) && x.parts()[0] > 1 && (n + 1).is_multiple_of(x.parts()[0]) {
            return true;
        }
    }
    if n % 2 == 1 && p.first == p.second && rect(&p.first) && n.div_ceil(2).is_multiple_of(p.first.parts()[0])
    {
        return true;
    }
    false
}

/// Boundary system: the relation matrix together with its row and column
/// labels. Rows are point classes, columns embedding classes.
pub struct BoundarySystem {
    pub matrix: QMatrix,
    pub embeddings: Vec<EmbeddingClass>,
    pub points: Vec<PointClass>,
}

impl BoundarySystem {
    pub fn small_diagonal_index(&self) -> usize {
        self.embeddings
            .iter()
            .position(|x| x.is_small_diagonal())
            .expect("small diagonal is always a class")
    }
}

fn binomial(m: usize, k: usize) -> BigInt {
    let mut num = BigInt::from(1);
    for i in 0..k {
        num *= BigInt::from((m - i) as u64);
    }
    for i in 1..=k {
        num /= BigInt::from(i as u64);
    }
    num
}

/// The exact boundary matrix.
///
/// The row of a point class P is the relation obtained at one fixed
/// representative point of P (first partition realized by a-letters, second
/// by b-letters). An embedding contributes to the coefficient at that point
/// once for every way of choosing a letter of the point and a k-subset of
/// its positions as the identity coordinates: a part `m` of the a-side
/// contributes `+2 * C(m, k)` to the column of the stripped class, a part of
/// the b-side `-2 * C(m, k)`.
pub fn boundary_system(n: usize) -> BoundarySystem {
    let embeddings = embedding_classes(n);
    let points = point_classes(n);
    let mut col_ix: BTreeMap<(Partition, Partition), usize> = BTreeMap::new();
    for (i, x) in embeddings.iter().enumerate() {
        col_ix.insert((x.first.clone(), x.second.clone()), i);
    }
    let mut matrix = QMatrix::zero(points.len(), embeddings.len());
    for (r, p) in points.iter().enumerate() {
        for (side, sign) in [(&p.first, 1i64), (&p.second, -1i64)] {
            let other = if side == &p.first { &p.second } else { &p.first };
            let mut seen_parts: Vec<usize> = Vec::new();
            for &m in side.parts() {
                if seen_parts.contains(&m) {
                    continue;
                }
                seen_parts.push(m);
                let mult = side.multiplicity(m);
                for k in 1..=m {
                    let stripped = side.strip(m, k).unwrap();
                    let (a, b) = if stripped <= *other {
                        (stripped, other.clone())
                    } else {
                        (other.clone(), stripped)
                    };
                    let col = col_ix[&(a, b)];
                    let coef = BigRational::from_integer(
                        BigInt::from(2 * sign * mult as i64) * binomial(m, k),
                    );
                    matrix.add_to(r, col, &coef);
                }
            }
        }
    }
    BoundarySystem {
        matrix,
        embeddings,
        points,
    }
}

/// Letters for the brute-force path: 0 is the identity, `1..=n` the a-letters,
/// `n+1..=2n` the b-letters.
type Letter = u8;

fn letter_partitions(word: &[Letter], n: usize) -> (Partition, Partition) {
    let mut a_mult = vec![0usize; n + 1];
    let mut b_mult = vec![0usize; n + 1];
    for &l in word {
        let l = l as usize;
        if l == 0 {
            continue;
        } else if l <= n {
            a_mult[l] += 1;
        } else {
            b_mult[l - n] += 1;
        }
    }
    (
        Partition::new(a_mult.into_iter().filter(|&m| m > 0).collect()),
        Partition::new(b_mult.into_iter().filter(|&m| m > 0).collect()),
    )
}

/// The representative point of a point class used for its matrix row:
/// a-letters 1, 2, ... realize the first partition part by part, then
/// b-letters realize the second, coordinates laid out left to right.
fn representative_point(p: &PointClass, n: usize) -> Vec<Letter> {
    let mut coords = Vec::with_capacity(n + 1);
    for (j, &m) in p.first.parts().iter().enumerate() {
        for _ in 0..m {
            coords.push((j + 1) as Letter);
        }
    }
    for (j, &m) in p.second.parts().iter().enumerate() {
        for _ in 0..m {
            coords.push((n + j + 1) as Letter);
        }
    }
    coords
}

/// Independent oracle: enumerate every raw map with at least one identity
/// coordinate, compute all of its boundary points literally, and aggregate
/// coefficients at the fixed representative points. Limited to n <= 5.
pub fn brute_force_system(n: usize) -> Result<BoundarySystem, CycleSpaceError> {
    const MAX_N: usize = 5;
    if n > MAX_N {
        return Err(CycleSpaceError::TooLarge(2 * n + 1, n + 1, MAX_N));
    }
    let embeddings = embedding_classes(n);
    let points = point_classes(n);
    let mut col_ix: BTreeMap<(Partition, Partition), usize> = BTreeMap::new();
    for (i, x) in embeddings.iter().enumerate() {
        col_ix.insert((x.first.clone(), x.second.clone()), i);
    }
    let mut rep_ix: BTreeMap<Vec<Letter>, usize> = BTreeMap::new();
    for (i, p) in points.iter().enumerate() {
        rep_ix.insert(representative_point(p, n), i);
    }
    let mut matrix = QMatrix::zero(points.len(), embeddings.len());
    let two = BigRational::from_integer(2.into());

    let width = n + 1;
    let letters = 2 * n + 1;
    let mut word = vec![0 as Letter; width];
    let mut point = vec![0 as Letter; width];
    loop {
        if word.contains(&0) {
            let (a, b) = letter_partitions(&word, n);
            let key = if a <= b { (a, b) } else { (b, a) };
            let col = col_ix[&key];
            for i in 1..=n {
                for (fill, sign) in [(i as Letter, 1), ((n + i) as Letter, -1)] {
                    for (dst, &src) in point.iter_mut().zip(word.iter()) {
                        *dst = if src == 0 { fill } else { src };
                    }
                    if let Some(&row) = rep_ix.get(&point) {
                        if sign > 0 {
                            matrix.add_to(row, col, &two);
                        } else {
                            matrix.add_to(row, col, &(-&two));
                        }
                    }
                }
            }
        }
        // odometer over all words
        let mut pos = 0;
        loop {
            if pos == width {
                return Ok(BoundarySystem {
                    matrix,
                    embeddings,
                    points,
                });
            }
            word[pos] += 1;
            if (word[pos] as usize) < letters {
                break;
            }
            word[pos] = 0;
            pos += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::kernel_basis;
    use num::Zero;

    #[test]
    fn classes_for_n1() {
        let e = embedding_classes(1);
        assert_eq!(e.len(), 2);
        assert!(e.iter().any(|x| x.is_small_diagonal()));
        assert!(e.iter().any(|x| x.label() == "{()|(1)}"));
        let p = point_classes(1);
        assert_eq!(p.len(), 2);
        let labels: Vec<String> = p.iter().map(|x| x.label()).collect();
        assert!(labels.contains(&"{()|(2)}".to_string()));
        assert!(labels.contains(&"{(1)|(1)}".to_string()));
    }

    #[test]
    fn small_diagonal_present_for_every_n() {
        for n in 1..=8 {
            assert!(embedding_classes(n).iter().any(|x| x.is_small_diagonal()));
        }
    }

    #[test]
    fn excluded_point_class_is_rejected() {
        let ones = Partition::new(vec![1, 1, 1]);
        assert!(PointClass::new(ones, Partition::empty(), 2).is_err());
        // and never enumerated
        for n in 1..=6 {
            for p in point_classes(n) {
                let all_ones = |q: &Partition| q.parts().iter().all(|&x| x == 1);
                assert!(!(p.second().is_empty() && all_ones(p.first())));
                assert!(!(p.first().is_empty() && all_ones(p.second())));
            }
        }
    }

    #[test]
    fn class_counts_match_brute_force_pair_enumeration() {
        // oracle: enumerate ordered pairs and deduplicate unordered ones
        for n in 1..=8usize {
            let mut seen = std::collections::BTreeSet::new();
            for i in 0..=n {
                for j in 0..=(n - i) {
                    for a in partitions_of(i) {
                        for b in partitions_of(j) {
                            let key = if a <= b { (a.clone(), b) } else { (b, a.clone()) };
                            seen.insert(key);
                        }
                    }
                }
            }
            assert_eq!(embedding_classes(n).len(), seen.len(), "n={n}");
        }
    }

    #[test]
    fn n1_kernel_is_one_dimensional() {
        let sys = boundary_system(1);
        assert_eq!(sys.matrix.rows(), 2);
        assert_eq!(sys.matrix.cols(), 2);
        let kernel = kernel_basis(&sys.matrix);
        assert_eq!(kernel.len(), 1);
    }

    #[test]
    fn small_diagonal_column_symmetry() {
        // fresh-a and fresh-b contributions of the small diagonal have equal
        // magnitude and opposite sign
        for n in [2usize, 3, 4] {
            let sys = boundary_system(n);
            let col = sys.small_diagonal_index();
            let fresh_a = PointClass::new(Partition::new(vec![n + 1]), Partition::empty(), n)
                .unwrap();
            let row = sys.points.iter().position(|p| *p == fresh_a).unwrap();
            let v = sys.matrix.get(row, col);
            assert!(!v.is_zero());
        }
    }

    #[test]
    fn forced_singleton_families() {
        // {(2,2),()} at n=3: d=2 divides 4
        let p = PointClass::new(Partition::new(vec![2, 2]), Partition::empty(), 3).unwrap();
        assert!(forced_singleton(&p, 3));
        // {(1,1),(1,1)} at n=3: alpha=beta=(1,1), d=1 divides 2
        let q = PointClass::new(Partition::new(vec![1, 1]), Partition::new(vec![1, 1]), 3)
            .unwrap();
        assert!(forced_singleton(&q, 3));
        // {(2,1),()} is not rectangular
        let r = PointClass::new(Partition::new(vec![2, 1]), Partition::empty(), 2).unwrap();
        assert!(!forced_singleton(&r, 2));
    }
}
