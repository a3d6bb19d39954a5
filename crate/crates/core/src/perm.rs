//! Exact permutation primitives for monodromy computations.
//!
//! Permutations act on `{1..k}` and are stored in one-line notation
//! (0-based internally). Composition follows the functional convention:
//! `compose(p, q)` applies `q` first, then `p`. Throughout the crate the
//! juxtaposition `p·q` of group elements means `compose(p, q)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("empty generator set")]
    EmptyGenerators,
    #[error("generators are not transitive; deck group on the fiber is undefined")]
    NotTransitive,
    #[error("invalid permutation data: {0}")]
    Invalid(String),
}

/// A permutation of `{1..k}` in one-line notation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm {
    images: Vec<u8>,
}

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        Perm {
            images: (0..degree as u8).collect(),
        }
    }

    /// Build from 1-based one-line notation: `images[i]` is the image of `i+1`.
    pub fn from_images(images: &[usize]) -> Result<Perm, PermError> {
        let k = images.len();
        if k == 0 || k > u8::MAX as usize {
            return Err(PermError::Invalid(format!("degree {k} out of range")));
        }
        let mut seen = vec![false; k];
        let mut v = Vec::with_capacity(k);
        for &im in images {
            if im < 1 || im > k || seen[im - 1] {
                return Err(PermError::Invalid(format!(
                    "images {images:?} are not a bijection of 1..{k}"
                )));
            }
            seen[im - 1] = true;
            v.push((im - 1) as u8);
        }
        Ok(Perm { images: v })
    }

    /// Build from disjoint-or-not cycles in 1-based labels.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Perm, PermError> {
        let mut p = Perm::identity(degree);
        for c in cycles {
            let mut q = Perm::identity(degree);
            for (pos, &x) in c.iter().enumerate() {
                let y = c[(pos + 1) % c.len()];
                if x < 1 || x > degree || y < 1 || y > degree {
                    return Err(PermError::Invalid(format!(
                        "cycle entry out of 1..{degree} in {c:?}"
                    )));
                }
                q.images[x - 1] = (y - 1) as u8;
            }
            let vals: Vec<u8> = q.images.clone();
            let mut seen = vec![false; degree];
            for &v in &vals {
                if seen[v as usize] {
                    return Err(PermError::Invalid(format!("repeated entry in cycle {c:?}")));
                }
                seen[v as usize] = true;
            }
            p = compose(&q, &p)?;
        }
        Ok(p)
    }

    /// The transposition switching `i` and `j` (1-based).
    pub fn transposition(degree: usize, i: usize, j: usize) -> Result<Perm, PermError> {
        if i == j || i < 1 || j < 1 || i > degree || j > degree {
            return Err(PermError::Invalid(format!(
                "transposition ({i} {j}) invalid for degree {degree}"
            )));
        }
        let mut p = Perm::identity(degree);
        p.images.swap(i - 1, j - 1);
        Ok(p)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of a 0-based point.
    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v as usize)
    }

    pub fn inverse(&self) -> Perm {
        let mut v = vec![0u8; self.images.len()];
        for (i, &im) in self.images.iter().enumerate() {
            v[im as usize] = i as u8;
        }
        Perm { images: v }
    }

    /// Cycles of length >= 2, each starting at its smallest point, 1-based.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let k = self.degree();
        let mut seen = vec![false; k];
        let mut out = Vec::new();
        for start in 0..k {
            if seen[start] || self.apply(start) == start {
                seen[start] = true;
                continue;
            }
            let mut c = Vec::new();
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                c.push(j + 1);
                j = self.apply(j);
            }
            out.push(c);
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        let k = self.degree();
        let mut seen = vec![false; k];
        let mut parts = Vec::new();
        for start in 0..k {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                len += 1;
                j = self.apply(j);
            }
            parts.push(len);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        CycleType { parts }
    }

    /// Restriction to an invariant set of 0-based points, relabelled to a
    /// permutation of `{1..support.len()}`. The set must be invariant.
    pub fn restrict(&self, support: &[usize]) -> Result<Perm, PermError> {
        let mut pos = vec![usize::MAX; self.degree()];
        for (i, &p) in support.iter().enumerate() {
            pos[p] = i;
        }
        let mut v = Vec::with_capacity(support.len());
        for &p in support {
            let im = self.apply(p);
            if pos.get(im).copied().unwrap_or(usize::MAX) == usize::MAX {
                return Err(PermError::Invalid(format!(
                    "support {support:?} is not invariant"
                )));
            }
            v.push(pos[im] as u8);
        }
        Ok(Perm { images: v })
    }

    /// Parse cycle notation like "(1 2)(3 4)" or "()" at a given degree.
    pub fn parse_cycles(degree: usize, s: &str) -> Result<Perm, PermError> {
        let s = s.trim();
        if s.is_empty() || s == "()" || s == "id" {
            return Ok(Perm::identity(degree));
        }
        let mut cycles = Vec::new();
        let mut rest = s;
        while !rest.is_empty() {
            let Some(open) = rest.find('(') else {
                return Err(PermError::Invalid(format!("bad cycle string {s:?}")));
            };
            let Some(close) = rest[open..].find(')') else {
                return Err(PermError::Invalid(format!("unclosed cycle in {s:?}")));
            };
            let inner = &rest[open + 1..open + close];
            let cyc: Result<Vec<usize>, _> = inner
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| PermError::Invalid(format!("bad point {t:?} in {s:?}")))
                })
                .collect();
            let cyc = cyc?;
            if !cyc.is_empty() {
                cycles.push(cyc);
            }
            rest = &rest[open + close + 1..];
        }
        Perm::from_cycles(degree, &cycles)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm[{self}]")
    }
}

/// Cycle type of a permutation: non-increasing parts summing to the degree.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CycleType {
    parts: Vec<usize>,
}

impl CycleType {
    pub fn new(mut parts: Vec<usize>) -> Result<CycleType, PermError> {
        if parts.contains(&0) {
            return Err(PermError::Invalid("cycle type with zero part".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(CycleType { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn degree(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `degree - #cycles`, the ramification defect in the genus formula.
    pub fn defect(&self) -> usize {
        self.degree() - self.parts.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.parts.iter().all(|&p| p == 1)
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", strs.join("+"))
    }
}

impl fmt::Debug for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for CycleType {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Result<Vec<usize>, _> = s
            .split('+')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| PermError::Invalid(format!("bad cycle type {s:?}")))
            })
            .collect();
        CycleType::new(parts?)
    }
}

/// `p · q`: apply `q` first, then `p`.
pub fn compose(p: &Perm, q: &Perm) -> Result<Perm, PermError> {
    if p.degree() != q.degree() {
        return Err(PermError::DegreeMismatch(p.degree(), q.degree()));
    }
    let v = (0..q.degree()).map(|i| p.images[q.images[i] as usize]).collect();
    Ok(Perm { images: v })
}

/// `g · p · g^{-1}`.
pub fn conjugate(p: &Perm, g: &Perm) -> Result<Perm, PermError> {
    if p.degree() != g.degree() {
        return Err(PermError::DegreeMismatch(p.degree(), g.degree()));
    }
    let mut v = vec![0u8; p.degree()];
    for i in 0..p.degree() {
        v[g.images[i] as usize] = g.images[p.images[i] as usize];
    }
    Ok(Perm { images: v })
}

fn check_gens(gens: &[Perm]) -> Result<usize, PermError> {
    let Some(first) = gens.first() else {
        return Err(PermError::EmptyGenerators);
    };
    let d = first.degree();
    for g in gens {
        if g.degree() != d {
            return Err(PermError::DegreeMismatch(d, g.degree()));
        }
    }
    Ok(d)
}

/// Orbits of the generated subgroup on the 0-based points, by union-find.
pub fn point_orbits(gens: &[Perm]) -> Result<Vec<Vec<usize>>, PermError> {
    let d = check_gens(gens)?;
    let mut parent: Vec<usize> = (0..d).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for g in gens {
        for i in 0..d {
            let a = find(&mut parent, i);
            let b = find(&mut parent, g.apply(i));
            if a != b {
                parent[a] = b;
            }
        }
    }
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    let mut root_ix = vec![usize::MAX; d];
    for i in 0..d {
        let r = find(&mut parent, i);
        if root_ix[r] == usize::MAX {
            root_ix[r] = orbits.len();
            orbits.push(Vec::new());
        }
        orbits[root_ix[r]].push(i);
    }
    Ok(orbits)
}

/// True iff the generated subgroup has a single orbit on the points.
pub fn is_transitive(gens: &[Perm]) -> Result<bool, PermError> {
    Ok(point_orbits(gens)?.len() == 1)
}

/// All elements of the symmetric group of the given degree, in lexicographic
/// order of one-line notation (so index 0 is the identity).
pub fn symmetric_group(degree: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut current: Vec<u8> = (0..degree as u8).collect();
    loop {
        out.push(Perm {
            images: current.clone(),
        });
        // next lexicographic permutation
        let Some(i) = (0..degree.saturating_sub(1)).rev().find(|&i| current[i] < current[i + 1])
        else {
            break;
        };
        let j = (i + 1..degree).rev().find(|&j| current[j] > current[i]).unwrap();
        current.swap(i, j);
        current[i + 1..].reverse();
    }
    out
}

/// The deck group of a connected cover on its fiber: the centralizer of the
/// generated subgroup inside the full symmetric group of the same degree.
#[derive(Debug, Clone)]
pub struct DeckGroup {
    pub order: usize,
    pub elements: Vec<Perm>,
}

pub fn deck_automorphisms(gens: &[Perm]) -> Result<DeckGroup, PermError> {
    let d = check_gens(gens)?;
    if !is_transitive(gens)? {
        return Err(PermError::NotTransitive);
    }
    // commuting with every generator is commuting with the whole subgroup
    let mut elements = Vec::new();
    for g in symmetric_group(d) {
        let centralizes = gens.iter().all(|s| {
            (0..d).all(|i| g.apply(s.apply(i)) == s.apply(g.apply(i)))
        });
        if centralizes {
            elements.push(g);
        }
    }
    Ok(DeckGroup {
        order: elements.len(),
        elements,
    })
}
