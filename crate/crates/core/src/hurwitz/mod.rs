//! Monodromy tuples for branched covers of the line: braid moves, orbit
//! classification and branch-point degenerations.
//!
//! A cover of the line branched over n ordered points with monodromy group
//! inside the symmetric group of the fiber is recorded as an n-tuple of
//! permutations whose product (in the global juxtaposition convention
//! `s_1 · s_2 · ... · s_n`, rightmost acting first) is the identity. The
//! braid move at position i replaces `(s_i, s_{i+1})` by
//! `(s_i s_{i+1} s_i^{-1}, s_i)`; orbits of tuples up to simultaneous
//! conjugation under these moves are the connected components of the
//! corresponding Hurwitz space.

mod enumerate;
mod orbits;
pub(crate) mod table;

use std::fmt;
use std::io;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm::{compose, is_transitive, point_orbits, CycleType, Perm, PermError};

pub use enumerate::{enumerate_classes, EnumerationOptions};
pub use orbits::{
    orbit_partition, orbit_partition_resumable, CheckpointStore, MemoryStore, OrbitOptions,
};
pub use table::MAX_TABLE_DEGREE;

#[derive(Debug, Error)]
pub enum HurwitzError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("invalid profile: {0}")]
    InvalidProfile(String),
    #[error("invalid tuple: {0}")]
    InvalidTuple(String),
    #[error("move index {index} out of range 1..={max}")]
    MoveIndex { index: usize, max: usize },
    #[error("estimated {estimate} raw tuples exceeds the cap of {cap}; raise the cap to proceed")]
    ResourceCap { estimate: u128, cap: u128 },
    #[error("tuple is not connected")]
    NotConnected,
    #[error("search interrupted after checkpoint")]
    Interrupted,
    #[error("checkpoint store error: {0}")]
    Checkpoint(#[from] io::Error),
}

/// Ordered tuple of permutations of common degree with identity product.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HurwitzTuple {
    entries: Vec<Perm>,
}

impl HurwitzTuple {
    pub fn new(entries: Vec<Perm>) -> Result<HurwitzTuple, HurwitzError> {
        if entries.is_empty() {
            return Err(HurwitzError::InvalidTuple("empty tuple".into()));
        }
        let d = entries[0].degree();
        for e in &entries {
            if e.degree() != d {
                return Err(PermError::DegreeMismatch(d, e.degree()).into());
            }
        }
        let prod = word_product(&entries)?;
        if !prod.is_identity() {
            return Err(HurwitzError::InvalidTuple(format!(
                "product is {prod}, not the identity"
            )));
        }
        Ok(HurwitzTuple { entries })
    }

    pub fn entries(&self) -> &[Perm] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.entries[0].degree()
    }

    pub fn is_connected(&self) -> bool {
        is_transitive(&self.entries).unwrap_or(false)
    }

    pub fn cycle_types(&self) -> Vec<CycleType> {
        self.entries.iter().map(|e| e.cycle_type()).collect()
    }

    /// Entries rendered in cycle notation, for reports.
    pub fn to_strings(&self) -> Vec<String> {
        self.entries.iter().map(|e| e.to_string()).collect()
    }

    /// Parse a semicolon-separated list of cycle-notation entries.
    pub fn parse(degree: usize, s: &str) -> Result<HurwitzTuple, HurwitzError> {
        let entries: Result<Vec<Perm>, PermError> = s
            .split(';')
            .map(|t| Perm::parse_cycles(degree, t.trim()))
            .collect();
        HurwitzTuple::new(entries?)
    }
}

impl fmt::Display for HurwitzTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join("; "))
    }
}

impl fmt::Debug for HurwitzTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `s_1 · s_2 · ... · s_n` in the global convention (rightmost acts first).
pub fn word_product(entries: &[Perm]) -> Result<Perm, PermError> {
    let mut acc = Perm::identity(entries[0].degree());
    for e in entries {
        acc = compose(&acc, e)?;
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MoveDirection {
    Forward,
    Inverse,
}

/// Braid move at 1-based position `1 <= i <= n-1`.
///
/// Forward sends `(s_i, s_{i+1})` to `(s_i s_{i+1} s_i^{-1}, s_i)`; inverse
/// undoes it. Product, cycle-type multiset and generated subgroup are
/// preserved.
pub fn hurwitz_move(
    t: &HurwitzTuple,
    i: usize,
    direction: MoveDirection,
) -> Result<HurwitzTuple, HurwitzError> {
    let n = t.len();
    if i < 1 || i >= n {
        return Err(HurwitzError::MoveIndex { index: i, max: n - 1 });
    }
    let mut entries = t.entries.clone();
    let a = entries[i - 1].clone();
    let b = entries[i].clone();
    match direction {
        MoveDirection::Forward => {
            entries[i - 1] = compose(&compose(&a, &b)?, &a.inverse())?;
            entries[i] = a;
        }
        MoveDirection::Inverse => {
            entries[i - 1] = b.clone();
            entries[i] = compose(&compose(&b.inverse(), &a)?, &b)?;
        }
    }
    Ok(HurwitzTuple { entries })
}

/// Apply a move word left to right.
pub fn replay_sequence(
    t: &HurwitzTuple,
    moves: &[(usize, MoveDirection)],
) -> Result<HurwitzTuple, HurwitzError> {
    let mut cur = t.clone();
    for &(i, dir) in moves {
        cur = hurwitz_move(&cur, i, dir)?;
    }
    Ok(cur)
}

/// Genus of the connected cover via the genus-degree bookkeeping
/// `2 - 2g = 2d - sum(d - #cycles)`.
pub fn genus_of(t: &HurwitzTuple) -> Result<i64, HurwitzError> {
    if !t.is_connected() {
        return Err(HurwitzError::NotConnected);
    }
    let d = t.degree() as i64;
    let total: i64 = t
        .entries
        .iter()
        .map(|e| e.cycle_type().defect() as i64)
        .sum();
    Ok(total / 2 - d + 1)
}

/// Branching datum: degree plus the multiset of cycle types.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchProfile {
    degree: usize,
    types: Vec<CycleType>,
}

impl BranchProfile {
    pub fn new(degree: usize, mut types: Vec<CycleType>) -> Result<BranchProfile, HurwitzError> {
        if types.len() < 2 {
            return Err(HurwitzError::InvalidProfile(format!(
                "{} branch points; a profile needs at least 2",
                types.len()
            )));
        }
        for t in &types {
            if t.degree() != degree {
                return Err(HurwitzError::InvalidProfile(format!(
                    "cycle type {t} invalid for degree {degree}"
                )));
            }
        }
        // total defect must be even for the identity-product condition
        if types.iter().map(|t| t.defect()).sum::<usize>() % 2 != 0 {
            return Err(HurwitzError::InvalidProfile(
                "odd total ramification defect".into(),
            ));
        }
        types.sort();
        Ok(BranchProfile { degree, types })
    }

    /// Degree-4 covers branched over `n = 2g + 4` points: `n - 2` simple
    /// branch points plus two points with two ramification points of degree
    /// 2 each.
    pub fn degree4_family(genus: usize) -> BranchProfile {
        let n = 2 * genus + 4;
        let simple = CycleType::new(vec![2, 1, 1]).unwrap();
        let double = CycleType::new(vec![2, 2]).unwrap();
        let mut types = vec![simple; n - 2];
        types.extend(std::iter::repeat_n(double, 2));
        BranchProfile::new(4, types).unwrap()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.types.len()
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty()
    }

    pub fn types(&self) -> &[CycleType] {
        &self.types
    }

    pub fn labels(&self) -> Vec<String> {
        self.types.iter().map(|t| t.to_string()).collect()
    }

    /// True iff the tuple carries exactly this multiset of cycle types.
    pub fn matches(&self, t: &HurwitzTuple) -> bool {
        if t.degree() != self.degree || t.len() != self.types.len() {
            return false;
        }
        let mut found = t.cycle_types();
        found.sort();
        found == self.types
    }
}

/// A tuple class: tuples up to simultaneous conjugation by the full
/// symmetric group of the fiber degree.
#[derive(Clone, Debug)]
pub struct TupleClass {
    pub representative: HurwitzTuple,
    pub stabilizer_order: usize,
}

/// One orbit of classes under the braid moves.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct OrbitSummary {
    pub size: usize,
    pub representative: Vec<String>,
    pub deck_order: usize,
    pub genus: i64,
}

/// Braid-orbit decomposition of the classes of one profile.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct OrbitReport {
    pub degree: usize,
    pub profile: Vec<String>,
    pub class_count: usize,
    pub orbits: Vec<OrbitSummary>,
}

/// One connected component of a degenerated cover.
#[derive(Debug, Clone)]
pub struct CoverComponent {
    /// The tuple restricted to the component's sheets (identity entries kept
    /// so positions still line up with branch points).
    pub tuple: HurwitzTuple,
    /// 1-based sheet labels of the component in the original fiber.
    pub sheets: Vec<usize>,
    pub genus: i64,
    /// 1-based positions (in the merged tuple) where the component is
    /// actually branched.
    pub branch_positions: Vec<usize>,
}

/// Merge the branch points `i` and `i+1` (1-based): replace the two entries
/// by their product (dropped when trivial), split the fiber into orbits of
/// the new subgroup, and restrict the tuple to each orbit.
pub fn degenerate_merge(t: &HurwitzTuple, i: usize) -> Result<Vec<CoverComponent>, HurwitzError> {
    let n = t.len();
    if i < 1 || i >= n {
        return Err(HurwitzError::MoveIndex { index: i, max: n - 1 });
    }
    let mut entries: Vec<Perm> = Vec::with_capacity(n - 1);
    entries.extend_from_slice(&t.entries[..i - 1]);
    let merged = compose(&t.entries[i - 1], &t.entries[i])?;
    if !merged.is_identity() {
        entries.push(merged);
    }
    entries.extend_from_slice(&t.entries[i + 1..]);

    let orbits = if entries.is_empty() {
        (0..t.degree()).map(|p| vec![p]).collect()
    } else {
        point_orbits(&entries)?
    };
    let mut out = Vec::with_capacity(orbits.len());
    for orbit in orbits {
        let restricted: Result<Vec<Perm>, PermError> =
            entries.iter().map(|e| e.restrict(&orbit)).collect();
        let restricted = restricted?;
        let branch_positions: Vec<usize> = restricted
            .iter()
            .enumerate()
            .filter(|(_, e)| !e.is_identity())
            .map(|(p, _)| p + 1)
            .collect();
        let degree = orbit.len() as i64;
        let total: i64 = restricted
            .iter()
            .map(|e| e.cycle_type().defect() as i64)
            .sum();
        let genus = total / 2 - degree + 1;
        let tuple = if restricted.is_empty() {
            HurwitzTuple {
                entries: vec![Perm::identity(orbit.len())],
            }
        } else {
            HurwitzTuple {
                entries: restricted,
            }
        };
        out.push(CoverComponent {
            tuple,
            sheets: orbit.iter().map(|p| p + 1).collect(),
            genus,
            branch_positions,
        });
    }
    Ok(out)
}
