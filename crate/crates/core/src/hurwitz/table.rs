//! Indexed multiplication/conjugation tables for one symmetric group.
//!
//! Orbit searches touch millions of tuples; all hot-path operations work on
//! `u16` element indices against precomputed tables, and whole tuples pack
//! into `u128` keys for hash sets. Tables are only built for degree <= 6
//! (720 elements); the tuple types themselves have no such limit.

use std::collections::HashMap;

use crate::perm::{compose, conjugate, symmetric_group, CycleType, Perm};

pub const MAX_TABLE_DEGREE: usize = 6;

pub struct GroupTable {
    pub degree: usize,
    pub elems: Vec<Perm>,
    pub order: usize,
    index: HashMap<Perm, u16>,
    mul: Vec<u16>,
    inv: Vec<u16>,
    /// `conj[g * order + x] = g x g^{-1}`
    conj: Vec<u16>,
    pub types: Vec<CycleType>,
    pub type_of: Vec<u16>,
    /// `degree - #cycles` per element, for the genus formula
    pub defect: Vec<u16>,
    key_bits: u32,
}

impl GroupTable {
    pub fn new(degree: usize) -> GroupTable {
        assert!(
            (1..=MAX_TABLE_DEGREE).contains(&degree),
            "group tables support degree 1..={MAX_TABLE_DEGREE}, got {degree}"
        );
        let elems = symmetric_group(degree);
        let order = elems.len();
        let index: HashMap<Perm, u16> = elems
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as u16))
            .collect();
        let mut mul = vec![0u16; order * order];
        let mut inv = vec![0u16; order];
        let mut conj = vec![0u16; order * order];
        for (i, p) in elems.iter().enumerate() {
            inv[i] = index[&p.inverse()];
            for (j, q) in elems.iter().enumerate() {
                mul[i * order + j] = index[&compose(p, q).unwrap()];
                conj[j * order + i] = index[&conjugate(p, q).unwrap()];
            }
        }
        let mut types: Vec<CycleType> = Vec::new();
        let mut type_of = vec![0u16; order];
        let mut defect = vec![0u16; order];
        for (i, p) in elems.iter().enumerate() {
            let t = p.cycle_type();
            defect[i] = t.defect() as u16;
            let ix = match types.iter().position(|u| *u == t) {
                Some(ix) => ix,
                None => {
                    types.push(t);
                    types.len() - 1
                }
            };
            type_of[i] = ix as u16;
        }
        let key_bits = usize::BITS - (order - 1).leading_zeros();
        GroupTable {
            degree,
            elems,
            order,
            index,
            mul,
            inv,
            conj,
            types,
            type_of,
            defect,
            key_bits,
        }
    }

    pub fn index_of(&self, p: &Perm) -> Option<u16> {
        self.index.get(p).copied()
    }

    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u16) -> u16 {
        self.inv[a as usize]
    }

    #[inline]
    pub fn conj(&self, x: u16, g: u16) -> u16 {
        self.conj[g as usize * self.order + x as usize]
    }

    pub fn type_index(&self, t: &CycleType) -> Option<usize> {
        self.types.iter().position(|u| u == t)
    }

    /// Elements of one conjugacy class (all with the given cycle type).
    pub fn class_elements(&self, type_ix: usize) -> Vec<u16> {
        (0..self.order as u16)
            .filter(|&e| self.type_of[e as usize] == type_ix as u16)
            .collect()
    }

    pub fn word_product(&self, word: &[u16]) -> u16 {
        word.iter().fold(0u16, |acc, &e| self.mul(acc, e))
    }

    /// True iff the entries generate a transitive subgroup.
    pub fn is_transitive(&self, word: &[u16]) -> bool {
        let d = self.degree;
        let mut parent: [u8; 8] = [0, 1, 2, 3, 4, 5, 6, 7];
        fn find(parent: &mut [u8; 8], mut x: u8) -> u8 {
            while parent[x as usize] != x {
                parent[x as usize] = parent[parent[x as usize] as usize];
                x = parent[x as usize];
            }
            x
        }
        for &e in word {
            let p = &self.elems[e as usize];
            for i in 0..d {
                let a = find(&mut parent, i as u8);
                let b = find(&mut parent, p.apply(i) as u8);
                if a != b {
                    parent[a as usize] = b;
                }
            }
        }
        (1..d).all(|i| find(&mut parent, i as u8) == find(&mut parent, 0))
    }

    /// Pack a tuple of element indices into a single key.
    pub fn pack(&self, word: &[u16]) -> u128 {
        debug_assert!(word.len() as u32 * self.key_bits <= 128);
        let mut key = 0u128;
        for &e in word {
            key = (key << self.key_bits) | e as u128;
        }
        key
    }

    pub fn unpack(&self, mut key: u128, len: usize) -> Vec<u16> {
        let mask = (1u128 << self.key_bits) - 1;
        let mut out = vec![0u16; len];
        for slot in out.iter_mut().rev() {
            *slot = (key & mask) as u16;
            key >>= self.key_bits;
        }
        out
    }

    pub fn max_tuple_len(&self) -> usize {
        (128 / self.key_bits) as usize
    }

    /// Lexicographic minimum of the tuple over simultaneous conjugation by
    /// every group element.
    pub fn canonical(&self, word: &[u16], scratch: &mut Vec<u16>) -> Vec<u16> {
        let mut best: Vec<u16> = word.to_vec();
        for g in 1..self.order as u16 {
            scratch.clear();
            let mut better = false;
            for (i, &e) in word.iter().enumerate() {
                let c = self.conj(e, g);
                if !better {
                    if c > best[i] {
                        scratch.clear();
                        break;
                    }
                    if c < best[i] {
                        better = true;
                    }
                }
                scratch.push(c);
            }
            if better {
                std::mem::swap(&mut best, scratch);
            }
        }
        best
    }

    /// Order of the stabilizer of the tuple under simultaneous conjugation.
    pub fn stabilizer_order(&self, word: &[u16]) -> usize {
        (0..self.order as u16)
            .filter(|&g| word.iter().all(|&e| self.conj(e, g) == e))
            .count()
    }

    /// Order of the centralizer of the entries in the full symmetric group
    /// (the deck group on the fiber for a connected tuple).
    pub fn deck_order(&self, word: &[u16]) -> usize {
        self.stabilizer_order(word)
    }

    /// Genus of the connected cover with this branching datum.
    pub fn genus(&self, word: &[u16]) -> i64 {
        let total: i64 = word.iter().map(|&e| self.defect[e as usize] as i64).sum();
        total / 2 - self.degree as i64 + 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_agrees_with_perm_ops() {
        let t = GroupTable::new(4);
        assert_eq!(t.order, 24);
        assert_eq!(t.elems[0], Perm::identity(4));
        for a in 0..t.order as u16 {
            for b in 0..t.order as u16 {
                let via_table = &t.elems[t.mul(a, b) as usize];
                let direct = compose(&t.elems[a as usize], &t.elems[b as usize]).unwrap();
                assert_eq!(*via_table, direct);
                let via_conj = &t.elems[t.conj(a, b) as usize];
                let direct = conjugate(&t.elems[a as usize], &t.elems[b as usize]).unwrap();
                assert_eq!(*via_conj, direct);
            }
            assert!(t.elems[t.mul(a, t.inv(a)) as usize].is_identity());
        }
    }

    #[test]
    fn pack_round_trip() {
        let t = GroupTable::new(4);
        let word = vec![3u16, 0, 23, 11, 7, 19, 2, 1];
        assert_eq!(t.unpack(t.pack(&word), word.len()), word);
        assert!(t.max_tuple_len() >= 12);
    }

    #[test]
    fn canonical_is_conjugation_invariant_and_idempotent() {
        let t = GroupTable::new(4);
        let mut scratch = Vec::new();
        let word = vec![
            t.index_of(&Perm::transposition(4, 1, 3).unwrap()).unwrap(),
            t.index_of(&Perm::transposition(4, 2, 4).unwrap()).unwrap(),
            t.index_of(&Perm::from_cycles(4, &[vec![1, 2], vec![3, 4]]).unwrap())
                .unwrap(),
        ];
        let canon = t.canonical(&word, &mut scratch);
        assert_eq!(t.canonical(&canon, &mut scratch), canon);
        for g in 0..t.order as u16 {
            let conj: Vec<u16> = word.iter().map(|&e| t.conj(e, g)).collect();
            assert_eq!(t.canonical(&conj, &mut scratch), canon);
        }
    }

    #[test]
    fn transitivity_on_indices() {
        let t = GroupTable::new(4);
        let t12 = t.index_of(&Perm::transposition(4, 1, 2).unwrap()).unwrap();
        let t13 = t.index_of(&Perm::transposition(4, 1, 3).unwrap()).unwrap();
        let t14 = t.index_of(&Perm::transposition(4, 1, 4).unwrap()).unwrap();
        assert!(t.is_transitive(&[t12, t13, t14]));
        assert!(!t.is_transitive(&[t12]));
    }
}
