//! Enumeration of tuple classes for a branching profile.
//!
//! For each distinct ordering of the cycle-type multiset, tuples are built by
//! a prefix DFS carrying the running product, joined against a precomputed
//! suffix map (meet in the middle over the last few entries) so the identity
//! product constraint is interleaved instead of checked at the leaves. Raw
//! profile spaces at n = 12 are far too large otherwise.

use std::collections::{HashMap, HashSet};

use super::table::GroupTable;
use super::{BranchProfile, HurwitzError, HurwitzTuple, TupleClass};

#[derive(Debug, Clone, Copy)]
pub struct EnumerationOptions {
    pub connected_only: bool,
    /// Upper bound on the estimated number of raw tuples visited.
    pub raw_cap: u128,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions {
            connected_only: true,
            raw_cap: 100_000_000,
        }
    }
}

/// Distinct orderings of the type multiset, as vectors of type indices.
fn type_orderings(counts: &mut Vec<(usize, usize)>, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut acc = Vec::with_capacity(n);
    fn rec(counts: &mut Vec<(usize, usize)>, acc: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
        if acc.len() == n {
            out.push(acc.clone());
            return;
        }
        for i in 0..counts.len() {
            if counts[i].1 == 0 {
                continue;
            }
            counts[i].1 -= 1;
            acc.push(counts[i].0);
            rec(counts, acc, n, out);
            acc.pop();
            counts[i].1 += 1;
        }
    }
    rec(counts, &mut acc, n, &mut out);
    out
}

/// All product-identity tuple classes with the given profile, deduplicated by
/// canonical conjugation representative, in sorted canonical order.
pub fn enumerate_classes(
    profile: &BranchProfile,
    opts: &EnumerationOptions,
) -> Result<Vec<TupleClass>, HurwitzError> {
    let degree = profile.degree();
    if degree > super::table::MAX_TABLE_DEGREE {
        return Err(HurwitzError::InvalidProfile(format!(
            "enumeration supports degree <= {}, got {degree}",
            super::table::MAX_TABLE_DEGREE
        )));
    }
    let table = GroupTable::new(degree);
    let n = profile.len();
    if n > table.max_tuple_len() {
        return Err(HurwitzError::InvalidProfile(format!(
            "{n} branch points exceed the packed-key limit of {}",
            table.max_tuple_len()
        )));
    }

    // type multiset as (table type index, count)
    let mut counts: Vec<(usize, usize)> = Vec::new();
    for t in profile.types() {
        let ix = table.type_index(t).ok_or_else(|| {
            HurwitzError::InvalidProfile(format!("cycle type {t} invalid for degree {degree}"))
        })?;
        match counts.iter_mut().find(|(i, _)| *i == ix) {
            Some((_, c)) => *c += 1,
            None => counts.push((ix, 1)),
        }
    }
    let class_elems: Vec<Vec<u16>> = (0..table.types.len())
        .map(|ix| table.class_elements(ix))
        .collect();

    let orderings = type_orderings(&mut counts, n);

    // resource estimate: free choices per ordering with one entry forced
    let mut estimate: u128 = 0;
    for ordering in &orderings {
        let mut prod: u128 = 1;
        for &tix in ordering.iter().take(n - 1) {
            prod = prod.saturating_mul(class_elems[tix].len() as u128);
        }
        estimate = estimate.saturating_add(prod);
    }
    if estimate > opts.raw_cap {
        return Err(HurwitzError::ResourceCap {
            estimate,
            cap: opts.raw_cap,
        });
    }

    let suffix_len = 4.min(n - 1);
    let prefix_len = n - suffix_len;
    let mut canon_keys: HashSet<u128> = HashSet::new();
    let mut scratch = Vec::new();
    let mut word = vec![0u16; n];

    for ordering in &orderings {
        // suffix map: product of the last suffix_len entries -> packed suffix
        let mut suffix_map: HashMap<u16, Vec<u64>> = HashMap::new();
        let mut suffix = vec![0u16; suffix_len];
        build_suffixes(
            &table,
            &class_elems,
            &ordering[prefix_len..],
            &mut suffix,
            0,
            &mut suffix_map,
        );

        // prefix DFS with running product
        dfs_prefix(
            &table,
            &class_elems,
            ordering,
            prefix_len,
            0,
            0,
            &mut word,
            &suffix_map,
            opts.connected_only,
            &mut canon_keys,
            &mut scratch,
        );
    }

    let mut keys: Vec<u128> = canon_keys.into_iter().collect();
    keys.sort_unstable();
    let classes = keys
        .into_iter()
        .map(|key| {
            let word = table.unpack(key, n);
            let entries = word.iter().map(|&e| table.elems[e as usize].clone()).collect();
            TupleClass {
                representative: HurwitzTuple::new(entries).expect("canonical tuple is valid"),
                stabilizer_order: table.stabilizer_order(&word),
            }
        })
        .collect();
    Ok(classes)
}

fn build_suffixes(
    table: &GroupTable,
    class_elems: &[Vec<u16>],
    suffix_types: &[usize],
    suffix: &mut Vec<u16>,
    depth: usize,
    map: &mut HashMap<u16, Vec<u64>>,
) {
    if depth == suffix_types.len() {
        let prod = table.word_product(suffix);
        let mut packed: u64 = 0;
        for &e in suffix.iter() {
            packed = (packed << 16) | e as u64;
        }
        map.entry(prod).or_default().push(packed);
        return;
    }
    for &e in &class_elems[suffix_types[depth]] {
        suffix[depth] = e;
        build_suffixes(table, class_elems, suffix_types, suffix, depth + 1, map);
    }
}

#[allow(clippy::too_many_arguments)]
fn dfs_prefix(
    table: &GroupTable,
    class_elems: &[Vec<u16>],
    ordering: &[usize],
    prefix_len: usize,
    depth: usize,
    prefix_prod: u16,
    word: &mut Vec<u16>,
    suffix_map: &HashMap<u16, Vec<u64>>,
    connected_only: bool,
    canon_keys: &mut HashSet<u128>,
    scratch: &mut Vec<u16>,
) {
    if depth == prefix_len {
        // total product must be the identity: suffix product = prefix^{-1}
        let needed = table.inv(prefix_prod);
        let Some(suffixes) = suffix_map.get(&needed) else {
            return;
        };
        let n = ordering.len();
        for &packed in suffixes {
            let mut p = packed;
            for i in (prefix_len..n).rev() {
                word[i] = (p & 0xffff) as u16;
                p >>= 16;
            }
            if connected_only && !table.is_transitive(word) {
                continue;
            }
            let canon = table.canonical(word, scratch);
            canon_keys.insert(table.pack(&canon));
        }
        return;
    }
    for &e in &class_elems[ordering[depth]] {
        word[depth] = e;
        dfs_prefix(
            table,
            class_elems,
            ordering,
            prefix_len,
            depth + 1,
            table.mul(prefix_prod, e),
            word,
            suffix_map,
            connected_only,
            canon_keys,
            scratch,
        );
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::CycleType;

    #[test]
    fn degree2_two_transpositions_single_class() {
        let profile =
            BranchProfile::new(2, vec![CycleType::new(vec![2]).unwrap(); 2]).unwrap();
        let classes = enumerate_classes(&profile, &EnumerationOptions::default()).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].stabilizer_order, 2);
    }

    #[test]
    fn degree3_four_transpositions() {
        let profile =
            BranchProfile::new(3, vec![CycleType::new(vec![2, 1]).unwrap(); 4]).unwrap();
        let classes = enumerate_classes(&profile, &EnumerationOptions::default()).unwrap();
        assert_eq!(classes.len(), 4);
        for c in &classes {
            assert!(c.representative.is_connected());
            assert!(profile.matches(&c.representative));
        }
    }

    #[test]
    fn cap_is_enforced() {
        let profile = BranchProfile::degree4_family(2);
        let opts = EnumerationOptions {
            connected_only: true,
            raw_cap: 10,
        };
        assert!(matches!(
            enumerate_classes(&profile, &opts),
            Err(HurwitzError::ResourceCap { .. })
        ));
    }

    #[test]
    fn deterministic_and_sorted() {
        let profile =
            BranchProfile::new(3, vec![CycleType::new(vec![2, 1]).unwrap(); 4]).unwrap();
        let a = enumerate_classes(&profile, &EnumerationOptions::default()).unwrap();
        let b = enumerate_classes(&profile, &EnumerationOptions::default()).unwrap();
        let reps = |v: &[TupleClass]| -> Vec<Vec<String>> {
            v.iter().map(|c| c.representative.to_strings()).collect()
        };
        assert_eq!(reps(&a), reps(&b));
    }
}
