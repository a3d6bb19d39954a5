//! Braid-orbit decomposition of tuple classes, with resumable search state.
//!
//! A frontier search over canonical forms: every move image is
//! re-canonicalized and hashed. The visited set can be checkpointed
//! periodically so long runs survive interruption; a resumed run must
//! produce exactly the report of a cold run.

use std::collections::HashSet;
use std::io;

use super::table::GroupTable;
use super::{HurwitzError, OrbitReport, OrbitSummary, TupleClass};

/// Destination for serialized search state.
pub trait CheckpointStore {
    fn load(&mut self) -> io::Result<Option<Vec<u8>>>;
    fn save(&mut self, bytes: &[u8]) -> io::Result<()>;
}

/// In-memory single-slot store.
#[derive(Default)]
pub struct MemoryStore {
    pub data: Option<Vec<u8>>,
}

impl CheckpointStore for MemoryStore {
    fn load(&mut self) -> io::Result<Option<Vec<u8>>> {
        Ok(self.data.clone())
    }

    fn save(&mut self, bytes: &[u8]) -> io::Result<()> {
        self.data = Some(bytes.to_vec());
        Ok(())
    }
}

#[derive(Debug, Clone, Copy)]
pub struct OrbitOptions {
    /// Newly discovered states between checkpoint writes.
    pub checkpoint_every: usize,
    /// Interrupt (after writing a checkpoint) once this many new states have
    /// been discovered; used to exercise resumption.
    pub stop_after: Option<usize>,
}

impl Default for OrbitOptions {
    fn default() -> Self {
        OrbitOptions {
            checkpoint_every: 1_000_000,
            stop_after: None,
        }
    }
}

fn fnv64(data: impl Iterator<Item = u8>) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in data {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

struct SearchState {
    fingerprint: u64,
    visited: HashSet<u128>,
    frontier: Vec<u128>,
    /// Key being expanded right now; serialized back into the frontier so a
    /// resumed run re-applies any moves cut off by the interruption.
    inflight: Option<u128>,
    done: Vec<OrbitAccum>,
    current: Option<OrbitAccum>,
    seed_pos: usize,
    discovered: usize,
}

#[derive(Clone)]
struct OrbitAccum {
    min_key: u128,
    size: usize,
    deck_order: usize,
    genus: i64,
}

fn put_u64(out: &mut Vec<u8>, v: u64) {
    out.extend_from_slice(&v.to_le_bytes());
}

fn put_u128(out: &mut Vec<u8>, v: u128) {
    out.extend_from_slice(&v.to_le_bytes());
}

struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn u64(&mut self) -> io::Result<u64> {
        let end = self.pos + 8;
        if end > self.buf.len() {
            return Err(io::Error::new(io::ErrorKind::UnexpectedEof, "short checkpoint"));
        }
        let v = u64::from_le_bytes(self.buf[self.pos..end].try_into().unwrap());
        self.pos = end;
        Ok(v)
    }

    fn u128(&mut self) -> io::Result<u128> {
        let end = self.pos + 16;
        if end > self.buf.len() {
            return Err(io::Error::new(io::ErrorKind::UnexpectedEof, "short checkpoint"));
        }
        let v = u128::from_le_bytes(self.buf[self.pos..end].try_into().unwrap());
        self.pos = end;
        Ok(v)
    }
}

const CHECKPOINT_MAGIC: u64 = 0x4346_4f52_4231_0001; // "CFORB1" + version

impl SearchState {
    fn serialize(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(32 + 16 * self.visited.len());
        put_u64(&mut out, CHECKPOINT_MAGIC);
        put_u64(&mut out, self.fingerprint);
        put_u64(&mut out, self.seed_pos as u64);
        put_u64(&mut out, self.discovered as u64);
        put_u64(&mut out, self.done.len() as u64);
        for o in &self.done {
            put_u128(&mut out, o.min_key);
            put_u64(&mut out, o.size as u64);
            put_u64(&mut out, o.deck_order as u64);
            put_u64(&mut out, o.genus as u64);
        }
        match &self.current {
            None => put_u64(&mut out, 0),
            Some(o) => {
                put_u64(&mut out, 1);
                put_u128(&mut out, o.min_key);
                put_u64(&mut out, o.size as u64);
                put_u64(&mut out, o.deck_order as u64);
                put_u64(&mut out, o.genus as u64);
            }
        }
        let extra = usize::from(self.inflight.is_some());
        put_u64(&mut out, (self.frontier.len() + extra) as u64);
        for &k in &self.frontier {
            put_u128(&mut out, k);
        }
        if let Some(k) = self.inflight {
            put_u128(&mut out, k);
        }
        let mut visited: Vec<u128> = self.visited.iter().copied().collect();
        visited.sort_unstable();
        put_u64(&mut out, visited.len() as u64);
        for k in visited {
            put_u128(&mut out, k);
        }
        let checksum = fnv64(out.iter().copied());
        put_u64(&mut out, checksum);
        out
    }

    fn deserialize(buf: &[u8], expect_fingerprint: u64) -> io::Result<Option<SearchState>> {
        if buf.len() < 16 {
            return Ok(None);
        }
        let body = &buf[..buf.len() - 8];
        let stored = u64::from_le_bytes(buf[buf.len() - 8..].try_into().unwrap());
        if fnv64(body.iter().copied()) != stored {
            return Err(io::Error::new(
                io::ErrorKind::InvalidData,
                "checkpoint checksum mismatch",
            ));
        }
        let mut r = Reader { buf: body, pos: 0 };
        if r.u64()? != CHECKPOINT_MAGIC {
            return Ok(None);
        }
        let fingerprint = r.u64()?;
        if fingerprint != expect_fingerprint {
            // stale checkpoint for different inputs: start cold
            return Ok(None);
        }
        let seed_pos = r.u64()? as usize;
        let discovered = r.u64()? as usize;
        let n_done = r.u64()? as usize;
        let mut done = Vec::with_capacity(n_done);
        for _ in 0..n_done {
            done.push(OrbitAccum {
                min_key: r.u128()?,
                size: r.u64()? as usize,
                deck_order: r.u64()? as usize,
                genus: r.u64()? as i64,
            });
        }
        let current = if r.u64()? == 1 {
            Some(OrbitAccum {
                min_key: r.u128()?,
                size: r.u64()? as usize,
                deck_order: r.u64()? as usize,
                genus: r.u64()? as i64,
            })
        } else {
            None
        };
        let n_frontier = r.u64()? as usize;
        let mut frontier = Vec::with_capacity(n_frontier);
        for _ in 0..n_frontier {
            frontier.push(r.u128()?);
        }
        let n_visited = r.u64()? as usize;
        let mut visited = HashSet::with_capacity(n_visited * 2);
        for _ in 0..n_visited {
            visited.insert(r.u128()?);
        }
        Ok(Some(SearchState {
            fingerprint,
            visited,
            frontier,
            inflight: None,
            done,
            current,
            seed_pos,
            discovered,
        }))
    }
}

/// Orbit decomposition without checkpointing.
pub fn orbit_partition(classes: &[TupleClass]) -> Result<OrbitReport, HurwitzError> {
    let mut store = MemoryStore::default();
    orbit_partition_resumable(classes, &OrbitOptions::default(), &mut store)
}

/// Orbit decomposition with periodic checkpoints written to `store`. When
/// the store holds a checkpoint for the same inputs, the search resumes from
/// it and must produce the cold-run report.
pub fn orbit_partition_resumable(
    classes: &[TupleClass],
    opts: &OrbitOptions,
    store: &mut dyn CheckpointStore,
) -> Result<OrbitReport, HurwitzError> {
    if classes.is_empty() {
        return Err(HurwitzError::InvalidTuple("no classes to partition".into()));
    }
    let degree = classes[0].representative.degree();
    let n = classes[0].representative.len();
    let table = GroupTable::new(degree);
    let mut scratch = Vec::new();

    let mut profile_types = classes[0].representative.cycle_types();
    profile_types.sort();

    let mut seeds: Vec<u128> = Vec::with_capacity(classes.len());
    for c in classes {
        let rep = &c.representative;
        if rep.degree() != degree || rep.len() != n {
            return Err(HurwitzError::InvalidTuple(
                "classes do not share one profile".into(),
            ));
        }
        let mut types = rep.cycle_types();
        types.sort();
        if types != profile_types {
            return Err(HurwitzError::InvalidTuple(
                "classes do not share one profile".into(),
            ));
        }
        if !rep.is_connected() {
            return Err(HurwitzError::NotConnected);
        }
        let word: Vec<u16> = rep
            .entries()
            .iter()
            .map(|e| table.index_of(e).expect("entry of tabulated degree"))
            .collect();
        let canon = table.canonical(&word, &mut scratch);
        seeds.push(table.pack(&canon));
    }
    seeds.sort_unstable();
    seeds.dedup();

    let fingerprint = {
        let mut bytes: Vec<u8> = Vec::with_capacity(16 * seeds.len() + 16);
        put_u64(&mut bytes, degree as u64);
        put_u64(&mut bytes, n as u64);
        for &k in &seeds {
            put_u128(&mut bytes, k);
        }
        fnv64(bytes.into_iter())
    };

    let mut state = match store.load()? {
        Some(bytes) => SearchState::deserialize(&bytes, fingerprint)?.unwrap_or(SearchState {
            fingerprint,
            visited: HashSet::new(),
            frontier: Vec::new(),
            inflight: None,
            done: Vec::new(),
            current: None,
            seed_pos: 0,
            discovered: 0,
        }),
        None => SearchState {
            fingerprint,
            visited: HashSet::new(),
            frontier: Vec::new(),
            inflight: None,
            done: Vec::new(),
            current: None,
            seed_pos: 0,
            discovered: 0,
        },
    };

    let mut since_checkpoint: usize = 0;
    let mut word;
    loop {
        // expand the current orbit to exhaustion
        while let Some(key) = state.frontier.pop() {
            state.inflight = Some(key);
            word = table.unpack(key, n);
            let (orbit_deck, orbit_genus) = {
                let o = state.current.as_ref().expect("frontier implies active orbit");
                (o.deck_order, o.genus)
            };
            for i in 0..n - 1 {
                for forward in [true, false] {
                    let a = word[i];
                    let b = word[i + 1];
                    let (x, y) = if forward {
                        (table.conj(b, a), a)
                    } else {
                        (b, table.conj(a, table.inv(b)))
                    };
                    word[i] = x;
                    word[i + 1] = y;
                    let canon = table.canonical(&word, &mut scratch);
                    let ck = table.pack(&canon);
                    word[i] = a;
                    word[i + 1] = b;
                    if state.visited.insert(ck) {
                        // the deck order and genus are move invariants
                        assert_eq!(
                            table.deck_order(&canon),
                            orbit_deck,
                            "deck order must be constant on an orbit"
                        );
                        assert_eq!(table.genus(&canon), orbit_genus);
                        {
                            let orbit = state.current.as_mut().unwrap();
                            orbit.size += 1;
                            orbit.min_key = orbit.min_key.min(ck);
                        }
                        state.frontier.push(ck);
                        state.discovered += 1;
                        since_checkpoint += 1;
                        if since_checkpoint >= opts.checkpoint_every {
                            store.save(&state.serialize())?;
                            since_checkpoint = 0;
                            if opts.stop_after.is_some_and(|m| state.discovered >= m) {
                                return Err(HurwitzError::Interrupted);
                            }
                        }
                    }
                }
            }
            state.inflight = None;
        }
        if let Some(done) = state.current.take() {
            state.done.push(done);
        }
        // next unvisited seed
        while state.seed_pos < seeds.len() && state.visited.contains(&seeds[state.seed_pos]) {
            state.seed_pos += 1;
        }
        if state.seed_pos == seeds.len() {
            break;
        }
        let seed = seeds[state.seed_pos];
        let seed_word = table.unpack(seed, n);
        state.visited.insert(seed);
        state.discovered += 1;
        state.current = Some(OrbitAccum {
            min_key: seed,
            size: 1,
            deck_order: table.deck_order(&seed_word),
            genus: table.genus(&seed_word),
        });
        state.frontier.push(seed);
    }

    debug_assert_eq!(
        state.done.iter().map(|o| o.size).sum::<usize>(),
        state.visited.len()
    );
    let mut done = state.done;
    done.sort_by_key(|o| o.min_key);
    let orbits = done
        .iter()
        .map(|o| OrbitSummary {
            size: o.size,
            representative: table
                .unpack(o.min_key, n)
                .iter()
                .map(|&e| table.elems[e as usize].to_string())
                .collect(),
            deck_order: o.deck_order,
            genus: o.genus,
        })
        .collect();
    let mut labels: Vec<String> = profile_types.iter().map(|t| t.to_string()).collect();
    labels.sort();
    Ok(OrbitReport {
        degree,
        profile: labels,
        class_count: seeds.len(),
        orbits,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hurwitz::{enumerate_classes, BranchProfile, EnumerationOptions};
    use crate::perm::CycleType;

    fn degree3_classes() -> Vec<TupleClass> {
        let profile =
            BranchProfile::new(3, vec![CycleType::new(vec![2, 1]).unwrap(); 4]).unwrap();
        enumerate_classes(&profile, &EnumerationOptions::default()).unwrap()
    }

    #[test]
    fn degree3_single_orbit() {
        let classes = degree3_classes();
        let report = orbit_partition(&classes).unwrap();
        assert_eq!(report.class_count, 4);
        assert_eq!(report.orbits.len(), 1);
        assert_eq!(report.orbits[0].size, 4);
        assert_eq!(report.orbits[0].genus, 0);
    }

    #[test]
    fn partition_independent_of_input_order() {
        let mut classes = degree3_classes();
        let cold = orbit_partition(&classes).unwrap();
        classes.reverse();
        classes.swap(0, 1);
        assert_eq!(orbit_partition(&classes).unwrap(), cold);
    }

    #[test]
    fn resume_from_checkpoint_matches_cold_run() {
        let classes = degree3_classes();
        let cold = orbit_partition(&classes).unwrap();
        let mut store = MemoryStore::default();
        let interrupted = orbit_partition_resumable(
            &classes,
            &OrbitOptions {
                checkpoint_every: 1,
                stop_after: Some(2),
            },
            &mut store,
        );
        assert!(matches!(interrupted, Err(HurwitzError::Interrupted)));
        assert!(store.data.is_some());
        let resumed =
            orbit_partition_resumable(&classes, &OrbitOptions::default(), &mut store).unwrap();
        assert_eq!(resumed, cold);
    }

    #[test]
    fn stale_checkpoint_is_ignored() {
        let classes = degree3_classes();
        let mut store = MemoryStore {
            data: Some(vec![1, 2, 3]),
        };
        let report = orbit_partition_resumable(&classes, &OrbitOptions::default(), &mut store);
        assert!(report.is_ok());
    }
}
