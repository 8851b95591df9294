//! Stagewise presentations of described structures.
//!
//! A presentation lists the abstract elements of a descriptor in some order
//! (the schedule) and names the element listed `s`-th by the natural `s`.
//! Stage `s` is the induced structure on `{0, …, s}`, so consecutive stages
//! are coherent by construction.
//!
//! Schedules: seed 0 lists abstract elements in their canonical order. Any
//! other seed splits positions into blocks `8·(2^b − 1) .. 8·(2^(b+1) − 1)`
//! and permutes each block by a Fisher–Yates shuffle driven by
//! `SplitMix64::new(mix(seed, b))`. Every block is a bijection onto itself,
//! so each abstract element appears exactly once and within a bounded delay.

use alloc::sync::Arc;
use alloc::vec::Vec;

use super::{OneType, Snapshot, StructureDescriptor, Vocabulary};
use crate::order::point_key;
use crate::rng::{mix, SplitMix64};

const FIRST_BLOCK: u64 = 8;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PresentationStream {
    descriptor: StructureDescriptor,
    seed: u64,
}

/// A presentation of a structure isomorphic to `d` with a seed-determined
/// schedule. Seed 0 is the canonical schedule.
pub fn permuted_presentation(d: &StructureDescriptor, seed: u64) -> PresentationStream {
    PresentationStream::new(d.clone(), seed)
}

/// Stage `s` of a presentation: a snapshot of size `s + 1`.
pub fn restrict(p: &PresentationStream, s: usize) -> Snapshot {
    p.realize(s).snapshot(s)
}

fn block_of(position: u64) -> (u32, u64) {
    let b = (position / FIRST_BLOCK + 1).ilog2();
    (b, FIRST_BLOCK * ((1u64 << b) - 1))
}

fn block_permutation(seed: u64, block: u32) -> Vec<u64> {
    let len = FIRST_BLOCK << block;
    let mut perm: Vec<u64> = (0..len).collect();
    let mut rng = SplitMix64::new(mix(seed, u64::from(block)));
    for i in (1..len as usize).rev() {
        let j = rng.below(i as u64 + 1) as usize;
        perm.swap(i, j);
    }
    perm
}

impl PresentationStream {
    pub fn new(descriptor: StructureDescriptor, seed: u64) -> Self {
        PresentationStream { descriptor, seed }
    }

    pub fn descriptor(&self) -> &StructureDescriptor {
        &self.descriptor
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Abstract elements named `0, …, count−1`, in naming order.
    pub fn schedule(&self, count: usize) -> Vec<u64> {
        let count = count as u64;
        if self.seed == 0 {
            return (0..count).collect();
        }
        let mut out = Vec::with_capacity(count as usize);
        let mut block = 0u32;
        while (out.len() as u64) < count {
            let start = FIRST_BLOCK * ((1u64 << block) - 1);
            let perm = block_permutation(self.seed, block);
            for &p in perm.iter().take((count - out.len() as u64) as usize) {
                out.push(start + p);
            }
            block += 1;
        }
        out
    }

    /// The stage at which abstract element `element` is named.
    pub fn stage_of(&self, element: u64) -> usize {
        if self.seed == 0 {
            return element as usize;
        }
        let (b, start) = block_of(element);
        let perm = block_permutation(self.seed, b);
        let offset = perm.iter().position(|&p| start + p == element).expect("permutation is onto");
        (start + offset as u64) as usize
    }

    /// Precomputes stages `0..=horizon`.
    pub fn realize(&self, horizon: usize) -> Realization {
        let sched = self.schedule(horizon + 1);
        let vocab = self.descriptor.vocab();
        let data = match &self.descriptor {
            StructureDescriptor::UnaryTail { .. } => RealizedData::Types(
                sched.iter().map(|&e| self.descriptor.unary_type_of(e).unwrap()).collect(),
            ),
            StructureDescriptor::OrderType { expr } => {
                let keys: Vec<_> = sched
                    .iter()
                    .map(|&e| point_key(expr, e).expect("descriptors are infinite"))
                    .collect();
                let mut idx: Vec<usize> = (0..keys.len()).collect();
                idx.sort_by(|&i, &j| keys[i].cmp(&keys[j]));
                let mut ranks = alloc::vec![0u32; keys.len()];
                for (r, &i) in idx.iter().enumerate() {
                    ranks[i] = r as u32;
                }
                RealizedData::Ranks(ranks)
            }
        };
        Realization { vocab, data }
    }

    /// Snapshots of stages `0..=horizon`.
    pub fn stages(&self, horizon: usize) -> Stages {
        Stages { realization: self.realize(horizon), next: 0, end: horizon + 1 }
    }
}

#[derive(Clone, Debug)]
enum RealizedData {
    Types(Vec<OneType>),
    Ranks(Vec<u32>),
}

/// The first stages of a presentation, ready to be cut into snapshots.
#[derive(Clone, Debug)]
pub struct Realization {
    vocab: Arc<Vocabulary>,
    data: RealizedData,
}

impl Realization {
    pub fn horizon(&self) -> usize {
        match &self.data {
            RealizedData::Types(t) => t.len() - 1,
            RealizedData::Ranks(r) => r.len() - 1,
        }
    }

    pub fn snapshot(&self, s: usize) -> Snapshot {
        assert!(s <= self.horizon(), "stage {s} beyond realized horizon {}", self.horizon());
        match &self.data {
            RealizedData::Types(types) => {
                Snapshot::from_fn(self.vocab.clone(), s + 1, |rel, t| types[t[0]] >> rel & 1 == 1)
                    .expect("unary snapshot")
            }
            RealizedData::Ranks(ranks) => Snapshot::linear_order_from_ranks(&ranks[..=s]),
        }
    }
}

/// Iterator over the stage snapshots of a presentation.
pub struct Stages {
    realization: Realization,
    next: usize,
    end: usize,
}

impl Iterator for Stages {
    type Item = Snapshot;

    fn next(&mut self) -> Option<Snapshot> {
        if self.next >= self.end {
            return None;
        }
        let s = self.realization.snapshot(self.next);
        self.next += 1;
        Some(s)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.end - self.next;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Stages {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::parse_expr;
    use alloc::collections::BTreeMap;
    use alloc::vec;

    fn one_not_p() -> StructureDescriptor {
        let v = Arc::new(Vocabulary::unary(["P"]).unwrap());
        StructureDescriptor::unary_tail(v, BTreeMap::from([(0, 1)]), 1).unwrap()
    }

    #[test]
    fn blocks() {
        assert_eq!(block_of(0), (0, 0));
        assert_eq!(block_of(7), (0, 0));
        assert_eq!(block_of(8), (1, 8));
        assert_eq!(block_of(23), (1, 8));
        assert_eq!(block_of(24), (2, 24));
    }

    #[test]
    fn schedules_are_bijective_on_prefix_blocks() {
        let p = PresentationStream::new(one_not_p(), 5);
        let mut s = p.schedule(56);
        s.sort_unstable();
        assert_eq!(s, (0..56).collect::<Vec<_>>());
        for e in 0..56 {
            assert_eq!(p.schedule(56)[p.stage_of(e)], e);
        }
    }

    #[test]
    fn seed_zero_is_canonical() {
        let p = PresentationStream::new(one_not_p(), 0);
        assert_eq!(p.schedule(4), vec![0, 1, 2, 3]);
        let s = restrict(&p, 2);
        assert_eq!(s.tuples(0).collect::<Vec<_>>(), vec![vec![1], vec![2]]);
    }

    #[test]
    fn seed_seven_delays_the_exception() {
        let p = PresentationStream::new(one_not_p(), 7);
        let k = p.stage_of(0);
        assert!(k > 0 && k < 8);
        let s = restrict(&p, k);
        assert!(!s.holds(0, &[k]));
        assert_eq!(s.count(0), k);
    }

    #[test]
    fn order_stages_are_coherent() {
        let d = StructureDescriptor::order_type(parse_expr("w+w").unwrap()).unwrap();
        let p = PresentationStream::new(d, 3);
        let r = p.realize(12);
        for s in 0..12 {
            assert_eq!(r.snapshot(s + 1).induced(s + 1), r.snapshot(s));
        }
    }
}
