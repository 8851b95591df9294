use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::{StructureError, Vocabulary};

/// Upper bound on the bit-table of a single relation (2^26 bits = 8 MiB).
const MAX_TABLE_BITS: usize = 1 << 26;

/// A finite τ-structure with domain `{0, …, size − 1}`.
///
/// Relations are stored as dense bit tables indexed in lexicographic tuple
/// order, so iteration over [`Snapshot::tuples`] yields sorted tuple lists.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Snapshot {
    vocab: Arc<Vocabulary>,
    size: usize,
    tables: Vec<Vec<u64>>,
}

fn table_bits(size: usize, arity: usize) -> Option<usize> {
    let mut bits: usize = 1;
    for _ in 0..arity {
        bits = bits.checked_mul(size)?;
    }
    (bits <= MAX_TABLE_BITS).then_some(bits)
}

impl Snapshot {
    /// The snapshot of the given size with every relation empty.
    pub fn empty(vocab: Arc<Vocabulary>, size: usize) -> Result<Self, StructureError> {
        let mut tables = Vec::with_capacity(vocab.len());
        for r in vocab.relations() {
            let bits = table_bits(size, r.arity)
                .ok_or(StructureError::SnapshotTooLarge { size, arity: r.arity })?;
            tables.push(vec![0u64; bits.div_ceil(64)]);
        }
        Ok(Snapshot { vocab, size, tables })
    }

    /// Builds a snapshot by evaluating `holds(relation, tuple)` on every tuple.
    pub fn from_fn(
        vocab: Arc<Vocabulary>,
        size: usize,
        mut holds: impl FnMut(usize, &[usize]) -> bool,
    ) -> Result<Self, StructureError> {
        let mut snap = Self::empty(vocab, size)?;
        let mut tuple = Vec::new();
        for rel in 0..snap.vocab.len() {
            let arity = snap.vocab.arity(rel);
            tuple.clear();
            tuple.resize(arity, 0);
            if size == 0 {
                continue;
            }
            loop {
                if holds(rel, &tuple) {
                    let idx = snap.index(arity, &tuple);
                    snap.tables[rel][idx / 64] |= 1 << (idx % 64);
                }
                if !advance(&mut tuple, size) {
                    break;
                }
            }
        }
        Ok(snap)
    }

    /// Builds a snapshot from explicit tuple lists, one per relation name.
    pub fn from_tuples<'a, T: AsRef<[usize]> + 'a>(
        vocab: Arc<Vocabulary>,
        size: usize,
        relations: impl IntoIterator<Item = (&'a str, &'a [T])>,
    ) -> Result<Self, StructureError> {
        let mut snap = Self::empty(vocab, size)?;
        for (name, tuples) in relations {
            let rel = snap
                .vocab
                .index_of(name)
                .ok_or_else(|| StructureError::UnknownRelation(name.into()))?;
            for t in tuples {
                snap.insert(rel, t.as_ref())?;
            }
        }
        Ok(snap)
    }

    /// Adds a tuple to a relation.
    pub fn insert(&mut self, rel: usize, tuple: &[usize]) -> Result<(), StructureError> {
        let arity = self.vocab.arity(rel);
        if tuple.len() != arity {
            return Err(StructureError::TupleArity {
                relation: self.vocab.name(rel).into(),
                expected: arity,
                found: tuple.len(),
            });
        }
        if let Some(&e) = tuple.iter().find(|&&e| e >= self.size) {
            return Err(StructureError::TupleOutOfRange {
                relation: self.vocab.name(rel).into(),
                element: e,
                size: self.size,
            });
        }
        let idx = self.index(arity, tuple);
        self.tables[rel][idx / 64] |= 1 << (idx % 64);
        Ok(())
    }

    /// A linear order on `{0, …, n−1}` given by ranks: `i < j` iff
    /// `rank[i] < rank[j]`.
    pub fn linear_order_from_ranks(ranks: &[u32]) -> Self {
        Self::from_fn(Arc::new(Vocabulary::order()), ranks.len(), |_, t| ranks[t[0]] < ranks[t[1]])
            .expect("order snapshot within table bound")
    }

    /// The chain `0 < 1 < … < n−1`.
    pub fn chain(n: usize) -> Self {
        Self::from_fn(Arc::new(Vocabulary::order()), n, |_, t| t[0] < t[1])
            .expect("order snapshot within table bound")
    }

    #[inline]
    fn index(&self, arity: usize, tuple: &[usize]) -> usize {
        debug_assert_eq!(tuple.len(), arity);
        tuple.iter().fold(0usize, |acc, &e| acc * self.size + e)
    }

    pub fn vocab(&self) -> &Vocabulary {
        &self.vocab
    }

    pub fn shared_vocab(&self) -> &Arc<Vocabulary> {
        &self.vocab
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Whether `rel(tuple)` holds. Entries must be `< size`.
    #[inline]
    pub fn holds(&self, rel: usize, tuple: &[usize]) -> bool {
        let idx = self.index(tuple.len(), tuple);
        self.tables[rel][idx / 64] >> (idx % 64) & 1 == 1
    }

    /// Two-argument fast path for binary relations.
    #[inline]
    pub fn holds2(&self, rel: usize, a: usize, b: usize) -> bool {
        let idx = a * self.size + b;
        self.tables[rel][idx / 64] >> (idx % 64) & 1 == 1
    }

    /// Number of tuples in a relation.
    pub fn count(&self, rel: usize) -> usize {
        self.tables[rel].iter().map(|w| w.count_ones() as usize).sum()
    }

    /// The tuples of a relation in lexicographic order.
    pub fn tuples(&self, rel: usize) -> impl Iterator<Item = Vec<usize>> + '_ {
        let arity = self.vocab.arity(rel);
        let size = self.size;
        self.tables[rel].iter().enumerate().flat_map(move |(w, &word)| {
            (0..64).filter(move |b| word >> b & 1 == 1).map(move |b| {
                let mut idx = w * 64 + b;
                let mut t = vec![0; arity];
                for slot in t.iter_mut().rev() {
                    *slot = idx % size;
                    idx /= size;
                }
                t
            })
        })
    }

    /// The induced substructure on `{0, …, k−1}`.
    pub fn induced(&self, k: usize) -> Snapshot {
        assert!(k <= self.size, "cannot induce on {k} elements of a size-{} snapshot", self.size);
        Snapshot::from_fn(self.vocab.clone(), k, |rel, t| self.holds(rel, t))
            .expect("induced snapshot is no larger than its parent")
    }

    /// The copy in which element `i` is renamed `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Snapshot {
        assert_eq!(perm.len(), self.size);
        let mut inverse = vec![0; self.size];
        for (i, &p) in perm.iter().enumerate() {
            inverse[p] = i;
        }
        let mut pre = Vec::new();
        Snapshot::from_fn(self.vocab.clone(), self.size, |rel, t| {
            pre.clear();
            pre.extend(t.iter().map(|&e| inverse[e]));
            self.holds(rel, &pre)
        })
        .expect("same size as the original")
    }
}

/// Steps `tuple` to its lexicographic successor over `0..size`; returns
/// `false` after the last tuple.
pub(crate) fn advance(tuple: &mut [usize], size: usize) -> bool {
    for slot in tuple.iter_mut().rev() {
        *slot += 1;
        if *slot < size {
            return true;
        }
        *slot = 0;
    }
    false
}

impl fmt::Debug for Snapshot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_struct("Snapshot");
        m.field("size", &self.size);
        for rel in 0..self.vocab.len() {
            let ts: Vec<Vec<usize>> = self.tuples(rel).collect();
            m.field(self.vocab.name(rel), &ts);
        }
        m.finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unary_p() -> Arc<Vocabulary> {
        Arc::new(Vocabulary::unary(["P"]).unwrap())
    }

    #[test]
    fn tuples_are_sorted_and_round_trip() {
        let v = Arc::new(Vocabulary::order());
        let s = Snapshot::from_tuples(v.clone(), 3, [("lt", &[[2usize, 0], [0, 1], [0, 2]][..])])
            .unwrap();
        let ts: Vec<_> = s.tuples(0).collect();
        assert_eq!(ts, vec![vec![0, 1], vec![0, 2], vec![2, 0]]);
        assert_eq!(s.count(0), 3);
    }

    #[test]
    fn rejects_bad_tuples() {
        let v = unary_p();
        let err = Snapshot::from_tuples(v.clone(), 2, [("P", &[[5usize]][..])]).unwrap_err();
        assert!(matches!(err, StructureError::TupleOutOfRange { element: 5, .. }));
        let err = Snapshot::from_tuples(v, 2, [("Q", &[[0usize]][..])]).unwrap_err();
        assert_eq!(err, StructureError::UnknownRelation("Q".into()));
    }

    #[test]
    fn induced_and_permuted() {
        let c = Snapshot::chain(4);
        assert_eq!(c.induced(2), Snapshot::chain(2));
        let p = c.permuted(&[3, 2, 1, 0]);
        assert!(p.holds(0, &[3, 2]));
        assert!(!p.holds(0, &[0, 1]));
    }

    #[test]
    fn size_zero_is_allowed() {
        let s = Snapshot::empty(unary_p(), 0).unwrap();
        assert_eq!(s.count(0), 0);
    }
}
