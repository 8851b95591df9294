//! Back-and-forth games on co-finite unary structures.
//!
//! Elements of the same 1-type are interchangeable, so a position of the
//! game is just the number of still-unused elements of each type on each
//! side, and a move is a multiset of types. Counts are truncated at `cap`
//! and moves have at most `cap` elements.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::BfError;
use crate::structure::{OneType, StructureDescriptor};
use crate::Card;

/// A multiset of 1-types.
pub type TypeCounts = BTreeMap<OneType, u64>;

fn counts(d: &StructureDescriptor) -> Result<BTreeMap<OneType, Card>, BfError> {
    d.type_counts()
        .ok_or_else(|| BfError::Unsupported(alloc::format!("{d} is not a unary descriptor")))
}

fn check(a: &StructureDescriptor, b: &StructureDescriptor, cap: u64) -> Result<(), BfError> {
    if a.is_unary() != b.is_unary() {
        return Err(BfError::CrossVariant);
    }
    if a.vocab() != b.vocab() {
        return Err(BfError::VocabularyMismatch);
    }
    if cap == 0 {
        return Err(BfError::CapTooSmall { cap, min: 1 });
    }
    Ok(())
}

type Positions = (Vec<u64>, Vec<u64>);

/// Aligned truncated count vectors over the union of occurring types, each
/// side first reduced by its pre-placed tuple.
fn positions(
    a: &StructureDescriptor,
    ta: &TypeCounts,
    b: &StructureDescriptor,
    tb: &TypeCounts,
    cap: u64,
) -> Result<Option<Positions>, BfError> {
    let (ca, cb) = (counts(a)?, counts(b)?);
    let mut types: Vec<OneType> = ca.keys().chain(cb.keys()).chain(ta.keys()).chain(tb.keys()).copied().collect();
    types.sort_unstable();
    types.dedup();
    let side = |c: &BTreeMap<OneType, Card>, t: &TypeCounts| -> Option<Vec<u64>> {
        types
            .iter()
            .map(|ty| {
                let have = c.get(ty).copied().unwrap_or(Card::ZERO);
                let used = t.get(ty).copied().unwrap_or(0);
                have.at_least(used).then(|| have.saturating_sub(used).truncate(cap).finite().unwrap_or(cap))
            })
            .collect()
    };
    Ok(side(&ca, ta).zip(side(&cb, tb)))
}

/// `a ≤ₙ b` for unary descriptors under count truncation at `cap`.
pub fn leq_n_unary(a: &StructureDescriptor, b: &StructureDescriptor, n: usize, cap: u64) -> Result<bool, BfError> {
    check(a, b, cap)?;
    let (pa, pb) = positions(a, &TypeCounts::new(), b, &TypeCounts::new(), cap)?
        .expect("empty tuples are always realizable");
    Ok(UnaryGame::new(cap).leq(&pa, &pb, n))
}

/// `(a, ā) ≤₁ (b, b̄)` where the tuples are given by their type multisets.
///
/// Distinct elements with equal type multisets can be listed so that their
/// atomic types agree, so `≤₀` reduces to equality of multisets. Returns
/// `false` when either tuple is not realizable in its structure.
pub fn pointed_leq1_unary(
    a: &StructureDescriptor,
    ta: &TypeCounts,
    b: &StructureDescriptor,
    tb: &TypeCounts,
    cap: u64,
) -> Result<bool, BfError> {
    check(a, b, cap)?;
    let strip = |t: &TypeCounts| -> TypeCounts { t.iter().filter(|(_, &c)| c > 0).map(|(&k, &v)| (k, v)).collect() };
    if strip(ta) != strip(tb) {
        return Ok(false);
    }
    Ok(match positions(a, ta, b, tb, cap)? {
        Some((pa, pb)) => UnaryGame::new(cap).leq(&pa, &pb, 1),
        None => false,
    })
}

struct UnaryGame {
    cap: u64,
    memo: BTreeMap<(Vec<u64>, Vec<u64>, usize), bool>,
}

impl UnaryGame {
    fn new(cap: u64) -> Self {
        UnaryGame { cap, memo: BTreeMap::new() }
    }

    /// `A ≤ₙ B` on remaining-count vectors.
    fn leq(&mut self, a: &[u64], b: &[u64], n: usize) -> bool {
        if n == 0 {
            return true;
        }
        let key = (a.to_vec(), b.to_vec(), n);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let mut result = true;
        'levels: for m in (0..n).rev() {
            let mut moves = Vec::new();
            multisets_within(b, self.cap, &mut alloc::vec![0; b.len()], 0, 0, &mut moves);
            for d in moves {
                if d.iter().zip(a).any(|(x, y)| x > y) {
                    result = false;
                    break 'levels;
                }
                let rb: Vec<u64> = b.iter().zip(&d).map(|(x, y)| x - y).collect();
                let ra: Vec<u64> = a.iter().zip(&d).map(|(x, y)| x - y).collect();
                if !self.leq(&rb, &ra, m) {
                    result = false;
                    break 'levels;
                }
            }
        }
        self.memo.insert(key, result);
        result
    }
}

/// All multisets `d ≤ avail` (componentwise) with `Σd ≤ budget`, larger first.
fn multisets_within(avail: &[u64], budget: u64, cur: &mut Vec<u64>, i: usize, used: u64, out: &mut Vec<Vec<u64>>) {
    if i == avail.len() {
        out.push(cur.clone());
        return;
    }
    for k in (0..=avail[i].min(budget - used)).rev() {
        cur[i] = k;
        multisets_within(avail, budget, cur, i + 1, used + k, out);
    }
    cur[i] = 0;
}
