use alloc::vec;
use alloc::vec::Vec;

use super::{Snapshot, StructureError};

/// Exhaustive isomorphism test between finite snapshots.
///
/// Backtracks over injective maps, pruning as soon as a partial map breaks a
/// relation among already-mapped elements. Intended for sizes up to about 8.
pub fn iso_snapshots(a: &Snapshot, b: &Snapshot) -> Result<bool, StructureError> {
    if a.vocab() != b.vocab() {
        return Err(StructureError::VocabularyMismatch);
    }
    if a.size() != b.size() {
        return Ok(false);
    }
    if (0..a.vocab().len()).any(|r| a.count(r) != b.count(r)) {
        return Ok(false);
    }
    let n = a.size();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    Ok(extend(a, b, &mut map, &mut used, 0))
}

fn extend(a: &Snapshot, b: &Snapshot, map: &mut [usize], used: &mut [bool], next: usize) -> bool {
    if next == a.size() {
        return true;
    }
    for target in 0..b.size() {
        if used[target] {
            continue;
        }
        map[next] = target;
        if consistent(a, b, map, next) {
            used[target] = true;
            if extend(a, b, map, used, next + 1) {
                return true;
            }
            used[target] = false;
        }
    }
    map[next] = usize::MAX;
    false
}

/// Checks every tuple over `{0..=newest}` that mentions `newest`.
fn consistent(a: &Snapshot, b: &Snapshot, map: &[usize], newest: usize) -> bool {
    let mut ta = Vec::new();
    let mut tb = Vec::new();
    for rel in 0..a.vocab().len() {
        let arity = a.vocab().arity(rel);
        ta.clear();
        ta.resize(arity, 0);
        loop {
            if ta.contains(&newest) {
                tb.clear();
                tb.extend(ta.iter().map(|&e| map[e]));
                if a.holds(rel, &ta) != b.holds(rel, &tb) {
                    return false;
                }
            }
            if !super::snapshot::advance(&mut ta, newest + 1) {
                break;
            }
        }
    }
    true
}
