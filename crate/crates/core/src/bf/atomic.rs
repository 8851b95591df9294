//! Atomic formulas and the ≤₀ relation.

use alloc::vec::Vec;

use super::{BfError, PointedSnapshot};
use crate::structure::{Snapshot, Vocabulary};

/// How ≤₀ compares two pointed snapshots.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Leq0Mode {
    /// Every atomic formula over the tuple's variables, equality included.
    AllAtomic,
    /// Only the first `k` formulas of [`atomic_formulas`]; formulas that
    /// mention a variable beyond the tuple are skipped.
    Enumerated(usize),
}

/// An atomic formula over variables `x0, x1, …`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AtomicFormula {
    Eq(usize, usize),
    Rel(usize, Vec<usize>),
}

impl AtomicFormula {
    fn max_var(&self) -> usize {
        match self {
            AtomicFormula::Eq(i, j) => (*i).max(*j),
            AtomicFormula::Rel(_, vars) => vars.iter().copied().max().unwrap_or(0),
        }
    }

    /// Truth value under `x_i ↦ tuple[i]`; `None` if a variable is unassigned.
    pub fn eval(&self, s: &Snapshot, tuple: &[usize]) -> Option<bool> {
        if self.max_var() >= tuple.len() {
            return None;
        }
        Some(match self {
            AtomicFormula::Eq(i, j) => tuple[*i] == tuple[*j],
            AtomicFormula::Rel(r, vars) => {
                let t: Vec<usize> = vars.iter().map(|&v| tuple[v]).collect();
                s.holds(*r, &t)
            }
        })
    }
}

/// The first `count` atomic formulas of the fixed enumeration.
///
/// Formulas are grouped by their largest variable index `v = 0, 1, 2, …`.
/// Within a group come the equalities `x_i = x_v` (`i < v`), then for each
/// relation in vocabulary order its variable tuples over `x_0..x_v` that
/// mention `x_v`, in lexicographic order.
pub fn atomic_formulas(vocab: &Vocabulary, count: usize) -> Vec<AtomicFormula> {
    let mut out = Vec::with_capacity(count);
    let mut v = 0;
    while out.len() < count {
        for i in 0..v {
            out.push(AtomicFormula::Eq(i, v));
        }
        for r in 0..vocab.len() {
            let arity = vocab.arity(r);
            let mut vars = alloc::vec![0usize; arity];
            loop {
                if vars.contains(&v) {
                    out.push(AtomicFormula::Rel(r, vars.clone()));
                }
                if !crate::structure::advance_tuple(&mut vars, v + 1) {
                    break;
                }
            }
        }
        v += 1;
    }
    out.truncate(count);
    out
}

/// Whether `ta` in `a` and `tb` in `b` satisfy the same atomic formulas.
/// Callers guarantee equal vocabularies and tuple lengths.
pub(crate) fn same_atomic_type(a: &Snapshot, ta: &[usize], b: &Snapshot, tb: &[usize]) -> bool {
    same_atomic_type_from(a, ta, b, tb, 0)
}

/// As [`same_atomic_type`], checking only atoms that mention a position at
/// or after `from`; the prefix before `from` is known to agree.
pub(crate) fn same_atomic_type_from(a: &Snapshot, ta: &[usize], b: &Snapshot, tb: &[usize], from: usize) -> bool {
    let m = ta.len();
    for j in from..m {
        for i in 0..j {
            if (ta[i] == ta[j]) != (tb[i] == tb[j]) {
                return false;
            }
        }
    }
    let mut vars = Vec::new();
    let mut xa = Vec::new();
    let mut xb = Vec::new();
    for r in 0..a.vocab().len() {
        let arity = a.vocab().arity(r);
        if arity == 2 {
            for i in 0..m {
                for j in if i < from { from } else { 0 }..m {
                    if a.holds2(r, ta[i], ta[j]) != b.holds2(r, tb[i], tb[j]) {
                        return false;
                    }
                }
            }
            continue;
        }
        if m == 0 {
            continue;
        }
        vars.clear();
        vars.resize(arity, 0);
        loop {
            if vars.iter().any(|&v| v >= from) {
                xa.clear();
                xa.extend(vars.iter().map(|&v| ta[v]));
                xb.clear();
                xb.extend(vars.iter().map(|&v| tb[v]));
                if a.holds(r, &xa) != b.holds(r, &xb) {
                    return false;
                }
            }
            if !crate::structure::advance_tuple(&mut vars, m) {
                break;
            }
        }
    }
    true
}

pub(crate) fn check_pair(a: &PointedSnapshot, b: &PointedSnapshot) -> Result<(), BfError> {
    if a.snapshot.vocab() != b.snapshot.vocab() {
        return Err(BfError::VocabularyMismatch);
    }
    if a.tuple.len() != b.tuple.len() {
        return Err(BfError::TupleLengthMismatch { left: a.tuple.len(), right: b.tuple.len() });
    }
    Ok(())
}

/// The ≤₀ relation: agreement on atomic formulas.
pub fn leq0(a: &PointedSnapshot, b: &PointedSnapshot, mode: Leq0Mode) -> Result<bool, BfError> {
    check_pair(a, b)?;
    Ok(match mode {
        Leq0Mode::AllAtomic => same_atomic_type(&a.snapshot, &a.tuple, &b.snapshot, &b.tuple),
        Leq0Mode::Enumerated(k) => atomic_formulas(a.snapshot.vocab(), k).iter().all(|f| {
            match (f.eval(&a.snapshot, &a.tuple), f.eval(&b.snapshot, &b.tuple)) {
                (Some(x), Some(y)) => x == y,
                _ => true,
            }
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn pointed(s: Snapshot, t: &[usize]) -> PointedSnapshot {
        PointedSnapshot::new(s, t.to_vec()).unwrap()
    }

    #[test]
    fn examples() {
        let c2 = Snapshot::chain(2);
        assert!(leq0(&pointed(c2.clone(), &[]), &pointed(c2.clone(), &[]), Leq0Mode::AllAtomic).unwrap());
        assert!(!leq0(&pointed(c2.clone(), &[0, 0]), &pointed(c2.clone(), &[0, 1]), Leq0Mode::AllAtomic).unwrap());
        assert!(!leq0(&pointed(c2.clone(), &[0, 1]), &pointed(c2.clone(), &[1, 0]), Leq0Mode::AllAtomic).unwrap());
        assert!(matches!(
            leq0(&pointed(c2.clone(), &[0]), &pointed(c2, &[]), Leq0Mode::AllAtomic),
            Err(BfError::TupleLengthMismatch { left: 1, right: 0 })
        ));
    }

    #[test]
    fn enumeration_order() {
        let f = atomic_formulas(&Vocabulary::order(), 7);
        assert_eq!(
            f,
            vec![
                AtomicFormula::Rel(0, vec![0, 0]),
                AtomicFormula::Eq(0, 1),
                AtomicFormula::Rel(0, vec![0, 1]),
                AtomicFormula::Rel(0, vec![1, 0]),
                AtomicFormula::Rel(0, vec![1, 1]),
                AtomicFormula::Eq(0, 2),
                AtomicFormula::Eq(1, 2),
            ]
        );
    }

    #[test]
    fn enumerated_prefix_is_weaker() {
        // (0,1) and (1,0) in a 2-chain differ only on x0<x1, the third formula.
        let c2 = Snapshot::chain(2);
        let a = pointed(c2.clone(), &[0, 1]);
        let b = pointed(c2, &[1, 0]);
        assert!(leq0(&a, &b, Leq0Mode::Enumerated(2)).unwrap());
        assert!(!leq0(&a, &b, Leq0Mode::Enumerated(3)).unwrap());
    }
}
