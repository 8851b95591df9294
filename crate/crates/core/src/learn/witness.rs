//! Witness sentences: the universal facts of a pointed structure `(A, ā)`
//! with a bounded number of universally quantified variables, wrapped as
//! `∃x̄ ∀ȳ θ`.
//!
//! Tuples enter only through their abstraction: the multiset of 1-types for
//! unary structures, the interval profile for orders. The types realized by
//! `ā ȳ` with `m` variables in `ȳ` are already realized in a finite piece
//! that keeps at most `m` spare elements of each kind, so the matrix is
//! read off that piece.

use alloc::vec::Vec;

use super::sentence::Sigma2Sentence;
use super::LearnError;
use crate::bf::{CardProfile, TypeCounts};
use crate::structure::{Snapshot, StructureDescriptor};
use crate::Card;

/// A tuple up to the information ≤₁ can see.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Abstraction {
    /// Multiset of 1-types, for unary descriptors.
    Types(TypeCounts),
    /// Interval cardinality profile of an increasing tuple, for orders.
    Profile(CardProfile),
}

impl Abstraction {
    /// Number of elements in the abstracted tuple.
    pub fn len(&self) -> usize {
        match self {
            Abstraction::Types(t) => t.values().sum::<u64>() as usize,
            Abstraction::Profile(p) => p.len().saturating_sub(1),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn spare(c: Card, m: usize) -> usize {
    c.finite().map_or(m, |c| (c as usize).min(m))
}

/// A finite piece of `d` containing a tuple with abstraction `a` and at
/// least `y_arity` spare elements of every kind `d` has room for.
///
/// Profile entries are read as exact cardinalities; a truncated entry
/// stands for at least its value, which is exact enough when the cap is at
/// least `y_arity`.
pub fn witness_piece(
    d: &StructureDescriptor,
    a: &Abstraction,
    y_arity: usize,
) -> Result<(Snapshot, Vec<usize>), LearnError> {
    match (d, a) {
        (StructureDescriptor::UnaryTail { vocab, .. }, Abstraction::Types(used)) => {
            let counts = d.type_counts().expect("unary descriptor");
            let mut types: Vec<u32> = Vec::new();
            for (&t, &k) in used {
                if !counts.get(&t).copied().unwrap_or(Card::ZERO).at_least(k) {
                    return Err(LearnError::Unrealizable);
                }
                types.extend(core::iter::repeat_n(t, k as usize));
            }
            let tuple: Vec<usize> = (0..types.len()).collect();
            for (&t, &c) in &counts {
                let left = c.saturating_sub(used.get(&t).copied().unwrap_or(0));
                types.extend(core::iter::repeat_n(t, spare(left, y_arity)));
            }
            let piece = Snapshot::from_fn(vocab.clone(), types.len(), |rel, e| types[e[0]] >> rel & 1 == 1)?;
            Ok((piece, tuple))
        }
        (StructureDescriptor::OrderType { .. }, Abstraction::Profile(p)) => {
            if p.is_empty() {
                return Err(LearnError::Unrealizable);
            }
            let mut tuple = Vec::with_capacity(p.len() - 1);
            let mut size = 0;
            for (j, &c) in p.iter().enumerate() {
                size += spare(c, y_arity);
                if j + 1 < p.len() {
                    tuple.push(size);
                    size += 1;
                }
            }
            Ok((Snapshot::chain(size), tuple))
        }
        _ => Err(LearnError::AbstractionMismatch),
    }
}

/// `∃x̄ ∀ȳ` (the type of `x̄ȳ` is one realized by `āȳ` in `d`), with
/// `|ȳ| = y_arity`.
pub fn witness_sentence(d: &StructureDescriptor, a: &Abstraction, y_arity: usize) -> Result<Sigma2Sentence, LearnError> {
    let (piece, tuple) = witness_piece(d, a, y_arity)?;
    Sigma2Sentence::from_realized_types(&piece, &tuple, y_arity)
}

/// Codes of the complete types realized by `āȳ` in `d`, sorted; the
/// matrix of [`witness_sentence`]. Codes from descriptors over the same
/// vocabulary with equal `|ā|` and `y_arity` are comparable.
pub fn realized_types(d: &StructureDescriptor, a: &Abstraction, y_arity: usize) -> Result<Vec<u128>, LearnError> {
    let (piece, tuple) = witness_piece(d, a, y_arity)?;
    Ok(Sigma2Sentence::from_realized_types(&piece, &tuple, y_arity)?.type_codes().to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::learn::eval_sigma2_bounded;
    use crate::order::parse_expr;
    use crate::structure::Vocabulary;
    use alloc::collections::BTreeMap;
    use alloc::sync::Arc;

    fn unary(exc: &[(u32, u64)]) -> StructureDescriptor {
        let v = Arc::new(Vocabulary::unary(["P"]).unwrap());
        StructureDescriptor::unary_tail(v, exc.iter().copied().collect(), 1).unwrap()
    }

    fn stage(d: &StructureDescriptor, n: usize) -> Snapshot {
        crate::structure::restrict(&crate::structure::permuted_presentation(d, 0), n)
    }

    #[test]
    fn unary_witnesses_separate_exception_counts() {
        let (none, one) = (unary(&[]), unary(&[(0, 1)]));
        let phi_none = witness_sentence(&none, &Abstraction::Types(BTreeMap::new()), 1).unwrap();
        let phi_one = witness_sentence(&one, &Abstraction::Types(BTreeMap::from([(0, 1)])), 1).unwrap();
        assert!(eval_sigma2_bounded(&stage(&none, 6), &phi_none));
        assert!(!eval_sigma2_bounded(&stage(&one, 6), &phi_none));
        assert!(eval_sigma2_bounded(&stage(&one, 6), &phi_one));
        assert!(!eval_sigma2_bounded(&stage(&none, 6), &phi_one));
        assert_eq!(
            witness_piece(&none, &Abstraction::Types(BTreeMap::from([(0, 1)])), 1),
            Err(LearnError::Unrealizable)
        );
    }

    #[test]
    fn order_piece_layout() {
        let w = StructureDescriptor::order_type(parse_expr("w").unwrap()).unwrap();
        let (piece, tuple) = witness_piece(&w, &Abstraction::Profile(alloc::vec![Card::ZERO, Card::Inf]), 2).unwrap();
        assert_eq!((piece.size(), tuple), (3, alloc::vec![0]));
        let least = witness_sentence(&w, &Abstraction::Profile(alloc::vec![Card::ZERO, Card::Inf]), 1).unwrap();
        assert!(eval_sigma2_bounded(&Snapshot::chain(4), &least));
    }
}
