use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use core::fmt;

use super::{StructureError, Vocabulary};
use crate::order::{normalize, OrderExpr};
use crate::Card;

/// A 1-type over an all-unary vocabulary: bit `i` is set iff the element
/// satisfies predicate `i`.
pub type OneType = u32;

/// A finite description of a countably infinite structure.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StructureDescriptor {
    /// Finitely many elements of the listed exceptional types (with the
    /// given multiplicities) followed by infinitely many of type `tail`.
    UnaryTail { vocab: Arc<Vocabulary>, exceptional: BTreeMap<OneType, u64>, tail: OneType },
    /// A linear order denoted by an expression of infinite cardinality.
    OrderType { expr: OrderExpr },
}

impl StructureDescriptor {
    pub fn unary_tail(
        vocab: Arc<Vocabulary>,
        exceptional: BTreeMap<OneType, u64>,
        tail: OneType,
    ) -> Result<Self, StructureError> {
        if let Some(r) = vocab.relations().iter().find(|r| r.arity != 1) {
            return Err(StructureError::NotUnary(r.name.clone()));
        }
        if vocab.len() > 32 {
            return Err(StructureError::TooManyPredicates(vocab.len()));
        }
        let full: u64 = (1u64 << vocab.len()) - 1;
        for (&t, &c) in exceptional.iter().chain(core::iter::once((&tail, &1))) {
            if u64::from(t) > full {
                return Err(StructureError::TypeOutOfRange(t));
            }
            if c == 0 {
                return Err(StructureError::ZeroCount(t));
            }
        }
        Ok(StructureDescriptor::UnaryTail { vocab, exceptional, tail })
    }

    pub fn order_type(expr: OrderExpr) -> Result<Self, StructureError> {
        if !expr.cardinality().is_infinite() {
            return Err(StructureError::FiniteDescriptor);
        }
        Ok(StructureDescriptor::OrderType { expr })
    }

    pub fn vocab(&self) -> Arc<Vocabulary> {
        match self {
            StructureDescriptor::UnaryTail { vocab, .. } => vocab.clone(),
            StructureDescriptor::OrderType { .. } => Arc::new(Vocabulary::order()),
        }
    }

    pub fn is_unary(&self) -> bool {
        matches!(self, StructureDescriptor::UnaryTail { .. })
    }

    pub fn as_order(&self) -> Option<&OrderExpr> {
        match self {
            StructureDescriptor::OrderType { expr } => Some(expr),
            StructureDescriptor::UnaryTail { .. } => None,
        }
    }

    /// Number of elements of each 1-type that occurs (unary descriptors only).
    pub fn type_counts(&self) -> Option<BTreeMap<OneType, Card>> {
        let StructureDescriptor::UnaryTail { exceptional, tail, .. } = self else {
            return None;
        };
        let mut counts: BTreeMap<OneType, Card> =
            exceptional.iter().map(|(&t, &c)| (t, Card::Fin(c))).collect();
        counts.insert(*tail, Card::Inf);
        Some(counts)
    }

    /// The 1-type of abstract element `n` of a unary descriptor: exceptional
    /// elements in type order, then the tail.
    pub fn unary_type_of(&self, mut n: u64) -> Option<OneType> {
        let StructureDescriptor::UnaryTail { exceptional, tail, .. } = self else {
            return None;
        };
        for (&t, &c) in exceptional {
            if n < c {
                return Some(t);
            }
            n -= c;
        }
        Some(*tail)
    }
}

impl fmt::Display for StructureDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructureDescriptor::OrderType { expr } => write!(f, "order {expr}"),
            StructureDescriptor::UnaryTail { exceptional, tail, .. } => {
                f.write_str("unary {")?;
                for (i, (t, c)) in exceptional.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{t:#b}×{c}")?;
                }
                write!(f, "}} tail {tail:#b}")
            }
        }
    }
}

/// Isomorphism of described structures.
///
/// Unary descriptors are isomorphic iff their type counts agree once
/// exceptional elements of the tail type are absorbed into the tail. Order
/// descriptors are compared through their normal forms, which is sound but
/// incomplete.
pub fn iso_described(a: &StructureDescriptor, b: &StructureDescriptor) -> Result<bool, StructureError> {
    use StructureDescriptor::*;
    match (a, b) {
        (UnaryTail { vocab: va, .. }, UnaryTail { vocab: vb, .. }) => {
            if va != vb {
                return Err(StructureError::VocabularyMismatch);
            }
            Ok(a.type_counts() == b.type_counts())
        }
        (OrderType { expr: ea }, OrderType { expr: eb }) => Ok(normalize(ea) == normalize(eb)),
        _ => Err(StructureError::CrossVariant),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::parse_expr;

    fn p_vocab() -> Arc<Vocabulary> {
        Arc::new(Vocabulary::unary(["P"]).unwrap())
    }

    fn all_p() -> StructureDescriptor {
        StructureDescriptor::unary_tail(p_vocab(), BTreeMap::new(), 1).unwrap()
    }

    fn one_not_p() -> StructureDescriptor {
        StructureDescriptor::unary_tail(p_vocab(), BTreeMap::from([(0, 1)]), 1).unwrap()
    }

    #[test]
    fn unary_iso() {
        assert!(iso_described(&all_p(), &all_p()).unwrap());
        assert!(!iso_described(&one_not_p(), &all_p()).unwrap());
        let absorbed = StructureDescriptor::unary_tail(p_vocab(), BTreeMap::from([(1, 4)]), 1).unwrap();
        assert!(iso_described(&absorbed, &all_p()).unwrap());
    }

    #[test]
    fn order_iso_uses_normal_forms() {
        let a = StructureDescriptor::order_type(parse_expr("w + w").unwrap()).unwrap();
        let b = StructureDescriptor::order_type(parse_expr("w*2").unwrap()).unwrap();
        assert!(iso_described(&a, &b).unwrap());
        assert_eq!(iso_described(&a, &all_p()), Err(StructureError::CrossVariant));
    }

    #[test]
    fn validation() {
        assert_eq!(
            StructureDescriptor::order_type(parse_expr("3").unwrap()),
            Err(StructureError::FiniteDescriptor)
        );
        assert_eq!(
            StructureDescriptor::unary_tail(p_vocab(), BTreeMap::from([(0, 0)]), 1),
            Err(StructureError::ZeroCount(0))
        );
        assert_eq!(
            StructureDescriptor::unary_tail(p_vocab(), BTreeMap::new(), 2),
            Err(StructureError::TypeOutOfRange(2))
        );
        assert!(matches!(
            StructureDescriptor::unary_tail(Arc::new(Vocabulary::order()), BTreeMap::new(), 0),
            Err(StructureError::NotUnary(_))
        ));
    }

    #[test]
    fn abstract_elements() {
        let d = one_not_p();
        assert_eq!(d.unary_type_of(0), Some(0));
        assert_eq!(d.unary_type_of(1), Some(1));
        assert_eq!(d.unary_type_of(100), Some(1));
    }
}
