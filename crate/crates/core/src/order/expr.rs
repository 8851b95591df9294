use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;

use crate::Card;

/// A linear-order type term.
///
/// `Prod(a, b)` is the ordinal-style product `a·b`: `b`-many copies of `a`,
/// ordered as `b`. `BigW` is an opaque symbol for a pseudo well-order: an
/// ill-founded order with no simple descending sequences, which absorbs
/// countable well-ordered summands on its left.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OrderExpr {
    Fin(u64),
    Omega,
    OmegaStar,
    Zeta,
    Eta,
    BigW,
    Sum(Vec<OrderExpr>),
    Prod(Box<OrderExpr>, Box<OrderExpr>),
}

impl OrderExpr {
    pub fn prod(a: OrderExpr, b: OrderExpr) -> OrderExpr {
        OrderExpr::Prod(Box::new(a), Box::new(b))
    }

    /// Builds a sum, collapsing the degenerate lengths: no summands is
    /// `Fin(0)` and a single summand is returned as is.
    pub fn sum(mut parts: Vec<OrderExpr>) -> OrderExpr {
        match parts.len() {
            0 => OrderExpr::Fin(0),
            1 => parts.pop().unwrap(),
            _ => OrderExpr::Sum(parts),
        }
    }

    /// Number of points; ∞ for every atom other than `Fin`, with 0·∞ = 0.
    pub fn cardinality(&self) -> Card {
        match self {
            OrderExpr::Fin(k) => Card::Fin(*k),
            OrderExpr::Sum(parts) => parts.iter().fold(Card::ZERO, |acc, p| acc + p.cardinality()),
            OrderExpr::Prod(a, b) => a.cardinality() * b.cardinality(),
            _ => Card::Inf,
        }
    }

    pub fn contains_w(&self) -> bool {
        match self {
            OrderExpr::BigW => true,
            OrderExpr::Sum(parts) => parts.iter().any(OrderExpr::contains_w),
            OrderExpr::Prod(a, b) => a.contains_w() || b.contains_w(),
            _ => false,
        }
    }

    /// Whether the term syntactically denotes a countable well-order: built
    /// from `Fin` and `Omega` by sums and products.
    pub fn is_well_ordered_syntax(&self) -> bool {
        match self {
            OrderExpr::Fin(_) | OrderExpr::Omega => true,
            OrderExpr::Sum(parts) => parts.iter().all(OrderExpr::is_well_ordered_syntax),
            OrderExpr::Prod(a, b) => a.is_well_ordered_syntax() && b.is_well_ordered_syntax(),
            _ => false,
        }
    }

    /// Number of nodes in the term tree.
    pub fn node_count(&self) -> usize {
        match self {
            OrderExpr::Sum(parts) => 1 + parts.iter().map(OrderExpr::node_count).sum::<usize>(),
            OrderExpr::Prod(a, b) => 1 + a.node_count() + b.node_count(),
            _ => 1,
        }
    }
}

/// Prints in the input grammar: `w`, `w*`, `z`, `q`, `W`, naturals, ` + `
/// and `*`. Products print without spaces, so `ω*·ω` appears as `w**w`.
impl fmt::Display for OrderExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderExpr::Fin(k) => write!(f, "{k}"),
            OrderExpr::Omega => f.write_str("w"),
            OrderExpr::OmegaStar => f.write_str("w*"),
            OrderExpr::Zeta => f.write_str("z"),
            OrderExpr::Eta => f.write_str("q"),
            OrderExpr::BigW => f.write_str("W"),
            OrderExpr::Sum(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" + ")?;
                    }
                    write!(f, "{p}")?;
                }
                Ok(())
            }
            OrderExpr::Prod(a, b) => {
                if matches!(**a, OrderExpr::Sum(_)) {
                    write!(f, "({a})")?;
                } else {
                    write!(f, "{a}")?;
                }
                f.write_str("*")?;
                if matches!(**b, OrderExpr::Sum(_) | OrderExpr::Prod(..)) {
                    write!(f, "({b})")
                } else {
                    write!(f, "{b}")
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;
    use OrderExpr::*;

    #[test]
    fn cardinality_rules() {
        assert_eq!(Fin(3).cardinality(), Card::Fin(3));
        assert_eq!(Omega.cardinality(), Card::Inf);
        assert_eq!(OrderExpr::prod(Fin(2), Fin(3)).cardinality(), Card::Fin(6));
        assert_eq!(OrderExpr::prod(Fin(0), Eta).cardinality(), Card::Fin(0));
    }

    #[test]
    fn display_round_trip_shapes() {
        let e = OrderExpr::prod(Sum(vec![BigW, OrderExpr::prod(BigW, Eta), Fin(3)]), Omega);
        assert_eq!(e.to_string(), "(W + W*q + 3)*w");
        assert_eq!(OrderExpr::prod(OmegaStar, Omega).to_string(), "w**w");
        let right_nested = OrderExpr::prod(Omega, OrderExpr::prod(Fin(2), Eta));
        assert_eq!(right_nested.to_string(), "w*(2*q)");
    }
}
