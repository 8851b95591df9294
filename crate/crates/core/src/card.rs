//! Cardinalities in ℕ ∪ {∞}.

use core::fmt;
use core::ops::{Add, Mul};

/// A cardinality of a countable set: finite or countably infinite.
///
/// `Fin` sorts below `Inf`, and finite values compare numerically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Card {
    Fin(u64),
    Inf,
}

impl Card {
    pub const ZERO: Card = Card::Fin(0);

    pub fn is_infinite(self) -> bool {
        matches!(self, Card::Inf)
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Card::Fin(k) => Some(k),
            Card::Inf => None,
        }
    }

    /// Truncates at `cap`: finite values at or above `cap` collapse to
    /// `Fin(cap)`, which then reads as "at least `cap`, finite".
    pub fn truncate(self, cap: u64) -> Card {
        match self {
            Card::Fin(k) => Card::Fin(k.min(cap)),
            Card::Inf => Card::Inf,
        }
    }

    /// Subtraction used for "remaining elements" bookkeeping; ∞ − k = ∞.
    pub fn saturating_sub(self, k: u64) -> Card {
        match self {
            Card::Fin(n) => Card::Fin(n.saturating_sub(k)),
            Card::Inf => Card::Inf,
        }
    }

    /// Whether at least `k` elements are available.
    pub fn at_least(self, k: u64) -> bool {
        match self {
            Card::Fin(n) => n >= k,
            Card::Inf => true,
        }
    }

    /// Sum followed by truncation at `cap`.
    pub fn add_capped(self, other: Card, cap: u64) -> Card {
        (self + other).truncate(cap)
    }

    /// Product followed by truncation at `cap`; 0·∞ = 0.
    pub fn mul_capped(self, other: Card, cap: u64) -> Card {
        (self * other).truncate(cap)
    }
}

impl Add for Card {
    type Output = Card;

    fn add(self, rhs: Card) -> Card {
        match (self, rhs) {
            (Card::Fin(a), Card::Fin(b)) => Card::Fin(a.saturating_add(b)),
            _ => Card::Inf,
        }
    }
}

impl Mul for Card {
    type Output = Card;

    fn mul(self, rhs: Card) -> Card {
        match (self, rhs) {
            (Card::Fin(0), _) | (_, Card::Fin(0)) => Card::Fin(0),
            (Card::Fin(a), Card::Fin(b)) => Card::Fin(a.saturating_mul(b)),
            _ => Card::Inf,
        }
    }
}

impl fmt::Display for Card {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Card::Fin(k) => write!(f, "{k}"),
            Card::Inf => f.write_str("inf"),
        }
    }
}
