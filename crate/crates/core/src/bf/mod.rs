//! Back-and-forth relations.
//!
//! * [`leq0`] and [`leq_n_snapshots`] decide `≤₀` and `≤ₙ` on finite pointed
//!   snapshots by literal game recursion.
//! * [`leq_n_unary`] plays the same game on type-count summaries of unary
//!   descriptors.
//! * [`interval_profiles`], [`leq1_intervals`] and [`leq2_order`] decide `≤₂`
//!   between order expressions through the cardinalities of the intervals cut
//!   out by marked points.
//! * [`pi_n_oracle`] compares Πₙ theories of small snapshots directly, as an
//!   independent check of the game side.

mod atomic;
mod oracle;
mod profiles;
mod snapshot_game;
mod unary;

pub use atomic::{atomic_formulas, leq0, AtomicFormula, Leq0Mode};
pub use oracle::{pi_n_oracle, TheoryOracle, MAX_ORACLE_SIZE, MAX_ORACLE_VARS};
pub use profiles::{
    interval_profiles, leq1_intervals, leq2_order, minimal_profiles, CardProfile, ProfileSet,
};
pub use snapshot_game::{
    leq_n_prepared, leq_n_snapshots, leq_n_snapshots_with, ExtensionBound, PreparedSnapshot,
    MAX_EXTENSION_LEN, MAX_GAME_SIZE, MAX_PREPARED_SIZE,
};
pub use unary::{leq_n_unary, pointed_leq1_unary, TypeCounts};

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::structure::{iso_described, Snapshot, StructureDescriptor, StructureError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BfError {
    TupleLengthMismatch { left: usize, right: usize },
    TupleOutOfRange { element: usize, size: usize },
    VocabularyMismatch,
    CrossVariant,
    ProfileLengthMismatch { left: usize, right: usize },
    BoundsExceeded(&'static str),
    Unsupported(String),
    CapTooSmall { cap: u64, min: u64 },
}

impl fmt::Display for BfError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BfError::TupleLengthMismatch { left, right } => {
                write!(f, "tuples have different lengths ({left} and {right})")
            }
            BfError::TupleOutOfRange { element, size } => {
                write!(f, "tuple entry {element} outside domain of size {size}")
            }
            BfError::VocabularyMismatch => f.write_str("structures are over different vocabularies"),
            BfError::CrossVariant => f.write_str("cannot compare a unary descriptor with an order descriptor"),
            BfError::ProfileLengthMismatch { left, right } => {
                write!(f, "profiles have different lengths ({left} and {right})")
            }
            BfError::BoundsExceeded(what) => write!(f, "bounds exceeded: {what}"),
            BfError::Unsupported(what) => write!(f, "unsupported: {what}"),
            BfError::CapTooSmall { cap, min } => write!(f, "cap {cap} is below the minimum {min}"),
        }
    }
}

impl core::error::Error for BfError {}

impl From<StructureError> for BfError {
    fn from(e: StructureError) -> Self {
        match e {
            StructureError::VocabularyMismatch => BfError::VocabularyMismatch,
            StructureError::CrossVariant => BfError::CrossVariant,
            other => BfError::Unsupported(alloc::format!("{other}")),
        }
    }
}

/// A snapshot with a tuple of distinguished elements (repeats allowed).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointedSnapshot {
    pub snapshot: Snapshot,
    pub tuple: Vec<usize>,
}

impl PointedSnapshot {
    pub fn new(snapshot: Snapshot, tuple: Vec<usize>) -> Result<Self, BfError> {
        if let Some(&element) = tuple.iter().find(|&&e| e >= snapshot.size()) {
            return Err(BfError::TupleOutOfRange { element, size: snapshot.size() });
        }
        Ok(PointedSnapshot { snapshot, tuple })
    }

    pub fn bare(snapshot: Snapshot) -> Self {
        PointedSnapshot { snapshot, tuple: Vec::new() }
    }
}

/// Settings for ≤ₙ on descriptors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BfConfig {
    /// Truncation point for counts and interval cardinalities.
    pub cap: u64,
}

impl Default for BfConfig {
    fn default() -> Self {
        BfConfig { cap: 4 }
    }
}

/// `a ≤ₙ b` for described structures. Unary descriptors support every `n`;
/// order descriptors support `n ≤ 2`.
pub fn leq_n_described(
    a: &StructureDescriptor,
    b: &StructureDescriptor,
    n: usize,
    cap: u64,
) -> Result<bool, BfError> {
    match (a, b) {
        (StructureDescriptor::UnaryTail { .. }, StructureDescriptor::UnaryTail { .. }) => {
            leq_n_unary(a, b, n, cap)
        }
        (StructureDescriptor::OrderType { expr: ea }, StructureDescriptor::OrderType { expr: eb }) => {
            match n {
                0 => Ok(true),
                1 => profiles::leq1_order(ea, eb, cap),
                2 => leq2_order(ea, eb, cap),
                _ => Err(BfError::Unsupported(alloc::format!(
                    "≤{n} on order expressions; only n ≤ 2 is decided"
                ))),
            }
        }
        _ => Err(BfError::CrossVariant),
    }
}

/// `a ≡₂ b`: `≤₂` in both directions.
pub fn equiv2_described(a: &StructureDescriptor, b: &StructureDescriptor, cap: u64) -> Result<bool, BfError> {
    // Isomorphic descriptors are ≡ₙ for every n; skip the games.
    if iso_described(a, b)? {
        return Ok(true);
    }
    Ok(leq_n_described(a, b, 2, cap)? && leq_n_described(b, a, 2, cap)?)
}
