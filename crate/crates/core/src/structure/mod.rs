//! Vocabularies, finite snapshots, finitely described infinite structures
//! and their stagewise presentations.
//!
//! Every structure has universe ω. Finite structures appear only as
//! [`Snapshot`]s, the stage-`s` restrictions of a presentation with domain
//! `{0, …, s}`.

mod descriptor;
mod family;
mod iso;
mod presentation;
mod snapshot;
mod vocab;

pub use descriptor::{iso_described, OneType, StructureDescriptor};
pub use family::{Family, Pattern};
pub use iso::iso_snapshots;
pub use presentation::{permuted_presentation, restrict, PresentationStream, Realization, Stages};
pub use snapshot::Snapshot;
pub(crate) use snapshot::advance as advance_tuple;
pub use vocab::{RelationSymbol, Vocabulary, ORDER_RELATION};

use alloc::string::String;
use core::fmt;

/// Errors raised while building or comparing structures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StructureError {
    EmptyVocabulary,
    DuplicateRelation(String),
    ZeroArity(String),
    UnknownRelation(String),
    TupleArity { relation: String, expected: usize, found: usize },
    TupleOutOfRange { relation: String, element: usize, size: usize },
    SnapshotTooLarge { size: usize, arity: usize },
    VocabularyMismatch,
    NotUnary(String),
    TooManyPredicates(usize),
    FiniteDescriptor,
    CrossVariant,
    EmptyFamily,
    PatternIndex { index: usize, base_len: usize },
    EmptyCycle,
    ZeroCount(u32),
    TypeOutOfRange(u32),
}

impl fmt::Display for StructureError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use StructureError::*;
        match self {
            EmptyVocabulary => f.write_str("vocabulary must contain at least one relation"),
            DuplicateRelation(n) => write!(f, "relation `{n}` declared twice"),
            ZeroArity(n) => write!(f, "relation `{n}` has arity 0"),
            UnknownRelation(n) => write!(f, "unknown relation `{n}`"),
            TupleArity { relation, expected, found } => {
                write!(f, "relation `{relation}` expects {expected}-tuples, got {found}")
            }
            TupleOutOfRange { relation, element, size } => {
                write!(f, "relation `{relation}` mentions element {element} outside domain of size {size}")
            }
            SnapshotTooLarge { size, arity } => {
                write!(f, "snapshot of size {size} is too large for a relation of arity {arity}")
            }
            VocabularyMismatch => f.write_str("structures are over different vocabularies"),
            NotUnary(n) => write!(f, "relation `{n}` is not unary"),
            TooManyPredicates(k) => write!(f, "{k} unary predicates exceed the supported 32"),
            FiniteDescriptor => f.write_str("descriptor denotes a finite structure; universe must be ω"),
            CrossVariant => f.write_str("cannot compare a unary descriptor with an order descriptor"),
            EmptyFamily => f.write_str("family base is empty"),
            PatternIndex { index, base_len } => {
                write!(f, "pattern refers to base index {index} but base has {base_len} members")
            }
            EmptyCycle => f.write_str("pattern tail cycle is empty"),
            ZeroCount(t) => write!(f, "exceptional type {t:#b} has count 0"),
            TypeOutOfRange(t) => write!(f, "1-type {t:#b} mentions predicates outside the vocabulary"),
        }
    }
}

impl core::error::Error for StructureError {}
