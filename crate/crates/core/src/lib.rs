//! Executable learning-theoretic constructions for countable structures.
//!
//! The crate simulates explanatory (Ex) and behaviourally correct (BC)
//! learning of countable structures from stagewise presentations, decides
//! back-and-forth relations on finitely described structures, and provides
//! the tree and order-type machinery used to build hard families.
//!
//! Everything here is pure and allocation-only; file formats and the
//! command-line front end live in the `uniflearn` companion crate.
//!
//! Module map:
//!
//! * [`structure`]: vocabularies, finite snapshots, structure descriptors,
//!   presentations and families.
//! * [`order`]: the linear-order expression language, its parser and the
//!   rewriting normalizer.
//! * [`bf`]: back-and-forth relations on snapshots, unary descriptors and
//!   order expressions, plus the Π_n theory oracle.
//! * [`tree`]: finite trees, interleaving, Kleene–Brouwer linearization.
//! * [`learn`]: learners, Σ₂ sentences and learner translations.
//! * [`session`]: learning sessions, success evaluation, the swap
//!   experiment and the learnability conditions.

#![cfg_attr(not(any(feature = "std", test)), no_std)]

extern crate alloc;

pub mod bf;
pub mod card;
pub mod learn;
pub mod order;
pub mod rng;
pub mod session;
pub mod structure;
pub mod tree;

pub use card::Card;
pub use order::{normalize, parse_expr, NormalForm, OrderExpr};
pub use structure::{
    Family, OneType, Pattern, PresentationStream, Snapshot, StructureDescriptor, StructureError,
    Vocabulary,
};
