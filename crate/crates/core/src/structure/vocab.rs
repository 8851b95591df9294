use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::StructureError;

/// Name of the binary relation used by every linear-order structure.
pub const ORDER_RELATION: &str = "lt";

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RelationSymbol {
    pub name: String,
    pub arity: usize,
}

/// A finite relational vocabulary τ = (R_i / a_i).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vocabulary {
    relations: Vec<RelationSymbol>,
}

impl Vocabulary {
    pub fn new<S: Into<String>>(
        relations: impl IntoIterator<Item = (S, usize)>,
    ) -> Result<Self, StructureError> {
        let relations: Vec<RelationSymbol> = relations
            .into_iter()
            .map(|(name, arity)| RelationSymbol { name: name.into(), arity })
            .collect();
        if relations.is_empty() {
            return Err(StructureError::EmptyVocabulary);
        }
        for (i, r) in relations.iter().enumerate() {
            if r.arity == 0 {
                return Err(StructureError::ZeroArity(r.name.clone()));
            }
            if relations[..i].iter().any(|s| s.name == r.name) {
                return Err(StructureError::DuplicateRelation(r.name.clone()));
            }
        }
        Ok(Vocabulary { relations })
    }

    /// The vocabulary of linear orders: one binary relation `lt`.
    pub fn order() -> Self {
        Vocabulary {
            relations: alloc::vec![RelationSymbol { name: ORDER_RELATION.to_string(), arity: 2 }],
        }
    }

    /// A vocabulary of unary predicates with the given names.
    pub fn unary<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self, StructureError> {
        Self::new(names.into_iter().map(|n| (n, 1)))
    }

    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn relations(&self) -> &[RelationSymbol] {
        &self.relations
    }

    pub fn arity(&self, rel: usize) -> usize {
        self.relations[rel].arity
    }

    pub fn name(&self, rel: usize) -> &str {
        &self.relations[rel].name
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.relations.iter().position(|r| r.name == name)
    }

    pub fn is_all_unary(&self) -> bool {
        self.relations.iter().all(|r| r.arity == 1)
    }

    pub fn is_order(&self) -> bool {
        *self == Self::order()
    }
}
