use alloc::vec;
use alloc::vec::Vec;

use super::{StructureDescriptor, StructureError};

/// An eventually periodic map ℕ → base index: `initial` lists the first
/// values, after which index `n` maps to `cycle[n % cycle.len()]`.
///
/// The cycle is indexed by the absolute position `n`, so `cycle = [0, 1]`
/// is the parity pattern regardless of the length of `initial`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Pattern {
    pub initial: Vec<usize>,
    pub cycle: Vec<usize>,
}

impl Pattern {
    pub fn at(&self, n: usize) -> usize {
        match self.initial.get(n) {
            Some(&i) => i,
            None => self.cycle[n % self.cycle.len()],
        }
    }

    /// `0, 1, …, k−1, k−1, k−1, …`
    pub fn identity(k: usize) -> Self {
        assert!(k > 0);
        Pattern { initial: (0..k).collect(), cycle: vec![k - 1] }
    }

    /// `0, 1, 0, 1, …`
    pub fn parity() -> Self {
        Pattern { initial: Vec::new(), cycle: vec![0, 1] }
    }

    /// Length of a prefix after which the pattern is purely periodic.
    pub fn prefix_len(&self) -> usize {
        self.initial.len()
    }
}

/// A sequence of structures `A_0, A_1, …` given by a finite base and a pattern.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Family {
    base: Vec<StructureDescriptor>,
    pattern: Pattern,
}

impl Family {
    pub fn new(base: Vec<StructureDescriptor>, pattern: Pattern) -> Result<Self, StructureError> {
        if base.is_empty() {
            return Err(StructureError::EmptyFamily);
        }
        if pattern.cycle.is_empty() {
            return Err(StructureError::EmptyCycle);
        }
        if let Some(&index) = pattern.initial.iter().chain(&pattern.cycle).find(|&&i| i >= base.len()) {
            return Err(StructureError::PatternIndex { index, base_len: base.len() });
        }
        let vocab = base[0].vocab();
        if base.iter().any(|d| d.is_unary() != base[0].is_unary()) {
            return Err(StructureError::CrossVariant);
        }
        if base.iter().any(|d| d.vocab() != vocab) {
            return Err(StructureError::VocabularyMismatch);
        }
        Ok(Family { base, pattern })
    }

    /// Base listed in order, then the last member repeated forever.
    pub fn identity(base: Vec<StructureDescriptor>) -> Result<Self, StructureError> {
        let k = base.len().max(1);
        Self::new(base, Pattern::identity(k))
    }

    /// `A, B, A, B, …`
    pub fn parity(a: StructureDescriptor, b: StructureDescriptor) -> Result<Self, StructureError> {
        Self::new(vec![a, b], Pattern::parity())
    }

    pub fn base(&self) -> &[StructureDescriptor] {
        &self.base
    }

    pub fn pattern(&self) -> &Pattern {
        &self.pattern
    }

    /// Base index of family member `n`.
    pub fn base_index(&self, n: usize) -> usize {
        self.pattern.at(n)
    }

    pub fn member(&self, n: usize) -> &StructureDescriptor {
        &self.base[self.pattern.at(n)]
    }

    /// The family with member `n` replaced by base entry `base_index`.
    pub fn with_entry(&self, n: usize, base_index: usize) -> Result<Self, StructureError> {
        let mut pattern = self.pattern.clone();
        while pattern.initial.len() <= n {
            let next = pattern.at(pattern.initial.len());
            pattern.initial.push(next);
        }
        pattern.initial[n] = base_index;
        Family::new(self.base.clone(), pattern)
    }

    /// Indices `0..bound` at which each base entry first occurs, in order of
    /// first occurrence. Entries that never occur are omitted.
    pub fn first_occurrences(&self) -> Vec<(usize, usize)> {
        let bound = self.pattern.prefix_len() + self.pattern.cycle.len();
        let mut seen = vec![false; self.base.len()];
        let mut out = Vec::new();
        for n in 0..bound {
            let b = self.pattern.at(n);
            if !seen[b] {
                seen[b] = true;
                out.push((n, b));
            }
        }
        out
    }
}
