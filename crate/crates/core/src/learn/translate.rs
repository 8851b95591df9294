//! Learner-to-learner translations that replace a hypothesis by the least
//! family index naming an equivalent structure.

use alloc::sync::Arc;
use alloc::vec::Vec;

use super::{LearnError, Learner};
use crate::bf::equiv2_described;
use crate::structure::{iso_described, Family, Snapshot, StructureDescriptor};

/// Maps each base index to the least family index whose base entry is
/// related to it.
fn least_related(
    fam: &Family,
    related: impl Fn(&StructureDescriptor, &StructureDescriptor) -> Result<bool, LearnError>,
) -> Result<Vec<Option<usize>>, LearnError> {
    let firsts = fam.first_occurrences();
    let mut table = Vec::with_capacity(fam.base().len());
    for target in fam.base() {
        let mut found = None;
        for &(n, b) in &firsts {
            if related(&fam.base()[b], target)? {
                found = Some(n);
                break;
            }
        }
        table.push(found);
    }
    Ok(table)
}

/// `L'(S)(n) = table[base index of L(S)(n)]`, passing the raw output
/// through when the table has no entry.
pub struct TranslatedLearner {
    inner: Arc<dyn Learner>,
    fam: Family,
    table: Vec<Option<usize>>,
}

impl TranslatedLearner {
    fn map(&self, i: usize) -> usize {
        self.table[self.fam.base_index(i)].unwrap_or(i)
    }
}

impl Learner for TranslatedLearner {
    fn guess(&self, s: &Snapshot) -> usize {
        self.map(self.inner.guess(s))
    }

    fn trace_stages(&self, stages: &mut dyn Iterator<Item = Snapshot>) -> Vec<usize> {
        self.inner.trace_stages(stages).into_iter().map(|i| self.map(i)).collect()
    }
}

/// `L'(S)(n) = μ i [A_i ≅ A_{L(S)(n)}]`.
pub fn min_iso_translate(fam: &Family, l: Arc<dyn Learner>) -> Result<TranslatedLearner, LearnError> {
    let table = least_related(fam, |a, b| Ok(iso_described(a, b)?))?;
    Ok(TranslatedLearner { inner: l, fam: fam.clone(), table })
}

/// `L'(S)(n) = μ i [A_i ≡₂ A_{L(S)(n)}]`, with ≡₂ decided at `cap`.
pub fn equiv2_translate(fam: &Family, l: Arc<dyn Learner>, cap: u64) -> Result<TranslatedLearner, LearnError> {
    let table = least_related(fam, |a, b| Ok(equiv2_described(a, b, cap)?))?;
    Ok(TranslatedLearner { inner: l, fam: fam.clone(), table })
}

/// A learner that reads the family it is learning as input.
pub trait UniformLearner: Send + Sync {
    fn guess(&self, fam: &Family, s: &Snapshot) -> usize;
}

impl<F: Fn(&Family, &Snapshot) -> usize + Send + Sync> UniformLearner for F {
    fn guess(&self, fam: &Family, s: &Snapshot) -> usize {
        self(fam, s)
    }
}

/// [`equiv2_translate`] applied pointwise with the family taken from the input.
pub struct UniformEquiv2<L> {
    inner: L,
    cap: u64,
}

pub fn uniform_equiv2_translate<L: UniformLearner>(l: L, cap: u64) -> UniformEquiv2<L> {
    UniformEquiv2 { inner: l, cap }
}

impl<L: UniformLearner> UniformLearner for UniformEquiv2<L> {
    /// Falls back to the untranslated output if ≡₂ is undecided for the family.
    fn guess(&self, fam: &Family, s: &Snapshot) -> usize {
        let i = self.inner.guess(fam, s);
        let target = fam.member(i);
        fam.first_occurrences()
            .into_iter()
            .find(|&(_, b)| equiv2_described(&fam.base()[b], target, self.cap).unwrap_or(false))
            .map_or(i, |(n, _)| n)
    }
}

/// One representative per isomorphism class, in order of first occurrence,
/// under the identity pattern.
pub fn dedup_family(fam: &Family) -> Result<Family, LearnError> {
    let mut reps: Vec<StructureDescriptor> = Vec::new();
    for (_, b) in fam.first_occurrences() {
        let d = &fam.base()[b];
        let mut duplicate = false;
        for r in &reps {
            if iso_described(r, d)? {
                duplicate = true;
                break;
            }
        }
        if !duplicate {
            reps.push(d.clone());
        }
    }
    Ok(Family::identity(reps)?)
}
