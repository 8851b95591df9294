//! Learners, Σ₂ sentences, and the translations between learners.
//!
//! A [`Learner`] maps each stage snapshot to a family index. Learners that
//! track state along a stream (witness codes, counters) override
//! [`Learner::trace_stages`] and derive single guesses by replaying the
//! snapshot's own prefixes, which is sound because stages are coherent.

mod learners;
mod sentence;
mod stream;
mod translate;
mod witness;

pub use learners::{
    counter_learner, qss_learner, ConstantLearner, CounterLearner, FnLearner, QssLearner, WitnessState,
};
pub use sentence::{atoms_over, decode_tuple, eval_sigma2_bounded, Literal, Matrix, Sigma2Sentence};
pub use stream::{adapt, adapt_back, Adapted, AdaptedBack, Prefixes, StageSource, StreamLearner, UseRecorder};
pub use translate::{
    dedup_family, equiv2_translate, min_iso_translate, uniform_equiv2_translate, TranslatedLearner, UniformEquiv2,
    UniformLearner,
};
pub use witness::{realized_types, witness_piece, witness_sentence, Abstraction};

use alloc::vec::Vec;
use core::fmt;

use crate::bf::BfError;
use crate::structure::{PresentationStream, Snapshot, StructureError};

pub trait Learner: Send + Sync {
    /// The hypothesis on a stage snapshot. Must be deterministic.
    fn guess(&self, s: &Snapshot) -> usize;

    /// Hypotheses on consecutive stages of one coherent stream.
    fn trace_stages(&self, stages: &mut dyn Iterator<Item = Snapshot>) -> Vec<usize> {
        stages.map(|s| self.guess(&s)).collect()
    }

    /// Hypotheses on stages `0..=horizon` of `p`.
    fn trace(&self, p: &PresentationStream, horizon: usize) -> Vec<usize> {
        self.trace_stages(&mut p.stages(horizon))
    }
}

impl<L: Learner + ?Sized> Learner for alloc::sync::Arc<L> {
    fn guess(&self, s: &Snapshot) -> usize {
        (**self).guess(s)
    }

    fn trace_stages(&self, stages: &mut dyn Iterator<Item = Snapshot>) -> Vec<usize> {
        (**self).trace_stages(stages)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LearnError {
    VariableOutOfRange { var: usize, vars: usize },
    UnknownRelation(usize),
    ArityMismatch { relation: usize, expected: usize },
    TooManyAtoms(usize),
    NoSentences,
    Unrealizable,
    AbstractionMismatch,
    Structure(StructureError),
    Bf(BfError),
}

impl fmt::Display for LearnError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LearnError::VariableOutOfRange { var, vars } => {
                write!(f, "variable {var} out of range for {vars} variables")
            }
            LearnError::UnknownRelation(r) => write!(f, "unknown relation index {r}"),
            LearnError::ArityMismatch { relation, expected } => {
                write!(f, "relation {relation} takes {expected} arguments")
            }
            LearnError::TooManyAtoms(n) => write!(f, "{n} atoms exceed the 128-atom type code"),
            LearnError::NoSentences => f.write_str("learner needs at least one sentence"),
            LearnError::Unrealizable => f.write_str("abstraction is not realized in the structure"),
            LearnError::AbstractionMismatch => f.write_str("abstraction does not fit the descriptor kind"),
            LearnError::Structure(e) => write!(f, "{e}"),
            LearnError::Bf(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for LearnError {}

impl From<StructureError> for LearnError {
    fn from(e: StructureError) -> Self {
        LearnError::Structure(e)
    }
}

impl From<BfError> for LearnError {
    fn from(e: BfError) -> Self {
        LearnError::Bf(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bf::AtomicFormula;
    use crate::order::parse_expr;
    use crate::structure::{permuted_presentation, Family, StructureDescriptor, Vocabulary};
    use alloc::boxed::Box;
    use alloc::collections::BTreeMap;
    use alloc::sync::Arc;
    use alloc::vec;

    fn vocab() -> Arc<Vocabulary> {
        Arc::new(Vocabulary::unary(["P"]).unwrap())
    }

    fn all_p() -> StructureDescriptor {
        StructureDescriptor::unary_tail(vocab(), BTreeMap::new(), 1).unwrap()
    }

    fn one_not_p() -> StructureDescriptor {
        StructureDescriptor::unary_tail(vocab(), BTreeMap::from([(0, 1)]), 1).unwrap()
    }

    fn p(v: usize) -> AtomicFormula {
        AtomicFormula::Rel(0, vec![v])
    }

    /// `∃x̄ ∀y P(y)` with empty `x̄`.
    fn phi_all() -> Sigma2Sentence {
        Sigma2Sentence::new(vocab(), 0, 1, Matrix::Cnf(vec![vec![Literal::pos(p(0))]])).unwrap()
    }

    /// `∃x ∀y (¬P(x) ∧ (y = x ∨ P(y)))`.
    fn phi_one() -> Sigma2Sentence {
        let m = Matrix::Cnf(vec![
            vec![Literal::neg(p(0))],
            vec![Literal::pos(AtomicFormula::Eq(0, 1)), Literal::pos(p(1))],
        ]);
        Sigma2Sentence::new(vocab(), 1, 1, m).unwrap()
    }

    fn stays(trace: &[usize], from: usize, v: usize) -> bool {
        trace[from..].iter().all(|&x| x == v)
    }

    #[test]
    fn qss_examples() {
        let l = qss_learner(vec![phi_all(), phi_one()]).unwrap();
        let t = l.trace(&permuted_presentation(&all_p(), 0), 40);
        assert!(stays(&t, 0, 0));
        let t = l.trace(&permuted_presentation(&one_not_p(), 0), 40);
        assert!(stays(&t, 1, 1), "{t:?}");
        let l = qss_learner(vec![Sigma2Sentence::always_true(vocab())]).unwrap();
        assert!(stays(&l.trace(&permuted_presentation(&one_not_p(), 3), 20), 0, 0));
        assert_eq!(qss_learner(Vec::new()).unwrap_err(), LearnError::NoSentences);
    }

    #[test]
    fn witnesses_never_decrease() {
        let l = qss_learner(vec![phi_all(), phi_one()]).unwrap();
        for seed in 0..10 {
            let p = permuted_presentation(&one_not_p(), seed);
            let w = l.witness_trace(&mut p.stages(60));
            for i in 0..2 {
                // +∞ only means no code ≤ n survives yet; finite witnesses never move back.
                let col: Vec<u64> = w.iter().filter_map(|ws| ws.get(i).copied().flatten()).collect();
                assert!(col.windows(2).all(|p| p[0] <= p[1]), "seed {seed} sentence {i}");
            }
        }
    }

    #[test]
    fn guesses_match_traces() {
        let qss = qss_learner(vec![phi_all(), phi_one()]).unwrap();
        let counter = counter_learner(phi_all(), phi_one());
        let p = permuted_presentation(&one_not_p(), 5);
        let stages: Vec<Snapshot> = p.stages(30).collect();
        for l in [&qss as &dyn Learner, &counter] {
            let t = l.trace(&p, 30);
            for (n, s) in stages.iter().enumerate() {
                assert_eq!(l.guess(s), t[n]);
            }
        }
    }

    #[test]
    fn counter_examples() {
        let l = counter_learner(phi_all(), phi_one());
        let t = l.trace(&permuted_presentation(&all_p(), 0), 30);
        assert!(t.iter().enumerate().all(|(s, &x)| x == 2 * s + 2));
        let p = permuted_presentation(&one_not_p(), 4);
        let t = l.trace(&p, 60);
        let appear = p.stage_of(0);
        assert!(t.iter().enumerate().skip(appear).all(|(s, &x)| x == 2 * s + 1), "{t:?}");
        // Both witnesses undefined at stage 0 ties to the odd branch.
        let never = Sigma2Sentence::new(vocab(), 0, 0, Matrix::Dnf(Vec::new())).unwrap();
        assert_eq!(counter_learner(never.clone(), never).trace(&p, 0), vec![1]);
    }

    #[test]
    fn translations() {
        let fam = Family::parity(all_p(), one_not_p()).unwrap();
        let stages: Vec<Snapshot> = permuted_presentation(&all_p(), 0).stages(10).collect();
        let run = |l: &dyn Learner| -> Vec<usize> { stages.iter().map(|s| l.guess(s)).collect() };
        let l = min_iso_translate(&fam, Arc::new(ConstantLearner(2))).unwrap();
        assert!(run(&l).iter().all(|&x| x == 0));
        let alt = Arc::new(FnLearner::new(|s: &Snapshot| if s.size().is_multiple_of(2) { 0 } else { 2 }));
        assert!(run(&min_iso_translate(&fam, alt).unwrap()).iter().all(|&x| x == 0));
        assert!(run(&min_iso_translate(&fam, Arc::new(ConstantLearner(1))).unwrap()).iter().all(|&x| x == 1));

        let counter = Arc::new(counter_learner(phi_all(), phi_one()));
        let t = equiv2_translate(&fam, counter, 4).unwrap().trace(&permuted_presentation(&all_p(), 0), 20);
        assert!(t.iter().all(|&x| x == 0));

        let w = |s: &str| StructureDescriptor::order_type(parse_expr(s).unwrap()).unwrap();
        let wfam = Family::identity(vec![w("w"), w("w+w")]).unwrap();
        let alt = Arc::new(FnLearner::new(|s: &Snapshot| s.size() % 2));
        let t = equiv2_translate(&wfam, alt, 4).unwrap().trace(&permuted_presentation(&w("w"), 0), 10);
        assert!(t.iter().all(|&x| x == 0));
    }

    #[test]
    fn uniform_translation() {
        let fam = Family::parity(all_p(), all_p()).unwrap();
        let alt = |_: &Family, s: &Snapshot| s.size() % 2;
        let u = uniform_equiv2_translate(alt, 4);
        for s in permuted_presentation(&all_p(), 1).stages(8) {
            assert_eq!(u.guess(&fam, &s), 0);
        }
        let distinct = Family::parity(all_p(), one_not_p()).unwrap();
        let correct = |_: &Family, s: &Snapshot| usize::from((0..s.size()).any(|e| !s.holds(0, &[e])));
        let u = uniform_equiv2_translate(correct, 4);
        for s in permuted_presentation(&one_not_p(), 0).stages(8) {
            assert_eq!(u.guess(&distinct, &s), correct(&distinct, &s));
        }
    }

    #[test]
    fn dedup() {
        let fam = Family::parity(all_p(), one_not_p()).unwrap();
        assert_eq!(dedup_family(&fam).unwrap(), Family::identity(vec![all_p(), one_not_p()]).unwrap());
        let same = Family::parity(all_p(), all_p()).unwrap();
        assert_eq!(dedup_family(&same).unwrap().base().len(), 1);
        let abc = Family::identity(vec![all_p(), one_not_p(), all_p()]).unwrap();
        assert_eq!(dedup_family(&abc).unwrap(), Family::identity(vec![all_p(), one_not_p()]).unwrap());
    }

    #[test]
    fn adapt_round_trip() {
        let f: Arc<dyn Learner> = Arc::new(qss_learner(vec![phi_all(), phi_one()]).unwrap());
        let back = adapt_back(Box::new(adapt(f.clone())));
        for seed in 0..3 {
            for s in permuted_presentation(&one_not_p(), seed).stages(20) {
                assert_eq!(back.guess(&s), f.guess(&s));
            }
        }
        let c = adapt_back(Box::new(adapt(Arc::new(ConstantLearner(7)))));
        assert_eq!(c.guess(&Snapshot::chain(3)), 7);
        let src = permuted_presentation(&all_p(), 0).realize(10);
        let a = adapt(f);
        assert!((0..10).all(|n| a.use_at(&src, n) <= a.use_at(&src, n + 1)));
    }
}
