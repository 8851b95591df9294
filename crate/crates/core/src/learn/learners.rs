//! The concrete learners: constant, closure-backed, the quasi-Scott-sentence
//! learner and the two-counter learner.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::sentence::{decode_tuple, Sigma2Sentence};
use super::{LearnError, Learner};
use crate::structure::Snapshot;

/// Always guesses the same index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConstantLearner(pub usize);

impl Learner for ConstantLearner {
    fn guess(&self, _: &Snapshot) -> usize {
        self.0
    }
}

/// A learner given by a closure on snapshots.
pub struct FnLearner(Box<dyn Fn(&Snapshot) -> usize + Send + Sync>);

impl FnLearner {
    pub fn new(f: impl Fn(&Snapshot) -> usize + Send + Sync + 'static) -> Self {
        FnLearner(Box::new(f))
    }
}

impl Learner for FnLearner {
    fn guess(&self, s: &Snapshot) -> usize {
        (self.0)(s)
    }
}

/// Least unrefuted witness code of one sentence along a coherent stream.
///
/// A code is refuted once some `ȳ` inside the current stage falsifies the
/// matrix; refutations are permanent, so the witness never decreases.
#[derive(Clone, Debug)]
pub struct WitnessState<'a> {
    phi: &'a Sigma2Sentence,
    code: u64,
    /// Largest element against which the current code has been checked.
    checked: Option<usize>,
    exhausted: bool,
}

impl<'a> WitnessState<'a> {
    pub fn new(phi: &'a Sigma2Sentence) -> Self {
        WitnessState { phi, code: 0, checked: None, exhausted: false }
    }

    /// Advances to the next stage and returns the least unrefuted code
    /// `≤ n`, `None` standing for +∞.
    pub fn step(&mut self, s: &Snapshot) -> Option<u64> {
        let n = s.size().checked_sub(1)?;
        while !self.exhausted && self.code <= n as u64 {
            let Some(x) = decode_tuple(self.code, self.phi.x_arity()) else {
                self.exhausted = true;
                break;
            };
            if self.phi.survives(s, &x, self.checked) {
                self.checked = Some(n);
                return Some(self.code);
            }
            self.code += 1;
            self.checked = None;
        }
        None
    }
}

/// Runs a stream-driven learner on the stage prefixes of one snapshot.
fn last_of_prefixes(l: &impl Learner, s: &Snapshot) -> usize {
    let mut stages = (0..s.size()).map(|t| s.induced(t + 1));
    l.trace_stages(&mut stages).last().copied().unwrap_or(0)
}

/// Outputs the `i ≤ n` minimizing `(w_i(n), i)` where `w_i(n)` is the least
/// unrefuted witness code of sentence `i`; 0 when every witness is +∞.
#[derive(Clone, Debug)]
pub struct QssLearner {
    sentences: Vec<Sigma2Sentence>,
}

pub fn qss_learner(sentences: Vec<Sigma2Sentence>) -> Result<QssLearner, LearnError> {
    if sentences.is_empty() {
        return Err(LearnError::NoSentences);
    }
    Ok(QssLearner { sentences })
}

impl QssLearner {
    pub fn sentences(&self) -> &[Sigma2Sentence] {
        &self.sentences
    }

    /// The per-sentence witness codes at every stage.
    pub fn witness_trace(&self, stages: &mut dyn Iterator<Item = Snapshot>) -> Vec<Vec<Option<u64>>> {
        let mut states: Vec<WitnessState> = self.sentences.iter().map(WitnessState::new).collect();
        stages
            .enumerate()
            .map(|(n, s)| states.iter_mut().take(n + 1).map(|w| w.step(&s)).collect())
            .collect()
    }
}

impl Learner for QssLearner {
    fn guess(&self, s: &Snapshot) -> usize {
        last_of_prefixes(self, s)
    }

    fn trace_stages(&self, stages: &mut dyn Iterator<Item = Snapshot>) -> Vec<usize> {
        self.witness_trace(stages)
            .into_iter()
            .map(|ws| {
                ws.iter()
                    .enumerate()
                    .filter_map(|(i, w)| w.map(|w| (w, i)))
                    .min()
                    .map_or(0, |(_, i)| i)
            })
            .collect()
    }
}

/// Tracks the least witnesses `a_s` of `ψ` and `b_s` of `θ` and how long
/// each has held its current value; outputs `2s+2` while `a`'s count is
/// strictly larger and `2s+1` otherwise.
#[derive(Clone, Debug)]
pub struct CounterLearner {
    psi: Sigma2Sentence,
    theta: Sigma2Sentence,
}

pub fn counter_learner(psi: Sigma2Sentence, theta: Sigma2Sentence) -> CounterLearner {
    CounterLearner { psi, theta }
}

/// `|{t ≤ s : v_t = v_s}|`, or 0 while `v_s` is undefined.
#[derive(Default)]
struct Counter(BTreeMap<u64, usize>);

impl Counter {
    fn record(&mut self, v: Option<u64>) -> usize {
        match v {
            Some(v) => {
                let c = self.0.entry(v).or_default();
                *c += 1;
                *c
            }
            None => 0,
        }
    }
}

impl Learner for CounterLearner {
    fn guess(&self, s: &Snapshot) -> usize {
        last_of_prefixes(self, s)
    }

    fn trace_stages(&self, stages: &mut dyn Iterator<Item = Snapshot>) -> Vec<usize> {
        let (mut wa, mut wb) = (WitnessState::new(&self.psi), WitnessState::new(&self.theta));
        let (mut ca, mut cb) = (Counter::default(), Counter::default());
        stages
            .enumerate()
            .map(|(s, snap)| {
                let a = ca.record(wa.step(&snap));
                let b = cb.record(wb.step(&snap));
                if a > b {
                    2 * s + 2
                } else {
                    2 * s + 1
                }
            })
            .collect()
    }
}
