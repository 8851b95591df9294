//! Stream-form learners and the conversions to and from finite-form
//! learners.
//!
//! A stream learner reads stages of the presentation through a
//! [`UseRecorder`], which notes the largest stage consulted: the use of the
//! computation.

use alloc::boxed::Box;
use alloc::sync::Arc;
use core::cell::Cell;

use super::Learner;
use crate::structure::{Realization, Snapshot};

/// Random access to the stages of a presentation, as far as known.
pub trait StageSource {
    fn stage(&self, t: usize) -> Option<Snapshot>;
}

impl StageSource for Realization {
    fn stage(&self, t: usize) -> Option<Snapshot> {
        (t <= self.horizon()).then(|| self.snapshot(t))
    }
}

/// The stages below a single snapshot: stage `t` is its restriction to
/// `{0, …, t}`.
pub struct Prefixes<'a>(pub &'a Snapshot);

impl StageSource for Prefixes<'_> {
    fn stage(&self, t: usize) -> Option<Snapshot> {
        (t < self.0.size()).then(|| self.0.induced(t + 1))
    }
}

/// A [`StageSource`] that remembers the largest stage requested.
pub struct UseRecorder<'a> {
    source: &'a dyn StageSource,
    used: Cell<Option<usize>>,
}

impl<'a> UseRecorder<'a> {
    pub fn new(source: &'a dyn StageSource) -> Self {
        UseRecorder { source, used: Cell::new(None) }
    }

    pub fn stage(&self, t: usize) -> Option<Snapshot> {
        self.used.set(Some(self.used.get().map_or(t, |u| u.max(t))));
        self.source.stage(t)
    }

    /// The largest stage requested so far.
    pub fn used(&self) -> Option<usize> {
        self.used.get()
    }
}

pub trait StreamLearner: Send + Sync {
    /// The hypothesis at stage `n`, or `None` if a needed stage is missing.
    fn step(&self, p: &UseRecorder, n: usize) -> Option<usize>;

    /// The largest stage consulted by `step(p, n)`.
    fn use_at(&self, p: &dyn StageSource, n: usize) -> usize {
        let rec = UseRecorder::new(p);
        self.step(&rec, n);
        rec.used().unwrap_or(0)
    }
}

/// `step(p, n) = f(S↾n)` with use `n`.
pub struct Adapted(Arc<dyn Learner>);

pub fn adapt(f: Arc<dyn Learner>) -> Adapted {
    Adapted(f)
}

impl StreamLearner for Adapted {
    fn step(&self, p: &UseRecorder, n: usize) -> Option<usize> {
        p.stage(n).map(|s| self.0.guess(&s))
    }
}

/// `f(S↾n)` = the stream learner's output at the largest stage `k ≤ n`
/// whose use fits inside `S↾n`; 0 if there is none.
pub struct AdaptedBack(Box<dyn StreamLearner>);

pub fn adapt_back(l: Box<dyn StreamLearner>) -> AdaptedBack {
    AdaptedBack(l)
}

impl Learner for AdaptedBack {
    fn guess(&self, s: &Snapshot) -> usize {
        let source = Prefixes(s);
        for k in (0..s.size()).rev() {
            let rec = UseRecorder::new(&source);
            if let Some(out) = self.0.step(&rec, k) {
                if rec.used().is_none_or(|u| u < s.size()) {
                    return out;
                }
            }
        }
        0
    }
}
