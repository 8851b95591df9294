//! Learning sessions, horizon-bounded success, the swap adversary and the
//! ∃ā ∀j ∀b̄ learnability conditions on described families.
//!
//! Everything here is evidence at a finite horizon: a trace that is
//! constant from some stage up to the horizon is reported as stabilized,
//! nothing more.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::bf::{equiv2_described, leq1_intervals, minimal_profiles, pointed_leq1_unary, BfError, TypeCounts};
use crate::learn::{
    counter_learner, realized_types, witness_sentence, Abstraction, LearnError, Learner, Sigma2Sentence,
};
use crate::structure::{iso_described, permuted_presentation, Family, PresentationStream, Snapshot, StructureDescriptor, StructureError};
use crate::Card;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SessionError {
    ZeroHorizon,
    WindowTooLarge { window: usize, horizon: usize },
    ZeroTupleBound,
    Duplicates { first: usize, second: usize },
    NotSeparated,
    NoSeeds,
    Learn(LearnError),
    Bf(BfError),
    Structure(StructureError),
}

impl fmt::Display for SessionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SessionError::ZeroHorizon => f.write_str("horizon must be at least 1"),
            SessionError::WindowTooLarge { window, horizon } => {
                write!(f, "window {window} exceeds horizon {horizon}")
            }
            SessionError::ZeroTupleBound => f.write_str("tuple bound must be at least 1"),
            SessionError::Duplicates { first, second } => {
                write!(f, "duplicates: base entries {first} and {second} are isomorphic")
            }
            SessionError::NotSeparated => f.write_str("the two structures are ≡₂; the swap needs A₁ ≢₂ A₂"),
            SessionError::NoSeeds => f.write_str("at least one seed is required"),
            SessionError::Learn(e) => write!(f, "{e}"),
            SessionError::Bf(e) => write!(f, "{e}"),
            SessionError::Structure(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for SessionError {}

impl From<LearnError> for SessionError {
    fn from(e: LearnError) -> Self {
        SessionError::Learn(e)
    }
}

impl From<BfError> for SessionError {
    fn from(e: BfError) -> Self {
        SessionError::Bf(e)
    }
}

impl From<StructureError> for SessionError {
    fn from(e: StructureError) -> Self {
        SessionError::Structure(e)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SessionResult {
    pub trace: Vec<usize>,
    /// Least `t` with the trace constant on `[t, horizon]`, unless the trace
    /// changes at the horizon itself.
    pub stabilized_at: Option<usize>,
    pub final_guess: usize,
    pub horizon: usize,
    pub family_ref: String,
    pub presentation_ref: String,
}

impl SessionResult {
    pub fn from_trace(trace: Vec<usize>, family_ref: String, presentation_ref: String) -> Self {
        let horizon = trace.len() - 1;
        let final_guess = trace[horizon];
        let t = trace.iter().rposition(|&x| x != final_guess).map_or(0, |i| i + 1);
        let stabilized_at = (t < horizon || horizon == 0).then_some(t);
        SessionResult { trace, stabilized_at, final_guess, horizon, family_ref, presentation_ref }
    }
}

pub fn run_session(
    fam: &Family,
    p: &PresentationStream,
    l: &dyn Learner,
    horizon: usize,
) -> Result<SessionResult, SessionError> {
    if horizon == 0 {
        return Err(SessionError::ZeroHorizon);
    }
    let family_ref = format!("{} base entries", fam.base().len());
    let presentation_ref = format!("{} seed {}", p.descriptor(), p.seed());
    Ok(SessionResult::from_trace(l.trace(p, horizon), family_ref, presentation_ref))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SuccessMode {
    /// Stabilized, and the final guess names the truth.
    Ex,
    /// Every guess in the last `window + 1` stages names the truth.
    Bc,
}

/// Horizon-bounded Ex or Bc success of a session against `truth`.
pub fn evaluate_success(
    r: &SessionResult,
    fam: &Family,
    truth: &StructureDescriptor,
    mode: SuccessMode,
    window: usize,
) -> Result<bool, SessionError> {
    if window > r.horizon {
        return Err(SessionError::WindowTooLarge { window, horizon: r.horizon });
    }
    let names_truth = |i: usize| -> Result<bool, SessionError> { Ok(iso_described(fam.member(i), truth)?) };
    match mode {
        SuccessMode::Ex => match r.stabilized_at {
            Some(_) => names_truth(r.final_guess),
            None => Ok(false),
        },
        SuccessMode::Bc => {
            let mut cache = BTreeMap::new();
            for &i in &r.trace[r.horizon - window..] {
                let b = fam.base_index(i);
                if !*cache.entry(b).or_insert(names_truth(i)?) {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Outcome {
    RefutedAtHorizon,
    NoRefutationFound,
}

/// The family and trace that refute a translation candidate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evidence {
    pub seed: u64,
    /// The stabilized index of the first run.
    pub stage_n: usize,
    pub swapped: Family,
    /// The rerun's trace from its stabilization stage to the horizon.
    pub trace_segment: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub outcome: Outcome,
    pub evidence: Option<Evidence>,
    pub diagnostics: Vec<String>,
}

/// A candidate translation of learners over a family.
pub type Translation<'a> = dyn Fn(&Family, Arc<dyn Learner>) -> Result<Arc<dyn Learner>, LearnError> + 'a;

/// Outputs the inner learner's stage-0 hypothesis forever.
pub struct Frozen(pub Arc<dyn Learner>);

impl Learner for Frozen {
    fn guess(&self, s: &Snapshot) -> usize {
        self.0.guess(&s.induced(1.min(s.size())))
    }
}

/// Runs `translate(F, L)` on presentations of `a1`, where `F` is the parity
/// family `(a1, a2, a1, …)` and `L` the counter learner for `(psi, theta)`.
/// When a run stabilizes to `N`, member `N` is replaced (by `a2` if `N` is
/// even, `a1` if odd) and the translation is rerun on the same
/// presentation; a rerun stabilizing on a non-`a1` member refutes the
/// candidate.
#[allow(clippy::too_many_arguments)]
pub fn swap_experiment(
    translate: &Translation,
    a1: &StructureDescriptor,
    a2: &StructureDescriptor,
    psi: &Sigma2Sentence,
    theta: &Sigma2Sentence,
    horizon: usize,
    seeds: &[u64],
    cap: u64,
) -> Result<Verdict, SessionError> {
    if seeds.is_empty() {
        return Err(SessionError::NoSeeds);
    }
    if equiv2_described(a1, a2, cap)? {
        return Err(SessionError::NotSeparated);
    }
    let fam = Family::parity(a1.clone(), a2.clone())?;
    let l: Arc<dyn Learner> = Arc::new(counter_learner(psi.clone(), theta.clone()));
    let mut diagnostics = Vec::new();
    for &seed in seeds {
        let p = permuted_presentation(a1, seed);
        let first = run_session(&fam, &p, &*translate(&fam, l.clone())?, horizon)?;
        let Some(_) = first.stabilized_at else {
            diagnostics.push(format!("seed {seed}: no stabilization at horizon {horizon}"));
            continue;
        };
        let n = first.final_guess;
        let swapped = fam.with_entry(n, if n % 2 == 0 { 1 } else { 0 })?;
        let rerun = run_session(&swapped, &p, &*translate(&swapped, l.clone())?, horizon)?;
        match rerun.stabilized_at {
            Some(t) if !iso_described(swapped.member(rerun.final_guess), a1)? => {
                let evidence = Evidence { seed, stage_n: n, swapped, trace_segment: rerun.trace[t..].to_vec() };
                diagnostics.push(format!("seed {seed}: rerun stabilized at stage {t} on member {}", rerun.final_guess));
                return Ok(Verdict { outcome: Outcome::RefutedAtHorizon, evidence: Some(evidence), diagnostics });
            }
            Some(t) => diagnostics.push(format!(
                "seed {seed}: first run stabilized on {n}, rerun stabilized at stage {t} on a correct member"
            )),
            None => diagnostics.push(format!("seed {seed}: first run stabilized on {n}, rerun did not stabilize")),
        }
    }
    Ok(Verdict { outcome: Outcome::NoRefutationFound, evidence: None, diagnostics })
}

/// Candidate tuple abstractions of at most `bound` elements in `d`: type
/// multisets for unary descriptors, minimal interval profiles for orders
/// (a smaller profile is only easier to keep out of ≤₁).
pub fn abstractions(d: &StructureDescriptor, bound: usize, cap: u64) -> Result<Vec<Abstraction>, SessionError> {
    match d {
        StructureDescriptor::UnaryTail { .. } => {
            let counts: Vec<(u32, Card)> = d.type_counts().expect("unary").into_iter().collect();
            let mut out = Vec::new();
            for size in 0..=bound {
                multisets(&counts, size as u64, 0, &mut TypeCounts::new(), &mut out);
            }
            Ok(out)
        }
        StructureDescriptor::OrderType { expr } => {
            let mut out = Vec::new();
            for p in 0..=bound {
                out.extend(minimal_profiles(expr, p, cap)?.into_iter().map(Abstraction::Profile));
            }
            Ok(out)
        }
    }
}

fn multisets(counts: &[(u32, Card)], left: u64, i: usize, cur: &mut TypeCounts, out: &mut Vec<Abstraction>) {
    if i == counts.len() {
        if left == 0 {
            out.push(Abstraction::Types(cur.clone()));
        }
        return;
    }
    let (t, c) = counts[i];
    for k in 0..=left {
        if !c.at_least(k) {
            break;
        }
        if k > 0 {
            cur.insert(t, k);
        }
        multisets(counts, left - k, i + 1, cur, out);
        cur.remove(&t);
    }
}

/// `(d_i, a) ≤₁ (d_j, b̄)` for some same-shape `b̄` over `d_j`.
fn dominated(di: &StructureDescriptor, a: &Abstraction, dj: &StructureDescriptor, cap: u64) -> Result<bool, SessionError> {
    match (a, dj) {
        // ≤₀ forces b̄ to carry the same type multiset.
        (Abstraction::Types(t), StructureDescriptor::UnaryTail { .. }) => Ok(pointed_leq1_unary(di, t, dj, t, cap)?),
        (Abstraction::Profile(r), StructureDescriptor::OrderType { expr }) => {
            for q in minimal_profiles(expr, r.len() - 1, cap)? {
                if leq1_intervals(r, &q)? {
                    return Ok(true);
                }
            }
            Ok(false)
        }
        _ => Err(SessionError::Bf(BfError::CrossVariant)),
    }
}

/// Per base entry: the first abstraction that escapes every non-isomorphic
/// entry, or `None`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condition3Report {
    pub holds: bool,
    pub witnesses: Vec<Option<Abstraction>>,
    /// Per base entry: an abstraction escaping the most entries, used to
    /// build sentences even when the condition fails.
    pub best_effort: Vec<Abstraction>,
}

fn condition3_report(fam: &Family, tuple_bound: usize, cap: u64) -> Result<Condition3Report, SessionError> {
    if tuple_bound == 0 {
        return Err(SessionError::ZeroTupleBound);
    }
    let base = fam.base();
    let mut iso = alloc::vec![alloc::vec![false; base.len()]; base.len()];
    for (i, a) in base.iter().enumerate() {
        for (j, b) in base.iter().enumerate() {
            iso[i][j] = iso_described(a, b)?;
        }
    }
    let mut witnesses = Vec::with_capacity(base.len());
    let mut best_effort = Vec::with_capacity(base.len());
    for (i, di) in base.iter().enumerate() {
        let mut found = None;
        let mut best: Option<(usize, Abstraction)> = None;
        for a in abstractions(di, tuple_bound, cap)? {
            let mut failures = 0;
            for (j, dj) in base.iter().enumerate() {
                if !iso[i][j] && dominated(di, &a, dj, cap)? {
                    failures += 1;
                }
            }
            if failures == 0 {
                found = Some(a.clone());
                best = Some((0, a));
                break;
            }
            if best.as_ref().is_none_or(|(f, _)| failures < *f) {
                best = Some((failures, a));
            }
        }
        witnesses.push(found);
        best_effort.push(best.expect("the empty tuple is always a candidate").1);
    }
    let holds = witnesses.iter().all(Option::is_some);
    Ok(Condition3Report { holds, witnesses, best_effort })
}

/// ∃ā ∀j ∀b̄: `(A_i, ā) ≰₁ (A_j, b̄)` or `A_i ≅ A_j`, for every base entry `i`.
pub fn condition3_check(fam: &Family, tuple_bound: usize, cap: u64) -> Result<Condition3Report, SessionError> {
    condition3_report(fam, tuple_bound, cap)
}

/// As [`condition3_check`] without the isomorphism escape, for a base of
/// pairwise non-isomorphic entries.
pub fn condition3a_check(fam: &Family, tuple_bound: usize, cap: u64) -> Result<Condition3Report, SessionError> {
    let base = fam.base();
    for i in 0..base.len() {
        for j in i + 1..base.len() {
            if iso_described(&base[i], &base[j])? {
                return Err(SessionError::Duplicates { first: i, second: j });
            }
        }
    }
    condition3_report(fam, tuple_bound, cap)
}

/// Whether no same-shape `b̄` over `dj` realizes only types that `ā` realizes
/// in `di`, with `y_arity` universal variables; that is, whether the witness
/// sentence of `(di, ā)` fails in `dj`. Minimal profiles suffice for orders
/// since the realized types only grow with the profile.
fn sentence_escapes(
    di: &StructureDescriptor,
    a: &Abstraction,
    dj: &StructureDescriptor,
    y_arity: usize,
    cap: u64,
) -> Result<bool, SessionError> {
    let mine = realized_types(di, a, y_arity)?;
    let candidates = match (a, dj) {
        (Abstraction::Types(_), StructureDescriptor::UnaryTail { .. }) => alloc::vec![a.clone()],
        (Abstraction::Profile(r), StructureDescriptor::OrderType { expr }) => {
            minimal_profiles(expr, r.len() - 1, cap.max(y_arity as u64))?.into_iter().map(Abstraction::Profile).collect()
        }
        _ => return Err(SessionError::Bf(BfError::CrossVariant)),
    };
    for b in candidates {
        let theirs = match realized_types(dj, &b, y_arity) {
            Ok(t) => t,
            Err(LearnError::Unrealizable) => continue,
            Err(e) => return Err(e.into()),
        };
        if theirs.iter().all(|t| mine.binary_search(t).is_ok()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One witness sentence per family index up to the end of the first
/// pattern period. Each base entry gets the first candidate abstraction
/// (at most `tuple_bound` elements) whose sentence with `y_arity` universal
/// variables fails in every non-isomorphic entry, or the one failing in the
/// most entries when none does.
pub fn quasi_scott_sentences(
    fam: &Family,
    tuple_bound: usize,
    cap: u64,
    y_arity: usize,
) -> Result<Vec<Sigma2Sentence>, SessionError> {
    if tuple_bound == 0 {
        return Err(SessionError::ZeroTupleBound);
    }
    let base = fam.base();
    let mut per_base = Vec::with_capacity(base.len());
    for (i, di) in base.iter().enumerate() {
        let mut others = Vec::new();
        for (j, dj) in base.iter().enumerate() {
            if j != i && !iso_described(di, dj)? {
                others.push(dj);
            }
        }
        let mut best: Option<(usize, Abstraction)> = None;
        for a in abstractions(di, tuple_bound, cap)? {
            let mut failures = 0;
            for dj in &others {
                if !sentence_escapes(di, &a, dj, y_arity, cap)? {
                    failures += 1;
                }
            }
            if best.as_ref().is_none_or(|(f, _)| failures < *f) {
                best = Some((failures, a));
            }
            if failures == 0 {
                break;
            }
        }
        let (_, a) = best.expect("the empty tuple is always a candidate");
        per_base.push(witness_sentence(di, &a, y_arity)?);
    }
    let period = fam.pattern().prefix_len() + fam.pattern().cycle.len();
    Ok((0..period).map(|n| per_base[fam.base_index(n)].clone()).collect())
}
