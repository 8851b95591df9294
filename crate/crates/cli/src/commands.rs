use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use uniflearn_core::bf::{leq_n_described, leq_n_snapshots, PointedSnapshot};
use uniflearn_core::learn::{equiv2_translate, min_iso_translate, qss_learner, Learner};
use uniflearn_core::session::{
    condition3_check, condition3a_check, evaluate_success, quasi_scott_sentences, run_session, swap_experiment,
    Frozen, SessionError, SuccessMode, Translation,
};
use uniflearn_core::structure::{iso_described, permuted_presentation};
use uniflearn_core::tree::{interleave_trees, kb_compare, kb_linearize};
use uniflearn_core::{normalize, parse_expr, Family, StructureDescriptor};

use crate::error::{CliError, Result};
use crate::formats::{
    read_descriptor, read_family, read_sentence, read_structure, read_tree, AbstractionJson, DescriptorJson,
    SessionJson, SnapshotJson, StructureInput, TreeJson, VerdictJson,
};

#[derive(Debug, Parser)]
#[command(name = "uniflearn", version, about = "Learning in the limit, back-and-forth games and order-type algebra")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide `left ≤ₙ right` for two snapshots or two descriptors.
    Bf(BfArgs),
    /// Run the sentence learner on presentations of family members.
    Learn(LearnArgs),
    /// Check the separation condition and its duplicate-free variant.
    Check(CheckArgs),
    /// Run the swap experiment against a learner translation.
    Swap(SwapArgs),
    /// Print the normal form of an order expression.
    Algebra(AlgebraArgs),
    /// Kleene–Brouwer linearization or interleaving of finite trees.
    Kb(KbArgs),
}

/// Comma-separated seeds; `a..b` expands to `a, …, b−1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Seeds(pub Vec<u64>);

impl FromStr for Seeds {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim) {
            let num = |x: &str| x.parse::<u64>().map_err(|e| format!("bad seed {x:?}: {e}"));
            match part.split_once("..") {
                Some((a, b)) => out.extend(num(a)?..num(b)?),
                None => out.push(num(part)?),
            }
        }
        if out.is_empty() {
            return Err("seed list is empty".into());
        }
        Ok(Seeds(out))
    }
}

fn positive(s: &str) -> std::result::Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

fn positive_u64(s: &str) -> std::result::Result<u64, String> {
    positive(s).map(|n| n as u64)
}

#[derive(Debug, Args)]
pub struct BfArgs {
    #[arg(long)]
    pub left: PathBuf,
    #[arg(long)]
    pub right: PathBuf,
    #[arg(long)]
    pub n: usize,
    /// Truncation point for counts and interval cardinalities.
    #[arg(long, default_value_t = 4, value_parser = positive_u64)]
    pub cap: u64,
    /// Distinguished elements of a left snapshot.
    #[arg(long, value_delimiter = ',')]
    pub left_tuple: Vec<usize>,
    #[arg(long, value_delimiter = ',')]
    pub right_tuple: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TranslateKind {
    None,
    MinIso,
    Equiv2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeKind {
    Ex,
    Bc,
}

#[derive(Debug, Args)]
pub struct LearnArgs {
    #[arg(long)]
    pub family: PathBuf,
    /// Descriptor of the presented structure; defaults to every base entry.
    #[arg(long, conflicts_with = "member")]
    pub truth: Option<PathBuf>,
    /// Present family member `k` instead.
    #[arg(long)]
    pub member: Option<usize>,
    #[arg(long, default_value = "0")]
    pub seeds: Seeds,
    #[arg(long, default_value_t = 200, value_parser = positive)]
    pub horizon: usize,
    #[arg(long, default_value_t = 2, value_parser = positive)]
    pub tuple_bound: usize,
    #[arg(long, default_value_t = 4, value_parser = positive_u64)]
    pub cap: u64,
    /// Universally quantified variables in each sentence.
    #[arg(long, default_value_t = 1)]
    pub y_arity: usize,
    #[arg(long, value_enum, default_value_t = TranslateKind::None)]
    pub translate: TranslateKind,
    #[arg(long, value_enum, default_value_t = ModeKind::Ex)]
    pub mode: ModeKind,
    /// Bc window: the last `window + 1` guesses must be correct.
    #[arg(long, default_value_t = 0)]
    pub window: usize,
    /// Sessions run in parallel.
    #[arg(long, default_value_t = 1, value_parser = positive)]
    pub jobs: usize,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long)]
    pub family: PathBuf,
    #[arg(long, default_value_t = 2, value_parser = positive)]
    pub tuple_bound: usize,
    #[arg(long, default_value_t = 4, value_parser = positive_u64)]
    pub cap: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SwapKind {
    Freeze,
    MinIso,
    Equiv2,
}

#[derive(Debug, Args)]
pub struct SwapArgs {
    #[arg(long)]
    pub a1: PathBuf,
    #[arg(long)]
    pub a2: PathBuf,
    #[arg(long, value_enum)]
    pub translation: SwapKind,
    #[arg(long, default_value_t = 100, value_parser = positive)]
    pub horizon: usize,
    #[arg(long, default_value = "0..5")]
    pub seeds: Seeds,
    #[arg(long, default_value_t = 4, value_parser = positive_u64)]
    pub cap: u64,
    /// Sentence true in `a1`; derived from the pair when omitted.
    #[arg(long, requires = "theta")]
    pub psi: Option<PathBuf>,
    /// Sentence true in `a2`.
    #[arg(long, requires = "psi")]
    pub theta: Option<PathBuf>,
    #[arg(long, default_value_t = 2, value_parser = positive)]
    pub tuple_bound: usize,
    #[arg(long, default_value_t = 1)]
    pub y_arity: usize,
}

#[derive(Debug, Args)]
pub struct AlgebraArgs {
    pub expr: String,
}

#[derive(Debug, Args)]
pub struct KbArgs {
    /// Tree to linearize.
    #[arg(required_unless_present = "interleave")]
    pub tree: Option<PathBuf>,
    /// Emit the interleaving `T*S` of two trees instead.
    #[arg(long, num_args = 2, value_names = ["T", "S"], conflicts_with = "tree")]
    pub interleave: Option<Vec<PathBuf>>,
}

fn to_json<T: Serialize>(v: &T) -> Result<String> {
    serde_json::to_string_pretty(v).map_err(|e| CliError::Internal(e.to_string()))
}

/// Runs one command and returns what it prints.
pub fn run(cli: Cli) -> Result<String> {
    match cli.command {
        Command::Bf(a) => cmd_bf(&a),
        Command::Learn(a) => cmd_learn(&a),
        Command::Check(a) => cmd_check(&a),
        Command::Swap(a) => cmd_swap(&a),
        Command::Algebra(a) => cmd_algebra(&a),
        Command::Kb(a) => cmd_kb(&a),
    }
}

#[derive(Serialize)]
struct BfOutput {
    relation: &'static str,
    n: usize,
    left: String,
    right: String,
    result: bool,
    cap: u64,
    mode: &'static str,
}

fn shown(p: &Path) -> String {
    p.display().to_string()
}

pub fn cmd_bf(a: &BfArgs) -> Result<String> {
    let (result, mode) = match (read_structure(&a.left)?, read_structure(&a.right)?) {
        (StructureInput::Snapshot(l), StructureInput::Snapshot(r)) => {
            let l = PointedSnapshot::new(l, a.left_tuple.clone())?;
            let r = PointedSnapshot::new(r, a.right_tuple.clone())?;
            (leq_n_snapshots(&l, &r, a.n)?, "snapshot")
        }
        (StructureInput::Descriptor(l), StructureInput::Descriptor(r)) => {
            if !a.left_tuple.is_empty() || !a.right_tuple.is_empty() {
                return Err(CliError::Unsupported("distinguished tuples need snapshot inputs".into()));
            }
            (leq_n_described(&l, &r, a.n, a.cap)?, "described")
        }
        _ => return Err(CliError::Unsupported("cannot compare a snapshot with a descriptor".into())),
    };
    to_json(&BfOutput {
        relation: "leq_n",
        n: a.n,
        left: shown(&a.left),
        right: shown(&a.right),
        result,
        cap: a.cap,
        mode,
    })
}

#[derive(Serialize)]
struct SessionOutput {
    truth: DescriptorJson,
    seed: u64,
    mode: ModeKind,
    window: usize,
    success_at_horizon: bool,
    result: SessionJson,
}

#[derive(Serialize)]
struct LearnOutput {
    learner: &'static str,
    translation: &'static str,
    sentences: usize,
    sessions: Vec<SessionOutput>,
}

pub fn cmd_learn(a: &LearnArgs) -> Result<String> {
    let fam = read_family(&a.family)?;
    if a.window > a.horizon {
        return Err(SessionError::WindowTooLarge { window: a.window, horizon: a.horizon }.into());
    }
    let truths: Vec<StructureDescriptor> = match (&a.truth, a.member) {
        (Some(p), _) => vec![read_descriptor(p)?],
        (None, Some(k)) => vec![fam.member(k).clone()],
        (None, None) => fam.base().to_vec(),
    };
    for t in &truths {
        if t.vocab() != fam.base()[0].vocab() || t.is_unary() != fam.base()[0].is_unary() {
            return Err(CliError::Format("truth does not match the family's vocabulary".into()));
        }
    }
    let sentences = quasi_scott_sentences(&fam, a.tuple_bound, a.cap, a.y_arity)?;
    let count = sentences.len();
    let qss: Arc<dyn Learner> = Arc::new(qss_learner(sentences)?);
    let (learner, translation): (Arc<dyn Learner>, _) = match a.translate {
        TranslateKind::None => (qss, "none"),
        TranslateKind::MinIso => (Arc::new(min_iso_translate(&fam, qss)?), "min_iso"),
        TranslateKind::Equiv2 => (Arc::new(equiv2_translate(&fam, qss, a.cap)?), "equiv2"),
    };
    let mode = match a.mode {
        ModeKind::Ex => SuccessMode::Ex,
        ModeKind::Bc => SuccessMode::Bc,
    };
    let jobs: Vec<(&StructureDescriptor, u64)> =
        truths.iter().flat_map(|t| a.seeds.0.iter().map(move |&s| (t, s))).collect();
    let one = |&(truth, seed): &(&StructureDescriptor, u64)| -> Result<SessionOutput> {
        let r = run_session(&fam, &permuted_presentation(truth, seed), &*learner, a.horizon)?;
        let ok = evaluate_success(&r, &fam, truth, mode, a.window)?;
        Ok(SessionOutput {
            truth: DescriptorJson::from_descriptor(truth),
            seed,
            mode: a.mode,
            window: a.window,
            success_at_horizon: ok,
            result: SessionJson::from(&r),
        })
    };
    let chunk = jobs.len().div_ceil(a.jobs).max(1);
    let sessions: Vec<SessionOutput> = std::thread::scope(|scope| {
        let handles: Vec<_> = jobs
            .chunks(chunk)
            .map(|part| scope.spawn(move || part.iter().map(one).collect::<Result<Vec<_>>>()))
            .collect();
        let mut out = Vec::with_capacity(jobs.len());
        for h in handles {
            out.extend(h.join().map_err(|_| CliError::Internal("session worker panicked".into()))??);
        }
        Ok::<_, CliError>(out)
    })?;
    to_json(&LearnOutput { learner: "qss", translation, sentences: count, sessions })
}

#[derive(Serialize)]
struct CheckOutput {
    condition3: bool,
    /// `null` when the base has isomorphic entries.
    condition3a: Option<bool>,
    duplicates: Option<[usize; 2]>,
    witnesses: Vec<Option<AbstractionJson>>,
    best_effort: Vec<AbstractionJson>,
}

pub fn cmd_check(a: &CheckArgs) -> Result<String> {
    let fam = read_family(&a.family)?;
    let report = condition3_check(&fam, a.tuple_bound, a.cap)?;
    let (condition3a, duplicates) = match condition3a_check(&fam, a.tuple_bound, a.cap) {
        Ok(r) => (Some(r.holds), None),
        Err(SessionError::Duplicates { first, second }) => (None, Some([first, second])),
        Err(e) => return Err(e.into()),
    };
    if condition3a == Some(true) && !report.holds {
        return Err(CliError::Internal("duplicate-free condition holds but the general one fails".into()));
    }
    to_json(&CheckOutput {
        condition3: report.holds,
        condition3a,
        duplicates,
        witnesses: report.witnesses.iter().map(|w| w.as_ref().map(AbstractionJson::from)).collect(),
        best_effort: report.best_effort.iter().map(AbstractionJson::from).collect(),
    })
}

pub fn cmd_swap(a: &SwapArgs) -> Result<String> {
    let a1 = read_descriptor(&a.a1)?;
    let a2 = read_descriptor(&a.a2)?;
    let (psi, theta) = match (&a.psi, &a.theta) {
        (Some(p), Some(t)) => (read_sentence(p)?, read_sentence(t)?),
        _ => {
            let pair = Family::identity(vec![a1.clone(), a2.clone()])?;
            let mut s = quasi_scott_sentences(&pair, a.tuple_bound, a.cap, a.y_arity)?.into_iter();
            match (s.next(), s.next()) {
                (Some(p), Some(t)) => (p, t),
                _ => return Err(CliError::Internal("a two-entry family yields fewer than two sentences".into())),
            }
        }
    };
    let cap = a.cap;
    let freeze: &Translation = &|_, l| Ok(Arc::new(Frozen(l)) as Arc<dyn Learner>);
    let min_iso: &Translation = &|f, l| Ok(Arc::new(min_iso_translate(f, l)?) as Arc<dyn Learner>);
    let equiv2: &Translation = &move |f, l| Ok(Arc::new(equiv2_translate(f, l, cap)?) as Arc<dyn Learner>);
    let t = match a.translation {
        SwapKind::Freeze => freeze,
        SwapKind::MinIso => min_iso,
        SwapKind::Equiv2 => equiv2,
    };
    let v = swap_experiment(t, &a1, &a2, &psi, &theta, a.horizon, &a.seeds.0, a.cap)?;
    if let Some(e) = &v.evidence {
        if iso_described(e.swapped.member(*e.trace_segment.last().unwrap_or(&0)), &a1)? {
            return Err(CliError::Internal("refutation evidence ends on a correct member".into()));
        }
    }
    to_json(&VerdictJson::from(&v))
}

pub fn cmd_algebra(a: &AlgebraArgs) -> Result<String> {
    Ok(normalize(&parse_expr(&a.expr)?).expr().to_string())
}

#[derive(Serialize)]
struct KbOutput {
    /// Nodes from least to greatest in the Kleene–Brouwer order.
    nodes: Vec<Vec<u64>>,
    /// The order on nodes numbered lexicographically.
    order: SnapshotJson,
}

pub fn cmd_kb(a: &KbArgs) -> Result<String> {
    if let Some(paths) = &a.interleave {
        let (t, s) = (read_tree(&paths[0])?, read_tree(&paths[1])?);
        return to_json(&TreeJson::from_tree(&interleave_trees(&t, &s)));
    }
    let path = a.tree.as_ref().ok_or_else(|| CliError::Format("missing tree file".into()))?;
    let t = read_tree(path)?;
    let order = kb_linearize(&t)?;
    let mut nodes: Vec<Vec<u64>> = t.nodes().cloned().collect();
    nodes.sort_by(|x, y| kb_compare(x, y));
    to_json(&KbOutput { nodes, order: SnapshotJson::from_snapshot(&order) })
}
