//! JSON schemas for snapshots, descriptors, families, trees, sentences and
//! session outputs, and their conversions to the library types.
//!
//! Field order in every output is fixed by the struct definitions, so the
//! emitted JSON is stable enough for golden files.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use uniflearn_core::bf::AtomicFormula;
use uniflearn_core::learn::{Abstraction, Literal, Matrix, Sigma2Sentence};
use uniflearn_core::session::{Evidence, Outcome, SessionResult, Verdict};
use uniflearn_core::tree::FinTree;
use uniflearn_core::{parse_expr, Card, Family, Pattern, Snapshot, StructureDescriptor, Vocabulary};

use crate::error::{CliError, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationJson {
    pub name: String,
    pub arity: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SnapshotJson {
    pub vocab: Vec<RelationJson>,
    pub size: usize,
    /// Relation name to the tuples where it holds.
    pub relations: Map<String, Value>,
}

fn vocab_json(v: &Vocabulary) -> Vec<RelationJson> {
    v.relations().iter().map(|r| RelationJson { name: r.name.clone(), arity: r.arity }).collect()
}

fn vocab_from(v: &[RelationJson]) -> Result<Arc<Vocabulary>> {
    Ok(Arc::new(Vocabulary::new(v.iter().map(|r| (r.name.clone(), r.arity)))?))
}

impl SnapshotJson {
    pub fn from_snapshot(s: &Snapshot) -> Self {
        let mut relations = Map::new();
        for (i, r) in s.vocab().relations().iter().enumerate() {
            let tuples: Vec<Value> = s.tuples(i).map(Value::from).collect();
            relations.insert(r.name.clone(), Value::Array(tuples));
        }
        SnapshotJson { vocab: vocab_json(s.vocab()), size: s.size(), relations }
    }

    pub fn to_snapshot(&self) -> Result<Snapshot> {
        let vocab = vocab_from(&self.vocab)?;
        let mut s = Snapshot::empty(vocab.clone(), self.size)?;
        for (name, tuples) in &self.relations {
            let rel = vocab
                .index_of(name)
                .ok_or_else(|| CliError::Format(format!("relation {name:?} is not in the vocabulary")))?;
            let tuples: Vec<Vec<usize>> = serde_json::from_value(tuples.clone())?;
            for t in tuples {
                s.insert(rel, &t)?;
            }
        }
        Ok(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionJson {
    /// Bitmask of the predicates that hold, predicate `i` at bit `i`.
    #[serde(rename = "type")]
    pub one_type: u32,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DescriptorJson {
    Unary { vocab: Vec<String>, exceptional: Vec<ExceptionJson>, tail: u32 },
    Order { expr: String },
}

impl DescriptorJson {
    pub fn from_descriptor(d: &StructureDescriptor) -> Self {
        match d {
            StructureDescriptor::UnaryTail { vocab, exceptional, tail } => DescriptorJson::Unary {
                vocab: vocab.relations().iter().map(|r| r.name.clone()).collect(),
                exceptional: exceptional.iter().map(|(&one_type, &count)| ExceptionJson { one_type, count }).collect(),
                tail: *tail,
            },
            StructureDescriptor::OrderType { expr } => DescriptorJson::Order { expr: expr.to_string() },
        }
    }

    pub fn to_descriptor(&self) -> Result<StructureDescriptor> {
        match self {
            DescriptorJson::Unary { vocab, exceptional, tail } => {
                let v = Arc::new(Vocabulary::unary(vocab.iter().cloned())?);
                let mut exc = BTreeMap::new();
                for e in exceptional {
                    if exc.insert(e.one_type, e.count).is_some() {
                        return Err(CliError::Format(format!("type {} listed twice", e.one_type)));
                    }
                }
                Ok(StructureDescriptor::unary_tail(v, exc, *tail)?)
            }
            DescriptorJson::Order { expr } => Ok(StructureDescriptor::order_type(parse_expr(expr)?)?),
        }
    }
}

/// `tail` is a single base index repeated forever, `"parity"` for
/// alternating 0 and 1, or a list giving any other cycle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TailJson {
    Index(usize),
    Named(String),
    Cycle(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternJson {
    pub initial: Vec<usize>,
    pub tail: TailJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyJson {
    pub base: Vec<DescriptorJson>,
    pub pattern: PatternJson,
}

impl FamilyJson {
    pub fn from_family(f: &Family) -> Self {
        let p = f.pattern();
        let tail = match p.cycle.as_slice() {
            [i] => TailJson::Index(*i),
            [0, 1] => TailJson::Named("parity".into()),
            c => TailJson::Cycle(c.to_vec()),
        };
        FamilyJson {
            base: f.base().iter().map(DescriptorJson::from_descriptor).collect(),
            pattern: PatternJson { initial: p.initial.clone(), tail },
        }
    }

    pub fn to_family(&self) -> Result<Family> {
        let base = self.base.iter().map(DescriptorJson::to_descriptor).collect::<Result<Vec<_>>>()?;
        let cycle = match &self.pattern.tail {
            TailJson::Index(i) => vec![*i],
            TailJson::Named(s) if s == "parity" => vec![0, 1],
            TailJson::Named(s) => return Err(CliError::Format(format!("unknown pattern tail {s:?}"))),
            TailJson::Cycle(c) => c.clone(),
        };
        Ok(Family::new(base, Pattern { initial: self.pattern.initial.clone(), cycle })?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeJson {
    pub nodes: Vec<Vec<u64>>,
}

impl TreeJson {
    pub fn from_tree(t: &FinTree) -> Self {
        TreeJson { nodes: t.nodes().cloned().collect() }
    }

    pub fn to_tree(&self) -> Result<FinTree> {
        Ok(FinTree::new(self.nodes.iter().cloned())?)
    }
}

/// Atoms name relations rather than index them; variables are numbered with
/// `x̄` first, then `ȳ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AtomJson {
    Eq([usize; 2]),
    Rel { name: String, args: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiteralJson {
    pub atom: AtomJson,
    pub positive: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormJson {
    Cnf,
    Dnf,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sigma2Json {
    pub vocab: Vec<RelationJson>,
    pub x_arity: usize,
    pub y_arity: usize,
    pub form: FormJson,
    pub clauses: Vec<Vec<LiteralJson>>,
}

impl Sigma2Json {
    pub fn from_sentence(phi: &Sigma2Sentence) -> Self {
        let v = phi.vocab();
        let lit = |l: &Literal| LiteralJson {
            atom: match &l.atom {
                AtomicFormula::Eq(a, b) => AtomJson::Eq([*a, *b]),
                AtomicFormula::Rel(r, args) => AtomJson::Rel { name: v.name(*r).to_string(), args: args.clone() },
            },
            positive: l.positive,
        };
        let (form, clauses) = match phi.matrix() {
            Matrix::Cnf(c) => (FormJson::Cnf, c),
            Matrix::Dnf(c) => (FormJson::Dnf, c),
        };
        Sigma2Json {
            vocab: vocab_json(v),
            x_arity: phi.x_arity(),
            y_arity: phi.y_arity(),
            form,
            clauses: clauses.iter().map(|c| c.iter().map(lit).collect()).collect(),
        }
    }

    pub fn to_sentence(&self) -> Result<Sigma2Sentence> {
        let vocab = vocab_from(&self.vocab)?;
        let mut clauses = Vec::with_capacity(self.clauses.len());
        for c in &self.clauses {
            let mut out = Vec::with_capacity(c.len());
            for l in c {
                let atom = match &l.atom {
                    AtomJson::Eq([a, b]) => AtomicFormula::Eq(*a, *b),
                    AtomJson::Rel { name, args } => {
                        let r = vocab
                            .index_of(name)
                            .ok_or_else(|| CliError::Format(format!("relation {name:?} is not in the vocabulary")))?;
                        AtomicFormula::Rel(r, args.clone())
                    }
                };
                out.push(Literal { atom, positive: l.positive });
            }
            clauses.push(out);
        }
        let matrix = match self.form {
            FormJson::Cnf => Matrix::Cnf(clauses),
            FormJson::Dnf => Matrix::Dnf(clauses),
        };
        Ok(Sigma2Sentence::new(vocab, self.x_arity, self.y_arity, matrix)?)
    }
}

/// Cardinalities as numbers, with `"inf"` for infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CardJson {
    Fin(u64),
    Inf(InfTag),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InfTag {
    Inf,
}

impl From<Card> for CardJson {
    fn from(c: Card) -> Self {
        match c {
            Card::Fin(k) => CardJson::Fin(k),
            Card::Inf => CardJson::Inf(InfTag::Inf),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AbstractionJson {
    Types(Vec<ExceptionJson>),
    Profile(Vec<CardJson>),
}

impl From<&Abstraction> for AbstractionJson {
    fn from(a: &Abstraction) -> Self {
        match a {
            Abstraction::Types(t) => AbstractionJson::Types(
                t.iter().map(|(&one_type, &count)| ExceptionJson { one_type, count }).collect(),
            ),
            Abstraction::Profile(p) => AbstractionJson::Profile(p.iter().map(|&c| c.into()).collect()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SessionJson {
    pub trace: Vec<usize>,
    pub stabilized_at: Option<usize>,
    pub final_guess: usize,
    pub horizon: usize,
    pub family_ref: String,
    pub presentation_ref: String,
}

impl From<&SessionResult> for SessionJson {
    fn from(r: &SessionResult) -> Self {
        SessionJson {
            trace: r.trace.clone(),
            stabilized_at: r.stabilized_at,
            final_guess: r.final_guess,
            horizon: r.horizon,
            family_ref: r.family_ref.clone(),
            presentation_ref: r.presentation_ref.clone(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutcomeJson {
    RefutedAtHorizon,
    NoRefutationFound,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvidenceJson {
    pub seed: u64,
    pub stage_n: usize,
    pub swapped: FamilyJson,
    pub trace_segment: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictJson {
    pub outcome: OutcomeJson,
    pub evidence: Option<EvidenceJson>,
    pub diagnostics: Vec<String>,
}

impl From<&Verdict> for VerdictJson {
    fn from(v: &Verdict) -> Self {
        VerdictJson {
            outcome: match v.outcome {
                Outcome::RefutedAtHorizon => OutcomeJson::RefutedAtHorizon,
                Outcome::NoRefutationFound => OutcomeJson::NoRefutationFound,
            },
            evidence: v.evidence.as_ref().map(|e: &Evidence| EvidenceJson {
                seed: e.seed,
                stage_n: e.stage_n,
                swapped: FamilyJson::from_family(&e.swapped),
                trace_segment: e.trace_segment.clone(),
            }),
            diagnostics: v.diagnostics.clone(),
        }
    }
}

/// A structure read from a file: a finite snapshot or an infinite
/// descriptor.
#[derive(Clone, Debug)]
pub enum StructureInput {
    Snapshot(Snapshot),
    Descriptor(StructureDescriptor),
}

pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Format(format!("{}: {e}", path.display())))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    serde_json::from_str(&read_text(path)?).map_err(|e| CliError::Format(format!("{}: {e}", path.display())))
}

/// JSON objects with a `kind` field are descriptors, other objects are
/// snapshots, and anything else is an order expression.
pub fn read_structure(path: &Path) -> Result<StructureInput> {
    let text = read_text(path)?;
    let trimmed = text.trim();
    if !trimmed.starts_with('{') {
        let e = parse_expr(trimmed)?;
        return Ok(StructureInput::Descriptor(StructureDescriptor::order_type(e)?));
    }
    let v: Value = serde_json::from_str(trimmed).map_err(|e| CliError::Format(format!("{}: {e}", path.display())))?;
    if v.get("kind").is_some() {
        let d: DescriptorJson = serde_json::from_value(v)?;
        Ok(StructureInput::Descriptor(d.to_descriptor()?))
    } else {
        let s: SnapshotJson = serde_json::from_value(v)?;
        Ok(StructureInput::Snapshot(s.to_snapshot()?))
    }
}

pub fn read_descriptor(path: &Path) -> Result<StructureDescriptor> {
    match read_structure(path)? {
        StructureInput::Descriptor(d) => Ok(d),
        StructureInput::Snapshot(_) => {
            Err(CliError::Unsupported(format!("{}: expected an infinite structure descriptor", path.display())))
        }
    }
}

pub fn read_family(path: &Path) -> Result<Family> {
    read_json::<FamilyJson>(path)?.to_family()
}

pub fn read_tree(path: &Path) -> Result<FinTree> {
    read_json::<TreeJson>(path)?.to_tree()
}

pub fn read_sentence(path: &Path) -> Result<Sigma2Sentence> {
    read_json::<Sigma2Json>(path)?.to_sentence()
}
