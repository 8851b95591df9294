//! Trees on ω: finite trees, generator-backed trees explored to a bound,
//! interleaving, the Kleene–Brouwer order and trees of descending sequences.

use alloc::collections::BTreeSet;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::order::OrderExpr;
use crate::rng::SplitMix64;
use crate::structure::{Family, Snapshot, StructureDescriptor, StructureError};

/// A node: a finite sequence of naturals.
pub type Seq = Vec<u64>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TreeError {
    MissingRoot,
    NotPrefixClosed(Seq),
    BoundsExceeded(&'static str),
    NotLinearOrder,
    InfiniteOrder,
    Structure(StructureError),
}

impl fmt::Display for TreeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeError::MissingRoot => f.write_str("tree lacks the empty sequence"),
            TreeError::NotPrefixClosed(s) => write!(f, "node {s:?} has a prefix missing from the tree"),
            TreeError::BoundsExceeded(what) => write!(f, "bounds exceeded: {what}"),
            TreeError::NotLinearOrder => f.write_str("snapshot is not a strict linear order"),
            TreeError::InfiniteOrder => f.write_str("descending trees need a finite order"),
            TreeError::Structure(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for TreeError {}

impl From<StructureError> for TreeError {
    fn from(e: StructureError) -> Self {
        TreeError::Structure(e)
    }
}

/// A finite prefix-closed set of sequences containing `∅`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinTree {
    nodes: BTreeSet<Seq>,
}

impl FinTree {
    pub fn new(nodes: impl IntoIterator<Item = Seq>) -> Result<Self, TreeError> {
        let nodes: BTreeSet<Seq> = nodes.into_iter().collect();
        if !nodes.contains(&Vec::new()) {
            return Err(TreeError::MissingRoot);
        }
        if let Some(bad) = nodes.iter().find(|s| !s.is_empty() && !nodes.contains(&s[..s.len() - 1])) {
            return Err(TreeError::NotPrefixClosed(bad.clone()));
        }
        Ok(FinTree { nodes })
    }

    /// The closure of `nodes` under prefixes, always including `∅`.
    pub fn prefix_closure(nodes: impl IntoIterator<Item = Seq>) -> Self {
        let mut out = BTreeSet::new();
        out.insert(Vec::new());
        for s in nodes {
            for k in 1..=s.len() {
                out.insert(s[..k].to_vec());
            }
        }
        FinTree { nodes: out }
    }

    /// `{∅}`.
    pub fn root() -> Self {
        Self::prefix_closure([])
    }

    /// `{∅, (0), (0,0), …}` with longest node of length `depth`.
    pub fn chain(depth: usize) -> Self {
        Self::prefix_closure([vec![0; depth]])
    }

    /// Random tree with at most `max_nodes` nodes and labels below `branching`.
    pub fn random(rng: &mut SplitMix64, max_nodes: usize, branching: u64) -> Self {
        let target = 1 + rng.below(max_nodes.max(1) as u64) as usize;
        let mut nodes: Vec<Seq> = vec![Vec::new()];
        let mut set: BTreeSet<Seq> = nodes.iter().cloned().collect();
        for _ in 0..target * 8 {
            if nodes.len() >= target {
                break;
            }
            let mut child = nodes[rng.below(nodes.len() as u64) as usize].clone();
            child.push(rng.below(branching.max(1)));
            if set.insert(child.clone()) {
                nodes.push(child);
            }
        }
        FinTree { nodes: set }
    }

    pub fn nodes(&self) -> impl Iterator<Item = &Seq> {
        self.nodes.iter()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    /// Never true: `∅` is always a node.
    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn contains(&self, s: &[u64]) -> bool {
        self.nodes.contains(s)
    }

    /// Length of the longest node.
    pub fn height(&self) -> usize {
        self.nodes.iter().map(Vec::len).max().unwrap_or(0)
    }
}

/// `σ*τ = ⟨σ(0), τ(0), σ(1), τ(1), …⟩` for `|σ| = |τ|`.
pub fn interleave(sigma: &[u64], tau: &[u64]) -> Seq {
    debug_assert_eq!(sigma.len(), tau.len());
    sigma.iter().zip(tau).flat_map(|(&a, &b)| [a, b]).collect()
}

/// `T*S = {σ*τ : σ ∈ T, τ ∈ S, |σ| = |τ|}`, closed under prefixes. The raw
/// set holds only even-length sequences.
pub fn interleave_trees(t: &FinTree, s: &FinTree) -> FinTree {
    let mut raw = Vec::new();
    for sigma in t.nodes() {
        for tau in s.nodes().filter(|tau| tau.len() == sigma.len()) {
            raw.push(interleave(sigma, tau));
        }
    }
    FinTree::prefix_closure(raw)
}

/// The Kleene–Brouwer order: a proper extension lies below its prefix;
/// otherwise the first differing entry decides.
pub fn kb_compare(a: &[u64], b: &[u64]) -> Ordering {
    match a.iter().zip(b).find(|(x, y)| x != y) {
        Some((x, y)) => x.cmp(y),
        None => b.len().cmp(&a.len()),
    }
}

/// Largest tree [`kb_linearize`] accepts.
pub const MAX_KB_NODES: usize = 4096;

/// `KB(T)` as an order snapshot on `0..|T|`, element `i` being the `i`-th
/// node in lexicographic order.
pub fn kb_linearize(t: &FinTree) -> Result<Snapshot, TreeError> {
    if t.len() > MAX_KB_NODES {
        return Err(TreeError::BoundsExceeded("KB linearization supports at most 4096 nodes"));
    }
    let nodes: Vec<&Seq> = t.nodes().collect();
    let mut by_kb: Vec<usize> = (0..nodes.len()).collect();
    by_kb.sort_by(|&i, &j| kb_compare(nodes[i], nodes[j]));
    let mut ranks = vec![0u32; nodes.len()];
    for (rank, &i) in by_kb.iter().enumerate() {
        ranks[i] = rank as u32;
    }
    Ok(Snapshot::linear_order_from_ranks(&ranks))
}

/// Largest order [`descending_tree`] accepts; its tree has `2ⁿ` nodes.
pub const MAX_DESCENDING_SIZE: usize = 16;

fn descending(n: usize, less: impl Fn(usize, usize) -> bool) -> Result<FinTree, TreeError> {
    if n > MAX_DESCENDING_SIZE {
        return Err(TreeError::BoundsExceeded("descending trees support orders of at most 16 elements"));
    }
    let mut nodes = BTreeSet::new();
    let mut stack: Vec<Seq> = vec![Vec::new()];
    while let Some(s) = stack.pop() {
        for e in 0..n {
            if s.last().is_none_or(|&last| less(e, last as usize)) {
                let mut c = s.clone();
                c.push(e as u64);
                stack.push(c);
            }
        }
        nodes.insert(s);
    }
    Ok(FinTree { nodes })
}

/// The tree of strictly descending sequences of a finite order snapshot.
pub fn descending_tree(s: &Snapshot) -> Result<FinTree, TreeError> {
    let n = s.size();
    let linear = s.vocab().is_order()
        && (0..n).all(|a| {
            !s.holds2(0, a, a)
                && (0..n).all(|b| a == b || s.holds2(0, a, b) != s.holds2(0, b, a))
                && (0..n).all(|b| (0..n).all(|c| !(s.holds2(0, a, b) && s.holds2(0, b, c)) || s.holds2(0, a, c)))
        });
    if !linear {
        return Err(TreeError::NotLinearOrder);
    }
    descending(n, |a, b| s.holds2(0, a, b))
}

/// The tree of strictly descending sequences of a finite order expression,
/// with elements numbered in increasing order.
pub fn descending_tree_of_expr(e: &OrderExpr) -> Result<FinTree, TreeError> {
    let n = e.cardinality().finite().ok_or(TreeError::InfiniteOrder)?;
    let n = usize::try_from(n).map_err(|_| TreeError::BoundsExceeded("order too large"))?;
    descending(n, |a, b| a < b)
}

type Membership = Arc<dyn Fn(&[u64]) -> bool + Send + Sync>;

/// A tree given by a membership predicate, explored through children
/// `0..branching` up to `depth_bound`.
#[derive(Clone)]
pub struct TreeGen {
    membership: Membership,
    branching: u64,
    depth_bound: usize,
}

impl fmt::Debug for TreeGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TreeGen")
            .field("branching", &self.branching)
            .field("depth_bound", &self.depth_bound)
            .finish_non_exhaustive()
    }
}

/// Largest truncation [`TreeGen::truncate`] materializes.
pub const MAX_TRUNCATION_NODES: usize = 100_000;

impl TreeGen {
    pub fn new(
        membership: impl Fn(&[u64]) -> bool + Send + Sync + 'static,
        branching: u64,
        depth_bound: usize,
    ) -> Self {
        TreeGen { membership: Arc::new(membership), branching, depth_bound }
    }

    /// A generator that enumerates exactly the nodes of `t`.
    pub fn from_tree(t: &FinTree) -> Self {
        let branching = t.nodes().flat_map(|s| s.last().copied()).max().map_or(0, |m| m + 1);
        let depth = t.height();
        let t = t.clone();
        TreeGen::new(move |s| t.contains(s), branching, depth)
    }

    pub fn contains(&self, s: &[u64]) -> bool {
        (self.membership)(s)
    }

    pub fn depth_bound(&self) -> usize {
        self.depth_bound
    }

    /// The explored nodes of length at most `depth`.
    pub fn truncate(&self, depth: usize) -> Result<FinTree, TreeError> {
        if depth > self.depth_bound {
            return Err(TreeError::BoundsExceeded("truncation deeper than the exploration bound"));
        }
        let mut nodes = BTreeSet::new();
        let mut stack: Vec<Seq> = vec![Vec::new()];
        while let Some(s) = stack.pop() {
            if s.len() < depth {
                for c in 0..self.branching {
                    let mut child = s.clone();
                    child.push(c);
                    if self.contains(&child) {
                        stack.push(child);
                    }
                }
            }
            nodes.insert(s);
            if nodes.len() > MAX_TRUNCATION_NODES {
                return Err(TreeError::BoundsExceeded("truncation has more than 100000 nodes"));
            }
        }
        Ok(FinTree { nodes })
    }
}

/// Bounded ill-foundedness: is there a node of length `d`?
pub trait PathSearch {
    fn has_path(&self, d: usize) -> Result<bool, TreeError>;
}

impl PathSearch for FinTree {
    fn has_path(&self, d: usize) -> Result<bool, TreeError> {
        Ok(self.height() >= d)
    }
}

impl PathSearch for TreeGen {
    fn has_path(&self, d: usize) -> Result<bool, TreeError> {
        if d > self.depth_bound {
            return Err(TreeError::BoundsExceeded("path search deeper than the exploration bound"));
        }
        let mut stack: Vec<Seq> = vec![Vec::new()];
        while let Some(s) = stack.pop() {
            if s.len() == d {
                return Ok(true);
            }
            for c in (0..self.branching).rev() {
                let mut child = s.clone();
                child.push(c);
                if self.contains(&child) {
                    stack.push(child);
                }
            }
        }
        Ok(false)
    }
}

pub fn has_path(t: &impl PathSearch, d: usize) -> Result<bool, TreeError> {
    t.has_path(d)
}

/// `KB(T)·ω` as an order descriptor.
fn kb_omega(t: &FinTree) -> Result<StructureDescriptor, TreeError> {
    let kb = kb_linearize(t)?;
    let expr = OrderExpr::prod(OrderExpr::Fin(kb.size() as u64), OrderExpr::Omega);
    Ok(StructureDescriptor::order_type(expr)?)
}

/// The parity family `A_{2i} = KB(T_x * T_H↾d)·ω`, `A_{2i+1} = KB(T_H↾d)·ω`.
pub fn reduction_family(t_x: &FinTree, t_h: &TreeGen, trunc_depth: usize) -> Result<Family, TreeError> {
    let h = t_h.truncate(trunc_depth)?;
    let even = kb_omega(&interleave_trees(t_x, &h))?;
    let odd = kb_omega(&h)?;
    Ok(Family::parity(even, odd)?)
}
