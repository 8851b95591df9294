//! Πₙ-theory comparison for small snapshots, independent of the game code.
//!
//! A prenex `∀x̄ φ` with quantifier-free `φ` is decided by the set of
//! complete atomic types realized by `x̄`: the matrix is a truth table over
//! those types. So Π₁-th(A) ⊆ Π₁-th(B) iff every type realized in `B` is
//! realized in `A`.
//!
//! For `∀x̄ ∃ȳ φ`, write `R(x̄)` for the set of types of `x̄ȳ` as `ȳ` ranges
//! over the domain. The sentence holds iff every `R(x̄)` meets the truth set
//! of `φ`. Taking the truth set to be the complement of some `R(b̄)` shows
//! that Π₂-th(A) ⊆ Π₂-th(B) iff every `R(b̄)` over `B` contains some `R(ā)`
//! over `A`.
//!
//! `var_bound` limits the length of each quantifier block. On a nonempty
//! domain a shorter block pads to a longer one with dummy variables, so only
//! the longest blocks are compared; when a side is empty every block length
//! is checked.

use alloc::vec;
use alloc::vec::Vec;
use core::cell::OnceCell;

use super::BfError;
use crate::structure::{advance_tuple, Snapshot};

/// Largest snapshot the oracle accepts.
pub const MAX_ORACLE_SIZE: usize = 4;
/// Largest quantifier block the oracle accepts.
pub const MAX_ORACLE_VARS: usize = 4;

type TypeCode = u128;

/// Complete atomic type of a tuple (repeats allowed): length, equality
/// pattern as first-occurrence indices, and every relation atom over the
/// distinct elements in first-occurrence order. Tuples have at most
/// `2 * MAX_ORACLE_VARS` entries; [`check_bounds`] keeps arities at 3 or
/// below.
fn tuple_type(s: &Snapshot, t: &[usize]) -> TypeCode {
    let mut firsts = [0usize; 2 * MAX_ORACLE_VARS];
    let mut distinct = 0;
    let mut pattern: TypeCode = 0;
    for (i, &e) in t.iter().enumerate() {
        let k = match firsts[..distinct].iter().position(|&f| f == e) {
            Some(k) => k,
            None => {
                firsts[distinct] = e;
                distinct += 1;
                distinct - 1
            }
        };
        pattern |= (k as TypeCode) << (2 * i);
    }
    let firsts = &firsts[..distinct];
    let mut facts: TypeCode = 0;
    let mut bit = 0;
    if !firsts.is_empty() {
        let mut vars = [0usize; 3];
        let mut x = [0usize; 3];
        for r in 0..s.vocab().len() {
            let arity = s.vocab().arity(r);
            let vars = &mut vars[..arity];
            vars.fill(0);
            loop {
                for (xi, &v) in x.iter_mut().zip(vars.iter()) {
                    *xi = firsts[v];
                }
                if s.holds(r, &x[..arity]) {
                    facts |= 1 << bit;
                }
                bit += 1;
                if !advance_tuple(vars, firsts.len()) {
                    break;
                }
            }
        }
    }
    facts | pattern << 64 | (t.len() as TypeCode) << 96
}

/// Every tuple of length `len` over `0..size`.
fn tuples(size: usize, len: usize) -> Vec<Vec<usize>> {
    if size == 0 {
        return if len == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    let mut t = vec![0; len];
    loop {
        out.push(t.clone());
        if !advance_tuple(&mut t, size) {
            return out;
        }
    }
}

fn sorted(mut v: Vec<TypeCode>) -> Vec<TypeCode> {
    v.sort_unstable();
    v.dedup();
    v
}

fn subset(small: &[TypeCode], big: &[TypeCode]) -> bool {
    small.iter().all(|x| big.binary_search(x).is_ok())
}

/// Types realized by `p`-tuples.
fn realized(s: &Snapshot, p: usize) -> Vec<TypeCode> {
    sorted(tuples(s.size(), p).iter().map(|t| tuple_type(s, t)).collect())
}

/// The ⊆-minimal sets `R(x̄)` over `p`-tuples `x̄` with `q` witnesses.
fn witness_sets(s: &Snapshot, p: usize, q: usize) -> Vec<Vec<TypeCode>> {
    let ys = tuples(s.size(), q);
    let mut xy = Vec::with_capacity(p + q);
    let mut all: Vec<Vec<TypeCode>> = tuples(s.size(), p)
        .iter()
        .map(|x| {
            sorted(
                ys.iter()
                    .map(|y| {
                        xy.clear();
                        xy.extend_from_slice(x);
                        xy.extend_from_slice(y);
                        tuple_type(s, &xy)
                    })
                    .collect(),
            )
        })
        .collect();
    all.sort();
    all.dedup();
    let minimal: Vec<Vec<TypeCode>> = all
        .iter()
        .filter(|r| !all.iter().any(|o| o != *r && subset(o, r)))
        .cloned()
        .collect();
    minimal
}

/// Π₁ and Π₂ data of one snapshot, for sweeping many pairs. The Π₂ data is
/// built on first use and can be dropped with [`TheoryOracle::release`].
#[derive(Clone, Debug)]
pub struct TheoryOracle {
    snapshot: Snapshot,
    var_bound: usize,
    pi1: Vec<TypeCode>,
    pi2: OnceCell<Vec<Vec<TypeCode>>>,
}

fn check_bounds(s: &Snapshot, var_bound: usize) -> Result<(), BfError> {
    if s.size() > MAX_ORACLE_SIZE {
        return Err(BfError::BoundsExceeded("the theory oracle supports at most 4 elements"));
    }
    if var_bound > MAX_ORACLE_VARS {
        return Err(BfError::BoundsExceeded("the theory oracle supports at most 4 variables per block"));
    }
    // A tuple has at most MAX_ORACLE_SIZE distinct elements, so the facts
    // fit in 64 bits and every arity is at most 3.
    let atoms: usize = s.vocab().relations().iter().map(|r| MAX_ORACLE_SIZE.pow(r.arity as u32)).sum();
    if atoms > 64 {
        return Err(BfError::BoundsExceeded("the theory oracle supports at most 64 atoms over 4 elements"));
    }
    Ok(())
}

impl TheoryOracle {
    pub fn new(s: &Snapshot, var_bound: usize) -> Result<Self, BfError> {
        check_bounds(s, var_bound)?;
        Ok(TheoryOracle {
            snapshot: s.clone(),
            var_bound,
            pi1: realized(s, var_bound),
            pi2: OnceCell::new(),
        })
    }

    fn pi2(&self) -> &[Vec<TypeCode>] {
        self.pi2.get_or_init(|| witness_sets(&self.snapshot, self.var_bound, self.var_bound))
    }

    /// Drops the cached Π₂ data.
    pub fn release(&mut self) {
        self.pi2.take();
    }

    /// Πₙ-th(self) ⊆ Πₙ-th(other), for `n ≤ 2`.
    pub fn leq(&self, other: &TheoryOracle, n: usize) -> Result<bool, BfError> {
        if self.snapshot.vocab() != other.snapshot.vocab() {
            return Err(BfError::VocabularyMismatch);
        }
        if self.var_bound != other.var_bound {
            return Err(BfError::Unsupported(alloc::format!(
                "variable bounds differ ({} and {})",
                self.var_bound,
                other.var_bound
            )));
        }
        if n > 2 {
            return Err(BfError::BoundsExceeded("the theory oracle decides n ≤ 2"));
        }
        if self.snapshot.size() == 0 || other.snapshot.size() == 0 {
            return Ok(every_block(&self.snapshot, &other.snapshot, n, self.var_bound));
        }
        Ok(match n {
            0 => true,
            1 => subset(&other.pi1, &self.pi1),
            // Π₁ sentences are Π₂ sentences with an empty ∃ block.
            _ => {
                subset(&other.pi1, &self.pi1)
                    && other.pi2().iter().all(|rb| self.pi2().iter().any(|ra| subset(ra, rb)))
            }
        })
    }
}

/// The comparison over every block length, for when padding is unavailable.
fn every_block(a: &Snapshot, b: &Snapshot, n: usize, var_bound: usize) -> bool {
    match n {
        0 => true,
        1 => (0..=var_bound).all(|p| subset(&realized(b, p), &realized(a, p))),
        _ => (0..=var_bound).all(|p| {
            (0..=var_bound).all(|q| {
                let (wa, wb) = (witness_sets(a, p, q), witness_sets(b, p, q));
                wb.iter().all(|rb| wa.iter().any(|ra| subset(ra, rb)))
            })
        }),
    }
}

/// Whether every prenex Πₙ sentence true in `a` is true in `b`, with at most
/// `var_bound` variables per quantifier block and `n ≤ 2`.
pub fn pi_n_oracle(a: &Snapshot, b: &Snapshot, n: usize, var_bound: usize) -> Result<bool, BfError> {
    TheoryOracle::new(a, var_bound)?.leq(&TheoryOracle::new(b, var_bound)?, n)
}
