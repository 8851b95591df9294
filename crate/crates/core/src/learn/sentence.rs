//! Σ₂ sentences `∃x̄ ∀ȳ θ(x̄, ȳ)` with quantifier-free clause-list matrices.
//!
//! Variables `0..x_arity` are the `x̄`, the next `y_arity` are the `ȳ`.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::LearnError;
use crate::bf::{atomic_formulas, AtomicFormula};
use crate::order::cantor_unpair;
use crate::structure::{advance_tuple, Snapshot, Vocabulary};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Literal {
    pub atom: AtomicFormula,
    pub positive: bool,
}

impl Literal {
    pub fn pos(atom: AtomicFormula) -> Self {
        Literal { atom, positive: true }
    }

    pub fn neg(atom: AtomicFormula) -> Self {
        Literal { atom, positive: false }
    }

    fn eval(&self, s: &Snapshot, xy: &[usize]) -> bool {
        self.atom.eval(s, xy) == Some(self.positive)
    }
}

/// A matrix in conjunctive or disjunctive normal form. An empty CNF is
/// true and an empty DNF is false.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Matrix {
    Cnf(Vec<Vec<Literal>>),
    Dnf(Vec<Vec<Literal>>),
}

/// How the matrix is evaluated. A DNF whose every clause fixes all atoms
/// over the variables is a set of complete types, looked up by type code.
#[derive(Clone, Debug)]
enum Compiled {
    Clauses,
    Types { atoms: Vec<AtomicFormula>, codes: Vec<u128> },
}

#[derive(Clone, Debug)]
pub struct Sigma2Sentence {
    vocab: Arc<Vocabulary>,
    x_arity: usize,
    y_arity: usize,
    matrix: Matrix,
    compiled: Compiled,
}

impl PartialEq for Sigma2Sentence {
    fn eq(&self, other: &Self) -> bool {
        self.vocab == other.vocab
            && self.x_arity == other.x_arity
            && self.y_arity == other.y_arity
            && self.matrix == other.matrix
    }
}

impl Eq for Sigma2Sentence {}

/// The atoms of [`atomic_formulas`] whose variables are all below `vars`.
pub fn atoms_over(vocab: &Vocabulary, vars: usize) -> Vec<AtomicFormula> {
    let per_var = |v: usize| -> usize {
        v + vocab.relations().iter().map(|r| (v + 1).pow(r.arity as u32) - v.pow(r.arity as u32)).sum::<usize>()
    };
    atomic_formulas(vocab, (0..vars).map(per_var).sum())
}

fn type_code(atoms: &[AtomicFormula], s: &Snapshot, xy: &[usize]) -> u128 {
    atoms
        .iter()
        .enumerate()
        .fold(0, |code, (i, a)| code | u128::from(a.eval(s, xy) == Some(true)) << i)
}

impl Sigma2Sentence {
    pub fn new(vocab: Arc<Vocabulary>, x_arity: usize, y_arity: usize, matrix: Matrix) -> Result<Self, LearnError> {
        let vars = x_arity + y_arity;
        let clauses = match &matrix {
            Matrix::Cnf(c) | Matrix::Dnf(c) => c,
        };
        for lit in clauses.iter().flatten() {
            match &lit.atom {
                AtomicFormula::Eq(i, j) => {
                    if *i >= vars || *j >= vars {
                        return Err(LearnError::VariableOutOfRange { var: (*i).max(*j), vars });
                    }
                }
                AtomicFormula::Rel(r, args) => {
                    if *r >= vocab.len() {
                        return Err(LearnError::UnknownRelation(*r));
                    }
                    if args.len() != vocab.arity(*r) {
                        return Err(LearnError::ArityMismatch { relation: *r, expected: vocab.arity(*r) });
                    }
                    if let Some(&var) = args.iter().find(|&&v| v >= vars) {
                        return Err(LearnError::VariableOutOfRange { var, vars });
                    }
                }
            }
        }
        let compiled = Self::compile(&vocab, vars, &matrix);
        Ok(Sigma2Sentence { vocab, x_arity, y_arity, matrix, compiled })
    }

    fn compile(vocab: &Vocabulary, vars: usize, matrix: &Matrix) -> Compiled {
        let Matrix::Dnf(clauses) = matrix else {
            return Compiled::Clauses;
        };
        let atoms = atoms_over(vocab, vars);
        if atoms.len() > 128 || clauses.is_empty() {
            return Compiled::Clauses;
        }
        let mut codes = Vec::with_capacity(clauses.len());
        for clause in clauses {
            if clause.len() != atoms.len() {
                return Compiled::Clauses;
            }
            let mut code = 0u128;
            for (i, a) in atoms.iter().enumerate() {
                match clause.iter().find(|l| &l.atom == a) {
                    Some(l) if l.positive => code |= 1 << i,
                    Some(_) => {}
                    None => return Compiled::Clauses,
                }
            }
            codes.push(code);
        }
        codes.sort_unstable();
        codes.dedup();
        Compiled::Types { atoms, codes }
    }

    /// `∃x̄ ∀ȳ ⋁ τ(x̄ȳ)` over the complete types `τ` realized by `ā ȳ` in
    /// `piece` as `ȳ` ranges over `y_arity`-tuples.
    pub fn from_realized_types(piece: &Snapshot, tuple: &[usize], y_arity: usize) -> Result<Self, LearnError> {
        let vars = tuple.len() + y_arity;
        let atoms = atoms_over(piece.vocab(), vars);
        if atoms.len() > 128 {
            return Err(LearnError::TooManyAtoms(atoms.len()));
        }
        let mut codes = Vec::new();
        let mut xy: Vec<usize> = tuple.to_vec();
        for_each_tuple(piece.size(), y_arity, |y| {
            xy.truncate(tuple.len());
            xy.extend_from_slice(y);
            codes.push(type_code(&atoms, piece, &xy));
            true
        });
        codes.sort_unstable();
        codes.dedup();
        let clauses = codes
            .iter()
            .map(|&code| {
                atoms
                    .iter()
                    .enumerate()
                    .map(|(i, a)| Literal { atom: a.clone(), positive: code >> i & 1 == 1 })
                    .collect()
            })
            .collect();
        let matrix = Matrix::Dnf(clauses);
        let compiled = Compiled::Types { atoms, codes };
        Ok(Sigma2Sentence { vocab: piece.shared_vocab().clone(), x_arity: tuple.len(), y_arity, matrix, compiled })
    }

    /// A sentence with the constantly true matrix.
    pub fn always_true(vocab: Arc<Vocabulary>) -> Self {
        Sigma2Sentence { vocab, x_arity: 0, y_arity: 0, matrix: Matrix::Cnf(Vec::new()), compiled: Compiled::Clauses }
    }

    pub fn vocab(&self) -> &Arc<Vocabulary> {
        &self.vocab
    }

    pub fn x_arity(&self) -> usize {
        self.x_arity
    }

    pub fn y_arity(&self) -> usize {
        self.y_arity
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// The complete-type codes of a type-set matrix; empty for clause lists.
    pub fn type_codes(&self) -> &[u128] {
        match &self.compiled {
            Compiled::Types { codes, .. } => codes,
            Compiled::Clauses => &[],
        }
    }

    /// `θ(x̄, ȳ)` with `xy` the concatenated assignment.
    pub fn matrix_holds(&self, s: &Snapshot, xy: &[usize]) -> bool {
        match (&self.compiled, &self.matrix) {
            (Compiled::Types { atoms, codes }, _) => codes.binary_search(&type_code(atoms, s, xy)).is_ok(),
            (Compiled::Clauses, Matrix::Cnf(c)) => c.iter().all(|cl| cl.iter().any(|l| l.eval(s, xy))),
            (Compiled::Clauses, Matrix::Dnf(c)) => c.iter().any(|cl| cl.iter().all(|l| l.eval(s, xy))),
        }
    }

    /// Whether `x` survives every `ȳ` over the domain of `s` that has an
    /// entry above `checked` (all `ȳ` when `checked` is `None`).
    pub(crate) fn survives(&self, s: &Snapshot, x: &[usize], checked: Option<usize>) -> bool {
        let mut xy: Vec<usize> = x.to_vec();
        let k = x.len();
        let mut check = |y: &[usize]| {
            xy.truncate(k);
            xy.extend_from_slice(y);
            self.matrix_holds(s, &xy)
        };
        match checked {
            None => for_each_tuple(s.size(), self.y_arity, &mut check),
            Some(c) => for_each_new_tuple(s.size(), self.y_arity, c, &mut check),
        }
    }
}

/// Calls `f` on every tuple of length `len` over `0..size` until it
/// returns false; returns whether every call returned true.
pub(crate) fn for_each_tuple(size: usize, len: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    if size == 0 && len > 0 {
        return true;
    }
    let mut t = vec![0; len];
    loop {
        if !f(&t) {
            return false;
        }
        if !advance_tuple(&mut t, size) {
            return true;
        }
    }
}

/// As [`for_each_tuple`], restricted to tuples with some entry `> old`.
fn for_each_new_tuple(size: usize, len: usize, old: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    if old + 1 >= size {
        return true;
    }
    // Split on the first position holding a new element.
    let mut t = vec![0; len];
    for first in 0..len {
        let (before, rest) = t.split_at_mut(first);
        before.fill(0);
        rest.fill(0);
        t[first] = old + 1;
        loop {
            if !f(&t) {
                return false;
            }
            if !advance_split(&mut t, first, old, size) {
                break;
            }
        }
    }
    true
}

/// Odometer step for tuples whose entries before `first` are `≤ old`, entry
/// `first` is `> old`, and later entries are arbitrary.
fn advance_split(t: &mut [usize], first: usize, old: usize, size: usize) -> bool {
    for i in (0..t.len()).rev() {
        let (lo, hi) = match i.cmp(&first) {
            core::cmp::Ordering::Less => (0, old + 1),
            core::cmp::Ordering::Equal => (old + 1, size),
            core::cmp::Ordering::Greater => (0, size),
        };
        if t[i] + 1 < hi {
            t[i] += 1;
            return true;
        }
        t[i] = lo;
    }
    false
}

/// The `k`-tuple with code `code` under iterated Cantor pairing; the only
/// 0-tuple has code 0. Every entry is at most `code`.
pub fn decode_tuple(code: u64, k: usize) -> Option<Vec<usize>> {
    match k {
        0 => (code == 0).then(Vec::new),
        1 => Some(vec![code as usize]),
        _ => {
            let (head, rest) = cantor_unpair(code);
            let mut t = vec![head as usize];
            t.extend(decode_tuple(rest, k - 1)?);
            Some(t)
        }
    }
}

/// `∃x̄ ∀ȳ θ` with both quantifiers bounded by the domain of `s`.
pub fn eval_sigma2_bounded(s: &Snapshot, phi: &Sigma2Sentence) -> bool {
    !for_each_tuple(s.size(), phi.x_arity, |x| !phi.survives(s, x, None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeMap;

    fn unary_p() -> Arc<Vocabulary> {
        Arc::new(Vocabulary::unary(["P"]).unwrap())
    }

    fn p(v: usize) -> AtomicFormula {
        AtomicFormula::Rel(0, vec![v])
    }

    /// `∃x ∀y (¬P(x) ∧ (y = x ∨ P(y)))`.
    fn exactly_one_not_p() -> Sigma2Sentence {
        let m = Matrix::Cnf(vec![
            vec![Literal::neg(p(0))],
            vec![Literal::pos(AtomicFormula::Eq(0, 1)), Literal::pos(p(1))],
        ]);
        Sigma2Sentence::new(unary_p(), 1, 1, m).unwrap()
    }

    fn unary_snapshot(types: &[u32]) -> Snapshot {
        Snapshot::from_fn(unary_p(), types.len(), |_, t| types[t[0]] == 1).unwrap()
    }

    #[test]
    fn bounded_evaluation() {
        assert!(eval_sigma2_bounded(&unary_snapshot(&[1, 1]), &Sigma2Sentence::always_true(unary_p())));
        assert!(!eval_sigma2_bounded(&unary_snapshot(&[1, 1, 1, 1]), &exactly_one_not_p()));
        assert!(eval_sigma2_bounded(&unary_snapshot(&[1, 0, 1]), &exactly_one_not_p()));
        assert!(!eval_sigma2_bounded(&unary_snapshot(&[0, 0, 1]), &exactly_one_not_p()));
    }

    #[test]
    fn validation() {
        let bad = Matrix::Cnf(vec![vec![Literal::pos(p(2))]]);
        assert!(matches!(
            Sigma2Sentence::new(unary_p(), 1, 1, bad),
            Err(LearnError::VariableOutOfRange { var: 2, vars: 2 })
        ));
        let bad = Matrix::Cnf(vec![vec![Literal::pos(AtomicFormula::Rel(0, vec![0, 1]))]]);
        assert!(matches!(Sigma2Sentence::new(unary_p(), 1, 1, bad), Err(LearnError::ArityMismatch { .. })));
    }

    #[test]
    fn realized_types_compile_to_the_fast_path() {
        let piece = unary_snapshot(&[0, 1, 1]);
        let phi = Sigma2Sentence::from_realized_types(&piece, &[0], 1).unwrap();
        assert!(matches!(phi.compiled, Compiled::Types { .. }));
        // Rebuilding from the clause list gives the same compiled sentence
        // and the same verdicts as clause-by-clause evaluation.
        let again = Sigma2Sentence::new(unary_p(), 1, 1, phi.matrix().clone()).unwrap();
        let slow = Sigma2Sentence { compiled: Compiled::Clauses, ..phi.clone() };
        for types in [&[1u32, 1, 0][..], &[0, 1], &[0, 0, 1], &[1]] {
            let s = unary_snapshot(types);
            assert_eq!(eval_sigma2_bounded(&s, &phi), eval_sigma2_bounded(&s, &slow));
            assert_eq!(eval_sigma2_bounded(&s, &again), eval_sigma2_bounded(&s, &slow));
        }
        assert!(eval_sigma2_bounded(&unary_snapshot(&[1, 0, 1]), &phi));
        assert!(!eval_sigma2_bounded(&unary_snapshot(&[0, 0, 1]), &phi));
    }

    #[test]
    fn new_tuples_are_exactly_those_with_a_fresh_entry() {
        let mut all = BTreeMap::new();
        for_each_tuple(4, 3, |t| {
            all.insert(t.to_vec(), t.iter().any(|&e| e > 1));
            true
        });
        let mut seen = Vec::new();
        for_each_new_tuple(4, 3, 1, |t| {
            seen.push(t.to_vec());
            true
        });
        let expected: Vec<Vec<usize>> = all.iter().filter(|(_, &n)| n).map(|(t, _)| t.clone()).collect();
        seen.sort();
        assert_eq!(seen, expected);
    }

    #[test]
    fn tuple_codes() {
        assert_eq!(decode_tuple(0, 0), Some(vec![]));
        assert_eq!(decode_tuple(1, 0), None);
        assert_eq!(decode_tuple(5, 1), Some(vec![5]));
        let mut seen = alloc::collections::BTreeSet::new();
        for c in 0..200 {
            let t = decode_tuple(c, 3).unwrap();
            assert!(t.iter().all(|&e| e as u64 <= c));
            assert!(seen.insert(t));
        }
    }
}
