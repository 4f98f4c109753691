//! Truncated languages (formal power series) over the output semiring, the
//! marked Cauchy product, derivatives, per-variety combination expressions,
//! and closure-membership decision procedures with self-checking witnesses.
//!
//! A language is represented by its restriction to `Σ^{≤L}`: a total map from
//! the words of length at most `L` (ordered by length, then lexicographically)
//! to semiring digits. Truncation is exact for marked products — both factors
//! of `u = v·a·w` are strictly shorter than `u` — and lowers the bound by one
//! for derivatives.

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::variety::{Semiring, Variety};
use std::collections::BTreeMap;
use std::fmt;

/// Hard cap on `|Σ^{≤L}|`; everything here is exhaustive over words.
const MAX_WORDS: u128 = 1 << 16;

/// The number of words of length at most `bound` over `k` letters.
pub fn word_count(k: usize, bound: usize) -> Result<usize> {
    let mut total: u128 = 0;
    let mut pow: u128 = 1;
    for _ in 0..=bound {
        total += pow;
        pow = pow.saturating_mul(k as u128);
        if total > MAX_WORDS {
            return Err(Error::guard(format!(
                "truncated domain over {k} letters at bound {bound} exceeds {MAX_WORDS} words"
            )));
        }
    }
    Ok(total as usize)
}

/// All words of length at most `bound` over letters `0..k`, ordered by length
/// and then lexicographically (letter `0` first).
pub fn words_up_to(k: usize, bound: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    let mut layer: Vec<Vec<u8>> = vec![Vec::new()];
    for _ in 0..bound {
        let mut next = Vec::with_capacity(layer.len() * k);
        for w in &layer {
            for b in 0..k as u8 {
                let mut v = w.clone();
                v.push(b);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Renders a word as a string of alphabet symbols, `ε` when empty.
pub fn format_word(alphabet: &[char], w: &[u8]) -> String {
    if w.is_empty() {
        "ε".to_string()
    } else {
        w.iter().map(|&b| alphabet[b as usize]).collect()
    }
}

/// A language restricted to `Σ^{≤bound}`, with values in the output semiring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncLanguage {
    pub semiring: Semiring,
    pub alphabet: Vec<char>,
    pub bound: usize,
    /// One digit per word, in length-then-lex order.
    pub values: Vec<u8>,
}

/// Which side a derivative acts on: `a⁻¹L` or `La⁻¹`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl TruncLanguage {
    pub fn new(
        semiring: Semiring,
        alphabet: &[char],
        bound: usize,
        values: Vec<u8>,
    ) -> Result<TruncLanguage> {
        let count = word_count(alphabet.len(), bound)?;
        if values.len() != count {
            return Err(Error::input(format!(
                "expected {count} values for Σ^{{≤{bound}}}, got {}",
                values.len()
            )));
        }
        if let Some(&bad) = values.iter().find(|&&v| !semiring.contains(v)) {
            return Err(Error::input(format!("value {bad} outside the semiring")));
        }
        Ok(TruncLanguage {
            semiring,
            alphabet: alphabet.to_vec(),
            bound,
            values,
        })
    }

    /// Builds a language by evaluating a function on every word.
    pub fn from_fn(
        semiring: Semiring,
        alphabet: &[char],
        bound: usize,
        mut f: impl FnMut(&[u8]) -> u8,
    ) -> Result<TruncLanguage> {
        word_count(alphabet.len(), bound)?;
        let values = words_up_to(alphabet.len(), bound)
            .iter()
            .map(|w| f(w))
            .collect();
        TruncLanguage::new(semiring, alphabet, bound, values)
    }

    /// The constant series with the given value.
    pub fn constant(
        semiring: Semiring,
        alphabet: &[char],
        bound: usize,
        value: u8,
    ) -> Result<TruncLanguage> {
        TruncLanguage::from_fn(semiring, alphabet, bound, |_| value)
    }

    /// The characteristic series of a single word.
    pub fn char_word(
        semiring: Semiring,
        alphabet: &[char],
        bound: usize,
        w: &[u8],
    ) -> Result<TruncLanguage> {
        if w.len() > bound {
            return Err(Error::input(format!(
                "word of length {} beyond bound {bound}",
                w.len()
            )));
        }
        TruncLanguage::from_fn(semiring, alphabet, bound, |u| u8::from(u == w))
    }

    /// The id of a word in length-then-lex order.
    pub fn id_of_word(&self, w: &[u8]) -> usize {
        let k = self.alphabet.len();
        let mut offset = 0usize;
        let mut pow = 1usize;
        for _ in 0..w.len() {
            offset += pow;
            pow *= k;
        }
        offset + w.iter().fold(0usize, |acc, &b| acc * k + b as usize)
    }

    /// The value at a word (which must have length at most the bound).
    pub fn of(&self, w: &[u8]) -> u8 {
        self.values[self.id_of_word(w)]
    }

    pub fn words(&self) -> Vec<Vec<u8>> {
        words_up_to(self.alphabet.len(), self.bound)
    }

    fn same_shape(&self, other: &TruncLanguage) -> Result<()> {
        if self.semiring != other.semiring
            || self.alphabet != other.alphabet
            || self.bound != other.bound
        {
            return Err(Error::input(
                "languages must share semiring, alphabet, and bound".to_string(),
            ));
        }
        Ok(())
    }

    /// Restriction to a smaller bound.
    pub fn truncate(&self, bound: usize) -> Result<TruncLanguage> {
        if bound > self.bound {
            return Err(Error::input(format!(
                "cannot extend bound {} to {bound}",
                self.bound
            )));
        }
        let count = word_count(self.alphabet.len(), bound)?;
        TruncLanguage::new(
            self.semiring,
            &self.alphabet,
            bound,
            self.values[..count].to_vec(),
        )
    }

    /// The marked Cauchy product `KaL`:
    /// `(KaL)(u) = Σ_{u=v·a·w} K(v)⊙L(w)`. Exact under truncation.
    pub fn marked_product(&self, a: char, other: &TruncLanguage) -> Result<TruncLanguage> {
        self.same_shape(other)?;
        let a_idx = self.letter(a)?;
        let s = self.semiring;
        TruncLanguage::from_fn(s, &self.alphabet, self.bound, |u| {
            let mut acc = s.zero();
            for i in 0..u.len() {
                if u[i] == a_idx {
                    acc = s.add(acc, s.mul(self.of(&u[..i]), other.of(&u[i + 1..])));
                }
            }
            acc
        })
    }

    /// The one-letter derivative `(a⁻¹L)(u) = L(au)` or `(La⁻¹)(u) = L(ua)`;
    /// the bound drops by one.
    pub fn derivative(&self, a: char, side: Side) -> Result<TruncLanguage> {
        if self.bound == 0 {
            return Err(Error::input(
                "cannot derive a language of bound 0".to_string(),
            ));
        }
        let a_idx = self.letter(a)?;
        TruncLanguage::from_fn(self.semiring, &self.alphabet, self.bound - 1, |u| {
            let mut w = Vec::with_capacity(u.len() + 1);
            match side {
                Side::Left => {
                    w.push(a_idx);
                    w.extend_from_slice(u);
                }
                Side::Right => {
                    w.extend_from_slice(u);
                    w.push(a_idx);
                }
            }
            self.of(&w)
        })
    }

    /// Pointwise sum (Boolean union or GF(p) addition).
    pub fn pointwise_add(&self, other: &TruncLanguage) -> Result<TruncLanguage> {
        self.same_shape(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&x, &y)| self.semiring.add(x, y))
            .collect();
        TruncLanguage::new(self.semiring, &self.alphabet, self.bound, values)
    }

    /// Pointwise product (Boolean intersection).
    pub fn pointwise_mul(&self, other: &TruncLanguage) -> Result<TruncLanguage> {
        self.same_shape(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&x, &y)| self.semiring.mul(x, y))
            .collect();
        TruncLanguage::new(self.semiring, &self.alphabet, self.bound, values)
    }

    /// Boolean complement `u ↦ 1 − L(u)`.
    pub fn complement(&self) -> Result<TruncLanguage> {
        if self.semiring != Semiring::Bool {
            return Err(Error::input(
                "complement requires the Boolean semiring".to_string(),
            ));
        }
        let values = self.values.iter().map(|&x| 1 - x).collect();
        TruncLanguage::new(self.semiring, &self.alphabet, self.bound, values)
    }

    /// Pointwise scalar multiple.
    pub fn scale(&self, lambda: u8) -> Result<TruncLanguage> {
        let values = self
            .values
            .iter()
            .map(|&x| self.semiring.mul(lambda, x))
            .collect();
        TruncLanguage::new(self.semiring, &self.alphabet, self.bound, values)
    }

    /// Pointwise order: everywhere `≤` in the semiring order (Boolean
    /// containment; equality for GF(p)).
    pub fn leq(&self, other: &TruncLanguage) -> bool {
        self.values
            .iter()
            .zip(&other.values)
            .all(|(&x, &y)| self.semiring.leq(x, y))
    }

    fn letter(&self, a: char) -> Result<u8> {
        self.alphabet
            .iter()
            .position(|&c| c == a)
            .map(|i| i as u8)
            .ok_or_else(|| Error::input(format!("letter '{a}' not in alphabet")))
    }
}

/// A combination expression over named languages, with the operation suite of
/// one variety: SET gets union/intersection/complement/∅/Σ*, POS the same
/// minus complement, JSL union/∅ only, and VECT scalar-weighted sums.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CombinationExpr {
    /// A named language bound in the environment.
    Atom(String),
    /// The marked product of two named languages.
    Marked(String, char, String),
    /// The zero series `∅`.
    Empty,
    /// The all-ones series `Σ*`.
    Full,
    Union(Vec<CombinationExpr>),
    Intersection(Vec<CombinationExpr>),
    Complement(Box<CombinationExpr>),
    /// A scalar combination `Σ λᵢ·eᵢ` over GF(p).
    Sum(Vec<(u8, CombinationExpr)>),
}

impl CombinationExpr {
    /// Whether every node of the expression belongs to the variety's
    /// operation suite.
    pub fn allowed_in(&self, variety: Variety) -> bool {
        let children_ok = |xs: &[CombinationExpr]| xs.iter().all(|x| x.allowed_in(variety));
        match self {
            CombinationExpr::Atom(_) | CombinationExpr::Marked(..) => true,
            CombinationExpr::Empty => !matches!(variety, Variety::Vect { .. }),
            CombinationExpr::Full => matches!(variety, Variety::Set | Variety::Pos),
            CombinationExpr::Union(xs) => {
                matches!(variety, Variety::Set | Variety::Pos | Variety::Jsl) && children_ok(xs)
            }
            CombinationExpr::Intersection(xs) => {
                matches!(variety, Variety::Set | Variety::Pos) && children_ok(xs)
            }
            CombinationExpr::Complement(x) => {
                matches!(variety, Variety::Set) && x.allowed_in(variety)
            }
            CombinationExpr::Sum(xs) => {
                matches!(variety, Variety::Vect { .. })
                    && xs.iter().all(|(_, x)| x.allowed_in(variety))
            }
        }
    }
}

impl fmt::Display for CombinationExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CombinationExpr::Atom(n) => f.write_str(n),
            CombinationExpr::Marked(k, a, l) => write!(f, "({k} {a} {l})"),
            CombinationExpr::Empty => f.write_str("∅"),
            CombinationExpr::Full => f.write_str("Σ*"),
            CombinationExpr::Union(xs) if xs.is_empty() => f.write_str("∅"),
            CombinationExpr::Union(xs) => join(f, xs, " ∪ "),
            CombinationExpr::Intersection(xs) if xs.is_empty() => f.write_str("Σ*"),
            CombinationExpr::Intersection(xs) => join(f, xs, " ∩ "),
            CombinationExpr::Complement(x) => match **x {
                CombinationExpr::Atom(_) | CombinationExpr::Empty | CombinationExpr::Full => {
                    write!(f, "¬{x}")
                }
                _ => write!(f, "¬({x})"),
            },
            CombinationExpr::Sum(xs) if xs.is_empty() => f.write_str("0"),
            CombinationExpr::Sum(xs) => {
                for (i, (l, x)) in xs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" + ")?;
                    }
                    match x {
                        CombinationExpr::Atom(_) | CombinationExpr::Marked(..) => {
                            write!(f, "{l}·{x}")?
                        }
                        _ => write!(f, "{l}·({x})")?,
                    }
                }
                Ok(())
            }
        }
    }
}

fn join(f: &mut fmt::Formatter<'_>, xs: &[CombinationExpr], sep: &str) -> fmt::Result {
    f.write_str("(")?;
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            f.write_str(sep)?;
        }
        write!(f, "{x}")?;
    }
    f.write_str(")")
}

/// Names in scope for evaluating a [`CombinationExpr`], together with the
/// ambient variety, alphabet, and bound (needed by the constants `∅`, `Σ*`).
#[derive(Debug, Clone)]
pub struct LanguageEnv {
    pub variety: Variety,
    pub alphabet: Vec<char>,
    pub bound: usize,
    pub bindings: Vec<(String, TruncLanguage)>,
}

impl LanguageEnv {
    pub fn lookup(&self, name: &str) -> Result<&TruncLanguage> {
        self.bindings
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, l)| l)
            .ok_or_else(|| Error::input(format!("unbound language atom '{name}'")))
    }
}

/// Evaluates a combination expression pointwise over `Σ^{≤L}`.
pub fn c_op_apply(expr: &CombinationExpr, env: &LanguageEnv) -> Result<TruncLanguage> {
    if !expr.allowed_in(env.variety) {
        return Err(Error::input(format!(
            "expression {expr} uses operations outside the {} suite",
            env.variety
        )));
    }
    eval(expr, env)
}

fn eval(expr: &CombinationExpr, env: &LanguageEnv) -> Result<TruncLanguage> {
    let s = env.variety.semiring();
    match expr {
        CombinationExpr::Atom(n) => Ok(env.lookup(n)?.clone()),
        CombinationExpr::Marked(k, a, l) => env.lookup(k)?.marked_product(*a, env.lookup(l)?),
        CombinationExpr::Empty => TruncLanguage::constant(s, &env.alphabet, env.bound, 0),
        CombinationExpr::Full => TruncLanguage::constant(s, &env.alphabet, env.bound, 1),
        CombinationExpr::Union(xs) => {
            let mut acc = TruncLanguage::constant(s, &env.alphabet, env.bound, 0)?;
            for x in xs {
                acc = acc.pointwise_add(&eval(x, env)?)?;
            }
            Ok(acc)
        }
        CombinationExpr::Intersection(xs) => {
            let mut acc = TruncLanguage::constant(s, &env.alphabet, env.bound, 1)?;
            for x in xs {
                acc = acc.pointwise_mul(&eval(x, env)?)?;
            }
            Ok(acc)
        }
        CombinationExpr::Complement(x) => eval(x, env)?.complement(),
        CombinationExpr::Sum(xs) => {
            let mut acc = TruncLanguage::constant(s, &env.alphabet, env.bound, 0)?;
            for (l, x) in xs {
                acc = acc.pointwise_add(&eval(x, env)?.scale(*l)?)?;
            }
            Ok(acc)
        }
    }
}

/// A decided membership question: the witness expression, a definite
/// rejection, or (POS only) a capped search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    In(CombinationExpr),
    NotIn,
    /// The POS fixpoint hit its cap before deciding.
    Inconclusive(String),
}

/// Decides whether `target` lies in the closure of the named atoms under the
/// variety's operations, returning a witness expression that re-evaluates to
/// `target` exactly. The procedures are:
///
/// * SET — minterm partition of the generated Boolean algebra;
/// * POS — fixpoint closure under union/intersection from the atoms, `∅`, `Σ*`;
/// * JSL — compare with the union of all atoms pointwise below the target;
/// * VECT — Gaussian elimination over GF(p) with lexicographically-first
///   pivots.
pub fn closure_membership(
    target: &TruncLanguage,
    atoms: &[(String, TruncLanguage)],
    variety: Variety,
    limits: &Limits,
) -> Result<Membership> {
    for (name, l) in atoms {
        target.same_shape(l).map_err(|_| {
            Error::input(format!("atom '{name}' does not match the target's shape"))
        })?;
    }
    // An exact atom match is always the preferred witness.
    if let Some((name, _)) = atoms.iter().find(|(_, l)| l.values == target.values) {
        return Ok(Membership::In(CombinationExpr::Atom(name.clone())));
    }
    match variety {
        Variety::Set => set_membership(target, atoms),
        Variety::Pos => pos_membership(target, atoms, limits),
        Variety::Jsl => jsl_membership(target, atoms),
        Variety::Vect { modulus } => vect_membership(target, atoms, modulus),
    }
}

/// SET: group words by their atom-value signature; `target` lies in the
/// generated Boolean algebra iff it is constant on each block, and is then
/// the union of the minterms of its one-blocks.
fn set_membership(target: &TruncLanguage, atoms: &[(String, TruncLanguage)]) -> Result<Membership> {
    let mut blocks: BTreeMap<Vec<u8>, u8> = BTreeMap::new();
    for w in 0..target.values.len() {
        let sig: Vec<u8> = atoms.iter().map(|(_, l)| l.values[w]).collect();
        let v = target.values[w];
        if *blocks.entry(sig).or_insert(v) != v {
            return Ok(Membership::NotIn);
        }
    }
    let mut terms = Vec::new();
    for (sig, v) in &blocks {
        if *v == 0 {
            continue;
        }
        let factors: Vec<CombinationExpr> = atoms
            .iter()
            .zip(sig)
            .map(|((name, _), &bit)| {
                let atom = CombinationExpr::Atom(name.clone());
                if bit == 1 {
                    atom
                } else {
                    CombinationExpr::Complement(Box::new(atom))
                }
            })
            .collect();
        terms.push(match factors.len() {
            0 => CombinationExpr::Full,
            1 => factors.into_iter().next().unwrap(),
            _ => CombinationExpr::Intersection(factors),
        });
    }
    Ok(Membership::In(match terms.len() {
        0 => CombinationExpr::Empty,
        1 => terms.into_iter().next().unwrap(),
        _ => CombinationExpr::Union(terms),
    }))
}

/// POS: by distributivity, everything in the `∪`/`∩`-closure of the atoms
/// (with `Σ*` the empty intersection and `∅` the empty union) is a union of
/// intersections of atoms. The family of distinct intersections is generated
/// incrementally (capped by `limits.pos_closure`); the target belongs iff it
/// equals the union of the family members lying below it, and a greedy cover
/// of its one-positions gives the witness.
fn pos_membership(
    target: &TruncLanguage,
    atoms: &[(String, TruncLanguage)],
    limits: &Limits,
) -> Result<Membership> {
    let s = target.semiring;
    let one = TruncLanguage::constant(s, &target.alphabet, target.bound, 1)?;
    let mut seen: BTreeMap<Vec<u8>, usize> = BTreeMap::new();
    let mut langs: Vec<TruncLanguage> = vec![one];
    let mut meets: Vec<Vec<usize>> = vec![Vec::new()];
    seen.insert(langs[0].values.clone(), 0);
    for (ai, (_, a)) in atoms.iter().enumerate() {
        let snapshot = langs.len();
        for i in 0..snapshot {
            let inter = langs[i].pointwise_mul(a)?;
            if !seen.contains_key(&inter.values) {
                if langs.len() >= limits.pos_closure {
                    return Ok(Membership::Inconclusive(format!(
                        "closure too large: more than {} distinct languages",
                        limits.pos_closure
                    )));
                }
                seen.insert(inter.values.clone(), langs.len());
                let mut m = meets[i].clone();
                m.push(ai);
                langs.push(inter);
                meets.push(m);
            }
        }
    }
    let below: Vec<usize> = (0..langs.len()).filter(|&i| langs[i].leq(target)).collect();
    let mut acc = TruncLanguage::constant(s, &target.alphabet, target.bound, 0)?;
    for &i in &below {
        acc = acc.pointwise_add(&langs[i])?;
    }
    if acc.values != target.values {
        return Ok(Membership::NotIn);
    }
    // Greedy cover of the target's one-positions, in family order.
    let mut used: Vec<usize> = Vec::new();
    for w in 0..target.values.len() {
        if target.values[w] == 1 && !used.iter().any(|&i| langs[i].values[w] == 1) {
            let i = below
                .iter()
                .copied()
                .find(|&i| langs[i].values[w] == 1)
                .expect("covered position must have a covering meet");
            used.push(i);
        }
    }
    let terms: Vec<CombinationExpr> = used
        .iter()
        .map(|&i| {
            let factors: Vec<CombinationExpr> = meets[i]
                .iter()
                .map(|&ai| CombinationExpr::Atom(atoms[ai].0.clone()))
                .collect();
            match factors.len() {
                0 => CombinationExpr::Full,
                1 => factors.into_iter().next().unwrap(),
                _ => CombinationExpr::Intersection(factors),
            }
        })
        .collect();
    Ok(Membership::In(match terms.len() {
        0 => CombinationExpr::Empty,
        1 => terms.into_iter().next().unwrap(),
        _ => CombinationExpr::Union(terms),
    }))
}

/// JSL: the target is a union of atoms iff it equals the union of all atoms
/// pointwise below it.
fn jsl_membership(target: &TruncLanguage, atoms: &[(String, TruncLanguage)]) -> Result<Membership> {
    let below: Vec<&(String, TruncLanguage)> =
        atoms.iter().filter(|(_, l)| l.leq(target)).collect();
    let mut acc = TruncLanguage::constant(target.semiring, &target.alphabet, target.bound, 0)?;
    for (_, l) in &below {
        acc = acc.pointwise_add(l)?;
    }
    if acc.values != target.values {
        return Ok(Membership::NotIn);
    }
    let names: Vec<CombinationExpr> = below
        .iter()
        .map(|(n, _)| CombinationExpr::Atom(n.clone()))
        .collect();
    Ok(Membership::In(match names.len() {
        0 => CombinationExpr::Empty,
        1 => names.into_iter().next().unwrap(),
        _ => CombinationExpr::Union(names),
    }))
}

/// VECT: solve `target = Σ λᵢ·atomᵢ` over GF(p); the solution (free
/// variables zero, lexicographically-first pivots) is the witness.
fn vect_membership(
    target: &TruncLanguage,
    atoms: &[(String, TruncLanguage)],
    modulus: u64,
) -> Result<Membership> {
    let rows: Vec<Vec<u8>> = (0..target.values.len())
        .map(|w| atoms.iter().map(|(_, l)| l.values[w]).collect())
        .collect();
    let mat = crate::linalg::GfMat::from_rows(modulus, &rows);
    match mat.solve(&target.values) {
        None => Ok(Membership::NotIn),
        Some(coeffs) => {
            let terms: Vec<(u8, CombinationExpr)> = coeffs
                .iter()
                .zip(atoms)
                .filter(|(&l, _)| l != 0)
                .map(|(&l, (name, _))| (l, CombinationExpr::Atom(name.clone())))
                .collect();
            Ok(Membership::In(CombinationExpr::Sum(terms)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    const AB: [char; 2] = ['a', 'b'];

    fn bool_lang(bound: usize, f: impl FnMut(&[u8]) -> u8) -> TruncLanguage {
        TruncLanguage::from_fn(Semiring::Bool, &AB, bound, f).unwrap()
    }

    fn random_lang(s: Semiring, bound: usize, rng: &mut impl Rng) -> TruncLanguage {
        TruncLanguage::from_fn(s, &AB, bound, |_| rng.gen_range(0..s.size() as u8)).unwrap()
    }

    #[test]
    fn word_order_is_length_then_lex() {
        let ws = words_up_to(2, 2);
        let expected: Vec<Vec<u8>> = vec![
            vec![],
            vec![0],
            vec![1],
            vec![0, 0],
            vec![0, 1],
            vec![1, 0],
            vec![1, 1],
        ];
        assert_eq!(ws, expected);
        let l = bool_lang(2, |_| 0);
        for (id, w) in ws.iter().enumerate() {
            assert_eq!(l.id_of_word(w), id);
        }
        assert_eq!(word_count(2, 8).unwrap(), 511);
        assert!(word_count(2, 40).is_err());
    }

    #[test]
    fn marked_product_of_epsilons_is_the_letter() {
        let e = TruncLanguage::char_word(Semiring::Bool, &AB, 4, &[]).unwrap();
        let kal = e.marked_product('a', &e).unwrap();
        let expected = TruncLanguage::char_word(Semiring::Bool, &AB, 4, &[0]).unwrap();
        assert_eq!(kal, expected);
    }

    #[test]
    fn full_marked_full_is_contains_a() {
        let full = TruncLanguage::constant(Semiring::Bool, &AB, 8, 1).unwrap();
        let kal = full.marked_product('a', &full).unwrap();
        let expected = bool_lang(8, |w| u8::from(w.contains(&0)));
        assert_eq!(kal, expected);
    }

    #[test]
    fn gf2_self_product_counts_positions_mod_2() {
        let ones = TruncLanguage::constant(Semiring::Gf(2), &['a'], 8, 1).unwrap();
        let kal = ones.marked_product('a', &ones).unwrap();
        for n in 0..=8usize {
            let w = vec![0u8; n];
            assert_eq!(kal.of(&w), (n % 2) as u8, "aⁿ for n={n}");
        }
    }

    #[test]
    fn derivative_examples() {
        let chr_a = TruncLanguage::char_word(Semiring::Bool, &AB, 3, &[0]).unwrap();
        let eps = TruncLanguage::char_word(Semiring::Bool, &AB, 2, &[]).unwrap();
        assert_eq!(chr_a.derivative('a', Side::Left).unwrap(), eps);
        assert_eq!(chr_a.derivative('a', Side::Right).unwrap(), eps);
        let contains_a = bool_lang(8, |w| u8::from(w.contains(&0)));
        let full = TruncLanguage::constant(Semiring::Bool, &AB, 7, 1).unwrap();
        assert_eq!(contains_a.derivative('a', Side::Left).unwrap(), full);
        let empty_bound = TruncLanguage::constant(Semiring::Bool, &AB, 0, 1).unwrap();
        assert!(empty_bound.derivative('a', Side::Left).is_err());
    }

    /// `a⁻¹(KaL) = (a⁻¹K)aL + K(ε)L` and `b⁻¹(KaL) = (b⁻¹K)aL` for `b ≠ a`,
    /// on the truncated domain (one bound lower), plus the right-handed
    /// mirror images.
    fn check_derivative_identities(s: Semiring, k: &TruncLanguage, l: &TruncLanguage) {
        let kal = k.marked_product('a', l).unwrap();
        let l_cut = l.truncate(l.bound - 1).unwrap();
        let k_cut = k.truncate(k.bound - 1).unwrap();

        let lhs = kal.derivative('a', Side::Left).unwrap();
        let rhs = k
            .derivative('a', Side::Left)
            .unwrap()
            .marked_product('a', &l_cut)
            .unwrap()
            .pointwise_add(&l_cut.scale(k.of(&[])).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs, "left marked-letter derivative over {s:?}");

        let lhs = kal.derivative('b', Side::Left).unwrap();
        let rhs = k
            .derivative('b', Side::Left)
            .unwrap()
            .marked_product('a', &l_cut)
            .unwrap();
        assert_eq!(lhs, rhs, "left other-letter derivative over {s:?}");

        let lhs = kal.derivative('a', Side::Right).unwrap();
        let rhs = k_cut
            .marked_product('a', &l.derivative('a', Side::Right).unwrap())
            .unwrap()
            .pointwise_add(&k_cut.scale(l.of(&[])).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs, "right marked-letter derivative over {s:?}");

        let lhs = kal.derivative('b', Side::Right).unwrap();
        let rhs = k_cut
            .marked_product('a', &l.derivative('b', Side::Right).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs, "right other-letter derivative over {s:?}");
    }

    #[test]
    fn derivative_identities_on_seeded_languages() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for s in [Semiring::Bool, Semiring::Gf(3)] {
            for _ in 0..20 {
                let k = random_lang(s, 5, &mut rng);
                let l = random_lang(s, 5, &mut rng);
                check_derivative_identities(s, &k, &l);
            }
        }
    }

    #[test]
    fn union_with_empty_is_identity() {
        let k = bool_lang(3, |w| u8::from(w.len() % 2 == 0));
        let env = LanguageEnv {
            variety: Variety::Set,
            alphabet: AB.to_vec(),
            bound: 3,
            bindings: vec![("K".into(), k.clone())],
        };
        let expr = CombinationExpr::Union(vec![
            CombinationExpr::Atom("K".into()),
            CombinationExpr::Empty,
        ]);
        assert_eq!(c_op_apply(&expr, &env).unwrap(), k);
    }

    #[test]
    fn complement_is_boolean_negation() {
        let k = bool_lang(3, |w| u8::from(w.first() == Some(&1)));
        let env = LanguageEnv {
            variety: Variety::Set,
            alphabet: AB.to_vec(),
            bound: 3,
            bindings: vec![("K".into(), k.clone())],
        };
        let expr = CombinationExpr::Complement(Box::new(CombinationExpr::Atom("K".into())));
        let out = c_op_apply(&expr, &env).unwrap();
        for (x, y) in out.values.iter().zip(&k.values) {
            assert_eq!(x + y, 1);
        }
    }

    #[test]
    fn gf2_double_sum_vanishes() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(10);
        let k = random_lang(Semiring::Gf(2), 4, &mut rng);
        let env = LanguageEnv {
            variety: Variety::vect_env(),
            alphabet: AB.to_vec(),
            bound: 4,
            bindings: vec![("K".into(), k)],
        };
        let expr = CombinationExpr::Sum(vec![
            (1, CombinationExpr::Atom("K".into())),
            (1, CombinationExpr::Atom("K".into())),
        ]);
        let out = c_op_apply(&expr, &env).unwrap();
        assert!(out.values.iter().all(|&v| v == 0));
    }

    #[test]
    fn operation_suites_are_enforced() {
        let env = LanguageEnv {
            variety: Variety::Pos,
            alphabet: AB.to_vec(),
            bound: 2,
            bindings: vec![(
                "K".into(),
                TruncLanguage::constant(Semiring::Bool, &AB, 2, 1).unwrap(),
            )],
        };
        let neg = CombinationExpr::Complement(Box::new(CombinationExpr::Atom("K".into())));
        assert!(matches!(c_op_apply(&neg, &env), Err(Error::Input(_))));
        let mut venv = env.clone();
        venv.variety = Variety::vect_env();
        assert!(matches!(
            c_op_apply(&CombinationExpr::Full, &venv),
            Err(Error::Input(_))
        ));
        assert!(matches!(
            c_op_apply(&CombinationExpr::Atom("L".into()), &env),
            Err(Error::Input(_))
        ));
    }

    fn atoms_env(variety: Variety, atoms: &[(String, TruncLanguage)], bound: usize) -> LanguageEnv {
        LanguageEnv {
            variety,
            alphabet: AB.to_vec(),
            bound,
            bindings: atoms.to_vec(),
        }
    }

    fn assert_witness(
        target: &TruncLanguage,
        atoms: &[(String, TruncLanguage)],
        variety: Variety,
    ) -> CombinationExpr {
        let m = closure_membership(target, atoms, variety, &Limits::default()).unwrap();
        let Membership::In(expr) = m else {
            panic!("expected membership, got {m:?}");
        };
        assert!(expr.allowed_in(variety), "witness {expr} outside the suite");
        let out = c_op_apply(&expr, &atoms_env(variety, atoms, target.bound)).unwrap();
        assert_eq!(
            out.values, target.values,
            "witness {expr} does not re-evaluate"
        );
        expr
    }

    #[test]
    fn atom_target_returns_that_atom() {
        let k = bool_lang(3, |w| u8::from(w.len() == 1));
        let atoms = vec![("K".to_string(), k.clone())];
        for variety in [Variety::Set, Variety::Pos, Variety::Jsl] {
            let expr = assert_witness(&k, &atoms, variety);
            assert_eq!(expr, CombinationExpr::Atom("K".into()));
        }
    }

    #[test]
    fn set_complement_target_yields_negation() {
        let k = bool_lang(3, |w| u8::from(w.starts_with(&[0])));
        let target = k.complement().unwrap();
        let atoms = vec![("K".to_string(), k)];
        let expr = assert_witness(&target, &atoms, Variety::Set);
        assert_eq!(
            expr,
            CombinationExpr::Complement(Box::new(CombinationExpr::Atom("K".into())))
        );
    }

    #[test]
    fn jsl_epsilon_is_not_a_union_of_letters() {
        let target = TruncLanguage::char_word(Semiring::Bool, &AB, 3, &[]).unwrap();
        let atoms = vec![
            (
                "A".to_string(),
                TruncLanguage::char_word(Semiring::Bool, &AB, 3, &[0]).unwrap(),
            ),
            (
                "B".to_string(),
                TruncLanguage::char_word(Semiring::Bool, &AB, 3, &[1]).unwrap(),
            ),
        ];
        let m = closure_membership(&target, &atoms, Variety::Jsl, &Limits::default()).unwrap();
        assert_eq!(m, Membership::NotIn);
    }

    #[test]
    fn vect_membership_solves_coefficients() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let s = Semiring::Gf(3);
        let k = random_lang(s, 3, &mut rng);
        let l = random_lang(s, 3, &mut rng);
        let target = k.scale(2).unwrap().pointwise_add(&l).unwrap();
        let atoms = vec![("K".to_string(), k), ("L".to_string(), l)];
        let expr = assert_witness(&target, &atoms, Variety::vect_env_3());
        assert!(matches!(expr, CombinationExpr::Sum(_)));
        // A target outside the span is rejected: adjoin a word value change
        // unreachable from the two atoms (span has ≤ 9 of 3^15 vectors).
        let mut outside = None;
        for tweak in 0..3u8 {
            let mut t = atoms[0].1.clone();
            t.values[0] = tweak;
            t.values[1] = s.add(t.values[1], 1);
            if closure_membership(&t, &atoms, Variety::vect_env_3(), &Limits::default()).unwrap()
                == Membership::NotIn
            {
                outside = Some(t);
                break;
            }
        }
        assert!(outside.is_some(), "span unexpectedly covers all tweaks");
    }

    #[test]
    fn pos_fixpoint_finds_lattice_elements_and_caps() {
        let k = bool_lang(3, |w| u8::from(w.starts_with(&[0])));
        let l = bool_lang(3, |w| u8::from(w.len() <= 1));
        let atoms = vec![("K".to_string(), k.clone()), ("L".to_string(), l.clone())];
        let target = k.pointwise_add(&l).unwrap();
        assert_witness(&target, &atoms, Variety::Pos);
        let target2 = k.pointwise_mul(&l).unwrap();
        assert_witness(&target2, &atoms, Variety::Pos);
        // The complement is not positive.
        let m = closure_membership(
            &k.complement().unwrap(),
            &atoms,
            Variety::Pos,
            &Limits::default(),
        )
        .unwrap();
        assert_eq!(m, Membership::NotIn);
        // A tiny cap reports inconclusive rather than looping.
        let tight = Limits {
            pos_closure: 3,
            ..Limits::default()
        };
        let m = closure_membership(&target, &atoms, Variety::Pos, &tight).unwrap();
        assert!(matches!(m, Membership::Inconclusive(_)));
    }

    /// Brute-force generation of expression values up to nesting depth 3,
    /// compared against the decision procedures.
    #[test]
    fn set_membership_agrees_with_depth_three_enumeration() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(12);
        let a0 = random_lang(Semiring::Bool, 3, &mut rng);
        let a1 = random_lang(Semiring::Bool, 3, &mut rng);
        let atoms = vec![("A".to_string(), a0.clone()), ("B".to_string(), a1.clone())];
        let mut pool: Vec<Vec<u8>> = vec![
            vec![0; a0.values.len()],
            vec![1; a0.values.len()],
            a0.values.clone(),
            a1.values.clone(),
        ];
        for _ in 0..3 {
            let snapshot = pool.clone();
            for x in &snapshot {
                let neg: Vec<u8> = x.iter().map(|&v| 1 - v).collect();
                if !pool.contains(&neg) {
                    pool.push(neg);
                }
                for y in &snapshot {
                    let or: Vec<u8> = x.iter().zip(y).map(|(&p, &q)| p | q).collect();
                    if !pool.contains(&or) {
                        pool.push(or);
                    }
                    let and: Vec<u8> = x.iter().zip(y).map(|(&p, &q)| p & q).collect();
                    if !pool.contains(&and) {
                        pool.push(and);
                    }
                }
            }
        }
        for values in &pool {
            let target = TruncLanguage::new(Semiring::Bool, &AB, 3, values.clone()).unwrap();
            assert_witness(&target, &atoms, Variety::Set);
        }
    }

    #[test]
    fn jsl_membership_agrees_with_exhaustive_unions() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
        let named: Vec<(String, TruncLanguage)> = (0..3)
            .map(|i| (format!("A{i}"), random_lang(Semiring::Bool, 2, &mut rng)))
            .collect();
        let n_words = named[0].1.values.len();
        let mut reachable: std::collections::BTreeSet<Vec<u8>> = std::collections::BTreeSet::new();
        for mask in 0..8usize {
            let mut acc = vec![0u8; n_words];
            for (i, (_, l)) in named.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    for (a, &v) in acc.iter_mut().zip(&l.values) {
                        *a |= v;
                    }
                }
            }
            reachable.insert(acc);
        }
        // Exhaustive over all Boolean targets on Σ^{≤2} (7 words).
        for code in 0..(1u32 << n_words) {
            let values: Vec<u8> = (0..n_words).map(|i| (code >> i & 1) as u8).collect();
            let target = TruncLanguage::new(Semiring::Bool, &AB, 2, values.clone()).unwrap();
            let m = closure_membership(&target, &named, Variety::Jsl, &Limits::default()).unwrap();
            match m {
                Membership::In(expr) => {
                    assert!(reachable.contains(&values), "false positive {expr}");
                    let out = c_op_apply(&expr, &atoms_env(Variety::Jsl, &named, 2)).unwrap();
                    assert_eq!(out.values, values);
                }
                Membership::NotIn => assert!(!reachable.contains(&values)),
                Membership::Inconclusive(_) => panic!("JSL procedure cannot be inconclusive"),
            }
        }
    }

    impl Variety {
        fn vect_env() -> Variety {
            Variety::Vect { modulus: 2 }
        }
        fn vect_env_3() -> Variety {
            Variety::Vect { modulus: 3 }
        }
    }

    proptest! {
        /// Marked product is right-linear over GF(3):
        /// `K a (L₁+L₂) = KaL₁ + KaL₂` pointwise.
        #[test]
        fn marked_product_right_linear(seed in 0u64..500) {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let s = Semiring::Gf(3);
            let k = random_lang(s, 4, &mut rng);
            let l1 = random_lang(s, 4, &mut rng);
            let l2 = random_lang(s, 4, &mut rng);
            let lhs = k.marked_product('a', &l1.pointwise_add(&l2).unwrap()).unwrap();
            let rhs = k
                .marked_product('a', &l1)
                .unwrap()
                .pointwise_add(&k.marked_product('a', &l2).unwrap())
                .unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        /// Boolean marked product distributes over union on the left.
        #[test]
        fn marked_product_left_union(seed in 0u64..500) {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let k1 = random_lang(Semiring::Bool, 4, &mut rng);
            let k2 = random_lang(Semiring::Bool, 4, &mut rng);
            let l = random_lang(Semiring::Bool, 4, &mut rng);
            let lhs = k1.pointwise_add(&k2).unwrap().marked_product('b', &l).unwrap();
            let rhs = k1
                .marked_product('b', &l)
                .unwrap()
                .pointwise_add(&k2.marked_product('b', &l).unwrap())
                .unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
