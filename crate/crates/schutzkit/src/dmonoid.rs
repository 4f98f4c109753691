//! D-monoids: monoids internal to a commutative variety, i.e. a carrier
//! object together with a unit and a multiplication that is a bimorphism
//! (monotone per argument for POS, join-distributive and bottom-annihilating
//! for JSL, bilinear for VECT).
//!
//! Alongside the basic structure this module provides letter assignments,
//! word evaluation, morphism checking, and the image of a free morphism
//! `Σ* → M`: the smallest sub-D-monoid containing the letter images, with a
//! provenance witness for every element. The closure runs over an [`Ambient`]
//! abstraction so that it works both on materialized monoids and on lazily
//! multiplied products whose full table is never built.

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::object::{FiniteObject, Structure, ValidationReport};
use crate::variety::Variety;
use std::collections::hash_map::Entry;
use std::collections::HashMap;

/// A monoid in one of the four varieties. `mult` is row-major `size × size`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DMonoid {
    pub object: FiniteObject,
    pub unit: usize,
    pub mult: Vec<usize>,
    pub name: String,
    pub element_names: Vec<String>,
}

impl DMonoid {
    pub fn new(
        object: FiniteObject,
        unit: usize,
        mult: Vec<usize>,
        name: impl Into<String>,
        element_names: Vec<String>,
    ) -> DMonoid {
        DMonoid {
            object,
            unit,
            mult,
            name: name.into(),
            element_names,
        }
    }

    pub fn size(&self) -> usize {
        self.object.size
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mult[x * self.object.size + y]
    }

    pub fn element_name(&self, x: usize) -> String {
        self.element_names
            .get(x)
            .cloned()
            .unwrap_or_else(|| x.to_string())
    }

    /// Full validation: carrier laws, unit laws, associativity, and the
    /// per-variety bimorphism conditions on the multiplication.
    pub fn validate(&self) -> ValidationReport {
        validate_dmonoid(self)
    }
}

/// Checks every D-monoid law exhaustively and reports all violations.
pub fn validate_dmonoid(m: &DMonoid) -> ValidationReport {
    let mut report = m.object.validate();
    let n = m.object.size;
    if m.unit >= n {
        report.push(format!("unit id {} out of range", m.unit));
        return report;
    }
    if m.mult.len() != n * n {
        report.push(format!(
            "mult table has {} entries, expected {}",
            m.mult.len(),
            n * n
        ));
        return report;
    }
    if let Some(&bad) = m.mult.iter().find(|&&e| e >= n) {
        report.push(format!("mult table entry {bad} out of range"));
        return report;
    }
    for x in 0..n {
        if m.mul(m.unit, x) != x {
            report.push(format!("unit law fails: 1·{x} = {}", m.mul(m.unit, x)));
        }
        if m.mul(x, m.unit) != x {
            report.push(format!("unit law fails: {x}·1 = {}", m.mul(x, m.unit)));
        }
    }
    'assoc: for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if m.mul(m.mul(x, y), z) != m.mul(x, m.mul(y, z)) {
                    report.push(format!("associativity fails at ({x},{y},{z})"));
                    break 'assoc;
                }
            }
        }
    }
    match &m.object.structure {
        Structure::Set => {}
        Structure::Pos { .. } => {
            'pos: for x in 0..n {
                for y in 0..n {
                    if !m.object.leq(x, y) {
                        continue;
                    }
                    for z in 0..n {
                        if !m.object.leq(m.mul(x, z), m.mul(y, z))
                            || !m.object.leq(m.mul(z, x), m.mul(z, y))
                        {
                            report
                                .push(format!("multiplication not monotone at {x} ≤ {y} with {z}"));
                            break 'pos;
                        }
                    }
                }
            }
        }
        Structure::Jsl { .. } => {
            let bot = m.object.bottom();
            for z in 0..n {
                if m.mul(bot, z) != bot || m.mul(z, bot) != bot {
                    report.push(format!("multiplication does not annihilate bottom at {z}"));
                    break;
                }
            }
            'dist: for x in 0..n {
                for y in 0..n {
                    let j = m.object.join(x, y);
                    for z in 0..n {
                        if m.mul(j, z) != m.object.join(m.mul(x, z), m.mul(y, z))
                            || m.mul(z, j) != m.object.join(m.mul(z, x), m.mul(z, y))
                        {
                            report.push(format!(
                                "multiplication does not distribute over join at ({x},{y},{z})"
                            ));
                            break 'dist;
                        }
                    }
                }
            }
        }
        Structure::Vect { .. } => {
            let p = m.object.modulus() as u8;
            'add: for x in 0..n {
                for y in 0..n {
                    let s = m.object.vadd(x, y);
                    for z in 0..n {
                        if m.mul(s, z) != m.object.vadd(m.mul(x, z), m.mul(y, z))
                            || m.mul(z, s) != m.object.vadd(m.mul(z, x), m.mul(z, y))
                        {
                            report.push(format!("multiplication not additive at ({x},{y},{z})"));
                            break 'add;
                        }
                    }
                }
            }
            'scale: for l in 0..p {
                for x in 0..n {
                    let lx = m.object.vscale(l, x);
                    for z in 0..n {
                        if m.mul(lx, z) != m.object.vscale(l, m.mul(x, z))
                            || m.mul(z, lx) != m.object.vscale(l, m.mul(z, x))
                        {
                            report.push(format!(
                                "multiplication not homogeneous at λ={l}, ({x},{z})"
                            ));
                            break 'scale;
                        }
                    }
                }
            }
        }
    }
    report
}

/// A letter assignment `Σ → M`, i.e. the data of a free morphism `Σ* → M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    pub alphabet: Vec<char>,
    pub images: Vec<usize>,
}

impl Assignment {
    pub fn new(alphabet: Vec<char>, images: Vec<usize>) -> Result<Assignment> {
        if alphabet.len() != images.len() {
            return Err(Error::input(format!(
                "assignment has {} letters but {} images",
                alphabet.len(),
                images.len()
            )));
        }
        for (i, c) in alphabet.iter().enumerate() {
            if alphabet[..i].contains(c) {
                return Err(Error::input(format!("duplicate letter '{c}' in alphabet")));
            }
        }
        Ok(Assignment { alphabet, images })
    }

    pub fn letter_index(&self, c: char) -> Option<u8> {
        self.alphabet.iter().position(|&a| a == c).map(|i| i as u8)
    }

    pub fn image(&self, letter: u8) -> usize {
        self.images[letter as usize]
    }

    /// Parses a word like `"abba"` into letter indices; `""` is the empty word.
    pub fn parse_word(&self, s: &str) -> Result<Vec<u8>> {
        s.chars()
            .map(|c| {
                self.letter_index(c)
                    .ok_or_else(|| Error::input(format!("letter '{c}' not in alphabet")))
            })
            .collect()
    }

    pub fn word_string(&self, w: &[u8]) -> String {
        if w.is_empty() {
            "ε".to_string()
        } else {
            w.iter().map(|&b| self.alphabet[b as usize]).collect()
        }
    }
}

/// Evaluates a word (as letter indices) through the monoid.
pub fn eval_word(m: &DMonoid, f: &Assignment, w: &[u8]) -> usize {
    w.iter().fold(m.unit, |acc, &b| m.mul(acc, f.image(b)))
}

/// A map between monoid carriers, indexed by domain element id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidMorphism {
    pub map: Vec<usize>,
}

impl MonoidMorphism {
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }
}

/// True iff `h` is a morphism of D-monoids: it preserves the unit, the
/// multiplication, and the carrier structure of the variety.
pub fn is_monoid_morphism(h: &MonoidMorphism, dom: &DMonoid, cod: &DMonoid) -> bool {
    let n = dom.object.size;
    if h.map.len() != n || h.map.iter().any(|&y| y >= cod.object.size) {
        return false;
    }
    if dom.object.variety != cod.object.variety {
        return false;
    }
    if h.apply(dom.unit) != cod.unit {
        return false;
    }
    for x in 0..n {
        for y in 0..n {
            if h.apply(dom.mul(x, y)) != cod.mul(h.apply(x), h.apply(y)) {
                return false;
            }
        }
    }
    match &dom.object.structure {
        Structure::Set => true,
        Structure::Pos { .. } => (0..n).all(|x| {
            (0..n).all(|y| !dom.object.leq(x, y) || cod.object.leq(h.apply(x), h.apply(y)))
        }),
        Structure::Jsl { .. } => {
            h.apply(dom.object.bottom()) == cod.object.bottom()
                && (0..n).all(|x| {
                    (0..n).all(|y| {
                        h.apply(dom.object.join(x, y)) == cod.object.join(h.apply(x), h.apply(y))
                    })
                })
        }
        Structure::Vect { .. } => {
            let p = dom.object.modulus() as u8;
            (0..n).all(|x| {
                (0..n).all(|y| {
                    h.apply(dom.object.vadd(x, y)) == cod.object.vadd(h.apply(x), h.apply(y))
                })
            }) && (0..p).all(|l| {
                (0..n).all(|x| h.apply(dom.object.vscale(l, x)) == cod.object.vscale(l, h.apply(x)))
            })
        }
    }
}

/// How an element of a free-morphism image arises: directly as the value of
/// a word, as a join of word values (JSL; empty join is bottom), or as a
/// linear combination of word values (VECT; empty combination is zero).
/// Referenced ids always carry `Word` provenance themselves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    Word(Vec<u8>),
    Join(Vec<usize>),
    Combo(Vec<(u8, usize)>),
}

impl Provenance {
    pub fn describe(&self, f: &Assignment) -> String {
        match self {
            Provenance::Word(w) => f.word_string(w),
            Provenance::Join(ids) if ids.is_empty() => "⊥".to_string(),
            Provenance::Join(ids) => {
                let parts: Vec<String> = ids.iter().map(|i| format!("#{i}")).collect();
                format!("∨({})", parts.join(","))
            }
            Provenance::Combo(terms) if terms.is_empty() => "0".to_string(),
            Provenance::Combo(terms) => {
                let parts: Vec<String> = terms.iter().map(|(l, i)| format!("{l}·#{i}")).collect();
                parts.join(" + ")
            }
        }
    }
}

/// The image of a free morphism `Σ* → ambient`, materialized as a D-monoid
/// of its own, together with the corestricted assignment, the inclusion
/// back into the ambient monoid, and per-element provenance.
#[derive(Debug, Clone)]
pub struct FreeImage {
    pub monoid: DMonoid,
    pub letters: Assignment,
    pub ambient_ids: Vec<usize>,
    pub provenance: Vec<Provenance>,
    pub index: HashMap<usize, usize>,
}

impl FreeImage {
    pub fn sub_id_of(&self, ambient: usize) -> Option<usize> {
        self.index.get(&ambient).copied()
    }

    /// The witness word of an element, when it has one.
    pub fn witness_word(&self, sub: usize) -> Option<&[u8]> {
        match &self.provenance[sub] {
            Provenance::Word(w) => Some(w),
            _ => None,
        }
    }
}

/// Multiplication, order, and linear structure of a monoid that may be too
/// large to tabulate. Ids are opaque; only reachable ones are ever touched.
pub(crate) trait Ambient {
    fn variety(&self) -> Variety;
    fn unit_id(&self) -> usize;
    fn mul_id(&self, x: usize, y: usize) -> usize;
    fn leq_id(&self, x: usize, y: usize) -> bool;
    fn join_id(&self, _x: usize, _y: usize) -> usize {
        unreachable!("join only defined for JSL ambients")
    }
    fn bottom_id(&self) -> usize {
        unreachable!("bottom only defined for JSL ambients")
    }
    fn coords_id(&self, _x: usize) -> Vec<u8> {
        unreachable!("coordinates only defined for VECT ambients")
    }
    fn scaled_sum_id(&self, _terms: &[(u8, usize)]) -> usize {
        unreachable!("linear combinations only defined for VECT ambients")
    }
}

impl Ambient for DMonoid {
    fn variety(&self) -> Variety {
        self.object.variety
    }
    fn unit_id(&self) -> usize {
        self.unit
    }
    fn mul_id(&self, x: usize, y: usize) -> usize {
        self.mul(x, y)
    }
    fn leq_id(&self, x: usize, y: usize) -> bool {
        self.object.leq(x, y)
    }
    fn join_id(&self, x: usize, y: usize) -> usize {
        self.object.join(x, y)
    }
    fn bottom_id(&self) -> usize {
        self.object.bottom()
    }
    fn coords_id(&self, x: usize) -> Vec<u8> {
        self.object.coords(x)
    }
    fn scaled_sum_id(&self, terms: &[(u8, usize)]) -> usize {
        let mut acc = 0;
        for &(l, x) in terms {
            acc = self.object.vadd(acc, self.object.vscale(l, x));
        }
        acc
    }
}

/// The image of the free morphism with letter images `f` inside `m`.
pub fn image_of_free_morphism(m: &DMonoid, f: &Assignment, limits: &Limits) -> Result<FreeImage> {
    if let Some(&bad) = f.images.iter().find(|&&x| x >= m.object.size) {
        return Err(Error::input(format!(
            "letter image {bad} out of range for {}",
            m.name
        )));
    }
    free_image_in(
        m,
        &f.alphabet,
        &f.images,
        &format!("im({})", m.name),
        limits,
    )
}

/// Generic closure: breadth-first word reachability (shortest,
/// lexicographically least witnesses), then the variety's algebraic closure
/// (joins for JSL, linear span for VECT), then materialization.
pub(crate) fn free_image_in<A: Ambient>(
    amb: &A,
    alphabet: &[char],
    images: &[usize],
    name: &str,
    limits: &Limits,
) -> Result<FreeImage> {
    let cap = limits.table_size;
    let variety = amb.variety();

    // Phase 1: words, breadth first with letters in ascending order.
    let mut ids: Vec<usize> = vec![amb.unit_id()];
    let mut prov: Vec<Provenance> = vec![Provenance::Word(Vec::new())];
    let mut index: HashMap<usize, usize> = HashMap::new();
    index.insert(amb.unit_id(), 0);
    let mut head = 0;
    while head < ids.len() {
        let x = ids[head];
        let wx = match &prov[head] {
            Provenance::Word(w) => w.clone(),
            _ => unreachable!("phase 1 elements carry word provenance"),
        };
        for (b, &img) in images.iter().enumerate() {
            let y = amb.mul_id(x, img);
            if let Entry::Vacant(slot) = index.entry(y) {
                if ids.len() >= cap {
                    return Err(Error::guard(format!(
                        "free-morphism image in {name} exceeds {cap} elements"
                    )));
                }
                slot.insert(ids.len());
                ids.push(y);
                let mut w = wx.clone();
                w.push(b as u8);
                prov.push(Provenance::Word(w));
            }
        }
        head += 1;
    }

    match variety {
        Variety::Set | Variety::Pos => materialize(amb, name, alphabet, images, ids, prov, index),
        Variety::Jsl => {
            // Phase 2: join closure, seeded with bottom.
            let bot = amb.bottom_id();
            if let Entry::Vacant(slot) = index.entry(bot) {
                slot.insert(ids.len());
                ids.push(bot);
                prov.push(Provenance::Join(Vec::new()));
            }
            let gen_set = |prov: &[Provenance], k: usize| -> Vec<usize> {
                match &prov[k] {
                    Provenance::Word(_) => vec![k],
                    Provenance::Join(s) => s.clone(),
                    Provenance::Combo(_) => unreachable!(),
                }
            };
            let mut i = 0;
            while i < ids.len() {
                for j in 0..=i {
                    let z = amb.join_id(ids[i], ids[j]);
                    if let Entry::Vacant(slot) = index.entry(z) {
                        if ids.len() >= cap {
                            return Err(Error::guard(format!(
                                "free-morphism image in {name} exceeds {cap} elements"
                            )));
                        }
                        let mut s = gen_set(&prov, i);
                        s.extend(gen_set(&prov, j));
                        s.sort_unstable();
                        s.dedup();
                        slot.insert(ids.len());
                        ids.push(z);
                        prov.push(Provenance::Join(s));
                    }
                }
                i += 1;
            }
            materialize(amb, name, alphabet, images, ids, prov, index)
        }
        Variety::Vect { modulus } => {
            // Phase 2: linear span of the word-reached elements, with a
            // greedy basis in discovery order and fresh coordinates.
            let p = modulus;
            let dim_amb = amb.coords_id(ids[0]).len();
            let mut span = crate::linalg::SpanBuilder::new(p, dim_amb);
            let mut basis: Vec<usize> = Vec::new();
            for &aid in &ids {
                if span.insert(&amb.coords_id(aid)) {
                    basis.push(aid);
                }
            }
            let d = basis.len();
            let sub_size = (p as u128)
                .checked_pow(d as u32)
                .filter(|&s| s <= cap as u128);
            let sub_size = match sub_size {
                Some(s) => s as usize,
                None => {
                    return Err(Error::guard(format!(
                    "free-morphism image in {name} spans GF({p})^{d}, beyond the {cap}-element cap"
                )))
                }
            };
            let mut sub_ids: Vec<usize> = Vec::with_capacity(sub_size);
            let mut sub_index: HashMap<usize, usize> = HashMap::new();
            for k in 0..sub_size {
                let mut rem = k;
                let mut terms: Vec<(u8, usize)> = Vec::new();
                for &b in &basis {
                    let c = (rem % p as usize) as u8;
                    rem /= p as usize;
                    if c != 0 {
                        terms.push((c, b));
                    }
                }
                let aid = amb.scaled_sum_id(&terms);
                sub_index.insert(aid, k);
                sub_ids.push(aid);
            }
            // Word provenance where available, otherwise a combination over
            // the basis (basis element i has sub id p^i).
            let mut sub_prov: Vec<Option<Provenance>> = vec![None; sub_size];
            for (k, pr) in prov.into_iter().enumerate() {
                let s = sub_index[&ids[k]];
                if sub_prov[s].is_none() {
                    sub_prov[s] = Some(pr);
                }
            }
            let sub_prov: Vec<Provenance> = sub_prov
                .into_iter()
                .enumerate()
                .map(|(k, pr)| {
                    pr.unwrap_or_else(|| {
                        let mut rem = k;
                        let mut terms = Vec::new();
                        for i in 0..d {
                            let c = (rem % p as usize) as u8;
                            rem /= p as usize;
                            if c != 0 {
                                terms.push((c, p.pow(i as u32) as usize));
                            }
                        }
                        Provenance::Combo(terms)
                    })
                })
                .collect();
            materialize(amb, name, alphabet, images, sub_ids, sub_prov, sub_index)
        }
    }
}

/// Builds the sub-D-monoid on an already-closed element list.
fn materialize<A: Ambient>(
    amb: &A,
    name: &str,
    alphabet: &[char],
    images: &[usize],
    ids: Vec<usize>,
    prov: Vec<Provenance>,
    index: HashMap<usize, usize>,
) -> Result<FreeImage> {
    let k = ids.len();
    let closed = |x: usize| -> Result<usize> {
        index.get(&x).copied().ok_or_else(|| {
            Error::input(format!(
                "internal error: image of {name} not closed at ambient id {x}"
            ))
        })
    };
    let mut mult = Vec::with_capacity(k * k);
    for i in 0..k {
        for j in 0..k {
            mult.push(closed(amb.mul_id(ids[i], ids[j]))?);
        }
    }
    let object = match amb.variety() {
        Variety::Set => FiniteObject::set(k),
        Variety::Pos => {
            let mut leq = vec![false; k * k];
            for i in 0..k {
                for j in 0..k {
                    leq[i * k + j] = amb.leq_id(ids[i], ids[j]);
                }
            }
            FiniteObject::pos_from_matrix(k, leq)
        }
        Variety::Jsl => {
            let mut join = vec![0usize; k * k];
            for i in 0..k {
                for j in 0..k {
                    join[i * k + j] = closed(amb.join_id(ids[i], ids[j]))?;
                }
            }
            FiniteObject::jsl(k, join)?
        }
        Variety::Vect { modulus } => {
            let d = (k as f64).log(modulus as f64).round() as usize;
            FiniteObject::vect(modulus, d)?
        }
    };
    let unit_sub = closed(amb.unit_id())?;
    let sub_images: Result<Vec<usize>> = images.iter().map(|&x| closed(x)).collect();
    let letters = Assignment::new(alphabet.to_vec(), sub_images?)?;
    let element_names: Vec<String> = prov.iter().map(|p| p.describe(&letters)).collect();
    let monoid = DMonoid::new(object, unit_sub, mult, name, element_names);
    Ok(FreeImage {
        monoid,
        letters,
        ambient_ids: ids,
        provenance: prov,
        index,
    })
}
