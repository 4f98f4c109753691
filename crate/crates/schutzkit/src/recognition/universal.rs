//! The universal property of the product: any surjection `e : Σ* → P` whose
//! target recognizes the projection and middle languages of `f` factors
//! uniquely through the canonical morphism into `M ⋄ N`.

use crate::dmonoid::{
    eval_word, image_of_free_morphism, Ambient, Assignment, DMonoid, MonoidMorphism, Provenance,
};
use crate::error::{Error, Result};
use crate::languages::{words_up_to, TruncLanguage};
use crate::limits::Limits;
use crate::products::SchutzProduct;
use crate::recognition::{lmn_set, recognizes, VerificationReport};
use crate::variety::Variety;
use std::time::Instant;

/// Result of [`universal_property_check`]: the factoring morphism
/// `h : P → M ⋄ N` (absent when the recognition precondition fails) and the
/// verification report.
#[derive(Debug, Clone)]
pub struct UniversalOutcome {
    pub morphism: Option<MonoidMorphism>,
    pub report: VerificationReport,
}

/// Checks the factorization property for `f : Σ* → M ⋄ N` against a
/// surjective comparison morphism `e : Σ* → P`.
///
/// Preconditions: `e` must be surjective onto `P` (a non-surjective `e` is an
/// input error), and `P` must recognize the left and right projection
/// languages of `f` together with its middle languages, one for each pair of
/// valuations on `M` and `N`. When the second precondition fails the report
/// records which language `P` misses and no morphism is produced. Otherwise
/// `h` is built
/// from the provenance of `P`'s elements (word images directly, then joins
/// and linear combinations of word images), and the report verifies that
/// `h ∘ e = f` on `Σ^{≤bound}` and that `h` is a morphism of the variety.
pub fn universal_property_check(
    sp: &SchutzProduct,
    f: &Assignment,
    e: &Assignment,
    p_mon: &DMonoid,
    bound: usize,
    limits: &Limits,
) -> Result<UniversalOutcome> {
    let t0 = Instant::now();
    if e.alphabet != f.alphabet {
        return Err(Error::input("e and f must share an alphabet".to_string()));
    }
    if let Some(&bad) = f.images.iter().find(|&&x| x >= sp.size()) {
        return Err(Error::input(format!(
            "letter image {bad} out of range for {}",
            sp.name
        )));
    }
    if p_mon.object.variety != sp.left.object.variety {
        return Err(Error::input(format!(
            "{} lives in {} but the product lives in {}",
            p_mon.name, p_mon.object.variety, sp.left.object.variety
        )));
    }
    let fi = image_of_free_morphism(p_mon, e, limits)?;
    if fi.monoid.size() != p_mon.size() {
        return Err(Error::input(format!(
            "e is not surjective onto {}: it reaches {} of {} elements",
            p_mon.name,
            fi.monoid.size(),
            p_mon.size()
        )));
    }

    let mut report = VerificationReport::new(
        "universal",
        format!("e: Σ* → {} against f: Σ* → {}", p_mon.name, sp.name),
        bound,
    );

    // Precondition: P recognizes every projection language of f and every
    // middle language of f. These are exactly the composites of f with the
    // separating family of the product, so they are what the diagonal fill-in
    // argument needs; the marked products of the family enter only through
    // the decompositions of the middle languages, where letters with zero
    // middle image contribute no terms at all.
    let family = lmn_set(sp, f, bound, limits)?;
    let s = sp.left.object.variety.semiring();
    let mut targets: Vec<(String, TruncLanguage)> = Vec::new();
    for it in family.k_items.iter().chain(&family.l_items) {
        targets.push((it.name.clone(), it.language.clone()));
    }
    for i in 0..family.k_items.len() {
        for j in 0..family.l_items.len() {
            let vmid = sp.middle_valuation(i, j);
            let lang = TruncLanguage::from_fn(s, &f.alphabet, bound, |w| vmid.of(sp.eval(f, w).a))?;
            targets.push((format!("the middle language of p{i}∗q{j}"), lang));
        }
    }
    for (name, lang) in targets {
        report.checks += 1;
        match recognizes(p_mon, e, &lang, limits)? {
            Some(v) => {
                report.witnesses.push(format!(
                    "{name} recognized by {} with v={}",
                    p_mon.name,
                    v.digits()
                ));
            }
            None => {
                report.fail(format!("{} does not recognize {name}", p_mon.name));
                report.elapsed_ms = t0.elapsed().as_millis();
                return Ok(UniversalOutcome {
                    morphism: None,
                    report,
                });
            }
        }
    }

    // Build h on word images first, then on join/combination elements.
    let mut h = vec![usize::MAX; p_mon.size()];
    for sub in 0..p_mon.size() {
        if let Provenance::Word(w) = &fi.provenance[sub] {
            h[fi.ambient_ids[sub]] = sp.id_of(&sp.eval(f, w));
        }
    }
    for sub in 0..p_mon.size() {
        match &fi.provenance[sub] {
            Provenance::Word(_) => {}
            Provenance::Join(ids) => {
                let mut acc = sp.bottom_id();
                for &i in ids {
                    acc = sp.join_id(acc, h[fi.ambient_ids[i]]);
                }
                h[fi.ambient_ids[sub]] = acc;
            }
            Provenance::Combo(terms) => {
                let mapped: Vec<(u8, usize)> = terms
                    .iter()
                    .map(|&(l, i)| (l, h[fi.ambient_ids[i]]))
                    .collect();
                h[fi.ambient_ids[sub]] = sp.scaled_sum_id(&mapped);
            }
        }
    }

    // h ∘ e = f on every word up to the bound.
    for w in words_up_to(f.alphabet.len(), bound) {
        report.checks += 1;
        if h[eval_word(p_mon, e, &w)] != sp.id_of(&sp.eval(f, &w)) {
            report.fail(format!("h(e(w)) ≠ f(w) at '{}'", f.word_string(&w)));
        }
    }
    check_morphism_into_product(sp, p_mon, &h, &mut report);
    if report.passed() {
        report.witnesses.push(
            "uniqueness: h is forced on word images by h(e(w)) = f(w), and those generate P"
                .to_string(),
        );
    }
    report.elapsed_ms = t0.elapsed().as_millis();
    Ok(UniversalOutcome {
        morphism: Some(MonoidMorphism { map: h }),
        report,
    })
}

/// Verifies that `h : P → M ⋄ N` (as a map of ids) is a morphism of
/// D-monoids: unit and multiplication always, plus the variety's structure —
/// monotone for POS, bottom and joins for JSL, linear for VECT. The product
/// side uses id-level operations, so the codomain is never tabulated.
fn check_morphism_into_product(
    sp: &SchutzProduct,
    p_mon: &DMonoid,
    h: &[usize],
    report: &mut VerificationReport,
) {
    report.checks += 1;
    if h[p_mon.unit] != sp.id_of(&sp.unit()) {
        report.fail("h does not preserve the unit".to_string());
    }
    let n = p_mon.size();
    for x in 0..n {
        for y in 0..n {
            report.checks += 1;
            if h[p_mon.mul(x, y)] != sp.mul_id(h[x], h[y]) {
                report.fail(format!(
                    "h is not multiplicative at ({}, {})",
                    p_mon.element_name(x),
                    p_mon.element_name(y)
                ));
            }
        }
    }
    match p_mon.object.variety {
        Variety::Set => {}
        Variety::Pos => {
            for x in 0..n {
                for y in 0..n {
                    report.checks += 1;
                    if p_mon.object.leq(x, y) && !sp.leq_id(h[x], h[y]) {
                        report.fail(format!(
                            "h is not monotone at ({}, {})",
                            p_mon.element_name(x),
                            p_mon.element_name(y)
                        ));
                    }
                }
            }
        }
        Variety::Jsl => {
            report.checks += 1;
            if h[p_mon.object.bottom()] != sp.bottom_id() {
                report.fail("h does not preserve bottom".to_string());
            }
            for x in 0..n {
                for y in 0..n {
                    report.checks += 1;
                    if h[p_mon.object.join(x, y)] != sp.join_id(h[x], h[y]) {
                        report.fail(format!(
                            "h does not preserve the join of ({}, {})",
                            p_mon.element_name(x),
                            p_mon.element_name(y)
                        ));
                    }
                }
            }
        }
        Variety::Vect { modulus } => {
            for x in 0..n {
                for y in 0..n {
                    report.checks += 1;
                    if h[p_mon.object.vadd(x, y)] != sp.scaled_sum_id(&[(1, h[x]), (1, h[y])]) {
                        report.fail(format!("h is not additive at ({x}, {y})"));
                    }
                }
                for l in 0..modulus as u8 {
                    report.checks += 1;
                    if h[p_mon.object.vscale(l, x)] != sp.scaled_sum_id(&[(l, h[x])]) {
                        report.fail(format!("h is not homogeneous at ({l}, {x})"));
                    }
                }
            }
        }
    }
}
