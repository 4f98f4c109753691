//! Machine checks for the recognition theorem (three witnesses for `K`, `L`,
//! `KaL`), the middle-component sum formula, and the decomposition of
//! middle-recognized languages into marked products.

use crate::dmonoid::{eval_word, Assignment, DMonoid};
use crate::error::{Error, Result};
use crate::languages::{c_op_apply, CombinationExpr, LanguageEnv, TruncLanguage};
use crate::limits::Limits;
use crate::linalg::GfMat;
use crate::products::{schutzenberger, LiftKind, SchutzElem, SchutzProduct};
use crate::recognition::{RecognitionWitness, VerificationReport};
use crate::valuation::{is_valuation, Valuation};
use crate::variety::{Semiring, Variety};
use std::time::Instant;

/// Result of [`schurec_witness`]: the product, the marked-letter assignment
/// into it, and one recognition certificate each for `K`, `L`, and `KaL`.
#[derive(Debug, Clone)]
pub struct SchurecOutcome {
    pub product: SchutzProduct,
    pub assignment: Assignment,
    pub witnesses: Vec<RecognitionWitness>,
    pub report: VerificationReport,
}

/// Builds the marked-letter morphism `Σ* → M ⋄ N` for languages `K`
/// (recognized by `g, p`) and `L` (by `h, q`) and the mark `a`:
/// the mark goes to `(g(a), 1, h(a))`, every other letter to
/// `(g(b), 0, h(b))`. Verifies exactly on `Σ^{≤bound}` that the two
/// projections recognize `K` and `L` and that the lifted valuation
/// `(p ∗ q)` on the middle recognizes the marked product `KaL`.
#[allow(clippy::too_many_arguments)] // one argument per piece of the instance
pub fn schurec_witness(
    m: &DMonoid,
    n: &DMonoid,
    g: &Assignment,
    h: &Assignment,
    p: &Valuation,
    q: &Valuation,
    mark: char,
    bound: usize,
    limits: &Limits,
) -> Result<SchurecOutcome> {
    let t0 = Instant::now();
    if g.alphabet != h.alphabet {
        return Err(Error::input(
            "the two assignments must share an alphabet".to_string(),
        ));
    }
    let mark_idx = g
        .letter_index(mark)
        .ok_or_else(|| Error::input(format!("mark '{mark}' not in alphabet")))?;
    if !is_valuation(&m.object, &p.values) {
        return Err(Error::input(format!("p is not a valuation on {}", m.name)));
    }
    if !is_valuation(&n.object, &q.values) {
        return Err(Error::input(format!("q is not a valuation on {}", n.name)));
    }
    let sp = schutzenberger(m, n, limits)?;
    let (p_idx, q_idx) = locate_valuations(&sp, p, q)?;

    let images: Vec<usize> = (0..g.alphabet.len() as u8)
        .map(|b| {
            let a = if b == mark_idx {
                sp.middle.one
            } else {
                sp.middle.zero
            };
            sp.id_of(&SchutzElem {
                m: g.image(b),
                a,
                n: h.image(b),
            })
        })
        .collect();
    let f = Assignment::new(g.alphabet.clone(), images)?;

    let s = m.object.variety.semiring();
    let k_lang = TruncLanguage::from_fn(s, &g.alphabet, bound, |w| p.of(eval_word(m, g, w)))?;
    let l_lang = TruncLanguage::from_fn(s, &g.alphabet, bound, |w| q.of(eval_word(n, h, w)))?;
    let kal_oracle = k_lang.marked_product(mark, &l_lang)?;
    let vmid = sp.middle_valuation(p_idx, q_idx);

    let words = k_lang.words();
    let elems: Vec<SchutzElem> = words.iter().map(|w| sp.eval(&f, w)).collect();
    let mut report = VerificationReport::new(
        "schurec",
        format!(
            "{}, mark {mark}, p={}, q={}",
            sp.name,
            p.digits(),
            q.digits()
        ),
        bound,
    );
    for (w, e) in words.iter().zip(&elems) {
        report.checks += 3;
        if p.of(e.m) != k_lang.of(w) {
            report.fail(format!("π_M fails K at '{}'", f.word_string(w)));
        }
        if q.of(e.n) != l_lang.of(w) {
            report.fail(format!("π_N fails L at '{}'", f.word_string(w)));
        }
        if vmid.of(e.a) != kal_oracle.of(w) {
            report.fail(format!("middle fails KaL at '{}'", f.word_string(w)));
        }
    }
    report.witnesses = vec![
        format!("K via π_M with p={}", p.digits()),
        format!("L via π_N with q={}", q.digits()),
        format!("{mark}-marked product via the lifted (p∗q) on the middle"),
    ];
    let witnesses = vec![
        RecognitionWitness {
            role: "K".to_string(),
            monoid: m.name.clone(),
            assignment: f.clone(),
            valuation: p.clone(),
            language: k_lang,
        },
        RecognitionWitness {
            role: "L".to_string(),
            monoid: n.name.clone(),
            assignment: f.clone(),
            valuation: q.clone(),
            language: l_lang,
        },
        RecognitionWitness {
            role: "KaL".to_string(),
            monoid: format!("{} (middle)", sp.name),
            assignment: f.clone(),
            valuation: vmid,
            language: kal_oracle,
        },
    ];
    report.elapsed_ms = t0.elapsed().as_millis();
    Ok(SchurecOutcome {
        product: sp,
        assignment: f,
        witnesses,
        report,
    })
}

/// Finds the indices of `p` and `q` in the product's enumerated valuation
/// families (the families are exhaustive, so membership only fails for maps
/// that are not valuations of the right carrier).
fn locate_valuations(sp: &SchutzProduct, p: &Valuation, q: &Valuation) -> Result<(usize, usize)> {
    let star = &sp.middle.star;
    let p_idx = star
        .left_valuations
        .iter()
        .position(|v| v.values == p.values)
        .ok_or_else(|| Error::input("p is not in the left separating family".to_string()))?;
    let q_idx = star
        .right_valuations
        .iter()
        .position(|v| v.values == q.values)
        .ok_or_else(|| Error::input("q is not in the right separating family".to_string()))?;
    Ok((p_idx, q_idx))
}

/// Checks the sum formula for the middle component of an arbitrary morphism
/// `f : Σ* → M ⋄ N`: for every `|u| ≤ bound`,
/// `f_MN(u) = Σ_{u=v·b·w} η(f_M(v)∗1) ⊙ f_MN(b) ⊙ η(1∗f_N(w))`
/// in the middle algebra (the empty word gives the empty sum, i.e. zero).
pub fn reutenauer_check(
    sp: &SchutzProduct,
    f: &Assignment,
    bound: usize,
    limits: &Limits,
) -> Result<VerificationReport> {
    let t0 = Instant::now();
    if let Some(&bad) = f.images.iter().find(|&&x| x >= sp.size()) {
        return Err(Error::input(format!(
            "letter image {bad} out of range for {}",
            sp.name
        )));
    }
    let _ = limits;
    let letter: Vec<SchutzElem> = f.images.iter().map(|&x| sp.elem_of(x)).collect();
    let mut report = VerificationReport::new(
        "reutenauer",
        format!("{} with f: {}", sp.name, describe_images(sp, f)),
        bound,
    );
    for u in crate::languages::words_up_to(f.alphabet.len(), bound) {
        let len = u.len();
        // Prefix images in M and suffix images in N.
        let mut pm = vec![sp.left.unit; len + 1];
        for i in 0..len {
            pm[i + 1] = sp.left.mul(pm[i], letter[u[i] as usize].m);
        }
        let mut sn = vec![sp.right.unit; len + 1];
        for i in (0..len).rev() {
            sn[i] = sp.right.mul(letter[u[i] as usize].n, sn[i + 1]);
        }
        let mut rhs = sp.middle.zero;
        for i in 0..len {
            let term = sp.middle.mul(
                sp.middle.mul(sp.f_mid[pm[i]], letter[u[i] as usize].a),
                sp.g_mid[sn[i + 1]],
            );
            rhs = sp.middle.add(rhs, term);
        }
        let lhs = sp.eval(f, &u).a;
        report.checks += 1;
        if lhs != rhs {
            report.fail(format!(
                "middle of '{}' is {} but the sum formula gives {}",
                f.word_string(&u),
                sp.middle.describe(lhs),
                sp.middle.describe(rhs)
            ));
        }
    }
    report.elapsed_ms = t0.elapsed().as_millis();
    Ok(report)
}

fn describe_images(sp: &SchutzProduct, f: &Assignment) -> String {
    f.alphabet
        .iter()
        .zip(&f.images)
        .map(|(c, &x)| {
            let e = sp.elem_of(x);
            format!("{c}↦({},{},{})", e.m, e.a, e.n)
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Result of [`decompose_middle`]: the marked-product combination, the
/// environment binding its atoms, the decomposed target language, and the
/// equality report.
#[derive(Debug, Clone)]
pub struct DecomposeOutcome {
    pub expression: CombinationExpr,
    pub env: LanguageEnv,
    pub target: TruncLanguage,
    pub report: VerificationReport,
}

/// Decomposes each letter's middle image over the generator family
/// `{η(m∗n)}` and emits the combination
/// `Σ_b Σ_j λ_j^b · (K^{b,j} b L^{b,j})` with
/// `K^{b,j}(v) = p(f_M(v)·m_j)` and `L^{b,j}(w) = q(n_j·f_N(w))`,
/// then verifies it equals the middle-recognized language of `(p, q)`.
pub fn decompose_middle(
    sp: &SchutzProduct,
    f: &Assignment,
    p: &Valuation,
    q: &Valuation,
    bound: usize,
    limits: &Limits,
) -> Result<DecomposeOutcome> {
    let t0 = Instant::now();
    if let Some(&bad) = f.images.iter().find(|&&x| x >= sp.size()) {
        return Err(Error::input(format!(
            "letter image {bad} out of range for {}",
            sp.name
        )));
    }
    let _ = limits;
    let (p_idx, q_idx) = locate_valuations(sp, p, q)?;
    let variety = sp.left.object.variety;
    let s = variety.semiring();
    let words = crate::languages::words_up_to(f.alphabet.len(), bound);
    let m_elems: Vec<usize> = words
        .iter()
        .map(|w| {
            w.iter().fold(sp.left.unit, |acc, &b| {
                sp.left.mul(acc, sp.elem_of(f.image(b)).m)
            })
        })
        .collect();
    let n_elems: Vec<usize> = words
        .iter()
        .map(|w| {
            w.iter().fold(sp.right.unit, |acc, &b| {
                sp.right.mul(acc, sp.elem_of(f.image(b)).n)
            })
        })
        .collect();

    let mut bindings: Vec<(String, TruncLanguage)> = Vec::new();
    let mut bool_terms: Vec<CombinationExpr> = Vec::new();
    let mut vect_terms: Vec<(u8, CombinationExpr)> = Vec::new();
    for (b, &c) in f.alphabet.iter().enumerate() {
        let z = sp.elem_of(f.image(b as u8)).a;
        for (j, (lambda, mj, nj)) in middle_generators(sp, z)?.into_iter().enumerate() {
            let km_name = format!("K_{c}{j}");
            let ln_name = format!("L_{c}{j}");
            let km = TruncLanguage::new(
                s,
                &f.alphabet,
                bound,
                m_elems.iter().map(|&e| p.of(sp.left.mul(e, mj))).collect(),
            )?;
            let ln = TruncLanguage::new(
                s,
                &f.alphabet,
                bound,
                n_elems.iter().map(|&e| q.of(sp.right.mul(nj, e))).collect(),
            )?;
            bindings.push((km_name.clone(), km));
            bindings.push((ln_name.clone(), ln));
            let marked = CombinationExpr::Marked(km_name, c, ln_name);
            if s == Semiring::Bool {
                bool_terms.push(marked);
            } else {
                vect_terms.push((lambda, marked));
            }
        }
    }
    let expression = if s == Semiring::Bool {
        match bool_terms.len() {
            1 => bool_terms.into_iter().next().unwrap(),
            _ => CombinationExpr::Union(bool_terms),
        }
    } else {
        CombinationExpr::Sum(vect_terms)
    };

    let vmid = sp.middle_valuation(p_idx, q_idx);
    let target = TruncLanguage::new(
        s,
        &f.alphabet,
        bound,
        words.iter().map(|w| vmid.of(sp.eval(f, w).a)).collect(),
    )?;
    let env = LanguageEnv {
        variety,
        alphabet: f.alphabet.clone(),
        bound,
        bindings,
    };
    let mut report = VerificationReport::new(
        "decompose",
        format!("{} with p={}, q={}", sp.name, p.digits(), q.digits()),
        bound,
    );
    let evaluated = c_op_apply(&expression, &env)?;
    report.checks = words.len();
    for (id, w) in words.iter().enumerate() {
        if evaluated.values[id] != target.values[id] {
            report.fail(format!(
                "expression gives {} at '{}' but the middle language gives {}",
                evaluated.values[id],
                f.word_string(w),
                target.values[id]
            ));
            break;
        }
    }
    report.witnesses.push(format!("{expression}"));
    report.elapsed_ms = t0.elapsed().as_millis();
    Ok(DecomposeOutcome {
        expression,
        env,
        target,
        report,
    })
}

/// Writes a middle element as a coefficient combination of the generators
/// `η(m∗n)`; the pairs come back in a deterministic order.
fn middle_generators(sp: &SchutzProduct, z: usize) -> Result<Vec<(u8, usize, usize)>> {
    let star = &sp.middle.star;
    let rn = star.right_size;
    let from_mask = |mask: u64| -> Vec<(u8, usize, usize)> {
        (0..star.size())
            .filter(|&e| mask >> e & 1 == 1)
            .map(|e| (1u8, e / rn, e % rn))
            .collect()
    };
    match &sp.middle.kind {
        LiftKind::Subsets => Ok(from_mask(z as u64)),
        LiftKind::DownSets { masks, .. } => Ok(from_mask(masks[z] as u64)),
        LiftKind::Identity => match sp.left.object.variety {
            Variety::Jsl => Ok(star
                .witness_set(z)
                .into_iter()
                .map(|(m, n)| (1u8, m, n))
                .collect()),
            Variety::Vect { modulus } => {
                let obj = &star.monoid.object;
                let dim = obj.dim();
                let pairs = sp.left.size() * sp.right.size();
                let mut rows = vec![vec![0u8; pairs]; dim];
                for m in 0..sp.left.size() {
                    for n in 0..sp.right.size() {
                        let coords = obj.coords(star.gen_of(m, n));
                        for (r, &v) in coords.iter().enumerate() {
                            rows[r][m * sp.right.size() + n] = v;
                        }
                    }
                }
                let mat = GfMat::from_rows(modulus, &rows);
                let sol = mat.solve(&obj.coords(z)).ok_or_else(|| {
                    Error::input(
                        "internal error: middle element outside the generator span".to_string(),
                    )
                })?;
                Ok(sol
                    .iter()
                    .enumerate()
                    .filter(|(_, &l)| l != 0)
                    .map(|(c, &l)| (l, c / sp.right.size(), c % sp.right.size()))
                    .collect())
            }
            _ => unreachable!("identity lifts only exist for JSL and VECT"),
        },
    }
}
