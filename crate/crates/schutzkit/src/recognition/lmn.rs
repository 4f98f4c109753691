//! The language family attached to a morphism `f : Σ* → M ⋄ N`: the
//! languages recognized through the two projections (one per valuation on
//! `M`, resp. `N`) and all their marked products. The closure theorem states
//! that every `M ⋄ N`-recognized language is a combination of exactly these.

use crate::dmonoid::Assignment;
use crate::error::{Error, Result};
use crate::languages::TruncLanguage;
use crate::limits::Limits;
use crate::products::SchutzProduct;
use crate::valuation::{enumerate_valuations, Valuation};

/// One projection language together with the valuation that produces it.
#[derive(Debug, Clone)]
pub struct LmnItem {
    pub name: String,
    pub valuation: Valuation,
    pub language: TruncLanguage,
}

/// The family `L_{M,N}(f)`: projection languages `K_i` (via `π_M`), `L_j`
/// (via `π_N`), and all marked products `K_i a L_j`.
#[derive(Debug, Clone)]
pub struct LmnSet {
    pub alphabet: Vec<char>,
    pub bound: usize,
    pub k_items: Vec<LmnItem>,
    pub l_items: Vec<LmnItem>,
    pub products: Vec<(String, TruncLanguage)>,
}

impl LmnSet {
    /// All members as named atoms, in K, L, product order.
    pub fn atoms(&self) -> Vec<(String, TruncLanguage)> {
        let mut out: Vec<(String, TruncLanguage)> = Vec::new();
        for it in &self.k_items {
            out.push((it.name.clone(), it.language.clone()));
        }
        for it in &self.l_items {
            out.push((it.name.clone(), it.language.clone()));
        }
        out.extend(self.products.iter().cloned());
        out
    }
}

/// Computes `L_{M,N}(f)` for an assignment into the product (images are
/// product element ids), on `Σ^{≤bound}`.
pub fn lmn_set(
    sp: &SchutzProduct,
    f: &Assignment,
    bound: usize,
    limits: &Limits,
) -> Result<LmnSet> {
    if let Some(&bad) = f.images.iter().find(|&&x| x >= sp.size()) {
        return Err(Error::input(format!(
            "letter image {bad} out of range for {}",
            sp.name
        )));
    }
    let s = sp.left.object.variety.semiring();
    let words = crate::languages::words_up_to(f.alphabet.len(), bound);
    // Projected word evaluations, computed once.
    let mut m_elems = Vec::with_capacity(words.len());
    let mut n_elems = Vec::with_capacity(words.len());
    for w in &words {
        let mut m = sp.left.unit;
        let mut n = sp.right.unit;
        for &b in w {
            let e = sp.elem_of(f.image(b));
            m = sp.left.mul(m, e.m);
            n = sp.right.mul(n, e.n);
        }
        m_elems.push(m);
        n_elems.push(n);
    }
    let item = |name: String, val: Valuation, elems: &[usize]| -> Result<LmnItem> {
        let values: Vec<u8> = elems.iter().map(|&e| val.of(e)).collect();
        let language = TruncLanguage::new(s, &f.alphabet, bound, values)?;
        Ok(LmnItem {
            name,
            valuation: val,
            language,
        })
    };
    let k_items: Vec<LmnItem> = enumerate_valuations(&sp.left.object, limits)?
        .into_iter()
        .enumerate()
        .map(|(i, p)| item(format!("K{i}"), p, &m_elems))
        .collect::<Result<_>>()?;
    let l_items: Vec<LmnItem> = enumerate_valuations(&sp.right.object, limits)?
        .into_iter()
        .enumerate()
        .map(|(j, q)| item(format!("L{j}"), q, &n_elems))
        .collect::<Result<_>>()?;
    let mut products = Vec::new();
    for &a in &f.alphabet {
        for ki in &k_items {
            for lj in &l_items {
                let name = format!("({} {a} {})", ki.name, lj.name);
                products.push((name, ki.language.marked_product(a, &lj.language)?));
            }
        }
    }
    Ok(LmnSet {
        alphabet: f.alphabet.clone(),
        bound,
        k_items,
        l_items,
        products,
    })
}

/// A projection language under left/right word contexts: reads
/// `p(l · f_M(u) · r)`. Derivatives only move the contexts, so they are
/// computed exactly, at full bound.
#[derive(Debug, Clone)]
struct ContextItem {
    name: String,
    val_idx: usize,
    lctx: usize,
    rctx: usize,
    language: TruncLanguage,
}

/// Extends `L_{M,N}(f)` with all one-letter derivatives, closed
/// transitively: the projection families are closed under symbolic
/// derivatives (context transforms in `M`, resp. `N`), and the product
/// family is rebuilt over the closed projection families — the derivative of
/// `KaL` is then itself a combination of the returned atoms.
pub fn derivative_closed_atoms(
    sp: &SchutzProduct,
    f: &Assignment,
    base: &LmnSet,
    _limits: &Limits,
) -> Result<Vec<(String, TruncLanguage)>> {
    let s = sp.left.object.variety.semiring();
    let words = crate::languages::words_up_to(f.alphabet.len(), base.bound);
    let close_side = |items: &[LmnItem], left: bool| -> Result<Vec<ContextItem>> {
        let (mon, letter_imgs): (&crate::dmonoid::DMonoid, Vec<usize>) = if left {
            (
                &sp.left,
                f.images.iter().map(|&x| sp.elem_of(x).m).collect(),
            )
        } else {
            (
                &sp.right,
                f.images.iter().map(|&x| sp.elem_of(x).n).collect(),
            )
        };
        let word_elems: Vec<usize> = words
            .iter()
            .map(|w| {
                w.iter()
                    .fold(mon.unit, |acc, &b| mon.mul(acc, letter_imgs[b as usize]))
            })
            .collect();
        let vals: Vec<&Valuation> = items.iter().map(|it| &it.valuation).collect();
        let language = |val_idx: usize, lctx: usize, rctx: usize| -> Result<TruncLanguage> {
            let values: Vec<u8> = word_elems
                .iter()
                .map(|&e| vals[val_idx].of(mon.mul(mon.mul(lctx, e), rctx)))
                .collect();
            TruncLanguage::new(s, &f.alphabet, base.bound, values)
        };
        let mut out: Vec<ContextItem> = Vec::new();
        let mut visited: Vec<(usize, usize, usize)> = Vec::new();
        let mut queue: Vec<ContextItem> = Vec::new();
        for (i, it) in items.iter().enumerate() {
            queue.push(ContextItem {
                name: it.name.clone(),
                val_idx: i,
                lctx: mon.unit,
                rctx: mon.unit,
                language: language(i, mon.unit, mon.unit)?,
            });
            visited.push((i, mon.unit, mon.unit));
        }
        let mut head = 0;
        while head < queue.len() {
            let cur = queue[head].clone();
            out.push(cur.clone());
            for (b, &img) in letter_imgs.iter().enumerate() {
                let c = f.alphabet[b];
                // Left derivative b⁻¹L prepends the letter to the word part.
                let lderiv = (cur.val_idx, mon.mul(cur.lctx, img), cur.rctx);
                if !visited.contains(&lderiv) {
                    visited.push(lderiv);
                    queue.push(ContextItem {
                        name: format!("{c}⁻¹{}", cur.name),
                        val_idx: lderiv.0,
                        lctx: lderiv.1,
                        rctx: lderiv.2,
                        language: language(lderiv.0, lderiv.1, lderiv.2)?,
                    });
                }
                // Right derivative Lb⁻¹ appends it.
                let rderiv = (cur.val_idx, cur.lctx, mon.mul(img, cur.rctx));
                if !visited.contains(&rderiv) {
                    visited.push(rderiv);
                    queue.push(ContextItem {
                        name: format!("{}{c}⁻¹", cur.name),
                        val_idx: rderiv.0,
                        lctx: rderiv.1,
                        rctx: rderiv.2,
                        language: language(rderiv.0, rderiv.1, rderiv.2)?,
                    });
                }
            }
            head += 1;
        }
        Ok(out)
    };
    let k_plus = close_side(&base.k_items, true)?;
    let l_plus = close_side(&base.l_items, false)?;
    let mut atoms: Vec<(String, TruncLanguage)> = Vec::new();
    for it in &k_plus {
        atoms.push((it.name.clone(), it.language.clone()));
    }
    for it in &l_plus {
        atoms.push((it.name.clone(), it.language.clone()));
    }
    for &a in &f.alphabet {
        for ki in &k_plus {
            for lj in &l_plus {
                let name = format!("({} {a} {})", ki.name, lj.name);
                atoms.push((name, ki.language.marked_product(a, &lj.language)?));
            }
        }
    }
    Ok(atoms)
}
