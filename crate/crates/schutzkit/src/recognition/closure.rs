//! The closure theorem: every language recognized by a valuation on
//! `M ⋄ N` is a variety-algebraic combination of the product family's atoms.

use crate::dmonoid::Assignment;
use crate::error::{Error, Result};
use crate::languages::{
    c_op_apply, closure_membership, words_up_to, LanguageEnv, Membership, TruncLanguage,
};
use crate::limits::Limits;
use crate::products::SchutzProduct;
use crate::recognition::{derivative_closed_atoms, lmn_set, VerificationReport};
use crate::valuation::{enumerate_valuations, random_valuation, Valuation};
use crate::variety::Variety;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;
use std::time::Instant;

/// Checks that each language recognized by a valuation on the product lies in
/// the closure of the `K`/`L`/marked-product atoms under the variety's
/// operations, attaching one witness expression per valuation.
///
/// In mode `with_derivatives` the atom family is first closed under symbolic
/// one-letter derivatives (exact context transforms, no bound decay). When
/// the carrier admits more than `limits.sample_threshold` valuations they are
/// sampled deterministically from `seed`, and the report says so.
pub fn closure_check(
    sp: &SchutzProduct,
    f: &Assignment,
    with_derivatives: bool,
    bound: usize,
    limits: &Limits,
    seed: u64,
) -> Result<VerificationReport> {
    let t0 = Instant::now();
    if let Some(&bad) = f.images.iter().find(|&&x| x >= sp.size()) {
        return Err(Error::input(format!(
            "letter image {bad} out of range for {}",
            sp.name
        )));
    }
    let base = lmn_set(sp, f, bound, limits)?;
    let raw_atoms = if with_derivatives {
        derivative_closed_atoms(sp, f, &base, limits)?
    } else {
        base.atoms()
    };
    // Distinct languages only; the first name wins.
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    let atoms: Vec<(String, TruncLanguage)> = raw_atoms
        .into_iter()
        .filter(|(_, l)| seen.insert(l.values.clone()))
        .collect();

    let carrier = sp.carrier_object(limits)?;
    let variety = carrier.variety;
    let mode = if with_derivatives {
        "with-derivatives"
    } else {
        "without-derivatives"
    };
    let mut report = VerificationReport::new(
        "closure",
        format!("{}, f: {}, mode {mode}", sp.name, image_list(f)),
        bound,
    );

    // Either every valuation on the carrier, or a deterministic sample.
    let predicted: Option<u128> = match variety {
        Variety::Set => {
            if carrier.size < 128 {
                Some(1u128 << carrier.size)
            } else {
                None
            }
        }
        Variety::Pos => None,
        Variety::Jsl => Some(carrier.size as u128),
        Variety::Vect { modulus } => (modulus as u128).checked_pow(carrier.dim() as u32),
    };
    let enumerated = match variety {
        Variety::Pos => match enumerate_valuations(&carrier, limits) {
            Ok(v) if v.len() as u128 <= limits.sample_threshold => Some(v),
            Ok(_) => None,
            Err(Error::Guard(_)) => None,
            Err(e) => return Err(e),
        },
        _ => match predicted {
            Some(c) if c <= limits.sample_threshold => {
                Some(enumerate_valuations(&carrier, limits)?)
            }
            _ => None,
        },
    };
    let valuations = match enumerated {
        Some(v) => v,
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut drawn: Vec<Valuation> = Vec::new();
            let mut distinct: HashSet<Vec<u8>> = HashSet::new();
            for _ in 0..limits.sample_size {
                let v = random_valuation(&carrier, &mut rng);
                if distinct.insert(v.values.clone()) {
                    drawn.push(v);
                }
            }
            let total = predicted.map_or("many".to_string(), |c| c.to_string());
            report.sampling = Some(format!(
                "sampled {} distinct of {total} valuations (seed {seed})",
                drawn.len()
            ));
            drawn
        }
    };

    let words = words_up_to(f.alphabet.len(), bound);
    let word_ids: Vec<usize> = words.iter().map(|w| sp.id_of(&sp.eval(f, w))).collect();
    let env = LanguageEnv {
        variety,
        alphabet: f.alphabet.clone(),
        bound,
        bindings: atoms.clone(),
    };
    let s = variety.semiring();
    for (i, v) in valuations.iter().enumerate() {
        let target = TruncLanguage::new(
            s,
            &f.alphabet,
            bound,
            word_ids.iter().map(|&x| v.of(x)).collect(),
        )?;
        report.checks += 1;
        match closure_membership(&target, &atoms, variety, limits)? {
            Membership::In(expr) => {
                report.checks += 1;
                if c_op_apply(&expr, &env)?.values != target.values {
                    report.fail(format!("witness for valuation #{i} does not re-evaluate"));
                } else {
                    report
                        .witnesses
                        .push(format!("s#{i} ({}): {expr}", short_digits(v)));
                }
            }
            Membership::NotIn => {
                report.fail(format!(
                    "language of valuation #{i} ({}) admits no combination of the atoms",
                    short_digits(v)
                ));
            }
            Membership::Inconclusive(why) => {
                report.inconclusive(format!("valuation #{i} ({}): {why}", short_digits(v)));
            }
        }
    }
    report.elapsed_ms = t0.elapsed().as_millis();
    Ok(report)
}

fn image_list(f: &Assignment) -> String {
    f.alphabet
        .iter()
        .zip(&f.images)
        .map(|(c, x)| format!("{c}↦{x}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn short_digits(v: &Valuation) -> String {
    let d = v.digits();
    if d.len() > 40 {
        format!("{}…", &d[..40])
    } else {
        d
    }
}
