//! Acceptance gate: one test per shipped guarantee, each over the bundled
//! corpus, and each printing a single `[acceptance] criterion N (...): PASS`
//! (or `FAIL`) line. Every check is exact — finite semiring arithmetic on the
//! truncated domain `Σ^{≤8}`, tolerance zero.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use schutzkit::dmonoid::{eval_word, is_monoid_morphism, MonoidMorphism};
use schutzkit::document::corpus_by_variety;
use schutzkit::languages::{words_up_to, Side};
use schutzkit::linalg::GfMat;
use schutzkit::products::{
    closed_semiring_matches_star, jsl_closed_semiring, jsl_isomorphic, schutzenberger,
    star_product, tensor_jsl_oracle, triangular_monoid, SchutzElem, SchutzProduct,
};
use schutzkit::recognition::{
    closure_check, decompose_middle, lmn_set, reutenauer_check, schurec_witness,
    universal_property_check,
};
use schutzkit::valuation::{enumerate_valuations, is_separating};
use schutzkit::{
    Assignment, DMonoid, Error, FiniteObject, FreeImage, Limits, TruncLanguage, Variety,
};

const BOUND: usize = 8;
const AB: [char; 2] = ['a', 'b'];

/// Fails the enclosing criterion with a formatted message.
macro_rules! check {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err(format!($($arg)+));
        }
    };
}

fn criterion(n: usize, slug: &str, body: impl FnOnce() -> Result<(), String>) {
    match body() {
        Ok(()) => println!("[acceptance] criterion {n} ({slug}): PASS"),
        Err(why) => {
            println!("[acceptance] criterion {n} ({slug}): FAIL — {why}");
            panic!("criterion {n} ({slug}) failed: {why}");
        }
    }
}

fn oops(e: Error) -> String {
    e.to_string()
}

fn limits() -> Limits {
    Limits::default()
}

/// Every ordered same-variety pair of corpus monoids, labelled.
fn corpus_pairs() -> Vec<(String, DMonoid, DMonoid)> {
    let mut out = Vec::new();
    for tag in ["set", "pos", "jsl", "vect"] {
        let ms = corpus_by_variety(tag);
        for (sm, m) in &ms {
            for (sn, n) in &ms {
                out.push((format!("{sm}⋄{sn}"), m.clone(), n.clone()));
            }
        }
    }
    out
}

fn ab_assignment(images: Vec<usize>) -> Assignment {
    Assignment::new(AB.to_vec(), images).expect("two letters, two images")
}

/// `a ↦ (1, η(1∗1), 1)`, `b ↦ 1`: a two-element image in every variety.
fn marked_unit_assignment(sp: &SchutzProduct) -> Assignment {
    let gen = SchutzElem {
        m: sp.left.unit,
        a: sp
            .middle
            .eta(sp.middle.star.gen_of(sp.left.unit, sp.right.unit)),
        n: sp.right.unit,
    };
    ab_assignment(vec![sp.id_of(&gen), sp.id_of(&sp.unit())])
}

/// The one-element D-monoid of a variety.
fn trivial_dmonoid(v: Variety) -> DMonoid {
    let object = match v {
        Variety::Set => FiniteObject::set(1),
        Variety::Pos => FiniteObject::pos(1, &[]).expect("singleton poset"),
        Variety::Jsl => FiniteObject::jsl(1, vec![0]).expect("singleton semilattice"),
        Variety::Vect { modulus } => FiniteObject::vect(modulus, 0).expect("zero space"),
    };
    DMonoid::new(object, 0, vec![0], "1", vec!["1".to_string()])
}

#[test]
fn criterion_01_size_law() {
    criterion(1, "size law |M⋄N| = |M|·2^(|M||N|)·|N| on SET", || {
        let l = limits();
        let sets = corpus_by_variety("set");
        let mut seen = 0;
        for (sm, m) in &sets {
            for (sn, n) in &sets {
                if m.size() > 3 || n.size() > 3 {
                    continue;
                }
                let sp = schutzenberger(m, n, &l).map_err(oops)?;
                let expect = m.size() * (1usize << (m.size() * n.size())) * n.size();
                check!(
                    sp.size() == expect,
                    "|{sm}⋄{sn}| is {}, the formula gives {expect}",
                    sp.size()
                );
                seen += 1;
            }
        }
        check!(
            seen == 16,
            "expected all 16 SET pairs under the size cap, saw {seen}"
        );
        let z2 = sets.iter().find(|(s, _)| *s == "z2").expect("z2 in corpus");
        let sp = schutzenberger(&z2.1, &z2.1, &l).map_err(oops)?;
        check!(sp.size() == 2 * (1 << 4) * 2, "|Z₂⋄Z₂| is {}", sp.size());
        Ok(())
    });
}

#[test]
fn criterion_02_marked_product_recognition() {
    criterion(2, "M⋄N recognizes K, L, and KaL", || {
        let l = limits();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for (label, m, n) in corpus_pairs() {
            let s = m.object.variety.semiring();
            let g = ab_assignment((0..2).map(|_| rng.gen_range(0..m.size())).collect());
            let h = ab_assignment((0..2).map(|_| rng.gen_range(0..n.size())).collect());
            let ps = enumerate_valuations(&m.object, &l).map_err(oops)?;
            let qs = enumerate_valuations(&n.object, &l).map_err(oops)?;
            for p in &ps {
                for q in &qs {
                    for mark in AB {
                        let out =
                            schurec_witness(&m, &n, &g, &h, p, q, mark, BOUND, &l).map_err(oops)?;
                        check!(
                            out.report.passed(),
                            "{label}, mark {mark}: {:?}",
                            out.report.counterexample
                        );
                        // Independent recomputation of all three languages.
                        let k_brute = TruncLanguage::from_fn(s, &AB, BOUND, |w| {
                            p.of(w.iter().fold(m.unit, |acc, &b| m.mul(acc, g.image(b))))
                        })
                        .map_err(oops)?;
                        let l_brute = TruncLanguage::from_fn(s, &AB, BOUND, |w| {
                            q.of(w.iter().fold(n.unit, |acc, &b| n.mul(acc, h.image(b))))
                        })
                        .map_err(oops)?;
                        let kal_brute = k_brute.marked_product(mark, &l_brute).map_err(oops)?;
                        for (role, brute) in [("K", &k_brute), ("L", &l_brute), ("KaL", &kal_brute)]
                        {
                            let wit = out
                                .witnesses
                                .iter()
                                .find(|w| w.role == role)
                                .ok_or(format!("{label}: no {role} witness"))?;
                            check!(
                                wit.language.values == brute.values,
                                "{label}, mark {mark}: {role} witness differs from brute force"
                            );
                        }
                    }
                }
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_03_middle_sum_formula() {
    criterion(3, "middle component satisfies the sum formula", || {
        let l = limits();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (label, m, n) in corpus_pairs() {
            let sp = schutzenberger(&m, &n, &l).map_err(oops)?;
            for round in 0..20 {
                let f = ab_assignment((0..2).map(|_| rng.gen_range(0..sp.size())).collect());
                let report = reutenauer_check(&sp, &f, BOUND, &l).map_err(oops)?;
                check!(
                    report.passed(),
                    "{label}, assignment #{round}: {:?}",
                    report.counterexample
                );
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_04_middle_language_decomposition() {
    criterion(4, "middle languages decompose into marked products", || {
        let l = limits();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for (label, m, n) in corpus_pairs() {
            let sp = schutzenberger(&m, &n, &l).map_err(oops)?;
            let s = m.object.variety.semiring();
            let f = ab_assignment((0..2).map(|_| rng.gen_range(0..sp.size())).collect());
            let ps = enumerate_valuations(&m.object, &l).map_err(oops)?;
            let qs = enumerate_valuations(&n.object, &l).map_err(oops)?;
            for (i, p) in ps.iter().enumerate() {
                for (j, q) in qs.iter().enumerate() {
                    let out = decompose_middle(&sp, &f, p, q, BOUND, &l).map_err(oops)?;
                    check!(
                        out.report.passed(),
                        "{label}, valuations ({i},{j}): {:?}",
                        out.report.counterexample
                    );
                    // The target must be the middle-recognized language.
                    let vmid = sp.middle_valuation(i, j);
                    let direct =
                        TruncLanguage::from_fn(s, &AB, BOUND, |w| vmid.of(sp.eval(&f, w).a))
                            .map_err(oops)?;
                    check!(
                        out.target.values == direct.values,
                        "{label}, valuations ({i},{j}): target is not the middle language"
                    );
                }
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_05_closure_of_recognized_languages() {
    criterion(5, "recognized languages close over the atom family", || {
        let l = limits();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for (label, m, n) in corpus_pairs() {
            let sp = schutzenberger(&m, &n, &l).map_err(oops)?;
            let f = ab_assignment((0..2).map(|_| rng.gen_range(0..sp.size())).collect());
            let report = closure_check(&sp, &f, false, BOUND, &l, 0).map_err(oops)?;
            check!(report.passed(), "{label}: {:?}", report.counterexample);
            check!(
                !report.witnesses.is_empty(),
                "{label}: no witness expressions attached"
            );
        }
        Ok(())
    });
}

#[test]
fn criterion_06_closed_semiring_matches_star() {
    criterion(6, "JSL closed-subsets semiring ≅ M∗N", || {
        let l = limits();
        let jsl = corpus_by_variety("jsl");
        for (sm, m) in &jsl {
            for (sn, n) in &jsl {
                let cs = jsl_closed_semiring(m, n, &l).map_err(oops)?;
                let sp = star_product(m, n, &l).map_err(oops)?;
                closed_semiring_matches_star(&cs, &sp)
                    .map_err(|why| format!("{sm}∗{sn}: {why}"))?;
            }
        }
        let b = &jsl
            .iter()
            .find(|(s, _)| *s == "bool")
            .expect("𝔹 in corpus")
            .1;
        let sp = star_product(b, b, &l).map_err(oops)?;
        check!(sp.size() == 2, "|𝔹∗𝔹| is {}", sp.size());
        Ok(())
    });
}

#[test]
fn criterion_07_separating_family() {
    criterion(7, "the {p∗q} family separates M∗N", || {
        let l = limits();
        for tag in ["set", "pos"] {
            let ms = corpus_by_variety(tag);
            for (sm, m) in &ms {
                for (sn, n) in &ms {
                    let sp = star_product(m, n, &l).map_err(oops)?;
                    check!(
                        is_separating(&sp.coordinate_family(), &sp.monoid.object),
                        "{sm}∗{sn}: family does not separate"
                    );
                }
            }
        }
        let vect = corpus_by_variety("vect");
        for (sm, m) in &vect {
            for (sn, n) in &vect {
                let sp = star_product(m, n, &l).map_err(oops)?;
                let rows: Vec<Vec<u8>> = sp
                    .coordinate_family()
                    .iter()
                    .map(|v| v.values.clone())
                    .collect();
                let modulus = match m.object.variety {
                    Variety::Vect { modulus } => modulus,
                    _ => unreachable!(),
                };
                let rank = GfMat::from_rows(modulus, &rows).rank();
                let want = m.object.dim() * n.object.dim();
                check!(rank == want, "{sm}∗{sn}: rank {rank}, wanted {want}");
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_08_tensor_oracle() {
    criterion(
        8,
        "𝟚⊗𝟚 ≅ 𝟚 and tensor embeds onto M∗N",
        || {
            let l = limits();
            let jsl = corpus_by_variety("jsl");
            let two = &jsl
                .iter()
                .find(|(s, _)| *s == "bool")
                .expect("𝔹 in corpus")
                .1;
            let t = tensor_jsl_oracle(&two.object, &two.object, &l).map_err(oops)?;
            check!(t.object.size == 2, "|𝟚⊗𝟚| is {}", t.object.size);
            let (tb, bb) = (t.object.bottom(), two.object.bottom());
            let mut phi = vec![0usize; 2];
            phi[tb] = bb;
            phi[1 - tb] = 1 - bb;
            check!(
                jsl_isomorphic(&t.object, &two.object, &phi),
                "𝟚⊗𝟚 is not isomorphic to 𝟚"
            );
            // The classes' joined generator vectors are exactly the star carrier.
            for (sm, m) in &jsl {
                for (sn, n) in &jsl {
                    let sp = star_product(m, n, &l).map_err(oops)?;
                    let t = tensor_jsl_oracle(&m.object, &n.object, &l).map_err(oops)?;
                    let p_vals = enumerate_valuations(&m.object, &l).map_err(oops)?;
                    let q_vals = enumerate_valuations(&n.object, &l).map_err(oops)?;
                    let width = p_vals.len() * q_vals.len();
                    let mut image: Vec<Vec<u8>> = (0..t.object.size)
                        .map(|e| {
                            let rep = t.class_reps[e];
                            let mut acc = vec![0u8; width];
                            for i in 0..m.size() * n.size() {
                                if rep >> i & 1 == 0 {
                                    continue;
                                }
                                let (x, y) = (i / n.size(), i % n.size());
                                for (pi, p) in p_vals.iter().enumerate() {
                                    for (qi, q) in q_vals.iter().enumerate() {
                                        acc[pi * q_vals.len() + qi] |= p.of(x) & q.of(y);
                                    }
                                }
                            }
                            acc
                        })
                        .collect();
                    image.sort_unstable();
                    image.dedup();
                    let mut star_vectors = sp.vectors.clone();
                    star_vectors.sort_unstable();
                    star_vectors.dedup();
                    check!(
                        image == star_vectors,
                        "{sm}⊗{sn}: embedded image differs from the star carrier"
                    );
                }
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_09_derivative_identities() {
    criterion(9, "one-letter derivatives of marked products", || {
        for (tag, s) in [
            ("set", schutzkit::Semiring::Bool),
            ("pos", schutzkit::Semiring::Bool),
            ("jsl", schutzkit::Semiring::Bool),
            ("vect", schutzkit::Semiring::Gf(2)),
        ] {
            let mut rng = ChaCha8Rng::seed_from_u64(9 + tag.len() as u64);
            for round in 0..50 {
                let count = words_up_to(2, BOUND).len();
                let rand_lang = |rng: &mut ChaCha8Rng| {
                    TruncLanguage::new(
                        s,
                        &AB,
                        BOUND,
                        (0..count)
                            .map(|_| rng.gen_range(0..s.size() as u8))
                            .collect(),
                    )
                    .map_err(oops)
                };
                let k = rand_lang(&mut rng)?;
                let lang = rand_lang(&mut rng)?;
                let a = AB[rng.gen_range(0..2)];
                let b = if a == 'a' { 'b' } else { 'a' };
                let kal = k.marked_product(a, &lang).map_err(oops)?;
                let l7 = lang.truncate(BOUND - 1).map_err(oops)?;
                // a⁻¹(KaL) = (a⁻¹K)aL + K(ε)·L
                let lhs = kal.derivative(a, Side::Left).map_err(oops)?;
                let rhs = k
                    .derivative(a, Side::Left)
                    .map_err(oops)?
                    .marked_product(a, &l7)
                    .map_err(oops)?
                    .pointwise_add(&l7.scale(k.of(&[])).map_err(oops)?)
                    .map_err(oops)?;
                check!(
                    lhs.values == rhs.values,
                    "{tag} #{round}: a⁻¹(KaL) ≠ (a⁻¹K)aL + K(ε)L"
                );
                // b⁻¹(KaL) = (b⁻¹K)aL for b ≠ a
                let lhs = kal.derivative(b, Side::Left).map_err(oops)?;
                let rhs = k
                    .derivative(b, Side::Left)
                    .map_err(oops)?
                    .marked_product(a, &l7)
                    .map_err(oops)?;
                check!(
                    lhs.values == rhs.values,
                    "{tag} #{round}: b⁻¹(KaL) ≠ (b⁻¹K)aL"
                );
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_10_universal_property() {
    criterion(
        10,
        "image-corestriction factors, trivial target cannot",
        || {
            let l = limits();
            let mut rng = ChaCha8Rng::seed_from_u64(10);
            for (label, m, n) in corpus_pairs() {
                let sp = schutzenberger(&m, &n, &l).map_err(oops)?;
                let unit_id = sp.id_of(&sp.unit());
                // A non-trivial f whose image stays small enough to enumerate
                // valuations on.
                let mut chosen: Option<(Assignment, FreeImage)> = None;
                for _ in 0..24 {
                    let images: Vec<usize> = (0..2).map(|_| rng.gen_range(0..sp.size())).collect();
                    if images.iter().all(|&x| x == unit_id) {
                        continue;
                    }
                    let f = ab_assignment(images);
                    if let Ok(fi) = sp.image_of_free_morphism(&f, &l) {
                        if fi.monoid.size() <= 12 {
                            chosen = Some((f, fi));
                            break;
                        }
                    }
                }
                let (f, fi) = match chosen {
                    Some(c) => c,
                    None => {
                        let f = marked_unit_assignment(&sp);
                        let fi = sp.image_of_free_morphism(&f, &l).map_err(oops)?;
                        (f, fi)
                    }
                };

                // e = corestriction of f to its image: the factorization exists.
                let out = universal_property_check(&sp, &f, &fi.letters, &fi.monoid, BOUND, &l)
                    .map_err(oops)?;
                check!(
                    out.report.passed(),
                    "{label}: corestriction fails: {:?}",
                    out.report.counterexample
                );
                let h = out
                    .morphism
                    .ok_or(format!("{label}: no factorization returned"))?;
                // h ∘ e = f on Σ^{≤8}, recomputed here.
                for w in words_up_to(2, BOUND) {
                    check!(
                        h.apply(eval_word(&fi.monoid, &fi.letters, &w))
                            == sp.id_of(&sp.eval(&f, &w)),
                        "{label}: h∘e ≠ f at a word of length {}",
                        w.len()
                    );
                }
                if sp.size() <= l.table_size {
                    let dm = sp.to_dmonoid(&l).map_err(oops)?;
                    check!(
                        is_monoid_morphism(&h, &fi.monoid, &dm),
                        "{label}: h is not a morphism of the variety"
                    );
                }

                // The family has a non-constant member, so a trivial target must
                // miss one of its languages.
                let fam = lmn_set(&sp, &f, BOUND, &l).map_err(oops)?;
                check!(
                    fam.atoms()
                        .iter()
                        .any(|(_, lang)| lang.values.iter().any(|&v| v != lang.values[0])),
                    "{label}: language family is all-constant"
                );
                let p_triv = trivial_dmonoid(m.object.variety);
                let e_triv = ab_assignment(vec![0, 0]);
                let out =
                    universal_property_check(&sp, &f, &e_triv, &p_triv, BOUND, &l).map_err(oops)?;
                check!(
                    !out.report.passed() && out.morphism.is_none(),
                    "{label}: trivial target unexpectedly factors"
                );
                check!(
                    out.report
                        .counterexample
                        .as_deref()
                        .is_some_and(|c| c.contains("does not recognize")),
                    "{label}: violation report lacks the missed language"
                );
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_11_structure_validity() {
    criterion(11, "all constructions satisfy their laws", || {
        let l = limits();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (label, m, n) in corpus_pairs() {
            let sp = schutzenberger(&m, &n, &l).map_err(oops)?;
            let star = &sp.middle.star;
            check!(
                star.monoid.validate().is_valid(),
                "{label}: star product fails D-monoid validation"
            );
            let lift_report = sp.middle.validate(&l).map_err(oops)?;
            check!(
                lift_report.is_valid(),
                "{label}: lifted algebra fails its law checks"
            );
            if sp.size() <= l.table_size {
                let tri = triangular_monoid(&sp.middle, &sp.f_mid, &sp.g_mid, &m, &n, &l)
                    .map_err(oops)?;
                check!(
                    tri.validate().is_valid(),
                    "{label}: triangular monoid fails validation"
                );
                let dm = sp.to_dmonoid(&l).map_err(oops)?;
                check!(
                    dm.validate().is_valid(),
                    "{label}: product fails D-monoid validation"
                );
                let (pm, pn) = sp.projection_maps();
                check!(
                    is_monoid_morphism(&MonoidMorphism { map: pm }, &dm, &m),
                    "{label}: π_M is not a morphism"
                );
                check!(
                    is_monoid_morphism(&MonoidMorphism { map: pn }, &dm, &n),
                    "{label}: π_N is not a morphism"
                );
            } else {
                // Beyond the table cap: sampled law checks on the lazy product.
                let u = sp.unit();
                let rand_elem = |rng: &mut ChaCha8Rng| SchutzElem {
                    m: rng.gen_range(0..m.size()),
                    a: rng.gen_range(0..sp.middle.size),
                    n: rng.gen_range(0..n.size()),
                };
                for _ in 0..200 {
                    let x = rand_elem(&mut rng);
                    let y = rand_elem(&mut rng);
                    let z = rand_elem(&mut rng);
                    check!(
                        sp.mul(&sp.mul(&x, &y), &z) == sp.mul(&x, &sp.mul(&y, &z)),
                        "{label}: associativity fails on a sampled triple"
                    );
                    check!(
                        sp.mul(&u, &x) == x && sp.mul(&x, &u) == x,
                        "{label}: unit law fails on a sampled element"
                    );
                    let xy = sp.mul(&x, &y);
                    check!(
                        xy.m == m.mul(x.m, y.m) && xy.n == n.mul(x.n, y.n),
                        "{label}: a projection is not multiplicative on a sample"
                    );
                }
            }
        }
        Ok(())
    });
}
