//! The closed-subsets oracle for `M ∗ N` in JSL: the closure operator `[X]`
//! defined through ideal pairs, and the idempotent semiring of all closed
//! subsets of `M × N` with `[X] ∨ [Y] = [X ∪ Y]` and `[X][Y] = [XY]`.
//!
//! This construction is deliberately independent of the valuation-vector
//! realization in [`super::star`]: ideals are enumerated by brute force over
//! all subsets, so the isomorphism between the two is a genuine cross-check.

use crate::dmonoid::DMonoid;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::object::FiniteObject;
use crate::products::StarProduct;
use crate::variety::Variety;

/// All ideals of a finite JSL monoid carrier: nonempty down-sets closed
/// under binary joins, found by filtering every subset. Exponential in the
/// carrier size; meant for desk-scale oracles only.
fn ideals(m: &DMonoid) -> Vec<Vec<bool>> {
    let n = m.size();
    let mut out = Vec::new();
    for mask in 1u64..1 << n {
        let member = |x: usize| mask >> x & 1 == 1;
        let down_closed =
            (0..n).all(|x| !member(x) || (0..n).all(|y| !m.object.leq(y, x) || member(y)));
        let join_closed =
            (0..n).all(|x| !member(x) || (0..n).all(|y| !member(y) || member(m.object.join(x, y))));
        if down_closed && join_closed {
            out.push((0..n).map(member).collect());
        }
    }
    out
}

/// The Klíma–Polák closure `[X]`: all `(m, n)` such that every ideal pair
/// `(I, J)` with `m ∉ I` and `n ∉ J` is hit by some `(x, y) ∈ X` with
/// `x ∉ I` and `y ∉ J`.
pub fn kp_closure(x: &[(usize, usize)], m: &DMonoid, n: &DMonoid) -> Result<Vec<(usize, usize)>> {
    if m.object.variety != Variety::Jsl || n.object.variety != Variety::Jsl {
        return Err(Error::input("kp_closure is defined for JSL monoids only"));
    }
    let mask = pairs_to_mask(x, n.size());
    let closed = kp_closure_mask(mask, &ideals(m), &ideals(n), n.size());
    Ok(mask_to_pairs(closed, n.size()))
}

fn pairs_to_mask(x: &[(usize, usize)], ln: usize) -> u64 {
    x.iter().fold(0u64, |acc, &(a, b)| acc | 1 << (a * ln + b))
}

fn mask_to_pairs(mask: u64, ln: usize) -> Vec<(usize, usize)> {
    (0..64)
        .filter(|e| mask >> e & 1 == 1)
        .map(|e| (e / ln, e % ln))
        .collect()
}

fn kp_closure_mask(x: u64, ideals_m: &[Vec<bool>], ideals_n: &[Vec<bool>], ln: usize) -> u64 {
    let lm = ideals_m[0].len();
    let mut out = 0u64;
    for a in 0..lm {
        for b in 0..ln {
            let included = ideals_m.iter().all(|i| {
                ideals_n.iter().all(|j| {
                    if i[a] || j[b] {
                        return true;
                    }
                    (0..lm * ln).any(|e| x >> e & 1 == 1 && !i[e / ln] && !j[e % ln])
                })
            });
            if included {
                out |= 1 << (a * ln + b);
            }
        }
    }
    out
}

/// The idempotent semiring of all closed subsets of `M × N`, as a JSL
/// D-monoid plus the subset behind every element.
#[derive(Debug, Clone)]
pub struct ClosedSemiring {
    pub monoid: DMonoid,
    /// Element id → closed subset as a bitmask over `M × N` pairs.
    pub masks: Vec<u64>,
    pub left_size: usize,
    pub right_size: usize,
}

impl ClosedSemiring {
    pub fn id_of_mask(&self, mask: u64) -> Option<usize> {
        self.masks.iter().position(|&m| m == mask)
    }
}

/// Enumerates every subset of `M × N`, closes it, and assembles the closed
/// sets into a semiring. Guarded by `limits.lift_base` on `|M|·|N|`.
pub fn jsl_closed_semiring(m: &DMonoid, n: &DMonoid, limits: &Limits) -> Result<ClosedSemiring> {
    if m.object.variety != Variety::Jsl || n.object.variety != Variety::Jsl {
        return Err(Error::input(
            "jsl_closed_semiring is defined for JSL monoids only",
        ));
    }
    let pairs = m.size() * n.size();
    if pairs > limits.lift_base {
        return Err(Error::guard(format!(
            "closed-subsets enumeration needs 2^{pairs} subsets, cap is 2^{}",
            limits.lift_base
        )));
    }
    let (im, inn) = (ideals(m), ideals(n));
    let ln = n.size();
    let total = 1u64 << pairs;
    let mut closure_of = vec![0u64; total as usize];
    for mask in 0..total {
        closure_of[mask as usize] = kp_closure_mask(mask, &im, &inn, ln);
    }
    let mut masks: Vec<u64> = closure_of.to_vec();
    masks.sort_unstable();
    masks.dedup();
    let size = masks.len();
    let id_of = |mask: u64| masks.binary_search(&mask).expect("closure image is closed");
    let mut join = vec![0usize; size * size];
    let mut mult = vec![0usize; size * size];
    for x in 0..size {
        for y in 0..size {
            join[x * size + y] = id_of(closure_of[(masks[x] | masks[y]) as usize]);
            let mut prod = 0u64;
            for e in 0..pairs {
                if masks[x] >> e & 1 == 0 {
                    continue;
                }
                for e2 in 0..pairs {
                    if masks[y] >> e2 & 1 == 0 {
                        continue;
                    }
                    let a = m.mul(e / ln, e2 / ln);
                    let b = n.mul(e % ln, e2 % ln);
                    prod |= 1 << (a * ln + b);
                }
            }
            mult[x * size + y] = id_of(closure_of[prod as usize]);
        }
    }
    let object = FiniteObject::jsl(size, join)?;
    let unit = id_of(closure_of[1 << (m.unit * ln + n.unit)]);
    let names: Vec<String> = masks
        .iter()
        .map(|&mask| {
            let parts: Vec<String> = mask_to_pairs(mask, ln)
                .into_iter()
                .map(|(a, b)| format!("({a},{b})"))
                .collect();
            format!("[{}]", parts.join(" "))
        })
        .collect();
    let monoid = DMonoid::new(
        object,
        unit,
        mult,
        format!("closed({},{})", m.name, n.name),
        names,
    );
    Ok(ClosedSemiring {
        monoid,
        masks,
        left_size: m.size(),
        right_size: n.size(),
    })
}

/// Verifies that the closed-subsets semiring is isomorphic to the star
/// product via `closed X ↦ join of generators in X`. Returns a description
/// of the first mismatch, if any.
pub fn closed_semiring_matches_star(
    cs: &ClosedSemiring,
    sp: &StarProduct,
) -> std::result::Result<(), String> {
    if cs.monoid.size() != sp.size() {
        return Err(format!(
            "carrier sizes differ: {} closed sets vs {} star elements",
            cs.monoid.size(),
            sp.size()
        ));
    }
    let ln = cs.right_size;
    let psi: Vec<usize> = cs
        .masks
        .iter()
        .map(|&mask| {
            mask_to_pairs(mask, ln)
                .into_iter()
                .fold(0, |acc, (a, b)| sp.monoid.object.join(acc, sp.gen_of(a, b)))
        })
        .collect();
    let mut seen = vec![false; sp.size()];
    for &x in &psi {
        if seen[x] {
            return Err(format!("map to star is not injective at star id {x}"));
        }
        seen[x] = true;
    }
    let k = cs.monoid.size();
    for x in 0..k {
        for y in 0..k {
            if psi[cs.monoid.object.join(x, y)] != sp.monoid.object.join(psi[x], psi[y]) {
                return Err(format!("join not preserved at ({x},{y})"));
            }
            if psi[cs.monoid.mul(x, y)] != sp.mul(psi[x], psi[y]) {
                return Err(format!("multiplication not preserved at ({x},{y})"));
            }
        }
    }
    if psi[cs.monoid.unit] != sp.unit() {
        return Err("unit not preserved".to_string());
    }
    if psi[cs.monoid.object.bottom()] != sp.monoid.object.bottom() {
        return Err("bottom not preserved".to_string());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{bool_jsl, chain3_jsl, grid_meet_jsl};
    use crate::products::star_product;

    fn trivial_jsl() -> DMonoid {
        let object = FiniteObject::jsl(1, vec![0]).unwrap();
        DMonoid::new(object, 0, vec![0], "T", vec!["0".into()])
    }

    #[test]
    fn bool_ideals_are_principal() {
        let b = bool_jsl();
        let ids = ideals(&b);
        assert_eq!(ids.len(), 2);
        assert!(ids.contains(&vec![true, false]));
        assert!(ids.contains(&vec![true, true]));
    }

    #[test]
    fn closure_of_empty_over_bool_pair() {
        // Derived by brute force over both ideals of B: (1,1) admits the
        // ideal pair (↓0, ↓0), every other pair is vacuous.
        let b = bool_jsl();
        let closed = kp_closure(&[], &b, &b).unwrap();
        assert_eq!(closed, vec![(0, 0), (0, 1), (1, 0)]);
    }

    #[test]
    fn closure_of_unit_pair_is_everything() {
        let b = bool_jsl();
        let closed = kp_closure(&[(1, 1)], &b, &b).unwrap();
        assert_eq!(closed, vec![(0, 0), (0, 1), (1, 0), (1, 1)]);
    }

    #[test]
    fn closure_is_inflationary_and_idempotent() {
        let (m, n) = (chain3_jsl(), bool_jsl());
        let pairs = m.size() * n.size();
        for mask in 0u64..1 << pairs {
            let x = mask_to_pairs(mask, n.size());
            let cx = kp_closure(&x, &m, &n).unwrap();
            for p in &x {
                assert!(cx.contains(p), "closure not inflationary at {mask:b}");
            }
            let ccx = kp_closure(&cx, &m, &n).unwrap();
            assert_eq!(cx, ccx, "closure not idempotent at {mask:b}");
        }
    }

    #[test]
    fn full_set_is_closed() {
        let m = grid_meet_jsl();
        let b = bool_jsl();
        let all: Vec<(usize, usize)> = (0..m.size())
            .flat_map(|a| (0..b.size()).map(move |c| (a, c)))
            .collect();
        assert_eq!(kp_closure(&all, &m, &b).unwrap(), all);
    }

    #[test]
    fn bool_pair_has_two_closed_sets() {
        let b = bool_jsl();
        let cs = jsl_closed_semiring(&b, &b, &Limits::default()).unwrap();
        assert_eq!(cs.monoid.size(), 2);
        // Without (1,1) and with (1,1).
        assert_eq!(cs.masks, vec![0b0111, 0b1111]);
        assert!(cs.monoid.validate().is_valid());
    }

    #[test]
    fn trivial_pair_has_one_closed_set() {
        let t = trivial_jsl();
        let cs = jsl_closed_semiring(&t, &t, &Limits::default()).unwrap();
        assert_eq!(cs.monoid.size(), 1);
    }

    #[test]
    fn closed_semiring_isomorphic_to_star() {
        let monoids = [bool_jsl(), chain3_jsl(), grid_meet_jsl()];
        for m in &monoids {
            for n in &monoids {
                let cs = jsl_closed_semiring(m, n, &Limits::default()).unwrap();
                let sp = star_product(m, n, &Limits::default()).unwrap();
                assert!(cs.monoid.validate().is_valid(), "{}", cs.monoid.name);
                closed_semiring_matches_star(&cs, &sp)
                    .unwrap_or_else(|e| panic!("{} vs star: {e}", cs.monoid.name));
            }
        }
    }

    #[test]
    fn non_jsl_inputs_rejected() {
        let z = crate::fixtures::z2_set();
        assert!(matches!(kp_closure(&[], &z, &z), Err(Error::Input(_))));
        assert!(matches!(
            jsl_closed_semiring(&z, &z, &Limits::default()),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn closed_semiring_guard_trips() {
        let g = grid_meet_jsl();
        let tight = Limits {
            lift_base: 8,
            ..Limits::default()
        };
        assert!(matches!(
            jsl_closed_semiring(&g, &g, &tight),
            Err(Error::Guard(_))
        ));
    }
}
