//! Valuations: structure-preserving maps from a carrier into the output
//! semiring `S`, enumerated exhaustively per variety.
//!
//! * SET — all maps into `{0,1}` (indicator functions of subsets);
//! * POS — monotone maps (indicators of upper sets), found by pruned
//!   depth-first search over value tuples;
//! * JSL — join- and bottom-preserving maps. In a finite join-semilattice
//!   every ideal is principal (`↓x` for the join of its members), so the
//!   valuations are exactly `y ↦ [y ≰ x]`, one per element `x` — including
//!   the constant-0 map from `x = ⊤`;
//! * VECT — linear functionals, one per coefficient tuple in `GF(p)^d`.
//!
//! Enumeration order is deterministic and lexicographic so that "first
//! valuation found" is reproducible across runs.

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::object::{FiniteObject, Structure};
use crate::variety::Variety;
use rand::Rng;

/// A map carrier → S, stored as one digit per element id.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Valuation {
    pub values: Vec<u8>,
}

impl Valuation {
    pub fn of(&self, x: usize) -> u8 {
        self.values[x]
    }

    /// Short display form: the value digits in element-id order.
    pub fn digits(&self) -> String {
        self.values.iter().map(|v| v.to_string()).collect()
    }
}

/// Checks the `SValuation` invariant for the carrier's variety.
pub fn is_valuation(obj: &FiniteObject, values: &[u8]) -> bool {
    let s = obj.variety.semiring();
    if values.len() != obj.size || values.iter().any(|&v| !s.contains(v)) {
        return false;
    }
    match &obj.structure {
        Structure::Set => true,
        Structure::Pos { .. } => {
            let n = obj.size;
            (0..n).all(|x| (0..n).all(|y| !obj.leq(x, y) || values[x] <= values[y]))
        }
        Structure::Jsl { join, bottom } => {
            let n = obj.size;
            values[*bottom] == 0
                && (0..n)
                    .all(|x| (0..n).all(|y| values[join[x * n + y]] == (values[x] | values[y])))
        }
        Structure::Vect { .. } => {
            let n = obj.size;
            let p = obj.modulus() as usize;
            (0..n).all(|x| {
                (0..n).all(|y| {
                    values[obj.vadd(x, y)] as usize == (values[x] as usize + values[y] as usize) % p
                })
            }) && (0..p as u8).all(|l| {
                (0..n).all(|x| {
                    values[obj.vscale(l, x)] as usize == (l as usize * values[x] as usize) % p
                })
            })
        }
    }
}

/// Enumerates every valuation of `obj`, in deterministic lexicographic
/// order. Fails with a guard error when the candidate space exceeds
/// `limits.valuation_candidates`.
pub fn enumerate_valuations(obj: &FiniteObject, limits: &Limits) -> Result<Vec<Valuation>> {
    let n = obj.size;
    match &obj.structure {
        Structure::Set => {
            let count = check_candidates(2u128.checked_pow(n as u32), n, limits)?;
            let mut out = Vec::with_capacity(count as usize);
            for k in 0..count {
                let values = (0..n).map(|i| ((k >> (n - 1 - i)) & 1) as u8).collect();
                out.push(Valuation { values });
            }
            Ok(out)
        }
        Structure::Pos { .. } => enumerate_monotone(obj, limits),
        Structure::Jsl { .. } => {
            let mut out: Vec<Valuation> = (0..n)
                .map(|x| Valuation {
                    values: (0..n).map(|y| if obj.leq(y, x) { 0 } else { 1 }).collect(),
                })
                .collect();
            out.sort_by(|a, b| a.values.cmp(&b.values));
            Ok(out)
        }
        Structure::Vect { dim } => {
            let p = obj.modulus() as u128;
            let count = check_candidates(p.checked_pow(*dim as u32), n, limits)?;
            let d = *dim;
            let mut out = Vec::with_capacity(count as usize);
            let coords: Vec<Vec<u8>> = (0..n).map(|x| obj.coords(x)).collect();
            for k in 0..count {
                // Coefficient tuple, c[0] most significant for lexicographic order.
                let mut c = vec![0u8; d];
                let mut rem = k;
                for i in (0..d).rev() {
                    c[i] = (rem % p) as u8;
                    rem /= p;
                }
                let values = (0..n)
                    .map(|x| {
                        let acc: usize = c
                            .iter()
                            .zip(&coords[x])
                            .map(|(&ci, &xi)| ci as usize * xi as usize)
                            .sum();
                        (acc % p as usize) as u8
                    })
                    .collect();
                out.push(Valuation { values });
            }
            Ok(out)
        }
    }
}

fn check_candidates(count: Option<u128>, n: usize, limits: &Limits) -> Result<u128> {
    match count {
        Some(c) if c <= limits.valuation_candidates => Ok(c),
        _ => Err(Error::guard(format!(
            "enumeration too large: valuation candidates for a carrier of size {n} exceed cap {}",
            limits.valuation_candidates
        ))),
    }
}

/// Depth-first enumeration of monotone 0/1-valued maps in lexicographic
/// order of value tuples, pruning against already-assigned positions. The
/// node count is capped by `valuation_candidates`.
fn enumerate_monotone(obj: &FiniteObject, limits: &Limits) -> Result<Vec<Valuation>> {
    let n = obj.size;
    let mut out = Vec::new();
    let mut values = vec![0u8; n];
    let mut work: u128 = 0;
    fn rec(
        obj: &FiniteObject,
        i: usize,
        values: &mut Vec<u8>,
        out: &mut Vec<Valuation>,
        work: &mut u128,
        cap: u128,
    ) -> Result<()> {
        *work += 1;
        if *work > cap {
            return Err(Error::guard(format!(
                "enumeration too large: monotone-map search on a carrier of size {} exceeded {cap} nodes",
                obj.size
            )));
        }
        let n = obj.size;
        if i == n {
            out.push(Valuation {
                values: values.clone(),
            });
            return Ok(());
        }
        'candidate: for v in 0..2u8 {
            for (j, &prev) in values.iter().enumerate().take(i) {
                if obj.leq(j, i) && prev > v {
                    continue 'candidate;
                }
                if obj.leq(i, j) && v > prev {
                    continue 'candidate;
                }
            }
            values[i] = v;
            rec(obj, i + 1, values, out, work, cap)?;
        }
        values[i] = 0;
        Ok(())
    }
    rec(
        obj,
        0,
        &mut values,
        &mut out,
        &mut work,
        limits.valuation_candidates,
    )?;
    Ok(out)
}

/// Draws one pseudo-random valuation; used for seeded sampling when full
/// enumeration is beyond the sampling threshold.
pub fn random_valuation<R: Rng>(obj: &FiniteObject, rng: &mut R) -> Valuation {
    let n = obj.size;
    match &obj.structure {
        Structure::Set => Valuation {
            values: (0..n).map(|_| rng.gen_range(0..2u8)).collect(),
        },
        Structure::Pos { .. } => {
            // Upward closure of a random seed set.
            let seed: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
            let values = (0..n)
                .map(|y| {
                    if (0..n).any(|x| seed[x] && obj.leq(x, y)) {
                        1
                    } else {
                        0
                    }
                })
                .collect();
            Valuation { values }
        }
        Structure::Jsl { .. } => {
            let x = rng.gen_range(0..n);
            Valuation {
                values: (0..n).map(|y| if obj.leq(y, x) { 0 } else { 1 }).collect(),
            }
        }
        Structure::Vect { dim } => {
            let p = obj.modulus();
            let c: Vec<u8> = (0..*dim).map(|_| rng.gen_range(0..p) as u8).collect();
            let values = (0..n)
                .map(|x| {
                    let acc: usize = c
                        .iter()
                        .zip(obj.coords(x))
                        .map(|(&ci, xi)| ci as usize * xi as usize)
                        .sum();
                    (acc % p as usize) as u8
                })
                .collect();
            Valuation { values }
        }
    }
}

/// True iff the tupled map `x ↦ (f(x))_f` is injective (SET/JSL/VECT) or
/// order-reflecting (POS). An empty family separates only trivial carriers.
pub fn is_separating(family: &[Valuation], obj: &FiniteObject) -> bool {
    let n = obj.size;
    if matches!(obj.variety, Variety::Pos) {
        for x in 0..n {
            for y in 0..n {
                if !obj.leq(x, y) && family.iter().all(|f| f.of(x) <= f.of(y)) {
                    return false;
                }
            }
        }
        true
    } else {
        for x in 0..n {
            for y in x + 1..n {
                if family.iter().all(|f| f.of(x) == f.of(y)) {
                    return false;
                }
            }
        }
        true
    }
}

/// Brute-force oracle: all maps carrier → S that satisfy `is_valuation`,
/// with no structural shortcuts. Exponential; test use only.
pub fn brute_force_valuations(obj: &FiniteObject) -> Vec<Valuation> {
    let s = obj.variety.semiring();
    let base = s.size() as u128;
    let total = base.pow(obj.size as u32);
    let mut out = Vec::new();
    for k in 0..total {
        let mut values = vec![0u8; obj.size];
        let mut rem = k;
        for i in (0..obj.size).rev() {
            values[i] = (rem % base) as u8;
            rem /= base;
        }
        if is_valuation(obj, &values) {
            out.push(Valuation { values });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain_jsl(n: usize) -> FiniteObject {
        let join: Vec<usize> = (0..n).flat_map(|x| (0..n).map(move |y| x.max(y))).collect();
        FiniteObject::jsl(n, join).unwrap()
    }

    #[test]
    fn set_of_size_two_has_four_valuations_in_lex_order() {
        let obj = FiniteObject::set(2);
        let vals = enumerate_valuations(&obj, &Limits::default()).unwrap();
        let tuples: Vec<Vec<u8>> = vals.into_iter().map(|v| v.values).collect();
        assert_eq!(tuples, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn boolean_semilattice_has_identity_and_constant_zero() {
        // Derived oracle: brute force all 4 maps, keep the join/bottom
        // preserving ones.
        let obj = chain_jsl(2);
        let vals = enumerate_valuations(&obj, &Limits::default()).unwrap();
        assert_eq!(vals.len(), 2);
        assert_eq!(
            vals[0].values,
            vec![0, 0],
            "constant 0 from ideal = carrier"
        );
        assert_eq!(vals[1].values, vec![0, 1], "the identity");
        assert_eq!(vals, brute_force_valuations(&obj));
    }

    #[test]
    fn chain3_ideals_match_brute_force() {
        let obj = chain_jsl(3);
        let vals = enumerate_valuations(&obj, &Limits::default()).unwrap();
        assert_eq!(vals.len(), 3);
        let mut brute = brute_force_valuations(&obj);
        let mut sorted = vals.clone();
        sorted.sort_by(|a, b| a.values.cmp(&b.values));
        brute.sort_by(|a, b| a.values.cmp(&b.values));
        assert_eq!(sorted, brute);
    }

    #[test]
    fn diamond_jsl_ideals_are_principal() {
        // 0 < a,b < 1 with a ∨ b = 1: four principal ideals, and the
        // brute-force filter agrees (e.g. {0,a,b} is not join-closed).
        #[rustfmt::skip]
        let join = vec![
            0, 1, 2, 3,
            1, 1, 3, 3,
            2, 3, 2, 3,
            3, 3, 3, 3,
        ];
        let obj = FiniteObject::jsl(4, join).unwrap();
        assert!(obj.validate().is_valid());
        let vals = enumerate_valuations(&obj, &Limits::default()).unwrap();
        assert_eq!(vals.len(), 4);
        let mut brute = brute_force_valuations(&obj);
        let mut sorted = vals.clone();
        sorted.sort_by(|a, b| a.values.cmp(&b.values));
        brute.sort_by(|a, b| a.values.cmp(&b.values));
        assert_eq!(sorted, brute);
    }

    #[test]
    fn gf2_dim2_has_four_functionals() {
        let obj = FiniteObject::vect(2, 2).unwrap();
        let vals = enumerate_valuations(&obj, &Limits::default()).unwrap();
        assert_eq!(vals.len(), 4);
        for v in &vals {
            assert!(is_valuation(&obj, &v.values));
        }
        let mut brute = brute_force_valuations(&obj);
        let mut sorted = vals.clone();
        sorted.sort_by(|a, b| a.values.cmp(&b.values));
        brute.sort_by(|a, b| a.values.cmp(&b.values));
        assert_eq!(sorted, brute);
    }

    #[test]
    fn gf3_functional_count_is_p_to_d() {
        let obj = FiniteObject::vect(3, 2).unwrap();
        let vals = enumerate_valuations(&obj, &Limits::default()).unwrap();
        assert_eq!(vals.len(), 9);
        for v in &vals {
            assert!(is_valuation(&obj, &v.values));
        }
    }

    #[test]
    fn pos_chain_has_upper_sets() {
        let obj = FiniteObject::pos(2, &[(0, 1)]).unwrap();
        let vals = enumerate_valuations(&obj, &Limits::default()).unwrap();
        let tuples: Vec<Vec<u8>> = vals.iter().map(|v| v.values.clone()).collect();
        assert_eq!(tuples, vec![vec![0, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(vals, brute_force_valuations(&obj));
    }

    #[test]
    fn pos_grid_has_six_upper_sets() {
        // 2×2 componentwise-ordered grid: bottom 0, middle a=1, b=2, top 3.
        let obj = FiniteObject::pos(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        let vals = enumerate_valuations(&obj, &Limits::default()).unwrap();
        assert_eq!(vals.len(), 6);
        assert_eq!(vals, brute_force_valuations(&obj));
    }

    #[test]
    fn enumerated_valuations_satisfy_invariant_and_separate() {
        let objs = vec![
            FiniteObject::set(3),
            FiniteObject::pos(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap(),
            chain_jsl(3),
            FiniteObject::vect(2, 2).unwrap(),
        ];
        for obj in objs {
            let vals = enumerate_valuations(&obj, &Limits::default()).unwrap();
            for v in &vals {
                assert!(is_valuation(&obj, &v.values), "{obj:?} {v:?}");
            }
            assert!(is_separating(&vals, &obj), "{obj:?}");
        }
    }

    #[test]
    fn constant_family_does_not_separate() {
        let obj = FiniteObject::set(2);
        let family = vec![
            Valuation { values: vec![0, 0] },
            Valuation { values: vec![1, 1] },
        ];
        assert!(!is_separating(&family, &obj));
        assert!(!is_separating(&[], &obj), "empty family on size > 1");
        assert!(is_separating(&[], &FiniteObject::set(1)));
    }

    #[test]
    fn singleton_identity_separates_s_itself() {
        let obj = chain_jsl(2);
        let identity = Valuation { values: vec![0, 1] };
        assert!(is_separating(&[identity], &obj));
    }

    #[test]
    fn enumeration_guard_trips() {
        let obj = FiniteObject::set(25);
        let err = enumerate_valuations(&obj, &Limits::default()).unwrap_err();
        assert!(matches!(err, crate::error::Error::Guard(_)));
    }

    #[test]
    fn random_valuations_are_structure_preserving() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let objs = vec![
            FiniteObject::set(5),
            FiniteObject::pos(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap(),
            chain_jsl(4),
            FiniteObject::vect(3, 2).unwrap(),
        ];
        for obj in objs {
            for _ in 0..25 {
                let v = random_valuation(&obj, &mut rng);
                assert!(is_valuation(&obj, &v.values), "{obj:?} {v:?}");
            }
        }
    }
}
