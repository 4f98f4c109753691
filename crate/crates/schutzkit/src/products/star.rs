//! The D-monoid `M ∗ N`: the image of the tensor `M ⊗ N` under the tupled
//! family of all valuation pairs `(p, q)`, i.e. the quotient of `M ⊗ N` that
//! makes the family `{p ∗ q}` separating.
//!
//! For SET, POS, and VECT the family is separating already, so `M ∗ N` is the
//! plain product (respectively the coordinate space `GF(p)^{d_M·d_N}`); only
//! for JSL is a genuine quotient involved, realized here concretely as the
//! pointwise-join closure of the canonical vectors `v_{m,n}(p,q) = p(m)·q(n)`
//! inside `S^{P×Q}`.

use crate::dmonoid::DMonoid;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::object::FiniteObject;
use crate::valuation::{enumerate_valuations, Valuation};
use crate::variety::Variety;
use std::collections::HashMap;

/// `M ∗ N` together with the data that defines it: the valuation lists
/// `P`, `Q`, the embedding vector of every element in `S^{P×Q}`, and the
/// generator table `(m, n) ↦ m ∗ n`.
#[derive(Debug, Clone)]
pub struct StarProduct {
    pub monoid: DMonoid,
    /// `(m, n) ↦ id of m ∗ n`, row-major with stride `|N|`.
    pub gen: Vec<usize>,
    pub left_size: usize,
    pub right_size: usize,
    pub left_valuations: Vec<Valuation>,
    pub right_valuations: Vec<Valuation>,
    /// `vectors[e][p·|Q| + q] = (p ∗ q)(e)`.
    pub vectors: Vec<Vec<u8>>,
}

impl StarProduct {
    pub fn size(&self) -> usize {
        self.monoid.size()
    }

    pub fn gen_of(&self, m: usize, n: usize) -> usize {
        self.gen[m * self.right_size + n]
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.monoid.mul(x, y)
    }

    pub fn unit(&self) -> usize {
        self.monoid.unit
    }

    pub fn pair_count(&self) -> usize {
        self.left_valuations.len() * self.right_valuations.len()
    }

    /// The `(p, q)` coordinate of element `e`.
    pub fn vector_entry(&self, e: usize, p_idx: usize, q_idx: usize) -> u8 {
        self.vectors[e][p_idx * self.right_valuations.len() + q_idx]
    }

    /// The canonical maximal witness of a JSL element: all pairs whose
    /// generator vector lies pointwise below `x`.
    pub fn witness_set(&self, x: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for m in 0..self.left_size {
            for n in 0..self.right_size {
                let g = self.gen_of(m, n);
                let below = self.vectors[g]
                    .iter()
                    .zip(&self.vectors[x])
                    .all(|(&a, &b)| a <= b);
                if below {
                    out.push((m, n));
                }
            }
        }
        out
    }

    /// The separating family `{p ∗ q}` re-read as valuations of the carrier.
    pub fn coordinate_family(&self) -> Vec<Valuation> {
        (0..self.pair_count())
            .map(|k| Valuation {
                values: self.vectors.iter().map(|v| v[k]).collect(),
            })
            .collect()
    }
}

/// Builds `M ∗ N`. Both monoids must live in the same variety (same modulus
/// for VECT); the carrier is capped at `limits.star_size`.
pub fn star_product(m: &DMonoid, n: &DMonoid, limits: &Limits) -> Result<StarProduct> {
    if m.object.variety != n.object.variety {
        return Err(Error::input(format!(
            "variety mismatch: the star product needs matching varieties, got {} and {}",
            m.object.variety, n.object.variety
        )));
    }
    let p_vals = enumerate_valuations(&m.object, limits)?;
    let q_vals = enumerate_valuations(&n.object, limits)?;
    match m.object.variety {
        Variety::Set | Variety::Pos => product_star(m, n, p_vals, q_vals, limits),
        Variety::Jsl => jsl_star(m, n, p_vals, q_vals, limits),
        Variety::Vect { .. } => vect_star(m, n, p_vals, q_vals, limits),
    }
}

fn check_size(size: usize, limits: &Limits) -> Result<()> {
    if size > limits.star_size {
        Err(Error::guard(format!(
            "star product carrier has {size} elements, cap is {}",
            limits.star_size
        )))
    } else {
        Ok(())
    }
}

fn product_star(
    m: &DMonoid,
    n: &DMonoid,
    p_vals: Vec<Valuation>,
    q_vals: Vec<Valuation>,
    limits: &Limits,
) -> Result<StarProduct> {
    let (lm, ln) = (m.size(), n.size());
    let size = lm * ln;
    check_size(size, limits)?;
    let id = |x: usize, y: usize| x * ln + y;
    let mut mult = vec![0usize; size * size];
    for x in 0..lm {
        for y in 0..ln {
            for x2 in 0..lm {
                for y2 in 0..ln {
                    mult[id(x, y) * size + id(x2, y2)] = id(m.mul(x, x2), n.mul(y, y2));
                }
            }
        }
    }
    let object = match m.object.variety {
        Variety::Set => FiniteObject::set(size),
        _ => {
            let mut leq = vec![false; size * size];
            for x in 0..lm {
                for y in 0..ln {
                    for x2 in 0..lm {
                        for y2 in 0..ln {
                            leq[id(x, y) * size + id(x2, y2)] =
                                m.object.leq(x, x2) && n.object.leq(y, y2);
                        }
                    }
                }
            }
            FiniteObject::pos_from_matrix(size, leq)
        }
    };
    let names: Vec<String> = (0..size)
        .map(|e| format!("{}∗{}", m.element_name(e / ln), n.element_name(e % ln)))
        .collect();
    let s = m.object.variety.semiring();
    let vectors: Vec<Vec<u8>> = (0..size)
        .map(|e| {
            let (x, y) = (e / ln, e % ln);
            p_vals
                .iter()
                .flat_map(|p| q_vals.iter().map(move |q| s.mul(p.of(x), q.of(y))))
                .collect()
        })
        .collect();
    let monoid = DMonoid::new(
        object,
        id(m.unit, n.unit),
        mult,
        format!("{}∗{}", m.name, n.name),
        names,
    );
    Ok(StarProduct {
        monoid,
        gen: Vec::from_iter(0..size),
        left_size: lm,
        right_size: ln,
        left_valuations: p_vals,
        right_valuations: q_vals,
        vectors,
    })
}

fn jsl_star(
    m: &DMonoid,
    n: &DMonoid,
    p_vals: Vec<Valuation>,
    q_vals: Vec<Valuation>,
    limits: &Limits,
) -> Result<StarProduct> {
    let (lm, ln) = (m.size(), n.size());
    let width = p_vals.len() * q_vals.len();
    // Generator vectors v_{m,n}(p,q) = p(m) ∧ q(n).
    let vmn: Vec<Vec<u8>> = (0..lm * ln)
        .map(|e| {
            let (x, y) = (e / ln, e % ln);
            p_vals
                .iter()
                .flat_map(|p| q_vals.iter().map(move |q| p.of(x) & q.of(y)))
                .collect()
        })
        .collect();
    // Pointwise-join closure of the generators together with the zero vector.
    let mut elems: Vec<Vec<u8>> = vec![vec![0u8; width]];
    let mut seen: HashMap<Vec<u8>, ()> = HashMap::new();
    seen.insert(elems[0].clone(), ());
    for v in &vmn {
        if !seen.contains_key(v) {
            seen.insert(v.clone(), ());
            elems.push(v.clone());
        }
    }
    let mut i = 0;
    while i < elems.len() {
        for j in 0..=i {
            let joined: Vec<u8> = elems[i]
                .iter()
                .zip(&elems[j])
                .map(|(&a, &b)| a | b)
                .collect();
            if !seen.contains_key(&joined) {
                if elems.len() >= limits.star_size {
                    return Err(Error::guard(format!(
                        "star product carrier exceeds {} elements",
                        limits.star_size
                    )));
                }
                seen.insert(joined.clone(), ());
                elems.push(joined);
            }
        }
        i += 1;
    }
    // Canonical ids: lexicographic order of the vectors (zero comes first).
    elems.sort();
    let size = elems.len();
    let index: HashMap<&[u8], usize> = elems
        .iter()
        .enumerate()
        .map(|(i, v)| (v.as_slice(), i))
        .collect();
    let gen: Vec<usize> = vmn.iter().map(|v| index[v.as_slice()]).collect();
    let mut join = vec![0usize; size * size];
    for x in 0..size {
        for y in 0..size {
            let j: Vec<u8> = elems[x]
                .iter()
                .zip(&elems[y])
                .map(|(&a, &b)| a | b)
                .collect();
            join[x * size + y] = index[j.as_slice()];
        }
    }
    // Multiplication by the canonical maximal witness rule.
    let witness: Vec<Vec<usize>> = elems
        .iter()
        .map(|x| {
            (0..lm * ln)
                .filter(|&e| vmn[e].iter().zip(x.iter()).all(|(&a, &b)| a <= b))
                .collect()
        })
        .collect();
    let mut mult = vec![0usize; size * size];
    for x in 0..size {
        for y in 0..size {
            let mut acc = vec![0u8; width];
            for &e in &witness[x] {
                let (a, b) = (e / ln, e % ln);
                for &e2 in &witness[y] {
                    let (a2, b2) = (e2 / ln, e2 % ln);
                    let prod = &vmn[m.mul(a, a2) * ln + n.mul(b, b2)];
                    for (t, &s) in acc.iter_mut().zip(prod) {
                        *t |= s;
                    }
                }
            }
            mult[x * size + y] = index[acc.as_slice()];
        }
    }
    let object = FiniteObject::jsl(size, join)?;
    let names: Vec<String> = elems
        .iter()
        .map(|v| v.iter().map(|d| d.to_string()).collect())
        .collect();
    let monoid = DMonoid::new(
        object,
        gen[m.unit * ln + n.unit],
        mult,
        format!("{}∗{}", m.name, n.name),
        names,
    );
    Ok(StarProduct {
        monoid,
        gen,
        left_size: lm,
        right_size: ln,
        left_valuations: p_vals,
        right_valuations: q_vals,
        vectors: elems,
    })
}

fn vect_star(
    m: &DMonoid,
    n: &DMonoid,
    p_vals: Vec<Valuation>,
    q_vals: Vec<Valuation>,
    limits: &Limits,
) -> Result<StarProduct> {
    let p = m.object.modulus();
    if p != n.object.modulus() {
        return Err(Error::input(format!(
            "star product needs matching moduli, got {} and {}",
            p,
            n.object.modulus()
        )));
    }
    let (dm, dn) = (m.object.dim(), n.object.dim());
    let d = dm * dn;
    let size = (p as u128)
        .checked_pow(d as u32)
        .filter(|&s| s <= limits.star_size as u128);
    let size = match size {
        Some(s) => s as usize,
        None => {
            return Err(Error::guard(format!(
                "star product carrier GF({p})^{d} exceeds {} elements",
                limits.star_size
            )))
        }
    };
    let object = FiniteObject::vect(p, d)?;
    let basis_m = |i: usize| (p as usize).pow(i as u32);
    let basis_n = |j: usize| (p as usize).pow(j as u32);
    // Structure constants: coordinates of (e_i e_k) ⊗ (f_j f_l).
    let mut sc: Vec<Vec<u8>> = Vec::with_capacity(d * d);
    for i in 0..dm {
        for j in 0..dn {
            for k in 0..dm {
                for l in 0..dn {
                    let alpha = m.object.coords(m.mul(basis_m(i), basis_m(k)));
                    let beta = n.object.coords(n.mul(basis_n(j), basis_n(l)));
                    let mut gamma = vec![0u8; d];
                    for (u, &au) in alpha.iter().enumerate() {
                        for (v, &bv) in beta.iter().enumerate() {
                            gamma[u * dn + v] = ((au as u64 * bv as u64) % p) as u8;
                        }
                    }
                    sc.push(gamma);
                }
            }
        }
    }
    let outer = |x: usize, y: usize| -> usize {
        let (xc, yc) = (m.object.coords(x), n.object.coords(y));
        let mut c = vec![0u8; d];
        for (i, &xi) in xc.iter().enumerate() {
            for (j, &yj) in yc.iter().enumerate() {
                c[i * dn + j] = ((xi as u64 * yj as u64) % p) as u8;
            }
        }
        object.id_of_coords(&c)
    };
    let gen: Vec<usize> = (0..m.size() * n.size())
        .map(|e| outer(e / n.size(), e % n.size()))
        .collect();
    let mut mult = vec![0usize; size * size];
    for x in 0..size {
        let xc = object.coords(x);
        for y in 0..size {
            let yc = object.coords(y);
            let mut acc = vec![0u64; d];
            for (ij, &xij) in xc.iter().enumerate() {
                if xij == 0 {
                    continue;
                }
                for (kl, &ykl) in yc.iter().enumerate() {
                    if ykl == 0 {
                        continue;
                    }
                    let c = (xij as u64 * ykl as u64) % p;
                    for (t, &g) in acc.iter_mut().zip(&sc[ij * d + kl]) {
                        *t = (*t + c * g as u64) % p;
                    }
                }
            }
            let coords: Vec<u8> = acc.iter().map(|&v| v as u8).collect();
            mult[x * size + y] = object.id_of_coords(&coords);
        }
    }
    // Embedding into S^{P×Q}: (p ∗ q)(Σ e_{ij} e_i⊗f_j) = Σ e_{ij} p(e_i) q(f_j).
    let vectors: Vec<Vec<u8>> = (0..size)
        .map(|e| {
            let c = object.coords(e);
            p_vals
                .iter()
                .flat_map(|pv| {
                    q_vals
                        .iter()
                        .map(|qv| {
                            let mut acc: u64 = 0;
                            for i in 0..dm {
                                for j in 0..dn {
                                    acc += c[i * dn + j] as u64
                                        * pv.of(basis_m(i)) as u64
                                        * qv.of(basis_n(j)) as u64;
                                }
                            }
                            (acc % p) as u8
                        })
                        .collect::<Vec<u8>>()
                })
                .collect()
        })
        .collect();
    let names: Vec<String> = (0..size)
        .map(|e| object.coords(e).iter().map(|d| d.to_string()).collect())
        .collect();
    let monoid = DMonoid::new(
        object,
        gen[m.unit * n.size() + n.unit],
        mult,
        format!("{}∗{}", m.name, n.name),
        names,
    );
    Ok(StarProduct {
        monoid,
        gen,
        left_size: m.size(),
        right_size: n.size(),
        left_valuations: p_vals,
        right_valuations: q_vals,
        vectors,
    })
}
