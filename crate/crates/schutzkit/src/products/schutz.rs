//! The Schützenberger product `M ⋄ N`: the triangular D-monoid on
//! `M × UF(M∗N) × N` with multiplication
//! `(m,a,n)(m',a',n') = (mm', η(m∗1)·a' + a·η(1∗n'), nn')` and unit
//! `(1, 0, 1)`.
//!
//! Elements are kept as triples and multiplied lazily, so products whose
//! carrier is too large to tabulate can still be explored (word images,
//! reachable submonoids); [`SchutzProduct::to_dmonoid`] materializes the
//! full table under a size guard, by way of the generic triangular-monoid
//! construction.

use crate::dmonoid::{Ambient, Assignment, DMonoid, FreeImage};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::object::FiniteObject;
use crate::products::{lift_algebra, star_product, LiftedAlgebra};
use crate::valuation::Valuation;
use crate::variety::Variety;

/// One element of `M ⋄ N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SchutzElem {
    pub m: usize,
    pub a: usize,
    pub n: usize,
}

#[derive(Debug, Clone)]
pub struct SchutzProduct {
    pub left: DMonoid,
    pub right: DMonoid,
    pub middle: LiftedAlgebra,
    /// `m ↦ η(m ∗ 1)` as a lifted-algebra id.
    pub f_mid: Vec<usize>,
    /// `n ↦ η(1 ∗ n)` as a lifted-algebra id.
    pub g_mid: Vec<usize>,
    pub name: String,
}

/// Builds `M ⋄ N` as `triangular(lift(star(M, N)))` with `f = η(− ∗ 1)` and
/// `g = η(1 ∗ −)`.
pub fn schutzenberger(m: &DMonoid, n: &DMonoid, limits: &Limits) -> Result<SchutzProduct> {
    let star = star_product(m, n, limits)?;
    let middle = lift_algebra(star, limits)?;
    let f_mid: Vec<usize> = (0..m.size())
        .map(|x| middle.eta(middle.star.gen_of(x, n.unit)))
        .collect();
    let g_mid: Vec<usize> = (0..n.size())
        .map(|y| middle.eta(middle.star.gen_of(m.unit, y)))
        .collect();
    Ok(SchutzProduct {
        left: m.clone(),
        right: n.clone(),
        middle,
        f_mid,
        g_mid,
        name: format!("{}⋄{}", m.name, n.name),
    })
}

impl SchutzProduct {
    pub fn size(&self) -> usize {
        self.left.size() * self.middle.size * self.right.size()
    }

    pub fn unit(&self) -> SchutzElem {
        SchutzElem {
            m: self.left.unit,
            a: self.middle.zero,
            n: self.right.unit,
        }
    }

    pub fn id_of(&self, e: &SchutzElem) -> usize {
        (e.m * self.middle.size + e.a) * self.right.size() + e.n
    }

    pub fn elem_of(&self, id: usize) -> SchutzElem {
        let n = id % self.right.size();
        let rest = id / self.right.size();
        SchutzElem {
            m: rest / self.middle.size,
            a: rest % self.middle.size,
            n,
        }
    }

    /// The triangular multiplication.
    pub fn mul(&self, x: &SchutzElem, y: &SchutzElem) -> SchutzElem {
        let a = self.middle.add(
            self.middle.mul(self.f_mid[x.m], y.a),
            self.middle.mul(x.a, self.g_mid[y.n]),
        );
        SchutzElem {
            m: self.left.mul(x.m, y.m),
            a,
            n: self.right.mul(x.n, y.n),
        }
    }

    /// Evaluates a word through a letter assignment into `M ⋄ N` (images are
    /// element ids).
    pub fn eval(&self, f: &Assignment, w: &[u8]) -> SchutzElem {
        w.iter().fold(self.unit(), |acc, &b| {
            self.mul(&acc, &self.elem_of(f.image(b)))
        })
    }

    /// The carrier as an object of the variety (product structure), without
    /// any multiplication table.
    pub fn carrier_object(&self, limits: &Limits) -> Result<FiniteObject> {
        let size = self.size();
        match self.left.object.variety {
            Variety::Set => Ok(FiniteObject::set(size)),
            Variety::Pos => {
                if size > limits.table_size {
                    return Err(Error::guard(format!(
                        "carrier order matrix for {size} elements exceeds cap {}",
                        limits.table_size
                    )));
                }
                let mut leq = vec![false; size * size];
                for x in 0..size {
                    let ex = self.elem_of(x);
                    for y in 0..size {
                        let ey = self.elem_of(y);
                        leq[x * size + y] = self.left.object.leq(ex.m, ey.m)
                            && self.middle.leq(ex.a, ey.a)
                            && self.right.object.leq(ex.n, ey.n);
                    }
                }
                Ok(FiniteObject::pos_from_matrix(size, leq))
            }
            Variety::Jsl => {
                if size > limits.table_size {
                    return Err(Error::guard(format!(
                        "carrier join table for {size} elements exceeds cap {}",
                        limits.table_size
                    )));
                }
                let mut join = vec![0usize; size * size];
                for x in 0..size {
                    let ex = self.elem_of(x);
                    for y in 0..size {
                        let ey = self.elem_of(y);
                        join[x * size + y] = self.id_of(&SchutzElem {
                            m: self.left.object.join(ex.m, ey.m),
                            a: self.middle.add(ex.a, ey.a),
                            n: self.right.object.join(ex.n, ey.n),
                        });
                    }
                }
                FiniteObject::jsl(size, join)
            }
            Variety::Vect { modulus } => {
                let d = self.left.object.dim()
                    + self.middle.star.monoid.object.dim()
                    + self.right.object.dim();
                FiniteObject::vect(modulus, d)
            }
        }
    }

    /// Materializes the full D-monoid, including its multiplication table.
    pub fn to_dmonoid(&self, limits: &Limits) -> Result<DMonoid> {
        let size = self.size();
        if size > limits.table_size {
            return Err(Error::guard(format!(
                "Schützenberger product has {size} elements, table cap is {}",
                limits.table_size
            )));
        }
        let object = self.carrier_object(limits)?;
        let mut mult = vec![0usize; size * size];
        for x in 0..size {
            let ex = self.elem_of(x);
            for y in 0..size {
                mult[x * size + y] = self.id_of(&self.mul(&ex, &self.elem_of(y)));
            }
        }
        let names: Vec<String> = (0..size)
            .map(|id| {
                let e = self.elem_of(id);
                format!(
                    "({},{},{})",
                    self.left.element_name(e.m),
                    self.middle.describe(e.a),
                    self.right.element_name(e.n)
                )
            })
            .collect();
        Ok(DMonoid::new(
            object,
            self.id_of(&self.unit()),
            mult,
            self.name.clone(),
            names,
        ))
    }

    /// The two outer projection maps of a materialized copy.
    pub fn projection_maps(&self) -> (Vec<usize>, Vec<usize>) {
        let size = self.size();
        let mut pm = Vec::with_capacity(size);
        let mut pn = Vec::with_capacity(size);
        for id in 0..size {
            let e = self.elem_of(id);
            pm.push(e.m);
            pn.push(e.n);
        }
        (pm, pn)
    }

    /// The valuation of the middle carrier induced by a valuation pair
    /// `(p, q)`: the lift of `p ∗ q` along `η`.
    pub fn middle_valuation(&self, p_idx: usize, q_idx: usize) -> Valuation {
        use crate::products::LiftKind;
        let star = &self.middle.star;
        let values = match &self.middle.kind {
            LiftKind::Subsets => (0..self.middle.size)
                .map(|mask| {
                    (0..star.size())
                        .filter(|&e| mask >> e & 1 == 1)
                        .map(|e| star.vector_entry(e, p_idx, q_idx))
                        .fold(0, |acc, v| acc | v)
                })
                .collect(),
            LiftKind::DownSets { masks, .. } => masks
                .iter()
                .map(|&mask| {
                    (0..star.size())
                        .filter(|&e| mask >> e & 1 == 1)
                        .map(|e| star.vector_entry(e, p_idx, q_idx))
                        .fold(0, |acc, v| acc | v)
                })
                .collect(),
            LiftKind::Identity => (0..self.middle.size)
                .map(|e| star.vector_entry(e, p_idx, q_idx))
                .collect(),
        };
        Valuation { values }
    }

    /// The image of a free morphism `Σ* → M ⋄ N` given by letter images
    /// (element ids), without materializing the product.
    pub fn image_of_free_morphism(&self, f: &Assignment, limits: &Limits) -> Result<FreeImage> {
        if let Some(&bad) = f.images.iter().find(|&&x| x >= self.size()) {
            return Err(Error::input(format!(
                "letter image {bad} out of range for {}",
                self.name
            )));
        }
        crate::dmonoid::free_image_in(
            self,
            &f.alphabet,
            &f.images,
            &format!("im({})", self.name),
            limits,
        )
    }
}

impl Ambient for SchutzProduct {
    fn variety(&self) -> Variety {
        self.left.object.variety
    }
    fn unit_id(&self) -> usize {
        self.id_of(&self.unit())
    }
    fn mul_id(&self, x: usize, y: usize) -> usize {
        self.id_of(&self.mul(&self.elem_of(x), &self.elem_of(y)))
    }
    fn leq_id(&self, x: usize, y: usize) -> bool {
        let (ex, ey) = (self.elem_of(x), self.elem_of(y));
        self.left.object.leq(ex.m, ey.m)
            && self.middle.leq(ex.a, ey.a)
            && self.right.object.leq(ex.n, ey.n)
    }
    fn join_id(&self, x: usize, y: usize) -> usize {
        let (ex, ey) = (self.elem_of(x), self.elem_of(y));
        self.id_of(&SchutzElem {
            m: self.left.object.join(ex.m, ey.m),
            a: self.middle.add(ex.a, ey.a),
            n: self.right.object.join(ex.n, ey.n),
        })
    }
    fn bottom_id(&self) -> usize {
        self.id_of(&SchutzElem {
            m: self.left.object.bottom(),
            a: self.middle.zero,
            n: self.right.object.bottom(),
        })
    }
    fn coords_id(&self, x: usize) -> Vec<u8> {
        let e = self.elem_of(x);
        let mut c = self.right.object.coords(e.n);
        c.extend(self.middle.star.monoid.object.coords(e.a));
        c.extend(self.left.object.coords(e.m));
        c
    }
    fn scaled_sum_id(&self, terms: &[(u8, usize)]) -> usize {
        let mut acc = self.elem_of(0);
        debug_assert_eq!((acc.m, acc.a, acc.n), (0, 0, 0));
        for &(l, x) in terms {
            let e = self.elem_of(x);
            acc = SchutzElem {
                m: self
                    .left
                    .object
                    .vadd(acc.m, self.left.object.vscale(l, e.m)),
                a: self.middle.add(acc.a, self.middle.scale(l, e.a)),
                n: self
                    .right
                    .object
                    .vadd(acc.n, self.right.object.vscale(l, e.n)),
            };
        }
        self.id_of(&acc)
    }
}

/// The generic triangular monoid `A^{f,g}` on `M × A × N`, materialized.
/// `f` and `g` must be multiplicative-monoid morphisms into `(A, ·, 1)` that
/// also preserve the variety structure of their domains.
pub fn triangular_monoid(
    a: &LiftedAlgebra,
    f: &[usize],
    g: &[usize],
    m: &DMonoid,
    n: &DMonoid,
    limits: &Limits,
) -> Result<DMonoid> {
    check_into_multiplicative(a, f, m, "f")?;
    check_into_multiplicative(a, g, n, "g")?;
    let sp = SchutzProduct {
        left: m.clone(),
        right: n.clone(),
        middle: a.clone(),
        f_mid: f.to_vec(),
        g_mid: g.to_vec(),
        name: format!("tri({},{})", m.name, n.name),
    };
    sp.to_dmonoid(limits)
}

/// Premise check for [`triangular_monoid`].
fn check_into_multiplicative(
    a: &LiftedAlgebra,
    f: &[usize],
    m: &DMonoid,
    label: &str,
) -> Result<()> {
    let fail = |msg: String| Err(Error::input(format!("{label} is not admissible: {msg}")));
    if f.len() != m.size() {
        return fail(format!("{} images for {} elements", f.len(), m.size()));
    }
    if let Some(&bad) = f.iter().find(|&&x| x >= a.size) {
        return fail(format!("image {bad} outside the algebra"));
    }
    if f[m.unit] != a.one {
        return fail("unit not mapped to 1".to_string());
    }
    for x in 0..m.size() {
        for y in 0..m.size() {
            if f[m.mul(x, y)] != a.mul(f[x], f[y]) {
                return fail(format!("not multiplicative at ({x},{y})"));
            }
        }
    }
    match m.object.variety {
        Variety::Set => {}
        Variety::Pos => {
            for x in 0..m.size() {
                for y in 0..m.size() {
                    if m.object.leq(x, y) && !a.leq(f[x], f[y]) {
                        return fail(format!("not monotone at {x} ≤ {y}"));
                    }
                }
            }
        }
        Variety::Jsl => {
            if f[m.object.bottom()] != a.zero {
                return fail("bottom not mapped to 0".to_string());
            }
            for x in 0..m.size() {
                for y in 0..m.size() {
                    if f[m.object.join(x, y)] != a.add(f[x], f[y]) {
                        return fail(format!("joins not preserved at ({x},{y})"));
                    }
                }
            }
        }
        Variety::Vect { modulus } => {
            for x in 0..m.size() {
                for y in 0..m.size() {
                    if f[m.object.vadd(x, y)] != a.add(f[x], f[y]) {
                        return fail(format!("not additive at ({x},{y})"));
                    }
                }
                for l in 0..modulus as u8 {
                    if f[m.object.vscale(l, x)] != a.scale(l, f[x]) {
                        return fail(format!("not homogeneous at λ={l}, {x}"));
                    }
                }
            }
        }
    }
    Ok(())
}
