//! The lifted S-algebra `F(M ∗ N)`: the free S-algebra on the star product
//! inside the variety.
//!
//! * SET — all subsets of `M ∗ N`, union as addition, complex product as
//!   multiplication, `η = singleton`;
//! * POS — all down-sets, union as addition, `X·Y = ↓{xy}`, `η = principal
//!   down-set`;
//! * JSL and VECT — the star product is its own free algebra (`η = id`),
//!   with join (resp. vector addition) as the S-algebra addition.
//!
//! Operations are computed on demand (subset ids are bitmasks), so the
//! algebra can participate in lazily multiplied Schützenberger products
//! without materializing any `size²` table; [`LiftedAlgebra::validate`]
//! builds the tables explicitly, under a size guard, to check the laws.

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::object::ValidationReport;
use crate::products::StarProduct;
use crate::variety::{Semiring, Variety};
use std::collections::HashMap;

/// How lifted element ids map to structure.
#[derive(Debug, Clone)]
pub enum LiftKind {
    /// SET: ids are subset bitmasks `0..2^k` over star element ids.
    Subsets,
    /// POS: ids index the ascending list of down-closed bitmasks.
    DownSets {
        masks: Vec<u32>,
        index: HashMap<u32, usize>,
        down_of: Vec<u32>,
    },
    /// JSL/VECT: ids are star element ids.
    Identity,
}

#[derive(Debug, Clone)]
pub struct LiftedAlgebra {
    pub star: StarProduct,
    pub kind: LiftKind,
    pub size: usize,
    pub zero: usize,
    pub one: usize,
}

/// Lifts a star product to its free S-algebra. SET and POS enumerate
/// subsets, so they are guarded by `limits.lift_base` on `|M ∗ N|`.
pub fn lift_algebra(star: StarProduct, limits: &Limits) -> Result<LiftedAlgebra> {
    let k = star.size();
    match star.monoid.object.variety {
        Variety::Set => {
            if k > limits.lift_base {
                return Err(Error::guard(format!(
                    "SET lift needs 2^{k} subsets of the {k}-element star product, cap is 2^{}",
                    limits.lift_base
                )));
            }
            let size = 1usize << k;
            let one = 1usize << star.unit();
            Ok(LiftedAlgebra {
                star,
                kind: LiftKind::Subsets,
                size,
                zero: 0,
                one,
            })
        }
        Variety::Pos => {
            if k > limits.lift_base {
                return Err(Error::guard(format!(
                    "POS lift enumerates down-sets of the {k}-element star product, cap is {}",
                    limits.lift_base
                )));
            }
            let down_of: Vec<u32> = (0..k)
                .map(|e| {
                    (0..k)
                        .filter(|&e2| star.monoid.object.leq(e2, e))
                        .fold(0u32, |acc, e2| acc | 1 << e2)
                })
                .collect();
            let masks: Vec<u32> = (0..1u32 << k)
                .filter(|&mask| (0..k).all(|e| mask >> e & 1 == 0 || down_of[e] & !mask == 0))
                .collect();
            let index: HashMap<u32, usize> =
                masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();
            let size = masks.len();
            let zero = index[&0];
            let one = index[&down_of[star.unit()]];
            let kind = LiftKind::DownSets {
                masks,
                index,
                down_of,
            };
            Ok(LiftedAlgebra {
                star,
                kind,
                size,
                zero,
                one,
            })
        }
        Variety::Jsl => {
            let zero = star.monoid.object.bottom();
            let one = star.unit();
            Ok(LiftedAlgebra {
                size: k,
                kind: LiftKind::Identity,
                star,
                zero,
                one,
            })
        }
        Variety::Vect { .. } => {
            let one = star.unit();
            Ok(LiftedAlgebra {
                size: k,
                kind: LiftKind::Identity,
                star,
                zero: 0,
                one,
            })
        }
    }
}

impl LiftedAlgebra {
    pub fn variety(&self) -> Variety {
        self.star.monoid.object.variety
    }

    /// The S-algebra addition: union / join / vector sum.
    pub fn add(&self, x: usize, y: usize) -> usize {
        match &self.kind {
            LiftKind::Subsets => x | y,
            LiftKind::DownSets { masks, index, .. } => index[&(masks[x] | masks[y])],
            LiftKind::Identity => match self.variety() {
                Variety::Jsl => self.star.monoid.object.join(x, y),
                _ => self.star.monoid.object.vadd(x, y),
            },
        }
    }

    /// The S-algebra multiplication.
    pub fn mul(&self, x: usize, y: usize) -> usize {
        match &self.kind {
            LiftKind::Subsets => {
                let k = self.star.size();
                let mut acc = 0usize;
                for e in 0..k {
                    if x >> e & 1 == 0 {
                        continue;
                    }
                    for e2 in 0..k {
                        if y >> e2 & 1 == 1 {
                            acc |= 1 << self.star.mul(e, e2);
                        }
                    }
                }
                acc
            }
            LiftKind::DownSets {
                masks,
                index,
                down_of,
            } => {
                let k = self.star.size();
                let mut acc = 0u32;
                for e in 0..k {
                    if masks[x] >> e & 1 == 0 {
                        continue;
                    }
                    for e2 in 0..k {
                        if masks[y] >> e2 & 1 == 1 {
                            acc |= down_of[self.star.mul(e, e2)];
                        }
                    }
                }
                index[&acc]
            }
            LiftKind::Identity => self.star.mul(x, y),
        }
    }

    /// The universal map `η : M ∗ N → F(M ∗ N)`.
    pub fn eta(&self, e: usize) -> usize {
        match &self.kind {
            LiftKind::Subsets => 1 << e,
            LiftKind::DownSets { index, down_of, .. } => index[&down_of[e]],
            LiftKind::Identity => e,
        }
    }

    /// The carrier order: mask inclusion for POS, the star order for JSL,
    /// equality for SET and VECT.
    pub fn leq(&self, x: usize, y: usize) -> bool {
        match &self.kind {
            LiftKind::DownSets { masks, .. } => masks[x] & !masks[y] == 0,
            LiftKind::Identity if self.variety() == Variety::Jsl => {
                self.star.monoid.object.leq(x, y)
            }
            _ => x == y,
        }
    }

    /// Scalar action on the carrier (VECT only; identity scalar elsewhere).
    pub fn scale(&self, lambda: u8, x: usize) -> usize {
        match self.variety() {
            Variety::Vect { .. } => self.star.monoid.object.vscale(lambda, x),
            _ => x,
        }
    }

    /// Human-readable form of a lifted element.
    pub fn describe(&self, x: usize) -> String {
        let set = |mask: u64| -> String {
            let ids: Vec<String> = (0..self.star.size())
                .filter(|&e| mask >> e & 1 == 1)
                .map(|e| e.to_string())
                .collect();
            format!("{{{}}}", ids.join(","))
        };
        match &self.kind {
            LiftKind::Subsets => set(x as u64),
            LiftKind::DownSets { masks, .. } => set(masks[x] as u64),
            LiftKind::Identity => self.star.monoid.element_name(x),
        }
    }

    /// Checks every S-algebra law exhaustively, materializing the operation
    /// tables first (hence the `table_size` guard).
    pub fn validate(&self, limits: &Limits) -> Result<ValidationReport> {
        let n = self.size;
        if n > limits.table_size {
            return Err(Error::guard(format!(
                "lifted algebra has {n} elements, law tables capped at {}",
                limits.table_size
            )));
        }
        let mut add = vec![0usize; n * n];
        let mut mul = vec![0usize; n * n];
        for x in 0..n {
            for y in 0..n {
                add[x * n + y] = self.add(x, y);
                mul[x * n + y] = self.mul(x, y);
            }
        }
        let at = |t: &[usize], x: usize, y: usize| t[x * n + y];
        let mut report = ValidationReport::default();
        let s = self.variety().semiring();
        'add_assoc: for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if at(&add, at(&add, x, y), z) != at(&add, x, at(&add, y, z)) {
                        report.push(format!("addition not associative at ({x},{y},{z})"));
                        break 'add_assoc;
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                if at(&add, x, y) != at(&add, y, x) {
                    report.push(format!("addition not commutative at ({x},{y})"));
                    break;
                }
            }
        }
        for x in 0..n {
            if at(&add, self.zero, x) != x {
                report.push(format!("zero not neutral at {x}"));
                break;
            }
        }
        if s == Semiring::Bool {
            for x in 0..n {
                if at(&add, x, x) != x {
                    report.push(format!("addition not idempotent at {x}"));
                    break;
                }
            }
        }
        'mul_assoc: for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if at(&mul, at(&mul, x, y), z) != at(&mul, x, at(&mul, y, z)) {
                        report.push(format!("multiplication not associative at ({x},{y},{z})"));
                        break 'mul_assoc;
                    }
                }
            }
        }
        for x in 0..n {
            if at(&mul, self.one, x) != x || at(&mul, x, self.one) != x {
                report.push(format!("one not neutral at {x}"));
                break;
            }
            if at(&mul, self.zero, x) != self.zero || at(&mul, x, self.zero) != self.zero {
                report.push(format!("zero not absorbing at {x}"));
                break;
            }
        }
        'dist: for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if at(&mul, x, at(&add, y, z)) != at(&add, at(&mul, x, y), at(&mul, x, z))
                        || at(&mul, at(&add, y, z), x) != at(&add, at(&mul, y, x), at(&mul, z, x))
                    {
                        report.push(format!("distributivity fails at ({x},{y},{z})"));
                        break 'dist;
                    }
                }
            }
        }
        for e in 0..self.star.size() {
            for e2 in 0..self.star.size() {
                if at(&mul, self.eta(e), self.eta(e2)) != self.eta(self.star.mul(e, e2)) {
                    report.push(format!("η not multiplicative at ({e},{e2})"));
                    break;
                }
            }
        }
        if self.eta(self.star.unit()) != self.one {
            report.push("η(1∗1) is not the algebra unit".to_string());
        }
        if self.variety() == Variety::Pos {
            'mono: for x in 0..n {
                for y in 0..n {
                    if !self.leq(x, y) {
                        continue;
                    }
                    for z in 0..n {
                        if !self.leq(at(&add, x, z), at(&add, y, z))
                            || !self.leq(at(&mul, x, z), at(&mul, y, z))
                            || !self.leq(at(&mul, z, x), at(&mul, z, y))
                        {
                            report.push(format!("operations not monotone at {x} ≤ {y}, {z}"));
                            break 'mono;
                        }
                    }
                }
            }
        }
        if let Variety::Vect { modulus } = self.variety() {
            'scal: for l in 0..modulus as u8 {
                for x in 0..n {
                    for y in 0..n {
                        if at(&mul, self.scale(l, x), y) != self.scale(l, at(&mul, x, y))
                            || at(&mul, x, self.scale(l, y)) != self.scale(l, at(&mul, x, y))
                        {
                            report.push(format!("multiplication not homogeneous at λ={l}"));
                            break 'scal;
                        }
                    }
                }
            }
        }
        Ok(report)
    }
}
