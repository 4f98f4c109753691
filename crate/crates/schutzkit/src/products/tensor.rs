//! A generic tensor-product oracle for JSL: the quotient of the free
//! semilattice `P(A × B)` by the congruence generated by bilinearity in each
//! argument plus bottom annihilation.
//!
//! The congruence closure runs over all subset masks with a union-find and a
//! worklist: whenever two classes merge, the merge is replayed in every
//! one-atom context, which suffices because any congruence consequence is a
//! chain of single-relation rewrites inside finite unions of atoms.

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::object::{FiniteObject, Structure};
use std::collections::HashMap;

/// The tensor `A ⊗ B` as a JSL object, with the universal bimorphism table
/// and the subset-class structure behind each element.
#[derive(Debug, Clone)]
pub struct TensorObject {
    pub object: FiniteObject,
    /// `(a, b) ↦ tensor element id of t(a, b)`, row-major with stride `|B|`.
    pub t: Vec<usize>,
    /// Element id → smallest subset mask in its congruence class.
    pub class_reps: Vec<u32>,
    pub left_size: usize,
    pub right_size: usize,
}

impl TensorObject {
    pub fn t_of(&self, a: usize, b: usize) -> usize {
        self.t[a * self.right_size + b]
    }
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let grand = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = grand;
            x = grand;
        }
        x
    }

    /// Merges two classes, keeping the smaller root; true if they were apart.
    fn union(&mut self, x: u32, y: u32) -> bool {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx == ry {
            return false;
        }
        let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
        self.parent[hi as usize] = lo;
        true
    }
}

/// Computes `A ⊗ B` for two JSL objects. Guarded by `limits.tensor_pairs`
/// on `|A|·|B|` since the closure walks all `2^(|A||B|)` subsets.
pub fn tensor_jsl_oracle(
    a: &FiniteObject,
    b: &FiniteObject,
    limits: &Limits,
) -> Result<TensorObject> {
    if !matches!(a.structure, Structure::Jsl { .. })
        || !matches!(b.structure, Structure::Jsl { .. })
    {
        return Err(Error::input(
            "tensor_jsl_oracle is defined for JSL objects only",
        ));
    }
    let (la, lb) = (a.size, b.size);
    let pairs = la * lb;
    if pairs > limits.tensor_pairs {
        return Err(Error::guard(format!(
            "tensor oracle needs 2^{pairs} subsets, cap is 2^{}",
            limits.tensor_pairs
        )));
    }
    let atom = |x: usize, y: usize| -> u32 { 1 << (x * lb + y) };
    let total = 1usize << pairs;
    let mut uf = UnionFind::new(total);
    // Ground instances of the defining relations.
    let mut worklist: Vec<(u32, u32)> = Vec::new();
    for x in 0..la {
        for y in 0..lb {
            for y2 in 0..lb {
                worklist.push((atom(x, b.join(y, y2)), atom(x, y) | atom(x, y2)));
            }
        }
    }
    for y in 0..lb {
        for x in 0..la {
            for x2 in 0..la {
                worklist.push((atom(a.join(x, x2), y), atom(x, y) | atom(x2, y)));
            }
        }
    }
    for x in 0..la {
        worklist.push((atom(x, b.bottom()), 0));
    }
    for y in 0..lb {
        worklist.push((atom(a.bottom(), y), 0));
    }
    // Close under unions: replay each merge in every one-atom context.
    while let Some((x, y)) = worklist.pop() {
        if uf.union(x, y) {
            for e in 0..pairs {
                let bit = 1u32 << e;
                worklist.push((x | bit, y | bit));
            }
        }
    }
    // Collect classes; the representative is the smallest member mask.
    let mut rep_to_id: HashMap<u32, usize> = HashMap::new();
    let mut class_reps: Vec<u32> = Vec::new();
    let mut class_of_mask = vec![0usize; total];
    let roots: Vec<u32> = (0..total as u32).map(|m| uf.find(m)).collect();
    let mut ordered_roots: Vec<u32> = roots.clone();
    ordered_roots.sort_unstable();
    ordered_roots.dedup();
    for root in ordered_roots {
        rep_to_id.insert(root, class_reps.len());
        class_reps.push(root);
    }
    for (mask, root) in roots.iter().enumerate() {
        class_of_mask[mask] = rep_to_id[root];
    }
    let size = class_reps.len();
    let mut join = vec![0usize; size * size];
    for x in 0..size {
        for y in 0..size {
            join[x * size + y] = class_of_mask[(class_reps[x] | class_reps[y]) as usize];
        }
    }
    let object = FiniteObject::jsl(size, join)?;
    let t: Vec<usize> = (0..pairs)
        .map(|e| class_of_mask[atom(e / lb, e % lb) as usize])
        .collect();
    Ok(TensorObject {
        object,
        t,
        class_reps,
        left_size: la,
        right_size: lb,
    })
}

/// Checks that `phi` is a JSL isomorphism between two objects.
pub fn jsl_isomorphic(a: &FiniteObject, b: &FiniteObject, phi: &[usize]) -> bool {
    if a.size != b.size || phi.len() != a.size {
        return false;
    }
    let mut seen = vec![false; b.size];
    for &y in phi {
        if y >= b.size || seen[y] {
            return false;
        }
        seen[y] = true;
    }
    (0..a.size).all(|x| (0..a.size).all(|y| phi[a.join(x, y)] == b.join(phi[x], phi[y])))
}

impl TensorObject {
    /// The bimorphism property of `t`: join-preserving and bottom-collapsing
    /// in each argument; `None` if it holds, else a description.
    pub fn bimorphism_violation(&self, a: &FiniteObject, b: &FiniteObject) -> Option<String> {
        let obj = &self.object;
        for x in 0..a.size {
            for y in 0..b.size {
                for y2 in 0..b.size {
                    if self.t_of(x, b.join(y, y2)) != obj.join(self.t_of(x, y), self.t_of(x, y2)) {
                        return Some(format!("right bilinearity fails at ({x},{y},{y2})"));
                    }
                }
            }
            if self.t_of(x, b.bottom()) != obj.bottom() {
                return Some(format!("bottom annihilation fails at left {x}"));
            }
        }
        for y in 0..b.size {
            for x in 0..a.size {
                for x2 in 0..a.size {
                    if self.t_of(a.join(x, x2), y) != obj.join(self.t_of(x, y), self.t_of(x2, y)) {
                        return Some(format!("left bilinearity fails at ({x},{x2},{y})"));
                    }
                }
            }
            if self.t_of(a.bottom(), y) != obj.bottom() {
                return Some(format!("bottom annihilation fails at right {y}"));
            }
        }
        None
    }
}
