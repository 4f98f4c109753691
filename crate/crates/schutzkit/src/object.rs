//! Finite carriers for the four varieties and their structure validation.
//!
//! A [`FiniteObject`] stores only what the variety requires: nothing for SET,
//! an order matrix for POS, a join table with bottom for JSL, and a dimension
//! for VECT (the carrier is all `p^d` coordinate tuples; element ids encode
//! coordinates base `p`, least-significant digit first).
//!
//! Law violations are collected into a [`ValidationReport`] naming the
//! offending elements; they are never silent and never hard errors.

use crate::error::{Error, Result};
use crate::variety::Variety;
use std::fmt;

/// Per-variety carrier structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Structure {
    Set,
    /// Row-major `n×n` matrix of the order relation: `leq[x*n + y]` iff
    /// `x ≤ y`. Stored reflexively-transitively closed.
    Pos {
        leq: Vec<bool>,
    },
    /// Row-major `n×n` join table plus the bottom element.
    Jsl {
        join: Vec<usize>,
        bottom: usize,
    },
    /// Dimension `d`; the carrier is all `p^d` tuples.
    Vect {
        dim: usize,
    },
}

/// A finite carrier in one of the four varieties.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteObject {
    pub variety: Variety,
    pub size: usize,
    pub structure: Structure,
}

impl FiniteObject {
    /// A bare set of `n` elements.
    pub fn set(n: usize) -> FiniteObject {
        FiniteObject {
            variety: Variety::Set,
            size: n,
            structure: Structure::Set,
        }
    }

    /// A poset on `n` elements from generating pairs `(x, y)` meaning
    /// `x ≤ y`; the reflexive-transitive closure is taken. Antisymmetry is
    /// *not* enforced here — `validate` reports cycles.
    pub fn pos(n: usize, pairs: &[(usize, usize)]) -> Result<FiniteObject> {
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for &(x, y) in pairs {
            if x >= n || y >= n {
                return Err(Error::input(format!(
                    "order pair ({x},{y}) out of range for size {n}"
                )));
            }
            leq[x * n + y] = true;
        }
        // Floyd–Warshall style transitive closure.
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        Ok(FiniteObject {
            variety: Variety::Pos,
            size: n,
            structure: Structure::Pos { leq },
        })
    }

    /// A poset from a prebuilt (closed) order matrix.
    pub fn pos_from_matrix(n: usize, leq: Vec<bool>) -> FiniteObject {
        assert_eq!(leq.len(), n * n);
        FiniteObject {
            variety: Variety::Pos,
            size: n,
            structure: Structure::Pos { leq },
        }
    }

    /// A join-semilattice from a join table; the bottom (join-neutral
    /// element) is located here and its absence is an input error. Algebraic
    /// laws are checked by `validate`.
    pub fn jsl(n: usize, join: Vec<usize>) -> Result<FiniteObject> {
        if join.len() != n * n {
            return Err(Error::input(format!(
                "join table has {} entries, expected {}",
                join.len(),
                n * n
            )));
        }
        if let Some(&e) = join.iter().find(|&&e| e >= n) {
            return Err(Error::input(format!(
                "join table entry {e} out of range for size {n}"
            )));
        }
        let bottom = (0..n)
            .find(|&b| (0..n).all(|x| join[b * n + x] == x && join[x * n + b] == x))
            .ok_or_else(|| Error::input("join table has no neutral (bottom) element"))?;
        Ok(FiniteObject {
            variety: Variety::Jsl,
            size: n,
            structure: Structure::Jsl { join, bottom },
        })
    }

    /// The GF(p) space of dimension `d`, materialized as all `p^d` tuples.
    /// Guarded at 4096 elements (12 bits).
    pub fn vect(modulus: u64, dim: usize) -> Result<FiniteObject> {
        let variety = Variety::vect(modulus)?;
        let size = (modulus as u128)
            .checked_pow(dim as u32)
            .ok_or_else(|| Error::guard(format!("vect carrier GF({modulus})^{dim} overflows")))?;
        if size > 4096 {
            return Err(Error::guard(format!(
                "vect carrier GF({modulus})^{dim} has {size} elements (cap 4096)"
            )));
        }
        Ok(FiniteObject {
            variety,
            size: size as usize,
            structure: Structure::Vect { dim },
        })
    }

    /// `x ≤ y` in the carrier order: the stored order for POS, the induced
    /// order for JSL, equality for SET/VECT.
    pub fn leq(&self, x: usize, y: usize) -> bool {
        match &self.structure {
            Structure::Set | Structure::Vect { .. } => x == y,
            Structure::Pos { leq } => leq[x * self.size + y],
            Structure::Jsl { join, .. } => join[x * self.size + y] == y,
        }
    }

    pub fn join(&self, x: usize, y: usize) -> usize {
        match &self.structure {
            Structure::Jsl { join, .. } => join[x * self.size + y],
            _ => panic!("join on a non-JSL object"),
        }
    }

    pub fn bottom(&self) -> usize {
        match &self.structure {
            Structure::Jsl { bottom, .. } => *bottom,
            _ => panic!("bottom on a non-JSL object"),
        }
    }

    pub fn dim(&self) -> usize {
        match &self.structure {
            Structure::Vect { dim } => *dim,
            _ => panic!("dim on a non-VECT object"),
        }
    }

    pub fn modulus(&self) -> u64 {
        match self.variety {
            Variety::Vect { modulus } => modulus,
            _ => panic!("modulus on a non-VECT object"),
        }
    }

    /// Base-p digits of a VECT element id, least significant first.
    pub fn coords(&self, x: usize) -> Vec<u8> {
        let (p, d) = (self.modulus() as usize, self.dim());
        let mut x = x;
        let mut out = Vec::with_capacity(d);
        for _ in 0..d {
            out.push((x % p) as u8);
            x /= p;
        }
        out
    }

    pub fn id_of_coords(&self, coords: &[u8]) -> usize {
        let p = self.modulus() as usize;
        debug_assert_eq!(coords.len(), self.dim());
        coords.iter().rev().fold(0, |acc, &c| acc * p + c as usize)
    }

    /// Componentwise VECT addition on element ids.
    pub fn vadd(&self, x: usize, y: usize) -> usize {
        let p = self.modulus() as usize;
        let (a, b) = (self.coords(x), self.coords(y));
        let sum: Vec<u8> = a
            .iter()
            .zip(&b)
            .map(|(&u, &v)| ((u as usize + v as usize) % p) as u8)
            .collect();
        self.id_of_coords(&sum)
    }

    /// Scalar action on element ids.
    pub fn vscale(&self, lambda: u8, x: usize) -> usize {
        let p = self.modulus() as usize;
        let scaled: Vec<u8> = self
            .coords(x)
            .iter()
            .map(|&u| ((u as usize * lambda as usize) % p) as u8)
            .collect();
        self.id_of_coords(&scaled)
    }

    /// Checks the structure invariants of this carrier.
    pub fn validate(&self) -> ValidationReport {
        let n = self.size;
        let mut report = ValidationReport::default();
        match &self.structure {
            Structure::Set => {}
            Structure::Pos { leq } => {
                for x in 0..n {
                    if !leq[x * n + x] {
                        report.push(format!("reflexivity violated at {x}"));
                    }
                    for y in 0..n {
                        if x != y && leq[x * n + y] && leq[y * n + x] {
                            report.push(format!("antisymmetry violated at ({x},{y})"));
                        }
                        for z in 0..n {
                            if leq[x * n + y] && leq[y * n + z] && !leq[x * n + z] {
                                report.push(format!("transitivity violated at ({x},{y},{z})"));
                            }
                        }
                    }
                }
            }
            Structure::Jsl { join, bottom } => {
                for x in 0..n {
                    if join[x * n + x] != x {
                        report.push(format!("join not idempotent at {x}"));
                    }
                    if join[*bottom * n + x] != x || join[x * n + *bottom] != x {
                        report.push(format!("bottom not neutral at {x}"));
                    }
                    for y in 0..n {
                        if join[x * n + y] != join[y * n + x] {
                            report.push(format!("join not commutative at ({x},{y})"));
                        }
                        for z in 0..n {
                            if join[join[x * n + y] * n + z] != join[x * n + join[y * n + z]] {
                                report.push(format!("join not associative at ({x},{y},{z})"));
                            }
                        }
                    }
                }
            }
            Structure::Vect { dim } => {
                let expected = (self.modulus() as u128).pow(*dim as u32);
                if expected != n as u128 {
                    report.push(format!("vect carrier size {n} ≠ p^d = {expected}"));
                }
            }
        }
        let matches = matches!(
            (&self.variety, &self.structure),
            (Variety::Set, Structure::Set)
                | (Variety::Pos, Structure::Pos { .. })
                | (Variety::Jsl, Structure::Jsl { .. })
                | (Variety::Vect { .. }, Structure::Vect { .. })
        );
        if !matches {
            report.push(format!("structure does not match variety {}", self.variety));
        }
        report
    }
}

/// Outcome of a structure or law check: empty iff everything holds.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn push(&mut self, violation: String) {
        self.violations.push(violation);
    }

    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn merge(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            f.write_str("valid")
        } else {
            write!(
                f,
                "{} violation(s): {}",
                self.violations.len(),
                self.violations.join("; ")
            )
        }
    }
}
