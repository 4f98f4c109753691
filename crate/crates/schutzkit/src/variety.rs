//! The four commutative varieties and the output semiring `S`.
//!
//! A variety fixes both the carrier structure of every object (nothing, a
//! partial order, a join operation with bottom, or a GF(p) linear structure)
//! and the semiring the recognition machinery maps into: the Boolean
//! semiring `{0,1}` with `1 + 1 = 1` for `SET`/`POS`/`JSL`, and the prime
//! field GF(p) for `VECT`.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// One of the four supported commutative varieties.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variety {
    /// Plain sets; D-monoids are ordinary finite monoids.
    Set,
    /// Partially ordered sets; D-monoids are ordered monoids.
    Pos,
    /// Join-semilattices with bottom; D-monoids are idempotent semirings.
    Jsl,
    /// GF(p) vector spaces; D-monoids are finite-dimensional associative
    /// algebras.
    Vect {
        /// The prime field modulus.
        modulus: u64,
    },
}

impl Variety {
    /// Builds a `Vect` tag, rejecting non-prime or oversized moduli.
    pub fn vect(modulus: u64) -> Result<Variety> {
        if !is_prime(modulus) {
            return Err(Error::input(format!(
                "modulus must be prime, got {modulus}"
            )));
        }
        if modulus > 251 {
            return Err(Error::guard(format!(
                "modulus {modulus} too large (maximum supported prime is 251)"
            )));
        }
        Ok(Variety::Vect { modulus })
    }

    /// The output semiring `S` attached to this variety.
    pub fn semiring(&self) -> Semiring {
        match self {
            Variety::Set | Variety::Pos | Variety::Jsl => Semiring::Bool,
            Variety::Vect { modulus } => Semiring::Gf(*modulus),
        }
    }

    /// The tag string used by the JSON document format.
    pub fn tag(&self) -> &'static str {
        match self {
            Variety::Set => "set",
            Variety::Pos => "pos",
            Variety::Jsl => "jsl",
            Variety::Vect { .. } => "vect",
        }
    }
}

impl fmt::Display for Variety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variety::Vect { modulus } => write!(f, "vect(GF({modulus}))"),
            v => f.write_str(v.tag()),
        }
    }
}

/// The finite output semiring: Boolean `{0,1}` (with idempotent addition) or
/// GF(p). Elements are represented as `u8` digits `0..size`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Semiring {
    Bool,
    Gf(u64),
}

impl Semiring {
    pub fn size(&self) -> usize {
        match self {
            Semiring::Bool => 2,
            Semiring::Gf(p) => *p as usize,
        }
    }

    pub fn zero(&self) -> u8 {
        0
    }

    pub fn one(&self) -> u8 {
        1
    }

    pub fn add(&self, a: u8, b: u8) -> u8 {
        match self {
            Semiring::Bool => a | b,
            Semiring::Gf(p) => ((a as u64 + b as u64) % p) as u8,
        }
    }

    pub fn mul(&self, a: u8, b: u8) -> u8 {
        match self {
            Semiring::Bool => a & b,
            Semiring::Gf(p) => ((a as u64 * b as u64) % p) as u8,
        }
    }

    pub fn neg(&self, a: u8) -> u8 {
        match self {
            Semiring::Bool => a, // additively idempotent; no inverses, unused
            Semiring::Gf(p) => ((p - a as u64) % p) as u8,
        }
    }

    /// Multiplicative inverse of a nonzero element (GF(p) via Fermat).
    pub fn inv(&self, a: u8) -> u8 {
        debug_assert!(a != 0, "inverse of zero");
        match self {
            Semiring::Bool => 1,
            Semiring::Gf(p) => pow_mod(a as u64, p - 2, *p) as u8,
        }
    }

    /// The order on `S`: `0 < 1` for the Boolean semiring, equality for GF(p).
    pub fn leq(&self, a: u8, b: u8) -> bool {
        match self {
            Semiring::Bool => a <= b,
            Semiring::Gf(_) => a == b,
        }
    }

    /// Checks that a digit is a valid element.
    pub fn contains(&self, a: u8) -> bool {
        (a as usize) < self.size()
    }

    /// Sum of a slice of digits.
    pub fn sum(&self, xs: impl IntoIterator<Item = u8>) -> u8 {
        xs.into_iter().fold(self.zero(), |acc, x| self.add(acc, x))
    }
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Simple deterministic primality test (inputs are small moduli).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}
