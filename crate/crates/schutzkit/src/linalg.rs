//! Exact Gaussian elimination over GF(p) for small dense matrices.
//!
//! Used for the VECT decision procedures: rank of the separating-family
//! matrix, decomposition of middle elements over the generator family, span
//! bases for image closures, and linear-combination witnesses for language
//! membership. Pivoting is lexicographically first (scan columns left to
//! right, take the first usable row) so every witness is deterministic.

use crate::variety::Semiring;

/// A dense row-major matrix over GF(p).
#[derive(Debug, Clone)]
pub struct GfMat {
    pub p: u64,
    pub rows: usize,
    pub cols: usize,
    pub a: Vec<u8>,
}

impl GfMat {
    pub fn new(p: u64, rows: usize, cols: usize) -> GfMat {
        GfMat {
            p,
            rows,
            cols,
            a: vec![0; rows * cols],
        }
    }

    pub fn from_rows(p: u64, rows: &[Vec<u8>]) -> GfMat {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = GfMat::new(p, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged rows");
            m.a[i * cols..(i + 1) * cols].copy_from_slice(r);
        }
        m
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.a[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        self.a[r * self.cols + c] = v;
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.reduce().len()
    }

    /// In-place reduction to reduced row echelon form; returns the pivot
    /// columns in order.
    fn reduce(&mut self) -> Vec<usize> {
        let s = Semiring::Gf(self.p);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(i) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            for j in 0..self.cols {
                let (x, y) = (self.get(r, j), self.get(i, j));
                self.set(r, j, y);
                self.set(i, j, x);
            }
            let inv = s.inv(self.get(r, c));
            for j in 0..self.cols {
                let v = s.mul(self.get(r, j), inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i != r && self.get(i, c) != 0 {
                    let f = self.get(i, c);
                    for j in 0..self.cols {
                        let v = s.add(self.get(i, j), s.neg(s.mul(f, self.get(r, j))));
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Solves `A·x = b` with free variables set to zero; `None` if
    /// inconsistent. Deterministic via lexicographically-first pivoting.
    pub fn solve(&self, b: &[u8]) -> Option<Vec<u8>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = GfMat::new(self.p, self.rows, self.cols + 1);
        for (r, &rhs) in b.iter().enumerate() {
            aug.a[r * (self.cols + 1)..r * (self.cols + 1) + self.cols]
                .copy_from_slice(&self.a[r * self.cols..(r + 1) * self.cols]);
            aug.set(r, self.cols, rhs);
        }
        let pivots = aug.reduce();
        // A pivot in the augmented column means the system is inconsistent.
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0u8; self.cols];
        for (k, &c) in pivots.iter().enumerate() {
            x[c] = aug.get(k, self.cols);
        }
        Some(x)
    }
}

/// Incremental independent-row collector: feeds rows one at a time and
/// reports whether each enlarges the span. Used to pick span bases greedily
/// in discovery order.
#[derive(Debug, Clone)]
pub struct SpanBuilder {
    s: Semiring,
    cols: usize,
    /// Echelon rows, each normalized with leading 1; parallel leading column.
    rows: Vec<Vec<u8>>,
    lead: Vec<usize>,
}

impl SpanBuilder {
    pub fn new(p: u64, cols: usize) -> SpanBuilder {
        SpanBuilder {
            s: Semiring::Gf(p),
            cols,
            rows: Vec::new(),
            lead: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the current echelon; returns `true` iff `v` was
    /// independent (and is now incorporated).
    pub fn insert(&mut self, v: &[u8]) -> bool {
        assert_eq!(v.len(), self.cols);
        let mut v = v.to_vec();
        for (row, &l) in self.rows.iter().zip(&self.lead) {
            if v[l] != 0 {
                let f = v[l];
                for j in 0..self.cols {
                    v[j] = self.s.add(v[j], self.s.neg(self.s.mul(f, row[j])));
                }
            }
        }
        match v.iter().position(|&x| x != 0) {
            None => false,
            Some(l) => {
                let inv = self.s.inv(v[l]);
                for x in v.iter_mut() {
                    *x = self.s.mul(*x, inv);
                }
                self.rows.push(v);
                self.lead.push(l);
                true
            }
        }
    }
}
