//! Dense exact linear algebra over a [`Field`].

use rand::Rng;

use super::field::{Coeff, Field};

/// Dense row-major matrix of field elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dense {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Coeff>,
}

impl Dense {
    pub fn zero(field: &Field, rows: usize, cols: usize) -> Dense {
        Dense { rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Dense {
        let mut m = Dense::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Coeff {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Coeff) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, field: &Field, other: &Dense) -> Dense {
        assert_eq!(self.cols, other.rows);
        let mut out = Dense::zero(field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if field.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if field.is_zero(b) {
                        continue;
                    }
                    let v = field.add(out.get(i, j), &field.mul(a, b));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn add(&self, field: &Field, other: &Dense) -> Dense {
        Dense {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| field.add(a, b)).collect(),
        }
    }

    pub fn scale(&self, field: &Field, c: &Coeff) -> Dense {
        Dense { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| field.mul(a, c)).collect() }
    }

    pub fn transpose(&self, field: &Field) -> Dense {
        let mut t = Dense::zero(field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn trace(&self, field: &Field) -> Coeff {
        (0..self.rows.min(self.cols)).fold(field.zero(), |acc, i| field.add(&acc, self.get(i, i)))
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self, field: &Field) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !field.is_zero(self.get(i, c))) else { continue };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = field.inv(self.get(r, c)).unwrap();
            for j in c..self.cols {
                let v = field.mul(self.get(r, j), &inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c).clone();
                if field.is_zero(&f) {
                    continue;
                }
                for j in c..self.cols {
                    let v = field.sub(self.get(i, j), &field.mul(&f, self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, field: &Field) -> usize {
        self.clone().rref(field).len()
    }

    /// Basis of the right null space, one vector per free column.
    pub fn nullspace(&self, field: &Field) -> Vec<Vec<Coeff>> {
        let mut m = self.clone();
        let pivots = m.rref(field);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![field.zero(); self.cols];
                v[f] = field.one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = field.neg(m.get(r, f));
                }
                v
            })
            .collect()
    }

    /// Inverse of a square matrix, if invertible.
    pub fn inverse(&self, field: &Field) -> Option<Dense> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Dense::zero(field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, field.one());
        }
        let piv = aug.rref(field);
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Dense::zero(field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    /// Random linear combination of `mats` with coefficients drawn from `rng`.
    pub fn random_combination<R: Rng + ?Sized>(field: &Field, mats: &[Dense], rows: usize, cols: usize, rng: &mut R) -> Dense {
        let mut acc = Dense::zero(field, rows, cols);
        for m in mats {
            let c = field.random(rng);
            acc = acc.add(field, &m.scale(field, &c));
        }
        acc
    }
}

/// Echelonized subspace of `k^n` supporting membership and reduction.
#[derive(Clone, Debug)]
pub struct Subspace {
    pub dim_ambient: usize,
    /// Reduced rows; `pivots[i]` is the pivot column of `rows[i]`.
    pub rows: Vec<Vec<Coeff>>,
    pub pivots: Vec<usize>,
}

impl Subspace {
    pub fn new(field: &Field, dim_ambient: usize, vectors: Vec<Vec<Coeff>>) -> Subspace {
        let mut s = Subspace { dim_ambient, rows: Vec::new(), pivots: Vec::new() };
        for v in vectors {
            s.insert(field, v);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the stored rows.
    pub fn reduce(&self, field: &Field, v: &mut [Coeff]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if field.is_zero(&v[p]) {
                continue;
            }
            let f = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !field.is_zero(r) {
                    *x = field.sub(x, &field.mul(&f, r));
                }
            }
        }
    }

    /// Adds `v`; returns false if it was already in the span.
    pub fn insert(&mut self, field: &Field, mut v: Vec<Coeff>) -> bool {
        self.reduce(field, &mut v);
        let Some(p) = v.iter().position(|c| !field.is_zero(c)) else { return false };
        let inv = field.inv(&v[p]).unwrap();
        for x in v.iter_mut() {
            *x = field.mul(x, &inv);
        }
        // keep the rows fully reduced
        for row in self.rows.iter_mut() {
            if !field.is_zero(&row[p]) {
                let f = row[p].clone();
                for (x, r) in row.iter_mut().zip(&v) {
                    if !field.is_zero(r) {
                        *x = field.sub(x, &field.mul(&f, r));
                    }
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }

    pub fn contains(&self, field: &Field, v: &[Coeff]) -> bool {
        let mut w = v.to_vec();
        self.reduce(field, &mut w);
        w.iter().all(|c| field.is_zero(c))
    }
}
