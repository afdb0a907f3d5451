//! Dense-shaped matrices of sparse polynomials.

use super::poly::{Poly, PolyRing};
use crate::error::{usage, Result};

/// Row-major matrix of polynomials. A `g x r` presentation matrix has one
/// row per generator and one column per relation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Poly>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: vec![Poly::zero(); rows * cols] }
    }

    pub fn identity(ring: &PolyRing, n: usize) -> Matrix {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    /// Scalar matrix `p * I_n`.
    pub fn scalar(p: &Poly, n: usize) -> Matrix {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, p.clone());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Poly>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return usage("matrix rows have different lengths");
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Builds a matrix from column vectors of length `rows`.
    pub fn from_cols(rows: usize, cols: Vec<Vec<Poly>>) -> Matrix {
        let mut m = Matrix::zero(rows, cols.len());
        for (j, col) in cols.into_iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, p) in col.into_iter().enumerate() {
                m.set(i, j, p);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        self.data[i * self.cols + j] = p;
    }

    pub fn entries(&self) -> impl Iterator<Item = &Poly> {
        self.data.iter()
    }

    pub fn column(&self, j: usize) -> Vec<Poly> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<Poly> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn columns(&self) -> Vec<Vec<Poly>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|p| p.is_zero())
    }

    /// True when no entry has a nonzero constant term.
    pub fn is_in_max_ideal(&self) -> bool {
        self.data.iter().all(|p| !p.is_local_unit())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn map(&self, mut f: impl FnMut(&Poly) -> Poly) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(&mut f).collect() }
    }

    pub fn mul(&self, ring: &PolyRing, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix shapes do not compose");
        let mut out = Matrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let prod = ring.mul(a, b);
                    let cur = out.get(i, j);
                    let sum = ring.add(cur, &prod);
                    out.set(i, j, sum);
                }
            }
        }
        out
    }

    pub fn add(&self, ring: &PolyRing, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| ring.add(a, b)).collect(),
        }
    }

    pub fn scale(&self, ring: &PolyRing, p: &Poly) -> Matrix {
        self.map(|a| ring.mul(a, p))
    }

    /// Side-by-side concatenation; all parts need the same row count.
    pub fn hstack(rows: usize, parts: &[&Matrix]) -> Matrix {
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zero(rows, cols);
        let mut off = 0;
        for m in parts {
            assert_eq!(m.rows, rows, "hstack row mismatch");
            for i in 0..rows {
                for j in 0..m.cols {
                    out.set(i, off + j, m.get(i, j).clone());
                }
            }
            off += m.cols;
        }
        out
    }

    pub fn vstack(cols: usize, parts: &[&Matrix]) -> Matrix {
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut out = Matrix::zero(rows, cols);
        let mut off = 0;
        for m in parts {
            assert_eq!(m.cols, cols, "vstack column mismatch");
            for i in 0..m.rows {
                for j in 0..cols {
                    out.set(off + i, j, m.get(i, j).clone());
                }
            }
            off += m.rows;
        }
        out
    }

    pub fn block_diag(parts: &[&Matrix]) -> Matrix {
        let rows = parts.iter().map(|m| m.rows).sum();
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zero(rows, cols);
        let (mut ro, mut co) = (0, 0);
        for m in parts {
            for i in 0..m.rows {
                for j in 0..m.cols {
                    out.set(ro + i, co + j, m.get(i, j).clone());
                }
            }
            ro += m.rows;
            co += m.cols;
        }
        out
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        let mut out = Matrix::zero(self.rows, idx.len());
        for (nj, &j) in idx.iter().enumerate() {
            for i in 0..self.rows {
                out.set(i, nj, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut out = Matrix::zero(idx.len(), self.cols);
        for (ni, &i) in idx.iter().enumerate() {
            for j in 0..self.cols {
                out.set(ni, j, self.get(i, j).clone());
            }
        }
        out
    }

    /// Drops zero columns.
    pub fn compress(&self) -> Matrix {
        let keep: Vec<usize> = (0..self.cols).filter(|&j| (0..self.rows).any(|i| !self.get(i, j).is_zero())).collect();
        self.select_cols(&keep)
    }

    /// `[a, b; c, d]`, row-major, entries printed by `ring`.
    pub fn display(&self, ring: &PolyRing) -> String {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| ring.display(&ring.import(self.get(i, j)))).collect::<Vec<_>>().join(", "))
            .collect();
        format!("[{}]", rows.join("; "))
    }

    /// Generator degrees `a` (rows) and `b` (columns) with every nonzero entry
    /// `(i,j)` homogeneous of degree `b_j - a_i`, normalized so each connected
    /// block has minimum row degree 0. `None` if no such grading exists.
    pub fn infer_grading(&self, ring: &PolyRing) -> Option<(Vec<i64>, Vec<i64>)> {
        let mut rdeg: Vec<Option<i64>> = vec![None; self.rows];
        let mut cdeg: Vec<Option<i64>> = vec![None; self.cols];
        for e in &self.data {
            if !ring.is_homogeneous(e) {
                return None;
            }
        }
        let deg = |i: usize, j: usize| ring.weighted_degree(self.get(i, j)).map(|d| d as i64);
        for start in 0..self.rows + self.cols {
            let seeded = if start < self.rows { rdeg[start].is_some() } else { cdeg[start - self.rows].is_some() };
            if seeded {
                continue;
            }
            // breadth-first over the bipartite support graph
            let mut comp_rows = Vec::new();
            let mut queue = std::collections::VecDeque::new();
            if start < self.rows {
                rdeg[start] = Some(0);
            } else {
                cdeg[start - self.rows] = Some(0);
            }
            queue.push_back(start);
            while let Some(v) = queue.pop_front() {
                if v < self.rows {
                    comp_rows.push(v);
                    let a = rdeg[v].unwrap();
                    for j in 0..self.cols {
                        if let Some(d) = deg(v, j) {
                            match cdeg[j] {
                                None => {
                                    cdeg[j] = Some(a + d);
                                    queue.push_back(self.rows + j);
                                }
                                Some(b) if b != a + d => return None,
                                _ => {}
                            }
                        }
                    }
                } else {
                    let j = v - self.rows;
                    let b = cdeg[j].unwrap();
                    for i in 0..self.rows {
                        if let Some(d) = deg(i, j) {
                            match rdeg[i] {
                                None => {
                                    rdeg[i] = Some(b - d);
                                    queue.push_back(i);
                                }
                                Some(a) if a != b - d => return None,
                                _ => {}
                            }
                        }
                    }
                }
            }
            if let Some(shift) = comp_rows.iter().map(|&i| rdeg[i].unwrap()).min() {
                for i in 0..self.rows {
                    if comp_rows.contains(&i) {
                        rdeg[i] = Some(rdeg[i].unwrap() - shift);
                    }
                }
                for j in 0..self.cols {
                    let touches = comp_rows.iter().any(|&i| !self.get(i, j).is_zero());
                    if touches {
                        cdeg[j] = Some(cdeg[j].unwrap() - shift);
                    }
                }
            }
        }
        Some((rdeg.into_iter().map(|d| d.unwrap()).collect(), cdeg.into_iter().map(|d| d.unwrap()).collect()))
    }
}
