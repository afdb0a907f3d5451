//! Finitely presented modules and local minimalization.

use std::fmt;

use crate::algebra::{Matrix, Poly};
use crate::error::{usage, Result};

use super::ideal::Ideal;
use super::ring::Ring;

/// `coker(pres)` for a `g x r` matrix over R: `g` generators, `r` relations.
#[derive(Clone)]
pub struct PresentedModule {
    pub ring: Ring,
    pub pres: Matrix,
    /// Set when every entry lies in m and the relations are minimal.
    pub minimal: bool,
}

impl fmt::Debug for PresentedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "coker {}", self.ring.display_matrix(&self.pres))
    }
}

/// Column-list working copy used by the elimination routines.
struct Cols {
    rows: usize,
    cols: Vec<Vec<Poly>>,
}

impl Cols {
    fn from(m: &Matrix) -> Cols {
        Cols { rows: m.rows(), cols: m.columns() }
    }

    fn to_matrix(&self) -> Matrix {
        Matrix::from_cols(self.rows, self.cols.clone())
    }

    /// Prefers constant pivots, then units with the fewest terms.
    fn find_pivot(&self, live: &[usize]) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, usize)> = None;
        for (j, col) in self.cols.iter().enumerate() {
            for &i in live {
                let p = &col[i];
                if !p.is_local_unit() {
                    continue;
                }
                let cost = if p.is_constant() { 0 } else { p.len() };
                if best.map_or(true, |(_, _, c)| cost < c) {
                    best = Some((i, j, cost));
                    if cost == 0 {
                        return Some((i, j));
                    }
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }
}

/// Removes unit entries by row/column elimination. Returns the reduced
/// matrix and the indices of the surviving rows. Each step deletes one row
/// (a generator expressible through the others) and one column. Constant
/// pivots divide exactly; other units use fraction-free updates, which are
/// invertible over the local ring.
pub(crate) fn eliminate_units(ring: &Ring, a: &Matrix) -> (Matrix, Vec<usize>) {
    let mut w = Cols::from(a);
    let mut live: Vec<usize> = (0..a.rows()).collect();
    let field = ring.field();
    while let Some((i, j)) = w.find_pivot(&live) {
        let pivot_col = w.cols[j].clone();
        let u = pivot_col[i].clone();
        let constant = u.is_constant();
        let inv = if constant { field.inv(&u.terms[0].1) } else { None };
        for (l, col) in w.cols.iter_mut().enumerate() {
            if l == j || col[i].is_zero() {
                continue;
            }
            let a_il = col[i].clone();
            match &inv {
                Some(inv) => {
                    let c = ring.ambient.scale(&a_il, inv);
                    for r in 0..col.len() {
                        if !pivot_col[r].is_zero() {
                            col[r] = ring.reduce(&ring.sub(&col[r], &ring.ambient.mul(&c, &pivot_col[r])));
                        }
                    }
                }
                None => {
                    for r in 0..col.len() {
                        let scaled = ring.ambient.mul(&u, &col[r]);
                        let sub = ring.ambient.mul(&a_il, &pivot_col[r]);
                        col[r] = ring.reduce(&ring.sub(&scaled, &sub));
                    }
                }
            }
            col[i] = Poly::zero();
        }
        w.cols.remove(j);
        live.retain(|&r| r != i);
    }
    let m = w.to_matrix().select_rows(&live).compress();
    (m, live)
}

/// Minimal generators of the submodule spanned by the columns of `k`.
/// Returns the kept column indices and generators of the relations among
/// the kept columns (rows indexed by kept columns, entries in m).
pub(crate) fn minimal_generators(ring: &Ring, k: &Matrix) -> (Vec<usize>, Matrix) {
    let k = k.clone();
    let nonzero: Vec<usize> = (0..k.cols()).filter(|&j| (0..k.rows()).any(|i| !k.get(i, j).is_zero())).collect();
    let k = k.select_cols(&nonzero);
    if k.cols() == 0 {
        return (Vec::new(), Matrix::zero(0, 0));
    }
    let syz = ring.kernel(&k);
    let (rel, kept) = eliminate_units(ring, &syz);
    let kept_cols: Vec<usize> = kept.iter().map(|&i| nonzero[i]).collect();
    (kept_cols, rel)
}

impl PresentedModule {
    pub fn new(ring: &Ring, pres: Matrix) -> PresentedModule {
        PresentedModule { ring: ring.clone(), pres: ring.reduce_matrix(&pres), minimal: false }
    }

    pub fn from_rows(ring: &Ring, rows: &[&[&str]]) -> Result<PresentedModule> {
        let mut out = Vec::new();
        for row in rows {
            out.push(row.iter().map(|s| ring.parse(s)).collect::<Result<Vec<_>>>()?);
        }
        Ok(PresentedModule::new(ring, Matrix::from_rows(out)?))
    }

    pub fn free(ring: &Ring, n: usize) -> PresentedModule {
        PresentedModule { ring: ring.clone(), pres: Matrix::zero(n, 0), minimal: true }
    }

    pub fn zero(ring: &Ring) -> PresentedModule {
        PresentedModule::free(ring, 0)
    }

    pub fn residue_field(ring: &Ring) -> PresentedModule {
        Ideal::maximal(ring).quotient()
    }

    /// `(im g + im v) / im v` for matrices with the same row count.
    pub fn subquotient(ring: &Ring, g: &Matrix, v: &Matrix) -> PresentedModule {
        assert_eq!(g.rows(), v.rows(), "subquotient row mismatch");
        let a = g.cols();
        if a == 0 {
            return PresentedModule::zero(ring);
        }
        let both = Matrix::hstack(g.rows(), &[g, v]);
        let ker = ring.kernel(&both);
        let rel = ker.select_rows(&(0..a).collect::<Vec<_>>()).compress();
        PresentedModule::new(ring, rel)
    }

    pub fn ngens(&self) -> usize {
        self.pres.rows()
    }

    pub fn nrels(&self) -> usize {
        self.pres.cols()
    }

    pub fn direct_sum(&self, other: &PresentedModule) -> Result<PresentedModule> {
        if !std::sync::Arc::ptr_eq(&self.ring, &other.ring) {
            return usage("modules live over different rings");
        }
        Ok(PresentedModule {
            ring: self.ring.clone(),
            pres: Matrix::block_diag(&[&self.pres, &other.pres]),
            minimal: self.minimal && other.minimal,
        })
    }

    /// An isomorphic module whose presentation has entries in m and a
    /// minimal set of relations. Generators are a subset of the original ones.
    pub fn minimal_presentation(&self) -> PresentedModule {
        if self.minimal {
            return self.clone();
        }
        let (reduced, _) = eliminate_units(&self.ring, &self.pres);
        let (kept, _) = minimal_generators(&self.ring, &reduced);
        PresentedModule { ring: self.ring.clone(), pres: reduced.select_cols(&kept), minimal: true }
    }

    /// Like [`minimal_presentation`](Self::minimal_presentation), also
    /// returning which original generators survive.
    pub fn minimal_with_generators(&self) -> (PresentedModule, Vec<usize>) {
        let (reduced, rows) = eliminate_units(&self.ring, &self.pres);
        let (kept, _) = minimal_generators(&self.ring, &reduced);
        (PresentedModule { ring: self.ring.clone(), pres: reduced.select_cols(&kept), minimal: true }, rows)
    }

    /// Minimal number of generators.
    pub fn nu(&self) -> usize {
        eliminate_units(&self.ring, &self.pres).1.len()
    }

    pub fn is_zero(&self) -> bool {
        self.nu() == 0
    }

    /// Free of rank `ngens` after minimalization.
    pub fn is_free(&self) -> bool {
        self.minimal_presentation().nrels() == 0
    }

    /// Length over the local ring, `None` if infinite.
    pub fn length(&self) -> Option<usize> {
        self.ring.quotient_length(&self.pres)
    }

    /// Krull dimension; `None` for the zero module.
    pub fn dimension(&self) -> Option<usize> {
        self.ring.quotient_dimension(&self.pres)
    }

    /// Generator degrees making the presentation homogeneous, if any.
    pub fn grading(&self) -> Option<Vec<i64>> {
        self.pres.infer_grading(&self.ring.ambient).map(|(rows, _)| rows)
    }

    /// Canonical printed form: the minimal presentation.
    pub fn display(&self) -> String {
        let m = self.minimal_presentation();
        if m.ngens() == 0 {
            "0".to_string()
        } else if m.nrels() == 0 {
            if m.ngens() == 1 {
                "R".to_string()
            } else {
                format!("R^{}", m.ngens())
            }
        } else {
            format!("coker {}", self.ring.display_matrix(&m.pres))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;
    use crate::modcalc::ring::make_ring;

    fn plane() -> Ring {
        make_ring(&["x", "y"], Field::Prime(32003), None, &[], true).unwrap()
    }

    #[test]
    fn unit_pivot_is_removed() {
        let r = plane();
        let m = PresentedModule::from_rows(&r, &[&["1", "x"], &["0", "y"]]).unwrap();
        let min = m.minimal_presentation();
        assert_eq!(min.pres, Matrix::from_rows(vec![vec![r.parse("y").unwrap()]]).unwrap());
        let again = PresentedModule::new(&r, min.pres.clone()).minimal_presentation();
        assert_eq!(again.pres, min.pres);
        let zero = PresentedModule::from_rows(&r, &[&["x", "1"]]).unwrap();
        assert!(zero.is_zero());
        assert_eq!(zero.display(), "0");
    }

    #[test]
    fn non_constant_units() {
        let r = plane();
        let m = PresentedModule::from_rows(&r, &[&["1+x", "x"], &["y", "y^2"]]).unwrap();
        let min = m.minimal_presentation();
        assert_eq!(min.ngens(), 1);
        // coker = R/(y^2 + x*y^2 - x*y)
        assert_eq!(min.length(), None);
        assert_eq!(min.dimension(), Some(1));
    }

    #[test]
    fn redundant_relations() {
        let r = plane();
        let m = PresentedModule::from_rows(&r, &[&["x", "y", "x+y", "x*y"]]).unwrap();
        let min = m.minimal_presentation();
        assert_eq!((min.ngens(), min.nrels()), (1, 2));
        assert_eq!(min.length(), Some(1));
    }
}
