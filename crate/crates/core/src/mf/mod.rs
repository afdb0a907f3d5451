//! Matrix factorizations of a hypersurface equation, and summand
//! multiplicities of MCM modules over hypersurfaces.

use crate::algebra::linalg::Dense;
use crate::algebra::{Matrix, Poly, PolyRing};
use crate::error::{invariant, precondition, usage, Error, Result};
use crate::modcalc::invariants::classify;
use crate::modcalc::iso::{constant_part, hom_maps, is_isomorphic, strip_free_summands};
use crate::modcalc::resolution::syzygy;
use crate::modcalc::{PresentedModule, Ring};

/// `(phi, psi)` with `phi * psi = psi * phi = f * I` over the ambient ring.
#[derive(Clone, Debug)]
pub struct MatrixFactorization {
    pub ring: Ring,
    pub f: Poly,
    pub phi: Matrix,
    pub psi: Matrix,
    /// Row and column degrees of `phi`.
    pub grading: (Vec<i64>, Vec<i64>),
}

impl PartialEq for MatrixFactorization {
    fn eq(&self, other: &Self) -> bool {
        self.f == other.f && self.phi == other.phi && self.psi == other.psi
    }
}

fn hypersurface(ring: &Ring) -> Result<Poly> {
    ring.hypersurface_equation()
        .cloned()
        .ok_or_else(|| Error::Precondition("ring is not a hypersurface".into()))
}

/// Determinant by cofactor expansion along the first row.
pub fn determinant(ring: &PolyRing, m: &Matrix) -> Poly {
    let n = m.rows();
    assert_eq!(n, m.cols(), "determinant of a non-square matrix");
    fn rec(ring: &PolyRing, m: &Matrix, rows: &[usize], cols: &[usize]) -> Poly {
        if rows.is_empty() {
            return ring.one();
        }
        let r = rows[0];
        let mut acc = ring.zero();
        for (k, &c) in cols.iter().enumerate() {
            let e = m.get(r, c);
            if e.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let minor = rec(ring, m, &rows[1..], &rest);
            let term = ring.mul(e, &minor);
            acc = if k % 2 == 0 { ring.add(&acc, &term) } else { ring.sub(&acc, &term) };
        }
        acc
    }
    let idx: Vec<usize> = (0..n).collect();
    rec(ring, m, &idx, &idx)
}

/// Classical adjugate.
pub fn adjugate(ring: &PolyRing, m: &Matrix) -> Matrix {
    let n = m.rows();
    let mut adj = Matrix::zero(n, n);
    if n == 1 {
        adj.set(0, 0, ring.one());
        return adj;
    }
    for i in 0..n {
        for j in 0..n {
            let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
            let minor = determinant(ring, &m.select_rows(&rows).select_cols(&cols));
            adj.set(i, j, if (i + j) % 2 == 0 { minor } else { ring.neg(&minor) });
        }
    }
    adj
}

/// `f * phi^{-1}`, when it is a polynomial matrix.
fn complement(ring: &PolyRing, f: &Poly, phi: &Matrix) -> Option<Matrix> {
    let n = phi.rows();
    if n == 0 {
        return Some(Matrix::zero(0, 0));
    }
    let det = determinant(ring, phi);
    if det.is_zero() {
        return None;
    }
    let adj = adjugate(ring, phi);
    let mut psi = Matrix::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            psi.set(i, j, ring.div_exact(&ring.mul(f, adj.get(i, j)), &det)?);
        }
    }
    Some(psi)
}

impl MatrixFactorization {
    /// Validates `phi * psi = psi * phi = f * I` and infers a grading.
    pub fn new(ring: &Ring, phi: Matrix, psi: Matrix) -> Result<MatrixFactorization> {
        let f = hypersurface(ring)?;
        let n = phi.rows();
        if phi.cols() != n || psi.rows() != n || psi.cols() != n {
            return usage("matrix factorization needs square matrices of equal size");
        }
        let amb = &ring.ambient;
        let fi = Matrix::scalar(&f, n);
        if phi.mul(amb, &psi) != fi || psi.mul(amb, &phi) != fi {
            return precondition("phi * psi and psi * phi must both equal f * I");
        }
        let grading = if n == 0 {
            (Vec::new(), Vec::new())
        } else {
            phi.infer_grading(amb).ok_or_else(|| Error::Precondition("factorization is not graded".into()))?
        };
        if n > 0 && psi.infer_grading(amb).is_none() {
            return precondition("factorization is not graded");
        }
        Ok(MatrixFactorization { ring: ring.clone(), f, phi, psi, grading })
    }

    pub fn size(&self) -> usize {
        self.phi.rows()
    }

    /// No unit entries in either matrix.
    pub fn is_reduced(&self) -> bool {
        self.phi.is_in_max_ideal() && self.psi.is_in_max_ideal()
    }
}

/// The factorization whose `phi` is a minimal presentation of the stable
/// part of an MCM module.
pub fn mf_from_module(m: &PresentedModule) -> Result<MatrixFactorization> {
    let ring = &m.ring;
    let f = hypersurface(ring)?;
    if !m.is_zero() && !classify(m)?.is_mcm {
        return precondition("module is not maximal Cohen-Macaulay");
    }
    let stable = strip_free_summands(m)?.stable_part;
    let phi = stable.pres.clone();
    if phi.rows() != phi.cols() {
        return Err(Error::Resource("minimal presentation is not square".into()));
    }
    if phi.rows() > 0 && phi.infer_grading(&ring.ambient).is_none() {
        return precondition("module presentation is not graded");
    }
    let psi = complement(&ring.ambient, &f, &phi)
        .ok_or_else(|| Error::Precondition("presentation does not divide the hypersurface equation".into()))?;
    MatrixFactorization::new(ring, phi, psi)
}

/// `coker phi` over R, minimally presented.
pub fn mf_cokernel(mf: &MatrixFactorization) -> Result<PresentedModule> {
    let m = PresentedModule::new(&mf.ring, mf.phi.clone()).minimal_presentation();
    if !m.is_zero() && !classify(&m)?.is_mcm {
        return invariant("cokernel of a matrix factorization is not maximal Cohen-Macaulay");
    }
    Ok(m)
}

pub fn mf_syzygy(mf: &MatrixFactorization) -> Result<MatrixFactorization> {
    MatrixFactorization::new(&mf.ring, mf.psi.clone(), mf.phi.clone())
}

pub fn mf_dual(mf: &MatrixFactorization) -> Result<MatrixFactorization> {
    MatrixFactorization::new(&mf.ring, mf.phi.transpose(), mf.psi.transpose())
}

/// First constant nonzero entry in row-major order.
fn constant_pivot(m: &Matrix) -> Option<(usize, usize)> {
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let e = m.get(i, j);
            if e.is_constant() && !e.is_zero() {
                return Some((i, j));
            }
        }
    }
    None
}

/// Clears row `i` and column `j` around a constant pivot and deletes them.
fn split_pivot(ring: &PolyRing, m: &Matrix, i: usize, j: usize) -> Matrix {
    let field = ring.field.clone();
    let c = m.get(i, j).terms[0].1.clone();
    let cinv = field.inv(&c).expect("nonzero pivot");
    let mut w = m.clone();
    for k in 0..w.rows() {
        if k == i || w.get(k, j).is_zero() {
            continue;
        }
        let a = ring.scale(w.get(k, j), &cinv);
        for l in 0..w.cols() {
            let v = ring.sub(w.get(k, l), &ring.mul(&a, m.get(i, l)));
            w.set(k, l, v);
        }
    }
    let rows: Vec<usize> = (0..w.rows()).filter(|&k| k != i).collect();
    let cols: Vec<usize> = (0..w.cols()).filter(|&l| l != j).collect();
    // column operations against the pivot only touch row i, which is dropped
    w.select_rows(&rows).select_cols(&cols)
}

/// Strips trivial summands `(1, f)` and `(f, 1)`.
pub fn mf_reduce(mf: &MatrixFactorization) -> Result<MatrixFactorization> {
    let amb = &mf.ring.ambient;
    let (mut phi, mut psi) = (mf.phi.clone(), mf.psi.clone());
    loop {
        if let Some((i, j)) = constant_pivot(&phi) {
            phi = split_pivot(amb, &phi, i, j);
            psi = complement(amb, &mf.f, &phi).ok_or_else(|| Error::Invariant("reduction broke the factorization".into()))?;
        } else if let Some((i, j)) = constant_pivot(&psi) {
            psi = split_pivot(amb, &psi, i, j);
            phi = complement(amb, &mf.f, &psi).ok_or_else(|| Error::Invariant("reduction broke the factorization".into()))?;
        } else {
            break;
        }
    }
    MatrixFactorization::new(&mf.ring, phi, psi)
}

/// Equivalence of the reduced factorizations, tested as isomorphism of
/// their cokernels.
pub fn mf_equivalent(a: &MatrixFactorization, b: &MatrixFactorization) -> Result<bool> {
    if !std::sync::Arc::ptr_eq(&a.ring, &b.ring) || a.f != b.f {
        return usage("factorizations of different equations");
    }
    let (ra, rb) = (mf_reduce(a)?, mf_reduce(b)?);
    if ra.size() != rb.size() {
        return Ok(false);
    }
    is_isomorphic(&mf_cokernel(&ra)?, &mf_cokernel(&rb)?)
}

/// Number of copies of the indecomposable MCM module `m` in a
/// decomposition of `Ω^r c`, `r` the codimension of `c`.
///
/// For indecomposable `M` the pairing `Hom(M, X) x Hom(X, M) -> End(M)/rad`
/// has rank equal to the multiplicity of `M` in `X`. An endomorphism is
/// read off modulo the radical through the trace of its constant part.
pub fn summand_multiplicity(c: &PresentedModule, m: &PresentedModule) -> Result<usize> {
    let ring = &c.ring;
    hypersurface(ring)?;
    let r = classify(c)?
        .is_cm_of_codim
        .ok_or_else(|| Error::Precondition("module is not Cohen-Macaulay".into()))?;
    let x = mf_cokernel(&mf_reduce(&mf_from_module(&syzygy(c, r)?)?)?)?;
    let target = mf_cokernel(&mf_reduce(&mf_from_module(m)?)?)?;
    if target.is_zero() {
        return precondition("summand must be a nonfree module");
    }
    let to_x = hom_maps(&target, &x)?;
    let from_x = hom_maps(&x, &target)?;
    let field = ring.field();
    let mut pairing = Dense::zero(&field, to_x.len(), from_x.len());
    for (i, a) in to_x.iter().enumerate() {
        let a0 = constant_part(ring, a);
        for (j, b) in from_x.iter().enumerate() {
            let b0 = constant_part(ring, b);
            pairing.set(i, j, b0.mul(&field, &a0).trace(&field));
        }
    }
    Ok(pairing.rank(&field))
}
