//! Minimal free resolutions over the local ring, and the functors built on
//! them: syzygies, transpose, dual and Ext into R.

use crate::algebra::Matrix;
use crate::error::{usage, Result};

use super::module::{eliminate_units, minimal_generators, PresentedModule};

/// A minimal free resolution `... -> F_2 -d2-> F_1 -d1-> F_0 -> M -> 0`.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    pub module: PresentedModule,
    /// `diffs[i-1]` is d_i, a `rank F_{i-1} x rank F_i` matrix.
    pub diffs: Vec<Matrix>,
    /// The last stored differential has no columns: F_s = 0.
    pub complete: bool,
    /// d_{j+2} = d_j for every j at or beyond this index.
    pub periodic_from: Option<usize>,
    rank0: usize,
}

/// Projective dimension, with the zero module at minus infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProjDim {
    NegInfinity,
    Finite(usize),
    Infinite,
    AtLeast(usize),
}

impl std::fmt::Display for ProjDim {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ProjDim::NegInfinity => write!(f, "-inf"),
            ProjDim::Finite(n) => write!(f, "{n}"),
            ProjDim::Infinite => write!(f, "inf"),
            ProjDim::AtLeast(n) => write!(f, ">={n}"),
        }
    }
}

impl FreeResolution {
    /// Rank of F_i, or `None` beyond the computed range.
    pub fn rank(&self, i: usize) -> Option<usize> {
        if i == 0 {
            return Some(self.rank0);
        }
        self.diff(i).map(|d| d.cols())
    }

    /// d_i for i >= 1, using periodicity and termination where they apply.
    pub fn diff(&self, i: usize) -> Option<Matrix> {
        assert!(i >= 1);
        if self.rank0 == 0 {
            return Some(Matrix::zero(0, 0));
        }
        if i <= self.diffs.len() {
            return Some(self.diffs[i - 1].clone());
        }
        if self.complete {
            return Some(Matrix::zero(0, 0));
        }
        let p = self.periodic_from?;
        let j = p + (i - p) % 2;
        Some(self.diffs[j - 1].clone())
    }

    pub fn pd(&self, bound: usize) -> ProjDim {
        if self.rank0 == 0 {
            ProjDim::NegInfinity
        } else if self.complete {
            ProjDim::Finite(self.diffs.len() - 1)
        } else if self.periodic_from.is_some() || self.diffs.len() > self.module.ring.dim {
            // a finite pd is at most depth R = dim R
            ProjDim::Infinite
        } else {
            ProjDim::AtLeast(bound)
        }
    }
}

/// Minimal resolution out to `steps` differentials, stopping early when it
/// terminates or becomes 2-periodic.
pub fn resolve(m: &PresentedModule, steps: usize) -> Result<FreeResolution> {
    if steps == 0 {
        return usage("resolve needs at least one step");
    }
    let ring = &m.ring;
    let (mut k, _) = eliminate_units(ring, &m.pres);
    let rank0 = k.rows();
    let mut res = FreeResolution { module: m.clone(), diffs: Vec::new(), complete: rank0 == 0, periodic_from: None, rank0 };
    if rank0 == 0 {
        return Ok(res);
    }
    for i in 1..=steps {
        let (kept, rel) = minimal_generators(ring, &k);
        let d = k.select_cols(&kept);
        let done = d.cols() == 0;
        res.diffs.push(d);
        if done {
            res.complete = true;
            break;
        }
        if i >= 3 {
            let (cur, old) = (&res.diffs[i - 1], &res.diffs[i - 3]);
            if cur.rows() == old.rows()
                && cur.cols() == old.cols()
                && ring.locally_included(cur, old)
                && ring.locally_included(old, cur)
            {
                res.diffs[i - 1] = old.clone();
                res.periodic_from = Some(i - 2);
                break;
            }
        }
        k = if kept.is_empty() { Matrix::zero(0, 0) } else { rel };
    }
    Ok(res)
}

/// Default step bound for projective-dimension detection.
pub fn pd_bound(m: &PresentedModule) -> usize {
    m.ring.pd_steps.unwrap_or(2 * m.ring.nvars() + 2)
}

/// The i-th syzygy module, presented as coker(d_{i+1}) on F_i.
pub fn syzygy(m: &PresentedModule, i: usize) -> Result<PresentedModule> {
    if i == 0 {
        return Ok(m.minimal_presentation());
    }
    let res = resolve(m, i + 1)?;
    let rank = res.rank(i).unwrap_or(0);
    if rank == 0 {
        return Ok(PresentedModule::zero(&m.ring));
    }
    let d = res.diff(i + 1).unwrap();
    let d = if d.rows() == rank { d } else { Matrix::zero(rank, 0) };
    Ok(PresentedModule { ring: m.ring.clone(), pres: d, minimal: true })
}

/// Coker of the transposed minimal presentation.
pub fn transpose(m: &PresentedModule) -> Result<PresentedModule> {
    let p = m.minimal_presentation();
    Ok(PresentedModule::new(&m.ring, p.pres.transpose()).minimal_presentation())
}

/// Ext^i(M, R), the i-th cohomology of the dualized minimal resolution.
pub fn ext(m: &PresentedModule, i: usize) -> Result<PresentedModule> {
    let res = resolve(m, i + 1)?;
    Ok(ext_from(&res, i))
}

/// Ext^i(M, R) read off an existing resolution that reaches d_{i+1}.
pub fn ext_from(res: &FreeResolution, i: usize) -> PresentedModule {
    let ring = &res.module.ring;
    let rank = res.rank(i).unwrap_or(0);
    if rank == 0 {
        return PresentedModule::zero(ring);
    }
    let next = res.diff(i + 1).expect("resolution too short for Ext");
    let cycles = if next.cols() == 0 { Matrix::identity(&ring.ambient, rank) } else { ring.kernel(&next.transpose()) };
    let bounds = if i == 0 { Matrix::zero(rank, 0) } else { res.diff(i).unwrap().transpose() };
    PresentedModule::subquotient(ring, &cycles, &bounds).minimal_presentation()
}

/// M* = Hom(M, R).
pub fn dual(m: &PresentedModule) -> Result<PresentedModule> {
    ext(m, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;
    use crate::modcalc::ideal::Ideal;
    use crate::modcalc::ring::{make_ring, Ring};

    fn cusp() -> Ring {
        make_ring(&["x", "y"], Field::Prime(32003), Some(vec![3, 2]), &["x^2-y^3"], true).unwrap()
    }

    fn mat(r: &Ring, rows: &[&[&str]]) -> Matrix {
        PresentedModule::from_rows(r, rows).unwrap().pres
    }

    #[test]
    fn residue_field_of_cusp_is_periodic() {
        let r = cusp();
        let k = PresentedModule::residue_field(&r);
        let res = resolve(&k, 4).unwrap();
        assert!(!res.complete);
        assert_eq!(res.periodic_from, Some(2));
        let d2 = res.diff(2).unwrap();
        let d3 = res.diff(3).unwrap();
        let phi = mat(&r, &[&["y", "x"], &["-x", "-y^2"]]);
        let psi = mat(&r, &[&["-y^2", "-x"], &["x", "y"]]);
        assert!(r.locally_included(&d2, &phi) && r.locally_included(&phi, &d2));
        let c3 = PresentedModule::new(&r, d3);
        assert!(crate::modcalc::iso::is_isomorphic(&c3, &PresentedModule::new(&r, psi)).unwrap());
        for i in 1..6 {
            let a = res.diff(i).unwrap();
            let b = res.diff(i + 1).unwrap();
            assert!(r.mat_mul(&a, &b).is_zero());
            assert!(a.is_in_max_ideal());
        }
        assert_eq!(res.pd(6), ProjDim::Infinite);
    }

    #[test]
    fn koszul_over_the_plane() {
        let r = make_ring(&["x", "y"], Field::Prime(32003), None, &[], false).unwrap();
        let k = PresentedModule::residue_field(&r);
        let res = resolve(&k, 3).unwrap();
        assert!(res.complete);
        assert_eq!(res.pd(6), ProjDim::Finite(2));
        let free = PresentedModule::free(&r, 1);
        assert_eq!(resolve(&free, 3).unwrap().pd(6), ProjDim::Finite(0));
    }

    #[test]
    fn ext_of_quotient() {
        let r = cusp();
        let m = Ideal::parse(&r, &["x*y^2", "x^2"]).unwrap().quotient();
        let e = ext(&m, 1).unwrap();
        assert_eq!(e.length(), Some(5));
        assert_eq!(e.nu(), 2);
        assert!(ext(&PresentedModule::free(&r, 1), 1).unwrap().is_zero());
        assert!(dual(&m).unwrap().is_zero());
    }

    #[test]
    fn transpose_of_residue_field() {
        let r = make_ring(&["x", "y"], Field::Prime(32003), None, &["x*y"], true).unwrap();
        let t = transpose(&PresentedModule::residue_field(&r)).unwrap();
        assert_eq!((t.ngens(), t.nrels()), (2, 1));
        assert!(transpose(&PresentedModule::free(&r, 2)).unwrap().is_zero());
    }
}
