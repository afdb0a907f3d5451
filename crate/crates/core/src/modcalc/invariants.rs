//! Numerical invariants, Cohen-Macaulay classification and regular
//! sequences.

use std::fmt;

use rand::Rng;
use serde::Serialize;

use crate::algebra::{Matrix, Poly};
use crate::error::{invariant, precondition, Error, Result};

use super::ideal::Ideal;
use super::module::PresentedModule;
use super::resolution::{ext_from, pd_bound, resolve, ProjDim};
use super::ring::Ring;

/// An integer extended by the two infinities used for the zero module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Extended {
    NegInf,
    Fin(i64),
    PosInf,
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::NegInf => write!(f, "-inf"),
            Extended::Fin(n) => write!(f, "{n}"),
            Extended::PosInf => write!(f, "inf"),
        }
    }
}

impl Serialize for Extended {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Extended::Fin(n) => s.serialize_i64(*n),
            other => s.serialize_str(&other.to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantsRecord {
    /// `None` when infinite.
    pub length: Option<usize>,
    pub nu: usize,
    pub type_: usize,
    pub depth: Extended,
    pub dim: Extended,
    pub codim: Extended,
    pub grade: Extended,
    pub pd: ProjDim,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub is_cm_of_codim: Option<usize>,
    pub is_mcm: bool,
    pub is_perfect: bool,
}

/// `{a : aM = 0}`.
pub fn annihilator(m: &PresentedModule) -> Ideal {
    let ring = &m.ring;
    let a = &m.minimal_presentation().pres;
    let g = a.rows();
    if g == 0 {
        return Ideal::unit(ring);
    }
    if a.cols() == 0 {
        return Ideal::zero(ring);
    }
    // a * e_q must lie in im A for every generator e_q
    let mut stacked = Matrix::zero(g * g, 1);
    for q in 0..g {
        stacked.set(q * g + q, 0, ring.one());
    }
    let copies: Vec<&Matrix> = (0..g).map(|_| a).collect();
    let big = Matrix::hstack(g * g, &[&stacked, &Matrix::block_diag(&copies)]);
    let ker = ring.kernel(&big);
    Ideal::new(ring, ker.row(0))
}

/// Generators of `(im A : m)` inside `R^g`, as columns.
fn socle_lift(ring: &Ring, a: &Matrix) -> Matrix {
    let g = a.rows();
    let nv = ring.nvars();
    let mut xs = Matrix::zero(nv * g, g);
    for i in 0..nv {
        for q in 0..g {
            xs.set(i * g + q, q, ring.ambient.var(i));
        }
    }
    let copies: Vec<&Matrix> = (0..nv).map(|_| a).collect();
    let big = Matrix::hstack(nv * g, &[&xs, &Matrix::block_diag(&copies)]);
    let ker = ring.kernel(&big);
    ker.select_rows(&(0..g).collect::<Vec<_>>()).compress()
}

/// The socle `(0 :_M m)` as a module.
pub fn socle(m: &PresentedModule) -> PresentedModule {
    let ring = &m.ring;
    let a = m.minimal_presentation().pres;
    if a.rows() == 0 {
        return PresentedModule::zero(ring);
    }
    PresentedModule::subquotient(ring, &socle_lift(ring, &a), &a)
}

/// Whether `x` is a nonzerodivisor on `coker A`.
pub fn is_regular_on(m: &PresentedModule, x: &Poly) -> bool {
    let ring = &m.ring;
    let a = &m.pres;
    let g = a.rows();
    if g == 0 {
        return true;
    }
    let xi = Matrix::scalar(x, g);
    let ker = ring.kernel(&Matrix::hstack(g, &[&xi, a]));
    let lift = ker.select_rows(&(0..g).collect::<Vec<_>>());
    ring.locally_included(&lift, a)
}

/// Linear forms tried in order when searching for regular elements.
fn linear_candidates(ring: &Ring, budget: usize, salt: &str) -> Vec<Poly> {
    let nv = ring.nvars();
    let amb = &ring.ambient;
    let mut out: Vec<Poly> = (0..nv).map(|i| amb.var(i)).collect();
    for i in 0..nv {
        for j in i + 1..nv {
            out.push(amb.add(&amb.var(i), &amb.var(j)));
        }
    }
    let field = ring.field();
    let mut rng = ring.rng(salt);
    while out.len() < budget {
        let mut p = amb.zero();
        for i in 0..nv {
            let c = field.random(&mut rng);
            p = amb.add(&p, &amb.scale(&amb.var(i), &c));
        }
        if !p.is_zero() {
            out.push(p);
        }
    }
    out
}

/// A maximal M-regular sequence of length `depth` among linear forms.
fn cut_by_regular_sequence(m: &PresentedModule, depth: usize) -> Result<PresentedModule> {
    let ring = &m.ring;
    let mut cur = m.minimal_presentation();
    let candidates = linear_candidates(ring, 40, "type-section");
    for _ in 0..depth {
        let x = candidates
            .iter()
            .find(|x| is_regular_on(&cur, x))
            .ok_or_else(|| Error::Resource("no regular element found on module".into()))?;
        let g = cur.ngens();
        let xi = Matrix::scalar(x, g);
        cur = PresentedModule::new(ring, Matrix::hstack(g, &[&cur.pres, &xi])).minimal_presentation();
    }
    Ok(cur)
}

/// Cohen-Macaulay type: socle dimension after cutting by a maximal regular
/// sequence.
pub fn cm_type(m: &PresentedModule, depth: usize) -> Result<usize> {
    let cut = cut_by_regular_sequence(m, depth)?;
    Ok(socle(&cut).length().unwrap_or(0))
}

/// Nonvanishing pattern of Ext^i(M, R) for `i in 0..=top`, from one
/// resolution.
fn ext_profile(m: &PresentedModule, top: usize) -> Result<(Vec<bool>, ProjDim)> {
    let steps = (top + 1).max(pd_bound(m));
    let res = resolve(m, steps)?;
    let nonzero = (0..=top).map(|i| !ext_from(&res, i).is_zero()).collect();
    Ok((nonzero, res.pd(steps)))
}

pub fn invariants(m: &PresentedModule) -> Result<InvariantsRecord> {
    let ring = &m.ring;
    let m = m.minimal_presentation();
    if m.ngens() == 0 {
        return Ok(InvariantsRecord {
            length: Some(0),
            nu: 0,
            type_: 0,
            depth: Extended::PosInf,
            dim: Extended::NegInf,
            codim: Extended::PosInf,
            grade: Extended::PosInf,
            pd: ProjDim::NegInfinity,
        });
    }
    let d = ring.dim;
    let (nonzero, pd) = ext_profile(&m, d)?;
    let grade = nonzero.iter().position(|&b| b).ok_or_else(|| Error::Invariant("all Ext into R vanish".into()))?;
    let top = nonzero.iter().rposition(|&b| b).unwrap();
    let depth = d - top;
    let dim = m.dimension().expect("nonzero module has a dimension");
    let codim = d - dim;
    if grade != codim {
        return invariant(format!("grade {grade} differs from codimension {codim}"));
    }
    Ok(InvariantsRecord {
        length: m.length(),
        nu: m.ngens(),
        type_: cm_type(&m, depth)?,
        depth: Extended::Fin(depth as i64),
        dim: Extended::Fin(dim as i64),
        codim: Extended::Fin(codim as i64),
        grade: Extended::Fin(grade as i64),
        pd,
    })
}

/// CM of codim r iff Ext^i(M, R) vanishes exactly for i != r, checked up to
/// the number of variables plus one.
pub fn classify(m: &PresentedModule) -> Result<Classification> {
    let m = m.minimal_presentation();
    if m.ngens() == 0 {
        return Ok(Classification { is_cm_of_codim: None, is_mcm: true, is_perfect: true });
    }
    let top = m.ring.nvars() + 1;
    let (nonzero, pd) = ext_profile(&m, top)?;
    let hits: Vec<usize> = (0..=top).filter(|&i| nonzero[i]).collect();
    let r = match hits.as_slice() {
        [r] => Some(*r),
        _ => None,
    };
    Ok(Classification {
        is_cm_of_codim: r,
        is_mcm: r == Some(0),
        is_perfect: r.is_some_and(|r| pd == ProjDim::Finite(r)),
    })
}

/// Elements x_1..x_r of I, each regular modulo the previous ones.
pub fn regular_sequence_in(i: &Ideal, r: usize) -> Result<Vec<Poly>> {
    let ring = &i.ring;
    if r == 0 {
        return Ok(Vec::new());
    }
    if i.height() < r || r > ring.dim {
        return precondition(format!("ideal of height {} holds no regular sequence of length {r}", i.height()));
    }
    let gens: Vec<Poly> = i.lex_sorted_gens().into_iter().filter(|g| !g.is_local_unit()).collect();
    let amb = &ring.ambient;
    let mut candidates = gens.clone();
    for a in 0..gens.len() {
        for b in a + 1..gens.len() {
            candidates.push(amb.sub(&gens[a], &gens[b]));
            candidates.push(amb.add(&gens[a], &gens[b]));
        }
    }
    let field = ring.field();
    let mut rng = ring.rng("regular-sequence");
    while candidates.len() < 40 + gens.len() {
        let mut p = amb.zero();
        for g in &gens {
            let c = field.random(&mut rng);
            let k = rng.gen_range(1..=2u32);
            // occasionally mix in a power to escape degenerate linear spans
            let term = if k == 1 { g.clone() } else { amb.pow(g, k) };
            p = amb.add(&p, &amb.scale(&term, &c));
        }
        if !p.is_zero() {
            candidates.push(ring.reduce(&p));
        }
    }
    let mut seq: Vec<Poly> = Vec::new();
    for _ in 0..r {
        let q = Ideal::new(ring, seq.clone());
        let found = candidates.iter().find(|c| {
            let c = ring.reduce(c);
            !c.is_zero() && !seq.contains(&c) && q.colon_element(&c).is_ok_and(|col| col.is_subset(&q))
        });
        match found {
            Some(c) => seq.push(ring.reduce(c)),
            None => return Err(Error::Resource("regular sequence search exhausted its budget".into())),
        }
    }
    Ok(seq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;
    use crate::modcalc::ring::make_ring;

    fn cusp() -> Ring {
        make_ring(&["x", "y"], Field::Prime(32003), Some(vec![3, 2]), &["x^2-y^3"], true).unwrap()
    }

    fn m_mod(r: &Ring, f: &str) -> PresentedModule {
        // m / (f) presented on the generators x, y
        let m = Ideal::maximal(r);
        let rel = PresentedModule::subquotient(r, &m.row(), &Matrix::from_rows(vec![vec![r.parse(f).unwrap()]]).unwrap());
        rel
    }

    #[test]
    fn example_table() {
        let r = cusp();
        let cases: Vec<(PresentedModule, (usize, usize, usize))> = vec![
            (PresentedModule::residue_field(&r), (1, 1, 1)),
            (Ideal::parse(&r, &["x", "y^2"]).unwrap().quotient(), (1, 1, 2)),
            (Ideal::parse(&r, &["x^2", "x*y"]).unwrap().quotient(), (1, 2, 4)),
            (m_mod(&r, "x^2"), (2, 1, 5)),
            (m_mod(&r, "y^2"), (2, 1, 3)),
        ];
        for (m, (nu, ty, len)) in cases {
            let inv = invariants(&m).unwrap();
            assert_eq!((inv.nu, inv.type_, inv.length), (nu, ty, Some(len)), "{m:?}");
            assert_eq!(inv.codim, Extended::Fin(1));
            assert_eq!(inv.depth, Extended::Fin(0));
        }
    }

    #[test]
    fn free_and_zero() {
        let r = cusp();
        let inv = invariants(&PresentedModule::free(&r, 1)).unwrap();
        assert_eq!((inv.length, inv.nu, inv.type_), (None, 1, 1));
        assert_eq!(inv.pd, ProjDim::Finite(0));
        assert_eq!(inv.codim, Extended::Fin(0));
        let z = invariants(&PresentedModule::zero(&r)).unwrap();
        assert_eq!(z.dim, Extended::NegInf);
        assert_eq!(z.depth, Extended::PosInf);
        assert_eq!(z.pd, ProjDim::NegInfinity);
    }

    #[test]
    fn annihilators() {
        let r = cusp();
        let i = Ideal::parse(&r, &["x", "y^2"]).unwrap();
        assert!(annihilator(&i.quotient()).equals(&i));
        assert!(annihilator(&PresentedModule::free(&r, 1)).is_zero());
        let ann = annihilator(&m_mod(&r, "x^2"));
        assert!(ann.equals(&Ideal::parse(&r, &["x^2", "x*y^2"]).unwrap()));
    }

    #[test]
    fn classification() {
        let r = cusp();
        let k = classify(&PresentedModule::residue_field(&r)).unwrap();
        assert_eq!(k, Classification { is_cm_of_codim: Some(1), is_mcm: false, is_perfect: false });
        let rx = classify(&Ideal::parse(&r, &["x"]).unwrap().quotient()).unwrap();
        assert_eq!(rx, Classification { is_cm_of_codim: Some(1), is_mcm: false, is_perfect: true });
        let plane = make_ring(&["x", "y"], Field::Prime(32003), None, &[], true).unwrap();
        let px = classify(&Ideal::parse(&plane, &["x"]).unwrap().quotient()).unwrap();
        assert!(px.is_perfect);
        let mm = classify(&Ideal::maximal(&r).as_module()).unwrap();
        assert!(mm.is_mcm && !mm.is_perfect);
    }

    #[test]
    fn regular_sequences() {
        let plane = make_ring(&["x", "y"], Field::Prime(32003), None, &[], true).unwrap();
        let s = regular_sequence_in(&Ideal::parse(&plane, &["x"]).unwrap(), 1).unwrap();
        assert_eq!(s, vec![plane.parse("x").unwrap()]);
        let r = cusp();
        let m = Ideal::maximal(&r);
        assert_eq!(regular_sequence_in(&m, 1).unwrap(), vec![r.parse("x").unwrap()]);
        assert!(matches!(regular_sequence_in(&m, 2), Err(Error::Precondition(_))));
        let both = regular_sequence_in(&Ideal::maximal(&plane), 2).unwrap();
        assert_eq!(both.len(), 2);
    }
}
