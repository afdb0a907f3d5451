//! Perfect morphisms and links, CI-links of ideals, Yoshino-Isogawa links,
//! MCM approximations and the codimension-one linkage criteria.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{Matrix, Poly};
use crate::error::{invariant, precondition, usage, Error, Result};
use crate::modcalc::invariants::{annihilator, classify, invariants, regular_sequence_in, Extended};
use crate::modcalc::iso::{is_isomorphic, is_stably_equivalent, is_surjective, is_well_defined, strip_free_summands, surjection};
use crate::modcalc::resolution::{dual, ext, resolve, syzygy, transpose};
use crate::modcalc::{Ideal, PresentedModule, Ring};

/// A surjection `source -> target` from a perfect module of the same
/// codimension. `map` sends the generators of `source` to combinations of
/// the generators of `target`.
#[derive(Clone, Debug)]
pub struct PerfectMorphism {
    pub source: PresentedModule,
    pub target: PresentedModule,
    pub map: Matrix,
    pub kernel: PresentedModule,
    /// Columns generating the kernel inside the free cover of `source`.
    pub kernel_gens: Matrix,
    pub codim: usize,
}

fn same_ring(a: &PresentedModule, b: &PresentedModule) -> Result<()> {
    if !Arc::ptr_eq(&a.ring, &b.ring) {
        return usage("modules live over different rings");
    }
    Ok(())
}

fn first_rows(m: &Matrix, n: usize) -> Matrix {
    m.select_rows(&(0..n).collect::<Vec<_>>())
}

/// `{u : phi u ∈ im A}` as columns, for `phi: R^p -> coker A`.
fn preimage(ring: &Ring, phi: &Matrix, a: &Matrix) -> Matrix {
    let p = phi.cols();
    if phi.rows() == 0 {
        return Matrix::identity(&ring.ambient, p);
    }
    first_rows(&ring.kernel(&Matrix::hstack(phi.rows(), &[phi, a])), p).compress()
}

/// `I_n ⊗ (x_1 ... x_r)`, an `n x nr` block matrix.
fn x_blocks(xs: &[Poly], n: usize) -> Matrix {
    let r = xs.len();
    let mut m = Matrix::zero(n, n * r);
    for i in 0..n {
        for (j, x) in xs.iter().enumerate() {
            m.set(i, i * r + j, x.clone());
        }
    }
    m
}

/// Generators `a` of `{a : C a ∈ x R^n}` for the columns of `c`.
fn relations_mod(ring: &Ring, c: &Matrix, xs: &[Poly]) -> Matrix {
    let t = c.cols();
    if c.rows() == 0 {
        return Matrix::identity(&ring.ambient, t);
    }
    let xb = x_blocks(xs, c.rows());
    first_rows(&ring.kernel(&Matrix::hstack(c.rows(), &[c, &xb])), t).compress()
}

fn cm_codim(m: &PresentedModule) -> Result<usize> {
    classify(m)?
        .is_cm_of_codim
        .ok_or_else(|| Error::Precondition("module is not Cohen-Macaulay".into()))
}

impl PerfectMorphism {
    /// Validates and builds a perfect morphism.
    pub fn new(source: PresentedModule, target: PresentedModule, map: Matrix) -> Result<PerfectMorphism> {
        same_ring(&source, &target)?;
        let ring = source.ring.clone();
        if map.rows() != target.ngens() || map.cols() != source.ngens() {
            return usage("map shape does not match the generators of source and target");
        }
        let map = ring.reduce_matrix(&map);
        let sc = classify(&source)?;
        let r = if target.is_zero() {
            sc.is_cm_of_codim.unwrap_or(0)
        } else {
            classify(&target)?
                .is_cm_of_codim
                .ok_or_else(|| Error::Precondition("target is not Cohen-Macaulay".into()))?
        };
        if !sc.is_perfect || (sc.is_cm_of_codim != Some(r) && !source.is_zero()) {
            return precondition(format!("source is not a perfect module of codimension {r}"));
        }
        if !is_well_defined(&ring, &map, &source.pres, &target.pres) {
            return precondition("map does not respect the relations of the source");
        }
        if !is_surjective(&ring, &map, &target.pres) {
            return precondition("map is not surjective");
        }
        let gens = preimage(&ring, &map, &target.pres);
        let kernel = PresentedModule::subquotient(&ring, &gens, &source.pres);
        Ok(PerfectMorphism { source, target, map, kernel, kernel_gens: gens, codim: r })
    }
}

/// `P = (R/x)^ν -> M` with `x` a regular sequence in `ann M`.
pub fn perfect_morphism(m: &PresentedModule) -> Result<PerfectMorphism> {
    let ring = &m.ring;
    let r = cm_codim(m)?;
    let target = m.minimal_presentation();
    let xs = regular_sequence_in(&annihilator(&target), r)?;
    let nu = target.ngens();
    let source = PresentedModule::new(ring, x_blocks(&xs, nu));
    PerfectMorphism::new(source, target, Matrix::identity(&ring.ambient, nu))
}

/// `L_f M = Ext^r(Ker f, R)`.
pub fn perfect_link(f: &PerfectMorphism) -> Result<PresentedModule> {
    let l = ext(&f.kernel, f.codim)?;
    if !l.is_zero() && classify(&l)?.is_cm_of_codim != Some(f.codim) {
        return invariant("perfect link is not Cohen-Macaulay of the expected codimension");
    }
    Ok(l)
}

/// The perfect morphism `Ext^r(P, R) -> L_f M` induced by dualizing
/// `0 -> Ker f -> P -> M -> 0`. Both Ext modules are computed as
/// `Hom_S(-, S)` for `S = R/(x)`, `x` a regular sequence annihilating `P`;
/// the map is restriction of functionals to the kernel.
pub fn induced_morphism(f: &PerfectMorphism) -> Result<PerfectMorphism> {
    let ring = &f.source.ring;
    let r = f.codim;
    let xs = regular_sequence_in(&annihilator(&f.source), r)?;
    let b = &f.source.pres;
    let p = b.rows();
    let c = if b.cols() == 0 {
        Matrix::identity(&ring.ambient, p)
    } else {
        let bt = b.transpose();
        let xb = x_blocks(&xs, bt.rows());
        first_rows(&ring.kernel(&Matrix::hstack(bt.rows(), &[&bt, &xb])), p).compress()
    };
    let t = c.cols();
    let rel_p = relations_mod(ring, &c, &xs);
    let h = ring.mat_mul(&f.kernel_gens.transpose(), &c);
    let rel_l = relations_mod(ring, &h, &xs);
    let source = PresentedModule::new(ring, rel_p);
    let target = PresentedModule::new(ring, rel_l);
    PerfectMorphism::new(source, target, Matrix::identity(&ring.ambient, t))
}

/// `L_g L_f M` for the induced perfect morphism `g`; checked to be `≅ M`.
pub fn double_link(f: &PerfectMorphism) -> Result<PresentedModule> {
    let g = induced_morphism(f)?;
    let back = perfect_link(&g)?;
    if !is_isomorphic(&back, &f.target)? {
        return invariant("double perfect link does not recover the module");
    }
    Ok(back)
}

/// `(xR : I)` for a regular sequence `x ⊆ I`.
pub fn ci_link(i: &Ideal, xs: &[Poly]) -> Result<Ideal> {
    let ring = &i.ring;
    let mut q = Ideal::zero(ring);
    for x in xs {
        if !i.contains(x) {
            return precondition(format!("{} is not in the ideal", ring.display_poly(x)));
        }
        if ring.reduce(x).is_local_unit() || !q.colon_element(x)?.is_subset(&q) {
            return precondition(format!("{} is not regular modulo the previous elements", ring.display_poly(x)));
        }
        q = q.sum(&Ideal::new(ring, vec![x.clone()]))?;
    }
    q.colon(i)
}

fn require_mcm(m: &PresentedModule) -> Result<()> {
    if !classify(m)?.is_mcm {
        return precondition("module is not maximal Cohen-Macaulay");
    }
    Ok(())
}

/// `λM = Hom(ΩM, R)`.
pub fn yi_link(m: &PresentedModule) -> Result<PresentedModule> {
    require_mcm(m)?;
    yi_link_unchecked(m)
}

fn yi_link_unchecked(m: &PresentedModule) -> Result<PresentedModule> {
    Ok(dual(&syzygy(m, 1)?)?.minimal_presentation())
}

/// `Ω^{-i} M`, iterating `M ↦ (Ω(M*))*`.
pub fn cosyzygy(m: &PresentedModule, i: usize) -> Result<PresentedModule> {
    require_mcm(m)?;
    cosyzygy_unchecked(m, i)
}

fn cosyzygy_unchecked(m: &PresentedModule, i: usize) -> Result<PresentedModule> {
    let mut cur = m.minimal_presentation();
    for _ in 0..i {
        cur = dual(&syzygy(&dual(&cur)?, 1)?)?.minimal_presentation();
    }
    Ok(cur)
}

/// Stable part of `Ω^{-i} Ω^i M` with `i = dim R - depth M`.
pub fn mcm_approximation(m: &PresentedModule) -> Result<PresentedModule> {
    let inv = invariants(m)?;
    let i = match inv.depth {
        Extended::PosInf => return Ok(PresentedModule::zero(&m.ring)),
        Extended::Fin(d) => m.ring.dim - d as usize,
        Extended::NegInf => return invariant("negative depth"),
    };
    let x = cosyzygy_unchecked(&syzygy(m, i)?, i)?;
    Ok(strip_free_summands(&x)?.stable_part)
}

/// `P = M ⊕ Ext^r(N, R) -> M`, whose link is `N`.
pub fn direct_link_of_perfects(m: &PresentedModule, n: &PresentedModule) -> Result<PerfectMorphism> {
    same_ring(m, n)?;
    let (cm, cn) = (classify(m)?, classify(n)?);
    if !cm.is_perfect || !cn.is_perfect || cm.is_cm_of_codim != cn.is_cm_of_codim {
        return precondition("both modules must be perfect of the same codimension");
    }
    let r = cm.is_cm_of_codim.unwrap_or(0);
    let ring = &m.ring;
    let m = m.minimal_presentation();
    let e = ext(n, r)?;
    let source = m.direct_sum(&e)?;
    let g = m.ngens();
    let map = Matrix::hstack(g, &[&Matrix::identity(&ring.ambient, g), &Matrix::zero(g, e.ngens())]);
    let f = PerfectMorphism::new(source, m, map)?;
    if !is_isomorphic(&perfect_link(&f)?, n)? {
        return invariant("direct link of perfect modules does not reach the second module");
    }
    Ok(f)
}

/// Free ranks to add so that stably equivalent modules become isomorphic.
fn pads(a: &PresentedModule, b: &PresentedModule) -> Result<(usize, usize)> {
    let fa = strip_free_summands(a)?.free_rank;
    let fb = strip_free_summands(b)?.free_rank;
    let top = fa.max(fb);
    Ok((top - fa, top - fb))
}

/// Perfect morphisms of `M` and `N` with isomorphic kernels, for modules
/// of codimension at most one whose syzygies are stably equivalent.
pub fn match_kernels(m: &PresentedModule, n: &PresentedModule) -> Result<(PerfectMorphism, PerfectMorphism)> {
    same_ring(m, n)?;
    let ring = m.ring.clone();
    let (r, rn) = (cm_codim(m)?, cm_codim(n)?);
    if r != rn {
        return precondition("modules have different codimensions");
    }
    if r >= 2 {
        return Err(Error::Precondition("matching kernels is only supported in codimension at most 1".into()));
    }
    let (om, on) = (syzygy(m, r)?, syzygy(n, r)?);
    if !is_stably_equivalent(&om, &on)? {
        return precondition("syzygies not stably equivalent");
    }
    let (f, g) = if r == 0 {
        let (a, b) = pads(&syzygy(m, 1)?, &syzygy(n, 1)?)?;
        (free_cover(&ring, m, a)?, free_cover(&ring, n, b)?)
    } else {
        pushout_pair(&ring, m, n)?
    };
    if !is_isomorphic(&f.kernel, &g.kernel)? {
        return invariant("constructed perfect morphisms have non-isomorphic kernels");
    }
    Ok((f, g))
}

/// `R^{ν+extra} -> M`, zero on the extra summand.
fn free_cover(ring: &Ring, m: &PresentedModule, extra: usize) -> Result<PerfectMorphism> {
    let m = m.minimal_presentation();
    let g = m.ngens();
    let map = Matrix::hstack(g, &[&Matrix::identity(&ring.ambient, g), &Matrix::zero(g, extra)]);
    PerfectMorphism::new(PresentedModule::free(ring, g + extra), m, map)
}

fn pushout_pair(ring: &Ring, m: &PresentedModule, n: &PresentedModule) -> Result<(PerfectMorphism, PerfectMorphism)> {
    let rm = resolve(m, 2)?;
    let rn = resolve(n, 2)?;
    let (am, an) = (rm.diff(1).unwrap(), rn.diff(1).unwrap());
    let (mg, ng) = (am.rows(), an.rows());
    let om = PresentedModule { ring: ring.clone(), pres: fit(rm.diff(2).unwrap(), am.cols()), minimal: true };
    let on = PresentedModule { ring: ring.clone(), pres: fit(rn.diff(2).unwrap(), an.cols()), minimal: true };
    let (a, b) = pads(&om, &on)?;
    // f: (R/x)^m -> M with kernel C = ΩM / xR^m
    let target_m = PresentedModule { ring: ring.clone(), pres: am.clone(), minimal: true };
    let x = regular_sequence_in(&annihilator(&target_m), 1)?;
    let f = PerfectMorphism::new(
        PresentedModule::new(ring, x_blocks(&x, mg)),
        target_m,
        Matrix::identity(&ring.ambient, mg),
    )?;
    // θ: ΩM ⊕ R^a ≅ ΩN ⊕ R^b
    let xm = om.direct_sum(&PresentedModule::free(ring, a))?;
    let xn = on.direct_sum(&PresentedModule::free(ring, b))?;
    let theta = surjection(&xm, &xn, "pushout-iso")?
        .ok_or_else(|| Error::Resource("no isomorphism found between stabilized syzygies".into()))?;
    // generators of xR^m inside ΩM, in terms of the columns of d1
    let s = am.cols();
    let lifts = first_rows(&ring.kernel(&Matrix::hstack(mg, &[&am, &x_blocks(&x, mg)])), s).compress();
    let eps_kernel = Matrix::block_diag(&[&lifts, &Matrix::identity(&ring.ambient, a)]);
    let zeta = Matrix::block_diag(&[&an, &Matrix::identity(&ring.ambient, b)]);
    let z = ring.mat_mul(&ring.mat_mul(&zeta, &theta), &eps_kernel);
    let q = PresentedModule::new(ring, z);
    let target_n = PresentedModule { ring: ring.clone(), pres: an.clone(), minimal: true };
    let proj = Matrix::hstack(ng, &[&Matrix::identity(&ring.ambient, ng), &Matrix::zero(ng, b)]);
    let g = PerfectMorphism::new(q, target_n, proj)?;
    Ok((f, g))
}

/// A differential with the expected row count (empty when the
/// resolution stopped).
fn fit(d: Matrix, rows: usize) -> Matrix {
    if d.rows() == rows {
        d
    } else {
        Matrix::zero(rows, 0)
    }
}

fn require_codim1(m: &PresentedModule, n: &PresentedModule) -> Result<()> {
    same_ring(m, n)?;
    if cm_codim(m)? != 1 || cm_codim(n)? != 1 {
        return precondition("both modules must be Cohen-Macaulay of codimension 1");
    }
    Ok(())
}

/// `ΩM ≈ ΩN`.
pub fn is_doubly_perfectly_linked(m: &PresentedModule, n: &PresentedModule) -> Result<bool> {
    require_codim1(m, n)?;
    is_stably_equivalent(&syzygy(m, 1)?, &syzygy(n, 1)?)
}

/// `(ΩM)* ≈ ΩN`.
pub fn is_triply_perfectly_linked(m: &PresentedModule, n: &PresentedModule) -> Result<bool> {
    require_codim1(m, n)?;
    is_stably_equivalent(&dual(&syzygy(m, 1)?)?, &syzygy(n, 1)?)
}

pub fn is_perfectly_linked_codim1(m: &PresentedModule, n: &PresentedModule) -> Result<bool> {
    Ok(is_doubly_perfectly_linked(m, n)? || is_triply_perfectly_linked(m, n)?)
}

/// `I ≈ J` as modules, for ideals with `R/I`, `R/J` CM of codimension 1.
pub fn doubly_ci_linked(i: &Ideal, j: &Ideal) -> Result<bool> {
    require_codim1(&i.quotient(), &j.quotient())?;
    is_stably_equivalent(&i.as_module(), &j.as_module())
}

/// Verdict on the four conditions of the main linkage theorem.
#[derive(Clone, Debug, Serialize)]
pub struct LinkageReport {
    /// `L_f M ≅ L_g N`
    pub cond1: bool,
    /// `Ker f ≅ Ker g`
    pub cond2: bool,
    /// `Ω^r M ≈ Ω^r N`
    pub cond3: bool,
    /// `Ω^r L_f M ≈ Ω^r L_g N`
    pub cond4: bool,
    pub witnesses: Vec<(String, String)>,
    pub implication_violations: Vec<String>,
}

pub fn check_main_theorem(m: &PresentedModule, n: &PresentedModule, f: &PerfectMorphism, g: &PerfectMorphism) -> Result<LinkageReport> {
    same_ring(m, n)?;
    if f.codim != g.codim {
        return precondition("perfect morphisms have different codimensions");
    }
    if !is_isomorphic(&f.target, m)? || !is_isomorphic(&g.target, n)? {
        return precondition("perfect morphisms do not cover the given modules");
    }
    let r = f.codim;
    let (lf, lg) = (perfect_link(f)?, perfect_link(g)?);
    let cond1 = is_isomorphic(&lf, &lg)?;
    let cond2 = is_isomorphic(&f.kernel, &g.kernel)?;
    let (sm, sn) = (syzygy(m, r)?, syzygy(n, r)?);
    let cond3 = is_stably_equivalent(&sm, &sn)?;
    let (slf, slg) = (syzygy(&lf, r)?, syzygy(&lg, r)?);
    let cond4 = is_stably_equivalent(&slf, &slg)?;
    let mut violations = Vec::new();
    if cond1 != cond2 {
        violations.push(format!("(1) is {cond1} but (2) is {cond2}"));
    }
    if cond2 && !cond3 {
        violations.push("(2) holds but (3) fails".to_string());
    }
    if cond3 != cond4 {
        violations.push(format!("(3) is {cond3} but (4) is {cond4}"));
    }
    let witnesses = vec![
        ("L_f M".to_string(), lf.display()),
        ("L_g N".to_string(), lg.display()),
        ("Ker f".to_string(), f.kernel.display()),
        ("Ker g".to_string(), g.kernel.display()),
        ("syz^r M".to_string(), sm.display()),
        ("syz^r N".to_string(), sn.display()),
    ];
    Ok(LinkageReport { cond1, cond2, cond3, cond4, witnesses, implication_violations: violations })
}

/// Both stable equivalences `X L_f M ≈ λ Ω^r M` and
/// `Ω^r L_f M ≈ Ω^{r+1} Tr Ω^r M`.
pub fn genyi_check(m: &PresentedModule, f: &PerfectMorphism) -> Result<bool> {
    let r = f.codim;
    let l = perfect_link(f)?;
    let om = syzygy(m, r)?;
    let first = is_stably_equivalent(&mcm_approximation(&l)?, &yi_link_unchecked(&om)?)?;
    let second = is_stably_equivalent(&syzygy(&l, r)?, &syzygy(&transpose(&om)?, r + 1)?)?;
    Ok(first && second)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;
    use crate::modcalc::make_ring;

    fn cusp() -> Ring {
        make_ring(&["x", "y"], Field::Prime(32003), Some(vec![3, 2]), &["x^2-y^3"], true).unwrap()
    }

    fn m_mod(r: &Ring, f: &str) -> PresentedModule {
        let m = Ideal::maximal(r);
        PresentedModule::subquotient(r, &m.row(), &Matrix::from_rows(vec![vec![r.parse(f).unwrap()]]).unwrap())
    }

    fn quot(r: &Ring, gens: &[&str]) -> PresentedModule {
        Ideal::parse(r, gens).unwrap().quotient()
    }

    #[test]
    fn doko_on_residue_field() {
        let r = cusp();
        let k = PresentedModule::residue_field(&r);
        let f = perfect_morphism(&k).unwrap();
        assert!(is_isomorphic(&f.source, &quot(&r, &["x"])).unwrap());
        assert!(is_isomorphic(&f.kernel, &m_mod(&r, "x")).unwrap());
        let l = perfect_link(&f).unwrap();
        assert!(is_isomorphic(&l, &quot(&r, &["x", "y^2"])).unwrap());
        let back = double_link(&f).unwrap();
        assert!(is_isomorphic(&back, &k).unwrap());
    }

    #[test]
    fn example_covers_of_k() {
        let r = cusp();
        let k = PresentedModule::residue_field(&r);
        let p = PresentedModule::from_rows(&r, &[&["x", "y"], &["0", "x"]]).unwrap();
        let one_zero = Matrix::from_rows(vec![vec![r.one(), Poly::zero()]]).unwrap();
        let f = PerfectMorphism::new(p, k.clone(), one_zero.clone()).unwrap();
        assert!(is_isomorphic(&perfect_link(&f).unwrap(), &m_mod(&r, "x^2")).unwrap());
        let q = PresentedModule::from_rows(&r, &[&["y", "x"], &["0", "y"]]).unwrap();
        let g = PerfectMorphism::new(q, k, one_zero).unwrap();
        assert!(is_isomorphic(&perfect_link(&g).unwrap(), &m_mod(&r, "y^2")).unwrap());
    }

    #[test]
    fn ci_links() {
        let r = cusp();
        let m = Ideal::maximal(&r);
        let x = r.parse("x").unwrap();
        let j = ci_link(&m, &[x.clone()]).unwrap();
        assert_eq!(j.display(), "(x, y^2)");
        assert!(ci_link(&j, &[x]).unwrap().equals(&m));
        let i = Ideal::parse(&r, &["x^2", "x*y"]).unwrap();
        assert_eq!(ci_link(&i, &[r.parse("x^2").unwrap()]).unwrap().display(), "(x, y^2)");
        assert!(matches!(ci_link(&m, &[r.parse("x^2-y^3").unwrap()]), Err(Error::Precondition(_))));
    }

    #[test]
    fn linkage_predicates_on_cusp() {
        let r = cusp();
        let k = PresentedModule::residue_field(&r);
        let b = quot(&r, &["x^2", "x*y"]);
        assert!(is_doubly_perfectly_linked(&k, &b).unwrap());
        assert!(is_triply_perfectly_linked(&k, &quot(&r, &["x", "y^2"])).unwrap());
        let (f, g) = match_kernels(&k, &b).unwrap();
        assert!(is_isomorphic(&f.kernel, &g.kernel).unwrap());
        let report = check_main_theorem(&k, &b, &f, &g).unwrap();
        assert!(report.cond1 && report.cond2 && report.cond3 && report.cond4);
        assert!(report.implication_violations.is_empty());
    }

    #[test]
    fn non_linkage_over_a2() {
        let r = make_ring(&["x", "y"], Field::Prime(32003), Some(vec![2, 1]), &["x^2-y^4"], true).unwrap();
        let k = PresentedModule::residue_field(&r);
        let i = quot(&r, &["x", "y^2"]);
        assert!(!is_doubly_perfectly_linked(&k, &i).unwrap());
        assert!(!is_triply_perfectly_linked(&k, &i).unwrap());
        assert!(matches!(match_kernels(&k, &i), Err(Error::Precondition(_))));
        let (f, g) = (perfect_morphism(&k).unwrap(), perfect_morphism(&i).unwrap());
        let rep = check_main_theorem(&k, &i, &f, &g).unwrap();
        assert!(!rep.cond3 && !rep.cond2 && !rep.cond1);
    }

    #[test]
    fn yoshino_isogawa_and_approximation() {
        let r = cusp();
        let m = Ideal::maximal(&r).as_module();
        assert!(yi_link(&PresentedModule::free(&r, 2)).unwrap().is_zero());
        assert!(is_stably_equivalent(&yi_link(&yi_link(&m).unwrap()).unwrap(), &m).unwrap());
        let k = PresentedModule::residue_field(&r);
        assert!(is_stably_equivalent(&mcm_approximation(&k).unwrap(), &m).unwrap());
        assert!(is_stably_equivalent(&cosyzygy(&syzygy(&m, 1).unwrap(), 1).unwrap(), &m).unwrap());
        let f = perfect_morphism(&k).unwrap();
        assert!(genyi_check(&k, &f).unwrap());
    }

    #[test]
    fn perfect_pairs() {
        let plane = make_ring(&["x", "y"], Field::Prime(32003), None, &[], true).unwrap();
        let rx = quot(&plane, &["x"]);
        let ry = quot(&plane, &["y"]);
        let f = direct_link_of_perfects(&rx, &ry).unwrap();
        assert_eq!(f.source.ngens(), 2);
        let g = direct_link_of_perfects(&quot(&plane, &["x", "y"]), &quot(&plane, &["x^2", "y"])).unwrap();
        assert!(is_isomorphic(&perfect_link(&g).unwrap(), &quot(&plane, &["x^2", "y"])).unwrap());
        let h = perfect_morphism(&rx).unwrap();
        assert!(h.kernel.is_zero());
        assert!(is_isomorphic(&double_link(&h).unwrap(), &rx).unwrap());
    }
}
