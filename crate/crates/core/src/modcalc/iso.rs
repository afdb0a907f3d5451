//! Homomorphisms between presented modules, isomorphism and stable
//! equivalence.
//!
//! Two minimally presented modules M, N are isomorphic iff there are maps
//! M -> N and N -> M that are surjective, and a map is surjective iff its
//! constant part hits N/mN (Nakayama). A surjective endomorphism of a
//! finitely generated module is bijective, so surjections both ways force
//! an isomorphism. Surjective maps are searched among seeded random
//! combinations of Hom generators, which can only err towards "false".

use rand::seq::SliceRandom;
use rand::Rng;
use crate::algebra::linalg::Dense;
use crate::algebra::Matrix;
use crate::error::{usage, Result};

use super::module::PresentedModule;
use super::ring::Ring;

/// Number of random combinations tried per surjectivity search.
pub const ISO_DRAWS: usize = 20;

/// Generators of the R-module of maps `coker A -> coker B`, each an `h x g`
/// matrix `phi` on generators with `phi * A ⊆ im B`.
pub fn hom_maps(m: &PresentedModule, n: &PresentedModule) -> Result<Vec<Matrix>> {
    if !std::sync::Arc::ptr_eq(&m.ring, &n.ring) {
        return usage("modules live over different rings");
    }
    let ring = &m.ring;
    let (a, b) = (&m.pres, &n.pres);
    let (g, nr) = (a.rows(), a.cols());
    let (h, mr) = (b.rows(), b.cols());
    if g == 0 || h == 0 {
        return Ok(Vec::new());
    }
    let unknowns = h * g + mr * nr;
    let mut sys = Matrix::zero(h * nr, unknowns);
    for p in 0..h {
        for c in 0..nr {
            let row = p * nr + c;
            for q in 0..g {
                sys.set(row, p * g + q, a.get(q, c).clone());
            }
            for r in 0..mr {
                sys.set(row, h * g + r * nr + c, ring.ambient.neg(b.get(p, r)));
            }
        }
    }
    let ker = ring.kernel(&sys);
    let mut out: Vec<Matrix> = Vec::new();
    for col in ker.columns() {
        let mut phi = Matrix::zero(h, g);
        for p in 0..h {
            for q in 0..g {
                phi.set(p, q, col[p * g + q].clone());
            }
        }
        if !phi.is_zero() && !out.contains(&phi) {
            out.push(phi);
        }
    }
    Ok(out)
}

/// Constant part of a polynomial matrix.
pub fn constant_part(ring: &Ring, m: &Matrix) -> Dense {
    let field = ring.field();
    let mut d = Dense::zero(&field, m.rows(), m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if let Some(c) = m.get(i, j).constant_term() {
                d.set(i, j, c.clone());
            }
        }
    }
    d
}

/// Connected blocks of generators: two generators share a block when some
/// relation involves both.
fn gen_blocks(m: &PresentedModule) -> Vec<usize> {
    let n = m.ngens();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        p[i] = r;
        r
    }
    for j in 0..m.pres.cols() {
        let rows: Vec<usize> = (0..n).filter(|&i| !m.pres.get(i, j).is_zero()).collect();
        for w in rows.windows(2) {
            let (x, y) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            parent[x] = y;
        }
    }
    (0..n).map(|i| find(&mut parent, i)).collect()
}

/// Shift of a map on each pair of blocks it touches, when every entry is
/// homogeneous and the shifts agree within each pair.
type Shifts = Vec<((usize, usize), i64)>;

fn map_shifts(ring: &Ring, phi: &Matrix, (dm, bm): (&[i64], &[usize]), (dn, bn): (&[i64], &[usize])) -> Option<Shifts> {
    let mut out: Shifts = Vec::new();
    for j in 0..phi.rows() {
        for i in 0..phi.cols() {
            let e = phi.get(j, i);
            if e.is_zero() {
                continue;
            }
            if !ring.ambient.is_homogeneous(e) {
                return None;
            }
            let d = ring.ambient.weighted_degree(e)? as i64 + dn[j] - dm[i];
            let key = (bm[i], bn[j]);
            match out.iter().find(|(k, _)| *k == key) {
                None => out.push((key, d)),
                Some((_, x)) if *x != d => return None,
                _ => {}
            }
        }
    }
    Some(out)
}

/// A surjective map between minimally presented modules, if the random
/// search finds one. Maps homogeneous on each pair of blocks are tried
/// first, which keeps graded inputs graded.
pub fn surjection(m: &PresentedModule, n: &PresentedModule, salt: &str) -> Result<Option<Matrix>> {
    let ring = &m.ring;
    let h = n.ngens();
    if h == 0 {
        return Ok(Some(Matrix::zero(0, m.ngens())));
    }
    let maps = hom_maps(m, n)?;
    if maps.is_empty() {
        return Ok(None);
    }
    let mut rng = ring.rng(salt);
    if let (Some(dm), Some(dn)) = (m.grading(), n.grading()) {
        let (bm, bn) = (gen_blocks(m), gen_blocks(n));
        let shifts: Vec<Option<Shifts>> = maps.iter().map(|phi| map_shifts(ring, phi, (&dm, &bm), (&dn, &bn))).collect();
        // candidate shifts per block pair, smallest first
        let mut cands: Vec<((usize, usize), Vec<i64>)> = Vec::new();
        for (k, d) in shifts.iter().flatten().flatten() {
            match cands.iter_mut().find(|(c, _)| c == k) {
                Some((_, v)) if !v.contains(d) => v.push(*d),
                Some(_) => {}
                None => cands.push((*k, vec![*d])),
            }
        }
        for (_, v) in cands.iter_mut() {
            v.sort();
        }
        for draw in 0..ISO_DRAWS {
            let choice: Vec<((usize, usize), i64)> = cands
                .iter()
                .map(|(k, v)| (*k, if draw == 0 { v[0] } else { v[rng.gen_range(0..v.len())] }))
                .collect();
            let chosen: Vec<&Matrix> = maps
                .iter()
                .zip(&shifts)
                .filter(|(_, s)| s.as_ref().is_some_and(|s| s.iter().all(|e| choice.contains(e))))
                .map(|(phi, _)| phi)
                .collect();
            if let Some(phi) = surjection_among(ring, &chosen, h, m.ngens(), &mut rng, 1) {
                return Ok(Some(phi));
            }
        }
    }
    let all: Vec<&Matrix> = maps.iter().collect();
    Ok(surjection_among(ring, &all, h, m.ngens(), &mut rng, ISO_DRAWS))
}

/// Adds maps with nonzero constant part one at a time, keeping those that
/// raise the rank, until the constant part has rank `h`. The first pass
/// takes the sparsest maps first; later passes shuffle.
fn surjection_among(ring: &Ring, maps: &[&Matrix], h: usize, g: usize, rng: &mut impl Rng, draws: usize) -> Option<Matrix> {
    let field = ring.field();
    let size = |m: &Matrix| (0..m.rows()).flat_map(|i| (0..m.cols()).map(move |j| (i, j))).map(|(i, j)| m.get(i, j).len()).sum::<usize>();
    let mut useful: Vec<(&Matrix, Dense)> = maps
        .iter()
        .map(|phi| (*phi, constant_part(ring, phi)))
        .filter(|(_, c)| c.rank(&field) > 0)
        .collect();
    useful.sort_by_key(|(phi, _)| size(phi));
    for draw in 0..draws {
        if draw > 0 {
            useful.shuffle(rng);
        }
        let mut c = Dense::zero(&field, h, g);
        let mut phi = Matrix::zero(h, g);
        let mut rank = 0;
        for (map, d) in &useful {
            let k = field.random(rng);
            let next = c.add(&field, &d.scale(&field, &k));
            let r = next.rank(&field);
            if r > rank {
                rank = r;
                c = next;
                let kp = ring.ambient.constant(k);
                phi = phi.add(&ring.ambient, &map.scale(&ring.ambient, &kp));
            }
            if rank == h {
                return Some(ring.reduce_matrix(&phi));
            }
        }
    }
    None
}

/// An isomorphism `M -> N` on the generators of their minimal presentations.
pub fn iso_witness(m: &PresentedModule, n: &PresentedModule) -> Result<Option<(PresentedModule, PresentedModule, Matrix)>> {
    let a = m.minimal_presentation();
    let b = n.minimal_presentation();
    if a.ngens() != b.ngens() || a.nrels() != b.nrels() {
        return Ok(None);
    }
    if a.length() != b.length() {
        return Ok(None);
    }
    let Some(phi) = surjection(&a, &b, "iso-forward")? else { return Ok(None) };
    if surjection(&b, &a, "iso-backward")?.is_none() {
        return Ok(None);
    }
    Ok(Some((a, b, phi)))
}

pub fn is_isomorphic(m: &PresentedModule, n: &PresentedModule) -> Result<bool> {
    Ok(iso_witness(m, n)?.is_some())
}

/// `M ≅ stable_part ⊕ R^free_rank` with no free summand left in `stable_part`.
#[derive(Clone, Debug)]
pub struct Stripped {
    pub stable_part: PresentedModule,
    pub free_rank: usize,
}

/// Splits off free summands: a functional M -> R with a unit value on some
/// generator exhibits one, and that generator's row is deleted.
pub fn strip_free_summands(m: &PresentedModule) -> Result<Stripped> {
    let ring = &m.ring;
    let mut cur = m.minimal_presentation();
    let mut free = 0;
    loop {
        let g = cur.ngens();
        if g == 0 {
            break;
        }
        if cur.nrels() == 0 {
            free += g;
            cur = PresentedModule::zero(ring);
            break;
        }
        let functionals = ring.kernel(&cur.pres.transpose());
        let hit = (0..functionals.cols())
            .find_map(|c| (0..g).find(|&i| functionals.get(i, c).is_local_unit()));
        match hit {
            Some(i) => {
                let rows: Vec<usize> = (0..g).filter(|&r| r != i).collect();
                cur = PresentedModule::new(ring, cur.pres.select_rows(&rows).compress()).minimal_presentation();
                free += 1;
            }
            None => break,
        }
    }
    Ok(Stripped { stable_part: cur, free_rank: free })
}

pub fn is_stably_equivalent(m: &PresentedModule, n: &PresentedModule) -> Result<bool> {
    let a = strip_free_summands(m)?;
    let b = strip_free_summands(n)?;
    is_isomorphic(&a.stable_part, &b.stable_part)
}

/// `phi` composed with the quotient map is well defined: `phi * A ⊆ im B`.
pub fn is_well_defined(ring: &Ring, phi: &Matrix, a: &Matrix, b: &Matrix) -> bool {
    let prod = ring.mat_mul(phi, a);
    ring.locally_included(&prod, b)
}

/// Whether `phi: R^g -> coker B` is onto.
pub fn is_surjective(ring: &Ring, phi: &Matrix, b: &Matrix) -> bool {
    let both = Matrix::hstack(b.rows(), &[phi, b]);
    PresentedModule::new(ring, both).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;
    use crate::modcalc::ideal::Ideal;
    use crate::modcalc::resolution::syzygy;
    use crate::modcalc::ring::make_ring;

    fn cusp() -> Ring {
        make_ring(&["x", "y"], Field::Prime(32003), Some(vec![3, 2]), &["x^2-y^3"], true).unwrap()
    }

    #[test]
    fn reflexive_and_length_distinguishes() {
        let r = cusp();
        let a = Ideal::parse(&r, &["x", "y^2"]).unwrap().quotient();
        let b = Ideal::parse(&r, &["x^2", "x*y"]).unwrap().quotient();
        assert!(is_isomorphic(&a, &a).unwrap());
        assert!(!is_isomorphic(&a, &b).unwrap());
    }

    #[test]
    fn presentation_changes_do_not_matter() {
        let r = cusp();
        let a = PresentedModule::from_rows(&r, &[&["x", "y"]]).unwrap();
        let b = PresentedModule::from_rows(&r, &[&["1", "x", "0"], &["0", "y", "x+y"]]).unwrap();
        assert!(is_isomorphic(&a, &b).unwrap());
    }

    #[test]
    fn stripping() {
        let r = cusp();
        let m = Ideal::maximal(&r).as_module();
        let s = strip_free_summands(&m).unwrap();
        assert_eq!(s.free_rank, 0);
        let with_free = m.direct_sum(&PresentedModule::free(&r, 1)).unwrap();
        let s2 = strip_free_summands(&with_free).unwrap();
        assert_eq!(s2.free_rank, 1);
        assert!(is_isomorphic(&s2.stable_part, &m).unwrap());
        let f = strip_free_summands(&PresentedModule::free(&r, 2)).unwrap();
        assert_eq!(f.free_rank, 2);
        assert!(f.stable_part.is_zero());
        let k = PresentedModule::residue_field(&r);
        let om = syzygy(&k, 1).unwrap();
        assert!(is_stably_equivalent(&om, &m).unwrap());
        assert!(is_stably_equivalent(&m, &m.direct_sum(&PresentedModule::free(&r, 3)).unwrap()).unwrap());
    }
}
