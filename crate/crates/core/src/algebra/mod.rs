//! Polynomial arithmetic, monomial orders, standard bases and syzygies.

pub mod field;
pub mod linalg;
pub mod matrix;
pub mod monomial;
pub mod poly;
pub mod sbasis;

pub use field::{Coeff, Field};
pub use matrix::Matrix;
pub use monomial::{compare_monomials, Monomial, MonomialOrder, OrderScheme};
pub use poly::{Poly, PolyRing};

use sbasis::{SbEngine, Vector};

fn engine(ring: &PolyRing) -> SbEngine {
    SbEngine::new(ring.field, ring.order.clone())
}

fn to_vector(eng: &SbEngine, p: &Poly) -> Vector {
    eng.from_polys(std::slice::from_ref(p))
}

fn to_poly(eng: &SbEngine, ring: &PolyRing, v: &Vector) -> Poly {
    eng.to_polys(v, 1, ring).pop().unwrap()
}

/// Reduced standard basis of the ideal generated by `gens` under the ring's
/// order: a reduced Groebner basis for global orders, a minimal monic Mora
/// standard basis for local orders. Sorted by leading monomial, descending.
pub fn standard_basis(ring: &PolyRing, gens: &[Poly]) -> Vec<Poly> {
    let eng = engine(ring);
    let vs: Vec<Vector> = gens.iter().map(|g| to_vector(&eng, g)).collect();
    eng.standard_basis(&vs, true).iter().map(|v| to_poly(&eng, ring, v)).collect()
}

/// Normal form of `f` with respect to a standard basis. Under a global order
/// this is the fully reduced remainder; under a local order it is Mora's weak
/// normal form, zero exactly when `f` lies in the localized ideal.
pub fn normal_form(ring: &PolyRing, f: &Poly, basis: &[Poly]) -> Poly {
    let eng = engine(ring);
    let b: Vec<Vector> = basis.iter().map(|g| to_vector(&eng, g)).collect();
    to_poly(&eng, ring, &eng.normal_form(&to_vector(&eng, f), &b))
}

/// Columns generating the kernel of the map `P^cols -> P^rows` given by `m`.
/// Computed under the global order carrying the ring's weights.
pub fn syzygy_matrix(ring: &PolyRing, m: &Matrix) -> Matrix {
    let global = ring.with_order(ring.order.to_global_if_local());
    let eng = engine(&global);
    let cols: Vec<Vector> = m.columns().iter().map(|c| eng.from_polys(c)).collect();
    let syz = eng.syzygies(&cols, m.rows());
    let out: Vec<Vec<Poly>> = syz.iter().map(|v| eng.to_polys(v, m.cols(), &global)).collect();
    let res = Matrix::from_cols(m.cols(), out);
    debug_assert!(m.mul(&global, &res).is_zero());
    res.map(|p| ring.import(p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qq_ring() -> PolyRing {
        PolyRing::new(vec!["x".into(), "y".into()], Field::Rationals, MonomialOrder::degrevlex(2)).unwrap()
    }

    fn gf_ring(order: MonomialOrder) -> PolyRing {
        PolyRing::new(vec!["x".into(), "y".into()], Field::Prime(32003), order).unwrap()
    }

    fn polys(r: &PolyRing, src: &[&str]) -> Vec<Poly> {
        src.iter().map(|s| r.parse(s).unwrap()).collect()
    }

    #[test]
    fn single_generator() {
        let r = gf_ring(MonomialOrder::degrevlex(2));
        assert_eq!(standard_basis(&r, &polys(&r, &["x"])), polys(&r, &["x"]));
    }

    #[test]
    fn circle_and_line() {
        let r = qq_ring();
        let sb = standard_basis(&r, &polys(&r, &["x^2+y^2-1", "x-y"]));
        assert_eq!(sb, polys(&r, &["y^2-1/2", "x-y"]));
    }

    #[test]
    fn local_leading_ideal() {
        let r = gf_ring(MonomialOrder::weighted_local(vec![3, 2]));
        let sb = standard_basis(&r, &polys(&r, &["x^2-y^3", "x*y^2"]));
        let mut lead: Vec<Monomial> = sb.iter().map(|p| p.lm().unwrap().clone()).collect();
        lead.sort();
        let mut expect: Vec<Monomial> =
            [[2u16, 0], [1, 2], [0, 5]].iter().map(|e| Monomial::from_exponents(e)).collect();
        expect.sort();
        assert_eq!(lead, expect);
    }

    #[test]
    fn normal_forms() {
        let local = gf_ring(MonomialOrder::weighted_local(vec![1, 1]));
        let f = local.parse("x^2-y^3").unwrap();
        assert!(normal_form(&local, &f, &[f.clone()]).is_zero());
        let nf = normal_form(&local, &local.parse("x^2").unwrap(), &[f]);
        assert_eq!(nf, local.parse("y^3").unwrap());
        let global = gf_ring(MonomialOrder::degrevlex(2));
        let g = global.parse("x^2-y^3").unwrap();
        assert_eq!(normal_form(&global, &global.parse("y^3").unwrap(), &[g]), global.parse("x^2").unwrap());
    }

    #[test]
    fn koszul_relation() {
        let r = gf_ring(MonomialOrder::degrevlex(2));
        let row = Matrix::from_rows(vec![polys(&r, &["x", "y"])]).unwrap();
        let syz = syzygy_matrix(&r, &row);
        assert_eq!(syz.cols(), 1);
        let col = syz.column(0);
        let y = r.parse("y").unwrap();
        let neg = r.neg(&y);
        // (y, -x) up to sign
        assert!(col == polys(&r, &["y", "-x"]) || col == vec![neg, r.parse("x").unwrap()]);
        let id = Matrix::identity(&r, 3);
        assert_eq!(syzygy_matrix(&r, &id).cols(), 0);
    }
}
