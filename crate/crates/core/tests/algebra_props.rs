use std::cmp::Ordering;

use liaison::algebra::{compare_monomials, normal_form, standard_basis, syzygy_matrix, Field, Matrix, Monomial, MonomialOrder, Poly, PolyRing};
use proptest::prelude::*;

fn orders() -> Vec<MonomialOrder> {
    vec![
        MonomialOrder::weighted_global(vec![3, 2]),
        MonomialOrder::lex(2),
        MonomialOrder::weighted_local(vec![3, 2]),
        MonomialOrder::weighted_local(vec![1, 1]),
    ]
}

fn mono() -> impl Strategy<Value = Monomial> {
    (0u16..8, 0u16..8).prop_map(|(a, b)| Monomial::from_exponents(&[a, b]))
}

fn ring(order: MonomialOrder) -> PolyRing {
    PolyRing::new(vec!["x".into(), "y".into()], Field::Prime(32003), order).unwrap()
}

/// Sparse polynomial without constant term.
fn poly_terms() -> impl Strategy<Value = Vec<(u16, u16, u64)>> {
    prop::collection::vec((0u16..3, 0u16..3, 1u64..50), 1..4).prop_map(|mut ts| {
        for t in ts.iter_mut() {
            if t.0 == 0 && t.1 == 0 {
                t.0 = 1;
            }
        }
        ts
    })
}

fn build(r: &PolyRing, terms: &[(u16, u16, u64)]) -> Poly {
    r.from_terms(terms.iter().map(|&(a, b, c)| (Monomial::from_exponents(&[a, b]), r.field.from_i64(c as i64))).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn orders_are_total_and_multiplicative(a in mono(), b in mono(), c in mono()) {
        for ord in orders() {
            let ab = compare_monomials(&a, &b, &ord).unwrap();
            prop_assert_eq!(ab, compare_monomials(&b, &a, &ord).unwrap().reverse());
            prop_assert_eq!(ab == Ordering::Equal, a == b);
            let bc = compare_monomials(&b, &c, &ord).unwrap();
            if ab == Ordering::Less && bc == Ordering::Less {
                prop_assert_eq!(compare_monomials(&a, &c, &ord).unwrap(), Ordering::Less);
            }
            prop_assert_eq!(compare_monomials(&a.mul(&c), &b.mul(&c), &ord).unwrap(), ab);
            let one = Monomial::one(2);
            if !a.is_one() {
                let expect = if ord.is_global() { Ordering::Less } else { Ordering::Greater };
                prop_assert_eq!(compare_monomials(&one, &a, &ord).unwrap(), expect);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ideal_members_reduce_to_zero(
        gens in prop::collection::vec(poly_terms(), 1..3),
        mults in prop::collection::vec(poly_terms(), 2),
        local in any::<bool>(),
    ) {
        let ord = if local { MonomialOrder::weighted_local(vec![1, 1]) } else { MonomialOrder::degrevlex(2) };
        let r = ring(ord);
        let g: Vec<Poly> = gens.iter().map(|t| build(&r, t)).collect();
        let sb = standard_basis(&r, &g);
        let mut f = r.zero();
        for (gi, hi) in g.iter().zip(&mults) {
            f = r.add(&f, &r.mul(gi, &build(&r, hi)));
        }
        prop_assert!(normal_form(&r, &f, &sb).is_zero());
        for gi in &g {
            prop_assert!(normal_form(&r, gi, &sb).is_zero());
        }
        prop_assert_eq!(standard_basis(&r, &sb), sb);
    }

    #[test]
    fn syzygies_annihilate(rows in prop::collection::vec(prop::collection::vec(poly_terms(), 3), 1..3)) {
        let r = ring(MonomialOrder::degrevlex(2));
        let m = Matrix::from_rows(rows.iter().map(|row| row.iter().map(|t| build(&r, t)).collect()).collect()).unwrap();
        let syz = syzygy_matrix(&r, &m);
        prop_assert!(m.mul(&r, &syz).is_zero());
    }
}

#[test]
fn order_examples() {
    let (x2, xy) = (Monomial::from_exponents(&[2, 0]), Monomial::from_exponents(&[1, 1]));
    assert_eq!(compare_monomials(&x2, &xy, &MonomialOrder::degrevlex(2)).unwrap(), Ordering::Greater);
    let (one, x, y) = (Monomial::one(2), Monomial::var(2, 0), Monomial::var(2, 1));
    assert_eq!(compare_monomials(&one, &x, &MonomialOrder::weighted_local(vec![1, 1])).unwrap(), Ordering::Greater);
    assert_eq!(compare_monomials(&x, &y, &MonomialOrder::weighted_global(vec![3, 2])).unwrap(), Ordering::Greater);
    assert!(compare_monomials(&Monomial::one(3), &x, &MonomialOrder::degrevlex(2)).is_err());
}
