mod common;

use common::*;
use liaison::algebra::Matrix;
use liaison::mf::{mf_cokernel, mf_dual, mf_equivalent, mf_from_module, mf_reduce, mf_syzygy, MatrixFactorization};
use liaison::modcalc::{dual, is_stably_equivalent, syzygy, PresentedModule, Ring};
use proptest::prelude::*;

fn pick_ring(k: usize) -> Ring {
    [cusp(), node(), a3(), a4()][k % 4].clone()
}

/// First syzygy of `R/(x^a, y^b, x^c y^d)`: a graded MCM module.
fn monomial_mcm(r: &Ring, (a, b, c, d): (u32, u32, u32, u32)) -> PresentedModule {
    let gens = [format!("x^{a}"), format!("y^{b}"), format!("x^{c}*y^{d}")];
    let refs: Vec<&str> = gens.iter().map(String::as_str).collect();
    syzygy(&quot(r, &refs), 1).unwrap()
}

fn holds(f: &MatrixFactorization) -> bool {
    let amb = &f.ring.ambient;
    let fi = Matrix::scalar(&f.f, f.phi.rows());
    f.phi.mul(amb, &f.psi) == fi && f.psi.mul(amb, &f.phi) == fi
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn factorizations_multiply_to_f(k in 0usize..4, e in (1u32..4, 1u32..5, 0u32..3, 0u32..3)) {
        let r = pick_ring(k);
        let m = monomial_mcm(&r, e);
        let f = mf_from_module(&m).unwrap();
        for g in [f.clone(), mf_syzygy(&f).unwrap(), mf_dual(&f).unwrap(), mf_reduce(&f).unwrap()] {
            prop_assert!(holds(&g));
        }
    }

    #[test]
    fn cokernel_round_trip_and_duality(k in 0usize..4, e in (1u32..4, 1u32..5, 0u32..3, 0u32..3)) {
        let r = pick_ring(k);
        let m = monomial_mcm(&r, e);
        let f = mf_from_module(&m).unwrap();
        prop_assert!(is_stably_equivalent(&mf_cokernel(&f).unwrap(), &m).unwrap());
        let lhs = mf_cokernel(&mf_dual(&f).unwrap()).unwrap();
        let rhs = dual(&mf_cokernel(&f).unwrap()).unwrap();
        prop_assert!(is_stably_equivalent(&lhs, &rhs).unwrap());
    }

    #[test]
    fn equivalence_is_reflexive_symmetric_and_stable(
        k in 0usize..4,
        e1 in (1u32..4, 1u32..5, 0u32..3, 0u32..3),
        e2 in (1u32..4, 1u32..5, 0u32..3, 0u32..3),
    ) {
        let r = pick_ring(k);
        let (m, n) = (monomial_mcm(&r, e1), monomial_mcm(&r, e2));
        let (f, g) = (mf_from_module(&m).unwrap(), mf_from_module(&n).unwrap());
        prop_assert!(mf_equivalent(&f, &f).unwrap());
        let fg = mf_equivalent(&f, &g).unwrap();
        prop_assert_eq!(fg, mf_equivalent(&g, &f).unwrap());
        prop_assert_eq!(fg, is_stably_equivalent(&m, &n).unwrap());
    }
}

#[test]
fn table_modules_factor() {
    let r = cusp();
    for (name, m) in table_modules(&r) {
        let mcm = syzygy(&m, 1).unwrap();
        let f = mf_from_module(&mcm).unwrap();
        assert!(holds(&f), "{name}");
        assert!(is_stably_equivalent(&mf_cokernel(&f).unwrap(), &mcm).unwrap(), "{name}");
    }
}
