#![allow(dead_code)]

use liaison::algebra::{Field, Matrix, Poly};
use liaison::modcalc::{make_ring, Ideal, PresentedModule, Ring};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn ring(rel: &str, w: (u32, u32)) -> Ring {
    make_ring(&["x", "y"], Field::Prime(32003), Some(vec![w.0, w.1]), &[rel], true).unwrap()
}

pub fn cusp() -> Ring {
    ring("x^2-y^3", (3, 2))
}

pub fn node() -> Ring {
    ring("x*y", (1, 1))
}

pub fn a3() -> Ring {
    ring("x^2-y^4", (2, 1))
}

pub fn a4() -> Ring {
    ring("x^2-y^5", (5, 2))
}

pub fn ideal(r: &Ring, gens: &[&str]) -> Ideal {
    Ideal::parse(r, gens).unwrap()
}

pub fn quot(r: &Ring, gens: &[&str]) -> PresentedModule {
    ideal(r, gens).quotient()
}

/// `m / (f)` for `f` in the maximal ideal.
pub fn m_mod(r: &Ring, f: &str) -> PresentedModule {
    let m = Ideal::maximal(r);
    PresentedModule::subquotient(r, &m.row(), &Matrix::from_rows(vec![vec![r.parse(f).unwrap()]]).unwrap())
}

/// k, R/(x,y^2), R/(x^2,xy), m/(x^2), m/(y^2) over the cusp.
pub fn table_modules(r: &Ring) -> Vec<(&'static str, PresentedModule)> {
    vec![
        ("k", quot(r, &["x", "y"])),
        ("R/(x,y^2)", quot(r, &["x", "y^2"])),
        ("R/(x^2,xy)", quot(r, &["x^2", "x*y"])),
        ("m/(x^2)", m_mod(r, "x^2")),
        ("m/(y^2)", m_mod(r, "y^2")),
    ]
}

fn random_term(rng: &mut ChaCha8Rng, maxdeg: u32) -> String {
    let c: u32 = rng.gen_range(1..100);
    let d = rng.gen_range(1..=maxdeg);
    let a = rng.gen_range(0..=d);
    format!("{c}*x^{a}*y^{}", d - a)
}

/// A polynomial without constant term, as a string.
pub fn random_poly(rng: &mut ChaCha8Rng, maxdeg: u32) -> String {
    let n = rng.gen_range(1..=3);
    (0..n).map(|_| random_term(rng, maxdeg)).collect::<Vec<_>>().join("+")
}

/// Generators of an m-primary ideal: one or two random polynomials and
/// pure powers of both variables.
pub fn random_m_primary(r: &Ring, rng: &mut ChaCha8Rng) -> Ideal {
    let mut gens = vec![random_poly(rng, 3)];
    if rng.gen_bool(0.5) {
        gens.push(random_poly(rng, 3));
    }
    gens.push(format!("x^{}", rng.gen_range(1..=4)));
    gens.push(format!("y^{}", rng.gen_range(1..=5)));
    let refs: Vec<&str> = gens.iter().map(String::as_str).collect();
    ideal(r, &refs)
}

pub fn poly(r: &Ring, s: &str) -> Poly {
    r.parse(s).unwrap()
}
