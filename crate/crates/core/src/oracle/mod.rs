//! Brute-force verification by truncation: R/m^N is a finite-dimensional
//! algebra, and a module killed by m^N is a finite-dimensional vector space
//! with commuting variable actions. Everything here is plain linear algebra
//! and shares no code with the standard-basis engine.

use crate::algebra::linalg::{Dense, Subspace};
use crate::algebra::{Coeff, Field, Monomial, Poly};
use crate::error::{invariant, usage, Error, Result};
use crate::modcalc::{PresentedModule, Ring};

/// `R/m^N` with a monomial basis.
#[derive(Clone, Debug)]
pub struct FiniteAlgebra {
    pub ring: Ring,
    pub level: u32,
    /// Standard monomials, largest first in the ring's printing order.
    pub basis: Vec<Monomial>,
    /// Multiplication by each variable, column `b` holding `x_i * basis[b]`.
    pub mult_tables: Vec<Dense>,
    field: Field,
    /// All monomials of degree below `level`, largest first.
    monos: Vec<Monomial>,
    ideal: Subspace,
    /// Position of each basis monomial among `monos`.
    basis_pos: Vec<usize>,
}

/// Monomials of total degree `< level`, sorted decreasingly by the ring's
/// printing order.
fn sorted_monomials(ring: &Ring, level: u32) -> Vec<Monomial> {
    let mut monos = Monomial::below_degree(ring.nvars(), level);
    monos.sort_by(|a, b| ring.display.cmp(b, a));
    monos
}

fn poly_vector(field: &Field, monos: &[Monomial], p: &Poly, level: u32) -> Vec<Coeff> {
    let mut v = vec![field.zero(); monos.len()];
    for (m, c) in &p.terms {
        if m.degree() < level {
            let i = monos.iter().position(|x| x == m).expect("monomial below level");
            v[i] = field.add(&v[i], c);
        }
    }
    v
}

/// Span of `mono * g` truncated below `level`, for all generators `g`.
fn truncated_ideal(ring: &Ring, monos: &[Monomial], gens: &[Poly], level: u32) -> Subspace {
    let field = ring.field();
    let amb = &ring.ambient;
    let mut vectors = Vec::new();
    for g in gens {
        for m in monos {
            let prod = amb.mul_term(g, m, &field.one());
            vectors.push(poly_vector(&field, monos, &prod, level));
        }
    }
    Subspace::new(&field, monos.len(), vectors)
}

/// Monomials of degree `< level` outside the leading ideal of
/// `(gens) + m^level` in the ring's printing order.
pub fn oracle_standard_monomials(ring: &Ring, gens: &[Poly], level: u32) -> Vec<Monomial> {
    let monos = sorted_monomials(ring, level);
    let ideal = truncated_ideal(ring, &monos, gens, level);
    (0..monos.len()).filter(|i| !ideal.pivots.contains(i)).map(|i| monos[i].clone()).collect()
}

impl FiniteAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of a polynomial on the basis.
    pub fn coords(&self, p: &Poly) -> Vec<Coeff> {
        let mut v = poly_vector(&self.field, &self.monos, p, self.level);
        self.ideal.reduce(&self.field, &mut v);
        self.basis_pos.iter().map(|&i| v[i].clone()).collect()
    }

    /// Multiplication by a polynomial as a `dim x dim` matrix.
    pub fn action(&self, p: &Poly) -> Dense {
        let amb = &self.ring.ambient;
        let n = self.dim();
        let mut out = Dense::zero(&self.field, n, n);
        for (b, m) in self.basis.iter().enumerate() {
            let prod = amb.mul_term(p, m, &self.field.one());
            for (r, c) in self.coords(&prod).into_iter().enumerate() {
                out.set(r, b, c);
            }
        }
        out
    }

    /// The image of an ideal, as a subspace of the algebra.
    pub fn ideal_span(&self, gens: &[Poly]) -> Subspace {
        let mut vectors = Vec::new();
        for g in gens {
            let act = self.action(g);
            for b in 0..self.dim() {
                vectors.push((0..self.dim()).map(|r| act.get(r, b).clone()).collect());
            }
        }
        Subspace::new(&self.field, self.dim(), vectors)
    }
}

/// `R/m^N`, with associativity and commutativity of the structure
/// constants checked on every basis triple.
pub fn truncate_ring(ring: &Ring, level: u32) -> Result<FiniteAlgebra> {
    if level == 0 {
        return usage("truncation level must be at least 1");
    }
    let field = ring.field();
    let monos = sorted_monomials(ring, level);
    let ideal = truncated_ideal(ring, &monos, &ring.relations, level);
    let basis_pos: Vec<usize> = (0..monos.len()).filter(|i| !ideal.pivots.contains(i)).collect();
    let basis: Vec<Monomial> = basis_pos.iter().map(|&i| monos[i].clone()).collect();
    let mut alg = FiniteAlgebra { ring: ring.clone(), level, basis, mult_tables: Vec::new(), field: field.clone(), monos, ideal, basis_pos };
    alg.mult_tables = (0..ring.nvars()).map(|i| alg.action(&ring.ambient.var(i))).collect();
    let n = alg.dim();
    let x = &alg.mult_tables;
    for i in 0..x.len() {
        for j in 0..i {
            if x[i].mul(&field, &x[j]) != x[j].mul(&field, &x[i]) {
                return invariant("truncated algebra is not commutative");
            }
        }
    }
    // every basis monomial must be the product of variable actions on 1
    let one = alg.basis.iter().position(|m| m.is_one());
    for (b, mono) in alg.basis.iter().enumerate() {
        let Some(one) = one else { break };
        let mut v: Vec<Coeff> = (0..n).map(|r| if r == one { field.one() } else { field.zero() }).collect();
        for (i, &e) in mono.exponents().iter().enumerate() {
            for _ in 0..e {
                v = (0..n)
                    .map(|r| (0..n).fold(field.zero(), |acc, k| field.add(&acc, &field.mul(x[i].get(r, k), &v[k]))))
                    .collect();
            }
        }
        let want: Vec<Coeff> = (0..n).map(|r| if r == b { field.one() } else { field.zero() }).collect();
        if v != want {
            return invariant("truncated algebra is not associative");
        }
    }
    Ok(alg)
}

/// A finite-dimensional module: commuting actions of the variables.
#[derive(Clone, Debug)]
pub struct FiniteModule {
    pub field: Field,
    pub dim: usize,
    pub actions: Vec<Dense>,
}

/// `M / m^N M` for `M = coker A`, as a vector space with variable actions.
pub fn truncate_module(alg: &FiniteAlgebra, m: &PresentedModule) -> FiniteModule {
    let field = alg.field.clone();
    let d = alg.dim();
    let g = m.ngens();
    let total = g * d;
    // submodule spanned by basis multiples of the relation columns
    let mut rel_vectors = Vec::new();
    for col in m.pres.columns() {
        let acts: Vec<Dense> = col.iter().map(|p| alg.action(p)).collect();
        for b in 0..d {
            let mut v = vec![field.zero(); total];
            for (q, act) in acts.iter().enumerate() {
                for r in 0..d {
                    v[q * d + r] = act.get(r, b).clone();
                }
            }
            rel_vectors.push(v);
        }
    }
    let sub = Subspace::new(&field, total, rel_vectors);
    let free: Vec<usize> = (0..total).filter(|i| !sub.pivots.contains(i)).collect();
    let n = free.len();
    let actions = alg
        .mult_tables
        .iter()
        .map(|x| {
            let mut out = Dense::zero(&field, n, n);
            for (c, &pos) in free.iter().enumerate() {
                let (q, b) = (pos / d, pos % d);
                let mut v = vec![field.zero(); total];
                for r in 0..d {
                    v[q * d + r] = x.get(r, b).clone();
                }
                sub.reduce(&field, &mut v);
                for (r, &fp) in free.iter().enumerate() {
                    out.set(r, c, v[fp].clone());
                }
            }
            out
        })
        .collect();
    FiniteModule { field, dim: n, actions }
}

impl FiniteModule {
    /// Images of all variables, as columns of one matrix.
    fn max_ideal_image(&self) -> Subspace {
        let mut vectors = Vec::new();
        for a in &self.actions {
            for c in 0..self.dim {
                vectors.push((0..self.dim).map(|r| a.get(r, c).clone()).collect());
            }
        }
        Subspace::new(&self.field, self.dim, vectors)
    }

    /// `dim M / mM`.
    pub fn nu(&self) -> usize {
        self.dim - self.max_ideal_image().dim()
    }

    /// `dim (0 :_M m)`.
    pub fn socle_dim(&self) -> usize {
        if self.dim == 0 {
            return 0;
        }
        let k = self.actions.len();
        let mut stacked = Dense::zero(&self.field, k * self.dim, self.dim);
        for (i, a) in self.actions.iter().enumerate() {
            for r in 0..self.dim {
                for c in 0..self.dim {
                    stacked.set(i * self.dim + r, c, a.get(r, c).clone());
                }
            }
        }
        self.dim - stacked.rank(&self.field)
    }

    /// The vector-space dual with transposed actions.
    pub fn matlis_dual(&self) -> FiniteModule {
        FiniteModule {
            field: self.field.clone(),
            dim: self.dim,
            actions: self.actions.iter().map(|a| a.transpose(&self.field)).collect(),
        }
    }

    /// Basis of `{T : T a_i = b_i T}` for maps `self -> other`.
    pub fn hom_basis(&self, other: &FiniteModule) -> Vec<Dense> {
        let (m, n) = (self.dim, other.dim);
        let field = &self.field;
        let unknowns = n * m;
        let mut rows: Vec<Vec<Coeff>> = Vec::new();
        for (a, b) in self.actions.iter().zip(&other.actions) {
            // (T a - b T)[r][c] = sum_k T[r][k] a[k][c] - b[r][k] T[k][c]
            for r in 0..n {
                for c in 0..m {
                    let mut row = vec![field.zero(); unknowns];
                    for k in 0..m {
                        let idx = r * m + k;
                        row[idx] = field.add(&row[idx], a.get(k, c));
                    }
                    for k in 0..n {
                        let idx = k * m + c;
                        row[idx] = field.sub(&row[idx], b.get(r, k));
                    }
                    rows.push(row);
                }
            }
        }
        let sys = Dense { rows: rows.len(), cols: unknowns, data: rows.into_iter().flatten().collect() };
        let sol = if sys.rows == 0 { Dense::identity(field, unknowns).nullspace(field) } else { sys.nullspace(field) };
        sol.into_iter().map(|v| Dense { rows: n, cols: m, data: v }).collect()
    }
}

/// Length, number of generators and type of a finite-length module.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleInvariants {
    pub length: usize,
    pub nu: usize,
    pub type_: usize,
}

/// Truncates at `level` and `level + 1`; equal dimensions certify that
/// `m^level` kills the module.
pub fn oracle_module(m: &PresentedModule, level: u32) -> Result<FiniteModule> {
    let ring = &m.ring;
    let low = truncate_module(&truncate_ring(ring, level)?, m);
    let high = truncate_module(&truncate_ring(ring, level + 1)?, m);
    if low.dim != high.dim {
        return Err(Error::TruncationTooSmall(format!("m^{level} does not annihilate the module")));
    }
    Ok(low)
}

pub fn oracle_invariants(m: &PresentedModule, level: u32) -> Result<OracleInvariants> {
    let fm = oracle_module(m, level)?;
    Ok(OracleInvariants { length: fm.dim, nu: fm.nu(), type_: fm.socle_dim() })
}

/// Ext^i(M, R) for finite-length M: by local duality over the Gorenstein
/// ring R it vanishes unless `i = dim R`, where it is the Matlis dual.
pub fn oracle_ext(m: &PresentedModule, i: usize, level: u32) -> Result<FiniteModule> {
    let fm = oracle_module(m, level)?;
    if i == m.ring.dim {
        Ok(fm.matlis_dual())
    } else {
        Ok(FiniteModule { field: fm.field.clone(), dim: 0, actions: fm.actions.iter().map(|_| Dense::zero(&fm.field, 0, 0)).collect() })
    }
}

/// Isomorphism of finite modules: a random element of Hom(A, B) is
/// invertible with high probability when one exists.
pub fn oracle_isomorphic(a: &FiniteModule, b: &FiniteModule, ring: &Ring) -> bool {
    if a.dim != b.dim {
        return false;
    }
    if a.dim == 0 {
        return true;
    }
    let basis = a.hom_basis(b);
    if basis.is_empty() {
        return false;
    }
    let mut rng = ring.rng("oracle-iso");
    (0..20).any(|_| {
        let t = Dense::random_combination(&a.field, &basis, b.dim, a.dim, &mut rng);
        t.rank(&a.field) == a.dim
    })
}

/// Annihilator of a finite-length module, as a subspace of `R/m^N`.
pub fn oracle_annihilator(m: &PresentedModule, level: u32) -> Result<(FiniteAlgebra, Subspace)> {
    let alg = truncate_ring(&m.ring, level)?;
    let fm = oracle_module(m, level)?;
    let d = alg.dim();
    let field = alg.field.clone();
    // a = sum c_b basis_b acts as sum c_b (monomial action); solve for action = 0
    let mono_actions: Vec<Dense> = alg
        .basis
        .iter()
        .map(|mono| {
            let mut acc = Dense::identity(&field, fm.dim);
            for (i, &e) in mono.exponents().iter().enumerate() {
                for _ in 0..e {
                    acc = fm.actions[i].mul(&field, &acc);
                }
            }
            acc
        })
        .collect();
    let n2 = fm.dim * fm.dim;
    let mut sys = Dense::zero(&field, n2.max(1), d);
    for (b, act) in mono_actions.iter().enumerate() {
        for (k, v) in act.data.iter().enumerate() {
            sys.set(k, b, v.clone());
        }
    }
    let kernel = sys.nullspace(&field);
    let span = Subspace::new(&field, d, kernel);
    Ok((alg, span))
}

/// Subspaces are equal.
pub fn same_subspace(field: &Field, a: &Subspace, b: &Subspace) -> bool {
    a.dim() == b.dim() && a.rows.iter().all(|r| b.contains(field, r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Matrix;
    use crate::modcalc::{make_ring, Ideal};

    fn cusp() -> Ring {
        make_ring(&["x", "y"], Field::Prime(32003), Some(vec![3, 2]), &["x^2-y^3"], true).unwrap()
    }

    fn names(r: &Ring, monos: &[Monomial]) -> Vec<String> {
        monos.iter().map(|m| if m.is_one() { "1".to_string() } else { r.display.display_monomial(m) }).collect()
    }

    fn m_mod(r: &Ring, f: &str) -> PresentedModule {
        let m = Ideal::maximal(r);
        PresentedModule::subquotient(r, &m.row(), &Matrix::from_rows(vec![vec![r.parse(f).unwrap()]]).unwrap())
    }

    #[test]
    fn truncated_cusp() {
        let r = cusp();
        let a = truncate_ring(&r, 6).unwrap();
        assert_eq!(a.dim(), 11);
        let names = names(&r, &a.basis);
        for want in ["1", "y", "y^5", "x", "x*y^4"] {
            assert!(names.contains(&want.to_string()), "{want} missing from {names:?}");
        }
        assert!(!names.contains(&"x^2".to_string()));
        let node = make_ring(&["x", "y"], Field::Prime(32003), None, &["x*y"], true).unwrap();
        assert_eq!(truncate_ring(&node, 3).unwrap().dim(), 5);
        assert_eq!(truncate_ring(&node, 1).unwrap().dim(), 1);
    }

    #[test]
    fn table_values() {
        let r = cusp();
        assert_eq!(oracle_invariants(&m_mod(&r, "x^2"), 8).unwrap(), OracleInvariants { length: 5, nu: 2, type_: 1 });
        let node = make_ring(&["x", "y"], Field::Prime(32003), None, &["x*y"], true).unwrap();
        let q = Ideal::parse(&node, &["x^2", "y^3"]).unwrap().quotient();
        assert_eq!(oracle_invariants(&q, 6).unwrap().length, 4);
        assert_eq!(oracle_invariants(&PresentedModule::zero(&r), 2).unwrap(), OracleInvariants { length: 0, nu: 0, type_: 0 });
        assert!(matches!(oracle_invariants(&q, 2), Err(Error::TruncationTooSmall(_))));
    }

    #[test]
    fn leading_ideal_by_truncation() {
        let r = make_ring(&["x", "y"], Field::Prime(32003), Some(vec![3, 2]), &[], true).unwrap();
        let gens = vec![r.parse("x^2-y^3").unwrap(), r.parse("x*y^2").unwrap()];
        let std = oracle_standard_monomials(&r, &gens, 8);
        let names = names(&r, &std);
        assert_eq!(names.len(), 7);
        for want in ["1", "y", "y^2", "y^3", "y^4", "x", "x*y"] {
            assert!(names.contains(&want.to_string()));
        }
    }

    #[test]
    fn ext_and_iso() {
        let r = cusp();
        let q = Ideal::parse(&r, &["x*y^2", "x^2"]).unwrap().quotient();
        let e = oracle_ext(&q, 1, 10).unwrap();
        assert_eq!(e.dim, 5);
        let target = oracle_module(&m_mod(&r, "x^2"), 10).unwrap();
        assert!(oracle_isomorphic(&e, &target, &r));
        let other = oracle_module(&m_mod(&r, "y^2"), 10).unwrap();
        assert!(!oracle_isomorphic(&other, &target, &r));
        assert_eq!(oracle_ext(&Ideal::parse(&r, &["x"]).unwrap().quotient(), 0, 6).unwrap().dim, 0);
    }

    #[test]
    fn annihilator_subspace() {
        let r = cusp();
        let (alg, ann) = oracle_annihilator(&m_mod(&r, "x^2"), 8).unwrap();
        let expected = alg.ideal_span(&[r.parse("x^2").unwrap(), r.parse("x*y^2").unwrap()]);
        assert!(same_subspace(&r.field(), &ann, &expected));
    }
}
