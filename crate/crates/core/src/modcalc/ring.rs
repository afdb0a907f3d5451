//! Complete-intersection quotient rings R = P/J, localized at the origin.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, RwLock};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::sbasis::{self, SbEngine, Term, Vector};
use crate::algebra::{Coeff, Field, Matrix, Monomial, MonomialOrder, OrderScheme, Poly, PolyRing};
use crate::error::{usage, Error, Result};

/// Shared handle to a quotient ring.
pub type Ring = Arc<QuotientRing>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum CacheKey {
    LocalSb(usize, Vec<Vec<Poly>>),
    Kernel(Matrix),
}

#[derive(Clone, Debug)]
enum CacheValue {
    Sb(Arc<Vec<Vector>>),
    Kernel(Arc<Matrix>),
}

/// R = k[x1..xn]/J with J generated by a regular sequence. Every module
/// computation is carried out over the localization of R at the origin,
/// which for the weighted-homogeneous examples agrees with the completion.
/// The `local` flag only selects how ideals are compared and printed.
pub struct QuotientRing {
    /// Ambient ring under the global weighted order; all stored data uses it.
    pub ambient: PolyRing,
    /// Same variables under the printing order (local when `local`).
    pub display: PolyRing,
    /// Reduced Groebner basis of J.
    pub relations: Vec<Poly>,
    pub local: bool,
    pub dim: usize,
    pub seed: u64,
    /// Overrides the default resolution bound for projective dimension.
    pub pd_steps: Option<usize>,
    global_eng: SbEngine,
    local_eng: SbEngine,
    cache: RwLock<HashMap<CacheKey, CacheValue>>,
}

impl fmt::Debug for QuotientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

/// Builds a ring, checking that the relations form a regular sequence.
pub fn make_ring(
    vars: &[&str],
    field: Field,
    weights: Option<Vec<u32>>,
    relations: &[&str],
    local: bool,
) -> Result<Ring> {
    let weights = weights.unwrap_or_else(|| vec![1; vars.len()]);
    if weights.len() != vars.len() {
        return usage(format!("{} weights given for {} variables", weights.len(), vars.len()));
    }
    let names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
    let global = PolyRing::new(names, field, MonomialOrder::new(crate::algebra::OrderScheme::WeightedDegRevLexGlobal, weights)?)?;
    let rels = relations.iter().map(|s| global.parse(s)).collect::<Result<Vec<_>>>()?;
    QuotientRing::new(global, rels, local, 0)
}

impl QuotientRing {
    /// `ambient` must carry a global weighted order.
    pub fn new(ambient: PolyRing, relations: Vec<Poly>, local: bool, seed: u64) -> Result<Ring> {
        if !ambient.order.is_global() {
            return usage("the ambient order must be global");
        }
        let mut seen = Vec::new();
        for r in &relations {
            if r.is_zero() {
                return usage("relations must be nonzero");
            }
            if r.is_local_unit() {
                return usage(format!("relation {} is a unit at the origin", ambient.display(r)));
            }
            if !seen.contains(r) {
                seen.push(r.clone());
            }
        }
        let display = if local { ambient.with_order(ambient.order.to_local()) } else { ambient.clone() };
        let global_eng = SbEngine::new(ambient.field, ambient.order.clone());
        let local_eng = SbEngine::new(ambient.field, ambient.order.to_local());
        let gb = crate::algebra::standard_basis(&ambient, &seen);
        let lsb = local_eng.standard_basis(&seen.iter().map(|p| local_eng.from_polys(std::slice::from_ref(p))).collect::<Vec<_>>(), true);
        let n = ambient.nvars();
        let lead = sbasis::leading_ideals(&lsb, 1);
        let dim = sbasis::module_dimension(&lead, n)
            .ok_or_else(|| Error::NotCompleteIntersection("the relations generate the unit ideal".into()))?;
        let height = n - dim;
        if height != seen.len() {
            return Err(Error::NotCompleteIntersection(format!(
                "{} relations generate an ideal of height {}",
                seen.len(),
                height
            )));
        }
        Ok(Arc::new(QuotientRing {
            ambient,
            display,
            relations: gb,
            local,
            dim,
            seed,
            pd_steps: None,
            global_eng,
            local_eng,
            cache: RwLock::new(HashMap::new()),
        }))
    }

    /// A copy of this ring drawing randomness from another seed.
    pub fn with_seed(&self, seed: u64) -> Ring {
        self.with_options(seed, self.pd_steps)
    }

    pub fn with_options(&self, seed: u64, pd_steps: Option<usize>) -> Ring {
        Arc::new(QuotientRing {
            ambient: self.ambient.clone(),
            display: self.display.clone(),
            relations: self.relations.clone(),
            local: self.local,
            dim: self.dim,
            seed,
            pd_steps,
            global_eng: self.global_eng.clone(),
            local_eng: self.local_eng.clone(),
            cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn field(&self) -> Field {
        self.ambient.field
    }

    pub fn nvars(&self) -> usize {
        self.ambient.nvars()
    }

    pub fn weights(&self) -> &[u32] {
        &self.ambient.order.weights
    }

    pub fn is_hypersurface(&self) -> bool {
        self.relations.len() == 1
    }

    pub fn is_regular(&self) -> bool {
        self.relations.is_empty()
    }

    /// The defining equation of a hypersurface ring.
    pub fn hypersurface_equation(&self) -> Option<&Poly> {
        if self.is_hypersurface() {
            self.relations.first()
        } else {
            None
        }
    }

    /// Seeded generator for one randomized step, keyed by `salt`.
    pub fn rng(&self, salt: &str) -> ChaCha8Rng {
        let mut h = DefaultHasher::new();
        salt.hash(&mut h);
        ChaCha8Rng::seed_from_u64(self.seed ^ h.finish())
    }

    pub fn global_engine(&self) -> &SbEngine {
        &self.global_eng
    }

    pub fn local_engine(&self) -> &SbEngine {
        &self.local_eng
    }

    /// Canonical representative modulo J.
    pub fn reduce(&self, p: &Poly) -> Poly {
        if self.relations.is_empty() || p.is_zero() {
            return p.clone();
        }
        crate::algebra::normal_form(&self.ambient, p, &self.relations)
    }

    pub fn reduce_matrix(&self, m: &Matrix) -> Matrix {
        m.map(|p| self.reduce(p))
    }

    pub fn parse(&self, src: &str) -> Result<Poly> {
        Ok(self.reduce(&self.ambient.parse(src)?))
    }

    pub fn var(&self, name: &str) -> Result<Poly> {
        match self.ambient.var_index(name) {
            Some(i) => Ok(self.ambient.var(i)),
            None => usage(format!("unknown variable '{name}'")),
        }
    }

    pub fn one(&self) -> Poly {
        self.ambient.one()
    }

    pub fn add(&self, a: &Poly, b: &Poly) -> Poly {
        self.ambient.add(a, b)
    }

    pub fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        self.ambient.sub(a, b)
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        self.reduce(&self.ambient.mul(a, b))
    }

    pub fn mat_mul(&self, a: &Matrix, b: &Matrix) -> Matrix {
        self.reduce_matrix(&a.mul(&self.ambient, b))
    }

    pub fn display_poly(&self, p: &Poly) -> String {
        self.display.display(&self.display.import(p))
    }

    pub fn display_matrix(&self, m: &Matrix) -> String {
        m.display(&self.display)
    }

    /// `FIELD[vars]/(relations) weights(..) local|global`.
    pub fn describe(&self) -> String {
        let rels: Vec<String> = self.relations.iter().map(|r| self.display_poly(r)).collect();
        let w: Vec<String> = self.weights().iter().map(|w| w.to_string()).collect();
        format!(
            "{}[{}]/({}) weights({}) {}",
            self.field(),
            self.ambient.names.join(","),
            rels.join(", "),
            w.join(","),
            if self.local { "local" } else { "global" }
        )
    }

    fn cached(&self, key: &CacheKey) -> Option<CacheValue> {
        self.cache.read().unwrap().get(key).cloned()
    }

    fn store(&self, key: CacheKey, value: CacheValue) {
        self.cache.write().unwrap().entry(key).or_insert(value);
    }

    fn relation_columns(&self, rank: usize) -> Vec<Vector> {
        let mut out = Vec::new();
        for i in 0..rank {
            for r in &self.relations {
                let mut coords = vec![Poly::zero(); rank];
                coords[i] = r.clone();
                out.push(coords);
            }
        }
        out.iter().map(|c| self.global_eng.from_polys(c)).collect()
    }

    /// Generators (as columns) of the kernel of `a: R^cols -> R^rows`.
    pub fn kernel(&self, a: &Matrix) -> Matrix {
        let key = CacheKey::Kernel(a.clone());
        if let Some(CacheValue::Kernel(k)) = self.cached(&key) {
            return (*k).clone();
        }
        let rows = a.rows();
        let n = a.cols();
        let mut cols = a.columns();
        for i in 0..rows {
            for r in &self.relations {
                let mut c = vec![Poly::zero(); rows];
                c[i] = r.clone();
                cols.push(c);
            }
        }
        let graded = cols.iter().flatten().all(|p| self.ambient.is_homogeneous(p)) && a.infer_grading(&self.ambient).is_some();
        let syz = if graded {
            let vs: Vec<Vector> = cols.iter().map(|c| self.global_eng.from_polys(c)).collect();
            let syz = self.global_eng.syzygies(&vs, rows);
            syz.iter().map(|v| self.global_eng.to_polys(v, cols.len(), &self.ambient)).collect()
        } else {
            self.homogenized_syzygies(&cols, rows)
        };
        let mut out: Vec<Vec<Poly>> = Vec::new();
        for v in syz {
            let coords: Vec<Poly> = v[..n].iter().map(|p| self.reduce(p)).collect();
            if coords.iter().any(|p| !p.is_zero()) && !out.contains(&coords) {
                out.push(coords);
            }
        }
        let k = Matrix::from_cols(n, out);
        debug_assert!(self.mat_mul(a, &k).is_zero());
        self.store(key, CacheValue::Kernel(Arc::new(k.clone())));
        k
    }

    /// Syzygies of ungraded columns: each column is homogenized with a new
    /// variable of weight 1 up to its top weighted degree, graded syzygies
    /// are computed, and the new variable is set to 1.
    fn homogenized_syzygies(&self, cols: &[Vec<Poly>], rows: usize) -> Vec<Vec<Poly>> {
        let amb = &self.ambient;
        let nv = amb.nvars();
        let mut weights = amb.order.weights.clone();
        weights.push(1);
        let order = MonomialOrder::new(OrderScheme::WeightedDegRevLexGlobal, weights).expect("positive weights");
        let eng = SbEngine::new(amb.field, order.clone());
        let lift = |m: &Monomial, e: u32| {
            let mut x = m.0.clone();
            x.push(e as u16);
            Monomial(x)
        };
        let top = |c: &[Poly]| c.iter().flat_map(|p| p.terms.iter()).map(|(m, _)| order.weight(&lift(m, 0))).max().unwrap_or(0);
        let vs: Vec<Vector> = cols
            .iter()
            .map(|c| {
                let d = top(c);
                let terms = c
                    .iter()
                    .enumerate()
                    .flat_map(|(i, p)| {
                        p.terms.iter().map(move |(m, k)| (i, m, k))
                    })
                    .map(|(i, m, k)| {
                        let w = order.weight(&lift(m, 0));
                        Term { comp: i as u32, mono: lift(m, d - w), coeff: k.clone() }
                    })
                    .collect();
                eng.normalize(terms)
            })
            .collect();
        eng.syzygies(&vs, rows)
            .iter()
            .map(|v| {
                let mut coords: Vec<Vec<(Monomial, Coeff)>> = vec![Vec::new(); cols.len()];
                for t in &v.terms {
                    coords[t.comp as usize].push((Monomial(t.mono.0[..nv].into()), t.coeff.clone()));
                }
                coords.into_iter().map(|ts| amb.from_terms(ts)).collect()
            })
            .collect()
    }

    /// Local standard basis of `im(cols) + J * R^rank` in `P^rank`.
    pub fn local_sb(&self, cols: &Matrix) -> Arc<Vec<Vector>> {
        let compressed = cols.compress();
        let key = CacheKey::LocalSb(compressed.rows(), compressed.columns());
        if let Some(CacheValue::Sb(sb)) = self.cached(&key) {
            return sb;
        }
        let rank = compressed.rows();
        let mut gens: Vec<Vector> = compressed.columns().iter().map(|c| self.local_eng.from_polys(c)).collect();
        for v in self.relation_columns(rank) {
            gens.push(self.local_eng.normalize(v.terms));
        }
        let sb = Arc::new(self.local_eng.standard_basis(&gens, rank == 1));
        self.store(key, CacheValue::Sb(sb.clone()));
        sb
    }

    /// Whether `v` lies in the localized submodule `im(cols) + J * R^rank`.
    pub fn locally_contains(&self, cols: &Matrix, v: &[Poly]) -> bool {
        if v.iter().all(|p| p.is_zero()) {
            return true;
        }
        let sb = self.local_sb(cols);
        let refs: Vec<&Vector> = sb.iter().collect();
        self.local_eng.nf_mora(&self.local_eng.from_polys(v), &refs).is_zero()
    }

    /// Whether every column of `a` lies in the localized span of `b`.
    pub fn locally_included(&self, a: &Matrix, b: &Matrix) -> bool {
        (0..a.cols()).all(|j| self.locally_contains(b, &a.column(j)))
    }

    /// Leading monomial ideals (one per component) of the local standard
    /// basis of `im(cols) + J * R^rank`.
    pub fn local_leading(&self, cols: &Matrix) -> Vec<Vec<Monomial>> {
        sbasis::leading_ideals(&self.local_sb(cols), cols.rows())
    }

    /// Length of `R^rank / im(cols)` over the local ring, `None` if infinite.
    pub fn quotient_length(&self, cols: &Matrix) -> Option<usize> {
        let lead = self.local_leading(cols);
        let mut total = 0;
        for gens in &lead {
            total += sbasis::count_standard_monomials(gens, self.nvars())?;
        }
        Some(total)
    }

    /// Krull dimension of `R^rank / im(cols)`; `None` for the zero module.
    pub fn quotient_dimension(&self, cols: &Matrix) -> Option<usize> {
        sbasis::module_dimension(&self.local_leading(cols), self.nvars())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cusp_has_dimension_one() {
        let r = make_ring(&["x", "y"], Field::Prime(32003), Some(vec![3, 2]), &["x^2-y^3"], true).unwrap();
        assert_eq!(r.dim, 1);
        assert!(r.is_hypersurface());
    }

    #[test]
    fn polynomial_ring() {
        let r = make_ring(&["x", "y"], Field::Prime(32003), None, &[], false).unwrap();
        assert_eq!(r.dim, 2);
    }

    #[test]
    fn rejects_non_complete_intersections() {
        let err = make_ring(&["x", "y"], Field::Prime(32003), None, &["x^2", "x*y"], true).unwrap_err();
        assert!(matches!(err, Error::NotCompleteIntersection(_)));
        assert!(make_ring(&["x", "y"], Field::Prime(32003), None, &["x-1"], true).is_err());
    }

    #[test]
    fn kernel_of_koszul_row_over_cusp() {
        let r = make_ring(&["x", "y"], Field::Prime(32003), Some(vec![3, 2]), &["x^2-y^3"], true).unwrap();
        let row = Matrix::from_rows(vec![vec![r.parse("x").unwrap(), r.parse("y").unwrap()]]).unwrap();
        let k = r.kernel(&row);
        assert!(r.mat_mul(&row, &k).is_zero());
        let expect = Matrix::from_rows(vec![
            vec![r.parse("y").unwrap(), r.parse("x").unwrap()],
            vec![r.parse("-x").unwrap(), r.parse("-y^2").unwrap()],
        ])
        .unwrap();
        assert!(r.locally_included(&k, &expect));
        assert!(r.locally_included(&expect, &k));
    }

    #[test]
    fn lengths() {
        let r = make_ring(&["x", "y"], Field::Prime(32003), Some(vec![3, 2]), &["x^2-y^3"], true).unwrap();
        let row = Matrix::from_rows(vec![vec![r.parse("x").unwrap(), r.parse("y^2").unwrap()]]).unwrap();
        assert_eq!(r.quotient_length(&row), Some(2));
        let x = Matrix::from_rows(vec![vec![r.parse("x").unwrap()]]).unwrap();
        assert_eq!(r.quotient_length(&x), Some(3));
        assert_eq!(r.quotient_dimension(&Matrix::zero(1, 0)), Some(1));
    }
}
