//! Ideals of a quotient ring.

use std::cmp::Ordering;
use std::fmt;

use crate::algebra::sbasis::{self, Term, Vector};
use crate::algebra::{Matrix, Poly};
use crate::error::{usage, Result};

use super::module::PresentedModule;
use super::ring::Ring;

/// An ideal of R given by representatives of its generators.
#[derive(Clone)]
pub struct Ideal {
    pub ring: Ring,
    pub gens: Vec<Poly>,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display())
    }
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Ideal) -> bool {
        std::sync::Arc::ptr_eq(&self.ring, &other.ring) && self.equals(other)
    }
}

impl Ideal {
    pub fn new(ring: &Ring, gens: Vec<Poly>) -> Ideal {
        let mut out: Vec<Poly> = Vec::new();
        for g in gens {
            let g = ring.reduce(&g);
            if !g.is_zero() && !out.contains(&g) {
                out.push(g);
            }
        }
        Ideal { ring: ring.clone(), gens: out }
    }

    pub fn parse(ring: &Ring, gens: &[&str]) -> Result<Ideal> {
        let polys = gens.iter().map(|s| ring.parse(s)).collect::<Result<Vec<_>>>()?;
        Ok(Ideal::new(ring, polys))
    }

    pub fn zero(ring: &Ring) -> Ideal {
        Ideal { ring: ring.clone(), gens: Vec::new() }
    }

    pub fn unit(ring: &Ring) -> Ideal {
        Ideal::new(ring, vec![ring.one()])
    }

    /// The maximal ideal at the origin.
    pub fn maximal(ring: &Ring) -> Ideal {
        Ideal::new(ring, (0..ring.nvars()).map(|i| ring.ambient.var(i)).collect())
    }

    /// The generators as a 1 x k matrix.
    pub fn row(&self) -> Matrix {
        Matrix::from_rows(vec![self.gens.clone()]).unwrap_or_else(|_| Matrix::zero(1, 0))
    }

    fn same_ring(&self, other: &Ideal) -> Result<()> {
        if !std::sync::Arc::ptr_eq(&self.ring, &other.ring) {
            return usage("ideals live over different rings");
        }
        Ok(())
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.same_ring(other)?;
        Ok(Ideal::new(&self.ring, self.gens.iter().chain(&other.gens).cloned().collect()))
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.same_ring(other)?;
        let mut gens = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                gens.push(self.ring.mul(a, b));
            }
        }
        Ok(Ideal::new(&self.ring, gens))
    }

    /// The ideal quotient `(self : other) = {a : a * other ⊆ self}`.
    pub fn colon(&self, other: &Ideal) -> Result<Ideal> {
        self.same_ring(other)?;
        let k = other.gens.len();
        if k == 0 {
            return Ok(Ideal::unit(&self.ring));
        }
        // kernel of R -> (R/self)^k, 1 |-> (f_1, ..., f_k)
        let col = Matrix::from_cols(k, vec![other.gens.clone()]);
        let blocks: Vec<Matrix> = (0..k).map(|_| self.row()).collect();
        let refs: Vec<&Matrix> = blocks.iter().collect();
        let diag = Matrix::block_diag(&refs);
        let m = Matrix::hstack(k, &[&col, &diag]);
        let ker = self.ring.kernel(&m);
        Ok(Ideal::new(&self.ring, ker.row(0)))
    }

    /// `(self : f)` for a single element.
    pub fn colon_element(&self, f: &Poly) -> Result<Ideal> {
        self.colon(&Ideal::new(&self.ring, vec![f.clone()]))
    }

    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        self.same_ring(other)?;
        let one = self.ring.one();
        let col = Matrix::from_cols(2, vec![vec![one.clone(), one]]);
        let diag = Matrix::block_diag(&[&self.row(), &other.row()]);
        let m = Matrix::hstack(2, &[&col, &diag]);
        let ker = self.ring.kernel(&m);
        Ok(Ideal::new(&self.ring, ker.row(0)))
    }

    /// Membership in the localized ideal (or the global one over a global ring).
    pub fn contains(&self, f: &Poly) -> bool {
        let f = self.ring.reduce(f);
        if f.is_zero() {
            return true;
        }
        if self.ring.local {
            self.ring.locally_contains(&self.row(), &[f])
        } else {
            let basis = self.global_basis();
            crate::algebra::normal_form(&self.ring.ambient, &f, &basis).is_zero()
        }
    }

    pub fn is_subset(&self, other: &Ideal) -> bool {
        self.gens.iter().all(|g| other.contains(g))
    }

    pub fn equals(&self, other: &Ideal) -> bool {
        self.is_subset(other) && other.is_subset(self)
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.contains(&self.ring.one())
    }

    /// Reduced Groebner basis of the preimage `gens + J` in the ambient ring.
    pub fn global_basis(&self) -> Vec<Poly> {
        let gens: Vec<Poly> = self.gens.iter().chain(&self.ring.relations).cloned().collect();
        crate::algebra::standard_basis(&self.ring.ambient, &gens)
    }

    /// Krull dimension of R/I; `None` for the unit ideal.
    pub fn quotient_dimension(&self) -> Option<usize> {
        self.ring.quotient_dimension(&self.row())
    }

    /// Height dim R - dim R/I (the unit ideal gets dim R + 1).
    pub fn height(&self) -> usize {
        match self.quotient_dimension() {
            Some(d) => self.ring.dim - d,
            None => self.ring.dim + 1,
        }
    }

    pub fn colength(&self) -> Option<usize> {
        self.ring.quotient_length(&self.row())
    }

    /// R/I as a presented module.
    pub fn quotient(&self) -> PresentedModule {
        PresentedModule::new(&self.ring, self.row())
    }

    /// I as a module, presented on its generators.
    pub fn as_module(&self) -> PresentedModule {
        PresentedModule::subquotient(&self.ring, &self.row(), &Matrix::zero(1, 0))
    }

    /// Canonical generators: a standard basis, pruned of members redundant
    /// modulo J, listed in decreasing order of the ring's printing order.
    pub fn canonical_gens(&self) -> Vec<Poly> {
        if self.is_unit() {
            return vec![self.ring.one()];
        }
        let ring = &self.ring;
        let global = self.global_basis();
        let homogeneous = global.iter().all(|g| ring.ambient.is_homogeneous(g));
        let mut basis: Vec<Poly> = if homogeneous || !ring.local { global } else { self.local_reduced_basis() };
        // drop generators already implied by the others together with J
        let mut i = basis.len();
        while i > 0 {
            i -= 1;
            let others: Vec<Poly> = basis.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| p.clone()).collect();
            let candidate = Ideal::new(ring, others);
            let b = ring.reduce(&basis[i]);
            if b.is_zero() || candidate.contains(&b) {
                basis.remove(i);
            }
        }
        let mut out: Vec<Poly> = basis.iter().map(|p| ring.reduce(p)).filter(|p| !p.is_zero()).collect();
        let disp = &ring.display;
        out.iter_mut().for_each(|p| *p = ring.ambient.import(&disp.make_monic(&disp.import(p))));
        out.sort_by(|a, b| {
            let (ia, ib) = (disp.import(a), disp.import(b));
            let la = ia.lm().unwrap();
            let lb = ib.lm().unwrap();
            disp.cmp(lb, la).then_with(|| disp.display(&ia).cmp(&disp.display(&ib)))
        });
        out
    }

    /// Minimal local standard basis with tails reduced. When the ideal has
    /// finite colength it contains every monomial of weighted degree above
    /// its standard monomials, and such terms are dropped.
    fn local_reduced_basis(&self) -> Vec<Poly> {
        let ring = &self.ring;
        let eng = ring.local_engine();
        let sb = ring.local_sb(&self.row());
        let lead = sbasis::leading_ideals(&sb, 1);
        let n = ring.nvars();
        let bound = sbasis::standard_monomials(&lead[0], n)
            .map(|ms| ms.iter().map(|m| eng.order.mono.weight(m)).max().map_or(0, |d| d + 1));
        let mut out = Vec::new();
        for g in sb.iter() {
            let mut v = g.clone();
            let mut steps = 0;
            loop {
                if let Some(b) = bound {
                    let lead_t = v.terms[0].clone();
                    let tail = v.terms[1..].iter().filter(|t| eng.order.mono.weight(&t.mono) < b).cloned();
                    v.terms = std::iter::once(lead_t).chain(tail).collect();
                }
                let pos = v.terms.iter().skip(1).position(|t| {
                    sb.iter().any(|h| {
                        let l = h.lead().unwrap();
                        l.mono.divides(&t.mono)
                    })
                });
                let Some(p) = pos else { break };
                steps += 1;
                if bound.is_none() && steps > 64 {
                    break;
                }
                let t: Term = v.terms[p + 1].clone();
                let h = sb.iter().find(|h| h.lead().unwrap().mono.divides(&t.mono)).unwrap();
                let l = h.lead().unwrap();
                let q = l.mono.quotient_of(&t.mono);
                let c = eng.field.neg(&eng.field.div(&t.coeff, &l.coeff));
                let scaled = eng.scale_mono(h, &q, &c);
                v = eng.add(&v, &scaled);
            }
            let v = eng.make_monic(&Vector { terms: v.terms });
            out.push(ring.ambient.from_terms(v.component_terms(0)));
        }
        out
    }

    /// `(g1, g2, ...)` with canonical generators.
    pub fn display(&self) -> String {
        let gens = self.canonical_gens();
        if gens.is_empty() {
            return "(0)".to_string();
        }
        let parts: Vec<String> = gens.iter().map(|g| self.ring.display_poly(g)).collect();
        format!("({})", parts.join(", "))
    }

    /// Generators ordered for regular-sequence searches: lexicographically
    /// largest leading monomial first.
    pub fn lex_sorted_gens(&self) -> Vec<Poly> {
        let mut gens = self.canonical_gens();
        let lex = crate::algebra::MonomialOrder::lex(self.ring.nvars());
        gens.sort_by(|a, b| {
            let la = a.terms.iter().map(|t| &t.0).max_by(|x, y| lex.cmp(x, y)).unwrap();
            let lb = b.terms.iter().map(|t| &t.0).max_by(|x, y| lex.cmp(x, y)).unwrap();
            match lex.cmp(lb, la) {
                Ordering::Equal => a.len().cmp(&b.len()),
                o => o,
            }
        });
        gens
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;
    use crate::modcalc::ring::make_ring;

    fn cusp() -> Ring {
        make_ring(&["x", "y"], Field::Prime(32003), Some(vec![3, 2]), &["x^2-y^3"], true).unwrap()
    }

    #[test]
    fn colon_identities() {
        let r = cusp();
        let x = Ideal::parse(&r, &["x"]).unwrap();
        let m = Ideal::maximal(&r);
        let expect = Ideal::parse(&r, &["x", "y^2"]).unwrap();
        assert!(x.colon(&m).unwrap().equals(&expect));
        let x2 = Ideal::parse(&r, &["x^2"]).unwrap();
        let i = Ideal::parse(&r, &["x^2", "x*y"]).unwrap();
        assert!(x2.colon(&i).unwrap().equals(&expect));
        assert!(expect.colon(&Ideal::unit(&r)).unwrap().equals(&expect));
        assert_eq!(expect.display(), "(x, y^2)");
    }

    #[test]
    fn intersection_and_heights() {
        let r = cusp();
        let a = Ideal::parse(&r, &["x"]).unwrap();
        let b = Ideal::parse(&r, &["y"]).unwrap();
        let c = a.intersect(&b).unwrap();
        assert!(c.contains(&r.parse("x*y").unwrap()));
        assert!(!c.contains(&r.parse("x").unwrap()));
        assert_eq!(Ideal::maximal(&r).height(), 1);
        assert_eq!(Ideal::zero(&r).height(), 0);
        assert_eq!(Ideal::zero(&r).display(), "(0)");
        assert_eq!(Ideal::unit(&r).display(), "(1)");
    }

    #[test]
    fn non_homogeneous_printing_is_stable() {
        let r = cusp();
        let i = Ideal::parse(&r, &["x+y^2", "y^3"]).unwrap();
        let again = Ideal::new(&r, i.canonical_gens());
        assert!(again.equals(&i));
        assert_eq!(again.display(), i.display());
    }
}
