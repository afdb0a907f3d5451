//! Standard bases of submodules of free modules P^r over P = k[x1..xn].
//!
//! Global orders run Buchberger's algorithm with the normal selection strategy
//! and the Gebauer-Moeller criteria. Local orders run the same pair loop with
//! Mora's ecart-driven weak normal form, which gives standard bases of the
//! localization at the origin. Ideals are the rank-one case.

use std::cmp::Ordering;

use super::field::{Coeff, Field};
use super::monomial::{Monomial, MonomialOrder};
use super::poly::{Poly, PolyRing};

/// One term `coeff * mono * e_comp` of a module element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub comp: u32,
    pub mono: Monomial,
    pub coeff: Coeff,
}

/// Sparse module element, terms strictly decreasing in the engine's order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Vector {
    pub terms: Vec<Term>,
}

impl Vector {
    pub fn zero() -> Vector {
        Vector { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    /// The coordinate polynomials, unsorted; callers re-sort under their ring.
    pub fn component_terms(&self, comp: u32) -> Vec<(Monomial, Coeff)> {
        self.terms
            .iter()
            .filter(|t| t.comp == comp)
            .map(|t| (t.mono.clone(), t.coeff.clone()))
            .collect()
    }
}

/// Position-over-term module order: lower component index dominates, then
/// the monomial order decides.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleOrder {
    pub mono: MonomialOrder,
}

impl ModuleOrder {
    pub fn new(mono: MonomialOrder) -> ModuleOrder {
        ModuleOrder { mono }
    }

    #[inline]
    pub fn cmp(&self, a_comp: u32, a: &Monomial, b_comp: u32, b: &Monomial) -> Ordering {
        b_comp.cmp(&a_comp).then_with(|| self.mono.cmp(a, b))
    }
}

/// Arithmetic and standard-basis routines for one field and module order.
#[derive(Clone, Debug)]
pub struct SbEngine {
    pub field: Field,
    pub order: ModuleOrder,
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    comp: u32,
    lcm: Monomial,
    deg: u32,
}

impl SbEngine {
    pub fn new(field: Field, mono: MonomialOrder) -> SbEngine {
        SbEngine { field, order: ModuleOrder::new(mono) }
    }

    pub fn is_local(&self) -> bool {
        !self.order.mono.is_global()
    }

    fn cmp_terms(&self, a: &Term, b: &Term) -> Ordering {
        self.order.cmp(a.comp, &a.mono, b.comp, &b.mono)
    }

    pub fn normalize(&self, mut terms: Vec<Term>) -> Vector {
        terms.sort_by(|a, b| self.cmp_terms(b, a));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(l) if l.comp == t.comp && l.mono == t.mono => l.coeff = self.field.add(&l.coeff, &t.coeff),
                _ => out.push(t),
            }
        }
        out.retain(|t| !self.field.is_zero(&t.coeff));
        Vector { terms: out }
    }

    /// Builds a vector from coordinate polynomials.
    pub fn from_polys(&self, coords: &[Poly]) -> Vector {
        let terms = coords
            .iter()
            .enumerate()
            .flat_map(|(c, p)| {
                p.terms.iter().map(move |(m, k)| Term { comp: c as u32, mono: m.clone(), coeff: k.clone() })
            })
            .collect();
        self.normalize(terms)
    }

    /// Splits a vector into `rank` coordinate polynomials sorted under `ring`.
    pub fn to_polys(&self, v: &Vector, rank: usize, ring: &PolyRing) -> Vec<Poly> {
        let mut coords: Vec<Vec<(Monomial, Coeff)>> = vec![Vec::new(); rank];
        for t in &v.terms {
            coords[t.comp as usize].push((t.mono.clone(), t.coeff.clone()));
        }
        coords.into_iter().map(|ts| ring.from_terms(ts)).collect()
    }

    pub fn add(&self, a: &Vector, b: &Vector) -> Vector {
        let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < a.terms.len() && j < b.terms.len() {
            match self.cmp_terms(&a.terms[i], &b.terms[j]) {
                Ordering::Greater => {
                    out.push(a.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = self.field.add(&a.terms[i].coeff, &b.terms[j].coeff);
                    if !self.field.is_zero(&c) {
                        out.push(Term { comp: a.terms[i].comp, mono: a.terms[i].mono.clone(), coeff: c });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a.terms[i..]);
        out.extend_from_slice(&b.terms[j..]);
        Vector { terms: out }
    }

    pub fn scale_mono(&self, a: &Vector, m: &Monomial, c: &Coeff) -> Vector {
        if self.field.is_zero(c) {
            return Vector::zero();
        }
        Vector {
            terms: a
                .terms
                .iter()
                .map(|t| Term { comp: t.comp, mono: t.mono.mul(m), coeff: self.field.mul(&t.coeff, c) })
                .collect(),
        }
    }

    /// `a - c*m*b` in one merge pass.
    fn sub_scaled(&self, a: &Vector, b: &Vector, m: &Monomial, c: &Coeff) -> Vector {
        let neg = self.field.neg(c);
        self.add(a, &self.scale_mono(b, m, &neg))
    }

    pub fn make_monic(&self, a: &Vector) -> Vector {
        match a.lead() {
            None => Vector::zero(),
            Some(t) => {
                let inv = self.field.inv(&t.coeff).unwrap();
                let one = Monomial::one(t.mono.nvars());
                self.scale_mono(a, &one, &inv)
            }
        }
    }

    fn weight(&self, m: &Monomial) -> u32 {
        self.order.mono.weight(m)
    }

    /// Mora's ecart: top weighted degree minus the leading term's weighted degree.
    pub fn ecart(&self, v: &Vector) -> u32 {
        match v.lead() {
            None => 0,
            Some(t) => {
                let top = v.terms.iter().map(|s| self.weight(&s.mono)).max().unwrap();
                top - self.weight(&t.mono)
            }
        }
    }

    fn spoly(&self, f: &Vector, g: &Vector) -> Vector {
        let (lf, lg) = (f.lead().unwrap(), g.lead().unwrap());
        let l = lf.mono.lcm(&lg.mono);
        let mf = lf.mono.quotient_of(&l);
        let mg = lg.mono.quotient_of(&l);
        let a = self.scale_mono(f, &mf, &lg.coeff);
        let b = self.scale_mono(g, &mg, &lf.coeff);
        self.add(&a, &Vector { terms: b.terms.into_iter().map(|t| Term { coeff: self.field.neg(&t.coeff), ..t }).collect() })
    }

    fn reduce_step(&self, h: &Vector, g: &Vector) -> Vector {
        let (lh, lg) = (h.lead().unwrap(), g.lead().unwrap());
        let m = lg.mono.quotient_of(&lh.mono);
        let c = self.field.div(&lh.coeff, &lg.coeff);
        self.sub_scaled(h, g, &m, &c)
    }

    fn divisor<'a>(&self, t: &Term, basis: impl Iterator<Item = &'a Vector>) -> Option<&'a Vector> {
        basis.into_iter().find(|g| {
            let l = g.lead().unwrap();
            l.comp == t.comp && l.mono.divides(&t.mono)
        })
    }

    /// Full normal form under a global order: no term of the result is
    /// divisible by a leading term of `basis`.
    pub fn nf_global(&self, f: &Vector, basis: &[Vector]) -> Vector {
        debug_assert!(!self.is_local());
        let mut h = f.clone();
        let mut done: Vec<Term> = Vec::new();
        while let Some(t) = h.lead().cloned() {
            match self.divisor(&t, basis.iter()) {
                Some(g) => h = self.reduce_step(&h, g),
                None => {
                    done.push(t);
                    h.terms.remove(0);
                }
            }
        }
        Vector { terms: done }
    }

    /// Top-reduction only (global orders).
    fn top_reduce_global(&self, f: &Vector, basis: &[&Vector]) -> Vector {
        let mut h = f.clone();
        while let Some(t) = h.lead() {
            match self.divisor(t, basis.iter().copied()) {
                Some(g) => h = self.reduce_step(&h, g),
                None => break,
            }
        }
        h
    }

    /// Mora's weak normal form. Zero iff `f` lies in the localized submodule
    /// generated by a standard basis `basis`.
    pub fn nf_mora(&self, f: &Vector, basis: &[&Vector]) -> Vector {
        let mut h = f.clone();
        let mut extra: Vec<Vector> = Vec::new();
        loop {
            let Some(t) = h.lead().cloned() else { return h };
            let eh = self.ecart(&h);
            let mut best: Option<(u32, Vector)> = None;
            for g in basis.iter().copied().chain(extra.iter()) {
                let l = g.lead().unwrap();
                if l.comp == t.comp && l.mono.divides(&t.mono) {
                    let e = self.ecart(g);
                    if best.as_ref().map_or(true, |(be, _)| e < *be) {
                        best = Some((e, g.clone()));
                        if e == 0 {
                            break;
                        }
                    }
                }
            }
            let Some((eg, g)) = best else { return h };
            if eg > eh {
                extra.push(h.clone());
            }
            h = self.reduce_step(&h, &g);
        }
    }

    /// Normal form dispatching on the order type.
    pub fn normal_form(&self, f: &Vector, basis: &[Vector]) -> Vector {
        if self.is_local() {
            let refs: Vec<&Vector> = basis.iter().collect();
            self.nf_mora(f, &refs)
        } else {
            self.nf_global(f, basis)
        }
    }

    fn pair_of(&self, store: &[Vector], i: usize, j: usize) -> Option<Pair> {
        let (a, b) = (store[i].lead().unwrap(), store[j].lead().unwrap());
        if a.comp != b.comp {
            return None;
        }
        let lcm = a.mono.lcm(&b.mono);
        let deg = self.weight(&lcm);
        Some(Pair { i: i.min(j), j: i.max(j), comp: a.comp, lcm, deg })
    }

    fn pair_cmp(&self, a: &Pair, b: &Pair) -> Ordering {
        // smallest first; the queue pops from the back
        let primary = if self.is_local() {
            a.deg.cmp(&b.deg).then_with(|| self.order.cmp(b.comp, &b.lcm, a.comp, &a.lcm))
        } else {
            self.order.cmp(a.comp, &a.lcm, b.comp, &b.lcm)
        };
        primary.then_with(|| (a.i, a.j).cmp(&(b.i, b.j)))
    }

    /// Gebauer-Moeller update after inserting `store[k]`.
    fn update(&self, store: &[Vector], active: &mut Vec<usize>, pairs: &mut Vec<Pair>, k: usize, ideal_case: bool) {
        let lk = store[k].lead().unwrap().clone();
        let mut cand: Vec<(Pair, bool)> = active
            .iter()
            .filter_map(|&i| {
                self.pair_of(store, i, k).map(|p| {
                    let coprime = ideal_case && store[i].lead().unwrap().mono.coprime(&lk.mono);
                    (p, coprime)
                })
            })
            .collect();
        // chain criterion among the new pairs
        let mut keep: Vec<(Pair, bool)> = Vec::new();
        for idx in 0..cand.len() {
            let (p, coprime) = &cand[idx];
            let dominated = !coprime
                && cand.iter().enumerate().any(|(o, (q, _))| {
                    o != idx
                        && q.lcm.divides(&p.lcm)
                        && (q.lcm != p.lcm || o < idx)
                })
                && !keep.iter().any(|(q, _)| q.lcm == p.lcm && q.i == p.i);
            if !dominated {
                keep.push((p.clone(), *coprime));
            }
        }
        cand.clear();
        let new_pairs: Vec<Pair> = keep.into_iter().filter(|(_, c)| !c).map(|(p, _)| p).collect();
        // old pairs made redundant by the new leading term
        pairs.retain(|p| {
            if p.comp != lk.comp || !lk.mono.divides(&p.lcm) {
                return true;
            }
            let li = store[p.i].lead().unwrap().mono.lcm(&lk.mono);
            let lj = store[p.j].lead().unwrap().mono.lcm(&lk.mono);
            li == p.lcm || lj == p.lcm
        });
        pairs.extend(new_pairs);
        pairs.sort_by(|a, b| self.pair_cmp(b, a));
        active.retain(|&i| {
            let l = store[i].lead().unwrap();
            !(l.comp == lk.comp && lk.mono.divides(&l.mono))
        });
        active.push(k);
    }

    /// Standard basis of the submodule generated by `gens`. The result is
    /// minimal (leading terms pairwise non-divisible), monic, sorted by
    /// leading term descending; under a global order it is fully reduced.
    pub fn standard_basis(&self, gens: &[Vector], ideal_case: bool) -> Vec<Vector> {
        let mut basis = self.minimal_basis(gens, ideal_case);
        if !self.is_local() {
            basis = self.interreduce(basis);
        }
        basis.sort_by(|a, b| self.cmp_terms(b.lead().unwrap(), a.lead().unwrap()));
        basis
    }

    /// Minimal but not tail-reduced standard basis.
    fn minimal_basis(&self, gens: &[Vector], ideal_case: bool) -> Vec<Vector> {
        let mut input: Vec<Vector> = gens.iter().filter(|g| !g.is_zero()).map(|g| self.make_monic(g)).collect();
        input.sort_by(|a, b| self.cmp_terms(a.lead().unwrap(), b.lead().unwrap()).then_with(|| a.terms.len().cmp(&b.terms.len())));
        input.dedup();
        let mut store: Vec<Vector> = Vec::new();
        let mut active: Vec<usize> = Vec::new();
        let mut pairs: Vec<Pair> = Vec::new();
        for g in input {
            let h = {
                let basis: Vec<&Vector> = active.iter().map(|&i| &store[i]).collect();
                if self.is_local() { self.nf_mora(&g, &basis) } else { self.top_reduce_global(&g, &basis) }
            };
            if h.is_zero() {
                continue;
            }
            store.push(self.make_monic(&h));
            let k = store.len() - 1;
            self.update(&store, &mut active, &mut pairs, k, ideal_case);
        }
        while let Some(p) = pairs.pop() {
            let s = self.spoly(&store[p.i], &store[p.j]);
            let h = {
                let basis: Vec<&Vector> = if self.is_local() {
                    // Mora's algorithm reduces against every element found so far
                    store.iter().collect()
                } else {
                    active.iter().map(|&i| &store[i]).collect()
                };
                if self.is_local() { self.nf_mora(&s, &basis) } else { self.top_reduce_global(&s, &basis) }
            };
            if h.is_zero() {
                continue;
            }
            store.push(self.make_monic(&h));
            let k = store.len() - 1;
            self.update(&store, &mut active, &mut pairs, k, ideal_case);
        }
        let basis: Vec<Vector> = active.iter().map(|&i| store[i].clone()).collect();
        self.minimalize(basis)
    }

    fn minimalize(&self, basis: Vec<Vector>) -> Vec<Vector> {
        let mut out: Vec<Vector> = Vec::new();
        for (i, g) in basis.iter().enumerate() {
            let lg = g.lead().unwrap();
            let redundant = basis.iter().enumerate().any(|(j, h)| {
                let lh = h.lead().unwrap();
                j != i && lh.comp == lg.comp && lh.mono.divides(&lg.mono) && (lh.mono != lg.mono || j < i)
            });
            if !redundant {
                out.push(g.clone());
            }
        }
        out
    }

    /// Tail reduction of a minimal global basis.
    fn interreduce(&self, basis: Vec<Vector>) -> Vec<Vector> {
        let mut out = Vec::with_capacity(basis.len());
        for (i, g) in basis.iter().enumerate() {
            let others: Vec<Vector> = basis.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, h)| h.clone()).collect();
            let lead = Vector { terms: vec![g.lead().unwrap().clone()] };
            let tail = Vector { terms: g.terms[1..].to_vec() };
            let rt = self.nf_global(&tail, &others);
            out.push(self.make_monic(&self.add(&lead, &rt)));
        }
        out
    }

    /// Generators of the syzygy module of `cols` (elements of P^rank): the
    /// returned vectors live in P^cols.len(), component j weighting cols[j].
    pub fn syzygies(&self, cols: &[Vector], rank: usize) -> Vec<Vector> {
        let n = cols.len();
        if n == 0 {
            return Vec::new();
        }
        let nvars = self.order.mono.nvars();
        let one = Monomial::one(nvars);
        let aug: Vec<Vector> = cols
            .iter()
            .enumerate()
            .map(|(j, c)| {
                let mut terms = c.terms.clone();
                terms.push(Term { comp: (rank + j) as u32, mono: one.clone(), coeff: self.field.one() });
                self.normalize(terms)
            })
            .collect();
        // under position-over-term the syzygy part only reduces against itself
        let syz: Vec<Vector> = self
            .minimal_basis(&aug, false)
            .into_iter()
            .filter(|g| g.lead().unwrap().comp as usize >= rank)
            .collect();
        let mut syz = if self.is_local() { syz } else { self.interreduce(syz) };
        syz.sort_by(|a, b| self.cmp_terms(b.lead().unwrap(), a.lead().unwrap()));
        syz.into_iter()
            .map(|g| Vector {
                terms: g.terms.into_iter().map(|t| Term { comp: t.comp - rank as u32, ..t }).collect(),
            })
            .collect()
    }
}

/// Leading monomial submodule summary: per component, the minimal monomial
/// generators of the leading ideal.
pub fn leading_ideals(basis: &[Vector], rank: usize) -> Vec<Vec<Monomial>> {
    let mut out = vec![Vec::new(); rank];
    for g in basis {
        let t = g.lead().unwrap();
        out[t.comp as usize].push(t.mono.clone());
    }
    out
}

/// Number of monomials outside a monomial ideal, or `None` if infinite.
pub fn count_standard_monomials(gens: &[Monomial], nvars: usize) -> Option<usize> {
    if nvars == 0 {
        return Some(if gens.is_empty() { 1 } else { 0 });
    }
    // each variable needs a pure power in the ideal
    let mut bounds = vec![0u16; nvars];
    for (v, b) in bounds.iter_mut().enumerate() {
        let pure = gens
            .iter()
            .filter(|m| m.exponents().iter().enumerate().all(|(i, &e)| i == v || e == 0))
            .map(|m| m.exponents()[v])
            .min()?;
        *b = pure;
    }
    let mut count = 0usize;
    let mut cur = vec![0u16; nvars];
    loop {
        let m = Monomial::from_exponents(&cur);
        if !gens.iter().any(|g| g.divides(&m)) {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == nvars {
                return Some(count);
            }
            cur[i] += 1;
            if cur[i] < bounds[i] {
                break;
            }
            cur[i] = 0;
            i += 1;
        }
    }
}

/// Monomials outside a monomial ideal, when finitely many.
pub fn standard_monomials(gens: &[Monomial], nvars: usize) -> Option<Vec<Monomial>> {
    count_standard_monomials(gens, nvars)?;
    let bound: u32 = (0..nvars)
        .map(|v| {
            gens.iter()
                .filter(|m| m.exponents().iter().enumerate().all(|(i, &e)| i == v || e == 0))
                .map(|m| m.exponents()[v] as u32)
                .min()
                .unwrap_or(0)
        })
        .sum();
    Some(
        Monomial::below_degree(nvars, bound + 1)
            .into_iter()
            .filter(|m| !gens.iter().any(|g| g.divides(m)))
            .collect(),
    )
}

/// Krull dimension of P / (monomial ideal) via maximal independent sets.
pub fn monomial_dimension(gens: &[Monomial], nvars: usize) -> usize {
    let mut best = 0;
    for mask in 0u32..(1u32 << nvars) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        // independent: no generator is supported inside the variable set
        let independent = gens.iter().all(|g| {
            g.exponents().iter().enumerate().any(|(i, &e)| e > 0 && mask & (1 << i) == 0)
        });
        if independent {
            best = size;
        }
    }
    best
}

/// Krull dimension of a quotient module P^rank / L for a monomial submodule;
/// `None` when the quotient is zero.
pub fn module_dimension(leading: &[Vec<Monomial>], nvars: usize) -> Option<usize> {
    leading
        .iter()
        .filter(|gens| !gens.iter().any(|m| m.is_one()))
        .map(|gens| monomial_dimension(gens, nvars))
        .max()
}
