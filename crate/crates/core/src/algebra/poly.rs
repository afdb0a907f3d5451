//! Sparse polynomials over a [`Field`], kept sorted under a [`MonomialOrder`].

use std::cmp::Ordering;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::field::{Coeff, Field};
use super::monomial::{Monomial, MonomialOrder};
use crate::error::{usage, Error, Result};

/// A polynomial: terms strictly decreasing in the owning ring's order, no
/// zero coefficients. The zero polynomial has no terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    pub terms: Vec<(Monomial, Coeff)>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(Monomial, Coeff)> {
        self.terms.first()
    }

    pub fn lm(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    /// Constant term (coefficient of 1), if nonzero.
    pub fn constant_term(&self) -> Option<&Coeff> {
        self.terms.iter().find(|(m, _)| m.is_one()).map(|(_, c)| c)
    }

    /// A unit of the local ring at the origin: nonzero constant term.
    pub fn is_local_unit(&self) -> bool {
        self.constant_term().is_some()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Lowest total degree of a term; `None` for zero.
    pub fn order_at_origin(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).min()
    }
}

/// The ambient polynomial ring k[x1..xn] with a fixed monomial order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    pub names: Vec<String>,
    pub field: Field,
    pub order: MonomialOrder,
}

impl PolyRing {
    pub fn new(names: Vec<String>, field: Field, order: MonomialOrder) -> Result<PolyRing> {
        if names.len() != order.nvars() {
            return usage("order weight count differs from the variable count");
        }
        Ok(PolyRing { names, field, order })
    }

    /// Same variables and field under another order.
    pub fn with_order(&self, order: MonomialOrder) -> PolyRing {
        PolyRing { names: self.names.clone(), field: self.field, order }
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(a, b)
    }

    pub fn zero(&self) -> Poly {
        Poly::zero()
    }

    pub fn one(&self) -> Poly {
        self.constant(self.field.one())
    }

    pub fn constant(&self, c: Coeff) -> Poly {
        self.monomial(Monomial::one(self.nvars()), c)
    }

    pub fn from_i64(&self, v: i64) -> Poly {
        self.constant(self.field.from_i64(v))
    }

    pub fn var(&self, i: usize) -> Poly {
        self.monomial(Monomial::var(self.nvars(), i), self.field.one())
    }

    pub fn monomial(&self, m: Monomial, c: Coeff) -> Poly {
        if self.field.is_zero(&c) {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Builds a canonical polynomial from arbitrary terms.
    pub fn from_terms(&self, mut terms: Vec<(Monomial, Coeff)>) -> Poly {
        terms.sort_by(|a, b| self.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, Coeff)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = self.field.add(lc, &c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !self.field.is_zero(c));
        Poly { terms: out }
    }

    /// Re-sorts a polynomial built under another order.
    pub fn import(&self, p: &Poly) -> Poly {
        let mut terms = p.terms.clone();
        terms.sort_by(|a, b| self.cmp(&b.0, &a.0));
        Poly { terms }
    }

    pub fn add(&self, a: &Poly, b: &Poly) -> Poly {
        let f = &self.field;
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match self.cmp(&a.terms[i].0, &b.terms[j].0) {
                Ordering::Greater => {
                    out.push(a.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = f.add(&a.terms[i].1, &b.terms[j].1);
                    if !f.is_zero(&c) {
                        out.push((a.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a.terms[i..]);
        out.extend_from_slice(&b.terms[j..]);
        Poly { terms: out }
    }

    pub fn neg(&self, a: &Poly) -> Poly {
        Poly { terms: a.terms.iter().map(|(m, c)| (m.clone(), self.field.neg(c))).collect() }
    }

    pub fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, a: &Poly, c: &Coeff) -> Poly {
        if self.field.is_zero(c) {
            return Poly::zero();
        }
        Poly { terms: a.terms.iter().map(|(m, x)| (m.clone(), self.field.mul(x, c))).collect() }
    }

    /// `c * m * a`; monomial multiplication preserves the term order.
    pub fn mul_term(&self, a: &Poly, m: &Monomial, c: &Coeff) -> Poly {
        if self.field.is_zero(c) {
            return Poly::zero();
        }
        Poly { terms: a.terms.iter().map(|(am, ac)| (am.mul(m), self.field.mul(ac, c))).collect() }
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        let (small, big) = if a.len() <= b.len() { (a, b) } else { (b, a) };
        let mut acc = Poly::zero();
        for (m, c) in &small.terms {
            acc = self.add(&acc, &self.mul_term(big, m, c));
        }
        acc
    }

    pub fn pow(&self, a: &Poly, e: u32) -> Poly {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    pub fn make_monic(&self, a: &Poly) -> Poly {
        match a.leading() {
            None => Poly::zero(),
            Some((_, c)) => {
                let inv = self.field.inv(c).expect("nonzero leading coefficient");
                self.scale(a, &inv)
            }
        }
    }

    pub fn is_homogeneous(&self, a: &Poly) -> bool {
        let mut it = a.terms.iter().map(|(m, _)| self.order.weight(m));
        match it.next() {
            None => true,
            Some(w) => it.all(|v| v == w),
        }
    }

    /// Weighted degree of a homogeneous polynomial.
    pub fn weighted_degree(&self, a: &Poly) -> Option<u32> {
        a.terms.iter().map(|(m, _)| self.order.weight(m)).max()
    }

    /// Exact quotient `a / b` under a global order; `None` if `b` does not divide `a`.
    pub fn div_exact(&self, a: &Poly, b: &Poly) -> Option<Poly> {
        debug_assert!(self.order.is_global());
        let (bm, bc) = b.leading()?.clone();
        let binv = self.field.inv(&bc)?;
        let mut rem = a.clone();
        let mut quot = Vec::new();
        while let Some((rm, rc)) = rem.leading().cloned() {
            if !bm.divides(&rm) {
                return None;
            }
            let qm = bm.quotient_of(&rm);
            let qc = self.field.mul(&rc, &binv);
            rem = self.sub(&rem, &self.mul_term(b, &qm, &qc));
            quot.push((qm, qc));
        }
        Some(self.from_terms(quot))
    }

    /// Drops every term of total degree at least `bound`.
    pub fn truncate_degree(&self, a: &Poly, bound: u32) -> Poly {
        Poly { terms: a.terms.iter().filter(|(m, _)| m.degree() < bound).cloned().collect() }
    }

    pub fn display(&self, a: &Poly) -> String {
        if a.is_zero() {
            return "0".to_string();
        }
        let f = &self.field;
        let mut s = String::new();
        for (idx, (m, c)) in a.terms.iter().enumerate() {
            let neg = f.is_negative_display(c);
            let abs = if neg { f.neg(c) } else { c.clone() };
            if idx == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { "-" } else { "+" });
            }
            let mono = self.display_monomial(m);
            if mono.is_empty() {
                s.push_str(&f.display(&abs));
            } else {
                if !f.is_one(&abs) {
                    let _ = write!(s, "{}*", f.display(&abs));
                }
                s.push_str(&mono);
            }
        }
        s
    }

    pub fn display_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.names[i].clone()),
                _ => parts.push(format!("{}^{}", self.names[i], e)),
            }
        }
        parts.join("*")
    }

    /// Parses a polynomial such as `x^2-3/2*x*y+(y-1)^2`.
    pub fn parse(&self, src: &str) -> Result<Poly> {
        let toks = tokenize_poly(src)?;
        let mut p = PolyParser { ring: self, toks: &toks, pos: 0 };
        let v = p.sum()?;
        if p.pos != toks.len() {
            return Err(Error::Usage(format!("trailing input in polynomial '{src}'")));
        }
        Ok(v)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum PTok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

fn tokenize_poly(src: &str) -> Result<Vec<PTok>> {
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(PTok::Num(s.parse().unwrap()));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(PTok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(PTok::Sym(c));
            i += 1;
        } else {
            return Err(Error::Usage(format!("unexpected character '{c}' in polynomial")));
        }
    }
    Ok(out)
}

struct PolyParser<'a> {
    ring: &'a PolyRing,
    toks: &'a [PTok],
    pos: usize,
}

impl PolyParser<'_> {
    fn peek(&self) -> Option<&PTok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&PTok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<Poly> {
        let r = self.ring;
        let mut acc = if self.eat('-') { r.neg(&self.product()?) } else {
            self.eat('+');
            self.product()?
        };
        loop {
            if self.eat('+') {
                acc = r.add(&acc, &self.product()?);
            } else if self.eat('-') {
                acc = r.sub(&acc, &self.product()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<Poly> {
        let r = self.ring;
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                acc = r.mul(&acc, &self.power()?);
            } else if self.eat('/') {
                let d = self.power()?;
                if !d.is_constant() || d.is_zero() {
                    return usage("division is only allowed by nonzero constants");
                }
                let inv = r.field.inv(&d.terms[0].1).unwrap();
                acc = r.scale(&acc, &inv);
            } else if matches!(self.peek(), Some(PTok::Ident(_)) | Some(PTok::Sym('('))) {
                // implicit multiplication: 2x, x y, 3(x+y)
                acc = r.mul(&acc, &self.power()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(PTok::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n.try_into().map_err(|_| Error::Usage("exponent too large".into()))?;
                    Ok(self.ring.pow(&base, e))
                }
                _ => usage("expected an integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Poly> {
        let r = self.ring;
        match self.peek().cloned() {
            Some(PTok::Num(n)) => {
                self.pos += 1;
                let c = r.field.from_rational(&BigRational::from_integer(n))?;
                Ok(r.constant(c))
            }
            Some(PTok::Ident(name)) => {
                self.pos += 1;
                match r.var_index(&name) {
                    Some(i) => Ok(r.var(i)),
                    None => Err(Error::Usage(format!("unknown variable '{name}'"))),
                }
            }
            Some(PTok::Sym('(')) => {
                self.pos += 1;
                let v = self.sum()?;
                if !self.eat(')') {
                    return usage("missing ')'");
                }
                Ok(v)
            }
            Some(PTok::Sym('-')) => {
                self.pos += 1;
                Ok(r.neg(&self.power()?))
            }
            other => Err(Error::Usage(format!("unexpected token {other:?} in polynomial"))),
        }
    }
}
