//! The `liaison` script language: ring, ideal and module definitions,
//! bindings, assertions and printing, executed in order.

pub mod paper;
pub mod parse;

use std::collections::HashMap;
use std::time::Instant;

use serde_json::json;

use crate::algebra::{Field, Matrix, Poly};
use crate::error::{usage, Error, Result};
use crate::linkage::{self, LinkageReport, PerfectMorphism};
use crate::mf::{self, MatrixFactorization};
use crate::modcalc::resolution::FreeResolution;
use crate::modcalc::{self, make_ring, Extended, Ideal, PresentedModule, Ring};
use crate::oracle;

pub use paper::{reproduce_paper, Check, PaperReport};
pub use parse::{parse_script, Stmt, StmtKind};

/// Truncation level used by oracle calls unless overridden.
pub const DEFAULT_TRUNC: u32 = 12;

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub seed: u64,
    pub json: bool,
    pub steps: Option<usize>,
    pub trunc: Option<u32>,
    pub timing: bool,
}

#[derive(Clone, Debug)]
pub enum Value {
    Ring(Ring),
    Ideal(Ideal),
    Module(PresentedModule),
    Poly(Ring, Poly),
    List(Vec<Value>),
    Int(i64),
    Bool(bool),
    Ext(Extended),
    Text(String),
    Record(Vec<(String, Value)>),
    Morphism(Box<PerfectMorphism>),
    Mf(Box<MatrixFactorization>),
}

impl Value {
    fn kind(&self) -> &'static str {
        match self {
            Value::Ring(_) => "ring",
            Value::Ideal(_) => "ideal",
            Value::Module(_) => "module",
            Value::Poly(..) => "polynomial",
            Value::List(_) => "list",
            Value::Int(_) => "integer",
            Value::Bool(_) => "boolean",
            Value::Ext(_) => "extended integer",
            Value::Text(_) => "text",
            Value::Record(_) => "record",
            Value::Morphism(_) => "perfect morphism",
            Value::Mf(_) => "matrix factorization",
        }
    }

    /// Canonical printed form.
    pub fn render(&self) -> String {
        match self {
            Value::Ring(r) => r.describe(),
            Value::Ideal(i) => i.display(),
            Value::Module(m) => m.display(),
            Value::Poly(r, p) => r.display_poly(p),
            Value::List(v) => format!("[{}]", v.iter().map(Value::render).collect::<Vec<_>>().join(", ")),
            Value::Int(n) => n.to_string(),
            Value::Bool(b) => b.to_string(),
            Value::Ext(e) => e.to_string(),
            Value::Text(t) => t.clone(),
            Value::Record(fields) => {
                let parts: Vec<String> = fields.iter().map(|(k, v)| format!("{k}: {}", v.render())).collect();
                format!("{{{}}}", parts.join(", "))
            }
            Value::Morphism(f) => format!(
                "{} -> {} via {}",
                f.source.display(),
                f.target.display(),
                f.source.ring.display_matrix(&f.map)
            ),
            Value::Mf(f) => format!("({}, {})", f.ring.display_matrix(&f.phi), f.ring.display_matrix(&f.psi)),
        }
    }

    fn field(&self, name: &str) -> Result<Value> {
        let found = match self {
            Value::Record(fields) => fields.iter().find(|(k, _)| k == name).map(|(_, v)| v.clone()),
            Value::Morphism(f) => match name {
                "source" => Some(Value::Module(f.source.clone())),
                "target" => Some(Value::Module(f.target.clone())),
                "kernel" => Some(Value::Module(f.kernel.clone())),
                "codim" => Some(Value::Int(f.codim as i64)),
                _ => None,
            },
            Value::Mf(f) => match name {
                "size" => Some(Value::Int(f.size() as i64)),
                "f" => Some(Value::Poly(f.ring.clone(), f.f.clone())),
                _ => None,
            },
            Value::Ideal(i) => match name {
                "height" => Some(Value::Int(i.height() as i64)),
                _ => None,
            },
            Value::List(v) => name.parse::<usize>().ok().and_then(|k| v.get(k).cloned()),
            _ => None,
        };
        found.ok_or_else(|| Error::Usage(format!("{} has no field `{name}`", self.kind())))
    }

    pub fn as_module(&self) -> Result<PresentedModule> {
        match self {
            Value::Module(m) => Ok(m.clone()),
            Value::Ideal(i) => Ok(i.as_module()),
            Value::Ring(r) => Ok(PresentedModule::free(r, 1)),
            other => usage(format!("expected a module, found a {}", other.kind())),
        }
    }

    pub fn as_ideal(&self) -> Result<Ideal> {
        match self {
            Value::Ideal(i) => Ok(i.clone()),
            Value::Poly(r, p) => Ok(Ideal::new(r, vec![p.clone()])),
            other => usage(format!("expected an ideal, found a {}", other.kind())),
        }
    }

    /// Integer literals become constants of `ring`.
    fn as_poly(&self, ring: Option<&Ring>) -> Result<Poly> {
        match self {
            Value::Poly(_, p) => Ok(p.clone()),
            Value::Int(n) if ring.is_some() => Ok(ring.unwrap().ambient.from_i64(*n)),
            Value::Ideal(i) if i.gens.len() == 1 => Ok(i.gens[0].clone()),
            other => usage(format!("expected a polynomial, found a {}", other.kind())),
        }
    }

    fn as_polys(&self, ring: Option<&Ring>) -> Result<Vec<Poly>> {
        match self {
            Value::List(v) => v.iter().map(|x| x.as_poly(ring)).collect(),
            Value::Ideal(i) => Ok(i.gens.clone()),
            other => Ok(vec![other.as_poly(ring)?]),
        }
    }

    fn as_usize(&self) -> Result<usize> {
        match self {
            Value::Int(n) if *n >= 0 => Ok(*n as usize),
            Value::Ext(Extended::Fin(n)) if *n >= 0 => Ok(*n as usize),
            other => usage(format!("expected a nonnegative integer, found {}", other.render())),
        }
    }

    fn as_bool(&self) -> Result<bool> {
        match self {
            Value::Bool(b) => Ok(*b),
            other => usage(format!("expected a boolean, found a {}", other.kind())),
        }
    }

    fn as_morphism(&self) -> Result<PerfectMorphism> {
        match self {
            Value::Morphism(f) => Ok((**f).clone()),
            other => usage(format!("expected a perfect morphism, found a {}", other.kind())),
        }
    }

    fn as_mf(&self) -> Result<MatrixFactorization> {
        match self {
            Value::Mf(f) => Ok((**f).clone()),
            other => mf::mf_from_module(&other.as_module()?),
        }
    }

    /// A list of rows, or a flat list read as a single row.
    fn as_matrix(&self, ring: Option<&Ring>) -> Result<Matrix> {
        match self {
            Value::List(rows) if rows.iter().all(|r| matches!(r, Value::List(_))) && !rows.is_empty() => {
                Matrix::from_rows(rows.iter().map(|r| r.as_polys(ring)).collect::<Result<_>>()?)
            }
            Value::List(_) => Matrix::from_rows(vec![self.as_polys(ring)?]),
            other => Matrix::from_rows(vec![vec![other.as_poly(ring)?]]),
        }
    }
}

fn count(n: usize) -> Value {
    Value::Int(n as i64)
}

fn opt_count(n: Option<usize>) -> Value {
    match n {
        Some(n) => count(n),
        None => Value::Ext(Extended::PosInf),
    }
}

fn invariants_record(m: &PresentedModule) -> Result<Value> {
    let inv = modcalc::invariants(m)?;
    Ok(Value::Record(vec![
        ("length".into(), opt_count(inv.length)),
        ("nu".into(), count(inv.nu)),
        ("type".into(), count(inv.type_)),
        ("depth".into(), Value::Ext(inv.depth)),
        ("dim".into(), Value::Ext(inv.dim)),
        ("codim".into(), Value::Ext(inv.codim)),
        ("grade".into(), Value::Ext(inv.grade)),
        ("pd".into(), Value::Text(inv.pd.to_string())),
    ]))
}

fn report_record(r: &LinkageReport) -> Value {
    Value::Record(vec![
        ("cond1".into(), Value::Bool(r.cond1)),
        ("cond2".into(), Value::Bool(r.cond2)),
        ("cond3".into(), Value::Bool(r.cond3)),
        ("cond4".into(), Value::Bool(r.cond4)),
        (
            "violations".into(),
            Value::List(r.implication_violations.iter().map(|v| Value::Text(v.clone())).collect()),
        ),
    ])
}

fn resolution_record(res: &FreeResolution, bound: usize) -> Value {
    let ranks: Vec<Value> = (0..=res.diffs.len()).filter_map(|i| res.rank(i)).map(count).collect();
    let diffs: Vec<Value> = res.diffs.iter().map(|d| Value::Text(res.module.ring.display_matrix(d))).collect();
    Value::Record(vec![
        ("ranks".into(), Value::List(ranks)),
        ("differentials".into(), Value::List(diffs)),
        ("pd".into(), Value::Text(res.pd(bound).to_string())),
    ])
}

/// Equality used by `assert`: isomorphism for modules, equality of ideals
/// in the local ring, structural equality otherwise.
pub fn values_equal(a: &Value, b: &Value) -> Result<bool> {
    use Value::*;
    Ok(match (a, b) {
        (Ideal(i), Ideal(j)) => i.equals(j),
        (Module(_), _) | (_, Module(_)) => modcalc::is_isomorphic(&a.as_module()?, &b.as_module()?)?,
        (Poly(r, p), Poly(_, q)) => r.reduce(&r.sub(p, q)).is_zero(),
        (Mf(f), Mf(g)) => mf::mf_equivalent(f, g)?,
        (Int(x), Ext(Extended::Fin(y))) | (Ext(Extended::Fin(y)), Int(x)) => x == y,
        (Int(x), Int(y)) => x == y,
        (Ext(x), Ext(y)) => x == y,
        (Bool(x), Bool(y)) => x == y,
        (Text(x), Text(y)) => x == y,
        (Text(x), other) | (other, Text(x)) => *x == other.render(),
        (List(x), List(y)) => {
            if x.len() != y.len() {
                return Ok(false);
            }
            for (p, q) in x.iter().zip(y) {
                if !values_equal(p, q)? {
                    return Ok(false);
                }
            }
            true
        }
        (Record(x), Record(y)) => {
            if x.len() != y.len() {
                return Ok(false);
            }
            for ((k1, v1), (k2, v2)) in x.iter().zip(y) {
                if k1 != k2 || !values_equal(v1, v2)? {
                    return Ok(false);
                }
            }
            true
        }
        (Ring(r), Ring(s)) => r.describe() == s.describe(),
        _ => a.render() == b.render(),
    })
}

/// Outcome of one executed statement.
#[derive(Clone, Debug)]
pub struct Record {
    pub line: usize,
    pub statement: &'static str,
    pub input: String,
    pub output: Option<String>,
    pub ok: bool,
    pub millis: f64,
}

/// Executes statements against a growing environment.
pub struct Interpreter {
    pub options: Options,
    env: HashMap<String, Value>,
    ring: Option<Ring>,
}

impl Interpreter {
    pub fn new(options: Options) -> Interpreter {
        Interpreter { options, env: HashMap::new(), ring: None }
    }

    fn trunc(&self) -> u32 {
        self.options.trunc.unwrap_or(DEFAULT_TRUNC)
    }

    fn current_ring(&self) -> Result<&Ring> {
        self.ring.as_ref().ok_or_else(|| Error::Usage("no ring has been defined".into()))
    }

    fn bind(&mut self, name: &str, v: Value) -> Result<()> {
        if self.env.contains_key(name) {
            return usage(format!("`{name}` is already bound"));
        }
        self.env.insert(name.to_string(), v);
        Ok(())
    }

    pub fn build_ring(&self, spec: &parse::RingSpec) -> Result<Ring> {
        let field = match spec.field.as_str() {
            "QQ" => Field::Rationals,
            f => {
                let p = f
                    .strip_prefix("GF(")
                    .and_then(|r| r.strip_suffix(')'))
                    .and_then(|p| p.trim().parse::<u32>().ok())
                    .ok_or_else(|| Error::Usage(format!("unknown field `{f}`")))?;
                Field::prime(p)?
            }
        };
        let vars: Vec<&str> = spec.vars.iter().map(String::as_str).collect();
        let rels: Vec<&str> = spec.relations.iter().map(String::as_str).collect();
        let r = make_ring(&vars, field, spec.weights.clone(), &rels, spec.local)?;
        Ok(r.with_options(self.options.seed, self.options.steps))
    }

    /// Runs one statement; `Ok(Some(text))` for printed output.
    pub fn exec(&mut self, stmt: &Stmt) -> Result<Option<String>> {
        match &stmt.kind {
            StmtKind::Ring { name, spec } => {
                let r = self.build_ring(spec)?;
                self.bind(name, Value::Ring(r.clone()))?;
                self.ring = Some(r);
                Ok(None)
            }
            StmtKind::Ideal { name, expr } => {
                let v = self.eval(expr)?;
                let i = v.as_ideal()?;
                self.bind(name, Value::Ideal(i))?;
                Ok(None)
            }
            StmtKind::Module { name, expr } => {
                let v = self.eval(expr)?;
                let m = v.as_module()?;
                self.bind(name, Value::Module(m))?;
                Ok(None)
            }
            StmtKind::Let { name, expr } => {
                let v = self.eval(expr)?;
                self.bind(name, v)?;
                Ok(None)
            }
            StmtKind::Print { expr } => Ok(Some(self.eval(expr)?.render())),
            StmtKind::Assert { lhs, rhs } => {
                let a = self.eval(lhs)?;
                let holds = match rhs {
                    Some(r) => values_equal(&a, &self.eval(r)?)?,
                    None => a.as_bool()?,
                };
                if holds {
                    Ok(None)
                } else {
                    Err(Error::Precondition(format!("assertion failed: {}", stmt.source)))
                }
            }
        }
    }

    /// Evaluates an expression.
    pub fn eval(&self, src: &str) -> Result<Value> {
        let s = src.trim();
        if s.is_empty() {
            return usage("empty expression");
        }
        // quotient notation: R/I, I/J
        if let Some(p) = parse::find_top(s, "/") {
            let left = &s[..p];
            if !left.trim().is_empty() {
                if let Ok(l) = self.eval(left) {
                    if matches!(l, Value::Ring(_) | Value::Ideal(_)) {
                        let r = self.eval(&s[p + 1..])?;
                        return self.quotient(l, r);
                    }
                }
            }
        }
        // field access
        if let Some(p) = parse::rfind_top(s, '.') {
            let (base, name) = (&s[..p], &s[p + 1..]);
            if !base.trim().is_empty() && (parse::is_ident(name) || name.chars().all(|c| c.is_ascii_digit())) {
                return self.eval(base)?.field(name);
            }
        }
        if let Some(body) = s.strip_prefix("coker") {
            let m = self.eval(body)?.as_matrix(self.ring.as_ref())?;
            return Ok(Value::Module(PresentedModule::new(self.current_ring()?, m)));
        }
        if let Some(inner) = parse::strip_group(s, '(', ')') {
            let ring = self.current_ring()?.clone();
            let gens = parse::split_top(inner, &[','])
                .iter()
                .filter(|g| !g.is_empty())
                .map(|g| self.eval(g)?.as_poly(Some(&ring)))
                .collect::<Result<Vec<_>>>()?;
            return Ok(Value::Ideal(Ideal::new(&ring, gens)));
        }
        if let Some(inner) = parse::strip_group(s, '[', ']') {
            if inner.trim().is_empty() {
                return Ok(Value::List(Vec::new()));
            }
            let rows = parse::split_top(inner, &[';']);
            if rows.len() > 1 {
                let rows = rows.iter().map(|r| self.eval_list(r).map(Value::List)).collect::<Result<Vec<_>>>()?;
                return Ok(Value::List(rows));
            }
            return Ok(Value::List(self.eval_list(inner)?));
        }
        if let Some(open) = s.find('(') {
            let name = &s[..open];
            if parse::is_ident(name) && parse::strip_group(&s[open..], '(', ')').is_some() {
                let inner = &s[open + 1..s.len() - 1];
                let args = if inner.trim().is_empty() {
                    Vec::new()
                } else {
                    parse::split_top(inner, &[',', ';']).iter().map(|a| self.eval(a)).collect::<Result<Vec<_>>>()?
                };
                return self.call(name, &args);
            }
        }
        match s {
            "true" => return Ok(Value::Bool(true)),
            "false" => return Ok(Value::Bool(false)),
            "inf" => return Ok(Value::Ext(Extended::PosInf)),
            "-inf" => return Ok(Value::Ext(Extended::NegInf)),
            _ => {}
        }
        if let Ok(n) = s.parse::<i64>() {
            return Ok(Value::Int(n));
        }
        if let Some(v) = self.env.get(s) {
            return Ok(v.clone());
        }
        let ring = self.current_ring()?;
        match ring.parse(s) {
            Ok(p) => Ok(Value::Poly(ring.clone(), p)),
            Err(_) if parse::is_ident(s) => usage(format!("unknown name `{s}`")),
            Err(e) => Err(e),
        }
    }

    fn eval_list(&self, s: &str) -> Result<Vec<Value>> {
        parse::split_top(s, &[',']).iter().map(|e| self.eval(e)).collect()
    }

    fn quotient(&self, left: Value, right: Value) -> Result<Value> {
        let j = match right {
            Value::Int(n) => {
                let r = self.current_ring()?;
                Ideal::new(r, vec![r.ambient.from_i64(n)])
            }
            other => other.as_ideal()?,
        };
        match left {
            Value::Ring(_) => Ok(Value::Module(j.quotient())),
            Value::Ideal(i) => {
                if !j.is_subset(&i) {
                    return usage("the denominator must lie inside the numerator");
                }
                Ok(Value::Module(PresentedModule::subquotient(&i.ring, &i.row(), &j.row())))
            }
            other => usage(format!("cannot form a quotient of a {}", other.kind())),
        }
    }

    fn call(&self, name: &str, args: &[Value]) -> Result<Value> {
        let arity = |n: usize| -> Result<()> {
            if args.len() == n {
                Ok(())
            } else {
                usage(format!("{name} takes {n} argument(s), got {}", args.len()))
            }
        };
        let m = |i: usize| args[i].as_module();
        let rg = self.ring.as_ref();
        let v = match name {
            "colon" => {
                arity(2)?;
                Value::Ideal(args[0].as_ideal()?.colon(&args[1].as_ideal()?)?)
            }
            "intersect" => {
                arity(2)?;
                Value::Ideal(args[0].as_ideal()?.intersect(&args[1].as_ideal()?)?)
            }
            "product" => {
                arity(2)?;
                Value::Ideal(args[0].as_ideal()?.product(&args[1].as_ideal()?)?)
            }
            "ideal_sum" => {
                arity(2)?;
                Value::Ideal(args[0].as_ideal()?.sum(&args[1].as_ideal()?)?)
            }
            "contains" => {
                arity(2)?;
                Value::Bool(args[0].as_ideal()?.contains(&args[1].as_poly(rg)?))
            }
            "annihilator" => {
                arity(1)?;
                Value::Ideal(modcalc::annihilator(&m(0)?))
            }
            "socle" => {
                arity(1)?;
                Value::Module(modcalc::socle(&m(0)?))
            }
            "invariants" => {
                arity(1)?;
                invariants_record(&m(0)?)?
            }
            "nu" => {
                arity(1)?;
                count(m(0)?.nu())
            }
            "length" => {
                arity(1)?;
                opt_count(m(0)?.length())
            }
            "type" => {
                arity(1)?;
                invariants_record(&m(0)?)?.field("type")?
            }
            "depth" | "dim" | "codim" | "grade" | "pd" => {
                arity(1)?;
                invariants_record(&m(0)?)?.field(name)?
            }
            "regular_sequence_in" => {
                arity(2)?;
                let i = args[0].as_ideal()?;
                let seq = modcalc::regular_sequence_in(&i, args[1].as_usize()?)?;
                Value::List(seq.into_iter().map(|p| Value::Poly(i.ring.clone(), p)).collect())
            }
            "is_regular_on" => {
                arity(2)?;
                Value::Bool(modcalc::invariants::is_regular_on(&m(1)?, &args[0].as_poly(rg)?))
            }
            "resolve" => {
                let module = m(0)?;
                let bound = modcalc::resolution::pd_bound(&module);
                let steps = match args.len() {
                    1 => bound,
                    2 => args[1].as_usize()?,
                    _ => return usage("resolve takes 1 or 2 arguments"),
                };
                resolution_record(&modcalc::resolve(&module, steps)?, steps.max(bound))
            }
            "syzygy" => {
                arity(2)?;
                Value::Module(modcalc::syzygy(&m(0)?, args[1].as_usize()?)?)
            }
            "transpose" => {
                arity(1)?;
                Value::Module(modcalc::transpose(&m(0)?)?)
            }
            "dual" => {
                arity(1)?;
                Value::Module(modcalc::dual(&m(0)?)?)
            }
            "ext" => {
                arity(2)?;
                Value::Module(modcalc::ext(&m(0)?, args[1].as_usize()?)?)
            }
            "classify" => {
                arity(1)?;
                let c = modcalc::classify(&m(0)?)?;
                Value::Record(vec![
                    ("is_cm_of_codim".into(), c.is_cm_of_codim.map(count).unwrap_or(Value::Text("none".into()))),
                    ("is_mcm".into(), Value::Bool(c.is_mcm)),
                    ("is_perfect".into(), Value::Bool(c.is_perfect)),
                ])
            }
            "minimal_presentation" => {
                arity(1)?;
                Value::Module(m(0)?.minimal_presentation())
            }
            "strip_free_summands" => {
                arity(1)?;
                let s = modcalc::strip_free_summands(&m(0)?)?;
                Value::Record(vec![
                    ("stable_part".into(), Value::Module(s.stable_part)),
                    ("free_rank".into(), count(s.free_rank)),
                ])
            }
            "is_isomorphic" => {
                arity(2)?;
                Value::Bool(modcalc::is_isomorphic(&m(0)?, &m(1)?)?)
            }
            "is_stably_equivalent" => {
                arity(2)?;
                Value::Bool(modcalc::is_stably_equivalent(&m(0)?, &m(1)?)?)
            }
            "oplus" => {
                if args.is_empty() {
                    return usage("oplus needs at least one module");
                }
                let mut acc = m(0)?;
                for i in 1..args.len() {
                    acc = acc.direct_sum(&m(i)?)?;
                }
                Value::Module(acc)
            }
            "free" => {
                arity(1)?;
                Value::Module(PresentedModule::free(self.current_ring()?, args[0].as_usize()?))
            }
            "residue_field" => {
                arity(0)?;
                Value::Module(PresentedModule::residue_field(self.current_ring()?))
            }
            "perfect_morphism" => {
                arity(1)?;
                Value::Morphism(Box::new(linkage::perfect_morphism(&m(0)?)?))
            }
            "morphism" => {
                arity(3)?;
                Value::Morphism(Box::new(PerfectMorphism::new(m(0)?, m(1)?, args[2].as_matrix(rg)?)?))
            }
            "perfect_link" => {
                arity(1)?;
                Value::Module(linkage::perfect_link(&args[0].as_morphism()?)?)
            }
            "double_link" => {
                arity(1)?;
                Value::Module(linkage::double_link(&args[0].as_morphism()?)?)
            }
            "induced_morphism" => {
                arity(1)?;
                Value::Morphism(Box::new(linkage::induced_morphism(&args[0].as_morphism()?)?))
            }
            "ci_link" => {
                arity(2)?;
                Value::Ideal(linkage::ci_link(&args[0].as_ideal()?, &args[1].as_polys(rg)?)?)
            }
            "yi_link" => {
                arity(1)?;
                Value::Module(linkage::yi_link(&m(0)?)?)
            }
            "cosyzygy" => {
                arity(2)?;
                Value::Module(linkage::cosyzygy(&m(0)?, args[1].as_usize()?)?)
            }
            "mcm_approximation" => {
                arity(1)?;
                Value::Module(linkage::mcm_approximation(&m(0)?)?)
            }
            "direct_link_of_perfects" => {
                arity(2)?;
                Value::Morphism(Box::new(linkage::direct_link_of_perfects(&m(0)?, &m(1)?)?))
            }
            "match_kernels" => {
                arity(2)?;
                let (f, g) = linkage::match_kernels(&m(0)?, &m(1)?)?;
                Value::List(vec![Value::Morphism(Box::new(f)), Value::Morphism(Box::new(g))])
            }
            "is_doubly_perfectly_linked" => {
                arity(2)?;
                Value::Bool(linkage::is_doubly_perfectly_linked(&m(0)?, &m(1)?)?)
            }
            "is_triply_perfectly_linked" => {
                arity(2)?;
                Value::Bool(linkage::is_triply_perfectly_linked(&m(0)?, &m(1)?)?)
            }
            "is_perfectly_linked_codim1" => {
                arity(2)?;
                Value::Bool(linkage::is_perfectly_linked_codim1(&m(0)?, &m(1)?)?)
            }
            "doubly_ci_linked" => {
                arity(2)?;
                Value::Bool(linkage::doubly_ci_linked(&args[0].as_ideal()?, &args[1].as_ideal()?)?)
            }
            "check_main_theorem" => {
                arity(4)?;
                let r = linkage::check_main_theorem(&m(0)?, &m(1)?, &args[2].as_morphism()?, &args[3].as_morphism()?)?;
                report_record(&r)
            }
            "genyi_check" => {
                arity(2)?;
                Value::Bool(linkage::genyi_check(&m(0)?, &args[1].as_morphism()?)?)
            }
            "mf_from_module" => {
                arity(1)?;
                Value::Mf(Box::new(mf::mf_from_module(&m(0)?)?))
            }
            "matrix_factorization" => {
                arity(2)?;
                let r = self.current_ring()?;
                Value::Mf(Box::new(MatrixFactorization::new(r, args[0].as_matrix(rg)?, args[1].as_matrix(rg)?)?))
            }
            "mf_cokernel" => {
                arity(1)?;
                Value::Module(mf::mf_cokernel(&args[0].as_mf()?)?)
            }
            "mf_syzygy" => {
                arity(1)?;
                Value::Mf(Box::new(mf::mf_syzygy(&args[0].as_mf()?)?))
            }
            "mf_dual" => {
                arity(1)?;
                Value::Mf(Box::new(mf::mf_dual(&args[0].as_mf()?)?))
            }
            "mf_reduce" => {
                arity(1)?;
                Value::Mf(Box::new(mf::mf_reduce(&args[0].as_mf()?)?))
            }
            "mf_equivalent" => {
                arity(2)?;
                Value::Bool(mf::mf_equivalent(&args[0].as_mf()?, &args[1].as_mf()?)?)
            }
            "summand_multiplicity" => {
                arity(2)?;
                count(mf::summand_multiplicity(&m(0)?, &m(1)?)?)
            }
            "truncate_ring" => {
                let (r, level) = match args {
                    [Value::Ring(r), n] => (r.clone(), n.as_usize()? as u32),
                    [n] => (self.current_ring()?.clone(), n.as_usize()? as u32),
                    _ => return usage("truncate_ring takes (ring, level) or (level)"),
                };
                let alg = oracle::truncate_ring(&r, level)?;
                let basis = alg
                    .basis
                    .iter()
                    .map(|mono| Value::Poly(r.clone(), r.ambient.monomial(mono.clone(), r.field().one())))
                    .collect();
                Value::Record(vec![("dim".into(), count(alg.dim())), ("basis".into(), Value::List(basis))])
            }
            "oracle_invariants" => {
                let level = self.level_arg(args, 1)?;
                let inv = oracle::oracle_invariants(&m(0)?, level)?;
                Value::Record(vec![
                    ("length".into(), count(inv.length)),
                    ("nu".into(), count(inv.nu)),
                    ("type".into(), count(inv.type_)),
                ])
            }
            "oracle_ext" => {
                let level = self.level_arg(args, 2)?;
                let e = oracle::oracle_ext(&m(0)?, args[1].as_usize()?, level)?;
                Value::Record(vec![("length".into(), count(e.dim)), ("nu".into(), count(e.nu()))])
            }
            other => return usage(format!("unknown operation `{other}`")),
        };
        Ok(v)
    }

    /// Optional trailing truncation level after `fixed` arguments.
    fn level_arg(&self, args: &[Value], fixed: usize) -> Result<u32> {
        match args.len() {
            n if n == fixed => Ok(self.trunc()),
            n if n == fixed + 1 => Ok(args[fixed].as_usize()? as u32),
            n => usage(format!("expected {fixed} or {} arguments, got {n}", fixed + 1)),
        }
    }
}

/// Everything a run produced.
#[derive(Clone, Debug)]
pub struct RunReport {
    pub records: Vec<Record>,
    /// Exit status: 0 success, 1 user-level failure, 2 internal error.
    pub status: i32,
    /// The failure, with its line.
    pub error: Option<String>,
}

impl RunReport {
    /// Text written to stdout.
    pub fn stdout(&self, options: &Options) -> String {
        let mut out = String::new();
        for r in &self.records {
            if options.json {
                let mut obj = json!({
                    "line": r.line,
                    "statement": r.statement,
                    "input": r.input,
                    "output": r.output,
                    "ok": r.ok,
                });
                if options.timing {
                    obj["millis"] = json!(r.millis);
                }
                out.push_str(&obj.to_string());
                out.push('\n');
            } else if let Some(o) = &r.output {
                out.push_str(o);
                out.push('\n');
            }
        }
        out
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Invariant(_) => 2,
        _ => 1,
    }
}

fn statement_name(k: &StmtKind) -> &'static str {
    match k {
        StmtKind::Ring { .. } => "ring",
        StmtKind::Ideal { .. } => "ideal",
        StmtKind::Module { .. } => "module",
        StmtKind::Let { .. } => "let",
        StmtKind::Assert { .. } => "assert",
        StmtKind::Print { .. } => "print",
    }
}

/// Parses and executes a script, stopping at the first failure.
pub fn run_source(src: &str, options: &Options) -> RunReport {
    let stmts = match parse_script(src) {
        Ok(s) => s,
        Err(e) => return RunReport { records: Vec::new(), status: 1, error: Some(e.to_string()) },
    };
    let mut interp = Interpreter::new(options.clone());
    let mut records = Vec::new();
    for stmt in &stmts {
        let start = Instant::now();
        let res = interp.exec(stmt);
        let millis = start.elapsed().as_secs_f64() * 1000.0;
        let base = Record {
            line: stmt.line,
            statement: statement_name(&stmt.kind),
            input: stmt.source.clone(),
            output: None,
            ok: true,
            millis,
        };
        match res {
            Ok(output) => records.push(Record { output, ..base }),
            Err(e) => {
                records.push(Record { ok: false, output: Some(e.to_string()), ..base });
                return RunReport { records, status: exit_code(&e), error: Some(format!("line {}: {e}", stmt.line)) };
            }
        }
    }
    RunReport { records, status: 0, error: None }
}

pub fn run_script(path: &std::path::Path, options: &Options) -> RunReport {
    match std::fs::read_to_string(path) {
        Ok(src) => run_source(&src, options),
        Err(e) => RunReport { records: Vec::new(), status: 1, error: Some(format!("cannot read {}: {e}", path.display())) },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn out(src: &str) -> String {
        let r = run_source(src, &Options::default());
        assert_eq!(r.status, 0, "{:?}", r.error);
        r.stdout(&Options::default())
    }

    #[test]
    fn ci_link_example() {
        let s = "ring R = GF(32003)[x,y]/(x^2-y^3) weights(3,2) local; ideal m=(x,y); print ci_link(m;[x])";
        assert_eq!(out(s), "(x, y^2)\n");
    }

    #[test]
    fn quotients_fields_and_asserts() {
        let s = "ring R = GF(32003)[x,y]/(x^2-y^3) weights(3,2)\nideal m = (x,y)\n\
                 print [nu(m/(x^2)), type(m/(x^2)), length(m/(x^2))]\n\
                 let inv = invariants(R/(x^2,x*y))\nprint inv.type\n\
                 assert is_doubly_perfectly_linked(R/m, R/(x^2,x*y)) == true\n\
                 assert colon((x^2),(x^2,x*y)) == (x, y^2)\n\
                 assert ext(R/(x*y^2,x^2), 1) == m/(x^2)";
        assert_eq!(out(s), "[2, 1, 5]\n2\n");
    }

    #[test]
    fn failures_and_codes() {
        assert_eq!(run_source("", &Options::default()).status, 0);
        assert!(run_source("", &Options::default()).stdout(&Options::default()).is_empty());
        let r = run_source("ring R = QQ[x]\nassert 1 == 2", &Options::default());
        assert_eq!(r.status, 1);
        assert!(r.error.unwrap().starts_with("line 2:"));
        let r = run_source("ring R = QQ[x]\nring R = QQ[y]", &Options::default());
        assert_eq!(r.status, 1);
        let r = run_source("ring R = QQ[x]\nprint q", &Options::default());
        assert!(r.error.unwrap().contains("unknown name"));
    }

    #[test]
    fn json_records() {
        let opts = Options { json: true, ..Options::default() };
        let r = run_source("ring R = GF(101)[x,y]/(x*y)\nprint colon((x^2-y^3),(x,y))", &opts);
        let lines: Vec<serde_json::Value> = r.stdout(&opts).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[1]["output"], "(x^2, y^3)");
        assert!(lines[1].get("millis").is_none());
    }
}
