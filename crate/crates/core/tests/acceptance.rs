//! End-to-end acceptance run. Prints one line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use common::*;
use liaison::algebra::Matrix;
use liaison::linkage::{
    check_main_theorem, ci_link, double_link, genyi_check, is_doubly_perfectly_linked, is_perfectly_linked_codim1,
    is_triply_perfectly_linked, match_kernels, perfect_link, perfect_morphism, PerfectMorphism,
};
use liaison::mf::{mf_cokernel, mf_dual, mf_from_module, mf_reduce, mf_syzygy, summand_multiplicity, MatrixFactorization};
use liaison::modcalc::{
    dual, ext, invariants, is_isomorphic, is_stably_equivalent, regular_sequence_in, Ideal, PresentedModule, Ring,
};
use liaison::oracle::{oracle_ext, oracle_invariants, OracleInvariants};
use liaison::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ok<T>(r: liaison::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// Oracle invariants at the first level where truncation is exact.
fn oracle_at_some_level(m: &PresentedModule) -> Result<(u32, OracleInvariants), String> {
    for level in 2..=24 {
        match oracle_invariants(m, level) {
            Ok(inv) => return Ok((level, inv)),
            Err(Error::TruncationTooSmall(_)) => continue,
            Err(e) => return Err(e.to_string()),
        }
    }
    Err(format!("no exact truncation for {}", m.display()))
}

fn c1() -> Outcome {
    let r = cusp();
    let target = ideal(&r, &["x", "y^2"]);
    let a = ok(ideal(&r, &["x"]).colon(&ideal(&r, &["x", "y"])))?;
    let b = ok(ideal(&r, &["x^2"]).colon(&ideal(&r, &["x^2", "x*y"])))?;
    ensure(a.equals(&target), || format!("(x):m = {}", a.display()))?;
    ensure(b.equals(&target), || format!("(x^2):(x^2,xy) = {}", b.display()))?;
    Ok(format!("{} and {}", a.display(), b.display()))
}

fn c2() -> Outcome {
    let r = cusp();
    let expected = [(1, 1, 1), (1, 1, 2), (1, 2, 4), (2, 1, 5), (2, 1, 3)];
    for ((name, m), want) in table_modules(&r).iter().zip(expected) {
        let inv = ok(invariants(m))?;
        let got = (inv.nu, inv.type_, inv.length.unwrap_or(usize::MAX));
        ensure(got == want, || format!("{name}: got {got:?}, want {want:?}"))?;
    }
    Ok("nu = (1,1,1,2,2), type = (1,1,2,1,1), length = (1,2,4,5,3)".into())
}

fn c3() -> Outcome {
    let r = node();
    let m = Ideal::maximal(&r);
    for (a, b) in [(1, 1), (2, 3), (3, 2)] {
        let i = ideal(&r, &[&format!("x^{a}"), &format!("y^{b}")]);
        let c = ok(ideal(&r, &[&format!("x^{a}-y^{b}")]).colon(&m))?;
        ensure(c.equals(&i), || format!("(x^{a}-y^{b}):m = {}", c.display()))?;
        let len = i.quotient().length();
        ensure(len == Some(a + b - 1), || format!("length R/(x^{a},y^{b}) = {len:?}"))?;
    }
    Ok("(x^m,y^n) = (x^m-y^n):m and length m+n-1 for (1,1),(2,3),(3,2)".into())
}

fn c4() -> Outcome {
    let mut checked = 0;
    for (label, r) in [("xy", node()), ("x^2-y^3", cusp())] {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..10 {
            let i = random_m_primary(&r, &mut rng);
            let xs = ok(regular_sequence_in(&i, 1))?;
            let x = &xs[0];
            ensure(i.contains(x), || format!("{label}: x not in I"))?;
            // x is a parameter iff R/(x) has finite length; R is CM so it is then regular
            oracle_at_some_level(&Ideal::new(&r, vec![x.clone()]).quotient())?;
            let j = ok(ci_link(&i, &xs))?;
            let back = ok(ci_link(&j, &xs))?;
            ensure(back.equals(&i), || format!("{label}: {} -> {} -> {}", i.display(), j.display(), back.display()))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} random ideals"))
}

fn c5() -> Outcome {
    let r = cusp();
    let mods = table_modules(&r);
    for (name, m) in [&mods[0], &mods[1], &mods[3]] {
        let f = ok(perfect_morphism(m))?;
        let back = ok(double_link(&f))?;
        ensure(ok(is_isomorphic(&back, m))?, || format!("{name}: double link {}", back.display()))?;
    }
    Ok("k, R/(x,y^2), m/(x^2)".into())
}

fn example_cover(r: &Ring, rows: &[&[&str]]) -> Result<PerfectMorphism, String> {
    let p = ok(PresentedModule::from_rows(r, rows))?;
    let map = ok(Matrix::from_rows(vec![vec![poly(r, "1"), poly(r, "0")]]))?;
    ok(PerfectMorphism::new(p, quot(r, &["x", "y"]), map))
}

fn c6() -> Outcome {
    let r = cusp();
    let f = example_cover(&r, &[&["x", "y"], &["0", "x"]])?;
    let g = example_cover(&r, &[&["y", "x"], &["0", "y"]])?;
    ensure(ok(is_isomorphic(&ok(perfect_link(&f))?, &m_mod(&r, "x^2")))?, || "first cover".into())?;
    ensure(ok(is_isomorphic(&ok(perfect_link(&g))?, &m_mod(&r, "y^2")))?, || "second cover".into())?;
    Ok("links m/(x^2) and m/(y^2)".into())
}

fn c7() -> Outcome {
    let r = cusp();
    for (name, m) in table_modules(&r) {
        let f = ok(perfect_morphism(&m))?;
        ensure(ok(genyi_check(&m, &f))?, || format!("{name}"))?;
    }
    Ok("all five table modules".into())
}

fn c8() -> Outcome {
    let r = cusp();
    let mods = table_modules(&r);
    let mut pairs = 0;
    for i in 0..mods.len() {
        for j in i + 1..mods.len() {
            ensure(ok(is_perfectly_linked_codim1(&mods[i].1, &mods[j].1))?, || format!("{} / {}", mods[i].0, mods[j].0))?;
            pairs += 1;
        }
    }
    let s = a3();
    let (k, i) = (quot(&s, &["x", "y"]), quot(&s, &["x", "y^2"]));
    ensure(!ok(is_doubly_perfectly_linked(&k, &i))?, || "A3 doubly".into())?;
    ensure(!ok(is_triply_perfectly_linked(&k, &i))?, || "A3 triply".into())?;
    Ok(format!("{pairs} pairs linked over x^2-y^3, none over x^2-y^4"))
}

fn c9() -> Outcome {
    let r = a3();
    let i = ideal(&r, &["x", "y^2"]).as_module();
    let p = ideal(&r, &["x+y^2"]).as_module();
    let q = ideal(&r, &["x-y^2"]).as_module();
    ensure(ok(is_isomorphic(&i, &ok(p.direct_sum(&q))?))?, || "I vs p+q".into())?;
    ensure(ok(is_isomorphic(&ok(dual(&i))?, &i))?, || "I* vs I".into())?;
    Ok("(x,y^2) = (x+y^2) + (x-y^2) and self-dual".into())
}

fn c10() -> Outcome {
    let r = a4();
    let (m, n) = (ideal(&r, &["x", "y"]), ideal(&r, &["x", "y^2"]));
    let chi = |c: &Ideal, s: &Ideal| ok(summand_multiplicity(&c.quotient(), &s.as_module()));
    let got = (chi(&m, &m)?, chi(&m, &n)?, chi(&n, &m)?, chi(&n, &n)?);
    ensure(got == (1, 0, 0, 1), || format!("{got:?}"))?;
    Ok("(1,0,0,1)".into())
}

fn c11() -> Outcome {
    let mut total = 0;
    let mut ext_checked = 0;
    for (label, r) in [("x^2-y^3", cusp()), ("xy", node()), ("x^2-y^4", a3()), ("x^2-y^5", a4())] {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for k in 0..20 {
            let m = random_m_primary(&r, &mut rng).quotient();
            let inv = ok(invariants(&m))?;
            let (level, o) = oracle_at_some_level(&m)?;
            let engine = (inv.length.unwrap_or(usize::MAX), inv.nu, inv.type_);
            ensure(engine == (o.length, o.nu, o.type_), || format!("{label} #{k} {}: engine {engine:?} oracle {o:?}", m.display()))?;
            if k < 10 {
                let e = ok(ext(&m, 1))?.length();
                let oe = ok(oracle_ext(&m, 1, level))?.dim;
                ensure(e == Some(oe), || format!("{label} #{k}: Ext^1 length {e:?} vs {oe}"))?;
                ext_checked += 1;
            }
            total += 1;
        }
    }
    Ok(format!("{total} modules, {ext_checked} Ext^1 lengths"))
}

/// Paired cyclic modules over the cusp, A3 and the node.
fn theorem_corpus() -> Vec<(PresentedModule, PresentedModule)> {
    let mut out = Vec::new();
    let mut add = |mods: Vec<PresentedModule>| {
        for i in 0..mods.len() {
            for j in i..mods.len() {
                out.push((mods[i].clone(), mods[j].clone()));
            }
        }
    };
    let c = cusp();
    add(table_modules(&c).into_iter().map(|(_, m)| m).collect());
    let s = a3();
    add(vec![
        quot(&s, &["x", "y"]),
        quot(&s, &["x", "y^2"]),
        quot(&s, &["x^2", "x*y"]),
        quot(&s, &["x", "y^3"]),
        quot(&s, &["x^2", "y"]),
    ]);
    let n = node();
    add(vec![quot(&n, &["x", "y"]), quot(&n, &["x^2", "y^3"]), quot(&n, &["x^3", "y^2"])]);
    out
}

fn c12() -> Outcome {
    let corpus = theorem_corpus();
    let mut cond2 = 0;
    for (m, n) in &corpus {
        let (f, g) = (ok(perfect_morphism(m))?, ok(perfect_morphism(n))?);
        let rep = ok(check_main_theorem(m, n, &f, &g))?;
        let pair = || format!("{} / {}", m.display(), n.display());
        ensure(rep.implication_violations.is_empty(), || format!("{}: {:?}", pair(), rep.implication_violations))?;
        ensure(rep.cond1 == rep.cond2, || format!("{}: cond1 != cond2", pair()))?;
        ensure(rep.cond3 == rep.cond4, || format!("{}: cond3 != cond4", pair()))?;
        if rep.cond2 {
            ensure(rep.cond1 && rep.cond3 && rep.cond4, || format!("{}: cond2 without the rest", pair()))?;
            cond2 += 1;
        }
    }
    ensure(corpus.len() >= 30, || format!("corpus has only {} quadruples", corpus.len()))?;
    Ok(format!("{} quadruples, {cond2} with cond2", corpus.len()))
}

fn c13() -> Outcome {
    let mut morphisms: Vec<PerfectMorphism> = Vec::new();
    for (m, n) in theorem_corpus() {
        morphisms.push(ok(perfect_morphism(&m))?);
        if let Ok((f, g)) = match_kernels(&m, &n) {
            morphisms.push(f);
            morphisms.push(g);
        }
    }
    let r = cusp();
    morphisms.push(example_cover(&r, &[&["x", "y"], &["0", "x"]])?);
    morphisms.push(example_cover(&r, &[&["y", "x"], &["0", "y"]])?);
    let mut checked = 0;
    for f in &morphisms {
        if f.target.nu() != 1 {
            continue;
        }
        let link = ok(perfect_link(f))?;
        if link.nu() != 1 {
            continue;
        }
        let t = ok(invariants(&link))?.type_;
        let nu_p = f.source.nu();
        ensure(nu_p <= t + 1, || format!("nu(P) = {nu_p}, type = {t} for {}", f.target.display()))?;
        checked += 1;
    }
    ensure(checked > 0, || "no cyclic links".into())?;
    Ok(format!("{checked} morphisms between cyclic modules"))
}

fn verify_mf(f: &MatrixFactorization) -> Result<(), String> {
    let amb = &f.ring.ambient;
    let fi = Matrix::scalar(&f.f, f.size());
    ensure(f.phi.mul(amb, &f.psi) == fi && f.psi.mul(amb, &f.phi) == fi, || "phi psi != f I".into())
}

fn c14() -> Outcome {
    let (c, a, n) = (cusp(), a4(), node());
    let cases = vec![
        ("m over x^2-y^3", Ideal::maximal(&c).as_module()),
        ("m over x^2-y^5", ideal(&a, &["x", "y"]).as_module()),
        ("n over x^2-y^5", ideal(&a, &["x", "y^2"]).as_module()),
        ("R/(x) over xy", quot(&n, &["x"])),
    ];
    let mut count = 0;
    for (name, m) in cases {
        let f = ok(mf_from_module(&m))?;
        for g in [f.clone(), ok(mf_syzygy(&f))?, ok(mf_dual(&f))?, ok(mf_reduce(&f))?] {
            verify_mf(&g).map_err(|e| format!("{name}: {e}"))?;
            count += 1;
        }
        let back = ok(mf_cokernel(&f))?;
        ensure(ok(is_stably_equivalent(&back, &m))?, || format!("{name}: round trip {}", back.display()))?;
    }
    Ok(format!("{count} factorizations, 4 round trips"))
}

fn main() {
    let criteria: Vec<(&str, fn() -> Outcome)> = vec![
        ("colon identities", c1),
        ("invariants table", c2),
        ("xy-ring claims", c3),
        ("CI-link involution", c4),
        ("perfect-link recovery", c5),
        ("example morphisms", c6),
        ("genyi_check", c7),
        ("codim-1 classification", c8),
        ("x^2-y^4 structure", c9),
        ("x^2-y^5 multiplicities", c10),
        ("oracle cross-check", c11),
        ("main theorem audit", c12),
        ("generator bound", c13),
        ("MF engine", c14),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} ({secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!("{}/{} criteria passed in {:.2}s", criteria.len() - failed, criteria.len(), start.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
