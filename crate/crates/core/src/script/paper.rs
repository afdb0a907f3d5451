//! Built-in suite regenerating the worked examples: colon identities, the
//! invariants table, the node claims, the non-linkage verdicts over A3 and
//! the multiplicity table over A4.

use serde::Serialize;

use super::{parse_script, values_equal, Interpreter, Options};
use crate::error::Result;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub section: String,
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PaperReport {
    pub checks: Vec<Check>,
}

impl PaperReport {
    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.pass).count()
    }

    pub fn all_pass(&self) -> bool {
        self.passed() == self.checks.len()
    }

    pub fn render(&self, json: bool) -> String {
        let mut out = String::new();
        for c in &self.checks {
            if json {
                out.push_str(&serde_json::to_string(c).expect("serializable"));
            } else {
                let mark = if c.pass { "PASS" } else { "FAIL" };
                out.push_str(&format!("{mark}  {:<10} {}: expected {}", c.section, c.name, c.expected));
                if !c.pass {
                    out.push_str(&format!(", got {}", c.actual));
                }
            }
            out.push('\n');
        }
        if !json {
            out.push_str(&format!("{}/{} checks passed\n", self.passed(), self.checks.len()));
        }
        out
    }
}

struct Suite {
    section: &'static str,
    setup: &'static str,
    /// (name, expression, expected expression)
    rows: Vec<(String, String, String)>,
}

fn row(name: &str, expr: &str, expected: &str) -> (String, String, String) {
    (name.to_string(), expr.to_string(), expected.to_string())
}

const CUSP: &str = "ring R = GF(32003)[x,y]/(x^2-y^3) weights(3,2) local\nideal m = (x,y)";
const NODE: &str = "ring R = GF(32003)[x,y]/(x*y) local\nideal m = (x,y)";
const A3: &str = "ring R = GF(32003)[x,y]/(x^2-y^4) weights(2,1) local\nideal m = (x,y)";
const A4: &str = "ring R = GF(32003)[x,y]/(x^2-y^5) weights(5,2) local\nideal m = (x,y)\nideal n = (x,y^2)";

fn suites() -> Vec<Suite> {
    let table = [
        ("k", "R/m", "[1, 1, 1]"),
        ("R/(x,y^2)", "R/(x,y^2)", "[1, 1, 2]"),
        ("R/(x^2,xy)", "R/(x^2,x*y)", "[1, 2, 4]"),
        ("m/(x^2)", "m/(x^2)", "[2, 1, 5]"),
        ("m/(y^2)", "m/(y^2)", "[2, 1, 3]"),
    ];
    let mut cusp = vec![
        row("(x):m", "colon((x), m)", "(x, y^2)"),
        row("(x^2):(x^2,xy)", "colon((x^2), (x^2,x*y))", "(x, y^2)"),
        row("ci_link(m, x)", "ci_link(m, [x])", "(x, y^2)"),
    ];
    for (label, module, expected) in table {
        cusp.push(row(&format!("[nu, type, length] {label}"), &format!("[nu({module}), type({module}), length({module})]"), expected));
    }
    cusp.push(row(
        "link via coker[x,y;0,x]",
        "is_isomorphic(perfect_link(morphism(coker [x,y;0,x], R/m, [1,0])), m/(x^2))",
        "true",
    ));
    cusp.push(row(
        "link via coker[y,x;0,y]",
        "is_isomorphic(perfect_link(morphism(coker [y,x;0,y], R/m, [1,0])), m/(y^2))",
        "true",
    ));
    cusp.push(row("Ext^1(R/(xy^2,x^2))", "ext(R/(x*y^2,x^2), 1)", "m/(x^2)"));

    let mut node = Vec::new();
    for (a, b) in [(1, 1), (2, 3), (3, 2)] {
        node.push(row(&format!("(x^{a}-y^{b}):m"), &format!("colon((x^{a}-y^{b}), m)"), &format!("(x^{a}, y^{b})")));
        node.push(row(&format!("length R/(x^{a},y^{b})"), &format!("length(R/(x^{a},y^{b}))"), &(a + b - 1).to_string()));
    }

    let a3 = vec![
        row(
            "k vs R/(x,y^2) [doubly, triply, linked]",
            "[is_doubly_perfectly_linked(R/m, R/(x,y^2)), is_triply_perfectly_linked(R/m, R/(x,y^2)), is_perfectly_linked_codim1(R/m, R/(x,y^2))]",
            "[false, false, false]",
        ),
        row("(x,y^2) splits", "is_isomorphic((x,y^2), oplus((x+y^2), (x-y^2)))", "true"),
        row("(x,y^2) self-dual", "is_isomorphic(dual((x,y^2)), (x,y^2))", "true"),
    ];

    let a4 = vec![row(
        "[chi_m(R/m), chi_n(R/m), chi_m(R/n), chi_n(R/n)]",
        "[summand_multiplicity(R/m, m), summand_multiplicity(R/m, n), summand_multiplicity(R/n, m), summand_multiplicity(R/n, n)]",
        "[1, 0, 0, 1]",
    )];

    vec![
        Suite { section: "cusp", setup: CUSP, rows: cusp },
        Suite { section: "node", setup: NODE, rows: node },
        Suite { section: "A3", setup: A3, rows: a3 },
        Suite { section: "A4", setup: A4, rows: a4 },
    ]
}

fn run_suite(suite: &Suite, options: &Options) -> Result<Vec<Check>> {
    let mut interp = Interpreter::new(options.clone());
    for stmt in parse_script(suite.setup)? {
        interp.exec(&stmt)?;
    }
    let mut out = Vec::new();
    for (name, expr, expected) in &suite.rows {
        let check = match (interp.eval(expr), interp.eval(expected)) {
            (Ok(a), Ok(e)) => {
                let pass = values_equal(&a, &e).unwrap_or(false);
                Check { section: suite.section.into(), name: name.clone(), expected: e.render(), actual: a.render(), pass }
            }
            (a, e) => Check {
                section: suite.section.into(),
                name: name.clone(),
                expected: e.map(|v| v.render()).unwrap_or_else(|err| err.to_string()),
                actual: a.map(|v| v.render()).unwrap_or_else(|err| err.to_string()),
                pass: false,
            },
        };
        out.push(check);
    }
    Ok(out)
}

/// Regenerates every tabulated value and compares with the expected one.
pub fn reproduce_paper(options: &Options) -> Result<PaperReport> {
    let mut checks = Vec::new();
    for suite in suites() {
        checks.extend(run_suite(&suite, options)?);
    }
    Ok(PaperReport { checks })
}
