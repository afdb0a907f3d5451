//! Statement splitting and the small amount of lexical structure the
//! script language has.

use crate::error::{Error, Result};

/// One statement with the line it starts on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stmt {
    pub line: usize,
    pub kind: StmtKind,
    pub source: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StmtKind {
    Ring { name: String, spec: RingSpec },
    Ideal { name: String, expr: String },
    Module { name: String, expr: String },
    Let { name: String, expr: String },
    Assert { lhs: String, rhs: Option<String> },
    Print { expr: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingSpec {
    pub field: String,
    pub vars: Vec<String>,
    pub relations: Vec<String>,
    pub weights: Option<Vec<u32>>,
    pub local: bool,
}

fn err<T>(line: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { line, msg: msg.into() })
}

fn depth_step(c: char, depth: &mut i32) {
    match c {
        '(' | '[' => *depth += 1,
        ')' | ']' => *depth -= 1,
        _ => {}
    }
}

/// Splits at any of `seps` outside brackets.
pub fn split_top(s: &str, seps: &[char]) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0;
    let mut cur = String::new();
    for c in s.chars() {
        if depth == 0 && seps.contains(&c) {
            out.push(cur.trim().to_string());
            cur.clear();
            continue;
        }
        depth_step(c, &mut depth);
        cur.push(c);
    }
    out.push(cur.trim().to_string());
    out
}

/// Byte offset of the first `pat` outside brackets.
pub fn find_top(s: &str, pat: &str) -> Option<usize> {
    let mut depth = 0;
    for (i, c) in s.char_indices() {
        if depth == 0 && s[i..].starts_with(pat) {
            return Some(i);
        }
        depth_step(c, &mut depth);
    }
    None
}

/// Byte offset of the last `c` outside brackets.
pub fn rfind_top(s: &str, c: char) -> Option<usize> {
    let mut depth = 0;
    let mut found = None;
    for (i, ch) in s.char_indices() {
        if depth == 0 && ch == c {
            found = Some(i);
        }
        depth_step(ch, &mut depth);
    }
    found
}

/// Whether `s` is one bracketed group `open ... close`.
pub fn strip_group(s: &str, open: char, close: char) -> Option<&str> {
    let s = s.trim();
    if !s.starts_with(open) || !s.ends_with(close) {
        return None;
    }
    let mut depth = 0;
    for (i, c) in s.char_indices() {
        depth_step(c, &mut depth);
        if depth == 0 && i + c.len_utf8() < s.len() {
            return None;
        }
    }
    Some(&s[open.len_utf8()..s.len() - close.len_utf8()])
}

pub fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Splits a script into statements: newlines and top-level `;` end a
/// statement, `#` and `//` start comments.
pub fn parse_script(src: &str) -> Result<Vec<Stmt>> {
    let mut out = Vec::new();
    for (idx, raw) in src.lines().enumerate() {
        let line = idx + 1;
        let mut text = raw;
        if let Some(p) = text.find('#') {
            text = &text[..p];
        }
        if let Some(p) = text.find("//") {
            text = &text[..p];
        }
        let mut depth = 0;
        for c in text.chars() {
            depth_step(c, &mut depth);
            if depth < 0 {
                return err(line, "unbalanced brackets");
            }
        }
        if depth != 0 {
            return err(line, "unbalanced brackets");
        }
        for piece in split_statements(text) {
            if !piece.is_empty() {
                out.push(Stmt { line, kind: parse_stmt(&piece, line)?, source: piece });
            }
        }
    }
    Ok(out)
}

/// `;` separates statements, except inside brackets where it separates
/// matrix rows or arguments.
fn split_statements(text: &str) -> Vec<String> {
    split_top(text, &[';'])
}

fn parse_stmt(s: &str, line: usize) -> Result<StmtKind> {
    let (head, rest) = match s.find(char::is_whitespace) {
        Some(p) => (&s[..p], s[p..].trim()),
        None => (s, ""),
    };
    match head {
        "ring" | "ideal" | "module" | "let" => {
            let Some(eq) = rest.find('=') else { return err(line, format!("expected `{head} NAME = ...`")) };
            let name = rest[..eq].trim().to_string();
            let body = rest[eq + 1..].trim().to_string();
            if !is_ident(&name) {
                return err(line, format!("bad name `{name}`"));
            }
            if body.is_empty() {
                return err(line, "missing right-hand side");
            }
            Ok(match head {
                "ring" => StmtKind::Ring { name, spec: parse_ring(&body, line)? },
                "ideal" => StmtKind::Ideal { name, expr: body },
                "module" => StmtKind::Module { name, expr: body },
                _ => StmtKind::Let { name, expr: body },
            })
        }
        "assert" => {
            if rest.is_empty() {
                return err(line, "empty assertion");
            }
            match find_top(rest, "==") {
                Some(p) => {
                    let (l, r) = (rest[..p].trim(), rest[p + 2..].trim());
                    if l.is_empty() || r.is_empty() {
                        return err(line, "assertion needs two sides");
                    }
                    Ok(StmtKind::Assert { lhs: l.to_string(), rhs: Some(r.to_string()) })
                }
                None => Ok(StmtKind::Assert { lhs: rest.to_string(), rhs: None }),
            }
        }
        "print" => {
            if rest.is_empty() {
                return err(line, "nothing to print");
            }
            Ok(StmtKind::Print { expr: rest.to_string() })
        }
        other => err(line, format!("unknown statement `{other}`")),
    }
}

/// `FIELD[v1,...]/(g1,...) [weights(w1,...)] [local|global]`
fn parse_ring(body: &str, line: usize) -> Result<RingSpec> {
    let Some(open) = body.find('[') else { return err(line, "expected FIELD[vars]") };
    let field = body[..open].trim().to_string();
    let Some(close) = body[open..].find(']').map(|p| p + open) else { return err(line, "unclosed variable list") };
    let vars: Vec<String> = body[open + 1..close].split(',').map(|v| v.trim().to_string()).collect();
    if vars.iter().any(|v| !is_ident(v)) {
        return err(line, "variables must be identifiers");
    }
    let mut rest = body[close + 1..].trim();
    let mut relations = Vec::new();
    if let Some(r) = rest.strip_prefix('/') {
        let r = r.trim_start();
        let end = match_paren(r).ok_or(Error::Parse { line, msg: "expected (relations)".into() })?;
        relations = split_top(&r[1..end], &[','])
            .into_iter()
            .filter(|g| !g.is_empty())
            .collect();
        rest = r[end + 1..].trim();
    }
    let mut weights = None;
    let mut local = true;
    while !rest.is_empty() {
        if let Some(r) = rest.strip_prefix("weights") {
            let r = r.trim_start();
            let end = match_paren(r).ok_or(Error::Parse { line, msg: "expected weights(...)".into() })?;
            let w = r[1..end]
                .split(',')
                .map(|x| x.trim().parse::<u32>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::Parse { line, msg: "weights must be positive integers".into() })?;
            weights = Some(w);
            rest = r[end + 1..].trim();
        } else if let Some(r) = rest.strip_prefix("local") {
            local = true;
            rest = r.trim();
        } else if let Some(r) = rest.strip_prefix("global") {
            local = false;
            rest = r.trim();
        } else {
            return err(line, format!("unexpected `{rest}` in ring definition"));
        }
    }
    Ok(RingSpec { field, vars, relations, weights, local })
}

/// Index of the parenthesis closing the one at the start of `s`.
fn match_paren(s: &str) -> Option<usize> {
    if !s.starts_with('(') {
        return None;
    }
    let mut depth = 0;
    for (i, c) in s.char_indices() {
        depth_step(c, &mut depth);
        if depth == 0 {
            return Some(i);
        }
    }
    None
}
