//! Plain-text encodings: `.ineq` systems, `.cuts` lists and `.proof` trees.

use std::fmt::Write as _;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{IntVector, Integer, RatVector, Rational};
use crate::lp::{FarkasCertificate, InequalitySystem};
use crate::proof::{BranchNode, BranchingProof, EnumNode, EnumerativeProof};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// Parses `p/q` or `p`, with an optional leading `-` (or `−`).
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (neg, body) = match s.strip_prefix('-').or_else(|| s.strip_prefix('\u{2212}')) {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|c| c.is_ascii_digit());
    let (p, q) = match body.split_once('/') {
        Some((p, q)) if digits(p) && digits(q) => (p.parse::<Integer>().ok()?, q.parse::<Integer>().ok()?),
        None if digits(body) => (body.parse::<Integer>().ok()?, Integer::from(1)),
        _ => return None,
    };
    if q.is_zero() {
        return None;
    }
    let r = Rational::new(p, q);
    Some(if neg { -r } else { r })
}

pub fn parse_integer(s: &str) -> Option<Integer> {
    parse_rational(s).filter(|r| r.is_integer()).map(|r| r.to_integer())
}

/// `p/q`, or `p` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

/// `.ineq`: a header `n m` followed by `m` rows `a₁ … a_n b`.
pub fn parse_system(text: &str) -> Result<InequalitySystem> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
    let head: Vec<usize> = header.split_whitespace().map(str::parse).collect::<std::result::Result<_, _>>().map_err(|_| parse_err(hl, "header must be `n m`"))?;
    let [n, m] = head[..] else {
        return Err(parse_err(hl, "header must be `n m`"));
    };
    if n == 0 {
        return Err(parse_err(hl, "dimension must be positive"));
    }
    let mut s = InequalitySystem::new(n);
    for _ in 0..m {
        let (ln, line) = lines.next().ok_or_else(|| parse_err(hl, format!("expected {m} rows")))?;
        let vals = line
            .split_whitespace()
            .map(|t| parse_rational(t).ok_or_else(|| parse_err(ln, format!("bad number `{t}`"))))
            .collect::<Result<Vec<_>>>()?;
        if vals.len() != n + 1 {
            return Err(parse_err(ln, format!("expected {} numbers, found {}", n + 1, vals.len())));
        }
        let mut vals = vals;
        let b = vals.pop().expect("nonempty row");
        s.push(RatVector::new(vals), b)?;
    }
    if let Some((ln, _)) = lines.next() {
        return Err(parse_err(ln, "trailing content after the declared rows"));
    }
    Ok(s)
}

pub fn format_system(s: &InequalitySystem) -> String {
    let mut out = format!("{} {}\n", s.dim(), s.num_rows());
    for (a, b) in s.rows().iter().zip(s.rhs()) {
        let row: Vec<String> = a.iter().chain(std::iter::once(b)).map(format_rational).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// `.cuts`: one integer normal per line.
pub fn parse_cuts(text: &str) -> Result<Vec<IntVector>> {
    let mut cuts: Vec<IntVector> = Vec::new();
    for (ln, line) in content_lines(text) {
        let v = line
            .split_whitespace()
            .map(|t| parse_integer(t).ok_or_else(|| parse_err(ln, format!("bad integer `{t}`"))))
            .collect::<Result<Vec<_>>>()?;
        if let Some(first) = cuts.first() {
            if first.dim() != v.len() {
                return Err(parse_err(ln, "cut normals differ in dimension"));
            }
        }
        cuts.push(IntVector::new(v));
    }
    Ok(cuts)
}

pub fn format_cuts(cuts: &[IntVector]) -> String {
    cuts.iter().map(|c| c.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ") + "\n").collect()
}

#[derive(Clone, Debug, PartialEq)]
enum Sexp {
    Atom(String, usize),
    List(Vec<Sexp>, usize),
}

impl Sexp {
    fn line(&self) -> usize {
        match self {
            Sexp::Atom(_, l) | Sexp::List(_, l) => *l,
        }
    }

    fn list(&self) -> Result<&[Sexp]> {
        match self {
            Sexp::List(v, _) => Ok(v),
            Sexp::Atom(a, l) => Err(parse_err(*l, format!("expected a list, found `{a}`"))),
        }
    }

    fn atom(&self) -> Result<&str> {
        match self {
            Sexp::Atom(a, _) => Ok(a),
            Sexp::List(_, l) => Err(parse_err(*l, "expected an atom")),
        }
    }

    fn rational(&self) -> Result<Rational> {
        let a = self.atom()?;
        parse_rational(a).ok_or_else(|| parse_err(self.line(), format!("bad number `{a}`")))
    }

    fn integer(&self) -> Result<Integer> {
        let a = self.atom()?;
        parse_integer(a).ok_or_else(|| parse_err(self.line(), format!("bad integer `{a}`")))
    }
}

fn read_sexp(text: &str) -> Result<Sexp> {
    let mut tokens = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        let spaced = line.replace('(', " ( ").replace(')', " ) ");
        tokens.extend(spaced.split_whitespace().map(|t| (t.to_string(), i + 1)));
    }
    let mut pos = 0;
    let e = read_one(&tokens, &mut pos)?;
    if let Some((t, l)) = tokens.get(pos) {
        return Err(parse_err(*l, format!("unexpected `{t}` after the tree")));
    }
    Ok(e)
}

fn read_one(tokens: &[(String, usize)], pos: &mut usize) -> Result<Sexp> {
    let (tok, line) = tokens.get(*pos).ok_or_else(|| parse_err(tokens.last().map_or(1, |t| t.1), "unexpected end of input"))?;
    *pos += 1;
    match tok.as_str() {
        "(" => {
            let mut items = Vec::new();
            loop {
                match tokens.get(*pos) {
                    Some((t, _)) if t == ")" => {
                        *pos += 1;
                        return Ok(Sexp::List(items, *line));
                    }
                    Some(_) => items.push(read_one(tokens, pos)?),
                    None => return Err(parse_err(*line, "unbalanced parenthesis")),
                }
            }
        }
        ")" => Err(parse_err(*line, "unexpected `)`")),
        _ => Ok(Sexp::Atom(tok.clone(), *line)),
    }
}

/// A parsed `.proof` file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProofFile {
    Branching(BranchingProof),
    Enumerative(EnumerativeProof),
}

pub fn parse_proof(text: &str) -> Result<ProofFile> {
    let e = read_sexp(text)?;
    let head = e.list()?.first().map(Sexp::atom).transpose()?.unwrap_or("");
    match head {
        "node" | "leaf" => Ok(ProofFile::Branching(BranchingProof::new(branch_node(&e)?))),
        "enode" | "eleaf" => Ok(ProofFile::Enumerative(EnumerativeProof::new(enum_node(&e)?))),
        other => Err(parse_err(e.line(), format!("unknown tree tag `{other}`"))),
    }
}

pub fn parse_branching(text: &str) -> Result<BranchingProof> {
    match parse_proof(text)? {
        ProofFile::Branching(t) => Ok(t),
        ProofFile::Enumerative(_) => Err(parse_err(1, "expected a branching proof, found an enumerative one")),
    }
}

pub fn parse_enumerative(text: &str) -> Result<EnumerativeProof> {
    match parse_proof(text)? {
        ProofFile::Enumerative(t) => Ok(t),
        ProofFile::Branching(_) => Err(parse_err(1, "expected an enumerative proof, found a branching one")),
    }
}

fn expect_tag<'a>(e: &'a Sexp, tags: &[&str]) -> Result<(&'a str, &'a [Sexp])> {
    let items = e.list()?;
    let tag = items.first().ok_or_else(|| parse_err(e.line(), "empty list"))?.atom()?;
    if !tags.contains(&tag) {
        return Err(parse_err(e.line(), format!("expected one of {tags:?}, found `{tag}`")));
    }
    Ok((tag, &items[1..]))
}

fn branch_node(e: &Sexp) -> Result<BranchNode> {
    match expect_tag(e, &["node", "leaf"])? {
        ("leaf", []) => Ok(BranchNode::leaf()),
        ("leaf", [cert]) => {
            let (_, vals) = expect_tag(cert, &["cert"])?;
            let lam = vals.iter().map(Sexp::rational).collect::<Result<Vec<_>>>()?;
            Ok(BranchNode::Leaf { certificate: Some(FarkasCertificate::new(RatVector::new(lam))) })
        }
        ("node", [label, left, right]) => {
            let mut nums = label.list()?.iter().map(Sexp::integer).collect::<Result<Vec<_>>>()?;
            if nums.len() < 2 {
                return Err(parse_err(label.line(), "disjunction needs a normal and a right-hand side"));
            }
            let b = nums.pop().expect("nonempty label");
            Ok(BranchNode::split(IntVector::new(nums), b, branch_node(left)?, branch_node(right)?))
        }
        (tag, _) => Err(parse_err(e.line(), format!("malformed `{tag}`"))),
    }
}

fn enum_node(e: &Sexp) -> Result<EnumNode> {
    match expect_tag(e, &["enode", "eleaf"])? {
        ("eleaf", [kind]) if kind.atom()? == "empty" => Ok(EnumNode::Empty),
        ("eleaf", [kind, dir, l, u]) if kind.atom()? == "gap" => Ok(EnumNode::gap(int_vector(dir)?, l.rational()?, u.rational()?)),
        ("enode", [dir, l, u, kids @ ..]) => {
            let children = kids
                .iter()
                .map(|k| match expect_tag(k, &["child"])? {
                    (_, [b, sub]) => Ok((b.integer()?, enum_node(sub)?)),
                    _ => Err(parse_err(k.line(), "child needs a value and a subtree")),
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(EnumNode::Branch { direction: int_vector(dir)?, lower: l.rational()?, upper: u.rational()?, children })
        }
        (tag, _) => Err(parse_err(e.line(), format!("malformed `{tag}`"))),
    }
}

fn int_vector(e: &Sexp) -> Result<IntVector> {
    Ok(IntVector::new(e.list()?.iter().map(Sexp::integer).collect::<Result<Vec<_>>>()?))
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

pub fn format_branching(t: &BranchingProof) -> String {
    fn go(node: &BranchNode, depth: usize, out: &mut String) {
        let pad = "  ".repeat(depth);
        match node {
            BranchNode::Leaf { certificate: None } => {
                let _ = writeln!(out, "{pad}(leaf)");
            }
            BranchNode::Leaf { certificate: Some(c) } => {
                let _ = writeln!(out, "{pad}(leaf (cert {}))", join(&c.multipliers));
            }
            BranchNode::Split { normal, rhs, left, right } => {
                let _ = writeln!(out, "{pad}(node ({} {rhs})", join(normal));
                go(left, depth + 1, out);
                go(right, depth + 1, out);
                let _ = writeln!(out, "{pad})");
            }
        }
    }
    let mut out = String::new();
    go(&t.root, 0, &mut out);
    out
}

pub fn format_enumerative(t: &EnumerativeProof) -> String {
    fn go(node: &EnumNode, depth: usize, out: &mut String) {
        let pad = "  ".repeat(depth);
        match node {
            EnumNode::Empty => {
                let _ = writeln!(out, "{pad}(eleaf empty)");
            }
            EnumNode::Branch { direction, lower, upper, children } if children.is_empty() => {
                let _ = writeln!(out, "{pad}(eleaf gap ({}) {lower} {upper})", join(direction));
            }
            EnumNode::Branch { direction, lower, upper, children } => {
                let _ = writeln!(out, "{pad}(enode ({}) {lower} {upper}", join(direction));
                for (b, child) in children {
                    let _ = writeln!(out, "{pad}  (child {b}");
                    go(child, depth + 2, out);
                    let _ = writeln!(out, "{pad}  )");
                }
                let _ = writeln!(out, "{pad})");
            }
        }
    }
    let mut out = String::new();
    go(&t.root, 0, &mut out);
    out
}

pub fn format_proof(p: &ProofFile) -> String {
    match p {
        ProofFile::Branching(t) => format_branching(t),
        ProofFile::Enumerative(t) => format_enumerative(t),
    }
}
