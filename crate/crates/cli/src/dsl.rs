//! The ring-specification language: one declaration or job per line.
//!
//! ```text
//! # instance (i)
//! A = zmod(4)
//! I = ideal(A, [[2]])
//! D = duplication(A, I)
//! job betti(D, depth=6)
//! ```
//!
//! Parsing also resolves names, arities and argument kinds, so every error a
//! file can have before any ring is built is reported with a position.

use std::collections::HashMap;
use std::fmt;

/// Source position, 1-based. Positions never take part in AST equality, so a
/// reformatted file parses to an equal tree.
#[derive(Clone, Copy, Debug, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl PartialEq for Pos {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}
impl Eq for Pos {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Int(i64, Pos),
    Name(String, Pos),
    List(Vec<Value>, Pos),
    Call(Call),
}

impl Value {
    pub fn pos(&self) -> Pos {
        match self {
            Value::Int(_, p) | Value::Name(_, p) | Value::List(_, p) => *p,
            Value::Call(c) => c.pos,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arg {
    pub key: Option<String>,
    pub value: Value,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Call {
    pub func: String,
    pub args: Vec<Arg>,
    pub pos: Pos,
}

impl Call {
    pub fn positional(&self) -> impl Iterator<Item = &Value> {
        self.args.iter().filter(|a| a.key.is_none()).map(|a| &a.value)
    }

    pub fn keyword(&self, key: &str) -> Option<&Value> {
        self.args.iter().find(|a| a.key.as_deref() == Some(key)).map(|a| &a.value)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stmt {
    Decl { name: String, call: Call, pos: Pos },
    Job { call: Call, pos: Pos },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SpecFile {
    pub stmts: Vec<Stmt>,
}

impl SpecFile {
    pub fn declarations(&self) -> impl Iterator<Item = (&str, &Call)> {
        self.stmts.iter().filter_map(|s| match s {
            Stmt::Decl { name, call, .. } => Some((name.as_str(), call)),
            Stmt::Job { .. } => None,
        })
    }

    pub fn jobs(&self) -> impl Iterator<Item = &Call> {
        self.stmts.iter().filter_map(|s| match s {
            Stmt::Job { call, .. } => Some(call),
            Stmt::Decl { .. } => None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for Diagnostic {}

fn diag(pos: Pos, message: impl Into<String>) -> Diagnostic {
    Diagnostic { line: pos.line, col: pos.col, message: message.into() }
}

// ---------------------------------------------------------------- kinds and signatures

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Ring,
    Hom,
    Ideal,
    Module,
    Amalgam,
    Int,
    Vector,
    Matrix,
    Tensor,
}

impl Kind {
    fn name(self) -> &'static str {
        match self {
            Kind::Ring => "ring",
            Kind::Hom => "hom",
            Kind::Ideal => "ideal",
            Kind::Module => "module",
            Kind::Amalgam => "amalgamation",
            Kind::Int => "integer",
            Kind::Vector => "vector",
            Kind::Matrix => "list of vectors",
            Kind::Tensor => "list of matrices",
        }
    }

    /// Whether a value of kind `self` can stand where `want` is expected.
    fn fits(self, want: Kind) -> bool {
        self == want || (self == Kind::Amalgam && want == Kind::Ring) || (self == Kind::Ideal && want == Kind::Module)
    }
}

pub struct Signature {
    pub name: &'static str,
    pub params: &'static [Kind],
    /// Number of leading parameters that must be given.
    pub required: usize,
    pub keywords: &'static [(&'static str, Kind)],
    pub returns: Option<Kind>,
}

use Kind::*;

const fn ctor(name: &'static str, params: &'static [Kind], returns: Kind) -> Signature {
    Signature { name, params, required: params.len(), keywords: &[], returns: Some(returns) }
}

pub const CONSTRUCTORS: &[Signature] = &[
    ctor("zmod", &[Int], Ring),
    ctor("truncated_poly", &[Int, Int], Ring),
    ctor("product", &[Ring, Ring], Ring),
    ctor("power", &[Ring, Int], Ring),
    ctor("quotient", &[Ring, Ideal], Ring),
    ctor("trivial_ext", &[Ring, Module], Ring),
    ctor("table", &[Int, Tensor, Vector], Ring),
    ctor("subring_image_plus", &[Hom, Ideal], Ring),
    ctor("ideal", &[Ring, Matrix], Ideal),
    ctor("maximal_ideal", &[Ring], Ideal),
    ctor("nilradical", &[Ring], Ideal),
    ctor("hom", &[Ring, Ring, Matrix], Hom),
    ctor("projection", &[Ring, Ideal], Hom),
    ctor("inclusion", &[Hom, Ideal], Hom),
    ctor("identity", &[Ring], Hom),
    ctor("module_quotient", &[Ring, Ideal], Module),
    ctor("module_sum", &[Module, Module], Module),
    ctor("module_power", &[Module, Int], Module),
    ctor("amalgamation", &[Hom, Ideal], Amalgam),
    ctor("duplication", &[Ring, Ideal], Amalgam),
];

const DEPTH: (&str, Kind) = ("depth", Int);

pub const JOBS: &[Signature] = &[
    Signature { name: "hypotheses", params: &[Amalgam], required: 1, keywords: &[], returns: None },
    Signature { name: "remark21", params: &[Amalgam], required: 1, keywords: &[], returns: None },
    Signature { name: "power_iso", params: &[Amalgam, Int], required: 1, keywords: &[("samples", Int)], returns: None },
    Signature {
        name: "kernel_transfer",
        params: &[Amalgam, Int, Matrix, Matrix],
        required: 2,
        keywords: &[("r", Int), ("samples", Int)],
        returns: None,
    },
    Signature {
        name: "lemma24",
        params: &[Amalgam, Int, Matrix, Matrix],
        required: 2,
        keywords: &[("r", Int), ("samples", Int), DEPTH],
        returns: None,
    },
    Signature { name: "idempotent", params: &[Amalgam], required: 1, keywords: &[], returns: None },
    Signature { name: "betti", params: &[Amalgam], required: 1, keywords: &[DEPTH], returns: None },
    Signature { name: "thm31", params: &[Amalgam, Vector], required: 2, keywords: &[DEPTH], returns: None },
    Signature { name: "thm34", params: &[Amalgam, Vector, Int, Matrix, Matrix], required: 2, keywords: &[], returns: None },
    Signature { name: "pd_profile", params: &[Ring], required: 1, keywords: &[DEPTH, ("ideals", Int)], returns: None },
    Signature { name: "verify_ring", params: &[Ring], required: 1, keywords: &[], returns: None },
    Signature { name: "gldim", params: &[Ring], required: 1, keywords: &[DEPTH], returns: None },
    Signature { name: "resolve", params: &[Module], required: 1, keywords: &[DEPTH], returns: None },
];

pub fn constructor(name: &str) -> Option<&'static Signature> {
    CONSTRUCTORS.iter().find(|s| s.name == name)
}

pub fn job(name: &str) -> Option<&'static Signature> {
    JOBS.iter().find(|s| s.name == name)
}

// ---------------------------------------------------------------- lexer

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    Sym(char),
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Int(n) => format!("integer `{n}`"),
            Tok::Sym(c) => format!("`{c}`"),
            Tok::End => "end of line".into(),
        }
    }
}

fn lex_line(text: &str, line: usize) -> Result<Vec<(Tok, Pos)>, Diagnostic> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col: i + 1 };
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), pos));
        } else if c.is_ascii_digit() || (c == '-' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit())) {
            let start = i;
            i += 1;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let n = s.parse::<i64>().map_err(|_| diag(pos, format!("integer `{s}` out of range")))?;
            out.push((Tok::Int(n), pos));
        } else if "=()[],".contains(c) {
            out.push((Tok::Sym(c), pos));
            i += 1;
        } else {
            return Err(diag(pos, format!("unexpected character `{c}`")));
        }
    }
    out.push((Tok::End, Pos { line, col: chars.len() + 1 }));
    Ok(out)
}

// ---------------------------------------------------------------- parser

struct LineParser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl LineParser {
    fn peek(&self) -> &(Tok, Pos) {
        &self.toks[self.at]
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn unexpected<T>(&self, expected: &str) -> Result<T, Diagnostic> {
        let (tok, pos) = self.peek();
        Err(diag(*pos, format!("expected {expected}, found {}", tok.describe())))
    }

    fn expect(&mut self, c: char) -> Result<Pos, Diagnostic> {
        match self.peek() {
            (Tok::Sym(s), p) if *s == c => {
                let p = *p;
                self.bump();
                Ok(p)
            }
            _ => self.unexpected(&format!("`{c}`")),
        }
    }

    fn ident(&mut self, what: &str) -> Result<(String, Pos), Diagnostic> {
        match self.peek().clone() {
            (Tok::Ident(s), p) => {
                self.bump();
                Ok((s, p))
            }
            _ => self.unexpected(what),
        }
    }

    fn call_after_name(&mut self, func: String, pos: Pos) -> Result<Call, Diagnostic> {
        self.expect('(')?;
        let mut args = Vec::new();
        if matches!(self.peek().0, Tok::Sym(')')) {
            self.bump();
            return Ok(Call { func, args, pos });
        }
        loop {
            let key = match (&self.toks[self.at].0, self.toks.get(self.at + 1).map(|t| &t.0)) {
                (Tok::Ident(k), Some(Tok::Sym('='))) => {
                    let k = k.clone();
                    self.bump();
                    self.bump();
                    Some(k)
                }
                _ => None,
            };
            let value = self.value()?;
            args.push(Arg { key, value });
            match self.peek().0 {
                Tok::Sym(',') => {
                    self.bump();
                }
                Tok::Sym(')') => {
                    self.bump();
                    return Ok(Call { func, args, pos });
                }
                _ => return self.unexpected("`,` or `)`"),
            }
        }
    }

    fn value(&mut self) -> Result<Value, Diagnostic> {
        match self.peek().clone() {
            (Tok::Int(n), p) => {
                self.bump();
                Ok(Value::Int(n, p))
            }
            (Tok::Ident(s), p) => {
                self.bump();
                if matches!(self.peek().0, Tok::Sym('(')) {
                    Ok(Value::Call(self.call_after_name(s, p)?))
                } else {
                    Ok(Value::Name(s, p))
                }
            }
            (Tok::Sym('['), p) => {
                self.bump();
                let mut items = Vec::new();
                if matches!(self.peek().0, Tok::Sym(']')) {
                    self.bump();
                    return Ok(Value::List(items, p));
                }
                loop {
                    items.push(self.value()?);
                    match self.peek().0 {
                        Tok::Sym(',') => {
                            self.bump();
                        }
                        Tok::Sym(']') => {
                            self.bump();
                            return Ok(Value::List(items, p));
                        }
                        _ => return self.unexpected("`,` or `]`"),
                    }
                }
            }
            _ => self.unexpected("a value (integer, name, `[` or constructor call)"),
        }
    }

    fn statement(&mut self) -> Result<Option<Stmt>, Diagnostic> {
        match self.peek().clone() {
            (Tok::End, _) => Ok(None),
            (Tok::Ident(kw), pos) if kw == "job" && !matches!(self.toks[self.at + 1].0, Tok::Sym('=')) => {
                self.bump();
                let (name, p) = self.ident("a job name")?;
                let call = self.call_after_name(name, p)?;
                self.finish()?;
                Ok(Some(Stmt::Job { call, pos }))
            }
            (Tok::Ident(name), pos) => {
                self.bump();
                self.expect('=')?;
                let (func, p) = self.ident("a constructor name")?;
                let call = self.call_after_name(func, p)?;
                self.finish()?;
                Ok(Some(Stmt::Decl { name, call, pos }))
            }
            _ => self.unexpected("a declaration `name = constructor(...)` or `job name(...)`"),
        }
    }

    fn finish(&mut self) -> Result<(), Diagnostic> {
        match self.peek().0 {
            Tok::End => Ok(()),
            _ => self.unexpected("end of line"),
        }
    }
}

/// Parse and statically check a specification file.
pub fn parse(text: &str) -> Result<SpecFile, Diagnostic> {
    let mut file = SpecFile::default();
    for (i, line) in text.lines().enumerate() {
        let toks = lex_line(line, i + 1)?;
        let mut p = LineParser { toks, at: 0 };
        if let Some(s) = p.statement()? {
            file.stmts.push(s);
        }
    }
    check(&file)?;
    Ok(file)
}

// ---------------------------------------------------------------- static checks

/// Nesting depth of a list literal; `None` for the empty list.
fn list_depth(items: &[Value]) -> Result<Option<usize>, Diagnostic> {
    let mut depth: Option<usize> = None;
    for v in items {
        let d = match v {
            Value::Int(..) => Some(0),
            Value::List(inner, _) => list_depth(inner)?,
            other => return Err(diag(other.pos(), "list entries must be integers or lists")),
        };
        match (depth, d) {
            (Some(a), Some(b)) if a != b => return Err(diag(v.pos(), "list entries must all have the same shape")),
            (None, Some(_)) => depth = d,
            _ => {}
        }
    }
    if items.is_empty() {
        return Ok(None);
    }
    Ok(Some(1 + depth.unwrap_or(1)))
}

fn value_kind(v: &Value, scope: &HashMap<String, Kind>) -> Result<Option<Kind>, Diagnostic> {
    match v {
        Value::Int(..) => Ok(Some(Int)),
        Value::Name(n, p) => scope.get(n).copied().map(Some).ok_or_else(|| diag(*p, format!("unknown name `{n}`"))),
        Value::List(items, p) => match list_depth(items)? {
            None => Ok(None),
            Some(1) => Ok(Some(Vector)),
            Some(2) => Ok(Some(Matrix)),
            Some(3) => Ok(Some(Tensor)),
            Some(_) => Err(diag(*p, "lists nest at most three deep")),
        },
        Value::Call(c) => {
            let sig = constructor(&c.func).ok_or_else(|| diag(c.pos, format!("unknown constructor `{}`", c.func)))?;
            check_call(c, sig, scope)?;
            Ok(sig.returns)
        }
    }
}

fn fits(got: Option<Kind>, want: Kind) -> bool {
    match got {
        None => matches!(want, Vector | Matrix | Tensor),
        Some(g) => g.fits(want),
    }
}

fn check_call(c: &Call, sig: &Signature, scope: &HashMap<String, Kind>) -> Result<(), Diagnostic> {
    let positional: Vec<&Value> = c.positional().collect();
    if positional.len() < sig.required || positional.len() > sig.params.len() {
        let want = if sig.required == sig.params.len() {
            format!("{}", sig.required)
        } else {
            format!("{} to {}", sig.required, sig.params.len())
        };
        return Err(diag(c.pos, format!("`{}` takes {want} positional arguments, got {}", c.func, positional.len())));
    }
    let mut seen_key = false;
    for a in &c.args {
        match &a.key {
            Some(_) => seen_key = true,
            None if seen_key => return Err(diag(a.value.pos(), "positional argument after keyword argument")),
            None => {}
        }
    }
    for (v, want) in positional.iter().zip(sig.params) {
        let got = value_kind(v, scope)?;
        if !fits(got, *want) {
            let found = got.map_or("empty list", |k| k.name());
            return Err(diag(v.pos(), format!("`{}` expects a {} here, found a {found}", c.func, want.name())));
        }
    }
    let mut keys = Vec::new();
    for a in c.args.iter().filter(|a| a.key.is_some()) {
        let key = a.key.as_deref().unwrap_or_default();
        let Some((_, want)) = sig.keywords.iter().find(|(k, _)| *k == key) else {
            return Err(diag(a.value.pos(), format!("`{}` has no keyword argument `{key}`", c.func)));
        };
        if keys.contains(&key) {
            return Err(diag(a.value.pos(), format!("keyword `{key}` given twice")));
        }
        keys.push(key);
        if !fits(value_kind(&a.value, scope)?, *want) {
            return Err(diag(a.value.pos(), format!("keyword `{key}` expects a {}", want.name())));
        }
    }
    Ok(())
}

fn check(file: &SpecFile) -> Result<(), Diagnostic> {
    let mut scope: HashMap<String, Kind> = HashMap::new();
    for s in &file.stmts {
        match s {
            Stmt::Decl { name, call, pos } => {
                if scope.contains_key(name) {
                    return Err(diag(*pos, format!("`{name}` is already defined")));
                }
                if constructor(name).is_some() || job(name).is_some() || name == "job" {
                    return Err(diag(*pos, format!("`{name}` is a reserved word")));
                }
                let sig = constructor(&call.func).ok_or_else(|| diag(call.pos, format!("unknown constructor `{}`", call.func)))?;
                check_call(call, sig, &scope)?;
                scope.insert(name.clone(), sig.returns.unwrap_or(Ring));
            }
            Stmt::Job { call, .. } => {
                let sig = job(&call.func).ok_or_else(|| diag(call.pos, format!("unknown job `{}`", call.func)))?;
                check_call(call, sig, &scope)?;
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------- serializer

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(n, _) => write!(f, "{n}"),
            Value::Name(s, _) => f.write_str(s),
            Value::List(items, _) => {
                f.write_str("[")?;
                for (i, v) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{v}")?;
                }
                f.write_str("]")
            }
            Value::Call(c) => write!(f, "{c}"),
        }
    }
}

impl fmt::Display for Call {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.func)?;
        for (i, a) in self.args.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            if let Some(k) = &a.key {
                write!(f, "{k}=")?;
            }
            write!(f, "{}", a.value)?;
        }
        f.write_str(")")
    }
}

impl fmt::Display for Stmt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stmt::Decl { name, call, .. } => write!(f, "{name} = {call}"),
            Stmt::Job { call, .. } => write!(f, "job {call}"),
        }
    }
}

/// Canonical text of a file: one statement per line, no comments.
pub fn serialize(file: &SpecFile) -> String {
    serialize_annotated(file, |_| None)
}

/// Canonical text with an optional comment line after each declaration.
pub fn serialize_annotated(file: &SpecFile, comment: impl Fn(&str) -> Option<String>) -> String {
    let mut out = String::new();
    for s in &file.stmts {
        out.push_str(&s.to_string());
        out.push('\n');
        if let Stmt::Decl { name, .. } = s {
            if let Some(c) = comment(name) {
                out.push_str("# ");
                out.push_str(&c);
                out.push('\n');
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_statements() {
        let f = parse("A = zmod(4)\nI = ideal(A, [[2]])\nD = duplication(A, I)\njob remark21(D)").unwrap();
        assert_eq!(f.stmts.len(), 4);
        assert_eq!(f.jobs().count(), 1);
    }

    #[test]
    fn forward_reference_is_rejected_on_its_line() {
        let e = parse("D = duplication(A, I)\nA = zmod(4)").unwrap_err();
        assert_eq!((e.line, e.col), (1, 17));
        assert!(e.message.contains("unknown name `A`"));
    }

    #[test]
    fn comments_and_blanks_do_not_matter() {
        let plain = parse("A = zmod(4)\nI = ideal(A, [[2]])").unwrap();
        let noisy = parse("# ring\n\nA = zmod(4)   # Z/4\n\n  I = ideal( A , [ [2] ] )\n").unwrap();
        assert_eq!(plain, noisy);
    }

    #[test]
    fn arity_and_kind_errors() {
        let e = parse("A = zmod(4, 5)").unwrap_err();
        assert_eq!((e.line, e.col), (1, 5));
        let e = parse("A = zmod(4)\nB = product(A, [1])").unwrap_err();
        assert_eq!((e.line, e.col), (2, 16));
        let e = parse("A = zmod(4)\njob betti(A)").unwrap_err();
        assert!(e.message.contains("amalgamation"));
    }

    #[test]
    fn syntax_errors_point_at_the_token() {
        let e = parse("A = zmod(4\n").unwrap_err();
        assert_eq!((e.line, e.col), (1, 11));
        let e = parse("A = zmod(4)\nB = zmod(4))").unwrap_err();
        assert_eq!((e.line, e.col), (2, 12));
        let e = parse("A = zmod($)").unwrap_err();
        assert_eq!(e.col, 10);
    }

    #[test]
    fn round_trip() {
        let src = "A = zmod(4)\nI = ideal(A, [[2]])\nD = duplication(A, I)\njob kernel_transfer(D, 1, [[2]], [[0]])\njob betti(D, depth=6)\n";
        let f = parse(src).unwrap();
        assert_eq!(serialize(&f), src);
        assert_eq!(parse(&serialize(&f)).unwrap(), f);
    }

    #[test]
    fn nested_constructor_calls() {
        let f = parse("A = trivial_ext(zmod(4), module_quotient(zmod(4), ideal(zmod(4), [[2]])))").unwrap();
        assert_eq!(f.stmts.len(), 1);
    }
}
