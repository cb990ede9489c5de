//! Surface syntax for morphism words.
//!
//! Grammar (whitespace-insensitive, identifiers case-sensitive):
//!
//! ```text
//! expr  := cterm
//! cterm := tterm (";" tterm)*        left-to-right composition: a ; b = b ∘ a
//! tterm := atom ("@" atom)*          tensor, binds tighter than ";"
//! atom  := iota | eps | mu | delta | perm | b1 | b2 | b3
//!        | id "(" nat ")" | S "(" nat "," nat ")" | "(" expr ")"
//! ```

use std::fmt;

use thiserror::Error;

use crate::cobordism::{Cobordism, GenKind};

/// Half-open byte range into the source text.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    fn join(a: Span, b: Span) -> Span {
        Span { start: a.start, end: b.end }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ExprKind {
    Gen(GenKind),
    /// `Tensor(a, b)` is `a @ b`.
    Tensor(Box<Expr>, Box<Expr>),
    /// `Compose(a, b)` is `a ; b`, i.e. the morphism `b ∘ a`.
    Compose(Box<Expr>, Box<Expr>),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
    /// `(source, target)` arities, filled in by `typecheck`.
    pub arity: Option<(usize, usize)>,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ExprError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("arity mismatch at bytes {}..{}: left factor ends in {found} intervals, right factor starts with {expected}", span.start, span.end)]
    Arity { span: Span, expected: usize, found: usize },
}

impl ExprError {
    /// Byte position the error points at, for line:col reporting.
    pub fn position(&self) -> usize {
        match self {
            ExprError::Syntax { pos, .. } => *pos,
            ExprError::Arity { span, .. } => span.start,
        }
    }
}

/// 1-based (line, column) of a byte offset, for diagnostics.
pub fn line_col(src: &str, byte: usize) -> (usize, usize) {
    let byte = byte.min(src.len());
    let mut line = 1;
    let mut col = 1;
    for (i, ch) in src.char_indices() {
        if i >= byte {
            break;
        }
        if ch == '\n' {
            line += 1;
            col = 1;
        } else {
            col += 1;
        }
    }
    (line, col)
}

#[derive(Clone, PartialEq, Eq, Debug)]
enum Tok {
    Ident(String),
    Nat(usize),
    Semi,
    At,
    LParen,
    RParen,
    Comma,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "identifier {s:?}"),
            Tok::Nat(n) => write!(f, "number {n}"),
            Tok::Semi => write!(f, "\";\""),
            Tok::At => write!(f, "\"@\""),
            Tok::LParen => write!(f, "\"(\""),
            Tok::RParen => write!(f, "\")\""),
            Tok::Comma => write!(f, "\",\""),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, Span)>, ExprError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            ';' => {
                i += 1;
                Tok::Semi
            }
            '@' => {
                i += 1;
                Tok::At
            }
            '(' => {
                i += 1;
                Tok::LParen
            }
            ')' => {
                i += 1;
                Tok::RParen
            }
            ',' => {
                i += 1;
                Tok::Comma
            }
            _ if c.is_ascii_digit() => {
                while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                    i += 1;
                }
                let text = &src[start..i];
                let n: usize = text.parse().map_err(|_| ExprError::Syntax {
                    pos: start,
                    msg: format!("number out of range: {text}"),
                })?;
                Tok::Nat(n)
            }
            _ if c.is_ascii_alphabetic() => {
                while i < bytes.len() && (bytes[i] as char).is_ascii_alphanumeric() {
                    i += 1;
                }
                Tok::Ident(src[start..i].to_string())
            }
            _ => {
                return Err(ExprError::Syntax { pos: i, msg: format!("unexpected character {c:?}") });
            }
        };
        out.push((tok, Span { start, end: i }));
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [(Tok, Span)],
    pos: usize,
    src_len: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|(_, s)| s.start).unwrap_or(self.src_len)
    }

    fn next(&mut self, what: &str) -> Result<(Tok, Span), ExprError> {
        match self.toks.get(self.pos) {
            Some((t, s)) => {
                self.pos += 1;
                Ok((t.clone(), *s))
            }
            None => Err(ExprError::Syntax { pos: self.src_len, msg: format!("expected {what}, found end of input") }),
        }
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<Span, ExprError> {
        let (t, s) = self.next(what)?;
        if t == want {
            Ok(s)
        } else {
            Err(ExprError::Syntax { pos: s.start, msg: format!("expected {what}, found {t}") })
        }
    }

    fn nat(&mut self) -> Result<(usize, Span), ExprError> {
        let (t, s) = self.next("a number")?;
        match t {
            Tok::Nat(n) => Ok((n, s)),
            other => Err(ExprError::Syntax { pos: s.start, msg: format!("expected a number, found {other}") }),
        }
    }

    fn cterm(&mut self) -> Result<Expr, ExprError> {
        let mut acc = self.tterm()?;
        while self.peek() == Some(&Tok::Semi) {
            self.pos += 1;
            let rhs = self.tterm()?;
            let span = Span::join(acc.span, rhs.span);
            acc = Expr { kind: ExprKind::Compose(Box::new(acc), Box::new(rhs)), span, arity: None };
        }
        Ok(acc)
    }

    fn tterm(&mut self) -> Result<Expr, ExprError> {
        let mut acc = self.atom()?;
        while self.peek() == Some(&Tok::At) {
            self.pos += 1;
            let rhs = self.atom()?;
            let span = Span::join(acc.span, rhs.span);
            acc = Expr { kind: ExprKind::Tensor(Box::new(acc), Box::new(rhs)), span, arity: None };
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        let (t, s) = self.next("an expression")?;
        let gen = |kind, span| Expr { kind: ExprKind::Gen(kind), span, arity: None };
        match t {
            Tok::LParen => {
                let inner = self.cterm()?;
                let close = self.expect(Tok::RParen, "\")\"")?;
                Ok(Expr { span: Span::join(s, close), ..inner })
            }
            Tok::Ident(name) => match name.as_str() {
                "iota" => Ok(gen(GenKind::Iota, s)),
                "eps" => Ok(gen(GenKind::Eps, s)),
                "mu" => Ok(gen(GenKind::Mu, s)),
                "delta" => Ok(gen(GenKind::Delta, s)),
                "perm" => Ok(gen(GenKind::Perm, s)),
                "b1" => Ok(gen(GenKind::B1, s)),
                "b2" => Ok(gen(GenKind::B2, s)),
                "b3" => Ok(gen(GenKind::B3, s)),
                "id" => {
                    self.expect(Tok::LParen, "\"(\" after id")?;
                    let (n, _) = self.nat()?;
                    let close = self.expect(Tok::RParen, "\")\"")?;
                    Ok(gen(GenKind::Id(n), Span::join(s, close)))
                }
                "S" => {
                    self.expect(Tok::LParen, "\"(\" after S")?;
                    let (ell, _) = self.nat()?;
                    self.expect(Tok::Comma, "\",\"")?;
                    let (genus, _) = self.nat()?;
                    let close = self.expect(Tok::RParen, "\")\"")?;
                    Ok(gen(GenKind::S { ell, genus }, Span::join(s, close)))
                }
                other => Err(ExprError::Syntax { pos: s.start, msg: format!("unknown generator {other:?}") }),
            },
            other => Err(ExprError::Syntax { pos: s.start, msg: format!("expected an expression, found {other}") }),
        }
    }
}

/// Parse a morphism word. Arities are not yet inferred (see `typecheck`).
pub fn parse(text: &str) -> Result<Expr, ExprError> {
    let toks = lex(text)?;
    let mut p = Parser { toks: &toks, pos: 0, src_len: text.len() };
    if p.peek().is_none() {
        return Err(ExprError::Syntax { pos: p.here(), msg: "expected an expression, found end of input".into() });
    }
    let e = p.cterm()?;
    if let Some((t, s)) = p.toks.get(p.pos) {
        return Err(ExprError::Syntax { pos: s.start, msg: format!("unexpected {t} after expression") });
    }
    Ok(e)
}

fn gen_arity(kind: GenKind) -> (usize, usize) {
    match kind {
        GenKind::Iota => (0, 1),
        GenKind::Eps => (1, 0),
        GenKind::Mu => (2, 1),
        GenKind::Delta => (1, 2),
        GenKind::Perm => (2, 2),
        GenKind::B1 | GenKind::B2 | GenKind::B3 => (1, 1),
        GenKind::Id(n) => (n, n),
        GenKind::S { .. } => (0, 0),
    }
}

/// Infer and record `(source, target)` arities on every node.
pub fn typecheck(e: &mut Expr) -> Result<(usize, usize), ExprError> {
    let arity = match &mut e.kind {
        ExprKind::Gen(kind) => gen_arity(*kind),
        ExprKind::Tensor(a, b) => {
            let (na, ma) = typecheck(a)?;
            let (nb, mb) = typecheck(b)?;
            (na + nb, ma + mb)
        }
        ExprKind::Compose(a, b) => {
            let (na, ma) = typecheck(a)?;
            let (nb, mb) = typecheck(b)?;
            if ma != nb {
                return Err(ExprError::Arity { span: e.span, expected: nb, found: ma });
            }
            (na, mb)
        }
    };
    e.arity = Some(arity);
    Ok(arity)
}

/// Type-check and fold the word into its canonical morphism.
pub fn elaborate(e: &Expr) -> Result<Cobordism, ExprError> {
    let mut annotated = e.clone();
    typecheck(&mut annotated)?;
    Ok(fold(&annotated))
}

fn fold(e: &Expr) -> Cobordism {
    match &e.kind {
        ExprKind::Gen(kind) => Cobordism::generator(*kind),
        ExprKind::Tensor(a, b) => fold(a).tensor(&fold(b)),
        ExprKind::Compose(a, b) => fold(b).compose(&fold(a)).expect("checked by typecheck"),
    }
}

/// Parse and elaborate in one step.
pub fn eval_word(text: &str) -> Result<Cobordism, ExprError> {
    elaborate(&parse(text)?)
}

/// Stable textual description of a canonical form (not a generator word).
pub fn format_cobordism(c: &Cobordism) -> String {
    c.format_text()
}
