//! Recursive-descent parser for operator and relation expressions.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary ('*' unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' INT)?
//! primary := NUMBER | IDENT | '(' expr ')'
//! ```
//!
//! Numbers are integers or `p/q` fractions written without spaces. Multiplication
//! must be explicit.

use std::collections::BTreeMap;
use std::fmt;

use super::QDEOperator;
use crate::algebra::{parse_rational, Rational};
use crate::model::ModelSpec;
use crate::quantum::Relation;

const MAX_EXPONENT: u32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax,
    UnknownSymbol,
    IndexOutOfRange,
    NotAllowed,
}

/// Parse failure at a 1-based column.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub pos: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.kind {
            ParseErrorKind::Syntax => "syntax error",
            ParseErrorKind::UnknownSymbol => "unknown symbol",
            ParseErrorKind::IndexOutOfRange => "index out of range",
            ParseErrorKind::NotAllowed => "not allowed",
        };
        write!(f, "{what} at column {}: {}", self.pos, self.message)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// `h`, `q_i`, `D_i`.
    Operator,
    /// `q_i` and the generators `b_1..b_r` (by label, `b<i>` or `D<i>`); no `h`.
    Relation,
}

/// Names the parser resolves.
#[derive(Clone, Debug)]
pub struct Symbols {
    rank: usize,
    mode: Mode,
    q_aliases: BTreeMap<String, usize>,
    generators: BTreeMap<String, usize>,
}

impl Symbols {
    /// Only the canonical names `h`, `q<i>`, `D<i>`.
    pub fn plain(rank: usize) -> Self {
        Self { rank, mode: Mode::Operator, q_aliases: BTreeMap::new(), generators: BTreeMap::new() }
    }

    /// Canonical names plus the model's `q` aliases and, in relation mode, its
    /// generator labels.
    pub fn for_model(model: &ModelSpec, mode: Mode) -> Self {
        let mut q_aliases = BTreeMap::new();
        for (key, alias) in model.aliases() {
            if let Some(i) = key.strip_prefix('q').and_then(|s| s.parse::<usize>().ok()) {
                q_aliases.insert(alias.clone(), i - 1);
            }
        }
        let mut generators = BTreeMap::new();
        if mode == Mode::Relation {
            for i in 1..=model.rank() {
                generators.insert(model.label(i).to_string(), i - 1);
            }
        }
        Self { rank: model.rank(), mode, q_aliases, generators }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    fn resolve(&self, name: &str, pos: usize) -> Result<QDEOperator, ParseError> {
        let r = self.rank;
        let indexed = |prefix: char| -> Option<Result<usize, ParseError>> {
            let digits = name.strip_prefix(prefix)?;
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return None;
            }
            let i: usize = digits.parse().unwrap_or(usize::MAX);
            if i == 0 || i > r {
                return Some(Err(ParseError {
                    kind: ParseErrorKind::IndexOutOfRange,
                    pos,
                    message: format!("{name}: index must be in 1..={r}"),
                }));
            }
            Some(Ok(i - 1))
        };
        if let Some(&i) = self.generators.get(name) {
            return Ok(QDEOperator::theta(r, i));
        }
        if let Some(&i) = self.q_aliases.get(name) {
            return Ok(QDEOperator::q(r, i));
        }
        if name == "h" {
            if self.mode == Mode::Relation {
                return Err(ParseError {
                    kind: ParseErrorKind::NotAllowed,
                    pos,
                    message: "h may not appear in a relation".into(),
                });
            }
            return Ok(QDEOperator::h(r));
        }
        if name == "q" && r == 1 {
            return Ok(QDEOperator::q(r, 0));
        }
        if let Some(i) = indexed('q') {
            return Ok(QDEOperator::q(r, i?));
        }
        if let Some(i) = indexed('D') {
            return Ok(QDEOperator::theta(r, i?));
        }
        if self.mode == Mode::Relation {
            if let Some(i) = indexed('b') {
                return Ok(QDEOperator::theta(r, i?));
            }
        }
        Err(ParseError { kind: ParseErrorKind::UnknownSymbol, pos, message: format!("{name:?}") })
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rational, String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(_, s) => format!("number {s}"),
        Tok::Ident(s) => format!("identifier {s:?}"),
        Tok::Plus => "'+'".into(),
        Tok::Minus => "'-'".into(),
        Tok::Star => "'*'".into(),
        Tok::Caret => "'^'".into(),
        Tok::LParen => "'('".into(),
        Tok::RParen => "')'".into(),
        Tok::End => "end of input".into(),
    }
}

fn syntax(pos: usize, message: impl Into<String>) -> ParseError {
    ParseError { kind: ParseErrorKind::Syntax, pos, message: message.into() }
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = single {
            out.push((t, pos));
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
            }
            let text: String = chars[start..i].iter().collect();
            let value = parse_rational(&text).ok_or_else(|| syntax(pos, format!("invalid number {text}")))?;
            out.push((Tok::Num(value, text), pos));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), pos));
        } else {
            return Err(syntax(pos, format!("unexpected character {c:?}")));
        }
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    symbols: &'a Symbols,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<QDEOperator, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<QDEOperator, ParseError> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = acc.mul(&self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<QDEOperator, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<QDEOperator, ParseError> {
        let base = self.primary()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        match self.bump().0 {
            Tok::Num(v, text) => {
                if !v.is_integer() {
                    return Err(syntax(pos, format!("exponent {text} is not an integer")));
                }
                let e: u32 = v
                    .to_integer()
                    .try_into()
                    .ok()
                    .filter(|e| *e <= MAX_EXPONENT)
                    .ok_or_else(|| syntax(pos, format!("exponent {text} exceeds {MAX_EXPONENT}")))?;
                Ok(base.pow(e))
            }
            Tok::Minus => Err(syntax(pos, "negative exponents are not allowed")),
            t => Err(syntax(pos, format!("expected exponent, found {}", describe(&t)))),
        }
    }

    fn primary(&mut self) -> Result<QDEOperator, ParseError> {
        let r = self.symbols.rank();
        let (tok, pos) = self.bump();
        match tok {
            Tok::Num(v, _) => Ok(QDEOperator::constant(r, v)),
            Tok::Ident(name) => self.symbols.resolve(&name, pos),
            Tok::LParen => {
                let inner = self.expr()?;
                let close = self.pos();
                match self.bump().0 {
                    Tok::RParen => Ok(inner),
                    t => Err(syntax(close, format!("expected ')', found {}", describe(&t)))),
                }
            }
            t => Err(syntax(pos, format!("expected a number, symbol or '(', found {}", describe(&t)))),
        }
    }
}

/// Parses an operator expression into normal form.
pub fn parse_operator(src: &str, symbols: &Symbols) -> Result<QDEOperator, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, at: 0, symbols };
    if *p.peek() == Tok::End {
        return Err(syntax(p.pos(), "empty expression"));
    }
    let op = p.expr()?;
    match p.peek() {
        Tok::End => Ok(op),
        Tok::Ident(_) | Tok::Num(..) | Tok::LParen => {
            Err(syntax(p.pos(), format!("expected an operator before {} (use '*')", describe(p.peek()))))
        }
        t => Err(syntax(p.pos(), format!("unexpected {}", describe(t)))),
    }
}

/// Parses a polynomial in `q` and the model's generators.
pub fn parse_relation(src: &str, model: &ModelSpec) -> Result<Relation, ParseError> {
    let op = parse_operator(src, &Symbols::for_model(model, Mode::Relation))?;
    Ok(op.symbol())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    fn p(s: &str, r: usize) -> Result<QDEOperator, ParseError> {
        parse_operator(s, &Symbols::plain(r))
    }

    #[test]
    fn precedence() {
        let a = p("D1^2*D2 - q1*D2", 2).unwrap();
        let d1 = QDEOperator::theta(2, 0);
        let d2 = QDEOperator::theta(2, 1);
        let q1 = QDEOperator::q(2, 0);
        assert_eq!(a, d1.pow(2).mul(&d2).sub(&q1.mul(&d2)));
        assert_eq!(p("-D1^2", 1).unwrap(), QDEOperator::theta(1, 0).pow(2).neg());
        assert_eq!(p("2*(D1 + 1)^2", 1).unwrap().to_string(), "2*D1^2 + 4*D1 + 2");
    }

    #[test]
    fn fractions_lex_as_one_number() {
        let a = p("3/4*q1 - 1/2", 1).unwrap();
        assert_eq!(a.to_string(), "3/4*q1 - 1/2");
        assert_eq!(p("6/4", 1).unwrap(), QDEOperator::constant(1, rat(3, 2)));
        assert_eq!(p("(2)", 1).unwrap(), QDEOperator::constant(1, int(2)));
    }

    #[test]
    fn juxtaposition_is_rejected() {
        let e = p("2q1", 1).unwrap_err();
        assert_eq!((e.kind, e.pos), (ParseErrorKind::Syntax, 2));
        let e = p("D1 D2", 2).unwrap_err();
        assert_eq!(e.pos, 4);
    }

    #[test]
    fn errors_carry_positions() {
        let e = p("D1^-1", 1).unwrap_err();
        assert_eq!((e.kind, e.pos), (ParseErrorKind::Syntax, 4));
        let e = p("D3", 2).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::IndexOutOfRange);
        let e = p("q1 + t", 1).unwrap_err();
        assert_eq!((e.kind, e.pos), (ParseErrorKind::UnknownSymbol, 6));
        assert_eq!(p("(D1", 1).unwrap_err().pos, 4);
        assert_eq!(p("D1 +", 1).unwrap_err().pos, 5);
        assert_eq!(p("", 1).unwrap_err().kind, ParseErrorKind::Syntax);
        assert_eq!(p("D1 / 2", 1).unwrap_err().pos, 4);
        assert!(p("D1^1/2", 1).is_err());
        assert!(p("D0", 1).is_err());
    }

    #[test]
    fn bare_q_only_for_rank_one() {
        assert_eq!(p("q", 1).unwrap(), QDEOperator::q(1, 0));
        assert_eq!(p("q", 2).unwrap_err().kind, ParseErrorKind::UnknownSymbol);
    }
}
