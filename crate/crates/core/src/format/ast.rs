//! Lexer and expression parser for the line-oriented input language.
//!
//! ```text
//! expr    := ['+'|'-'] tensor (('+'|'-') tensor)*
//! tensor  := product ('@' product)*
//! product := unary (('*'|'/') unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' (INT | '-' INT) | ('^' IDENT)+)?
//! atom    := INT | IDENT | IDENT '(' expr (',' expr)* ')' | '(' expr ')'
//! ```
//!
//! `X^Y^Z` with identifiers after `^` is a wedge; `x^3` and `E^-2` are powers.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for ParseError {}

/// Source position (1-based line and column).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl Pos {
    pub fn error(self, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            col: self.col,
            message: message.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Int(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Comma,
    Eq,
    At,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Int(s) | Tok::Ident(s) => s.as_str(),
            Tok::Plus => "+",
            Tok::Minus => "-",
            Tok::Star => "*",
            Tok::Slash => "/",
            Tok::Caret => "^",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBracket => "[",
            Tok::RBracket => "]",
            Tok::LBrace => "{",
            Tok::RBrace => "}",
            Tok::Comma => ",",
            Tok::Eq => "=",
            Tok::At => "@",
        };
        f.write_str(s)
    }
}

/// A logical line: text with a column map back to the physical source.
#[derive(Clone, Debug)]
pub struct Line {
    pub text: String,
    // (offset in text, physical line, physical column of that offset)
    segments: Vec<(usize, usize, usize)>,
}

impl Line {
    pub fn pos(&self, offset: usize) -> Pos {
        let mut best = self.segments[0];
        for s in &self.segments {
            if s.0 <= offset {
                best = *s;
            }
        }
        Pos {
            line: best.1,
            col: best.2 + (offset - best.0),
        }
    }

    pub fn start(&self) -> Pos {
        self.pos(0)
    }
}

/// Split source into logical lines. `#` starts a comment; a physical line that
/// begins with whitespace continues the previous logical line.
pub fn logical_lines(src: &str) -> Vec<Line> {
    let mut out: Vec<Line> = Vec::new();
    for (n, raw) in src.lines().enumerate() {
        let body = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        };
        if body.trim().is_empty() {
            continue;
        }
        let lead = body.len() - body.trim_start().len();
        let trimmed = body.trim();
        let continues = lead > 0 && !out.is_empty();
        if continues {
            let last = out.last_mut().unwrap();
            last.text.push(' ');
            let off = last.text.len();
            last.segments.push((off, n + 1, lead + 1));
            last.text.push_str(trimmed);
        } else {
            out.push(Line {
                text: trimmed.to_string(),
                segments: vec![(0, n + 1, lead + 1)],
            });
        }
    }
    out
}

pub fn tokenize(line: &Line, from: usize, to: usize) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let text = &line.text[..to];
    let bytes = text.as_bytes();
    let mut i = from;
    let mut out = Vec::new();
    while i < to {
        let c = bytes[i] as char;
        let pos = line.pos(i);
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let s = i;
            while i < to && (bytes[i] as char).is_ascii_digit() {
                i += 1;
            }
            out.push((Tok::Int(text[s..i].to_string()), pos));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let s = i;
            while i < to && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(text[s..i].to_string()), pos));
            continue;
        }
        let t = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            ',' => Tok::Comma,
            '=' => Tok::Eq,
            '@' => Tok::At,
            _ => return Err(pos.error(format!("unexpected character `{c}`"))),
        };
        out.push((t, pos));
        i += c.len_utf8();
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(String, Pos),
    Ident(String, Pos),
    Call(String, Vec<Expr>, Pos),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, Pos),
    Pow(Box<Expr>, i64, Pos),
    Wedge(Vec<(String, Pos)>),
    Tensor(Box<Expr>, Box<Expr>, Pos),
}

impl Expr {
    pub fn pos(&self) -> Pos {
        match self {
            Expr::Int(_, p) | Expr::Ident(_, p) | Expr::Call(_, _, p) => *p,
            Expr::Div(a, _, _) | Expr::Tensor(a, _, _) => a.pos(),
            Expr::Pow(a, _, _) => a.pos(),
            Expr::Neg(a) | Expr::Add(a, _) | Expr::Sub(a, _) | Expr::Mul(a, _) => a.pos(),
            Expr::Wedge(v) => v[0].1,
        }
    }
}

pub struct Parser {
    toks: Vec<(Tok, Pos)>,
    i: usize,
    end: Pos,
}

impl Parser {
    pub fn new(toks: Vec<(Tok, Pos)>, end: Pos) -> Self {
        Parser { toks, i: 0, end }
    }

    pub fn at_end(&self) -> bool {
        self.i >= self.toks.len()
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.0)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.i + k).map(|t| &t.0)
    }

    pub fn here(&self) -> Pos {
        self.toks.get(self.i).map_or(self.end, |t| t.1)
    }

    fn bump(&mut self) -> Option<(Tok, Pos)> {
        let t = self.toks.get(self.i).cloned();
        self.i += 1;
        t
    }

    pub fn expect(&mut self, t: &Tok) -> Result<Pos, ParseError> {
        match self.bump() {
            Some((got, p)) if &got == t => Ok(p),
            Some((got, p)) => Err(p.error(format!("expected `{t}`, found `{got}`"))),
            None => Err(self.end.error(format!("expected `{t}` at end of line"))),
        }
    }

    pub fn ident(&mut self) -> Result<(String, Pos), ParseError> {
        match self.bump() {
            Some((Tok::Ident(s), p)) => Ok((s, p)),
            Some((got, p)) => Err(p.error(format!("expected a name, found `{got}`"))),
            None => Err(self.end.error("expected a name at end of line")),
        }
    }

    pub fn finish(&self) -> Result<(), ParseError> {
        match self.toks.get(self.i) {
            None => Ok(()),
            Some((t, p)) => Err(p.error(format!("unexpected `{t}`"))),
        }
    }

    pub fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                Expr::Neg(Box::new(self.tensor()?))
            }
            Some(Tok::Plus) => {
                self.bump();
                self.tensor()?
            }
            _ => self.tensor()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.tensor()?));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.tensor()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn tensor(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.product()?;
        while let Some(Tok::At) = self.peek() {
            let p = self.bump().unwrap().1;
            lhs = Expr::Tensor(Box::new(lhs), Box::new(self.product()?), p);
        }
        Ok(lhs)
    }

    fn product(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(Tok::Slash) => {
                    let p = self.bump().unwrap().1;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?), p);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if let Some(Tok::Minus) = self.peek() {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        let caret = self.here();
        match (self.peek_at(1), self.peek_at(2)) {
            (Some(Tok::Int(_)), _) => {
                self.bump();
                let (t, p) = self.bump().unwrap();
                let Tok::Int(s) = t else { unreachable!() };
                let e: i64 = s.parse().map_err(|_| p.error("exponent too large"))?;
                Ok(Expr::Pow(Box::new(base), e, caret))
            }
            (Some(Tok::Minus), Some(Tok::Int(_))) => {
                self.bump();
                self.bump();
                let (t, p) = self.bump().unwrap();
                let Tok::Int(s) = t else { unreachable!() };
                let e: i64 = s.parse().map_err(|_| p.error("exponent too large"))?;
                Ok(Expr::Pow(Box::new(base), -e, caret))
            }
            (Some(Tok::Ident(_)), _) => {
                let first = match base {
                    Expr::Ident(s, p) => (s, p),
                    other => return Err(other.pos().error("wedge factors must be generator names")),
                };
                let mut factors = vec![first];
                while self.peek() == Some(&Tok::Caret) {
                    self.bump();
                    factors.push(self.ident()?);
                }
                Ok(Expr::Wedge(factors))
            }
            _ => Err(caret.error("expected an integer exponent or a generator after `^`")),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.bump() {
            Some((Tok::Int(s), p)) => Ok(Expr::Int(s, p)),
            Some((Tok::Ident(s), p)) => {
                if self.peek() == Some(&Tok::LParen) {
                    self.bump();
                    let mut args = vec![self.expr()?];
                    while self.peek() == Some(&Tok::Comma) {
                        self.bump();
                        args.push(self.expr()?);
                    }
                    self.expect(&Tok::RParen)?;
                    Ok(Expr::Call(s, args, p))
                } else {
                    Ok(Expr::Ident(s, p))
                }
            }
            Some((Tok::LParen, _)) => {
                let e = self.expr()?;
                self.expect(&Tok::RParen)?;
                Ok(e)
            }
            Some((t, p)) => Err(p.error(format!("unexpected `{t}`"))),
            None => Err(self.end.error("unexpected end of line")),
        }
    }
}

/// Parse `line.text[from..]` as a single expression.
pub fn parse_expr_at(line: &Line, from: usize) -> Result<Expr, ParseError> {
    let toks = tokenize(line, from, line.text.len())?;
    let end = line.pos(line.text.len());
    let mut p = Parser::new(toks, end);
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

/// Parse a standalone expression string.
pub fn parse_expr(src: &str) -> Result<Expr, ParseError> {
    let lines = logical_lines(src);
    match lines.as_slice() {
        [one] => parse_expr_at(one, 0),
        [] => Err(Pos { line: 1, col: 1 }.error("empty expression")),
        [_, second, ..] => Err(second.start().error("expected a single expression")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wedge_versus_power() {
        let e = parse_expr("a1*D^P - E^-2 + x^3").unwrap();
        let s = format!("{e:?}");
        assert!(s.contains("Wedge"));
        assert!(s.contains("Pow"));
        assert!(matches!(parse_expr("K^M^P").unwrap(), Expr::Wedge(v) if v.len() == 3));
    }

    #[test]
    fn tensor_binds_looser_than_product() {
        let e = parse_expr("-c1*M@D").unwrap();
        let Expr::Neg(inner) = e else { panic!() };
        assert!(matches!(*inner, Expr::Tensor(_, _, _)));
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_expr("a + * b").unwrap_err();
        assert_eq!((err.line, err.col), (1, 5));
        let err = parse_expr("x ^ ").unwrap_err();
        assert_eq!(err.line, 1);
        assert!(parse_expr("a $ b").unwrap_err().message.contains('$'));
    }

    #[test]
    fn continuation_lines_join() {
        let lines = logical_lines("r = a*D^P\n    + b*D^K # tail\n\n# only comment\ns = 1\n");
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[0].text, "r = a*D^P + b*D^K");
        assert_eq!(lines[0].pos(10), Pos { line: 2, col: 5 });
        assert_eq!(lines[1].start().line, 5);
    }
}
