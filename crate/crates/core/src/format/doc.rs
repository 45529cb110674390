//! Line-level document structure shared by all input files.
//!
//! A logical line is either a header `key: value` or a statement
//! `lhs = rhs`, or a bare expression. Recognised left-hand sides:
//! `name`, `f(X)`, `[X,Y]` and `{x,y}`; anything else is an equation.

use super::ast::{logical_lines, parse_expr_at, tokenize, Expr, Line, ParseError, Parser, Pos, Tok};

#[derive(Clone, Debug)]
pub struct Header {
    pub key: String,
    pub value: String,
    pub pos: Pos,
    line: Line,
    offset: usize,
}

impl Header {
    /// The value parsed as an expression.
    pub fn expr(&self) -> Result<Expr, ParseError> {
        parse_expr_at(&self.line, self.offset)
    }

    /// Comma or whitespace separated items of the value.
    pub fn items(&self) -> Vec<String> {
        self.value
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(str::to_string)
            .collect()
    }
}

#[derive(Clone, Debug)]
pub enum Lhs {
    None,
    Name(String),
    Apply(String, String),
    Bracket(String, String),
    Brace(String, String),
    Expr(Expr),
}

#[derive(Clone, Debug)]
pub struct Statement {
    pub lhs: Lhs,
    pub rhs: Expr,
    pub pos: Pos,
}

#[derive(Clone, Debug, Default)]
pub struct Document {
    pub headers: Vec<Header>,
    pub statements: Vec<Statement>,
}

fn header_split(text: &str) -> Option<(usize, &str)> {
    let colon = text.find(':')?;
    let key = text[..colon].trim_end();
    let mut chars = key.chars();
    let first = chars.next()?;
    if (first.is_ascii_alphabetic() || first == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
    {
        Some((colon, key))
    } else {
        None
    }
}

fn statement(line: &Line) -> Result<Statement, ParseError> {
    let toks = tokenize(line, 0, line.text.len())?;
    let eqs: Vec<usize> = toks
        .iter()
        .enumerate()
        .filter(|(_, t)| t.0 == Tok::Eq)
        .map(|(i, _)| i)
        .collect();
    let end = line.pos(line.text.len());
    let pos = line.start();
    match eqs.as_slice() {
        [] => {
            let mut p = Parser::new(toks, end);
            let rhs = p.expr()?;
            p.finish()?;
            Ok(Statement { lhs: Lhs::None, rhs, pos })
        }
        [k] => {
            let (l, r) = toks.split_at(*k);
            if l.is_empty() {
                return Err(r[0].1.error("missing left-hand side"));
            }
            let eq_pos = r[0].1;
            let rhs_toks = r[1..].to_vec();
            if rhs_toks.is_empty() {
                return Err(eq_pos.error("missing right-hand side"));
            }
            let lhs = classify_lhs(l, eq_pos)?;
            let mut p = Parser::new(rhs_toks, end);
            let rhs = p.expr()?;
            p.finish()?;
            Ok(Statement { lhs, rhs, pos })
        }
        [_, second, ..] => Err(toks[*second].1.error("more than one `=` on a line")),
    }
}

fn classify_lhs(l: &[(Tok, Pos)], end: Pos) -> Result<Lhs, ParseError> {
    let kinds: Vec<&Tok> = l.iter().map(|t| &t.0).collect();
    let name = |i: usize| match &l[i].0 {
        Tok::Ident(s) => s.clone(),
        _ => unreachable!(),
    };
    Ok(match kinds.as_slice() {
        [Tok::Ident(_)] => Lhs::Name(name(0)),
        [Tok::Ident(_), Tok::LParen, Tok::Ident(_), Tok::RParen] => Lhs::Apply(name(0), name(2)),
        [Tok::LBracket, Tok::Ident(_), Tok::Comma, Tok::Ident(_), Tok::RBracket] => {
            Lhs::Bracket(name(1), name(3))
        }
        [Tok::LBrace, Tok::Ident(_), Tok::Comma, Tok::Ident(_), Tok::RBrace] => {
            Lhs::Brace(name(1), name(3))
        }
        [Tok::LBracket, ..] | [Tok::LBrace, ..] => {
            return Err(l[0].1.error("malformed bracket; expected two names"))
        }
        _ => {
            let mut p = Parser::new(l.to_vec(), end);
            let e = p.expr()?;
            p.finish()?;
            Lhs::Expr(e)
        }
    })
}

impl Document {
    pub fn parse(src: &str) -> Result<Document, ParseError> {
        let mut doc = Document::default();
        for line in logical_lines(src) {
            if let Some((colon, key)) = header_split(&line.text) {
                doc.headers.push(Header {
                    key: key.to_string(),
                    value: line.text[colon + 1..].trim().to_string(),
                    pos: line.start(),
                    offset: colon + 1,
                    line: line.clone(),
                });
            } else {
                doc.statements.push(statement(&line)?);
            }
        }
        Ok(doc)
    }

    pub fn header(&self, key: &str) -> Option<&Header> {
        self.headers.iter().find(|h| h.key == key)
    }

    pub fn header_items(&self, key: &str) -> Vec<String> {
        self.headers
            .iter()
            .filter(|h| h.key == key)
            .flat_map(|h| h.items())
            .collect()
    }

    /// Reject headers outside the allowed set.
    pub fn allow_headers(&self, allowed: &[&str]) -> Result<(), ParseError> {
        match self.headers.iter().find(|h| !allowed.contains(&h.key.as_str())) {
            None => Ok(()),
            Some(h) => Err(h.pos.error(format!("unknown header `{}`", h.key))),
        }
    }
}

/// Parse `name = expr` items separated by newlines, commas or semicolons.
pub fn assignments(src: &str) -> Result<Vec<(String, Expr, Pos)>, ParseError> {
    let mut out = Vec::new();
    for line in logical_lines(src) {
        let mut depth = 0i32;
        let mut start = 0;
        let bytes = line.text.as_bytes();
        let mut cuts = Vec::new();
        for (i, b) in bytes.iter().enumerate() {
            match b {
                b'(' => depth += 1,
                b')' => depth -= 1,
                b',' | b';' if depth == 0 => {
                    cuts.push((start, i));
                    start = i + 1;
                }
                _ => {}
            }
        }
        cuts.push((start, bytes.len()));
        for (a, b) in cuts {
            if line.text[a..b].trim().is_empty() {
                continue;
            }
            let toks = tokenize(&line, a, b)?;
            let end = line.pos(b);
            let mut p = Parser::new(toks, end);
            let (name, pos) = p.ident()?;
            p.expect(&Tok::Eq)?;
            let e = p.expr()?;
            p.finish()?;
            out.push((name, e, pos));
        }
    }
    Ok(out)
}

/// Parse a single expression from a one-line source.
pub fn expression(src: &str) -> Result<Expr, ParseError> {
    let lines = logical_lines(src);
    match lines.as_slice() {
        [one] => parse_expr_at(one, 0),
        _ => Err(Pos { line: 1, col: 1 }.error("expected a single expression")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn headers_and_statements() {
        let doc = Document::parse(
            "generators: D, P, K, M\n[D,P] = -P\ndelta(K) = a*K^M\n{d,h} = E^-2\nr = D^P\nx*y - 1 = z\nb1*b2\n",
        )
        .unwrap();
        assert_eq!(doc.header_items("generators"), vec!["D", "P", "K", "M"]);
        let kinds: Vec<String> = doc
            .statements
            .iter()
            .map(|s| match &s.lhs {
                Lhs::None => "none".into(),
                Lhs::Name(n) => format!("name {n}"),
                Lhs::Apply(f, x) => format!("apply {f} {x}"),
                Lhs::Bracket(x, y) => format!("bracket {x} {y}"),
                Lhs::Brace(x, y) => format!("brace {x} {y}"),
                Lhs::Expr(_) => "expr".into(),
            })
            .collect();
        assert_eq!(
            kinds,
            ["bracket D P", "apply delta K", "brace d h", "name r", "expr", "none"]
        );
    }

    #[test]
    fn diagnostics() {
        let err = Document::parse("generators: A\n[A,] = A\n").unwrap_err();
        assert_eq!((err.line, err.col), (2, 1));
        let err = Document::parse("a = b = c").unwrap_err();
        assert_eq!(err.col, 7);
        let doc = Document::parse("bogus: 1").unwrap();
        assert!(doc.allow_headers(&["generators"]).is_err());
    }

    #[test]
    fn inline_assignments() {
        let a = assignments("c2=0, a1 = 1/2; b = f(x, y)").unwrap();
        assert_eq!(a.len(), 3);
        assert_eq!(a[1].0, "a1");
        assert!(assignments("c2").is_err());
    }
}
