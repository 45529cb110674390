//! Text input language: algebras, r-matrices, cocommutators, bindings,
//! polynomial lists, linear maps, matrices and bracket tables.

pub mod ast;
pub mod doc;
pub mod eval;
pub mod hopf;

use std::collections::BTreeMap;

pub use ast::{parse_expr, Expr, ParseError, Pos};
pub use doc::{Document, Lhs, Statement};
pub use eval::{Invertible, LinComb};
pub use hopf::parse_hopf_case;

use crate::liealg::{LieAlgebra, Wedge};
use crate::symkernel::{Bindings, PolyExpr, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormatError {
    #[error("{0}")]
    Syntax(#[from] ParseError),
    #[error("Jacobi identity fails on ({}, {}, {}): residual {residual}", .triple[0], .triple[1], .triple[2])]
    Jacobi { triple: [String; 3], residual: String },
}

impl FormatError {
    pub fn is_jacobi(&self) -> bool {
        matches!(self, FormatError::Jacobi { .. })
    }
}

fn invertible_of(doc: &Document) -> Invertible {
    doc.header_items("invertible").into_iter().collect()
}

/// Parse an algebra description. Brackets must list generators in
/// declaration order, each pair at most once.
pub fn parse_algebra(src: &str) -> Result<LieAlgebra, FormatError> {
    let doc = Document::parse(src)?;
    doc.allow_headers(&["generators", "name", "invertible"])?;
    let head = doc
        .header("generators")
        .ok_or_else(|| Pos { line: 1, col: 1 }.error("missing `generators:` header"))?;
    let names = head.items();
    if names.is_empty() {
        return Err(head.pos.error("empty generator list").into());
    }
    for (i, n) in names.iter().enumerate() {
        if names[..i].contains(n) {
            return Err(head.pos.error(format!("duplicate generator `{n}`")).into());
        }
    }
    let inv = invertible_of(&doc);
    let idx = |s: &str, p: Pos| {
        names
            .iter()
            .position(|n| n == s)
            .ok_or_else(|| p.error(format!("unknown generator `{s}`")))
    };
    let mut seen: BTreeMap<(usize, usize), Pos> = BTreeMap::new();
    let mut brackets = Vec::new();
    for st in &doc.statements {
        let Lhs::Bracket(x, y) = &st.lhs else {
            return Err(st.pos.error("expected a bracket line `[X,Y] = ...`").into());
        };
        let (i, j) = (idx(x, st.pos)?, idx(y, st.pos)?);
        if i == j {
            return Err(st.pos.error(format!("bracket of `{x}` with itself")).into());
        }
        let key = (i.min(j), i.max(j));
        if let Some(prev) = seen.get(&key) {
            return Err(st
                .pos
                .error(format!(
                    "bracket of `{x}` and `{y}` already given on line {} (antisymmetry conflict)",
                    prev.line
                ))
                .into());
        }
        if i > j {
            return Err(st
                .pos
                .error(format!("write [{y},{x}]: brackets list generators in declaration order"))
                .into());
        }
        seen.insert(key, st.pos);
        let c = eval::linear(&st.rhs, &names, &inv)?;
        brackets.push((i, j, eval::rational_vector(&c, names.len(), st.rhs.pos())?));
    }
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let alg = LieAlgebra::new(&refs, &brackets).map_err(|e| head.pos.error(e.to_string()))?;
    if let Some(((i, j, k), r)) = alg.jacobi_residual().into_iter().next() {
        return Err(FormatError::Jacobi {
            triple: [alg.name(i).into(), alg.name(j).into(), alg.name(k).into()],
            residual: r.display(&alg),
        });
    }
    Ok(alg)
}

/// A parsed document together with its declared invertible symbols.
#[derive(Clone, Debug)]
pub struct Source {
    pub doc: Document,
    pub invertible: Invertible,
}

impl Source {
    pub fn parse(src: &str) -> Result<Source, ParseError> {
        let doc = Document::parse(src)?;
        let invertible = invertible_of(&doc);
        Ok(Source { doc, invertible })
    }

    /// Value of the `algebra:` header, if any.
    pub fn algebra_ref(&self) -> Option<String> {
        self.doc.header("algebra").map(|h| h.value.clone())
    }

    /// `constraint:` headers as polynomials.
    pub fn constraints(&self) -> Result<Vec<PolyExpr>, ParseError> {
        self.doc
            .headers
            .iter()
            .filter(|h| h.key == "constraint")
            .map(|h| eval::poly(&h.expr()?, &self.invertible))
            .collect()
    }

    fn wedge(&self, e: &Expr, alg: &LieAlgebra, degree: usize) -> Result<Wedge, ParseError> {
        let c = eval::linear(e, alg.names(), &self.invertible)?;
        eval::homogeneous(&c, degree, e.pos())?;
        let mut w = Wedge::zero(alg.dim(), degree);
        for (idx, v) in &c {
            let mut sorted = idx.clone();
            sorted.sort();
            sorted.dedup();
            if sorted.len() != idx.len() {
                return Err(e.pos().error("repeated generator in a wedge"));
            }
            w.add_term(idx, v);
        }
        Ok(w)
    }

    /// The `r = ...` statement as a bivector.
    pub fn rmatrix(&self, alg: &LieAlgebra) -> Result<Wedge, ParseError> {
        self.doc.allow_headers(&["algebra", "invertible", "name", "constraint"])?;
        let mut found = None;
        for st in &self.doc.statements {
            match &st.lhs {
                Lhs::Name(n) if n == "r" => {
                    if found.is_some() {
                        return Err(st.pos.error("r given twice"));
                    }
                    found = Some(self.wedge(&st.rhs, alg, 2)?);
                }
                // an expected Schouten bracket may ride along
                Lhs::Name(n) if n == "schouten" => {}
                _ => return Err(st.pos.error("expected `r = ...`")),
            }
        }
        found.ok_or_else(|| Pos { line: 1, col: 1 }.error("no `r = ...` line"))
    }

    /// Rows `delta(X) = ...`; generators without a line map to zero.
    pub fn cocommutator(&self, alg: &LieAlgebra) -> Result<Vec<Wedge>, ParseError> {
        self.doc.allow_headers(&["algebra", "invertible", "name", "constraint"])?;
        let mut rows: Vec<Option<Wedge>> = vec![None; alg.dim()];
        for st in &self.doc.statements {
            match &st.lhs {
                Lhs::Apply(f, x) if f == "delta" => {
                    let i = alg
                        .index(x)
                        .map_err(|_| st.pos.error(format!("unknown generator `{x}`")))?;
                    if rows[i].is_some() {
                        return Err(st.pos.error(format!("delta({x}) given twice")));
                    }
                    rows[i] = Some(self.wedge(&st.rhs, alg, 2)?);
                }
                _ => return Err(st.pos.error("expected `delta(X) = ...`")),
            }
        }
        Ok(rows
            .into_iter()
            .map(|r| r.unwrap_or_else(|| Wedge::zero(alg.dim(), 2)))
            .collect())
    }

    /// Any trivector statement `name = ...` (used for Schouten targets).
    pub fn trivector(&self, alg: &LieAlgebra, name: &str) -> Result<Wedge, ParseError> {
        for st in &self.doc.statements {
            if matches!(&st.lhs, Lhs::Name(n) if n == name) {
                return self.wedge(&st.rhs, alg, 3);
            }
        }
        Err(Pos { line: 1, col: 1 }.error(format!("no `{name} = ...` line")))
    }

    /// Statements `name = poly` in file order.
    pub fn named_polys(&self) -> Result<Vec<(String, PolyExpr)>, ParseError> {
        self.doc
            .statements
            .iter()
            .map(|st| match &st.lhs {
                Lhs::Name(n) => Ok((n.clone(), eval::poly(&st.rhs, &self.invertible)?)),
                _ => Err(st.pos.error("expected `name = ...`")),
            })
            .collect()
    }

    /// Statements `{x,y} = poly` in file order.
    pub fn brace_table(&self) -> Result<Vec<((String, String), PolyExpr)>, ParseError> {
        self.doc
            .statements
            .iter()
            .map(|st| match &st.lhs {
                Lhs::Brace(x, y) => Ok(((x.clone(), y.clone()), eval::poly(&st.rhs, &self.invertible)?)),
                _ => Err(st.pos.error("expected `{x,y} = ...`")),
            })
            .collect()
    }

    /// Every statement as a polynomial: `lhs = rhs` means `lhs - rhs`.
    pub fn polys(&self) -> Result<Vec<PolyExpr>, ParseError> {
        self.doc
            .statements
            .iter()
            .map(|st| poly_of_statement(st, &self.invertible))
            .collect()
    }

    /// Statements `X = lincomb` over the given generator names, as rational rows.
    pub fn linear_rows(
        &self,
        lhs_names: &[String],
        rhs_names: &[String],
    ) -> Result<Vec<(usize, Vec<Rational>)>, ParseError> {
        let mut out: Vec<(usize, Vec<Rational>)> = Vec::new();
        for st in &self.doc.statements {
            let Lhs::Name(n) = &st.lhs else {
                return Err(st.pos.error("expected `X = ...`"));
            };
            let i = lhs_names
                .iter()
                .position(|g| g == n)
                .ok_or_else(|| st.pos.error(format!("unknown generator `{n}`")))?;
            if out.iter().any(|(j, _)| *j == i) {
                return Err(st.pos.error(format!("`{n}` mapped twice")));
            }
            let c = eval::linear(&st.rhs, rhs_names, &self.invertible)?;
            out.push((i, eval::rational_vector(&c, rhs_names.len(), st.rhs.pos())?));
        }
        Ok(out)
    }
}

fn poly_of_statement(st: &Statement, inv: &Invertible) -> Result<PolyExpr, ParseError> {
    match &st.lhs {
        Lhs::None => eval::poly(&st.rhs, inv),
        Lhs::Expr(l) => Ok(eval::poly(l, inv)? - eval::poly(&st.rhs, inv)?),
        Lhs::Name(n) => Ok(eval::poly(&Expr::Ident(n.clone(), st.pos), inv)? - eval::poly(&st.rhs, inv)?),
        _ => Err(st.pos.error("expected a polynomial equation")),
    }
}

/// Bindings `name = poly` separated by newlines, commas or semicolons.
pub fn parse_bindings(src: &str, inv: &Invertible) -> Result<Bindings, ParseError> {
    let mut out = Bindings::new();
    for (name, e, pos) in doc::assignments(src)? {
        if out.contains_key(&name) {
            return Err(pos.error(format!("`{name}` bound twice")));
        }
        out.insert(name, eval::poly(&e, inv)?);
    }
    Ok(out)
}

/// Rows of comma-separated polynomial entries; `invertible:` headers allowed.
pub fn parse_matrix(src: &str) -> Result<(Vec<Vec<PolyExpr>>, Invertible), ParseError> {
    let mut inv = Invertible::new();
    let mut rows = Vec::new();
    for line in ast::logical_lines(src) {
        if let Some(rest) = line.text.strip_prefix("invertible:") {
            inv.extend(rest.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()).map(str::to_string));
            continue;
        }
        let mut row = Vec::new();
        let mut depth = 0i32;
        let mut start = 0;
        let mut cuts = Vec::new();
        for (i, b) in line.text.bytes().enumerate() {
            match b {
                b'(' => depth += 1,
                b')' => depth -= 1,
                b',' if depth == 0 => {
                    cuts.push((start, i));
                    start = i + 1;
                }
                _ => {}
            }
        }
        cuts.push((start, line.text.len()));
        for (a, b) in cuts {
            let toks = ast::tokenize(&line, a, b)?;
            let mut p = ast::Parser::new(toks, line.pos(b));
            let e = p.expr()?;
            p.finish()?;
            row.push(eval::poly(&e, &inv)?);
        }
        if let Some(first) = rows.first().map(|r: &Vec<PolyExpr>| r.len()) {
            if first != row.len() {
                return Err(line.start().error(format!("row has {} entries, expected {first}", row.len())));
            }
        }
        rows.push(row);
    }
    Ok((rows, inv))
}

/// Mark the named symbols invertible throughout a polynomial.
pub fn with_invertible(p: &PolyExpr, names: &Invertible) -> PolyExpr {
    let b: Bindings = p
        .symbol_names()
        .into_iter()
        .filter(|n| names.contains(n))
        .map(|n| {
            let s = PolyExpr::var(crate::symkernel::Symbol::invertible(&n));
            (n, s)
        })
        .collect();
    p.substitute(&b).expect("renaming symbols cannot fail")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symkernel::ratio;

    const SCHRODINGER: &str = "\
generators: D, C, H, K, P, M
[D,C] = 2*C
[D,H] = -2*H
[D,K] = K
[D,P] = -P
[C,H] = -D
[C,P] = K
[H,K] = -P
[K,P] = M
";

    #[test]
    fn algebra_round_trip() {
        let alg = parse_algebra(SCHRODINGER).unwrap();
        assert_eq!(alg.dim(), 6);
        assert_eq!(parse_algebra(&alg.to_text()).unwrap(), alg);
    }

    #[test]
    fn algebra_errors() {
        assert!(parse_algebra("generators:\n").is_err());
        let err = parse_algebra("generators: D, P\n[D,P] = -P\n[P,D] = -P\n").unwrap_err();
        assert!(err.to_string().contains("antisymmetry conflict"), "{err}");
        let err = parse_algebra("generators: D, P\n[P,D] = P\n").unwrap_err();
        assert!(err.to_string().contains("declaration order"));
        let err = parse_algebra("generators: D, P\n[D,Q] = P\n").unwrap_err();
        assert!(err.to_string().contains("unknown generator `Q`"));
        let err = parse_algebra("generators: D, P\n[D,P] = x*P\n").unwrap_err();
        assert!(err.to_string().contains("not a rational"));
        let tampered = SCHRODINGER.replace("[D,P] = -P", "[D,P] = P");
        assert!(parse_algebra(&tampered).unwrap_err().is_jacobi());
    }

    #[test]
    fn rmatrix_and_delta() {
        let alg = parse_algebra(SCHRODINGER).unwrap();
        let src = Source::parse("algebra: schrodinger\nr = c1*D^M + c2*P^K\nconstraint: c1 - c2\n").unwrap();
        assert_eq!(src.algebra_ref().as_deref(), Some("schrodinger"));
        let r = src.rmatrix(&alg).unwrap();
        assert_eq!(r.coefficient(&[4, 3]), PolyExpr::sym("c2"));
        assert_eq!(r.coefficient(&[3, 4]), -PolyExpr::sym("c2"));
        assert_eq!(src.constraints().unwrap().len(), 1);
        let d = Source::parse("delta(P) = (c1 - c2)*P^M\n").unwrap().cocommutator(&alg).unwrap();
        assert!(d[0].is_zero());
        assert_eq!(d[4].coefficient(&[4, 5]).to_string(), "c1 - c2");
        assert!(Source::parse("delta(Q) = P^M").unwrap().cocommutator(&alg).is_err());
        assert!(Source::parse("r = D^D").unwrap().rmatrix(&alg).is_err());
    }

    #[test]
    fn equations_bindings_matrices() {
        let src = Source::parse("a1*a4 + a5*c1\nc2 = c1\nx^2 - 1 = 0\n").unwrap();
        let ps = src.polys().unwrap();
        assert_eq!(ps[1].to_string(), "-c1 + c2");
        let b = parse_bindings("a = 1/2, b = -c", &Invertible::new()).unwrap();
        assert_eq!(b["a"], PolyExpr::constant(ratio(1, 2)));
        let (m, inv) = parse_matrix("invertible: E\n1, E^-1\n0, (1 + h)*E\n").unwrap();
        assert!(inv.contains("E"));
        assert_eq!(m[1][1].to_string(), "E*h + E");
        assert!(parse_matrix("1, 2\n3\n").is_err());
    }
}
