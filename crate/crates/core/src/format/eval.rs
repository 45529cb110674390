//! Evaluation of parsed expressions into polynomials and linear combinations.

use std::collections::{BTreeMap, BTreeSet};

use num::BigInt;

use super::ast::{Expr, ParseError, Pos};
use crate::symkernel::{PolyExpr, Rational, Symbol};

/// Names declared invertible in the surrounding document.
pub type Invertible = BTreeSet<String>;

fn int_value(s: &str, pos: Pos) -> Result<Rational, ParseError> {
    s.parse::<BigInt>()
        .map(Rational::from_integer)
        .map_err(|_| pos.error(format!("bad integer `{s}`")))
}

fn symbol(name: &str, inv: &Invertible) -> PolyExpr {
    PolyExpr::var(Symbol::with_flag(name, inv.contains(name)))
}

/// Evaluate an expression as a Laurent polynomial in its identifiers.
pub fn poly(e: &Expr, inv: &Invertible) -> Result<PolyExpr, ParseError> {
    Ok(match e {
        Expr::Int(s, p) => PolyExpr::constant(int_value(s, *p)?),
        Expr::Ident(s, _) => symbol(s, inv),
        Expr::Neg(a) => -poly(a, inv)?,
        Expr::Add(a, b) => poly(a, inv)? + poly(b, inv)?,
        Expr::Sub(a, b) => poly(a, inv)? - poly(b, inv)?,
        Expr::Mul(a, b) => poly(a, inv)? * poly(b, inv)?,
        Expr::Div(a, b, p) => {
            let d = poly(b, inv)?;
            poly(a, inv)?
                .div_unit(&d)
                .map_err(|_| p.error(format!("cannot divide by `{d}`")))?
        }
        Expr::Pow(a, n, p) => {
            let base = poly(a, inv)?;
            base.powi(*n)
                .map_err(|_| p.error(format!("negative power of non-invertible `{base}`")))?
        }
        Expr::Call(f, _, p) => return Err(p.error(format!("unknown function `{f}`"))),
        Expr::Wedge(v) => return Err(v[0].1.error("wedge product in a scalar expression")),
        Expr::Tensor(_, _, p) => return Err(p.error("tensor product in a scalar expression")),
    })
}

/// Linear combination of generator tuples. The empty tuple carries scalars.
pub type LinComb = BTreeMap<Vec<usize>, PolyExpr>;

fn lin_add(mut a: LinComb, b: LinComb, sign: i64) -> LinComb {
    for (k, v) in b {
        let slot = a.entry(k).or_default();
        if sign < 0 {
            *slot -= v;
        } else {
            *slot += v;
        }
    }
    a.retain(|_, v| !v.is_zero());
    a
}

fn scalar_part(c: &LinComb, pos: Pos) -> Result<PolyExpr, ParseError> {
    match c.keys().find(|k| !k.is_empty()) {
        Some(_) => Err(pos.error("product of two generator terms")),
        None => Ok(c.get(&Vec::new()).cloned().unwrap_or_default()),
    }
}

fn lin_scale(c: LinComb, s: &PolyExpr) -> LinComb {
    let mut out: LinComb = c.into_iter().map(|(k, v)| (k, &v * s)).collect();
    out.retain(|_, v| !v.is_zero());
    out
}

/// Evaluate an expression linear in the named generators; identifiers that
/// are not generators are parameters.
pub fn linear(e: &Expr, gens: &[String], inv: &Invertible) -> Result<LinComb, ParseError> {
    let gen = |s: &str| gens.iter().position(|g| g == s);
    Ok(match e {
        Expr::Ident(s, _) if gen(s).is_some() => {
            LinComb::from([(vec![gen(s).unwrap()], PolyExpr::one())])
        }
        Expr::Wedge(v) => {
            let mut idx = Vec::new();
            for (name, p) in v {
                idx.push(gen(name).ok_or_else(|| p.error(format!("unknown generator `{name}`")))?);
            }
            LinComb::from([(idx, PolyExpr::one())])
        }
        Expr::Neg(a) => lin_add(LinComb::new(), linear(a, gens, inv)?, -1),
        Expr::Add(a, b) => lin_add(linear(a, gens, inv)?, linear(b, gens, inv)?, 1),
        Expr::Sub(a, b) => lin_add(linear(a, gens, inv)?, linear(b, gens, inv)?, -1),
        Expr::Mul(a, b) => {
            let la = linear(a, gens, inv)?;
            let lb = linear(b, gens, inv)?;
            if la.keys().all(|k| k.is_empty()) {
                lin_scale(lb, &scalar_part(&la, a.pos())?)
            } else {
                lin_scale(la, &scalar_part(&lb, b.pos())?)
            }
        }
        Expr::Div(a, b, p) => {
            let d = scalar_part(&linear(b, gens, inv)?, b.pos())?;
            let dinv = d
                .unit_inverse()
                .map_err(|_| p.error(format!("cannot divide by `{d}`")))?;
            lin_scale(linear(a, gens, inv)?, &dinv)
        }
        Expr::Tensor(_, _, p) => return Err(p.error("tensor product not allowed here")),
        other => {
            let v = poly(other, inv)?;
            let mut out = LinComb::new();
            if !v.is_zero() {
                out.insert(Vec::new(), v);
            }
            out
        }
    })
}

/// Require every key of a linear combination to have length `degree`.
pub fn homogeneous(c: &LinComb, degree: usize, pos: Pos) -> Result<(), ParseError> {
    match c.keys().find(|k| k.len() != degree) {
        None => Ok(()),
        Some(k) if k.is_empty() => Err(pos.error("scalar term where a generator term was expected")),
        Some(k) => Err(pos.error(format!(
            "term of degree {} where degree {degree} was expected",
            k.len()
        ))),
    }
}

/// Coefficient vector of a rational linear combination of generators.
pub fn rational_vector(c: &LinComb, dim: usize, pos: Pos) -> Result<Vec<Rational>, ParseError> {
    homogeneous(c, 1, pos)?;
    let mut v = vec![Rational::from_integer(0.into()); dim];
    for (k, p) in c {
        v[k[0]] = p
            .as_constant()
            .ok_or_else(|| pos.error(format!("coefficient `{p}` is not a rational number")))?;
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::super::ast::parse_expr;
    use super::*;
    use crate::symkernel::ratio;

    fn gens() -> Vec<String> {
        ["D", "P", "K", "M"].iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn polynomial_evaluation() {
        let inv = Invertible::from(["E".to_string()]);
        let p = poly(&parse_expr("(1 - E^-2)/2 + x^2*E").unwrap(), &inv).unwrap();
        assert_eq!(p.to_string(), "E*x^2 + 1/2 - 1/2*E^-2");
        let err = poly(&parse_expr("x^-1").unwrap(), &inv).unwrap_err();
        assert!(err.message.contains("non-invertible"));
        assert!(poly(&parse_expr("1/(1+x)").unwrap(), &inv).is_err());
    }

    #[test]
    fn wedge_combination() {
        let c = linear(&parse_expr("a1*D^P - 1/2*(K^M) + c*P^K/3").unwrap(), &gens(), &Invertible::new()).unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(c[&vec![2, 3]], PolyExpr::constant(ratio(-1, 2)));
        assert_eq!(c[&vec![1, 2]], PolyExpr::sym("c").scale(&ratio(1, 3)));
        homogeneous(&c, 2, Pos::default()).unwrap();
    }

    #[test]
    fn rejects_products_of_generators() {
        let err = linear(&parse_expr("D*P").unwrap(), &gens(), &Invertible::new()).unwrap_err();
        assert!(err.message.contains("product"));
        let c = linear(&parse_expr("x + D").unwrap(), &gens(), &Invertible::new()).unwrap();
        assert!(homogeneous(&c, 1, Pos::default()).is_err());
    }
}
