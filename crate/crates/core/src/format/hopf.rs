//! User-defined truncated quantum algebras.
//!
//! ```text
//! name: example
//! generators: D, C, H, K, P, M
//! deformation: c1, c2
//! limit: c2 = 0
//! [K,P] = dexp(-2*c2, M)
//! Delta(P) = 1@P + P@exp((c1 - c2)*M)
//! R = exp(-c1*M@D)*exp(c1*D@M)
//! r = c1*D^M + c2*P^K
//! ```
//!
//! Products are noncommutative in generator order; `@` is the tensor
//! product. `exp(λ*X)` needs λ of positive deformation degree and
//! `dexp(λ, X)` is `(e^{λX} − 1)/λ`. Generators without a `Delta` line are
//! primitive and the counit is trivial. The classical algebra is read off
//! the deformation-degree-0 part of the relations.

use std::collections::BTreeSet;

use num::Zero;

use super::ast::{Expr, ParseError, Pos};
use super::doc::{assignments, Lhs};
use super::{eval, FormatError, Source};
use crate::hopfdeform::{exp_gen, expm1_over, Case, DeformedAlgebra, NCSeries, Reducer, TensorSeries, Truncation};
use crate::liealg::LieAlgebra;
use crate::symkernel::{Bindings, PolyExpr, Rational};

#[derive(Clone, Debug)]
enum Val {
    Scalar(PolyExpr),
    Alg(NCSeries),
    Ten(TensorSeries),
}

struct Ctx<'a> {
    gens: &'a [String],
    t: &'a Truncation,
    inv: &'a eval::Invertible,
}

impl Ctx<'_> {
    fn alg(&self, v: Val) -> Result<NCSeries, &'static str> {
        match v {
            Val::Scalar(s) => Ok(NCSeries::one().scale(&s)),
            Val::Alg(a) => Ok(a),
            Val::Ten(_) => Err("tensor where an algebra element is expected"),
        }
    }

    fn ten(&self, v: Val) -> Result<TensorSeries, &'static str> {
        match v {
            Val::Scalar(s) => Ok(TensorSeries::one(2).scale(&s)),
            Val::Alg(_) => Err("algebra element where a tensor is expected"),
            Val::Ten(t) => Ok(t),
        }
    }

    fn add(&self, a: Val, b: Val, pos: Pos) -> Result<Val, ParseError> {
        let err = |m: &str| pos.error(m);
        Ok(match (a, b) {
            (Val::Scalar(x), Val::Scalar(y)) => Val::Scalar(x + y),
            (a @ Val::Ten(_), b) | (a, b @ Val::Ten(_)) => {
                Val::Ten(self.ten(a).map_err(err)?.add(&self.ten(b).map_err(err)?))
            }
            (a, b) => Val::Alg(self.alg(a).map_err(err)?.add(&self.alg(b).map_err(err)?)),
        })
    }

    fn neg(&self, a: Val) -> Val {
        let m = -PolyExpr::one();
        match a {
            Val::Scalar(x) => Val::Scalar(-x),
            Val::Alg(x) => Val::Alg(x.scale(&m)),
            Val::Ten(x) => Val::Ten(x.scale(&m)),
        }
    }

    /// Raw product: words are concatenated, not reduced.
    fn mul(&self, a: Val, b: Val, pos: Pos) -> Result<Val, ParseError> {
        let t = self.t;
        Ok(match (a, b) {
            (Val::Scalar(x), Val::Scalar(y)) => Val::Scalar(&x * &y),
            (Val::Scalar(x), Val::Alg(y)) | (Val::Alg(y), Val::Scalar(x)) => Val::Alg(y.scale(&x).truncate(t)),
            (Val::Scalar(x), Val::Ten(y)) | (Val::Ten(y), Val::Scalar(x)) => Val::Ten(y.scale(&x).truncate(t)),
            (Val::Alg(x), Val::Alg(y)) => {
                let mut out = NCSeries::zero();
                for (u, c) in x.terms() {
                    for (v, d) in y.terms() {
                        let mut w = u.clone();
                        w.extend_from_slice(v);
                        out.add_term(w, &t.apply(&(c * d)));
                    }
                }
                Val::Alg(out)
            }
            (Val::Ten(x), Val::Ten(y)) => {
                let mut out = TensorSeries::zero(2);
                for (u, c) in x.terms() {
                    for (v, d) in y.terms() {
                        let w = u.iter().zip(v).map(|(a, b)| [a.as_slice(), b.as_slice()].concat()).collect();
                        out.add_term(w, &t.apply(&(c * d)));
                    }
                }
                Val::Ten(out)
            }
            _ => return Err(pos.error("product of an algebra element and a tensor")),
        })
    }

    fn eval(&self, e: &Expr) -> Result<Val, ParseError> {
        Ok(match e {
            Expr::Int(..) => Val::Scalar(eval::poly(e, self.inv)?),
            Expr::Ident(s, _) => match self.gens.iter().position(|g| g == s) {
                Some(i) => Val::Alg(NCSeries::gen(i as u8)),
                None => Val::Scalar(eval::poly(e, self.inv)?),
            },
            Expr::Neg(a) => self.neg(self.eval(a)?),
            Expr::Add(a, b) => self.add(self.eval(a)?, self.eval(b)?, e.pos())?,
            Expr::Sub(a, b) => {
                let nb = self.neg(self.eval(b)?);
                self.add(self.eval(a)?, nb, e.pos())?
            }
            Expr::Mul(a, b) => self.mul(self.eval(a)?, self.eval(b)?, e.pos())?,
            Expr::Div(a, b, p) => {
                let Val::Scalar(d) = self.eval(b)? else {
                    return Err(p.error("division by a non-scalar"));
                };
                let inv = PolyExpr::one()
                    .div_unit(&d)
                    .map_err(|_| p.error(format!("cannot divide by `{d}`; write (e^{{λX}} − 1)/λ as dexp(λ, X)")))?;
                self.mul(self.eval(a)?, Val::Scalar(inv), *p)?
            }
            Expr::Pow(a, n, p) => {
                let base = self.eval(a)?;
                if let Val::Scalar(_) = base {
                    return Ok(Val::Scalar(eval::poly(e, self.inv)?));
                }
                if *n < 0 {
                    return Err(p.error("negative power of a noncommutative element"));
                }
                let mut acc = Val::Scalar(PolyExpr::one());
                for _ in 0..*n {
                    acc = self.mul(acc, base.clone(), *p)?;
                }
                acc
            }
            Expr::Tensor(a, b, p) => {
                let err = |m: &str| p.error(m);
                let x = self.alg(self.eval(a)?).map_err(err)?;
                let y = self.alg(self.eval(b)?).map_err(err)?;
                Val::Ten(TensorSeries::otimes(&x, &y))
            }
            Expr::Call(f, args, p) => self.call(f, args, *p)?,
            Expr::Wedge(v) => return Err(v[0].1.error("wedge product outside an `r = ...` line")),
        })
    }

    fn call(&self, f: &str, args: &[Expr], p: Pos) -> Result<Val, ParseError> {
        let single = |s: &NCSeries| -> Option<(u8, PolyExpr)> {
            let mut it = s.terms();
            match (it.next(), it.next()) {
                (Some((w, c)), None) if w.len() == 1 => Some((w[0], c.clone())),
                _ => None,
            }
        };
        let herr = |e: crate::hopfdeform::HopfError| p.error(e.to_string());
        match (f, args) {
            ("exp", [a]) => match self.eval(a)? {
                Val::Alg(s) => {
                    let (g, lambda) = single(&s).ok_or_else(|| p.error("exp takes a multiple of one generator"))?;
                    Ok(Val::Alg(exp_gen(&lambda, g, self.t).map_err(herr)?))
                }
                Val::Ten(s) => {
                    // (λ u⊗v)^n = λ^n u^n ⊗ v^n since u⊗1 and 1⊗v commute
                    let mut it = s.terms();
                    let (w, lambda) = match (it.next(), it.next()) {
                        (Some((w, c)), None) => (w.clone(), c.clone()),
                        _ => return Err(p.error("exp of a tensor takes a single term λ·u@v")),
                    };
                    let e = exp_gen(&lambda, 0, self.t).map_err(herr)?;
                    let mut out = TensorSeries::zero(2);
                    for (k, c) in e.terms() {
                        out.add_term(vec![w[0].repeat(k.len()), w[1].repeat(k.len())], c);
                    }
                    Ok(Val::Ten(out))
                }
                Val::Scalar(_) => Err(p.error("exp of a scalar has no truncation")),
            },
            ("dexp", [l, x]) => {
                let Val::Scalar(lambda) = self.eval(l)? else {
                    return Err(p.error("dexp(λ, X): λ must be a scalar"));
                };
                let Val::Alg(s) = self.eval(x)? else {
                    return Err(p.error("dexp(λ, X): X must be a generator"));
                };
                match single(&s) {
                    Some((g, c)) if c == PolyExpr::one() => Ok(Val::Alg(expm1_over(&lambda, g, self.t).map_err(herr)?)),
                    _ => Err(p.error("dexp(λ, X): X must be a generator")),
                }
            }
            ("exp" | "dexp", _) => Err(p.error(format!("wrong number of arguments to `{f}`"))),
            _ => Err(p.error(format!(
                "unsupported function `{f}`: only exp and dexp have a defined truncation"
            ))),
        }
    }
}

fn classical_algebra(alg: &DeformedAlgebra, origin: Pos) -> Result<LieAlgebra, FormatError> {
    let n = alg.dim();
    let mut brackets = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let c = alg.commutator(i as u8, j as u8).part(&alg.truncation, 0);
            let mut v = vec![Rational::zero(); n];
            for (w, x) in c.terms() {
                let k = match (w.as_slice(), x.as_constant()) {
                    ([k], Some(_)) => *k as usize,
                    _ => {
                        let m = format!("classical part of [{},{}] is not linear", alg.names[i], alg.names[j]);
                        return Err(origin.error(m).into());
                    }
                };
                v[k] = x.as_constant().unwrap();
            }
            if v.iter().any(|x| !x.is_zero()) {
                brackets.push((i, j, v));
            }
        }
    }
    let names: Vec<&str> = alg.names.iter().map(String::as_str).collect();
    let lie = LieAlgebra::new(&names, &brackets).map_err(|e| origin.error(e.to_string()))?;
    if let Some(((i, j, k), r)) = lie.jacobi_residual().into_iter().next() {
        return Err(FormatError::Jacobi {
            triple: [lie.name(i).into(), lie.name(j).into(), lie.name(k).into()],
            residual: r.display(&lie),
        });
    }
    Ok(lie)
}

/// Parse a quantum algebra description truncated at `order`.
pub fn parse_hopf_case(src: &str, order: i64) -> Result<Case, FormatError> {
    let source = Source::parse(src)?;
    let doc = &source.doc;
    doc.allow_headers(&["name", "generators", "deformation", "limit", "invertible"])?;
    let origin = Pos { line: 1, col: 1 };
    let gens = doc.header_items("generators");
    if gens.is_empty() {
        return Err(origin.error("missing `generators:` header").into());
    }
    if gens.len() > u8::MAX as usize {
        return Err(origin.error("too many generators").into());
    }
    let symbols = doc.header_items("deformation");
    if symbols.is_empty() {
        return Err(origin.error("missing `deformation:` header").into());
    }
    let sym_refs: Vec<&str> = symbols.iter().map(String::as_str).collect();
    let t = Truncation::new(&sym_refs, order);
    let ctx = Ctx {
        gens: &gens,
        t: &t,
        inv: &source.invertible,
    };
    let mut r_limit = Bindings::new();
    if let Some(h) = doc.header("limit") {
        for (name, e, pos) in assignments(&h.value)? {
            if !symbols.contains(&name) {
                return Err(pos.error(format!("`{name}` is not a deformation symbol")).into());
            }
            r_limit.insert(name, eval::poly(&e, &source.invertible)?);
        }
    }

    let mut brackets: Vec<(String, String, NCSeries, Pos)> = Vec::new();
    let mut deltas: Vec<(usize, TensorSeries, Pos)> = Vec::new();
    let mut universal = None;
    let mut r_line = None;
    let gen_index = |x: &str, p: Pos| gens.iter().position(|g| g == x).ok_or_else(|| p.error(format!("unknown generator `{x}`")));
    for st in &doc.statements {
        match &st.lhs {
            Lhs::Bracket(a, b) => {
                gen_index(a, st.pos)?;
                gen_index(b, st.pos)?;
                let v = ctx.alg(ctx.eval(&st.rhs)?).map_err(|m| st.rhs.pos().error(m))?;
                brackets.push((a.clone(), b.clone(), v, st.pos));
            }
            Lhs::Apply(f, x) if f == "Delta" => {
                let i = gen_index(x, st.pos)?;
                if deltas.iter().any(|(j, _, _)| *j == i) {
                    return Err(st.pos.error(format!("Delta({x}) given twice")).into());
                }
                let v = ctx.ten(ctx.eval(&st.rhs)?).map_err(|m| st.rhs.pos().error(m))?;
                deltas.push((i, v, st.pos));
            }
            Lhs::Name(n) if n == "R" => {
                let v = ctx.ten(ctx.eval(&st.rhs)?).map_err(|m| st.rhs.pos().error(m))?;
                universal = Some(v);
            }
            Lhs::Name(n) if n == "r" => r_line = Some(st),
            _ => return Err(st.pos.error("expected `[X,Y] = ...`, `Delta(X) = ...`, `R = ...` or `r = ...`").into()),
        }
    }

    let gen_refs: Vec<&str> = gens.iter().map(String::as_str).collect();
    let mut seen = BTreeSet::new();
    for (a, b, _, p) in &brackets {
        let key = if a < b { (a, b) } else { (b, a) };
        if !seen.insert(key) {
            return Err(p.error(format!("bracket of `{a}` and `{b}` given twice")).into());
        }
    }
    let algebra = DeformedAlgebra::new(
        &gen_refs,
        t.clone(),
        brackets.iter().map(|(a, b, v, _)| (a.as_str(), b.as_str(), v.clone())).collect(),
    )
    .map_err(|e| origin.error(e.to_string()))?;
    let classical = classical_algebra(&algebra, origin)?;
    let red = Reducer::new(&algebra);
    let one = TensorSeries::one(2);
    let mut coproduct: Vec<TensorSeries> = (0..gens.len() as u8)
        .map(|i| TensorSeries::otimes(&NCSeries::one(), &NCSeries::gen(i)).add(&TensorSeries::otimes(&NCSeries::gen(i), &NCSeries::one())))
        .collect();
    for (i, v, _) in deltas {
        coproduct[i] = v.mul(&one, &red);
    }
    let universal_r = universal.map(|r| r.mul(&one, &red));
    let classical_r = match r_line {
        Some(st) => source.wedge(&st.rhs, &classical, 2)?,
        None => crate::liealg::Wedge::zero(gens.len(), 2),
    };
    drop(red);
    Ok(Case {
        name: doc.header("name").map(|h| h.value.clone()).unwrap_or_else(|| "user".into()),
        algebra,
        coproduct,
        counit: vec![PolyExpr::zero(); gens.len()],
        classical,
        classical_r,
        r_limit,
        universal_r,
    })
}
