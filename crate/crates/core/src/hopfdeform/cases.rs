use super::{exp_gen, expm1_over, DeformedAlgebra, HopfError, NCSeries, Reducer, TensorSeries, Truncation};
use crate::fixtures;
use crate::liealg::{LieAlgebra, Wedge};
use crate::symkernel::{ratio, Bindings, PolyExpr};

pub const GENERATORS: [&str; 6] = ["D", "C", "H", "K", "P", "M"];
const D: u8 = 0;
const C: u8 = 1;
const H: u8 = 2;
const K: u8 = 3;
const P: u8 = 4;
const M: u8 = 5;

/// A truncated quantum algebra with its coproduct, the classical r-matrix
/// it deforms, and optionally a universal R-matrix valid once `r_limit`
/// is substituted.
#[derive(Clone, Debug)]
pub struct Case {
    pub name: String,
    pub algebra: DeformedAlgebra,
    /// `Δ(X_i)` for every generator.
    pub coproduct: Vec<TensorSeries>,
    /// `ε(X_i)`; trivial in both built-in cases.
    pub counit: Vec<PolyExpr>,
    pub classical: LieAlgebra,
    pub classical_r: Wedge,
    pub r_limit: Bindings,
    pub universal_r: Option<TensorSeries>,
}

pub fn case_names() -> [&'static str; 2] {
    ["ucc", "uac"]
}

pub fn case(name: &str, order: i64) -> Result<Case, HopfError> {
    match name {
        "ucc" => ucc(order),
        "uac" => uac(order),
        _ => Err(HopfError::UnknownCase(name.to_string())),
    }
}

fn s(n: &str) -> PolyExpr {
    PolyExpr::sym(n)
}

fn q(n: i64, d: i64) -> PolyExpr {
    PolyExpr::constant(ratio(n, d))
}

fn g(i: u8) -> NCSeries {
    NCSeries::gen(i)
}

fn primitive(x: u8) -> TensorSeries {
    TensorSeries::otimes(&NCSeries::one(), &g(x)).add(&TensorSeries::otimes(&g(x), &NCSeries::one()))
}

/// `1⊗X + X⊗f`.
fn twisted(x: u8, f: &NCSeries) -> TensorSeries {
    TensorSeries::otimes(&NCSeries::one(), &g(x)).add(&TensorSeries::otimes(&g(x), f))
}

/// `exp{λ A⊗B} = Σ λ^n/n! A^n⊗B^n`.
fn exp_tensor(lambda: &PolyExpr, a: u8, b: u8, t: &Truncation) -> Result<TensorSeries, HopfError> {
    let e = exp_gen(lambda, 0, t)?;
    let mut out = TensorSeries::zero(2);
    for (w, c) in e.terms() {
        out.add_term(vec![vec![a; w.len()], vec![b; w.len()]], c);
    }
    Ok(out)
}

fn schrodinger_r(terms: &[(u8, u8, PolyExpr)]) -> (LieAlgebra, Wedge) {
    let alg = fixtures::schrodinger();
    let mut r = Wedge::zero(6, 2);
    for (a, b, c) in terms {
        r.add_term(&[*a as usize, *b as usize], c);
    }
    (alg, r)
}

fn c2_zero() -> Bindings {
    [("c2".to_string(), PolyExpr::zero())].into()
}

fn ucc(order: i64) -> Result<Case, HopfError> {
    let t = Truncation::new(&["c1", "c2"], order);
    let (c1, c2) = (s("c1"), s("c2"));
    let brackets = vec![
        ("D", "P", g(P).scale(&q(-1, 1))),
        ("D", "K", g(K)),
        ("K", "P", expm1_over(&c2.scale(&ratio(-2, 1)), M, &t)?),
        ("D", "H", g(H).scale(&q(-2, 1))),
        ("D", "C", g(C).scale(&q(2, 1))),
        ("H", "C", g(D)),
        ("K", "H", g(P)),
        ("P", "C", g(K).scale(&q(-1, 1))),
    ];
    let algebra = DeformedAlgebra::new(&GENERATORS, t.clone(), brackets)?;
    let e = |lambda: PolyExpr| exp_gen(&lambda, M, &t);
    let coproduct = vec![
        primitive(D),
        twisted(C, &e(c1.scale(&ratio(-2, 1)))?),
        twisted(H, &e(c1.scale(&ratio(2, 1)))?),
        twisted(K, &e(-(&c1 + &c2))?),
        twisted(P, &e(&c1 - &c2)?),
        primitive(M),
    ];
    let (classical, classical_r) = schrodinger_r(&[(D, M, c1.clone()), (P, K, c2.clone())]);
    // exp{−c1 M⊗D} exp{c1 D⊗M}
    let universal_r = {
        let red = Reducer::new(&algebra);
        exp_tensor(&-c1.clone(), M, D, &t)?.mul(&exp_tensor(&c1, D, M, &t)?, &red)
    };
    Ok(Case {
        name: "ucc".into(),
        algebra,
        coproduct,
        counit: vec![PolyExpr::zero(); 6],
        classical,
        classical_r,
        r_limit: c2_zero(),
        universal_r: Some(universal_r),
    })
}

fn uac(order: i64) -> Result<Case, HopfError> {
    let t = Truncation::new(&["a2", "c2"], order);
    let (a2, c2) = (s("a2"), s("c2"));
    let half_a2 = a2.scale(&ratio(1, 2));
    let w = |x: &[u8]| NCSeries::word(x.to_vec());
    let brackets = vec![
        ("D", "P", g(P).scale(&q(-1, 1))),
        ("D", "K", g(K)),
        ("K", "P", expm1_over(&c2.scale(&ratio(-2, 1)), M, &t)?),
        // (e^{−2a2 H} − 1)/a2 = −2 (e^{−2a2 H} − 1)/(−2a2)
        ("D", "H", expm1_over(&a2.scale(&ratio(-2, 1)), H, &t)?.scale(&q(-2, 1))),
        ("D", "C", g(C).scale(&q(2, 1)).sub(&w(&[D, D]).scale(&a2))),
        ("H", "C", g(D)),
        ("K", "H", {
            let e = exp_gen(&a2.scale(&ratio(-2, 1)), H, &t)?;
            let mut out = NCSeries::zero();
            for (u, c) in e.terms() {
                let mut x = u.clone();
                x.push(P);
                out.add_term(x, c);
            }
            out
        }),
        ("K", "C", w(&[K, D]).add(&w(&[D, K])).scale(&-half_a2.clone())),
        ("P", "C", g(K).scale(&q(-1, 1)).add(&w(&[D, P]).add(&w(&[P, D])).scale(&half_a2))),
    ];
    let algebra = DeformedAlgebra::new(&GENERATORS, t.clone(), brackets)?;
    let red = Reducer::new(&algebra);
    let eh = |lambda: PolyExpr| exp_gen(&lambda, H, &t);
    let em = |lambda: PolyExpr| exp_gen(&lambda, M, &t);
    let e2h = eh(a2.scale(&ratio(-2, 1)))?;
    let k_extra = {
        let mut tail = NCSeries::zero();
        for (u, c) in e2h.terms() {
            let mut x = u.clone();
            x.push(P);
            tail.add_term(x, c);
        }
        TensorSeries::otimes(&g(D), &tail).scale(&a2)
    };
    let coproduct = vec![
        twisted(D, &e2h),
        twisted(C, &e2h),
        primitive(H),
        twisted(K, &red.mul(&eh(-a2.clone())?, &em(-c2.clone())?)).add(&k_extra).truncate(&t),
        twisted(P, &red.mul(&eh(a2.clone())?, &em(-c2.clone())?)),
        primitive(M),
    ];
    let (classical, classical_r) = schrodinger_r(&[(D, H, a2.clone()), (P, K, c2.clone())]);
    // exp{−a2 H⊗D} exp{a2 D⊗H}
    let universal_r = exp_tensor(&-a2.clone(), H, D, &t)?.mul(&exp_tensor(&a2, D, H, &t)?, &red);
    drop(red);
    Ok(Case {
        name: "uac".into(),
        algebra,
        coproduct,
        counit: vec![PolyExpr::zero(); 6],
        classical,
        classical_r,
        r_limit: c2_zero(),
        universal_r: Some(universal_r),
    })
}

impl Case {
    /// Algebra and coproduct with `r_limit` substituted; the setting in
    /// which `universal_r` is claimed.
    pub fn limit(&self) -> Result<(DeformedAlgebra, Vec<TensorSeries>), HopfError> {
        let alg = self.algebra.substitute(&self.r_limit)?;
        let table = self
            .coproduct
            .iter()
            .map(|d| d.substitute(&self.r_limit))
            .collect::<Result<_, _>>()?;
        Ok((alg, table))
    }
}
