//! The Schouten bracket `[[r,r]] = [r12,r13] + [r12,r23] + [r13,r23]`.

use num::Zero;

use super::{LieAlgebra, LieError, Tensor, Wedge};
use crate::symkernel::PolyExpr;

/// `[[r,r]]` for `r ∈ Λ²g`, evaluated only on ordered triples `a<b<c`:
///
/// `t^{abc} = Σ r^{ib} r^{kc} c_{ik}^a + Σ r^{aj} r^{kc} c_{jk}^b + Σ r^{aj} r^{bl} c_{jl}^c`.
pub fn schouten(alg: &LieAlgebra, r: &Wedge) -> Result<Wedge, LieError> {
    let n = alg.dim();
    if r.degree() != 2 {
        return Err(LieError::UnsupportedDegree(r.degree()));
    }
    if r.dim() != n {
        return Err(LieError::Dimension { expected: n, got: r.dim() });
    }
    let full = r.to_tensor();
    let rr = |i: usize, j: usize| full.get(&[i, j]);
    let mut out = Wedge::zero(n, 3);
    for abc in Wedge::basis_tuples(n, 3) {
        let (a, b, c) = (abc[0], abc[1], abc[2]);
        let mut t = PolyExpr::zero();
        for i in 0..n {
            for k in 0..n {
                let f = alg.constant(i, k, a);
                if !f.is_zero() {
                    t.add_scaled(&(rr(i, b) * rr(k, c)), f);
                }
                let f = alg.constant(i, k, b);
                if !f.is_zero() {
                    t.add_scaled(&(rr(a, i) * rr(k, c)), f);
                }
                let f = alg.constant(i, k, c);
                if !f.is_zero() {
                    t.add_scaled(&(rr(a, i) * rr(b, k)), f);
                }
            }
        }
        if !t.is_zero() {
            out.add_term(&abc, &t);
        }
    }
    Ok(out)
}

/// `[[r,r]]` by full expansion in `g⊗g⊗g` for an arbitrary degree-2 tensor.
pub fn schouten_full(alg: &LieAlgebra, r: &Tensor) -> Tensor {
    let n = alg.dim();
    let mut out = Tensor::zero(n, 3);
    let terms: Vec<(Vec<usize>, PolyExpr)> = r.entries().map(|(i, c)| (i, c.clone())).collect();
    for (ij, c1) in &terms {
        for (kl, c2) in &terms {
            let (i, j, k, l) = (ij[0], ij[1], kl[0], kl[1]);
            let c = c1 * c2;
            for (m, f) in alg.structure(i, k).iter().enumerate() {
                if !f.is_zero() {
                    out.add_at(&[m, j, l], &c.scale(f));
                }
            }
            for (m, f) in alg.structure(j, k).iter().enumerate() {
                if !f.is_zero() {
                    out.add_at(&[i, m, l], &c.scale(f));
                }
            }
            for (m, f) in alg.structure(j, l).iter().enumerate() {
                if !f.is_zero() {
                    out.add_at(&[i, k, m], &c.scale(f));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::tests::schrodinger;
    use crate::liealg::AlgElement;
    use crate::symkernel::{rat, Rational};
    use proptest::prelude::*;

    const K: usize = 3;
    const P: usize = 4;
    const M: usize = 5;

    /// Oracle: `[[r,r]]` assembled from tensor products of brackets.
    fn oracle(alg: &LieAlgebra, r: &Tensor) -> Tensor {
        let n = alg.dim();
        let one_slot = |v: usize| Tensor::basis(n, &[v]);
        let br = |a: usize, b: usize| Tensor::from_element(&alg.bracket(&alg.basis(a), &alg.basis(b)).unwrap());
        let mut acc = Tensor::zero(n, 3);
        for (ij, c1) in r.entries() {
            for (kl, c2) in r.entries() {
                let (i, j, k, l) = (ij[0], ij[1], kl[0], kl[1]);
                let c = c1 * c2;
                let t1 = br(i, k).otimes(&one_slot(j)).otimes(&one_slot(l));
                let t2 = one_slot(i).otimes(&br(j, k)).otimes(&one_slot(l));
                let t3 = one_slot(i).otimes(&one_slot(k)).otimes(&br(j, l));
                acc = &acc + &(&(&t1 + &t2) + &t3).scale(&c);
            }
        }
        acc
    }

    #[test]
    fn zero_and_pk() {
        let s = schrodinger();
        assert!(schouten(&s, &Wedge::zero(6, 2)).unwrap().is_zero());
        let c2 = PolyExpr::sym("c2");
        let r = Wedge::from_terms(6, 2, &[(vec![P, K], c2.clone())]);
        let rr = schouten(&s, &r).unwrap();
        assert_eq!(rr.coefficient(&[K, M, P]), -c2.pow(2));
        assert_eq!(rr.terms().count(), 1);
    }

    #[test]
    fn full_expansion_agrees_with_oracle() {
        let s = schrodinger();
        let r = Wedge::from_terms(
            6,
            2,
            &[
                (vec![0, 4], PolyExpr::sym("a1")),
                (vec![4, 3], PolyExpr::sym("c2")),
                (vec![2, 1], PolyExpr::sym("c3")),
            ],
        );
        let t = r.to_tensor();
        assert_eq!(schouten_full(&s, &t), oracle(&s, &t));
        assert_eq!(Wedge::from_tensor(&schouten_full(&s, &t)).unwrap(), schouten(&s, &r).unwrap());
    }

    fn small_algebras() -> Vec<LieAlgebra> {
        let r = rat;
        vec![
            LieAlgebra::from_table(
                &["N", "A+", "A-", "M"],
                &[
                    ("N", "A+", &[(r(1), "A+")]),
                    ("N", "A-", &[(r(-1), "A-")]),
                    ("A-", "A+", &[(r(1), "M")]),
                ],
            )
            .unwrap(),
            LieAlgebra::from_table(
                &["J3", "J+", "J-", "I"],
                &[
                    ("J3", "J+", &[(r(2), "J+")]),
                    ("J3", "J-", &[(r(-2), "J-")]),
                    ("J+", "J-", &[(r(1), "J3")]),
                ],
            )
            .unwrap(),
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn wedge_formula_matches_brute_force(c in proptest::collection::vec(-3i64..4, 6), which in 0usize..2) {
            let alg = &small_algebras()[which];
            let terms: Vec<_> = Wedge::basis_tuples(4, 2).into_iter().zip(c).map(|(t, v)| (t, PolyExpr::integer(v))).collect();
            let r = Wedge::from_terms(4, 2, &terms);
            let brute = oracle(alg, &r.to_tensor());
            prop_assert_eq!(Wedge::from_tensor(&brute).unwrap(), schouten(alg, &r).unwrap());
        }

        #[test]
        fn quadratic_in_r(c in proptest::collection::vec(-3i64..4, 15), n in -5i64..6, d in 1i64..5) {
            let s = schrodinger();
            let terms: Vec<_> = Wedge::basis_tuples(6, 2).into_iter().zip(c).map(|(t, v)| (t, PolyExpr::integer(v))).collect();
            let r = Wedge::from_terms(6, 2, &terms);
            let lam = PolyExpr::constant(Rational::new(n.into(), d.into()));
            prop_assert_eq!(schouten(&s, &r.scale(&lam)).unwrap(), schouten(&s, &r).unwrap().scale(&lam.pow(2)));
        }
    }

    #[test]
    fn rejects_wrong_degree() {
        let s = schrodinger();
        let _ = AlgElement::zero(6);
        assert!(schouten(&s, &Wedge::zero(6, 3)).is_err());
    }
}
