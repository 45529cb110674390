//! Linear spans of polynomial lists over the rationals.

use std::collections::BTreeSet;

use num::Zero;

use super::{LinearSystem, Monomial, PolyExpr, Rational};

/// Result of [`span_equal`]. `a_in_b[i]` expresses `A[i]` in terms of `B`
/// when possible, and symmetrically for `b_in_a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanWitness {
    pub equal: bool,
    pub a_in_b: Vec<Option<Vec<Rational>>>,
    pub b_in_a: Vec<Option<Vec<Rational>>>,
}

fn monomial_index(polys: &[&PolyExpr]) -> Vec<Monomial> {
    let set: BTreeSet<Monomial> = polys
        .iter()
        .flat_map(|p| p.terms().map(|(m, _)| m.clone()))
        .collect();
    set.into_iter().collect()
}

/// Coefficients `x` with `Σ x_j basis[j] = p`, if any.
pub fn in_span(p: &PolyExpr, basis: &[PolyExpr]) -> Option<Vec<Rational>> {
    if p.is_zero() {
        return Some(vec![Rational::zero(); basis.len()]);
    }
    let mut all: Vec<&PolyExpr> = basis.iter().collect();
    all.push(p);
    let mons = monomial_index(&all);
    let matrix: Vec<Vec<Rational>> = mons
        .iter()
        .map(|m| basis.iter().map(|b| b.coefficient(m)).collect())
        .collect();
    let rhs: Vec<PolyExpr> = mons.iter().map(|m| PolyExpr::constant(p.coefficient(m))).collect();
    let sol = LinearSystem::unlabeled(matrix).solve(&rhs);
    if !sol.is_consistent() {
        return None;
    }
    Some(
        sol.particular
            .iter()
            .map(|x| x.as_constant().expect("constant right-hand side"))
            .collect(),
    )
}

/// True iff the rational spans coincide, with explicit combinations.
pub fn span_equal(a: &[PolyExpr], b: &[PolyExpr]) -> SpanWitness {
    let a_in_b: Vec<_> = a.iter().map(|p| in_span(p, b)).collect();
    let b_in_a: Vec<_> = b.iter().map(|p| in_span(p, a)).collect();
    let equal = a_in_b.iter().all(Option::is_some) && b_in_a.iter().all(Option::is_some);
    SpanWitness {
        equal,
        a_in_b,
        b_in_a,
    }
}

/// Canonical basis of the span: reduced echelon rows over the monomials in
/// descending graded-lex order, so each basis element has leading coefficient 1.
pub fn span_basis(polys: &[PolyExpr]) -> Vec<PolyExpr> {
    let refs: Vec<&PolyExpr> = polys.iter().collect();
    let mut mons = monomial_index(&refs);
    mons.reverse();
    if mons.is_empty() {
        return Vec::new();
    }
    let matrix: Vec<Vec<Rational>> = polys
        .iter()
        .map(|p| mons.iter().map(|m| p.coefficient(m)).collect())
        .collect();
    let (rows, _) = LinearSystem::unlabeled(matrix).rref();
    rows.into_iter()
        .map(|row| {
            let mut p = PolyExpr::zero();
            for (c, m) in row.into_iter().zip(&mons) {
                p += PolyExpr::term(c, m.clone());
            }
            p
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symkernel::rat;
    use proptest::prelude::*;

    fn x() -> PolyExpr {
        PolyExpr::sym("x")
    }
    fn y() -> PolyExpr {
        PolyExpr::sym("y")
    }

    #[test]
    fn spans_of_linear_forms() {
        let a = vec![x().scale(&rat(2)), &x() + &y()];
        let b = vec![x(), y()];
        let w = span_equal(&a, &b);
        assert!(w.equal);
        assert_eq!(w.a_in_b[1], Some(vec![rat(1), rat(1)]));
        // y = (x + y) - 1/2 * 2x
        assert_eq!(w.b_in_a[1], Some(vec![crate::symkernel::ratio(-1, 2), rat(1)]));
    }

    #[test]
    fn different_degrees_do_not_match() {
        assert!(!span_equal(&[x().pow(2)], &[x()]).equal);
    }

    #[test]
    fn basis_drops_dependent_members() {
        let basis = span_basis(&[x(), x().scale(&rat(3)), PolyExpr::zero(), &x() + &y()]);
        assert_eq!(basis, vec![x(), y()]);
    }

    fn arb_poly() -> impl Strategy<Value = PolyExpr> {
        proptest::collection::vec((-3i64..4, 0u32..3, 0u32..2), 0..4).prop_map(|ts| {
            ts.into_iter()
                .map(|(c, a, b)| (&x().pow(a) * &y().pow(b)).scale(&rat(c)))
                .sum()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(150))]
        #[test]
        fn span_equality_is_an_equivalence(
            a in proptest::collection::vec(arb_poly(), 1..4),
            mix in proptest::collection::vec(-2i64..3, 9),
            c in proptest::collection::vec(arb_poly(), 1..4),
        ) {
            prop_assert!(span_equal(&a, &a).equal);
            // b: combinations of a, extended by a itself so spans agree
            let mut b: Vec<PolyExpr> = (0..3)
                .map(|i| a.iter().enumerate().map(|(j, p)| p.scale(&rat(mix[(i * 3 + j) % 9]))).sum())
                .collect();
            b.extend(a.iter().rev().cloned());
            let ab = span_equal(&a, &b).equal;
            prop_assert!(ab);
            prop_assert_eq!(span_equal(&b, &a).equal, ab);
            let bc = span_equal(&b, &c).equal;
            if ab && bc {
                prop_assert!(span_equal(&a, &c).equal);
            }
            prop_assert_eq!(span_equal(&a, &c).equal, span_equal(&c, &a).equal);
            prop_assert!(span_equal(&span_basis(&a), &a).equal);
        }
    }
}
