use num::Zero;

use super::{cocycle_residual, delta_from_r, BialgebraError, Cocommutator};
use crate::liealg::{LieAlgebra, LieError, Wedge};
use crate::symkernel::{invert_matrix, LinearSystem, PolyExpr, Rational};

/// General solution of the cocycle condition.
#[derive(Clone, Debug)]
pub struct CocycleSolution {
    /// `f{i}_{j}{k}` (1-based), row-major over `i` then ordered pairs `(j,k)`.
    pub unknowns: Vec<String>,
    pub equations: usize,
    pub rank: usize,
    /// Kernel basis over the unknowns, one vector per free unknown.
    pub kernel: Vec<Vec<Rational>>,
    /// Indices of the unknowns used as parameters.
    pub free: Vec<usize>,
    /// The general cocycle with the free unknowns as parameters.
    pub general: Cocommutator,
}

impl CocycleSolution {
    pub fn dimension(&self) -> usize {
        self.kernel.len()
    }

    pub fn parameters(&self) -> Vec<&str> {
        self.free.iter().map(|&i| self.unknowns[i].as_str()).collect()
    }
}

pub(crate) fn unknown_names(n: usize) -> Vec<String> {
    let pairs = Wedge::basis_tuples(n, 2);
    let sep = if n < 10 { "" } else { "_" };
    let mut out = Vec::new();
    for i in 0..n {
        for p in &pairs {
            out.push(format!("f{}_{}{sep}{}", i + 1, p[0] + 1, p[1] + 1));
        }
    }
    out
}

fn generic_cocommutator(n: usize, unknowns: &[String]) -> Cocommutator {
    let pairs = Wedge::basis_tuples(n, 2);
    let mut d = Cocommutator::zero(n);
    let mut it = unknowns.iter();
    for row in d.rows.iter_mut() {
        for p in &pairs {
            row.add_term(p, &PolyExpr::sym(it.next().unwrap()));
        }
    }
    d
}

/// Solve the cocycle condition with every `f_i^{jk}` unknown. Elimination runs
/// over the unknowns in reverse order, so earlier unknowns are preferred as
/// parameters.
pub fn cocycle_solve(alg: &LieAlgebra) -> Result<CocycleSolution, LieError> {
    let n = alg.dim();
    let unknowns = unknown_names(n);
    let generic = generic_cocommutator(n, &unknowns);
    let mut eqs = Vec::new();
    for (_, w) in cocycle_residual(alg, &generic)? {
        eqs.extend(w.terms().map(|(_, c)| c.clone()));
    }
    let reversed: Vec<&str> = unknowns.iter().rev().map(String::as_str).collect();
    let (sys, _) = LinearSystem::from_equations(&eqs, &reversed)?;
    let m = unknowns.len();
    let rank = sys.rank();
    let mut kernel: Vec<Vec<Rational>> = sys
        .nullspace()
        .into_iter()
        .map(|mut v| {
            v.reverse();
            v
        })
        .collect();
    let mut free: Vec<usize> = kernel
        .iter()
        .map(|v| {
            // back in the original order the parameter is the first nonzero entry
            (0..m).find(|&c| !v[c].is_zero()).unwrap()
        })
        .collect();
    let mut order: Vec<usize> = (0..free.len()).collect();
    order.sort_by_key(|&i| free[i]);
    kernel = order.iter().map(|&i| kernel[i].clone()).collect();
    free = order.iter().map(|&i| free[i]).collect();
    let mut coeffs = vec![PolyExpr::zero(); m];
    for (v, &f) in kernel.iter().zip(&free) {
        let t = PolyExpr::sym(&unknowns[f]);
        for (c, x) in coeffs.iter_mut().zip(v) {
            if !x.is_zero() {
                c.add_scaled(&t, x);
            }
        }
    }
    let pairs = Wedge::basis_tuples(n, 2);
    let mut general = Cocommutator::zero(n);
    for (i, row) in general.rows.iter_mut().enumerate() {
        for (p, pair) in pairs.iter().enumerate() {
            row.add_term(pair, &coeffs[i * pairs.len() + p]);
        }
    }
    Ok(CocycleSolution {
        unknowns,
        equations: eqs.len(),
        rank,
        kernel,
        free,
        general,
    })
}

/// Re-parameterize a cocycle solution so that `names[l]` equals the unknown
/// at `positions[l]`. Returns the matrix `B` with `names = B · parameters`
/// and the general cocycle in the new names.
pub fn change_of_basis(
    sol: &CocycleSolution,
    names: &[&str],
    positions: &[usize],
) -> Result<(Vec<Vec<Rational>>, Cocommutator), BialgebraError> {
    let k = sol.kernel.len();
    if names.len() != k || positions.len() != k {
        return Err(LieError::Dimension { expected: k, got: names.len().min(positions.len()) }.into());
    }
    let b: Vec<Vec<Rational>> = positions
        .iter()
        .map(|&p| sol.kernel.iter().map(|v| v[p].clone()).collect())
        .collect();
    let inv = invert_matrix(&b).ok_or(LieError::Singular)?;
    let mut bind = crate::symkernel::Bindings::new();
    for (t, &f) in sol.free.iter().enumerate() {
        let mut e = PolyExpr::zero();
        for (l, name) in names.iter().enumerate() {
            if !inv[t][l].is_zero() {
                e.add_scaled(&PolyExpr::sym(name), &inv[t][l]);
            }
        }
        bind.insert(sol.unknowns[f].clone(), e);
    }
    Ok((b, sol.general.substitute(&bind)?))
}

/// Result of solving `delta_from_r(r) = δ` for skew `r`.
#[derive(Clone, Debug)]
pub struct CoboundaryMatch {
    pub r: Wedge,
    /// Skew elements with vanishing coboundary (the freedom in `r`).
    pub kernel: Vec<Wedge>,
    /// Obstructions; empty exactly when `δ` is a coboundary.
    pub residual: Vec<PolyExpr>,
}

impl CoboundaryMatch {
    pub fn is_coboundary(&self) -> bool {
        self.residual.is_empty()
    }
}

pub fn coboundary_match(alg: &LieAlgebra, delta: &Cocommutator) -> Result<CoboundaryMatch, LieError> {
    let n = alg.dim();
    let pairs = Wedge::basis_tuples(n, 2);
    let columns: Vec<Vec<Rational>> = pairs
        .iter()
        .map(|p| {
            let w = Wedge::from_terms(n, 2, &[(p.clone(), PolyExpr::one())]);
            delta_from_r(alg, &w).map(|d| {
                d.coefficients()
                    .iter()
                    .map(|c| c.as_constant().expect("rational structure constants"))
                    .collect()
            })
        })
        .collect::<Result<_, _>>()?;
    let rows = n * pairs.len();
    let matrix: Vec<Vec<Rational>> = (0..rows)
        .map(|r| columns.iter().map(|col| col[r].clone()).collect())
        .collect();
    let names = pairs
        .iter()
        .map(|p| format!("r{}{}", p[0] + 1, p[1] + 1))
        .collect();
    let sol = LinearSystem::new(matrix, names).solve(&delta.coefficients());
    let to_wedge = |coeffs: &[PolyExpr]| {
        let mut w = Wedge::zero(n, 2);
        for (p, c) in pairs.iter().zip(coeffs) {
            w.add_term(p, c);
        }
        w
    };
    let kernel = sol
        .kernel
        .iter()
        .map(|v| to_wedge(&v.iter().cloned().map(PolyExpr::constant).collect::<Vec<_>>()))
        .collect();
    Ok(CoboundaryMatch {
        r: to_wedge(&sol.particular),
        kernel,
        residual: sol.inconsistencies,
    })
}

#[cfg(test)]
mod tests {
    use super::super::tests::{C, D, M};
    use super::*;
    use crate::liealg::tests::schrodinger;
    use crate::symkernel::{rat, ratio};
    use proptest::prelude::*;

    #[test]
    fn abelian_cocycles_are_unconstrained() {
        let sol = cocycle_solve(&LieAlgebra::abelian(2)).unwrap();
        assert_eq!(sol.dimension(), 2);
        assert_eq!(sol.unknowns, vec!["f1_12", "f2_12"]);
    }

    #[test]
    fn schrodinger_has_fifteen_parameters() {
        let sol = cocycle_solve(&schrodinger()).unwrap();
        assert_eq!(sol.unknowns.len(), 90);
        assert_eq!(sol.dimension(), 15);
        assert!(super::super::is_cocycle(&schrodinger(), &sol.general).unwrap());
        assert!(sol.general.row(M).is_zero());
    }

    #[test]
    fn schrodinger_skew_kernel_is_trivial() {
        let m = coboundary_match(&schrodinger(), &Cocommutator::zero(6)).unwrap();
        assert!(m.kernel.is_empty());
        assert!(m.r.is_zero() && m.is_coboundary());
    }

    #[test]
    fn non_coboundary_is_detected() {
        // δ(K) = K∧M, δ(H) = -H∧M on the Galilei subalgebra alone
        let alg = LieAlgebra::from_table(
            &["K", "H", "P", "M"],
            &[("K", "H", &[(rat(1), "P")]), ("K", "P", &[(rat(1), "M")])],
        )
        .unwrap();
        let mut d = Cocommutator::zero(4);
        d.rows[0] = Wedge::from_terms(4, 2, &[(vec![0, 3], PolyExpr::one())]);
        d.rows[1] = Wedge::from_terms(4, 2, &[(vec![1, 3], PolyExpr::integer(-1))]);
        assert!(super::super::is_cocycle(&alg, &d).unwrap());
        assert!(!coboundary_match(&alg, &d).unwrap().is_coboundary());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn coboundary_round_trip(v in proptest::collection::vec(-9i64..10, 15), d in 1i64..5) {
            let alg = schrodinger();
            let mut r = Wedge::zero(6, 2);
            for (t, x) in Wedge::basis_tuples(6, 2).iter().zip(&v) {
                r.add_term(t, &PolyExpr::constant(ratio(*x, d)));
            }
            let m = coboundary_match(&alg, &delta_from_r(&alg, &r).unwrap()).unwrap();
            prop_assert!(m.is_coboundary());
            prop_assert_eq!(m.r, r);
        }
    }

    #[test]
    fn change_of_basis_is_reported() {
        let sol = cocycle_solve(&schrodinger()).unwrap();
        let names: Vec<String> = (1..=15).map(|l| format!("t{l}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let (b, general) = change_of_basis(&sol, &refs, &sol.free).unwrap();
        for (l, row) in b.iter().enumerate() {
            for (t, x) in row.iter().enumerate() {
                assert_eq!(*x, Rational::from_integer((l == t).into()));
            }
        }
        assert_eq!(general.coefficient(D, D, C), PolyExpr::sym("t1"));
    }
}
