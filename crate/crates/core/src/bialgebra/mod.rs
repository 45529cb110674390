//! Cocommutators, cocycle and co-Jacobi conditions, coboundary matching,
//! standard/non-standard classification and parameter families.

mod automorphism;
mod cocycle;
mod cojacobi;
mod family;

pub use automorphism::{automorphism_transform, transform_wedge, map_constraint_sets, AutomorphismReport, RowImage};
pub use cocycle::{change_of_basis, coboundary_match, cocycle_solve, CoboundaryMatch, CocycleSolution};
pub use cojacobi::{cojacobi_constraints, dedup_polys, ConstraintSet};
pub use family::{
    linear_bindings,
    classify, discriminant, reduce_constraints, BialgebraFamily, Classification, Label, Reduction,
    RMatrixFamily, Specialization,
};

use num::Zero;

use crate::liealg::{ad_wedge, LieAlgebra, LieError, Tensor, Wedge};
use crate::symkernel::{Bindings, KernelError, PolyExpr};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BialgebraError {
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error("infeasible specialization: constraint {0} does not vanish")]
    Infeasible(String),
    #[error("Schouten bracket is not ad-invariant: ad_{generator} gives {residual}")]
    NotInvariant { generator: String, residual: String },
    #[error("discriminant {0} is not determined at this point")]
    Undetermined(String),
    #[error("map is not an automorphism: {0}")]
    NotAutomorphism(String),
}

/// `δ(X_i)` for every generator, as bivectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocommutator {
    pub rows: Vec<Wedge>,
}

impl Cocommutator {
    pub fn zero(dim: usize) -> Self {
        Cocommutator {
            rows: vec![Wedge::zero(dim, 2); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn row(&self, i: usize) -> &Wedge {
        &self.rows[i]
    }

    /// `f_i^{jk}` for `j<k`.
    pub fn coefficient(&self, i: usize, j: usize, k: usize) -> PolyExpr {
        self.rows[i].coefficient(&[j, k])
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Wedge::is_zero)
    }

    pub fn substitute(&self, b: &Bindings) -> Result<Self, KernelError> {
        Ok(Cocommutator {
            rows: self.rows.iter().map(|r| r.substitute(b)).collect::<Result<_, _>>()?,
        })
    }

    /// All coefficients `f_i^{jk}`, row-major over `i` then ordered `(j,k)`.
    pub fn coefficients(&self) -> Vec<PolyExpr> {
        let n = self.dim();
        let pairs = Wedge::basis_tuples(n, 2);
        let mut out = Vec::with_capacity(n * pairs.len());
        for r in &self.rows {
            for p in &pairs {
                out.push(r.coefficient(p));
            }
        }
        out
    }

    /// Coefficient-wise difference, nonzero entries only, as `(i, (j,k), value)`.
    pub fn difference(&self, other: &Cocommutator) -> Vec<(usize, Vec<usize>, PolyExpr)> {
        let mut out = Vec::new();
        for (i, (a, b)) in self.rows.iter().zip(&other.rows).enumerate() {
            for (idx, c) in (a - b).terms() {
                out.push((i, idx.clone(), c.clone()));
            }
        }
        out
    }

    /// One line `delta(X) = ...` per generator.
    pub fn display(&self, alg: &LieAlgebra) -> String {
        let mut s = String::new();
        for (i, r) in self.rows.iter().enumerate() {
            s.push_str(&format!("delta({}) = {}\n", alg.name(i), r.display(alg)));
        }
        s
    }
}

/// Coboundary cocommutator `δ(X) = [1⊗X + X⊗1, r]`.
pub fn delta_from_r(alg: &LieAlgebra, r: &Wedge) -> Result<Cocommutator, LieError> {
    let rows = (0..alg.dim())
        .map(|i| ad_wedge(alg, &alg.basis(i), r))
        .collect::<Result<_, _>>()?;
    Ok(Cocommutator { rows })
}

/// `δ([X_i,X_j]) − ad_{X_i} δ(X_j) + ad_{X_j} δ(X_i)` for each `i<j`.
pub fn cocycle_residual(alg: &LieAlgebra, delta: &Cocommutator) -> Result<Vec<((usize, usize), Wedge)>, LieError> {
    let n = alg.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let mut lhs = Wedge::zero(n, 2);
            for (k, c) in alg.structure(i, j).iter().enumerate() {
                if !c.is_zero() {
                    lhs = &lhs + &delta.rows[k].scale(&PolyExpr::constant(c.clone()));
                }
            }
            let a = ad_wedge(alg, &alg.basis(i), &delta.rows[j])?;
            let b = ad_wedge(alg, &alg.basis(j), &delta.rows[i])?;
            out.push(((i, j), &(&lhs - &a) + &b));
        }
    }
    Ok(out)
}

/// Residuals of [`cocycle_residual`] as tensors.
pub fn cocycle_residual_tensors(alg: &LieAlgebra, delta: &Cocommutator) -> Result<Vec<((usize, usize), Tensor)>, LieError> {
    Ok(cocycle_residual(alg, delta)?
        .into_iter()
        .map(|(p, w)| (p, w.to_tensor()))
        .collect())
}

pub fn is_cocycle(alg: &LieAlgebra, delta: &Cocommutator) -> Result<bool, LieError> {
    Ok(cocycle_residual(alg, delta)?.iter().all(|(_, w)| w.is_zero()))
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::liealg::tests::schrodinger;
    use crate::symkernel::{rat, PolyExpr};

    pub(crate) const D: usize = 0;
    pub(crate) const C: usize = 1;
    pub(crate) const H: usize = 2;
    pub(crate) const K: usize = 3;
    pub(crate) const P: usize = 4;
    pub(crate) const M: usize = 5;

    fn s(n: &str) -> PolyExpr {
        PolyExpr::sym(n)
    }

    #[test]
    fn d_primitive_cocommutator() {
        let alg = schrodinger();
        let r = Wedge::from_terms(6, 2, &[(vec![D, M], s("c1")), (vec![P, K], s("c2"))]);
        let d = delta_from_r(&alg, &r).unwrap();
        assert!(d.row(D).is_zero() && d.row(M).is_zero());
        assert_eq!(d.row(P).coefficient(&[P, M]), s("c1") - s("c2"));
        assert_eq!(d.row(K).coefficient(&[K, M]), -(s("c1") + s("c2")));
        assert_eq!(d.row(H).coefficient(&[H, M]), s("c1").scale(&rat(2)));
        assert_eq!(d.row(C).coefficient(&[C, M]), s("c1").scale(&rat(-2)));
        assert_eq!(d.row(P).terms().count() + d.row(K).terms().count(), 2);
    }

    #[test]
    fn zero_r_gives_zero_delta() {
        let alg = schrodinger();
        assert!(delta_from_r(&alg, &Wedge::zero(6, 2)).unwrap().is_zero());
    }

    #[test]
    fn coboundaries_are_cocycles() {
        let alg = schrodinger();
        let mut r = Wedge::zero(6, 2);
        for (n, t) in Wedge::basis_tuples(6, 2).into_iter().enumerate() {
            r.add_term(&t, &s(&format!("r{n}")));
        }
        let d = delta_from_r(&alg, &r).unwrap();
        assert!(is_cocycle(&alg, &d).unwrap());
    }

    // δ(D) = D∧P alone: the (D,H) pair gives δ([D,H]) = -2δ(H) = 0 while
    // ad_H δ(D) = [H,D]∧P + D∧[H,P] = 2H∧P, so the residual is 2H∧P.
    #[test]
    fn lone_d_row_is_not_a_cocycle() {
        let alg = schrodinger();
        let mut d = Cocommutator::zero(6);
        d.rows[D] = Wedge::from_terms(6, 2, &[(vec![D, P], PolyExpr::one())]);
        let res = cocycle_residual(&alg, &d).unwrap();
        let dh = &res.iter().find(|(p, _)| *p == (D, H)).unwrap().1;
        assert_eq!(dh, &Wedge::from_terms(6, 2, &[(vec![H, P], PolyExpr::integer(2))]));
        assert!(!is_cocycle(&alg, &d).unwrap());
    }
}
