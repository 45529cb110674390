//! Sub-bialgebras supported on generator subsets.
//!
//! A target bialgebra `(h, δ_h)` with a generator map `φ: h → g` onto a
//! subalgebra sits inside a parent family when `δ(φY) = (φ⊗φ)δ_h(Y)` for
//! every target generator `Y`. These equations are linear in the parent
//! parameters and are solved for them.

use std::collections::BTreeSet;

use num::Zero;
use thiserror::Error;

use crate::bialgebra::{
    dedup_polys, linear_bindings, reduce_constraints, BialgebraError, BialgebraFamily, Cocommutator, RMatrixFamily,
};
use crate::liealg::{LieAlgebra, LieError, Wedge};
use crate::symkernel::{invert_matrix, Bindings, KernelError, PolyExpr, Rational};

#[derive(Debug, Error)]
pub enum EmbedError {
    #[error(transparent)]
    Bialgebra(#[from] BialgebraError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error("generator map has {got} columns, parent has {want} generators")]
    Shape { got: usize, want: usize },
    #[error("generator map is not injective on its support")]
    Singular,
    #[error("image of the generator map is not closed under the bracket")]
    NotClosed,
    #[error("report has no r-matrix; the parent family is not coboundary")]
    NoRMatrix,
}

/// Generators of `parent` spanning a subalgebra.
#[derive(Clone, Debug)]
pub struct SubalgebraSpan {
    pub parent: LieAlgebra,
    pub members: Vec<usize>,
}

impl SubalgebraSpan {
    pub fn new(parent: &LieAlgebra, names: &[&str]) -> Result<Self, LieError> {
        let mut members = names
            .iter()
            .map(|n| parent.index(n))
            .collect::<Result<Vec<_>, _>>()?;
        members.sort_unstable();
        members.dedup();
        Ok(SubalgebraSpan {
            parent: parent.clone(),
            members,
        })
    }

    /// The generators used by the rows of a generator map.
    pub fn support(parent: &LieAlgebra, map: &[Vec<Rational>]) -> Self {
        let members: BTreeSet<usize> = map
            .iter()
            .flat_map(|row| (0..row.len()).filter(|&j| !row[j].is_zero()))
            .collect();
        SubalgebraSpan {
            parent: parent.clone(),
            members: members.into_iter().collect(),
        }
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    pub fn names(&self) -> Vec<&str> {
        self.members.iter().map(|&i| self.parent.name(i)).collect()
    }
}

pub fn closure_check(s: &SubalgebraSpan) -> bool {
    for (a, &i) in s.members.iter().enumerate() {
        for &j in &s.members[a + 1..] {
            let c = s.parent.structure(i, j);
            if (0..c.len()).any(|k| !c[k].is_zero() && !s.contains(k)) {
                return false;
            }
        }
    }
    true
}

/// Components of `δ(X_i)`, `i ∈ s`, lying outside `s∧s`; all must vanish.
pub fn sub_bialgebra_condition(family: &BialgebraFamily, s: &SubalgebraSpan) -> Vec<PolyExpr> {
    let conds = s.members.iter().flat_map(|&i| {
        family.delta.rows[i]
            .terms()
            .filter(|(idx, _)| !idx.iter().all(|&j| s.contains(j)))
            .map(|(_, c)| c.clone())
    });
    dedup_polys(conds)
}

/// Parameters left unconstrained once the sub-bialgebra condition holds,
/// and the bindings forcing the rest.
pub fn sub_bialgebra_survivors(
    family: &BialgebraFamily,
    s: &SubalgebraSpan,
) -> Result<(Bindings, Vec<String>), EmbedError> {
    let conds = sub_bialgebra_condition(family, s);
    let params: Vec<String> = family.parameters().into_iter().collect();
    let refs: Vec<&str> = params.iter().map(String::as_str).collect();
    let (bindings, _) = linear_bindings(&conds, &refs)?;
    let survivors = params
        .into_iter()
        .filter(|p| bindings.get(p).is_none_or(|v| !v.is_zero()))
        .collect();
    Ok((bindings, survivors))
}

/// Result of matching a target cocommutator inside a parent family.
#[derive(Clone, Debug)]
pub struct EmbeddingReport {
    pub subalgebra: SubalgebraSpan,
    /// Parent parameters in terms of target parameters, as solved from the
    /// matching equations before `forced` is applied; zeros included.
    pub bindings: Bindings,
    /// Target parameters that must vanish or be tied for a match: linear
    /// conditions from the matching, then single-symbol residual monomials.
    pub forced: Bindings,
    /// Nonzero constants met while solving; any makes the match impossible.
    pub contradictions: Vec<PolyExpr>,
    /// Parent constraints after substitution, in target parameters.
    pub residual: Vec<PolyExpr>,
    /// Parent parameters left free.
    pub free: Vec<String>,
    /// Parent r-matrix with the bindings applied, when the parent has one.
    pub r: Option<Wedge>,
}

impl EmbeddingReport {
    pub fn embeds(&self) -> bool {
        self.contradictions.is_empty()
    }
}

/// `(φ⊗φ) w` for `φ(Y_t) = Σ_b map[t][b] X_b`.
fn push_wedge(w: &Wedge, map: &[Vec<Rational>], parent_dim: usize) -> Wedge {
    let mut out = Wedge::zero(parent_dim, w.degree());
    for (idx, c) in w.terms() {
        let mut partial: Vec<(Vec<usize>, Rational)> = vec![(Vec::new(), num::One::one())];
        for &t in idx {
            let mut next = Vec::new();
            for (p, x) in &partial {
                for (b, y) in map[t].iter().enumerate() {
                    if !y.is_zero() && !p.contains(&b) {
                        let mut q = p.clone();
                        q.push(b);
                        next.push((q, x * y));
                    }
                }
            }
            partial = next;
        }
        for (q, x) in partial {
            out.add_term(&q, &c.scale(&x));
        }
    }
    out
}

/// `δ(φY)` for each target generator `Y`.
fn parent_images(family: &BialgebraFamily, map: &[Vec<Rational>]) -> Vec<Wedge> {
    let n = family.algebra.dim();
    map.iter()
        .map(|row| {
            let mut acc = Wedge::zero(n, 2);
            for (b, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    acc = &acc + &family.delta.rows[b].scale(&PolyExpr::constant(x.clone()));
                }
            }
            acc
        })
        .collect()
}

fn check_map(family: &BialgebraFamily, target: &LieAlgebra, map: &[Vec<Rational>]) -> Result<SubalgebraSpan, EmbedError> {
    let n = family.algebra.dim();
    if let Some(row) = map.iter().find(|r| r.len() != n) {
        return Err(EmbedError::Shape { got: row.len(), want: n });
    }
    let s = SubalgebraSpan::support(&family.algebra, map);
    if s.members.len() != target.dim() {
        return Err(EmbedError::Singular);
    }
    let square: Vec<Vec<Rational>> = map
        .iter()
        .map(|r| s.members.iter().map(|&j| r[j].clone()).collect())
        .collect();
    if invert_matrix(&square).is_none() {
        return Err(EmbedError::Singular);
    }
    if !closure_check(&s) {
        return Err(EmbedError::NotClosed);
    }
    Ok(s)
}

/// Solve `δ(φY) = (φ⊗φ)δ_h(Y)` for the parent parameters. Linear conditions
/// the target parameters must meet are reported in `forced`; a nonzero
/// constant among them means no member of the target family embeds.
pub fn match_sub_bialgebra(
    family: &BialgebraFamily,
    target: &LieAlgebra,
    target_delta: &Cocommutator,
    map: &[Vec<Rational>],
) -> Result<EmbeddingReport, EmbedError> {
    let s = check_map(family, target, map)?;
    let n = family.algebra.dim();
    let images = parent_images(family, map);
    let mut eqs = Vec::new();
    for (t, img) in images.iter().enumerate() {
        let diff = img - &push_wedge(&target_delta.rows[t], map, n);
        eqs.extend(diff.terms().map(|(_, c)| c.clone()));
    }
    let params: Vec<String> = family.parameters().into_iter().collect();
    let refs: Vec<&str> = params.iter().map(String::as_str).collect();
    let (bindings, bad) = linear_bindings(&eqs, &refs)?;

    let contradictions: Vec<PolyExpr> = bad.iter().filter(|p| p.as_constant().is_some()).cloned().collect();
    let target_params: Vec<String> = target_delta
        .rows
        .iter()
        .flat_map(|w| w.terms().flat_map(|(_, c)| c.symbol_names()))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let trefs: Vec<&str> = target_params.iter().map(String::as_str).collect();
    let (mut forced, more) = linear_bindings(&bad, &trefs)?;
    let mut contradictions = contradictions;
    contradictions.extend(more.into_iter().filter(|p| !p.is_zero()));
    let contradictions = dedup_polys(contradictions);

    let mut residual = Vec::new();
    for p in &family.constraints {
        residual.push(p.substitute(&bindings)?.substitute(&forced)?);
    }
    // constraints c·v^k on a target parameter force it to zero as well
    let red = reduce_constraints(&residual);
    for v in forced.values_mut() {
        *v = v.substitute(&red.forced)?;
    }
    forced.extend(red.forced);
    let residual = red.remaining;
    let free = params.into_iter().filter(|p| !bindings.contains_key(p)).collect();
    let r = match &family.r {
        Some(r) => Some(r.substitute(&bindings)?.substitute(&forced)?),
        None => None,
    };
    Ok(EmbeddingReport {
        subalgebra: s,
        bindings,
        forced,
        contradictions,
        residual,
        free,
        r,
    })
}

/// The parent r-matrix family realizing every embedded target bialgebra.
pub fn proposition_rmatrix(report: &EmbeddingReport) -> Result<RMatrixFamily, EmbedError> {
    let r = report.r.clone().ok_or(EmbedError::NoRMatrix)?;
    Ok(RMatrixFamily::new(&report.subalgebra.parent, r)?)
}

/// `δ` on the image of `φ`, written back in the target basis. Errors if some
/// `δ(φY)` leaves the image.
pub fn pull_back(
    parent: &LieAlgebra,
    delta: &Cocommutator,
    target: &LieAlgebra,
    map: &[Vec<Rational>],
) -> Result<Option<Cocommutator>, EmbedError> {
    let s = SubalgebraSpan::support(parent, map);
    let square: Vec<Vec<Rational>> = map
        .iter()
        .map(|r| s.members.iter().map(|&j| r[j].clone()).collect())
        .collect();
    let inv = invert_matrix(&square).ok_or(EmbedError::Singular)?;
    // ψ(X_{members[k]}) = Σ_t inv[k][t] Y_t
    let mut back = vec![vec![Rational::zero(); target.dim()]; parent.dim()];
    for (k, &j) in s.members.iter().enumerate() {
        back[j] = inv[k].clone();
    }
    let fam = BialgebraFamily {
        algebra: parent.clone(),
        delta: delta.clone(),
        constraints: Vec::new(),
        raw_count: 0,
        r: None,
    };
    let mut out = Cocommutator::zero(target.dim());
    for (t, img) in parent_images(&fam, map).into_iter().enumerate() {
        if img.terms().any(|(idx, _)| !idx.iter().all(|&j| s.contains(j))) {
            return Ok(None);
        }
        out.rows[t] = push_wedge(&img, &back, target.dim());
    }
    Ok(Some(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures as fx;
    use crate::symkernel::span_equal;

    fn general() -> BialgebraFamily {
        let (alg, r) = fx::rmatrix("general.rmat");
        BialgebraFamily::from_r(&alg, r).unwrap()
    }

    #[test]
    fn closure_of_generator_subsets() {
        let alg = fx::schrodinger();
        let span = |names: &[&str]| SubalgebraSpan::new(&alg, names).unwrap();
        assert!(closure_check(&span(&["D", "P", "K", "M"])));
        assert!(closure_check(&span(&["P", "K", "M"])));
        assert!(closure_check(&span(&["D", "H"])));
        assert!(!closure_check(&span(&["H", "C"])));
        assert!(!closure_check(&span(&["D", "P", "K"])));
    }

    #[test]
    fn whole_algebra_has_no_condition() {
        let fam = general();
        let all: Vec<&str> = fam.algebra.names().iter().map(String::as_str).collect();
        assert!(sub_bialgebra_condition(&fam, &SubalgebraSpan::new(&fam.algebra, &all).unwrap()).is_empty());
    }

    #[test]
    fn oscillator_and_gl2_survivors() {
        let fam = general();
        let s = SubalgebraSpan::new(&fam.algebra, &["D", "P", "K", "M"]).unwrap();
        let (_, surv) = sub_bialgebra_survivors(&fam, &s).unwrap();
        assert_eq!(surv, ["a1", "a3", "b1", "b3", "c1", "c2"]);
        let s = SubalgebraSpan::new(&fam.algebra, &["D", "H", "C", "M"]).unwrap();
        let (_, surv) = sub_bialgebra_survivors(&fam, &s).unwrap();
        assert_eq!(surv, ["a2", "a4", "b2", "b4", "c1", "c2", "c3"]);
        // c2 enters no condition
        assert!(sub_bialgebra_condition(&fam, &s).iter().all(|p| !p.symbol_names().contains("c2")));
    }

    #[test]
    fn identity_embedding_of_the_whole_family() {
        let fam = general();
        let alg = fam.algebra.clone();
        let id: Vec<Vec<Rational>> = (0..6)
            .map(|i| (0..6).map(|j| if i == j { Rational::from_integer(1.into()) } else { Rational::zero() }).collect())
            .collect();
        let rep = match_sub_bialgebra(&fam, &alg, &fam.delta, &id).unwrap();
        assert!(rep.embeds());
        assert_eq!(rep.free.len(), 15);
        assert!(span_equal(&rep.residual, &fam.constraints).equal);
    }

    #[test]
    fn contradiction_is_a_report() {
        // target δ(N) = N∧M cannot come from the oscillator copy: no parent
        // parameter produces D∧M in δ(D)
        let fam = general();
        let h4 = fx::algebra("h4");
        let mut t = Cocommutator::zero(4);
        t.rows[0] = Wedge::from_terms(4, 2, &[(vec![0, 3], PolyExpr::integer(1))]);
        let map = fx::generator_map("h4.map", &h4, &fam.algebra);
        let rep = match_sub_bialgebra(&fam, &h4, &t, &map).unwrap();
        assert!(!rep.embeds());
    }

    #[test]
    fn rejects_non_subalgebra_map() {
        let fam = general();
        let h4 = fx::algebra("h4");
        let mut map = fx::generator_map("h4.map", &h4, &fam.algebra);
        // Ap ↦ H makes the support {D,H,K,M}; [H,K] = -P leaves it
        map[1] = (0..6).map(|j| if j == 2 { Rational::from_integer(1.into()) } else { Rational::zero() }).collect();
        assert!(matches!(match_sub_bialgebra(&fam, &h4, &Cocommutator::zero(4), &map), Err(EmbedError::NotClosed)));
    }
}
