use std::collections::BTreeSet;

use num::Zero;

use super::{cojacobi_constraints, dedup_polys, delta_from_r, BialgebraError, Cocommutator};
use crate::liealg::{ad_wedge, schouten, LieAlgebra, LieError, Wedge};
use crate::symkernel::{in_span, Bindings, LinearSystem, PolyExpr};

/// A classical r-matrix with symbolic coefficients and its generated
/// co-Jacobi constraints.
#[derive(Clone, Debug)]
pub struct RMatrixFamily {
    pub r: Wedge,
    pub constraints: Vec<PolyExpr>,
    /// Number of nonzero co-Jacobi components before deduplication.
    pub raw_count: usize,
}

impl RMatrixFamily {
    pub fn new(alg: &LieAlgebra, r: Wedge) -> Result<Self, LieError> {
        let set = cojacobi_constraints(alg, &delta_from_r(alg, &r)?);
        Ok(RMatrixFamily {
            r,
            constraints: set.polys,
            raw_count: set.raw_count,
        })
    }

    pub fn parameters(&self) -> BTreeSet<String> {
        self.r.terms().flat_map(|(_, c)| c.symbol_names()).collect()
    }
}

/// A Lie algebra with a parameterized cocommutator and its constraints.
#[derive(Clone, Debug)]
pub struct BialgebraFamily {
    pub algebra: LieAlgebra,
    pub delta: Cocommutator,
    pub constraints: Vec<PolyExpr>,
    pub raw_count: usize,
    /// The generating r-matrix, when the family is coboundary.
    pub r: Option<Wedge>,
}

/// Outcome of [`BialgebraFamily::impose_primitive`].
#[derive(Clone, Debug)]
pub struct Specialization {
    pub family: BialgebraFamily,
    /// Parameters solved for, including those forced to zero.
    pub bindings: Bindings,
    /// Parameters still free.
    pub survivors: Vec<String>,
}

impl BialgebraFamily {
    pub fn from_r(alg: &LieAlgebra, r: Wedge) -> Result<Self, LieError> {
        let fam = RMatrixFamily::new(alg, r)?;
        Ok(BialgebraFamily {
            algebra: alg.clone(),
            delta: delta_from_r(alg, &fam.r)?,
            constraints: fam.constraints,
            raw_count: fam.raw_count,
            r: Some(fam.r),
        })
    }

    pub fn from_delta(alg: &LieAlgebra, delta: Cocommutator) -> Self {
        let set = cojacobi_constraints(alg, &delta);
        BialgebraFamily {
            algebra: alg.clone(),
            delta,
            constraints: set.polys,
            raw_count: set.raw_count,
            r: None,
        }
    }

    pub fn parameters(&self) -> BTreeSet<String> {
        self.delta
            .rows
            .iter()
            .flat_map(|w| w.terms().flat_map(|(_, c)| c.symbol_names()))
            .collect()
    }

    /// Substitute `bindings`. A constraint that becomes a nonzero constant
    /// makes the specialization infeasible; the first such one is reported.
    pub fn specialize(&self, bindings: &Bindings) -> Result<BialgebraFamily, BialgebraError> {
        let mut constraints = Vec::new();
        for p in &self.constraints {
            let q = p.substitute(bindings)?;
            if q.as_constant().is_some_and(|c| !c.is_zero()) {
                return Err(BialgebraError::Infeasible(p.to_string()));
            }
            constraints.push(q);
        }
        let r = match &self.r {
            Some(r) => Some(r.substitute(bindings)?),
            None => None,
        };
        Ok(BialgebraFamily {
            algebra: self.algebra.clone(),
            delta: self.delta.substitute(bindings)?,
            constraints: dedup_polys(constraints),
            raw_count: self.raw_count,
            r,
        })
    }

    /// Require `δ(X) = 0` for the named generators. The resulting linear
    /// conditions are solved for the later parameters in name order, then
    /// constraints of the form `c·v^k` force `v = 0`.
    pub fn impose_primitive(&self, generators: &[&str]) -> Result<Specialization, BialgebraError> {
        let mut eqs = Vec::new();
        for g in generators {
            let i = self.algebra.index(g)?;
            eqs.extend(self.delta.rows[i].terms().map(|(_, c)| c.clone()));
        }
        let params: Vec<String> = self.parameters().into_iter().collect();
        let refs: Vec<&str> = params.iter().map(String::as_str).collect();
        let (mut bindings, bad) = linear_bindings(&eqs, &refs)?;
        if let Some(p) = bad.first() {
            return Err(BialgebraError::Infeasible(p.to_string()));
        }
        let mut fam = self.specialize(&bindings)?;
        let red = reduce_constraints(&fam.constraints);
        if !red.forced.is_empty() {
            fam = fam.specialize(&red.forced)?;
            for v in bindings.values_mut() {
                *v = v.substitute(&red.forced)?;
            }
            bindings.extend(red.forced);
        }
        fam.constraints = red.remaining;
        let survivors = params
            .into_iter()
            .filter(|p| !bindings.contains_key(p))
            .collect();
        Ok(Specialization {
            family: fam,
            bindings,
            survivors,
        })
    }
}

/// Solve equations affine in `unknowns`. Elimination runs over the unknowns
/// in reverse order, so later names are expressed through earlier ones.
/// Returns the bindings and the nonzero inconsistent remainders.
pub fn linear_bindings(
    eqs: &[PolyExpr],
    unknowns: &[&str],
) -> Result<(Bindings, Vec<PolyExpr>), BialgebraError> {
    let reversed: Vec<&str> = unknowns.iter().rev().copied().collect();
    let (sys, rhs) = LinearSystem::from_equations(eqs, &reversed)?;
    let sol = sys.solve(&rhs);
    let free: Vec<usize> = sol.free_columns(reversed.len());
    let mut out = Bindings::new();
    for &p in &sol.pivots {
        let mut e = sol.particular[p].clone();
        for (v, &f) in sol.kernel.iter().zip(&free) {
            if !v[p].is_zero() {
                e.add_scaled(&PolyExpr::sym(reversed[f]), &v[p]);
            }
        }
        out.insert(reversed[p].to_string(), e);
    }
    Ok((out, sol.inconsistencies))
}

/// Constraints after repeatedly forcing `v = 0` wherever a constraint is a
/// single term in one symbol.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub forced: Bindings,
    pub remaining: Vec<PolyExpr>,
}

pub fn reduce_constraints(polys: &[PolyExpr]) -> Reduction {
    let mut forced = Bindings::new();
    let mut current = dedup_polys(polys.iter().cloned());
    loop {
        let hit = current.iter().find_map(|p| {
            let names = p.symbol_names();
            (p.len() == 1 && names.len() == 1).then(|| names.into_iter().next().unwrap())
        });
        let Some(v) = hit else { break };
        let b: Bindings = [(v.clone(), PolyExpr::zero())].into();
        current = dedup_polys(current.iter().map(|p| {
            p.substitute(&b).expect("zero binding of a polynomial symbol")
        }));
        forced.insert(v, PolyExpr::zero());
    }
    Reduction {
        forced,
        remaining: current,
    }
}

/// The coefficient of `schouten(r)` on the oriented triple `orientation`.
pub fn discriminant(alg: &LieAlgebra, r: &Wedge, orientation: &[usize; 3]) -> Result<PolyExpr, LieError> {
    Ok(schouten(alg, r)?.coefficient(orientation))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Label {
    Standard,
    NonStandard,
}

impl std::fmt::Display for Label {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Label::Standard => "standard",
            Label::NonStandard => "non-standard",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub schouten: Wedge,
    pub discriminant: PolyExpr,
    /// Present only when evaluated at a point.
    pub label: Option<Label>,
}

/// Discriminant of a family, and the label at `at` when given. The Schouten
/// bracket must be ad-invariant modulo the linear span of the constraints; a
/// point must satisfy the constraints.
pub fn classify(
    alg: &LieAlgebra,
    family: &RMatrixFamily,
    orientation: &[usize; 3],
    at: Option<&Bindings>,
) -> Result<Classification, BialgebraError> {
    let sch = schouten(alg, &family.r)?;
    for i in 0..alg.dim() {
        let res = ad_wedge(alg, &alg.basis(i), &sch)?;
        // invariance need only hold on the constraint variety
        let holds = res.terms().all(|(_, c)| in_span(c, &family.constraints).is_some());
        if !holds {
            return Err(BialgebraError::NotInvariant {
                generator: alg.name(i).to_string(),
                residual: res.display(alg),
            });
        }
    }
    let disc = sch.coefficient(orientation);
    let Some(point) = at else {
        return Ok(Classification {
            schouten: sch,
            discriminant: disc,
            label: None,
        });
    };
    for p in &family.constraints {
        let q = p.substitute(point)?;
        if q.as_constant().is_some_and(|c| !c.is_zero()) {
            return Err(BialgebraError::Infeasible(p.to_string()));
        }
    }
    let here = sch.substitute(point)?;
    let d = disc.substitute(point)?;
    let label = if here.is_zero() {
        Label::NonStandard
    } else if d.as_constant().is_some() && !d.is_zero() {
        Label::Standard
    } else {
        return Err(BialgebraError::Undetermined(d.to_string()));
    };
    Ok(Classification {
        schouten: here,
        discriminant: d,
        label: Some(label),
    })
}
