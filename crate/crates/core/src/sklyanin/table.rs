use std::collections::BTreeMap;

use super::{coord, invariant_fields, partial, Side, COORDS, PAIRING};
use crate::bialgebra::Cocommutator;
use crate::liealg::{LieAlgebra, Wedge};
use crate::symkernel::{Bindings, PolyExpr};

/// Brackets `{q_a, q_b}` of the six coordinates, stored for `a < b` in
/// [`COORDS`] order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoissonTable {
    entries: BTreeMap<(usize, usize), PolyExpr>,
}

fn coord_index(q: &str) -> usize {
    COORDS.iter().position(|c| *c == q).unwrap_or_else(|| panic!("no coordinate {q}"))
}

impl PoissonTable {
    pub fn zero() -> Self {
        PoissonTable { entries: BTreeMap::new() }
    }

    /// From `((q_a, q_b), value)` entries in any orientation; unlisted
    /// pairs are zero.
    pub fn from_entries<'a>(entries: impl IntoIterator<Item = ((&'a str, &'a str), PolyExpr)>) -> Self {
        let mut t = PoissonTable::zero();
        for ((a, b), v) in entries {
            t.set(coord_index(a), coord_index(b), v);
        }
        t
    }

    pub fn set(&mut self, a: usize, b: usize, v: PolyExpr) {
        assert_ne!(a, b, "diagonal bracket");
        let (key, v) = if a < b { ((a, b), v) } else { ((b, a), -v) };
        if v.is_zero() {
            self.entries.remove(&key);
        } else {
            self.entries.insert(key, v);
        }
    }

    /// `{q_a, q_b}`, antisymmetric.
    pub fn get(&self, a: usize, b: usize) -> PolyExpr {
        match a.cmp(&b) {
            std::cmp::Ordering::Equal => PolyExpr::zero(),
            std::cmp::Ordering::Less => self.entries.get(&(a, b)).cloned().unwrap_or_default(),
            std::cmp::Ordering::Greater => -self.entries.get(&(b, a)).cloned().unwrap_or_default(),
        }
    }

    pub fn by_name(&self, a: &str, b: &str) -> PolyExpr {
        self.get(coord_index(a), coord_index(b))
    }

    /// Nonzero entries `((q_a, q_b), value)` with `a < b`.
    pub fn nonzero(&self) -> impl Iterator<Item = ((&'static str, &'static str), &PolyExpr)> {
        self.entries.iter().map(|(&(a, b), v)| ((COORDS[a], COORDS[b]), v))
    }

    /// `{f, g} = Σ_{a,b} ∂_a f ∂_b g {q_a, q_b}`.
    pub fn bracket(&self, f: &PolyExpr, g: &PolyExpr) -> PolyExpr {
        let df: Vec<PolyExpr> = COORDS.iter().map(|q| partial(f, q)).collect();
        let dg: Vec<PolyExpr> = COORDS.iter().map(|q| partial(g, q)).collect();
        let mut acc = PolyExpr::zero();
        for (&(a, b), v) in &self.entries {
            let cross = &(&df[a] * &dg[b]) - &(&df[b] * &dg[a]);
            if !cross.is_zero() {
                acc += &cross * v;
            }
        }
        acc
    }

    pub fn substitute(&self, b: &Bindings) -> Result<Self, crate::symkernel::KernelError> {
        let mut out = PoissonTable::zero();
        for (&(i, j), v) in &self.entries {
            out.set(i, j, v.substitute(b)?);
        }
        Ok(out)
    }

    /// Entries that differ from `other`, as `((q_a, q_b), self − other)`.
    pub fn diff(&self, other: &PoissonTable) -> Vec<((&'static str, &'static str), PolyExpr)> {
        let mut out = Vec::new();
        for a in 0..6 {
            for b in (a + 1)..6 {
                let d = &self.get(a, b) - &other.get(a, b);
                if !d.is_zero() {
                    out.push(((COORDS[a], COORDS[b]), d));
                }
            }
        }
        out
    }
}

/// `{q_a, q_b} = Σ_{i<j} r^{ij}(L_i^a L_j^b − L_j^a L_i^b − R_i^a R_j^b + R_j^a R_i^b)`
/// where `L_i^a = X^L_i q_a` and `r = Σ_{i<j} r^{ij} X_i∧X_j`.
pub fn sklyanin_table(alg: &LieAlgebra, r: &Wedge) -> PoissonTable {
    let left = invariant_fields(alg, Side::Left);
    let right = invariant_fields(alg, Side::Right);
    let mut t = PoissonTable::zero();
    for a in 0..6 {
        for b in (a + 1)..6 {
            let mut acc = PolyExpr::zero();
            for (idx, c) in r.terms() {
                let (i, j) = (idx[0], idx[1]);
                let (l, rr) = (&left, &right);
                let s = &(&(&l[i].0[a] * &l[j].0[b]) - &(&l[j].0[a] * &l[i].0[b]))
                    - &(&(&rr[i].0[a] * &rr[j].0[b]) - &(&rr[j].0[a] * &rr[i].0[b]));
                if !s.is_zero() {
                    acc += c * &s;
                }
            }
            t.set(a, b, acc);
        }
    }
    t
}

/// First-order part of `f` at the identity, with `E = 1 + d + O(d²)`. The
/// result is linear in the coordinates, `d` written as the symbol `d`.
pub fn linear_part(f: &PolyExpr) -> PolyExpr {
    let at_one: Bindings = [("E".to_string(), PolyExpr::one())].into();
    let d = PolyExpr::sym("d");
    let ef = f.euler_derivative("E").substitute(&at_one).expect("E = 1 is a unit");
    let f1 = f.substitute(&at_one).expect("E = 1 is a unit");
    let full = &f1 + &(&d * &ef);
    let names: Vec<&str> = COORDS.to_vec();
    full.homogeneous_part(&names, 1)
}

#[derive(Clone, Debug)]
pub struct Linearization {
    /// `{q_a, q_b}` to first order: `((q_a, q_b), Σ_c F_c^{ab} q_c)`.
    pub linear: Vec<((&'static str, &'static str), PolyExpr)>,
    /// Pairs whose linear part disagrees with `δ`, as `(pair, linear − dual)`.
    pub mismatches: Vec<((&'static str, &'static str), PolyExpr)>,
    /// Constant terms at the identity; must all vanish.
    pub constant_terms: Vec<((&'static str, &'static str), PolyExpr)>,
}

impl Linearization {
    pub fn matches(&self) -> bool {
        self.mismatches.is_empty() && self.constant_terms.is_empty()
    }
}

/// Compare the linear part of `t` with the dual of `delta`:
/// `{q_a, q_b}_1 = Σ_c F_c^{ab} q_c` where `δ(X_c) = Σ_{a<b} F_c^{ab} X_a∧X_b`
/// and coordinate `q` is paired with the generator it exponentiates.
pub fn linearize_table(t: &PoissonTable, alg: &LieAlgebra, delta: &Cocommutator) -> Linearization {
    let gen_of = |q: usize| -> usize {
        let name = PAIRING.iter().find(|(c, _)| *c == COORDS[q]).unwrap().1;
        alg.index(name).expect("Schrödinger generator")
    };
    let at_zero: Bindings = COORDS[1..]
        .iter()
        .map(|q| (q.to_string(), PolyExpr::zero()))
        .chain([("E".to_string(), PolyExpr::one())])
        .collect();
    let mut out = Linearization {
        linear: Vec::new(),
        mismatches: Vec::new(),
        constant_terms: Vec::new(),
    };
    for a in 0..6 {
        for b in (a + 1)..6 {
            let v = t.get(a, b);
            let c0 = v.substitute(&at_zero).expect("unit substitution");
            if !c0.is_zero() {
                out.constant_terms.push(((COORDS[a], COORDS[b]), c0));
            }
            let lin = linear_part(&v);
            let mut dual = PolyExpr::zero();
            for q in 0..6 {
                let f = delta.rows[gen_of(q)].coefficient(&[gen_of(a), gen_of(b)]);
                if !f.is_zero() {
                    let x = if COORDS[q] == "d" { PolyExpr::sym("d") } else { coord(COORDS[q]) };
                    dual += &f * &x;
                }
            }
            let d = &lin - &dual;
            if !d.is_zero() {
                out.mismatches.push(((COORDS[a], COORDS[b]), d));
            }
            out.linear.push(((COORDS[a], COORDS[b]), lin));
        }
    }
    out
}

/// `{{q_a,q_b},q_c} + {{q_b,q_c},q_a} + {{q_c,q_a},q_b}` for `a<b<c`.
#[derive(Clone, Debug)]
pub struct JacobiResidual {
    pub triple: (&'static str, &'static str, &'static str),
    pub residual: PolyExpr,
}

/// The 20 Jacobi residuals, in lexicographic triple order.
pub fn poisson_jacobi(t: &PoissonTable) -> Vec<JacobiResidual> {
    let mut triples = Vec::new();
    for a in 0..6 {
        for b in (a + 1)..6 {
            for c in (b + 1)..6 {
                triples.push((a, b, c));
            }
        }
    }
    // {F, q_c} = Σ_a ∂_a F {q_a, q_c}
    let with = |f: &PolyExpr, c: usize| -> PolyExpr {
        let mut acc = PolyExpr::zero();
        for (a, name) in COORDS.iter().enumerate() {
            if a == c {
                continue;
            }
            let df = partial(f, name);
            if !df.is_zero() {
                acc += &df * &t.get(a, c);
            }
        }
        acc
    };
    triples
        .iter()
        .map(|&(a, b, c)| {
            let r = &(&with(&t.get(a, b), c) + &with(&t.get(b, c), a)) + &with(&t.get(c, a), b);
            JacobiResidual {
                triple: (COORDS[a], COORDS[b], COORDS[c]),
                residual: r,
            }
        })
        .collect()
}
