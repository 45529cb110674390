use std::cell::RefCell;
use std::collections::HashMap;

use super::{DeformedAlgebra, NCSeries, Reducer, TensorSeries, Word};
use crate::bialgebra::delta_from_r;
use crate::liealg::{LieAlgebra, LieError, Wedge};
use crate::symkernel::PolyExpr;

/// Multiplicative extension of a coproduct table, with a word cache.
pub struct Coproduct<'a> {
    pub red: &'a Reducer<'a>,
    table: &'a [TensorSeries],
    cache: RefCell<HashMap<Word, TensorSeries>>,
}

impl<'a> Coproduct<'a> {
    pub fn new(red: &'a Reducer<'a>, table: &'a [TensorSeries]) -> Self {
        assert_eq!(table.len(), red.alg.dim(), "coproduct table size");
        Coproduct {
            red,
            table,
            cache: RefCell::new(HashMap::new()),
        }
    }

    pub fn word(&self, w: &[u8]) -> TensorSeries {
        match w.len() {
            0 => return TensorSeries::one(2),
            1 => return self.table[w[0] as usize].clone(),
            _ => {}
        }
        if let Some(t) = self.cache.borrow().get(w) {
            return t.clone();
        }
        let head = self.word(&w[..w.len() - 1]);
        let out = head.mul(&self.table[w[w.len() - 1] as usize], self.red);
        self.cache.borrow_mut().insert(w.to_vec(), out.clone());
        out
    }

    pub fn apply(&self, x: &NCSeries) -> TensorSeries {
        let mut out = TensorSeries::zero(2);
        for (w, c) in x.terms() {
            out = out.add(&self.word(w).scale(c));
        }
        out.truncate(&self.red.alg.truncation)
    }

    /// `(Δ⊗id)` (`slot = 0`) or `(id⊗Δ)` (`slot = 1`) on a degree-2 tensor.
    pub fn extend(&self, t: &TensorSeries, slot: usize) -> TensorSeries {
        let mut out = TensorSeries::zero(3);
        for (w, c) in t.terms() {
            for (v, d) in self.word(&w[slot]).terms() {
                let x = if slot == 0 {
                    vec![v[0].clone(), v[1].clone(), w[1].clone()]
                } else {
                    vec![w[0].clone(), v[0].clone(), v[1].clone()]
                };
                out.add_term(x, &self.red.alg.truncation.apply(&(c * d)));
            }
        }
        out
    }
}

fn counit_of_word(counit: &[PolyExpr], w: &[u8]) -> PolyExpr {
    w.iter().fold(PolyExpr::one(), |acc, &i| &acc * &counit[i as usize])
}

#[derive(Clone, Debug)]
pub struct AxiomResiduals {
    /// `Δ(X_j)Δ(X_i) − Δ(X_i)Δ(X_j) − Δ([X_j, X_i])` for `j > i`.
    pub homomorphism: Vec<((u8, u8), TensorSeries)>,
    /// `(Δ⊗id)Δ(X) − (id⊗Δ)Δ(X)`.
    pub coassociativity: Vec<(u8, TensorSeries)>,
    /// `(ε⊗id)Δ(X) − X` and `(id⊗ε)Δ(X) − X`.
    pub counit: Vec<(u8, NCSeries, NCSeries)>,
}

impl AxiomResiduals {
    pub fn homomorphism_holds(&self) -> bool {
        self.homomorphism.iter().all(|(_, r)| r.is_zero())
    }

    pub fn coassociativity_holds(&self) -> bool {
        self.coassociativity.iter().all(|(_, r)| r.is_zero())
    }

    pub fn counit_holds(&self) -> bool {
        self.counit.iter().all(|(_, l, r)| l.is_zero() && r.is_zero())
    }

    pub fn all_zero(&self) -> bool {
        self.homomorphism_holds() && self.coassociativity_holds() && self.counit_holds()
    }
}

pub fn hopf_axiom_residuals(alg: &DeformedAlgebra, table: &[TensorSeries], counit: &[PolyExpr]) -> AxiomResiduals {
    let red = Reducer::new(alg);
    let cop = Coproduct::new(&red, table);
    let n = alg.dim() as u8;
    let mut homomorphism = Vec::new();
    for j in 0..n {
        for i in 0..j {
            let (dj, di) = (&table[j as usize], &table[i as usize]);
            let lhs = dj.mul(di, &red).sub(&di.mul(dj, &red));
            homomorphism.push(((j, i), lhs.sub(&cop.apply(&alg.commutator(j, i)))));
        }
    }
    let coassociativity = (0..n)
        .map(|x| {
            let d = &table[x as usize];
            (x, cop.extend(d, 0).sub(&cop.extend(d, 1)))
        })
        .collect();
    let counit = (0..n)
        .map(|x| {
            let (mut left, mut right) = (NCSeries::zero(), NCSeries::zero());
            for (w, c) in table[x as usize].terms() {
                left.add_term(w[1].clone(), &(c * &counit_of_word(counit, &w[0])));
                right.add_term(w[0].clone(), &(c * &counit_of_word(counit, &w[1])));
            }
            (x, left.sub(&NCSeries::gen(x)), right.sub(&NCSeries::gen(x)))
        })
        .collect();
    AxiomResiduals {
        homomorphism,
        coassociativity,
        counit,
    }
}

#[derive(Clone, Debug)]
pub struct AntipodeReport {
    pub antipode: Vec<NCSeries>,
    /// `m∘(S⊗id)∘Δ(X) − ε(X)1` after the solve.
    pub left: Vec<NCSeries>,
    /// `m∘(id⊗S)∘Δ(X) − ε(X)1`, an independent check.
    pub right: Vec<NCSeries>,
    pub converged: bool,
}

impl AntipodeReport {
    pub fn verified(&self) -> bool {
        self.converged && self.left.iter().chain(&self.right).all(NCSeries::is_zero)
    }
}

fn antipode_word(red: &Reducer, s: &[NCSeries], w: &[u8]) -> NCSeries {
    w.iter().rev().fold(NCSeries::one(), |acc, &i| red.mul(&acc, &s[i as usize]))
}

fn antipode_residual(red: &Reducer, table: &[TensorSeries], counit: &[PolyExpr], s: &[NCSeries], x: usize, left: bool) -> NCSeries {
    let mut out = NCSeries::zero();
    for (w, c) in table[x].terms() {
        let prod = if left {
            red.mul(&antipode_word(red, s, &w[0]), &NCSeries::word(w[1].clone()))
        } else {
            red.mul(&NCSeries::word(w[0].clone()), &antipode_word(red, s, &w[1]))
        };
        out = out.add(&prod.scale(c));
    }
    let mut target = NCSeries::one();
    target = target.scale(&counit[x]);
    out.sub(&target).truncate(&red.alg.truncation)
}

/// Solve `m∘(S⊗id)∘Δ = ε` degree by degree starting from `S(X) = −X`;
/// each pass removes the lowest-degree residual.
pub fn antipode_solve(alg: &DeformedAlgebra, table: &[TensorSeries], counit: &[PolyExpr]) -> AntipodeReport {
    let red = Reducer::new(alg);
    let n = alg.dim();
    let mut s: Vec<NCSeries> = (0..n).map(|i| NCSeries::gen(i as u8).scale(&-PolyExpr::one())).collect();
    let mut converged = false;
    for _ in 0..(alg.order() + 3) {
        let res: Vec<NCSeries> = (0..n).map(|x| antipode_residual(&red, table, counit, &s, x, true)).collect();
        if res.iter().all(NCSeries::is_zero) {
            converged = true;
            break;
        }
        for (sx, r) in s.iter_mut().zip(&res) {
            *sx = sx.sub(r);
        }
    }
    let left = (0..n).map(|x| antipode_residual(&red, table, counit, &s, x, true)).collect();
    let right = (0..n).map(|x| antipode_residual(&red, table, counit, &s, x, false)).collect();
    AntipodeReport {
        antipode: s,
        left,
        right,
        converged,
    }
}

#[derive(Clone, Debug)]
pub struct FirstOrderReport {
    /// Per generator: degree-1 part of `Δ − σΔ` minus `δ(X)` as a tensor.
    pub residuals: Vec<(u8, TensorSeries)>,
}

impl FirstOrderReport {
    pub fn matches(&self) -> bool {
        self.residuals.iter().all(|(_, r)| r.is_zero())
    }
}

/// Compare the antisymmetrized first-order coproduct with `δ = delta_from_r(r)`.
pub fn first_order_check(alg: &DeformedAlgebra, table: &[TensorSeries], lie: &LieAlgebra, r: &Wedge) -> Result<FirstOrderReport, LieError> {
    let delta = delta_from_r(lie, r)?;
    let to_alg = |i: usize| -> u8 { alg.index(lie.name(i)).expect("generator present in both algebras") };
    let mut residuals = Vec::new();
    for x in 0..alg.dim() as u8 {
        let d = &table[x as usize];
        let anti = d.sub(&d.flip()).part(&alg.truncation, 1);
        let lie_x = lie.index(&alg.names[x as usize])?;
        let mut want = TensorSeries::zero(2);
        for (idx, c) in delta.row(lie_x).terms() {
            let (a, b) = (to_alg(idx[0]), to_alg(idx[1]));
            want.add_term(vec![vec![a], vec![b]], c);
            want.add_term(vec![vec![b], vec![a]], &-c.clone());
        }
        residuals.push((x, anti.sub(&want)));
    }
    Ok(FirstOrderReport { residuals })
}

#[derive(Clone, Debug)]
pub struct RCheck {
    /// `R·Δ(X) − σΔ(X)·R` per generator.
    pub intertwining: Vec<(u8, TensorSeries)>,
    /// `σ(R)·R − 1⊗1`.
    pub triangularity: TensorSeries,
    /// `R₁₂R₁₃R₂₃ − R₂₃R₁₃R₁₂`.
    pub qybe: TensorSeries,
}

impl RCheck {
    pub fn intertwines(&self) -> bool {
        self.intertwining.iter().all(|(_, r)| r.is_zero())
    }

    pub fn all_zero(&self) -> bool {
        self.intertwines() && self.triangularity.is_zero() && self.qybe.is_zero()
    }
}

pub fn universal_r_check(alg: &DeformedAlgebra, table: &[TensorSeries], r: &TensorSeries) -> RCheck {
    let red = Reducer::new(alg);
    let intertwining = (0..alg.dim() as u8)
        .map(|x| {
            let d = &table[x as usize];
            (x, r.mul(d, &red).sub(&d.flip().mul(r, &red)))
        })
        .collect();
    let triangularity = r.flip().mul(r, &red).sub(&TensorSeries::one(2));
    let (r12, r13, r23) = (r.leg(0, 1), r.leg(0, 2), r.leg(1, 2));
    let lhs = r12.mul(&r13, &red).mul(&r23, &red);
    let rhs = r23.mul(&r13, &red).mul(&r12, &red);
    RCheck {
        intertwining,
        triangularity,
        qybe: lhs.sub(&rhs),
    }
}
