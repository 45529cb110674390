//! Dense tensors of degree 2 and 3 and their antisymmetric (wedge) counterparts.
//!
//! The wedge basis is normalized without factorials: `X∧Y = X⊗Y − Y⊗X` and
//! `X∧Y∧Z = Σ_σ sgn(σ) X_σ1⊗X_σ2⊗X_σ3`.

use std::collections::BTreeMap;

use num::Zero;

use super::{format_linear, AlgElement, LieAlgebra, LieError};
use crate::symkernel::{Bindings, KernelError, PolyExpr, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor {
    dim: usize,
    degree: usize,
    coeffs: Vec<PolyExpr>,
}

impl Tensor {
    pub fn zero(dim: usize, degree: usize) -> Self {
        Tensor {
            dim,
            degree,
            coeffs: vec![PolyExpr::zero(); dim.pow(degree as u32)],
        }
    }

    pub fn from_coeffs(dim: usize, degree: usize, coeffs: Vec<PolyExpr>) -> Self {
        assert_eq!(coeffs.len(), dim.pow(degree as u32));
        Tensor { dim, degree, coeffs }
    }

    /// Pure tensor `X_{i1} ⊗ ... ⊗ X_{ik}`.
    pub fn basis(dim: usize, idx: &[usize]) -> Self {
        let mut t = Tensor::zero(dim, idx.len());
        t.set(idx, PolyExpr::one());
        t
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    fn offset(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.degree);
        idx.iter().fold(0, |acc, &i| acc * self.dim + i)
    }

    fn unoffset(&self, mut off: usize) -> Vec<usize> {
        let mut idx = vec![0; self.degree];
        for slot in idx.iter_mut().rev() {
            *slot = off % self.dim;
            off /= self.dim;
        }
        idx
    }

    pub fn get(&self, idx: &[usize]) -> &PolyExpr {
        &self.coeffs[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], v: PolyExpr) {
        let o = self.offset(idx);
        self.coeffs[o] = v;
    }

    pub fn add_at(&mut self, idx: &[usize], v: &PolyExpr) {
        let o = self.offset(idx);
        self.coeffs[o] += v;
    }

    /// Nonzero entries with their index tuples.
    pub fn entries(&self) -> impl Iterator<Item = (Vec<usize>, &PolyExpr)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(o, c)| (self.unoffset(o), c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(PolyExpr::is_zero)
    }

    pub fn scale(&self, c: &PolyExpr) -> Self {
        Tensor {
            dim: self.dim,
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn substitute(&self, b: &Bindings) -> Result<Self, KernelError> {
        Ok(Tensor {
            dim: self.dim,
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|x| x.substitute(b)).collect::<Result<_, _>>()?,
        })
    }

    /// Tensor product.
    pub fn otimes(&self, other: &Tensor) -> Tensor {
        assert_eq!(self.dim, other.dim);
        let mut out = Tensor::zero(self.dim, self.degree + other.degree);
        for (i, a) in self.entries() {
            for (j, b) in other.entries() {
                let idx: Vec<usize> = i.iter().chain(j.iter()).copied().collect();
                out.add_at(&idx, &(a * b));
            }
        }
        out
    }

    /// Swap the two factors of a degree-2 tensor.
    pub fn flip(&self) -> Tensor {
        assert_eq!(self.degree, 2);
        let mut out = Tensor::zero(self.dim, 2);
        for (i, c) in self.entries() {
            out.set(&[i[1], i[0]], c.clone());
        }
        out
    }

    pub fn from_element(x: &AlgElement) -> Tensor {
        Tensor::from_coeffs(x.0.len(), 1, x.0.clone())
    }

    /// Linear combination of named pure tensors, e.g. `2*M⊗M`.
    pub fn display(&self, alg: &LieAlgebra) -> String {
        format_linear(self.entries().map(|(idx, c)| {
            let label: Vec<&str> = idx.iter().map(|&i| alg.name(i)).collect();
            (label.join("@"), c)
        }))
    }
}

impl<'a> std::ops::Add<&'a Tensor> for &'a Tensor {
    type Output = Tensor;
    fn add(self, rhs: &Tensor) -> Tensor {
        assert_eq!((self.dim, self.degree), (rhs.dim, rhs.degree));
        Tensor {
            dim: self.dim,
            degree: self.degree,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> std::ops::Sub<&'a Tensor> for &'a Tensor {
    type Output = Tensor;
    fn sub(self, rhs: &Tensor) -> Tensor {
        assert_eq!((self.dim, self.degree), (rhs.dim, rhs.degree));
        Tensor {
            dim: self.dim,
            degree: self.degree,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

/// Sign of the permutation sorting `idx`, with the sorted tuple. `None` on repeats.
pub(crate) fn sort_sign(idx: &[usize]) -> Option<(i64, Vec<usize>)> {
    let mut v = idx.to_vec();
    let mut sign = 1;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            } else if v[j] == v[j + 1] {
                return None;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((sign, v))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Antisymmetric element stored on strictly increasing index tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wedge {
    dim: usize,
    degree: usize,
    coeffs: BTreeMap<Vec<usize>, PolyExpr>,
}

impl Wedge {
    pub fn zero(dim: usize, degree: usize) -> Self {
        Wedge {
            dim,
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Add `c · X_{i1}∧...∧X_{ik}` for an arbitrary index order.
    pub fn add_term(&mut self, idx: &[usize], c: &PolyExpr) {
        assert_eq!(idx.len(), self.degree);
        let Some((sign, sorted)) = sort_sign(idx) else {
            return;
        };
        let e = self.coeffs.entry(sorted.clone()).or_default();
        e.add_scaled(c, &Rational::from_integer(sign.into()));
        if e.is_zero() {
            self.coeffs.remove(&sorted);
        }
    }

    pub fn from_terms(dim: usize, degree: usize, terms: &[(Vec<usize>, PolyExpr)]) -> Self {
        let mut w = Wedge::zero(dim, degree);
        for (i, c) in terms {
            w.add_term(i, c);
        }
        w
    }

    /// Coefficient on `X_{i1}∧...∧X_{ik}` in the given orientation.
    pub fn coefficient(&self, idx: &[usize]) -> PolyExpr {
        match sort_sign(idx) {
            None => PolyExpr::zero(),
            Some((sign, sorted)) => {
                let c = self.coeffs.get(&sorted).cloned().unwrap_or_default();
                if sign < 0 {
                    -c
                } else {
                    c
                }
            }
        }
    }

    /// Nonzero coefficients on ordered tuples.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &PolyExpr)> {
        self.coeffs.iter()
    }

    /// All ordered tuples of this degree, in lexicographic order.
    pub fn basis_tuples(dim: usize, degree: usize) -> Vec<Vec<usize>> {
        fn rec(start: usize, dim: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if left == 0 {
                out.push(cur.clone());
                return;
            }
            for i in start..dim {
                cur.push(i);
                rec(i + 1, dim, left - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(0, dim, degree, &mut Vec::new(), &mut out);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &PolyExpr) -> Self {
        let mut w = Wedge::zero(self.dim, self.degree);
        for (i, v) in &self.coeffs {
            let p = v * c;
            if !p.is_zero() {
                w.coeffs.insert(i.clone(), p);
            }
        }
        w
    }

    pub fn substitute(&self, b: &Bindings) -> Result<Self, KernelError> {
        let mut w = Wedge::zero(self.dim, self.degree);
        for (i, v) in &self.coeffs {
            let p = v.substitute(b)?;
            if !p.is_zero() {
                w.coeffs.insert(i.clone(), p);
            }
        }
        Ok(w)
    }

    /// Expand with `X∧Y = X⊗Y − Y⊗X` (and the signed sum over permutations in degree 3).
    pub fn to_tensor(&self) -> Tensor {
        let mut t = Tensor::zero(self.dim, self.degree);
        let perms = permutations(self.degree);
        for (idx, c) in &self.coeffs {
            for p in &perms {
                let permuted: Vec<usize> = p.iter().map(|&k| idx[k]).collect();
                let (sign, _) = sort_sign(p).expect("permutation");
                t.add_at(&permuted, &c.scale(&Rational::from_integer(sign.into())));
            }
        }
        t
    }

    /// Inverse of [`Wedge::to_tensor`]; fails unless `t` is totally antisymmetric.
    pub fn from_tensor(t: &Tensor) -> Result<Self, LieError> {
        let mut w = Wedge::zero(t.dim(), t.degree());
        for tuple in Wedge::basis_tuples(t.dim(), t.degree()) {
            let c = t.get(&tuple);
            if !c.is_zero() {
                w.coeffs.insert(tuple, c.clone());
            }
        }
        if &w.to_tensor() != t {
            return Err(LieError::NotAntisymmetric);
        }
        Ok(w)
    }

    /// `c*X^Y + ...` with generator names from `alg`.
    pub fn display(&self, alg: &LieAlgebra) -> String {
        format_linear(self.coeffs.iter().map(|(idx, c)| {
            let label: Vec<&str> = idx.iter().map(|&i| alg.name(i)).collect();
            (label.join("^"), c)
        }))
    }

    /// Like [`Wedge::display`], but terms whose index set matches one of
    /// `orientations` are printed in that order with the matching sign.
    pub fn display_oriented(&self, alg: &LieAlgebra, orientations: &[Vec<usize>]) -> String {
        let items: Vec<(String, PolyExpr)> = self
            .coeffs
            .iter()
            .map(|(idx, c)| {
                let hit = orientations.iter().find_map(|o| match sort_sign(o) {
                    Some((sign, sorted)) if &sorted == idx => Some((o.clone(), sign)),
                    _ => None,
                });
                let (order, sign) = hit.unwrap_or_else(|| (idx.clone(), 1));
                let label: Vec<&str> = order.iter().map(|&i| alg.name(i)).collect();
                (label.join("^"), if sign < 0 { -c } else { c.clone() })
            })
            .collect();
        format_linear(items.iter().map(|(l, c)| (l.clone(), c)))
    }
}

impl<'a> std::ops::Add<&'a Wedge> for &'a Wedge {
    type Output = Wedge;
    fn add(self, rhs: &Wedge) -> Wedge {
        let mut w = self.clone();
        for (i, c) in &rhs.coeffs {
            w.add_term(i, c);
        }
        w
    }
}

impl<'a> std::ops::Sub<&'a Wedge> for &'a Wedge {
    type Output = Wedge;
    fn sub(self, rhs: &Wedge) -> Wedge {
        let mut w = self.clone();
        for (i, c) in &rhs.coeffs {
            w.add_term(i, &-c);
        }
        w
    }
}

/// Leibniz action of `ad_x` on a tensor of degree 2 or 3.
pub fn ad_tensor(alg: &LieAlgebra, x: &AlgElement, t: &Tensor) -> Result<Tensor, LieError> {
    let n = alg.dim();
    if t.degree() != 2 && t.degree() != 3 {
        return Err(LieError::UnsupportedDegree(t.degree()));
    }
    if x.0.len() != n || t.dim() != n {
        return Err(LieError::Dimension { expected: n, got: x.0.len().min(t.dim()) });
    }
    let mut out = Tensor::zero(n, t.degree());
    for (idx, c) in t.entries() {
        for slot in 0..idx.len() {
            for (m, xm) in x.0.iter().enumerate() {
                if xm.is_zero() {
                    continue;
                }
                for (k, f) in alg.structure(m, idx[slot]).iter().enumerate() {
                    if f.is_zero() {
                        continue;
                    }
                    let mut j = idx.clone();
                    j[slot] = k;
                    out.add_at(&j, &(xm * c).scale(f));
                }
            }
        }
    }
    Ok(out)
}

/// `ad_x` on a wedge element, computed directly on ordered tuples.
pub fn ad_wedge(alg: &LieAlgebra, x: &AlgElement, w: &Wedge) -> Result<Wedge, LieError> {
    let n = alg.dim();
    if w.degree() != 2 && w.degree() != 3 {
        return Err(LieError::UnsupportedDegree(w.degree()));
    }
    if x.0.len() != n || w.dim() != n {
        return Err(LieError::Dimension { expected: n, got: x.0.len().min(w.dim()) });
    }
    let mut out = Wedge::zero(n, w.degree());
    for (idx, c) in w.terms() {
        for slot in 0..idx.len() {
            for (m, xm) in x.0.iter().enumerate() {
                if xm.is_zero() {
                    continue;
                }
                for (k, f) in alg.structure(m, idx[slot]).iter().enumerate() {
                    if f.is_zero() {
                        continue;
                    }
                    let mut j = idx.clone();
                    j[slot] = k;
                    out.add_term(&j, &(xm * c).scale(f));
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::tests::schrodinger;
    use crate::symkernel::rat;
    use proptest::prelude::*;

    const D: usize = 0;
    const H: usize = 2;
    const K: usize = 3;
    const P: usize = 4;
    const M: usize = 5;

    #[test]
    fn ad_of_central_square_vanishes() {
        let s = schrodinger();
        let t = Tensor::basis(6, &[M, M]);
        assert!(ad_tensor(&s, &s.basis(D), &t).unwrap().is_zero());
    }

    #[test]
    fn ad_h_kills_kmp() {
        let s = schrodinger();
        let w = Wedge::from_terms(6, 3, &[(vec![K, M, P], PolyExpr::one())]);
        assert!(ad_wedge(&s, &s.basis(H), &w).unwrap().is_zero());
        assert!(ad_tensor(&s, &s.basis(H), &w.to_tensor()).unwrap().is_zero());
    }

    #[test]
    fn ad_d_on_p_tensor_k() {
        let s = schrodinger();
        let t = Tensor::basis(6, &[P, K]);
        assert!(ad_tensor(&s, &s.basis(D), &t).unwrap().is_zero());
        assert!(ad_tensor(&s, &s.basis(D), &Tensor::basis(6, &[P])).is_err());
    }

    #[test]
    fn wedge_normalization() {
        let w = Wedge::from_terms(6, 2, &[(vec![P, K], PolyExpr::one())]);
        assert_eq!(w.coefficient(&[K, P]), -PolyExpr::one());
        let t = w.to_tensor();
        assert_eq!(t.get(&[P, K]), &PolyExpr::one());
        assert_eq!(t.get(&[K, P]), &-PolyExpr::one());
        assert_eq!(Wedge::from_tensor(&t).unwrap(), w);
        let kmp = Wedge::from_terms(6, 3, &[(vec![K, M, P], PolyExpr::one())]);
        assert_eq!(kmp.coefficient(&[K, P, M]), -PolyExpr::one());
        assert_eq!(Wedge::from_tensor(&kmp.to_tensor()).unwrap(), kmp);
        assert!(Wedge::from_tensor(&Tensor::basis(6, &[P, K])).is_err());
    }

    #[test]
    fn oriented_display() {
        let s = schrodinger();
        let kmp = Wedge::from_terms(6, 3, &[(vec![K, M, P], PolyExpr::sym("a"))]);
        assert_eq!(kmp.display(&s), "-a*K^P^M");
        assert_eq!(kmp.display_oriented(&s, &[vec![K, M, P]]), "a*K^M^P");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn ad_is_a_derivation(
            x in proptest::collection::vec(-3i64..4, 6),
            a in proptest::collection::vec(-3i64..4, 6),
            b in proptest::collection::vec(-3i64..4, 6),
        ) {
            let s = schrodinger();
            let el = |v: &[i64]| AlgElement::from_rationals(&v.iter().map(|&c| rat(c)).collect::<Vec<_>>());
            let (x, a, b) = (el(&x), el(&a), el(&b));
            let ta = Tensor::from_element(&a);
            let tb = Tensor::from_element(&b);
            let lhs = ad_tensor(&s, &x, &ta.otimes(&tb)).unwrap();
            let xa = Tensor::from_element(&s.bracket(&x, &a).unwrap());
            let xb = Tensor::from_element(&s.bracket(&x, &b).unwrap());
            let rhs = &xa.otimes(&tb) + &ta.otimes(&xb);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn ad_commutes_with_wedge_expansion(
            x in proptest::collection::vec(-3i64..4, 6),
            c in proptest::collection::vec(-3i64..4, 15),
        ) {
            let s = schrodinger();
            let x = AlgElement::from_rationals(&x.iter().map(|&v| rat(v)).collect::<Vec<_>>());
            let tuples = Wedge::basis_tuples(6, 2);
            let terms: Vec<_> = tuples.into_iter().zip(c).map(|(t, v)| (t, PolyExpr::integer(v))).collect();
            let w = Wedge::from_terms(6, 2, &terms);
            let via_tensor = Wedge::from_tensor(&ad_tensor(&s, &x, &w.to_tensor()).unwrap()).unwrap();
            prop_assert_eq!(ad_wedge(&s, &x, &w).unwrap(), via_tensor);
        }
    }
}
