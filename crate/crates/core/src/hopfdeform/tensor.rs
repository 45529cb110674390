use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use super::{display_word, NCSeries, Reducer, Truncation, Word};
use crate::symkernel::{Bindings, KernelError, PolyExpr};
use crate::liealg::format_linear;

/// Element of the `k`-fold tensor power, as a combination of word tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorSeries {
    degree: usize,
    terms: BTreeMap<Vec<Word>, PolyExpr>,
}

impl TensorSeries {
    pub fn zero(degree: usize) -> Self {
        TensorSeries {
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// `1⊗…⊗1`.
    pub fn one(degree: usize) -> Self {
        let mut t = TensorSeries::zero(degree);
        t.add_term(vec![Vec::new(); degree], &PolyExpr::one());
        t
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn add_term(&mut self, w: Vec<Word>, c: &PolyExpr) {
        assert_eq!(w.len(), self.degree, "tensor degree");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c.clone();
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Word>, &PolyExpr)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &[Word]) -> PolyExpr {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `a ⊗ b`.
    pub fn otimes(a: &NCSeries, b: &NCSeries) -> Self {
        let mut t = TensorSeries::zero(2);
        for (u, x) in a.terms() {
            for (v, y) in b.terms() {
                t.add_term(vec![u.clone(), v.clone()], &(x * y));
            }
        }
        t
    }

    pub fn scale(&self, c: &PolyExpr) -> Self {
        let mut out = TensorSeries::zero(self.degree);
        for (w, x) in &self.terms {
            out.add_term(w.clone(), &(x * c));
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree, "tensor degree");
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-PolyExpr::one()))
    }

    pub fn truncate(&self, t: &Truncation) -> Self {
        let mut out = TensorSeries::zero(self.degree);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), &t.apply(c));
        }
        out
    }

    pub fn part(&self, t: &Truncation, d: i64) -> Self {
        let mut out = TensorSeries::zero(self.degree);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), &t.part(c, d));
        }
        out
    }

    pub fn substitute(&self, b: &Bindings) -> Result<Self, KernelError> {
        let mut out = TensorSeries::zero(self.degree);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), &c.substitute(b)?);
        }
        Ok(out)
    }

    /// Permute the factors: factor `k` of the result is factor `perm[k]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.degree);
        let mut out = TensorSeries::zero(self.degree);
        for (w, c) in &self.terms {
            out.add_term(perm.iter().map(|&k| w[k].clone()).collect(), c);
        }
        out
    }

    /// The flip `σ(a⊗b) = b⊗a`.
    pub fn flip(&self) -> Self {
        self.permute(&[1, 0])
    }

    /// Place a degree-2 element in slots `(i, j)` of a degree-3 tensor, with
    /// `1` in the remaining slot.
    pub fn leg(&self, i: usize, j: usize) -> Self {
        assert_eq!(self.degree, 2);
        let mut out = TensorSeries::zero(3);
        for (w, c) in &self.terms {
            let mut slots = vec![Vec::new(); 3];
            slots[i] = w[0].clone();
            slots[j] = w[1].clone();
            out.add_term(slots, c);
        }
        out
    }

    /// Apply a linear map to one factor.
    pub fn map_factor(&self, k: usize, f: &mut dyn FnMut(&Word) -> NCSeries) -> Self {
        let mut out = TensorSeries::zero(self.degree);
        for (w, c) in &self.terms {
            for (v, d) in f(&w[k]).terms() {
                let mut x = w.clone();
                x[k] = v.clone();
                out.add_term(x, &(c * d));
            }
        }
        out
    }

    /// Factorwise product, reduced to normal form in every factor.
    pub fn mul(&self, other: &Self, red: &Reducer) -> Self {
        assert_eq!(self.degree, other.degree, "tensor degree");
        let t = &red.alg.truncation;
        let mut out = TensorSeries::zero(self.degree);
        for (u, x) in &self.terms {
            for (v, y) in &other.terms {
                let c = t.apply(&(x * y));
                if c.is_zero() {
                    continue;
                }
                // expand the product of the factor normal forms
                let mut acc: Vec<(Vec<Word>, PolyExpr)> = vec![(Vec::new(), c)];
                for k in 0..self.degree {
                    let mut w = u[k].clone();
                    w.extend_from_slice(&v[k]);
                    let f = red.nf_word(&w);
                    let mut next = Vec::new();
                    for (prefix, pc) in &acc {
                        for (z, d) in f.terms() {
                            let nc = t.apply(&(pc * d));
                            if nc.is_zero() {
                                continue;
                            }
                            let mut p = prefix.clone();
                            p.push(z.clone());
                            next.push((p, nc));
                        }
                    }
                    acc = next;
                }
                for (w, c) in acc {
                    out.add_term(w, &c);
                }
            }
        }
        out
    }

    pub fn display(&self, names: &[String]) -> String {
        let labels = self.terms.keys().map(|w| {
            let factors: Vec<String> = w
                .iter()
                .map(|x| if x.is_empty() { "1".to_string() } else { display_word(x, names) })
                .collect();
            factors.join("⊗")
        });
        format_linear(labels.zip(self.terms.values()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flip_and_legs() {
        let a = TensorSeries::otimes(&NCSeries::gen(0), &NCSeries::gen(1));
        assert_eq!(a.flip().coefficient(&[vec![1], vec![0]]), PolyExpr::one());
        assert_eq!(a.flip().flip(), a);
        let l = a.leg(0, 2);
        assert_eq!(l.coefficient(&[vec![0], vec![], vec![1]]), PolyExpr::one());
        let l = a.leg(2, 0);
        assert_eq!(l.coefficient(&[vec![1], vec![], vec![0]]), PolyExpr::one());
    }
}
