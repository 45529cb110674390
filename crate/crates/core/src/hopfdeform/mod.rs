//! Truncated quantum deformations of a Lie algebra.
//!
//! Elements are series over PBW words in a fixed generator order with
//! coefficients polynomial in the deformation symbols, truncated at total
//! deformation degree `N`. Relations rewrite `X_j X_i` (`j > i`) as
//! `X_i X_j + [X_j, X_i]`.

mod cases;
mod hopf;
mod tensor;

pub use cases::{case, case_names, Case};
pub use hopf::{
    antipode_solve, first_order_check, Coproduct, hopf_axiom_residuals, universal_r_check, AntipodeReport,
    AxiomResiduals, FirstOrderReport, RCheck,
};
pub use tensor::TensorSeries;

use std::cell::RefCell;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};

use num::One;
use thiserror::Error;

use crate::symkernel::{Bindings, KernelError, PolyExpr, Rational};
use crate::liealg::format_linear;

#[derive(Debug, Error)]
pub enum HopfError {
    #[error("malformed relation [{0}]: {1}")]
    Malformed(String, String),
    #[error("exponent {0} has a deformation-degree-0 part; its exponential does not truncate")]
    NonNilpotentExponent(String),
    #[error("unknown case `{0}`")]
    UnknownCase(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

/// A word of generator indices.
pub type Word = Vec<u8>;

/// Deformation symbols and the truncation order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Truncation {
    pub symbols: Vec<String>,
    pub order: i64,
}

impl Truncation {
    pub fn new(symbols: &[&str], order: i64) -> Self {
        Truncation {
            symbols: symbols.iter().map(|s| s.to_string()).collect(),
            order,
        }
    }

    fn names(&self) -> Vec<&str> {
        self.symbols.iter().map(String::as_str).collect()
    }

    pub fn apply(&self, p: &PolyExpr) -> PolyExpr {
        p.truncate(&self.names(), self.order)
    }

    pub fn degree(&self, p: &PolyExpr) -> Option<i64> {
        p.min_degree_in(&self.names())
    }

    pub fn part(&self, p: &PolyExpr, d: i64) -> PolyExpr {
        p.homogeneous_part(&self.names(), d)
    }
}

/// Linear combination of words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NCSeries {
    terms: BTreeMap<Word, PolyExpr>,
}

impl NCSeries {
    pub fn zero() -> Self {
        NCSeries::default()
    }

    pub fn one() -> Self {
        NCSeries::word(Vec::new())
    }

    pub fn word(w: Word) -> Self {
        let mut s = NCSeries::zero();
        s.add_term(w, &PolyExpr::one());
        s
    }

    pub fn gen(i: u8) -> Self {
        NCSeries::word(vec![i])
    }

    pub fn add_term(&mut self, w: Word, c: &PolyExpr) {
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

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &PolyExpr)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &[u8]) -> PolyExpr {
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

    pub fn scale(&self, c: &PolyExpr) -> Self {
        let mut out = NCSeries::zero();
        for (w, x) in &self.terms {
            out.add_term(w.clone(), &(x * c));
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
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
        let mut out = NCSeries::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), &t.apply(c));
        }
        out
    }

    /// Terms of deformation degree exactly `d`.
    pub fn part(&self, t: &Truncation, d: i64) -> Self {
        let mut out = NCSeries::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), &t.part(c, d));
        }
        out
    }

    pub fn substitute(&self, b: &Bindings) -> Result<Self, KernelError> {
        let mut out = NCSeries::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), &c.substitute(b)?);
        }
        Ok(out)
    }

    pub fn is_normal(&self) -> bool {
        self.terms.keys().all(|w| is_sorted(w))
    }

    pub fn display(&self, names: &[String]) -> String {
        let labels: Vec<String> = self.terms.keys().map(|w| display_word(w, names)).collect();
        format_linear(labels.into_iter().map(|l| if l.is_empty() { "1".into() } else { l }).zip(self.terms.values()))
    }
}

/// `X_a X_a X_b` as `X_a^2*X_b`; the empty word as `1`.
pub fn display_word(w: &[u8], names: &[String]) -> String {
    if w.is_empty() {
        return String::new();
    }
    let mut out: Vec<String> = Vec::new();
    let mut i = 0;
    while i < w.len() {
        let mut j = i;
        while j < w.len() && w[j] == w[i] {
            j += 1;
        }
        let n = &names[w[i] as usize];
        out.push(if j - i == 1 { n.clone() } else { format!("{n}^{}", j - i) });
        i = j;
    }
    out.join("*")
}

fn is_sorted(w: &[u8]) -> bool {
    w.windows(2).all(|p| p[0] <= p[1])
}

/// Generators, deformation symbols and commutation relations, truncated at
/// a fixed order. `rel[(j, i)]` for `j > i` is `X_j X_i − X_i X_j`.
#[derive(Clone, Debug)]
pub struct DeformedAlgebra {
    pub names: Vec<String>,
    pub truncation: Truncation,
    rel: BTreeMap<(u8, u8), NCSeries>,
}

impl DeformedAlgebra {
    /// From brackets `[X_a, X_b] = value` in either orientation; unlisted
    /// pairs commute. Right-hand sides are brought to normal form.
    pub fn new(names: &[&str], truncation: Truncation, brackets: Vec<(&str, &str, NCSeries)>) -> Result<Self, HopfError> {
        let idx = |n: &str| -> Result<u8, HopfError> {
            names
                .iter()
                .position(|x| *x == n)
                .map(|i| i as u8)
                .ok_or_else(|| HopfError::UnknownGenerator(n.to_string()))
        };
        let mut rel = BTreeMap::new();
        for (a, b, v) in brackets {
            let (i, j) = (idx(a)?, idx(b)?);
            let label = format!("{a},{b}");
            if i == j {
                return Err(HopfError::Malformed(label, "bracket of a generator with itself".into()));
            }
            let v = v.truncate(&truncation);
            // degree-0 words of length ≥ 2 would not terminate
            if let Some((w, _)) = v.part(&truncation, 0).terms().find(|(w, _)| w.len() >= 2) {
                return Err(HopfError::Malformed(label, format!("classical part contains the word {}", display_word(w, &names.iter().map(|s| s.to_string()).collect::<Vec<_>>()))));
            }
            if v.terms().any(|(_, c)| truncation.degree(c).is_some_and(|d| d < 0)) {
                return Err(HopfError::Malformed(label, "negative deformation degree".into()));
            }
            let (key, v) = if i > j { ((i, j), v) } else { ((j, i), v.scale(&-PolyExpr::one())) };
            if rel.insert(key, v).is_some() {
                return Err(HopfError::Malformed(label, "given twice".into()));
            }
        }
        let mut alg = DeformedAlgebra {
            names: names.iter().map(|s| s.to_string()).collect(),
            truncation,
            rel,
        };
        let normalized: BTreeMap<(u8, u8), NCSeries> = {
            let red = Reducer::new(&alg);
            alg.rel.iter().map(|(k, v)| (*k, red.nf(v))).collect()
        };
        alg.rel = normalized;
        Ok(alg)
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn order(&self) -> i64 {
        self.truncation.order
    }

    pub fn index(&self, name: &str) -> Result<u8, HopfError> {
        self.names
            .iter()
            .position(|x| x == name)
            .map(|i| i as u8)
            .ok_or_else(|| HopfError::UnknownGenerator(name.to_string()))
    }

    /// `X_a X_b − X_b X_a` in normal form.
    pub fn commutator(&self, a: u8, b: u8) -> NCSeries {
        match a.cmp(&b) {
            std::cmp::Ordering::Equal => NCSeries::zero(),
            std::cmp::Ordering::Greater => self.rel.get(&(a, b)).cloned().unwrap_or_default(),
            std::cmp::Ordering::Less => self.rel.get(&(b, a)).map(|v| v.scale(&-PolyExpr::one())).unwrap_or_default(),
        }
    }

    /// The same relations with one bracket replaced; used for perturbation.
    pub fn with_bracket(&self, a: &str, b: &str, v: NCSeries) -> Result<Self, HopfError> {
        let (i, j) = (self.index(a)?, self.index(b)?);
        let mut out = self.clone();
        let (key, v) = if i > j { ((i, j), v) } else { ((j, i), v.scale(&-PolyExpr::one())) };
        out.rel.insert(key, v);
        Ok(out)
    }

    /// Relations with `b` substituted into every coefficient.
    pub fn substitute(&self, b: &Bindings) -> Result<Self, KernelError> {
        let mut out = self.clone();
        for v in out.rel.values_mut() {
            *v = v.substitute(b)?;
        }
        Ok(out)
    }
}

/// Normal-form engine with a cache of reduced words.
pub struct Reducer<'a> {
    pub alg: &'a DeformedAlgebra,
    cache: RefCell<HashMap<Word, NCSeries>>,
}

impl<'a> Reducer<'a> {
    pub fn new(alg: &'a DeformedAlgebra) -> Self {
        Reducer {
            alg,
            cache: RefCell::new(HashMap::new()),
        }
    }

    fn t(&self) -> &Truncation {
        &self.alg.truncation
    }

    /// Normal form of a word: rewrite the leftmost descent first.
    pub fn nf_word(&self, w: &[u8]) -> NCSeries {
        if is_sorted(w) {
            return NCSeries::word(w.to_vec());
        }
        if let Some(s) = self.cache.borrow().get(w) {
            return s.clone();
        }
        let p = (0..w.len() - 1).find(|&p| w[p] > w[p + 1]).unwrap();
        let out = self.rewrite_at(w, p);
        self.cache.borrow_mut().insert(w.to_vec(), out.clone());
        out
    }

    /// Apply the relation at position `p` (a descent) and reduce the results.
    pub fn rewrite_at(&self, w: &[u8], p: usize) -> NCSeries {
        let mut swapped = w.to_vec();
        swapped.swap(p, p + 1);
        let mut out = self.nf_word(&swapped);
        for (u, c) in self.alg.commutator(w[p], w[p + 1]).terms() {
            let mut next = w[..p].to_vec();
            next.extend_from_slice(u);
            next.extend_from_slice(&w[p + 2..]);
            for (v, d) in self.nf_word(&next).terms() {
                out.add_term(v.clone(), &self.t().apply(&(c * d)));
            }
        }
        out
    }

    /// One step at `p` followed by reduction with `choose` picking among the
    /// descents of each intermediate word. No cache; used to test path
    /// independence.
    pub fn reduce_with(&self, w: &[u8], choose: &mut dyn FnMut(usize) -> usize) -> NCSeries {
        let descents: Vec<usize> = (0..w.len().saturating_sub(1)).filter(|&p| w[p] > w[p + 1]).collect();
        if descents.is_empty() {
            return NCSeries::word(w.to_vec());
        }
        let p = descents[choose(descents.len()) % descents.len()];
        let mut swapped = w.to_vec();
        swapped.swap(p, p + 1);
        let mut out = self.reduce_with(&swapped, choose);
        for (u, c) in self.alg.commutator(w[p], w[p + 1]).terms() {
            let mut next = w[..p].to_vec();
            next.extend_from_slice(u);
            next.extend_from_slice(&w[p + 2..]);
            for (v, d) in self.reduce_with(&next, choose).terms() {
                out.add_term(v.clone(), &self.t().apply(&(c * d)));
            }
        }
        out
    }

    pub fn nf(&self, s: &NCSeries) -> NCSeries {
        let mut out = NCSeries::zero();
        for (w, c) in s.terms() {
            for (v, d) in self.nf_word(w).terms() {
                out.add_term(v.clone(), &self.t().apply(&(c * d)));
            }
        }
        out
    }

    pub fn mul(&self, a: &NCSeries, b: &NCSeries) -> NCSeries {
        let mut out = NCSeries::zero();
        for (u, x) in a.terms() {
            for (v, y) in b.terms() {
                let c = self.t().apply(&(x * y));
                if c.is_zero() {
                    continue;
                }
                let mut w = u.clone();
                w.extend_from_slice(v);
                for (z, d) in self.nf_word(&w).terms() {
                    out.add_term(z.clone(), &self.t().apply(&(&c * d)));
                }
            }
        }
        out
    }

    pub fn commutator(&self, a: &NCSeries, b: &NCSeries) -> NCSeries {
        self.mul(a, b).sub(&self.mul(b, a))
    }
}

/// `e^{λ X_g} = Σ λ^n X_g^n / n!`, truncated. `λ` must have no
/// deformation-degree-0 part.
pub fn exp_gen(lambda: &PolyExpr, g: u8, t: &Truncation) -> Result<NCSeries, HopfError> {
    check_exponent(lambda, t)?;
    let mut out = NCSeries::one();
    let mut term = PolyExpr::one();
    let mut n = 0u32;
    loop {
        n += 1;
        term = t.apply(&(&term * lambda)).scale(&(Rational::one() / Rational::from_integer(n.into())));
        if term.is_zero() {
            return Ok(out);
        }
        out.add_term(vec![g; n as usize], &term);
    }
}

/// `(e^{λ X_g} − 1)/λ = Σ_{n≥1} λ^{n−1} X_g^n / n!`, truncated.
pub fn expm1_over(lambda: &PolyExpr, g: u8, t: &Truncation) -> Result<NCSeries, HopfError> {
    check_exponent(lambda, t)?;
    let mut out = NCSeries::zero();
    let mut term = PolyExpr::one();
    let mut n = 1u32;
    loop {
        if term.is_zero() {
            return Ok(out);
        }
        out.add_term(vec![g; n as usize], &term);
        n += 1;
        term = t.apply(&(&term * lambda)).scale(&(Rational::one() / Rational::from_integer(n.into())));
    }
}

fn check_exponent(lambda: &PolyExpr, t: &Truncation) -> Result<(), HopfError> {
    if lambda.is_zero() {
        return Ok(());
    }
    match t.degree(lambda) {
        Some(d) if d >= 1 => Ok(()),
        _ => Err(HopfError::NonNilpotentExponent(lambda.to_string())),
    }
}

/// Overlap residuals `X_k X_j X_i` for `i < j < k`: reduce after rewriting
/// the left pair and after rewriting the right pair; all zero means the
/// truncated relations are consistent.
pub fn diamond_check(alg: &DeformedAlgebra) -> Vec<((u8, u8, u8), NCSeries)> {
    let red = Reducer::new(alg);
    let n = alg.dim() as u8;
    let mut out = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let w = [k, j, i];
                let left = red.rewrite_at(&w, 0);
                let right = red.rewrite_at(&w, 1);
                out.push(((i, j, k), left.sub(&right)));
            }
        }
    }
    out
}
