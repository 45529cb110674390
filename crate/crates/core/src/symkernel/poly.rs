//! Sparse multivariate Laurent polynomials over the rationals.
//!
//! A [`PolyExpr`] is a map from [`Monomial`] to a nonzero [`Rational`]. Monomials
//! are sorted lists of `(Symbol, exponent)` pairs; negative exponents are only
//! admitted on symbols flagged invertible. Terms are ordered graded
//! lexicographically on symbol names, which fixes the printed form.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::Arc;

use num::{BigInt, One, Signed, Zero};

use super::{KernelError, Rational};

/// A named indeterminate. Two symbols with the same name but different
/// invertibility flags are a context conflict.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol {
    name: Arc<str>,
    invertible: bool,
}

impl Symbol {
    pub fn new(name: &str) -> Self {
        Symbol {
            name: Arc::from(name),
            invertible: false,
        }
    }

    /// A symbol that may carry negative exponents.
    pub fn invertible(name: &str) -> Self {
        Symbol {
            name: Arc::from(name),
            invertible: true,
        }
    }

    pub fn with_flag(name: &str, invertible: bool) -> Self {
        Symbol {
            name: Arc::from(name),
            invertible,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_invertible(&self) -> bool {
        self.invertible
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// Product of symbol powers. Sorted by symbol, no zero exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Symbol, i32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn var(sym: Symbol, exp: i32) -> Result<Self, KernelError> {
        if exp < 0 && !sym.is_invertible() {
            return Err(KernelError::NegativeExponent(sym.name().to_string()));
        }
        if exp == 0 {
            return Ok(Monomial::one());
        }
        Ok(Monomial(vec![(sym, exp)]))
    }

    pub fn factors(&self) -> &[(Symbol, i32)] {
        &self.0
    }

    /// Total degree (sum of exponents; may be negative for Laurent monomials).
    pub fn degree(&self) -> i64 {
        self.0.iter().map(|(_, e)| *e as i64).sum()
    }

    /// Sum of exponents on the named symbols only.
    pub fn degree_in(&self, names: &[&str]) -> i64 {
        self.0
            .iter()
            .filter(|(s, _)| names.contains(&s.name()))
            .map(|(_, e)| *e as i64)
            .sum()
    }

    pub fn exponent(&self, name: &str) -> i32 {
        self.0
            .iter()
            .find(|(s, _)| s.name() == name)
            .map_or(0, |(_, e)| *e)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let e = self.0[i].1 + other.0[j].1;
                    if e != 0 {
                        out.push((self.0[i].0.clone(), e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// Monomial with the named symbol removed; returns it with its exponent.
    fn split_off(&self, name: &str) -> (Monomial, i32) {
        let mut rest = Vec::with_capacity(self.0.len());
        let mut exp = 0;
        for (s, e) in &self.0 {
            if s.name() == name {
                exp = *e;
            } else {
                rest.push((s.clone(), *e));
            }
        }
        (Monomial(rest), exp)
    }

    fn restrict(&self, names: &[&str]) -> (Monomial, Monomial) {
        let (inside, outside): (Vec<_>, Vec<_>) = self
            .0
            .iter()
            .cloned()
            .partition(|(s, _)| names.contains(&s.name()));
        (Monomial(inside), Monomial(outside))
    }
}

impl Ord for Monomial {
    /// Graded lexicographic order on symbol names.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.0.get(i), other.0.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some((_, e)), None) => return e.cmp(&0),
                (None, Some((_, e))) => return 0.cmp(e),
                (Some((s, e)), Some((t, f))) => match s.cmp(t) {
                    Ordering::Less => return e.cmp(&0),
                    Ordering::Greater => return 0.cmp(f),
                    Ordering::Equal => {
                        match e.cmp(f) {
                            Ordering::Equal => {}
                            ord => return ord,
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (n, (s, e)) in self.0.iter().enumerate() {
            if n > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Symbol-name substitution map.
pub type Bindings = BTreeMap<String, PolyExpr>;

/// Arithmetic selector for [`poly_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

/// Exact polynomial in canonical form: no zero coefficients, graded-lex term order.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PolyExpr {
    terms: BTreeMap<Monomial, Rational>,
}

impl PolyExpr {
    pub fn zero() -> Self {
        PolyExpr::default()
    }

    pub fn one() -> Self {
        PolyExpr::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = PolyExpr::zero();
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn integer(n: i64) -> Self {
        PolyExpr::constant(Rational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        PolyExpr::constant(Rational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn var(sym: Symbol) -> Self {
        PolyExpr::term(Rational::one(), Monomial(vec![(sym, 1)]))
    }

    /// Shorthand for a non-invertible variable.
    pub fn sym(name: &str) -> Self {
        PolyExpr::var(Symbol::new(name))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut p = PolyExpr::zero();
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
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

    /// The rational value if the polynomial has no symbols.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn constant_term(&self) -> Rational {
        self.terms.get(&Monomial::one()).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Leading term under graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter().map(|(s, _)| s.clone()))
            .collect()
    }

    /// Names of symbols present, sorted.
    pub fn symbol_names(&self) -> BTreeSet<String> {
        self.symbols().into_iter().map(|s| s.name().to_string()).collect()
    }

    pub fn contains_symbol(&self, name: &str) -> bool {
        self.terms.keys().any(|m| m.exponent(name) != 0)
    }

    pub fn scale(&self, c: &Rational) -> PolyExpr {
        if c.is_zero() {
            return PolyExpr::zero();
        }
        PolyExpr {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v * c))
                .collect(),
        }
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &PolyExpr, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (m, v) in &other.terms {
            self.add_term(m.clone(), v * c);
        }
    }

    pub fn pow(&self, n: u32) -> PolyExpr {
        let mut acc = PolyExpr::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// True for a nonzero rational times a product of invertible symbol powers.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .keys()
                .all(|m| m.0.iter().all(|(s, _)| s.is_invertible()))
    }

    pub fn unit_inverse(&self) -> Result<PolyExpr, KernelError> {
        if !self.is_unit() {
            return Err(KernelError::NotAUnit(self.to_string()));
        }
        let (m, c) = self.terms.iter().next().unwrap();
        let inv = Monomial(m.0.iter().map(|(s, e)| (s.clone(), -e)).collect());
        Ok(PolyExpr::term(c.recip(), inv))
    }

    /// Integer power, negative exponents allowed only for units.
    pub fn powi(&self, n: i64) -> Result<PolyExpr, KernelError> {
        if n >= 0 {
            Ok(self.pow(n as u32))
        } else {
            Ok(self.unit_inverse()?.pow((-n) as u32))
        }
    }

    /// Exact division by a unit.
    pub fn div_unit(&self, d: &PolyExpr) -> Result<PolyExpr, KernelError> {
        Ok(self * &d.unit_inverse()?)
    }

    /// Fails if one name is used with both invertibility flags.
    pub fn check_context(&self) -> Result<(), KernelError> {
        check_symbols(self.symbols().iter())
    }

    /// Simultaneous substitution of symbols by polynomials.
    pub fn substitute(&self, bindings: &Bindings) -> Result<PolyExpr, KernelError> {
        if bindings.is_empty() {
            return Ok(self.clone());
        }
        let mut out = PolyExpr::zero();
        let mut cache: BTreeMap<(String, i32), PolyExpr> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut kept = Monomial::one();
            let mut val = PolyExpr::constant(c.clone());
            for (s, e) in &m.0 {
                match bindings.get(s.name()) {
                    None => kept = kept.mul(&Monomial(vec![(s.clone(), *e)])),
                    Some(b) => {
                        let key = (s.name().to_string(), *e);
                        let power = match cache.get(&key) {
                            Some(p) => p.clone(),
                            None => {
                                let p = if *e < 0 && !b.is_unit() {
                                    return Err(KernelError::NotAUnit(format!(
                                        "{} bound to {} with exponent {}",
                                        s.name(),
                                        b,
                                        e
                                    )));
                                } else {
                                    b.powi(*e as i64)?
                                };
                                cache.insert(key, p.clone());
                                p
                            }
                        };
                        val = &val * &power;
                        if val.is_zero() {
                            break;
                        }
                    }
                }
            }
            if val.is_zero() {
                continue;
            }
            for (vm, vc) in val.terms {
                out.add_term(vm.mul(&kept), vc);
            }
        }
        out.check_context()?;
        Ok(out)
    }

    /// Partial derivative with respect to the named symbol.
    pub fn derivative(&self, name: &str) -> PolyExpr {
        let mut out = PolyExpr::zero();
        for (m, c) in &self.terms {
            let (rest, e) = m.split_off(name);
            if e == 0 {
                continue;
            }
            let sym = m.0.iter().find(|(s, _)| s.name() == name).unwrap().0.clone();
            let reduced = if e - 1 == 0 {
                rest
            } else {
                rest.mul(&Monomial(vec![(sym, e - 1)]))
            };
            out.add_term(reduced, c * Rational::from_integer(BigInt::from(e)));
        }
        out
    }

    /// `name * d/d(name)`: the Euler operator, used for `d/dd` acting through `E = e^d`.
    pub fn euler_derivative(&self, name: &str) -> PolyExpr {
        let mut out = PolyExpr::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(name);
            if e != 0 {
                out.add_term(m.clone(), c * Rational::from_integer(BigInt::from(e)));
            }
        }
        out
    }

    /// Maximum total degree over the named symbols (None for zero).
    pub fn degree_in(&self, names: &[&str]) -> Option<i64> {
        self.terms.keys().map(|m| m.degree_in(names)).max()
    }

    pub fn min_degree_in(&self, names: &[&str]) -> Option<i64> {
        self.terms.keys().map(|m| m.degree_in(names)).min()
    }

    /// Drop every term whose degree in `names` exceeds `max`.
    pub fn truncate(&self, names: &[&str], max: i64) -> PolyExpr {
        PolyExpr {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree_in(names) <= max)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Terms of degree exactly `d` in `names`.
    pub fn homogeneous_part(&self, names: &[&str], d: i64) -> PolyExpr {
        PolyExpr {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree_in(names) == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Group terms by their monomial in `names`; values are the cofactors.
    pub fn collect_in(&self, names: &[&str]) -> BTreeMap<Monomial, PolyExpr> {
        let mut out: BTreeMap<Monomial, PolyExpr> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (inside, outside) = m.restrict(names);
            out.entry(inside).or_default().add_term(outside, c.clone());
        }
        out
    }

    /// Split a polynomial that is affine in `unknowns` into per-unknown
    /// coefficients and the remainder free of them.
    pub fn split_linear(&self, unknowns: &[&str]) -> Result<(Vec<PolyExpr>, PolyExpr), KernelError> {
        let mut coeffs = vec![PolyExpr::zero(); unknowns.len()];
        let mut rest = PolyExpr::zero();
        for (m, c) in &self.terms {
            let d = m.degree_in(unknowns);
            let hits: Vec<_> = m
                .0
                .iter()
                .filter(|(s, _)| unknowns.contains(&s.name()))
                .collect();
            match (d, hits.len()) {
                (0, 0) => rest.add_term(m.clone(), c.clone()),
                (1, 1) => {
                    let name = hits[0].0.name();
                    let idx = unknowns.iter().position(|u| *u == name).unwrap();
                    let (cof, _) = m.split_off(name);
                    coeffs[idx].add_term(cof, c.clone());
                }
                _ => return Err(KernelError::NonLinear(self.to_string())),
            }
        }
        Ok((coeffs, rest))
    }

    /// Divide by the leading coefficient so that it becomes 1.
    pub fn monic(&self) -> PolyExpr {
        match self.leading() {
            None => PolyExpr::zero(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// Rational value of a polynomial with all symbols bound to rationals.
    pub fn evaluate(&self, values: &BTreeMap<String, Rational>) -> Result<Rational, KernelError> {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (s, e) in &m.0 {
                let v = values
                    .get(s.name())
                    .ok_or_else(|| KernelError::Unbound(s.name().to_string()))?;
                if *e < 0 {
                    if v.is_zero() {
                        return Err(KernelError::NotAUnit(s.name().to_string()));
                    }
                    t *= num::pow(v.recip(), (-e) as usize);
                } else {
                    t *= num::pow(v.clone(), *e as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }
}

fn check_symbols<'a>(syms: impl Iterator<Item = &'a Symbol>) -> Result<(), KernelError> {
    let mut seen: BTreeMap<&str, bool> = BTreeMap::new();
    for s in syms {
        if let Some(flag) = seen.insert(s.name(), s.is_invertible()) {
            if flag != s.is_invertible() {
                return Err(KernelError::Context(s.name().to_string()));
            }
        }
    }
    Ok(())
}

/// Checked arithmetic: rejects operands that disagree on a symbol's invertibility.
pub fn poly_arith(a: &PolyExpr, b: &PolyExpr, op: PolyOp) -> Result<PolyExpr, KernelError> {
    let sa = a.symbols();
    let sb = b.symbols();
    check_symbols(sa.iter().chain(sb.iter()))?;
    Ok(match op {
        PolyOp::Add => a + b,
        PolyOp::Sub => a - b,
        PolyOp::Mul => a * b,
    })
}

fn fmt_coeff(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for PolyExpr {
    /// Canonical form `coeff*sym1^e1*sym2^e2 + ...`, highest term first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if n == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                f.write_str(&fmt_coeff(&abs))?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", fmt_coeff(&abs))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PolyExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyExpr({self})")
    }
}

impl<'a> Add<&'a PolyExpr> for &'a PolyExpr {
    type Output = PolyExpr;
    fn add(self, rhs: &PolyExpr) -> PolyExpr {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for PolyExpr {
    type Output = PolyExpr;
    fn add(mut self, rhs: PolyExpr) -> PolyExpr {
        self += &rhs;
        self
    }
}

impl<'a> AddAssign<&'a PolyExpr> for PolyExpr {
    fn add_assign(&mut self, rhs: &PolyExpr) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl AddAssign for PolyExpr {
    fn add_assign(&mut self, rhs: PolyExpr) {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl<'a> Sub<&'a PolyExpr> for &'a PolyExpr {
    type Output = PolyExpr;
    fn sub(self, rhs: &PolyExpr) -> PolyExpr {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for PolyExpr {
    type Output = PolyExpr;
    fn sub(mut self, rhs: PolyExpr) -> PolyExpr {
        self -= &rhs;
        self
    }
}

impl<'a> SubAssign<&'a PolyExpr> for PolyExpr {
    fn sub_assign(&mut self, rhs: &PolyExpr) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl SubAssign for PolyExpr {
    fn sub_assign(&mut self, rhs: PolyExpr) {
        *self -= &rhs;
    }
}

impl<'a> Mul<&'a PolyExpr> for &'a PolyExpr {
    type Output = PolyExpr;
    fn mul(self, rhs: &PolyExpr) -> PolyExpr {
        let mut out = PolyExpr::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Mul for PolyExpr {
    type Output = PolyExpr;
    fn mul(self, rhs: PolyExpr) -> PolyExpr {
        &self * &rhs
    }
}

impl Neg for PolyExpr {
    type Output = PolyExpr;
    fn neg(mut self) -> PolyExpr {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl<'a> Neg for &'a PolyExpr {
    type Output = PolyExpr;
    fn neg(self) -> PolyExpr {
        -self.clone()
    }
}

impl From<Rational> for PolyExpr {
    fn from(c: Rational) -> Self {
        PolyExpr::constant(c)
    }
}

impl From<i64> for PolyExpr {
    fn from(n: i64) -> Self {
        PolyExpr::integer(n)
    }
}

impl std::iter::Sum for PolyExpr {
    fn sum<I: Iterator<Item = PolyExpr>>(iter: I) -> Self {
        let mut acc = PolyExpr::zero();
        for p in iter {
            acc += p;
        }
        acc
    }
}
