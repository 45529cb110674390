//! Lie algebras given by structure constants, with tensor and wedge calculus.

mod linear_map;
mod schouten;
mod tensor;

pub use linear_map::{apply_linear_map, LinearMap, MappedAlgebra};
pub use schouten::{schouten, schouten_full};
pub use tensor::{ad_tensor, ad_wedge, Tensor, Wedge};

use std::fmt;

use num::Zero;

use crate::symkernel::{Bindings, KernelError, LinearSystem, PolyExpr, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LieError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("bracket [{0},{1}] defined twice (antisymmetry conflict)")]
    Conflict(String, String),
    #[error("bracket of a generator with itself: [{0},{0}]")]
    SelfBracket(String),
    #[error("Jacobi identity fails on ({0},{1},{2})")]
    Jacobi(String, String, String),
    #[error("unsupported tensor degree {0}")]
    UnsupportedDegree(usize),
    #[error("singular linear map")]
    Singular,
    #[error("tensor is not antisymmetric")]
    NotAntisymmetric,
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

/// Finite-dimensional Lie algebra with named generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    names: Vec<String>,
    // consts[i][j][k] = c_{ij}^k, stored for all i,j
    consts: Vec<Vec<Vec<Rational>>>,
}

impl LieAlgebra {
    /// Build from brackets `[X_i, X_j] = Σ c_k X_k`. Each unordered pair may be
    /// given at most once, in either order.
    pub fn new(
        names: &[&str],
        brackets: &[(usize, usize, Vec<Rational>)],
    ) -> Result<Self, LieError> {
        let n = names.len();
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(LieError::DuplicateGenerator(a.to_string()));
            }
        }
        let mut consts = vec![vec![vec![Rational::zero(); n]; n]; n];
        let mut seen = vec![vec![false; n]; n];
        for (i, j, v) in brackets {
            let (i, j) = (*i, *j);
            if i >= n || j >= n {
                return Err(LieError::Dimension { expected: n, got: i.max(j) + 1 });
            }
            if v.len() != n {
                return Err(LieError::Dimension { expected: n, got: v.len() });
            }
            if i == j {
                return Err(LieError::SelfBracket(names[i].to_string()));
            }
            if seen[i][j] {
                return Err(LieError::Conflict(names[i].to_string(), names[j].to_string()));
            }
            seen[i][j] = true;
            seen[j][i] = true;
            consts[i][j] = v.clone();
            consts[j][i] = v.iter().map(|x| -x.clone()).collect();
        }
        Ok(LieAlgebra {
            names: names.iter().map(|s| s.to_string()).collect(),
            consts,
        })
    }

    /// Build from named brackets, e.g. `("D", "P", &[(-1, "P")])`.
    pub fn from_table(
        names: &[&str],
        table: &[(&str, &str, &[(Rational, &str)])],
    ) -> Result<Self, LieError> {
        let idx = |s: &str| {
            names
                .iter()
                .position(|n| *n == s)
                .ok_or_else(|| LieError::UnknownGenerator(s.to_string()))
        };
        let mut brackets = Vec::new();
        for (a, b, terms) in table {
            let mut v = vec![Rational::zero(); names.len()];
            for (c, g) in terms.iter() {
                v[idx(g)?] += c;
            }
            brackets.push((idx(a)?, idx(b)?, v));
        }
        LieAlgebra::new(names, &brackets)
    }

    /// Abelian algebra on generators `X1..Xn`.
    pub fn abelian(n: usize) -> Self {
        let names: Vec<String> = (1..=n).map(|i| format!("X{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        LieAlgebra::new(&refs, &[]).expect("abelian algebra")
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index(&self, name: &str) -> Result<usize, LieError> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| LieError::UnknownGenerator(name.to_string()))
    }

    /// `c_{ij}^k` for all `k`.
    pub fn structure(&self, i: usize, j: usize) -> &[Rational] {
        &self.consts[i][j]
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.consts[i][j][k]
    }

    pub fn basis(&self, i: usize) -> AlgElement {
        AlgElement::basis(self.dim(), i)
    }

    pub fn generator(&self, name: &str) -> Result<AlgElement, LieError> {
        Ok(self.basis(self.index(name)?))
    }

    pub fn bracket(&self, x: &AlgElement, y: &AlgElement) -> Result<AlgElement, LieError> {
        let n = self.dim();
        for e in [x, y] {
            if e.0.len() != n {
                return Err(LieError::Dimension { expected: n, got: e.0.len() });
            }
        }
        let mut out = vec![PolyExpr::zero(); n];
        for i in 0..n {
            if x.0[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y.0[j].is_zero() || i == j {
                    continue;
                }
                let xy = &x.0[i] * &y.0[j];
                for (k, c) in self.consts[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[k].add_scaled(&xy, c);
                    }
                }
            }
        }
        Ok(AlgElement(out))
    }

    /// `[[X_i,X_j],X_k] + cyclic` for every `i<j<k` where it is nonzero.
    pub fn jacobi_residual(&self) -> Vec<((usize, usize, usize), AlgElement)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    let (x, y, z) = (self.basis(i), self.basis(j), self.basis(k));
                    let b = |a: &AlgElement, b: &AlgElement| self.bracket(a, b).expect("dims");
                    let r = &(&b(&b(&x, &y), &z) + &b(&b(&y, &z), &x)) + &b(&b(&z, &x), &y);
                    if !r.is_zero() {
                        out.push(((i, j, k), r));
                    }
                }
            }
        }
        out
    }

    /// Error if the Jacobi identity fails, naming the first offending triple.
    pub fn check_jacobi(&self) -> Result<(), LieError> {
        match self.jacobi_residual().first() {
            None => Ok(()),
            Some(((i, j, k), _)) => Err(LieError::Jacobi(
                self.names[*i].clone(),
                self.names[*j].clone(),
                self.names[*k].clone(),
            )),
        }
    }

    /// Basis of `ad`-invariant tensors of the given degree (only 2 is supported).
    pub fn invariant_tensors(&self, degree: usize) -> Result<Vec<Tensor>, LieError> {
        if degree != 2 {
            return Err(LieError::UnsupportedDegree(degree));
        }
        let n = self.dim();
        let nn = n * n;
        // column (a,b) is the unknown t^{ab}; rows are components of ad_{X_m} t
        let mut matrix = Vec::with_capacity(n * nn);
        for m in 0..n {
            for row in 0..nn {
                let (p, q) = (row / n, row % n);
                let mut r = vec![Rational::zero(); nn];
                // (ad t)^{pq} = Σ_a c_{ma}^p t^{aq} + Σ_b c_{mb}^q t^{pb}
                for a in 0..n {
                    r[a * n + q] += &self.consts[m][a][p];
                    r[p * n + a] += &self.consts[m][a][q];
                }
                matrix.push(r);
            }
        }
        let ker = LinearSystem::unlabeled(matrix).nullspace();
        Ok(ker
            .into_iter()
            .map(|v| Tensor::from_coeffs(n, 2, v.into_iter().map(PolyExpr::constant).collect()))
            .collect())
    }

    /// Structure constants as bracket lines `[X,Y] = ...` for `i<j`, nonzero only.
    pub fn to_text(&self) -> String {
        let mut s = format!("generators: {}\n", self.names.join(", "));
        for i in 0..self.dim() {
            for j in (i + 1)..self.dim() {
                let v = AlgElement(self.consts[i][j].iter().cloned().map(PolyExpr::constant).collect());
                if !v.is_zero() {
                    s.push_str(&format!("[{},{}] = {}\n", self.names[i], self.names[j], v.display(self)));
                }
            }
        }
        s
    }
}

/// Element of the algebra with polynomial coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgElement(pub Vec<PolyExpr>);

impl AlgElement {
    pub fn zero(n: usize) -> Self {
        AlgElement(vec![PolyExpr::zero(); n])
    }

    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = vec![PolyExpr::zero(); n];
        v[i] = PolyExpr::one();
        AlgElement(v)
    }

    pub fn from_rationals(v: &[Rational]) -> Self {
        AlgElement(v.iter().cloned().map(PolyExpr::constant).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(PolyExpr::is_zero)
    }

    pub fn scale(&self, c: &PolyExpr) -> Self {
        AlgElement(self.0.iter().map(|x| x * c).collect())
    }

    pub fn substitute(&self, b: &Bindings) -> Result<Self, KernelError> {
        Ok(AlgElement(self.0.iter().map(|x| x.substitute(b)).collect::<Result<_, _>>()?))
    }

    /// `coeff*X + ...` with generator names from `alg`.
    pub fn display(&self, alg: &LieAlgebra) -> String {
        let names: Vec<&str> = alg.names().iter().map(String::as_str).collect();
        format_linear(self.0.iter().enumerate().map(|(i, c)| (names[i].to_string(), c)))
    }
}

impl<'a> std::ops::Add<&'a AlgElement> for &'a AlgElement {
    type Output = AlgElement;
    fn add(self, rhs: &AlgElement) -> AlgElement {
        AlgElement(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl<'a> std::ops::Sub<&'a AlgElement> for &'a AlgElement {
    type Output = AlgElement;
    fn sub(self, rhs: &AlgElement) -> AlgElement {
        AlgElement(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl std::ops::Neg for &AlgElement {
    type Output = AlgElement;
    fn neg(self) -> AlgElement {
        AlgElement(self.0.iter().map(|a| -a).collect())
    }
}

/// Print `Σ coeff * label`, wrapping multi-term coefficients in parentheses.
pub(crate) fn format_linear<'a>(items: impl Iterator<Item = (String, &'a PolyExpr)>) -> String {
    let mut out = String::new();
    for (label, c) in items {
        if c.is_zero() {
            continue;
        }
        let (neg, body) = if c.len() == 1 {
            let (_, v) = c.terms().next().unwrap();
            let neg = v < &Rational::zero();
            let abs = if neg { -c } else { c.clone() };
            let body = if abs == PolyExpr::one() {
                label.clone()
            } else if label == "1" {
                abs.to_string()
            } else {
                format!("{abs}*{label}")
            };
            (neg, body)
        } else {
            (false, if label == "1" { format!("({c})") } else { format!("({c})*{label}") })
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
