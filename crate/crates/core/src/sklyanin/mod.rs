//! The Schrödinger group in its 4×4 representation, its invariant vector
//! fields, and the Sklyanin bracket
//! `{f,g} = Σ r^{ij}(X^L_i f X^L_j g − X^R_i f X^R_j g)`.
//!
//! Coordinates are `d,h,p,k,c,m`. The coordinate `d` only enters through the
//! invertible symbol `E = e^d`, so `∂_d` acts as `E ∂/∂E`.

mod table;

pub use table::{
    linearize_table, poisson_jacobi, sklyanin_table, JacobiResidual, Linearization, PoissonTable,
};

use num::{One, Zero};

use crate::liealg::LieAlgebra;
use crate::symkernel::{rat, ratio, PolyExpr, Rational, Symbol};

/// Coordinate names in field-component order.
pub const COORDS: [&str; 6] = ["d", "h", "p", "k", "c", "m"];

/// The generator each coordinate exponentiates.
pub const PAIRING: [(&str, &str); 6] = [("d", "D"), ("h", "H"), ("p", "P"), ("k", "K"), ("c", "C"), ("m", "M")];

pub fn e_symbol() -> Symbol {
    Symbol::invertible("E")
}

/// `E^n`.
pub fn e_pow(n: i32) -> PolyExpr {
    PolyExpr::var(e_symbol())
        .powi(n as i64)
        .expect("E is invertible")
}

pub fn coord(name: &str) -> PolyExpr {
    if name == "d" {
        panic!("d enters only through E");
    }
    PolyExpr::sym(name)
}

/// `∂f/∂q` for a coordinate name.
pub fn partial(f: &PolyExpr, q: &str) -> PolyExpr {
    if q == "d" {
        f.euler_derivative("E")
    } else {
        f.derivative(q)
    }
}

pub type Matrix = Vec<Vec<PolyExpr>>;

pub fn zero_matrix() -> Matrix {
    vec![vec![PolyExpr::zero(); 4]; 4]
}

pub fn identity_matrix() -> Matrix {
    let mut m = zero_matrix();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = PolyExpr::one();
    }
    m
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let mut out = zero_matrix();
    for i in 0..4 {
        for j in 0..4 {
            let mut acc = PolyExpr::zero();
            for k in 0..4 {
                if !a[i][k].is_zero() && !b[k][j].is_zero() {
                    acc += &a[i][k] * &b[k][j];
                }
            }
            out[i][j] = acc;
        }
    }
    out
}

pub fn mat_sub(a: &Matrix, b: &Matrix) -> Matrix {
    (0..4)
        .map(|i| (0..4).map(|j| &a[i][j] - &b[i][j]).collect())
        .collect()
}

pub fn is_zero_matrix(m: &Matrix) -> bool {
    m.iter().flatten().all(PolyExpr::is_zero)
}

fn from_rational(m: &[Vec<Rational>]) -> Matrix {
    m.iter()
        .map(|r| r.iter().map(|x| PolyExpr::constant(x.clone())).collect())
        .collect()
}

fn minor(m: &Matrix, skip_r: usize, skip_c: usize) -> Matrix {
    m.iter()
        .enumerate()
        .filter(|(i, _)| *i != skip_r)
        .map(|(_, row)| {
            row.iter()
                .enumerate()
                .filter(|(j, _)| *j != skip_c)
                .map(|(_, x)| x.clone())
                .collect()
        })
        .collect()
}

pub fn determinant(m: &Matrix) -> PolyExpr {
    match m.len() {
        0 => PolyExpr::one(),
        1 => m[0][0].clone(),
        n => {
            let mut acc = PolyExpr::zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let term = &m[0][j] * &determinant(&minor(m, 0, j));
                if j % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }
    }
}

/// Adjugate; equals the inverse when the determinant is 1.
pub fn adjugate(m: &Matrix) -> Matrix {
    let n = m.len();
    let mut out = vec![vec![PolyExpr::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let c = determinant(&minor(m, j, i));
            out[i][j] = if (i + j) % 2 == 0 { c } else { -c };
        }
    }
    out
}

/// Representation matrices in the order of `alg`'s generators, which must be
/// named `D,C,H,K,P,M` in some order.
pub fn rep_matrices(alg: &LieAlgebra) -> Vec<Vec<Vec<Rational>>> {
    alg.names().iter().map(|n| rep_matrix(n)).collect()
}

/// The 4×4 matrix of a named generator. Entries are `(row, col)` from 1.
pub fn rep_matrix(name: &str) -> Vec<Vec<Rational>> {
    let entries: &[(usize, usize, i64)] = match name {
        "H" => &[(2, 3, 1)],
        "P" => &[(1, 3, 1), (2, 4, 1)],
        "K" => &[(1, 2, 1), (3, 4, -1)],
        "D" => &[(2, 2, -1), (3, 3, 1)],
        "C" => &[(3, 2, -1)],
        "M" => &[(1, 4, 2)],
        other => panic!("no representation matrix for {other}"),
    };
    let mut m = vec![vec![Rational::zero(); 4]; 4];
    for &(i, j, v) in entries {
        m[i - 1][j - 1] = rat(v);
    }
    m
}

/// `exp(t·N)` for nilpotent `N`.
fn exp_nilpotent(n: &[Vec<Rational>], t: &PolyExpr) -> Matrix {
    let n = from_rational(n);
    let mut out = identity_matrix();
    let mut power = identity_matrix();
    let mut tk = PolyExpr::one();
    let mut fact = Rational::one();
    for k in 1..=4 {
        power = mat_mul(&power, &n);
        if is_zero_matrix(&power) {
            break;
        }
        tk = &tk * t;
        fact *= rat(k);
        let c = tk.scale(&(Rational::one() / &fact));
        for i in 0..4 {
            for j in 0..4 {
                if !power[i][j].is_zero() {
                    out[i][j] += &power[i][j] * &c;
                }
            }
        }
    }
    out
}

/// `g = exp(mM) exp(pP) exp(kK) exp(hH) exp(cC) exp(dD)`.
pub fn group_element() -> Matrix {
    let mut g = identity_matrix();
    for (q, x) in [("m", "M"), ("p", "P"), ("k", "K"), ("h", "H"), ("c", "C")] {
        g = mat_mul(&g, &exp_nilpotent(&rep_matrix(x), &coord(q)));
    }
    // D is diagonal: exp(dD) = diag(1, E^-1, E, 1)
    let mut ed = identity_matrix();
    ed[1][1] = e_pow(-1);
    ed[2][2] = e_pow(1);
    mat_mul(&g, &ed)
}

/// The product [`group_element`] written out entrywise.
pub fn closed_form_group_element() -> Matrix {
    let (h, p, k, c, m) = (coord("h"), coord("p"), coord("k"), coord("c"), coord("m"));
    let (e, ei) = (e_pow(1), e_pow(-1));
    let pkh = &p + &(&k * &h);
    let o = PolyExpr::zero;
    let one = PolyExpr::one;
    vec![
        vec![one(), &(&k - &(&pkh * &c)) * &ei, &pkh * &e, m.scale(&rat(2)) - &p * &k],
        vec![o(), &(one() - &h * &c) * &ei, &h * &e, p.clone()],
        vec![o(), -(&c * &ei), e.clone(), -k.clone()],
        vec![o(), o(), o(), one()],
    ]
}

/// A derivation `Σ_q X^q ∂_q` on coordinate functions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorField(pub [PolyExpr; 6]);

impl VectorField {
    pub fn zero() -> Self {
        VectorField(Default::default())
    }

    pub fn apply(&self, f: &PolyExpr) -> PolyExpr {
        let mut acc = PolyExpr::zero();
        for (q, x) in COORDS.iter().zip(&self.0) {
            if !x.is_zero() {
                let df = partial(f, q);
                if !df.is_zero() {
                    acc += x * &df;
                }
            }
        }
        acc
    }

    pub fn apply_matrix(&self, m: &Matrix) -> Matrix {
        m.iter().map(|r| r.iter().map(|x| self.apply(x)).collect()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(PolyExpr::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        VectorField(self.0.clone().map(|x| x.scale(c)))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, b) in out.0.iter_mut().zip(&other.0) {
            *a += b.clone();
        }
        out
    }

    pub fn display(&self) -> String {
        let parts: Vec<String> = COORDS
            .iter()
            .zip(&self.0)
            .filter(|(_, x)| !x.is_zero())
            .map(|(q, x)| format!("({x})*∂{q}"))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// `[X,Y]^q = X(Y^q) − Y(X^q)`.
pub fn field_commutator(x: &VectorField, y: &VectorField) -> VectorField {
    let mut out = VectorField::zero();
    for q in 0..6 {
        out.0[q] = &x.apply(&y.0[q]) - &y.apply(&x.0[q]);
    }
    out
}

fn field(parts: &[(&str, PolyExpr)]) -> VectorField {
    let mut v = VectorField::zero();
    for (q, x) in parts {
        let i = COORDS.iter().position(|c| c == q).expect("coordinate");
        v.0[i] += x.clone();
    }
    v
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Invariant fields by generator name, as transcribed.
pub fn invariant_field(name: &str, side: Side) -> VectorField {
    let one = PolyExpr::one;
    let (h, p, k, c) = (coord("h"), coord("p"), coord("k"), coord("c"));
    let half = ratio(1, 2);
    match (side, name) {
        (Side::Left, "D") => field(&[("d", one())]),
        (Side::Left, "C") => field(&[("c", e_pow(2))]),
        (Side::Left, "M") => field(&[("m", one())]),
        (Side::Left, "H") => {
            let e = e_pow(-2);
            field(&[("h", e.clone()), ("d", -(&e * &c)), ("c", -(&e * &c.pow(2)))])
        }
        (Side::Left, "P") => {
            let a = &(one() - &h * &c) * &e_pow(-1);
            field(&[("p", a.clone()), ("m", &a * &k), ("k", &c * &e_pow(-1))])
        }
        (Side::Left, "K") => {
            let e = e_pow(1);
            field(&[("k", e.clone()), ("p", -(&e * &h)), ("m", -(&(&e * &h) * &k))])
        }
        (Side::Right, "H") => field(&[("h", one()), ("p", -k.clone()), ("m", -k.pow(2).scale(&half))]),
        (Side::Right, "P") => field(&[("p", one())]),
        (Side::Right, "K") => field(&[("k", one()), ("m", p.clone())]),
        (Side::Right, "M") => field(&[("m", one())]),
        (Side::Right, "D") => field(&[
            ("d", one()),
            ("c", c.scale(&rat(2))),
            ("h", h.scale(&rat(-2))),
            ("p", -p.clone()),
            ("k", k.clone()),
        ]),
        (Side::Right, "C") => field(&[
            ("d", -h.clone()),
            ("c", one() - (&h * &c).scale(&rat(2))),
            ("h", h.pow(2)),
            ("k", p.clone()),
            ("m", p.pow(2).scale(&half)),
        ]),
        (_, other) => panic!("no invariant field for {other}"),
    }
}

/// Fields in the order of `alg`'s generators.
pub fn invariant_fields(alg: &LieAlgebra, side: Side) -> Vec<VectorField> {
    alg.names().iter().map(|n| invariant_field(n, side)).collect()
}

/// `g⁻¹(Xg) − ρ(X_i)` on the left, `(Xg)g⁻¹ − ρ(X_i)` on the right.
pub fn invariant_field_check(x: &VectorField, generator: &str, side: Side) -> Matrix {
    let g = group_element();
    let inv = adjugate(&g);
    let xg = x.apply_matrix(&g);
    let lhs = match side {
        Side::Left => mat_mul(&inv, &xg),
        Side::Right => mat_mul(&xg, &inv),
    };
    mat_sub(&lhs, &from_rational(&rep_matrix(generator)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures as fx;
    use crate::symkernel::Bindings;

    fn rep(alg: &LieAlgebra) -> Vec<Matrix> {
        rep_matrices(alg).iter().map(|m| from_rational(m)).collect()
    }

    #[test]
    fn representation_respects_brackets() {
        let alg = fx::schrodinger();
        let r = rep(&alg);
        for i in 0..6 {
            let trace = (0..4).fold(PolyExpr::zero(), |acc, j| &acc + &r[i][j][j]);
            assert!(trace.is_zero(), "{} not traceless", alg.name(i));
            for j in 0..6 {
                let comm = mat_sub(&mat_mul(&r[i], &r[j]), &mat_mul(&r[j], &r[i]));
                let mut want = zero_matrix();
                for (k, c) in alg.structure(i, j).iter().enumerate() {
                    for a in 0..4 {
                        for b in 0..4 {
                            want[a][b] += r[k][a][b].scale(c);
                        }
                    }
                }
                assert_eq!(comm, want, "[{},{}]", alg.name(i), alg.name(j));
            }
        }
    }

    #[test]
    fn group_element_closed_form() {
        let g = group_element();
        assert_eq!(g, closed_form_group_element());
        assert!(determinant(&g) == PolyExpr::one());
        assert_eq!(mat_mul(&g, &adjugate(&g)), identity_matrix());
    }

    #[test]
    fn group_element_at_origin() {
        let mut b: Bindings = COORDS[1..].iter().map(|q| (q.to_string(), PolyExpr::zero())).collect();
        b.insert("E".into(), PolyExpr::one());
        let g: Matrix = group_element()
            .iter()
            .map(|r| r.iter().map(|x| x.substitute(&b).unwrap()).collect())
            .collect();
        assert_eq!(g, identity_matrix());
    }

    #[test]
    fn transcribed_fields_are_invariant() {
        for side in [Side::Left, Side::Right] {
            for n in ["D", "C", "H", "K", "P", "M"] {
                let res = invariant_field_check(&invariant_field(n, side), n, side);
                assert!(is_zero_matrix(&res), "{side:?} {n}: {res:?}");
            }
        }
        // a wrong field leaves a residual
        let res = invariant_field_check(&invariant_field("P", Side::Right), "K", Side::Right);
        assert!(!is_zero_matrix(&res));
    }

    #[test]
    fn field_algebra() {
        let alg = fx::schrodinger();
        let left = invariant_fields(&alg, Side::Left);
        let right = invariant_fields(&alg, Side::Right);
        for i in 0..6 {
            assert!(field_commutator(&left[i], &left[i]).is_zero());
            for j in 0..6 {
                let mut l = VectorField::zero();
                let mut r = VectorField::zero();
                for (k, c) in alg.structure(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        l = l.add(&left[k].scale(c));
                        r = r.add(&right[k].scale(&-c));
                    }
                }
                assert_eq!(field_commutator(&left[i], &left[j]), l);
                assert_eq!(field_commutator(&right[i], &right[j]), r);
                assert!(field_commutator(&left[i], &right[j]).is_zero());
            }
        }
        let (h, c, d) = (alg.index("H").unwrap(), alg.index("C").unwrap(), alg.index("D").unwrap());
        // [H,C] = -[C,H] = D
        assert_eq!(field_commutator(&left[h], &left[c]), left[d]);
    }
}
