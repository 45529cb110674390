//! Exact linear systems with rational coefficients.
//!
//! Elimination is fraction-free (Bareiss) on integer-scaled rows, followed by
//! a back-substitution into reduced row echelon form. Pivots are chosen as the
//! first row with a nonzero entry in the leftmost remaining column, so the
//! output depends only on the input matrix.

use num::{BigInt, Integer, One, Signed, Zero};

use super::{KernelError, PolyExpr, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSystem {
    pub matrix: Vec<Vec<Rational>>,
    pub unknowns: Vec<String>,
}

/// General solution `particular + span(kernel)` of `A x = b`.
///
/// `inconsistencies` holds the right-hand sides of rows that reduce to
/// `0 = value`; the system is solvable exactly when they all vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolution {
    pub particular: Vec<PolyExpr>,
    pub kernel: Vec<Vec<Rational>>,
    pub pivots: Vec<usize>,
    pub inconsistencies: Vec<PolyExpr>,
}

impl AffineSolution {
    pub fn is_consistent(&self) -> bool {
        self.inconsistencies.iter().all(|p| p.is_zero())
    }

    /// Indices of unknowns that are not pivots.
    pub fn free_columns(&self, ncols: usize) -> Vec<usize> {
        (0..ncols).filter(|c| !self.pivots.contains(c)).collect()
    }
}

struct Echelon {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<PolyExpr>,
    pivots: Vec<usize>,
}

fn lcm_denominators(row: &[Rational]) -> BigInt {
    row.iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

impl LinearSystem {
    pub fn new(matrix: Vec<Vec<Rational>>, unknowns: Vec<String>) -> Self {
        LinearSystem { matrix, unknowns }
    }

    /// Unknowns labelled `x1..xn`.
    pub fn unlabeled(matrix: Vec<Vec<Rational>>) -> Self {
        let n = matrix.first().map_or(0, |r| r.len());
        LinearSystem {
            matrix,
            unknowns: (1..=n).map(|i| format!("x{i}")).collect(),
        }
    }

    /// Read a system from expressions `Σ c_j u_j + rest = 0` affine in `unknowns`
    /// with rational `c_j`. Returns the system and the right-hand sides `-rest`.
    pub fn from_equations(
        eqs: &[PolyExpr],
        unknowns: &[&str],
    ) -> Result<(LinearSystem, Vec<PolyExpr>), KernelError> {
        let mut matrix = Vec::with_capacity(eqs.len());
        let mut rhs = Vec::with_capacity(eqs.len());
        for e in eqs {
            let (coeffs, rest) = e.split_linear(unknowns)?;
            let mut row = Vec::with_capacity(unknowns.len());
            for c in coeffs {
                row.push(
                    c.as_constant()
                        .ok_or_else(|| KernelError::NonLinear(e.to_string()))?,
                );
            }
            matrix.push(row);
            rhs.push(-rest);
        }
        Ok((
            LinearSystem::new(matrix, unknowns.iter().map(|s| s.to_string()).collect()),
            rhs,
        ))
    }

    pub fn rows(&self) -> usize {
        self.matrix.len()
    }

    pub fn cols(&self) -> usize {
        self.unknowns.len()
    }

    fn echelon(&self, rhs: &[PolyExpr]) -> Echelon {
        let m = self.rows();
        let n = self.cols();
        // integer-scale each row; the rhs is scaled alongside
        let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(m);
        let mut b: Vec<PolyExpr> = Vec::with_capacity(m);
        for (i, row) in self.matrix.iter().enumerate() {
            let l = lcm_denominators(row);
            let lr = Rational::from_integer(l.clone());
            a.push(row.iter().map(|v| (v * &lr).to_integer()).collect());
            b.push(rhs[i].scale(&lr));
        }

        let mut pivots = Vec::new();
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..n {
            if r == m {
                break;
            }
            let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            b.swap(r, p);
            let prev_r = Rational::from_integer(prev.clone());
            for i in (r + 1)..m {
                let f = a[i][c].clone();
                let piv = a[r][c].clone();
                for j in c..n {
                    let v = &piv * &a[i][j] - &f * &a[r][j];
                    a[i][j] = v / &prev;
                }
                // columns left of c are already zero below the pivot
                let nb = &b[i].scale(&Rational::from_integer(piv.clone()))
                    - &b[r].scale(&Rational::from_integer(f));
                b[i] = nb.scale(&prev_r.recip());
            }
            prev = a[r][c].clone();
            pivots.push(c);
            r += 1;
        }

        // back-substitute into reduced form
        let mut rows: Vec<Vec<Rational>> = a
            .into_iter()
            .map(|row| row.into_iter().map(Rational::from_integer).collect())
            .collect();
        for (k, &c) in pivots.iter().enumerate().rev() {
            let inv = rows[k][c].recip();
            for v in rows[k].iter_mut() {
                *v *= &inv;
            }
            b[k] = b[k].scale(&inv);
            for i in 0..k {
                let f = rows[i][c].clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let d = &f * &rows[k][j];
                    rows[i][j] -= d;
                }
                let sub = b[k].scale(&f);
                b[i] -= &sub;
            }
        }
        Echelon {
            rows,
            rhs: b,
            pivots,
        }
    }

    /// Rank of the matrix.
    pub fn rank(&self) -> usize {
        self.echelon(&vec![PolyExpr::zero(); self.rows()]).pivots.len()
    }

    /// Reduced row echelon form (nonzero rows only) and pivot columns.
    pub fn rref(&self) -> (Vec<Vec<Rational>>, Vec<usize>) {
        let e = self.echelon(&vec![PolyExpr::zero(); self.rows()]);
        let k = e.pivots.len();
        (e.rows.into_iter().take(k).collect(), e.pivots)
    }

    /// Kernel basis: one vector per free column, in column order, with a 1 in
    /// that column and zeros in the other free columns.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let (rows, pivots) = self.rref();
        kernel_from_rref(&rows, &pivots, self.cols())
    }

    /// Solve `A x = rhs` with polynomial right-hand sides. Free unknowns are
    /// set to zero in the particular solution.
    pub fn solve(&self, rhs: &[PolyExpr]) -> AffineSolution {
        assert_eq!(rhs.len(), self.rows(), "rhs length must match row count");
        let e = self.echelon(rhs);
        let n = self.cols();
        let k = e.pivots.len();
        let mut particular = vec![PolyExpr::zero(); n];
        for (i, &c) in e.pivots.iter().enumerate() {
            particular[c] = e.rhs[i].clone();
        }
        let inconsistencies = e.rhs[k..].iter().filter(|p| !p.is_zero()).cloned().collect();
        let rows: Vec<Vec<Rational>> = e.rows.iter().take(k).cloned().collect();
        AffineSolution {
            particular,
            kernel: kernel_from_rref(&rows, &e.pivots, n),
            pivots: e.pivots,
            inconsistencies,
        }
    }

    /// `A v` for a rational vector.
    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        self.matrix
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(Rational::zero(), |acc, (a, x)| acc + a * x)
            })
            .collect()
    }
}

/// Inverse of a square rational matrix, `None` when singular.
pub fn invert_matrix(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return None;
    }
    let sys = LinearSystem::unlabeled(m.to_vec());
    let mut cols = Vec::with_capacity(n);
    for k in 0..n {
        let e: Vec<PolyExpr> = (0..n)
            .map(|i| if i == k { PolyExpr::one() } else { PolyExpr::zero() })
            .collect();
        let sol = sys.solve(&e);
        if sol.pivots.len() < n {
            return None;
        }
        cols.push(
            sol.particular
                .into_iter()
                .map(|p| p.as_constant().expect("constant"))
                .collect::<Vec<_>>(),
        );
    }
    Some((0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect())
}

fn kernel_from_rref(rows: &[Vec<Rational>], pivots: &[usize], n: usize) -> Vec<Vec<Rational>> {
    let mut out = Vec::new();
    for f in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); n];
        v[f] = Rational::one();
        for (i, &c) in pivots.iter().enumerate() {
            v[c] = -rows[i][f].clone();
        }
        out.push(v);
    }
    out
}

/// Scale a rational vector to coprime integers with a positive leading entry.
pub fn primitive_integer_vector(v: &[Rational]) -> Vec<BigInt> {
    let l = lcm_denominators(v);
    let lr = Rational::from_integer(l);
    let mut ints: Vec<BigInt> = v.iter().map(|x| (x * &lr).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() {
        for x in ints.iter_mut() {
            *x = &*x / &g;
        }
    }
    if ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        for x in ints.iter_mut() {
            *x = -&*x;
        }
    }
    ints
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symkernel::{rat, ratio};
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> LinearSystem {
        LinearSystem::unlabeled(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
    }

    #[test]
    fn identity_has_trivial_kernel() {
        assert!(m(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).nullspace().is_empty());
    }

    #[test]
    fn single_row_kernel() {
        assert_eq!(m(&[&[1, -1]]).nullspace(), vec![vec![rat(1), rat(1)]]);
    }

    #[test]
    fn rref_of_dependent_rows() {
        let s = m(&[&[2, 4, 6], &[1, 2, 3], &[1, 0, 1]]);
        let (rows, piv) = s.rref();
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(rows[0], vec![rat(1), rat(0), rat(1)]);
        assert_eq!(rows[1], vec![rat(0), rat(1), rat(1)]);
        assert_eq!(s.nullspace(), vec![vec![rat(-1), rat(-1), rat(1)]]);
    }

    #[test]
    fn solve_with_symbolic_rhs() {
        let s = m(&[&[1, 1], &[1, -1], &[2, 0]]);
        let a = PolyExpr::sym("a");
        let b = PolyExpr::sym("b");
        let sol = s.solve(&[a.clone(), b.clone(), &a + &b]);
        assert!(sol.is_consistent());
        assert_eq!(sol.particular[0], (&a + &b).scale(&ratio(1, 2)));
        assert_eq!(sol.particular[1], (&a - &b).scale(&ratio(1, 2)));
        let bad = s.solve(&[a.clone(), b.clone(), a.clone()]);
        assert!(!bad.is_consistent());
        assert_eq!(bad.inconsistencies.len(), 1);
    }

    #[test]
    fn inverse_round_trip() {
        let a = vec![vec![rat(2), rat(1)], vec![rat(1), rat(1)]];
        let inv = invert_matrix(&a).unwrap();
        assert_eq!(inv, vec![vec![rat(1), rat(-1)], vec![rat(-1), rat(2)]]);
        assert!(invert_matrix(&[vec![rat(1), rat(2)], vec![rat(2), rat(4)]]).is_none());
    }

    #[test]
    fn from_equations_extracts_coefficients() {
        let s = |n| PolyExpr::sym(n);
        let eq = &(&s("x").scale(&rat(2)) - &s("y")) + &s("t");
        let (sys, rhs) = LinearSystem::from_equations(&[eq], &["x", "y"]).unwrap();
        assert_eq!(sys.matrix, vec![vec![rat(2), rat(-1)]]);
        assert_eq!(rhs[0], -s("t"));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn kernel_vectors_annihilate(
            rows in proptest::collection::vec(proptest::collection::vec(-4i64..5, 5), 1..6)
        ) {
            let s = LinearSystem::unlabeled(
                rows.iter().map(|r| r.iter().map(|&x| ratio(x, 1 + x.abs() % 3)).collect()).collect(),
            );
            let ker = s.nullspace();
            prop_assert_eq!(ker.len() + s.rank(), 5);
            for v in &ker {
                prop_assert!(s.apply(v).iter().all(|x| x.is_zero()));
            }
        }
    }
}
