//! Linear changes of basis between presented Lie algebras.

use num::Zero;

use super::{LieAlgebra, LieError};
use crate::symkernel::{invert_matrix, Rational};

/// New generators as combinations of source generators:
/// `new_a = Σ_j matrix[a][j] · src_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    pub new_names: Vec<String>,
    pub matrix: Vec<Vec<Rational>>,
}

impl LinearMap {
    pub fn identity(alg: &LieAlgebra) -> Self {
        let n = alg.dim();
        LinearMap {
            new_names: alg.names().to_vec(),
            matrix: (0..n)
                .map(|i| (0..n).map(|j| if i == j { Rational::from_integer(1.into()) } else { Rational::zero() }).collect())
                .collect(),
        }
    }

    pub fn inverse(&self) -> Option<Vec<Vec<Rational>>> {
        invert_matrix(&self.matrix)
    }
}

/// The source algebra re-expressed in the new generators, with the list of
/// brackets `[Y_a,Y_b]` (a<b) that differ from `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MappedAlgebra {
    pub algebra: LieAlgebra,
    pub residual: Vec<(String, String)>,
}

impl MappedAlgebra {
    pub fn is_homomorphism(&self) -> bool {
        self.residual.is_empty()
    }
}

/// Transform `source` by `map`. The residual compares against `target`, or
/// against `source` itself (same generator names) when `target` is `None`,
/// which is the automorphism test.
pub fn apply_linear_map(
    map: &LinearMap,
    source: &LieAlgebra,
    target: Option<&LieAlgebra>,
) -> Result<MappedAlgebra, LieError> {
    let n = source.dim();
    if map.matrix.len() != n || map.new_names.len() != n {
        return Err(LieError::Dimension { expected: n, got: map.matrix.len() });
    }
    let inv = map.inverse().ok_or(LieError::Singular)?;
    let mut brackets = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            // [Y_a, Y_b] in source coordinates, then in Y coordinates via inv^T
            let mut src = vec![Rational::zero(); n];
            for i in 0..n {
                if map.matrix[a][i].is_zero() {
                    continue;
                }
                for j in 0..n {
                    if map.matrix[b][j].is_zero() {
                        continue;
                    }
                    let w = &map.matrix[a][i] * &map.matrix[b][j];
                    for (k, c) in source.structure(i, j).iter().enumerate() {
                        src[k] += &w * c;
                    }
                }
            }
            // src_k = Σ_c inv[k][c] Y_c
            let mut y = vec![Rational::zero(); n];
            for (k, v) in src.iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                for c in 0..n {
                    y[c] += v * &inv[k][c];
                }
            }
            if y.iter().any(|v| !v.is_zero()) {
                brackets.push((a, b, y));
            }
        }
    }
    let names: Vec<&str> = map.new_names.iter().map(String::as_str).collect();
    let algebra = LieAlgebra::new(&names, &brackets)?;
    let reference = target.unwrap_or(source);
    let mut residual = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            let same = match (reference.index(&names[a]), reference.index(&names[b])) {
                (Ok(ra), Ok(rb)) => {
                    (0..n).all(|k| match reference.index(&names[k]) {
                        Ok(rk) => algebra.constant(a, b, k) == reference.constant(ra, rb, rk),
                        Err(_) => false,
                    })
                }
                _ => false,
            };
            if !same {
                residual.push((names[a].to_string(), names[b].to_string()));
            }
        }
    }
    Ok(MappedAlgebra { algebra, residual })
}
