//! Reference data shipped with the crate, embedded at compile time.
//!
//! Files are looked up by their name under `fixtures/`. The loaders panic on
//! malformed embedded data; [`crate::format`] is the fallible path for user input.

use crate::bialgebra::Cocommutator;
use crate::format::{self, Source};
use crate::liealg::{LieAlgebra, LinearMap, Wedge};
use crate::symkernel::{Bindings, PolyExpr, Rational};

macro_rules! files {
    ($($name:literal),* $(,)?) => {
        /// `(file name, contents)` for every embedded fixture.
        pub const FILES: &[(&str, &str)] = &[
            $(($name, include_str!(concat!("../fixtures/", $name))),)*
        ];
    };
}

files!(
    "schrodinger.alg",
    "h4.alg",
    "gl2.alg",
    "galilei.alg",
    "h6.alg",
    "general.rmat",
    "general.delta",
    "general.poisson",
    "rmatrix-set-a.eqs",
    "rmatrix-set-b.eqs",
    "rmatrix-set-c.eqs",
    "cocycle-coefficients.eqs",
    "cocycle.delta",
    "cocycle-set-a.eqs",
    "cocycle-set-b.eqs",
    "cocycle-set-c.eqs",
    "identification.bind",
    "flip.map",
    "flip.bind",
    "d-primitive.rmat",
    "d-primitive.delta",
    "d-primitive.poisson",
    "p-primitive.rmat",
    "p-primitive.delta",
    "p-primitive.poisson",
    "h-standard.rmat",
    "h-standard.delta",
    "h-standard.poisson",
    "h-nonstandard.rmat",
    "h-nonstandard.delta",
    "h-nonstandard.poisson",
    "h4.rmat",
    "h4.delta",
    "h4.eqs",
    "h4.schouten",
    "h4.map",
    "h4-embedding.bind",
    "h4-embedding.rmat",
    "h4-embedding.delta",
    "gl2.rmat",
    "gl2.delta",
    "gl2.eqs",
    "gl2.schouten",
    "gl2.map",
    "gl2-embedding.bind",
    "gl2-embedding.eqs",
    "gl2-embedding.rmat",
    "gl2-embedding.delta",
    "galilei.delta",
    "galilei.eqs",
    "galilei.map",
    "galilei-standard.rmat",
    "galilei-nonstandard.rmat",
    "galilei-embedding.bind",
    "galilei-embedding.eqs",
    "galilei-embedding.rmat",
    "galilei-embedding.delta",
    "h6.map",
);

pub fn get(name: &str) -> Option<&'static str> {
    FILES.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

fn text(name: &str) -> &'static str {
    get(name).unwrap_or_else(|| panic!("no fixture `{name}`"))
}

fn source(name: &str) -> Source {
    Source::parse(text(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// A built-in algebra by its `name:` header (`schrodinger`, `h4`, ...).
pub fn algebra(name: &str) -> LieAlgebra {
    let file = format!("{name}.alg");
    format::parse_algebra(text(&file)).unwrap_or_else(|e| panic!("{file}: {e}"))
}

pub fn schrodinger() -> LieAlgebra {
    algebra("schrodinger")
}

fn algebra_of(src: &Source, name: &str) -> LieAlgebra {
    algebra(&src.algebra_ref().unwrap_or_else(|| panic!("{name}: no algebra header")))
}

/// The r-matrix of an `.rmat` file over its declared algebra.
pub fn rmatrix(name: &str) -> (LieAlgebra, Wedge) {
    let src = source(name);
    let alg = algebra_of(&src, name);
    let r = src.rmatrix(&alg).unwrap_or_else(|e| panic!("{name}: {e}"));
    (alg, r)
}

/// The `schouten = ...` trivector of an `.rmat` or `.schouten` file.
pub fn schouten(name: &str) -> Wedge {
    let src = source(name);
    let alg = algebra_of(&src, name);
    src.trivector(&alg, "schouten").unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn cocommutator(name: &str) -> (LieAlgebra, Cocommutator) {
    let src = source(name);
    let alg = algebra_of(&src, name);
    let rows = src.cocommutator(&alg).unwrap_or_else(|e| panic!("{name}: {e}"));
    (alg, Cocommutator { rows })
}

/// Equations of an `.eqs` file as polynomials `lhs - rhs`.
pub fn polys(name: &str) -> Vec<PolyExpr> {
    source(name).polys().unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// Statements `name = poly` of an `.eqs` file, in order.
pub fn named_polys(name: &str) -> Vec<(String, PolyExpr)> {
    source(name).named_polys().unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn bindings(name: &str) -> Bindings {
    format::parse_bindings(text(name), &Default::default()).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// Brace table of a `.poisson` file, with its invertible symbols applied.
pub fn poisson(name: &str) -> Vec<((String, String), PolyExpr)> {
    source(name).brace_table().unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// A `.map` file sending each generator of `from` to a combination of the
/// generators of `to`, as the rows of a matrix.
pub fn generator_map(name: &str, from: &LieAlgebra, to: &LieAlgebra) -> Vec<Vec<Rational>> {
    let rows = source(name)
        .linear_rows(from.names(), to.names())
        .unwrap_or_else(|e| panic!("{name}: {e}"));
    assert_eq!(rows.len(), from.dim(), "{name}: every generator must be mapped");
    let mut out = vec![Vec::new(); from.dim()];
    for (i, v) in rows {
        out[i] = v;
    }
    out
}

/// A `.map` from an algebra to itself as a [`LinearMap`].
pub fn automorphism(name: &str, alg: &LieAlgebra) -> LinearMap {
    LinearMap {
        new_names: alg.names().to_vec(),
        matrix: generator_map(name, alg, alg),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_parses() {
        for (name, _) in FILES {
            match name.rsplit('.').next().unwrap() {
                "alg" => {
                    algebra(name.trim_end_matches(".alg"));
                }
                "rmat" => {
                    rmatrix(name);
                }
                "delta" => {
                    cocommutator(name);
                }
                "eqs" => {
                    polys(name);
                }
                "bind" => {
                    bindings(name);
                }
                "poisson" => {
                    assert!(poisson(name).len() >= 4, "{name}");
                }
                "schouten" => {
                    schouten(name);
                }
                "map" => {}
                other => panic!("unexpected fixture kind {other}"),
            }
        }
    }

    #[test]
    fn fixture_counts() {
        assert_eq!(schrodinger().dim(), 6);
        let sets: usize = ["rmatrix-set-a.eqs", "rmatrix-set-b.eqs", "rmatrix-set-c.eqs"]
            .iter()
            .map(|f| polys(f).len())
            .sum();
        assert_eq!(sets, 19);
        assert_eq!(named_polys("cocycle-coefficients.eqs").len(), 15 + 37);
        assert_eq!(bindings("identification.bind").len(), 15);
        assert_eq!(poisson("general.poisson").len(), 15);
    }
}
