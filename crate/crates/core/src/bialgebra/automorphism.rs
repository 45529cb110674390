use num::{One, Signed, Zero};

use super::{BialgebraError, BialgebraFamily, Cocommutator};
use crate::liealg::{apply_linear_map, LinearMap, Wedge};
use crate::symkernel::{span_equal, Bindings, PolyExpr, Rational};

/// Image of `w` under the generator map `X_a ↦ Σ_b m[a][b] X_b`, extended to
/// wedge powers.
pub fn transform_wedge(w: &Wedge, m: &[Vec<Rational>]) -> Wedge {
    let mut out = Wedge::zero(w.dim(), w.degree());
    for (idx, c) in w.terms() {
        let mut partial: Vec<(Vec<usize>, Rational)> = vec![(Vec::new(), Rational::one())];
        for &a in idx {
            let mut next = Vec::new();
            for (p, x) in &partial {
                for (b, y) in m[a].iter().enumerate() {
                    if y.is_zero() || p.contains(&b) {
                        continue;
                    }
                    let mut q = p.clone();
                    q.push(b);
                    next.push((q, x * y));
                }
            }
            partial = next;
        }
        for (q, x) in partial {
            out.add_term(&q, &c.scale(&x));
        }
    }
    out
}

/// How the row `δ(X_source)` is carried by the map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowImage {
    pub source: usize,
    /// `Some((target, sign))` when `X_source ↦ sign · X_target`.
    pub target: Option<(usize, i64)>,
    /// `(O⊗O)δ(X_source)`, renamed, equals `δ(O X_source)`.
    pub holds: bool,
}

#[derive(Clone, Debug)]
pub struct AutomorphismReport {
    pub rows: Vec<RowImage>,
    /// Transformed cocommutator equals the original.
    pub delta_invariant: bool,
    /// Transformed r equals the original, when the family carries one.
    pub r_invariant: Option<bool>,
}

fn signed_permutation_target(row: &[Rational]) -> Option<(usize, i64)> {
    let nz: Vec<usize> = (0..row.len()).filter(|&j| !row[j].is_zero()).collect();
    match nz.as_slice() {
        [j] if row[*j].abs().is_one() => Some((*j, if row[*j].is_negative() { -1 } else { 1 })),
        _ => None,
    }
}

/// `δ' = (O⊗O)∘δ∘O⁻¹` with parameters renamed by `pmap`, where the generator
/// map is `O(X_a) = Σ_b gmap.matrix[a][b] X_b`.
pub fn automorphism_transform(
    family: &BialgebraFamily,
    gmap: &LinearMap,
    pmap: &Bindings,
) -> Result<(BialgebraFamily, AutomorphismReport), BialgebraError> {
    let alg = &family.algebra;
    let mapped = apply_linear_map(gmap, alg, None)?;
    if !mapped.is_homomorphism() || gmap.new_names != alg.names() {
        let (a, b) = mapped.residual.first().cloned().unwrap_or_default();
        return Err(BialgebraError::NotAutomorphism(format!("bracket [{a},{b}] not preserved")));
    }
    let m = &gmap.matrix;
    let inv = gmap.inverse().expect("checked by apply_linear_map");
    let n = alg.dim();
    // (O⊗O)δ(X_k), renamed
    let pushed: Vec<Wedge> = family
        .delta
        .rows
        .iter()
        .map(|w| transform_wedge(w, m).substitute(pmap))
        .collect::<Result<_, _>>()?;
    let mut delta = Cocommutator::zero(n);
    for i in 0..n {
        for (k, x) in inv[i].iter().enumerate() {
            if !x.is_zero() {
                delta.rows[i] = &delta.rows[i] + &pushed[k].scale(&PolyExpr::constant(x.clone()));
            }
        }
    }
    let mut rows = Vec::new();
    for i in 0..n {
        let mut image = Wedge::zero(n, 2);
        for (j, x) in m[i].iter().enumerate() {
            if !x.is_zero() {
                image = &image + &family.delta.rows[j].scale(&PolyExpr::constant(x.clone()));
            }
        }
        rows.push(RowImage {
            source: i,
            target: signed_permutation_target(&m[i]),
            holds: pushed[i] == image,
        });
    }
    let r = match &family.r {
        Some(r) => Some(transform_wedge(r, m).substitute(pmap)?),
        None => None,
    };
    let constraints = family
        .constraints
        .iter()
        .map(|p| p.substitute(pmap))
        .collect::<Result<_, _>>()?;
    let report = AutomorphismReport {
        rows,
        delta_invariant: delta == family.delta,
        r_invariant: r.as_ref().zip(family.r.as_ref()).map(|(a, b)| a == b),
    };
    Ok((
        BialgebraFamily {
            algebra: alg.clone(),
            delta,
            constraints,
            raw_count: family.raw_count,
            r,
        },
        report,
    ))
}

/// For each named set, the name of the set its image under `pmap` spans,
/// if any.
pub fn map_constraint_sets(
    sets: &[(&str, Vec<PolyExpr>)],
    pmap: &Bindings,
) -> Result<Vec<(String, Option<String>)>, BialgebraError> {
    let mut out = Vec::new();
    for (name, polys) in sets {
        let image: Vec<PolyExpr> = polys.iter().map(|p| p.substitute(pmap)).collect::<Result<_, _>>()?;
        let hit = sets
            .iter()
            .find(|(_, other)| span_equal(&image, other).equal)
            .map(|(n, _)| n.to_string());
        out.push((name.to_string(), hit));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::tests::*;
    use super::*;
    use crate::liealg::tests::schrodinger;
    use crate::symkernel::rat;

    fn s(n: &str) -> PolyExpr {
        PolyExpr::sym(n)
    }

    fn flip_map() -> LinearMap {
        // D→−D, C→−H, H→−C, K→−P, P→−K, M→−M
        let alg = schrodinger();
        let row = |j: usize| {
            let mut r = vec![rat(0); 6];
            r[j] = rat(-1);
            r
        };
        LinearMap {
            new_names: alg.names().to_vec(),
            matrix: vec![row(D), row(H), row(C), row(P), row(K), row(M)],
        }
    }

    #[test]
    fn identity_leaves_family_unchanged() {
        let alg = schrodinger();
        let r = Wedge::from_terms(6, 2, &[(vec![D, M], s("c1")), (vec![P, K], s("c2"))]);
        let fam = BialgebraFamily::from_r(&alg, r).unwrap();
        let (out, rep) = automorphism_transform(&fam, &LinearMap::identity(&alg), &Bindings::new()).unwrap();
        assert!(rep.delta_invariant && rep.r_invariant == Some(true));
        assert_eq!(out.delta, fam.delta);
        assert!(rep.rows.iter().all(|r| r.holds && r.target == Some((r.source, 1))));
    }

    // Under the flip, D∧M ↦ D∧M and P∧K ↦ K∧P, so c2 must change sign.
    #[test]
    fn flip_with_sign_change_is_invariant() {
        let alg = schrodinger();
        let r = Wedge::from_terms(6, 2, &[(vec![D, M], s("c1")), (vec![P, K], s("c2"))]);
        let fam = BialgebraFamily::from_r(&alg, r).unwrap();
        let pmap: Bindings = [("c2".to_string(), -s("c2"))].into();
        let (_, rep) = automorphism_transform(&fam, &flip_map(), &pmap).unwrap();
        assert_eq!(rep.r_invariant, Some(true));
        assert!(rep.delta_invariant);
        assert_eq!(rep.rows[P].target, Some((K, -1)));
        assert!(rep.rows.iter().all(|r| r.holds));
        let (_, rep) = automorphism_transform(&fam, &flip_map(), &Bindings::new()).unwrap();
        assert!(!rep.delta_invariant);
    }

    #[test]
    fn rejects_non_automorphism() {
        let alg = schrodinger();
        let fam = BialgebraFamily::from_delta(&alg, Cocommutator::zero(6));
        let mut map = LinearMap::identity(&alg);
        map.matrix[P][P] = rat(2);
        assert!(matches!(
            automorphism_transform(&fam, &map, &Bindings::new()),
            Err(BialgebraError::NotAutomorphism(_))
        ));
    }

    #[test]
    fn constraint_sets_can_swap() {
        let sets = [("x", vec![s("a") * s("b")]), ("y", vec![s("c") * s("d")]), ("z", vec![s("a") + s("c")])];
        let pmap: Bindings = [("a", s("c")), ("b", s("d")), ("c", s("a")), ("d", s("b"))]
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect();
        let m = map_constraint_sets(&sets, &pmap).unwrap();
        let targets: Vec<_> = m.iter().map(|(_, t)| t.as_deref()).collect();
        assert_eq!(targets, [Some("y"), Some("x"), Some("z")]);
    }
}
