use lieb_core::bialgebra::{
    automorphism_transform, change_of_basis, classify, coboundary_match, cocycle_solve,
    cojacobi_constraints, delta_from_r, is_cocycle, map_constraint_sets, BialgebraFamily,
    Cocommutator, Label, RMatrixFamily,
};
use lieb_core::fixtures as fx;
use lieb_core::liealg::{ad_wedge, schouten, Wedge};
use lieb_core::symkernel::{in_span, span_equal, Bindings, PolyExpr};

fn s(n: &str) -> PolyExpr {
    PolyExpr::sym(n)
}

fn idx(name: &str) -> usize {
    fx::schrodinger().index(name).unwrap()
}

fn kmp() -> [usize; 3] {
    [idx("K"), idx("M"), idx("P")]
}

fn sets(prefix: &str) -> Vec<Vec<PolyExpr>> {
    ["a", "b", "c"].iter().map(|x| fx::polys(&format!("{prefix}-set-{x}.eqs"))).collect()
}

fn union(v: &[Vec<PolyExpr>]) -> Vec<PolyExpr> {
    v.iter().flatten().cloned().collect()
}

fn appendix_solution() -> Cocommutator {
    let alg = fx::schrodinger();
    let sol = cocycle_solve(&alg).unwrap();
    let table = fx::named_polys("cocycle-coefficients.eqs");
    let mut names = Vec::new();
    let mut positions = Vec::new();
    for (f, v) in &table[..15] {
        names.push(v.to_string());
        positions.push(sol.unknowns.iter().position(|u| u == f).unwrap());
    }
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    change_of_basis(&sol, &refs, &positions).unwrap().1
}

#[test]
fn cocycle_space_matches_reference_parameterization() {
    let alg = fx::schrodinger();
    let sol = cocycle_solve(&alg).unwrap();
    assert_eq!(sol.dimension(), 15);
    let general = appendix_solution();
    let (_, reference) = fx::cocommutator("cocycle.delta");
    assert_eq!(general, reference);
    // every coefficient against the table; unlisted entries vanish
    let table = fx::named_polys("cocycle-coefficients.eqs");
    for (name, value) in sol.unknowns.iter().zip(general.coefficients()) {
        let expected = table
            .iter()
            .find(|(f, _)| f == name)
            .map(|(_, v)| v.clone())
            .unwrap_or_default();
        assert_eq!(value, expected, "{name}");
    }
}

#[test]
fn cocycle_cojacobi_sets() {
    let alg = fx::schrodinger();
    let general = appendix_solution();
    let generated = cojacobi_constraints(&alg, &general);
    let reference = sets("cocycle");
    assert!(span_equal(&generated.polys, &union(&reference)).equal);
    // the identification carries each set onto the r-matrix set in order
    let id = fx::bindings("identification.bind");
    for (c, r) in reference.iter().zip(sets("rmatrix")) {
        let image: Vec<PolyExpr> = c.iter().map(|p| p.substitute(&id).unwrap()).collect();
        assert!(span_equal(&image, &r).equal);
    }
}

#[test]
fn general_rmatrix_table_and_constraints() {
    let (alg, r) = fx::rmatrix("general.rmat");
    let delta = delta_from_r(&alg, &r).unwrap();
    assert_eq!(delta, fx::cocommutator("general.delta").1);
    let fam = RMatrixFamily::new(&alg, r).unwrap();
    assert!(span_equal(&fam.constraints, &union(&sets("rmatrix"))).equal);
    // substituting the identification into the cocycle solution gives the table
    let id = fx::bindings("identification.bind");
    assert_eq!(appendix_solution().substitute(&id).unwrap(), delta);
}

#[test]
fn general_cocycle_is_a_coboundary() {
    let alg = fx::schrodinger();
    let general = appendix_solution();
    assert!(is_cocycle(&alg, &general).unwrap());
    let m = coboundary_match(&alg, &general).unwrap();
    assert!(m.is_coboundary() && m.kernel.is_empty());
    assert_eq!(delta_from_r(&alg, &m.r).unwrap(), general);
    // a2 = -al2/2
    assert_eq!(m.r.coefficient(&[idx("D"), idx("H")]), s("al2").scale(&lieb_core::symkernel::ratio(-1, 2)));
}

#[test]
fn general_schouten_bracket() {
    let (alg, r) = fx::rmatrix("general.rmat");
    let sch = schouten(&alg, &r).unwrap();
    let disc = s("a3") * s("a6") + s("b3") * s("b6") - s("a3") * s("b1") - s("a1") * s("b3") - s("c2").pow(2);
    assert_eq!(sch.coefficient(&kmp()), disc);
    // off the K∧M∧P direction the bracket vanishes on the constraint variety
    let fam = RMatrixFamily::new(&alg, r).unwrap();
    let rest = &sch - &Wedge::from_terms(6, 3, &[(kmp().to_vec(), disc.clone())]);
    assert!(!rest.is_zero());
    for (_, c) in rest.terms() {
        assert!(in_span(c, &fam.constraints).is_some(), "{c}");
    }
    for i in 0..6 {
        for (_, c) in ad_wedge(&alg, &alg.basis(i), &sch).unwrap().terms() {
            assert!(in_span(c, &fam.constraints).is_some());
        }
    }
    assert_eq!(classify(&alg, &fam, &kmp(), None).unwrap().discriminant, disc);
}

#[test]
fn flip_automorphism_swaps_sets() {
    let (alg, r) = fx::rmatrix("general.rmat");
    let fam = BialgebraFamily::from_r(&alg, r.clone()).unwrap();
    let gmap = fx::automorphism("flip.map", &alg);
    let pmap = fx::bindings("flip.bind");
    let (out, rep) = automorphism_transform(&fam, &gmap, &pmap).unwrap();
    assert_eq!(rep.r_invariant, Some(true));
    assert!(rep.delta_invariant);
    assert!(rep.rows.iter().all(|r| r.holds));
    let pairs: Vec<_> = rep
        .rows
        .iter()
        .map(|r| (alg.name(r.source).to_string(), alg.name(r.target.unwrap().0).to_string()))
        .collect();
    for (a, b) in [("P", "K"), ("K", "P"), ("H", "C"), ("C", "H"), ("D", "D"), ("M", "M")] {
        assert!(pairs.contains(&(a.to_string(), b.to_string())));
    }
    let named = sets("rmatrix");
    let m = map_constraint_sets(&[("a", named[0].clone()), ("b", named[1].clone()), ("c", named[2].clone())], &pmap).unwrap();
    let targets: Vec<_> = m.iter().map(|(_, t)| t.clone().unwrap()).collect();
    assert_eq!(targets, ["b", "a", "c"]);
    assert!(span_equal(&out.constraints, &fam.constraints).equal);
    // discriminant invariant
    let d = classify(&alg, &RMatrixFamily::new(&alg, r).unwrap(), &kmp(), None).unwrap().discriminant;
    assert_eq!(d.substitute(&pmap).unwrap(), d);
}

#[test]
fn d_primitive_specialization() {
    let (alg, r) = fx::rmatrix("general.rmat");
    let fam = BialgebraFamily::from_r(&alg, r).unwrap();
    let sp = fam.impose_primitive(&["D"]).unwrap();
    assert_eq!(sp.survivors, ["c1", "c2"]);
    assert!(sp.bindings["c3"].is_zero());
    assert!(sp.family.constraints.is_empty());
    assert_eq!(sp.family.delta, fx::cocommutator("d-primitive.delta").1);
    let rf = RMatrixFamily::new(&alg, sp.family.r.clone().unwrap()).unwrap();
    let c = classify(&alg, &rf, &kmp(), None).unwrap();
    assert_eq!(c.discriminant, -s("c2").pow(2));
    let at = |v: i64| -> Bindings { [("c2".to_string(), PolyExpr::integer(v))].into() };
    assert_eq!(classify(&alg, &rf, &kmp(), Some(&at(0))).unwrap().label, Some(Label::NonStandard));
    assert_eq!(classify(&alg, &rf, &kmp(), Some(&at(1))).unwrap().label, Some(Label::Standard));
}

#[test]
fn p_primitive_specialization() {
    let (alg, r) = fx::rmatrix("general.rmat");
    let fam = BialgebraFamily::from_r(&alg, r).unwrap();
    let sp = fam.impose_primitive(&["P"]).unwrap();
    assert_eq!(sp.survivors, ["a1", "a3", "a4", "a5", "b3", "c1"]);
    assert_eq!(sp.bindings["c2"], s("c1"));
    assert!(span_equal(&sp.family.constraints, &[s("a1") * s("a4") + s("a5") * s("c1")]).equal);
    assert_eq!(sp.family.delta, fx::cocommutator("p-primitive.delta").1);
    let rf = RMatrixFamily::new(&alg, sp.family.r.clone().unwrap()).unwrap();
    let disc = classify(&alg, &rf, &kmp(), None).unwrap().discriminant;
    assert_eq!(disc, -(s("a1") * s("b3") + s("c1").pow(2)));
}

#[test]
fn h_primitive_specialization() {
    let (alg, r) = fx::rmatrix("general.rmat");
    let fam = BialgebraFamily::from_r(&alg, r).unwrap();
    let sp = fam.impose_primitive(&["H"]).unwrap();
    assert!(sp.bindings["a1"].is_zero());
    assert!(sp.bindings["b6"].is_zero());
    assert_eq!(sp.survivors, ["a2", "a3", "a4", "a5", "c2"]);
    assert!(span_equal(&sp.family.constraints, &[s("a2") * s("a3") + s("a5") * s("c2")]).equal);
    let rf = RMatrixFamily::new(&alg, sp.family.r.clone().unwrap()).unwrap();
    assert_eq!(classify(&alg, &rf, &kmp(), None).unwrap().discriminant, -s("c2").pow(2));
}

#[test]
fn h_primitive_subfamilies_match_reference() {
    let (alg, r) = fx::rmatrix("h-standard.rmat");
    assert_eq!(delta_from_r(&alg, &r).unwrap(), fx::cocommutator("h-standard.delta").1);
    let fam = RMatrixFamily::new(&alg, r).unwrap();
    assert!(fam.constraints.is_empty(), "{:?}", fam.constraints);
    let (alg, r) = fx::rmatrix("h-nonstandard.rmat");
    assert_eq!(delta_from_r(&alg, &r).unwrap(), fx::cocommutator("h-nonstandard.delta").1);
    assert!(schouten(&alg, &r).unwrap().is_zero());
    let (alg, r) = fx::rmatrix("p-primitive.rmat");
    assert_eq!(delta_from_r(&alg, &r).unwrap(), fx::cocommutator("p-primitive.delta").1);
    let (alg, r) = fx::rmatrix("d-primitive.rmat");
    assert_eq!(delta_from_r(&alg, &r).unwrap(), fx::cocommutator("d-primitive.delta").1);
}

#[test]
fn infeasible_point_is_reported() {
    let (alg, r) = fx::rmatrix("general.rmat");
    let fam = BialgebraFamily::from_r(&alg, r).unwrap();
    let d = fam.impose_primitive(&["D"]).unwrap().family;
    let fam_c3 = fam.specialize(
        &["a1", "a2", "a3", "a4", "a5", "a6", "b1", "b2", "b3", "b4", "b5", "b6"]
            .iter()
            .map(|n| (n.to_string(), PolyExpr::zero()))
            .collect(),
    )
    .unwrap();
    assert!(d.constraints.is_empty());
    let bad: Bindings = [("c3".to_string(), PolyExpr::one())].into();
    assert!(fam_c3.specialize(&bad).is_err());
}
