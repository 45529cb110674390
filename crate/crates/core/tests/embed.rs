use lieb_core::bialgebra::{delta_from_r, BialgebraFamily, RMatrixFamily};
use lieb_core::embed::{match_sub_bialgebra, proposition_rmatrix, pull_back, EmbeddingReport};
use lieb_core::fixtures as fx;
use lieb_core::liealg::{schouten, LieAlgebra, Wedge};
use lieb_core::symkernel::{in_span, span_equal, Bindings, PolyExpr};

fn general() -> BialgebraFamily {
    let (alg, r) = fx::rmatrix("general.rmat");
    BialgebraFamily::from_r(&alg, r).unwrap()
}

fn run(target: &str) -> (BialgebraFamily, LieAlgebra, EmbeddingReport) {
    let fam = general();
    let (talg, tdelta) = fx::cocommutator(&format!("{target}.delta"));
    let map = fx::generator_map(&format!("{target}.map"), &talg, &fam.algebra);
    let rep = match_sub_bialgebra(&fam, &talg, &tdelta, &map).unwrap();
    (fam, talg, rep)
}

fn s(n: &str) -> PolyExpr {
    PolyExpr::sym(n)
}

/// Bindings equal the reference modulo the forced conditions; every other
/// solved parameter is zero.
fn assert_bindings(rep: &EmbeddingReport, reference: &Bindings) {
    for (k, v) in &rep.bindings {
        let want = reference.get(k).cloned().unwrap_or_default();
        assert_eq!(v.substitute(&rep.forced).unwrap(), want.substitute(&rep.forced).unwrap(), "{k}");
    }
    for k in reference.keys() {
        assert!(rep.bindings.contains_key(k), "{k} unsolved");
    }
}

/// `got` equals `want` on the variety cut out by `constraints`, tested by
/// linear span membership of each coefficient difference.
fn assert_mod(got: &Wedge, want: &Wedge, constraints: &[PolyExpr]) {
    for (idx, c) in (got - want).terms() {
        assert!(in_span(c, constraints).is_some(), "{idx:?}: {c}");
    }
}

/// Restricting the embedded cocommutator to the image recovers the target.
fn assert_restriction(target: &str, fam: &BialgebraFamily, talg: &LieAlgebra, rep: &EmbeddingReport) {
    let (_, mut tdelta) = fx::cocommutator(&format!("{target}.delta"));
    tdelta = tdelta.substitute(&rep.forced).unwrap();
    let map = fx::generator_map(&format!("{target}.map"), talg, &fam.algebra);
    let r = proposition_rmatrix(rep).unwrap().r;
    let d = delta_from_r(&fam.algebra, &r).unwrap();
    assert_eq!(pull_back(&fam.algebra, &d, talg, &map).unwrap().unwrap(), tdelta);
}

#[test]
fn every_oscillator_bialgebra_embeds() {
    let (fam, talg, rep) = run("h4");
    assert!(rep.embeds() && rep.forced.is_empty());
    assert_bindings(&rep, &fx::bindings("h4-embedding.bind"));
    assert!(rep.free.is_empty());
    assert!(span_equal(&rep.residual, &fx::polys("h4.eqs")).equal);
    let (_, want_r) = fx::rmatrix("h4-embedding.rmat");
    let prop = proposition_rmatrix(&rep).unwrap();
    assert_eq!(prop.r, want_r);
    assert_mod(&schouten(&fam.algebra, &prop.r).unwrap(), &fx::schouten("h4-embedding.rmat"), &rep.residual);
    assert_eq!(delta_from_r(&fam.algebra, &prop.r).unwrap(), fx::cocommutator("h4-embedding.delta").1);
    assert_restriction("h4", &fam, &talg, &rep);
    // the oscillator-side r reproduces its own Schouten bracket
    let (h4, r4) = fx::rmatrix("h4.rmat");
    assert_mod(&schouten(&h4, &r4).unwrap(), &fx::schouten("h4.schouten"), &fx::polys("h4.eqs"));
    assert_eq!(delta_from_r(&h4, &r4).unwrap(), fx::cocommutator("h4.delta").1);
}

#[test]
fn only_non_standard_gl2_bialgebras_embed() {
    let (fam, talg, rep) = run("gl2");
    assert!(rep.embeds() && rep.forced.is_empty());
    assert_bindings(&rep, &fx::bindings("gl2-embedding.bind"));
    assert_eq!(rep.free, ["c2"]);
    let mut expected = fx::polys("gl2.eqs");
    expected.extend(fx::polys("gl2-embedding.eqs"));
    assert!(span_equal(&rep.residual, &expected).equal);
    // the gl(2) Schouten coefficient vanishes on the residual: no standard ones
    let (gl2, rg) = fx::rmatrix("gl2.rmat");
    let sch = schouten(&gl2, &rg).unwrap();
    assert_mod(&sch, &fx::schouten("gl2.schouten"), &fx::polys("gl2.eqs"));
    assert_eq!(delta_from_r(&gl2, &rg).unwrap(), fx::cocommutator("gl2.delta").1);
    let coeff = sch.coefficient(&[0, 1, 2]);
    assert_eq!(coeff, s("a").pow(2) + s("ap") * s("am"));
    assert!(in_span(&coeff, &rep.residual).is_some());
    assert!(in_span(&coeff, &fx::polys("gl2.eqs")).is_none());
    let prop = proposition_rmatrix(&rep).unwrap();
    assert_eq!(prop.r, fx::rmatrix("gl2-embedding.rmat").1);
    assert_eq!(delta_from_r(&fam.algebra, &prop.r).unwrap(), fx::cocommutator("gl2-embedding.delta").1);
    // Schouten modulo the residual is -c2^2 K∧M∧P
    assert_mod(&schouten(&fam.algebra, &prop.r).unwrap(), &fx::schouten("gl2-embedding.rmat"), &rep.residual);
    assert_restriction("gl2", &fam, &talg, &rep);
}

#[test]
fn galilei_embedding_conditions() {
    let (fam, talg, rep) = run("galilei");
    assert!(rep.embeds());
    let zero = PolyExpr::zero();
    let forced: Vec<(&str, &PolyExpr)> = rep.forced.iter().map(|(k, v)| (k.as_str(), v)).collect();
    assert_eq!(forced, [("alpha", &zero), ("beta5", &zero), ("beta6", &zero), ("nu", &zero)]);
    assert_bindings(&rep, &fx::bindings("galilei-embedding.bind"));
    assert_eq!(rep.free, ["a3"]);
    let all = fx::polys("galilei-embedding.eqs");
    let nonlinear: Vec<PolyExpr> = all.iter().filter(|p| p.symbol_names().len() > 1).cloned().collect();
    assert!(span_equal(&rep.residual, &nonlinear).equal);
    // the Galilei co-Jacobi equations hold identically once forced
    for p in fx::polys("galilei.eqs") {
        assert!(p.substitute(&rep.forced).unwrap().is_zero(), "{p}");
    }
    let prop = proposition_rmatrix(&rep).unwrap();
    assert_eq!(prop.r, fx::rmatrix("galilei-embedding.rmat").1);
    assert_eq!(delta_from_r(&fam.algebra, &prop.r).unwrap(), fx::cocommutator("galilei-embedding.delta").1);
    assert_mod(&schouten(&fam.algebra, &prop.r).unwrap(), &fx::schouten("galilei-embedding.rmat"), &rep.residual);
    assert_restriction("galilei", &fam, &talg, &rep);
}

#[test]
fn coboundary_galilei_bialgebras_satisfy_the_residual() {
    let (_, talg, rep) = run("galilei");
    for file in ["galilei-standard.rmat", "galilei-nonstandard.rmat"] {
        let (g, r) = fx::rmatrix(file);
        assert_eq!(g.names(), talg.names());
        let d = delta_from_r(&g, &r).unwrap();
        // read the nine Galilei parameters off δ through the reference table
        let (_, general) = fx::cocommutator("galilei.delta");
        let mut eqs = Vec::new();
        for (a, b) in d.rows.iter().zip(&general.rows) {
            eqs.extend((a - b).terms().map(|(_, c)| c.clone()));
        }
        let params = ["alpha", "nu", "xi", "beta1", "beta2", "beta3", "beta4", "beta5", "beta6"];
        let (point, bad) = lieb_core::bialgebra::linear_bindings(&eqs, &params).unwrap();
        assert!(bad.is_empty(), "{file}: {bad:?}");
        let point: Bindings = point.into_iter().map(|(k, v)| (format!("{k}"), v)).collect();
        for p in &rep.residual {
            assert!(p.substitute(&point).unwrap().is_zero(), "{file}: {p}");
        }
        for k in rep.forced.keys() {
            assert!(point.get(k).is_some_and(PolyExpr::is_zero), "{file}: {k}");
        }
    }
}

#[test]
fn galilei_non_coboundary_point() {
    // a3 = 0, beta1 = beta2 = beta3 = 0 leaves a D∧M, P∧K family
    let (fam, _, rep) = run("galilei");
    let zero: Bindings = ["a3", "beta1", "beta2", "beta3"].iter().map(|n| (n.to_string(), PolyExpr::zero())).collect();
    let r = proposition_rmatrix(&rep).unwrap().r.substitute(&zero).unwrap();
    let alg = &fam.algebra;
    let i = |n: &str| alg.index(n).unwrap();
    let half = lieb_core::symkernel::ratio(1, 2);
    let want = Wedge::from_terms(
        6,
        2,
        &[
            (vec![i("D"), i("M")], (s("beta4") - s("xi")).scale(&half)),
            (vec![i("P"), i("K")], -(s("beta4") + s("xi")).scale(&half)),
        ],
    );
    assert_eq!(r, want);
    assert!(RMatrixFamily::new(alg, r).unwrap().constraints.is_empty());
}
