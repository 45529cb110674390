use std::process::Command;

use lieb_cli::run;

fn args(s: &str) -> Vec<String> {
    s.split_whitespace().map(str::to_string).collect()
}

fn lieb(s: &str) -> (String, i32) {
    run(args(s))
}

fn temp_file(name: &str, text: &str) -> String {
    let dir = std::env::temp_dir().join(format!("lieb-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(lieb("frobnicate").1, 2);
    assert_eq!(lieb("schouten --r general.rmat --bogus").1, 2);
    assert_eq!(lieb("schouten").1, 2);
    let (out, code) = lieb("delta --r missing.rmat");
    assert_eq!(code, 2);
    assert!(out.contains("missing.rmat"));
    assert_eq!(lieb("classify --r d-primitive.rmat --orientation K,M").1, 2);
    assert_eq!(lieb("hopf-check --case nosuch --order 2").1, 2);
    assert_eq!(lieb("--help").1, 0);
}

#[test]
fn schouten_of_the_general_r() {
    let (out, code) = lieb("schouten --r general.rmat");
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("discriminant K^M^P = -a1*b3 + a3*a6 - a3*b1 + b3*b6 - c2^2"), "{out}");
    assert!(out.contains("schouten modulo constraints = (-a1*b3 + a3*a6 - a3*b1 + b3*b6 - c2^2)*K^M^P"));
    assert_eq!(out.matches("[PASS] ad_").count(), 6);
}

#[test]
fn classify_labels() {
    let (out, code) = lieb("classify --r d-primitive.rmat --at c2=0");
    assert_eq!(code, 0);
    assert!(out.contains("label = non-standard"), "{out}");
    let (out, _) = lieb("classify --r d-primitive.rmat --at c2=1");
    assert!(out.contains("label = standard"));
    assert!(lieb("classify --r d-primitive.rmat").0.contains("discriminant = -c2^2"));
}

#[test]
fn json_mirrors_the_text_report() {
    let (out, code) = lieb("classify --r d-primitive.rmat --at c2=0 --json");
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["command"], "classify --r d-primitive.rmat --at c2=0");
    let label = v["output"].as_array().unwrap().iter().find(|e| e["key"] == "label").unwrap();
    assert_eq!(label["value"], "non-standard");
    assert_eq!(v["checks"][0]["pass"], true);
}

#[test]
fn reports_are_deterministic() {
    for cmd in ["embed --algebra schrodinger.alg --r general.rmat --sub D,K,P,M --target h4.delta --map h4.map", "cojacobi --algebra schrodinger.alg"] {
        assert_eq!(lieb(cmd), lieb(cmd));
    }
}

#[test]
fn embed_checks_the_subalgebra_names() {
    let base = "embed --algebra schrodinger.alg --r general.rmat --target h4.delta --map h4.map --sub";
    let (out, code) = lieb(&format!("{base} D,K,P,M"));
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("residual:\n  alpham*theta - alpham*xi = 0"), "{out}");
    let (out, code) = lieb(&format!("{base} D,K,P"));
    assert_eq!(code, 1);
    assert!(out.contains("[FAIL] map image spans --sub: map uses D, K, P, M"));
    // a generic parent r embeds the oscillator bialgebras as well
    let (out, code) = lieb("embed --algebra schrodinger.alg --target h4.delta --map h4.map --sub D,K,P,M");
    assert_eq!(code, 0, "{out}");
}

#[test]
fn cocycle_solve_dimension() {
    let (out, code) = lieb("cocycle-solve --algebra schrodinger.alg");
    assert_eq!(code, 0);
    assert!(out.contains("dimension = 15"));
    assert!(out.contains("coboundary = yes"));
}

#[test]
fn jacobi_failure_in_an_input_algebra_exits_1() {
    let alg = temp_file("bad.alg", "generators: A, B, C\n[A,B] = A\n[A,C] = B\n");
    let (out, code) = lieb(&format!("cocycle-solve --algebra {alg}"));
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("[FAIL] input algebra satisfies Jacobi"));
    let syntax = temp_file("syntax.alg", "generators: A, B\n[A,B] = Q\n");
    assert_eq!(lieb(&format!("cocycle-solve --algebra {syntax}")).1, 2);
}

#[test]
fn sklyanin_with_constraints_and_points() {
    let (out, code) = lieb("sklyanin --r p-primitive.rmat --family p-primitive");
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("[PASS] jacobi modulo constraints"));
    let (out, code) = lieb("sklyanin --r h-standard.rmat --family h-standard --at c2=1");
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("[PASS] jacobi\n"));
    // outside the constraint variety the check is refused
    let (out, code) = lieb("sklyanin --r p-primitive.rmat --at a1=1,a4=1,a5=1,c1=1");
    assert_eq!(code, 1, "{out}");
    assert_eq!(lieb("sklyanin --r h4.rmat").1, 2);
}

#[test]
fn hopf_check_rejects_undefined_truncations() {
    let src = "name: bad\ngenerators: A, B\ndeformation: z\n[A,B] = arcsin(z*A)\n";
    let path = temp_file("bad.hopf", src);
    let (out, code) = lieb(&format!("hopf-check --case {path} --order 2"));
    assert_eq!(code, 2);
    assert!(out.contains("unsupported function `arcsin`"), "{out}");
}

#[test]
fn binary_reads_the_order_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_lieb"))
        .args(["hopf-check", "--case", "ucc"])
        .env("LIEB_ORDER", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("order = 2\n"));
}

#[test]
fn binary_verify_suite_passes() {
    let out = Command::new(env!("CARGO_BIN_EXE_lieb")).args(["verify-suite", "--json"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["pass"] == true));
    let sections: std::collections::BTreeSet<&str> = checks.iter().map(|c| c["section"].as_str().unwrap()).collect();
    assert_eq!(sections.len(), 12);
}
