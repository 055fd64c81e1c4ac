use hopfoid_cli::{cmd_antipode, cmd_coproduct, cmd_star, cmd_verify, parse_generator, Format, RunConfig};
use std::process::Command;

fn hopfoid(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_hopfoid")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn star_prints_the_product_first() {
    for (alg, f, g, want) in [
        ("heisenberg3", "x1", "x2", "x1*x2 + 1/2*x3"),
        ("abelian(2)", "x1", "x2", "x1*x2"),
        ("su2", "x1", "x1", "x1^2"),
    ] {
        let (code, out) = hopfoid(&["star", alg, f, g]);
        assert_eq!(code, 0, "{alg}");
        assert_eq!(out.lines().next().unwrap(), want, "{alg}");
    }
}

#[test]
fn star_reports_every_twist() {
    let r = cmd_star(&RunConfig::new("kappa(2)"), "x1^2", "x2").unwrap();
    assert!(r.passed());
    let s = &r.sections[0];
    assert_eq!(s.checks.len(), 3);
    assert_eq!(s.values["twisted F_c"], s.values["oracle"]);
}

#[test]
fn heisenberg_coproduct_of_d3() {
    let r = cmd_coproduct(&RunConfig::new("heisenberg3"), Some("d3")).unwrap();
    assert!(r.passed());
    let s = &r.sections[0];
    assert_eq!(s.values["difference"], "0");
    for part in ["1/2 * d1 ⊗ d2", "-1/2 * d2 ⊗ d1"] {
        assert!(s.values["left"].contains(part), "{}", s.values["left"]);
    }
}

#[test]
fn abelian_coproduct_is_primitive() {
    let r = cmd_coproduct(&RunConfig::new("abelian(2)"), Some("1")).unwrap();
    assert_eq!(r.sections[0].values["left"].matches('⊗').count(), 2);
}

#[test]
fn generator_names() {
    assert_eq!(parse_generator(3, "d2").unwrap(), 1);
    assert_eq!(parse_generator(3, "3").unwrap(), 2);
    assert!(parse_generator(3, "d4").is_err());
    assert!(parse_generator(3, "x1").is_err());
}

#[test]
fn verify_abelian_passes_with_degeneracy_section() {
    let r = cmd_verify(&RunConfig::new("abelian(3)")).unwrap();
    assert!(r.passed(), "{}", r.render(Format::Text));
    assert!(r.sections.iter().any(|s| s.name == "abelian degeneracy"));
}

#[test]
fn verify_heisenberg_passes() {
    let (code, out) = hopfoid(&["verify", "heisenberg3", "--order", "4", "--degree", "3"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.ends_with("RESULT: PASS\n"));
}

#[test]
fn json_report_shape() {
    let (_, out) = hopfoid(&["verify", "abelian(2)", "--format", "json", "--seed", "3"]);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["K"], 4);
    assert_eq!(doc["D"], 3);
    assert_eq!(doc["working_order"], 7);
    assert_eq!(doc["seed"], 3);
    for s in doc["sections"].as_array().unwrap() {
        assert!(s["name"].is_string() && s["values"].is_object());
        for c in s["checks"].as_array().unwrap() {
            assert!(["PASS", "FAIL", "INFO"].contains(&c["status"].as_str().unwrap()));
        }
    }
}

#[test]
fn seed_changes_only_the_random_pairs() {
    let a = cmd_verify(&RunConfig { seed: 1, ..RunConfig::new("abelian(2)") }).unwrap();
    let b = cmd_verify(&RunConfig { seed: 2, ..RunConfig::new("abelian(2)") }).unwrap();
    for (x, y) in a.sections.iter().zip(&b.sections) {
        if x.name != "fuzz" {
            assert_eq!(x.values, y.values, "{}", x.name);
        }
    }
    let fa = a.sections.iter().find(|s| s.name == "fuzz").unwrap();
    let fb = b.sections.iter().find(|s| s.name == "fuzz").unwrap();
    assert_ne!(fa.values["pairs"], fb.values["pairs"]);
}

#[test]
fn antipode_heisenberg_values() {
    let r = cmd_antipode(&RunConfig::new("heisenberg3")).unwrap();
    assert!(r.passed());
    let s = &r.sections[0];
    assert_eq!(s.values["R"], "0");
    assert_eq!(s.values["V"], "1");
    assert_eq!(s.values["V_F(F_l)"], "1");
}

#[test]
fn antipode_kappa_values() {
    let r = cmd_antipode(&RunConfig::new("kappa(2)")).unwrap();
    assert!(r.passed(), "{}", r.render(Format::Text));
    let s = &r.sections[0];
    assert!(s.values["V"].starts_with("1 + 1/2 * d1"), "{}", s.values["V"]);
    assert_eq!(s.values["divergence degree"], "none");
}

#[test]
fn usage_errors() {
    let (code, _) = hopfoid(&["verify", "nonsense"]);
    assert_eq!(code, 2);
    let (code, _) = hopfoid(&["verify", "su2", "--order", "0"]);
    assert_eq!(code, 2);
    let (code, _) = hopfoid(&["star", "su2", "x1", "x9"]);
    assert_eq!(code, 2);
}
