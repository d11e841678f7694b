use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_reflexive"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

fn json(args: &[&str]) -> Value {
    let o = run(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn chi_quartic_agreement() {
    let o = run(&["chi", "--hypersurface", "4", "--det", "1", "--curve", "3,1"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("chi(F)  = 3"), "{s}");
    assert!(s.contains("chi(F*) = 0"), "{s}");
    assert!(s.contains("closed form  = 3  ok"), "{s}");
    assert!(s.contains("dual formula = 0  ok"), "{s}");
}

#[test]
fn chi_quintic_json() {
    let v = json(&["chi", "--hypersurface", "5", "--det", "0", "--curve", "6,4", "--json"]);
    assert_eq!(v["chi"], "3");
    assert_eq!(v["c3"], "6");
    assert_eq!(v["chi_dual"], "3");
    assert_eq!(v["agreement"], true);
}

#[test]
fn chi_rational_values_are_strings() {
    let v = json(&["chi", "--threefold", "2,1,7/2", "--det", "1", "--c2", "1/2", "--c3", "1", "--json"]);
    assert!(v["chi"].is_string());
    assert!(v["closed_form"].is_null());
    assert!(v["agreement"].is_null());
}

#[test]
fn exit_codes() {
    // c3 = -1
    assert_eq!(code(&["chi", "--hypersurface", "4", "--det", "0", "--curve", "1,0"]), 2);
    assert_eq!(code(&["chi", "--hypersurface", "4", "--det", "0", "--c2", "1", "--c3", "-1"]), 2);
    assert_eq!(code(&["chi", "--hypersurface", "0", "--det", "0", "--curve", "1,0"]), 1);
    assert_eq!(code(&["chi", "--hypersurface", "4", "--det", "0", "--curve", "0,0"]), 1);
    assert_eq!(code(&["chi", "--hypersurface", "4", "--threefold", "4,1,22", "--det", "0", "--curve", "3,0"]), 1);
    assert_eq!(code(&["chi", "--hypersurface", "4", "--det", "1", "--curve", "3,1", "--assume", "nope"]), 1);
    assert_eq!(code(&["chi", "--hypersurface", "4"]), 1);
    assert_eq!(code(&["--help"]), 0);
    assert_eq!(code(&["frobnicate"]), 1);
    // Contradiction: components=3 against h^2 = 1 forced on the quartic.
    assert_eq!(
        code(&[
            "vanish", "--hypersurface", "4", "--det", "1", "--curve", "3,1",
            "--assume", "section", "--assume", "components=3",
        ]),
        2
    );
    // det F = ω_X with c3 > 0 and an asserted H^2(F) = 0.
    assert_eq!(
        code(&["vanish", "--hypersurface", "5", "--det", "0", "--curve", "6,3", "--assume", "h2-f-zero"]),
        2
    );
    assert_eq!(code(&["bound", "--hypersurface", "4", "--det", "1", "--curve", "3,1", "--n", "1"]), 1);
}

#[test]
fn scan_header_and_quintic_row() {
    let o = run(&["scan", "--r", "5..5", "--k", "0..0", "--d", "6..6", "--pa", "4..4"]);
    assert!(o.status.success());
    let s = stdout(&o);
    let mut lines = s.lines();
    assert_eq!(lines.next(), Some("r,k,d,pa,c3,chi,chi_dual,sectionbound_holds,oldbound_n,moduli_dim"));
    assert_eq!(lines.next(), Some("5,0,6,4,6,3,3,true,31,1"));
    assert_eq!(lines.next(), None);
}

#[test]
fn scan_oldbound_column() {
    let s = stdout(&run(&["scan", "--r", "5..5", "--k", "0..0", "--d", "19..20", "--pa", "1..1"]));
    let cols: Vec<Vec<&str>> = s.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(cols[0][8], "31");
    assert_eq!(cols[1][8], "66");
}

#[test]
fn scan_matches_chi() {
    let row = stdout(&run(&["scan", "--r", "4..4", "--k", "1..1", "--d", "3..3", "--pa", "1..1"]));
    let fields: Vec<&str> = row.lines().nth(1).unwrap().split(',').collect();
    let v = json(&["chi", "--hypersurface", "4", "--det", "1", "--curve", "3,1", "--json"]);
    assert_eq!(fields[4], v["c3"]);
    assert_eq!(fields[5], v["chi"]);
    assert_eq!(fields[6], v["chi_dual"]);
}

#[test]
fn scan_filters_and_errors() {
    let args = ["scan", "--r", "4..4", "--k", "0..0", "--d", "1..2", "--pa", "0..0"];
    let valid = stdout(&run(&args));
    assert_eq!(valid.lines().count(), 2);
    let mut all_args = args.to_vec();
    all_args.extend(["--filter", "all"]);
    let all = stdout(&run(&all_args));
    assert!(all.lines().any(|l| l == "4,0,1,0,invalid:-1,,,,,"), "{all}");
    assert_eq!(code(&["scan", "--r", "5..4", "--k", "0..0", "--d", "1..1", "--pa", "0..0"]), 1);
    assert_eq!(code(&["scan", "--r", "0..1", "--k", "0..0", "--d", "1..1", "--pa", "0..0"]), 1);
}

#[test]
fn scan_is_deterministic() {
    let args = ["scan", "--r", "1..6", "--k", "-3..3", "--d", "1..6", "--pa", "0..5", "--filter", "all"];
    let a = stdout(&run(&args));
    assert_eq!(a, stdout(&run(&args)));
    assert_eq!(a.lines().count(), 1 + 6 * 7 * 6 * 6);
}

#[test]
fn vanish_rational_conic() {
    let base = [
        "vanish", "--hypersurface", "3", "--det", "1", "--curve", "2,0",
        "--assume", "section", "--assume", "not-line",
    ];
    let mut with = base.to_vec();
    with.extend(["--assume", "rational"]);
    let s = stdout(&run(&with));
    assert!(s.contains("H^2(F*) = 0"), "{s}");
    assert!(s.contains("H^3(F*) = 0"), "{s}");
    assert!(s.contains("by rational-curve-dual-h23"));
    let s = stdout(&run(&base));
    assert!(!s.contains("H^2(F*) = 0"), "{s}");
    assert!(!s.contains("H^3(F*) = 0"), "{s}");
}

#[test]
fn vanish_json_round_trips() {
    let o = run(&[
        "vanish", "--hypersurface", "3", "--det", "1", "--curve", "2,0",
        "--assume", "section", "--assume", "rational", "--assume", "not-line", "--json",
    ]);
    let s = stdout(&o);
    let set: reflexive::vanish::FactSet = serde_json::from_str(&s).unwrap();
    assert_eq!(serde_json::to_string_pretty(&set).unwrap() + "\n", s);
    assert!(set.is_zero(reflexive::vanish::Group::new(3, reflexive::vanish::SheafExpr::Dual(0))));
}

#[test]
fn moduli_conic_fanocor() {
    let v = json(&[
        "moduli", "--hypersurface", "3", "--det", "1", "--curve", "2,0",
        "--assume", "stable", "--assume", "section", "--assume", "rational",
        "--assume", "normal-h1-zero", "--json",
    ]);
    let fanocor = v.as_array().unwrap().iter().find(|r| r["theorem"] == "fanocor").unwrap();
    assert_eq!(fanocor["smooth"], true);
    assert_eq!(fanocor["dimension"], "2");
}

#[test]
fn moduli_quintic_cy() {
    let v = json(&[
        "moduli", "--hypersurface", "5", "--det", "0", "--curve", "5,1",
        "--assume", "stable", "--assume", "section", "--assume", "h1-ic-det-zero",
        "--assume", "normal-h1-zero", "--theorem", "cy", "--json",
    ]);
    let r = &v[0];
    assert_eq!(r["smooth"], true);
    assert_eq!(r["dimension"], "0");
    assert!(r["notes"].as_array().unwrap().iter().any(|n| n.as_str().unwrap().contains("tension")));
    let reports: Vec<reflexive::moduli::ModuliReport> = serde_json::from_value(v).unwrap();
    assert!(reports[0].is_smooth());
}

#[test]
fn bound_reports() {
    let v = json(&["bound", "--hypersurface", "5", "--det", "0", "--curve", "6,4", "--n", "0", "--json"]);
    let bounds = v["bounds"].as_array().unwrap();
    let get = |name: &str| bounds.iter().find(|b| b["name"] == name).unwrap();
    assert_eq!(get("section_c3_bound")["rhs"], "18");
    assert_eq!(get("section_c3_bound")["holds"], true);
    // n = 0 reduces the twisted bound to the plain one.
    assert_eq!(get("firstbound_c3")["rhs"], "18");
    assert_eq!(get("oldbound_threshold")["threshold"], 31);
    assert_eq!(v["p_threshold"]["p"], 1);
}

#[test]
fn info_and_ext() {
    let v = json(&["info", "--hypersurface", "3", "--json"]);
    assert_eq!(v["threefold"]["a"], 2);
    assert_eq!(v["threefold"]["b"], "12");
    assert_eq!(v["chi_o"], "1");
    assert!(v["sheaf"].is_null());
    let v = json(&["info", "--hypersurface", "5", "--det", "0", "--c2", "6", "--c3", "6", "--json"]);
    assert_eq!(v["sheaf"]["genus_reading"]["genus"], "4");
    assert_eq!(v["sheaf"]["acm"]["acm_possible"], false);
    let v = json(&["ext", "--h", "1,2,3,0", "--e1", "4", "--json"]);
    assert_eq!(v["ext1_min"], 3);
    assert_eq!(v["ext1_max"], 6);
}

#[test]
fn selftest_mutation_fails() {
    let o = run(&["selftest", "--mutation", "broken-twist"]);
    assert_eq!(o.status.code(), Some(3));
    let s = stdout(&o);
    assert!(s.lines().any(|l| l.starts_with("FAIL twist-group-action")), "{s}");
}

#[test]
fn closed_stdout_is_not_an_error() {
    use std::io::Read;
    use std::process::Stdio;
    let mut child = Command::new(env!("CARGO_BIN_EXE_reflexive"))
        .args(["scan", "--r", "1..20", "--k", "-5..5", "--d", "1..30", "--pa", "0..20"])
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut first = [0u8; 16];
    child.stdout.take().unwrap().read_exact(&mut first).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(&first, b"r,k,d,pa,c3,chi,");
    assert!(out.status.success());
    assert!(out.stderr.is_empty(), "{}", String::from_utf8_lossy(&out.stderr));
}
