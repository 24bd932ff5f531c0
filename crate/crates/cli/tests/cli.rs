use std::process::{Command, Output};

fn sharygin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sharygin"))
        .args(args)
        .env_remove("SHARYGIN_THREADS")
        .output()
        .expect("spawn sharygin")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn check_triangle_flagship() {
    let o = sharygin(&["check-triangle", "18800081", "1481089", "19214131"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().last(), Some("SHARYGIN"));
}

#[test]
fn check_triangle_plain_and_degenerate() {
    let o = sharygin(&["check-triangle", "3", "4", "5"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("NOT SHARYGIN"));
    assert_eq!(code(&sharygin(&["check-triangle", "1", "2", "3"])), 2);
    assert_eq!(code(&sharygin(&["check-triangle", "1", "x", "3"])), 2);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&sharygin(&["frobnicate"])), 2);
    assert_eq!(code(&sharygin(&[])), 2);
    assert_eq!(code(&sharygin(&["torsion", "--bogus"])), 2);
    assert_eq!(code(&sharygin(&["--precision", "32", "torsion"])), 2);
    assert_eq!(code(&sharygin(&["--tolerance", "0", "torsion"])), 2);
    assert_eq!(code(&sharygin(&["--threads", "0", "torsion"])), 2);
    assert_eq!(
        code(&sharygin(&["heptagon-search", "--exact", "--numeric"])),
        2
    );
    assert_eq!(code(&sharygin(&["heptagon-search", "--nmax", "2"])), 2);
    assert_eq!(code(&sharygin(&["add", "1,2", "0,0"])), 2);
    assert_eq!(code(&sharygin(&["--help"])), 0);
}

#[test]
fn threads_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_sharygin"))
        .arg("torsion")
        .env("SHARYGIN_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    let bad = Command::new(env!("CARGO_BIN_EXE_sharygin"))
        .arg("torsion")
        .env("SHARYGIN_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(code(&bad), 2);
}

#[test]
fn torsion_prints_z2() {
    let o = sharygin(&["torsion"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("torsion subgroup: {O, (0, 0)}"));
}

#[test]
fn verify_point_reports_off_curve() {
    let ok = sharygin(&["verify-point", "--form", "cubic", "25:-32:17"]);
    assert_eq!(code(&ok), 0);
    let text = stdout(&ok);
    assert!(text.contains("(36:-228:1)"), "{text}");
    let off = sharygin(&["verify-point", "--form", "weierstrass", "1:2:3"]);
    assert_eq!(code(&off), 1);
    assert_eq!(code(&sharygin(&["verify-point", "0:0:0"])), 2);
    assert_eq!(code(&sharygin(&["verify-point", "1:2"])), 2);
}

#[test]
fn add_and_mul() {
    let o = sharygin(&["add", "-4,-12", "0,0"]);
    assert_eq!(stdout(&o).trim(), "(8, -24)");
    let o = sharygin(&["mul", "2", "-4,-12"]);
    assert_eq!(stdout(&o).trim(), "(4, 4)");
    let o = sharygin(&["mul", "-1", "-4,-12"]);
    assert_eq!(stdout(&o).trim(), "(-4, 12)");
    let o = sharygin(&["add", "0,0", "0,0"]);
    assert_eq!(stdout(&o).trim(), "O");
}

#[test]
fn enumerate_json_to_stdout() {
    let o = sharygin(&["enumerate", "--nmax", "30", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let triangles: Vec<String> = text
        .lines()
        .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap())
        .filter(|v| !v["triangle"].is_null())
        .map(|v| v["label"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(triangles, ["9A+D", "16A", "23A+D", "30A"]);
    assert_eq!(text.lines().count(), 60);
}

#[test]
fn enumerate_is_deterministic_and_resumable() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let cp = dir.path().join("b.cp");
    let path = |p: &std::path::Path| p.to_str().unwrap().to_string();
    let run = |nmax: &str, out: &str, cp: Option<&str>| {
        let mut args = vec![
            "enumerate",
            "--nmax",
            nmax,
            "--format",
            "csv",
            "--output",
            out,
        ];
        if let Some(cp) = cp {
            args.extend(["--checkpoint", cp]);
        }
        sharygin(&args)
    };
    assert_eq!(code(&run("50", &path(&a), None)), 0);
    assert_eq!(code(&run("20", &path(&b), Some(&path(&cp)))), 0);
    let resumed = run("50", &path(&b), Some(&path(&cp)));
    assert_eq!(code(&resumed), 0);
    assert!(String::from_utf8_lossy(&resumed.stderr).contains("resumed at n = 20"));
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());

    let s1 = sharygin(&["enumerate", "--nmax", "40", "--format", "csv"]);
    let s2 = sharygin(&[
        "--threads",
        "1",
        "enumerate",
        "--nmax",
        "40",
        "--format",
        "csv",
    ]);
    assert_eq!(s1.stdout, s2.stdout);
    assert_eq!(stdout(&s1).lines().count(), 81);
    assert_eq!(code(&sharygin(&["enumerate", "--checkpoint", "x.cp"])), 2);
}

#[test]
fn hasse_scan_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("hasse.csv");
    let o = sharygin(&[
        "hasse-scan",
        "--pmax",
        "200",
        "--csv",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("violations of a_p^2 <= 4p: 0"));
    let text = std::fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("p,Np,ap"));
    assert_eq!(lines.next(), Some("5,9,-4"));
    assert_eq!(lines.next(), Some("7,9,-2"));
}

#[test]
fn count_points_table() {
    let o = sharygin(&["count-points", "--pmax", "13"]);
    assert_eq!(stdout(&o), "p,Np,ap\n5,9,-4\n7,9,-2\n11,11,0\n13,19,-6\n");
}

#[test]
fn heptagon_search_json_lines() {
    let exact = sharygin(&["heptagon-search", "--nmax", "21", "--exact"]);
    let numeric = sharygin(&["heptagon-search", "--nmax", "21", "--numeric"]);
    assert_eq!(code(&exact), 0);
    assert_eq!(exact.stdout, numeric.stdout);
    assert_eq!(
        stdout(&exact),
        "{\"N\":7,\"m\":1,\"n\":2}\n{\"N\":7,\"m\":2,\"n\":1}\n\
         {\"N\":14,\"m\":2,\"n\":4}\n{\"N\":14,\"m\":4,\"n\":2}\n\
         {\"N\":21,\"m\":3,\"n\":6}\n{\"N\":21,\"m\":6,\"n\":3}\n"
    );
}

#[test]
fn report_commands_succeed() {
    for cmd in [
        "appendix-verify",
        "catalog-verify",
        "descent-check",
        "inflexions",
    ] {
        let o = sharygin(&[cmd]);
        assert_eq!(code(&o), 0, "{cmd}: {}", String::from_utf8_lossy(&o.stderr));
    }
    let o = sharygin(&["growth-cert", "--steps", "3", "--full"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("p_1 = "));
    assert_eq!(code(&sharygin(&["growth-cert", "--start", "0"])), 2);
}
