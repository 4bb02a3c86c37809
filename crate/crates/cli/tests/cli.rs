use std::process::{Command, Output};

fn pdgenus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pdgenus"))
        .args(args)
        .env_remove("PD_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = pdgenus(args);
    assert!(
        o.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    stdout(&o)
}

fn code(args: &[&str]) -> i32 {
    pdgenus(args).status.code().expect("exited normally")
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut full = vec!["--format", "structured"];
    full.extend_from_slice(args);
    serde_json::from_str(&ok(&full)).unwrap()
}

#[test]
fn eval_prints_polynomials() {
    assert_eq!(ok(&["eval", "--rotation", "(a,b,c,d,-b,-a,c,d)"]), "4z^2 + 12z^4\n");
    assert_eq!(
        ok(&["eval", "--pdg", "--rotation", "(a,c,h,c,b,h,b,a,d,g,e,f,e,d,g,f)"]),
        "48z + 160z^2 + 48z^3\n"
    );
}

#[test]
fn eval_reads_graph_files() {
    let dir = std::env::temp_dir().join(format!("pdgenus-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("theta.graph");
    // Two vertices joined by three edges.
    std::fs::write(&path, "# theta graph\nv0: a b c\nv1: c b a\n").unwrap();
    let out = ok(&["eval", "--graph", path.to_str().unwrap()]);
    assert_eq!(out, "2 + 6z^2\n");
    assert_eq!(ok(&["eval", "--pdg", "--graph", path.to_str().unwrap()]), "2 + 6z\n");
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["eval", "--pdg", "--rotation", "(a,-a)"]), 3);
    assert_eq!(code(&["eval", "--rotation", "(a,a,a)"]), 2);
    assert_eq!(code(&["eval", "--rotation", "(-a,-a)"]), 2);
    assert_eq!(code(&["eval"]), 2);
    assert_eq!(code(&["eval", "--rotation", "(a,a)", "--graph", "x"]), 2);
    assert_eq!(code(&["eval", "--graph", "/nonexistent/pdgenus.graph"]), 2);
    assert_eq!(code(&["dual", "--rotation", "(a,a)", "--subset", "q"]), 2);
    assert_eq!(code(&["enumerate", "--edges", "7"]), 4);
    assert_eq!(code(&["search", "--conjecture", "5.3", "--max-edges", "6"]), 4);
    assert_eq!(code(&["search", "--conjecture", "4.2", "--max-edges", "2"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
}

#[test]
fn error_messages_name_the_culprit() {
    let o = pdgenus(&["eval", "--rotation", "(a,b,b,a,a)"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("\"a\""));
    let o = pdgenus(&["dual", "--rotation", "(a,a)", "--subset", "zz"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("zz"));
}

#[test]
fn seq_factor_dual() {
    assert_eq!(
        ok(&["seq", "--rotation", "(a,b,-a,c,b,i,i,d,e,c,f,g,h,d,j,-j,h,-e,g,f)"]),
        "(-4, -1, -0, 0, 1, 2, 2, 2, 3, 5)\n"
    );
    assert_eq!(ok(&["factor", "--rotation", "(a,a,b,b,c,c)"]).lines().count(), 3);
    assert_eq!(ok(&["factor", "--rotation", "(a,b,a,b)"]).lines().count(), 1);

    let dual = ok(&["dual", "--rotation", "(a,a)", "--subset", "a"]);
    assert_eq!(dual, "v0: a\nv1: a\n");
    let s = json(&["dual", "--rotation", "(a,a)", "--subset", "a"]);
    assert_eq!(s["meta"]["vertices"], 2);
    assert_eq!(s["meta"]["edges"], 1);
    assert_eq!(s["meta"]["twisted"], serde_json::json!([]));
    assert_eq!(ok(&["dual", "--rotation", "(a,b,a,b)"]), "v0: a b a b\n");
}

#[test]
fn census_commands() {
    let listing = ok(&["enumerate", "--edges", "3", "--prime"]);
    assert_eq!(listing.lines().last(), Some("10 classes"));
    assert_eq!(listing.lines().count(), 11);
    let orientable = ok(&["enumerate", "--edges", "4", "--prime", "--orientable"]);
    assert_eq!(orientable.lines().last(), Some("6 classes"));

    let hits = ok(&["search", "--conjecture", "3.1", "--max-edges", "3"]);
    assert_eq!(
        hits,
        "(1,2,3,1,2,3)\t(2, 2, 2)\tprime\torientable\t8z^2\t8z\n1 hits\n"
    );
    let gaps = ok(&["search", "--conjecture", "5.3", "--max-edges", "4"]);
    assert!(gaps.lines().any(|l| l.contains("(-2, -2, 3, 3)") && l.contains("4z^2 + 12z^4")));
    assert_eq!(code(&["enumerate", "--edges", "3", "--cap", "2"]), 4);
    assert_eq!(code(&["search", "--conjecture", "3.1", "--max-edges", "6", "--cap", "6"]), 0);
}

#[test]
fn structured_matches_text() {
    for args in [
        vec!["eval", "--rotation", "(a,b,c,a,b,c)"],
        vec!["eval", "--pdg", "--rotation", "(a,b,a,c,d,b,e,d,c,e)"],
    ] {
        let text = ok(&args);
        let s = json(&args);
        assert_eq!(s["meta"]["text"].as_str().unwrap(), text.trim_end());
        let rebuilt: Vec<String> = s["polynomial"]
            .as_object()
            .unwrap()
            .iter()
            .map(|(d, c)| format!("{c}*z^{d}"))
            .collect();
        let rebuilt: pdgenus::GenusPolynomial = rebuilt.join(" + ").parse().unwrap();
        assert_eq!(rebuilt.to_string(), text.trim_end());
        assert_eq!(s["input"], args[args.len() - 1]);
    }

    let text = ok(&["enumerate", "--edges", "2"]);
    let s = json(&["enumerate", "--edges", "2"]);
    let classes = s["classes"].as_array().unwrap();
    assert_eq!(classes.len() + 1, text.lines().count());
    for (c, line) in classes.iter().zip(text.lines()) {
        assert!(line.starts_with(c["canonical"].as_str().unwrap()));
        assert!(line.contains(c["sequence"].as_str().unwrap()));
    }
}

#[test]
fn output_independent_of_threads() {
    let cases: [&[&str]; 4] = [
        &["eval", "--rotation", "(a,b,c,d,e,f,g,a,b,c,d,e,f,g)"],
        &["enumerate", "--edges", "4"],
        &["search", "--conjecture", "5.3", "--max-edges", "4"],
        &["--format", "structured", "enumerate", "--edges", "3", "--prime"],
    ];
    for args in cases {
        let one = ok(args);
        for t in ["2", "5"] {
            let mut full = vec!["--threads", t];
            full.extend_from_slice(args);
            assert_eq!(ok(&full), one, "{args:?} with {t} threads");
        }
        let env = Command::new(env!("CARGO_BIN_EXE_pdgenus"))
            .args(args)
            .env("PD_THREADS", "3")
            .output()
            .unwrap();
        assert_eq!(stdout(&env), one);
    }
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("pdgenus-out-{}.txt", std::process::id()));
    let o = pdgenus(&["--out", path.to_str().unwrap(), "seq", "--rotation", "(a,-a,b,b)"]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "(-0, 0)\n");
    std::fs::remove_file(path).unwrap();
}

#[test]
fn verify_paper_passes() {
    let o = pdgenus(&["verify-paper"]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{text}");
    assert!(!text.contains("[FAIL]"));
    for n in 1..=10 {
        assert!(text.contains(&format!("[PASS] #{n} ")), "criterion {n} missing");
    }
    // The theta table runs t = 1..12.
    assert!(text.contains("\n10\t5\t512z^4 + 512z^5\t512z^4 + 512z^5\n"));
    assert!(text.contains("\n12\t6\t"));
}
