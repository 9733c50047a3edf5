use std::path::Path;
use std::process::{Command, Output};

fn frex(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_frex"))
        .args(args)
        .env_remove("FREX_COLOR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn solves_the_additive_goal_with_commutativity() {
    let o = frex(&["solve", "--pres", "cmonoid", "--mode", "frex", "--algebra", "nat-add", "(x + 3) + 2 = 5 + x"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.starts_with("  (x + 3) + 2\n"), "{out}");
    assert!(out.trim_end().ends_with("5 + x"), "{out}");
    assert!(out.contains("eval 3 + 2"), "{out}");
}

#[test]
fn plain_monoid_frex_cannot_commute_constants_past_variables() {
    let o = frex(&["solve", "--pres", "monoid", "--mode", "frex", "--algebra", "nat-add", "(x + 3) + 2 = 5 + x"]);
    assert_eq!(code(&o), 1);
    let o = frex(&["solve", "--pres", "monoid", "--mode", "frex", "--algebra", "nat-add", "(x + 3) + 2 = x + 5"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
}

#[test]
fn commutation_is_not_provable_in_monoids() {
    let o = frex(&["solve", "--pres", "monoid", "--mode", "fral", "x + y = y + x"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("not provable"));
    assert!(stdout(&o).is_empty());
}

#[test]
fn parse_errors_exit_two_and_name_the_token() {
    let o = frex(&["solve", "--pres", "monoid", "--mode", "fral", "x + ) = x"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("found `)`"), "{}", stderr(&o));
    let o = frex(&["solve", "--pres", "monoid", "--mode", "fral", "x"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("expected `=`"), "{}", stderr(&o));
}

#[test]
fn usage_errors_exit_two() {
    let cases: [&[&str]; 5] = [
        &["solve", "--pres", "monoid", "--mode", "frex", "x = x"],
        &["solve", "--pres", "monoid", "--mode", "fral", "--algebra", "nat-add", "x = x"],
        &["solve", "--pres", "cmonoid", "--mode", "frex", "--algebra", "mat2", "x = x"],
        &["solve", "--pres", "monoid", "--mode", "frex", "--algebra", "reals", "x = x"],
        &["solve", "--pres", "group", "--mode", "fral", "x = x"],
    ];
    for args in cases {
        assert_eq!(code(&frex(args)), 2, "{args:?}");
    }
    let o = frex(&["solve", "--pres", "monoid", "--mode", "fral", "x′ = x"]);
    assert_eq!(code(&o), 2, "inv outside involutive theories");
}

fn emit(dir: &Path, args: &[&str]) -> std::path::PathBuf {
    let path = dir.join("proof.cert");
    let mut full: Vec<&str> = args.to_vec();
    let p = path.to_str().unwrap().to_owned();
    full.push("--emit");
    full.push(&p);
    let o = frex(&full);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    path
}

#[test]
fn emitted_certificates_check_in_a_separate_process() {
    let dir = tempfile::tempdir().unwrap();
    let runs: [&[&str]; 4] = [
        &["solve", "--pres", "cmonoid", "--mode", "frex", "--algebra", "nat-add", "(2 + x) + (y + 3) = x + (y + 5)"],
        &["solve", "--pres", "invmonoid", "--mode", "fral", "inv(inv(x)) = x"],
        &["solve", "--pres", "invmonoid", "--mode", "frex", "--algebra", "string", "(\"hello\" * x)′ = x′ * \"olleh\""],
        &["solve", "--pres", "monoid", "--mode", "frex", "--algebra", "mat2", "[[1, 1], [0, 1]] * ([[1, 2], [0, 1]] * x) = [[1, 3], [0, 1]] * x"],
    ];
    for args in runs {
        let cert = emit(dir.path(), args);
        let o = frex(&["check", cert.to_str().unwrap()]);
        assert_eq!(code(&o), 0, "{args:?}: {}", stderr(&o));
        assert!(stdout(&o).starts_with("verified: "));
    }
}

#[test]
fn tampered_certificates_fail_with_a_step_index() {
    let dir = tempfile::tempdir().unwrap();
    let cert = emit(
        dir.path(),
        &["solve", "--pres", "cmonoid", "--mode", "frex", "--algebra", "nat-add", "(x + 3) + 2 = 5 + x"],
    );
    let text = std::fs::read_to_string(&cert).unwrap();
    let tampered = text.replacen("\"axiom\": \"assoc\"", "\"axiom\": \"comm\"", 1);
    assert_ne!(text, tampered);
    let bad = dir.path().join("tampered.cert");
    std::fs::write(&bad, tampered).unwrap();
    let o = frex(&["check", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("check failed at step"), "{}", stderr(&o));

    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(code(&frex(&["check", bad.to_str().unwrap()])), 1);
    let missing = dir.path().join("missing.cert");
    assert_eq!(code(&frex(&["check", missing.to_str().unwrap()])), 2);
}

#[test]
fn lemmas() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("lemma.cert");
    let o = frex(&["lemma", "--name", "unitSandwich", "--emit", cert.to_str().unwrap(), "0 + (x + 0) + 0 = x"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).starts_with("unitSandwich : "));
    let text = std::fs::read_to_string(&cert).unwrap();
    assert!(!text.contains("\"algebra\""));
    assert_eq!(code(&frex(&["check", cert.to_str().unwrap()])), 0);

    assert_eq!(code(&frex(&["lemma", "--name", "swap", "x * y = y * x"])), 1);
    assert_eq!(code(&frex(&["lemma", "--name", "swap", "--pres", "cmonoid", "x * y = y * x"])), 0);
    assert_eq!(code(&frex(&["lemma", "--name", "refl", "x = x"])), 0);
}

#[test]
fn output_styles() {
    let args = ["solve", "--pres", "monoid", "--mode", "fral", "0 + (x + 0) + 0 = x"];
    let plain = stdout(&frex(&args));
    assert!(!plain.contains('\x1b'));
    assert!(plain.contains("≡⟨"));

    let colored = Command::new(env!("CARGO_BIN_EXE_frex"))
        .args(args)
        .env("FREX_COLOR", "1")
        .output()
        .unwrap();
    assert!(String::from_utf8_lossy(&colored.stdout).contains("\x1b[1m"));

    let mut latex_args = args.to_vec();
    latex_args.extend(["--print", "latex"]);
    let latex = stdout(&frex(&latex_args));
    assert!(latex.starts_with("\\begin{align*}"));
    assert!(latex.trim_end().ends_with("\\end{align*}"));
}
