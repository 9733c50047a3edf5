use std::process::Command;

use frex_kernel::presentation::{commutative_monoid, monoid};
use frex_kernel::{
    check_certificate, Certificate, CertificateError, CheckError, Direction, Equation, Frame, LinStep,
    LinearDerivation, Rule, Term, Value,
};

fn mul(a: Term, b: Term) -> Term {
    Term::app("·", vec![a, b])
}

fn one() -> Term {
    Term::constant("1")
}

fn axiom(name: &str, subst: Vec<Term>) -> Rule {
    Rule::Axiom {
        name: name.into(),
        subst,
    }
}

fn left(op_right: Term) -> Frame {
    Frame {
        op: "·".into(),
        before: vec![],
        after: vec![op_right],
    }
}

fn right(op_left: Term) -> Frame {
    Frame {
        op: "·".into(),
        before: vec![op_left],
        after: vec![],
    }
}

/// (1·(x·1))·1 = x in a generic monoid.
fn unit_sandwich() -> Certificate {
    let x = Term::var(0);
    let lhs = mul(mul(one(), mul(x.clone(), one())), one());
    let steps = vec![
        LinStep::new(axiom("rgtNeutrality", vec![x.clone()]), Direction::Forward)
            .within(right(one()))
            .within(left(one())),
        LinStep::new(axiom("lftNeutrality", vec![x.clone()]), Direction::Forward).within(left(one())),
        LinStep::new(axiom("rgtNeutrality", vec![x.clone()]), Direction::Forward),
    ];
    let proof = LinearDerivation {
        start: lhs.clone(),
        steps,
    };
    Certificate::new(monoid(), None, Equation::new(1, lhs, x), &proof, "unit sandwich")
}

/// (x+3)+2 = x+5 over the additive naturals.
fn additive() -> Certificate {
    let x = Term::var(0);
    let (two, three, five) = (Term::sta(2u64), Term::sta(3u64), Term::sta(5u64));
    let lhs = mul(mul(x.clone(), three.clone()), two.clone());
    let steps = vec![
        LinStep::new(axiom("assoc", vec![x.clone(), three, two]), Direction::Forward),
        LinStep::new(
            Rule::Eval {
                op: "·".into(),
                args: vec![Value::Nat(3), Value::Nat(2)],
            },
            Direction::Forward,
        )
        .within(right(x.clone())),
    ];
    let proof = LinearDerivation {
        start: lhs.clone(),
        steps,
    };
    Certificate::new(
        commutative_monoid(),
        Some("nat-add".into()),
        Equation::new(1, lhs, mul(x, five)),
        &proof,
        "additive",
    )
}

fn failing_step(cert: &Certificate) -> usize {
    match check_certificate(&cert.to_bytes()) {
        Err(CertificateError::CheckFailed { step, .. }) => step,
        other => panic!("expected a failed check, got {other:?}"),
    }
}

#[test]
fn fixtures_verify() {
    for cert in [unit_sandwich(), additive()] {
        check_certificate(&cert.to_bytes()).unwrap();
    }
}

#[test]
fn serialization_is_deterministic() {
    for cert in [unit_sandwich(), additive()] {
        let bytes = cert.to_bytes();
        assert_eq!(Certificate::parse(&bytes).unwrap().to_bytes(), bytes);
    }
    let text = String::from_utf8(unit_sandwich().to_bytes()).unwrap();
    assert!(!text.contains("\"algebra\""));
    let keys: Vec<usize> = ["\"presentation\"", "\"goal\"", "\"steps\"", "\"meta\""]
        .iter()
        .map(|k| text.find(k).unwrap())
        .collect();
    assert!(keys.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn wrong_axiom_name_is_rejected() {
    let mut cert = unit_sandwich();
    cert.steps[1].by = axiom("rgtNeutrality", vec![Term::var(0)]);
    assert_eq!(failing_step(&cert), 1);
}

#[test]
fn flipped_direction_is_rejected() {
    for i in 0..3 {
        let mut cert = unit_sandwich();
        cert.steps[i].dir = cert.steps[i].dir.flip();
        assert_eq!(failing_step(&cert), i);
    }
}

#[test]
fn altered_substitution_is_rejected() {
    let mut cert = additive();
    if let Rule::Axiom { subst, .. } = &mut cert.steps[0].by {
        subst[1] = Term::sta(4u64);
    }
    assert_eq!(failing_step(&cert), 0);
}

#[test]
fn swapped_goal_is_rejected() {
    let mut cert = unit_sandwich();
    cert.goal = cert.goal.flipped();
    match check_certificate(&cert.to_bytes()) {
        Err(CertificateError::CheckFailed { reason, .. }) => {
            assert!(matches!(reason, CheckError::EndpointMismatch { .. }), "{reason}")
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn truncated_proof_fails_at_the_end() {
    let mut cert = unit_sandwich();
    cert.steps.pop();
    assert_eq!(failing_step(&cert), 2);
}

#[test]
fn evaluation_needs_the_named_algebra() {
    let mut cert = additive();
    // 3·2 evaluates to 6 there, so the chain ends at x·6 instead of x·5.
    cert.algebra = Some("nat-mul".into());
    assert_eq!(failing_step(&cert), cert.steps.len());
    cert.algebra = Some("reals".into());
    assert!(matches!(
        check_certificate(&cert.to_bytes()),
        Err(CertificateError::UnknownAlgebra(_))
    ));
    cert.algebra = None;
    assert!(check_certificate(&cert.to_bytes()).is_err());
}

#[test]
fn malformed_input_is_a_parse_error() {
    let text = String::from_utf8(unit_sandwich().to_bytes()).unwrap();
    let extra = text.replacen("\"meta\": {", "\"meta\": {\"extra\": 1, ", 1);
    for bad in [b"{".to_vec(), b"[]".to_vec(), extra.into_bytes()] {
        assert!(matches!(check_certificate(&bad), Err(CertificateError::Parse(_))));
    }
}

#[test]
fn standalone_checker_binary() {
    let dir = std::env::temp_dir().join(format!("frex-check-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("good.cert");
    let bad = dir.join("bad.cert");
    std::fs::write(&good, additive().to_bytes()).unwrap();
    let mut tampered = additive();
    tampered.steps[0].dir = Direction::Backward;
    std::fs::write(&bad, tampered.to_bytes()).unwrap();

    let run = |args: &[&std::path::Path]| {
        Command::new(env!("CARGO_BIN_EXE_frex-check"))
            .args(args)
            .output()
            .unwrap()
    };
    assert_eq!(run(&[&good]).status.code(), Some(0));
    let out = run(&[&good, &bad]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("step 0"));
    assert_eq!(run(&[&dir.join("missing")]).status.code(), Some(2));
    assert_eq!(run(&[]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}
