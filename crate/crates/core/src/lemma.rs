//! Named lemmas proved by a free-algebra simplifier, and certificates.

use frex_kernel::{
    check, CheckContext, CheckError, Certificate, Derivation, Equation, Goal, LinearDerivation,
    Presentation, ReplayError, Rule,
};
use thiserror::Error;

use crate::api::{solve_fral, Fral, SolveError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lemma {
    pub name: String,
    pub equation: Equation,
    pub proof: Derivation,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LemmaError {
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("`{0}` is not provable in the theory")]
    NotProvable(String),
    #[error(transparent)]
    Check(#[from] CheckError),
}

/// Runs the fral's solver on `goal` and packages the proof under `name`.
pub fn mk_lemma<F: Fral + ?Sized>(fral: &F, name: &str, goal: &Goal) -> Result<Lemma, LemmaError> {
    let proof = solve_fral(fral, goal)?.ok_or_else(|| LemmaError::NotProvable(name.to_owned()))?;
    let ctx = CheckContext::new(fral.presentation().clone(), goal.support, fral.constants())?;
    check(&ctx, &goal.lhs, &goal.rhs, &proof)?;
    Ok(Lemma {
        name: name.to_owned(),
        equation: goal.clone(),
        proof,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmitError {
    #[error("proof does not replay: {0}")]
    Replay(#[from] ReplayError),
    #[error("proof does not establish the goal: {0}")]
    Check(#[from] CheckError),
    #[error("proof evaluates constants but names no algebra")]
    MissingAlgebra,
}

/// Serializes a certificate after confirming the proof checks. The algebra
/// name is recorded only when the goal or proof mentions constants.
pub fn emit_certificate(
    goal: &Goal,
    proof: &LinearDerivation,
    presentation: &Presentation,
    algebra: Option<&str>,
    note: &str,
) -> Result<Vec<u8>, EmitError> {
    let needs_algebra = !goal.is_static_free()
        || proof.steps.iter().any(|s| match &s.by {
            Rule::Eval { .. } => true,
            Rule::Axiom { subst, .. } => !subst.iter().all(|t| t.is_static_free()),
        })
        || proof.steps.iter().any(|s| {
            s.context.as_ref().is_some_and(|c| {
                c.frames()
                    .iter()
                    .any(|f| !f.before.iter().chain(&f.after).all(|t| t.is_static_free()))
            })
        });
    let algebra = match (needs_algebra, algebra) {
        (false, _) => None,
        (true, Some(name)) => Some(name.to_owned()),
        (true, None) => return Err(EmitError::MissingAlgebra),
    };
    let cert = Certificate::new(presentation.clone(), algebra, goal.clone(), proof, note);
    let registry = cert.algebra.as_deref().and_then(frex_kernel::algebras::by_name);
    let ctx = CheckContext::new(presentation.clone(), goal.support, registry)?;
    let tree = frex_kernel::replay(&ctx, proof)?;
    check(&ctx, &goal.lhs, &goal.rhs, &tree)?;
    Ok(cert.to_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lists::{mul, unit};
    use crate::monoid::MonoidFral;
    use crate::pipeline::to_linear;
    use frex_kernel::presentation::monoid;
    use frex_kernel::{check_certificate, Term};

    fn x(i: usize) -> Term {
        Term::Var(i)
    }

    #[test]
    fn lemmas() {
        let f = MonoidFral::new();
        let g = Equation::new(1, mul(mul(unit(), mul(x(0), unit())), unit()), x(0));
        let lemma = mk_lemma(&f, "unitSandwich", &g).unwrap();
        assert_eq!(lemma.name, "unitSandwich");

        let swap = Equation::new(2, mul(x(0), x(1)), mul(x(1), x(0)));
        assert_eq!(
            mk_lemma(&f, "swap", &swap),
            Err(LemmaError::NotProvable("swap".into()))
        );

        let same = Equation::new(1, x(0), x(0));
        assert_eq!(mk_lemma(&f, "same", &same).unwrap().proof, Derivation::Refl(x(0)));
    }

    #[test]
    fn certificates_are_deterministic() {
        let f = MonoidFral::new();
        let g = Equation::new(1, mul(mul(unit(), mul(x(0), unit())), unit()), x(0));
        let lemma = mk_lemma(&f, "unitSandwich", &g).unwrap();
        let ctx = CheckContext::new(monoid(), 1, None).unwrap();
        let linear = to_linear(&ctx, &lemma.proof).unwrap();
        let bytes = emit_certificate(&g, &linear, &monoid(), Some("nat-add"), "unitSandwich").unwrap();
        let text = String::from_utf8(bytes.clone()).unwrap();
        assert!(!text.contains("\"algebra\""));
        check_certificate(&bytes).unwrap();
        let again = Certificate::parse(&bytes).unwrap().to_bytes();
        assert_eq!(again, bytes);
    }
}
