//! Deeply-embedded equational derivations and their checker.
//!
//! The checker is purely structural: it recomputes the equation a
//! derivation proves from the leaves up and never searches. Everything the
//! solvers produce is trusted only after passing through [`check`].

use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{apply_checked, validate, Algebra, AlgebraError};
use crate::presentation::Presentation;
use crate::term::{Term, TermError};
use crate::value::Value;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Derivation {
    /// `t = t`.
    Refl(Term),
    Sym(Box<Derivation>),
    /// The right endpoint of the first proof must meet the left endpoint of
    /// the second.
    Trans(Box<Derivation>, Box<Derivation>),
    /// `f(l₁,…,lₙ) = f(r₁,…,rₙ)` from proofs of `lᵢ = rᵢ`.
    Cong(String, Vec<Derivation>),
    /// The named axiom, instantiated by a substitution for its variables.
    ByAxiom(String, Vec<Term>),
    /// `f(c̲₁,…,c̲ₙ) = f(c₁,…,cₙ)̲` in the constants algebra.
    EvalStep(String, Vec<Value>),
}

impl Derivation {
    pub fn refl(t: Term) -> Self {
        Derivation::Refl(t)
    }

    pub fn axiom(name: &str, sub: Vec<Term>) -> Self {
        Derivation::ByAxiom(name.to_owned(), sub)
    }

    pub fn eval(op: &str, args: Vec<Value>) -> Self {
        Derivation::EvalStep(op.to_owned(), args)
    }

    /// Symmetry; collapses reflexivity and double symmetry.
    pub fn sym(self) -> Self {
        match self {
            Derivation::Refl(t) => Derivation::Refl(t),
            Derivation::Sym(d) => *d,
            d => Derivation::Sym(Box::new(d)),
        }
    }

    /// Transitivity; reflexive legs are dropped.
    pub fn then(self, next: Derivation) -> Self {
        match (self, next) {
            (Derivation::Refl(_), d) | (d, Derivation::Refl(_)) => d,
            (a, b) => Derivation::Trans(Box::new(a), Box::new(b)),
        }
    }

    /// Congruence; all-reflexive children collapse to one reflexivity step.
    pub fn cong(op: &str, children: Vec<Derivation>) -> Self {
        if children.iter().all(|c| matches!(c, Derivation::Refl(_))) {
            let args = children
                .into_iter()
                .map(|c| match c {
                    Derivation::Refl(t) => t,
                    _ => unreachable!(),
                })
                .collect();
            Derivation::Refl(Term::App(op.to_owned(), args))
        } else {
            Derivation::Cong(op.to_owned(), children)
        }
    }

    /// Number of nodes in the proof tree.
    pub fn size(&self) -> usize {
        match self {
            Derivation::Refl(_) | Derivation::ByAxiom(..) | Derivation::EvalStep(..) => 1,
            Derivation::Sym(d) => 1 + d.size(),
            Derivation::Trans(a, b) => 1 + a.size() + b.size(),
            Derivation::Cong(_, ds) => 1 + ds.iter().map(Derivation::size).sum::<usize>(),
        }
    }

    /// Number of axiom and evaluation leaves.
    pub fn atomic_steps(&self) -> usize {
        match self {
            Derivation::Refl(_) => 0,
            Derivation::ByAxiom(..) | Derivation::EvalStep(..) => 1,
            Derivation::Sym(d) => d.atomic_steps(),
            Derivation::Trans(a, b) => a.atomic_steps() + b.atomic_steps(),
            Derivation::Cong(_, ds) => ds.iter().map(Derivation::atomic_steps).sum(),
        }
    }

    pub fn contains_eval(&self) -> bool {
        match self {
            Derivation::Refl(_) | Derivation::ByAxiom(..) => false,
            Derivation::EvalStep(..) => true,
            Derivation::Sym(d) => d.contains_eval(),
            Derivation::Trans(a, b) => a.contains_eval() || b.contains_eval(),
            Derivation::Cong(_, ds) => ds.iter().any(Derivation::contains_eval),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("endpoint mismatch: expected {expected}, got {got}")]
    EndpointMismatch { expected: Term, got: Term },
    #[error("unknown axiom `{0}`")]
    UnknownAxiom(String),
    #[error("axiom `{axiom}` has support {expected} but the substitution has {got} term(s)")]
    SubstitutionLength {
        axiom: String,
        expected: usize,
        got: usize,
    },
    #[error("an evaluation step or constant needs a constants algebra, none is in scope")]
    MissingAlgebra,
    #[error("algebra `{0}` does not interpret the presentation's signature")]
    SignatureMismatch(String),
    #[error(transparent)]
    Term(#[from] TermError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Everything the checker needs besides the derivation: the theory, the
/// context size, and optionally the algebra constants are drawn from.
#[derive(Debug, Clone)]
pub struct CheckContext {
    presentation: Presentation,
    support: usize,
    algebra: Option<Arc<dyn Algebra>>,
}

impl CheckContext {
    pub fn new(
        presentation: Presentation,
        support: usize,
        algebra: Option<Arc<dyn Algebra>>,
    ) -> Result<Self, CheckError> {
        if let Some(alg) = &algebra {
            if !presentation
                .signature()
                .is_subsignature_of(alg.signature())
            {
                return Err(CheckError::SignatureMismatch(alg.name().to_owned()));
            }
        }
        Ok(CheckContext {
            presentation,
            support,
            algebra,
        })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn support(&self) -> usize {
        self.support
    }

    pub fn algebra(&self) -> Option<&Arc<dyn Algebra>> {
        self.algebra.as_ref()
    }

    pub fn validate(&self, t: &Term) -> Result<(), CheckError> {
        validate(
            self.presentation.signature(),
            self.support,
            self.algebra.as_deref(),
            t,
        )
        .map_err(CheckError::from)
    }

    /// Syntactic equality, except that constants are compared with the
    /// algebra's equality.
    pub fn same_term(&self, a: &Term, b: &Term) -> bool {
        match (a, b) {
            (Term::Var(i), Term::Var(j)) => i == j,
            (Term::Sta(x), Term::Sta(y)) => match &self.algebra {
                Some(alg) => alg.equal(x, y),
                None => x == y,
            },
            (Term::App(f, xs), Term::App(g, ys)) => {
                f == g
                    && xs.len() == ys.len()
                    && xs.iter().zip(ys).all(|(x, y)| self.same_term(x, y))
            }
            _ => false,
        }
    }

    fn expect_same(&self, expected: &Term, got: &Term) -> Result<(), CheckError> {
        if self.same_term(expected, got) {
            Ok(())
        } else {
            Err(CheckError::EndpointMismatch {
                expected: expected.clone(),
                got: got.clone(),
            })
        }
    }

    /// The instance `(lhs, rhs)` of axiom `name` under `sub`.
    pub fn axiom_instance(&self, name: &str, sub: &[Term]) -> Result<(Term, Term), CheckError> {
        let ax = self
            .presentation
            .axiom(name)
            .ok_or_else(|| CheckError::UnknownAxiom(name.to_owned()))?;
        if ax.support != sub.len() {
            return Err(CheckError::SubstitutionLength {
                axiom: name.to_owned(),
                expected: ax.support,
                got: sub.len(),
            });
        }
        for t in sub {
            self.validate(t)?;
        }
        Ok((ax.lhs.substitute(sub)?, ax.rhs.substitute(sub)?))
    }

    /// The evaluation equation `op(c̲s) = value̲`.
    pub fn eval_instance(&self, op: &str, args: &[Value]) -> Result<(Term, Term), CheckError> {
        let alg = self.algebra.as_deref().ok_or(CheckError::MissingAlgebra)?;
        if self.presentation.signature().arity(op).is_none() {
            return Err(TermError::UnknownOp(op.to_owned()).into());
        }
        let value = apply_checked(alg, op, args)?;
        let lhs = Term::App(op.to_owned(), args.iter().cloned().map(Term::Sta).collect());
        Ok((lhs, Term::Sta(value)))
    }
}

/// The equation `d` proves, computed bottom-up.
pub fn endpoints(ctx: &CheckContext, d: &Derivation) -> Result<(Term, Term), CheckError> {
    match d {
        Derivation::Refl(t) => {
            ctx.validate(t)?;
            Ok((t.clone(), t.clone()))
        }
        Derivation::Sym(inner) => {
            let (l, r) = endpoints(ctx, inner)?;
            Ok((r, l))
        }
        Derivation::Trans(first, second) => {
            let (a, b) = endpoints(ctx, first)?;
            let (c, e) = endpoints(ctx, second)?;
            ctx.expect_same(&b, &c)?;
            Ok((a, e))
        }
        Derivation::Cong(op, children) => {
            let expected = ctx
                .presentation
                .signature()
                .arity(op)
                .ok_or_else(|| TermError::UnknownOp(op.clone()))?;
            if expected != children.len() {
                return Err(TermError::ArityMismatch {
                    op: op.clone(),
                    expected,
                    got: children.len(),
                }
                .into());
            }
            let mut ls = Vec::with_capacity(children.len());
            let mut rs = Vec::with_capacity(children.len());
            for c in children {
                let (l, r) = endpoints(ctx, c)?;
                ls.push(l);
                rs.push(r);
            }
            Ok((Term::App(op.clone(), ls), Term::App(op.clone(), rs)))
        }
        Derivation::ByAxiom(name, sub) => ctx.axiom_instance(name, sub),
        Derivation::EvalStep(op, args) => ctx.eval_instance(op, args),
    }
}

/// Ok iff `d` proves `lhs = rhs` in `ctx`.
pub fn check(ctx: &CheckContext, lhs: &Term, rhs: &Term, d: &Derivation) -> Result<(), CheckError> {
    ctx.validate(lhs)?;
    ctx.validate(rhs)?;
    let (l, r) = endpoints(ctx, d)?;
    ctx.expect_same(lhs, &l)?;
    ctx.expect_same(rhs, &r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::NatAdd;
    use crate::presentation::{monoid, ASSOCIATIVITY, LEFT_NEUTRALITY, MUL, UNIT};

    fn mul(a: Term, b: Term) -> Term {
        Term::app(MUL, vec![a, b])
    }

    fn ctx(support: usize) -> CheckContext {
        CheckContext::new(monoid(), support, None).unwrap()
    }

    #[test]
    fn axiom_instance_checks() {
        let x = Term::var(0);
        let d = Derivation::axiom(LEFT_NEUTRALITY, vec![x.clone()]);
        assert_eq!(check(&ctx(1), &mul(Term::constant(UNIT), x.clone()), &x, &d), Ok(()));
    }

    #[test]
    fn refl_requires_equal_endpoints() {
        let (x, y) = (Term::var(0), Term::var(1));
        let d = Derivation::refl(x.clone());
        assert_eq!(check(&ctx(2), &x, &x, &d), Ok(()));
        assert_eq!(
            check(&ctx(2), &x, &y, &d),
            Err(CheckError::EndpointMismatch {
                expected: y,
                got: x
            })
        );
    }

    #[test]
    fn eval_step_uses_the_algebra() {
        let c = CheckContext::new(monoid(), 0, Some(Arc::new(NatAdd::default()))).unwrap();
        let d = Derivation::eval(MUL, vec![Value::Nat(3), Value::Nat(2)]);
        assert_eq!(
            check(&c, &mul(Term::sta(3u64), Term::sta(2u64)), &Term::sta(5u64), &d),
            Ok(())
        );
        assert_eq!(
            check(&ctx(0), &mul(Term::sta(3u64), Term::sta(2u64)), &Term::sta(5u64), &d),
            Err(CheckError::Term(TermError::UnexpectedConstant(Value::Nat(3))))
        );
        assert_eq!(endpoints(&ctx(0), &d), Err(CheckError::MissingAlgebra));
    }

    #[test]
    fn endpoints_examples() {
        let (x, y, z) = (Term::var(0), Term::var(1), Term::var(2));
        let c = ctx(3);
        let d = Derivation::axiom(LEFT_NEUTRALITY, vec![x.clone()]).sym();
        assert_eq!(
            endpoints(&c, &d).unwrap(),
            (x.clone(), mul(Term::constant(UNIT), x.clone()))
        );

        let right = mul(x.clone(), mul(y.clone(), z.clone()));
        let d = Derivation::Trans(
            Box::new(Derivation::axiom(ASSOCIATIVITY, vec![x.clone(), y.clone(), z.clone()])),
            Box::new(Derivation::refl(right.clone())),
        );
        assert_eq!(endpoints(&c, &d).unwrap(), (mul(mul(x, y), z), right));
    }

    #[test]
    fn malformed_steps_rejected() {
        let c = ctx(1);
        assert_eq!(
            endpoints(&c, &Derivation::axiom("nope", vec![])),
            Err(CheckError::UnknownAxiom("nope".into()))
        );
        assert!(matches!(
            endpoints(&c, &Derivation::axiom(ASSOCIATIVITY, vec![Term::var(0)])),
            Err(CheckError::SubstitutionLength { .. })
        ));
        assert!(matches!(
            endpoints(&c, &Derivation::Cong(MUL.into(), vec![Derivation::refl(Term::var(0))])),
            Err(CheckError::Term(TermError::ArityMismatch { .. }))
        ));
        assert!(matches!(
            endpoints(&c, &Derivation::refl(Term::var(4))),
            Err(CheckError::Term(TermError::VarOutOfScope(4)))
        ));
    }

    #[test]
    fn smart_constructors() {
        let x = Term::var(0);
        let ax = Derivation::axiom(LEFT_NEUTRALITY, vec![x.clone()]);
        assert_eq!(ax.clone().sym().sym(), ax);
        assert_eq!(Derivation::refl(x.clone()).then(ax.clone()), ax);
        assert_eq!(
            Derivation::cong(MUL, vec![Derivation::refl(x.clone()), Derivation::refl(x.clone())]),
            Derivation::refl(mul(x.clone(), x))
        );
    }
}
