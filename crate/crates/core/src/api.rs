//! The fral and frex contracts, the generic solvers built on them, and a
//! type-erased [`Solver`] for callers that pick a frexlet at run time.

use std::fmt::Debug;
use std::sync::Arc;

use frex_kernel::algebra::validate;
use frex_kernel::{Algebra, CheckContext, CheckError, Derivation, Goal, Presentation, Term, TermError, Value};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error(transparent)]
    Term(#[from] TermError),
    #[error("free-algebra goals cannot contain constants")]
    StaticInFralGoal,
}

/// A free algebra with a decidable normal form.
///
/// `prove_norm(t)` must prove `t = reify(norm(t))` in the presentation;
/// nothing about it is trusted until the kernel checker accepts it.
pub trait Fral {
    type Nf: Clone + Eq + Debug;

    fn presentation(&self) -> &Presentation;

    fn norm(&self, support: usize, t: &Term) -> Self::Nf;

    fn reify(&self, nf: &Self::Nf) -> Term;

    /// The normal form together with a proof of `t = reify(nf)`.
    fn normalize(&self, support: usize, t: &Term) -> (Self::Nf, Derivation);

    fn prove_norm(&self, support: usize, t: &Term) -> Derivation {
        self.normalize(support, t).1
    }

    /// The algebra any constants in the proofs come from. Only frals built
    /// from a frex over a concrete initial algebra need one.
    fn constants(&self) -> Option<Arc<dyn Algebra>> {
        None
    }

    /// The unique homomorphism into `target` extending `env`.
    fn eval_nf(&self, target: &dyn Algebra, env: &[Value], nf: &Self::Nf) -> Value;
}

/// A free extension of a concrete base algebra by variables.
pub trait Frex {
    type Nf: Clone + Debug;

    fn presentation(&self) -> &Presentation;

    fn base(&self) -> &Arc<dyn Algebra>;

    fn var(&self, support: usize, i: usize) -> Self::Nf;

    fn embed(&self, support: usize, c: &Value) -> Self::Nf;

    fn norm(&self, support: usize, t: &Term) -> Self::Nf;

    fn reify(&self, nf: &Self::Nf) -> Term;

    fn normalize(&self, support: usize, t: &Term) -> (Self::Nf, Derivation);

    fn prove_norm(&self, support: usize, t: &Term) -> Derivation {
        self.normalize(support, t).1
    }

    /// Normal forms are compared with the base algebra's equality on
    /// constants.
    fn nf_equal(&self, a: &Self::Nf, b: &Self::Nf) -> bool;

    /// The eliminator: the unique homomorphism into `target` that agrees
    /// with `h` on constants and with `env` on variables.
    fn eval_nf(
        &self,
        target: &dyn Algebra,
        h: &dyn Fn(&Value) -> Value,
        env: &[Value],
        nf: &Self::Nf,
    ) -> Value;
}

fn validate_goal(pres: &Presentation, consts: Option<&dyn Algebra>, goal: &Goal) -> Result<(), SolveError> {
    let sig = pres.signature();
    validate(sig, goal.support, consts, &goal.lhs)?;
    validate(sig, goal.support, consts, &goal.rhs)?;
    Ok(())
}

/// Decides `goal` in the free algebra; on success the derivation goes
/// through the shared normal form.
pub fn solve_fral<F: Fral + ?Sized>(f: &F, goal: &Goal) -> Result<Option<Derivation>, SolveError> {
    if !goal.is_static_free() {
        return Err(SolveError::StaticInFralGoal);
    }
    validate_goal(f.presentation(), None, goal)?;
    if f.norm(goal.support, &goal.lhs) != f.norm(goal.support, &goal.rhs) {
        return Ok(None);
    }
    let left = f.prove_norm(goal.support, &goal.lhs);
    let right = f.prove_norm(goal.support, &goal.rhs);
    Ok(Some(left.then(right.sym())))
}

pub fn solve_frex<F: Frex + ?Sized>(f: &F, goal: &Goal) -> Result<Option<Derivation>, SolveError> {
    validate_goal(f.presentation(), Some(f.base().as_ref()), goal)?;
    let l = f.norm(goal.support, &goal.lhs);
    let r = f.norm(goal.support, &goal.rhs);
    if !f.nf_equal(&l, &r) {
        return Ok(None);
    }
    let left = f.prove_norm(goal.support, &goal.lhs);
    let right = f.prove_norm(goal.support, &goal.rhs);
    Ok(Some(left.then(right.sym())))
}

/// A frexlet with its normal-form type erased.
pub trait Solver: Send + Sync {
    fn presentation(&self) -> &Presentation;

    /// The constants algebra proofs may evaluate in.
    fn algebra(&self) -> Option<Arc<dyn Algebra>>;

    fn solve(&self, goal: &Goal) -> Result<Option<Derivation>, SolveError>;

    /// Whether both sides share a normal form, without building proofs.
    fn decide(&self, goal: &Goal) -> Result<bool, SolveError>;

    /// `reify(norm(t))`.
    fn simplify(&self, support: usize, t: &Term) -> Term;

    fn check_context(&self, support: usize) -> Result<CheckContext, CheckError> {
        CheckContext::new(self.presentation().clone(), support, self.algebra())
    }
}

/// Adapts a [`Fral`] to [`Solver`].
#[derive(Debug, Clone)]
pub struct FralSolver<F>(pub F);

/// Adapts a [`Frex`] to [`Solver`].
#[derive(Debug, Clone)]
pub struct FrexSolver<F>(pub F);

impl<F> Solver for FralSolver<F>
where
    F: Fral + Send + Sync,
{
    fn presentation(&self) -> &Presentation {
        self.0.presentation()
    }

    fn algebra(&self) -> Option<Arc<dyn Algebra>> {
        self.0.constants()
    }

    fn solve(&self, goal: &Goal) -> Result<Option<Derivation>, SolveError> {
        solve_fral(&self.0, goal)
    }

    fn decide(&self, goal: &Goal) -> Result<bool, SolveError> {
        if !goal.is_static_free() {
            return Err(SolveError::StaticInFralGoal);
        }
        validate_goal(self.0.presentation(), None, goal)?;
        Ok(self.0.norm(goal.support, &goal.lhs) == self.0.norm(goal.support, &goal.rhs))
    }

    fn simplify(&self, support: usize, t: &Term) -> Term {
        self.0.reify(&self.0.norm(support, t))
    }
}

impl<F> Solver for FrexSolver<F>
where
    F: Frex + Send + Sync,
{
    fn presentation(&self) -> &Presentation {
        self.0.presentation()
    }

    fn algebra(&self) -> Option<Arc<dyn Algebra>> {
        Some(self.0.base().clone())
    }

    fn solve(&self, goal: &Goal) -> Result<Option<Derivation>, SolveError> {
        solve_frex(&self.0, goal)
    }

    fn decide(&self, goal: &Goal) -> Result<bool, SolveError> {
        validate_goal(self.0.presentation(), Some(self.0.base().as_ref()), goal)?;
        let l = self.0.norm(goal.support, &goal.lhs);
        let r = self.0.norm(goal.support, &goal.rhs);
        Ok(self.0.nf_equal(&l, &r))
    }

    fn simplify(&self, support: usize, t: &Term) -> Term {
        self.0.reify(&self.0.norm(support, t))
    }
}
