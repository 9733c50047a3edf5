//! Concrete algebras: a carrier with decidable equality and an
//! interpretation for every operation of a signature.

use std::fmt;

use rand::RngCore;
use thiserror::Error;

use crate::presentation::{Presentation, MUL};
use crate::term::{Equation, Signature, Term, TermError};
use crate::value::Value;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Term(#[from] TermError),
    #[error("environment has {got} value(s) but the term needs {needed}")]
    EnvTooShort { needed: usize, got: usize },
}

/// An algebra over a signature. Carrier elements are encoded as [`Value`]s;
/// `equal` is the carrier's equality and must be an equivalence relation.
pub trait Algebra: fmt::Debug + Send + Sync {
    /// Registry key, e.g. `nat-add`.
    fn name(&self) -> &str;

    fn signature(&self) -> &Signature;

    /// The presentation this algebra is declared to be a model of.
    fn presentation(&self) -> Presentation;

    /// Carrier membership of an encoded literal.
    fn contains(&self, v: &Value) -> bool;

    /// Interprets `op`. Implementations may assume `args` were checked with
    /// [`check_args`].
    fn apply(&self, op: &str, args: &[Value]) -> Result<Value, AlgebraError>;

    fn equal(&self, a: &Value, b: &Value) -> bool {
        a == b
    }

    /// A random carrier element, for sampled validity tests.
    fn sample(&self, rng: &mut dyn RngCore) -> Value;

    /// Literal syntax for printing; the CLI parses the same syntax back.
    fn format_value(&self, v: &Value) -> String {
        v.to_string()
    }

    /// Glyph used when printing the binary operation.
    fn mul_symbol(&self) -> &str {
        MUL
    }
}

/// Checks that `op` exists with `args.len()` arguments and that every
/// argument is a carrier element.
pub fn check_args(alg: &dyn Algebra, op: &str, args: &[Value]) -> Result<(), AlgebraError> {
    let expected = alg
        .signature()
        .arity(op)
        .ok_or_else(|| TermError::UnknownOp(op.to_owned()))?;
    if expected != args.len() {
        return Err(TermError::ArityMismatch {
            op: op.to_owned(),
            expected,
            got: args.len(),
        }
        .into());
    }
    for a in args {
        if !alg.contains(a) {
            return Err(TermError::NotInCarrier {
                algebra: alg.name().to_owned(),
                value: a.clone(),
            }
            .into());
        }
    }
    Ok(())
}

/// Checks and applies in one go.
pub fn apply_checked(alg: &dyn Algebra, op: &str, args: &[Value]) -> Result<Value, AlgebraError> {
    check_args(alg, op, args)?;
    alg.apply(op, args)
}

/// Well-formedness of a term that may contain constants of `consts`.
pub fn validate(
    sig: &Signature,
    support: usize,
    consts: Option<&dyn Algebra>,
    t: &Term,
) -> Result<(), TermError> {
    match t {
        Term::Var(i) if *i < support => Ok(()),
        Term::Var(i) => Err(TermError::VarOutOfScope(*i)),
        Term::Sta(v) => match consts {
            None => Err(TermError::UnexpectedConstant(v.clone())),
            Some(alg) if alg.contains(v) => Ok(()),
            Some(alg) => Err(TermError::NotInCarrier {
                algebra: alg.name().to_owned(),
                value: v.clone(),
            }),
        },
        Term::App(op, args) => {
            let expected = sig
                .arity(op)
                .ok_or_else(|| TermError::UnknownOp(op.clone()))?;
            if expected != args.len() {
                return Err(TermError::ArityMismatch {
                    op: op.clone(),
                    expected,
                    got: args.len(),
                });
            }
            args.iter()
                .try_for_each(|a| validate(sig, support, consts, a))
        }
    }
}

/// Homomorphic extension of `env` to terms: folds `t` in `alg`. Constants
/// evaluate to themselves, so `t` may only mention constants of `alg`.
pub fn bind(alg: &dyn Algebra, env: &[Value], t: &Term) -> Result<Value, AlgebraError> {
    match t {
        Term::Var(i) => env.get(*i).cloned().ok_or(AlgebraError::EnvTooShort {
            needed: i + 1,
            got: env.len(),
        }),
        Term::Sta(v) if alg.contains(v) => Ok(v.clone()),
        Term::Sta(v) => Err(TermError::NotInCarrier {
            algebra: alg.name().to_owned(),
            value: v.clone(),
        }
        .into()),
        Term::App(op, args) => {
            let vals = args
                .iter()
                .map(|a| bind(alg, env, a))
                .collect::<Result<Vec<_>, _>>()?;
            apply_checked(alg, op, &vals)
        }
    }
}

/// Sampled validity: true iff both sides of `eq` evaluate to equal carrier
/// elements under every environment in `envs`. A test aid, not a proof.
pub fn validates(alg: &dyn Algebra, eq: &Equation, envs: &[Vec<Value>]) -> bool {
    envs.iter().all(|env| {
        match (bind(alg, env, &eq.lhs), bind(alg, env, &eq.rhs)) {
            (Ok(l), Ok(r)) => alg.equal(&l, &r),
            _ => false,
        }
    })
}

/// `count` random environments of length `support`.
pub fn sample_envs(
    alg: &dyn Algebra,
    support: usize,
    count: usize,
    rng: &mut dyn RngCore,
) -> Vec<Vec<Value>> {
    (0..count)
        .map(|_| (0..support).map(|_| alg.sample(rng)).collect())
        .collect()
}
