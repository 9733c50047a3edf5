//! Generic constructions: a fral from a frex over the initial algebra, a
//! frex from a fral and a coproduct, and powers of algebras.

use std::sync::Arc;

use frex_kernel::algebra::{check_args, AlgebraError};
use frex_kernel::algebras::Trivial;
use frex_kernel::presentation::{self, MUL, UNIT};
use frex_kernel::{Algebra, Derivation, Presentation, Signature, Term, Value};
use rand::RngCore;
use thiserror::Error;

use crate::api::{Fral, Frex};
use crate::commutative::{coproduct_cm, CmCoproduct};
use crate::lists::{assoc, comm, left_unit, mul, on_left, on_right, right_unit, unit};

/// A fral obtained from a frex whose base is the initial algebra. Proofs
/// may mention the initial algebra's single constant, so they are checked
/// against it.
#[derive(Debug, Clone)]
pub struct ByFrex<F> {
    frex: F,
}

/// The one-point algebra, initial among monoids and involutive monoids.
pub fn initial_algebra() -> Arc<dyn Algebra> {
    Arc::new(Trivial::default())
}

/// Wraps `frex`, which must extend the presentation's initial algebra.
pub fn by_frex<F: Frex>(frex: F) -> ByFrex<F> {
    ByFrex { frex }
}

impl<F: Frex> Fral for ByFrex<F>
where
    F::Nf: Eq,
{
    type Nf = F::Nf;

    fn presentation(&self) -> &Presentation {
        self.frex.presentation()
    }

    fn norm(&self, support: usize, t: &Term) -> F::Nf {
        self.frex.norm(support, t)
    }

    fn reify(&self, nf: &F::Nf) -> Term {
        self.frex.reify(nf)
    }

    fn normalize(&self, support: usize, t: &Term) -> (F::Nf, Derivation) {
        self.frex.normalize(support, t)
    }

    fn constants(&self) -> Option<Arc<dyn Algebra>> {
        Some(self.frex.base().clone())
    }

    fn eval_nf(&self, target: &dyn Algebra, env: &[Value], nf: &F::Nf) -> Value {
        // The initial algebra maps to the target's unit.
        let one = target.apply(UNIT, &[]).expect("target interprets the unit");
        self.frex.eval_nf(target, &|_| one.clone(), env, nf)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CombinatorError {
    #[error("no coproduct construction is registered for this presentation")]
    NoCoproductRegistered,
}

/// Coproduct constructions known to [`frex_by_coproduct`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoproductKind {
    CommutativeMonoid,
}

/// The coproduct construction registered for `pres`, if any.
pub fn registered_coproduct(pres: &Presentation) -> Option<CoproductKind> {
    (*pres == presentation::commutative_monoid()).then_some(CoproductKind::CommutativeMonoid)
}

/// The frex of `base` by variables, as the coproduct of `base` with the
/// free algebra. Normal forms pair a base element with a fral normal form
/// and reify as `c · reify(nf)`.
#[derive(Debug, Clone)]
pub struct CoproductFrex<F> {
    fral: F,
    base: Arc<dyn Algebra>,
    kind: CoproductKind,
}

pub fn frex_by_coproduct<F: Fral>(fral: F, base: Arc<dyn Algebra>) -> Result<CoproductFrex<F>, CombinatorError> {
    let kind = registered_coproduct(fral.presentation()).ok_or(CombinatorError::NoCoproductRegistered)?;
    Ok(CoproductFrex { fral, base, kind })
}

impl<F: Fral> CoproductFrex<F> {
    pub fn kind(&self) -> CoproductKind {
        self.kind
    }

    fn unit(&self) -> Value {
        self.base.apply(UNIT, &[]).expect("monoids have a unit")
    }

    fn fral_unit(&self, support: usize) -> F::Nf {
        self.fral.norm(support, &unit())
    }

    /// `(A·B)·(C·D) = (A·C)·(B·D)`.
    fn interchange(a: Term, b: Term, c: Term, d: Term) -> Derivation {
        let cd = mul(c.clone(), d.clone());
        let bd = mul(b.clone(), d.clone());
        assoc(a.clone(), b.clone(), cd)
            .then(on_right(a.clone(), assoc(b.clone(), c.clone(), d.clone()).sym()))
            .then(on_right(
                a.clone(),
                on_left(comm(b.clone(), c.clone()), d.clone()),
            ))
            .then(on_right(a.clone(), assoc(c.clone(), b, d)))
            .then(assoc(a, c, bd).sym())
    }

    /// `u = Sta(unit) · u` for a fral-side term `u`.
    fn pad_left(u: Term) -> Derivation {
        left_unit(u.clone())
            .sym()
            .then(on_left(Derivation::eval(UNIT, vec![]), u))
    }
}

impl<F: Fral> Frex for CoproductFrex<F> {
    type Nf = (Value, F::Nf);

    fn presentation(&self) -> &Presentation {
        self.fral.presentation()
    }

    fn base(&self) -> &Arc<dyn Algebra> {
        &self.base
    }

    fn var(&self, support: usize, i: usize) -> Self::Nf {
        (self.unit(), self.fral.norm(support, &Term::Var(i)))
    }

    fn embed(&self, support: usize, c: &Value) -> Self::Nf {
        (c.clone(), self.fral_unit(support))
    }

    fn norm(&self, support: usize, t: &Term) -> Self::Nf {
        match t {
            Term::Sta(c) => self.embed(support, c),
            Term::Var(i) => self.var(support, *i),
            Term::App(op, args) if op == MUL => {
                let (c, u) = self.norm(support, &args[0]);
                let (d, v) = self.norm(support, &args[1]);
                let cd = self.base.apply(MUL, &[c, d]).expect("base is a monoid");
                let joined = mul(self.fral.reify(&u), self.fral.reify(&v));
                (cd, self.fral.norm(support, &joined))
            }
            Term::App(_, _) => (self.unit(), self.fral.norm(support, t)),
        }
    }

    fn reify(&self, nf: &Self::Nf) -> Term {
        mul(Term::Sta(nf.0.clone()), self.fral.reify(&nf.1))
    }

    fn normalize(&self, support: usize, t: &Term) -> (Self::Nf, Derivation) {
        match t {
            Term::Sta(c) => {
                let nf = self.fral_unit(support);
                let to_unit = self.fral.prove_norm(support, &unit());
                let d = right_unit(t.clone())
                    .sym()
                    .then(on_right(t.clone(), to_unit));
                ((c.clone(), nf), d)
            }
            Term::App(op, args) if op == MUL => {
                let ((c, u), du) = self.normalize(support, &args[0]);
                let ((d, v), dv) = self.normalize(support, &args[1]);
                let (ru, rv) = (self.fral.reify(&u), self.fral.reify(&v));
                let (sc, sd) = (Term::Sta(c.clone()), Term::Sta(d.clone()));
                let parts = on_left(du, args[1].clone())
                    .then(on_right(mul(sc.clone(), ru.clone()), dv));
                let swap = Self::interchange(sc.clone(), ru.clone(), sd.clone(), rv.clone());
                let joined = mul(ru, rv);
                let (w, dw) = self.fral.normalize(support, &joined);
                let folded = on_left(Derivation::eval(MUL, vec![c.clone(), d.clone()]), joined);
                let cd = self.base.apply(MUL, &[c, d]).expect("base is a monoid");
                let finish = on_right(Term::Sta(cd.clone()), dw);
                ((cd, w), parts.then(swap).then(folded).then(finish))
            }
            _ => {
                // Variables and the unit live entirely on the fral side.
                let (nf, d) = self.fral.normalize(support, t);
                let r = self.fral.reify(&nf);
                ((self.unit(), nf), d.then(Self::pad_left(r)))
            }
        }
    }

    fn nf_equal(&self, a: &Self::Nf, b: &Self::Nf) -> bool {
        self.base.equal(&a.0, &b.0) && a.1 == b.1
    }

    fn eval_nf(
        &self,
        target: &dyn Algebra,
        h: &dyn Fn(&Value) -> Value,
        env: &[Value],
        nf: &Self::Nf,
    ) -> Value {
        let v = self.fral.eval_nf(target, env, &nf.1);
        target
            .apply(MUL, &[h(&nf.0), v])
            .expect("target interprets multiplication")
    }
}

impl<F: Fral> CoproductFrex<F> {
    /// The carrier of normal forms when the fral side is itself given as
    /// an algebra.
    pub fn carrier(&self, fral_model: Arc<dyn Algebra>) -> Result<CmCoproduct, crate::commutative::CoproductError> {
        coproduct_cm(self.base.clone(), fral_model)
    }
}

/// `alg` raised to the `n`th power: `n`-tuples under pointwise operations.
#[derive(Debug, Clone)]
pub struct PowerAlgebra {
    name: String,
    inner: Arc<dyn Algebra>,
    n: usize,
}

pub fn power(alg: Arc<dyn Algebra>, n: usize) -> PowerAlgebra {
    PowerAlgebra {
        name: format!("{}^{n}", alg.name()),
        inner: alg,
        n,
    }
}

impl PowerAlgebra {
    fn components<'v>(&self, v: &'v Value) -> Option<&'v [Value]> {
        v.as_seq().filter(|xs| xs.len() == self.n)
    }
}

impl Algebra for PowerAlgebra {
    fn name(&self) -> &str {
        &self.name
    }

    fn signature(&self) -> &Signature {
        self.inner.signature()
    }

    fn presentation(&self) -> Presentation {
        self.inner.presentation()
    }

    fn contains(&self, v: &Value) -> bool {
        self.components(v)
            .is_some_and(|xs| xs.iter().all(|x| self.inner.contains(x)))
    }

    fn apply(&self, op: &str, args: &[Value]) -> Result<Value, AlgebraError> {
        check_args(self, op, args)?;
        let cols: Vec<&[Value]> = args
            .iter()
            .map(|a| self.components(a).expect("checked membership"))
            .collect();
        (0..self.n)
            .map(|i| {
                let at: Vec<Value> = cols.iter().map(|c| c[i].clone()).collect();
                self.inner.apply(op, &at)
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Value::Seq)
    }

    fn equal(&self, a: &Value, b: &Value) -> bool {
        match (self.components(a), self.components(b)) {
            (Some(xs), Some(ys)) => xs.iter().zip(ys).all(|(x, y)| self.inner.equal(x, y)),
            _ => false,
        }
    }

    fn sample(&self, rng: &mut dyn RngCore) -> Value {
        Value::Seq((0..self.n).map(|_| self.inner.sample(rng)).collect())
    }

    fn format_value(&self, v: &Value) -> String {
        match self.components(v) {
            Some(xs) => {
                let parts: Vec<String> = xs.iter().map(|x| self.inner.format_value(x)).collect();
                format!("({})", parts.join(", "))
            }
            None => v.to_string(),
        }
    }

    fn mul_symbol(&self) -> &str {
        self.inner.mul_symbol()
    }
}
