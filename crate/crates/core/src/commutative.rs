//! Commutative monoids: coefficient vectors for the free algebra, a
//! constant paired with coefficients for the free extension, and the
//! coproduct of two commutative monoids.

use std::sync::Arc;

use frex_kernel::algebra::{check_args, AlgebraError};
use frex_kernel::presentation::{self, MUL, UNIT};
use frex_kernel::{Algebra, Derivation, Presentation, Signature, Term, Value};
use rand::RngCore;
use thiserror::Error;

use crate::api::{Fral, Frex};
use crate::lists::{self, on_left, on_right, reify_items, Consts, Letter};

/// Occurrence count per variable.
pub type CoeffVec = Vec<u64>;

/// `constant · x₀^{coeffs[0]} · …` in additive reading `c + Σ aᵢxᵢ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinPoly {
    pub constant: Value,
    pub coeffs: CoeffVec,
}

fn count(t: &Term, coeffs: &mut CoeffVec, consts: &mut Vec<Value>) {
    match t {
        Term::Var(i) => coeffs[*i] += 1,
        Term::Sta(c) => consts.push(c.clone()),
        Term::App(op, args) if op == MUL => {
            count(&args[0], coeffs, consts);
            count(&args[1], coeffs, consts);
        }
        Term::App(op, _) if op == UNIT => {}
        Term::App(op, _) => panic!("`{op}` is not a monoid operation"),
    }
}

fn vars_of(coeffs: &[u64]) -> impl DoubleEndedIterator<Item = usize> + '_ {
    coeffs
        .iter()
        .enumerate()
        .flat_map(|(i, &n)| std::iter::repeat_n(i, n as usize))
}

fn coeffs_of(support: usize, list: &[Letter<usize>]) -> (Option<Value>, CoeffVec) {
    let mut coeffs = vec![0; support];
    let mut constant = None;
    for l in list {
        match l {
            Letter::Var(i) => coeffs[*i] += 1,
            Letter::Const(c) => constant = Some(c.clone()),
        }
    }
    (constant, coeffs)
}

/// Sorted list with proof of `t = reify(list)`.
fn normalize_sorted(k: Consts<'_>, t: &Term) -> (Vec<Letter<usize>>, Derivation) {
    match t {
        Term::Var(i) => (vec![Letter::Var(*i)], Derivation::Refl(t.clone())),
        Term::Sta(c) => k.constant(c),
        Term::App(op, args) if op == MUL => {
            let (a, da) = normalize_sorted(k, &args[0]);
            let (b, db) = normalize_sorted(k, &args[1]);
            let parts = on_left(da, args[1].clone()).then(on_right(lists::reify(&a), db));
            let (out, merged) = k.merge_proof(&a, &b);
            (out, parts.then(merged))
        }
        Term::App(op, _) if op == UNIT => (Vec::new(), Derivation::Refl(t.clone())),
        Term::App(op, _) => panic!("`{op}` is not a monoid operation"),
    }
}

/// The free commutative monoid on `support` generators.
#[derive(Debug, Clone)]
pub struct CommutativeFral {
    presentation: Presentation,
}

impl Default for CommutativeFral {
    fn default() -> Self {
        CommutativeFral {
            presentation: presentation::commutative_monoid(),
        }
    }
}

impl CommutativeFral {
    pub fn new() -> Self {
        Self::default()
    }

    /// The generator `xᵢ`: 1 at `i`, 0 elsewhere.
    pub fn var(&self, support: usize, i: usize) -> CoeffVec {
        let mut v = vec![0; support];
        v[i] = 1;
        v
    }
}

impl Fral for CommutativeFral {
    type Nf = CoeffVec;

    fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    fn norm(&self, support: usize, t: &Term) -> CoeffVec {
        let mut coeffs = vec![0; support];
        count(t, &mut coeffs, &mut Vec::new());
        coeffs
    }

    fn reify(&self, nf: &CoeffVec) -> Term {
        reify_items(vars_of(nf), Term::Var)
    }

    fn normalize(&self, support: usize, t: &Term) -> (CoeffVec, Derivation) {
        let (list, d) = normalize_sorted(Consts::none(), t);
        (coeffs_of(support, &list).1, d)
    }

    fn eval_nf(&self, target: &dyn Algebra, env: &[Value], nf: &CoeffVec) -> Value {
        let one = target.apply(UNIT, &[]).expect("target interprets the unit");
        scale_sum(target, one, env, nf)
    }
}

/// `acc · Σ coeffs[i]·env[i]`, scaling by repeated multiplication.
fn scale_sum(target: &dyn Algebra, acc: Value, env: &[Value], coeffs: &[u64]) -> Value {
    vars_of(coeffs).fold(acc, |acc, i| {
        target
            .apply(MUL, &[acc, env[i].clone()])
            .expect("target interprets multiplication")
    })
}

/// The free extension of a commutative monoid by variables.
#[derive(Debug, Clone)]
pub struct CommutativeFrex {
    presentation: Presentation,
    base: Arc<dyn Algebra>,
}

impl CommutativeFrex {
    /// `base` must be a commutative monoid.
    pub fn new(base: Arc<dyn Algebra>) -> Self {
        CommutativeFrex {
            presentation: presentation::commutative_monoid(),
            base,
        }
    }

    fn consts(&self) -> Consts<'_> {
        Consts::of(self.base.as_ref())
    }

    fn letters(&self, nf: &LinPoly) -> Vec<Letter<usize>> {
        let k = self.consts();
        let vars = vars_of(&nf.coeffs).map(Letter::Var);
        if k.is_unit(&nf.constant) && nf.coeffs.iter().any(|&n| n > 0) {
            vars.collect()
        } else {
            std::iter::once(Letter::Const(nf.constant.clone()))
                .chain(vars)
                .collect()
        }
    }
}

impl Frex for CommutativeFrex {
    type Nf = LinPoly;

    fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    fn base(&self) -> &Arc<dyn Algebra> {
        &self.base
    }

    fn var(&self, support: usize, i: usize) -> LinPoly {
        let mut coeffs = vec![0; support];
        coeffs[i] = 1;
        LinPoly {
            constant: self.consts().unit(),
            coeffs,
        }
    }

    fn embed(&self, support: usize, c: &Value) -> LinPoly {
        LinPoly {
            constant: c.clone(),
            coeffs: vec![0; support],
        }
    }

    fn norm(&self, support: usize, t: &Term) -> LinPoly {
        let k = self.consts();
        let mut coeffs = vec![0; support];
        let mut consts = Vec::new();
        count(t, &mut coeffs, &mut consts);
        let constant = consts.iter().fold(k.unit(), |acc, c| k.mul(&acc, c));
        LinPoly { constant, coeffs }
    }

    fn reify(&self, nf: &LinPoly) -> Term {
        lists::reify(&self.letters(nf))
    }

    fn normalize(&self, support: usize, t: &Term) -> (LinPoly, Derivation) {
        let k = self.consts();
        let (list, mut d) = normalize_sorted(k, t);
        if list.is_empty() {
            // The all-zero normal form reifies as the unit constant.
            d = d.then(Derivation::eval(UNIT, vec![]));
        }
        let (constant, coeffs) = coeffs_of(support, &list);
        let nf = LinPoly {
            constant: constant.unwrap_or_else(|| k.unit()),
            coeffs,
        };
        (nf, d)
    }

    fn nf_equal(&self, a: &LinPoly, b: &LinPoly) -> bool {
        a.coeffs == b.coeffs && self.base.equal(&a.constant, &b.constant)
    }

    fn eval_nf(
        &self,
        target: &dyn Algebra,
        h: &dyn Fn(&Value) -> Value,
        env: &[Value],
        nf: &LinPoly,
    ) -> Value {
        scale_sum(target, h(&nf.constant), env, &nf.coeffs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoproductError {
    #[error("cannot pair algebras `{0}` and `{1}`: signatures differ")]
    SignatureMismatch(String, String),
}

/// The coproduct of two commutative monoids: pairs with componentwise
/// operations.
#[derive(Debug, Clone)]
pub struct CmCoproduct {
    name: String,
    left: Arc<dyn Algebra>,
    right: Arc<dyn Algebra>,
}

pub fn coproduct_cm(left: Arc<dyn Algebra>, right: Arc<dyn Algebra>) -> Result<CmCoproduct, CoproductError> {
    if left.signature() != right.signature() {
        return Err(CoproductError::SignatureMismatch(
            left.name().to_owned(),
            right.name().to_owned(),
        ));
    }
    Ok(CmCoproduct {
        name: format!("{}+{}", left.name(), right.name()),
        left,
        right,
    })
}

impl CmCoproduct {
    pub fn inject_left(&self, a: Value) -> Value {
        let unit = self.right.apply(UNIT, &[]).expect("monoids have a unit");
        Value::Seq(vec![a, unit])
    }

    pub fn inject_right(&self, b: Value) -> Value {
        let unit = self.left.apply(UNIT, &[]).expect("monoids have a unit");
        Value::Seq(vec![unit, b])
    }
}

fn pair(v: &Value) -> Option<(&Value, &Value)> {
    match v.as_seq()? {
        [a, b] => Some((a, b)),
        _ => None,
    }
}

impl Algebra for CmCoproduct {
    fn name(&self) -> &str {
        &self.name
    }

    fn signature(&self) -> &Signature {
        self.left.signature()
    }

    fn presentation(&self) -> Presentation {
        presentation::commutative_monoid()
    }

    fn contains(&self, v: &Value) -> bool {
        pair(v).is_some_and(|(a, b)| self.left.contains(a) && self.right.contains(b))
    }

    fn apply(&self, op: &str, args: &[Value]) -> Result<Value, AlgebraError> {
        check_args(self, op, args)?;
        let (ls, rs): (Vec<_>, Vec<_>) = args
            .iter()
            .map(|v| {
                let (a, b) = pair(v).expect("checked membership");
                (a.clone(), b.clone())
            })
            .unzip();
        Ok(Value::Seq(vec![
            self.left.apply(op, &ls)?,
            self.right.apply(op, &rs)?,
        ]))
    }

    fn equal(&self, x: &Value, y: &Value) -> bool {
        match (pair(x), pair(y)) {
            (Some((a, b)), Some((c, d))) => self.left.equal(a, c) && self.right.equal(b, d),
            _ => false,
        }
    }

    fn sample(&self, rng: &mut dyn RngCore) -> Value {
        Value::Seq(vec![self.left.sample(rng), self.right.sample(rng)])
    }

    fn format_value(&self, v: &Value) -> String {
        match pair(v) {
            Some((a, b)) => format!("({}, {})", self.left.format_value(a), self.right.format_value(b)),
            None => v.to_string(),
        }
    }

    fn mul_symbol(&self) -> &str {
        self.left.mul_symbol()
    }
}
