//! Involutive monoids, reduced to monoids over variables tagged with
//! whether they sit under the involution.
//!
//! Normalization pushes `inv` down to the variables, reversing products
//! and applying the base involution to constants, then flattens as for
//! monoids. Each push emits its axiom step as it goes.

use std::sync::Arc;

use frex_kernel::presentation::{self, ANTIDISTRIBUTIVITY, INV, INVOLUTIVITY, MUL, UNIT};
use frex_kernel::{Algebra, Derivation, Presentation, Term, Value};

use crate::api::{Fral, Frex};
use crate::lists::{self, inv, on_left, on_right, right_unit, unit, Consts, Letter, TaggedVar};
use crate::monoid::eval_letters;

pub type InvWord = Vec<TaggedVar>;
pub type InvAltList = Vec<Letter<TaggedVar>>;

fn involutive(a: Term) -> Derivation {
    Derivation::axiom(INVOLUTIVITY, vec![a])
}

fn antidistributive(a: Term, b: Term) -> Derivation {
    Derivation::axiom(ANTIDISTRIBUTIVITY, vec![a, b])
}

fn under_inv(d: Derivation) -> Derivation {
    Derivation::cong(INV, vec![d])
}

/// `inv(1) = 1`, from the axioms alone.
fn inv_unit() -> Derivation {
    let iu = inv(unit());
    right_unit(iu.clone())
        .sym()
        .then(on_right(iu.clone(), involutive(unit()).sym()))
        .then(antidistributive(iu.clone(), unit()).sym())
        .then(under_inv(right_unit(iu)))
        .then(involutive(unit()))
}

fn flip(k: Consts<'_>, l: &Letter<TaggedVar>) -> Letter<TaggedVar> {
    match l {
        Letter::Var(v) => Letter::Var(v.flipped()),
        Letter::Const(c) => Letter::Const(k.inv(c)),
    }
}

/// Reverses the list, flips every tag and inverts every constant.
pub(crate) fn inv_letters(k: Consts<'_>, nf: &[Letter<TaggedVar>]) -> InvAltList {
    let mut out = Vec::with_capacity(nf.len());
    for l in nf.iter().rev() {
        k.push(&mut out, flip(k, l));
    }
    out
}

fn flatten(k: Consts<'_>, t: &Term, flipped: bool, out: &mut InvAltList) {
    match t {
        Term::Var(i) => out.push(Letter::Var(TaggedVar {
            index: *i,
            involuted: flipped,
        })),
        Term::Sta(c) => {
            let c = if flipped { k.inv(c) } else { c.clone() };
            k.push(out, Letter::Const(c));
        }
        Term::App(op, args) if op == MUL => {
            let (first, second) = if flipped {
                (&args[1], &args[0])
            } else {
                (&args[0], &args[1])
            };
            flatten(k, first, flipped, out);
            flatten(k, second, flipped, out);
        }
        Term::App(op, args) if op == INV => flatten(k, &args[0], !flipped, out),
        Term::App(op, _) if op == UNIT => {}
        Term::App(op, _) => panic!("`{op}` is not an involutive-monoid operation"),
    }
}

/// `inv(reify([x])) = reify(result)`.
fn inv_letter_proof(k: Consts<'_>, x: &Letter<TaggedVar>) -> (InvAltList, Derivation) {
    match x {
        Letter::Var(v) if !v.involuted => (vec![Letter::Var(v.flipped())], Derivation::Refl(inv(x.reify()))),
        Letter::Var(v) => (
            vec![Letter::Var(v.flipped())],
            involutive(Term::Var(v.index)),
        ),
        Letter::Const(c) => {
            let (out, rest) = k.constant(&k.inv(c));
            (out, Derivation::eval(INV, vec![c.clone()]).then(rest))
        }
    }
}

/// `inv(reify(nf)) = reify(inv_letters(nf))`.
fn inv_proof(k: Consts<'_>, nf: &[Letter<TaggedVar>]) -> (InvAltList, Derivation) {
    match nf {
        [] => (Vec::new(), inv_unit()),
        [x] => inv_letter_proof(k, x),
        [x, rest @ ..] => {
            let (rx, rr) = (x.reify(), lists::reify(rest));
            let split = antidistributive(rx, rr.clone());
            let (ir, dr) = inv_proof(k, rest);
            let (ix, dx) = inv_letter_proof(k, x);
            let parts = on_left(dr, inv(x.reify())).then(on_right(lists::reify(&ir), dx));
            let (out, joined) = k.concat_proof(&ir, &ix);
            (out, split.then(parts).then(joined))
        }
    }
}

fn normalize_inv(k: Consts<'_>, t: &Term) -> (InvAltList, Derivation) {
    match t {
        Term::Var(i) => (vec![Letter::Var(TaggedVar::plain(*i))], Derivation::Refl(t.clone())),
        Term::Sta(c) => k.constant(c),
        Term::App(op, args) if op == MUL => {
            let (a, da) = normalize_inv(k, &args[0]);
            let (b, db) = normalize_inv(k, &args[1]);
            let parts = on_left(da, args[1].clone()).then(on_right(lists::reify(&a), db));
            let (out, joined) = k.concat_proof(&a, &b);
            (out, parts.then(joined))
        }
        Term::App(op, args) if op == INV => {
            let (a, da) = normalize_inv(k, &args[0]);
            let (out, pushed) = inv_proof(k, &a);
            (out, under_inv(da).then(pushed))
        }
        Term::App(op, _) if op == UNIT => (Vec::new(), Derivation::Refl(t.clone())),
        Term::App(op, _) => panic!("`{op}` is not an involutive-monoid operation"),
    }
}

fn to_word(list: InvAltList) -> InvWord {
    list.into_iter()
        .map(|l| match l {
            Letter::Var(v) => v,
            Letter::Const(_) => unreachable!("free-algebra terms have no constants"),
        })
        .collect()
}

fn eval_tagged(target: &dyn Algebra, env: &[Value], v: &TaggedVar) -> Value {
    let x = env[v.index].clone();
    if v.involuted {
        target.apply(INV, &[x]).expect("target interprets the involution")
    } else {
        x
    }
}

/// The free involutive monoid: words over tagged variables.
#[derive(Debug, Clone)]
pub struct InvolutiveFral {
    presentation: Presentation,
}

impl Default for InvolutiveFral {
    fn default() -> Self {
        InvolutiveFral {
            presentation: presentation::involutive_monoid(),
        }
    }
}

impl InvolutiveFral {
    pub fn new() -> Self {
        Self::default()
    }

    /// The involution on normal forms.
    pub fn inv_nf(&self, nf: &InvWord) -> InvWord {
        nf.iter().rev().map(|v| v.flipped()).collect()
    }
}

impl Fral for InvolutiveFral {
    type Nf = InvWord;

    fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    fn norm(&self, _support: usize, t: &Term) -> InvWord {
        let mut out = Vec::new();
        flatten(Consts::none(), t, false, &mut out);
        to_word(out)
    }

    fn reify(&self, nf: &InvWord) -> Term {
        lists::reify_items(nf.iter(), lists::Atom::reify)
    }

    fn normalize(&self, _support: usize, t: &Term) -> (InvWord, Derivation) {
        let (list, d) = normalize_inv(Consts::none(), t);
        (to_word(list), d)
    }

    fn eval_nf(&self, target: &dyn Algebra, env: &[Value], nf: &InvWord) -> Value {
        let letters: Vec<Letter<TaggedVar>> = nf.iter().copied().map(Letter::Var).collect();
        eval_letters(target, &letters, &|c| c.clone(), &|v| eval_tagged(target, env, v))
    }
}

/// The free extension of an involutive monoid: alternating lists over
/// tagged variables.
#[derive(Debug, Clone)]
pub struct InvolutiveFrex {
    presentation: Presentation,
    base: Arc<dyn Algebra>,
}

impl InvolutiveFrex {
    /// `base` must be an involutive monoid.
    pub fn new(base: Arc<dyn Algebra>) -> Self {
        InvolutiveFrex {
            presentation: presentation::involutive_monoid(),
            base,
        }
    }

    fn consts(&self) -> Consts<'_> {
        Consts::of(self.base.as_ref())
    }

    /// The involution on normal forms.
    pub fn inv_nf(&self, nf: &InvAltList) -> InvAltList {
        inv_letters(self.consts(), nf)
    }
}

impl Frex for InvolutiveFrex {
    type Nf = InvAltList;

    fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    fn base(&self) -> &Arc<dyn Algebra> {
        &self.base
    }

    fn var(&self, _support: usize, i: usize) -> InvAltList {
        vec![Letter::Var(TaggedVar::plain(i))]
    }

    fn embed(&self, _support: usize, c: &Value) -> InvAltList {
        let mut out = Vec::new();
        self.consts().push(&mut out, Letter::Const(c.clone()));
        out
    }

    fn norm(&self, _support: usize, t: &Term) -> InvAltList {
        let mut out = Vec::new();
        flatten(self.consts(), t, false, &mut out);
        out
    }

    fn reify(&self, nf: &InvAltList) -> Term {
        lists::reify(nf)
    }

    fn normalize(&self, _support: usize, t: &Term) -> (InvAltList, Derivation) {
        normalize_inv(self.consts(), t)
    }

    fn nf_equal(&self, a: &InvAltList, b: &InvAltList) -> bool {
        self.consts().letters_equal(a, b)
    }

    fn eval_nf(
        &self,
        target: &dyn Algebra,
        h: &dyn Fn(&Value) -> Value,
        env: &[Value],
        nf: &InvAltList,
    ) -> Value {
        eval_letters(target, nf, h, &|v| eval_tagged(target, env, v))
    }
}
