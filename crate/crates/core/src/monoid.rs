//! Monoids: the free monoid is words of variables; the free extension of a
//! monoid `A` is alternating lists of non-unit constants and variables.

use std::sync::Arc;

use frex_kernel::presentation::{self, MUL, UNIT};
use frex_kernel::{Algebra, Derivation, Presentation, Term, Value};

use crate::api::{Fral, Frex};
use crate::lists::{self, on_left, on_right, reify_items, Consts, Letter};

/// An alternating list over plain variables.
pub type AltList = Vec<Letter<usize>>;

/// Flattens a monoid term, applying `leaf` to variables and constants.
pub(crate) fn flatten<V: lists::Atom>(k: Consts<'_>, t: &Term, out: &mut Vec<Letter<V>>, leaf: &dyn Fn(usize) -> V) {
    match t {
        Term::Var(i) => out.push(Letter::Var(leaf(*i))),
        Term::Sta(c) => k.push(out, Letter::Const(c.clone())),
        Term::App(op, args) if op == MUL => {
            flatten(k, &args[0], out, leaf);
            flatten(k, &args[1], out, leaf);
        }
        Term::App(op, _) if op == UNIT => {}
        Term::App(op, _) => panic!("`{op}` is not a monoid operation"),
    }
}

/// Normal form with proof of `t = reify(nf)`; the caller has validated `t`.
pub(crate) fn normalize_list(k: Consts<'_>, t: &Term) -> (AltList, Derivation) {
    match t {
        Term::Var(i) => (vec![Letter::Var(*i)], Derivation::Refl(t.clone())),
        Term::Sta(c) => k.constant(c),
        Term::App(op, args) if op == MUL => {
            let (a, da) = normalize_list(k, &args[0]);
            let (b, db) = normalize_list(k, &args[1]);
            let parts = on_left(da, args[1].clone()).then(on_right(lists::reify(&a), db));
            let (out, joined) = k.concat_proof(&a, &b);
            (out, parts.then(joined))
        }
        Term::App(op, _) if op == UNIT => (Vec::new(), Derivation::Refl(t.clone())),
        Term::App(op, _) => panic!("`{op}` is not a monoid operation"),
    }
}

/// The free monoid: words of variable indices.
#[derive(Debug, Clone)]
pub struct MonoidFral {
    presentation: Presentation,
}

impl Default for MonoidFral {
    fn default() -> Self {
        MonoidFral {
            presentation: presentation::monoid(),
        }
    }
}

impl MonoidFral {
    pub fn new() -> Self {
        Self::default()
    }
}

impl Fral for MonoidFral {
    type Nf = Vec<usize>;

    fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    fn norm(&self, _support: usize, t: &Term) -> Vec<usize> {
        let mut out = Vec::new();
        flatten(Consts::none(), t, &mut out, &|i| i);
        out.into_iter()
            .map(|l| match l {
                Letter::Var(i) => i,
                Letter::Const(_) => unreachable!("free-algebra terms have no constants"),
            })
            .collect()
    }

    fn reify(&self, nf: &Vec<usize>) -> Term {
        reify_items(nf.iter(), |&i| Term::Var(i))
    }

    fn normalize(&self, _support: usize, t: &Term) -> (Vec<usize>, Derivation) {
        let (list, d) = normalize_list(Consts::none(), t);
        let word = list
            .into_iter()
            .map(|l| match l {
                Letter::Var(i) => i,
                Letter::Const(_) => unreachable!("free-algebra terms have no constants"),
            })
            .collect();
        (word, d)
    }

    fn eval_nf(&self, target: &dyn Algebra, env: &[Value], nf: &Vec<usize>) -> Value {
        let one = target.apply(UNIT, &[]).expect("target interprets the unit");
        nf.iter().fold(one, |acc, &i| {
            target
                .apply(MUL, &[acc, env[i].clone()])
                .expect("target interprets multiplication")
        })
    }
}

/// The free extension of a monoid by variables: alternating lists.
#[derive(Debug, Clone)]
pub struct MonoidFrex {
    presentation: Presentation,
    base: Arc<dyn Algebra>,
}

impl MonoidFrex {
    /// `base` must be a monoid; its signature may carry further operations.
    pub fn new(base: Arc<dyn Algebra>) -> Self {
        MonoidFrex {
            presentation: presentation::monoid(),
            base,
        }
    }

    fn consts(&self) -> Consts<'_> {
        Consts::of(self.base.as_ref())
    }
}

/// Folds a list through a target monoid.
pub(crate) fn eval_letters<V>(
    target: &dyn Algebra,
    letters: &[Letter<V>],
    h: &dyn Fn(&Value) -> Value,
    var: &dyn Fn(&V) -> Value,
) -> Value {
    let one = target.apply(UNIT, &[]).expect("target interprets the unit");
    letters.iter().fold(one, |acc, l| {
        let x = match l {
            Letter::Const(c) => h(c),
            Letter::Var(v) => var(v),
        };
        target
            .apply(MUL, &[acc, x])
            .expect("target interprets multiplication")
    })
}

impl Frex for MonoidFrex {
    type Nf = AltList;

    fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    fn base(&self) -> &Arc<dyn Algebra> {
        &self.base
    }

    fn var(&self, _support: usize, i: usize) -> AltList {
        vec![Letter::Var(i)]
    }

    fn embed(&self, _support: usize, c: &Value) -> AltList {
        let mut out = Vec::new();
        self.consts().push(&mut out, Letter::Const(c.clone()));
        out
    }

    fn norm(&self, _support: usize, t: &Term) -> AltList {
        let mut out = Vec::new();
        flatten(self.consts(), t, &mut out, &|i| i);
        out
    }

    fn reify(&self, nf: &AltList) -> Term {
        lists::reify(nf)
    }

    fn normalize(&self, _support: usize, t: &Term) -> (AltList, Derivation) {
        normalize_list(self.consts(), t)
    }

    fn nf_equal(&self, a: &AltList, b: &AltList) -> bool {
        self.consts().letters_equal(a, b)
    }

    fn eval_nf(
        &self,
        target: &dyn Algebra,
        h: &dyn Fn(&Value) -> Value,
        env: &[Value],
        nf: &AltList,
    ) -> Value {
        eval_letters(target, nf, h, &|&i| env[i].clone())
    }
}
