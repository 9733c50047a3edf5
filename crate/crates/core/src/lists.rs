//! List normal forms shared by the monoid-family frexlets, and the proof
//! steps that rebuild a product of two normal forms as a normal form.
//!
//! Every normal form reifies right-nested: `[a, b, c]` is `a · (b · c)` and
//! `[]` is the unit. Constants in a list are never the unit and never
//! adjacent in the ordered (monoid) case; in the sorted (commutative) case
//! there is at most one, at the front.

use frex_kernel::presentation::{
    ASSOCIATIVITY, COMMUTATIVITY, INV, LEFT_NEUTRALITY, MUL, RIGHT_NEUTRALITY, UNIT,
};
use frex_kernel::{Algebra, Derivation, Term, Value};

/// A variable-like atom of a normal form.
pub trait Atom: Clone + Ord + std::fmt::Debug {
    fn reify(&self) -> Term;
}

impl Atom for usize {
    fn reify(&self) -> Term {
        Term::Var(*self)
    }
}

/// A variable, possibly under the involution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TaggedVar {
    pub index: usize,
    pub involuted: bool,
}

impl TaggedVar {
    pub fn plain(index: usize) -> Self {
        TaggedVar {
            index,
            involuted: false,
        }
    }

    pub fn flipped(self) -> Self {
        TaggedVar {
            index: self.index,
            involuted: !self.involuted,
        }
    }
}

impl Atom for TaggedVar {
    fn reify(&self) -> Term {
        if self.involuted {
            inv(Term::Var(self.index))
        } else {
            Term::Var(self.index)
        }
    }
}

/// One item of an alternating list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter<V> {
    Const(Value),
    Var(V),
}

impl<V: Atom> Letter<V> {
    pub fn reify(&self) -> Term {
        match self {
            Letter::Const(c) => Term::Sta(c.clone()),
            Letter::Var(v) => v.reify(),
        }
    }
}

pub fn mul(a: Term, b: Term) -> Term {
    Term::App(MUL.to_owned(), vec![a, b])
}

pub fn unit() -> Term {
    Term::constant(UNIT)
}

pub fn inv(a: Term) -> Term {
    Term::App(INV.to_owned(), vec![a])
}

/// Right-nested product; the unit for the empty list.
pub fn reify_items<I, F>(items: I, leaf: F) -> Term
where
    I: DoubleEndedIterator,
    F: Fn(I::Item) -> Term,
{
    let mut rev = items.rev();
    match rev.next() {
        None => unit(),
        Some(last) => rev.fold(leaf(last), |acc, x| mul(leaf(x), acc)),
    }
}

pub fn reify<V: Atom>(items: &[Letter<V>]) -> Term {
    reify_items(items.iter(), Letter::reify)
}

pub(crate) fn assoc(a: Term, b: Term, c: Term) -> Derivation {
    Derivation::axiom(ASSOCIATIVITY, vec![a, b, c])
}

pub(crate) fn comm(a: Term, b: Term) -> Derivation {
    Derivation::axiom(COMMUTATIVITY, vec![a, b])
}

pub(crate) fn left_unit(a: Term) -> Derivation {
    Derivation::axiom(LEFT_NEUTRALITY, vec![a])
}

pub(crate) fn right_unit(a: Term) -> Derivation {
    Derivation::axiom(RIGHT_NEUTRALITY, vec![a])
}

/// `d` applied to the left factor of a product with `right`.
pub(crate) fn on_left(d: Derivation, right: Term) -> Derivation {
    Derivation::cong(MUL, vec![d, Derivation::Refl(right)])
}

/// `d` applied to the right factor of a product with `left`.
pub(crate) fn on_right(left: Term, d: Derivation) -> Derivation {
    Derivation::cong(MUL, vec![Derivation::Refl(left), d])
}

/// Constant folding in an optional base algebra. Without one the lists
/// never contain constants.
#[derive(Clone, Copy)]
pub(crate) struct Consts<'a> {
    base: Option<&'a dyn Algebra>,
}

impl<'a> Consts<'a> {
    pub fn none() -> Self {
        Consts { base: None }
    }

    pub fn of(base: &'a dyn Algebra) -> Self {
        Consts { base: Some(base) }
    }

    fn base(&self) -> &'a dyn Algebra {
        self.base.expect("constants only occur in frex normal forms")
    }

    pub fn unit(&self) -> Value {
        self.base()
            .apply(UNIT, &[])
            .expect("base algebras interpret the unit")
    }

    pub fn is_unit(&self, c: &Value) -> bool {
        self.base().equal(c, &self.unit())
    }

    pub fn mul(&self, a: &Value, b: &Value) -> Value {
        self.base()
            .apply(MUL, &[a.clone(), b.clone()])
            .expect("base algebras interpret multiplication")
    }

    pub fn inv(&self, a: &Value) -> Value {
        self.base()
            .apply(INV, std::slice::from_ref(a))
            .expect("involutive base algebras interpret the involution")
    }

    pub fn equal(&self, a: &Value, b: &Value) -> bool {
        match self.base {
            Some(alg) => alg.equal(a, b),
            None => a == b,
        }
    }

    pub fn letters_equal<V: Eq>(&self, a: &[Letter<V>], b: &[Letter<V>]) -> bool {
        a.len() == b.len()
            && a.iter().zip(b).all(|(x, y)| match (x, y) {
                (Letter::Const(c), Letter::Const(d)) => self.equal(c, d),
                (Letter::Var(v), Letter::Var(w)) => v == w,
                _ => false,
            })
    }

    /// `Sta c = reify(list)`: the empty list when `c` is the unit.
    pub fn constant<V: Atom>(&self, c: &Value) -> (Vec<Letter<V>>, Derivation) {
        if self.is_unit(c) {
            (Vec::new(), Derivation::eval(UNIT, vec![]).sym())
        } else {
            (vec![Letter::Const(c.clone())], Derivation::Refl(Term::Sta(c.clone())))
        }
    }

    /// The product `Sta c · Sta d` as a list, with its proof.
    fn fold<V: Atom>(&self, c: &Value, d: &Value) -> (Vec<Letter<V>>, Derivation) {
        let e = self.mul(c, d);
        let step = Derivation::eval(MUL, vec![c.clone(), d.clone()]);
        let (items, rest) = self.constant(&e);
        (items, step.then(rest))
    }

    /// Folds `Sta c` into the front of `b`, whose head is the constant `d`:
    /// `Sta c · reify(b) = reify(result)`.
    fn fold_front<V: Atom>(&self, c: &Value, d: &Value, b: &[Letter<V>]) -> (Vec<Letter<V>>, Derivation) {
        let tail = &b[1..];
        if tail.is_empty() {
            return self.fold(c, d);
        }
        let (sc, sd, rt) = (Term::Sta(c.clone()), Term::Sta(d.clone()), reify(tail));
        let regroup = assoc(sc, sd, rt.clone()).sym();
        let (front, folded) = self.fold::<V>(c, d);
        let proof = regroup.then(on_left(folded, rt.clone()));
        if front.is_empty() {
            (tail.to_vec(), proof.then(left_unit(rt)))
        } else {
            let mut out = front;
            out.extend_from_slice(tail);
            (out, proof)
        }
    }

    /// Concatenation of ordered normal forms.
    #[cfg(test)]
    pub fn concat<V: Atom>(&self, a: &[Letter<V>], b: &[Letter<V>]) -> Vec<Letter<V>> {
        let mut out = a.to_vec();
        for x in b {
            self.push(&mut out, x.clone());
        }
        out
    }

    /// Appends one letter, folding constants and dropping units.
    pub fn push<V: Atom>(&self, out: &mut Vec<Letter<V>>, x: Letter<V>) {
        match (out.last(), x) {
            (Some(Letter::Const(c)), Letter::Const(d)) => {
                let e = self.mul(c, &d);
                out.pop();
                if !self.is_unit(&e) {
                    out.push(Letter::Const(e));
                }
            }
            (_, Letter::Const(d)) if self.is_unit(&d) => {}
            (_, x) => out.push(x),
        }
    }

    /// `reify(a) · reify(b) = reify(concat(a, b))`.
    pub fn concat_proof<V: Atom>(&self, a: &[Letter<V>], b: &[Letter<V>]) -> (Vec<Letter<V>>, Derivation) {
        match a {
            [] => (b.to_vec(), left_unit(reify(b))),
            _ if b.is_empty() => (a.to_vec(), right_unit(reify(a))),
            [x] => match (x, &b[0]) {
                (Letter::Const(c), Letter::Const(d)) => self.fold_front(c, d, b),
                _ => {
                    let mut out = vec![x.clone()];
                    out.extend_from_slice(b);
                    (out, Derivation::Refl(mul(x.reify(), reify(b))))
                }
            },
            [x, rest @ ..] => {
                let (rx, rr, rb) = (x.reify(), reify(rest), reify(b));
                let regroup = assoc(rx.clone(), rr, rb);
                let (merged, inner) = self.concat_proof(rest, b);
                let proof = regroup.then(on_right(rx.clone(), inner));
                if merged.is_empty() {
                    (vec![x.clone()], proof.then(right_unit(rx)))
                } else {
                    let mut out = vec![x.clone()];
                    out.extend(merged);
                    (out, proof)
                }
            }
        }
    }

    /// Merge of sorted normal forms.
    #[cfg(test)]
    pub fn merge<V: Atom>(&self, a: &[Letter<V>], b: &[Letter<V>]) -> Vec<Letter<V>> {
        let (mut consts, mut vars): (Vec<_>, Vec<_>) = a
            .iter()
            .chain(b)
            .cloned()
            .partition(|x| matches!(x, Letter::Const(_)));
        vars.sort();
        let mut out = Vec::with_capacity(vars.len() + 1);
        if let Some(Letter::Const(first)) = consts.first().cloned() {
            let c = consts
                .drain(1..)
                .fold(first, |acc, x| match x {
                    Letter::Const(d) => self.mul(&acc, &d),
                    Letter::Var(_) => unreachable!(),
                });
            if !self.is_unit(&c) {
                out.push(Letter::Const(c));
            }
        }
        out.extend(vars);
        out
    }

    /// `reify(a) · reify(b) = reify(merge(a, b))`, by repeated insertion.
    pub fn merge_proof<V: Atom>(&self, a: &[Letter<V>], b: &[Letter<V>]) -> (Vec<Letter<V>>, Derivation) {
        match a {
            [] => (b.to_vec(), left_unit(reify(b))),
            _ if b.is_empty() => (a.to_vec(), right_unit(reify(a))),
            [x] => self.insert_proof(x, b),
            [x, rest @ ..] => {
                let rx = x.reify();
                let regroup = assoc(rx.clone(), reify(rest), reify(b));
                let (merged, inner) = self.merge_proof(rest, b);
                let (out, insert) = self.insert_proof(x, &merged);
                (out, regroup.then(on_right(rx, inner)).then(insert))
            }
        }
    }

    /// `x · reify(b) = reify(insert(x, b))` for sorted `b`.
    fn insert_proof<V: Atom>(&self, x: &Letter<V>, b: &[Letter<V>]) -> (Vec<Letter<V>>, Derivation) {
        let Some(y) = b.first() else {
            return (vec![x.clone()], right_unit(x.reify()));
        };
        if let (Letter::Const(c), Letter::Const(d)) = (x, y) {
            return self.fold_front(c, d, b);
        }
        if x <= y {
            let mut out = vec![x.clone()];
            out.extend_from_slice(b);
            return (out, Derivation::Refl(mul(x.reify(), reify(b))));
        }
        let (rx, ry) = (x.reify(), y.reify());
        let tail = &b[1..];
        if tail.is_empty() {
            return (vec![y.clone(), x.clone()], comm(rx, ry));
        }
        let rt = reify(tail);
        let swap = assoc(rx.clone(), ry.clone(), rt.clone())
            .sym()
            .then(on_left(comm(rx.clone(), ry.clone()), rt.clone()))
            .then(assoc(ry.clone(), rx, rt));
        let (rest, inner) = self.insert_proof(x, tail);
        let mut out = vec![y.clone()];
        out.extend(rest);
        (out, swap.then(on_right(ry, inner)))
    }
}
