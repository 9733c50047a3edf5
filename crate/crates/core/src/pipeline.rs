//! From proof trees to linear derivations: flattening, loop removal, and
//! printing as an equational-reasoning chain.

use std::collections::HashMap;
use std::fmt::Write as _;

use frex_kernel::display::Format;
use frex_kernel::{
    endpoints, CheckContext, CheckError, Derivation, Direction, Frame, LinStep, LinearDerivation,
    ReplayError, Rule, Term, TermPrinter,
};

/// Flattens a checked derivation into directed steps under one-hole
/// contexts. Reflexivity vanishes, symmetry reverses and flips, and each
/// congruence child is rewritten in turn, left to right.
pub fn linearize(ctx: &CheckContext, d: &Derivation) -> Result<LinearDerivation, CheckError> {
    let (start, _) = endpoints(ctx, d)?;
    let mut steps = Vec::new();
    flatten(ctx, d, &mut steps)?;
    Ok(LinearDerivation { start, steps })
}

/// Appends the steps of `d` and returns its endpoints.
fn flatten(ctx: &CheckContext, d: &Derivation, out: &mut Vec<LinStep>) -> Result<(Term, Term), CheckError> {
    match d {
        Derivation::Refl(t) => Ok((t.clone(), t.clone())),
        Derivation::Sym(inner) => {
            let mut own = Vec::new();
            let (l, r) = flatten(ctx, inner, &mut own)?;
            out.extend(own.into_iter().rev().map(|mut s| {
                s.dir = s.dir.flip();
                s
            }));
            Ok((r, l))
        }
        Derivation::Trans(a, b) => {
            let (l, _) = flatten(ctx, a, out)?;
            let (_, r) = flatten(ctx, b, out)?;
            Ok((l, r))
        }
        Derivation::Cong(op, children) => {
            let mut ends = Vec::with_capacity(children.len());
            let mut inner = Vec::with_capacity(children.len());
            for c in children {
                let mut own = Vec::new();
                ends.push(flatten(ctx, c, &mut own)?);
                inner.push(own);
            }
            for (i, own) in inner.into_iter().enumerate() {
                let frame = Frame {
                    op: op.clone(),
                    before: ends[..i].iter().map(|(_, r)| r.clone()).collect(),
                    after: ends[i + 1..].iter().map(|(l, _)| l.clone()).collect(),
                };
                out.extend(own.into_iter().map(|s| s.within(frame.clone())));
            }
            let (ls, rs) = ends.into_iter().unzip();
            Ok((Term::App(op.clone(), ls), Term::App(op.clone(), rs)))
        }
        Derivation::ByAxiom(name, sub) => {
            out.push(LinStep::new(
                Rule::Axiom {
                    name: name.clone(),
                    subst: sub.clone(),
                },
                Direction::Forward,
            ));
            ctx.axiom_instance(name, sub)
        }
        Derivation::EvalStep(op, args) => {
            out.push(LinStep::new(
                Rule::Eval {
                    op: op.clone(),
                    args: args.clone(),
                },
                Direction::Forward,
            ));
            ctx.eval_instance(op, args)
        }
    }
}

/// Cuts every detour that returns to an already-visited term: from each
/// term the chain resumes after that term's last occurrence. The visited
/// terms of the result are pairwise distinct.
pub fn remove_loops(ctx: &CheckContext, l: &LinearDerivation) -> Result<LinearDerivation, ReplayError> {
    let terms = l.trace(ctx)?;
    let mut last = HashMap::with_capacity(terms.len());
    for (i, t) in terms.iter().enumerate() {
        last.insert(t, i);
    }
    let mut steps = Vec::new();
    let mut i = last[&terms[0]];
    while i < l.steps.len() {
        steps.push(l.steps[i].clone());
        i = last[&terms[i + 1]];
    }
    Ok(LinearDerivation {
        start: l.start.clone(),
        steps,
    })
}

/// `linearize` followed by `remove_loops`.
pub fn to_linear(ctx: &CheckContext, d: &Derivation) -> Result<LinearDerivation, ReplayError> {
    let l = linearize(ctx, d).map_err(|source| ReplayError::Step { step: 0, source })?;
    remove_loops(ctx, &l)
}

fn rule_label(by: &Rule, printer: &TermPrinter) -> String {
    match by {
        Rule::Axiom { name, .. } => name.clone(),
        Rule::Eval { op, args } => {
            let lhs = Term::App(op.clone(), args.iter().cloned().map(Term::Sta).collect());
            format!("eval {}", printer.term(&lhs))
        }
    }
}

const BOLD: &str = "\x1b[1m";
const DIM: &str = "\x1b[2m";
const RESET: &str = "\x1b[0m";

/// Renders the chain one term per line, each step annotated with its rule,
/// its direction (`⟩` as stated, `⟨` reversed) and, for steps under a
/// congruence, the context in square brackets.
pub fn print_steps(
    ctx: &CheckContext,
    l: &LinearDerivation,
    printer: &TermPrinter,
    color: bool,
) -> Result<String, ReplayError> {
    let terms = l.trace(ctx)?;
    let mut out = String::new();
    match printer.format {
        Format::Unicode => {
            let (b, d, r) = if color { (BOLD, DIM, RESET) } else { ("", "", "") };
            let _ = writeln!(out, "  {b}{}{r}", printer.term(&terms[0]));
            for (step, t) in l.steps.iter().zip(&terms[1..]) {
                let close = match step.dir {
                    Direction::Forward => "⟩",
                    Direction::Backward => "⟨",
                };
                let focus = match &step.context {
                    Some(c) => format!("[{}] ", c.render(printer)),
                    None => String::new(),
                };
                let _ = writeln!(out, "≡⟨ {d}{focus}{}{r} {close}", rule_label(&step.by, printer));
                let _ = writeln!(out, "  {b}{}{r}", printer.term(t));
            }
        }
        Format::Latex => {
            out.push_str("\\begin{align*}\n");
            let _ = write!(out, "  & {}", printer.term(&terms[0]));
            for (step, t) in l.steps.iter().zip(&terms[1..]) {
                let close = match step.dir {
                    Direction::Forward => "\\rangle",
                    Direction::Backward => "\\langle",
                };
                let focus = match &step.context {
                    Some(c) => format!("[{}]\\ ", c.render(printer)),
                    None => String::new(),
                };
                let label = rule_label(&step.by, printer);
                let label = match &step.by {
                    Rule::Axiom { .. } => format!("\\mathsf{{{label}}}"),
                    Rule::Eval { .. } => format!("\\mathsf{{eval}}\\ {}", &label["eval ".len()..]),
                };
                let _ = write!(
                    out,
                    " \\\\\n  \\equiv{{}} & {} && \\langle {focus}{label} {close}",
                    printer.term(t)
                );
            }
            out.push_str("\n\\end{align*}\n");
        }
    }
    Ok(out)
}
