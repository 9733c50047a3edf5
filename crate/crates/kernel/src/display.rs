//! Human-readable rendering of terms, in unicode or LaTeX.

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::presentation::{INV, MUL, UNIT};
use crate::term::Term;

/// Variable index reserved for the hole of a step context while printing.
pub(crate) const HOLE_INDEX: usize = usize::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Unicode,
    Latex,
}

/// Rendering options: the glyph for the binary operation, variable names,
/// and the algebra whose literal syntax is used for constants.
#[derive(Debug, Clone)]
pub struct TermPrinter {
    pub mul: String,
    pub names: Vec<String>,
    pub algebra: Option<Arc<dyn Algebra>>,
    pub format: Format,
}

impl Default for TermPrinter {
    fn default() -> Self {
        TermPrinter {
            mul: MUL.to_owned(),
            names: Vec::new(),
            algebra: None,
            format: Format::Unicode,
        }
    }
}

pub fn default_var_name(i: usize) -> String {
    match i {
        0 => "x".into(),
        1 => "y".into(),
        2 => "z".into(),
        3 => "w".into(),
        _ => format!("x{i}"),
    }
}

impl TermPrinter {
    pub fn with_algebra(algebra: Arc<dyn Algebra>) -> Self {
        TermPrinter {
            mul: algebra.mul_symbol().to_owned(),
            algebra: Some(algebra),
            ..TermPrinter::default()
        }
    }

    pub fn names(mut self, names: Vec<String>) -> Self {
        self.names = names;
        self
    }

    pub fn format(mut self, format: Format) -> Self {
        self.format = format;
        self
    }

    pub fn term(&self, t: &Term) -> String {
        let mut out = String::new();
        self.write(t, &mut out);
        out
    }

    fn var_name(&self, i: usize) -> String {
        if i == HOLE_INDEX {
            return match self.format {
                Format::Unicode => "□".into(),
                Format::Latex => "\\square".into(),
            };
        }
        self.names
            .get(i)
            .cloned()
            .unwrap_or_else(|| default_var_name(i))
    }

    fn mul_glyph(&self) -> &str {
        match (self.format, self.mul.as_str()) {
            (Format::Latex, "·") => "\\cdot",
            (Format::Latex, "•") => "\\bullet",
            (_, m) => m,
        }
    }

    fn write(&self, t: &Term, out: &mut String) {
        match t {
            Term::Var(i) => out.push_str(&self.var_name(*i)),
            Term::Sta(v) => {
                let lit = match &self.algebra {
                    Some(a) => a.format_value(v),
                    None => v.to_string(),
                };
                match self.format {
                    Format::Unicode => out.push_str(&lit),
                    Format::Latex => {
                        out.push_str("\\underline{\\mathtt{");
                        out.push_str(&latex_escape(&lit));
                        out.push_str("}}");
                    }
                }
            }
            Term::App(op, args) if op == UNIT && args.is_empty() => match self.format {
                Format::Unicode => out.push('ε'),
                Format::Latex => out.push_str("\\varepsilon"),
            },
            Term::App(op, args) if op == MUL && args.len() == 2 => {
                self.write_operand(&args[0], out);
                out.push(' ');
                out.push_str(self.mul_glyph());
                out.push(' ');
                self.write_operand(&args[1], out);
            }
            Term::App(op, args) if op == INV && args.len() == 1 => match self.format {
                Format::Unicode => {
                    self.write_postfix_operand(&args[0], out);
                    out.push('′');
                }
                Format::Latex => {
                    out.push_str("\\overline{");
                    self.write(&args[0], out);
                    out.push('}');
                }
            },
            Term::App(op, args) => {
                out.push_str(op);
                if !args.is_empty() {
                    out.push('(');
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            out.push_str(", ");
                        }
                        self.write(a, out);
                    }
                    out.push(')');
                }
            }
        }
    }

    fn write_operand(&self, t: &Term, out: &mut String) {
        if is_binary(t) {
            out.push('(');
            self.write(t, out);
            out.push(')');
        } else {
            self.write(t, out);
        }
    }

    fn write_postfix_operand(&self, t: &Term, out: &mut String) {
        if is_binary(t) {
            out.push('(');
            self.write(t, out);
            out.push(')');
        } else {
            self.write(t, out);
        }
    }
}

fn is_binary(t: &Term) -> bool {
    matches!(t, Term::App(op, args) if op == MUL && args.len() == 2)
}

pub(crate) fn latex_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '\\' => out.push_str("\\textbackslash{}"),
            '{' | '}' | '_' | '#' | '$' | '%' | '&' => {
                out.push('\\');
                out.push(c);
            }
            '"' => out.push_str("\\texttt{\"}"),
            _ => out.push(c),
        }
    }
    out
}
