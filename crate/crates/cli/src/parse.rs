//! Surface syntax for goals.
//!
//! `+`, `*`, `·` and `•` all denote the presentation's binary operation,
//! with `*` binding tighter than `+`; postfix `′` (or `'`) and `inv(…)`
//! denote the involution. Names are interned in order of first occurrence.

use frex_kernel::{Algebra, Equation, Term, Value};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at column {}: expected {expected}, found {found}", .position + 1)]
pub struct ParseError {
    /// Character offset into the input.
    pub position: usize,
    pub expected: String,
    pub found: String,
}

/// A parsed goal and the variable names, indexed like the goal's variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parsed {
    pub goal: Equation,
    pub names: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Lit(Value),
    Unit,
    Plus,
    Times,
    Prime,
    Open,
    Close,
    Eq,
    End,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Lit(v) => format!("literal `{v}`"),
        Tok::Unit => "`ε`".into(),
        Tok::Plus => "`+`".into(),
        Tok::Times => "`*`".into(),
        Tok::Prime => "`′`".into(),
        Tok::Open => "`(`".into(),
        Tok::Close => "`)`".into(),
        Tok::Eq => "`=`".into(),
        Tok::End => "end of input".into(),
    }
}

struct Lexer {
    chars: Vec<char>,
    pos: usize,
}

impl Lexer {
    fn err<T>(&self, position: usize, expected: &str) -> Result<T, ParseError> {
        let found = match self.chars.get(position) {
            Some(c) => format!("`{c}`"),
            None => "end of input".into(),
        };
        Err(ParseError {
            position,
            expected: expected.into(),
            found,
        })
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn tokens(mut self) -> Result<Vec<(usize, Tok)>, ParseError> {
        let mut out = Vec::new();
        loop {
            self.skip_ws();
            let start = self.pos;
            let Some(&c) = self.chars.get(self.pos) else {
                out.push((start, Tok::End));
                return Ok(out);
            };
            let tok = match c {
                '+' => self.single(Tok::Plus),
                '*' | '·' | '•' => self.single(Tok::Times),
                '\'' | '′' => self.single(Tok::Prime),
                '(' => self.single(Tok::Open),
                ')' => self.single(Tok::Close),
                '=' => self.single(Tok::Eq),
                'ε' => self.single(Tok::Unit),
                '0'..='9' | '"' | '[' => Tok::Lit(self.literal()?),
                c if c.is_alphabetic() || c == '_' => {
                    let word = self.word();
                    if word == "null" {
                        Tok::Lit(Value::Unit)
                    } else {
                        Tok::Ident(word)
                    }
                }
                _ => return self.err(start, "a term"),
            };
            out.push((start, tok));
        }
    }

    fn single(&mut self, t: Tok) -> Tok {
        self.pos += 1;
        t
    }

    fn word(&mut self) -> String {
        let start = self.pos;
        while self
            .chars
            .get(self.pos)
            .is_some_and(|c| c.is_alphanumeric() || *c == '_')
        {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn literal(&mut self) -> Result<Value, ParseError> {
        self.skip_ws();
        let start = self.pos;
        match self.chars.get(self.pos) {
            Some('0'..='9') => {
                while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let digits: String = self.chars[start..self.pos].iter().collect();
                match digits.parse() {
                    Ok(n) => Ok(Value::Nat(n)),
                    Err(_) => self.err(start, "a natural number below 2^64"),
                }
            }
            Some('"') => self.string(),
            Some('[') => {
                self.pos += 1;
                let mut items = Vec::new();
                self.skip_ws();
                if self.chars.get(self.pos) == Some(&']') {
                    self.pos += 1;
                    return Ok(Value::Seq(items));
                }
                loop {
                    items.push(self.literal()?);
                    self.skip_ws();
                    match self.chars.get(self.pos) {
                        Some(',') => self.pos += 1,
                        Some(']') => {
                            self.pos += 1;
                            return Ok(Value::Seq(items));
                        }
                        _ => return self.err(self.pos, "`,` or `]`"),
                    }
                }
            }
            Some(c) if c.is_alphabetic() => match self.word().as_str() {
                "null" => Ok(Value::Unit),
                _ => self.err(start, "a literal"),
            },
            _ => self.err(start, "a literal"),
        }
    }

    fn string(&mut self) -> Result<Value, ParseError> {
        self.pos += 1;
        let mut s = String::new();
        loop {
            match self.chars.get(self.pos) {
                None => return self.err(self.pos, "closing `\"`"),
                Some('"') => {
                    self.pos += 1;
                    return Ok(Value::Str(s));
                }
                Some('\\') => {
                    let escaped = match self.chars.get(self.pos + 1) {
                        Some('"') => '"',
                        Some('\\') => '\\',
                        Some('n') => '\n',
                        Some('t') => '\t',
                        Some('r') => '\r',
                        Some('0') => '\0',
                        Some('\'') => '\'',
                        Some('u') => {
                            let code = self.unicode_escape()?;
                            s.push(code);
                            continue;
                        }
                        _ => return self.err(self.pos + 1, "an escape sequence"),
                    };
                    s.push(escaped);
                    self.pos += 2;
                }
                Some(&c) => {
                    s.push(c);
                    self.pos += 1;
                }
            }
        }
    }

    /// `\u{hex}`, with `self.pos` at the backslash.
    fn unicode_escape(&mut self) -> Result<char, ParseError> {
        let open = self.pos + 2;
        if self.chars.get(open) != Some(&'{') {
            return self.err(open, "`{`");
        }
        let Some(len) = self.chars[open + 1..].iter().position(|&c| c == '}') else {
            return self.err(open + 1, "`}`");
        };
        let hex: String = self.chars[open + 1..open + 1 + len].iter().collect();
        match u32::from_str_radix(&hex, 16).ok().and_then(char::from_u32) {
            Some(c) => {
                self.pos = open + len + 2;
                Ok(c)
            }
            None => self.err(open + 1, "a unicode scalar value"),
        }
    }
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    algebra: Option<&'a dyn Algebra>,
    names: Vec<String>,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &str) -> Result<T, ParseError> {
        let (position, tok) = &self.toks[self.at];
        Err(ParseError {
            position: *position,
            expected: expected.into(),
            found: describe(tok),
        })
    }

    fn expect(&mut self, t: Tok) -> Result<(), ParseError> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            self.fail(&describe(&t))
        }
    }

    fn sum(&mut self) -> Result<Term, ParseError> {
        let mut t = self.product()?;
        while *self.peek() == Tok::Plus {
            self.bump();
            t = mul(t, self.product()?);
        }
        Ok(t)
    }

    fn product(&mut self) -> Result<Term, ParseError> {
        let mut t = self.postfix()?;
        while *self.peek() == Tok::Times {
            self.bump();
            t = mul(t, self.postfix()?);
        }
        Ok(t)
    }

    fn postfix(&mut self) -> Result<Term, ParseError> {
        let mut t = self.atom()?;
        while *self.peek() == Tok::Prime {
            self.bump();
            t = Term::app("inv", vec![t]);
        }
        Ok(t)
    }

    fn atom(&mut self) -> Result<Term, ParseError> {
        match self.peek().clone() {
            Tok::Open => {
                self.bump();
                let t = self.sum()?;
                self.expect(Tok::Close)?;
                Ok(t)
            }
            Tok::Unit => {
                self.bump();
                Ok(Term::constant("1"))
            }
            Tok::Ident(name) if name == "inv" => {
                self.bump();
                self.expect(Tok::Open)?;
                let t = self.sum()?;
                self.expect(Tok::Close)?;
                Ok(Term::app("inv", vec![t]))
            }
            Tok::Ident(name) => {
                self.bump();
                let i = match self.names.iter().position(|n| *n == name) {
                    Some(i) => i,
                    None => {
                        self.names.push(name);
                        self.names.len() - 1
                    }
                };
                Ok(Term::var(i))
            }
            Tok::Lit(v) => match self.algebra {
                Some(alg) if alg.contains(&v) => {
                    self.bump();
                    Ok(Term::Sta(v))
                }
                Some(alg) => self.fail(&format!("a literal of `{}`", alg.name())),
                None if matches!(v, Value::Nat(0 | 1)) => {
                    self.bump();
                    Ok(Term::constant("1"))
                }
                None => self.fail("a variable or unit (constants need --mode frex)"),
            },
            _ => self.fail("a term"),
        }
    }
}

fn mul(a: Term, b: Term) -> Term {
    Term::app("·", vec![a, b])
}

/// Parses `lhs = rhs`. Literals are read as constants of `algebra`; without
/// one, only `0`, `1` and `ε` are accepted, all denoting the unit.
pub fn parse_goal(text: &str, algebra: Option<&dyn Algebra>) -> Result<Parsed, ParseError> {
    let toks = Lexer {
        chars: text.chars().collect(),
        pos: 0,
    }
    .tokens()?;
    let mut p = Parser {
        toks,
        at: 0,
        algebra,
        names: Vec::new(),
    };
    let lhs = p.sum()?;
    p.expect(Tok::Eq)?;
    let rhs = p.sum()?;
    p.expect(Tok::End)?;
    Ok(Parsed {
        goal: Equation::new(p.names.len(), lhs, rhs),
        names: p.names,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use frex_kernel::algebras::{by_name, NatAdd};
    use frex_kernel::TermPrinter;

    fn add(a: Term, b: Term) -> Term {
        mul(a, b)
    }

    #[test]
    fn unit_sandwich() {
        let p = parse_goal("0 + (x + 0) + 0 = x", None).unwrap();
        let one = Term::constant("1");
        let x = Term::var(0);
        assert_eq!(p.goal.support, 1);
        assert_eq!(p.goal.lhs, add(add(one.clone(), add(x.clone(), one.clone())), one));
        assert_eq!(p.goal.rhs, x);
    }

    #[test]
    fn missing_equals_is_an_error() {
        let e = parse_goal("x", None).unwrap_err();
        assert_eq!(e.position, 1);
        assert_eq!(e.found, "end of input");
    }

    #[test]
    fn extraction_example() {
        let nat = NatAdd::default();
        let p = parse_goal("(2 + x) + (y + 3) = x + (y + 5)", Some(&nat)).unwrap();
        assert_eq!(p.goal.support, 2);
        assert_eq!(p.names, ["x", "y"]);
        let s = |n: u64| Term::sta(n);
        let (x, y) = (Term::var(0), Term::var(1));
        assert_eq!(p.goal.lhs, add(add(s(2), x.clone()), add(y.clone(), s(3))));
        assert_eq!(p.goal.rhs, add(x, add(y, s(5))));
    }

    #[test]
    fn precedence_and_postfix() {
        let p = parse_goal("a + b * c′′ = inv(a)'", None).unwrap();
        let (a, b, c) = (Term::var(0), Term::var(1), Term::var(2));
        let inv = |t| Term::app("inv", vec![t]);
        assert_eq!(p.goal.lhs, mul(a.clone(), mul(b, inv(inv(c)))));
        assert_eq!(p.goal.rhs, inv(inv(a)));
    }

    #[test]
    fn diagnostics_name_the_token() {
        let e = parse_goal("x + ) = x", None).unwrap_err();
        assert_eq!((e.position, e.found.as_str()), (4, "`)`"));
        let e = parse_goal("x + 7 = x", None).unwrap_err();
        assert_eq!(e.found, "literal `7`");
        let e = parse_goal("x + \"ab\" = x", Some(&NatAdd::default())).unwrap_err();
        assert!(e.expected.contains("nat-add"));
    }

    #[test]
    fn printing_round_trips() {
        let cases = [
            ("nat-add", "(x + 3) + 2 = 5 + x"),
            ("nat-mul", "x * (2 * y) = y * x * 2"),
            ("string", "(\"a\\\"b\" · x)′ = x′ · \"b\\\"a\""),
            ("list", "inv(x · [1, 2]) = [2, 1] · ε · x′"),
            ("mat2", "[[1, 2], [3, 4]] · x = x"),
        ];
        for (name, text) in cases {
            let alg = by_name(name).unwrap();
            let p = parse_goal(text, Some(alg.as_ref())).unwrap();
            let printer = TermPrinter::with_algebra(alg.clone()).names(p.names.clone());
            let shown = format!("{} = {}", printer.term(&p.goal.lhs), printer.term(&p.goal.rhs));
            assert_eq!(parse_goal(&shown, Some(alg.as_ref())).unwrap(), p, "{shown}");
        }
    }
}
