//! `frex`: solve goals, print proofs, and emit or check certificates.

mod parse;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use frex::{
    emit_certificate, mk_lemma, print_steps, to_linear, CommutativeFral, CommutativeFrex, FralSolver, FrexSolver,
    InvolutiveFral, InvolutiveFrex, Lemma, MonoidFral, MonoidFrex, Solver,
};
use frex::lemma::LemmaError;
use frex_kernel::algebras::{self, bundled};
use frex_kernel::presentation::{commutative_monoid, involutive_monoid, monoid};
use frex_kernel::{check, Algebra, Certificate, CheckContext, Format, Goal, Presentation, TermPrinter};

use parse::{parse_goal, Parsed};

#[derive(Parser)]
#[command(name = "frex", version, about = "Proof-producing simplifier for monoid-like theories")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Prove `lhs = rhs` and print the equational chain.
    Solve {
        #[arg(long, value_enum)]
        pres: Pres,
        #[arg(long, value_enum)]
        mode: Mode,
        /// Constants algebra for `--mode frex`: nat-add, nat-mul, list, string, mat2 or trivial.
        #[arg(long)]
        algebra: Option<String>,
        /// Write a certificate for the proof to this file.
        #[arg(long)]
        emit: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Style::Unicode)]
        print: Style,
        /// The goal, e.g. "(x + 3) + 2 = x + 5".
        goal: String,
    },
    /// Verify a certificate file.
    Check { file: PathBuf },
    /// Prove a constant-free goal as a named lemma.
    Lemma {
        #[arg(long)]
        name: String,
        #[arg(long, value_enum, default_value_t = Pres::Monoid)]
        pres: Pres,
        #[arg(long)]
        emit: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Style::Unicode)]
        print: Style,
        goal: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Pres {
    Monoid,
    Cmonoid,
    Invmonoid,
}

impl Pres {
    fn presentation(self) -> Presentation {
        match self {
            Pres::Monoid => monoid(),
            Pres::Cmonoid => commutative_monoid(),
            Pres::Invmonoid => involutive_monoid(),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Fral,
    Frex,
}

#[derive(Clone, Copy, ValueEnum)]
enum Style {
    Unicode,
    Latex,
}

impl From<Style> for Format {
    fn from(s: Style) -> Self {
        match s {
            Style::Unicode => Format::Unicode,
            Style::Latex => Format::Latex,
        }
    }
}

enum Failure {
    /// Exit 1: the goal is not provable or a certificate is rejected.
    Rejected(String),
    /// Exit 2: bad arguments or unparsable input.
    Usage(String),
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve {
            pres,
            mode,
            algebra,
            emit,
            print,
            goal,
        } => solve(pres, mode, algebra.as_deref(), emit.as_deref(), print, &goal),
        Command::Check { file } => check_file(&file),
        Command::Lemma {
            name,
            pres,
            emit,
            print,
            goal,
        } => lemma(&name, pres, emit.as_deref(), print, &goal),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Rejected(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn color() -> bool {
    std::env::var("FREX_COLOR").is_ok_and(|v| v == "1")
}

fn lookup_algebra(name: &str) -> Result<Arc<dyn Algebra>, Failure> {
    algebras::by_name(name).ok_or_else(|| {
        let known: Vec<String> = bundled().iter().map(|a| a.name().to_owned()).collect();
        Failure::Usage(format!("unknown algebra `{name}` (known: {})", known.join(", ")))
    })
}

/// Whether `alg` satisfies every axiom of `pres`, judged by its declared
/// presentation.
fn models(alg: &dyn Algebra, pres: &Presentation) -> bool {
    let declared = alg.presentation();
    pres.axioms().all(|(name, eq)| declared.axiom(name) == Some(eq))
}

fn parse_input(text: &str, algebra: Option<&dyn Algebra>) -> Result<Parsed, Failure> {
    parse_goal(text, algebra).map_err(|e| {
        let caret = " ".repeat(text[..byte_offset(text, e.position)].chars().count());
        Failure::Usage(format!("{e}\n  {text}\n  {caret}^"))
    })
}

fn byte_offset(text: &str, chars: usize) -> usize {
    text.char_indices().nth(chars).map_or(text.len(), |(i, _)| i)
}

fn build_solver(pres: Pres, algebra: Option<Arc<dyn Algebra>>) -> Box<dyn Solver> {
    match (pres, algebra) {
        (Pres::Monoid, None) => Box::new(FralSolver(MonoidFral::new())),
        (Pres::Cmonoid, None) => Box::new(FralSolver(CommutativeFral::new())),
        (Pres::Invmonoid, None) => Box::new(FralSolver(InvolutiveFral::new())),
        (Pres::Monoid, Some(a)) => Box::new(FrexSolver(MonoidFrex::new(a))),
        (Pres::Cmonoid, Some(a)) => Box::new(FrexSolver(CommutativeFrex::new(a))),
        (Pres::Invmonoid, Some(a)) => Box::new(FrexSolver(InvolutiveFrex::new(a))),
    }
}

fn printer(algebra: Option<Arc<dyn Algebra>>, names: Vec<String>, style: Style) -> TermPrinter {
    algebra
        .map(TermPrinter::with_algebra)
        .unwrap_or_default()
        .names(names)
        .format(style.into())
}

fn solve(pres: Pres, mode: Mode, algebra: Option<&str>, emit: Option<&Path>, style: Style, text: &str) -> Outcome {
    let presentation = pres.presentation();
    let algebra = match (mode, algebra) {
        (Mode::Fral, None) => None,
        (Mode::Fral, Some(_)) => return Err(Failure::Usage("--algebra only applies to --mode frex".into())),
        (Mode::Frex, None) => return Err(Failure::Usage("--mode frex needs --algebra".into())),
        (Mode::Frex, Some(name)) => {
            let alg = lookup_algebra(name)?;
            if !models(alg.as_ref(), &presentation) {
                return Err(Failure::Usage(format!(
                    "algebra `{name}` is not a model of the {} presentation",
                    pres_name(pres)
                )));
            }
            Some(alg)
        }
    };
    let parsed = parse_input(text, algebra.as_deref())?;
    let goal = &parsed.goal;
    let solver = build_solver(pres, algebra.clone());
    let proof = solver
        .solve(goal)
        .map_err(|e| Failure::Usage(format!("ill-formed goal: {e}")))?
        .ok_or_else(|| Failure::Rejected(format!("not provable in the {} theory: {text}", pres_name(pres))))?;
    let ctx = solver
        .check_context(goal.support)
        .map_err(|e| Failure::Usage(e.to_string()))?;
    let linear = proven(&ctx, goal, &proof)?;
    let p = printer(algebra.clone(), parsed.names.clone(), style);
    print!("{}", print_steps(&ctx, &linear, &p, color()).map_err(internal)?);
    if let Some(path) = emit {
        let name = algebra.as_ref().map(|a| a.name().to_owned());
        let bytes = emit_certificate(goal, &linear, &presentation, name.as_deref(), text).map_err(internal)?;
        write(path, &bytes)?;
    }
    Ok(())
}

/// Checks the solver's proof and flattens it to a step chain.
fn proven(ctx: &CheckContext, goal: &Goal, proof: &frex_kernel::Derivation) -> Result<frex_kernel::LinearDerivation, Failure> {
    check(ctx, &goal.lhs, &goal.rhs, proof).map_err(internal)?;
    to_linear(ctx, proof).map_err(internal)
}

fn internal(e: impl std::fmt::Display) -> Failure {
    Failure::Rejected(format!("internal error: {e}"))
}

fn write(path: &Path, bytes: &[u8]) -> Outcome {
    std::fs::write(path, bytes).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

fn pres_name(p: Pres) -> &'static str {
    match p {
        Pres::Monoid => "monoid",
        Pres::Cmonoid => "commutative monoid",
        Pres::Invmonoid => "involutive monoid",
    }
}

fn check_file(path: &Path) -> Outcome {
    let bytes = std::fs::read(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let cert = Certificate::parse(&bytes).map_err(|e| Failure::Rejected(format!("{}: {e}", path.display())))?;
    cert.check()
        .map_err(|e| Failure::Rejected(format!("{}: {e}", path.display())))?;
    let p = printer(cert.algebra.as_deref().and_then(algebras::by_name), Vec::new(), Style::Unicode);
    println!(
        "verified: {} = {} ({} steps)",
        p.term(&cert.goal.lhs),
        p.term(&cert.goal.rhs),
        cert.steps.len()
    );
    Ok(())
}

fn lemma(name: &str, pres: Pres, emit: Option<&Path>, style: Style, text: &str) -> Outcome {
    let parsed = parse_input(text, None)?;
    let goal = &parsed.goal;
    let made: Result<Lemma, LemmaError> = match pres {
        Pres::Monoid => mk_lemma(&MonoidFral::new(), name, goal),
        Pres::Cmonoid => mk_lemma(&CommutativeFral::new(), name, goal),
        Pres::Invmonoid => mk_lemma(&InvolutiveFral::new(), name, goal),
    };
    let lemma = made.map_err(|e| match e {
        LemmaError::NotProvable(_) => {
            Failure::Rejected(format!("not provable in the {} theory: {text}", pres_name(pres)))
        }
        LemmaError::Solve(e) => Failure::Usage(format!("ill-formed goal: {e}")),
        e => internal(e),
    })?;
    let presentation = pres.presentation();
    let ctx = CheckContext::new(presentation.clone(), goal.support, None).map_err(internal)?;
    let linear = proven(&ctx, goal, &lemma.proof)?;
    let p = printer(None, parsed.names.clone(), style);
    println!("{} : {} = {}", lemma.name, p.term(&goal.lhs), p.term(&goal.rhs));
    print!("{}", print_steps(&ctx, &linear, &p, color()).map_err(internal)?);
    if let Some(path) = emit {
        let bytes = emit_certificate(goal, &linear, &presentation, None, &format!("lemma {name}")).map_err(internal)?;
        write(path, &bytes)?;
    }
    Ok(())
}
