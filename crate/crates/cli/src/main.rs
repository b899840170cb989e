use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use monadpreserve::monads::{Monad, Tier};
use monadpreserve::presentations::{
    affineness_of_presented, t1_triviality, MonoidPresentation, TrivialityVerdict,
    DEFAULT_MODEL_BOUND, DEFAULT_REWRITE_BUDGET,
};
use monadpreserve::preserve::{check_preservation, CheckOptions, CheckReport, Verdict};
use monadpreserve::props::{
    is_affine, n_relevance_check, relevance_check_seeded, two_discerning_check, DiscerningOptions,
    DiscerningVerdict, Outcome, PropVerdict, DEFAULT_SAMPLES,
};
use monadpreserve::reproduce::{run_all, CriterionResult, ReproduceOptions};
use monadpreserve::terms::{classify, discerning_companion, parse_theory, EquationClass, Theory};
use monadpreserve::{par, Error};

const EXIT_VIOLATED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

/// Lifts finite algebras through monoidal monads and checks which equations survive.
#[derive(Parser, Debug)]
#[command(name = "monadpreserve", version)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for the parallel searches.
    #[arg(long, global = true, env = "MONADPRESERVE_JOBS")]
    jobs: Option<usize>,

    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify each equation of a theory file by variable occurrences.
    Classify {
        theory: PathBuf,
        #[command(flatten)]
        discerning: DiscerningArgs,
    },
    /// Check whether a monad preserves each equation of a theory file.
    Check {
        /// powerset | powerset+ | maybe | dist | reader:<k> | writer:<monoid.json> | multiset:<semiring.json>
        monad: String,
        theory: PathBuf,
        /// Largest algebra carrier to scan.
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
        max_carrier: u64,
        /// Algebras scanned before giving up.
        #[arg(long, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
        budget: u64,
        /// Sample assignments instead of enumerating them.
        #[arg(long)]
        randomized: bool,
        /// Assignments drawn per algebra with --randomized.
        #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
    },
    /// Affineness, relevance and n-relevance of a monad.
    Props {
        monad: String,
        /// Largest set size probed.
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
        max_carrier: u64,
        /// Comma-separated arities for n-relevance, e.g. 2,3.
        #[arg(long, value_delimiter = ',', value_parser = clap::value_parser!(u64).range(2..))]
        n_relevance: Vec<u64>,
    },
    /// Decide whether a presented monoid is trivial, i.e. whether its writer monad is affine.
    Monoid {
        presentation: PathBuf,
        /// Words explored per generator by the rewriting search.
        #[arg(long, default_value_t = DEFAULT_REWRITE_BUDGET as u64, value_parser = clap::value_parser!(u64).range(1..))]
        budget: u64,
        /// Largest monoid tried as a countermodel.
        #[arg(long, default_value_t = DEFAULT_MODEL_BOUND as u64, value_parser = clap::value_parser!(u64).range(1..))]
        model_bound: u64,
    },
    /// Run every reproduction criterion and print a pass/fail matrix.
    Reproduce {
        /// Replace ψ with a broken one; the law criterion must then fail.
        #[arg(long, hide = true)]
        sabotage_psi: bool,
    },
}

#[derive(Args, Debug)]
struct DiscerningArgs {
    /// Largest countermodel tried for 2-discerning candidates.
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
    model_bound: u64,
    /// Term depth for the derivation search.
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
    derivation_depth: u64,
}

/// Failure that ends the run before any verdict.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Runtime(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::UnknownMonad(_) | Error::InvalidTable(_) | Error::Json(_) => {
                Failure::Usage(e.to_string())
            }
            other => Failure::Runtime(other),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = par::configure_threads(n) {
            eprintln!("error: --jobs: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    match run(&cli) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: &Cli) -> Result<(String, u8), Failure> {
    match &cli.command {
        Command::Classify { theory, discerning } => {
            let theory = load_theory(theory)?;
            let opts = DiscerningOptions {
                model_bound: discerning.model_bound as usize,
                derivation_depth: discerning.derivation_depth as usize,
                ..DiscerningOptions::default()
            };
            cmd_classify(&theory, &opts, cli.json)
        }
        Command::Check {
            monad,
            theory,
            max_carrier,
            budget,
            randomized,
            samples,
        } => {
            let monad = Monad::from_selector(monad)?;
            let theory = load_theory(theory)?;
            if !randomized && monad.tier() != Tier::Enumerable {
                return Err(Failure::Usage(format!(
                    "{} has no finite carriers; pass --randomized",
                    monad.name()
                )));
            }
            let mut opts = if *randomized {
                CheckOptions::randomized(*max_carrier as usize, *samples, cli.seed)
            } else {
                CheckOptions {
                    seed: cli.seed,
                    ..CheckOptions::exhaustive(*max_carrier as usize)
                }
            };
            opts.max_algebras = *budget;
            cmd_check(&monad, &theory, &opts, cli.json)
        }
        Command::Props {
            monad,
            max_carrier,
            n_relevance,
        } => {
            let monad = Monad::from_selector(monad)?;
            let ns: Vec<usize> = n_relevance.iter().map(|&n| n as usize).collect();
            cmd_props(&monad, *max_carrier as usize, &ns, cli.seed, cli.json)
        }
        Command::Monoid {
            presentation,
            budget,
            model_bound,
        } => {
            let p = MonoidPresentation::from_path(presentation)
                .map_err(|e| with_path(presentation, e))?;
            cmd_monoid(&p, *budget as usize, *model_bound as usize, cli.json)
        }
        Command::Reproduce { sabotage_psi } => {
            let opts = ReproduceOptions {
                seed: cli.seed,
                sabotage_psi: *sabotage_psi,
                ..ReproduceOptions::default()
            };
            Ok(cmd_reproduce(&run_all(&opts), cli.json))
        }
    }
}

fn with_path(path: &Path, e: Error) -> Failure {
    if let Error::Parse(p) = &e {
        return Failure::Usage(format!("{}:{p}", path.display()));
    }
    match Failure::from(e) {
        Failure::Usage(m) => Failure::Usage(format!("{}: {m}", path.display())),
        Failure::Runtime(Error::Io(io)) => Failure::Usage(format!("{}: {io}", path.display())),
        other => other,
    }
}

fn load_theory(path: &Path) -> Result<Theory, Failure> {
    let src = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    parse_theory(&src).map_err(|e| with_path(path, e))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct ClassifyRow {
    equation: String,
    class: EquationClass,
    label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    discerning: Option<DiscerningVerdict>,
}

fn cmd_classify(
    theory: &Theory,
    opts: &DiscerningOptions,
    json: bool,
) -> Result<(String, u8), Failure> {
    let mut rows = Vec::new();
    for eq in &theory.equations {
        let class = classify(eq);
        let discerning = match discerning_companion(eq) {
            Ok(_) => Some(two_discerning_check(eq, opts)?),
            Err(_) => None,
        };
        rows.push(ClassifyRow {
            equation: eq.to_string(),
            class,
            label: class.label(),
            discerning,
        });
    }
    if json {
        return Ok((to_json(&rows), 0));
    }
    let width = rows
        .iter()
        .map(|r| r.equation.chars().count())
        .max()
        .unwrap_or(8)
        .max(8);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<width$}  lin drop 1drop sdrop dup 2dup sdup  2-discerning",
        "equation"
    );
    let mark = |b: bool| if b { "x" } else { "." };
    for r in &rows {
        let c = &r.class;
        let _ = writeln!(
            out,
            "{:<width$}  {:^3} {:^4} {:^5} {:^5} {:^3} {:^4} {:^4}  {}",
            r.equation,
            mark(c.linear),
            mark(c.drop),
            mark(c.one_drop),
            mark(c.strict_drop),
            mark(c.dup),
            mark(c.two_dup),
            mark(c.strict_dup),
            r.discerning.as_ref().map_or("-", |d| d.label()),
        );
    }
    Ok((out, 0))
}

fn cmd_check(
    monad: &Monad,
    theory: &Theory,
    opts: &CheckOptions,
    json: bool,
) -> Result<(String, u8), Failure> {
    let reports = theory
        .equations
        .iter()
        .map(|eq| check_preservation(monad, &theory.sig, eq, opts))
        .collect::<Result<Vec<CheckReport>, Error>>()?;
    let code = if reports.iter().any(|r| r.verdict == Verdict::Violated) {
        EXIT_VIOLATED
    } else if reports
        .iter()
        .any(|r| r.verdict == Verdict::Unknown && r.stats.budget_exhausted)
    {
        EXIT_BUDGET
    } else {
        0
    };
    if json {
        return Ok((to_json(&reports), code));
    }
    let mut out = String::new();
    for r in &reports {
        let _ = writeln!(out, "{} under {}: {:?}", r.equation, r.monad, r.verdict);
        let _ = writeln!(
            out,
            "  carriers {}..={}, algebras {} ({} satisfying), assignments {}{}, seed {}",
            r.bounds.min_carrier,
            r.bounds.max_carrier,
            r.stats.algebras_scanned,
            r.stats.algebras_satisfying,
            r.stats.assignments_scanned,
            if r.stats.sampled { " sampled" } else { "" },
            r.seed
        );
        if r.stats.budget_exhausted {
            let _ = writeln!(out, "  budget exhausted");
        }
        if let Some(w) = &r.witness {
            let _ = writeln!(out, "  witness on a {}-element algebra:", w.carrier);
            for (op, table) in w.algebra.sig().ops().iter().zip(w.algebra.tables()) {
                let _ = writeln!(out, "    {}/{} = {:?}", op.0, op.1, table);
            }
            for (v, t) in w.variables.iter().zip(&w.assignment) {
                let _ = writeln!(out, "    {v} := {t}");
            }
            let _ = writeln!(out, "    lhs = {}, rhs = {}", w.lhs, w.rhs);
        }
    }
    Ok((out, code))
}

fn cmd_props(
    monad: &Monad,
    max_size: usize,
    ns: &[usize],
    seed: u64,
    json: bool,
) -> Result<(String, u8), Failure> {
    let mut verdicts: Vec<PropVerdict> = vec![
        is_affine(monad)?,
        relevance_check_seeded(monad, max_size, DEFAULT_SAMPLES, seed)?,
    ];
    for &n in ns {
        verdicts.push(n_relevance_check(monad, n, max_size)?);
    }
    if json {
        return Ok((to_json(&verdicts), 0));
    }
    let mut out = String::new();
    let _ = writeln!(out, "{}", monad.name());
    for v in &verdicts {
        let _ = writeln!(out, "  {:<14} {:<8} {}", v.property, v.short(), v.condition);
        match &v.outcome {
            Outcome::Yes { certificate } => {
                let _ = writeln!(out, "    certificate: {certificate}");
            }
            Outcome::No { witness } => {
                let inputs: Vec<String> = witness.inputs.iter().map(|t| t.to_string()).collect();
                let _ = writeln!(
                    out,
                    "    sizes {:?}, inputs [{}]: {} != {}",
                    witness.sizes,
                    inputs.join(", "),
                    witness.lhs,
                    witness.rhs
                );
            }
            Outcome::UnknownUpTo { bound } => {
                let _ = writeln!(out, "    no counterexample up to {bound}");
            }
        }
    }
    Ok((out, 0))
}

#[derive(Serialize)]
struct MonoidReport {
    presentation: String,
    triviality: TrivialityVerdict,
    writer_affine: PropVerdict,
}

fn cmd_monoid(
    p: &MonoidPresentation,
    budget: usize,
    model_bound: usize,
    json: bool,
) -> Result<(String, u8), Failure> {
    let report = MonoidReport {
        presentation: p.to_string(),
        triviality: t1_triviality(p, budget, model_bound),
        writer_affine: affineness_of_presented(p, budget, model_bound),
    };
    let code = match report.triviality {
        TrivialityVerdict::Unknown { .. } => EXIT_BUDGET,
        _ => 0,
    };
    if json {
        return Ok((to_json(&report), code));
    }
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{}: {}",
        report.presentation,
        report.triviality.label()
    );
    match &report.triviality {
        TrivialityVerdict::Trivial { traces } => {
            for t in traces {
                let chain: Vec<String> = t
                    .words
                    .iter()
                    .map(|w| {
                        if w.is_empty() {
                            "ε".to_string()
                        } else {
                            w.concat()
                        }
                    })
                    .collect();
                let _ = writeln!(out, "  {}: {}", t.generator, chain.join(" -> "));
            }
        }
        TrivialityVerdict::NonTrivial { countermodel } => {
            let _ = writeln!(
                out,
                "  countermodel of size {}: op {:?}, generators {:?}",
                countermodel.table.size, countermodel.table.op, countermodel.images
            );
        }
        TrivialityVerdict::Unknown {
            rewrite_budget,
            model_bound,
        } => {
            let _ = writeln!(
                out,
                "  undecided after {rewrite_budget} words per generator and models up to size {model_bound}"
            );
        }
    }
    let _ = writeln!(
        out,
        "  writer monad affine: {}",
        report.writer_affine.short()
    );
    Ok((out, code))
}

fn cmd_reproduce(results: &[CriterionResult], json: bool) -> (String, u8) {
    let code = if results.iter().all(|r| r.passed) {
        0
    } else {
        EXIT_VIOLATED
    };
    if json {
        return (to_json(&results), code);
    }
    let mut out = String::new();
    for r in results {
        let _ = writeln!(out, "{}", r.line());
    }
    let passed = results.iter().filter(|r| r.passed).count();
    let _ = writeln!(out, "{passed} of {} criteria passed", results.len());
    (out, code)
}
