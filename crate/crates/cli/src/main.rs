//! Command-line front end for the salem-systole library.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use salem_systole::arith::{parse_rational, IntPoly, Rational};
use salem_systole::congruence::{ball_size, separation_probe_escalating, ProbeReport, ProbeTarget};
use salem_systole::constructions::{
    build_thm2, harvest_generators, spectrum_sample, thm1_search, GeneratorSet, SpectrumReport, Thm1Instance,
    Thm2Instance,
};
use salem_systole::hyperbolic::{HyperbolicSpace, Isometry};
use salem_systole::salem::{enumerate_salem, is_salem, SalemNumber, SalemVerdict};
use salem_systole::{Error, SCHEMA};

const EXIT_USAGE: u8 = 1;
const EXIT_FALSE: u8 = 2;
const EXIT_SEARCH: u8 = 3;

/// Reflection height used when harvesting generators.
const HARVEST_HEIGHT: u32 = 1;
const DEFAULT_PROBE_BUDGET: usize = 1_000_000;

#[derive(Parser, Debug)]
#[command(name = "salem-systole", version, about = "Salem numbers, arithmetic reflection pairs and designed systoles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Worker threads for the parallel parts (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Working precision in bits for enclosures.
    #[arg(long, global = true, default_value_t = 64)]
    precision: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Salem-number tests and enumeration.
    Salem {
        #[command(subcommand)]
        action: SalemCommand,
    },
    /// Build one of the two distance constructions.
    Construct {
        #[command(subcommand)]
        action: ConstructCommand,
    },
    /// Walk a word ball in a principal congruence subgroup and check the
    /// separation inequalities.
    CongruenceProbe {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Rational prime giving the level.
        #[arg(long)]
        prime: u64,
        /// Word-length bound.
        #[arg(long)]
        words: usize,
        /// Sampling budget when the ball is larger.
        #[arg(long)]
        count: Option<usize>,
        /// Seed for sampling; required when the ball exceeds the budget.
        #[arg(long)]
        seed: Option<u64>,
        /// Primes to try while violations remain.
        #[arg(long, default_value_t = 1)]
        max_primes: usize,
    },
    /// Sample random words and test their exponential lengths.
    SpectrumSample {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Maximal word length.
        #[arg(long)]
        words: usize,
        /// Number of sampled words.
        #[arg(long)]
        count: usize,
        /// Seed for the word sampler.
        #[arg(long)]
        seed: u64,
    },
}

#[derive(Subcommand, Debug)]
enum SalemCommand {
    /// Decide whether a polynomial is the minimal polynomial of a Salem number.
    Check {
        /// Coefficients from the leading term down, e.g. "1,-1,-1,-1,1".
        #[arg(allow_hyphen_values = true)]
        polynomial: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        poly: Option<String>,
    },
    /// List Salem numbers of bounded degree and size.
    Enumerate {
        #[arg(long)]
        degree: usize,
        /// Upper bound on the Salem number (its Mahler measure).
        #[arg(long)]
        mahler: String,
    },
}

#[derive(Subcommand, Debug)]
enum ConstructCommand {
    /// Rotation over Q(sqrt 2) realising a prescribed length.
    Thm1 {
        #[arg(long)]
        length: String,
        #[arg(long)]
        eps: String,
        #[arg(long)]
        dim: usize,
    },
    /// Reflection pair attached to a Salem number.
    Thm2 {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long)]
        dim: usize,
    },
}

#[derive(Args, Debug)]
struct InstanceArgs {
    /// Salem polynomial (reflection-pair instance).
    #[arg(long, allow_hyphen_values = true)]
    poly: Option<String>,
    /// Target length (rotation instance).
    #[arg(long)]
    length: Option<String>,
    /// Tolerance on the length (rotation instance).
    #[arg(long)]
    eps: Option<String>,
    /// Hyperbolic dimension n.
    #[arg(long)]
    dim: usize,
}

/// Failure of a command: exit code plus a message for standard error.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotSalem(_) | Error::NotAdmissible(_) => EXIT_FALSE,
            Error::SearchExhausted(_) | Error::Precision(_) => EXIT_SEARCH,
            _ => EXIT_USAGE,
        };
        Failure { code, message: e.to_string() }
    }
}

/// A finished command: the report, its text rendering and the exit code.
struct Outcome {
    json: String,
    text: String,
    code: u8,
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema: &'static str,
    command: &'static str,
    #[serde(flatten)]
    body: &'a T,
}

fn envelope<T: Serialize>(command: &'static str, body: &T) -> String {
    serde_json::to_string_pretty(&Envelope { schema: SCHEMA, command, body }).expect("reports serialize")
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(t) = cli.threads {
        if t == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(EXIT_USAGE);
        }
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global().expect("thread pool is built once");
    }
    match run(&cli) {
        Ok(out) => {
            let mut rendered = match cli.format {
                Format::Json => out.json,
                Format::Text => out.text,
            };
            if !rendered.ends_with('\n') {
                rendered.push('\n');
            }
            let written = match &cli.output {
                Some(path) => std::fs::write(path, rendered.as_bytes()),
                None => std::io::stdout().write_all(rendered.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: cannot write report: {e}");
                return ExitCode::from(EXIT_USAGE);
            }
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    if cli.precision < 16 {
        return Err(Failure::usage("--precision must be at least 16"));
    }
    match &cli.command {
        Command::Salem { action: SalemCommand::Check { polynomial, poly } } => {
            let text = match (polynomial, poly) {
                (Some(p), None) | (None, Some(p)) => p,
                _ => return Err(Failure::usage("give the polynomial once, positionally or with --poly")),
            };
            salem_check(&IntPoly::parse(text)?)
        }
        Command::Salem { action: SalemCommand::Enumerate { degree, mahler } } => {
            salem_enumerate(*degree, &parse_rational(mahler)?)
        }
        Command::Construct { action: ConstructCommand::Thm1 { length, eps, dim } } => {
            let (length, eps) = (parse_positive(length, "--length")?, parse_positive(eps, "--eps")?);
            check_dim(*dim)?;
            let inst = thm1_search(&length, &eps, *dim)?;
            Ok(Outcome { json: envelope("construct thm1", &inst), text: thm1_text(&inst), code: 0 })
        }
        Command::Construct { action: ConstructCommand::Thm2 { poly, dim } } => {
            let p = IntPoly::parse(poly)?;
            check_dim(*dim)?;
            let inst = build_thm2(&SalemNumber::new(&p)?, *dim, cli.precision)?;
            Ok(Outcome { json: envelope("construct thm2", &inst), text: thm2_text(&inst), code: 0 })
        }
        Command::CongruenceProbe { instance, prime, words, count, seed, max_primes } => {
            let inst = Instance::build(instance, cli.precision)?;
            if *max_primes == 0 {
                return Err(Failure::usage("--max-primes must be positive"));
            }
            let budget = count.unwrap_or(DEFAULT_PROBE_BUDGET);
            let gens = inst.generators();
            if ball_size(gens.len(), *words) > budget as u128 && seed.is_none() {
                return Err(Failure::usage("the word ball exceeds the budget; sampling needs --seed"));
            }
            let target = inst.target();
            let reports = separation_probe_escalating(
                &target,
                &gens,
                *prime,
                *words,
                budget,
                seed.unwrap_or(0),
                cli.precision,
                *max_primes,
            )?;
            let body = ProbeOutput { generators: gens.len(), reports };
            Ok(Outcome { json: envelope("congruence-probe", &body), text: probe_text(&body), code: 0 })
        }
        Command::SpectrumSample { instance, words, count, seed } => {
            let inst = Instance::build(instance, cli.precision)?;
            let gens = inst.generators();
            let report = spectrum_sample(inst.space(), &gens, *words, *count, *seed, cli.precision)?;
            Ok(Outcome { json: envelope("spectrum-sample", &report), text: spectrum_text(&report), code: 0 })
        }
    }
}

fn parse_positive(text: &str, flag: &str) -> Result<Rational, Failure> {
    let r = parse_rational(text)?;
    if r <= Rational::from_integer(0.into()) {
        return Err(Failure::usage(format!("{flag} must be positive")));
    }
    Ok(r)
}

fn check_dim(n: usize) -> Result<(), Failure> {
    if n < 2 {
        return Err(Failure::usage("--dim must be at least 2"));
    }
    Ok(())
}

enum Instance {
    Thm1(Box<Thm1Instance>),
    Thm2(Box<Thm2Instance>),
}

impl Instance {
    fn build(args: &InstanceArgs, prec: u32) -> Result<Self, Failure> {
        check_dim(args.dim)?;
        match (&args.poly, &args.length, &args.eps) {
            (Some(p), None, None) => {
                let s = SalemNumber::new(&IntPoly::parse(p)?)?;
                Ok(Instance::Thm2(Box::new(build_thm2(&s, args.dim, prec)?)))
            }
            (None, Some(l), Some(e)) => {
                let (l, e) = (parse_positive(l, "--length")?, parse_positive(e, "--eps")?);
                Ok(Instance::Thm1(Box::new(thm1_search(&l, &e, args.dim)?)))
            }
            _ => Err(Failure::usage("give either --poly, or --length with --eps")),
        }
    }

    fn space(&self) -> &HyperbolicSpace {
        match self {
            Instance::Thm1(i) => &i.form.space,
            Instance::Thm2(i) => &i.space,
        }
    }

    fn named(&self) -> Vec<(String, Isometry)> {
        match self {
            Instance::Thm1(i) => vec![("g".into(), i.g.clone()), ("g^-1".into(), i.g.inverse())],
            Instance::Thm2(i) => vec![("tau1".into(), i.tau1.clone()), ("tau2".into(), i.tau2.clone())],
        }
    }

    fn generators(&self) -> GeneratorSet {
        harvest_generators(self.space(), &self.named(), HARVEST_HEIGHT)
    }

    fn target(&self) -> ProbeTarget {
        match self {
            Instance::Thm1(i) => ProbeTarget::from(i.as_ref()),
            Instance::Thm2(i) => ProbeTarget::from(i.as_ref()),
        }
    }
}

fn salem_check(p: &IntPoly) -> Result<Outcome, Failure> {
    let v = is_salem(p);
    let code = if v.is_affirmative() { 0 } else { EXIT_FALSE };
    Ok(Outcome { json: envelope("salem check", &v), text: verdict_text(&v), code })
}

#[derive(Serialize)]
struct EnumerationOutput {
    degree: usize,
    mahler: String,
    count: usize,
    salem_numbers: Vec<SalemNumber>,
}

fn salem_enumerate(degree: usize, bound: &Rational) -> Result<Outcome, Failure> {
    let found = enumerate_salem(degree, bound)?;
    let mut text = String::new();
    for s in &found {
        let _ = writeln!(text, "{}  {}", s.lambda, s.minpoly.to_text());
    }
    let _ = writeln!(text, "{} Salem numbers of degree <= {degree} up to {}", found.len(), rational_text(bound));
    let body = EnumerationOutput { degree, mahler: rational_text(bound), count: found.len(), salem_numbers: found };
    Ok(Outcome { json: envelope("salem enumerate", &body), text, code: 0 })
}

fn rational_text(r: &Rational) -> String {
    salem_systole::arith::rational_text(r)
}

#[derive(Serialize)]
struct ProbeOutput {
    generators: usize,
    reports: Vec<ProbeReport>,
}

fn verdict_text(v: &SalemVerdict) -> String {
    let mut t = format!("{:?}: {}\nminpoly {}\n", v.tag, v.reason, v.minpoly.to_text());
    if let Some(l) = &v.lambda {
        let _ = writeln!(t, "lambda {l}");
    }
    t
}

fn thm1_text(i: &Thm1Instance) -> String {
    format!(
        "rotation instance n = {}, L = {}, eps = {}\nt = {}\ncosh^2 = {}\ndist = {}\ndesigned systole = {}\nchecks passed: {}\n",
        i.n,
        rational_text(&i.length),
        rational_text(&i.eps),
        rational_text(&i.t),
        i.cosh_sq,
        i.certificate,
        i.designed_systole,
        i.checks.all(),
    )
}

fn thm2_text(i: &Thm2Instance) -> String {
    let dist = i.relation.dist.as_ref().map_or("-".to_string(), |d| d.to_string());
    let cosh = i.relation.cosh_sq.as_ref().map_or("-".to_string(), |c| c.to_string());
    format!(
        "reflection pair for {} (lambda {}), n = {}\nmu = {}\ncosh^2 = {cosh}\ndist = {dist}\ndesigned systole = {}\nexact identities hold: {}\n",
        i.salem.minpoly.to_text(),
        i.salem.lambda,
        i.n,
        i.mu,
        i.designed_systole,
        i.checks.exact_identities(),
    )
}

fn probe_text(o: &ProbeOutput) -> String {
    let mut t = format!("{} generators\n", o.generators);
    for r in &o.reports {
        let margin = r.min_margin.as_ref().map_or("-".to_string(), |m| m.to_string());
        let _ = writeln!(
            t,
            "p = {}, B = {}{}: {} words, {} members, {} violations, {} torsion, min margin {margin}{}",
            r.p,
            r.word_bound,
            if r.sampled { " (sampled)" } else { "" },
            r.words_examined,
            r.congruence_members,
            r.violations.len(),
            r.torsion_found.len(),
            if r.unresolved { ", unresolved" } else { "" },
        );
    }
    t
}

fn spectrum_text(r: &SpectrumReport) -> String {
    let mut t = String::new();
    for e in &r.entries {
        if let Some(v) = &e.verdict {
            let len = e.translation_length.as_ref().map_or("-".to_string(), |l| l.to_string());
            let _ = writeln!(t, "{:<14} {len}  {}", format!("{:?}", v.tag), e.word);
        }
    }
    let _ = writeln!(
        t,
        "{} words, {} loxodromic: {} Salem, {} quadratic, {} not Salem, {} undetermined",
        r.count, r.loxodromic, r.salem, r.quadratic_salem, r.not_salem, r.undetermined
    );
    t
}
