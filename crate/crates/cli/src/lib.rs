//! Command-line front end for the `negbeta` library.
//!
//! [`run`] parses an argument vector, dispatches to the library and returns
//! the text to print together with the exit code: 0 on success, 1 for
//! library errors (the error name is printed verbatim), 2 for usage errors.

use clap::{Args, Parser, Subcommand};
use negbeta::{
    add, add_one_rewrite, classify, d_lb, d_star_r, enumerate_z, fin_trivial, forbidden_factor_check,
    hk_bounds, is_admissible, mul, scan_l, sub, Base, DigitWord, Error, Expansion, HkSource, QuadElem, ScanOp,
    Word, DEFAULT_MAX_ITER,
};

pub mod record;

pub use record::{Record, RecordError};

#[derive(Parser, Debug)]
#[command(name = "negbeta", version, about = "Negative-base numeration with exact arithmetic")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Base: int:<b>, quad-:<m>,<n>, quad+:<m>,<n> or real:<decimal>@<bits>
    #[arg(long, global = true, value_parser = parse_base_arg)]
    base: Option<Base>,
    /// Digit budget past the radix point
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_ITER)]
    max_iter: usize,
    /// Print key=value records instead of human-readable text
    #[arg(long, global = true)]
    machine: bool,
}

fn parse_base_arg(s: &str) -> Result<Base, String> {
    s.parse::<Base>().map_err(|e| e.to_string())
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Expansion of a value p/q or p/q+r/s*beta
    Expand {
        #[arg(long, allow_hyphen_values = true)]
        value: String,
    },
    /// Digits of the left end of the transform's domain
    Dlb,
    /// Upper reference string of the admissibility criterion
    Dstar,
    /// Whether a digit word is admissible
    Admissible { word: String },
    /// Sum of two digit words
    Add { left: String, right: String },
    /// Difference of two digit words
    Sub { left: String, right: String },
    /// Product of two digit words
    Mul { left: String, right: String },
    /// Adds one by digit rewriting (bases x^2 = mx - n)
    AddOne { word: String },
    /// Integer expansions with at most the given number of digits
    Enumerate {
        #[arg(long, default_value_t = 5)]
        max_digits: usize,
    },
    /// Longest fractional part of sums or products of integer expansions
    #[command(name = "scan-L")]
    ScanL {
        #[arg(long, value_parser = ["add", "mul"])]
        op: String,
        #[arg(long, default_value_t = 5)]
        max_digits: usize,
        /// Digit budget per result (defaults to --max-iter)
        #[arg(long)]
        max_frac: Option<usize>,
    },
    /// Pisot property, conjugate sign and ring properties of the base
    Classify,
    /// Conjugate bounds H, K and the bounds they give on fractional lengths
    Hk {
        #[arg(long, default_value_t = 12)]
        empirical_digits: usize,
    },
    /// Whether only zero has a finite expansion
    FinTrivial,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Expand { .. } => "expand",
            Command::Dlb => "dlb",
            Command::Dstar => "dstar",
            Command::Admissible { .. } => "admissible",
            Command::Add { .. } => "add",
            Command::Sub { .. } => "sub",
            Command::Mul { .. } => "mul",
            Command::AddOne { .. } => "add-one",
            Command::Enumerate { .. } => "enumerate",
            Command::ScanL { .. } => "scan-L",
            Command::Classify => "classify",
            Command::Hk { .. } => "hk",
            Command::FinTrivial => "fin-trivial",
        }
    }
}

/// Outcome of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandResult {
    pub exit_code: i32,
    pub human_text: String,
    /// One record per output line; present iff `--machine` was given.
    pub machine_record: Option<Vec<Record>>,
}

impl CommandResult {
    /// What the binary prints on stdout (or stderr for failures).
    pub fn output(&self) -> String {
        match &self.machine_record {
            Some(records) => records.iter().map(|r| format!("{r}\n")).collect(),
            None => self.human_text.clone(),
        }
    }
}

/// Human text and records of a successful command.
struct Output {
    lines: Vec<String>,
    records: Vec<Record>,
}

fn record(cmd: &str, base: &Base) -> Record {
    let mut r = Record::new();
    r.push("cmd", cmd).push("base", base);
    r
}

fn expansion_line(e: &Expansion) -> String {
    format!("{e} [{}]", e.status)
}

fn push_expansion(r: &mut Record, e: &Expansion) {
    r.push("expansion", e)
        .push("status", e.status)
        .push("frac_len", e.frac_len().map_or("-".to_string(), |l| l.to_string()));
}

fn digit_word(s: &str) -> Result<DigitWord, Error> {
    s.parse()
}

fn execute(cmd: &Command, base: &Base, max_iter: usize) -> Result<Output, Error> {
    let name = cmd.name();
    let mut rec = record(name, base);
    let single = |line: String, rec: Record| Output {
        lines: vec![line],
        records: vec![rec],
    };
    Ok(match cmd {
        Command::Expand { value } => {
            let x: QuadElem = value.parse()?;
            let e = negbeta::expand(&x, base, max_iter)?;
            rec.push("value", &x);
            push_expansion(&mut rec, &e);
            single(expansion_line(&e), rec)
        }
        Command::Dlb => {
            let w = d_lb(base, max_iter)?;
            rec.push("dlb", &w);
            single(w.to_string(), rec)
        }
        Command::Dstar => {
            let w = d_star_r(base, max_iter)?;
            rec.push("dstar", &w);
            single(w.to_string(), rec)
        }
        Command::Admissible { word } => {
            let w: Word = word.parse()?;
            let ok = is_admissible(&w, base, max_iter)?;
            rec.push("word", word).push("admissible", ok);
            if let (Word::Finite(f), true) = (&w, base.is_quadratic()) {
                rec.push("forbidden_factor_free", forbidden_factor_check(f, base)?);
            }
            single(ok.to_string(), rec)
        }
        Command::Add { left, right } | Command::Sub { left, right } | Command::Mul { left, right } => {
            let (l, r) = (digit_word(left)?, digit_word(right)?);
            let e = match cmd {
                Command::Add { .. } => add(&l, &r, base, max_iter)?,
                Command::Sub { .. } => sub(&l, &r, base, max_iter)?,
                _ => mul(&l, &r, base, max_iter)?,
            };
            rec.push("left", &l).push("right", &r);
            push_expansion(&mut rec, &e);
            single(expansion_line(&e), rec)
        }
        Command::AddOne { word } => {
            let w = digit_word(word)?;
            let out = add_one_rewrite(&w, base)?;
            rec.push("word", &w).push("result", &out);
            single(out.to_string(), rec)
        }
        Command::Enumerate { max_digits } => {
            let words = enumerate_z(base, *max_digits)?;
            let records = words
                .iter()
                .map(|w| {
                    let mut r = record(name, base);
                    r.push("word", w);
                    r
                })
                .collect();
            Output {
                lines: words.iter().map(|w| w.to_string()).collect(),
                records,
            }
        }
        Command::ScanL {
            op,
            max_digits,
            max_frac,
        } => {
            let op: ScanOp = op.parse()?;
            let rep = scan_l(base, op, *max_digits, max_frac.unwrap_or(max_iter))?;
            let (w1, w2, res) = &rep.witness;
            rec.push("op", op)
                .push("max_digits", rep.max_digits)
                .push("observed_L", rep.observed_l)
                .push("witness", format!("{w1}|{w2}"))
                .push("result", res)
                .push("infinite_count", rep.infinite_count)
                .push("pairs_tested", rep.pairs_tested);
            single(format!("observed_L={} witness={w1}|{w2}", rep.observed_l), rec)
        }
        Command::Classify => {
            let c = classify(base);
            let pisot = c.pisot.map_or("unknown".to_string(), |p| p.to_string());
            rec.push("kind", c.kind)
                .push("pisot", &pisot)
                .push("conjugate", c.conjugate_sign)
                .push("ring_candidate", c.ring_candidate)
                .push("z_ring", c.z_ring);
            let line = format!(
                "kind={} pisot={pisot} conjugate={} ring_candidate={} z_ring={}",
                c.kind, c.conjugate_sign, c.ring_candidate, c.z_ring
            );
            single(line, rec)
        }
        Command::Hk { empirical_digits } => {
            let hk = hk_bounds(base, *empirical_digits)?;
            let source = match hk.source {
                HkSource::ClosedForm => "closed".to_string(),
                HkSource::Empirical { max_digits } => format!("empirical:{max_digits}"),
            };
            rec.push("H", &hk.h)
                .push("K", &hk.k)
                .push("bound_add", hk.bound_add)
                .push("bound_mul", hk.bound_mul)
                .push("strict", hk.strict)
                .push("source", &source);
            let line = format!(
                "H={} K={} bound_add={} bound_mul={} strict={} source={source}",
                hk.h, hk.k, hk.bound_add, hk.bound_mul, hk.strict
            );
            single(line, rec)
        }
        Command::FinTrivial => {
            let t = fin_trivial(base)?;
            rec.push("fin_trivial", t);
            single(t.to_string(), rec)
        }
    })
}

fn usage(code: i32, text: String) -> CommandResult {
    CommandResult {
        exit_code: code,
        human_text: text,
        machine_record: None,
    }
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn run<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => return usage(e.exit_code(), e.render().to_string()),
    };
    let Some(base) = cli.global.base.as_ref() else {
        return usage(2, "error: --base is required\n".to_string());
    };
    let machine = cli.global.machine;
    match execute(&cli.command, base, cli.global.max_iter) {
        Ok(out) => CommandResult {
            exit_code: 0,
            human_text: out.lines.iter().map(|l| format!("{l}\n")).collect(),
            machine_record: machine.then_some(out.records),
        },
        Err(e) => {
            let mut r = record(cli.command.name(), base);
            r.push("error", e.name()).push("message", &e);
            CommandResult {
                exit_code: 1,
                human_text: format!("error: {e}\n"),
                machine_record: machine.then(|| vec![r]),
            }
        }
    }
}
