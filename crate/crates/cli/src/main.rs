//! `rbx`: check structure files, run constructions, verify the corpus.
//!
//! Exit status: 0 when the verdict holds, 1 when a checker says no, 2 on a
//! usage error, 3 when an input file or coefficient does not parse.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rbx_core::checks::{self, Spec};
use rbx_core::corpus;
use rbx_core::format::{Structure, StructureFile};
use rbx_core::report::format_indices;
use rbx_core::{Error, Scalar};

#[derive(Parser)]
#[command(name = "rbx", version, about = "Exact checks for Rota-Baxter and Yang-Baxter structures")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a named checker on a structure file.
    Check(CheckArgs),
    /// Run a named construction and write the result as a structure file.
    Construct(ConstructArgs),
    /// Work with the bundled example corpus.
    #[command(subcommand)]
    Corpus(CorpusCmd),
    /// Substitute rational values for parameters, then run a check.
    Eval(EvalArgs),
    /// List checkers and constructions with the inputs they take.
    List,
}

#[derive(Args, Clone, Default)]
struct Inputs {
    /// Operators by name, in the order the checker lists them.
    #[arg(long = "op", value_name = "NAME")]
    op: Vec<String>,
    /// Bilinear forms by name, in the order the checker lists them.
    #[arg(long = "form", value_name = "NAME")]
    form: Vec<String>,
    /// Weights, as coefficient expressions.
    #[arg(long = "weight", value_name = "EXPR", allow_hyphen_values = true)]
    weight: Vec<String>,
    #[arg(long = "R", value_name = "NAME")]
    r: Option<String>,
    #[arg(long = "S", value_name = "NAME")]
    s: Option<String>,
    #[arg(long = "Q", value_name = "NAME")]
    q: Option<String>,
    #[arg(long = "T", value_name = "NAME")]
    t: Option<String>,
    #[arg(long = "sigma", value_name = "NAME")]
    sigma: Option<String>,
    #[arg(long = "tau", value_name = "NAME")]
    tau: Option<String>,
}

#[derive(Args, Clone)]
struct CheckArgs {
    checker: String,
    file: PathBuf,
    #[command(flatten)]
    inputs: Inputs,
    /// NAME=RAT,... substituted before checking.
    #[arg(long, value_name = "ASSIGNMENTS")]
    set: Option<String>,
}

#[derive(Args)]
struct ConstructArgs {
    construction: String,
    file: PathBuf,
    #[arg(short, long)]
    output: PathBuf,
    #[command(flatten)]
    inputs: Inputs,
}

#[derive(Subcommand)]
enum CorpusCmd {
    /// Verify every entry whose id matches the filter.
    Verify {
        #[arg(long, default_value = "*")]
        filter: String,
        /// Print only the ENTRY lines.
        #[arg(long)]
        golden: bool,
        /// Skip the ×2 mutation controls.
        #[arg(long)]
        no_controls: bool,
        /// Print the report of every entry that does not pass.
        #[arg(long, short)]
        verbose: bool,
    },
    /// List entry ids with their checker and source.
    List {
        #[arg(long, default_value = "*")]
        filter: String,
    },
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long, value_name = "ASSIGNMENTS")]
    set: String,
    #[command(subcommand)]
    cmd: EvalCmd,
}

#[derive(Subcommand)]
enum EvalCmd {
    Check(CheckArgs),
}

const OK: u8 = 0;
const FALSE: u8 = 1;
const USAGE: u8 = 2;
const PARSE: u8 = 3;

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Usage(_) => USAGE,
            Error::PreconditionFailed { .. } | Error::NotCoalgebraMap(_) => FALSE,
            Error::MissingCounit | Error::MissingUnit | Error::DivisionByZero => USAGE,
            _ => PARSE,
        };
        let mut message = e.to_string();
        if let Error::PreconditionFailed { report, .. } = &e {
            message.push('\n');
            message.push_str(&report.render(&Default::default()));
        }
        Failure { code, message }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        code: USAGE,
        message: msg.into(),
    }
}

type Outcome = Result<u8, Failure>;

fn load(path: &PathBuf) -> Result<Structure, Failure> {
    let file = StructureFile::load(path).map_err(|e| Failure {
        code: PARSE,
        message: format!("{}: {e}", path.display()),
    })?;
    file.resolve().map_err(|e| Failure {
        code: PARSE,
        message: format!("{}: {e}", path.display()),
    })
}

/// Operator and form names for `spec`, from role flags or positional lists.
fn names(spec: &Spec, inp: &Inputs) -> Result<(Vec<String>, Vec<String>), Failure> {
    let role = |r: &str| -> Option<&String> {
        match r {
            "R" => inp.r.as_ref(),
            "S" => inp.s.as_ref(),
            "Q" => inp.q.as_ref(),
            "T" => inp.t.as_ref(),
            "sigma" => inp.sigma.as_ref(),
            "tau" => inp.tau.as_ref(),
            _ => None,
        }
    };
    let all_roles = ["R", "S", "Q", "T", "sigma", "tau"];
    if let Some(r) = all_roles
        .iter()
        .find(|r| role(r).is_some() && !spec.ops.contains(r) && !spec.forms.contains(r))
    {
        return Err(usage(format!("`{}` does not take --{r}", spec.name)));
    }
    let pick = |roles: &[&str], listed: &[String], what: &str| -> Result<Vec<String>, Failure> {
        let by_role = roles.iter().any(|r| role(r).is_some());
        if by_role && !listed.is_empty() {
            return Err(usage(format!("give {what}s either by role or with --{what}, not both")));
        }
        if by_role || listed.is_empty() {
            roles
                .iter()
                .map(|r| {
                    role(r)
                        .cloned()
                        .ok_or_else(|| usage(format!("`{}` needs --{r}", spec.name)))
                })
                .collect()
        } else {
            Ok(listed.to_vec())
        }
    };
    Ok((pick(spec.ops, &inp.op, "op")?, pick(spec.forms, &inp.form, "form")?))
}

fn weights(spec: &Spec, s: &Structure, inp: &Inputs) -> Result<Vec<Scalar>, Failure> {
    if inp.weight.len() != spec.weights.len() {
        return Err(usage(format!(
            "`{}` takes {} --weight ({})",
            spec.name,
            spec.weights.len(),
            spec.weights.join(", ")
        )));
    }
    Ok(inp.weight.iter().map(|w| s.scalar(w)).collect::<Result<_, _>>()?)
}

fn specialize(s: Structure, set: Option<&str>) -> Result<Structure, Failure> {
    let Some(set) = set else { return Ok(s) };
    let values = s.parse_assignments(set).map_err(|e| usage(format!("--set: {e}")))?;
    s.specialize(&values)
        .map_err(|e| usage(format!("--set: {e} (a denominator vanishes at these values)")))
}

fn check(args: &CheckArgs, set: Option<&str>) -> Outcome {
    let spec = checks::checker(&args.checker)?;
    let (ops, forms) = names(spec, &args.inputs)?;
    let s = specialize(load(&args.file)?, set.or(args.set.as_deref()))?;
    let w = weights(spec, &s, &args.inputs)?;
    let inputs = spec.inputs(&s, &ops, &forms, w).map_err(|e| match e {
        Error::Format(m) => usage(m),
        other => other.into(),
    })?;
    let report = checks::run_check(spec.name, &s, &inputs)?;
    print!("{}", report.render(&s.ring));
    let verdict = report.verdict();
    let mut line = format!(
        "ENTRY {} {} {}",
        args.file.display(),
        spec.name,
        if verdict { "PASS" } else { "FAIL" }
    );
    if let Some((_, f)) = report.first_failure() {
        line.push_str(&format!(" residual-at={}", format_indices(&f.at)));
    }
    println!("{line}");
    Ok(if verdict { OK } else { FALSE })
}

fn construct(args: &ConstructArgs) -> Outcome {
    let spec = checks::construction(&args.construction)?;
    let (ops, forms) = names(spec, &args.inputs)?;
    let s = load(&args.file)?;
    let w = weights(spec, &s, &args.inputs)?;
    let inputs = spec.inputs(&s, &ops, &forms, w).map_err(|e| match e {
        Error::Format(m) => usage(m),
        other => other.into(),
    })?;
    let out = checks::run_construction(spec.name, &s, &inputs)?;
    out.to_file().save(&args.output).map_err(|e| Failure {
        code: PARSE,
        message: format!("{}: {e}", args.output.display()),
    })?;
    println!("{}: wrote {} (dimension {})", spec.name, args.output.display(), out.dim);
    Ok(OK)
}

fn corpus_cmd(cmd: &CorpusCmd) -> Outcome {
    match cmd {
        CorpusCmd::Verify {
            filter,
            golden,
            no_controls,
            verbose,
        } => {
            let entries: Vec<_> = corpus::load_corpus()?
                .into_iter()
                .filter(|e| corpus::matches(filter, &e.id))
                .collect();
            let summary = corpus::verify_entries(&entries, !no_controls && !golden);
            if *golden {
                print!("{}", summary.golden());
            } else {
                print!("{}", summary.render());
            }
            if *verbose {
                for o in summary.outcomes.iter().filter(|o| o.status != corpus::Status::Pass) {
                    let Some(e) = entries.iter().find(|e| e.id == o.id) else { continue };
                    println!("\n{} ({})", e.id, e.claim.provenance);
                    if let Some(f) = &e.claim.flagged {
                        println!("flagged ({:?}): {}", f.kind, f.reason);
                    }
                    print!("{}", o.report.render(&e.structure.ring));
                }
            }
            Ok(if summary.unexplained() == 0 { OK } else { FALSE })
        }
        CorpusCmd::List { filter } => {
            for e in corpus::load_corpus()? {
                if corpus::matches(filter, &e.id) {
                    println!("{} {} {} {}", e.id, e.claim.checker, e.file, e.claim.provenance);
                }
            }
            Ok(OK)
        }
    }
}

fn list() -> Outcome {
    for (title, table) in [("checkers", checks::CHECKERS), ("constructions", checks::CONSTRUCTIONS)] {
        println!("{title}:");
        for s in table {
            let mut inputs: Vec<String> = s.ops.iter().map(|r| format!("--{r}")).collect();
            inputs.extend(s.forms.iter().map(|r| format!("--{r}")));
            inputs.extend(s.weights.iter().map(|w| format!("--weight <{w}>")));
            println!("  {:<20} {:<32} {}", s.name, inputs.join(" "), s.about);
        }
    }
    Ok(OK)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.cmd {
        Cmd::Check(a) => check(a, None),
        Cmd::Construct(a) => construct(a),
        Cmd::Corpus(c) => corpus_cmd(c),
        Cmd::Eval(e) => match &e.cmd {
            EvalCmd::Check(a) => check(a, Some(&e.set)),
        },
        Cmd::List => list(),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("rbx: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
