use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use surflift::schema::{Problem, Task};
use surflift::{Config, Error};

mod render;
mod run;

/// Lifts of surface-group homomorphisms through finite-kernel extensions:
/// closed-form counts cross-checked by exhaustive enumeration.
#[derive(Parser, Debug)]
#[command(name = "surflift", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Load and check every object in a problem file.
    Validate(Invocation),
    /// Count lifts of the surface hom through the extension.
    Count(Invocation),
    /// List the irreducible representations of a group.
    Irr(Invocation),
    /// Tabulate v_k on the class realized by the surface hom.
    Vk(Invocation),
    /// Count sections of the extension described by a datum.
    Sections(Invocation),
    /// Weighted size of the non-abelian H¹ of an action.
    H1(Invocation),
    /// Sum of pulled-back cocycle pairings over all lifts.
    T2(Invocation),
    /// Weighted count of lifted principal bundles.
    Bundles(Invocation),
    /// Lower bound for the genus norm of the realized class.
    Genusbound(Invocation),
}

#[derive(Args, Debug, Clone)]
pub struct Invocation {
    /// Problem file (JSON).
    file: PathBuf,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Args, Debug, Clone)]
pub struct Flags {
    /// Raise the genus by adding trivial handles.
    #[arg(long)]
    pub genus: Option<usize>,
    /// Rounding tolerance for counts.
    #[arg(long)]
    pub tolerance: Option<f64>,
    /// Skip brute-force enumeration.
    #[arg(long)]
    pub no_oracle: bool,
    /// Enumeration budget in relator evaluations.
    #[arg(long)]
    pub budget: Option<u64>,
    /// Seed for the randomized representation splitting.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Also write the report as a JSON document.
    #[arg(long, value_name = "PATH")]
    pub json: Option<PathBuf>,
    /// Worker threads for enumeration and per-representation work.
    #[arg(long)]
    pub threads: Option<usize>,
    /// Solve the last handle of an enumeration by lookup.
    #[arg(long)]
    pub prune: bool,
}

pub const EXIT_OTHER: u8 = 1;
pub const EXIT_INVALID: u8 = 2;
pub const EXIT_DISAGREE: u8 = 3;
pub const EXIT_BUDGET: u8 = 4;

/// Why a command failed, with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded { .. } => EXIT_BUDGET,
            Error::Hypothesis(_) | Error::NotAbelian | Error::Malformed(_) => EXIT_INVALID,
            _ => EXIT_OTHER,
        };
        Failure { code, message: e.to_string() }
    }
}

impl Failure {
    pub fn invalid(message: impl Into<String>) -> Self {
        Failure { code: EXIT_INVALID, message: message.into() }
    }
}

/// Output of one command: text for stdout, a JSON report, and whether the
/// independent computations agreed.
pub struct Outcome {
    pub text: String,
    pub report: Value,
    pub agreed: bool,
}

fn config(flags: &Flags) -> Result<Config, Failure> {
    let mut cfg = Config::default();
    if let Some(t) = flags.tolerance {
        cfg.tol.count_eps = t;
    }
    cfg.tol.validate().map_err(Failure::from)?;
    if let Some(b) = flags.budget {
        cfg.budget = b;
    }
    if let Some(s) = flags.seed {
        cfg.seed = s;
    }
    cfg.prune = flags.prune;
    Ok(cfg)
}

fn execute(task: Task, inv: &Invocation) -> Result<Outcome, Failure> {
    let flags = &inv.flags;
    let cfg = config(flags)?;
    if let Some(n) = flags.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure { code: EXIT_OTHER, message: e.to_string() })?;
    }
    let text = std::fs::read_to_string(&inv.file)
        .map_err(|e| Failure::invalid(format!("{}: {e}", inv.file.display())))?;
    let input: Value = serde_json::from_str(&text).map_err(|e| Failure::invalid(format!("file: {e}")))?;
    let mut problem = Problem::from_json(&text, &cfg).map_err(|e| Failure::invalid(e.to_string()))?;
    if task != Task::Validate && problem.task != task {
        return Err(Failure::invalid(format!("file declares task {:?}, not {:?}", problem.task.to_string(), task.to_string())));
    }
    if let Some(d) = flags.genus {
        problem = problem.with_genus(d).map_err(|e| Failure::invalid(e.to_string()))?;
    }
    let oracle = !flags.no_oracle;
    let mut out = match task {
        Task::Validate => run::validate(&problem),
        Task::Count => run::count(&problem, &cfg, oracle),
        Task::Irr => run::irr(&problem, &cfg),
        Task::Vk => run::vk(&problem, &cfg),
        Task::Sections => run::sections(&problem, &cfg, oracle),
        Task::H1 => run::h1(&problem, &cfg, oracle),
        Task::T2 => run::t2(&problem, &cfg, oracle),
        Task::Bundles => run::bundles(&problem, &cfg, oracle),
        Task::Genusbound => run::genusbound(&problem, &cfg),
    }?;
    out.report = json!({
        "task": task.to_string(),
        "input": input,
        "config": {
            "seed": cfg.seed,
            "budget": cfg.budget,
            "count_eps": cfg.tol.count_eps,
            "oracle": oracle,
            "prune": cfg.prune,
            "genus_override": flags.genus,
        },
        "agreed": out.agreed,
        "report": out.report,
    });
    Ok(out)
}

fn status(agreed: bool) -> u8 {
    if agreed {
        0
    } else {
        EXIT_DISAGREE
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (task, inv) = match &cli.cmd {
        Cmd::Validate(i) => (Task::Validate, i),
        Cmd::Count(i) => (Task::Count, i),
        Cmd::Irr(i) => (Task::Irr, i),
        Cmd::Vk(i) => (Task::Vk, i),
        Cmd::Sections(i) => (Task::Sections, i),
        Cmd::H1(i) => (Task::H1, i),
        Cmd::T2(i) => (Task::T2, i),
        Cmd::Bundles(i) => (Task::Bundles, i),
        Cmd::Genusbound(i) => (Task::Genusbound, i),
    };
    match execute(task, inv) {
        Ok(out) => {
            print!("{}", out.text);
            if let Some(path) = &inv.flags.json {
                let doc = serde_json::to_string_pretty(&out.report).expect("report serializes") + "\n";
                if let Err(e) = std::fs::write(path, doc) {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(EXIT_OTHER);
                }
            }
            let code = status(out.agreed);
            if code == EXIT_DISAGREE {
                eprintln!("error: formula and enumeration disagree");
            }
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
