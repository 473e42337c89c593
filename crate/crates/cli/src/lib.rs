//! Command-line driver for `hfischer-core`: basis construction, operator
//! application, decompositions and the verification sweep, all speaking JSON.

pub mod io;
pub mod output;

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand};
use hfischer_core::decompose::{
    classical_fischer_decompose, fischer_h_decompose, refine_decompose, ClassicalMode, DecompositionResult, Side,
    Theorem,
};
use hfischer_core::operators::{dirac_right, sandwich_x, x_mul, VectorPart};
use hfischer_core::sample::random_homogeneous;
use hfischer_core::spaces::{space_basis, SpaceKind};
use hfischer_core::verify::{check_budget, parse_selection, run_task, sort_reports, tasks, DEFAULT_MAX_DIM};
use hfischer_core::{CliffordPoly, DerivedOp, Error, GradeSet, OmegaWord, Primitive};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::io::{read_poly, PolyJson};
use crate::output::*;

/// Environment variable holding the default `verify` time budget in seconds.
pub const BUDGET_ENV: &str = "HFISCHER_BUDGET_SECONDS";
pub const DEFAULT_SEED: u64 = 20_190_801;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{input}: {message}")]
    Input { input: String, message: String },
    #[error("{input}:{line}:{column}: {message}")]
    Json {
        input: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(Error::TheoremViolation(_)) => 1,
            _ => 2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "hfischer", version, about = "Exact Fischer decompositions of Clifford-valued polynomials")]
pub struct Cli {
    /// Write the JSON result to this file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Canonical basis of a solution space.
    Basis {
        /// hodge | harmonic | infra | mono-left | mono-right | two-sided | mono-S
        #[arg(long)]
        kind: String,
        #[arg(long)]
        m: usize,
        /// Single grade.
        #[arg(long)]
        s: Option<usize>,
        /// Grade set, comma separated.
        #[arg(long = "S", value_delimiter = ',')]
        grades: Option<Vec<usize>>,
        #[arg(long)]
        k: usize,
    },
    /// Apply an operator and/or an Ω-word to a polynomial (word first).
    Apply {
        #[arg(long)]
        op: Option<String>,
        /// Letters `w` (x∧) and `d` (x•), applied right to left.
        #[arg(long)]
        word: Option<String>,
        /// Polynomial JSON file, or `-` for standard input.
        #[arg(long)]
        input: PathBuf,
    },
    /// Decompose a polynomial.
    Decompose {
        /// h | homma | monogenic | mt | infra | infra-harmonic | classical
        #[arg(long)]
        theorem: String,
        #[arg(long)]
        input: PathBuf,
        /// harmonic | monogenic | infra (for `classical`)
        #[arg(long)]
        mode: Option<String>,
        #[arg(long = "S", value_delimiter = ',')]
        grades: Option<Vec<usize>>,
        /// left | right (for `monogenic` and `mt`)
        #[arg(long, default_value = "left")]
        side: String,
    },
    /// Certify the selected theorems on every bigrade up to degree `kmax`.
    Verify {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        kmax: usize,
        /// `all` or a comma list of theorem names.
        #[arg(long, default_value = "all")]
        theorems: String,
        /// Stop starting new tasks after this many seconds.
        #[arg(long)]
        budget_seconds: Option<f64>,
        /// Refuse sweeps whose largest ambient space exceeds this dimension.
        #[arg(long, default_value_t = DEFAULT_MAX_DIM)]
        max_dim: usize,
        /// Random round trips per degree for `h` and the classical towers.
        #[arg(long, default_value_t = 0)]
        samples: usize,
    },
}

/// JSON text plus whether a violation was found.
pub struct Outcome {
    pub json: String,
    pub violation: bool,
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

fn grade_set(m: usize, s: Option<usize>, grades: Option<Vec<usize>>) -> Result<GradeSet, CliError> {
    match (s, grades) {
        (Some(s), None) => Ok(GradeSet::new(&[s], m)?),
        (None, Some(g)) => Ok(GradeSet::new(&g, m)?),
        (None, None) => Err(CliError::Usage("one of --s or --S is required".into())),
        (Some(_), Some(_)) => Err(CliError::Usage("--s and --S are mutually exclusive".into())),
    }
}

fn basis(kind: &str, m: usize, grades: GradeSet, k: usize) -> Result<Outcome, CliError> {
    let kind = SpaceKind::from_name(kind).ok_or_else(|| CliError::Usage(format!("unknown space kind `{kind}`")))?;
    let b = space_basis(kind, m, grades, k)?;
    Ok(Outcome {
        json: to_json(&BasisJson {
            kind: kind.name().to_string(),
            m,
            grades: output::grades(grades),
            k,
            dim: b.dim(),
            basis: b.vectors().iter().map(PolyJson::from).collect(),
        }),
        violation: false,
    })
}

fn apply_named(op: &str, p: &CliffordPoly) -> Result<CliffordPoly, CliError> {
    let derived = |d: DerivedOp| d.spec().apply(p);
    Ok(match op {
        "dplus" => Primitive::DPlus.apply(p),
        "dminus" => Primitive::DMinus.apply(p),
        "xwedge" => Primitive::XWedge.apply(p),
        "xdot" => Primitive::XDot.apply(p),
        "xfull" => x_mul(p, VectorPart::Full),
        "dirac" => derived(DerivedOp::Dirac),
        "dirac-right" => dirac_right(p),
        "dirac-tilde" => derived(DerivedOp::DiracTilde),
        "laplacian" => derived(DerivedOp::Laplacian),
        "laplacian-tilde" => derived(DerivedOp::LaplacianTilde),
        "euler" => derived(DerivedOp::Euler),
        "ferm-plus" => derived(DerivedOp::FermPlus),
        "ferm-minus" => derived(DerivedOp::FermMinus),
        "A" => derived(DerivedOp::A),
        "B" => derived(DerivedOp::B),
        "X" => derived(DerivedOp::X),
        "X-tilde" => derived(DerivedOp::XTilde),
        "sandwich-x" => sandwich_x(p),
        _ => return Err(CliError::Usage(format!("unknown operator `{op}`"))),
    })
}

fn apply(op: Option<String>, word: Option<String>, input: &Path) -> Result<Outcome, CliError> {
    if op.is_none() && word.is_none() {
        return Err(CliError::Usage("apply needs --op and/or --word".into()));
    }
    let parsed_word = word
        .as_deref()
        .map(OmegaWord::parse)
        .transpose()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let mut p = read_poly(input)?;
    if let Some(w) = &parsed_word {
        p = w.apply(&p);
    }
    if let Some(op) = &op {
        p = apply_named(op, &p)?;
    }
    Ok(Outcome {
        json: to_json(&ApplyJson {
            op,
            word,
            result: PolyJson::from(&p),
        }),
        violation: false,
    })
}

fn parse_side(side: &str) -> Result<Side, CliError> {
    match side {
        "left" => Ok(Side::Left),
        "right" => Ok(Side::Right),
        _ => Err(CliError::Usage(format!("unknown side `{side}`"))),
    }
}

fn parse_mode(mode: &str) -> Result<ClassicalMode, CliError> {
    match mode {
        "harmonic" => Ok(ClassicalMode::Harmonic),
        "monogenic" => Ok(ClassicalMode::Monogenic),
        "infra" => Ok(ClassicalMode::Infra),
        _ => Err(CliError::Usage(format!("unknown mode `{mode}`"))),
    }
}

fn decompose(
    theorem: &str,
    input: &Path,
    mode: Option<String>,
    grades: Option<Vec<usize>>,
    side: &str,
) -> Result<Outcome, CliError> {
    let side = parse_side(side)?;
    let mode = mode.as_deref().map(parse_mode).transpose()?;
    if theorem == "mt" && grades.is_none() {
        return Err(CliError::Usage("`mt` needs --S".into()));
    }
    if theorem == "classical" && mode.is_none() {
        return Err(CliError::Usage("`classical` needs --mode".into()));
    }
    let known = ["h", "homma", "monogenic", "mt", "infra", "infra-harmonic", "classical"];
    if !known.contains(&theorem) {
        return Err(CliError::Usage(format!("unknown theorem `{theorem}`")));
    }
    let p = read_poly(input)?;
    let grades = grades.map(|g| GradeSet::new(&g, p.dim())).transpose()?;
    let result: DecompositionResult = match theorem {
        "h" => fischer_h_decompose(&p)?,
        "homma" => refine_decompose(Theorem::Homma, &p, None, side)?,
        "infra" => refine_decompose(Theorem::Infra, &p, None, side)?,
        "infra-harmonic" => refine_decompose(Theorem::InfraHarmonic, &p, None, side)?,
        "monogenic" | "mt" => {
            let t = if side == Side::Right {
                Theorem::MonogenicRight
            } else {
                Theorem::MoisilTheodoresco
            };
            refine_decompose(t, &p, grades, side)?
        }
        _ => classical_fischer_decompose(&p, mode.expect("checked"))?,
    };
    Ok(Outcome {
        json: to_json(&DecompositionJson::new(theorem, &result)),
        violation: !result.is_exact(),
    })
}

fn budget(flag: Option<f64>) -> Result<Option<Duration>, CliError> {
    let seconds = match flag {
        Some(s) => Some(s),
        None => match std::env::var(BUDGET_ENV) {
            Ok(v) => Some(
                v.trim()
                    .parse::<f64>()
                    .map_err(|_| CliError::Usage(format!("{BUDGET_ENV} must be a number of seconds, got `{v}`")))?,
            ),
            Err(_) => None,
        },
    };
    match seconds {
        Some(s) if !(s.is_finite() && s >= 0.0) => Err(CliError::Usage(format!("invalid budget {s}"))),
        Some(s) => Ok(Some(Duration::from_secs_f64(s))),
        None => Ok(None),
    }
}

fn random_checks(m: usize, kmax: usize, selection: &[Theorem], samples: usize, seed: u64) -> Vec<RandomCheckJson> {
    let mut out = Vec::new();
    if samples == 0 {
        return out;
    }
    for &theorem in selection {
        let run: fn(&CliffordPoly) -> hfischer_core::Result<DecompositionResult> = match theorem {
            Theorem::FischerH => fischer_h_decompose,
            Theorem::ClassicalHarmonic => |p| classical_fischer_decompose(p, ClassicalMode::Harmonic),
            Theorem::ClassicalMonogenic => |p| classical_fischer_decompose(p, ClassicalMode::Monogenic),
            Theorem::ClassicalInfra => |p| classical_fischer_decompose(p, ClassicalMode::Infra),
            _ => continue,
        };
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ theorem as u64);
        let mut failures = 0;
        let mut first_failure = None;
        for k in 0..=kmax {
            for _ in 0..samples {
                let p = random_homogeneous(&mut rng, m, GradeSet::full(m), k, 0.3);
                let ok = matches!(run(&p), Ok(d) if d.is_exact() && d.reconstruct() == p);
                if !ok {
                    failures += 1;
                    first_failure.get_or_insert_with(|| PolyJson::from(&p));
                }
            }
        }
        out.push(RandomCheckJson {
            theorem: theorem.name().to_string(),
            samples: samples * (kmax + 1),
            failures,
            first_failure,
        });
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn verify(
    m: usize,
    kmax: usize,
    theorems: &str,
    budget_seconds: Option<f64>,
    max_dim: usize,
    samples: usize,
    seed: u64,
) -> Result<Outcome, CliError> {
    let selection = parse_selection(theorems).map_err(|e| CliError::Usage(e.to_string()))?;
    let budget = budget(budget_seconds)?;
    let all = tasks(m, kmax, &selection)?;
    check_budget(&all, max_dim)?;
    let start = Instant::now();
    let results: Vec<Option<hfischer_core::Result<_>>> = all
        .par_iter()
        .map(|task| {
            if budget.is_some_and(|b| start.elapsed() >= b) {
                None
            } else {
                Some(run_task(task))
            }
        })
        .collect();
    let skipped = results.iter().filter(|r| r.is_none()).count();
    let mut reports = results.into_iter().flatten().collect::<hfischer_core::Result<Vec<_>>>()?;
    sort_reports(&mut reports);

    let checks = random_checks(m, kmax, &selection, samples, seed);
    let summary = selection
        .iter()
        .map(|&t| TheoremSummaryJson {
            theorem: t.name().to_string(),
            passed: reports.iter().filter(|r| r.theorem == t && r.passed()).count(),
            failed: reports.iter().filter(|r| r.theorem == t && !r.passed()).count(),
        })
        .collect();
    let failed = reports.iter().filter(|r| !r.passed()).count();
    let violation = failed > 0 || checks.iter().any(|c| c.failures > 0);
    let json = VerifyJson {
        m,
        kmax,
        theorems: selection.iter().map(|t| t.name().to_string()).collect(),
        seed,
        complete: skipped == 0,
        skipped,
        passed: reports.len() - failed,
        failed,
        summary,
        random_checks: checks,
        reports: reports.iter().map(ReportJson::from).collect(),
    };
    Ok(Outcome {
        json: to_json(&json),
        violation,
    })
}

pub fn execute(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Basis { kind, m, s, grades, k } => {
            hfischer_core::clifford::check_dim(m)?;
            basis(&kind, m, grade_set(m, s, grades)?, k)
        }
        Command::Apply { op, word, input } => apply(op, word, &input),
        Command::Decompose {
            theorem,
            input,
            mode,
            grades,
            side,
        } => decompose(&theorem, &input, mode, grades, &side),
        Command::Verify {
            m,
            kmax,
            theorems,
            budget_seconds,
            max_dim,
            samples,
        } => verify(m, kmax, &theorems, budget_seconds, max_dim, samples, cli.seed),
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code: 0 success, 1 theorem violation, 2 usage or input error.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let output = cli.output.clone();
    match execute(cli) {
        Ok(outcome) => {
            let written = match &output {
                Some(path) => std::fs::write(path, &outcome.json).map_err(|e| CliError::Io {
                    path: path.display().to_string(),
                    message: e.to_string(),
                }),
                None => {
                    print!("{}", outcome.json);
                    Ok(())
                }
            };
            match written {
                Err(e) => {
                    eprintln!("error: {e}");
                    2
                }
                Ok(()) if outcome.violation => 1,
                Ok(()) => 0,
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
