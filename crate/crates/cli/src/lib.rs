//! Command implementations behind the `codeloop` binary.
//!
//! Every command returns an [`Outcome`] instead of printing or exiting, so
//! integration tests drive the exact code paths the binary uses.
//!
//! Exit codes: 0 success, 1 a theorem-consistency failure, 2 invalid
//! mathematical input (not doubly even, too large), 3 usage or I/O error.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use codeloop_core::catalog::{
    check_congruence, check_identity, discriminant_holds, Congruence, Discriminant, Identity,
};
use codeloop_core::classify::{classify, MAX_CLASSIFY_DIMENSION};
use codeloop_core::code::{random_doubly_even_code, LinearCode, MAX_LENGTH};
use codeloop_core::error::Error;
use codeloop_core::factor::{
    factor_set_space, random_normalized_phi, solve_factor_set, DerivedCongruence, FactorSet,
};
use codeloop_core::loops::CodeLoop;

pub const EXIT_OK: u8 = 0;
pub const EXIT_INCONSISTENT: u8 = 1;
pub const EXIT_INVALID_INPUT: u8 = 2;
pub const EXIT_USAGE: u8 = 3;

/// Largest dimension the fuzzer accepts.
pub const MAX_FUZZ_DIMENSION: usize = 3;

#[derive(Debug, Parser)]
#[command(
    name = "codeloop",
    version,
    about = "Verify, fuzz and export code loops"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve for a factor set on a doubly even code and check every theorem.
    Verify {
        /// Generator matrix, one row of 0/1 characters per line.
        matrix: PathBuf,
        /// Write the report here instead of standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compare loop identities against their discriminants on random tables.
    Fuzz {
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 16)]
        len: usize,
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Mismatch dump file.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write the solved factor set or the loop's Cayley table.
    Export {
        matrix: PathBuf,
        #[arg(long, value_enum)]
        what: ExportKind,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExportKind {
    Table,
    Phi,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Input { path: PathBuf, source: Error },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Read { .. } | CliError::Write { .. } | CliError::Usage(_) => EXIT_USAGE,
            CliError::Input { source, .. } => match source {
                Error::DimensionTooLarge { .. } => EXIT_INVALID_INPUT,
                _ => EXIT_USAGE,
            },
            CliError::Core(e) => match e {
                Error::NotDoublyEven
                | Error::DimensionTooLarge { .. }
                | Error::OrderTooLarge { .. }
                | Error::GenerationFailed { .. }
                | Error::InvalidParameters(_) => EXIT_INVALID_INPUT,
                Error::InconsistentSystem | Error::NotAFactorSet => EXIT_INCONSISTENT,
                _ => EXIT_USAGE,
            },
        }
    }
}

/// What a command produced: the exit code plus text for each stream.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn error(e: &CliError) -> Self {
        Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let result = match cli.command {
        Command::Verify { matrix, output } => cmd_verify(&matrix, output.as_deref()),
        Command::Fuzz {
            dim,
            len,
            count,
            seed,
            output,
        } => cmd_fuzz(
            &FuzzConfig {
                dim,
                len,
                count,
                seed,
            },
            output.as_deref(),
        ),
        Command::Export {
            matrix,
            what,
            output,
        } => cmd_export(&matrix, what, &output),
    };
    result.unwrap_or_else(|e| Outcome::error(&e))
}

pub fn load_matrix(path: &Path) -> Result<LinearCode, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    LinearCode::parse_generator_matrix(&text).map_err(|source| CliError::Input {
        path: path.to_path_buf(),
        source,
    })
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Write {
        path: path.to_path_buf(),
        source,
    })
}

/// Sends `text` to `output` if given, otherwise returns it for stdout.
fn deliver(text: String, output: Option<&Path>) -> Result<String, CliError> {
    match output {
        Some(p) => {
            write_file(p, &text)?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn holds(b: bool) -> &'static str {
    if b {
        "HOLDS"
    } else {
        "FAILS"
    }
}

/// The full pipeline. The report is a sequence of `key value...` lines ending
/// in `STATUS OK` or `STATUS FAILED`.
pub fn verify_report(code: LinearCode) -> Result<(u8, String), CliError> {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "code n={} k={} size={}",
        code.length(),
        code.dimension(),
        code.size()
    );
    let de = code.doubly_even_check();
    if let Some(w) = de.witness {
        let _ = writeln!(out, "doubly-even FAILS scanned={}", de.scanned);
        let _ = writeln!(out, "witness {w}");
        let _ = writeln!(out, "STATUS INVALID");
        return Ok((EXIT_INVALID_INPUT, out));
    }
    let _ = writeln!(out, "doubly-even HOLDS scanned={}", de.scanned);
    if code.dimension() > MAX_CLASSIFY_DIMENSION {
        return Err(Error::DimensionTooLarge {
            dimension: code.dimension(),
            limit: MAX_CLASSIFY_DIMENSION,
        }
        .into());
    }

    let phi = Arc::new(solve_factor_set(Arc::new(code))?);
    let mut ok = true;
    let axioms = phi.axiom_violations()?;
    ok &= axioms.is_empty();
    let _ = writeln!(
        out,
        "axioms {} checked={} violations={}",
        holds(axioms.is_empty()),
        axioms.checked,
        axioms.total
    );
    for v in axioms.violations.iter().take(8) {
        let _ = writeln!(out, "violation {v}");
    }
    for line in phi.to_text().lines() {
        let _ = writeln!(out, "phi {line}");
    }

    let c = classify(&phi)?;
    ok &= c.is_consistent();
    out.push_str(&c.to_string());
    let _ = match c.nonassociative {
        None => writeln!(out, "loop order={} group", c.order),
        Some(t) => writeln!(
            out,
            "loop order={} nonassociative witness=({},{},{})",
            c.order, t[0], t[1], t[2]
        ),
    };

    for item in Congruence::ALL {
        let r = check_congruence(&phi, *item)?;
        ok &= r.holds;
        let _ = writeln!(out, "congruence {r}");
    }
    for d in DerivedCongruence::ALL {
        let r = phi.derived_congruence(d)?;
        // the printed equivalence is reported with the errata, not gated
        if d != DerivedCongruence::WlEquiv {
            ok &= r.holds;
        }
        let _ = writeln!(out, "derived {r}");
    }
    let _ = writeln!(out, "STATUS {}", if ok { "OK" } else { "FAILED" });
    Ok((if ok { EXIT_OK } else { EXIT_INCONSISTENT }, out))
}

pub fn cmd_verify(matrix: &Path, output: Option<&Path>) -> Result<Outcome, CliError> {
    let code = load_matrix(matrix)?;
    let (exit, report) = verify_report(code)?;
    let stderr = match exit {
        EXIT_INVALID_INPUT => report
            .lines()
            .find(|l| l.starts_with("witness"))
            .map(|l| format!("code is not doubly even: {l}\n"))
            .unwrap_or_default(),
        EXIT_INCONSISTENT => "consistency check failed\n".to_string(),
        _ => String::new(),
    };
    Ok(Outcome {
        code: exit,
        stdout: deliver(report, output)?,
        stderr,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FuzzConfig {
    pub dim: usize,
    pub len: usize,
    pub count: usize,
    pub seed: u64,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            dim: 2,
            len: 16,
            count: 200,
            seed: 0,
        }
    }
}

/// One side of an equivalence pair: a loop identity, a discriminant, or a
/// weak-linearity flag.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Probe {
    Identity(Identity),
    Discriminant(Discriminant),
    Lwl,
    Rwl,
    Wl,
}

impl Probe {
    pub fn name(self) -> &'static str {
        match self {
            Probe::Identity(i) => i.name(),
            Probe::Discriminant(d) => d.name(),
            Probe::Lwl => "lwl",
            Probe::Rwl => "rwl",
            Probe::Wl => "wl",
        }
    }
}

/// The pairs the fuzzer compares. Each holds for every normalized table.
pub fn fuzz_pairs() -> Vec<(Probe, Probe)> {
    use codeloop_core::catalog::{Discriminant as D, Identity as I};
    use Probe as P;
    vec![
        (P::Identity(I::Lc1), P::Discriminant(D::A1)),
        (P::Discriminant(D::A1), P::Rwl),
        (P::Identity(I::Lc2), P::Discriminant(D::A2)),
        (P::Identity(I::Lc3), P::Discriminant(D::A3)),
        (P::Identity(I::Rc1), P::Discriminant(D::B1)),
        (P::Discriminant(D::B1), P::Lwl),
        (P::Identity(I::Rc2), P::Discriminant(D::B2)),
        (P::Identity(I::Rc3), P::Discriminant(D::B3)),
        (P::Identity(I::CLoop), P::Discriminant(D::DRaw)),
        (P::Discriminant(D::DRaw), P::Wl),
        (P::Identity(I::Extra1), P::Discriminant(D::E1Raw)),
        (P::Identity(I::Extra2), P::Discriminant(D::E2Raw)),
        (P::Identity(I::Extra3), P::Discriminant(D::E3Raw)),
        (P::Identity(I::La), P::Rwl),
        (P::Identity(I::Ra), P::Lwl),
    ]
}

/// Verdicts for every probe used by [`fuzz_pairs`] on one table.
pub fn evaluate_probes(phi: &Arc<FactorSet>) -> Result<Vec<(Probe, bool)>, Error> {
    let lp = CodeLoop::new(Arc::clone(phi));
    let wl = phi.weak_linearity();
    let mut seen: Vec<(Probe, bool)> = Vec::new();
    for (a, b) in fuzz_pairs() {
        for p in [a, b] {
            if seen.iter().any(|s| s.0 == p) {
                continue;
            }
            let v = match p {
                Probe::Identity(i) => check_identity(&lp, i)?.holds,
                Probe::Discriminant(d) => discriminant_holds(phi, d)?.holds,
                Probe::Lwl => wl.lwl.holds(),
                Probe::Rwl => wl.rwl.holds(),
                Probe::Wl => wl.wl(),
            };
            seen.push((p, v));
        }
    }
    Ok(seen)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FuzzSummary {
    pub iterations: usize,
    pub factor_sets: usize,
    pub wl_tables: usize,
    /// Per pair: (left, right, agreements, mismatches).
    pub pairs: Vec<(&'static str, &'static str, usize, usize)>,
    pub dump: String,
}

impl FuzzSummary {
    pub fn mismatches(&self) -> usize {
        self.pairs.iter().map(|p| p.3).sum()
    }
}

/// Draws `count` tables. Every fourth is a random factor set so the `true`
/// side of each pair is exercised; the rest are uniform normalized tables.
pub fn fuzz(config: &FuzzConfig) -> Result<FuzzSummary, CliError> {
    if config.dim > MAX_FUZZ_DIMENSION {
        return Err(CliError::Usage(format!(
            "--dim {} exceeds the fuzz limit of {MAX_FUZZ_DIMENSION}",
            config.dim
        )));
    }
    if config.len == 0 || config.len > MAX_LENGTH {
        return Err(CliError::Usage(format!(
            "--len must be between 1 and {MAX_LENGTH}"
        )));
    }
    let pairs = fuzz_pairs();
    let mut summary = FuzzSummary {
        pairs: pairs
            .iter()
            .map(|(a, b)| (a.name(), b.name(), 0, 0))
            .collect(),
        ..FuzzSummary::default()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    for i in 0..config.count {
        let code = Arc::new(random_doubly_even_code(config.len, config.dim, rng.gen())?);
        let phi = if i % 4 == 3 {
            let space = factor_set_space(Arc::clone(&code))?;
            let mask: Vec<bool> = (0..space.free_variables()).map(|_| rng.gen()).collect();
            summary.factor_sets += 1;
            space.member(&mask)?
        } else {
            random_normalized_phi(Arc::clone(&code), rng.gen())?
        };
        let phi = Arc::new(phi);
        let verdicts = evaluate_probes(&phi)?;
        let get = |p: Probe| verdicts.iter().find(|v| v.0 == p).unwrap().1;
        if get(Probe::Wl) {
            summary.wl_tables += 1;
        }
        for (slot, (a, b)) in summary.pairs.iter_mut().zip(&pairs) {
            let (va, vb) = (get(*a), get(*b));
            if va == vb {
                slot.2 += 1;
            } else {
                slot.3 += 1;
                let _ = writeln!(
                    summary.dump,
                    "mismatch iteration={i} {}={va} {}={vb}",
                    a.name(),
                    b.name()
                );
                for row in code.basis() {
                    let _ = writeln!(summary.dump, "generator {row}");
                }
                summary.dump.push_str(&phi.to_text());
            }
        }
        summary.iterations += 1;
    }
    Ok(summary)
}

pub fn cmd_fuzz(config: &FuzzConfig, output: Option<&Path>) -> Result<Outcome, CliError> {
    let s = fuzz(config)?;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "fuzz k={} n={} count={} seed={}",
        config.dim, config.len, config.count, config.seed
    );
    let _ = writeln!(
        out,
        "tables {} factor-sets {} wl {}",
        s.iterations, s.factor_sets, s.wl_tables
    );
    for (a, b, agree, bad) in &s.pairs {
        let _ = writeln!(out, "pair {a}<=>{b} agree={agree} mismatch={bad}");
    }
    let _ = writeln!(out, "mismatches {}", s.mismatches());
    let mut stderr = String::new();
    if s.mismatches() > 0 {
        match output {
            Some(p) => write_file(p, &s.dump)?,
            None => stderr = s.dump.clone(),
        }
    }
    Ok(Outcome {
        code: if s.mismatches() == 0 {
            EXIT_OK
        } else {
            EXIT_INCONSISTENT
        },
        stdout: out,
        stderr,
    })
}

/// Text for `export`: the factor-set table or the Cayley table of `L(φ)`.
pub fn export_text(code: LinearCode, what: ExportKind) -> Result<String, CliError> {
    let phi = solve_factor_set(Arc::new(code))?;
    Ok(match what {
        ExportKind::Phi => phi.to_text(),
        ExportKind::Table => CodeLoop::new(Arc::new(phi)).cayley_text(),
    })
}

pub fn cmd_export(matrix: &Path, what: ExportKind, output: &Path) -> Result<Outcome, CliError> {
    let code = load_matrix(matrix)?;
    if let Some(w) = code.doubly_even_check().witness {
        return Ok(Outcome {
            code: EXIT_INVALID_INPUT,
            stdout: String::new(),
            stderr: format!("code is not doubly even: witness {w}\n"),
        });
    }
    write_file(output, &export_text(code, what)?)?;
    Ok(Outcome::default())
}
