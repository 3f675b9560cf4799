//! The `ontolab` command line.
//!
//! Exit codes: 0 on success or a positive verdict, 1 on a negative verdict
//! (failed validation, violated bound, infeasible budget, counterexample),
//! 2 on input errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ontolab_core::cloning::{alpha_grid, budget_from_model};
use ontolab_core::composite::{classify, evolve_local_measurement, Party, SettingGrid};
use ontolab_core::epistemicity;
use ontolab_core::ontic::{validate_with_tolerance, OntologicalModel};
use ontolab_core::quantum::{chsh_optimal_value, QuantumState};
use ontolab_core::search::{brute_force_overlap, chsh_monte_carlo, max_overlap_lp};
use ontolab_core::tolerance;

use crate::error::FormatError;
use crate::fixtures;
use crate::format::{self, instance_from_str, model_from_str, table_from_str, table_to_value};
use crate::parallel;
use crate::report::{self, *};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "ontolab",
    version,
    about = "Discrete ontological models of qubits: validation, epistemicity and CHSH bounds"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Born-rule tolerance for validation (defaults to the model's own).
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
    /// Seed for every random draw.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Worker threads for sweeps and enumerations; 1 runs sequentially.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Emit CSV instead of JSON where a table form exists.
    #[arg(long, global = true)]
    pub csv: bool,
    /// Write the report to a file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum PartyArg {
    #[value(name = "A")]
    A,
    #[value(name = "B")]
    B,
}

impl From<PartyArg> for Party {
    fn from(p: PartyArg) -> Party {
        match p {
            PartyArg::A => Party::Alice,
            PartyArg::B => Party::Bob,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a model's shape and Born-rule reproduction.
    Validate { model: PathBuf },
    /// Ontic overlaps, degrees of epistemicity and the general bound.
    Epistemicity {
        model: PathBuf,
        /// Ordered pair `phi,psi`; repeatable. Defaults to every pair.
        #[arg(long = "pair")]
        pairs: Vec<String>,
        /// Bound triple `phi,phi_perp,psi`; repeatable. Defaults to every
        /// orthogonal basis among the preparations.
        #[arg(long = "bound")]
        bounds: Vec<String>,
    },
    /// Ontic type of an assignment table.
    Classify { table: PathBuf },
    /// Constraint left by a local measurement on an assignment table.
    Evolve {
        table: PathBuf,
        #[arg(long, value_enum)]
        party: PartyArg,
        #[arg(long)]
        setting: String,
        /// Further measurements as `A:setting` or `B:setting`, in order.
        #[arg(long)]
        then: Vec<String>,
        /// Also draw one admissible table using `--seed`.
        #[arg(long)]
        sample: bool,
    },
    /// CHSH budget of a cloning-machine input.
    CloneSim {
        model: PathBuf,
        /// Machine basis `phi,phi_perp`.
        #[arg(long)]
        basis: String,
        /// Input preparation.
        #[arg(long)]
        psi: String,
        /// Cap the region outside both overlaps at 2 sqrt 2 instead of 4.
        #[arg(long)]
        tsirelson_rest_cap: bool,
    },
    /// Overlap-budget curve over a grid of |alpha|^2 (CSV by default).
    BoundSweep {
        /// `start:end:step`.
        #[arg(long, default_value = "0.05:0.5:0.05")]
        alpha: String,
        /// Emit JSON instead of CSV.
        #[arg(long)]
        json: bool,
    },
    /// Maximum ontic overlap over outcome-deterministic models.
    Search { instance: PathBuf },
    /// Exhaustive sequential-measurement check on a square setting grid.
    Prop1 {
        /// Settings on both sides (Alice's when `--bob` is given).
        #[arg(long, default_value = "sz,sx")]
        settings: String,
        #[arg(long)]
        bob: Option<String>,
    },
    /// Write the reference fixture library.
    Fixtures {
        /// Target directory; defaults to the data directory.
        #[arg(long)]
        dir: Option<PathBuf>,
        /// Also write the 100k-cell Kochen-Specker model.
        #[arg(long)]
        with_large: bool,
    },
    /// Seeded CHSH experiment on a|00> + b|11> at its optimal setting.
    MonteCarlo {
        #[arg(long, default_value_t = 0.5)]
        alpha_sq: f64,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Core(#[from] ontolab_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("{}: {source}", path.display())]
    Write {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("CSV output failed: {0}")]
    Csv(#[from] csv::Error),
}

/// A finished command: its report text and exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub exit: i32,
}

impl Outcome {
    fn verdict(text: String, positive: bool) -> Self {
        Outcome {
            text,
            exit: if positive { EXIT_OK } else { EXIT_NEGATIVE },
        }
    }
}

/// Parses `args` (program name first), runs the command and writes the
/// report. Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match execute(&cli) {
        Ok(outcome) => match emit(&cli, &outcome.text, stdout) {
            Ok(()) => outcome.exit,
            Err(e) => {
                let _ = writeln!(stderr, "error: {e}");
                EXIT_INPUT
            }
        },
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_INPUT
        }
    }
}

fn emit(cli: &Cli, text: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match &cli.out {
        Some(path) => format::write_text(path, text).map_err(CliError::from),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Write {
                path: PathBuf::from("<stdout>"),
                source,
            }),
    }
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    if cli.jobs == 0 {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }
    if let Some(t) = cli.tolerance {
        if !(t > 0.0 && t.is_finite()) {
            return Err(CliError::Usage(format!("--tolerance must be positive, got {t}")));
        }
    }
    match &cli.command {
        Command::Validate { model } => validate(cli, model),
        Command::Epistemicity { model, pairs, bounds } => epistemicity_cmd(cli, model, pairs, bounds),
        Command::Classify { table } => {
            let t = table_from_str(&read(table)?)?;
            Ok(Outcome::verdict(
                report::to_json(&ClassifyReport::from(&classify(&t))),
                true,
            ))
        }
        Command::Evolve {
            table,
            party,
            setting,
            then,
            sample,
        } => evolve(cli, table, (*party).into(), setting, then, *sample),
        Command::CloneSim {
            model,
            basis,
            psi,
            tsirelson_rest_cap,
        } => clone_sim(model, basis, psi, *tsirelson_rest_cap),
        Command::BoundSweep { alpha, json } => bound_sweep(cli, alpha, *json),
        Command::Search { instance } => search(instance),
        Command::Prop1 { settings, bob } => prop1(cli, settings, bob.as_deref()),
        Command::Fixtures { dir, with_large } => {
            let dir = dir.clone().unwrap_or_else(fixtures::data_dir);
            let written = fixtures::write_fixtures(&dir, *with_large)?;
            let names: Vec<String> = written.iter().map(|p| p.display().to_string()).collect();
            Ok(Outcome::verdict(report::to_json(&names), true))
        }
        Command::MonteCarlo { alpha_sq, samples } => monte_carlo(cli, *alpha_sq, *samples),
    }
}

fn read(path: &Path) -> Result<String, FormatError> {
    format::read_text(&fixtures::resolve(path))
}

fn load_model(path: &Path) -> Result<OntologicalModel, FormatError> {
    model_from_str(&read(path)?)
}

/// Tolerance on `|Omega - 1|` for the maximality cross-check: tight for
/// exact models, loose for discretised ones.
pub fn omega_tolerance(model: &OntologicalModel) -> f64 {
    if model.born_tolerance() > tolerance::BORN_DEFAULT {
        1e-2
    } else {
        tolerance::OPTIMIZATION
    }
}

fn split(spec: &str, parts: usize, what: &str) -> Result<Vec<String>, CliError> {
    let items: Vec<String> = spec.split(',').map(|s| s.trim().to_string()).collect();
    if items.len() != parts || items.iter().any(String::is_empty) {
        return Err(CliError::Usage(format!(
            "{what} `{spec}` must list {parts} comma-separated ids"
        )));
    }
    Ok(items)
}

fn validate(cli: &Cli, path: &Path) -> Result<Outcome, CliError> {
    let model = load_model(path)?;
    let tol = cli.tolerance.unwrap_or(model.born_tolerance());
    let v = validate_with_tolerance(&model, tol);
    let properties = if v.passed {
        let omega_tol = omega_tolerance(&model);
        let verdict = model.is_maximally_epistemic_within(omega_tol)?;
        Some(PropertiesRow::new(&verdict, omega_tol))
    } else {
        None
    };
    let counts = (
        model.space().len(),
        model.preparations().len(),
        model.measurements().len(),
    );
    let r = ValidateReport::new(&v, counts, properties);
    Ok(Outcome::verdict(report::to_json(&r), v.passed))
}

/// Every `(phi, phi_perp, psi)` with `phi`, `phi_perp` orthogonal and `psi`
/// overlapping both.
fn bound_triples(model: &OntologicalModel) -> Result<Vec<(String, String, String)>, CliError> {
    let preps = model.preparations();
    let mut out = Vec::new();
    for a in preps {
        for b in preps {
            if a.state.dim() != b.state.dim() || a.state.overlap(&b.state)? > tolerance::NEAR_ORTHOGONAL {
                continue;
            }
            for c in preps {
                if c.state.dim() != a.state.dim() {
                    continue;
                }
                let (qa, qb) = (a.state.overlap(&c.state)?, b.state.overlap(&c.state)?);
                if qa > tolerance::NEAR_ORTHOGONAL && qb > tolerance::NEAR_ORTHOGONAL {
                    out.push((a.id.clone(), b.id.clone(), c.id.clone()));
                }
            }
        }
    }
    Ok(out)
}

fn epistemicity_cmd(
    cli: &Cli,
    path: &Path,
    pairs: &[String],
    bounds: &[String],
) -> Result<Outcome, CliError> {
    let model = load_model(path)?;
    let pairs = pairs
        .iter()
        .map(|p| split(p, 2, "pair").map(|v| (v[0].clone(), v[1].clone())))
        .collect::<Result<Vec<_>, _>>()?;
    let triples = if bounds.is_empty() {
        bound_triples(&model)?
    } else {
        bounds
            .iter()
            .map(|b| split(b, 3, "bound").map(|v| (v[0].clone(), v[1].clone(), v[2].clone())))
            .collect::<Result<Vec<_>, _>>()?
    };
    let r = epistemicity::report(&model, &pairs, &triples)?;
    let rows = EpistemicityRows::from(&r);
    let text = if cli.csv {
        report::to_csv(&rows.pairs)?
    } else {
        report::to_json(&rows)
    };
    Ok(Outcome::verdict(text, r.all_bounds_satisfied()))
}

fn evolve(
    cli: &Cli,
    path: &Path,
    party: Party,
    setting: &str,
    then: &[String],
    sample: bool,
) -> Result<Outcome, CliError> {
    let table = table_from_str(&read(path)?)?;
    let mut c = evolve_local_measurement(&table, party, setting)?;
    for step in then {
        let (p, s) = step
            .split_once(':')
            .ok_or_else(|| CliError::Usage(format!("--then `{step}` must look like B:sz")))?;
        let p = match p.trim() {
            "A" => Party::Alice,
            "B" => Party::Bob,
            other => {
                return Err(CliError::Usage(format!(
                    "unknown party `{other}`; expected A or B"
                )))
            }
        };
        c = c.evolve(p, s.trim())?;
    }
    let drawn = if sample {
        let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
        c.sample(&mut rng).map(|t| table_to_value(&t))
    } else {
        None
    };
    Ok(Outcome::verdict(
        report::to_json(&EvolveReport::new(&c, drawn)),
        true,
    ))
}

fn clone_sim(path: &Path, basis: &str, psi: &str, tsirelson: bool) -> Result<Outcome, CliError> {
    let model = load_model(path)?;
    let b = split(basis, 2, "basis")?;
    let mut budget = budget_from_model(&model, &b[0], &b[1], psi)?;
    if tsirelson {
        budget = budget.with_tsirelson_rest_cap();
    }
    let f = budget.feasible()?;
    Ok(Outcome::verdict(
        report::to_json(&CloneReport::new(&budget, &f)),
        f.feasible,
    ))
}

pub fn parse_alpha_grid(spec: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    let nums = parts
        .iter()
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::Usage(format!("--alpha `{spec}`: {e}")))?;
    match nums.as_slice() {
        [single] => Ok(vec![*single]),
        [start, end, step] => Ok(alpha_grid(*start, *end, *step)?),
        _ => Err(CliError::Usage(format!(
            "--alpha `{spec}` must be `value` or `start:end:step`"
        ))),
    }
}

fn bound_sweep(cli: &Cli, spec: &str, json: bool) -> Result<Outcome, CliError> {
    let alphas = parse_alpha_grid(spec)?;
    let rows: Vec<SweepCsvRow> = parallel::bound_sweep(&alphas, cli.jobs)?
        .iter()
        .map(SweepCsvRow::from)
        .collect();
    let text = if json {
        report::to_json(&rows)
    } else {
        report::to_csv(&rows)?
    };
    Ok(Outcome::verdict(text, true))
}

fn search(path: &Path) -> Result<Outcome, CliError> {
    let inst = instance_from_str(&read(path)?)?;
    let objective = (inst.objective.0.as_str(), inst.objective.1.as_str());
    let opt = match max_overlap_lp(&inst.states, &inst.measurements, inst.ontic_count, objective) {
        Ok(o) => o,
        Err(ontolab_core::Error::Infeasible(what)) => {
            let text = report::to_json(&serde_json::json!({ "infeasible": what }));
            return Ok(Outcome::verdict(text, false));
        }
        Err(e) => return Err(e.into()),
    };
    let brute = match inst.brute_force_resolution {
        Some(r) => Some(brute_force_overlap(
            &inst.states,
            &inst.measurements,
            objective,
            r,
        )?),
        None => None,
    };
    let r = SearchReport::new(inst.objective.clone(), &opt, brute);
    Ok(Outcome::verdict(report::to_json(&r), true))
}

fn settings(spec: &str) -> Vec<String> {
    spec.split(',')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect()
}

fn prop1(cli: &Cli, alice: &str, bob: Option<&str>) -> Result<Outcome, CliError> {
    let a = settings(alice);
    let b = bob.map(settings).unwrap_or_else(|| a.clone());
    let grid = SettingGrid::new(a, b)?;
    let tally = parallel::proposition1(&grid, cli.jobs)?;
    let r = Prop1Report::new(&grid, &tally);
    Ok(Outcome::verdict(report::to_json(&r), r.all_local))
}

fn monte_carlo(cli: &Cli, alpha_sq: f64, samples: u64) -> Result<Outcome, CliError> {
    let state = QuantumState::schmidt_real(alpha_sq)?;
    let optimum = chsh_optimal_value(&state)?;
    let e = chsh_monte_carlo(&state, &optimum.setting, samples, cli.seed)?;
    let r = MonteCarloReport::new(alpha_sq, cli.seed, optimum.value, &e);
    let within = r.z_score.map_or(e.estimate == optimum.value, |z| z.abs() <= 3.0);
    Ok(Outcome::verdict(report::to_json(&r), within))
}
