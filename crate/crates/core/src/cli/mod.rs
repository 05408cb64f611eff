//! The `osc` command line.
//!
//! Exit status: 0 when every check passes, 1 when a check fails (the report
//! is still written), 2 for invalid parameters or configuration, 3 for a
//! numeric failure such as overflow or an undefined `gamma`.

pub mod config;
pub mod output;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use crate::calculus::{check_realization, CalculusError};
use crate::fock::{FockError, FockRep, RelationMode};
use crate::hopf::{self, HopfError, HopfParams};
use crate::numeric::NumericError;
use crate::params::ParamError;
use crate::spectrum::{check_pq_inversion, SpectrumTable};
use crate::structure::{f_general, pq_sum_oracle};

pub use config::{parse_config, parse_settings, Config, ConfigError, Format, RunOptions, Settings};
pub use output::{Document, Metadata, ParamsEcho, Table};

/// Exponents on which `calculus-check` tests the realization.
pub const CALCULUS_EXPONENTS: [f64; 9] = [-3.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.0, 4.0, 5.0];

#[derive(Debug, Parser)]
#[command(
    name = "osc",
    version,
    about = "Checks for (p,q;alpha,beta,l)-deformed oscillator algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
enum Command {
    /// Table of f(n) for n = 0..n_max
    Numbers,
    /// Eigenvalues of H = a+a + aa+ in all three closed forms, with the duality check
    Spectrum,
    /// Defining relations on the truncated Fock representation
    RepCheck,
    /// Defining relations for the difference-operator realization
    CalculusCheck,
    /// Solve for the Hopf coefficients and check every constraint
    HopfSolve,
    /// Coassociativity, counit, homomorphism and antipode on tensor products
    HopfCheck,
    /// Run the representation, calculus and spectrum checks over a parameter grid
    Sweep,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Numbers => "numbers",
            Command::Spectrum => "spectrum",
            Command::RepCheck => "rep-check",
            Command::CalculusCheck => "calculus-check",
            Command::HopfSolve => "hopf-solve",
            Command::HopfCheck => "hopf-check",
            Command::Sweep => "sweep",
        }
    }
}

#[derive(Debug, Args)]
struct Flags {
    /// `key = value` file; flags override its entries
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(
        long,
        global = true,
        value_delimiter = ',',
        allow_negative_numbers = true
    )]
    p: Vec<f64>,
    #[arg(
        long,
        global = true,
        value_delimiter = ',',
        allow_negative_numbers = true
    )]
    q: Vec<f64>,
    #[arg(
        long,
        global = true,
        value_delimiter = ',',
        allow_negative_numbers = true
    )]
    alpha: Vec<f64>,
    #[arg(
        long,
        global = true,
        value_delimiter = ',',
        allow_negative_numbers = true
    )]
    beta: Vec<f64>,
    #[arg(
        long,
        global = true,
        value_delimiter = ',',
        allow_negative_numbers = true
    )]
    l: Vec<f64>,
    #[arg(
        long,
        global = true,
        value_delimiter = ',',
        allow_negative_numbers = true
    )]
    beta1: Vec<f64>,
    #[arg(
        long,
        global = true,
        value_delimiter = ',',
        allow_negative_numbers = true
    )]
    beta2: Vec<f64>,
    #[arg(long, global = true)]
    dim: Option<usize>,
    #[arg(long = "n-max", global = true)]
    n_max: Option<i64>,
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// grading | literal
    #[arg(long, global = true)]
    mode: Option<RelationMode>,
    #[arg(long, global = true)]
    format: Option<Format>,
    /// Output file (default: standard output)
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Omit the timestamp so identical runs give identical output
    #[arg(long, global = true)]
    no_timestamp: bool,
}

impl Flags {
    fn settings(&self) -> Settings {
        Settings {
            p: self.p.clone(),
            q: self.q.clone(),
            alpha: self.alpha.clone(),
            beta: self.beta.clone(),
            l: self.l.clone(),
            beta1: self.beta1.clone(),
            beta2: self.beta2.clone(),
            dim: self.dim,
            n_max: self.n_max,
            tol: self.tol,
            mode: self.mode,
            format: self.format,
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    Numeric(#[from] NumericError),
    #[error(transparent)]
    Fock(#[from] FockError),
    #[error(transparent)]
    Calculus(#[from] CalculusError),
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error("{0}")]
    Io(String),
}

fn fock_kind(e: &FockError) -> (&'static str, i32) {
    match e {
        FockError::NegativeWeight(..) => ("NegativeWeight", 2),
        FockError::NotLowestWeight(_) => ("NotLowestWeight", 2),
        FockError::DimensionTooSmall(_) => ("DimensionTooSmall", 2),
        FockError::DimensionMismatch { .. } => ("DimensionMismatch", 2),
        FockError::EmptyWord => ("EmptyWord", 2),
        FockError::UnknownGenerator(_) => ("UnknownGenerator", 2),
        FockError::Numeric(_) => ("Overflow", 3),
    }
}

impl CliError {
    /// `(error name, exit status)`
    pub fn classify(&self) -> (&'static str, i32) {
        match self {
            CliError::Config(e) => (e.kind(), 2),
            CliError::Param(e) => (e.kind(), 2),
            CliError::Numeric(_) => ("Overflow", 3),
            CliError::Fock(e) => fock_kind(e),
            CliError::Calculus(e) => match e {
                CalculusError::Param(p) => (p.kind(), 2),
                CalculusError::Numeric(_) => ("Overflow", 3),
                CalculusError::TooManyTerms => ("TooManyTerms", 3),
                CalculusError::NonFinite => ("NonFinite", 3),
            },
            CliError::Hopf(e) => match e {
                HopfError::Param(p) => (p.kind(), 2),
                HopfError::Numeric(_) => ("Overflow", 3),
                HopfError::Fock(f) => fock_kind(f),
                HopfError::GammaUndefined { .. } => ("GammaUndefined", 3),
                HopfError::ADegenerate(_) => ("ADegenerate", 3),
                HopfError::Beta1Beta2Mismatch(..) => ("Beta1Beta2Mismatch", 2),
                HopfError::InconsistentParams => ("InconsistentParams", 2),
                HopfError::DimensionTooSmall(_) => ("DimensionTooSmall", 2),
            },
            CliError::Io(_) => ("Io", 2),
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.classify().1
    }
}

/// Runs the command line `argv` (program name first) and returns the exit
/// status.
pub fn run(argv: Vec<String>) -> i32 {
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = execute(&cli).and_then(|(doc, format)| {
        let text = match format {
            Format::Json => doc.to_json(),
            Format::Csv => doc.to_csv(),
        };
        match &cli.flags.out {
            Some(path) => std::fs::write(path, text)
                .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?,
            None => print!("{text}"),
        }
        Ok(doc)
    });
    match result {
        Ok(doc) if doc.passed() => 0,
        Ok(_) => {
            eprintln!("osc: one or more checks failed");
            1
        }
        Err(e) => {
            let (kind, code) = e.classify();
            eprintln!("osc: error: {kind}: {e}");
            code
        }
    }
}

fn execute(cli: &Cli) -> Result<(Document, Format), CliError> {
    let file = match &cli.flags.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            parse_settings(&text)?
        }
        None => Settings::default(),
    };
    let settings = file.overridden_by(cli.flags.settings());
    let opts = settings.run_options()?;
    let mut doc = if cli.command == Command::Sweep {
        sweep(&settings)?
    } else {
        let cfg = settings.resolve()?;
        let mut doc = single(cli.command, &cfg)?;
        doc.params = Some(echo(&cfg));
        doc
    };
    doc.metadata = Some(Metadata {
        version: env!("CARGO_PKG_VERSION").to_string(),
        dim: opts.dim,
        n_max: opts.n_max,
        tol: opts.tol,
        mode: opts.mode.to_string(),
        timestamp: (!cli.flags.no_timestamp).then(|| chrono::Utc::now().to_rfc3339()),
    });
    Ok((doc, opts.format))
}

fn echo(cfg: &Config) -> ParamsEcho {
    let p = &cfg.params;
    ParamsEcho {
        p: p.p(),
        q: p.q(),
        alpha: p.alpha(),
        beta: p.beta(),
        l: p.l(),
        beta1: cfg.hopf.map(|h| h.0),
        beta2: cfg.hopf.map(|h| h.1),
    }
}

fn require_rep_dim(dim: usize) -> Result<(), ConfigError> {
    if dim < config::MIN_REP_DIM {
        return Err(ConfigError::Invalid(format!(
            "dim must be at least {} for representation checks, got {dim}",
            config::MIN_REP_DIM
        )));
    }
    Ok(())
}

fn hopf_params(cfg: &Config) -> Result<HopfParams, CliError> {
    let (b1, b2) = cfg.hopf.ok_or(ConfigError::MissingKey("beta1"))?;
    Ok(HopfParams::from_params(&cfg.params, b1, b2)?)
}

fn single(command: Command, cfg: &Config) -> Result<Document, CliError> {
    let mut doc = Document::new(command.name());
    let params = &cfg.params;
    let tol = cfg.run.tol;
    match command {
        Command::Numbers => {
            let mut table = Table::new(&["n", "f"]);
            let oracle = params.alpha() == 1.0 && params.beta() == 0.0 && params.l() == 1.0;
            let (mut residual, mut scale) = (0.0f64, 0.0f64);
            for n in 0..=cfg.run.n_max {
                let f = f_general(n as f64, params)?;
                table.rows.push(vec![n as f64, f]);
                if oracle {
                    let o = pq_sum_oracle(n as u32, params.p(), params.q());
                    residual = residual.max((f - o).abs());
                    scale = scale.max(o.abs());
                }
            }
            if oracle {
                let mut r = crate::report::CheckReport::new();
                r.push_scaled("f(n) - sum p^-(n-1-k) q^k", residual, tol, scale);
                doc.results = r.entries;
            }
            doc.table = Some(table);
        }
        Command::Spectrum => {
            let spec = SpectrumTable::compute(*params, cfg.run.n_max)?;
            let mut table = Table::new(&["n", "lambda", "p_form", "q_form"]);
            for e in &spec.entries {
                table
                    .rows
                    .push(vec![e.n as f64, e.lambda, e.p_form, e.q_form]);
            }
            doc.results.push(crate::report::CheckEntry::new(
                "closed forms agree (relative)",
                spec.max_form_deviation(),
                tol,
            ));
            doc.results
                .extend(check_pq_inversion(params, cfg.run.n_max, tol)?.entries);
            doc.table = Some(table);
        }
        Command::RepCheck => {
            require_rep_dim(cfg.run.dim)?;
            let rep = FockRep::new(*params, cfg.run.dim)?;
            doc.results = rep.check_relations(cfg.run.mode, tol).entries;
        }
        Command::CalculusCheck => {
            doc.results = check_realization(params, &CALCULUS_EXPONENTS, tol)?.entries;
        }
        Command::HopfSolve => {
            let hp = hopf_params(cfg)?;
            let hc = hopf::solve_coefficients(&hp)?;
            let (report, diags) = hopf::check_constraints(&hc, tol);
            doc.results = report.entries;
            doc.diagnostics = diags;
            doc.coefficients = Some(hc);
        }
        Command::HopfCheck => {
            require_rep_dim(cfg.run.dim)?;
            if cfg.run.dim > config::MAX_HOPF_DIM {
                return Err(ConfigError::Invalid(format!(
                    "dim must be at most {} for hopf-check, got {}",
                    config::MAX_HOPF_DIM,
                    cfg.run.dim
                ))
                .into());
            }
            let hp = hopf_params(cfg)?;
            let hc = hopf::solve_coefficients(&hp)?;
            let rep = hp.representation(cfg.run.dim)?;
            doc.results
                .extend(hopf::check_coassociativity(&rep, &hc, tol)?.entries);
            doc.results
                .extend(hopf::check_counit(&hc, &rep, tol)?.entries);
            match hopf::check_homomorphism(&rep, &hc, tol) {
                Ok(r) => doc.results.extend(r.entries),
                Err(HopfError::Beta1Beta2Mismatch(d, l)) => doc.notes.push(format!(
                    "homomorphism not checked: beta1 - beta2 = {d}, needs l = {l}"
                )),
                Err(e) => return Err(e.into()),
            }
            let anti = hopf::check_antipode(&hc, &rep, tol)?;
            doc.results.extend(anti.mutual.entries);
            doc.diagnostics = anti.closure;
            doc.coefficients = Some(hc);
        }
        Command::Sweep => unreachable!("sweep is dispatched separately"),
    }
    Ok(doc)
}

/// Checks run at each sweep point.
fn sweep_point(cfg: &Config) -> Result<Document, CliError> {
    let mut doc = Document::new("point");
    doc.params = Some(echo(cfg));
    let params = &cfg.params;
    let tol = cfg.run.tol;
    require_rep_dim(cfg.run.dim)?;
    let rep = FockRep::new(*params, cfg.run.dim)?;
    doc.results
        .extend(rep.check_relations(cfg.run.mode, tol).entries);
    if params.alpha() != 0.0 {
        doc.results
            .extend(check_realization(params, &CALCULUS_EXPONENTS, tol)?.entries);
    }
    let spec = SpectrumTable::compute(*params, cfg.run.n_max)?;
    doc.results.push(crate::report::CheckEntry::new(
        "closed forms agree (relative)",
        spec.max_form_deviation(),
        tol,
    ));
    doc.results
        .extend(check_pq_inversion(params, cfg.run.n_max, tol)?.entries);
    if cfg.hopf.is_some() {
        let hc = hopf::solve_coefficients(&hopf_params(cfg)?)?;
        doc.results
            .extend(hopf::check_constraints(&hc, tol).0.entries);
    }
    Ok(doc)
}

fn sweep(settings: &Settings) -> Result<Document, CliError> {
    let run = settings.run_options()?;
    require_rep_dim(run.dim)?;
    let mut doc = Document::new("sweep");
    for point in settings.grid() {
        let pt = match point.resolve() {
            Ok(cfg) => sweep_point(&cfg).unwrap_or_else(|e| failed_point(echo(&cfg), &e)),
            Err(e @ ConfigError::ValidationError(_)) => failed_point(raw_echo(&point), &e.into()),
            Err(e) => return Err(e.into()),
        };
        doc.points.push(pt);
    }
    Ok(doc)
}

fn failed_point(params: ParamsEcho, e: &CliError) -> Document {
    let mut d = Document::new("point");
    d.params = Some(params);
    d.error = Some(format!("{}: {e}", e.classify().0));
    d
}

/// Echo of a single-valued point that did not validate.
fn raw_echo(s: &Settings) -> ParamsEcho {
    let first = |v: &[f64]| v.first().copied();
    ParamsEcho {
        p: first(&s.p).unwrap_or(f64::NAN),
        q: first(&s.q).unwrap_or(f64::NAN),
        alpha: first(&s.alpha).unwrap_or(f64::NAN),
        beta: first(&s.beta).or(first(&s.beta2)).unwrap_or(f64::NAN),
        l: first(&s.l).unwrap_or(f64::NAN),
        beta1: first(&s.beta1),
        beta2: first(&s.beta2),
    }
}
