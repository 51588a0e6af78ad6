//! Subcommand dispatch: builds the configuration, runs the requested
//! experiment, writes artifacts and the run manifest.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use obversim_core::dissipation::{integral_fluctuation_check, mean_omega};
use obversim_core::fluctuation::{esft_fit, log_ratio_points, symmetry_plane_search, TableEntry};
use obversim_core::quadrature::fibonacci_grid;
use obversim_core::Rotation;

use crate::config::{CliError, ExperimentConfig};
use crate::output::{fmt17, write_artifact, write_json, write_manifest, Csv, OutputFile, RunManifest};
use crate::parallel::{omega_histogram_parallel, table_matrix_parallel, thread_pool};

/// Tolerance for declaring a density normalised in `check-density`.
const NORMALIZATION_TOL: f64 = 1e-6;

#[derive(Parser)]
#[command(
    name = "obversim",
    version,
    about = "Dissipation production and fluctuation-theorem experiments on the Bloch sphere"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Shared options; every flag overrides the same key in the config file.
#[derive(Args)]
pub struct CommonOpts {
    /// Flat key=value configuration file
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Density: uniform, 1a, 1b, 2a, 2b, 3 or custom
    #[arg(long)]
    pub case: Option<String>,
    /// Case 1b frame axis, three comma-separated reals
    #[arg(long, allow_hyphen_values = true)]
    pub u: Option<String>,
    /// Case 1b frame angle in radians
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    /// Custom density polar exponent
    #[arg(long = "polar-exponent")]
    pub polar_exponent: Option<String>,
    /// Custom density harmonics, k:a:b triples joined by ';'
    #[arg(long, allow_hyphen_values = true)]
    pub coefficients: Option<String>,
    /// Custom density normalisation constant (omit to derive it)
    #[arg(long, allow_hyphen_values = true)]
    pub normalization: Option<String>,
    /// Rotation axis, three comma-separated reals
    #[arg(long, allow_hyphen_values = true)]
    pub axis: Option<String>,
    /// Rotation angle in radians
    #[arg(long, allow_hyphen_values = true)]
    pub angle: Option<String>,
    /// Time grid start:stop:steps (radians, inclusive)
    #[arg(long = "t-grid", allow_hyphen_values = true)]
    pub t_grid: Option<String>,
    /// Sample count
    #[arg(long)]
    pub n: Option<String>,
    /// RNG seed
    #[arg(long)]
    pub seed: Option<String>,
    /// Histogram bin width
    #[arg(long = "bin-width")]
    pub bin_width: Option<String>,
    /// Polar quadrature nodes
    #[arg(long = "n-theta")]
    pub n_theta: Option<String>,
    /// Azimuthal quadrature nodes
    #[arg(long = "n-phi")]
    pub n_phi: Option<String>,
    /// Output directory
    #[arg(long)]
    pub out: Option<String>,
}

impl CommonOpts {
    fn resolve(&self) -> Result<ExperimentConfig, CliError> {
        let mut overrides: Vec<(&str, String)> = Vec::new();
        let mut push = |key: &'static str, v: &Option<String>| {
            if let Some(v) = v {
                overrides.push((key, v.clone()));
            }
        };
        push("case", &self.case);
        push("u", &self.u);
        push("beta", &self.beta);
        push("polar_exponent", &self.polar_exponent);
        push("coefficients", &self.coefficients);
        push("normalization", &self.normalization);
        push("axis", &self.axis);
        push("angle", &self.angle);
        push("t_grid", &self.t_grid);
        push("n", &self.n);
        push("seed", &self.seed);
        push("bin_width", &self.bin_width);
        push("n_theta", &self.n_theta);
        push("n_phi", &self.n_phi);
        push("out", &self.out);
        ExperimentConfig::from_sources(self.config.as_deref(), &overrides)
    }
}

#[derive(Subcommand)]
pub enum Command {
    /// Report normalisation and non-negativity of the configured density
    CheckDensity(CommonOpts),
    /// Sampled histogram of the dissipation production
    OmegaHist(CommonOpts),
    /// Fit the fluctuation-theorem log-ratio line to a sampled histogram
    Esft(CommonOpts),
    /// Mean dissipation and integral-identity value over a time grid
    MeanCurve(CommonOpts),
    /// Forward/backward mean dissipation over a time grid
    Asymmetry(CommonOpts),
    /// Predicted and empirical verdicts for every built-in case and axis
    Table2(CommonOpts),
    /// Search for a symmetry plane containing the rotation axis
    Symmetry(CommonOpts),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::CheckDensity(_) => "check-density",
            Command::OmegaHist(_) => "omega-hist",
            Command::Esft(_) => "esft",
            Command::MeanCurve(_) => "mean-curve",
            Command::Asymmetry(_) => "asymmetry",
            Command::Table2(_) => "table2",
            Command::Symmetry(_) => "symmetry",
        }
    }

    fn opts(&self) -> &CommonOpts {
        match self {
            Command::CheckDensity(o)
            | Command::OmegaHist(o)
            | Command::Esft(o)
            | Command::MeanCurve(o)
            | Command::Asymmetry(o)
            | Command::Table2(o)
            | Command::Symmetry(o) => o,
        }
    }
}

/// Entry point; returns the process exit code.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // --help/--version land here with a zero exit code
            let code = if e.exit_code() == 0 { 0 } else { 1 };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("obversim: {e}");
            e.exit_code()
        }
    }
}

pub fn run(command: &Command) -> Result<(), CliError> {
    let start = Instant::now();
    let cfg = command.opts().resolve()?;
    let pool = thread_pool()?;
    let (outputs, check_failure) = pool.install(|| execute(command, &cfg))?;

    let manifest = RunManifest {
        version: env!("CARGO_PKG_VERSION").to_string(),
        subcommand: command.name().to_string(),
        config: cfg.resolved().clone(),
        duration_seconds: start.elapsed().as_secs_f64(),
        outputs,
    };
    write_manifest(&cfg.out_dir(), &manifest)?;
    match check_failure {
        Some(msg) => Err(CliError::CheckFailed(msg)),
        None => Ok(()),
    }
}

type Artifacts = (Vec<OutputFile>, Option<String>);

fn execute(command: &Command, cfg: &ExperimentConfig) -> Result<Artifacts, CliError> {
    match command {
        Command::CheckDensity(_) => check_density(cfg),
        Command::OmegaHist(_) => omega_hist(cfg),
        Command::Esft(_) => esft(cfg),
        Command::MeanCurve(_) => mean_curve_cmd(cfg),
        Command::Asymmetry(_) => asymmetry_cmd(cfg),
        Command::Table2(_) => table2(cfg),
        Command::Symmetry(_) => symmetry(cfg),
    }
}

fn check_density(cfg: &ExperimentConfig) -> Result<Artifacts, CliError> {
    let d = cfg.density()?;
    let res = cfg.resolution()?;
    let norm = d.normalization_integral(res);
    let min_value = fibonacci_grid(2000)
        .iter()
        .map(|p| d.evaluate(p))
        .fold(f64::INFINITY, f64::min);
    let normalized = (norm - 1.0).abs() <= NORMALIZATION_TOL;
    let nonnegative = min_value >= -1e-12;
    let report = json!({
        "case": d.label(),
        "normalization": norm,
        "min_value": min_value,
        "supremum_bound": d.supremum_estimate(),
        "normalized": normalized,
        "nonnegative": nonnegative,
    });
    let out = write_json(&cfg.out_dir(), "check_density.json", &report)?;
    let failure = if normalized && nonnegative {
        None
    } else {
        Some(format!(
            "density '{}' normalization {norm:.12} (min value {min_value:.3e})",
            d.label()
        ))
    };
    Ok((vec![out], failure))
}

fn omega_hist(cfg: &ExperimentConfig) -> Result<Artifacts, CliError> {
    let d = cfg.density()?;
    let r = cfg.rotation()?;
    let h = omega_histogram_parallel(&d, &r, cfg.n()?, cfg.seed()?, cfg.bin_width()?)?;
    let mut csv = Csv::new("bin_center,count,probability_density");
    let scale = 1.0 / (h.total as f64 * h.bin_width);
    for (idx, count) in h.bins() {
        csv.row(&[
            fmt17(h.bin_center(idx)),
            count.to_string(),
            fmt17(count as f64 * scale),
        ]);
    }
    let out = write_artifact(&cfg.out_dir(), "omega_hist.csv", &csv.into_bytes())?;
    Ok((vec![out], None))
}

fn esft(cfg: &ExperimentConfig) -> Result<Artifacts, CliError> {
    let d = cfg.density()?;
    let r = cfg.rotation()?;
    let h = omega_histogram_parallel(&d, &r, cfg.n()?, cfg.seed()?, cfg.bin_width()?)?;
    let report = esft_fit(&h);
    let dir = cfg.out_dir();

    let mut csv = Csv::new("omega,log_ratio,weight");
    for (omega, log_ratio, weight) in log_ratio_points(&h) {
        csv.row(&[fmt17(omega), fmt17(log_ratio), fmt17(weight)]);
    }
    let csv_out = write_artifact(&dir, "log_ratio.csv", &csv.into_bytes())?;

    let json_out = write_json(
        &dir,
        "esft.json",
        &json!({
            "slope": report.slope,
            "intercept": report.intercept,
            "r_squared": report.r_squared,
            "usable_pairs": report.usable_pairs,
            "verdict": report.verdict.to_string(),
            "slope_tolerance": report.slope_tolerance,
            "intercept_tolerance": report.intercept_tolerance,
            "r_squared_min": report.r_squared_min,
        }),
    )?;
    Ok((vec![csv_out, json_out], None))
}

fn mean_curve_cmd(cfg: &ExperimentConfig) -> Result<Artifacts, CliError> {
    let d = cfg.density()?;
    let axis = cfg.axis()?;
    let res = cfg.resolution()?;
    let mut csv = Csv::new("t,mean_omega,ifr_value");
    for t in cfg.t_grid()? {
        let r = Rotation::from_axis_angle(axis, t)
            .map_err(|e| CliError::Validation(format!("axis: {e}")))?;
        csv.row(&[
            fmt17(t),
            fmt17(mean_omega(&d, &r, res)),
            fmt17(integral_fluctuation_check(&d, &r, res)),
        ]);
    }
    let out = write_artifact(&cfg.out_dir(), "mean_curve.csv", &csv.into_bytes())?;
    Ok((vec![out], None))
}

fn asymmetry_cmd(cfg: &ExperimentConfig) -> Result<Artifacts, CliError> {
    let d = cfg.density()?;
    let axis = cfg.axis()?;
    let res = cfg.resolution()?;
    let mut csv = Csv::new("t,forward_mean,backward_mean,difference");
    for t in cfg.t_grid()? {
        let fwd = Rotation::from_axis_angle(axis, t)
            .map_err(|e| CliError::Validation(format!("axis: {e}")))?;
        let bwd = Rotation::from_axis_angle(axis, -t)
            .map_err(|e| CliError::Validation(format!("axis: {e}")))?;
        let f = mean_omega(&d, &fwd, res);
        let b = mean_omega(&d, &bwd, res);
        csv.row(&[fmt17(t), fmt17(f), fmt17(b), fmt17(f - b)]);
    }
    let out = write_artifact(&cfg.out_dir(), "asymmetry.csv", &csv.into_bytes())?;
    Ok((vec![out], None))
}

/// One `table2` CSV row; fit columns are empty for degenerate entries.
pub fn table_entry_row(e: &TableEntry) -> Vec<String> {
    let (slope, intercept, r2, pairs) = match &e.report {
        Some(rep) => (
            fmt17(rep.slope),
            fmt17(rep.intercept),
            fmt17(rep.r_squared),
            rep.usable_pairs.to_string(),
        ),
        None => (String::new(), String::new(), String::new(), String::new()),
    };
    vec![
        e.case_label.to_string(),
        e.axis_label.to_string(),
        if e.predicted { "yes" } else { "no" }.to_string(),
        e.empirical.to_string(),
        slope,
        intercept,
        r2,
        pairs,
        fmt17(e.symmetry_residual),
    ]
}

pub const TABLE2_HEADER: &str =
    "case,axis,predicted,empirical,slope,intercept,r_squared,usable_pairs,symmetry_residual";

fn table2(cfg: &ExperimentConfig) -> Result<Artifacts, CliError> {
    let entries = table_matrix_parallel(cfg.angle()?, cfg.n()?, cfg.seed()?)?;
    let mut csv = Csv::new(TABLE2_HEADER);
    for e in &entries {
        csv.row(&table_entry_row(e));
    }
    let out = write_artifact(&cfg.out_dir(), "table2.csv", &csv.into_bytes())?;
    Ok((vec![out], None))
}

fn symmetry(cfg: &ExperimentConfig) -> Result<Artifacts, CliError> {
    let d = cfg.density()?;
    let verdict = symmetry_plane_search(&d, cfg.axis()?)?;
    let report = json!({
        "predicted": verdict.predicted,
        "plane_normal": verdict.plane_normal,
        "residual": verdict.residual,
    });
    let out = write_json(&cfg.out_dir(), "symmetry.json", &report)?;
    Ok((vec![out], None))
}
