//! Command-line driver: samples the configured kernel, runs one of the
//! analysis pipelines, and writes deterministic CSV artifacts plus a
//! `run.json` echo of the resolved configuration.
//!
//! Exit codes: 0 on success, 2 for configuration problems, 3 for
//! numeric/runtime failures (including failed verification checks).

mod config;

use std::fs;
use std::io::BufReader;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use boxkernel::io::{
    read_signal_csv, write_band_report_csv, write_coefficients_csv, write_expansion_csv,
    write_kernel_csv, write_modes_csv, write_signal_csv, write_spectrum_csv,
};
use boxkernel::localize::DEFAULT_BANDLIMIT_TOL;
use boxkernel::{
    apply_learned, bandlimit_check, decompose, design_coeffs, digraphon_kernel, eval_filter,
    filter_operator, filter_pointwise, fit_filter, gft, igft, induced_graphon_kernel, kv_fourier,
    norm_l2, rel_l2_error, run_all, uncertainty_residuals, BoxPolynomial, CatalogKernel,
    Complex64, DesignKernel, FilterSpec, Grid, GridKernel, KernelTag, RkhsContext,
    RkhsFiniteSignal, Signal,
};
use clap::{Parser, Subcommand};
use config::{ConfigError, RunConfig};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

#[derive(Debug, Parser)]
#[command(
    name = "boxkernel",
    version,
    about = "Spectral filtering with kernel integral operators on quadrature grids"
)]
struct Cli {
    /// Path to a JSON run configuration; built-in defaults when omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output directory (overrides the configured one).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Tolerance used by `--check-equivalence`.
    #[arg(long, global = true, default_value_t = 1e-6)]
    tol: f64,

    /// After operator-route filtering, also run the point-wise route and
    /// compare the two.
    #[arg(long, global = true)]
    check_equivalence: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, Subcommand)]
enum Command {
    /// Export eigenvalues and eigenfunctions of the configured kernel.
    Spectrum,
    /// Apply the configured polynomial filter to a signal.
    Filter,
    /// Transform a signal into the operator eigenbasis and back.
    Fourier,
    /// Induced kernels of composition powers and the directed identity.
    Graphon,
    /// Band reports and coefficient design for section expansions.
    Localize,
    /// Fit a spectral response by regularized interpolation.
    Fit,
    /// Run the built-in verification suite.
    Verify,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Spectrum => "spectrum",
            Command::Filter => "filter",
            Command::Fourier => "fourier",
            Command::Graphon => "graphon",
            Command::Localize => "localize",
            Command::Fit => "fit",
            Command::Verify => "verify",
        }
    }
}

#[derive(Debug, thiserror::Error)]
enum AppError {
    #[error("{0}")]
    Config(#[from] ConfigError),
    #[error("{0}")]
    Numeric(#[from] boxkernel::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl AppError {
    fn kind(&self) -> &'static str {
        match self {
            AppError::Config(_) => "config",
            AppError::Numeric(_) | AppError::Io(_) => "numeric",
        }
    }

    fn exit_code(&self) -> ExitCode {
        match self {
            AppError::Config(_) => ExitCode::from(2),
            AppError::Numeric(_) | AppError::Io(_) => ExitCode::from(3),
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("BOXKERNEL_LOG")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(all_gates_passed) => {
            if all_gates_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            }
        }
        Err(e) => {
            let line = serde_json::json!({ "kind": e.kind(), "message": e.to_string() });
            eprintln!("{line}");
            e.exit_code()
        }
    }
}

fn run(cli: &Cli) -> Result<bool, AppError> {
    let config = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    let out_dir = cli
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from(&config.output_dir));
    fs::create_dir_all(&out_dir)?;

    let pass = match cli.command {
        Command::Spectrum => cmd_spectrum(&config, &out_dir)?,
        Command::Filter => cmd_filter(cli, &config, &out_dir)?,
        Command::Fourier => cmd_fourier(&config, &out_dir)?,
        Command::Graphon => cmd_graphon(&config, &out_dir)?,
        Command::Localize => cmd_localize(&config, &out_dir)?,
        Command::Fit => cmd_fit(&config, &out_dir)?,
        Command::Verify => cmd_verify(&config, &out_dir)?,
    };

    let echo = serde_json::json!({ "command": cli.command.name(), "config": config });
    let mut body = serde_json::to_string_pretty(&echo).map_err(ConfigError::Parse)?;
    body.push('\n');
    fs::write(out_dir.join("run.json"), body)?;
    Ok(pass)
}

/// Number of modes to request, clamped to the grid size.
fn clamped_modes(config: &RunConfig, grid: &Arc<Grid>) -> usize {
    config.spectrum.modes.min(grid.len())
}

/// The operator the filtering pipelines act through: kernel-tagged
/// fields are used directly, graphon-tagged fields act through their
/// induced kernel.
fn filtering_kernel(config: &RunConfig, grid: &Arc<Grid>) -> Result<GridKernel, AppError> {
    let sampled = config.build_kernel(grid)?;
    match sampled.tag() {
        KernelTag::Kernel => Ok(sampled),
        KernelTag::Graphon => Ok(induced_graphon_kernel(&sampled, 1)?),
        KernelTag::Symbol => Err(ConfigError::Invalid(
            "this command needs a kernel- or graphon-tagged field; \
             symbol-tagged fields have no induced Hilbert space"
                .into(),
        )
        .into()),
    }
}

/// The input signal: read from the configured CSV path or drawn from the
/// seeded generator.
fn input_signal(
    path: Option<&str>,
    grid: &Arc<Grid>,
    seed: u64,
) -> Result<Signal, AppError> {
    match path {
        Some(path) => {
            let file = fs::File::open(path)?;
            Ok(read_signal_csv(&mut BufReader::new(file), grid)?)
        }
        None => {
            let mut rng = ChaCha20Rng::seed_from_u64(seed);
            Ok(Signal::random(grid, &mut rng))
        }
    }
}

fn write_artifact(
    dir: &Path,
    name: &str,
    body: impl FnOnce(&mut Vec<u8>) -> boxkernel::Result<()>,
) -> Result<(), AppError> {
    let mut buffer = Vec::new();
    body(&mut buffer)?;
    fs::write(dir.join(name), buffer)?;
    Ok(())
}

fn csv_quote(text: &str) -> String {
    format!("\"{}\"", text.replace('"', "\"\""))
}

fn cmd_spectrum(config: &RunConfig, out_dir: &Path) -> Result<bool, AppError> {
    let grid = config.build_grid()?;
    let kernel = config.build_kernel(&grid)?;
    let modes = clamped_modes(config, &grid);
    let dec = decompose(&kernel, Some(modes))?;
    write_artifact(out_dir, "spectrum.csv", |buf| write_spectrum_csv(buf, &dec))?;
    write_artifact(out_dir, "modes.csv", |buf| write_modes_csv(buf, &dec, None))?;
    write_artifact(out_dir, "kernel.csv", |buf| write_kernel_csv(buf, &kernel))?;
    println!(
        "spectrum: {} modes of {} ({} tag), leading eigenvalue {}",
        dec.len(),
        config.kernel.name,
        config.kernel.tag,
        dec.eigenvalue(0)
    );
    Ok(true)
}

fn cmd_filter(cli: &Cli, config: &RunConfig, out_dir: &Path) -> Result<bool, AppError> {
    let grid = config.build_grid()?;
    let kernel = filtering_kernel(config, &grid)?;
    let coeffs: Vec<Complex64> = config.filter.coefficients.iter().map(|c| c.0).collect();
    let poly = BoxPolynomial::new(coeffs);
    let spec = FilterSpec::new(poly, kernel.clone())?;
    let f = input_signal(config.filter.signal.as_deref(), &grid, config.seed)?;
    let filtered = filter_operator(&spec, &f)?;
    write_artifact(out_dir, "input.csv", |buf| write_signal_csv(buf, &f))?;
    write_artifact(out_dir, "filtered_operator.csv", |buf| {
        write_signal_csv(buf, &filtered)
    })?;

    let mut pass = true;
    if cli.check_equivalence {
        let ctx = RkhsContext::new(decompose(&kernel, None)?, config.filter.rank_tol)?;
        let pointwise = filter_pointwise(&spec, &ctx, &f)?;
        write_artifact(out_dir, "filtered_pointwise.csv", |buf| {
            write_signal_csv(buf, &pointwise)
        })?;
        let deviation = rel_l2_error(&pointwise, &filtered)?;
        pass = deviation < cli.tol;
        println!(
            "filter: route deviation {deviation:.3e} (tol {:.1e}): {}",
            cli.tol,
            if pass { "OK" } else { "EXCEEDED" }
        );
    } else {
        println!(
            "filter: applied degree-{} polynomial of the induced operator",
            spec.poly().degree().unwrap_or(0)
        );
    }
    Ok(pass)
}

fn cmd_fourier(config: &RunConfig, out_dir: &Path) -> Result<bool, AppError> {
    let grid = config.build_grid()?;
    let kernel = config.build_kernel(&grid)?;
    let modes = clamped_modes(config, &grid);
    let dec = decompose(&kernel, Some(modes))?;
    let f = input_signal(config.fourier.signal.as_deref(), &grid, config.seed)?;
    let coeffs = gft(&dec, &f)?;
    let recon = igft(&dec, &coeffs)?;
    write_artifact(out_dir, "input.csv", |buf| write_signal_csv(buf, &f))?;
    write_artifact(out_dir, "coefficients.csv", |buf| {
        write_coefficients_csv(buf, &coeffs)
    })?;
    write_artifact(out_dir, "reconstruction.csv", |buf| {
        write_signal_csv(buf, &recon)
    })?;
    let total = norm_l2(&f);
    let captured = if total > 0.0 {
        coeffs.energy().sqrt() / total
    } else {
        0.0
    };
    println!(
        "fourier: {} modes capture {captured:.6} of the signal norm",
        dec.len()
    );
    if let Some(v) = config.fourier.center_index {
        let section_coeffs = kv_fourier(&dec, v)?;
        write_artifact(out_dir, "section_coefficients.csv", |buf| {
            write_coefficients_csv(buf, &section_coeffs)
        })?;
        println!("fourier: wrote closed-form section coefficients at node {v}");
    }
    Ok(true)
}

fn cmd_graphon(config: &RunConfig, out_dir: &Path) -> Result<bool, AppError> {
    let grid = config.build_grid()?;
    let sampled = config.build_kernel(&grid)?;
    if sampled.tag() != KernelTag::Graphon {
        return Err(ConfigError::Invalid(
            "the graphon command needs a graphon-tagged field".into(),
        )
        .into());
    }
    let induced = induced_graphon_kernel(&sampled, config.graphon.box_order)?;
    let modes = clamped_modes(config, &grid);
    let dec = decompose(&induced, Some(modes))?;
    write_artifact(out_dir, "induced_spectrum.csv", |buf| {
        write_spectrum_csv(buf, &dec)
    })?;

    let mut rng = ChaCha20Rng::seed_from_u64(config.seed);
    let (_, report) = digraphon_kernel(&sampled, &mut rng, config.graphon.digraphon_trials)?;
    write_artifact(out_dir, "identity_report.csv", |buf| {
        use std::io::Write;
        writeln!(buf, "max_deviation,trials,psd,pass")?;
        writeln!(
            buf,
            "{},{},{},{}",
            report.max_deviation, report.trials, report.psd, report.pass
        )?;
        Ok(())
    })?;
    println!(
        "graphon: order-{} induced kernel, leading eigenvalue {}; two-stage identity deviation {:.3e} over {} probes (PSD: {})",
        config.graphon.box_order,
        dec.eigenvalue(0),
        report.max_deviation,
        report.trials,
        report.psd
    );
    Ok(true)
}

fn localize_centers(config: &RunConfig, n: usize) -> Vec<usize> {
    if !config.localize.center_indices.is_empty() {
        return config.localize.center_indices.clone();
    }
    let mut centers: Vec<usize> = (1..=4u32)
        .map(|k| ((2 * k - 1) as usize * n) / 8)
        .collect();
    centers.dedup();
    centers
}

fn cmd_localize(config: &RunConfig, out_dir: &Path) -> Result<bool, AppError> {
    let grid = config.build_grid()?;
    let kernel = filtering_kernel(config, &grid)?;
    let dec = decompose(&kernel, None)?;
    let centers = localize_centers(config, grid.len());

    if config.localize.targets.is_empty() {
        let coeffs: Vec<Complex64> = if config.localize.coefficients.is_empty() {
            vec![Complex64::new(1.0, 0.0); centers.len()]
        } else {
            config.localize.coefficients.iter().map(|c| c.0).collect()
        };
        let bandwidth = config.localize.bandwidth.unwrap_or(3).min(dec.len());
        let fs = RkhsFiniteSignal::new(kernel.clone(), centers.clone(), coeffs.clone())?;
        let report = uncertainty_residuals(&fs, &dec, bandwidth)?;
        let expanded = fs.expand()?;
        let limit = bandlimit_check(&expanded, &dec, bandwidth, DEFAULT_BANDLIMIT_TOL)?;
        write_artifact(out_dir, "expansion.csv", |buf| {
            write_expansion_csv(buf, &centers, &coeffs)
        })?;
        write_artifact(out_dir, "band_report.csv", |buf| {
            write_band_report_csv(buf, &report, &dec)
        })?;
        write_artifact(out_dir, "expanded_signal.csv", |buf| {
            write_signal_csv(buf, &expanded)
        })?;
        println!(
            "localize: band energies low {} / mid {} / tail {}; bandlimited at B={}: {}",
            report.energies.low,
            report.energies.mid,
            report.energies.tail,
            bandwidth,
            limit.pass
        );
    } else {
        let targets: Vec<Complex64> = config.localize.targets.iter().map(|c| c.0).collect();
        let bandwidth = config.localize.bandwidth.unwrap_or(targets.len());
        let outcome = design_coeffs(&centers, &dec, bandwidth, &targets)?;
        let fs = RkhsFiniteSignal::new(kernel.clone(), centers.clone(), outcome.coeffs.clone())?;
        let report = uncertainty_residuals(&fs, &dec, bandwidth)?;
        write_artifact(out_dir, "designed.csv", |buf| {
            write_expansion_csv(buf, &centers, &outcome.coeffs)
        })?;
        write_artifact(out_dir, "band_report.csv", |buf| {
            write_band_report_csv(buf, &report, &dec)
        })?;
        println!(
            "localize: designed {} coefficients, constraint rank {}, mid-band energy {:.6e}",
            centers.len(),
            outcome.constraint_rank,
            outcome.mid_band_energy
        );
    }
    Ok(true)
}

fn cmd_fit(config: &RunConfig, out_dir: &Path) -> Result<bool, AppError> {
    let grid = config.build_grid()?;
    let kernel = filtering_kernel(config, &grid)?;
    let q = config.fit.q.min(grid.len());
    let dec = decompose(&kernel, Some(q))?;
    let sigmas: Vec<f64> = dec.eigenvalues().to_vec();
    let targets: Vec<f64> = sigmas
        .iter()
        .map(|&s| (-(s - config.fit.sigma_c).powi(2) / config.fit.gamma).exp())
        .collect();
    let top = sigmas[0];
    let design = DesignKernel::new(
        CatalogKernel::Gaussian {
            width: config.fit.design_width,
        },
        0.0,
        top * 1.25,
    )?;
    let model = fit_filter(&sigmas, &targets, design, config.fit.lambda_reg)?;

    let mut worst = 0.0f64;
    write_artifact(out_dir, "fit_report.csv", |buf| {
        use std::io::Write;
        writeln!(buf, "index,sigma,target,fitted,residual")?;
        for (i, (&s, &y)) in sigmas.iter().zip(targets.iter()).enumerate() {
            let fitted = eval_filter(&model, s)?;
            let residual = fitted - y;
            worst = worst.max(residual.abs());
            writeln!(buf, "{i},{s},{y},{fitted},{residual}")?;
        }
        Ok(())
    })?;
    write_artifact(out_dir, "filter_curve.csv", |buf| {
        use std::io::Write;
        writeln!(buf, "u,response")?;
        for j in 0..=200u32 {
            let u = top * 1.05 * f64::from(j) / 200.0;
            writeln!(buf, "{u},{}", eval_filter(&model, u)?)?;
        }
        Ok(())
    })?;

    let f = input_signal(None, &grid, config.seed)?;
    let g = apply_learned(&model, &dec, &f)?;
    write_artifact(out_dir, "learned_input.csv", |buf| write_signal_csv(buf, &f))?;
    write_artifact(out_dir, "learned_output.csv", |buf| write_signal_csv(buf, &g))?;

    println!(
        "fit: {} abscissae, max residual {worst:.3e}, hypothesis norm squared {:.6e}",
        sigmas.len(),
        model.hypothesis_norm_sqr()?
    );
    Ok(true)
}

fn cmd_verify(config: &RunConfig, out_dir: &Path) -> Result<bool, AppError> {
    let results = run_all(config.seed);
    let mut all_pass = true;
    write_artifact(out_dir, "verify_report.csv", |buf| {
        use std::io::Write;
        writeln!(buf, "criterion,pass,detail")?;
        for r in &results {
            writeln!(buf, "{},{},{}", r.name, r.pass, csv_quote(&r.detail))?;
        }
        Ok(())
    })?;
    for r in &results {
        println!(
            "{} — {} — {}",
            if r.pass { "PASS" } else { "FAIL" },
            r.name,
            r.detail
        );
        all_pass = all_pass && r.pass;
    }
    println!(
        "verify: {}/{} checks passed",
        results.iter().filter(|r| r.pass).count(),
        results.len()
    );
    Ok(all_pass)
}
