//! Command-line surface of the `colddamp` binary.
//!
//! Subcommands: `spectrum`, `sweep`, `temperature`, `limits`, `check`.
//! Every flag can also be set through a `COLDDAMP_`-prefixed environment
//! variable; explicit flags win over the environment, which wins over the
//! configuration file.
//!
//! Exit codes: 0 success; 1 failed invariant checks (`check`); 2 bad
//! configuration or usage; 3 approximation-domain violation (for example
//! g >= Q for a flat-spectrum variant); 4 hard invariant failure in
//! `limits`, which signals an implementation bug.

mod config_file;
mod csv_out;
mod figures;

pub use config_file::{ConfigFile, ConfigFileError};
pub use csv_out::{full_precision, write_output, RunManifest};
pub use figures::{
    fig2_config, fig2_default_grid, fig3_config, fig3_zeta_values, FIG2_GAINS, FIG2_LABELS,
    FIG3_GAINS,
};

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::checks::{self, CheckStatus};
use crate::model::{validate_config, ConfigError, UnitSystem, ValidatedConfig};
use crate::response::FrequencyGrid;
use crate::spectra::{self, SpectrumVariant};
use crate::thermo::{self, LightTerms};
use crate::{qlimits, EvalError};

/// Residual above which the `limits` commutator check is a hard failure.
const COMMUTATOR_TOL: f64 = 1e-10;
/// Margin slack for the `limits` Heisenberg floor.
const MARGIN_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum UnitsArg {
    Si,
    Normalized,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    Free,
    Simplified,
    General,
}

impl From<VariantArg> for SpectrumVariant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Free => SpectrumVariant::Free,
            VariantArg::Simplified => SpectrumVariant::Simplified,
            VariantArg::General => SpectrumVariant::General,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FigureArg {
    Fig2,
    Fig3,
}

#[derive(Debug, Parser)]
#[command(
    name = "colddamp",
    version,
    about = "Quantum and thermal noise budget of a feedback-cooled mirror",
    after_help = "Exit codes: 0 ok, 1 failed checks, 2 bad config/usage, \
                  3 approximation-domain violation, 4 invariant failure."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Configuration file (JSON)
    #[arg(long, global = true, env = "COLDDAMP_CONFIG", value_name = "PATH")]
    config: Option<PathBuf>,

    /// Output file; stdout when omitted
    #[arg(long, global = true, env = "COLDDAMP_OUT", value_name = "PATH")]
    out: Option<PathBuf>,

    /// Unit system override
    #[arg(long, global = true, env = "COLDDAMP_UNITS", value_enum)]
    units: Option<UnitsArg>,

    /// Frequency grid START:STOP:POINTS:lin|log (rad/s)
    #[arg(long, global = true, env = "COLDDAMP_GRID", value_name = "SPEC")]
    grid: Option<String>,

    /// Spectrum model
    #[arg(long, global = true, env = "COLDDAMP_VARIANT", value_enum)]
    variant: Option<VariantArg>,

    /// Bundled figure preset (hard-coded parameters)
    #[arg(long, global = true, env = "COLDDAMP_FIGURE", value_enum)]
    figure: Option<FigureArg>,

    /// Emit one-sided spectra (2x two-sided, Omega >= 0)
    #[arg(long, global = true, env = "COLDDAMP_ONE_SIDED")]
    one_sided: bool,

    /// Seed for randomized verification sweeps
    #[arg(long, global = true, env = "COLDDAMP_SEED", default_value_t = 42)]
    seed: u64,

    /// Add a dB column, 10 log10(sigma_vv / (hbar Omega_m / H_m))
    #[arg(long, global = true, env = "COLDDAMP_DB")]
    db: bool,

    /// Zero the quantum light terms (classical cold damping test hook)
    #[arg(long, global = true, env = "COLDDAMP_CLASSICAL_LIMIT")]
    classical_limit: bool,

    /// Print a ready-made gnuplot script for the emitted CSV
    #[arg(long, global = true, env = "COLDDAMP_GNUPLOT_HINT")]
    gnuplot_hint: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Velocity noise spectrum as CSV
    Spectrum,
    /// Temperature sweep over (g, zeta) as CSV
    Sweep {
        /// Comma-separated gains; defaults to the configured gain
        #[arg(long, env = "COLDDAMP_G_VALUES", value_delimiter = ',')]
        g_values: Option<Vec<f64>>,
        /// zeta range START:STOP:POINTS:lin|log
        #[arg(long, env = "COLDDAMP_ZETA_RANGE", value_name = "SPEC")]
        zeta_range: Option<String>,
    },
    /// Single-point temperature report
    Temperature,
    /// Feedback-noise quantum-limit report
    Limits,
    /// Run the invariant suite and print per-check residuals
    Check,
}

/// A failure carrying its process exit code.
#[derive(Debug)]
pub struct CliFailure {
    pub code: i32,
    pub message: String,
}

impl CliFailure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        CliFailure {
            code,
            message: message.into(),
        }
    }
}

impl From<ConfigFileError> for CliFailure {
    fn from(e: ConfigFileError) -> Self {
        CliFailure::new(2, e.to_string())
    }
}

impl From<ConfigError> for CliFailure {
    fn from(e: ConfigError) -> Self {
        CliFailure::new(2, e.to_string())
    }
}

impl From<EvalError> for CliFailure {
    fn from(e: EvalError) -> Self {
        let code = match e {
            EvalError::ZeroFrequency | EvalError::InvalidGrid(_) => 2,
            _ => 3,
        };
        CliFailure::new(code, e.to_string())
    }
}

impl From<std::io::Error> for CliFailure {
    fn from(e: std::io::Error) -> Self {
        CliFailure::new(2, format!("i/o error: {e}"))
    }
}

/// Entry point used by the binary: parse argv, dispatch, map failures to
/// exit codes.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            failure.code
        }
    }
}

fn dispatch(cli: &Cli) -> Result<i32, CliFailure> {
    match &cli.command {
        Command::Spectrum => cmd_spectrum(cli),
        Command::Sweep {
            g_values,
            zeta_range,
        } => cmd_sweep(cli, g_values.as_deref(), zeta_range.as_deref()),
        Command::Temperature => cmd_temperature(cli),
        Command::Limits => cmd_limits(cli),
        Command::Check => cmd_check(cli),
    }
}

fn units_override(cli: &Cli) -> Option<UnitSystem> {
    cli.units.map(|u| match u {
        UnitsArg::Si => UnitSystem::Si,
        UnitsArg::Normalized => UnitSystem::Normalized,
    })
}

/// Resolve the active configuration: a figure preset, a config file, or
/// (when `allow_default` is set) the built-in default.
fn resolve_config(cli: &Cli, allow_default: bool) -> Result<(ValidatedConfig, String), CliFailure> {
    if let Some(figure) = cli.figure {
        if cli.config.is_some() {
            return Err(CliFailure::new(
                2,
                "--figure presets carry their own parameters; drop --config",
            ));
        }
        if matches!(units_override(cli), Some(UnitSystem::Si)) {
            return Err(CliFailure::new(
                2,
                "--figure presets are defined in normalized units",
            ));
        }
        let cfg = match figure {
            FigureArg::Fig2 => figures::fig2_config(),
            FigureArg::Fig3 => figures::fig3_config(),
        };
        let source = match figure {
            FigureArg::Fig2 => "preset:fig2",
            FigureArg::Fig3 => "preset:fig3",
        };
        return Ok((cfg, source.to_string()));
    }
    if let Some(path) = &cli.config {
        let input = ConfigFile::load(path)?.resolve(units_override(cli))?;
        let cfg = validate_config(&input)?;
        for w in &cfg.warnings {
            eprintln!("warning: {w}");
        }
        return Ok((cfg, path.display().to_string()));
    }
    if allow_default {
        Ok((checks::default_config(), "builtin:default".to_string()))
    } else {
        Err(CliFailure::new(
            2,
            "no configuration: pass --config PATH or --figure fig2|fig3",
        ))
    }
}

fn common_flags(cli: &Cli) -> Vec<(String, String)> {
    let mut flags = vec![
        ("one_sided".to_string(), cli.one_sided.to_string()),
        ("seed".to_string(), cli.seed.to_string()),
    ];
    if let Some(u) = cli.units {
        flags.push(("units".to_string(), format!("{u:?}").to_lowercase()));
    }
    if let Some(f) = cli.figure {
        flags.push(("figure".to_string(), format!("{f:?}").to_lowercase()));
    }
    if cli.classical_limit {
        flags.push(("classical_limit".to_string(), "true".to_string()));
    }
    flags
}

fn print_gnuplot_hint(kind: &str, out: Option<&PathBuf>, db: bool) {
    let file = out
        .map(|p| p.display().to_string())
        .unwrap_or_else(|| "output.csv".to_string());
    println!("# --- gnuplot hint ---------------------------------------");
    println!("set datafile separator ','");
    println!("set datafile commentschars '#'");
    match kind {
        "spectrum" => {
            let col = if db { 3 } else { 2 };
            if !db {
                println!("set logscale y");
            }
            println!("set xlabel 'Omega (rad/s)'");
            println!(
                "set ylabel '{}'",
                if db { "sigma_VV (dB)" } else { "sigma_VV" }
            );
            println!("plot '{file}' using 1:{col} with lines notitle");
            println!("# multi-curve files carry the curve label in the last column:");
            println!(
                "# plot for [c in 'a b c d e'] '{file}' \\\n\
                 #   using 1:(strcol(4) eq c ? ${col} : NaN) with lines title c"
            );
        }
        "sweep" => {
            println!("set logscale xy");
            println!("set xlabel 'zeta'");
            println!("set ylabel 'Theta_fb / (hbar Omega_m / 2 kB)'");
            println!("plot '{file}' using 2:3 with points pt 7 ps 0.2 notitle");
        }
        _ => {}
    }
    println!("# ---------------------------------------------------------");
}

fn cmd_spectrum(cli: &Cli) -> Result<i32, CliFailure> {
    if cli.figure == Some(FigureArg::Fig3) {
        return Err(CliFailure::new(
            2,
            "fig3 is a temperature sweep; use `colddamp sweep --figure fig3`",
        ));
    }
    let (cfg, source) = resolve_config(cli, false)?;
    let fig2 = cli.figure == Some(FigureArg::Fig2);
    let variant: SpectrumVariant = cli.variant.map(Into::into).unwrap_or(if fig2 {
        SpectrumVariant::Simplified
    } else {
        SpectrumVariant::General
    });
    let grid = match &cli.grid {
        Some(spec) => FrequencyGrid::parse(spec)?,
        None if fig2 => figures::fig2_default_grid(),
        None => {
            let om = cfg.oscillator.omega_m;
            FrequencyGrid::linear(0.9 * om, 1.1 * om, 20_001)?
        }
    };
    let with_db = cli.db || fig2;
    let db_reference = cfg.spectrum_scale();

    let gains: Vec<(String, ValidatedConfig)> = if fig2 {
        FIG2_GAINS
            .iter()
            .zip(FIG2_LABELS)
            .map(|(&g, label)| Ok((label.to_string(), cfg.with_gain(g)?)))
            .collect::<Result<_, ConfigError>>()?
    } else {
        vec![(String::new(), cfg.clone())]
    };

    // evaluate everything before opening the output
    let mut curves = Vec::new();
    for (label, cfg_g) in &gains {
        let spectrum = spectra::evaluate_spectrum(cfg_g, &grid, variant)?;
        curves.push((label.clone(), spectrum));
    }

    let mut flags = common_flags(cli);
    flags.push(("variant".to_string(), variant.label().to_string()));
    flags.push((
        "grid".to_string(),
        cli.grid.clone().unwrap_or_else(|| "default".to_string()),
    ));
    flags.push(("db".to_string(), with_db.to_string()));
    let manifest = RunManifest::new("spectrum", &source, cfg.digest(), flags);

    let mut header = vec![
        format!(
            "# convention: {} symmetrized velocity noise, (m/s)^2 s",
            if cli.one_sided {
                "one-sided (2x two-sided, Omega >= 0)"
            } else {
                "two-sided"
            }
        ),
        format!(
            "# thermal_force: {}",
            if cfg.white_noise {
                "white (evaluated at omega_m)"
            } else {
                "exact (coth)"
            }
        ),
    ];
    if with_db {
        header.push(format!(
            "# db_reference: hbar*omega_m/h_m = {}",
            full_precision(db_reference)
        ));
    }
    let mut columns = String::from("omega,sigma_vv");
    if with_db {
        columns.push_str(",sigma_vv_db");
    }
    if fig2 {
        columns.push_str(",curve");
    }

    write_output(cli.out.as_deref(), &manifest, &header, |w| {
        writeln!(w, "{columns}")?;
        for (label, spectrum) in &curves {
            for (&omega, &value) in spectrum.grid.samples().iter().zip(&spectrum.values) {
                if cli.one_sided && omega <= 0.0 {
                    continue;
                }
                let value = if cli.one_sided { 2.0 * value } else { value };
                write!(w, "{},{}", full_precision(omega), full_precision(value))?;
                if with_db {
                    write!(
                        w,
                        ",{}",
                        full_precision(10.0 * (value / db_reference).log10())
                    )?;
                }
                if fig2 {
                    write!(w, ",{label}")?;
                }
                writeln!(w)?;
            }
        }
        Ok(())
    })?;
    if cli.gnuplot_hint {
        print_gnuplot_hint("spectrum", cli.out.as_ref(), with_db);
    }
    Ok(0)
}

fn cmd_sweep(
    cli: &Cli,
    g_values: Option<&[f64]>,
    zeta_range: Option<&str>,
) -> Result<i32, CliFailure> {
    if cli.figure == Some(FigureArg::Fig2) {
        return Err(CliFailure::new(
            2,
            "fig2 is a spectrum figure; use `colddamp spectrum --figure fig2`",
        ));
    }
    let (cfg, source) = resolve_config(cli, false)?;
    let fig3 = cli.figure == Some(FigureArg::Fig3);
    let gains: Vec<f64> = match g_values {
        Some(gs) => gs.to_vec(),
        None if fig3 => FIG3_GAINS.to_vec(),
        None => vec![cfg.g_diss],
    };
    let zetas: Vec<f64> = match zeta_range {
        Some(spec) => FrequencyGrid::parse(spec)?.samples().to_vec(),
        None if fig3 => figures::fig3_zeta_values(),
        None => crate::numeric::log_space(1e-3, 1e6, 901),
    };

    let mut rows = thermo::sweep_temperature(&cfg, &gains, &zetas)?;
    if fig3 {
        // per-gain minimum locus: at zeta = g the temperature reaches
        // 2 n/(1+g) + 1 in zero-point units (restricted to valid gains)
        for &zeta in &zetas {
            if zeta > cfg.q / 100.0 {
                break;
            }
            let at = cfg.with_gain(zeta)?;
            let report = thermo::optimal_temperature(&at)?;
            rows.push(thermo::SweepPoint {
                g: zeta,
                zeta,
                theta_fb_normalized: report.theta_fb_quantum_normalized,
                n_theta_fb: report.n_theta_fb,
                is_optimum: true,
            });
        }
    }

    let mut flags = common_flags(cli);
    flags.push((
        "g_values".to_string(),
        gains
            .iter()
            .map(|g| format!("{g:e}"))
            .collect::<Vec<_>>()
            .join(","),
    ));
    flags.push((
        "zeta_range".to_string(),
        zeta_range.unwrap_or("default").to_string(),
    ));
    let manifest = RunManifest::new("sweep", &source, cfg.digest(), flags);
    let header = vec![format!(
        "# normalization: theta_fb_normalized = Theta_fb / (hbar*omega_m/(2*kB))"
    )];

    write_output(cli.out.as_deref(), &manifest, &header, |w| {
        writeln!(w, "g,zeta,theta_fb_normalized,n_theta_fb,is_optimum")?;
        for r in &rows {
            writeln!(
                w,
                "{},{},{},{},{}",
                full_precision(r.g),
                full_precision(r.zeta),
                full_precision(r.theta_fb_normalized),
                full_precision(r.n_theta_fb),
                r.is_optimum
            )?;
        }
        Ok(())
    })?;
    if cli.gnuplot_hint {
        print_gnuplot_hint("sweep", cli.out.as_ref(), false);
    }
    Ok(0)
}

fn cmd_temperature(cli: &Cli) -> Result<i32, CliFailure> {
    let (cfg, source) = resolve_config(cli, false)?;
    let mut report = thermo::temperature_report(&cfg)?;
    if cli.classical_limit {
        let zeroed = thermo::cold_damping_temperature(&cfg, LightTerms::Zeroed)?;
        report.theta_fb_quantum = zeroed;
        report.theta_fb_quantum_normalized = zeroed / cfg.zero_point_temperature();
        report.n_theta_fb =
            cfg.constants.kb * zeroed / (cfg.constants.hbar * cfg.oscillator.omega_m) - 0.5;
    }

    let kelvin_note = match cfg.units {
        UnitSystem::Si => "K",
        UnitSystem::Normalized => "hbar=kB=1 units",
    };
    println!("temperature report ({kelvin_note}; normalized to hbar*omega_m/(2 kB))");
    println!(
        "  zeta                    = {}",
        full_precision(report.zeta)
    );
    println!("  g (dissipative)         = {}", full_precision(cfg.g_diss));
    println!(
        "  n_theta                 = {}",
        full_precision(report.n_theta)
    );
    println!(
        "  theta_m                 = {}  (normalized {})",
        full_precision(report.theta_m),
        full_precision(report.theta_m_normalized)
    );
    println!(
        "  theta_fb_classical      = {}  (normalized {})",
        full_precision(report.theta_fb_classical),
        full_precision(report.theta_fb_classical_normalized)
    );
    println!(
        "  theta_fb_quantum        = {}  (normalized {})",
        full_precision(report.theta_fb_quantum),
        full_precision(report.theta_fb_quantum_normalized)
    );
    println!(
        "  n_theta_fb              = {}",
        full_precision(report.n_theta_fb)
    );
    if report.classical_below_zero_point {
        println!(
            "  note: classical law predicts cooling below the zero-point \
             temperature; only the quantum result is physical there"
        );
    }

    if cli.out.is_some() {
        let mut flags = common_flags(cli);
        flags.push((
            "classical_limit".to_string(),
            cli.classical_limit.to_string(),
        ));
        flags.dedup();
        let manifest = RunManifest::new("temperature", &source, cfg.digest(), flags);
        write_output(cli.out.as_deref(), &manifest, &[], |w| {
            writeln!(
                w,
                "zeta,g,n_theta,theta_m,theta_fb_classical,theta_fb_quantum,n_theta_fb,\
                 theta_m_normalized,theta_fb_classical_normalized,theta_fb_quantum_normalized,\
                 classical_below_zero_point"
            )?;
            writeln!(
                w,
                "{},{},{},{},{},{},{},{},{},{},{}",
                full_precision(report.zeta),
                full_precision(cfg.g_diss),
                full_precision(report.n_theta),
                full_precision(report.theta_m),
                full_precision(report.theta_fb_classical),
                full_precision(report.theta_fb_quantum),
                full_precision(report.n_theta_fb),
                full_precision(report.theta_m_normalized),
                full_precision(report.theta_fb_classical_normalized),
                full_precision(report.theta_fb_quantum_normalized),
                report.classical_below_zero_point
            )?;
            Ok(())
        })?;
    }
    Ok(0)
}

fn cmd_limits(cli: &Cli) -> Result<i32, CliFailure> {
    let (cfg, source) = resolve_config(cli, false)?;
    let report = qlimits::noise_report(&cfg)?;

    // commutator residual across a frequency sweep, not just Omega_m
    let mut max_residual = report.commutator.residual;
    for omega in crate::numeric::log_space(1e-3, 1e3, 100) {
        let check = qlimits::verify_feedback_commutator(&cfg, omega * cfg.oscillator.omega_m)?;
        max_residual = max_residual.max(check.residual);
    }

    let commutator_ok = max_residual <= COMMUTATOR_TOL;
    let margin_ok = report.pure_reactive || report.heisenberg_margin >= 1.0 - MARGIN_TOL;

    println!(
        "feedback noise limits at Omega_m = {}",
        full_precision(report.omega)
    );
    println!(
        "  commutator coefficient  = {}  (target 2*hbar*Omega*H_fb = {})",
        full_precision(report.commutator.coefficient),
        full_precision(report.commutator.target)
    );
    println!(
        "  commutator residual     = {:.3e} over 100 frequencies  [{}]",
        max_residual,
        if commutator_ok { "PASS" } else { "FAIL" }
    );
    if report.pure_reactive {
        println!("  feedback noise temp     = +inf (pure reactive feedback: the");
        println!("    zero-noise optimum is an infinite-squeezing limit)");
    } else {
        println!(
            "  theta_fb_in             = {}  (normalized {})",
            full_precision(report.theta_fb_in),
            full_precision(report.heisenberg_margin)
        );
        println!(
            "  heisenberg margin       = {}  [{}]",
            full_precision(report.heisenberg_margin),
            if margin_ok { "PASS" } else { "FAIL" }
        );
        println!(
            "  margin (full cavity)    = {}",
            full_precision(report.heisenberg_margin_general)
        );
    }
    let prescription = match qlimits::optimize_squeezing(&cfg) {
        Ok(p) => {
            println!("  squeezing prescription saturating the bound:");
            println!(
                "    s11 = {}, s22 = {}, s12 = {}",
                full_precision(p.s11),
                full_precision(p.s22),
                full_precision(p.s12)
            );
            println!(
                "    xi = {} (e^-xi = {}), squeezed quadrature at {} deg from phase",
                full_precision(p.xi),
                full_precision((-p.xi).exp()),
                full_precision(p.quadrature_angle.to_degrees())
            );
            Some(p)
        }
        Err(EvalError::PureReactiveFeedback) => {
            println!("  squeezing prescription: infinite squeezing (H_fb = 0)");
            None
        }
        Err(e) => return Err(e.into()),
    };

    if cli.out.is_some() {
        let flags = common_flags(cli);
        let manifest = RunManifest::new("limits", &source, cfg.digest(), flags);
        write_output(cli.out.as_deref(), &manifest, &[], |w| {
            writeln!(
                w,
                "omega,commutator_coefficient,commutator_target,commutator_max_residual,\
                 sigma_ff_resonance,theta_fb_in,heisenberg_margin,heisenberg_margin_general,\
                 pure_reactive,s11,s22,s12,xi,quadrature_angle_deg"
            )?;
            let (s11, s22, s12, xi, angle) = match &prescription {
                Some(p) => (p.s11, p.s22, p.s12, p.xi, p.quadrature_angle.to_degrees()),
                None => (f64::NAN, f64::NAN, f64::NAN, f64::INFINITY, f64::NAN),
            };
            writeln!(
                w,
                "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
                full_precision(report.omega),
                full_precision(report.commutator.coefficient),
                full_precision(report.commutator.target),
                full_precision(max_residual),
                full_precision(report.sigma_ff_resonance),
                full_precision(report.theta_fb_in),
                full_precision(report.heisenberg_margin),
                full_precision(report.heisenberg_margin_general),
                report.pure_reactive,
                full_precision(s11),
                full_precision(s22),
                full_precision(s12),
                full_precision(xi),
                full_precision(angle)
            )?;
            Ok(())
        })?;
    }

    if !(commutator_ok && margin_ok) {
        return Err(CliFailure::new(
            4,
            "hard invariant failed (commutator or Heisenberg floor): this \
             indicates an implementation bug, not a bad configuration",
        ));
    }
    Ok(0)
}

fn cmd_check(cli: &Cli) -> Result<i32, CliFailure> {
    let (cfg, source) = resolve_config(cli, true)?;
    println!("invariant suite on {source} (seed {})", cli.seed);
    let outcomes = checks::run_all(&cfg, cli.seed);
    let mut failed = 0usize;
    let mut skipped = 0usize;
    for o in &outcomes {
        let status = match o.status {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => {
                failed += 1;
                "FAIL"
            }
            CheckStatus::Skipped => {
                skipped += 1;
                "SKIP"
            }
        };
        if o.status == CheckStatus::Skipped {
            println!("CHECK {:<34} {status}  ({})", o.name, o.note);
        } else {
            println!(
                "CHECK {:<34} {status}  residual={:.3e} tol={:.3e}  ({})",
                o.name, o.residual, o.tolerance, o.note
            );
        }
    }
    println!(
        "SUMMARY: {} passed, {failed} failed, {skipped} skipped",
        outcomes.len() - failed - skipped
    );
    if failed > 0 {
        return Err(CliFailure::new(
            1,
            format!("{failed} invariant check(s) failed"),
        ));
    }
    Ok(0)
}
