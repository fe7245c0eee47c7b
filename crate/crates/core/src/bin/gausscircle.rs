use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use gausscircle::asymptotics::{compare_t_vs_f, f_bessel, f_quadrature, BesselForm, PsiMode, TruncationParams};
use gausscircle::counting::{count_lattice, CountMethod};
use gausscircle::harness::{
    fit_exponent, read_csv, resolve_output, run_suite, scan, sign_changes, unix_millis, write_scan, Config, Overrides,
    ScanOptions, Suite,
};
use gausscircle::near_far::{cutoff_r, near_far_report, SplitParams};
use gausscircle::{Error, Result};

#[derive(Parser)]
#[command(name = "gausscircle", version, about = "Lattice points in circles")]
struct Cli {
    /// Flat key = value config file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Kernel modulus Q (odd, >= 3).
    #[arg(long = "q", global = true)]
    q: Option<u64>,
    /// Near-far split parameter in (0, 1/8].
    #[arg(long, global = true)]
    eta: Option<f64>,
    /// Exponent slack in R = floor(t^(1/4 + epsilon)).
    #[arg(long, global = true)]
    epsilon: Option<f64>,
    /// Quadrature tolerance.
    #[arg(long, global = true)]
    quad_tol: Option<f64>,
    /// Worker threads for scans.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Brute,
    Rows,
    Kernel,
}

impl From<Method> for CountMethod {
    fn from(m: Method) -> Self {
        match m {
            Method::Brute => CountMethod::Brute,
            Method::Rows => CountMethod::Rows,
            Method::Kernel => CountMethod::Kernel,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Form {
    Printed,
    Expanded,
}

#[derive(Subcommand)]
enum Command {
    /// Count lattice points in the disk of radius sqrt(t).
    Count {
        /// Squared radius.
        #[arg(long, allow_negative_numbers = true)]
        t: i64,
        /// Counting method.
        #[arg(long, value_enum, default_value = "rows")]
        method: Method,
    },
    /// Scan P(t) - pi t over a range of t into a CSV file.
    Scan {
        /// First t.
        #[arg(long)]
        t_min: u64,
        /// Last t (inclusive).
        #[arg(long)]
        t_max: u64,
        /// Step between samples.
        #[arg(long, default_value_t = 1)]
        stride: u64,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
        /// Counting method.
        #[arg(long, value_enum, default_value = "rows")]
        method: Method,
        /// Write 0 in the wall_ns column.
        #[arg(long)]
        no_timing: bool,
        /// Allow brute-force scans past t = 10^6.
        #[arg(long)]
        slow_ok: bool,
    },
    /// Fit the growth exponent of |P(t) - pi t| from a scan CSV.
    FitExponent {
        /// Scan CSV written by `scan`.
        csv: PathBuf,
        /// Drop dyadic blocks with fewer samples.
        #[arg(long, default_value_t = 1)]
        min_block_samples: usize,
    },
    /// Bessel-sum and disk-quadrature approximations to P(t).
    Approx {
        /// Squared radius.
        #[arg(long)]
        t: u64,
        /// Shift cutoff in mu (default Q^2).
        #[arg(long)]
        mu_max: Option<u64>,
        /// Shift cutoff in nu (default Q^2).
        #[arg(long)]
        nu_max: Option<u64>,
        /// Bessel-sum form.
        #[arg(long, value_enum, default_value = "printed")]
        form: Form,
        /// Also evaluate the disk formula by quadrature and the polygon functional (t <= 400).
        #[arg(long)]
        quadrature: bool,
    },
    /// Near-circle sums, L(t, R) and the sawtooth identity.
    Nearfar {
        /// Squared radius (2 <= t <= 10^6).
        #[arg(long)]
        t: u64,
        /// Near cutoff R (default floor(t^(1/4 + epsilon))).
        #[arg(long)]
        r: Option<u64>,
        /// Largest mu in L(t, R).
        #[arg(long, default_value_t = 9)]
        mu_max: u64,
    },
    /// Run a verification suite.
    Verify {
        /// em1d, em2d, kernel-identity, bessel, approximation, nearfar or all.
        #[arg(long)]
        suite: String,
        /// JSON report path (default verify-<suite>.json).
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

fn load_config(cli: &Cli) -> Result<Config> {
    let base = match &cli.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    base.with_overrides(&Overrides {
        default_q: cli.q,
        default_eta: cli.eta,
        default_epsilon: cli.epsilon,
        quad_tol: cli.quad_tol,
        jobs: cli.jobs,
    })
}

fn run(cli: Cli) -> Result<ExitCode> {
    let cfg = load_config(&cli)?;
    let mut stdout = std::io::stdout().lock();
    match cli.command {
        Command::Count { t, method } => {
            if t < 0 {
                return Err(Error::Domain(format!("t must be non-negative, got {t}")));
            }
            let r = count_lattice(t as u64, method.into())?;
            writeln!(stdout, "P({}) = {}", r.t, r.count)?;
        }
        Command::Scan {
            t_min,
            t_max,
            stride,
            out,
            method,
            no_timing,
            slow_ok,
        } => {
            let started = unix_millis();
            let opts = ScanOptions {
                method: method.into(),
                jobs: cfg.jobs,
                timing: !no_timing,
                slow_ok,
            };
            let records = scan(t_min, t_max, stride, &opts)?;
            let path = resolve_output(&out);
            let manifest = write_scan(&path, &records, std::env::args().collect(), &cfg, started)?;
            writeln!(stdout, "wrote {} rows to {}", records.len(), path.display())?;
            writeln!(stdout, "sign changes: {}", sign_changes(&records))?;
            writeln!(stdout, "digest: {}", manifest.output_digest)?;
        }
        Command::FitExponent { csv, min_block_samples } => {
            let records = read_csv(std::fs::File::open(&csv)?)?;
            let fit = fit_exponent(&records, min_block_samples)?;
            writeln!(stdout, "slope = {:.6} +- {:.6}", fit.slope, fit.stderr)?;
            writeln!(stdout, "band = [{:.6}, {:.6}]", fit.band.0, fit.band.1)?;
            writeln!(stdout, "{:>4} {:>8} {:>12} {:>14} {:>10}", "k", "samples", "t_at_max", "max|delta|", "residual")?;
            for b in &fit.blocks {
                writeln!(
                    stdout,
                    "{:>4} {:>8} {:>12} {:>14.6} {:>10.4}",
                    b.k, b.samples, b.t_at_max, b.max_abs, b.residual
                )?;
            }
        }
        Command::Approx {
            t,
            mu_max,
            nu_max,
            form,
            quadrature,
        } => {
            let q = cfg.default_q;
            let params = TruncationParams::new(q, q * q, mu_max.unwrap_or(q * q), nu_max.unwrap_or(q * q))?;
            let form = match form {
                Form::Printed => BesselForm::Printed,
                Form::Expanded => BesselForm::Expanded,
            };
            let r = f_bessel(t, &params, form)?;
            writeln!(stdout, "P({t}) = {}", r.exact_p)?;
            writeln!(stdout, "F_bessel = {:.10} (Q = {q}, mu_max = {}, nu_max = {})", r.approx_value, params.mu_max, params.nu_max)?;
            writeln!(stdout, "abs_error = {:.6}, abs_error Q / sqrt(t) = {:.6}", r.abs_error, r.normalized_error)?;
            if quadrature {
                let f = f_quadrature(t, &params, PsiMode::Exact, cfg.quad_tol)?;
                writeln!(stdout, "F_quadrature = {:.10} (+- {:.1e})", f.value.re, f.error_estimate)?;
                let c = compare_t_vs_f(t, &params, cfg.quad_tol)?;
                writeln!(stdout, "T_polygon = {:.10}", c.t_value)?;
                writeln!(stdout, "|T - F| = {:.6}, ratio to sqrt(t) ln^2 Q / Q = {:.6}", c.difference, c.ratio)?;
            }
        }
        Command::Nearfar { t, r, mu_max } => {
            let split = SplitParams::new(t, cfg.default_eta)?;
            let r = r.unwrap_or_else(|| cutoff_r(t, cfg.default_epsilon));
            let rep = near_far_report(t, r, mu_max, cfg.quad_tol)?;
            writeln!(stdout, "t = {t}, R = {r}, tau = {}, alpha = {}", split.tau, split.alpha)?;
            writeln!(
                stdout,
                "region: m in [{}, {}], n in [{}, {}]",
                split.region.m_lo, split.region.m_hi, split.region.n_lo, split.region.n_hi
            )?;
            match rep.e_direct {
                Some(d) => writeln!(stdout, "E_direct = {d:.10}")?,
                None => writeln!(stdout, "E_direct = (skipped, t > 100)")?,
            }
            writeln!(stdout, "E_reduced = {:.10}", rep.e_reduced)?;
            writeln!(stdout, "L = {:.10}", rep.l_value)?;
            writeln!(stdout, "psi_sum = {:.10}", rep.psi_sum)?;
            writeln!(stdout, "pick_check = {:.10}", rep.pick_residual)?;
        }
        Command::Verify { suite, report } => {
            let suite: Suite = suite.parse()?;
            let rep = run_suite(suite, &cfg)?;
            for c in &rep.checks {
                let tag = if c.pass { "PASS" } else { "FAIL" };
                writeln!(stdout, "{tag} {:<60} {:.3e} <= {:.1e}", c.name, c.residual, c.bound)?;
            }
            let path = resolve_output(&report.unwrap_or_else(|| PathBuf::from(format!("verify-{}.json", suite.name()))));
            std::fs::write(&path, serde_json::to_string_pretty(&rep)?)?;
            let passed = rep.checks.iter().filter(|c| c.pass).count();
            writeln!(stdout, "{}: {passed}/{} checks passed; report {}", rep.suite, rep.checks.len(), path.display())?;
            if !rep.pass {
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
