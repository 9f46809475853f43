//! `optlim` — compute the complex volume of a boundary-parabolic
//! representation from a shadow-colored link diagram job file.

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use optlim::coloring::check_separation;
use optlim::job::{job_arc_colors, job_coloring, job_diagram_text, JobError, JobInput};
use optlim::potential::build_potential;
use optlim::volume::solution_w0;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "optlim", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Job file (JSON: diagram + arc colors + optional seeds)
    job: PathBuf,
    /// Override the job's rng seed
    #[arg(long)]
    seed: Option<u64>,
    /// Override the job's residual tolerance
    #[arg(long)]
    tolerance: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Full pipeline: parse, color, solve, verify, report vol and cs
    Run {
        #[command(flatten)]
        common: Common,
        /// Check the analytic gradient against finite differences first
        #[arg(long)]
        verify_gradient: bool,
        /// Print the symbolic potential function
        #[arg(long)]
        print_potential: bool,
        /// Write the full JSON report to this path
        #[arg(long)]
        json: Option<PathBuf>,
        /// Re-run with this many random region colorings and require agreement
        #[arg(long, value_name = "K")]
        random_colorings: Option<usize>,
    },
    /// Parse the diagram and print its structure
    Parse {
        #[command(flatten)]
        common: Common,
    },
    /// Verify the arc coloring and produce a region coloring and p
    Color {
        #[command(flatten)]
        common: Common,
    },
    /// Print the symbolic potential function of the diagram
    Potential {
        #[command(flatten)]
        common: Common,
        /// Accepted for symmetry with `run`; `potential` always prints
        #[arg(long)]
        print_potential: bool,
    },
    /// Build w0, check residuals, and report the complex volume
    Solve {
        #[command(flatten)]
        common: Common,
        /// Write the full JSON report to this path
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

fn load_job(common: &Common) -> Result<(JobInput, Option<PathBuf>), JobError> {
    let text = std::fs::read_to_string(&common.job)
        .map_err(|e| JobError::Input(format!("cannot read {}: {e}", common.job.display())))?;
    let mut job: JobInput =
        serde_json::from_str(&text).map_err(|e| JobError::Input(format!("bad job file: {e}")))?;
    if let Some(s) = common.seed {
        job.rng_seed = s;
    }
    if let Some(t) = common.tolerance {
        job.tolerance = t;
    }
    let base = common.job.parent().map(Path::to_path_buf);
    Ok((job, base))
}

fn parse_stage(
    job: &JobInput,
    base: Option<&Path>,
) -> Result<optlim::LinkDiagram, JobError> {
    let text = job_diagram_text(job, base)?;
    Ok(optlim::parse_diagram(&text)?)
}

fn fmt_c(z: Complex64) -> String {
    format!("{:.12}{:+.12}i", z.re, z.im)
}

fn verify_gradient(job: &JobInput, base: Option<&Path>) -> Result<(), JobError> {
    let diagram = parse_stage(job, base)?;
    let pf = build_potential(&diagram);
    let mut rng = ChaCha8Rng::seed_from_u64(job.rng_seed);
    let mut done = 0;
    while done < 20 {
        let w: Vec<Complex64> = (0..pf.n_vars)
            .map(|_| Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)))
            .collect();
        if w.iter().any(|x| x.norm() < 0.2) {
            continue;
        }
        let Ok(g) = pf.grad_w(&w) else { continue };
        let h = 1e-6;
        for k in 0..w.len() {
            let mut wp = w.clone();
            let mut wm = w.clone();
            wp[k] += Complex64::new(h, 0.0);
            wm[k] -= Complex64::new(h, 0.0);
            let (Ok(fp), Ok(fm)) = (pf.eval_w(&wp), pf.eval_w(&wm)) else {
                continue;
            };
            let fd = w[k] * (fp - fm) / (2.0 * h);
            let rel = (g[k] - fd).norm() / (1.0 + g[k].norm());
            if rel > 1e-5 {
                return Err(JobError::Input(format!(
                    "gradient check failed at variable w{}: analytic {} vs finite-difference {}",
                    k + 1,
                    fmt_c(g[k]),
                    fmt_c(fd)
                )));
            }
        }
        done += 1;
    }
    println!("gradient check: 20 random points agree with finite differences");
    Ok(())
}

fn random_coloring_sweep(
    job: &JobInput,
    base: Option<&Path>,
    k: usize,
    vol: f64,
    cs: f64,
) -> Result<(), JobError> {
    let diagram = parse_stage(job, base)?;
    let arcs = job_arc_colors(job, &diagram)?;
    for i in 0..k {
        let mut alt = job.clone();
        alt.region_seed = None;
        alt.p = None;
        alt.rng_seed = job.rng_seed.wrapping_add(1 + i as u64);
        let coloring = job_coloring(&alt, &diagram, arcs.clone())?;
        let rep = optlim::complex_volume(&diagram, &coloring, 1e-8)?;
        let dvol = (rep.vol - vol).abs();
        let dcs = {
            let d = (rep.cs - cs).rem_euclid(PI * PI);
            d.min(PI * PI - d)
        };
        if dvol > 1e-8 || dcs > 1e-8 {
            return Err(JobError::Pipeline(
                optlim::volume::VolumeError::Degenerate(format!(
                    "random coloring {i} disagrees: Δvol = {dvol:.3e}, Δcs = {dcs:.3e}"
                )),
            ));
        }
    }
    println!("random colorings: {k} re-colorings agree on vol and cs");
    Ok(())
}

fn cmd_run(
    common: &Common,
    verify: bool,
    print_potential: bool,
    json: Option<&Path>,
    random_colorings: Option<usize>,
) -> Result<(), JobError> {
    let (job, base) = load_job(common)?;
    let base = base.as_deref();
    if verify {
        verify_gradient(&job, base)?;
    }
    if print_potential {
        let diagram = parse_stage(&job, base)?;
        println!("W =");
        print!("{}", build_potential(&diagram));
    }
    let report = optlim::run_job(&job, base)?;
    println!(
        "diagram: {} crossings, {} regions, {} arcs",
        report.n_crossings, report.n_regions, report.n_arcs
    );
    for (k, w) in report.volume.w0.iter().enumerate() {
        println!("w0[{}] = {}", k + 1, fmt_c(*w));
    }
    println!("max residual          = {:.3e}", report.volume.max_residual);
    let max_cr = report
        .volume
        .cross_ratio_checks
        .iter()
        .map(|c| c.error)
        .fold(0.0, f64::max);
    println!("max cross-ratio error = {max_cr:.3e}");
    println!("W0  = {}", fmt_c(report.volume.w0_raw));
    println!("vol = {:.12}", report.volume.vol);
    println!("cs  = {:.12}  (mod pi^2)", report.volume.cs);
    if let Some(path) = json {
        let body = serde_json::to_string_pretty(&report)
            .map_err(|e| JobError::Input(e.to_string()))?;
        std::fs::write(path, body + "\n")
            .map_err(|e| JobError::Input(format!("cannot write {}: {e}", path.display())))?;
    }
    if let Some(k) = random_colorings {
        random_coloring_sweep(&job, base, k, report.volume.vol, report.volume.cs)?;
    }
    Ok(())
}

fn cmd_parse(common: &Common) -> Result<(), JobError> {
    let (job, base) = load_job(common)?;
    let diagram = parse_stage(&job, base.as_deref())?;
    print!("{diagram}");
    Ok(())
}

fn cmd_color(common: &Common) -> Result<(), JobError> {
    let (job, base) = load_job(common)?;
    let diagram = parse_stage(&job, base.as_deref())?;
    let arcs = job_arc_colors(&job, &diagram)?;
    let coloring = job_coloring(&job, &diagram, arcs)?;
    for (j, s) in coloring.regions.iter().enumerate() {
        println!("s{} = ({}, {})", j + 1, fmt_c(s.alpha), fmt_c(s.beta));
    }
    println!(
        "p  = ({}, {})",
        fmt_c(coloring.p.alpha),
        fmt_c(coloring.p.beta)
    );
    let violations = check_separation(
        &diagram,
        &coloring.arcs,
        &coloring.regions,
        optlim::coloring::SEPARATION_TOL,
    );
    println!(
        "separation condition: {}",
        if violations.is_empty() { "ok" } else { "violated" }
    );
    Ok(())
}

fn cmd_potential(common: &Common) -> Result<(), JobError> {
    let (job, base) = load_job(common)?;
    let diagram = parse_stage(&job, base.as_deref())?;
    println!("W =");
    print!("{}", build_potential(&diagram));
    Ok(())
}

fn cmd_solve(common: &Common, json: Option<&Path>) -> Result<(), JobError> {
    let (job, base) = load_job(common)?;
    let base = base.as_deref();
    let diagram = parse_stage(&job, base)?;
    let arcs = job_arc_colors(&job, &diagram)?;
    let coloring = job_coloring(&job, &diagram, arcs)?;
    let w0 = solution_w0(&coloring.regions, &coloring.p)?;
    for (k, w) in w0.iter().enumerate() {
        println!("w0[{}] = {}", k + 1, fmt_c(*w));
    }
    let report = optlim::complex_volume(&diagram, &coloring, job.tolerance)?;
    println!("max residual = {:.3e}", report.max_residual);
    println!("vol = {:.12}", report.vol);
    println!("cs  = {:.12}  (mod pi^2)", report.cs);
    if let Some(path) = json {
        let body = serde_json::to_string_pretty(&report)
            .map_err(|e| JobError::Input(e.to_string()))?;
        std::fs::write(path, body + "\n")
            .map_err(|e| JobError::Input(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run {
            common,
            verify_gradient,
            print_potential,
            json,
            random_colorings,
        } => cmd_run(
            common,
            *verify_gradient,
            *print_potential,
            json.as_deref(),
            *random_colorings,
        ),
        Command::Parse { common } => cmd_parse(common),
        Command::Color { common } => cmd_color(common),
        Command::Potential { common, .. } => cmd_potential(common),
        Command::Solve { common, json } => cmd_solve(common, json.as_deref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
