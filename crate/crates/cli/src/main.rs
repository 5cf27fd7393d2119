//! Command-line interface for the peaceable queens engine.

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use peaceable::discrete::{
    evaluate_construction, exact_peaceable_with_witness, Board, CellMode, MAX_EXACT_N,
};
use peaceable::families::{
    self, find, locus, sampling, verify_family, FamilySpec, ParamPoint,
};
use peaceable::geometry::black_region;
use peaceable::optimize::{
    check_local_optimum, constants_csv, constants_table, equal_area_root, maximize,
    render_constants_table, EvalMode, MaximizeOptions, Objective,
};
use peaceable::rational::{format_rational, parse_rational, to_f64};
use peaceable::render::{to_svg, Scene};
use peaceable::report::{run_all, ReportConfig};

#[derive(Parser)]
#[command(
    name = "peaceable",
    about = "Exact geometry and optimization for the continuous peaceable queens problem",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Auto,
    Engine,
    Closed,
}

#[derive(Args)]
struct FamilyArgs {
    /// Family name (see `peaceable families`).
    #[arg(long)]
    family: String,
    /// Comma-separated assignments, e.g. a=1/4,b=1/3. Rationals are parsed
    /// exactly; decimals are snapped at 1e-12.
    #[arg(long)]
    params: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// List the family registry.
    Families {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Evaluate white/black areas at a parameter point.
    Eval {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_enum, default_value = "auto")]
        mode: Mode,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Maximize min(white, black) over the family domain.
    Optimize {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        grid: usize,
        #[arg(long, default_value_t = 16)]
        starts: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, value_enum, default_value = "auto")]
        mode: Mode,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Audit engine areas against the closed forms.
    Verify {
        #[command(flatten)]
        family: FamilyArgs,
        /// Number of random in-domain sample points (when --params absent).
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check a printed equal-area locus branch through the engine.
    Locus {
        #[arg(long)]
        family: String,
        /// Branch id (see error message for the available ids).
        #[arg(long)]
        case: String,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Exact peaceable-queens value for a small board.
    Solve {
        #[arg(long)]
        n: u32,
        /// Allow the best-effort n = 7 search.
        #[arg(long, default_value_t = false)]
        best_effort: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Rasterize a configuration onto an n x n board and count queens.
    Raster {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        n: u32,
        /// Count only fully covered cells as white.
        #[arg(long, default_value_t = false)]
        strict_cells: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Render a configuration (white red, black blue) as SVG.
    Render {
        #[command(flatten)]
        family: FamilyArgs,
        /// Overlay an n x n grid.
        #[arg(long)]
        grid: Option<u32>,
        #[arg(long, default_value_t = 600)]
        canvas: u32,
        /// Output path.
        #[arg(long)]
        out: std::path::PathBuf,
    },
    /// Equal-area bisection along one (tied) parameter group.
    Root {
        #[arg(long)]
        family: String,
        /// Comma-separated tied parameter names, e.g. "a,b,c,d".
        #[arg(long)]
        free: String,
        /// Fixed assignments for the remaining parameters.
        #[arg(long)]
        fixed: Option<String>,
        #[arg(long)]
        lo: f64,
        #[arg(long)]
        hi: f64,
    },
    /// Numerical stationarity probe at a parameter point.
    Stationary {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 1e-3)]
        radius: f64,
        #[arg(long, default_value_t = 200)]
        directions: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Constants table plus the full acceptance suite.
    Report {
        /// Smoke-test scale instead of the accepted full scale.
        #[arg(long, default_value_t = false)]
        quick: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Verified constants table only.
    Constants {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn parse_params(family: &FamilySpec, spec: &str) -> Result<ParamPoint> {
    let mut pairs = Vec::new();
    for chunk in spec.split(',') {
        let (name, value) = chunk
            .split_once('=')
            .ok_or_else(|| anyhow!("bad parameter assignment `{chunk}` (expected name=value)"))?;
        let value = parse_rational(value).map_err(|e| anyhow!("{}: {e}", name.trim()))?;
        pairs.push((name.trim().to_string(), value));
    }
    ParamPoint::from_pairs(family, &pairs).map_err(|e| anyhow!("{e}"))
}

fn required_params(family: &FamilySpec, params: &Option<String>) -> Result<ParamPoint> {
    let spec = params.as_ref().ok_or_else(|| {
        anyhow!(
            "--params required; family `{}` takes {}",
            family.name,
            family.parameters.join(",")
        )
    })?;
    parse_params(family, spec)
}

fn objective_mode(family: &FamilySpec, mode: Mode) -> EvalMode {
    match mode {
        Mode::Engine => EvalMode::Engine,
        Mode::Closed => EvalMode::ClosedForm,
        Mode::Auto => {
            if family.has_closed_black() {
                EvalMode::ClosedForm
            } else {
                EvalMode::Engine
            }
        }
    }
}

/// Exit code 1 signals a verification failure (as opposed to usage errors,
/// which clap reports with exit code 2).
struct VerificationFailure;

fn run(cli: Cli) -> Result<std::result::Result<(), VerificationFailure>> {
    match cli.command {
        Command::Families { format } => {
            match format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&families::registry_json())?
                ),
                _ => {
                    for f in families::registry() {
                        let kind = if f.has_closed_black() {
                            "closed-form"
                        } else {
                            "optimizer-only"
                        };
                        println!(
                            "{:<22} params: {:<12} {}{}",
                            f.name,
                            f.parameters.join(","),
                            kind,
                            f.erratum.map(|_| " [erratum]").unwrap_or("")
                        );
                    }
                }
            }
            Ok(Ok(()))
        }
        Command::Eval { family, mode, format } => {
            let spec = find(&family.family)?;
            let p = required_params(spec, &family.params)?;
            let (white, black) = match objective_mode(spec, mode) {
                EvalMode::Engine => spec.engine_areas(&p)?,
                EvalMode::ClosedForm if spec.has_closed_black() => {
                    let black = spec.closed_black_area(&p)?;
                    if !black.in_regime {
                        eprintln!("note: point is outside the closed-form regime; values are formula evaluations, the engine is ground truth there");
                    }
                    (spec.closed_white_area(&p), black.value)
                }
                _ => spec.engine_areas(&p)?,
            };
            let min = white.clone().min(black.clone());
            match format {
                Format::Json => println!(
                    "{}",
                    serde_json::json!({
                        "family": spec.name,
                        "params": p.to_string_map(),
                        "white": { "exact": format_rational(&white), "value": to_f64(&white) },
                        "black": { "exact": format_rational(&black), "value": to_f64(&black) },
                        "min": { "exact": format_rational(&min), "value": to_f64(&min) },
                    })
                ),
                _ => {
                    println!("family  {}", spec.name);
                    println!("white   {} = {:.10}", format_rational(&white), to_f64(&white));
                    println!("black   {} = {:.10}", format_rational(&black), to_f64(&black));
                    println!("min     {} = {:.10}", format_rational(&min), to_f64(&min));
                }
            }
            Ok(Ok(()))
        }
        Command::Optimize { family, seed, grid, starts, tol, mode, format } => {
            let spec = find(&family.family)?;
            let obj = Objective::new(spec, objective_mode(spec, mode));
            let opts = MaximizeOptions {
                grid_density: grid,
                multistarts: starts,
                seed,
                tol,
                ..Default::default()
            };
            let result = maximize(&obj, &opts)?;
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&result)?),
                Format::Csv => print!("{}", result.to_csv()),
                Format::Text => {
                    println!("family      {}", result.family);
                    println!("mode        {}", result.mode);
                    println!("value       {:.10}", result.value);
                    println!(
                        "params      [{}]",
                        result
                            .params
                            .iter()
                            .map(|v| format!("{v:.10}"))
                            .collect::<Vec<_>>()
                            .join(", ")
                    );
                    println!("snapped     [{}]", result.params_exact.join(", "));
                    println!("white       {} = {:.10}", result.white.exact, result.white.value);
                    println!("black       {} = {:.10}", result.black.exact, result.black.value);
                    println!("gap         {:.3e}", result.equal_area_gap);
                    println!("evaluations {}", result.evaluations);
                    println!("local optima:");
                    for o in &result.local_optima {
                        println!("  {:.10} at {:?}", o.value, o.params);
                    }
                }
            }
            Ok(Ok(()))
        }
        Command::Verify { family, samples, seed, format } => {
            let spec = find(&family.family)?;
            let points = match &family.params {
                Some(_) => vec![required_params(spec, &family.params)?],
                None => sampling::sample_domain(spec, samples, seed),
            };
            let mut reports = Vec::with_capacity(points.len());
            let mut failures = 0usize;
            for p in &points {
                let report = verify_family(spec, p)?;
                let clean = report.white_discrepancy.exact == "0"
                    && report
                        .black_discrepancy
                        .as_ref()
                        .is_none_or(|d| d.exact == "0");
                if report.in_regime && !clean && report.erratum.is_none() {
                    failures += 1;
                }
                reports.push(report);
            }
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&reports)?),
                _ => {
                    for r in &reports {
                        println!(
                            "{} {:?} white {} black {} gap {:.3e} regime={} {}",
                            r.family,
                            r.params,
                            r.engine_white.exact,
                            r.engine_black.exact,
                            r.equal_area_gap.value,
                            r.in_regime,
                            r.erratum.as_deref().map(|_| "[erratum]").unwrap_or("")
                        );
                    }
                    println!(
                        "{} points, {} in-regime discrepancies",
                        reports.len(),
                        failures
                    );
                }
            }
            Ok(if failures == 0 { Ok(()) } else { Err(VerificationFailure) })
        }
        Command::Locus { family, case, samples, format } => {
            let report = locus::solution_locus_check(&family, &case, samples).map_err(|e| {
                let ids = locus::case_ids(&family);
                if ids.is_empty() {
                    anyhow!("{e}")
                } else {
                    anyhow!("{e}; available cases for {family}: {}", ids.join(", "))
                }
            })?;
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&report)?),
                _ => {
                    println!("{} / {}: {}", report.family, report.case, report.description);
                    println!(
                        "printed a-interval  [{:.9}, {:.9}]",
                        report.printed_interval[0], report.printed_interval[1]
                    );
                    println!(
                        "effective interval  [{:.9}, {:.9}]",
                        report.effective_interval[0], report.effective_interval[1]
                    );
                    for s in &report.samples {
                        println!(
                            "  a={:.9} s={} gap={:.2e} {}",
                            s.a,
                            s.s.map(|v| format!("{v:.9}")).unwrap_or_else(|| "-".into()),
                            s.gap,
                            if s.pass { "ok" } else { "FAIL" }
                        );
                    }
                    println!("{}/{} samples pass", report.pass_count, report.samples.len());
                }
            }
            Ok(if report.passed { Ok(()) } else { Err(VerificationFailure) })
        }
        Command::Solve { n, best_effort, format } => {
            if n == 7 && !best_effort {
                bail!("n = 7 is best-effort; pass --best-effort to run it");
            }
            if n == 0 || n > MAX_EXACT_N {
                bail!("supported board sizes are 1..={MAX_EXACT_N}");
            }
            let start = std::time::Instant::now();
            let (value, white) = exact_peaceable_with_witness(n)?;
            let elapsed_ms = start.elapsed().as_millis();
            match format {
                Format::Json => println!(
                    "{}",
                    serde_json::json!({
                        "n": n,
                        "value": value,
                        "optimal_white_cells": white,
                        "elapsed_ms": elapsed_ms,
                    })
                ),
                _ => {
                    println!("a({n}) = {value}  ({elapsed_ms} ms)");
                    let board = Board::with_greedy_black(n, white)?;
                    print!("{}", board.ascii());
                }
            }
            Ok(Ok(()))
        }
        Command::Raster { family, n, strict_cells, format } => {
            let spec = find(&family.family)?;
            let p = required_params(spec, &family.params)?;
            let mode = if strict_cells { CellMode::FullCell } else { CellMode::Center };
            let counts = evaluate_construction(spec, &p, n, mode)?;
            match format {
                Format::Json => println!(
                    "{}",
                    serde_json::json!({
                        "family": spec.name,
                        "n": counts.n,
                        "white_count": counts.white_count,
                        "black_count": counts.black_count,
                        "min_count": counts.min_count,
                    })
                ),
                _ => println!(
                    "n={} white={} black={} min={}",
                    counts.n, counts.white_count, counts.black_count, counts.min_count
                ),
            }
            Ok(Ok(()))
        }
        Command::Render { family, grid, canvas, out } => {
            let spec = find(&family.family)?;
            let p = required_params(spec, &family.params)?;
            let white = spec.build_white(&p)?;
            let black = black_region(&white)?;
            let mut scene = Scene::new(white, black);
            scene.canvas_px = canvas;
            if let Some(n) = grid {
                scene = scene.with_grid(n);
            }
            let svg = to_svg(&scene);
            std::fs::write(&out, svg).with_context(|| format!("writing {}", out.display()))?;
            println!("wrote {}", out.display());
            Ok(Ok(()))
        }
        Command::Root { family, free, fixed, lo, hi } => {
            let spec = find(&family)?;
            let free: Vec<&str> = free.split(',').map(str::trim).collect();
            let mut fixed_pairs = Vec::new();
            if let Some(fixed) = fixed {
                for chunk in fixed.split(',') {
                    let (name, value) = chunk
                        .split_once('=')
                        .ok_or_else(|| anyhow!("bad fixed assignment `{chunk}`"))?;
                    fixed_pairs.push((
                        name.trim().to_string(),
                        parse_rational(value).map_err(|e| anyhow!(e))?,
                    ));
                }
            }
            let root = equal_area_root(spec, &free, &fixed_pairs, (lo, hi))?;
            println!(
                "root {:.12} (exact {}) after {} bisections, gap {:.2e}",
                root.value,
                format_rational(&root.exact),
                root.iterations,
                root.gap
            );
            Ok(Ok(()))
        }
        Command::Stationary { family, radius, directions, seed } => {
            let spec = find(&family.family)?;
            let p = required_params(spec, &family.params)?;
            let obj = Objective::auto(spec);
            let verdict = check_local_optimum(&obj, &p.to_f64_vec(), radius, directions, seed)?;
            println!("{}", serde_json::to_string_pretty(&verdict)?);
            Ok(if verdict.is_local_max { Ok(()) } else { Err(VerificationFailure) })
        }
        Command::Report { quick, format } => {
            let config = if quick { ReportConfig::quick() } else { ReportConfig::full() };
            let rows = constants_table()?;
            match format {
                Format::Json => {
                    let results = run_all(&config);
                    let all = results.iter().all(|r| r.passed);
                    println!(
                        "{}",
                        serde_json::json!({
                            "constants": rows,
                            "criteria": results,
                            "passed": all,
                        })
                    );
                    Ok(if all { Ok(()) } else { Err(VerificationFailure) })
                }
                _ => {
                    println!("{}", render_constants_table(&rows));
                    let mut all = true;
                    for result in run_all(&config) {
                        println!("{}", result.line());
                        all &= result.passed;
                    }
                    println!();
                    println!("overall: {}", if all { "PASS" } else { "FAIL" });
                    Ok(if all { Ok(()) } else { Err(VerificationFailure) })
                }
            }
        }
        Command::Constants { format } => {
            let rows = constants_table()?;
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&rows)?),
                Format::Csv => print!("{}", constants_csv(&rows)),
                Format::Text => println!("{}", render_constants_table(&rows)),
            }
            Ok(Ok(()))
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Ok(())) => {}
        Ok(Err(VerificationFailure)) => std::process::exit(1),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    }
}
