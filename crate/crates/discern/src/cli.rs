//! Command-line interface. Exit codes: 0 success, 1 usage or IO error,
//! 2 solver stopped at the iteration cap without reaching the gap tolerance.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use discern_core::data::{
    gen_balanced, gen_multilabel, gen_sparse, gen_unbalanced, Dataset, NoiseSpec, Truth,
};
use discern_core::metrics::{clustering_error, label_projection_score};
use discern_core::rounding::{
    multilabel_procrustes, round_from_v, round_rank2_project, spectral_factor, RoundingMethod,
};
use discern_core::solver::{
    build_problem, fista_solve_observed, reconstruct_y, RegularizerWeights, SolveOptions,
};

use crate::experiments::{
    baseline_errors, bench_scaling, phase_grid, unbalanced_sweep, BaselineMethod, BenchConfig,
    CompareConfig, PhaseConfig, PhaseMode, SweepKind, UnbalancedConfig,
};
use crate::io::{
    load_csv, load_libsvm, svg_heatmap, svg_lines, write_labels_csv, write_manifest,
    write_matrix_csv, write_table, FileHeader, TraceWriter,
};

#[derive(Parser)]
#[command(name = "discern", version, about = "Sparse discriminative clustering toolkit")]
pub struct Cli {
    /// Worker threads for experiment grids (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a synthetic dataset (CSV + labels + JSON manifest).
    Generate(GenerateArgs),
    /// Solve the relaxation on a dataset and round to labels.
    Fit(FitArgs),
    /// Phase-transition grid over (d, n).
    Phase(PhaseArgs),
    /// Imbalance sweeps (constraint level or penalty level).
    Unbalanced(UnbalancedArgs),
    /// Per-iteration runtime scaling.
    Bench(BenchArgs),
    /// Baseline comparison (alternating optimization, K-means, solver).
    Baselines(BaselinesArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum NoiseArg {
    Rademacher,
    Uniform,
    Gauss,
}

#[derive(Args)]
struct GenerateArgs {
    #[command(subcommand)]
    model: GenerateModel,
}

#[derive(Args, Clone)]
struct CommonGen {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    d: usize,
    #[arg(long, value_enum, default_value = "uniform")]
    noise: NoiseArg,
    /// Bound R of the noise law (uniform support half-width or Gaussian
    /// truncation; default: sqrt(3) for uniform so the variance is one,
    /// 3 for the truncated Gaussian, fixed 1 for Rademacher).
    #[arg(long)]
    noise_bound: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Subcommand)]
enum GenerateModel {
    /// Balanced two-cluster data `X = [y, Z]`.
    Balanced(CommonGen),
    /// Imbalanced clusters at a target squared imbalance.
    Unbalanced {
        #[command(flatten)]
        common: CommonGen,
        #[arg(long)]
        alpha_star: f64,
    },
    /// Planted l-sparse direction.
    Sparse {
        #[command(flatten)]
        common: CommonGen,
        #[arg(long, default_value_t = 1)]
        l: usize,
    },
    /// k planted labels.
    Multilabel {
        #[command(flatten)]
        common: CommonGen,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Libsvm,
}

#[derive(Clone, Copy, ValueEnum)]
enum RoundingArg {
    /// Sign of the principal eigenvector of the reconstructed label matrix.
    Eig,
    /// Centered rank-2 projection rounding.
    Rank2,
    /// Exact two-means on the projected data.
    Kmeans1d,
}

#[derive(Args)]
struct FitArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
    /// Treat the final CSV column as class labels.
    #[arg(long)]
    label_column: bool,
    /// Ground-truth labels file (one +1/-1 per line, as written by
    /// `generate`); enables the clustering-error report.
    #[arg(long)]
    labels: Option<PathBuf>,
    /// Center the input columns (refused implicitly otherwise).
    #[arg(long)]
    center: bool,
    #[arg(long, default_value_t = 1.0)]
    nu: f64,
    /// l1 weight; default 1/sqrt(n).
    #[arg(long)]
    lambda: Option<f64>,
    /// Uniform quadratic weight.
    #[arg(long, default_value_t = 1e-3)]
    a: f64,
    /// Smoothing level; default 1e-2/log d.
    #[arg(long)]
    epsilon: Option<f64>,
    /// Duality-gap threshold; default epsilon * log d.
    #[arg(long)]
    gap_tol: Option<f64>,
    #[arg(long, default_value_t = 100_000)]
    max_iter: usize,
    #[arg(long, value_enum, default_value = "rank2")]
    rounding: RoundingArg,
    /// Recover this many labels via alternating Procrustes.
    #[arg(long)]
    multilabel: Option<usize>,
    /// Write the duality-gap trace next to the results.
    #[arg(long)]
    trace: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum PhaseModeArg {
    Affine,
    Sparse,
}

#[derive(Args)]
struct PhaseArgs {
    #[arg(long, value_enum, default_value = "sparse")]
    mode: PhaseModeArg,
    /// Ambient dimensions of the grid.
    #[arg(long, value_delimiter = ',', default_values_t = vec![5usize, 10, 15, 20, 30])]
    d: Vec<usize>,
    /// Sample counts of the grid.
    #[arg(long, value_delimiter = ',', default_values_t = vec![40usize, 80, 160, 320])]
    n: Vec<usize>,
    #[arg(long, default_value_t = 4)]
    reps: usize,
    /// Sparsity of the planted direction.
    #[arg(long, default_value_t = 1)]
    l: usize,
    /// Smoothing scale: epsilon = scale / log d.
    #[arg(long, default_value_t = 1e-3)]
    epsilon_scale: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also render an SVG heatmap.
    #[arg(long)]
    svg: bool,
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum SweepArg {
    Alpha,
    Nu,
}

#[derive(Args)]
struct UnbalancedArgs {
    #[arg(long, default_value_t = 80)]
    n: usize,
    #[arg(long, default_value_t = 10)]
    d: usize,
    #[arg(long, default_value_t = 0.25)]
    alpha_star: f64,
    #[arg(long, value_enum, default_value = "alpha")]
    sweep: SweepArg,
    /// Points of the alpha sweep.
    #[arg(long, default_value_t = 11)]
    points: usize,
    /// Penalty levels of the nu sweep.
    #[arg(long, value_delimiter = ',', default_values_t = vec![0.01, 0.25, 0.5, 0.75, 1.0])]
    nu_grid: Vec<f64>,
    /// Noise column scale (the alpha sweep requires 0).
    #[arg(long, default_value_t = 0.0)]
    noise_sigma: f64,
    #[arg(long, default_value_t = 10)]
    reps: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    svg: bool,
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_delimiter = ',', default_values_t = vec![50usize])]
    d: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_values_t = vec![500usize, 1000, 2000])]
    n: Vec<usize>,
    #[arg(long, default_value_t = 3)]
    reps: usize,
    #[arg(long, default_value_t = 30)]
    iters: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    svg: bool,
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Altopt,
    Kmeans,
    Solver,
}

#[derive(Args)]
struct BaselinesArgs {
    /// Labeled dataset (CSV with a label column, or LIBSVM).
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
    #[arg(long, value_enum)]
    method: MethodArg,
    #[arg(long, default_value_t = 10)]
    restarts: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    svg: bool,
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] discern_core::Error),
    #[error(transparent)]
    Io(#[from] crate::io::IoError),
    #[error("{0}")]
    Usage(String),
}

/// Parses arguments and runs; returns the process exit code.
pub fn run() -> i32 {
    let argv: Vec<String> = std::env::args().collect();
    let args_line = argv.join(" ");
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version are successful exits
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    if let Some(jobs) = cli.jobs {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    match dispatch(cli.command, &args_line) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn dispatch(cmd: Command, args_line: &str) -> Result<i32, CliError> {
    match cmd {
        Command::Generate(a) => cmd_generate(a, args_line),
        Command::Fit(a) => cmd_fit(a, args_line),
        Command::Phase(a) => cmd_phase(a, args_line),
        Command::Unbalanced(a) => cmd_unbalanced(a, args_line),
        Command::Bench(a) => cmd_bench(a, args_line),
        Command::Baselines(a) => cmd_baselines(a, args_line),
    }
}

fn noise_spec(arg: NoiseArg, bound: Option<f64>) -> Result<NoiseSpec, CliError> {
    Ok(match arg {
        NoiseArg::Rademacher => NoiseSpec::rademacher(),
        NoiseArg::Uniform => NoiseSpec::uniform(bound.unwrap_or(3f64.sqrt()))?,
        NoiseArg::Gauss => NoiseSpec::truncated_gaussian(bound.unwrap_or(3.0))?,
    })
}

fn ensure_out(dir: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(dir)
        .map_err(|e| CliError::Usage(format!("cannot create {}: {e}", dir.display())))
}

fn cmd_generate(args: GenerateArgs, args_line: &str) -> Result<i32, CliError> {
    let (common, ds, generator, params) = match args.model {
        GenerateModel::Balanced(c) => {
            let noise = noise_spec(c.noise, c.noise_bound)?;
            let ds = gen_balanced(c.n, c.d, &noise, c.seed)?;
            let params = json!({"n": c.n, "d": c.d});
            (c, ds, "balanced", params)
        }
        GenerateModel::Unbalanced { common: c, alpha_star } => {
            let noise = noise_spec(c.noise, c.noise_bound)?;
            let ds = gen_unbalanced(c.n, c.d, alpha_star, &noise, c.seed)?;
            let params = json!({"n": c.n, "d": c.d, "alpha_star": alpha_star});
            (c, ds, "unbalanced", params)
        }
        GenerateModel::Sparse { common: c, l } => {
            let noise = noise_spec(c.noise, c.noise_bound)?;
            let (ds, v) = gen_sparse(c.n, c.d, l, &noise, c.seed)?;
            let params = json!({"n": c.n, "d": c.d, "l": l, "planted_direction": v});
            (c, ds, "sparse", params)
        }
        GenerateModel::Multilabel { common: c, k } => {
            let noise = noise_spec(c.noise, c.noise_bound)?;
            let ds = gen_multilabel(c.n, c.d, k, &noise, c.seed)?;
            let params = json!({"n": c.n, "d": c.d, "k": k});
            (c, ds, "multilabel", params)
        }
    };
    ensure_out(&common.out)?;
    let header = FileHeader::new(args_line.to_string(), Some(common.seed));
    write_matrix_csv(&common.out.join("dataset.csv"), &header, &ds.x)?;
    match &ds.truth {
        Some(Truth::Single(y)) => {
            write_labels_csv(&common.out.join("labels.csv"), &header, y.as_slice())?
        }
        Some(Truth::Multi(m)) => {
            write_matrix_csv(&common.out.join("labels.csv"), &header, m.mat())?
        }
        None => {}
    }
    let noise = noise_spec(common.noise, common.noise_bound)?;
    write_manifest(
        &common.out.join("manifest.json"),
        args_line,
        common.seed,
        generator,
        params,
        Some(&noise),
    )?;
    Ok(0)
}

/// Labels file: comment lines ignored, one row of comma-separated +1/-1
/// per observation (a single column for two-cluster truth).
fn read_labels_file(path: &Path) -> Result<discern_core::mat::Mat, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| crate::io::IoError::File { path: path.display().to_string(), source: e })?;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parsed: Result<Vec<f64>, _> = line.split(',').map(|f| f.trim().parse()).collect();
        match parsed {
            Ok(v) => rows.push(v),
            Err(_) => {
                return Err(crate::io::IoError::Malformed {
                    path: path.display().to_string(),
                    line: lineno + 1,
                    msg: format!("bad label row '{line}'"),
                }
                .into())
            }
        }
    }
    if rows.is_empty() {
        return Err(crate::io::IoError::Empty { path: path.display().to_string() }.into());
    }
    let k = rows[0].len();
    Ok(discern_core::mat::Mat::from_fn(rows.len(), k, |i, j| rows[i][j]))
}

fn load_input(path: &Path, format: FormatArg, label_column: bool) -> Result<Dataset, CliError> {
    Ok(match format {
        FormatArg::Csv => load_csv(path, label_column)?,
        FormatArg::Libsvm => load_libsvm(path)?,
    })
}

/// A dataset counts as centered when every column sum is within the
/// dataset-level tolerance.
fn looks_centered(ds: &Dataset) -> bool {
    let n = ds.n() as f64;
    (0..ds.d()).all(|j| {
        let col = ds.x.col(j);
        let scale = col.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1.0);
        col.iter().sum::<f64>().abs() <= 1e-8 * n * scale
    })
}

fn cmd_fit(args: FitArgs, args_line: &str) -> Result<i32, CliError> {
    let mut ds = load_input(&args.input, args.format, args.label_column)?;
    if let Some(labels_path) = &args.labels {
        let truth = read_labels_file(labels_path)?;
        if truth.cols() == 1 {
            let y = discern_core::data::Labeling::from_signs(truth.col(0))?;
            ds = Dataset::new(ds.x.clone(), ds.centered, Some(Truth::Single(y)), ds.provenance.clone())?;
        } else {
            let m = discern_core::data::MultiLabeling::from_mat(truth)?;
            ds = Dataset::new(ds.x.clone(), ds.centered, Some(Truth::Multi(m)), ds.provenance.clone())?;
        }
    }
    if args.center {
        ds = ds.centered();
    } else if looks_centered(&ds) {
        ds = Dataset::new(ds.x.clone(), true, ds.truth.clone(), ds.provenance.clone())?;
    } else {
        return Err(CliError::Usage(
            "input is not centered; pass --center to center it explicitly".into(),
        ));
    }
    ensure_out(&args.out)?;
    let d = ds.d();
    let n = ds.n();
    let lambda = args.lambda.unwrap_or(1.0 / (n as f64).sqrt());
    let epsilon = args.epsilon.unwrap_or_else(|| RegularizerWeights::default_epsilon(d));
    let weights = RegularizerWeights::from_scalars(d, args.a, lambda, args.nu, epsilon)?;
    let problem = build_problem(&ds, &weights)?;
    let opts = SolveOptions { gap_tol: args.gap_tol, max_iter: args.max_iter, ..Default::default() };
    let mut trace = TraceWriter::new();
    let (_, sol) = fista_solve_observed(&problem, &opts, &mut trace)?;

    let header = FileHeader::new(args_line.to_string(), Some(args.seed));
    if args.trace {
        let (cols, rows) = trace.table();
        write_table(&args.out.join("trace.csv"), &header, &cols, &rows)?;
    }

    // V spectrum
    let dec = discern_core::linalg::sym_eig(&sol.v)?;
    let spec_rows: Vec<Vec<String>> =
        dec.eigenvalues.iter().enumerate().map(|(i, l)| vec![i.to_string(), l.to_string()]).collect();
    write_table(&args.out.join("spectrum.csv"), &header, &["index", "eigenvalue"], &spec_rows)?;

    let rec = reconstruct_y(problem.design(), &sol.v)?;
    let mut result = json!({
        "tool": format!("discern {}", env!("CARGO_PKG_VERSION")),
        "args": args_line,
        "seed": args.seed,
        "date": crate::io::utc_timestamp(),
        "n": n,
        "d": d,
        "nu": args.nu,
        "lambda": lambda,
        "epsilon": epsilon,
        "gap_tol": opts.gap_tol.unwrap_or_else(|| problem.default_gap_tol()),
        "primal": sol.primal_value,
        "dual": sol.dual_value,
        "gap": sol.gap,
        "iterations": sol.iterations,
        "converged": sol.converged,
        "degenerate_rows": rec.degenerate_rows.len(),
    });

    if let Some(k) = args.multilabel {
        let f = spectral_factor(&rec.y, k + 1)?;
        let proc = multilabel_procrustes(&f, 10)?;
        write_matrix_csv(&args.out.join("labels.csv"), &header, proc.labels.mat())?;
        result["coefficients"] = json!(proc.coefficients);
        if let Some(truth) = ds.multi_truth() {
            let score = label_projection_score(truth, &proc.labels)?;
            result["label_projection_score"] = json!(score.score);
        }
    } else {
        let labels = match args.rounding {
            RoundingArg::Rank2 => round_rank2_project(&rec.y)?.labels,
            RoundingArg::Eig => {
                discern_core::rounding::round_sign_eigvec(&rec.y, true)?.labels
            }
            RoundingArg::Kmeans1d => {
                round_from_v(problem.design(), &sol.v, RoundingMethod::Kmeans1d)?.labels
            }
        };
        write_labels_csv(&args.out.join("labels.csv"), &header, labels.as_slice())?;
        if let Some(truth) = ds.single_truth() {
            result["clustering_error"] = json!(clustering_error(&labels, truth)?);
        }
    }

    std::fs::write(
        args.out.join("result.json"),
        serde_json::to_string_pretty(&result).expect("result serialization"),
    )
    .map_err(|e| crate::io::IoError::File { path: "result.json".into(), source: e })?;

    Ok(if sol.converged { 0 } else { 2 })
}

fn cmd_phase(args: PhaseArgs, args_line: &str) -> Result<i32, CliError> {
    ensure_out(&args.out)?;
    let cells: Vec<(usize, usize)> =
        args.d.iter().flat_map(|&d| args.n.iter().map(move |&n| (d, n))).collect();
    let mode = match args.mode {
        PhaseModeArg::Affine => PhaseMode::Affine,
        PhaseModeArg::Sparse => PhaseMode::Sparse,
    };
    let mut cfg = PhaseConfig::new(cells, mode, args.reps, args.seed);
    cfg.sparsity = args.l;
    cfg.epsilon_scale = args.epsilon_scale;
    let result = phase_grid(&cfg);
    let header = FileHeader::new(args_line.to_string(), Some(args.seed));
    let rows: Vec<Vec<String>> = result
        .iter()
        .map(|c| {
            vec![
                c.d.to_string(),
                c.n.to_string(),
                c.replications.to_string(),
                c.mean_error.to_string(),
                c.rank_one_fraction.to_string(),
                c.failures.to_string(),
                c.cell_seed.to_string(),
            ]
        })
        .collect();
    write_table(
        &args.out.join(format!("phase_{}.csv", mode.name())),
        &header,
        &["d", "n", "replications", "mean_error", "rank_one_fraction", "failures", "cell_seed"],
        &rows,
    )?;
    if args.svg {
        let row_labels: Vec<String> = args.d.iter().map(|d| format!("d={d}")).collect();
        let col_labels: Vec<String> = args.n.iter().map(|n| format!("n={n}")).collect();
        let values: Vec<Vec<f64>> = args
            .d
            .iter()
            .map(|&d| {
                args.n
                    .iter()
                    .map(|&n| {
                        result
                            .iter()
                            .find(|c| c.d == d && c.n == n)
                            .map(|c| c.mean_error)
                            .unwrap_or(f64::NAN)
                    })
                    .collect()
            })
            .collect();
        let svg = format!(
            "{}{}",
            header.render_xml(),
            svg_heatmap(
                &format!("clustering error ({})", mode.name()),
                &row_labels,
                &col_labels,
                &values,
            )
        );
        std::fs::write(args.out.join(format!("phase_{}.svg", mode.name())), svg)
            .map_err(|e| crate::io::IoError::File { path: "phase svg".into(), source: e })?;
    }
    Ok(0)
}

fn cmd_unbalanced(args: UnbalancedArgs, args_line: &str) -> Result<i32, CliError> {
    ensure_out(&args.out)?;
    let mut cfg = UnbalancedConfig::new(args.n, args.d, args.alpha_star, args.seed);
    cfg.noise_sigma = args.noise_sigma;
    cfg.replications = args.reps;
    let (kind, name) = match args.sweep {
        SweepArg::Alpha => (SweepKind::ConstrainedAlpha { points: args.points }, "alpha"),
        SweepArg::Nu => (SweepKind::PenalizedNu { nu_values: args.nu_grid.clone() }, "nu"),
    };
    let rows = unbalanced_sweep(&cfg, &kind)?;
    let header = FileHeader::new(args_line.to_string(), Some(args.seed));
    let table: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.param.to_string(),
                r.err_eig1.to_string(),
                r.err_eig2.to_string(),
                r.err_proj.to_string(),
                r.mean_rank.to_string(),
            ]
        })
        .collect();
    write_table(
        &args.out.join(format!("unbalanced_{name}.csv")),
        &header,
        &[name, "err_eig1", "err_eig2", "err_proj", "mean_rank"],
        &table,
    )?;
    if args.svg {
        let series: Vec<(String, Vec<(f64, f64)>)> = [
            ("eig1", rows.iter().map(|r| (r.param, r.err_eig1)).collect::<Vec<_>>()),
            ("eig2", rows.iter().map(|r| (r.param, r.err_eig2)).collect()),
            ("projection", rows.iter().map(|r| (r.param, r.err_proj)).collect()),
        ]
        .into_iter()
        .map(|(n, pts)| (n.to_string(), pts))
        .collect();
        let svg = format!(
            "{}{}",
            header.render_xml(),
            svg_lines(&format!("clustering error vs {name}"), &series)
        );
        std::fs::write(args.out.join(format!("unbalanced_{name}.svg")), svg)
            .map_err(|e| crate::io::IoError::File { path: "sweep svg".into(), source: e })?;
    }
    Ok(0)
}

fn cmd_bench(args: BenchArgs, args_line: &str) -> Result<i32, CliError> {
    ensure_out(&args.out)?;
    let mut cfg = BenchConfig::new(args.d.clone(), args.n.clone(), args.seed);
    cfg.reps = args.reps;
    cfg.iters = args.iters;
    let rows = bench_scaling(&cfg);
    let header = FileHeader::new(args_line.to_string(), Some(args.seed));
    let table: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.d.to_string(),
                r.n.to_string(),
                r.iterations.to_string(),
                format!("{:.4}", r.median_iter_ms),
            ]
        })
        .collect();
    write_table(
        &args.out.join("bench.csv"),
        &header,
        &["d", "n", "iterations", "median_iter_ms"],
        &table,
    )?;
    if args.svg {
        let series: Vec<(String, Vec<(f64, f64)>)> = args
            .d
            .iter()
            .map(|&d| {
                let pts = rows
                    .iter()
                    .filter(|r| r.d == d)
                    .map(|r| (r.n as f64, r.median_iter_ms))
                    .collect();
                (format!("d={d}"), pts)
            })
            .collect();
        let svg =
            format!("{}{}", header.render_xml(), svg_lines("median iteration time (ms)", &series));
        std::fs::write(args.out.join("bench.svg"), svg)
            .map_err(|e| crate::io::IoError::File { path: "bench svg".into(), source: e })?;
    }
    Ok(0)
}

fn cmd_baselines(args: BaselinesArgs, args_line: &str) -> Result<i32, CliError> {
    ensure_out(&args.out)?;
    let label_column = matches!(args.format, FormatArg::Csv);
    let ds = load_input(&args.input, args.format, label_column)?;
    let method = match args.method {
        MethodArg::Altopt => BaselineMethod::AltOpt,
        MethodArg::Kmeans => BaselineMethod::Kmeans,
        MethodArg::Solver => BaselineMethod::Solver,
    };
    let cfg = CompareConfig::new(args.restarts, args.seed);
    let report = baseline_errors(&ds, method, &cfg)?;
    let header = FileHeader::new(args_line.to_string(), Some(args.seed));
    let rows: Vec<Vec<String>> = report
        .errors
        .iter()
        .enumerate()
        .map(|(i, e)| vec![i.to_string(), e.to_string()])
        .collect();
    write_table(
        &args.out.join(format!("baseline_{}.csv", method.name())),
        &header,
        &["run", "clustering_error"],
        &rows,
    )?;
    if args.svg {
        let pts: Vec<(f64, f64)> =
            report.errors.iter().enumerate().map(|(i, e)| (i as f64, *e)).collect();
        let svg = format!(
            "{}{}",
            header.render_xml(),
            svg_lines(&format!("clustering error per run ({})", method.name()), &[(
                method.name().to_string(),
                pts
            )])
        );
        std::fs::write(args.out.join(format!("baseline_{}.svg", method.name())), svg)
            .map_err(|e| crate::io::IoError::File { path: "baseline svg".into(), source: e })?;
    }
    println!(
        "{}: clustering error {:.4} +/- {:.4} over {} runs",
        method.name(),
        report.mean,
        report.std,
        report.errors.len()
    );
    Ok(0)
}
