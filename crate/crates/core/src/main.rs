use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use hyperrange::dataio::{
    self, default_names, read_dataset, read_labels, write_edge_list, write_labels, write_report, Report, ReportFormat,
    SimplexDataset, SourceFormat, Value,
};
use hyperrange::evalkit::{ari, circle_points, kmeans, DEFAULT_RESTARTS};
use hyperrange::hypercore::{binarized_components, build_laplacian, restrict, trim_by_degree, CardinalityWeights};
use hyperrange::predict::{run_prediction, LinearModelConfig, PredictionConfig, SplitMode, SplitSpec};
use hyperrange::rangedep::{compare_models, Geometry};
use hyperrange::{ComparisonConfig, GammaRange};
use hyperrange::spectral::Spectrum;
use hyperrange::synthgen::{generate_until_connected, ClusterPlan, DEFAULT_MAX_ATTEMPTS};
use hyperrange::{Error, Result};

#[derive(Parser)]
#[command(name = "hyperrange", version, about = "Range-dependent hypergraph embedding and model comparison")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Spectral embedding of a hypergraph.
    Embed(EmbedArgs),
    /// Maximum-likelihood comparison of linear and periodic models over a c3 grid.
    Compare(CompareArgs),
    /// K-means on an embedding, scored against known labels.
    Cluster(ClusterArgs),
    /// Triangle prediction with the linear model and mean-score baselines.
    Predict(PredictArgs),
    /// Planted-cluster hypergraph from the range-dependent model.
    Synth(SynthArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Edge-list file, or the file prefix for the triple format.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value = "edgelist", value_parser = parse_format)]
    format: SourceFormat,
    /// Largest hyperedge cardinality kept.
    #[arg(long, default_value_t = dataio::DEFAULT_MAX_CARDINALITY)]
    max_cardinality: usize,
    /// Remove this fraction of highest- and lowest-degree nodes first.
    #[arg(long)]
    trim: Option<f64>,
    /// Keep only the largest connected component.
    #[arg(long)]
    lcc: bool,
}

#[derive(Args)]
struct EmbedArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_parser = parse_geometry)]
    geometry: Geometry,
    #[arg(long)]
    c3: f64,
    #[arg(long, default_value_t = 1)]
    dims: usize,
    #[arg(long, default_value_t = 1e-9)]
    eig_floor: f64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct CompareArgs {
    #[command(flatten)]
    input: InputArgs,
    /// `lo:hi:step`.
    #[arg(long, value_parser = parse_grid)]
    c3_grid: Grid,
    /// `lo:hi`.
    #[arg(long, default_value = "0.001:10000", value_parser = parse_gamma_range)]
    gamma_range: GammaRange,
    #[arg(long, default_value_t = 1)]
    dims: usize,
    #[arg(long, default_value_t = 1e-9)]
    eig_floor: f64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct ClusterArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long)]
    labels: PathBuf,
    #[arg(long, value_parser = parse_geometry)]
    geometry: Geometry,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 1.0 / 3.0)]
    c3: f64,
    #[arg(long, default_value_t = 1)]
    dims: usize,
    #[arg(long, default_value_t = 1e-9)]
    eig_floor: f64,
    #[arg(long, default_value_t = DEFAULT_RESTARTS)]
    restarts: usize,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct PredictArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long)]
    train_frac: f64,
    #[arg(long, default_value = "time", value_parser = parse_split)]
    split: SplitMode,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value = "0:1.5:0.1", value_parser = parse_grid)]
    c3_grid: Grid,
    #[arg(long, default_value = "0.001:10000", value_parser = parse_gamma_range)]
    gamma_range: GammaRange,
    #[arg(long, default_value_t = 3)]
    dims: usize,
    #[arg(long, default_value_t = 0.01)]
    eig_floor: f64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SynthArgs {
    #[arg(long, value_parser = parse_geometry)]
    geometry: Geometry,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    gamma0: f64,
    #[arg(long)]
    a: f64,
    #[arg(long)]
    c3: f64,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_MAX_ATTEMPTS)]
    max_attempts: usize,
    /// Also write the planted cluster of each node.
    #[arg(long)]
    labels_out: Option<PathBuf>,
    #[arg(long)]
    out: PathBuf,
}

fn parse_geometry(s: &str) -> std::result::Result<Geometry, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_format(s: &str) -> std::result::Result<SourceFormat, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_split(s: &str) -> std::result::Result<SplitMode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn numbers(s: &str, count: usize) -> std::result::Result<Vec<f64>, String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != count {
        return Err(format!("expected {count} `:`-separated numbers, got `{s}`"));
    }
    parts
        .iter()
        .map(|p| p.trim().parse::<f64>().map_err(|_| format!("`{p}` is not a number")))
        .collect()
}

/// Values of a `lo:hi:step` grid.
#[derive(Clone)]
struct Grid(Vec<f64>);

fn parse_grid(s: &str) -> std::result::Result<Grid, String> {
    let v = numbers(s, 3)?;
    let (lo, hi, step) = (v[0], v[1], v[2]);
    if !(step > 0.0) || !(hi >= lo) || !lo.is_finite() || !hi.is_finite() {
        return Err(format!("grid `{s}` needs lo <= hi and step > 0"));
    }
    let count = ((hi - lo) / step + 1e-9).floor() as usize + 1;
    // Rounded so 0.1 steps print as 0.3, not 0.30000000000000004.
    Ok(Grid((0..count).map(|k| ((lo + k as f64 * step) * 1e12).round() / 1e12).collect()))
}

fn parse_gamma_range(s: &str) -> std::result::Result<GammaRange, String> {
    let v = numbers(s, 2)?;
    GammaRange::new(v[0], v[1]).map_err(|e| e.to_string())
}

/// Reads the input and applies the optional trimming and LCC restriction.
fn load(args: &InputArgs) -> Result<SimplexDataset> {
    load_with_map(args).map(|(d, _, _)| d)
}

/// Like [`load`], also returning the original index of every kept node and
/// the names before any restriction.
fn load_with_map(args: &InputArgs) -> Result<(SimplexDataset, Vec<usize>, Vec<String>)> {
    let mut d = read_dataset(&args.input, args.format, args.max_cardinality)?;
    let full = d.names.clone();
    let mut keep: Vec<usize> = (0..d.hypergraph.n()).collect();
    if let Some(f) = args.trim {
        let (h, map) = trim_by_degree(&d.hypergraph, f)?;
        keep = map.iter().map(|&i| keep[i]).collect();
        d.hypergraph = h;
    }
    if args.lcc {
        let w = CardinalityWeights::new((2..=args.max_cardinality).map(|t| (t, 1.0)))?;
        let comps = binarized_components(&d.hypergraph, &w);
        let (h, map) = restrict(&d.hypergraph, &comps[0])?;
        keep = map.iter().map(|&i| keep[i]).collect();
        d.hypergraph = h;
    }
    d.names = keep.iter().map(|&i| full[i].clone()).collect();
    Ok((d, keep, full))
}

fn describe(report: &mut Report, d: &SimplexDataset) {
    report
        .meta("input_sha256", d.content_hash.as_str())
        .meta("input_format", d.format.as_str())
        .meta("nodes", d.hypergraph.n())
        .meta("hyperedges", d.hypergraph.num_edges());
}

fn save(report: &Report, path: &Path) -> Result<()> {
    write_report(report, path, ReportFormat::from_path(path))
}

fn embed(args: EmbedArgs) -> Result<()> {
    let d = load(&args.input)?;
    let weights = CardinalityWeights::dyadic_triadic(args.c3)?;
    let spectrum = Spectrum::of(&build_laplacian(&d.hypergraph, &weights))?;
    let mut report;
    match args.geometry {
        Geometry::Linear => {
            let e = spectrum.linear(args.dims, args.eig_floor)?;
            let cols: Vec<String> = (1..=args.dims).map(|k| format!("x{k}")).collect();
            let mut header = vec!["node"];
            header.extend(cols.iter().map(String::as_str));
            report = Report::new("linear-embedding", &header);
            for (i, name) in d.names.iter().enumerate() {
                let mut row = vec![Value::from(name.as_str())];
                row.extend(e.node(i).iter().map(|&v| Value::Float(v)));
                report.push(row);
            }
            for (k, &l) in e.eigenvalues().iter().enumerate() {
                report.meta(&format!("eigenvalue_{}", k + 1), l);
            }
            report.meta("warnings", e.warnings.len());
        }
        Geometry::Periodic => {
            let e = spectrum.periodic(args.eig_floor)?;
            report = Report::new("periodic-embedding", &["node", "theta"]);
            for (name, &t) in d.names.iter().zip(e.theta()) {
                report.push(vec![name.as_str().into(), t.into()]);
            }
            for (k, &l) in e.eigenvalues().iter().enumerate() {
                report.meta(&format!("eigenvalue_{}", k + 1), l);
            }
            report.meta("warnings", e.warnings.len());
        }
    }
    describe(&mut report, &d);
    report.meta("c3", args.c3).meta("eig_floor", args.eig_floor);
    save(&report, &args.out)
}

fn compare(args: CompareArgs) -> Result<()> {
    let d = load(&args.input)?;
    let config = ComparisonConfig {
        eig_floor: args.eig_floor,
        gamma_range: args.gamma_range,
        d_linear: args.dims,
        max_cardinality: args.input.max_cardinality,
        ..ComparisonConfig::default()
    };
    let mut report = Report::new("model-comparison", &["geometry", "c3_star", "gamma_star", "log_likelihood"]);
    describe(&mut report, &d);
    report.meta("dims", args.dims).meta("eig_floor", args.eig_floor);
    let mut best: Option<(Geometry, f64, f64)> = None;
    let mut last_err = None;
    for &c3 in &args.c3_grid.0 {
        let cmp = match compare_models(&d.hypergraph, &CardinalityWeights::dyadic_triadic(c3)?, &config) {
            Ok(cmp) => cmp,
            Err(e @ (Error::Disconnected { .. } | Error::InsufficientSpectrum { .. })) => {
                log::warn!("c3* = {c3} skipped: {e}");
                for g in [Geometry::Linear, Geometry::Periodic] {
                    report.push(vec![g.as_str().into(), c3.into(), f64::NAN.into(), f64::NAN.into()]);
                }
                last_err = Some(e);
                continue;
            }
            Err(e) => return Err(e),
        };
        for fit in [&cmp.linear, &cmp.periodic] {
            let ll = fit.report.log_likelihood;
            report.push(vec![fit.geometry.as_str().into(), c3.into(), fit.report.gamma_star.into(), ll.into()]);
            if best.map_or(true, |b| ll > b.2) {
                best = Some((fit.geometry, c3, ll));
            }
            if fit.report.at_boundary {
                log::warn!("{} fit at c3* = {c3} hit the gamma range boundary", fit.geometry);
            }
        }
    }
    if best.is_none() {
        return Err(last_err.unwrap_or_else(|| Error::param("c3-grid", "empty grid")));
    }
    if let Some((g, c3, _)) = best {
        report.meta("best_geometry", g.as_str()).meta("best_c3_star", c3);
    }
    save(&report, &args.out)
}

fn cluster(args: ClusterArgs) -> Result<()> {
    let (d, keep, full) = load_with_map(&args.input)?;
    // Labels may name nodes removed by trimming or the LCC restriction.
    let all = read_labels(&args.labels, &full)?;
    let labels: Vec<Option<String>> = keep.iter().map(|&i| all.labels[i].clone()).collect();
    let weights = CardinalityWeights::dyadic_triadic(args.c3)?;
    let spectrum = Spectrum::of(&build_laplacian(&d.hypergraph, &weights))?;
    let (points, dim) = match args.geometry {
        Geometry::Linear => {
            let e = spectrum.linear(args.dims, args.eig_floor)?;
            (e.coords().to_vec(), args.dims)
        }
        Geometry::Periodic => (circle_points(spectrum.periodic(args.eig_floor)?.theta()), 2),
    };
    let c = kmeans(&points, dim, args.k, args.seed, args.restarts)?;
    let labelled: Vec<usize> = (0..d.names.len()).filter(|&i| labels[i].is_some()).collect();
    let truth: Vec<&str> = labelled.iter().map(|&i| labels[i].as_deref().unwrap_or("")).collect();
    let found: Vec<usize> = labelled.iter().map(|&i| c.labels[i]).collect();
    let score = ari(&truth, &found)?;

    let mut report = Report::new("clustering", &["node", "label", "cluster"]);
    describe(&mut report, &d);
    report
        .meta("geometry", args.geometry.as_str())
        .meta("k", args.k)
        .meta("seed", args.seed)
        .meta("ari", score)
        .meta("inertia", c.inertia)
        .meta("labelled_nodes", labelled.len());
    for (i, name) in d.names.iter().enumerate() {
        let label = labels[i].clone().unwrap_or_default();
        report.push(vec![name.as_str().into(), label.into(), c.labels[i].into()]);
    }
    save(&report, &args.out)
}

fn predict(args: PredictArgs) -> Result<()> {
    let d = load(&args.input)?;
    let spec = SplitSpec::new(args.train_frac, args.split, args.seed)?;
    let config = PredictionConfig {
        linear: LinearModelConfig {
            c3_grid: args.c3_grid.0,
            gamma_range: args.gamma_range,
            dims: args.dims,
            eig_floor: args.eig_floor,
            max_cardinality: args.input.max_cardinality,
            ..LinearModelConfig::default()
        },
        seed: args.seed,
    };
    let r = run_prediction(&d.hypergraph, &spec, &config)?;
    let mut report = Report::new("prediction", &["method", "auc_pr"]);
    describe(&mut report, &d);
    report
        .meta("split", args.split.as_str())
        .meta("train_fraction", args.train_frac)
        .meta("seed", args.seed)
        .meta("train_edges", r.train_edges)
        .meta("test_edges", r.test_edges)
        .meta("lcc_size", r.lcc_size)
        .meta("candidates", r.candidates)
        .meta("positives", r.positives)
        .meta("base_rate", r.base_rate())
        .meta("c3_star", r.c3_star)
        .meta("gamma_star", r.gamma_star);
    for (m, auc) in &r.auc {
        report.push(vec![m.as_str().into(), (*auc).into()]);
    }
    save(&report, &args.out)
}

fn synth(args: SynthArgs) -> Result<()> {
    let plan = ClusterPlan::new(args.geometry, args.k, args.m, args.gamma0, args.a, args.c3, args.seed)?;
    let s = generate_until_connected(&plan, args.max_attempts)?;
    log::info!(
        "{} hyperedges on {} nodes after {} attempt(s)",
        s.hypergraph.num_edges(),
        s.hypergraph.n(),
        s.attempts
    );
    let names = default_names(s.hypergraph.n());
    write_edge_list(&s.hypergraph, &names, &args.out)?;
    if let Some(path) = &args.labels_out {
        let labels: Vec<Option<String>> = s.labels.iter().map(|l| Some(l.to_string())).collect();
        write_labels(&names, &labels, path)?;
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Embed(a) => embed(a),
        Command::Compare(a) => compare(a),
        Command::Cluster(a) => cluster(a),
        Command::Predict(a) => predict(a),
        Command::Synth(a) => synth(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
