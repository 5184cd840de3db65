//! The four batch commands: cluster, eval, compare, stats.

use std::path::PathBuf;
use std::time::Instant;

use citeclust::error::{CliError, CliResult};
use citeclust::{heatmap, io, report};
use citeclust_core::compare::{distance_matrix, robustness_curve};
use citeclust_core::hybrid::{two_stage, HybridConfig, HybridPreset};
use citeclust_core::methods::{default_cluster_count, run_method};
use citeclust_core::metrics::{metrics_report, MetricsReport};
use citeclust_core::postprocess::{postprocess, PostprocessConfig};
use citeclust_core::rng::mix_seed;
use citeclust_core::{Algorithm, Clustering, Error, MethodConfig, SizeVariant};
use clap::Args;
use rayon::prelude::*;
use serde_json::json;

fn core_error(e: Error) -> CliError {
    match e {
        Error::TooManyClusters { .. }
        | Error::BadParameter { .. }
        | Error::UnknownMethod { .. }
        | Error::BadClassCount { .. } => CliError::Usage(e.to_string()),
        Error::LengthMismatch { .. } | Error::NodeOutOfRange { .. } => {
            CliError::Mismatch(e.to_string())
        }
        other => CliError::Input(other.to_string()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum MethodSpec {
    Plain(Algorithm),
    Hybrid(HybridPreset),
}

impl MethodSpec {
    fn parse(name: &str) -> CliResult<MethodSpec> {
        if let Ok(algorithm) = Algorithm::parse(name) {
            return Ok(MethodSpec::Plain(algorithm));
        }
        HybridPreset::parse(name)
            .map(MethodSpec::Hybrid)
            .map_err(core_error)
    }

    fn tag(self) -> &'static str {
        match self {
            MethodSpec::Plain(a) => a.tag(),
            MethodSpec::Hybrid(p) => p.tag(),
        }
    }
}

fn parse_variant(v: &str) -> CliResult<SizeVariant> {
    match v {
        "S" | "s" => Ok(SizeVariant::Small),
        "L" | "l" => Ok(SizeVariant::Large),
        other => Err(CliError::Usage(format!(
            "--variant must be S or L, got '{other}'"
        ))),
    }
}

// ---------------------------------------------------------------------------
// cluster
// ---------------------------------------------------------------------------

#[derive(Args, Debug)]
pub struct ClusterArgs {
    /// Edge-list file (gzip transparent).
    #[arg(long = "in", value_name = "FILE")]
    pub input: PathBuf,
    /// louvain | mapeq | lpa | kway | gracmap | metimap | louvmap | labmap.
    #[arg(long)]
    pub method: String,
    /// Base seed; replicate r runs with seed + r.
    #[arg(long, env = "CITECLUST_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Replication count.
    #[arg(long, default_value_t = 1)]
    pub reps: usize,
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
    /// Modularity resolution (louvain and louvmap only).
    #[arg(long)]
    pub resolution: Option<f64>,
    /// Target cluster count (kway only).
    #[arg(long)]
    pub clusters: Option<usize>,
    /// Cluster-count rule for kway without --clusters: S = n/15, L = n/50.
    #[arg(long)]
    pub variant: Option<String>,
    /// Apply the split-giants / merge-tinies post-processing.
    #[arg(long)]
    pub post: bool,
    #[arg(long, default_value_t = 15)]
    pub s_tiny: usize,
    #[arg(long)]
    pub s_giant: Option<usize>,
    /// Second-stage size threshold (hybrid methods only).
    #[arg(long)]
    pub refine_threshold: Option<usize>,
    /// First-stage cluster count override (gracmap and metimap only).
    #[arg(long)]
    pub first_clusters: Option<usize>,
    /// Worker threads for replications (default: available cores).
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Seed nodes for the D90 estimate.
    #[arg(long, default_value_t = 1000)]
    pub d90_sample: usize,
}

struct RepOutcome {
    seed: u64,
    clustering: Clustering,
    report: MetricsReport,
    elapsed: f64,
    post: Option<(Clustering, MetricsReport, f64)>,
}

fn validate_cluster_flags(spec: MethodSpec, args: &ClusterArgs) -> CliResult<()> {
    let usage = |msg: &str| Err(CliError::Usage(msg.to_string()));
    if args.resolution.is_some()
        && !matches!(
            spec,
            MethodSpec::Plain(Algorithm::Louvain) | MethodSpec::Hybrid(HybridPreset::Louvmap)
        )
    {
        return usage("--resolution applies to louvain and louvmap only");
    }
    if args.clusters.is_some() && spec != MethodSpec::Plain(Algorithm::KWay) {
        return usage("--clusters applies to kway only");
    }
    if args.variant.is_some() && spec != MethodSpec::Plain(Algorithm::KWay) {
        return usage("--variant applies to kway only");
    }
    if args.variant.is_some() && args.clusters.is_some() {
        return usage("--variant and --clusters are mutually exclusive");
    }
    if args.refine_threshold.is_some() && !matches!(spec, MethodSpec::Hybrid(_)) {
        return usage("--refine-threshold applies to hybrid methods only");
    }
    if args.first_clusters.is_some()
        && !matches!(
            spec,
            MethodSpec::Hybrid(HybridPreset::Gracmap) | MethodSpec::Hybrid(HybridPreset::Metimap)
        )
    {
        return usage("--first-clusters applies to gracmap and metimap only");
    }
    if args.s_giant.is_some() && !args.post {
        return usage("--s-giant requires --post");
    }
    if args.reps == 0 {
        return usage("--reps must be at least 1");
    }
    if let Some(v) = &args.variant {
        parse_variant(v)?;
    }
    Ok(())
}

fn plain_config(
    algorithm: Algorithm,
    seed: u64,
    resolution: Option<f64>,
    clusters: Option<usize>,
    variant: Option<SizeVariant>,
    n: usize,
) -> MethodConfig {
    let mut config = MethodConfig::new(algorithm).with_seed(seed);
    if let Some(r) = resolution {
        config.resolution = r;
    }
    config.target_clusters = clusters.or_else(|| {
        if algorithm == Algorithm::KWay {
            variant.map(|v| default_cluster_count(n, v))
        } else {
            None
        }
    });
    config
}

fn hybrid_config(
    preset: HybridPreset,
    n: usize,
    seed: u64,
    resolution: Option<f64>,
    refine_threshold: Option<usize>,
    first_clusters: Option<usize>,
) -> HybridConfig {
    let mut config = HybridConfig::preset(preset, n, seed);
    if let Some(r) = resolution {
        config.first.resolution = r;
    }
    if let Some(t) = refine_threshold {
        config.refine_threshold = t;
    }
    if let Some(c) = first_clusters {
        config.first.target_clusters = Some(c);
    }
    config
}

/// Splitter handed to post-processing: the producing method itself, or the
/// refinement stage for hybrid methods.
fn splitter_config(spec: MethodSpec, args: &ClusterArgs, n: usize, seed: u64) -> MethodConfig {
    match spec {
        MethodSpec::Plain(algorithm) => plain_config(
            algorithm,
            seed,
            args.resolution,
            args.clusters,
            args.variant.as_deref().and_then(|v| parse_variant(v).ok()),
            n,
        ),
        MethodSpec::Hybrid(_) => MethodConfig::new(Algorithm::Infomap).with_seed(seed),
    }
}

pub fn run_cluster(args: &ClusterArgs) -> CliResult<()> {
    let spec = MethodSpec::parse(&args.method)?;
    validate_cluster_flags(spec, args)?;
    let (graph, _) = io::load_graph(&args.input)?;
    let n = graph.node_count();
    if let Some(c) = args.clusters {
        if c > n {
            return Err(CliError::Usage(format!(
                "--clusters {c} exceeds the {n} nodes"
            )));
        }
    }
    std::fs::create_dir_all(&args.out_dir)?;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Input(e.to_string()))?;
    let variant = match &args.variant {
        Some(v) => Some(parse_variant(v)?),
        None => None,
    };
    let outcomes: Vec<CliResult<RepOutcome>> = pool.install(|| {
        (0..args.reps)
            .into_par_iter()
            .map(|rep| {
                let seed = args.seed.wrapping_add(rep as u64);
                let started = Instant::now();
                let clustering = match spec {
                    MethodSpec::Plain(algorithm) => {
                        let config = plain_config(
                            algorithm,
                            seed,
                            args.resolution,
                            args.clusters,
                            variant,
                            n,
                        );
                        run_method(&graph, &config).map_err(core_error)?
                    }
                    MethodSpec::Hybrid(preset) => {
                        let config = hybrid_config(
                            preset,
                            n,
                            seed,
                            args.resolution,
                            args.refine_threshold,
                            args.first_clusters,
                        );
                        two_stage(&graph, &config).map_err(core_error)?
                    }
                };
                let elapsed = started.elapsed().as_secs_f64();
                let report =
                    metrics_report(&graph, &clustering, args.d90_sample, args.s_tiny, seed)
                        .map_err(core_error)?;
                let post = if args.post {
                    let mut config = PostprocessConfig::new(
                        splitter_config(spec, args, n, seed),
                        mix_seed(seed, 0x9057),
                    );
                    config.s_tiny = args.s_tiny;
                    if let Some(g) = args.s_giant {
                        config.s_giant = g;
                    }
                    let post_started = Instant::now();
                    let processed =
                        postprocess(&graph, &clustering, &config).map_err(core_error)?;
                    let post_elapsed = elapsed + post_started.elapsed().as_secs_f64();
                    let post_report =
                        metrics_report(&graph, &processed, args.d90_sample, args.s_tiny, seed)
                            .map_err(core_error)?;
                    Some((processed, post_report, post_elapsed))
                } else {
                    None
                };
                Ok(RepOutcome {
                    seed,
                    clustering,
                    report,
                    elapsed,
                    post,
                })
            })
            .collect()
    });
    let outcomes: Vec<RepOutcome> = outcomes.into_iter().collect::<CliResult<_>>()?;

    let tag = spec.tag();
    let mut pre_reports = Vec::new();
    let mut post_reports = Vec::new();
    let mut timings = Vec::new();
    let mut post_timings = Vec::new();
    for (rep, outcome) in outcomes.iter().enumerate() {
        let base = args.out_dir.join(format!("{tag}_rep{rep}"));
        io::write_clustering(
            &base.with_extension("clusters"),
            &graph,
            &outcome.clustering,
        )?;
        let mut body = report::report_json(&outcome.report);
        if let Some((clustering, post_report, _)) = &outcome.post {
            io::write_clustering(&base.with_extension("post.clusters"), &graph, clustering)?;
            body = json!({ "pre": body, "post": report::report_json(post_report) });
        }
        io::write_text(
            &base.with_extension("metrics.json"),
            &serde_json::to_string_pretty(&body).expect("serializable report"),
        )?;
        pre_reports.push(outcome.report.clone());
        timings.push(outcome.elapsed);
        if let Some((_, post_report, post_elapsed)) = &outcome.post {
            post_reports.push(post_report.clone());
            post_timings.push(*post_elapsed);
        }
    }

    let mut summary = json!({
        "method": tag,
        "reps": args.reps,
        "seed": args.seed,
        "metrics": report::summarize(&pre_reports),
    });
    if !post_reports.is_empty() {
        summary["post_metrics"] = report::summarize(&post_reports);
    }
    io::write_text(
        &args.out_dir.join("summary.json"),
        &serde_json::to_string_pretty(&summary).expect("serializable summary"),
    )?;

    // Timings and timestamps live here so the data files stay byte-identical
    // across reruns of the same manifest.
    let provenance = json!({
        "timestamp_unix": std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
        "argv": std::env::args().collect::<Vec<_>>(),
        "seeds": outcomes.iter().map(|o| o.seed).collect::<Vec<_>>(),
        "t_sec": timings,
        "post_t_sec": post_timings,
    });
    io::write_text(
        &args.out_dir.join("provenance.json"),
        &serde_json::to_string_pretty(&provenance).expect("serializable provenance"),
    )?;
    Ok(())
}

// ---------------------------------------------------------------------------
// eval
// ---------------------------------------------------------------------------

#[derive(Args, Debug)]
pub struct EvalArgs {
    /// Edge-list file.
    #[arg(long = "in", value_name = "FILE")]
    pub input: PathBuf,
    /// Clustering file to evaluate.
    #[arg(long, value_name = "FILE")]
    pub clustering: PathBuf,
    /// Emit a CSV header and row instead of JSON.
    #[arg(long)]
    pub csv: bool,
    #[arg(long, default_value_t = 1000)]
    pub d90_sample: usize,
    #[arg(long, env = "CITECLUST_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 15)]
    pub s_tiny: usize,
}

pub fn run_eval(args: &EvalArgs) -> CliResult<()> {
    let (graph, _) = io::load_graph(&args.input)?;
    let clustering = io::load_clustering(&args.clustering, &graph)?;
    let report = metrics_report(&graph, &clustering, args.d90_sample, args.s_tiny, args.seed)
        .map_err(core_error)?;
    if args.csv {
        println!("{}", report::CSV_HEADER);
        println!("{}", report::report_csv_row(&report));
    } else {
        println!(
            "{}",
            serde_json::to_string_pretty(&report::report_json(&report))
                .expect("serializable report")
        );
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// compare
// ---------------------------------------------------------------------------

#[derive(Args, Debug)]
pub struct CompareArgs {
    /// Clustering files to compare pairwise (two or more).
    #[arg(value_name = "CLUSTERING")]
    pub files: Vec<PathBuf>,
    /// Edge-list file (required for --robustness).
    #[arg(long = "in", value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// Class counts for k-means method classification, e.g. 5,11.
    #[arg(long, value_delimiter = ',')]
    pub classes: Vec<usize>,
    /// Render heatmap.svg alongside the distance matrix.
    #[arg(long)]
    pub heatmap: bool,
    /// Export the cluster-overlap table of exactly two clusterings as
    /// contingency.csv (rows c,d,count) for external alluvial tools.
    #[arg(long)]
    pub contingency: bool,
    /// Rewiring fractions for a robustness sweep, e.g. 0,0.1,0.2.
    #[arg(long, value_delimiter = ',')]
    pub robustness: Vec<f64>,
    /// Method for the robustness sweep (plain methods only).
    #[arg(long)]
    pub method: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub reps: usize,
    #[arg(long, env = "CITECLUST_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub resolution: Option<f64>,
    #[arg(long)]
    pub clusters: Option<usize>,
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
}

pub fn run_compare(args: &CompareArgs) -> CliResult<()> {
    if args.files.is_empty() && args.robustness.is_empty() {
        return Err(CliError::Usage(
            "nothing to do: pass two or more clustering files, or --robustness with --method"
                .to_string(),
        ));
    }
    std::fs::create_dir_all(&args.out_dir)?;

    if !args.files.is_empty() {
        if args.files.len() < 2 {
            return Err(CliError::Usage(
                "need at least two clustering files".to_string(),
            ));
        }
        for &k in &args.classes {
            if k == 0 || k > args.files.len() {
                return Err(CliError::Usage(format!(
                    "--classes {k} is out of range for {} inputs",
                    args.files.len()
                )));
            }
        }
        if args.contingency && args.files.len() != 2 {
            return Err(CliError::Usage(
                "--contingency needs exactly two clustering files".to_string(),
            ));
        }
        let runs = io::load_clusterings_aligned(&args.files)?;
        let matrix = distance_matrix(&runs).map_err(core_error)?;

        if args.contingency {
            let table = citeclust_core::partition::contingency(&runs[0].1, &runs[1].1)
                .map_err(core_error)?;
            let mut csv = String::from("c,d,count\n");
            for &(c, d, count) in table.cells() {
                csv.push_str(&format!("{c},{d},{count}\n"));
            }
            io::write_text(&args.out_dir.join("contingency.csv"), &csv)?;
        }

        let mut csv = String::from("label");
        for label in matrix.labels() {
            csv.push(',');
            csv.push_str(&report::csv_field(label));
        }
        csv.push('\n');
        for i in 0..matrix.len() {
            csv.push_str(&report::csv_field(&matrix.labels()[i]));
            for j in 0..matrix.len() {
                csv.push(',');
                csv.push_str(&report::fmt6(matrix.value(i, j)));
            }
            csv.push('\n');
        }
        io::write_text(&args.out_dir.join("distances.csv"), &csv)?;

        let mut display_order: Vec<usize> = (0..matrix.len()).collect();
        for (ki, &k) in args.classes.iter().enumerate() {
            let classes = citeclust_core::compare::classify_methods(&matrix, k, args.seed)
                .map_err(core_error)?;
            let mut csv = String::from("label,class,silhouette\n");
            for member in &classes.members {
                csv.push_str(&format!(
                    "{},{},{}\n",
                    report::csv_field(&member.label),
                    member.class,
                    report::fmt6(member.silhouette)
                ));
            }
            io::write_text(&args.out_dir.join(format!("classes_{k}.csv")), &csv)?;
            if ki == 0 {
                // Heatmap rows follow the first classification's ordering.
                let index_of = |label: &str| {
                    matrix
                        .labels()
                        .iter()
                        .position(|l| l == label)
                        .expect("known label")
                };
                display_order = classes.members.iter().map(|m| index_of(&m.label)).collect();
            }
        }
        if args.heatmap {
            io::write_text(
                &args.out_dir.join("heatmap.svg"),
                &heatmap::render(&matrix, &display_order),
            )?;
        }
    }

    if !args.robustness.is_empty() {
        let Some(input) = &args.input else {
            return Err(CliError::Usage("--robustness requires --in".to_string()));
        };
        let Some(method) = &args.method else {
            return Err(CliError::Usage(
                "--robustness requires --method".to_string(),
            ));
        };
        let MethodSpec::Plain(algorithm) = MethodSpec::parse(method)? else {
            return Err(CliError::Usage(
                "--robustness supports the plain methods (louvain, mapeq, lpa, kway)".to_string(),
            ));
        };
        if args.robustness.iter().any(|&a| !(0.0..=1.0).contains(&a)) {
            return Err(CliError::Usage(
                "--robustness fractions must lie in [0, 1]".to_string(),
            ));
        }
        let (graph, _) = io::load_graph(input)?;
        let mut means = vec![0.0f64; args.robustness.len()];
        for rep in 0..args.reps.max(1) {
            let mut config =
                MethodConfig::new(algorithm).with_seed(args.seed.wrapping_add(rep as u64));
            if let Some(r) = args.resolution {
                config.resolution = r;
            }
            config.target_clusters = args.clusters;
            let curve = robustness_curve(
                &graph,
                &config,
                &args.robustness,
                mix_seed(args.seed, 0xCBCE + rep as u64),
            )
            .map_err(core_error)?;
            for (slot, (_, v)) in means.iter_mut().zip(curve.iter()) {
                *slot += v;
            }
        }
        let reps = args.reps.max(1) as f64;
        let mut csv = String::from("alpha,v_norm\n");
        for (&alpha, &sum) in args.robustness.iter().zip(means.iter()) {
            csv.push_str(&format!(
                "{},{}\n",
                report::fmt6(alpha),
                report::fmt6(sum / reps)
            ));
        }
        io::write_text(
            &args
                .out_dir
                .join(format!("robustness_{}.csv", algorithm.tag())),
            &csv,
        )?;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// stats
// ---------------------------------------------------------------------------

#[derive(Args, Debug)]
pub struct StatsArgs {
    /// Edge-list file.
    #[arg(long = "in", value_name = "FILE")]
    pub input: PathBuf,
    /// Emit a CSV header and row instead of JSON.
    #[arg(long)]
    pub csv: bool,
}

pub fn run_stats(args: &StatsArgs) -> CliResult<()> {
    let (_, stats) = io::load_graph(&args.input)?;
    if args.csv {
        println!("n,m,k,lcc,dropped");
        println!(
            "{},{},{},{},{}",
            stats.node_count,
            stats.edge_count,
            report::fmt6(stats.average_degree),
            report::fmt6(stats.lcc_fraction),
            stats.dropped_nodes
        );
    } else {
        let body = json!({
            "n": stats.node_count,
            "m": stats.edge_count,
            "k": report::sig6(stats.average_degree),
            "lcc": report::sig6(stats.lcc_fraction),
            "dropped": stats.dropped_nodes,
        });
        println!(
            "{}",
            serde_json::to_string_pretty(&body).expect("serializable stats")
        );
    }
    Ok(())
}
