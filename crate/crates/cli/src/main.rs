use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;
use softnet::centrality::{node_metrics, rankings};
use softnet::control::{controllability_estimate, driver_nodes};
use softnet::extract::{build_network, scan_sources, ExtractOptions};
use softnet::metrics::{histogram_table, network_stats, DegreeKind, StatsOptions};
use softnet::modules::{build_hierarchy, detect, modularity, nmi, package_partition, partition_table, Algorithm};
use softnet::predict::predict_packages;
use softnet::report::{export_network, run_pipeline, Config, ExportFormat, Input};
use softnet::{DependencyNetwork, Partition};

type CliResult<T> = Result<T, Box<dyn std::error::Error>>;

#[derive(Parser)]
#[command(name = "softnet", version, about = "Dependency network analysis of object-oriented code")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct NetworkArg {
    /// Source directory, `.java` file or tab-separated edge list.
    input: PathBuf,
    /// Merge nested types into their top-level class (source input only).
    #[arg(long)]
    fold_nested: bool,
}

impl NetworkArg {
    fn load(&self) -> CliResult<DependencyNetwork> {
        let (net, diags) = Input::from_path(&self.input).load(self.fold_nested)?;
        for d in &diags {
            log::warn!("{d}");
        }
        if net.is_empty() {
            return Err(format!("{}: network is empty", self.input.display()).into());
        }
        log::info!("loaded n={} m={}", net.n(), net.m());
        Ok(net)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build the class dependency network of a source tree.
    Extract {
        root: PathBuf,
        #[arg(long)]
        fold_nested: bool,
        /// Source file extension.
        #[arg(long, default_value = "java")]
        ext: String,
        /// Edge list output (stdout if omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Degree statistics, power-law fit and small-world measures.
    Metrics {
        #[command(flatten)]
        net: NetworkArg,
        #[arg(long, default_value = "total")]
        degree: DegreeKind,
        #[arg(long, default_value_t = 20)]
        er_samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the degree distribution table here.
        #[arg(long)]
        histogram: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Per-class centralities and rankings.
    Centrality {
        #[command(flatten)]
        net: NetworkArg,
        #[arg(long, default_value_t = 10)]
        top: usize,
        /// Betweenness on the undirected network.
        #[arg(long)]
        undirected: bool,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Driver nodes from a maximum matching.
    Control {
        #[command(flatten)]
        net: NetworkArg,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Module detection.
    Modules {
        #[command(flatten)]
        net: NetworkArg,
        #[arg(long, default_value = "gp")]
        algo: Algorithm,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also build the recursive module hierarchy with this minimum size.
        #[arg(long)]
        min_module: Option<usize>,
        /// Write `name<TAB>module` lines here.
        #[arg(long)]
        partition: Option<PathBuf>,
        /// Write a module-colored DOT file here.
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Predict package membership from module co-membership.
    Predict {
        #[command(flatten)]
        net: NetworkArg,
        /// Detector providing the modules; the module hierarchy when omitted.
        #[arg(long)]
        algo: Option<Algorithm>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        min_module: usize,
        /// Package levels to score.
        #[arg(long, default_value_t = 4)]
        levels: usize,
        /// Include per-class predictions.
        #[arg(long)]
        nodes: bool,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Run every stage and write the result bundle.
    Report {
        input: PathBuf,
        /// `key = value` configuration file.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Overrides the configured seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Bundle output (stdout if omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also export the network: edgelist, graphml or dot.
        #[arg(long, requires = "export_to")]
        export: Option<ExportFormat>,
        #[arg(long)]
        export_to: Option<PathBuf>,
    },
}

fn write_out(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| format!("{}: {e}", p.display()).into()),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn write_json(path: Option<&Path>, value: &impl Serialize) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write_out(path, &text)
}

fn run(cli: Cli) -> CliResult<ExitCode> {
    match cli.command {
        Command::Extract {
            root,
            fold_nested,
            ext,
            output,
        } => {
            let options = ExtractOptions {
                fold_nested,
                extension: ext,
                ..ExtractOptions::default()
            };
            let scan = scan_sources(&root, &options)?;
            let x = build_network(&scan.entities, &options)?;
            for d in scan.diagnostics.iter().chain(&x.diagnostics) {
                log::warn!("{d}");
            }
            log::info!(
                "{} types, n={} m={}",
                scan.entities.len(),
                x.network.n(),
                x.network.m()
            );
            write_out(
                output.as_deref(),
                &export_network(&x.network, ExportFormat::EdgeList, None),
            )?;
        }
        Command::Metrics {
            net,
            degree,
            er_samples,
            seed,
            histogram,
            json,
        } => {
            let net = net.load()?;
            let stats = network_stats(
                &net,
                &StatsOptions {
                    degree,
                    er_samples,
                    seed,
                },
            );
            if let Some(e) = &stats.power_law_error {
                log::warn!("power-law fit: {e}");
            }
            if let Some(p) = histogram {
                write_out(Some(&p), &histogram_table(&stats.degrees))?;
            }
            write_json(json.as_deref(), &stats)?;
        }
        Command::Centrality {
            net,
            top,
            undirected,
            json,
        } => {
            let net = net.load()?;
            let nodes = node_metrics(&net, undirected);
            let ranks = rankings(&net, &nodes, top);
            write_json(json.as_deref(), &json!({ "nodes": nodes, "rankings": ranks }))?;
        }
        Command::Control { net, json } => {
            let net = net.load()?;
            let mut report = driver_nodes(&net)?;
            let stats = network_stats(
                &net,
                &StatsOptions {
                    er_samples: 0,
                    ..StatsOptions::default()
                },
            );
            report.estimate = stats
                .power_law
                .as_ref()
                .and_then(|f| controllability_estimate(stats.degrees.k, f.gamma).ok());
            let drivers: Vec<&str> = report.drivers.iter().map(|&v| net.name(v)).collect();
            write_json(
                json.as_deref(),
                &json!({ "control": report, "driver_names": drivers }),
            )?;
        }
        Command::Modules {
            net,
            algo,
            seed,
            min_module,
            partition,
            dot,
            json,
        } => {
            let net = net.load()?;
            let p = detect(&net, algo, seed)?;
            let packages = package_truth(&net);
            let hierarchy = min_module.map(|k| {
                let h = build_hierarchy(&net, k, seed);
                let levels: Vec<_> = h
                    .levels
                    .iter()
                    .map(|l| {
                        json!({
                            "module_count": l.module_count(),
                            "nmi_packages": packages.as_ref().and_then(|t| nmi(l, t).ok()),
                            "assignment": l.assignment(),
                        })
                    })
                    .collect();
                json!({ "min_module": k, "levels": levels, "parents": h.parents })
            });
            if let Some(path) = partition {
                write_out(Some(&path), &partition_table(&net, &p))?;
            }
            if let Some(path) = dot {
                write_out(Some(&path), &export_network(&net, ExportFormat::Dot, Some(&p)))?;
            }
            write_json(
                json.as_deref(),
                &json!({
                    "algorithm": algo,
                    "seed": seed,
                    "module_count": p.module_count(),
                    "modularity": modularity(&net, &p)?,
                    "nmi_packages": packages.as_ref().and_then(|t| nmi(&p, t).ok()),
                    "assignment": p.assignment(),
                    "hierarchy": hierarchy,
                }),
            )?;
        }
        Command::Predict {
            net,
            algo,
            seed,
            min_module,
            levels,
            nodes,
            json,
        } => {
            let net = net.load()?;
            let p = match algo {
                Some(a) => detect(&net, a, seed)?,
                None => build_hierarchy(&net, min_module, seed).bottom().clone(),
            };
            let prediction = predict_packages(&net, &p, levels)?;
            if nodes {
                write_json(json.as_deref(), &prediction)?;
            } else {
                write_json(json.as_deref(), &prediction.report)?;
            }
        }
        Command::Report {
            input,
            config,
            seed,
            output,
            export,
            export_to,
        } => {
            let mut cfg = match config {
                Some(p) => Config::load(&p)?,
                None => Config::default(),
            };
            if let Some(s) = seed {
                cfg.seed = s;
            }
            let run = run_pipeline(&Input::from_path(&input), &cfg);
            write_out(output.as_deref(), &run.bundle.to_json())?;
            if let (Some(fmt), Some(path), Some(net)) = (export, export_to, run.network.as_ref()) {
                write_out(
                    Some(&path),
                    &export_network(net, fmt, run.partition.as_ref()),
                )?;
            }
            if run.network.is_none() || run.bundle.errors.iter().any(|e| e.stage == "load") {
                return Ok(ExitCode::FAILURE);
            }
            if run.bundle.any_fail() {
                return Ok(ExitCode::from(2));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn package_truth(net: &DependencyNetwork) -> Option<Partition> {
    if net.has_packages() {
        package_partition(net, None).ok()
    } else {
        None
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("softnet: {e}");
            ExitCode::FAILURE
        }
    }
}
