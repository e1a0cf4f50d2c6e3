//! End-to-end analysis producing one JSON bundle.

use std::path::{Path, PathBuf};

use serde::Serialize;

use super::config::Config;
use super::indicators::{evaluate_indicators, QualityReport};
use crate::centrality::{node_metrics, rankings, NodeMetrics, Rankings};
use crate::control::{controllability_estimate, driver_nodes, ControlReport};
use crate::error::Result;
use crate::extract::{build_network, load_edgelist, scan_sources, ExtractOptions};
use crate::metrics::{network_stats, NetworkStats, StatsOptions};
use crate::modules::{build_hierarchy, detect, modularity, nmi, package_partition, Algorithm};
use crate::network::{DependencyNetwork, Diagnostic};
use crate::partition::Partition;
use crate::predict::{predict_packages, PredictionReport};

/// Bumped whenever the bundle layout changes.
pub const SCHEMA_VERSION: u32 = 1;

/// JSON Schema of the bundle.
pub const BUNDLE_SCHEMA: &str = include_str!("../../schema/bundle.schema.json");

#[derive(Clone, Debug)]
pub enum Input {
    Sources(PathBuf),
    EdgeList(PathBuf),
    Network(DependencyNetwork),
}

impl Input {
    /// Directories and `.java` files are source input; anything else is
    /// read as an edge list.
    pub fn from_path(path: &Path) -> Input {
        if path.is_dir() || path.extension().is_some_and(|e| e == "java") {
            Input::Sources(path.to_path_buf())
        } else {
            Input::EdgeList(path.to_path_buf())
        }
    }

    /// Loads the network, returning loader diagnostics alongside.
    pub fn load(&self, fold_nested: bool) -> Result<(DependencyNetwork, Vec<Diagnostic>)> {
        match self {
            Input::Sources(root) => {
                let options = ExtractOptions {
                    fold_nested,
                    ..ExtractOptions::default()
                };
                let scan = scan_sources(root, &options)?;
                let x = build_network(&scan.entities, &options)?;
                let mut diags = scan.diagnostics;
                diags.extend(x.diagnostics);
                Ok((x.network, diags))
            }
            Input::EdgeList(path) => {
                let el = load_edgelist(path)?;
                Ok((el.network, el.warnings))
            }
            Input::Network(net) => Ok((net.clone(), Vec::new())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StageError {
    pub stage: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NetworkSummary {
    pub n: usize,
    pub m: usize,
    pub has_packages: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ModuleResult {
    pub algorithm: Algorithm,
    pub module_count: usize,
    pub modularity: f64,
    pub nmi_packages: Option<f64>,
    pub assignment: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HierarchyLevel {
    pub module_count: usize,
    pub nmi_packages: Option<f64>,
    pub assignment: Vec<u32>,
    /// Enclosing module at the previous level, per module.
    pub parents: Option<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HierarchySummary {
    pub min_module: usize,
    pub levels: Vec<HierarchyLevel>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Bundle {
    pub schema_version: u32,
    pub seed: u64,
    pub network: Option<NetworkSummary>,
    pub node_names: Vec<String>,
    pub diagnostics: Vec<Diagnostic>,
    pub stats: Option<NetworkStats>,
    pub nodes: Option<Vec<NodeMetrics>>,
    pub rankings: Option<Rankings>,
    pub control: Option<ControlReport>,
    pub partitions: Vec<ModuleResult>,
    pub hierarchy: Option<HierarchySummary>,
    pub prediction: Option<PredictionReport>,
    pub quality: Option<QualityReport>,
    pub errors: Vec<StageError>,
}

impl Bundle {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("bundle serializes");
        s.push('\n');
        s
    }

    pub fn any_fail(&self) -> bool {
        self.quality.as_ref().is_some_and(QualityReport::any_fail)
    }
}

/// Bundle plus the artifacts needed for exports.
#[derive(Clone, Debug)]
pub struct PipelineRun {
    pub bundle: Bundle,
    pub network: Option<DependencyNetwork>,
    /// Bottom level of the module hierarchy.
    pub partition: Option<Partition>,
}

/// Runs every stage in dependency order. A failing stage is recorded in
/// `errors` and the stages that do not need its output still run.
pub fn run_pipeline(input: &Input, config: &Config) -> PipelineRun {
    let mut bundle = Bundle {
        schema_version: SCHEMA_VERSION,
        seed: config.seed,
        network: None,
        node_names: Vec::new(),
        diagnostics: Vec::new(),
        stats: None,
        nodes: None,
        rankings: None,
        control: None,
        partitions: Vec::new(),
        hierarchy: None,
        prediction: None,
        quality: None,
        errors: Vec::new(),
    };
    let fail = |bundle: &mut Bundle, stage: &str, message: String| {
        log::warn!("{stage}: {message}");
        bundle.errors.push(StageError {
            stage: stage.to_string(),
            message,
        });
    };

    let net = match input.load(config.fold_nested) {
        Ok((net, diags)) => {
            bundle.diagnostics = diags;
            net
        }
        Err(e) => {
            fail(&mut bundle, "load", e.to_string());
            return PipelineRun {
                bundle,
                network: None,
                partition: None,
            };
        }
    };
    bundle.network = Some(NetworkSummary {
        n: net.n(),
        m: net.m(),
        has_packages: net.has_packages(),
    });
    bundle.node_names = net.names().to_vec();
    if net.is_empty() {
        fail(&mut bundle, "load", "network is empty".into());
        return PipelineRun {
            bundle,
            network: Some(net),
            partition: None,
        };
    }

    let stats = network_stats(
        &net,
        &StatsOptions {
            degree: config.degree,
            er_samples: config.er_samples,
            seed: config.seed,
        },
    );
    if let Some(e) = &stats.power_law_error {
        fail(&mut bundle, "metrics", format!("power-law fit: {e}"));
    }

    let metrics = node_metrics(&net, config.undirected_bc);
    bundle.rankings = Some(rankings(&net, &metrics, config.top));

    match driver_nodes(&net) {
        Ok(mut report) => {
            report.estimate = stats
                .power_law
                .as_ref()
                .and_then(|f| controllability_estimate(stats.degrees.k, f.gamma).ok());
            bundle.control = Some(report);
        }
        Err(e) => fail(&mut bundle, "control", e.to_string()),
    }

    let packages = if net.has_packages() {
        match package_partition(&net, None) {
            Ok(p) => Some(p),
            Err(e) => {
                fail(&mut bundle, "modules", e.to_string());
                None
            }
        }
    } else {
        None
    };
    let against_packages = |p: &Partition| packages.as_ref().and_then(|truth| nmi(p, truth).ok());

    for &algorithm in &config.algorithms {
        match detect(&net, algorithm, config.seed) {
            Ok(p) => bundle.partitions.push(ModuleResult {
                algorithm,
                module_count: p.module_count(),
                modularity: modularity(&net, &p).unwrap_or(0.0),
                nmi_packages: against_packages(&p),
                assignment: p.assignment().to_vec(),
            }),
            Err(e) => fail(&mut bundle, "modules", format!("{algorithm}: {e}")),
        }
    }

    let hierarchy = build_hierarchy(&net, config.min_module, config.seed);
    bundle.hierarchy = Some(HierarchySummary {
        min_module: config.min_module,
        levels: hierarchy
            .levels
            .iter()
            .enumerate()
            .map(|(i, p)| HierarchyLevel {
                module_count: p.module_count(),
                nmi_packages: against_packages(p),
                assignment: p.assignment().to_vec(),
                parents: i.checked_sub(1).map(|j| hierarchy.parents[j].clone()),
            })
            .collect(),
    });
    let bottom = hierarchy.bottom().clone();

    if net.has_packages() {
        match predict_packages(&net, &bottom, config.levels) {
            Ok(p) => bundle.prediction = Some(p.report),
            Err(e) => fail(&mut bundle, "predict", e.to_string()),
        }
    }

    bundle.quality = Some(evaluate_indicators(
        &stats,
        Some(&metrics),
        bundle.control.as_ref(),
        &config.thresholds,
    ));
    bundle.stats = Some(stats);
    bundle.nodes = Some(metrics);

    PipelineRun {
        bundle,
        network: Some(net),
        partition: Some(bottom),
    }
}
