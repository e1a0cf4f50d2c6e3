//! Package prediction from module membership.
//!
//! Each class votes leave-one-out: every other member of its module
//! supports its own package with weight `J(i, j)`, the Jaccard similarity
//! of undirected neighbor sets. Coarser levels are scored by truncating the
//! bottom-level prediction and the truth to the same depth.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::modules::{level_of, package_paths, root_depth, truncate};
use crate::network::{DependencyNetwork, NodeId};
use crate::partition::Partition;

/// Relative tolerance under which two vote totals count as tied.
const TIE: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PredictionReport {
    pub ca_bottom: f64,
    /// Accuracy at levels `1..=levels`; `None` beyond the deepest level.
    pub ca_per_level: Vec<Option<f64>>,
    pub l_mean: f64,
    pub l_max: usize,
    /// Classes alone in their module, predicted from the global majority.
    pub fallback_count: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NodePrediction {
    pub node: NodeId,
    pub name: String,
    pub truth: String,
    pub predicted: String,
    pub correct: bool,
    pub fallback: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Prediction {
    pub nodes: Vec<NodePrediction>,
    pub report: PredictionReport,
}

/// `|Γi ∩ Γj| / |Γi ∪ Γj|` over undirected neighbors; 0 when both are empty.
pub fn jaccard(net: &DependencyNetwork, i: NodeId, j: NodeId) -> f64 {
    let (a, b) = (net.neighbors(i), net.neighbors(j));
    let (mut x, mut y, mut common) = (0, 0, 0usize);
    while x < a.len() && y < b.len() {
        match a[x].cmp(&b[y]) {
            std::cmp::Ordering::Less => x += 1,
            std::cmp::Ordering::Greater => y += 1,
            std::cmp::Ordering::Equal => {
                common += 1;
                x += 1;
                y += 1;
            }
        }
    }
    let union = a.len() + b.len() - common;
    if union == 0 {
        0.0
    } else {
        common as f64 / union as f64
    }
}

/// Picks the winning package: highest weight, then most frequent in the
/// module, then lexicographically smallest.
fn argmax<'a>(votes: &HashMap<&'a str, (f64, usize)>) -> &'a str {
    let top = votes.values().map(|v| v.0).fold(f64::NEG_INFINITY, f64::max);
    let tol = TIE * top.abs().max(f64::MIN_POSITIVE);
    votes
        .iter()
        .filter(|(_, v)| v.0 >= top - tol)
        .min_by(|a, b| b.1 .1.cmp(&a.1 .1).then(a.0.cmp(b.0)))
        .map(|(p, _)| *p)
        .expect("at least one vote")
}

/// Prediction with a caller-supplied pairwise weight in place of Jaccard.
pub fn predict_with<W>(
    net: &DependencyNetwork,
    partition: &Partition,
    levels: usize,
    weight: W,
) -> Result<Prediction>
where
    W: Fn(NodeId, NodeId) -> f64 + Sync,
{
    if partition.len() != net.n() {
        return Err(Error::NodeSetMismatch {
            left: net.n(),
            right: partition.len(),
        });
    }
    let paths = package_paths(net)?;
    let bottom: Vec<String> = paths.iter().map(|p| p.join(".")).collect();
    let modules = partition.modules();

    let mut global: HashMap<&str, (f64, usize)> = HashMap::new();
    for p in &bottom {
        let e = global.entry(p.as_str()).or_insert((0.0, 0));
        e.0 += 1.0;
        e.1 += 1;
    }
    let majority = argmax(&global).to_string();

    let nodes: Vec<NodePrediction> = net
        .nodes()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|i| {
            let members = &modules[partition.module_of(i)];
            let (predicted, fallback) = if members.len() == 1 {
                (majority.clone(), true)
            } else {
                let mut votes: HashMap<&str, (f64, usize)> = HashMap::new();
                for &j in members.iter().filter(|&&j| j != i) {
                    let e = votes.entry(bottom[j.index()].as_str()).or_insert((0.0, 0));
                    e.0 += weight(i, j);
                    e.1 += 1;
                }
                (argmax(&votes).to_string(), false)
            };
            let truth = bottom[i.index()].clone();
            NodePrediction {
                node: i,
                name: net.name(i).to_string(),
                correct: predicted == truth,
                truth,
                predicted,
                fallback,
            }
        })
        .collect();

    let n = nodes.len().max(1) as f64;
    let root = root_depth(&paths);
    let depth: Vec<usize> = paths.iter().map(|p| level_of(p, root)).collect();
    let l_max = depth.iter().copied().max().unwrap_or(0);
    let split = |s: &str| -> Vec<String> {
        if s.is_empty() {
            Vec::new()
        } else {
            s.split('.').map(String::from).collect()
        }
    };
    let ca_per_level = (1..=levels)
        .map(|level| {
            (level <= l_max).then(|| {
                let hits = nodes
                    .iter()
                    .zip(&paths)
                    .filter(|(p, truth)| {
                        truncate(&split(&p.predicted), root, level) == truncate(truth, root, level)
                    })
                    .count();
                hits as f64 / n
            })
        })
        .collect();

    let report = PredictionReport {
        ca_bottom: nodes.iter().filter(|p| p.correct).count() as f64 / n,
        ca_per_level,
        l_mean: depth.iter().sum::<usize>() as f64 / n,
        l_max,
        fallback_count: nodes.iter().filter(|p| p.fallback).count(),
    };
    Ok(Prediction { nodes, report })
}

/// Leave-one-out Jaccard-weighted package prediction with accuracy at the
/// bottom level and at levels `1..=levels`.
pub fn predict_packages(net: &DependencyNetwork, partition: &Partition, levels: usize) -> Result<Prediction> {
    predict_with(net, partition, levels, |i, j| jaccard(net, i, j))
}
