use rayon::prelude::*;
use serde::Serialize;

use crate::network::DependencyNetwork;

/// Network-level clustering and the per-node coefficients it averages.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Clustering {
    pub mean: f64,
    pub per_node: Vec<f64>,
}

impl Clustering {
    fn from_nodes(per_node: Vec<f64>) -> Self {
        let mean = if per_node.is_empty() {
            0.0
        } else {
            per_node.iter().sum::<f64>() / per_node.len() as f64
        };
        Clustering { mean, per_node }
    }
}

fn common(a: &[u32], b: &[u32]) -> u64 {
    let (mut i, mut j, mut c) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                c += 1;
                i += 1;
                j += 1;
            }
        }
    }
    c
}

/// Triangles through every node. Neighbor lists must be sorted and free of
/// self-loops and duplicates.
pub(crate) fn triangles(adj: &[Vec<u32>]) -> Vec<u64> {
    (0..adj.len())
        .into_par_iter()
        .map(|i| {
            let ni = &adj[i];
            ni.iter().map(|&j| common(ni, &adj[j as usize])).sum::<u64>() / 2
        })
        .collect()
}

pub(crate) fn clustering_ws_adj(adj: &[Vec<u32>]) -> Vec<f64> {
    triangles(adj)
        .into_iter()
        .zip(adj)
        .map(|(t, nb)| {
            let d = nb.len() as u64;
            if d < 2 {
                0.0
            } else {
                t as f64 / (d * (d - 1) / 2) as f64
            }
        })
        .collect()
}

/// Largest possible number of links among the neighbors of each node given
/// the neighbors' own degrees.
pub(crate) fn omega(adj: &[Vec<u32>]) -> Vec<u64> {
    adj.iter()
        .map(|nb| {
            let cap = nb.len().saturating_sub(1);
            let s: usize = nb
                .iter()
                .map(|&j| (adj[j as usize].len() - 1).min(cap))
                .sum();
            (s / 2) as u64
        })
        .collect()
}

pub(crate) fn clustering_sv_adj(adj: &[Vec<u32>]) -> Vec<f64> {
    triangles(adj)
        .into_iter()
        .zip(omega(adj))
        .map(|(t, w)| if w == 0 { 0.0 } else { t as f64 / w as f64 })
        .collect()
}

/// Transitivity clustering `C` on the undirected simplification.
pub fn clustering_ws(net: &DependencyNetwork) -> Clustering {
    Clustering::from_nodes(clustering_ws_adj(net.undirected_adjacency()))
}

/// Degree-corrected clustering `D` on the undirected simplification.
pub fn clustering_sv(net: &DependencyNetwork) -> Clustering {
    Clustering::from_nodes(clustering_sv_adj(net.undirected_adjacency()))
}
