//! Node-level centralities and the hub and seed rankings built on them.

use rayon::prelude::*;
use serde::Serialize;

use crate::metrics::{clustering_sv, clustering_ws};
use crate::netcore::{per_source, Adjacency, Directed, Undirected, UNREACHABLE};
use crate::network::{DependencyNetwork, NodeId};

/// Sources handled per work unit in betweenness accumulation. Partial
/// scores are merged in chunk order, so results do not depend on the
/// thread count.
const CHUNK: usize = 32;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NodeMetrics {
    pub node: NodeId,
    pub name: String,
    pub k_in: usize,
    pub k_out: usize,
    pub dc: f64,
    pub cc: f64,
    pub bc: f64,
    pub c_ws: f64,
    pub c_sv: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RankEntry {
    pub node: NodeId,
    pub name: String,
    pub value: f64,
}

/// Hub lists (by in- and out-degree) and seed lists (by closeness and
/// betweenness).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Rankings {
    pub by_k_in: Vec<RankEntry>,
    pub by_k_out: Vec<RankEntry>,
    pub by_cc: Vec<RankEntry>,
    pub by_bc: Vec<RankEntry>,
}

/// `k_i / (n - 1)` with `k_i = k_in + k_out`. On two-node networks this can
/// exceed 1; the value is kept and a warning logged.
pub fn degree_centrality(net: &DependencyNetwork) -> Vec<f64> {
    let n = net.n();
    if n < 2 {
        return vec![0.0; n];
    }
    if n == 2 {
        log::warn!("degree centrality on a two-node network may exceed 1");
    }
    net.nodes()
        .map(|v| (net.in_degree(v) + net.out_degree(v)) as f64 / (n - 1) as f64)
        .collect()
}

/// `cc_i = 1/(n-1) Σ_j 1/d_ij` along out-links.
pub fn harmonic_closeness(net: &DependencyNetwork) -> Vec<f64> {
    let n = net.n();
    if n < 2 {
        return vec![0.0; n];
    }
    let g = Directed(net);
    per_source(&g, |s, bfs| {
        bfs.run(&g, s);
        let h: f64 = bfs
            .distance_counts()
            .iter()
            .enumerate()
            .skip(1)
            .map(|(d, &c)| c as f64 / d as f64)
            .sum();
        h / (n - 1) as f64
    })
}

struct Brandes {
    dist: Vec<u32>,
    sigma: Vec<f64>,
    delta: Vec<f64>,
    order: Vec<u32>,
}

impl Brandes {
    fn new(n: usize) -> Self {
        Brandes {
            dist: vec![UNREACHABLE; n],
            sigma: vec![0.0; n],
            delta: vec![0.0; n],
            order: Vec::with_capacity(n),
        }
    }

    /// Adds the dependencies of source `s` into `acc`.
    fn accumulate<A: Adjacency + ?Sized>(&mut self, g: &A, s: usize, acc: &mut [f64]) {
        for &v in &self.order {
            let v = v as usize;
            self.dist[v] = UNREACHABLE;
            self.sigma[v] = 0.0;
            self.delta[v] = 0.0;
        }
        self.order.clear();
        self.dist[s] = 0;
        self.sigma[s] = 1.0;
        self.order.push(s as u32);
        let mut head = 0;
        while head < self.order.len() {
            let v = self.order[head] as usize;
            head += 1;
            for &w in g.neighbors_of(v) {
                let w = w as usize;
                if self.dist[w] == UNREACHABLE {
                    self.dist[w] = self.dist[v] + 1;
                    self.order.push(w as u32);
                }
                if self.dist[w] == self.dist[v] + 1 {
                    self.sigma[w] += self.sigma[v];
                }
            }
        }
        for &v in self.order.iter().rev() {
            let v = v as usize;
            let mut d = 0.0;
            for &w in g.neighbors_of(v) {
                let w = w as usize;
                if self.dist[w] == self.dist[v] + 1 {
                    d += self.sigma[v] / self.sigma[w] * (1.0 + self.delta[w]);
                }
            }
            self.delta[v] = d;
            if v != s {
                acc[v] += d;
            }
        }
    }
}

fn brandes<A: Adjacency + ?Sized>(g: &A) -> Vec<f64> {
    let n = g.node_count();
    let partials: Vec<Vec<f64>> = (0..n.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut acc = vec![0.0; n];
            let mut state = Brandes::new(n);
            for s in c * CHUNK..((c + 1) * CHUNK).min(n) {
                state.accumulate(g, s, &mut acc);
            }
            acc
        })
        .collect();
    let mut total = vec![0.0; n];
    for p in partials {
        for (t, x) in total.iter_mut().zip(p) {
            *t += x;
        }
    }
    total
}

/// Shortest-path betweenness normalized by `(n-1)(n-2)`, endpoints
/// excluded, credit split evenly across equal-length paths. Directed
/// unless `undirected` is set.
pub fn betweenness(net: &DependencyNetwork, undirected: bool) -> Vec<f64> {
    let n = net.n();
    if n < 3 {
        return vec![0.0; n];
    }
    let raw = if undirected {
        brandes(&Undirected(net))
    } else {
        brandes(&Directed(net))
    };
    let norm = ((n - 1) * (n - 2)) as f64;
    raw.into_iter().map(|b| b / norm).collect()
}

pub fn node_metrics(net: &DependencyNetwork, undirected_bc: bool) -> Vec<NodeMetrics> {
    let dc = degree_centrality(net);
    let cc = harmonic_closeness(net);
    let bc = betweenness(net, undirected_bc);
    let ws = clustering_ws(net).per_node;
    let sv = clustering_sv(net).per_node;
    net.nodes()
        .map(|v| {
            let i = v.index();
            NodeMetrics {
                node: v,
                name: net.name(v).to_string(),
                k_in: net.in_degree(v),
                k_out: net.out_degree(v),
                dc: dc[i],
                cc: cc[i],
                bc: bc[i],
                c_ws: ws[i],
                c_sv: sv[i],
            }
        })
        .collect()
}

/// Top `top` nodes by descending value; zero values are left out and ties
/// go to the smaller name.
pub fn rank_by(net: &DependencyNetwork, values: &[f64], top: usize) -> Vec<RankEntry> {
    let mut idx: Vec<usize> = (0..values.len()).filter(|&i| values[i] > 0.0).collect();
    idx.sort_by(|&a, &b| {
        values[b]
            .total_cmp(&values[a])
            .then_with(|| net.names()[a].cmp(&net.names()[b]))
    });
    idx.truncate(top);
    idx.into_iter()
        .map(|i| RankEntry {
            node: NodeId(i as u32),
            name: net.names()[i].clone(),
            value: values[i],
        })
        .collect()
}

/// Hubs: `(by k_in, by k_out)`.
pub fn rank_hubs(net: &DependencyNetwork, top: usize) -> (Vec<RankEntry>, Vec<RankEntry>) {
    let k_in: Vec<f64> = net.nodes().map(|v| net.in_degree(v) as f64).collect();
    let k_out: Vec<f64> = net.nodes().map(|v| net.out_degree(v) as f64).collect();
    (rank_by(net, &k_in, top), rank_by(net, &k_out, top))
}

/// Seeds: `(by cc, by bc)`.
pub fn rank_seeds(net: &DependencyNetwork, top: usize, undirected_bc: bool) -> (Vec<RankEntry>, Vec<RankEntry>) {
    (
        rank_by(net, &harmonic_closeness(net), top),
        rank_by(net, &betweenness(net, undirected_bc), top),
    )
}

/// All four rankings from precomputed node metrics.
pub fn rankings(net: &DependencyNetwork, metrics: &[NodeMetrics], top: usize) -> Rankings {
    let col = |f: fn(&NodeMetrics) -> f64| metrics.iter().map(f).collect::<Vec<f64>>();
    Rankings {
        by_k_in: rank_by(net, &col(|m| m.k_in as f64), top),
        by_k_out: rank_by(net, &col(|m| m.k_out as f64), top),
        by_cc: rank_by(net, &col(|m| m.cc), top),
        by_bc: rank_by(net, &col(|m| m.bc), top),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::from_index_pairs;

    #[test]
    fn degree_centrality_of_star() {
        let star = from_index_pairs(&[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]);
        assert_eq!(degree_centrality(&star)[0], 1.0);
        let two = from_index_pairs(&[(0, 1), (1, 0)]);
        assert_eq!(degree_centrality(&two), vec![2.0, 2.0]);
    }

    #[test]
    fn closeness_values() {
        let star = from_index_pairs(&[(0, 1), (0, 2), (0, 3), (0, 4)]);
        assert_eq!(harmonic_closeness(&star), vec![1.0, 0.0, 0.0, 0.0, 0.0]);
        let path = from_index_pairs(&[(1, 2), (2, 3)]);
        assert_eq!(harmonic_closeness(&path)[0], 0.75);
    }

    #[test]
    fn betweenness_values() {
        let path = from_index_pairs(&[(1, 2), (2, 3)]);
        assert_eq!(betweenness(&path, false), vec![0.0, 0.5, 0.0]);
        // undirected path: 1-2-3 counted in both directions
        assert_eq!(betweenness(&path, true), vec![0.0, 1.0, 0.0]);
        let cycle = from_index_pairs(&[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let bc = betweenness(&cycle, false);
        assert!(bc.iter().all(|&b| (b - bc[0]).abs() < 1e-15));
        assert!((bc[0] - 3.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn split_credit() {
        // two equal paths 0->1->3 and 0->2->3
        let net = from_index_pairs(&[(0, 1), (0, 2), (1, 3), (2, 3)]);
        let bc = betweenness(&net, false);
        assert!((bc[1] - 0.5 / 6.0).abs() < 1e-15);
        assert_eq!(bc[1], bc[2]);
    }

    #[test]
    fn rankings_drop_zeros_and_break_ties_by_name() {
        let net = from_index_pairs(&[(0, 2), (1, 2), (3, 4), (3, 5)]);
        let (by_in, by_out) = rank_hubs(&net, 10);
        assert_eq!(by_in[0].name, "2");
        assert!(by_in.iter().all(|e| e.name != "0"));
        let names: Vec<&str> = by_out.iter().map(|e| e.name.as_str()).collect();
        assert_eq!(names, vec!["3", "0", "1"]);
        assert_eq!(rank_hubs(&net, 1).1.len(), 1);
    }

    #[test]
    fn star_center_tops_seeds() {
        let star = from_index_pairs(&[(0, 1), (0, 2), (0, 3), (1, 0), (2, 0), (3, 0)]);
        let (cc, bc) = rank_seeds(&star, 3, false);
        assert_eq!(cc[0].name, "0");
        assert_eq!(bc[0].name, "0");
    }

    #[test]
    fn metrics_rows() {
        let net = from_index_pairs(&[(0, 1), (1, 2), (2, 0)]);
        let rows = node_metrics(&net, false);
        assert_eq!(rows.len(), 3);
        assert!(rows.iter().all(|r| r.dc == 1.0 && r.c_ws == 1.0 && r.cc == 0.75));
        let r = rankings(&net, &rows, 2);
        assert_eq!(r.by_bc.len(), 2);
    }
}
