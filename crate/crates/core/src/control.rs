//! Structural controllability: driver nodes from a maximum matching of the
//! out-copy/in-copy bipartite graph.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::network::{DependencyNetwork, NodeId};

const FREE: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ControlReport {
    pub n_d: usize,
    pub fraction: f64,
    /// Nodes whose in-copy is unmatched, ascending.
    pub drivers: Vec<NodeId>,
    /// Closed-form estimate, when an exponent was supplied and valid.
    pub estimate: Option<f64>,
    pub matching_size: usize,
}

/// Maximum matching of the bipartite graph with an edge `u -> v` from the
/// out-copy of `u` to the in-copy of `v` for every link. Returns, for each
/// in-copy, the matched out-copy (or `u32::MAX`).
pub fn maximum_matching(out_adj: &[Vec<u32>]) -> Vec<u32> {
    let n = out_adj.len();
    let mut match_out = vec![FREE; n];
    let mut match_in = vec![FREE; n];
    let mut layer = vec![u32::MAX; n];
    let mut queue = Vec::with_capacity(n);
    let mut next_edge = vec![0usize; n];
    let mut stack: Vec<u32> = Vec::new();

    loop {
        // layer the free out-copies and everything alternating-reachable
        queue.clear();
        for u in 0..n {
            if match_out[u] == FREE {
                layer[u] = 0;
                queue.push(u as u32);
            } else {
                layer[u] = u32::MAX;
            }
        }
        let mut found = false;
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head] as usize;
            head += 1;
            for &v in &out_adj[u] {
                let w = match_in[v as usize];
                if w == FREE {
                    found = true;
                } else if layer[w as usize] == u32::MAX {
                    layer[w as usize] = layer[u] + 1;
                    queue.push(w);
                }
            }
        }
        if !found {
            break;
        }

        // vertex-disjoint shortest augmenting paths, iterative DFS
        next_edge.iter_mut().for_each(|e| *e = 0);
        for root in 0..n {
            if match_out[root] != FREE {
                continue;
            }
            stack.clear();
            stack.push(root as u32);
            while let Some(&u) = stack.last() {
                let ui = u as usize;
                if next_edge[ui] == out_adj[ui].len() {
                    layer[ui] = u32::MAX;
                    stack.pop();
                    continue;
                }
                let v = out_adj[ui][next_edge[ui]];
                next_edge[ui] += 1;
                let w = match_in[v as usize];
                if w == FREE {
                    // augment along the stack
                    let mut v = v;
                    while let Some(x) = stack.pop() {
                        let prev = match_out[x as usize];
                        match_out[x as usize] = v;
                        match_in[v as usize] = x;
                        v = prev;
                    }
                    break;
                } else if layer[w as usize] == layer[ui] + 1 {
                    stack.push(w);
                }
            }
        }
    }
    match_in
}

/// Minimum driver set of the network.
pub fn driver_nodes(net: &DependencyNetwork) -> Result<ControlReport> {
    let n = net.n();
    if n == 0 {
        return Err(Error::InvalidNetwork("empty network has no driver nodes".into()));
    }
    let match_in = maximum_matching(net.out_adjacency());
    let matching_size = match_in.iter().filter(|&&m| m != FREE).count();
    let mut drivers: Vec<NodeId> = (0..n)
        .filter(|&v| match_in[v] == FREE)
        .map(|v| NodeId(v as u32))
        .collect();
    if drivers.is_empty() {
        drivers.push(NodeId(0));
    }
    let n_d = drivers.len();
    Ok(ControlReport {
        n_d,
        fraction: n_d as f64 / n as f64,
        drivers,
        estimate: None,
        matching_size,
    })
}

/// `exp(k (gamma - 2) / (2 - 2 gamma))`, defined for `gamma > 2`.
pub fn controllability_estimate(k: f64, gamma: f64) -> Result<f64> {
    if !gamma.is_finite() || gamma <= 2.0 {
        return Err(Error::Domain(format!("exponent must exceed 2, got {gamma}")));
    }
    if !k.is_finite() || k <= 0.0 {
        return Err(Error::Domain(format!("average degree must be positive, got {k}")));
    }
    Ok((k * (gamma - 2.0) / (2.0 - 2.0 * gamma)).exp().clamp(f64::MIN_POSITIVE, 1.0))
}
