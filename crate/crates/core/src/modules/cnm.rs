//! Agglomerative greedy modularity maximization.

use std::collections::BTreeMap;

use crate::partition::Partition;

/// Merges communities pairwise while some merge raises modularity. Gains
/// are compared through the exact integer `2m * w_ab - d_a * d_b`; ties go
/// to the smallest `(a, b)` pair.
pub(crate) fn greedy_modularity_adj(adj: &[Vec<u32>]) -> Partition {
    let n = adj.len();
    let two_m: i128 = adj.iter().map(|nb| nb.len() as i128).sum();
    let mut links: Vec<BTreeMap<u32, i128>> = adj
        .iter()
        .map(|nb| nb.iter().map(|&w| (w, 1)).collect())
        .collect();
    let mut degree: Vec<i128> = adj.iter().map(|nb| nb.len() as i128).collect();
    let mut alive = vec![true; n];
    let mut owner: Vec<u32> = (0..n as u32).collect();

    loop {
        let mut best: Option<(i128, u32, u32)> = None;
        for a in 0..n {
            if !alive[a] {
                continue;
            }
            for (&b, &w) in links[a].range(a as u32 + 1..) {
                let gain = two_m * w - degree[a] * degree[b as usize];
                if best.is_none_or(|(g, _, _)| gain > g) {
                    best = Some((gain, a as u32, b));
                }
            }
        }
        let Some((gain, a, b)) = best else { break };
        if gain <= 0 {
            break;
        }
        let (a, b) = (a as usize, b as usize);
        let moved = std::mem::take(&mut links[b]);
        for (c, w) in moved {
            let c = c as usize;
            if c == a {
                links[a].remove(&(b as u32));
                continue;
            }
            *links[a].entry(c as u32).or_insert(0) += w;
            let lc = &mut links[c];
            lc.remove(&(b as u32));
            *lc.entry(a as u32).or_insert(0) += w;
        }
        degree[a] += degree[b];
        alive[b] = false;
        owner[b] = a as u32;
    }

    let root = |mut v: usize| {
        while owner[v] as usize != v {
            v = owner[v] as usize;
        }
        v
    };
    let labels: Vec<usize> = (0..n).map(root).collect();
    Partition::from_labels(&labels)
}
