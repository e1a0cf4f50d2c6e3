//! Brute-force oracles and graph generators shared by the integration
//! tests.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use softnet::network::{from_index_pairs, NetworkBuilder};
use softnet::{DependencyKind, DependencyNetwork, KindSet};

pub const INF: usize = usize::MAX;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random digraph on `n` nodes with link probability `p`. Isolated nodes
/// are dropped by the builder, so node count may be lower than `n`.
pub fn random_digraph(n: usize, p: f64, rng: &mut ChaCha8Rng) -> DependencyNetwork {
    let mut pairs = Vec::new();
    for s in 0..n {
        for t in 0..n {
            if s != t && rng.random::<f64>() < p {
                pairs.push((s, t));
            }
        }
    }
    from_index_pairs(&pairs)
}

/// Dense directed adjacency matrix of the network.
pub fn matrix(net: &DependencyNetwork, undirected: bool) -> Vec<Vec<bool>> {
    let n = net.n();
    let mut a = vec![vec![false; n]; n];
    for l in net.links() {
        a[l.source.index()][l.target.index()] = true;
        if undirected {
            a[l.target.index()][l.source.index()] = true;
        }
    }
    a
}

/// All-pairs hop distances by Floyd-Warshall.
pub fn floyd_warshall(a: &[Vec<bool>]) -> Vec<Vec<usize>> {
    let n = a.len();
    let mut d = vec![vec![INF; n]; n];
    for i in 0..n {
        d[i][i] = 0;
        for j in 0..n {
            if a[i][j] {
                d[i][j] = 1;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] != INF && d[k][j] != INF && d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

/// Every shortest path from `s` to `t`, as node sequences.
pub fn shortest_paths(a: &[Vec<bool>], d: &[Vec<usize>], s: usize, t: usize) -> Vec<Vec<usize>> {
    fn walk(a: &[Vec<bool>], d: &[Vec<usize>], t: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let v = *path.last().unwrap();
        if v == t {
            out.push(path.clone());
            return;
        }
        for w in 0..a.len() {
            if a[v][w] && d[w][t] != INF && d[w][t] + 1 == d[v][t] {
                path.push(w);
                walk(a, d, t, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    if s != t && d[s][t] != INF {
        walk(a, d, t, &mut vec![s], &mut out);
    }
    out
}

/// Betweenness by enumerating every shortest path, normalized by
/// `(n-1)(n-2)`.
#[allow(clippy::needless_range_loop)]
pub fn brute_betweenness(a: &[Vec<bool>]) -> Vec<f64> {
    let n = a.len();
    let d = floyd_warshall(a);
    let mut bc = vec![0.0; n];
    for s in 0..n {
        for t in 0..n {
            let paths = shortest_paths(a, &d, s, t);
            if paths.is_empty() {
                continue;
            }
            let total = paths.len() as f64;
            for v in 0..n {
                if v == s || v == t {
                    continue;
                }
                let through = paths.iter().filter(|p| p.contains(&v)).count() as f64;
                bc[v] += through / total;
            }
        }
    }
    if n < 3 {
        return vec![0.0; n];
    }
    let norm = ((n - 1) * (n - 2)) as f64;
    bc.into_iter().map(|b| b / norm).collect()
}

pub fn brute_closeness(a: &[Vec<bool>]) -> Vec<f64> {
    let n = a.len();
    let d = floyd_warshall(a);
    (0..n)
        .map(|i| {
            let h: f64 = (0..n)
                .filter(|&j| j != i && d[i][j] != INF)
                .map(|j| 1.0 / d[i][j] as f64)
                .sum();
            h / (n - 1) as f64
        })
        .collect()
}

pub fn brute_efficiency(a: &[Vec<bool>]) -> f64 {
    let n = a.len();
    brute_closeness(a).iter().sum::<f64>() / n as f64
}

/// Mean distance over ordered pairs of the largest undirected component
/// (ties to the component of the smallest node).
pub fn brute_avg_distance(a: &[Vec<bool>]) -> Option<f64> {
    let n = a.len();
    let mut und = a.to_vec();
    for i in 0..n {
        for j in 0..n {
            if a[i][j] {
                und[j][i] = true;
            }
        }
    }
    let d = floyd_warshall(&und);
    let mut best: Vec<usize> = Vec::new();
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let comp: Vec<usize> = (0..n).filter(|&j| d[s][j] != INF).collect();
        for &j in &comp {
            seen[j] = true;
        }
        if comp.len() > best.len() {
            best = comp;
        }
    }
    let k = best.len();
    if k < 2 {
        return None;
    }
    let sum: usize = best.iter().flat_map(|&i| best.iter().map(move |&j| (i, j))).map(|(i, j)| d[i][j]).sum();
    Some(sum as f64 / (k * (k - 1)) as f64)
}

/// Largest matching between out-copies and in-copies by exhaustive search.
pub fn brute_matching(out_adj: &[Vec<usize>]) -> usize {
    fn rec(u: usize, out_adj: &[Vec<usize>], used: &mut Vec<bool>) -> usize {
        if u == out_adj.len() {
            return 0;
        }
        let mut best = rec(u + 1, out_adj, used);
        for &v in &out_adj[u] {
            if !used[v] {
                used[v] = true;
                best = best.max(1 + rec(u + 1, out_adj, used));
                used[v] = false;
            }
        }
        best
    }
    rec(0, out_adj, &mut vec![false; out_adj.len()])
}

pub fn out_lists(net: &DependencyNetwork) -> Vec<Vec<usize>> {
    net.nodes()
        .map(|v| net.successors(v).iter().map(|&w| w as usize).collect())
        .collect()
}

/// Undirected links among `blocks * size` nodes, `p_in` within and `p_out`
/// across blocks. Nodes are named so that name order follows block order.
pub fn planted_partition(blocks: usize, size: usize, p_in: f64, p_out: f64, rng: &mut ChaCha8Rng) -> (DependencyNetwork, Vec<usize>) {
    let n = blocks * size;
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let p = if i / size == j / size { p_in } else { p_out };
            if rng.random::<f64>() < p {
                pairs.push((i, j));
            }
        }
    }
    let net = from_index_pairs(&pairs);
    let truth = net.names().iter().map(|s| s.parse::<usize>().unwrap() / size).collect();
    (net, truth)
}

/// `k` cliques of `size` classes, one package per clique, joined in a ring
/// by single links.
pub fn clique_packages(k: usize, size: usize) -> DependencyNetwork {
    let mut b = NetworkBuilder::new();
    let kinds = KindSet::single(DependencyKind::Field);
    let name = |c: usize, i: usize| format!("org.app.p{c}.C{i}");
    for c in 0..k {
        for i in 0..size {
            for j in 0..size {
                if i != j {
                    b.add_link(&name(c, i), &name(c, j), kinds);
                }
            }
            b.set_package(&name(c, i), vec!["org".into(), "app".into(), format!("p{c}")]);
        }
        b.add_link(&name(c, 0), &name((c + 1) % k, 1), kinds);
    }
    b.finish().0
}

/// Directed network with preferential in-attachment and packages, about
/// `n` nodes and `m` links.
pub fn synthetic_project(n: usize, m: usize, seed: u64) -> DependencyNetwork {
    let mut rng = rng(seed);
    let mut b = NetworkBuilder::new();
    let kinds = [DependencyKind::Inheritance, DependencyKind::Parameter, DependencyKind::Return, DependencyKind::Field];
    let name = |i: usize| format!("org.sys.m{}.s{}.C{i:04}", i % 7, i % 3);
    for i in 0..n {
        let path = name(i);
        let pkg: Vec<String> = path.split('.').map(String::from).collect();
        b.set_package(&path, pkg[..pkg.len() - 1].to_vec());
    }
    let mut targets: Vec<usize> = (0..n).collect();
    let mut added = 0;
    let mut seen = std::collections::HashSet::new();
    while added < m {
        let s = rng.random_range(0..n);
        // half the time stay inside the source's group for modularity
        let t = if rng.random::<f64>() < 0.5 {
            let group = s % 7;
            let base = rng.random_range(0..n / 7) * 7 + group;
            base.min(n - 1)
        } else {
            targets[rng.random_range(0..targets.len())]
        };
        if s == t || !seen.insert((s, t)) {
            continue;
        }
        b.add_link(&name(s), &name(t), KindSet::single(kinds[rng.random_range(0..4)]));
        targets.push(t);
        added += 1;
    }
    b.finish().0
}
