//! Propagation by mixed link and neighborhood-similarity scores.
//!
//! Node `i` scores a candidate label `L` as
//! `a * e_iL / deg_i + (1 - a) * mean_{j in L, j != i} J(i, j)` where
//! `e_iL` counts neighbors carrying `L`, `J` is the Jaccard similarity of
//! neighbor sets and `a` is the node's clustering coefficient. Candidates
//! are the labels found within two hops.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::lpa::MAX_SWEEPS;
use crate::metrics::clustering_ws_adj;
use crate::partition::Partition;

/// Relative tolerance under which two scores count as tied.
const TIE: f64 = 1e-12;

struct Scratch {
    common: Vec<u32>,
    reached: Vec<u32>,
    edge: Vec<u32>,
    sim: Vec<f64>,
    labels_seen: Vec<u32>,
    seen: Vec<bool>,
}

impl Scratch {
    fn new(n: usize) -> Self {
        Scratch {
            common: vec![0; n],
            reached: Vec::new(),
            edge: vec![0; n],
            sim: vec![0.0; n],
            labels_seen: Vec::new(),
            seen: vec![false; n],
        }
    }

    fn see(&mut self, label: u32) {
        if !self.seen[label as usize] {
            self.seen[label as usize] = true;
            self.labels_seen.push(label);
        }
    }
}

struct State<'a> {
    adj: &'a [Vec<u32>],
    alpha: Vec<f64>,
    labels: Vec<u32>,
    size: Vec<u32>,
}

impl State<'_> {
    /// Best-scoring labels for node `i`, ascending.
    fn best(&self, i: usize, s: &mut Scratch) -> Vec<u32> {
        let nb = &self.adj[i];
        let own = self.labels[i];
        s.see(own);
        for &k in nb {
            let l = self.labels[k as usize];
            s.edge[l as usize] += 1;
            s.see(l);
            for &j in &self.adj[k as usize] {
                if j as usize == i {
                    continue;
                }
                if s.common[j as usize] == 0 {
                    s.reached.push(j);
                }
                s.common[j as usize] += 1;
            }
        }
        for &j in &s.reached {
            let c = s.common[j as usize] as f64;
            let union = (nb.len() + self.adj[j as usize].len()) as f64 - c;
            let l = self.labels[j as usize];
            s.sim[l as usize] += c / union;
            s.common[j as usize] = 0;
        }
        for idx in 0..s.reached.len() {
            let l = self.labels[s.reached[idx] as usize];
            s.see(l);
        }
        s.reached.clear();

        let a = self.alpha[i];
        let deg = nb.len().max(1) as f64;
        let mut top = f64::NEG_INFINITY;
        let mut scored: Vec<(u32, f64)> = Vec::with_capacity(s.labels_seen.len());
        for &l in &s.labels_seen {
            let li = l as usize;
            let others = self.size[li] - u32::from(l == own);
            let mean_sim = if others == 0 { 0.0 } else { s.sim[li] / others as f64 };
            let score = a * s.edge[li] as f64 / deg + (1.0 - a) * mean_sim;
            top = top.max(score);
            scored.push((l, score));
            s.edge[li] = 0;
            s.sim[li] = 0.0;
            s.seen[li] = false;
        }
        s.labels_seen.clear();
        let tol = TIE * top.abs().max(1e-300);
        let mut best: Vec<u32> = scored
            .into_iter()
            .filter(|&(_, sc)| sc >= top - tol)
            .map(|(l, _)| l)
            .collect();
        best.sort_unstable();
        best
    }
}

/// Works on any neighbor lists (sorted, simple); isolated nodes keep their
/// own label.
pub(crate) fn structural_modules_adj(adj: &[Vec<u32>], seed: u64) -> Partition {
    let n = adj.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut st = State {
        adj,
        alpha: clustering_ws_adj(adj),
        labels: (0..n as u32).collect(),
        size: vec![1; n],
    };
    let mut scratch = Scratch::new(n);
    let mut order: Vec<usize> = (0..n).collect();

    for _ in 0..MAX_SWEEPS {
        order.shuffle(&mut rng);
        let mut changed = false;
        for &v in &order {
            let best = st.best(v, &mut scratch);
            let cur = st.labels[v];
            if best.contains(&cur) {
                continue;
            }
            let new = best[rng.random_range(0..best.len())];
            st.size[cur as usize] -= 1;
            st.size[new as usize] += 1;
            st.labels[v] = new;
            changed = true;
        }
        if !changed {
            break;
        }
    }
    Partition::from_labels(&st.labels)
}
