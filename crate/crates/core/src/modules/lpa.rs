//! Asynchronous label propagation.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::partition::Partition;

pub(crate) const MAX_SWEEPS: usize = 100;

/// Label counts over a node's neighbors, reusing buffers across calls.
struct Tally {
    count: Vec<u32>,
    touched: Vec<u32>,
}

impl Tally {
    fn new(n: usize) -> Self {
        Tally {
            count: vec![0; n],
            touched: Vec::new(),
        }
    }

    /// Labels with the highest count, ascending, and that count.
    fn best(&mut self, labels: &[u32], neighbors: &[u32]) -> (Vec<u32>, u32) {
        for &w in neighbors {
            let l = labels[w as usize];
            if self.count[l as usize] == 0 {
                self.touched.push(l);
            }
            self.count[l as usize] += 1;
        }
        let top = self.touched.iter().map(|&l| self.count[l as usize]).max().unwrap_or(0);
        let mut best: Vec<u32> = self
            .touched
            .iter()
            .copied()
            .filter(|&l| self.count[l as usize] == top)
            .collect();
        best.sort_unstable();
        for &l in &self.touched {
            self.count[l as usize] = 0;
        }
        self.touched.clear();
        (best, top)
    }
}

/// Requires every node to have at least one neighbor; callers check.
pub(crate) fn label_propagation_adj(adj: &[Vec<u32>], seed: u64) -> Partition {
    let n = adj.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut labels: Vec<u32> = (0..n as u32).collect();
    let mut order: Vec<usize> = (0..n).collect();
    let mut tally = Tally::new(n);

    for _ in 0..MAX_SWEEPS {
        order.shuffle(&mut rng);
        for &v in &order {
            let (best, _) = tally.best(&labels, &adj[v]);
            labels[v] = best[rng.random_range(0..best.len())];
        }
        let stable = (0..n).all(|v| tally.best(&labels, &adj[v]).0.contains(&labels[v]));
        if stable {
            break;
        }
    }
    Partition::from_labels(&labels)
}
