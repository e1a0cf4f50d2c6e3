//! Erdős–Rényi reference values for a network with `n` nodes and `m` links.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::distance::avg_distance_adj;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ErBaselines {
    /// `k / (n - 1)`.
    pub c_er: f64,
    /// Mean distance over sampled graphs, each reduced to its LCC.
    pub l_er: f64,
    /// `ln n / ln k`, or NaN when `k <= 1`.
    pub l_er_approx: f64,
    /// Samples that contributed to `l_er`.
    pub samples: usize,
}

/// Per-sample seed, so that samples can be drawn in any order.
pub(crate) fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Undirected `G(n, p)` with sorted neighbor lists, by geometric skipping
/// over the lower-triangle pairs.
pub fn sample_er<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Vec<Vec<u32>> {
    let mut adj = vec![Vec::new(); n];
    if p <= 0.0 || n < 2 {
        return adj;
    }
    if p >= 1.0 {
        for (v, nb) in adj.iter_mut().enumerate() {
            nb.extend((0..n as u32).filter(|&w| w as usize != v));
        }
        return adj;
    }
    let log_q = (1.0 - p).ln();
    let (mut v, mut w) = (1usize, -1i64);
    while v < n {
        let r: f64 = rng.random();
        w += 1 + ((1.0 - r).ln() / log_q).floor() as i64;
        while w >= v as i64 && v < n {
            w -= v as i64;
            v += 1;
        }
        if v < n {
            adj[v].push(w as u32);
            adj[w as usize].push(v as u32);
        }
    }
    for nb in &mut adj {
        nb.sort_unstable();
    }
    adj
}

pub fn er_baselines(n: usize, m: usize, samples: usize, seed: u64) -> Result<ErBaselines> {
    if n < 2 {
        return Err(Error::TooSmall {
            required: 2,
            actual: n,
        });
    }
    let k = 2.0 * m as f64 / n as f64;
    let p = k / (n - 1) as f64;
    let lengths: Vec<Option<f64>> = (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, i));
            avg_distance_adj(&sample_er(n, p, &mut rng)).ok()
        })
        .collect();
    let valid: Vec<f64> = lengths.into_iter().flatten().collect();
    let l_er = if valid.is_empty() {
        f64::NAN
    } else {
        valid.iter().sum::<f64>() / valid.len() as f64
    };
    Ok(ErBaselines {
        c_er: p.min(1.0),
        l_er,
        l_er_approx: if k > 1.0 { (n as f64).ln() / k.ln() } else { f64::NAN },
        samples: valid.len(),
    })
}
