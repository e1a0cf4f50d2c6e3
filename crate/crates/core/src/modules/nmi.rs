use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::partition::Partition;

fn entropy(sizes: &[usize], n: f64) -> f64 {
    sizes
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / n;
            -p * p.ln()
        })
        .sum()
}

/// Normalized mutual information `2 I(A;B) / (H(A) + H(B))`.
pub fn nmi(a: &Partition, b: &Partition) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::NodeSetMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    // equal groupings densify to equal partitions
    if a.is_empty() || a == b {
        return Ok(1.0);
    }
    let n = a.len() as f64;
    let (sa, sb) = (a.sizes(), b.sizes());
    let (ha, hb) = (entropy(&sa, n), entropy(&sb, n));
    if ha + hb == 0.0 {
        // both single-module over the same nodes
        return Ok(1.0);
    }
    if ha == 0.0 || hb == 0.0 {
        return Ok(0.0);
    }
    let mut joint: HashMap<(u32, u32), usize> = HashMap::new();
    for (&x, &y) in a.assignment().iter().zip(b.assignment()) {
        *joint.entry((x, y)).or_insert(0) += 1;
    }
    let mut cells: Vec<((u32, u32), usize)> = joint.into_iter().collect();
    cells.sort_unstable();
    let mi: f64 = cells
        .iter()
        .map(|&((x, y), c)| {
            let c = c as f64;
            c / n * (c * n / (sa[x as usize] as f64 * sb[y as usize] as f64)).ln()
        })
        .sum();
    Ok((2.0 * mi / (ha + hb)).clamp(0.0, 1.0))
}
