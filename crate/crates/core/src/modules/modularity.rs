use crate::partition::Partition;

/// Newman modularity of `partition` on an undirected simple graph given as
/// neighbor lists.
pub(crate) fn modularity_adj(adj: &[Vec<u32>], partition: &Partition) -> f64 {
    let two_m: usize = adj.iter().map(Vec::len).sum();
    if two_m == 0 {
        return 0.0;
    }
    let k = partition.module_count();
    let mut internal = vec![0usize; k]; // twice the internal links
    let mut degree = vec![0usize; k];
    let a = partition.assignment();
    for (v, nb) in adj.iter().enumerate() {
        let c = a[v] as usize;
        degree[c] += nb.len();
        internal[c] += nb.iter().filter(|&&w| a[w as usize] as usize == c).count();
    }
    let two_m = two_m as f64;
    internal
        .iter()
        .zip(&degree)
        .map(|(&l, &d)| l as f64 / two_m - (d as f64 / two_m).powi(2))
        .sum()
}
