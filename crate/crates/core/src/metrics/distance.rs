use crate::error::{Error, Result};
use crate::netcore::{induced_adjacency, largest_component, per_source, Adjacency, Directed, Undirected};
use crate::network::DependencyNetwork;

/// Average shortest-path length over ordered pairs of the largest
/// component of an undirected graph. Sums are exact integers.
pub(crate) fn avg_distance_adj<A: Adjacency + ?Sized>(g: &A) -> Result<f64> {
    let lcc = largest_component(g);
    let n = lcc.len();
    if n < 2 {
        return Err(Error::TooSmall {
            required: 2,
            actual: n,
        });
    }
    let sub = induced_adjacency(g, &lcc);
    let sums = per_source(&sub, |s, bfs| {
        bfs.run(&sub, s);
        bfs.order
            .iter()
            .map(|&v| u64::from(bfs.dist[v as usize]))
            .sum::<u64>()
    });
    let total: u64 = sums.iter().sum();
    Ok(total as f64 / (n as f64 * (n - 1) as f64))
}

/// Mean undirected distance `l` on the largest weak component.
pub fn avg_distance(net: &DependencyNetwork) -> Result<f64> {
    avg_distance_adj(&Undirected(net))
}

/// Harmonic efficiency `1/(n(n-1)) Σ 1/d_ij`. Each source folds its
/// distance histogram, and sources are summed in index order.
fn efficiency<A: Adjacency + ?Sized>(g: &A) -> f64 {
    let n = g.node_count();
    if n < 2 {
        return 0.0;
    }
    let parts = per_source(g, |s, bfs| {
        bfs.run(g, s);
        bfs.distance_counts()
            .iter()
            .enumerate()
            .skip(1)
            .map(|(d, &c)| c as f64 / d as f64)
            .sum::<f64>()
    });
    parts.iter().sum::<f64>() / (n as f64 * (n - 1) as f64)
}

/// Flow efficiency `E` over directed distances (unreachable pairs add 0).
pub fn flow_efficiency(net: &DependencyNetwork) -> f64 {
    efficiency(&Directed(net))
}

/// Efficiency with link direction ignored. Never below [`flow_efficiency`].
pub fn undirected_efficiency(net: &DependencyNetwork) -> f64 {
    efficiency(&Undirected(net))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::from_index_pairs;

    #[test]
    fn toy_values() {
        let cycle = from_index_pairs(&[(0, 1), (1, 2), (2, 0)]);
        assert!((flow_efficiency(&cycle) - 0.75).abs() < 1e-12);
        let path = from_index_pairs(&[(1, 2), (2, 3)]);
        assert!((flow_efficiency(&path) - 2.5 / 6.0).abs() < 1e-12);
        assert!((avg_distance(&path).unwrap() - 4.0 / 3.0).abs() < 1e-12);
        assert!((undirected_efficiency(&path) - 5.0 / 6.0).abs() < 1e-12);
    }

    #[test]
    fn distance_uses_largest_component() {
        // component {0,1,2} (path) and {3,4}
        let net = from_index_pairs(&[(0, 1), (1, 2), (3, 4)]);
        assert!((avg_distance(&net).unwrap() - 4.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn complete_graph_distance_is_one() {
        let net = from_index_pairs(&[(0, 1), (0, 2), (1, 2), (2, 3), (0, 3), (1, 3)]);
        assert_eq!(avg_distance(&net).unwrap(), 1.0);
    }

    #[test]
    fn too_small() {
        let empty = crate::network::NetworkBuilder::new().finish().0;
        assert!(matches!(avg_distance(&empty), Err(Error::TooSmall { .. })));
        assert_eq!(flow_efficiency(&empty), 0.0);
    }
}
