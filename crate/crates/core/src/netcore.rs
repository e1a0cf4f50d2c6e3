//! Graph primitives shared by every analysis: weak components, breadth-first
//! distances and reduction to the largest component.

use rayon::prelude::*;
use serde::Serialize;

use crate::network::{DependencyNetwork, NodeId};
use crate::partition::Partition;

/// Distance sentinel for unreachable nodes.
pub const UNREACHABLE: u32 = u32::MAX;

/// Anything with dense nodes and neighbor lists.
pub trait Adjacency: Sync {
    fn node_count(&self) -> usize;
    fn neighbors_of(&self, v: usize) -> &[u32];
}

impl Adjacency for [Vec<u32>] {
    fn node_count(&self) -> usize {
        self.len()
    }

    fn neighbors_of(&self, v: usize) -> &[u32] {
        &self[v]
    }
}

impl Adjacency for Vec<Vec<u32>> {
    fn node_count(&self) -> usize {
        self.len()
    }

    fn neighbors_of(&self, v: usize) -> &[u32] {
        &self[v]
    }
}

/// Follows out-links only.
pub struct Directed<'a>(pub &'a DependencyNetwork);

/// Follows links in either direction.
pub struct Undirected<'a>(pub &'a DependencyNetwork);

impl Adjacency for Directed<'_> {
    fn node_count(&self) -> usize {
        self.0.n()
    }

    fn neighbors_of(&self, v: usize) -> &[u32] {
        &self.0.out_adjacency()[v]
    }
}

impl Adjacency for Undirected<'_> {
    fn node_count(&self) -> usize {
        self.0.n()
    }

    fn neighbors_of(&self, v: usize) -> &[u32] {
        &self.0.undirected_adjacency()[v]
    }
}

/// Hop counts from one source.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistanceField {
    pub source: NodeId,
    /// `UNREACHABLE` marks nodes the source cannot reach.
    pub dist: Vec<u32>,
}

impl DistanceField {
    pub fn get(&self, v: NodeId) -> Option<u32> {
        match self.dist[v.index()] {
            UNREACHABLE => None,
            d => Some(d),
        }
    }
}

/// Reusable BFS buffers.
pub(crate) struct Bfs {
    pub dist: Vec<u32>,
    pub order: Vec<u32>,
}

impl Bfs {
    pub fn new(n: usize) -> Self {
        Bfs {
            dist: vec![UNREACHABLE; n],
            order: Vec::with_capacity(n),
        }
    }

    /// Runs BFS from `source`; afterwards `order` holds visited nodes in
    /// non-decreasing distance and `dist` their hop counts.
    pub fn run<A: Adjacency + ?Sized>(&mut self, g: &A, source: usize) {
        for &v in &self.order {
            self.dist[v as usize] = UNREACHABLE;
        }
        self.order.clear();
        self.dist[source] = 0;
        self.order.push(source as u32);
        let mut head = 0;
        while head < self.order.len() {
            let v = self.order[head] as usize;
            head += 1;
            let next = self.dist[v] + 1;
            for &w in g.neighbors_of(v) {
                if self.dist[w as usize] == UNREACHABLE {
                    self.dist[w as usize] = next;
                    self.order.push(w);
                }
            }
        }
    }

    /// Count of visited nodes at each distance `1..`, index 0 unused.
    pub fn distance_counts(&self) -> Vec<u64> {
        let max = self.order.last().map_or(0, |&v| self.dist[v as usize]) as usize;
        let mut counts = vec![0u64; max + 1];
        for &v in &self.order[1..] {
            counts[self.dist[v as usize] as usize] += 1;
        }
        counts
    }
}

fn bfs_field<A: Adjacency + ?Sized>(g: &A, source: NodeId) -> DistanceField {
    let mut bfs = Bfs::new(g.node_count());
    bfs.run(g, source.index());
    DistanceField {
        source,
        dist: bfs.dist,
    }
}

/// Shortest hop counts along out-links.
pub fn bfs_directed(net: &DependencyNetwork, source: NodeId) -> DistanceField {
    bfs_field(&Directed(net), source)
}

/// Shortest hop counts ignoring link direction.
pub fn bfs_undirected(net: &DependencyNetwork, source: NodeId) -> DistanceField {
    bfs_field(&Undirected(net), source)
}

/// Runs `f` for every source with thread-local BFS buffers and returns the
/// results in source order, so downstream reductions do not depend on
/// scheduling.
pub(crate) fn per_source<A, T, F>(g: &A, f: F) -> Vec<T>
where
    A: Adjacency + ?Sized,
    T: Send,
    F: Fn(usize, &mut Bfs) -> T + Sync + Send,
{
    let n = g.node_count();
    (0..n)
        .into_par_iter()
        .map_init(|| Bfs::new(n), |bfs, s| f(s, bfs))
        .collect()
}

/// Weak components and the share of nodes in the largest one.
#[derive(Clone, Debug, Serialize)]
pub struct Components {
    pub partition: Partition,
    pub lcc_fraction: f64,
}

/// Components of the undirected reading of the network. Component ids are
/// ordered by their smallest node.
pub fn weakly_connected_components(net: &DependencyNetwork) -> Components {
    let labels = component_labels(&Undirected(net));
    let partition = Partition::from_labels(&labels);
    let largest = partition.sizes().into_iter().max().unwrap_or(0);
    let lcc_fraction = if net.n() == 0 {
        0.0
    } else {
        largest as f64 / net.n() as f64
    };
    Components {
        partition,
        lcc_fraction,
    }
}

pub(crate) fn component_labels<A: Adjacency + ?Sized>(g: &A) -> Vec<u32> {
    let n = g.node_count();
    let mut label = vec![u32::MAX; n];
    let mut stack = Vec::new();
    let mut next = 0;
    for s in 0..n {
        if label[s] != u32::MAX {
            continue;
        }
        label[s] = next;
        stack.push(s as u32);
        while let Some(v) = stack.pop() {
            for &w in g.neighbors_of(v as usize) {
                if label[w as usize] == u32::MAX {
                    label[w as usize] = next;
                    stack.push(w);
                }
            }
        }
        next += 1;
    }
    label
}

/// Nodes of the largest weak component (ties go to the component holding
/// the smallest node), ascending.
pub(crate) fn largest_component<A: Adjacency + ?Sized>(g: &A) -> Vec<u32> {
    let labels = component_labels(g);
    let count = labels.iter().max().map_or(0, |&m| m as usize + 1);
    let mut sizes = vec![0usize; count];
    for &l in &labels {
        sizes[l as usize] += 1;
    }
    let Some(best) = (0..count).max_by(|&a, &b| sizes[a].cmp(&sizes[b]).then(b.cmp(&a))) else {
        return Vec::new();
    };
    (0..labels.len() as u32)
        .filter(|&v| labels[v as usize] == best as u32)
        .collect()
}

/// Induced subnetwork on the largest weak component.
pub fn reduce_to_lcc(net: &DependencyNetwork) -> DependencyNetwork {
    let nodes: Vec<NodeId> = largest_component(&Undirected(net))
        .into_iter()
        .map(NodeId)
        .collect();
    if nodes.len() == net.n() {
        return net.clone();
    }
    net.induced(&nodes)
}

/// Plain neighbor lists restricted to `nodes` (re-indexed in the given
/// order). Isolated nodes are kept.
pub(crate) fn induced_adjacency<A: Adjacency + ?Sized>(g: &A, nodes: &[u32]) -> Vec<Vec<u32>> {
    let mut local = vec![u32::MAX; g.node_count()];
    for (i, &v) in nodes.iter().enumerate() {
        local[v as usize] = i as u32;
    }
    nodes
        .iter()
        .map(|&v| {
            g.neighbors_of(v as usize)
                .iter()
                .filter_map(|&w| match local[w as usize] {
                    u32::MAX => None,
                    l => Some(l),
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::{from_index_pairs, from_pairs, DependencyKind};

    const INF: u32 = UNREACHABLE;

    #[test]
    fn directed_path_distances() {
        let net = from_index_pairs(&[(1, 2), (2, 3)]);
        assert_eq!(bfs_directed(&net, NodeId(0)).dist, vec![0, 1, 2]);
        assert_eq!(bfs_directed(&net, NodeId(2)).dist, vec![INF, INF, 0]);
        assert_eq!(bfs_undirected(&net, NodeId(2)).dist, vec![2, 1, 0]);
    }

    #[test]
    fn components_of_path_and_cycles() {
        let path = from_index_pairs(&[(1, 2), (2, 3)]);
        let c = weakly_connected_components(&path);
        assert_eq!(c.partition.module_count(), 1);
        assert_eq!(c.lcc_fraction, 1.0);

        let two = from_index_pairs(&[(1, 2), (2, 1), (3, 4), (4, 3)]);
        let c = weakly_connected_components(&two);
        assert_eq!(c.partition.module_count(), 2);
        assert_eq!(c.lcc_fraction, 0.5);
    }

    #[test]
    fn lcc_reduction() {
        let connected = from_index_pairs(&[(1, 2), (2, 3), (3, 1)]);
        assert_eq!(reduce_to_lcc(&connected), connected);

        let triangles = from_index_pairs(&[(1, 2), (2, 3), (3, 1), (4, 5), (5, 6), (6, 4)]);
        let lcc = reduce_to_lcc(&triangles);
        assert_eq!((lcc.n(), lcc.m()), (3, 3));
        assert_eq!(lcc.names(), &["1", "2", "3"]);

        let mixed = from_pairs(
            &[("a", "b"), ("b", "c"), ("c", "d"), ("x", "y")],
            DependencyKind::Field,
        );
        let f = weakly_connected_components(&mixed).lcc_fraction;
        assert_eq!(reduce_to_lcc(&mixed).n(), (f * mixed.n() as f64).round() as usize);
    }

    #[test]
    fn distance_counts_histogram() {
        let net = from_index_pairs(&[(1, 2), (2, 3), (1, 4)]);
        let mut bfs = Bfs::new(net.n());
        bfs.run(&Directed(&net), 0);
        assert_eq!(bfs.distance_counts(), vec![0, 2, 1]);
        // Reuse must reset previous state.
        bfs.run(&Directed(&net), 2);
        assert_eq!(bfs.distance_counts(), vec![0]);
    }
}
