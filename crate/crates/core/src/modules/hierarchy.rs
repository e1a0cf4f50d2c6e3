use serde::Serialize;

use super::structural::structural_modules_adj;
use crate::metrics::derive_seed;
use crate::netcore::induced_adjacency;
use crate::network::DependencyNetwork;
use crate::partition::Partition;

/// Nested module partitions, coarsest first. `parents[i][m]` is the module
/// at level `i` containing module `m` of level `i + 1`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ModuleHierarchy {
    pub levels: Vec<Partition>,
    pub parents: Vec<Vec<u32>>,
}

impl ModuleHierarchy {
    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    /// Finest recorded partition.
    pub fn bottom(&self) -> &Partition {
        self.levels.last().expect("hierarchy has at least one level")
    }
}

/// Splits every module of at least `min_module` nodes again with the
/// structural detector, level by level, until no module splits.
pub fn build_hierarchy(net: &DependencyNetwork, min_module: usize, seed: u64) -> ModuleHierarchy {
    let adj = net.undirected_adjacency();
    let mut levels = vec![structural_modules_adj(adj, seed)];
    let mut parents = Vec::new();
    for depth in 1u64.. {
        let current = levels.last().unwrap();
        let mut labels = vec![0u32; net.n()];
        let mut parent = Vec::new();
        let mut split = false;
        for (m, members) in current.modules().into_iter().enumerate() {
            let nodes: Vec<u32> = members.iter().map(|v| v.0).collect();
            let sub = if nodes.len() >= min_module.max(2) {
                let sub_seed = derive_seed(derive_seed(seed, depth), m as u64);
                structural_modules_adj(&induced_adjacency(adj, &nodes), sub_seed)
            } else {
                Partition::single(nodes.len())
            };
            split |= sub.module_count() > 1;
            let base = parent.len() as u32;
            for (&v, &s) in nodes.iter().zip(sub.assignment()) {
                labels[v as usize] = base + s;
            }
            parent.extend(std::iter::repeat_n(m as u32, sub.module_count()));
        }
        if !split {
            break;
        }
        // relabel densely in node order and carry parent ids along
        let next = Partition::from_labels(&labels);
        let mut remapped = vec![0u32; next.module_count()];
        for (v, &old) in labels.iter().enumerate() {
            remapped[next.assignment()[v] as usize] = parent[old as usize];
        }
        levels.push(next);
        parents.push(remapped);
    }
    ModuleHierarchy { levels, parents }
}
