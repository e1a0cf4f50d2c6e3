//! Assignment of nodes to modules.

use std::collections::HashMap;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::network::NodeId;

/// Every node belongs to exactly one module; module ids are dense
/// `0..module_count` and no module is empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Partition {
    assignment: Vec<u32>,
    module_count: usize,
}

impl Partition {
    /// Densifies arbitrary labels. Module ids follow first appearance in
    /// node order, so equal groupings always yield equal partitions.
    pub fn from_labels<T: Hash + Eq>(labels: &[T]) -> Self {
        let mut ids: HashMap<&T, u32> = HashMap::new();
        let assignment = labels
            .iter()
            .map(|l| {
                let next = ids.len() as u32;
                *ids.entry(l).or_insert(next)
            })
            .collect();
        Partition {
            assignment,
            module_count: ids.len(),
        }
    }

    pub fn single(n: usize) -> Self {
        Partition {
            assignment: vec![0; n],
            module_count: usize::from(n > 0),
        }
    }

    pub fn singletons(n: usize) -> Self {
        Partition {
            assignment: (0..n as u32).collect(),
            module_count: n,
        }
    }

    /// Number of nodes covered.
    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn module_count(&self) -> usize {
        self.module_count
    }

    pub fn module_of(&self, node: NodeId) -> usize {
        self.assignment[node.index()] as usize
    }

    pub fn assignment(&self) -> &[u32] {
        &self.assignment
    }

    /// Members of each module, ascending.
    pub fn modules(&self) -> Vec<Vec<NodeId>> {
        let mut out = vec![Vec::new(); self.module_count];
        for (i, &m) in self.assignment.iter().enumerate() {
            out[m as usize].push(NodeId(i as u32));
        }
        out
    }

    pub fn sizes(&self) -> Vec<usize> {
        let mut out = vec![0; self.module_count];
        for &m in &self.assignment {
            out[m as usize] += 1;
        }
        out
    }

    /// True when every module of `self` lies inside one module of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        if self.len() != coarser.len() {
            return false;
        }
        let mut parent = vec![u32::MAX; self.module_count];
        for (fine, coarse) in self.assignment.iter().zip(&coarser.assignment) {
            let p = &mut parent[*fine as usize];
            if *p == u32::MAX {
                *p = *coarse;
            } else if *p != *coarse {
                return false;
            }
        }
        true
    }
}
