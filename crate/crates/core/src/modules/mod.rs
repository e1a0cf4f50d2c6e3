//! Module detection, partition comparison and module hierarchies.
//!
//! Three detectors are available: greedy modularity (`cnm`), label
//! propagation (`lpa`) and structural propagation (`gp`), which also
//! groups nodes that are not linked but share linkage patterns. All of them
//! read the network with link direction ignored.

mod cnm;
mod hierarchy;
mod lpa;
mod modularity;
mod nmi;
mod packages;
mod structural;

use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use hierarchy::{build_hierarchy, ModuleHierarchy};
pub use nmi::nmi;
pub use packages::{package_levels, package_partition, PackageLevels};
pub(crate) use packages::{level_of, package_paths, root_depth, truncate};

use crate::error::{Error, Result};
use crate::network::DependencyNetwork;
use crate::partition::Partition;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Cnm,
    Lpa,
    Gp,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::Cnm, Algorithm::Lpa, Algorithm::Gp];

    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Cnm => "cnm",
            Algorithm::Lpa => "lpa",
            Algorithm::Gp => "gp",
        }
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.as_str() == s)
            .ok_or_else(|| Error::Unknown {
                what: "module algorithm",
                value: s.to_string(),
            })
    }
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

pub fn detect_greedy_modularity(net: &DependencyNetwork) -> Partition {
    cnm::greedy_modularity_adj(net.undirected_adjacency())
}

pub fn detect_label_propagation(net: &DependencyNetwork, seed: u64) -> Result<Partition> {
    label_propagation(net.undirected_adjacency(), seed)
}

/// Label propagation on raw neighbor lists; nodes without neighbors are
/// rejected.
pub fn label_propagation(adj: &[Vec<u32>], seed: u64) -> Result<Partition> {
    if let Some(v) = adj.iter().position(Vec::is_empty) {
        return Err(Error::IsolatedNode(v.to_string()));
    }
    Ok(lpa::label_propagation_adj(adj, seed))
}

pub fn detect_structural_modules(net: &DependencyNetwork, seed: u64) -> Partition {
    structural::structural_modules_adj(net.undirected_adjacency(), seed)
}

pub fn detect(net: &DependencyNetwork, algorithm: Algorithm, seed: u64) -> Result<Partition> {
    match algorithm {
        Algorithm::Cnm => Ok(detect_greedy_modularity(net)),
        Algorithm::Lpa => detect_label_propagation(net, seed),
        Algorithm::Gp => Ok(detect_structural_modules(net, seed)),
    }
}

/// Modularity of `partition` on the undirected simplification.
pub fn modularity(net: &DependencyNetwork, partition: &Partition) -> Result<f64> {
    if partition.len() != net.n() {
        return Err(Error::NodeSetMismatch {
            left: net.n(),
            right: partition.len(),
        });
    }
    Ok(modularity::modularity_adj(net.undirected_adjacency(), partition))
}

/// `name<TAB>module` lines in node order.
pub fn partition_table(net: &DependencyNetwork, partition: &Partition) -> String {
    net.nodes()
        .map(|v| format!("{}\t{}\n", net.name(v), partition.module_of(v)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::{from_index_pairs, from_pairs, DependencyKind, NetworkBuilder, NodeId};

    fn two_cliques() -> DependencyNetwork {
        let mut p = Vec::new();
        for base in [0, 4] {
            for i in 0..4 {
                for j in i + 1..4 {
                    p.push((base + i, base + j));
                }
            }
        }
        p.push((3, 4));
        from_index_pairs(&p)
    }

    fn is_cliques(p: &Partition) -> bool {
        *p == Partition::from_labels(&[0, 0, 0, 0, 1, 1, 1, 1])
    }

    /// Every set partition of `0..n` as label vectors.
    fn all_partitions(n: usize) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        fn rec(i: usize, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if i == cur.len() {
                out.push(cur.clone());
                return;
            }
            for l in 0..=max + 1 {
                cur[i] = l;
                rec(i + 1, max.max(l), cur, out);
            }
        }
        if n > 0 {
            rec(1, 0, &mut cur, &mut out);
        }
        out
    }

    #[test]
    fn cnm_matches_exhaustive_optimum() {
        let net = two_cliques();
        let parts = all_partitions(8);
        assert_eq!(parts.len(), 4140);
        let best = parts
            .iter()
            .map(|l| Partition::from_labels(l))
            .max_by(|a, b| {
                modularity(&net, a).unwrap().total_cmp(&modularity(&net, b).unwrap())
            })
            .unwrap();
        assert!(is_cliques(&best));
        assert!(is_cliques(&detect_greedy_modularity(&net)));
    }

    #[test]
    fn single_clique_stays_whole() {
        let k5: Vec<(usize, usize)> = (0..5).flat_map(|i| (i + 1..5).map(move |j| (i, j))).collect();
        let net = from_index_pairs(&k5);
        assert_eq!(detect_greedy_modularity(&net).module_count(), 1);
        assert_eq!(detect_structural_modules(&net, 3).module_count(), 1);
        let h = build_hierarchy(&net, 3, 0);
        assert_eq!(h.depth(), 1);
    }

    #[test]
    fn lpa_splits_cliques_for_most_seeds() {
        let net = two_cliques();
        let hits = (0..100)
            .filter(|&s| is_cliques(&detect_label_propagation(&net, s).unwrap()))
            .count();
        assert!(hits >= 95, "{hits}");
    }

    #[test]
    fn structural_splits_cliques() {
        let net = two_cliques();
        for seed in 0..20 {
            assert!(is_cliques(&detect_structural_modules(&net, seed)), "seed {seed}");
        }
    }

    #[test]
    fn structural_groups_common_patterns() {
        let mut pairs = Vec::new();
        for t in ["t1", "t2", "t3", "t4", "t5"] {
            pairs.push(("h1", t));
            pairs.push(("h2", t));
        }
        let net = from_pairs(&pairs, DependencyKind::Field);
        let p = detect_structural_modules(&net, 1);
        let (h1, h2) = (net.node("h1").unwrap(), net.node("h2").unwrap());
        assert_eq!(p.module_of(h1), p.module_of(h2));
        assert_ne!(p.module_of(h1), p.module_of(net.node("t1").unwrap()));
    }

    #[test]
    fn structural_is_deterministic() {
        let net = two_cliques();
        assert_eq!(detect_structural_modules(&net, 9), detect_structural_modules(&net, 9));
    }

    #[test]
    fn lpa_rejects_isolated_nodes() {
        assert!(matches!(label_propagation(&[vec![], vec![]], 0), Err(Error::IsolatedNode(_))));
    }

    #[test]
    fn hierarchy_of_two_cliques() {
        let h = build_hierarchy(&two_cliques(), 3, 5);
        assert_eq!(h.depth(), 1);
        assert!(is_cliques(h.bottom()));
        assert!(h.parents.is_empty());
    }

    #[test]
    fn hierarchy_levels_refine() {
        // four 4-cliques, pairs of cliques densely bridged
        let mut p = Vec::new();
        for base in [0, 4, 8, 12] {
            for i in 0..4 {
                for j in i + 1..4 {
                    p.push((base + i, base + j));
                }
            }
        }
        p.extend([(0, 4), (1, 5), (2, 6), (8, 12), (9, 13), (10, 14), (3, 11)]);
        let net = from_index_pairs(&p);
        let h = build_hierarchy(&net, 3, 2);
        for (i, w) in h.levels.windows(2).enumerate() {
            assert!(w[1].refines(&w[0]));
            assert!(w[1].module_count() > w[0].module_count());
            for (m, &parent) in h.parents[i].iter().enumerate() {
                let member = w[1].assignment().iter().position(|&x| x as usize == m).unwrap();
                assert_eq!(w[0].assignment()[member], parent);
            }
        }
        assert!(h.levels.iter().all(|l| l.len() == 16));
    }

    #[test]
    fn packages_and_levels() {
        let mut b = NetworkBuilder::new();
        b.add_link("a", "b", crate::network::KindSet::single(DependencyKind::Field));
        b.add_link("b", "c", crate::network::KindSet::single(DependencyKind::Field));
        let path = |s: &str| s.split('.').map(String::from).collect::<Vec<_>>();
        b.set_package("a", path("org.x.ui"));
        b.set_package("b", path("org.x.ui.dialog"));
        b.set_package("c", path("org.x.io"));
        let net = b.finish().0;
        assert_eq!(package_partition(&net, None).unwrap().module_count(), 3);
        assert_eq!(package_partition(&net, Some(1)).unwrap().module_count(), 1);
        assert_eq!(package_partition(&net, Some(2)).unwrap().assignment(), &[0, 0, 1]);
        let lv = package_levels(&net).unwrap();
        assert_eq!((lv.root_depth, lv.l_max), (2, 3));
        assert!((lv.l_mean - 7.0 / 3.0).abs() < 1e-12);
        let _ = NodeId(0);

        let bare = from_index_pairs(&[(0, 1)]);
        assert!(matches!(package_partition(&bare, None), Err(Error::MissingPackages)));
    }

    #[test]
    fn algorithm_names() {
        for a in Algorithm::ALL {
            assert_eq!(a.as_str().parse::<Algorithm>().unwrap(), a);
        }
        assert!("mm".parse::<Algorithm>().is_err());
    }

    #[test]
    fn table_export() {
        let net = from_index_pairs(&[(0, 1)]);
        assert_eq!(partition_table(&net, &Partition::singletons(2)), "0\t0\n1\t1\n");
    }
}
