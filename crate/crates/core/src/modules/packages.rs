use serde::Serialize;

use crate::error::{Error, Result};
use crate::network::DependencyNetwork;
use crate::partition::Partition;

/// Package depths measured from the deepest package shared by all classes,
/// which is level 1.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PackageLevels {
    /// Number of leading package components at level 1.
    pub root_depth: usize,
    pub l_mean: f64,
    pub l_max: usize,
}

pub(crate) fn package_paths(net: &DependencyNetwork) -> Result<Vec<&[String]>> {
    net.nodes()
        .map(|v| net.package(v).ok_or(Error::MissingPackages))
        .collect()
}

pub(crate) fn root_depth(paths: &[&[String]]) -> usize {
    let Some(first) = paths.first() else { return 1 };
    let mut common = first.len();
    for p in &paths[1..] {
        common = common.min(p.iter().zip(first.iter()).take_while(|(a, b)| a == b).count());
    }
    common.max(1)
}

/// Level of a package path given the root depth.
pub(crate) fn level_of(path: &[String], root: usize) -> usize {
    (path.len() + 1).saturating_sub(root).max(1)
}

/// Path truncated to `level` (1 = the shared root).
pub(crate) fn truncate(path: &[String], root: usize, level: usize) -> String {
    let depth = (root + level - 1).min(path.len());
    path[..depth].join(".")
}

pub fn package_levels(net: &DependencyNetwork) -> Result<PackageLevels> {
    let paths = package_paths(net)?;
    let root = root_depth(&paths);
    let levels: Vec<usize> = paths.iter().map(|p| level_of(p, root)).collect();
    Ok(PackageLevels {
        root_depth: root,
        l_mean: levels.iter().sum::<usize>() as f64 / levels.len().max(1) as f64,
        l_max: levels.iter().copied().max().unwrap_or(0),
    })
}

/// Partition by package, at the bottom-most package or truncated to `level`.
pub fn package_partition(net: &DependencyNetwork, level: Option<usize>) -> Result<Partition> {
    let paths = package_paths(net)?;
    let labels: Vec<String> = match level {
        None => paths.iter().map(|p| p.join(".")).collect(),
        Some(0) => return Err(Error::Domain("package levels start at 1".into())),
        Some(l) => {
            let root = root_depth(&paths);
            paths.iter().map(|p| truncate(p, root, l)).collect()
        }
    };
    Ok(Partition::from_labels(&labels))
}
