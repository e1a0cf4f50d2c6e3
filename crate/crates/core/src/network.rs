//! The class dependency network: a directed simple graph whose nodes are
//! classes and whose links carry the set of dependency kinds that produced
//! them.
//!
//! Networks are immutable once built. Construction goes through
//! [`NetworkBuilder`], which drops self-loops, merges repeated links, removes
//! isolated nodes and orders nodes canonically by name.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense index of a node in its network.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(pub u32);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for NodeId {
    fn from(i: usize) -> Self {
        NodeId(i as u32)
    }
}

/// Signature-level dependency between two classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DependencyKind {
    /// The class extends or implements the target.
    Inheritance,
    /// A method or constructor takes the target as a parameter.
    Parameter,
    /// A method returns the target.
    Return,
    /// The class declares a field of the target type.
    Field,
}

impl DependencyKind {
    pub const ALL: [DependencyKind; 4] = [
        DependencyKind::Inheritance,
        DependencyKind::Parameter,
        DependencyKind::Return,
        DependencyKind::Field,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            DependencyKind::Inheritance => "inheritance",
            DependencyKind::Parameter => "parameter",
            DependencyKind::Return => "return",
            DependencyKind::Field => "field",
        }
    }

    fn bit(self) -> u8 {
        1 << self as u8
    }
}

impl fmt::Display for DependencyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DependencyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "inheritance" | "i" => Ok(DependencyKind::Inheritance),
            "parameter" | "p" => Ok(DependencyKind::Parameter),
            "return" | "r" => Ok(DependencyKind::Return),
            "field" | "f" => Ok(DependencyKind::Field),
            _ => Err(Error::Unknown {
                what: "dependency kind",
                value: s.to_string(),
            }),
        }
    }
}

/// Set of [`DependencyKind`]s annotating one link.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct KindSet(u8);

impl KindSet {
    pub fn empty() -> Self {
        KindSet(0)
    }

    pub fn single(kind: DependencyKind) -> Self {
        KindSet(kind.bit())
    }

    pub fn insert(&mut self, kind: DependencyKind) {
        self.0 |= kind.bit();
    }

    pub fn contains(self, kind: DependencyKind) -> bool {
        self.0 & kind.bit() != 0
    }

    pub fn union(self, other: KindSet) -> KindSet {
        KindSet(self.0 | other.0)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = DependencyKind> {
        DependencyKind::ALL
            .into_iter()
            .filter(move |k| self.contains(*k))
    }
}

impl FromIterator<DependencyKind> for KindSet {
    fn from_iter<I: IntoIterator<Item = DependencyKind>>(iter: I) -> Self {
        let mut set = KindSet::empty();
        for k in iter {
            set.insert(k);
        }
        set
    }
}

impl fmt::Debug for KindSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Comma-separated kind names, e.g. `field,return`.
impl fmt::Display for KindSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for k in self.iter() {
            if !first {
                f.write_str(",")?;
            }
            f.write_str(k.as_str())?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for KindSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.split(',')
            .filter(|part| !part.trim().is_empty())
            .map(DependencyKind::from_str)
            .collect()
    }
}

impl Serialize for KindSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

/// A directed link `source -> target`: the source class depends on the target.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Link {
    pub source: NodeId,
    pub target: NodeId,
    pub kinds: KindSet,
}

/// Non-fatal note raised while building or loading a network.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub location: Option<String>,
    pub message: String,
}

impl Diagnostic {
    pub fn new(location: Option<String>, message: impl Into<String>) -> Self {
        Diagnostic {
            location,
            message: message.into(),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.location {
            Some(loc) => write!(f, "{loc}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

/// Directed simple graph of classes.
///
/// Invariants (checked by [`DependencyNetwork::validate`]): no self-loops, no
/// repeated ordered pairs, no isolated nodes, every link annotated with at
/// least one kind, nodes sorted by name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DependencyNetwork {
    names: Vec<String>,
    packages: Vec<Option<Vec<String>>>,
    links: Vec<Link>,
    out_adj: Vec<Vec<u32>>,
    in_adj: Vec<Vec<u32>>,
    und_adj: Vec<Vec<u32>>,
    index: HashMap<String, NodeId>,
}

impl DependencyNetwork {
    /// Number of nodes.
    pub fn n(&self) -> usize {
        self.names.len()
    }

    /// Number of links.
    pub fn m(&self) -> usize {
        self.links.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn nodes(&self) -> impl ExactSizeIterator<Item = NodeId> {
        (0..self.n() as u32).map(NodeId)
    }

    pub fn name(&self, node: NodeId) -> &str {
        &self.names[node.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn node(&self, name: &str) -> Option<NodeId> {
        self.index.get(name).copied()
    }

    /// Package path of a node, when annotated.
    pub fn package(&self, node: NodeId) -> Option<&[String]> {
        self.packages[node.index()].as_deref()
    }

    /// True when every node carries a package annotation.
    pub fn has_packages(&self) -> bool {
        !self.packages.is_empty() && self.packages.iter().all(Option::is_some)
    }

    /// Links sorted by `(source, target)`.
    pub fn links(&self) -> &[Link] {
        &self.links
    }

    pub fn link(&self, source: NodeId, target: NodeId) -> Option<&Link> {
        self.links
            .binary_search_by(|l| (l.source, l.target).cmp(&(source, target)))
            .ok()
            .map(|i| &self.links[i])
    }

    /// Targets of the node's out-links, ascending.
    pub fn successors(&self, node: NodeId) -> &[u32] {
        &self.out_adj[node.index()]
    }

    /// Sources of the node's in-links, ascending.
    pub fn predecessors(&self, node: NodeId) -> &[u32] {
        &self.in_adj[node.index()]
    }

    /// Neighbors regardless of link direction, ascending and deduplicated.
    pub fn neighbors(&self, node: NodeId) -> &[u32] {
        &self.und_adj[node.index()]
    }

    pub fn in_degree(&self, node: NodeId) -> usize {
        self.in_adj[node.index()].len()
    }

    pub fn out_degree(&self, node: NodeId) -> usize {
        self.out_adj[node.index()].len()
    }

    /// Total degree `k_i = k_i^in + k_i^out`.
    pub fn degree(&self, node: NodeId) -> usize {
        self.in_degree(node) + self.out_degree(node)
    }

    pub(crate) fn out_adjacency(&self) -> &[Vec<u32>] {
        &self.out_adj
    }

    pub(crate) fn undirected_adjacency(&self) -> &[Vec<u32>] {
        &self.und_adj
    }

    /// Subnetwork induced by `nodes`, re-finalized (so nodes left without
    /// links inside the subset are dropped).
    pub fn induced(&self, nodes: &[NodeId]) -> DependencyNetwork {
        let mut keep = vec![false; self.n()];
        for v in nodes {
            keep[v.index()] = true;
        }
        let mut builder = NetworkBuilder::new();
        for v in nodes {
            let id = builder.add_node(self.name(*v));
            if let Some(p) = self.package(*v) {
                builder.set_package_at(id, p.to_vec());
            }
        }
        for link in &self.links {
            if keep[link.source.index()] && keep[link.target.index()] {
                builder.add_link(self.name(link.source), self.name(link.target), link.kinds);
            }
        }
        builder.finish().0
    }

    /// Checks the structural invariants.
    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        for w in self.names.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::InvalidNetwork(format!(
                    "nodes not strictly sorted: `{}` before `{}`",
                    w[0], w[1]
                )));
            }
        }
        for w in self.links.windows(2) {
            if (w[0].source, w[0].target) >= (w[1].source, w[1].target) {
                return Err(Error::InvalidNetwork("duplicate or unsorted links".into()));
            }
        }
        for l in &self.links {
            if l.source == l.target {
                return Err(Error::InvalidNetwork(format!(
                    "self-loop on `{}`",
                    self.name(l.source)
                )));
            }
            if l.source.index() >= n || l.target.index() >= n {
                return Err(Error::InvalidNetwork("link endpoint out of range".into()));
            }
            if l.kinds.is_empty() {
                return Err(Error::InvalidNetwork("link without dependency kind".into()));
            }
        }
        for v in self.nodes() {
            if self.degree(v) == 0 {
                return Err(Error::InvalidNetwork(format!(
                    "isolated node `{}`",
                    self.name(v)
                )));
            }
        }
        Ok(())
    }
}

/// Incremental construction of a [`DependencyNetwork`].
#[derive(Debug, Default)]
pub struct NetworkBuilder {
    names: Vec<String>,
    index: HashMap<String, usize>,
    packages: Vec<Option<Vec<String>>>,
    links: BTreeMap<(usize, usize), KindSet>,
    diagnostics: Vec<Diagnostic>,
}

impl NetworkBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a node if absent; returns its builder-local index.
    pub fn add_node(&mut self, name: &str) -> usize {
        if let Some(&i) = self.index.get(name) {
            return i;
        }
        let i = self.names.len();
        self.names.push(name.to_string());
        self.packages.push(None);
        self.index.insert(name.to_string(), i);
        i
    }

    pub fn set_package(&mut self, name: &str, package: Vec<String>) {
        let i = self.add_node(name);
        self.packages[i] = Some(package);
    }

    fn set_package_at(&mut self, i: usize, package: Vec<String>) {
        self.packages[i] = Some(package);
    }

    /// Adds (or merges into) the link `source -> target`. Self-loops are
    /// dropped with a diagnostic; returns whether a link was recorded.
    pub fn add_link(&mut self, source: &str, target: &str, kinds: KindSet) -> bool {
        let s = self.add_node(source);
        let t = self.add_node(target);
        if s == t {
            self.diagnostics.push(Diagnostic::new(
                Some(source.to_string()),
                "self-loop dropped",
            ));
            return false;
        }
        let entry = self.links.entry((s, t)).or_default();
        *entry = entry.union(kinds);
        true
    }

    pub fn note(&mut self, diagnostic: Diagnostic) {
        self.diagnostics.push(diagnostic);
    }

    /// Finalizes: drops isolated nodes, sorts nodes by name and re-indexes.
    pub fn finish(mut self) -> (DependencyNetwork, Vec<Diagnostic>) {
        let mut linked = vec![false; self.names.len()];
        for &(s, t) in self.links.keys() {
            linked[s] = true;
            linked[t] = true;
        }
        let isolated = linked.iter().filter(|l| !**l).count();
        if isolated > 0 {
            self.diagnostics.push(Diagnostic::new(
                None,
                format!("{isolated} isolated node(s) discarded"),
            ));
        }

        let mut order: Vec<usize> = (0..self.names.len()).filter(|&i| linked[i]).collect();
        order.sort_by(|&a, &b| self.names[a].cmp(&self.names[b]));
        let mut remap = vec![u32::MAX; self.names.len()];
        for (new, &old) in order.iter().enumerate() {
            remap[old] = new as u32;
        }

        let n = order.len();
        let mut links: Vec<Link> = self
            .links
            .iter()
            .filter(|(_, kinds)| !kinds.is_empty())
            .map(|(&(s, t), &kinds)| Link {
                source: NodeId(remap[s]),
                target: NodeId(remap[t]),
                kinds,
            })
            .collect();
        links.sort_by_key(|l| (l.source, l.target));

        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for l in &links {
            out_adj[l.source.index()].push(l.target.0);
            in_adj[l.target.index()].push(l.source.0);
        }
        for a in &mut in_adj {
            a.sort_unstable();
        }
        let und_adj = out_adj
            .iter()
            .zip(&in_adj)
            .map(|(o, i)| merge_sorted(o, i))
            .collect();

        let names: Vec<String> = order.iter().map(|&i| self.names[i].clone()).collect();
        let packages = order.iter().map(|&i| self.packages[i].take()).collect();
        let index = names
            .iter()
            .enumerate()
            .map(|(i, name)| (name.clone(), NodeId(i as u32)))
            .collect();

        let net = DependencyNetwork {
            names,
            packages,
            links,
            out_adj,
            in_adj,
            und_adj,
            index,
        };
        (net, self.diagnostics)
    }
}

fn merge_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Builds a network from `(source, target)` name pairs, all links
/// annotated with `kind`. Handy for fixtures and synthetic graphs.
pub fn from_pairs<S: AsRef<str>>(pairs: &[(S, S)], kind: DependencyKind) -> DependencyNetwork {
    let mut b = NetworkBuilder::new();
    for (s, t) in pairs {
        b.add_link(s.as_ref(), t.as_ref(), KindSet::single(kind));
    }
    b.finish().0
}

/// Builds a network over nodes named by zero-padded integers, so that node
/// order equals the numeric order of the input indices.
pub fn from_index_pairs(pairs: &[(usize, usize)]) -> DependencyNetwork {
    let width = pairs
        .iter()
        .map(|&(s, t)| s.max(t))
        .max()
        .map_or(1, |m| m.to_string().len());
    let mut b = NetworkBuilder::new();
    for &(s, t) in pairs {
        b.add_link(
            &format!("{s:0width$}"),
            &format!("{t:0width$}"),
            KindSet::single(DependencyKind::Field),
        );
    }
    b.finish().0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builder_collapses_duplicates_and_drops_self_loops() {
        let mut b = NetworkBuilder::new();
        b.add_link("A", "B", KindSet::single(DependencyKind::Return));
        b.add_link("A", "B", KindSet::single(DependencyKind::Return));
        b.add_link("A", "B", KindSet::single(DependencyKind::Field));
        assert!(!b.add_link("C", "C", KindSet::single(DependencyKind::Field)));
        let (net, diags) = b.finish();
        assert_eq!(net.n(), 2);
        assert_eq!(net.m(), 1);
        let kinds = net.links()[0].kinds;
        assert!(kinds.contains(DependencyKind::Return));
        assert!(kinds.contains(DependencyKind::Field));
        assert!(diags.iter().any(|d| d.message.contains("self-loop")));
        assert!(diags.iter().any(|d| d.message.contains("isolated")));
        net.validate().unwrap();
    }

    #[test]
    fn reciprocal_links_are_distinct() {
        let net = from_pairs(&[("A", "B"), ("B", "A")], DependencyKind::Field);
        assert_eq!((net.n(), net.m()), (2, 2));
        assert_eq!(net.neighbors(NodeId(0)), &[1]);
        assert_eq!(net.degree(NodeId(0)), 2);
    }

    #[test]
    fn nodes_sorted_by_name() {
        let net = from_pairs(&[("z", "a"), ("m", "z")], DependencyKind::Field);
        assert_eq!(net.names(), &["a", "m", "z"]);
        assert_eq!(net.successors(net.node("z").unwrap()), &[0]);
    }

    #[test]
    fn kindset_text_round_trip() {
        let set: KindSet = "return,inheritance".parse().unwrap();
        assert_eq!(set.to_string(), "inheritance,return");
        assert_eq!(set.to_string().parse::<KindSet>().unwrap(), set);
        assert!("bogus".parse::<KindSet>().is_err());
    }

    #[test]
    fn induced_subnetwork_keeps_packages() {
        let mut b = NetworkBuilder::new();
        b.add_link("a", "b", KindSet::single(DependencyKind::Field));
        b.add_link("b", "c", KindSet::single(DependencyKind::Field));
        b.set_package("a", vec!["p".into()]);
        let (net, _) = b.finish();
        let sub = net.induced(&[NodeId(0), NodeId(1)]);
        assert_eq!((sub.n(), sub.m()), (2, 1));
        assert_eq!(sub.package(NodeId(0)), Some(&["p".to_string()][..]));
    }

    #[test]
    fn index_pairs_keep_numeric_order() {
        let net = from_index_pairs(&[(10, 2), (2, 9)]);
        assert_eq!(net.names(), &["02", "09", "10"]);
    }
}
