use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::network::DependencyNetwork;

/// Which degree sequence to analyse.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DegreeKind {
    #[default]
    Total,
    In,
    Out,
}

impl FromStr for DegreeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "total" => Ok(DegreeKind::Total),
            "in" => Ok(DegreeKind::In),
            "out" => Ok(DegreeKind::Out),
            _ => Err(Error::Unknown {
                what: "degree kind",
                value: s.to_string(),
            }),
        }
    }
}

/// Average degrees and degree histograms (degree -> node count).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegreeStats {
    pub k: f64,
    pub k_in_mean: f64,
    pub k_out_mean: f64,
    pub max_k_in: usize,
    pub max_k_out: usize,
    pub p_k: BTreeMap<usize, usize>,
    pub p_k_in: BTreeMap<usize, usize>,
    pub p_k_out: BTreeMap<usize, usize>,
}

pub fn degree_sequence(net: &DependencyNetwork, kind: DegreeKind) -> Vec<usize> {
    net.nodes()
        .map(|v| match kind {
            DegreeKind::Total => net.degree(v),
            DegreeKind::In => net.in_degree(v),
            DegreeKind::Out => net.out_degree(v),
        })
        .collect()
}

fn histogram(seq: &[usize]) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for &d in seq {
        *h.entry(d).or_insert(0) += 1;
    }
    h
}

pub fn degree_stats(net: &DependencyNetwork) -> DegreeStats {
    let n = net.n();
    let m = net.m() as f64;
    let (k, k_half) = if n == 0 {
        (0.0, 0.0)
    } else {
        (2.0 * m / n as f64, m / n as f64)
    };
    let ins = degree_sequence(net, DegreeKind::In);
    let outs = degree_sequence(net, DegreeKind::Out);
    DegreeStats {
        k,
        k_in_mean: k_half,
        k_out_mean: k_half,
        max_k_in: ins.iter().copied().max().unwrap_or(0),
        max_k_out: outs.iter().copied().max().unwrap_or(0),
        p_k: histogram(&degree_sequence(net, DegreeKind::Total)),
        p_k_in: histogram(&ins),
        p_k_out: histogram(&outs),
    }
}

/// Tab-separated degree distribution, one row per degree present in any of
/// the three histograms, with probabilities `p_k`, `p_k^in`, `p_k^out`
/// (plot with log-log axes).
pub fn histogram_table(stats: &DegreeStats) -> String {
    let n: usize = stats.p_k.values().sum();
    let mut degrees: Vec<usize> = stats
        .p_k
        .keys()
        .chain(stats.p_k_in.keys())
        .chain(stats.p_k_out.keys())
        .copied()
        .collect();
    degrees.sort_unstable();
    degrees.dedup();
    let p = |h: &BTreeMap<usize, usize>, k: usize| h.get(&k).map_or(0.0, |&c| c as f64 / n.max(1) as f64);
    let mut out = String::from("# k\tp_k\tp_k_in\tp_k_out\n");
    for k in degrees {
        let _ = writeln!(
            out,
            "{k}\t{:.6}\t{:.6}\t{:.6}",
            p(&stats.p_k, k),
            p(&stats.p_k_in, k),
            p(&stats.p_k_out, k)
        );
    }
    out
}
