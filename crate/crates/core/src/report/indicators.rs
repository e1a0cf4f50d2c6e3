//! Project and class quality indicators.

use serde::Serialize;

use super::config::Thresholds;
use crate::centrality::{NodeMetrics, RankEntry};
use crate::control::ControlReport;
use crate::metrics::{NetworkStats, PowerLawFit};
use crate::network::NodeId;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Warn,
    Fail,
    NotComputed,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IndicatorVerdict {
    pub indicator: String,
    pub observed: Option<f64>,
    pub expected: String,
    pub verdict: Verdict,
    pub commentary: String,
}

/// Classes standing out on one class-level metric.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassIndicator {
    pub indicator: String,
    pub reading: String,
    pub flagged: Vec<RankEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QualityReport {
    pub project: Vec<IndicatorVerdict>,
    pub classes: Vec<ClassIndicator>,
}

impl QualityReport {
    pub fn any_fail(&self) -> bool {
        self.project.iter().any(|v| v.verdict == Verdict::Fail)
    }
}

/// Names of the project indicators, in report order.
pub const PROJECT_INDICATORS: [&str; 9] = [
    "p_k_in power-law",
    "k_in >> 0",
    "p_k_out truncated",
    "k_out << n",
    "D in (0,1)",
    "l - l_er <= 0",
    "E ~ 0",
    "n_d/n >> 0",
    "gamma << 3",
];

/// Names of the class indicators, in report order.
pub const CLASS_INDICATORS: [&str; 4] = ["DC/BC", "CC", "k_in", "k_out"];

fn row(i: usize, observed: Option<f64>, expected: String, verdict: Verdict, commentary: &str) -> IndicatorVerdict {
    IndicatorVerdict {
        indicator: PROJECT_INDICATORS[i].to_string(),
        observed,
        expected,
        verdict: if observed.is_none() { Verdict::NotComputed } else { verdict },
        commentary: commentary.to_string(),
    }
}

fn is_power_law(fit: &PowerLawFit, t: &Thresholds) -> bool {
    fit.ks_distance <= t.ks_max && fit.tail_fraction >= t.tail_fraction_min
}

/// Banded verdict for "smaller is better" values.
fn banded(x: f64, pass: f64, fail: f64) -> Verdict {
    if x <= pass {
        Verdict::Pass
    } else if x <= fail {
        Verdict::Warn
    } else {
        Verdict::Fail
    }
}

fn project_rows(stats: &NetworkStats, control: Option<&ControlReport>, t: &Thresholds) -> Vec<IndicatorVerdict> {
    let n = stats.n as f64;
    let sw = &stats.small_world;
    let mut rows = Vec::with_capacity(9);

    let fin = stats.power_law_in.as_ref();
    rows.push(row(
        0,
        fin.map(|f| f.ks_distance),
        format!("KS <= {} with tail share >= {}", t.ks_max, t.tail_fraction_min),
        if fin.is_some_and(|f| is_power_law(f, t)) { Verdict::Pass } else { Verdict::Warn },
        "High code reusability",
    ));

    rows.push(row(
        1,
        (stats.n > 0).then_some(stats.degrees.k_in_mean),
        format!(">= {}", t.k_in_mean_min),
        if stats.degrees.k_in_mean >= t.k_in_mean_min { Verdict::Pass } else { Verdict::Warn },
        "High code reuse",
    ));

    let fout = stats.power_law_out.as_ref();
    rows.push(row(
        2,
        fout.map(|f| f.ks_distance),
        format!("not a power law (KS > {} or tail share < {})", t.ks_max, t.tail_fraction_min),
        if fout.is_some_and(|f| !is_power_law(f, t)) { Verdict::Pass } else { Verdict::Warn },
        "Class complexity kept bounded",
    ));

    let share = stats.degrees.max_k_out as f64 / n;
    rows.push(row(
        3,
        (stats.n > 0).then_some(share),
        format!("max k_out / n <= {}", t.k_out_max_fraction),
        banded(share, t.k_out_max_fraction, t.k_out_fail_fraction),
        "Low class complexity",
    ));

    let d = sw.D;
    rows.push(row(
        4,
        (stats.n > 0).then_some(d),
        format!("within [{}, {}]", t.d_min, t.d_max),
        if (t.d_min..=t.d_max).contains(&d) {
            Verdict::Pass
        } else if d > 0.0 && d < 1.0 {
            Verdict::Warn
        } else {
            Verdict::Fail
        },
        "Modular structure, neither sparse nor monolithic",
    ));

    let gap = sw.l.zip(sw.l_er).map(|(l, ler)| l - ler);
    rows.push(row(
        5,
        gap,
        format!("<= {}", t.l_gap_max),
        gap.map_or(Verdict::NotComputed, |g| banded(g, t.l_gap_max, t.l_gap_fail)),
        "Small-world structure, sound design",
    ));

    rows.push(row(
        6,
        (stats.n > 1).then_some(sw.E),
        format!("<= {}", t.e_max),
        banded(sw.E, t.e_max, t.e_fail),
        "Low efficiency of information flow, faults spread slowly",
    ));

    let frac = control.map(|c| c.fraction);
    rows.push(row(
        7,
        frac,
        format!(">= {}", t.nd_min),
        if frac.is_some_and(|f| f >= t.nd_min) { Verdict::Pass } else { Verdict::Warn },
        "Low project controllability",
    ));

    let gamma = stats.power_law.as_ref().map(|f| f.gamma);
    let verdict = match gamma {
        Some(g) if g >= t.gamma_pass => Verdict::Pass,
        _ => Verdict::Warn,
    };
    rows.push(row(
        8,
        gamma,
        format!(">= {} passes, below warns", t.gamma_pass),
        verdict,
        "Exponent below 3 reads as robustness to random faults and as easy fault spreading; both readings apply",
    ));
    rows
}

/// Top `fraction` of classes by `value` (at least one when any value is
/// positive), ties by name.
fn top_share(nodes: &[NodeMetrics], fraction: f64, value: impl Fn(&NodeMetrics) -> f64) -> Vec<RankEntry> {
    let count = ((nodes.len() as f64 * fraction).ceil() as usize).max(1);
    let mut idx: Vec<usize> = (0..nodes.len()).filter(|&i| value(&nodes[i]) > 0.0).collect();
    idx.sort_by(|&a, &b| {
        value(&nodes[b])
            .total_cmp(&value(&nodes[a]))
            .then_with(|| nodes[a].name.cmp(&nodes[b].name))
    });
    idx.truncate(count);
    idx.into_iter()
        .map(|i| RankEntry {
            node: nodes[i].node,
            name: nodes[i].name.clone(),
            value: value(&nodes[i]),
        })
        .collect()
}

fn class_rows(nodes: &[NodeMetrics], t: &Thresholds) -> Vec<ClassIndicator> {
    // union of top dc and top bc, listed by bc then dc
    let mut seeds: Vec<NodeId> = top_share(nodes, t.flag_fraction, |m| m.dc)
        .into_iter()
        .chain(top_share(nodes, t.flag_fraction, |m| m.bc))
        .map(|e| e.node)
        .collect();
    seeds.sort();
    seeds.dedup();
    let mut influential: Vec<&NodeMetrics> = seeds.iter().map(|v| &nodes[v.index()]).collect();
    influential.sort_by(|a, b| {
        b.bc.total_cmp(&a.bc)
            .then(b.dc.total_cmp(&a.dc))
            .then_with(|| a.name.cmp(&b.name))
    });
    let influential = influential
        .into_iter()
        .map(|m| RankEntry {
            node: m.node,
            name: m.name.clone(),
            value: m.bc,
        })
        .collect();

    let mk = |i: usize, reading: &str, flagged| ClassIndicator {
        indicator: CLASS_INDICATORS[i].to_string(),
        reading: reading.to_string(),
        flagged,
    };
    vec![
        mk(0, "Influential seeds: faults here reach many classes", influential),
        mk(1, "Vulnerable seeds: exposed to faults elsewhere", top_share(nodes, t.flag_fraction, |m| m.cc)),
        mk(2, "Influential hubs: heavily reused classes", top_share(nodes, t.flag_fraction, |m| m.k_in as f64)),
        mk(3, "Complexity hubs: classes with many dependencies", top_share(nodes, t.flag_fraction, |m| m.k_out as f64)),
    ]
}

/// Verdicts for every project indicator and flag lists for every class
/// indicator. Missing inputs give `not-computed` rows or empty flag lists.
pub fn evaluate_indicators(
    stats: &NetworkStats,
    nodes: Option<&[NodeMetrics]>,
    control: Option<&ControlReport>,
    thresholds: &Thresholds,
) -> QualityReport {
    QualityReport {
        project: project_rows(stats, control, thresholds),
        classes: match nodes {
            Some(nodes) => class_rows(nodes, thresholds),
            None => CLASS_INDICATORS
                .iter()
                .map(|name| ClassIndicator {
                    indicator: name.to_string(),
                    reading: "not computed".to_string(),
                    flagged: Vec::new(),
                })
                .collect(),
        },
    }
}
