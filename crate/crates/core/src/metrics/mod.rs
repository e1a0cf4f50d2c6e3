//! Macroscopic network statistics: degree distributions, scale-free fit,
//! clustering, distances, efficiency and random-graph baselines.

mod clustering;
mod degree;
mod distance;
mod er;
mod powerlaw;

pub use clustering::{clustering_sv, clustering_ws, Clustering};
pub(crate) use clustering::clustering_ws_adj;
pub use degree::{degree_sequence, degree_stats, histogram_table, DegreeKind, DegreeStats};
pub use distance::{avg_distance, flow_efficiency, undirected_efficiency};
pub use er::{er_baselines, sample_er, ErBaselines};
pub(crate) use er::derive_seed;
pub use powerlaw::{fit_power_law, fit_power_law_lsq, hurwitz_zeta, PowerLawFit, MIN_TAIL};

use serde::Serialize;

use crate::netcore::weakly_connected_components;
use crate::network::DependencyNetwork;

#[derive(Clone, Debug)]
pub struct StatsOptions {
    /// Degree sequence used for the exponent fit.
    pub degree: DegreeKind,
    pub er_samples: usize,
    pub seed: u64,
}

impl Default for StatsOptions {
    fn default() -> Self {
        StatsOptions {
            degree: DegreeKind::Total,
            er_samples: 20,
            seed: 0,
        }
    }
}

/// Small-world statistics together with their random-graph baselines.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[allow(non_snake_case)]
pub struct SmallWorldStats {
    pub C: f64,
    pub D: f64,
    /// `None` when the largest component has fewer than two nodes.
    pub l: Option<f64>,
    pub E: f64,
    pub C_er: Option<f64>,
    pub l_er: Option<f64>,
    pub l_er_approx: Option<f64>,
}

/// Everything [`network_stats`] computes for one network.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NetworkStats {
    pub n: usize,
    pub m: usize,
    pub lcc_fraction: f64,
    pub degrees: DegreeStats,
    pub fit_degree: DegreeKind,
    /// Fit of the selected degree sequence; `None` when it cannot be fitted.
    pub power_law: Option<PowerLawFit>,
    pub power_law_error: Option<String>,
    pub power_law_in: Option<PowerLawFit>,
    pub power_law_out: Option<PowerLawFit>,
    pub small_world: SmallWorldStats,
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

pub fn network_stats(net: &DependencyNetwork, options: &StatsOptions) -> NetworkStats {
    let degrees = degree_stats(net);
    let (power_law, power_law_error) = match fit_power_law(&degree_sequence(net, options.degree)) {
        Ok(fit) => (Some(fit), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let fit = |kind| fit_power_law(&degree_sequence(net, kind)).ok();
    let er = er_baselines(net.n(), net.m(), options.er_samples, options.seed).ok();
    NetworkStats {
        n: net.n(),
        m: net.m(),
        lcc_fraction: weakly_connected_components(net).lcc_fraction,
        degrees,
        fit_degree: options.degree,
        power_law,
        power_law_error,
        power_law_in: fit(DegreeKind::In),
        power_law_out: fit(DegreeKind::Out),
        small_world: SmallWorldStats {
            C: clustering_ws(net).mean,
            D: clustering_sv(net).mean,
            l: avg_distance(net).ok(),
            E: flow_efficiency(net),
            C_er: er.as_ref().map(|b| b.c_er),
            l_er: er.as_ref().and_then(|b| finite(b.l_er)),
            l_er_approx: er.as_ref().and_then(|b| finite(b.l_er_approx)),
        },
    }
}
