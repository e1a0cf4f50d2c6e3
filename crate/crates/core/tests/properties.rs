mod common;

use proptest::prelude::*;
use softnet::centrality::{betweenness, harmonic_closeness};
use softnet::control::driver_nodes;
use softnet::metrics::{
    avg_distance, clustering_sv, clustering_ws, degree_stats, flow_efficiency, undirected_efficiency,
};
use softnet::modules::{build_hierarchy, detect_greedy_modularity, detect_structural_modules, modularity, nmi};
use softnet::netcore::{bfs_directed, bfs_undirected, weakly_connected_components, UNREACHABLE};
use softnet::network::from_index_pairs;
use softnet::predict::{predict_packages, predict_with, jaccard};
use softnet::{DependencyNetwork, NodeId, Partition};

fn digraph(max_n: usize) -> impl Strategy<Value = DependencyNetwork> {
    (2..=max_n)
        .prop_flat_map(|n| proptest::collection::vec((0..n, 0..n), 1..n * 3))
        .prop_map(|pairs| {
            let pairs: Vec<(usize, usize)> = pairs.into_iter().filter(|(s, t)| s != t).collect();
            from_index_pairs(&pairs)
        })
        .prop_filter("needs a link", |net| net.m() > 0)
}

fn labels(n: usize, k: u32) -> impl Strategy<Value = Partition> {
    proptest::collection::vec(0..k, n).prop_map(|l| Partition::from_labels(&l))
}

fn with_packages(net: &DependencyNetwork, depth: &[usize]) -> DependencyNetwork {
    let mut b = softnet::network::NetworkBuilder::new();
    for l in net.links() {
        b.add_link(net.name(l.source), net.name(l.target), l.kinds);
    }
    for (i, name) in net.names().iter().enumerate() {
        let d = depth[i % depth.len()];
        let path = (0..d).map(|j| format!("p{}", (i + j) % 3)).collect();
        b.set_package(name, [vec!["root".to_string()], path].concat());
    }
    b.finish().0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn degree_bookkeeping(net in digraph(20)) {
        let s = degree_stats(&net);
        for h in [&s.p_k, &s.p_k_in, &s.p_k_out] {
            prop_assert_eq!(h.values().sum::<usize>(), net.n());
        }
        prop_assert!((s.k - (s.k_in_mean + s.k_out_mean)).abs() < 1e-12);
        prop_assert!((s.k - 2.0 * net.m() as f64 / net.n() as f64).abs() < 1e-12);
    }

    #[test]
    fn clustering_ranges(net in digraph(20)) {
        let (c, d) = (clustering_ws(&net), clustering_sv(&net));
        for (ci, di) in c.per_node.iter().zip(&d.per_node) {
            prop_assert!((0.0..=1.0).contains(ci) && (0.0..=1.0).contains(di));
            prop_assert!(di >= ci);
        }
        prop_assert!(d.mean >= c.mean - 1e-15);
    }

    #[test]
    fn efficiency_ordering(net in digraph(16)) {
        let (e, u) = (flow_efficiency(&net), undirected_efficiency(&net));
        prop_assert!((0.0..=1.0).contains(&e));
        prop_assert!(u >= e - 1e-15);
    }

    #[test]
    fn distance_bounds(net in digraph(16)) {
        let comps = weakly_connected_components(&net);
        if comps.partition.module_count() == 1 {
            let l = avg_distance(&net).unwrap();
            prop_assert!(l >= 1.0 && l <= (net.n() - 1) as f64);
        }
    }

    #[test]
    fn bfs_triangle_and_direction(net in digraph(14)) {
        let n = net.n();
        let fields: Vec<_> = net.nodes().map(|v| bfs_directed(&net, v)).collect();
        for s in net.nodes() {
            let und = bfs_undirected(&net, s);
            for v in 0..n {
                let d = fields[s.index()].dist[v];
                if d != UNREACHABLE {
                    prop_assert!(und.dist[v] <= d);
                    if v != s.index() { prop_assert!(d >= 1); }
                    for w in 0..n {
                        let dw = fields[v].dist[w];
                        if dw != UNREACHABLE {
                            prop_assert!(fields[s.index()].dist[w] <= d + dw);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn components_cover_every_node(net in digraph(20)) {
        let c = weakly_connected_components(&net);
        prop_assert_eq!(c.partition.len(), net.n());
        prop_assert_eq!(c.partition.sizes().iter().sum::<usize>(), net.n());
        prop_assert!(c.lcc_fraction > 0.0 && c.lcc_fraction <= 1.0);
    }

    #[test]
    fn closeness_never_drops_when_linking(net in digraph(12), s in 0usize..12, t in 0usize..12) {
        let n = net.n();
        let (s, t) = (s % n, t % n);
        prop_assume!(s != t);
        let before = harmonic_closeness(&net);
        let mut pairs: Vec<(usize, usize)> = net.links().iter().map(|l| (l.source.index(), l.target.index())).collect();
        pairs.push((s, t));
        // names are zero-padded indices, so the rebuilt network keeps node order
        let after_net = softnet::network::from_pairs(
            &pairs.iter().map(|&(a, b)| (net.names()[a].clone(), net.names()[b].clone())).collect::<Vec<_>>(),
            softnet::DependencyKind::Field,
        );
        let after = harmonic_closeness(&after_net);
        for (b, a) in before.iter().zip(&after) {
            prop_assert!(a >= &(b - 1e-15));
        }
        let (d0, d1) = (driver_nodes(&net).unwrap(), driver_nodes(&after_net).unwrap());
        prop_assert!(d1.n_d <= d0.n_d);
    }

    #[test]
    fn betweenness_of_leaves_is_zero(net in digraph(14)) {
        let bc = betweenness(&net, false);
        for v in net.nodes() {
            prop_assert!((0.0..=1.0 + 1e-12).contains(&bc[v.index()]));
            if net.in_degree(v) == 0 || net.out_degree(v) == 0 {
                prop_assert_eq!(bc[v.index()], 0.0);
            }
        }
    }

    #[test]
    fn control_fraction_range(net in digraph(20)) {
        let r = driver_nodes(&net).unwrap();
        prop_assert_eq!(r.n_d, (net.n() - r.matching_size).max(1));
        prop_assert!(r.fraction > 0.0 && r.fraction <= 1.0);
        prop_assert_eq!(r.drivers.len(), r.n_d);
    }

    #[test]
    fn nmi_symmetry_and_range(a in labels(30, 5), b in labels(30, 3)) {
        let (x, y) = (nmi(&a, &b).unwrap(), nmi(&b, &a).unwrap());
        prop_assert!((0.0..=1.0).contains(&x));
        prop_assert!((x - y).abs() < 1e-12);
        prop_assert_eq!(nmi(&a, &a).unwrap(), 1.0);
    }

    #[test]
    fn greedy_modularity_beats_baselines(net in digraph(18)) {
        let q = modularity(&net, &detect_greedy_modularity(&net)).unwrap();
        prop_assert!(q >= modularity(&net, &Partition::single(net.n())).unwrap() - 1e-12);
        prop_assert!(q >= modularity(&net, &Partition::singletons(net.n())).unwrap() - 1e-12);
    }

    #[test]
    fn structural_detection_is_seeded(net in digraph(18), seed in any::<u64>()) {
        prop_assert_eq!(detect_structural_modules(&net, seed), detect_structural_modules(&net, seed));
    }

    #[test]
    fn hierarchy_refines(net in digraph(24), seed in 0u64..50) {
        let h = build_hierarchy(&net, 3, seed);
        for w in h.levels.windows(2) {
            prop_assert!(w[1].refines(&w[0]));
        }
        for l in &h.levels {
            prop_assert_eq!(l.len(), net.n());
        }
    }

    #[test]
    fn accuracy_grows_toward_the_root(net in digraph(20), part in labels(20, 4), depth in proptest::collection::vec(1usize..4, 1..5)) {
        let net = with_packages(&net, &depth);
        let part = Partition::from_labels(&part.assignment()[..net.n()]);
        let r = predict_packages(&net, &part, 5).unwrap().report;
        let known: Vec<f64> = r.ca_per_level.iter().flatten().copied().collect();
        for w in known.windows(2) {
            prop_assert!(w[0] >= w[1]);
        }
        prop_assert_eq!(known.first().copied(), Some(1.0));
        prop_assert!(known.last().is_none_or(|&deepest| deepest >= r.ca_bottom));
    }

    #[test]
    fn argmax_ignores_weight_scale(net in digraph(20), part in labels(20, 3), scale in 1e-3f64..1e3) {
        let net = with_packages(&net, &[1, 2]);
        let part = Partition::from_labels(&part.assignment()[..net.n()]);
        let base = predict_packages(&net, &part, 2).unwrap();
        let scaled = predict_with(&net, &part, 2, |i, j| scale * jaccard(&net, i, j)).unwrap();
        prop_assert_eq!(base.nodes, scaled.nodes);
    }

    #[test]
    fn jaccard_matches_set_oracle(net in digraph(20)) {
        use std::collections::BTreeSet;
        for i in net.nodes() {
            for j in net.nodes() {
                let a: BTreeSet<u32> = net.neighbors(i).iter().copied().collect();
                let b: BTreeSet<u32> = net.neighbors(j).iter().copied().collect();
                let union = a.union(&b).count();
                let expect = if union == 0 { 0.0 } else { a.intersection(&b).count() as f64 / union as f64 };
                prop_assert_eq!(jaccard(&net, i, j), expect);
            }
        }
        let _ = NodeId(0);
    }
}
