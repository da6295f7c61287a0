use proptest::prelude::*;
use wivne_core::embedding::{sigma, sigma_increment, EmbedParams};
use wivne_core::feasibility::{
    exact_oracle, greedy_mwis, simulate_check, sufficient_check, ExactParams, SimulationParams,
};
use wivne_core::network::generate::{generate_random_topology, generate_vn_request, RandomTopologyParams, VnParams};
use wivne_core::network::{build_conflict_graph, potential_loads};
use wivne_core::{AlgorithmVariant, Checker, ConflictGraph, Ledger, Loads, Mapping, Request, Substrate};

fn small_substrate(seed: u64, hops: u32) -> Substrate {
    let params = RandomTopologyParams { nodes: 12, side: 40.0, range: (15.0, 30.0), interference_hops: hops, ..Default::default() };
    generate_random_topology(&params, seed).unwrap()
}

/// All-pairs hop distances by Floyd-Warshall.
fn hop_matrix(sn: &Substrate) -> Vec<Vec<usize>> {
    let n = sn.node_count();
    let inf = usize::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0;
    }
    for l in sn.links() {
        d[l.a][l.b] = 1;
        d[l.b][l.a] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                d[i][j] = d[i][j].min(d[i][k] + d[k][j]);
            }
        }
    }
    d
}

fn graph_and_loads() -> impl Strategy<Value = (ConflictGraph, Vec<f64>)> {
    (1usize..=12).prop_flat_map(|n| {
        (
            proptest::collection::vec(any::<bool>(), n * n),
            proptest::collection::vec(0.0f64..0.6, n),
            Just(n),
        )
            .prop_map(|(bits, loads, n)| {
                let pairs: Vec<(usize, usize)> =
                    (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).filter(|&(i, j)| bits[i * n + j]).collect();
                (ConflictGraph::from_pairs(n, pairs), loads)
            })
    })
}

fn stream_requests(seed: u64, count: usize) -> Vec<Request> {
    let vn_params = VnParams { nodes: (2, 5), ..Default::default() };
    (0..count as u64).map(|i| generate_vn_request(&vn_params, i, 0, seed.wrapping_add(i)).unwrap()).collect()
}

fn embedded_stream(seed: u64, count: usize) -> (Substrate, Ledger, Vec<Mapping>) {
    let sn = small_substrate(seed, 2);
    let mut ledger = Ledger::pristine(&sn);
    let params = EmbedParams { k: 4, alpha: 10.0, variant: AlgorithmVariant::WEM };
    let mut accepted = Vec::new();
    for vn in stream_requests(seed, count) {
        let d = wivne_core::embedding::embed(&sn, &ledger, &vn, &params, &Checker::Sufficient).unwrap();
        if let Some(e) = d.embedding() {
            ledger.commit(e);
            accepted.push(e.clone());
        }
    }
    (sn, ledger, accepted)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn conflict_graph_matches_hop_rule(seed in any::<u64>(), k in 0u32..4) {
        let sn = small_substrate(seed, k);
        let cg = sn.conflict_graph();
        let d = hop_matrix(&sn);
        for i in 0..sn.link_count() {
            prop_assert!(!cg.adjacent(i, i));
            for j in 0..sn.link_count() {
                prop_assert_eq!(cg.adjacent(i, j), cg.adjacent(j, i));
                if i == j { continue; }
                let (a, b) = (sn.link(i), sn.link(j));
                let near = [a.a, a.b].iter().any(|&x| [b.a, b.b].iter().any(|&y| d[x][y] + 1 <= k as usize));
                prop_assert_eq!(cg.adjacent(i, j), near, "links {} {} k {}", i, j, k);
            }
        }
    }

    #[test]
    fn wider_interference_adds_edges(seed in any::<u64>()) {
        let sn = small_substrate(seed, 1);
        let (g1, g2) = (build_conflict_graph(&sn, 1), build_conflict_graph(&sn, 2));
        for i in 0..sn.link_count() {
            for &j in g1.neighbors(i) {
                prop_assert!(g2.adjacent(i, j));
            }
        }
        prop_assert!(g1.edge_count() <= g2.edge_count());
    }

    #[test]
    fn ledger_and_loads_are_additive(seed in any::<u64>()) {
        let (sn, ledger, accepted) = embedded_stream(seed, 6);
        prop_assert!(ledger.within_capacity(&sn));
        prop_assert!(ledger.approx_eq(&Ledger::recompute(&sn, accepted.iter()), 1e-9));
        // Independent tally of the per-embedding allocations.
        for n in sn.nodes() {
            let used: f64 = accepted.iter().filter_map(|e| e.cpu_alloc().get(&n)).sum();
            prop_assert!((ledger.residual_cpu(n) - (sn.cpu(n) - used)).abs() < 1e-9);
        }
        for l in 0..sn.link_count() {
            let used: f64 = accepted.iter().map(|e| e.bw_on(l)).sum();
            prop_assert!((ledger.allocated_bw(l) - used).abs() < 1e-9);
        }
        let all = potential_loads(&sn, accepted.iter()).unwrap();
        let mut summed = vec![0.0; sn.link_count()];
        for e in &accepted {
            let single = potential_loads(&sn, std::iter::once(e)).unwrap();
            for (l, s) in summed.iter_mut().enumerate() {
                *s += single.get(l);
            }
        }
        for (l, s) in summed.iter().enumerate() {
            prop_assert!((all.get(l) - s).abs() < 1e-9);
        }
        let mut released = ledger.clone();
        for e in &accepted {
            released.release(e);
        }
        prop_assert!(released.approx_eq(&Ledger::pristine(&sn), 1e-9));
    }

    #[test]
    fn embeddings_are_injective_and_consistent(seed in any::<u64>()) {
        let (sn, _, accepted) = embedded_stream(seed, 6);
        for e in &accepted {
            let mut hosts = e.node_map().to_vec();
            hosts.sort_unstable();
            hosts.dedup();
            prop_assert_eq!(hosts.len(), e.node_map().len());
            for p in e.paths() {
                prop_assert_eq!(p.links.len(), p.hops());
                for (w, &l) in p.nodes.windows(2).zip(&p.links) {
                    prop_assert_eq!(sn.link_between(w[0], w[1]), Some(l));
                }
            }
        }
    }

    #[test]
    fn sigma_grows_by_increment(seed in any::<u64>()) {
        let (sn, _, accepted) = embedded_stream(seed, 5);
        let requests = stream_requests(seed, 5);
        if let Some((last, rest)) = accepted.split_last() {
            let vn = requests.iter().find(|v| v.id() == last.vn_id()).unwrap();
            let before = rest.last().map_or(0.0, |prev| sigma(&sn, &rest[..rest.len() - 1], prev));
            let after = sigma(&sn, rest, last);
            let total: f64 =
                last.paths().iter().enumerate().map(|(i, p)| sigma_increment(&sn, vn.link(i).bw, p)).sum();
            prop_assert!((after - before - total).abs() < 1e-9);
        }
    }

    #[test]
    fn sufficient_implies_exact((cg, loads) in graph_and_loads()) {
        let loads = Loads::from_vec(loads);
        if sufficient_check(&cg, &loads).feasible {
            prop_assert!(exact_oracle(&cg, &loads, &ExactParams::default()).unwrap().feasible);
        }
    }

    #[test]
    fn greedy_mwis_bound((cg, w) in graph_and_loads()) {
        let set = greedy_mwis(&cg, &w);
        for (i, &a) in set.iter().enumerate() {
            for &b in &set[i + 1..] {
                prop_assert!(!cg.adjacent(a, b));
            }
        }
        // Exhaustive optimum over all vertex subsets.
        let n = cg.vertex_count();
        let mut best = 0.0f64;
        for mask in 0u32..(1 << n) {
            let members: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            if members.iter().enumerate().all(|(i, &a)| members[i + 1..].iter().all(|&b| !cg.adjacent(a, b))) {
                best = best.max(members.iter().map(|&v| w[v]).sum());
            }
        }
        let got: f64 = set.iter().map(|&v| w[v]).sum();
        prop_assert!(got + 1e-12 >= best / (cg.max_degree() as f64 + 1.0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn simulation_acceptance_implies_exact((cg, loads) in graph_and_loads()) {
        let loads = Loads::from_vec(loads);
        let sim = simulate_check(&cg, &loads, &SimulationParams::default()).unwrap();
        if sim.feasible {
            prop_assert!(exact_oracle(&cg, &loads, &ExactParams::default()).unwrap().feasible);
        }
    }

    #[test]
    fn generators_are_deterministic(seed in any::<u64>()) {
        let a = small_substrate(seed, 2);
        let b = small_substrate(seed, 2);
        prop_assert_eq!(
            wivne_core::network::io::substrate_to_string(&a).unwrap(),
            wivne_core::network::io::substrate_to_string(&b).unwrap()
        );
        let p = VnParams::default();
        let v1: Request = generate_vn_request(&p, 1, 0, seed).unwrap();
        let v2: Request = generate_vn_request(&p, 1, 0, seed).unwrap();
        prop_assert_eq!(
            wivne_core::network::io::request_to_string(&v1).unwrap(),
            wivne_core::network::io::request_to_string(&v2).unwrap()
        );
    }
}
