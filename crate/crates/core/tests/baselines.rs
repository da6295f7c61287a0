mod common;

use common::*;
use wivne_core::embedding::{embed, extended_remaining, vn_node_sequence, EmbedDecision, EmbedParams};
use wivne_core::network::generate::{generate_random_topology, generate_vn_request, RandomTopologyParams, VnParams};
use wivne_core::network::Interference;
use wivne_core::{embed_with_variant, AlgorithmVariant, Checker, Coupling, Ledger, LinkWeight, Request, Substrate};

fn hosts(sn: &Substrate, vn: &Request, d: &EmbedDecision<f64>) -> Vec<(String, String)> {
    let e = d.embedding().expect("accepted");
    vn.nodes().map(|v| (vn.name(v).to_string(), sn.name(e.host(v)).to_string())).collect()
}

/// Ring of `n` nodes with equal capacities: every link has the same
/// interferer count, so influence and hop weights order paths alike.
fn uniform_ring(n: usize) -> Substrate {
    let links = (0..n).map(|i| (i, (i + 1) % n, 100.0)).collect();
    Substrate::new((0..n).map(|i| format!("r{i}")).collect(), vec![100.0; n], Vec::new(), links, Interference::KHop(1))
        .unwrap()
}

#[test]
fn table_of_variants() {
    let axes: Vec<(Coupling, LinkWeight)> = AlgorithmVariant::ALL.iter().map(|v| (v.coupling, v.link_weight)).collect();
    assert_eq!(
        axes,
        vec![
            (Coupling::None, LinkWeight::Hop),
            (Coupling::Intermediate, LinkWeight::Hop),
            (Coupling::Full, LinkWeight::Hop),
            (Coupling::None, LinkWeight::Influence),
            (Coupling::Intermediate, LinkWeight::Influence),
            (Coupling::Full, LinkWeight::Influence),
        ]
    );
    assert_eq!(AlgorithmVariant::WEM, AlgorithmVariant::ALG6);
}

#[test]
fn every_variant_embeds_triangle() {
    let (sn, vn) = triangle();
    let ledger = Ledger::pristine(&sn);
    for v in AlgorithmVariant::ALL {
        let d = embed_with_variant(v, &sn, &ledger, &vn, 1, 10.0, &Checker::Sufficient).unwrap();
        let e = d.embedding().unwrap_or_else(|| panic!("{v} rejected"));
        assert_eq!(sn.name(e.host(vnode(&vn, "a"))), "C", "{v}");
    }
}

#[test]
fn hop_weight_changes_triangle_mapping() {
    // Under hop weights the first neighbor placement ties at one hop and
    // the lower node id (A) wins; then B scores 5 + 3 = 8 against D (11)
    // and E (13).
    let (sn, vn) = triangle();
    let d = embed_with_variant(AlgorithmVariant::ALG3, &sn, &Ledger::pristine(&sn), &vn, 1, 10.0, &Checker::Sufficient)
        .unwrap();
    assert_eq!(
        hosts(&sn, &vn, &d),
        vec![("a".into(), "C".into()), ("b".into(), "B".into()), ("c".into(), "A".into())]
    );
    let wem = embed_with_variant(AlgorithmVariant::ALG6, &sn, &Ledger::pristine(&sn), &vn, 1, 10.0, &Checker::Sufficient)
        .unwrap();
    assert_eq!(
        hosts(&sn, &vn, &wem),
        vec![("a".into(), "C".into()), ("b".into(), "A".into()), ("c".into(), "B".into())]
    );
}

#[test]
fn uncoupled_variant_follows_resource_ranking() {
    let sn = uniform_ring(8);
    let vn = generate_vn_request::<f64>(&VnParams { nodes: (4, 4), ..Default::default() }, 0, 0, 9).unwrap();
    let ledger = Ledger::pristine(&sn);
    let d = embed_with_variant(AlgorithmVariant::ALG1, &sn, &ledger, &vn, 1, 10.0, &Checker::Sufficient).unwrap();
    let e = d.embedding().unwrap();
    // Independent replay: walk the sequence, giving each node the unused
    // substrate node with the highest extended remaining resource.
    // Node placement precedes routing, so residual bandwidth is unchanged
    // throughout this stage.
    let replay = ledger.clone();
    let mut used = Vec::new();
    for v in vn_node_sequence(&vn, 10.0).unwrap() {
        let best = sn
            .nodes()
            .filter(|s| !used.contains(s))
            .max_by(|&a, &b| {
                let (ra, rb) = (extended_remaining(&sn, &replay, a, 10.0).unwrap(), extended_remaining(&sn, &replay, b, 10.0).unwrap());
                ra.partial_cmp(&rb).unwrap().then(b.cmp(&a))
            })
            .unwrap();
        assert_eq!(e.host(v), best);
        used.push(best);
    }
}

#[test]
fn weights_coincide_on_uniform_substrate() {
    let sn = uniform_ring(10);
    let ledger = Ledger::pristine(&sn);
    let params = VnParams { nodes: (3, 6), ..Default::default() };
    for seed in 0..20 {
        let vn: Request = generate_vn_request(&params, seed, 0, seed).unwrap();
        for (hop, infl) in [
            (AlgorithmVariant::ALG1, AlgorithmVariant::ALG4),
            (AlgorithmVariant::ALG2, AlgorithmVariant::ALG5),
            (AlgorithmVariant::ALG3, AlgorithmVariant::ALG6),
        ] {
            let a = embed_with_variant(hop, &sn, &ledger, &vn, 4, 10.0, &Checker::Sufficient).unwrap();
            let b = embed_with_variant(infl, &sn, &ledger, &vn, 4, 10.0, &Checker::Sufficient).unwrap();
            assert_eq!(a.embedding(), b.embedding(), "seed {seed} {hop} vs {infl}");
        }
    }
}

#[test]
fn variants_produce_valid_embeddings() {
    let params = RandomTopologyParams { nodes: 25, side: 60.0, ..Default::default() };
    let vn_params = VnParams::default();
    let mut accepted = 0;
    for seed in 0..6u64 {
        let sn: Substrate = generate_random_topology(&params, seed).unwrap();
        for v in AlgorithmVariant::ALL {
            let mut ledger = Ledger::pristine(&sn);
            for i in 0..5 {
                let vn: Request = generate_vn_request(&vn_params, i, 0, seed * 100 + i).unwrap();
                let d = embed(&sn, &ledger, &vn, &EmbedParams { k: 8, alpha: 10.0, variant: v }, &Checker::Sufficient)
                    .unwrap();
                if let Some(e) = d.embedding() {
                    accepted += 1;
                    let mut h = e.node_map().to_vec();
                    h.sort_unstable();
                    h.dedup();
                    assert_eq!(h.len(), vn.node_count());
                    for (i, p) in e.paths().iter().enumerate() {
                        let l = vn.link(i);
                        let ends = (p.source(), p.target());
                        assert!(
                            ends == (Some(e.host(l.a)), Some(e.host(l.b))) || ends == (Some(e.host(l.b)), Some(e.host(l.a)))
                        );
                    }
                    ledger.commit(e);
                    assert!(ledger.within_capacity(&sn), "{v}");
                    let loads = wivne_core::Loads::from_ledger(&sn, &ledger);
                    assert!(Checker::Sufficient.check(sn.conflict_graph(), &loads).unwrap().feasible);
                }
            }
        }
    }
    assert!(accepted > 0);
}

#[test]
fn oversized_request_rejected_with_no_candidates() {
    let (sn, _) = triangle();
    let vn = Request::new(0, vec!["a".into()], vec![1000.0], Vec::new(), 1, 0).unwrap();
    for v in AlgorithmVariant::ALL {
        let d = embed_with_variant(v, &sn, &Ledger::pristine(&sn), &vn, 8, 10.0, &Checker::Sufficient).unwrap();
        assert_eq!(d, EmbedDecision::Rejected { candidates_built: 0, candidates_checked: 0 });
    }
}
