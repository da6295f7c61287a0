use wivne_core::config::ExperimentConfig;
use wivne_core::embedding::EmbedParams;
use wivne_core::network::Interference;
use wivne_core::online::{build_substrate, run_experiment, ArrivalStream, Embedder, SimulationState};
use wivne_core::{AlgorithmVariant, Checker, Ledger, Loads, Request, Substrate};

/// Two nodes joined by one link of capacity 10.
fn corridor() -> Substrate {
    Substrate::new(vec!["A".into(), "B".into()], vec![100.0, 100.0], Vec::new(), vec![(0, 1, 10.0)], Interference::KHop(1))
        .unwrap()
}

fn pair(id: u64, bw: f64, duration: u32, window: u64) -> Request {
    Request::new(id, vec!["u".into(), "v".into()], vec![1.0, 1.0], vec![(0, 1, bw)], duration, window).unwrap()
}

fn embedder(checker: Checker) -> Embedder<f64> {
    Embedder { params: EmbedParams { k: 8, alpha: 10.0, variant: AlgorithmVariant::WEM }, checker }
}

#[test]
fn empty_window_only_advances_clock() {
    let sn = corridor();
    let mut st = SimulationState::new(&sn, 0);
    let e = embedder(Checker::Sufficient);
    st.step_window(&sn, vec![pair(0, 2.0, 5, 0)], &e).unwrap();
    let ledger = st.ledger.clone();
    let r0 = st.accounting[0].r_t;
    st.step_window(&sn, Vec::new(), &e).unwrap();
    assert_eq!(st.window, 2);
    assert_eq!(st.ledger, ledger);
    assert_eq!(st.accounting[1].r_t, r0);
    assert_eq!((st.accounting[1].accepted, st.accounting[1].rejected), (0, 0));
}

#[test]
fn larger_revenue_wins_the_corridor() {
    let sn = corridor();
    let mut st = SimulationState::new(&sn, 0);
    // Lower id but lower revenue: processed second.
    let small = pair(0, 5.0, 3, 0);
    let large = pair(1, 8.0, 3, 0);
    st.step_window(&sn, vec![small, large], &embedder(Checker::Sufficient)).unwrap();
    let order: Vec<(u64, bool)> = st.last_admissions.iter().map(|a| (a.request_id, a.accepted)).collect();
    assert_eq!(order, vec![(1, true), (0, false)]);
    assert_eq!(st.accounting[0].r_t, 2.0 + 10.0 * 8.0);
    // The checker agrees: both together would need 1.3 of the link.
    let both = Loads::from_vec(vec![1.3]);
    assert!(!Checker::Sufficient.check(sn.conflict_graph(), &both).unwrap().feasible);
    assert!(Checker::Sufficient.check(sn.conflict_graph(), &Loads::from_vec(vec![0.8])).unwrap().feasible);
}

#[test]
fn expiry_frees_resources_before_admission() {
    let sn = corridor();
    let mut st = SimulationState::new(&sn, 0);
    let e = embedder(Checker::Sufficient);
    st.step_window(&sn, vec![pair(0, 9.0, 1, 0)], &e).unwrap();
    assert_eq!(st.active[0].expiry, 1);
    st.step_window(&sn, vec![pair(1, 9.0, 1, 1)], &e).unwrap();
    assert_eq!(st.accounting[1].accepted, 1);
    assert_eq!(st.active.len(), 1);
    assert_eq!(st.active[0].request.id(), 1);
    assert_eq!(st.ledger, Ledger::recompute(&sn, st.active.iter().map(|a| &a.embedding)));
}

#[test]
fn invariants_hold_through_a_run() {
    let cfg = ExperimentConfig { windows: 40, warmup: 5, ..Default::default() };
    let sn: Substrate = build_substrate(&cfg, 11).unwrap();
    let mut stream = ArrivalStream::new(cfg.arrival_rate, 11).unwrap();
    let e = Embedder {
        params: EmbedParams { k: cfg.k, alpha: cfg.alpha, variant: cfg.algorithm },
        checker: cfg.checker.checker(),
    };
    let mut st = SimulationState::new(&sn, cfg.warmup);
    let mut r_sum = 0.0;
    let mut admitted = 0;
    for w in 0..cfg.windows {
        let batch = stream.window::<f64>(&cfg.requests, w).unwrap();
        st.step_window(&sn, batch, &e).unwrap();
        let m = st.accounting.last().unwrap().clone();

        assert!(st.ledger.approx_eq(&Ledger::recompute(&sn, st.active.iter().map(|a| &a.embedding)), 1e-9));
        assert!(st.ledger.within_capacity(&sn));
        let loads = Loads::from_ledger(&sn, &st.ledger);
        assert!(e.checker.check(sn.conflict_graph(), &loads).unwrap().feasible);

        // Revenue tallied from the raw requests.
        let r: f64 = st
            .active
            .iter()
            .map(|a| {
                let cpu: f64 = a.request.nodes().map(|v| a.request.cpu(v)).sum();
                let bw: f64 = a.request.links().iter().map(|l| l.bw).sum();
                cpu + 10.0 * bw
            })
            .sum();
        assert!((m.r_t - r).abs() < 1e-6);
        for a in &st.active {
            assert_eq!(a.expiry, a.request.arrival_window() + u64::from(a.request.duration()));
            assert!(a.expiry > w);
        }

        let revenues: Vec<f64> = st.last_admissions.iter().map(|a| a.revenue).collect();
        assert!(revenues.windows(2).all(|p| p[0] >= p[1]));
        admitted += st.last_admissions.iter().filter(|a| a.accepted).count();

        if w >= cfg.warmup {
            r_sum += m.r_t;
            assert!((m.cumulative_avg_revenue - r_sum / (w - cfg.warmup + 1) as f64).abs() < 1e-6);
        }
    }
    assert!(admitted > 0);
    let mut ledger = st.ledger.clone();
    for a in &st.active {
        ledger.release(&a.embedding);
    }
    assert!(ledger.approx_eq(&Ledger::pristine(&sn), 1e-9));
}

#[test]
fn experiment_matches_manual_loop() {
    let cfg = ExperimentConfig { windows: 25, warmup: 5, ..Default::default() };
    let r = run_experiment(&cfg, 4).unwrap();
    let tail: Vec<f64> = r.windows.iter().filter(|m| m.window >= 5).map(|m| m.r_t).collect();
    assert!((r.average_revenue - tail.iter().sum::<f64>() / tail.len() as f64).abs() < 1e-9);
    assert_eq!(r.accepted + r.rejected, r.windows.iter().map(|m| m.accepted + m.rejected).sum::<u64>());
    assert!(r.windows.iter().all(|m| m.max_link_load <= 1.0 + 1e-9 && m.mean_link_load <= m.max_link_load + 1e-12));
}

#[test]
fn arrival_stream_is_shared_across_algorithms() {
    let base = ExperimentConfig { windows: 10, warmup: 1, ..Default::default() };
    let other = ExperimentConfig { algorithm: AlgorithmVariant::ALG1, ..base.clone() };
    let a = run_experiment(&base, 2).unwrap();
    let b = run_experiment(&other, 2).unwrap();
    let arrivals = |r: &wivne_core::online::ExperimentResult| -> Vec<u64> {
        r.windows.iter().map(|m| m.accepted + m.rejected).collect()
    };
    assert_eq!(arrivals(&a), arrivals(&b));
}

#[test]
fn sparse_substrate_falls_back_to_largest_component() {
    let mut cfg = ExperimentConfig::default();
    cfg.apply_override("substrate.density=\"low\"").unwrap();
    let sn: Substrate = build_substrate(&cfg, 1).unwrap();
    assert!(sn.is_connected());
    assert!(sn.node_count() >= 2 && sn.node_count() <= 50);
    let again: Substrate = build_substrate(&cfg, 1).unwrap();
    assert_eq!(sn.names(), again.names());
    assert_eq!(sn.link_count(), again.link_count());
}
