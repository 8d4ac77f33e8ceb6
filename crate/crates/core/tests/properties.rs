mod common;

use std::collections::BTreeSet;

use common::{random_graph, random_instance, Windows};
use proptest::prelude::*;
use vrptw_coarsen::coarsen::{
    coarsen, pair_distance, temporal_separation, CoarseningParams, Halt, Propagation, SeparationMode, TauMode,
};
use vrptw_coarsen::document::{read_rows, read_solution, write_rows, write_solution, SolutionDocument, TrialRow};
use vrptw_coarsen::evaluation::{evaluate, objective_score, PenaltyWeights};
use vrptw_coarsen::graph::NodeId;
use vrptw_coarsen::heuristics::{greedy_solve, savings_solve, SolverKind};
use vrptw_coarsen::inflate::{inflate, light_postprocess, visited};
use vrptw_coarsen::instance::parse_solomon;
use vrptw_coarsen::pipeline::{run_baseline, run_pipeline};

fn windows() -> impl Strategy<Value = Windows> {
    prop_oneof![Just(Windows::Wide), Just(Windows::Binding)]
}

fn params() -> impl Strategy<Value = CoarseningParams> {
    (
        prop::sample::select(vec![0.0, 0.1, 0.5, 0.9, 1.0]),
        prop::sample::select(vec![0.0, 0.1, 0.5, 0.9, 1.0]),
        prop::sample::select(vec![0.1, 0.3, 0.5, 0.7, 1.0]),
        prop::sample::select(vec![0.5, 1.0, 2.0, 10.0]),
        prop_oneof![Just(Propagation::Relaxed), Just(Propagation::Conservative)],
        prop_oneof![Just(SeparationMode::Nominal), Just(SeparationMode::Strict)],
        prop_oneof![Just(TauMode::Midpoint), Just(TauMode::Conservative)],
    )
        .prop_filter("alpha + beta > 0", |p| p.0 + p.1 > 0.0)
        .prop_map(|(alpha, beta, p_target, radius_coeff, propagation, separation, tau_mode)| CoarseningParams {
            alpha,
            beta,
            p_target,
            radius_coeff,
            propagation,
            separation,
            tau_mode,
        })
}

fn solver() -> impl Strategy<Value = SolverKind> {
    prop_oneof![Just(SolverKind::Greedy), Just(SolverKind::Savings)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn solomon_text_round_trips(seed in any::<u64>(), n in 0usize..30, w in windows()) {
        let inst = random_instance(seed, n, w);
        prop_assert_eq!(parse_solomon(&inst.to_solomon()).unwrap(), inst);
    }

    #[test]
    fn coarsening_conserves_members_demand_and_service(
        seed in any::<u64>(), n in 1usize..50, w in windows(), p in params()
    ) {
        let g = random_graph(seed, n, w);
        let c = coarsen(&g, &p).unwrap();
        let mut members: Vec<NodeId> = c.graph.customers().iter().flat_map(|s| s.members.iter().copied()).collect();
        prop_assert!(members.iter().all(|m| !m.is_depot()));
        members.sort();
        let original: Vec<NodeId> = g.customers().iter().map(|s| s.id).collect();
        prop_assert_eq!(members, original);
        let demand = |gr: &vrptw_coarsen::graph::Graph| gr.customers().iter().map(|s| s.demand).sum::<f64>();
        let service = |gr: &vrptw_coarsen::graph::Graph| gr.customers().iter().map(|s| s.service).sum::<f64>();
        prop_assert!((demand(&g) - demand(&c.graph)).abs() < 1e-9);
        prop_assert!((service(&g) - service(&c.graph)).abs() < 1e-9);
        prop_assert_eq!(c.graph.depot(), g.depot());
        for s in c.graph.customers() {
            prop_assert!(s.demand <= g.capacity());
            prop_assert!(!s.members.is_empty());
        }
    }

    #[test]
    fn coarsening_shrinks_monotonically_and_stops_at_target(
        seed in any::<u64>(), n in 1usize..50, w in windows(), p in params()
    ) {
        let g = random_graph(seed, n, w);
        let c = coarsen(&g, &p).unwrap();
        let counts: Vec<usize> = c.rounds.iter().map(|r| r.nodes_before).collect();
        prop_assert!(counts.windows(2).all(|x| x[1] < x[0]));
        let target = p.p_target * n as f64;
        let k = c.graph.customer_count();
        prop_assert_eq!(c.history.len(), n - k);
        match c.halt {
            Halt::Target => prop_assert!(k as f64 <= target && k as f64 > target - 1.0),
            Halt::EmptyMatching => prop_assert!(k as f64 > target),
        }
    }

    #[test]
    fn merge_records_are_feasible_and_windows_nonempty_when_conservative(
        seed in any::<u64>(), n in 2usize..40, w in windows(), p in params()
    ) {
        let g = random_graph(seed, n, w);
        let c = coarsen(&g, &p).unwrap();
        for r in &c.history.records {
            prop_assert!(r.order_was_feasible());
            prop_assert!(r.left < r.right);
            if p.propagation == Propagation::Conservative {
                prop_assert!(r.window.ready <= r.window.due);
            }
        }
    }

    #[test]
    fn conservative_tau_dominates_member_travel(seed in any::<u64>(), n in 2usize..30, w in windows()) {
        let g = random_graph(seed, n, w);
        let p = CoarseningParams { p_target: 0.3, radius_coeff: 10.0, tau_mode: TauMode::Conservative, ..Default::default() };
        let c = coarsen(&g, &p).unwrap();
        let nodes = c.graph.nodes();
        let members = |k: usize| if k == 0 { vec![NodeId::DEPOT] } else { nodes[k].members.clone() };
        for a in 0..nodes.len() {
            for b in a + 1..nodes.len() {
                let expect = members(a)
                    .iter()
                    .flat_map(|&u| members(b).into_iter().map(move |v| (u, v)))
                    .map(|(u, v)| g.travel_time(u, v).unwrap())
                    .fold(0.0, f64::max);
                prop_assert!((c.graph.tau_slots(a, b) - expect).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn scaling_alpha_and_beta_with_radius_keeps_history(
        seed in any::<u64>(), n in 2usize..40, w in windows(), p in params(),
        k in prop::sample::select(vec![0.25, 0.5, 2.0, 4.0])
    ) {
        let g = random_graph(seed, n, w);
        let base = CoarseningParams { radius_coeff: 1e6, ..p };
        let scaled = CoarseningParams { alpha: p.alpha * k, beta: p.beta * k, ..base };
        prop_assert_eq!(coarsen(&g, &base).unwrap().history, coarsen(&g, &scaled).unwrap().history);
    }

    #[test]
    fn separation_is_nonnegative_and_nominal_symmetric(seed in any::<u64>(), n in 2usize..20, w in windows(), p in params()) {
        let g = random_graph(seed, n, w);
        let (a, b) = (g.node_at(1), g.node_at(2.min(n)));
        let tau = g.tau_slots(1, 2.min(n));
        for mode in [SeparationMode::Nominal, SeparationMode::Strict] {
            prop_assert!(temporal_separation(a, b, mode, tau) >= 0.0);
        }
        prop_assert_eq!(
            temporal_separation(a, b, SeparationMode::Nominal, tau),
            temporal_separation(b, a, SeparationMode::Nominal, tau)
        );
        prop_assert_eq!(pair_distance(a, b, &p, tau), pair_distance(b, a, &p, tau));
    }

    #[test]
    fn heuristics_cover_every_customer_once(seed in any::<u64>(), n in 0usize..50, w in windows()) {
        let g = random_graph(seed, n, w);
        for sol in [greedy_solve(&g), savings_solve(&g)] {
            prop_assert!(sol.covers_exactly_once(&g));
            prop_assert_eq!(evaluate(&sol, &g).unwrap().capacity_violations, 0);
        }
    }

    #[test]
    fn greedy_is_feasible_when_customers_are_individually_reachable(seed in any::<u64>(), n in 0usize..50, w in windows()) {
        let g = random_graph(seed, n, w);
        let sol = greedy_solve(&g);
        prop_assert!(sol.routes.iter().all(|r| !r.forced));
        prop_assert!(evaluate(&sol, &g).unwrap().feasible);
    }

    #[test]
    fn pipeline_covers_every_customer_once(
        seed in any::<u64>(), n in 1usize..50, w in windows(), p in params(), s in solver()
    ) {
        let g = random_graph(seed, n, w);
        let run = run_pipeline(&g, &p, s, &PenaltyWeights::default()).unwrap();
        prop_assert!(run.solution.covers_exactly_once(&g));
        let mut seen = visited(&run.solution);
        seen.sort();
        prop_assert_eq!(seen.len(), n);
        prop_assert!(run.metrics.total_duration + 1e-9 >= run.metrics.total_distance);
    }

    #[test]
    fn inflation_expands_members_in_order(
        seed in any::<u64>(), n in 1usize..40, w in windows(), p in params(), s in solver()
    ) {
        let g = random_graph(seed, n, w);
        let c = coarsen(&g, &p).unwrap();
        let coarse = s.solve(&c.graph).unwrap();
        let fine = inflate(&coarse, &c.history, &g).unwrap();
        prop_assert_eq!(coarse.routes.len(), fine.routes.len());
        for (cr, fr) in coarse.routes.iter().zip(&fine.routes) {
            let expect: Vec<NodeId> = cr
                .customers()
                .iter()
                .flat_map(|id| c.graph.node(*id).unwrap().members.clone())
                .collect();
            prop_assert_eq!(fr.customers(), &expect[..]);
        }
    }

    #[test]
    fn postprocess_is_idempotent_and_keeps_coverage(
        seed in any::<u64>(), n in 1usize..40, w in windows(), p in params(), s in solver()
    ) {
        let g = random_graph(seed, n, w);
        let c = coarsen(&g, &p).unwrap();
        let fine = inflate(&s.solve(&c.graph).unwrap(), &c.history, &g).unwrap();
        let (once, _) = light_postprocess(&fine, &g).unwrap();
        let (twice, report) = light_postprocess(&once, &g).unwrap();
        prop_assert_eq!(&once, &twice);
        prop_assert_eq!(report.swaps + report.splits, 0);
        prop_assert!(once.covers_exactly_once(&g));
        let before = evaluate(&fine, &g).unwrap();
        let after = evaluate(&once, &g).unwrap();
        prop_assert_eq!(after.capacity_violations, 0);
        prop_assert!(after.tw_violations <= before.tw_violations);
    }

    #[test]
    fn evaluation_is_pure(seed in any::<u64>(), n in 0usize..40, w in windows(), s in solver()) {
        let g = random_graph(seed, n, w);
        let sol = s.solve(&g).unwrap();
        let m = evaluate(&sol, &g).unwrap();
        prop_assert_eq!(m, evaluate(&sol, &g).unwrap());
        prop_assert_eq!(m.feasible, m.tw_violations == 0 && m.capacity_violations == 0);
        let expect = m.total_distance + 1000.0 * m.num_vehicles as f64
            + if m.capacity_violations > 0 { 1000.0 } else { 0.0 }
            + if m.tw_violations > 0 { 1000.0 } else { 0.0 };
        prop_assert!((objective_score(&m, &PenaltyWeights::default()) - expect).abs() < 1e-9);
    }

    #[test]
    fn pipeline_is_deterministic_and_p1_matches_baseline(
        seed in any::<u64>(), n in 1usize..40, w in windows(), p in params(), s in solver()
    ) {
        let g = random_graph(seed, n, w);
        let weights = PenaltyWeights::default();
        let a = run_pipeline(&g, &p, s, &weights).unwrap();
        let b = run_pipeline(&g, &p, s, &weights).unwrap();
        prop_assert_eq!(&a.solution, &b.solution);
        prop_assert_eq!(a.metrics, b.metrics);
        let full = run_pipeline(&g, &CoarseningParams { p_target: 1.0, ..p }, s, &weights).unwrap();
        let base = run_baseline(&g, s, &weights).unwrap();
        prop_assert_eq!(full.solution, base.solution);
        prop_assert_eq!(full.metrics, base.metrics);
    }

    #[test]
    fn documents_round_trip(seed in any::<u64>(), n in 0usize..30, w in windows(), p in params(), s in solver()) {
        let g = random_graph(seed, n, w);
        let run = run_pipeline(&g, &p, s, &PenaltyWeights::default()).unwrap();
        let doc = SolutionDocument::from_run("r", Some(seed), &run, &g).unwrap();
        let mut buf = Vec::new();
        write_solution(&doc, &mut buf).unwrap();
        let back = read_solution(&buf[..]).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(&back.to_solution().routes, &run.solution.routes);

        let rows = vec![TrialRow::new("r", Some(3), Some(seed), &run), TrialRow::new("r", None, None, &run)];
        let mut csv = Vec::new();
        write_rows(&rows, &mut csv).unwrap();
        prop_assert_eq!(read_rows(&csv[..]).unwrap(), rows);
    }
}

#[test]
fn members_are_disjoint_across_super_nodes() {
    for seed in 0..20 {
        let g = random_graph(seed, 40, Windows::Binding);
        let c = coarsen(&g, &CoarseningParams { p_target: 0.2, radius_coeff: 5.0, ..Default::default() }).unwrap();
        let mut all = BTreeSet::new();
        for s in c.graph.customers() {
            for m in &s.members {
                assert!(all.insert(*m), "member {m} appears twice");
            }
        }
    }
}
