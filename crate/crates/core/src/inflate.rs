//! Route reconstruction: expand super-nodes back into original customers.

use crate::coarsen::MergeHistory;
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId, Route};
use crate::heuristics::Solution;

/// Expands every super-node in `solution` by walking `history` newest-first
/// and splicing each record's children, in their recorded order, where the
/// super-node stood. The result references only nodes of `original`.
///
/// Records whose super-node is not on any route are skipped; that happens
/// when it was itself consumed by a later merge.
pub fn inflate(solution: &Solution, history: &MergeHistory, original: &Graph) -> Result<Solution> {
    let mut routes: Vec<Route> = solution.routes.clone();
    for rec in history.records.iter().rev() {
        for route in &mut routes {
            if !route.stops.contains(&rec.super_id) {
                continue;
            }
            let mut stops = Vec::with_capacity(route.stops.len() + 1);
            for &id in &route.stops {
                if id == rec.super_id {
                    stops.extend(rec.children());
                } else {
                    stops.push(id);
                }
            }
            route.stops = stops;
        }
    }
    for route in &routes {
        if let Some(&id) = route.stops.iter().find(|&&id| original.node(id).is_none()) {
            return Err(Error::Structural(format!("node {id} is neither an original node nor in the merge history")));
        }
    }
    Ok(Solution { routes, solver: solution.solver })
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RepairReport {
    pub swaps: usize,
    pub splits: usize,
}

/// Minimal repair after inflation.
///
/// Capacity: while a route is over capacity and has more than one customer,
/// its last customer moves to a new route of its own. Time windows: a late
/// stop is swapped with its preceding customer when that leaves both on time
/// and lowers the route's late count; swaps repeat until none applies. A
/// second call changes nothing.
pub fn light_postprocess(solution: &Solution, graph: &Graph) -> Result<(Solution, RepairReport)> {
    let mut report = RepairReport::default();
    let mut routes = Vec::with_capacity(solution.routes.len());
    let mut split_off = Vec::new();

    for route in &solution.routes {
        let mut route = route.clone();
        let mut sched = graph.schedule(&route)?;
        while sched.over_capacity && route.customers().len() > 1 {
            let k = route.stops.len() - 2;
            let id = route.stops.remove(k);
            split_off.push(Route::new([id]));
            report.splits += 1;
            sched = graph.schedule(&route)?;
        }

        'swaps: loop {
            let before = sched.late.len();
            if before == 0 {
                break;
            }
            // stop positions 2..len-1 have a customer predecessor
            for p in 2..route.stops.len() - 1 {
                let id = route.stops[p];
                if !sched.late.contains(&id) {
                    continue;
                }
                let prev = route.stops[p - 1];
                route.stops.swap(p - 1, p);
                let trial = graph.schedule(&route)?;
                if !trial.late.contains(&id) && !trial.late.contains(&prev) && trial.late.len() < before {
                    sched = trial;
                    report.swaps += 1;
                    continue 'swaps;
                }
                route.stops.swap(p - 1, p);
            }
            break;
        }
        routes.push(route);
    }
    routes.extend(split_off);
    Ok((Solution { routes, solver: solution.solver }, report))
}

/// Ids of all non-depot stops, in route order.
pub fn visited(solution: &Solution) -> Vec<NodeId> {
    solution.routes.iter().flat_map(|r| r.customers().iter().copied()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coarsen::{MergeOrder, MergeRecord, Window};
    use crate::graph::{CoarseNode, NominalPolicy};
    use crate::heuristics::SolverKind;
    use crate::instance::Customer;

    fn n(id: usize, x: f64, ready: f64, due: f64, demand: f64) -> CoarseNode {
        CoarseNode::from_customer(&Customer { id, x, y: 0.0, demand, ready, due, service: 1.0 }, NominalPolicy::Midpoint)
    }

    fn depot() -> CoarseNode {
        let mut d = n(0, 0.0, 0.0, 1000.0, 0.0);
        d.service = 0.0;
        d
    }

    fn record(super_id: usize, left: usize, right: usize, order: MergeOrder) -> MergeRecord {
        MergeRecord {
            super_id: NodeId(super_id),
            left: NodeId(left),
            right: NodeId(right),
            order,
            window: Window { ready: 0.0, due: 100.0 },
            left_node: n(left, 0.0, 0.0, 100.0, 1.0),
            right_node: n(right, 0.0, 0.0, 100.0, 1.0),
            tau: 0.0,
        }
    }

    fn original() -> Graph {
        Graph::euclidean(
            vec![depot(), n(1, 1.0, 0.0, 100.0, 1.0), n(2, 2.0, 0.0, 100.0, 1.0), n(3, 3.0, 0.0, 100.0, 1.0)],
            10.0,
        )
    }

    fn sol(routes: Vec<Route>) -> Solution {
        Solution { routes, solver: SolverKind::Savings }
    }

    #[test]
    fn single_substitution() {
        let h = MergeHistory { records: vec![record(4, 1, 2, MergeOrder::IThenJ)] };
        let out = inflate(&sol(vec![Route::new([NodeId(4)])]), &h, &original()).unwrap();
        assert_eq!(out.routes[0].customers(), &[NodeId(1), NodeId(2)]);

        let h = MergeHistory { records: vec![record(4, 1, 2, MergeOrder::JThenI)] };
        let out = inflate(&sol(vec![Route::new([NodeId(3), NodeId(4)])]), &h, &original()).unwrap();
        assert_eq!(out.routes[0].customers(), &[NodeId(3), NodeId(2), NodeId(1)]);
    }

    #[test]
    fn nested_expansion() {
        let h = MergeHistory {
            records: vec![record(4, 1, 2, MergeOrder::IThenJ), record(5, 3, 4, MergeOrder::JThenI)],
        };
        let out = inflate(&sol(vec![Route::new([NodeId(5)])]), &h, &original()).unwrap();
        assert_eq!(out.routes[0].customers(), &[NodeId(1), NodeId(2), NodeId(3)]);
    }

    #[test]
    fn empty_history_is_identity() {
        let s = sol(vec![Route::new([NodeId(2), NodeId(1)]), Route::new([NodeId(3)])]);
        assert_eq!(inflate(&s, &MergeHistory::default(), &original()).unwrap(), s);
    }

    #[test]
    fn unknown_super_node_is_error() {
        let s = sol(vec![Route::new([NodeId(9)])]);
        assert!(matches!(inflate(&s, &MergeHistory::default(), &original()), Err(Error::Structural(_))));
    }

    #[test]
    fn swap_fixes_wrong_order() {
        // serving 2 (x=2) before 1 (x=1) makes 1 late; swapping repairs it
        let g = Graph::euclidean(
            vec![depot(), n(1, 1.0, 0.0, 3.0, 1.0), n(2, 2.0, 0.0, 100.0, 1.0), n(3, 3.0, 0.0, 100.0, 1.0)],
            10.0,
        );
        let s = sol(vec![Route::new([NodeId(2), NodeId(1), NodeId(3)])]);
        assert_eq!(g.schedule(&s.routes[0]).unwrap().late, vec![NodeId(1)]);
        let (fixed, rep) = light_postprocess(&s, &g).unwrap();
        assert_eq!(rep.swaps, 1);
        assert_eq!(fixed.routes[0].customers(), &[NodeId(1), NodeId(2), NodeId(3)]);
        assert!(g.schedule(&fixed.routes[0]).unwrap().late.is_empty());
        let (again, rep2) = light_postprocess(&fixed, &g).unwrap();
        assert_eq!(again, fixed);
        assert_eq!(rep2, RepairReport::default());
    }

    #[test]
    fn feasible_unchanged() {
        let s = sol(vec![Route::new([NodeId(1), NodeId(2), NodeId(3)])]);
        let (out, rep) = light_postprocess(&s, &original()).unwrap();
        assert_eq!(out, s);
        assert_eq!(rep, RepairReport::default());
    }

    #[test]
    fn capacity_split() {
        let g = Graph::euclidean(
            vec![depot(), n(1, 1.0, 0.0, 100.0, 4.0), n(2, 2.0, 0.0, 100.0, 4.0), n(3, 3.0, 0.0, 100.0, 3.0)],
            10.0,
        );
        let s = sol(vec![Route::new([NodeId(1), NodeId(2), NodeId(3)])]);
        let (out, rep) = light_postprocess(&s, &g).unwrap();
        assert_eq!(rep.splits, 1);
        assert_eq!(out.routes.len(), 2);
        assert_eq!(out.routes[1].customers(), &[NodeId(3)]);
        for r in &out.routes {
            assert!(!g.schedule(r).unwrap().over_capacity);
        }
    }
}
