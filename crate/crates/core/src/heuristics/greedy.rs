use super::{slots_to_route, Solution, SolverKind};
use crate::graph::Graph;

/// Nearest-feasible-neighbour construction.
///
/// From the current stop the vehicle moves to the closest unvisited node that
/// still fits the remaining capacity, can start service by its due time, and
/// leaves time to return to the depot before the depot closes. Ties go to the
/// lower node id. When nothing qualifies the route is closed. A node that
/// cannot be served even from a fresh route is placed alone on a route marked
/// `forced`.
pub fn greedy_solve(graph: &Graph) -> Solution {
    let m = graph.nodes().len();
    let q = graph.capacity();
    let depot_due = graph.depot().due;
    let mut visited = vec![false; m];
    visited[0] = true;
    let mut left = m - 1;
    let mut sol = Solution::new(SolverKind::Greedy);

    while left > 0 {
        let mut path = Vec::new();
        let (mut at, mut clock, mut load) = (0usize, 0.0f64, 0.0f64);
        loop {
            let mut best: Option<(f64, usize, f64)> = None;
            for s in 1..m {
                if visited[s] {
                    continue;
                }
                let node = graph.node_at(s);
                if load + node.demand > q {
                    continue;
                }
                let tau = graph.tau_slots(at, s);
                let start = (clock + tau).max(node.ready);
                if start > node.due {
                    continue;
                }
                let end = start + node.dwell();
                if end + graph.tau_slots(s, 0) > depot_due {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((bt, bs, _)) => tau < bt || (tau == bt && node.id < graph.node_at(bs).id),
                };
                if better {
                    best = Some((tau, s, end));
                }
            }
            let Some((_, s, end)) = best else { break };
            visited[s] = true;
            left -= 1;
            load += graph.node_at(s).demand;
            clock = end;
            at = s;
            path.push(s);
        }

        if path.is_empty() {
            // nothing is servable from a fresh route: isolate the lowest id
            let s = (1..m)
                .filter(|&s| !visited[s])
                .min_by_key(|&s| graph.node_at(s).id)
                .expect("unvisited node exists");
            visited[s] = true;
            left -= 1;
            let mut route = slots_to_route(graph, &[s]);
            route.forced = true;
            sol.routes.push(route);
        } else {
            sol.routes.push(slots_to_route(graph, &path));
        }
    }
    sol
}
