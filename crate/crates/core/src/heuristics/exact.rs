use super::{slots_to_route, Solution, SolverKind};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest customer count accepted by [`brute_force_optimal`].
pub const EXACT_LIMIT: usize = 9;

/// Minimum-distance solution under hard capacity and time windows, by
/// exhaustive search. Returns `Ok(None)` if no feasible solution exists.
///
/// Every ordered sequence of distinct customers is enumerated once as a route
/// prefix; the cheapest feasible closed route for each customer subset is
/// kept, and subsets are then combined into the cheapest partition.
pub fn brute_force_optimal(graph: &Graph) -> Result<Option<Solution>> {
    let n = graph.customer_count();
    if n > EXACT_LIMIT {
        return Err(Error::TooLarge(n));
    }
    let full = (1usize << n) - 1;
    let mut best_route: Vec<Option<(f64, Vec<usize>)>> = vec![None; full + 1];
    let mut path = Vec::with_capacity(n);
    extend(graph, &mut path, 0, 0.0, 0.0, 0.0, &mut best_route);

    // cheapest partition of each subset; the lowest customer is always in
    // the route chosen first so each partition is visited once
    let mut cost = vec![f64::INFINITY; full + 1];
    let mut pick = vec![0usize; full + 1];
    cost[0] = 0.0;
    for mask in 1..=full {
        let low = mask & mask.wrapping_neg();
        let mut sub = mask;
        while sub > 0 {
            if sub & low != 0 {
                if let Some((c, _)) = &best_route[sub] {
                    let total = c + cost[mask ^ sub];
                    if total < cost[mask] {
                        cost[mask] = total;
                        pick[mask] = sub;
                    }
                }
            }
            sub = (sub - 1) & mask;
        }
    }

    if !cost[full].is_finite() {
        return Ok(None);
    }
    let mut sol = Solution::new(SolverKind::Exact);
    let mut mask = full;
    while mask > 0 {
        let sub = pick[mask];
        let (_, seq) = best_route[sub].as_ref().expect("picked subsets have routes");
        sol.routes.push(slots_to_route(graph, seq));
        mask ^= sub;
    }
    Ok(Some(sol))
}

fn extend(
    graph: &Graph,
    path: &mut Vec<usize>,
    mask: usize,
    clock: f64,
    load: f64,
    dist: f64,
    best: &mut [Option<(f64, Vec<usize>)>],
) {
    let at = path.last().copied().unwrap_or(0);
    if !path.is_empty() {
        let back = graph.tau_slots(at, 0);
        if clock + back <= graph.depot().due {
            let c = dist + back;
            if best[mask].as_ref().is_none_or(|(b, _)| c < *b) {
                best[mask] = Some((c, path.clone()));
            }
        }
    }
    let n = graph.customer_count();
    for k in 0..n {
        if mask & (1 << k) != 0 {
            continue;
        }
        let s = k + 1;
        let node = graph.node_at(s);
        if load + node.demand > graph.capacity() {
            continue;
        }
        let tau = graph.tau_slots(at, s);
        let start = (clock + tau).max(node.ready);
        if start > node.due {
            continue;
        }
        path.push(s);
        extend(graph, path, mask | (1 << k), start + node.dwell(), load + node.demand, dist + tau, best);
        path.pop();
    }
}
