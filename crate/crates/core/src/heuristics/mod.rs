//! Construction heuristics that work on any graph, original or coarsened.

mod exact;
mod greedy;
mod savings;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

pub use exact::{brute_force_optimal, EXACT_LIMIT};
pub use greedy::greedy_solve;
pub use savings::{savings_solve, savings_value};

use crate::graph::{Graph, NodeId, Route};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverKind {
    Greedy,
    Savings,
    /// Exhaustive search, for small instances only.
    Exact,
}

impl SolverKind {
    pub fn solve(self, graph: &Graph) -> crate::Result<Solution> {
        match self {
            SolverKind::Greedy => Ok(greedy_solve(graph)),
            SolverKind::Savings => Ok(savings_solve(graph)),
            SolverKind::Exact => brute_force_optimal(graph)?
                .ok_or_else(|| crate::Error::Structural("instance has no feasible solution".into())),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SolverKind::Greedy => "greedy",
            SolverKind::Savings => "savings",
            SolverKind::Exact => "exact",
        }
    }
}

impl std::fmt::Display for SolverKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.pad(self.as_str())
    }
}

impl std::str::FromStr for SolverKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "greedy" => Ok(SolverKind::Greedy),
            "savings" => Ok(SolverKind::Savings),
            "exact" => Ok(SolverKind::Exact),
            other => Err(format!("unknown solver {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Solution {
    pub routes: Vec<Route>,
    pub solver: SolverKind,
}

impl Solution {
    pub fn new(solver: SolverKind) -> Self {
        Solution { routes: Vec::new(), solver }
    }

    /// Non-empty routes.
    pub fn vehicles(&self) -> usize {
        self.routes.iter().filter(|r| !r.is_empty()).count()
    }

    /// True if every customer node of `graph` appears exactly once across
    /// all routes and nothing else does.
    pub fn covers_exactly_once(&self, graph: &Graph) -> bool {
        let mut seen: HashMap<NodeId, usize> = HashMap::new();
        for r in &self.routes {
            for &id in r.customers() {
                *seen.entry(id).or_default() += 1;
            }
        }
        seen.len() == graph.customer_count()
            && seen.values().all(|&c| c == 1)
            && graph.customers().iter().all(|n| seen.contains_key(&n.id))
    }
}

pub(crate) fn slots_to_route(graph: &Graph, slots: &[usize]) -> Route {
    Route::new(slots.iter().map(|&s| graph.node_at(s).id))
}
