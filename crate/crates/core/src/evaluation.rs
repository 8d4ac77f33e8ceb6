//! Solution metrics and the penalized objective score.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::{Graph, RouteSchedule};
use crate::heuristics::Solution;

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    pub total_distance: f64,
    pub num_vehicles: usize,
    /// Travel + waiting + service, depot departure to depot return, summed
    /// over vehicles.
    pub total_duration: f64,
    pub total_wait: f64,
    pub total_service: f64,
    pub tw_violations: usize,
    pub capacity_violations: usize,
    pub feasible: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PenaltyWeights {
    pub vehicle: f64,
    pub capacity: f64,
    pub time: f64,
}

impl Default for PenaltyWeights {
    fn default() -> Self {
        PenaltyWeights { vehicle: 1000.0, capacity: 1000.0, time: 1000.0 }
    }
}

/// Recomputes every schedule from scratch and aggregates the metrics.
pub fn evaluate(solution: &Solution, graph: &Graph) -> Result<Metrics> {
    Ok(evaluate_with_schedules(solution, graph)?.0)
}

pub fn evaluate_with_schedules(solution: &Solution, graph: &Graph) -> Result<(Metrics, Vec<RouteSchedule>)> {
    let mut m = Metrics::default();
    let mut schedules = Vec::with_capacity(solution.routes.len());
    for route in &solution.routes {
        let s = graph.schedule(route)?;
        if !route.is_empty() {
            m.num_vehicles += 1;
        }
        m.total_distance += s.distance;
        m.total_duration += s.duration;
        m.total_wait += s.waiting();
        m.total_service += s.service;
        m.tw_violations += s.tw_violations();
        m.capacity_violations += usize::from(s.over_capacity);
        schedules.push(s);
    }
    m.feasible = m.tw_violations == 0 && m.capacity_violations == 0;
    Ok((m, schedules))
}

/// `distance + l_v * vehicles + l_c * [capacity violated] + l_t * [time window violated]`
pub fn objective_score(m: &Metrics, w: &PenaltyWeights) -> f64 {
    m.total_distance
        + w.vehicle * m.num_vehicles as f64
        + w.capacity * f64::from(u8::from(m.capacity_violations > 0))
        + w.time * f64::from(u8::from(m.tw_violations > 0))
}
