//! Augmented graph model: nodes with time attributes, the travel-time
//! matrix, routes and their forward-simulated schedules.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{Customer, Instance};

/// Node identifier. The depot is 0, original customers are `1..=n`, and
/// super-nodes created by coarsening take ids above `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(pub usize);

impl NodeId {
    pub const DEPOT: NodeId = NodeId(0);

    pub fn is_depot(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeKind {
    Depot,
    Customer,
    Supernode,
}

/// How the nominal visit time of an original customer is chosen.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NominalPolicy {
    /// `(e + (l - s)) / 2`
    #[default]
    Midpoint,
    /// `e`
    Earliest,
}

pub fn nominal_visit_time(ready: f64, due: f64, service: f64, policy: NominalPolicy) -> f64 {
    match policy {
        NominalPolicy::Midpoint => (ready + (due - service)) / 2.0,
        NominalPolicy::Earliest => ready,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoarseNode {
    pub id: NodeId,
    pub kind: NodeKind,
    pub x: f64,
    pub y: f64,
    pub demand: f64,
    /// Summed service time of all members.
    pub service: f64,
    /// Travel between consecutive members when served in member order.
    /// Zero for original customers.
    pub transit: f64,
    pub ready: f64,
    pub due: f64,
    pub nominal: f64,
    /// Original customer ids in service order.
    pub members: Vec<NodeId>,
}

impl CoarseNode {
    pub fn from_customer(c: &Customer, policy: NominalPolicy) -> Self {
        let kind = if c.id == 0 { NodeKind::Depot } else { NodeKind::Customer };
        CoarseNode {
            id: NodeId(c.id),
            kind,
            x: c.x,
            y: c.y,
            demand: c.demand,
            service: c.service,
            transit: 0.0,
            ready: c.ready,
            due: c.due,
            nominal: nominal_visit_time(c.ready, c.due, c.service, policy),
            members: if c.id == 0 { Vec::new() } else { vec![NodeId(c.id)] },
        }
    }

    /// Time the vehicle is occupied once service at this node starts.
    pub fn dwell(&self) -> f64 {
        self.service + self.transit
    }

    pub fn is_depot(&self) -> bool {
        self.kind == NodeKind::Depot
    }
}

/// Euclidean distance; with unit speed this is also the travel time.
pub fn euclidean(a: &CoarseNode, b: &CoarseNode) -> f64 {
    (a.x - b.x).hypot(a.y - b.y)
}

/// Complete graph over a depot and customer nodes with a symmetric
/// travel-time matrix.
#[derive(Debug, Clone)]
pub struct Graph {
    /// Slot 0 is the depot.
    nodes: Vec<CoarseNode>,
    slot: HashMap<NodeId, usize>,
    tau: Vec<f64>,
    capacity: f64,
}

impl Graph {
    pub fn from_instance(inst: &Instance, policy: NominalPolicy) -> Self {
        let nodes: Vec<CoarseNode> = std::iter::once(&inst.depot)
            .chain(&inst.customers)
            .map(|c| CoarseNode::from_customer(c, policy))
            .collect();
        Self::euclidean(nodes, inst.capacity)
    }

    /// Builds a graph with Euclidean travel times. `nodes[0]` must be the depot.
    pub fn euclidean(nodes: Vec<CoarseNode>, capacity: f64) -> Self {
        let m = nodes.len();
        let mut tau = vec![0.0; m * m];
        for a in 0..m {
            for b in a + 1..m {
                let d = euclidean(&nodes[a], &nodes[b]);
                tau[a * m + b] = d;
                tau[b * m + a] = d;
            }
        }
        Self::with_matrix(nodes, tau, capacity)
    }

    pub(crate) fn with_matrix(nodes: Vec<CoarseNode>, tau: Vec<f64>, capacity: f64) -> Self {
        assert!(
            nodes.first().is_some_and(CoarseNode::is_depot),
            "slot 0 must hold the depot"
        );
        assert_eq!(tau.len(), nodes.len() * nodes.len());
        let slot = nodes.iter().enumerate().map(|(k, n)| (n.id, k)).collect::<HashMap<_, _>>();
        assert_eq!(slot.len(), nodes.len(), "node ids must be unique");
        Graph { nodes, slot, tau, capacity }
    }

    pub fn capacity(&self) -> f64 {
        self.capacity
    }

    pub fn depot(&self) -> &CoarseNode {
        &self.nodes[0]
    }

    /// All nodes, depot first.
    pub fn nodes(&self) -> &[CoarseNode] {
        &self.nodes
    }

    /// Non-depot nodes.
    pub fn customers(&self) -> &[CoarseNode] {
        &self.nodes[1..]
    }

    pub fn customer_count(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn slot_of(&self, id: NodeId) -> Option<usize> {
        self.slot.get(&id).copied()
    }

    pub fn node(&self, id: NodeId) -> Option<&CoarseNode> {
        self.slot_of(id).map(|k| &self.nodes[k])
    }

    pub fn node_at(&self, slot: usize) -> &CoarseNode {
        &self.nodes[slot]
    }

    #[inline]
    pub fn tau_slots(&self, a: usize, b: usize) -> f64 {
        self.tau[a * self.nodes.len() + b]
    }

    pub fn travel_time(&self, a: NodeId, b: NodeId) -> Option<f64> {
        Some(self.tau_slots(self.slot_of(a)?, self.slot_of(b)?))
    }

    fn slots_of(&self, stops: &[NodeId]) -> Result<Vec<usize>> {
        stops
            .iter()
            .map(|&id| self.slot_of(id).ok_or(Error::UnknownNode(id)))
            .collect()
    }

    /// Forward simulation of a route that starts and ends at the depot,
    /// leaving the depot at time 0. Late service is scheduled anyway and
    /// counted as a violation.
    pub fn schedule(&self, route: &Route) -> Result<RouteSchedule> {
        let stops = &route.stops;
        if stops.len() < 2 || !stops[0].is_depot() || !stops[stops.len() - 1].is_depot() {
            return Err(Error::Structural(format!(
                "route must start and end at the depot: {stops:?}"
            )));
        }
        if let Some(id) = stops[1..stops.len() - 1].iter().find(|s| s.is_depot()) {
            return Err(Error::Structural(format!("depot {id} inside a route")));
        }
        let slots = self.slots_of(stops)?;
        Ok(self.schedule_slots(&slots))
    }

    pub(crate) fn schedule_slots(&self, slots: &[usize]) -> RouteSchedule {
        let mut times = Vec::with_capacity(slots.len());
        let mut late = Vec::new();
        let depot = self.depot();
        times.push(StopTime {
            node_id: depot.id,
            arrival: 0.0,
            wait: 0.0,
            service_start: 0.0,
            departure: 0.0,
        });
        let mut clock = 0.0;
        let mut distance = 0.0;
        let mut load = 0.0;
        let mut service = 0.0;
        let last = slots.len() - 1;
        for (k, w) in slots.windows(2).enumerate() {
            let leg = self.tau_slots(w[0], w[1]);
            distance += leg;
            let arrival = clock + leg;
            let node = &self.nodes[w[1]];
            if k + 1 == last {
                if arrival > node.due {
                    late.push(node.id);
                }
                times.push(StopTime {
                    node_id: node.id,
                    arrival,
                    wait: 0.0,
                    service_start: arrival,
                    departure: arrival,
                });
                clock = arrival;
                break;
            }
            let wait = (node.ready - arrival).max(0.0);
            let start = arrival + wait;
            if start > node.due {
                late.push(node.id);
            }
            let departure = start + node.dwell();
            load += node.demand;
            service += node.service;
            times.push(StopTime {
                node_id: node.id,
                arrival,
                wait,
                service_start: start,
                departure,
            });
            clock = departure;
        }
        RouteSchedule {
            over_capacity: load > self.capacity,
            stops: times,
            load,
            distance,
            service,
            duration: clock,
            late,
        }
    }

    /// Allocation-free check used by construction heuristics: returns
    /// `(late stop count, return time)` for `depot -> slots... -> depot`.
    pub(crate) fn probe(&self, slots: impl IntoIterator<Item = usize>) -> (usize, f64) {
        let mut late = 0;
        let mut clock = 0.0;
        let mut at = 0;
        for s in slots {
            let node = &self.nodes[s];
            let start = (clock + self.tau_slots(at, s)).max(node.ready);
            if start > node.due {
                late += 1;
            }
            clock = start + node.dwell();
            at = s;
        }
        clock += self.tau_slots(at, 0);
        if clock > self.depot().due {
            late += 1;
        }
        (late, clock)
    }
}

/// A vehicle route. `stops` begins and ends at the depot.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Route {
    pub stops: Vec<NodeId>,
    /// Set when a construction heuristic had to place a node it could not
    /// serve feasibly on a route of its own.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub forced: bool,
}

impl Route {
    pub fn new(customers: impl IntoIterator<Item = NodeId>) -> Self {
        let mut stops = vec![NodeId::DEPOT];
        stops.extend(customers);
        stops.push(NodeId::DEPOT);
        Route { stops, forced: false }
    }

    /// Stops between the two depot visits.
    pub fn customers(&self) -> &[NodeId] {
        let n = self.stops.len();
        if n < 2 {
            &[]
        } else {
            &self.stops[1..n - 1]
        }
    }

    pub fn is_empty(&self) -> bool {
        self.customers().is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StopTime {
    pub node_id: NodeId,
    pub arrival: f64,
    pub wait: f64,
    pub service_start: f64,
    pub departure: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RouteSchedule {
    pub stops: Vec<StopTime>,
    pub load: f64,
    pub distance: f64,
    /// Service time summed over the route's nodes.
    pub service: f64,
    /// Depot departure (time 0) to depot return.
    pub duration: f64,
    /// Stops whose service started after their due time, including a late
    /// return to the depot.
    pub late: Vec<NodeId>,
    pub over_capacity: bool,
}

impl RouteSchedule {
    pub fn tw_violations(&self) -> usize {
        self.late.len()
    }

    pub fn waiting(&self) -> f64 {
        self.stops.iter().map(|s| s.wait).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn node(id: usize, x: f64, y: f64, ready: f64, due: f64, service: f64) -> CoarseNode {
        CoarseNode::from_customer(
            &Customer { id, x, y, demand: 1.0, ready, due, service },
            NominalPolicy::Midpoint,
        )
    }

    fn depot() -> CoarseNode {
        let mut d = node(0, 0.0, 0.0, 0.0, 1000.0, 0.0);
        d.demand = 0.0;
        d
    }

    #[test]
    fn euclidean_examples() {
        let o = node(1, 0.0, 0.0, 0.0, 1.0, 0.0);
        assert_eq!(euclidean(&o, &node(2, 3.0, 4.0, 0.0, 1.0, 0.0)), 5.0);
        assert_eq!(euclidean(&o, &o), 0.0);
        let d = euclidean(&o, &node(2, 1.0, 1.0, 0.0, 1.0, 0.0));
        assert!((d - std::f64::consts::SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn nominal_time_examples() {
        assert_eq!(nominal_visit_time(0.0, 100.0, 0.0, NominalPolicy::Midpoint), 50.0);
        assert_eq!(nominal_visit_time(912.0, 967.0, 90.0, NominalPolicy::Midpoint), 894.5);
        assert_eq!(nominal_visit_time(30.0, 80.0, 5.0, NominalPolicy::Earliest), 30.0);
    }

    #[test]
    fn schedule_waits_for_window() {
        let g = Graph::euclidean(vec![depot(), node(1, 10.0, 0.0, 20.0, 30.0, 5.0)], 10.0);
        let s = g.schedule(&Route::new([NodeId(1)])).unwrap();
        let c1 = s.stops[1];
        assert_eq!((c1.arrival, c1.wait, c1.service_start, c1.departure), (10.0, 10.0, 20.0, 25.0));
        assert!(s.late.is_empty());
        assert_eq!(s.duration, 35.0);
    }

    #[test]
    fn schedule_flags_late_service() {
        let g = Graph::euclidean(vec![depot(), node(1, 10.0, 0.0, 0.0, 8.0, 5.0)], 10.0);
        let s = g.schedule(&Route::new([NodeId(1)])).unwrap();
        assert_eq!(s.late, vec![NodeId(1)]);
        assert_eq!(s.stops[1].service_start, 10.0);
    }

    #[test]
    fn empty_route_is_free() {
        let g = Graph::euclidean(vec![depot()], 10.0);
        let s = g.schedule(&Route::new([])).unwrap();
        assert_eq!(s.duration, 0.0);
        assert_eq!(s.distance, 0.0);
        assert!(s.late.is_empty() && !s.over_capacity);
    }

    #[test]
    fn unknown_node_is_structural_error() {
        let g = Graph::euclidean(vec![depot()], 10.0);
        assert!(matches!(g.schedule(&Route::new([NodeId(9)])), Err(Error::UnknownNode(NodeId(9)))));
        let bad = Route { stops: vec![NodeId(0)], forced: false };
        assert!(matches!(g.schedule(&bad), Err(Error::Structural(_))));
    }

    #[test]
    fn capacity_flag() {
        let mut a = node(1, 1.0, 0.0, 0.0, 100.0, 0.0);
        a.demand = 6.0;
        let mut b = node(2, 2.0, 0.0, 0.0, 100.0, 0.0);
        b.demand = 5.0;
        let g = Graph::euclidean(vec![depot(), a, b], 10.0);
        let s = g.schedule(&Route::new([NodeId(1), NodeId(2)])).unwrap();
        assert!(s.over_capacity);
        assert_eq!(s.load, 11.0);
    }

    #[test]
    fn probe_agrees_with_schedule() {
        let g = Graph::euclidean(
            vec![depot(), node(1, 10.0, 0.0, 20.0, 30.0, 5.0), node(2, 0.0, 10.0, 0.0, 25.0, 3.0)],
            10.0,
        );
        let s = g.schedule(&Route::new([NodeId(1), NodeId(2)])).unwrap();
        let (late, end) = g.probe([1, 2]);
        assert_eq!(late, s.late.len());
        assert!((end - s.duration).abs() < 1e-12);
    }
}
