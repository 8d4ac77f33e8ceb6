//! Spatio-temporal coarsening.
//!
//! Customers are merged pairwise into super-nodes, level by level, using the
//! weighted distance `alpha * tau + beta * dT` where `dT` measures how far
//! apart two nodes are in time. Each merge keeps the service order of its two
//! children so the reduced solution can be expanded again (see
//! [`crate::inflate`]).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{euclidean, CoarseNode, Graph, NodeId, NodeKind};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Propagation {
    /// Union-like window; may admit violations after expansion.
    #[default]
    Relaxed,
    /// Intersection-like window; vetoes merges whose window is empty.
    Conservative,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SeparationMode {
    /// `|t_i - t_j|`
    #[default]
    Nominal,
    /// `max(0, e_j - (t_i + s_i + tau_ij))`
    Strict,
}

/// Travel time from a new super-node to the rest of the graph.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TauMode {
    /// Euclidean distance from the midpoint of the two children.
    #[default]
    Midpoint,
    /// The larger of the two children's travel times.
    Conservative,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoarseningParams {
    pub alpha: f64,
    pub beta: f64,
    /// Fraction of the original customer nodes to keep.
    pub p_target: f64,
    pub radius_coeff: f64,
    #[serde(default)]
    pub propagation: Propagation,
    #[serde(default)]
    pub separation: SeparationMode,
    #[serde(default)]
    pub tau_mode: TauMode,
}

impl Default for CoarseningParams {
    fn default() -> Self {
        CoarseningParams {
            alpha: 0.5,
            beta: 0.5,
            p_target: 0.5,
            radius_coeff: 1.0,
            propagation: Propagation::Relaxed,
            separation: SeparationMode::Nominal,
            tau_mode: TauMode::Midpoint,
        }
    }
}

impl CoarseningParams {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Params(m));
        if !(self.alpha >= 0.0 && self.beta >= 0.0) {
            return bad(format!("alpha and beta must be >= 0, got {} and {}", self.alpha, self.beta));
        }
        if !(self.alpha + self.beta > 0.0) {
            return bad("alpha + beta must be positive".into());
        }
        if !(self.p_target > 0.0 && self.p_target <= 1.0) {
            return bad(format!("p must lie in (0, 1], got {}", self.p_target));
        }
        if !(self.radius_coeff >= 0.0 && self.radius_coeff.is_finite()) {
            return bad(format!("radius coefficient must be >= 0, got {}", self.radius_coeff));
        }
        Ok(())
    }
}

/// Temporal separation of `j` relative to `i`.
pub fn temporal_separation(i: &CoarseNode, j: &CoarseNode, mode: SeparationMode, tau_ij: f64) -> f64 {
    match mode {
        SeparationMode::Nominal => (i.nominal - j.nominal).abs(),
        SeparationMode::Strict => (j.ready - (i.nominal + i.dwell() + tau_ij)).max(0.0),
    }
}

/// `alpha * tau_ij + beta * dT_ij`, directed from `i` to `j`.
pub fn st_distance(i: &CoarseNode, j: &CoarseNode, params: &CoarseningParams, tau_ij: f64) -> f64 {
    params.alpha * tau_ij + params.beta * temporal_separation(i, j, params.separation, tau_ij)
}

/// Undirected weight used to rank merge candidates. The strict separation is
/// asymmetric, so the smaller of the two directions is taken.
pub fn pair_distance(i: &CoarseNode, j: &CoarseNode, params: &CoarseningParams, tau: f64) -> f64 {
    let dt = match params.separation {
        SeparationMode::Nominal => temporal_separation(i, j, SeparationMode::Nominal, tau),
        SeparationMode::Strict => temporal_separation(i, j, SeparationMode::Strict, tau)
            .min(temporal_separation(j, i, SeparationMode::Strict, tau)),
    };
    params.alpha * tau + params.beta * dt
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Feasibility {
    /// `i` then `j` is possible.
    pub forward: bool,
    /// `j` then `i` is possible.
    pub backward: bool,
}

impl Feasibility {
    pub fn any(self) -> bool {
        self.forward || self.backward
    }
}

pub fn merge_feasibility(i: &CoarseNode, j: &CoarseNode, tau_ij: f64, tau_ji: f64) -> Feasibility {
    Feasibility {
        forward: i.ready <= j.due - j.dwell() - tau_ij - i.dwell(),
        backward: j.ready <= i.due - i.dwell() - tau_ji - j.dwell(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MergeOrder {
    IThenJ,
    JThenI,
}

/// Scheduling room left when serving the pair in `order`.
pub fn merge_slack(i: &CoarseNode, j: &CoarseNode, order: MergeOrder, tau: f64) -> f64 {
    let (first, second) = ordered(i, j, order);
    (second.due - second.dwell() - tau) - (first.ready + first.dwell())
}

/// Picks the feasible order with the larger slack; `None` if neither order
/// is feasible. Ties go to `i` first, where `i` is the lower node id.
pub fn choose_order(i: &CoarseNode, j: &CoarseNode, tau_ij: f64, tau_ji: f64) -> Option<MergeOrder> {
    let (i, j, swapped) = if i.id <= j.id { (i, j, false) } else { (j, i, true) };
    let (tau_ij, tau_ji) = if swapped { (tau_ji, tau_ij) } else { (tau_ij, tau_ji) };
    let feas = merge_feasibility(i, j, tau_ij, tau_ji);
    let order = match (feas.forward, feas.backward) {
        (false, false) => return None,
        (true, false) => MergeOrder::IThenJ,
        (false, true) => MergeOrder::JThenI,
        (true, true) => {
            if merge_slack(i, j, MergeOrder::JThenI, tau_ji) > merge_slack(i, j, MergeOrder::IThenJ, tau_ij) {
                MergeOrder::JThenI
            } else {
                MergeOrder::IThenJ
            }
        }
    };
    Some(match (order, swapped) {
        (o, false) => o,
        (MergeOrder::IThenJ, true) => MergeOrder::JThenI,
        (MergeOrder::JThenI, true) => MergeOrder::IThenJ,
    })
}

fn ordered<'a>(i: &'a CoarseNode, j: &'a CoarseNode, order: MergeOrder) -> (&'a CoarseNode, &'a CoarseNode) {
    match order {
        MergeOrder::IThenJ => (i, j),
        MergeOrder::JThenI => (j, i),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Window {
    pub ready: f64,
    pub due: f64,
}

impl Window {
    pub fn is_empty(&self) -> bool {
        self.ready > self.due
    }
}

/// Time window of the super-node formed by serving `i` and `j` in `order`.
/// `tau` is the travel time from the first to the second node.
///
/// The conservative due time also subtracts the first node's dwell and the
/// connecting travel from the second node's due time, so that starting the
/// pair anywhere inside the window reaches the second node in time. For
/// plain customers without travel between them this reduces to
/// `min(l_i, l_j)`.
pub fn aggregate_window(i: &CoarseNode, j: &CoarseNode, order: MergeOrder, tau: f64, mode: Propagation) -> Window {
    let (first, second) = ordered(i, j, order);
    let lead = first.dwell() + tau;
    match mode {
        Propagation::Relaxed => Window {
            ready: first.ready.min(second.ready - lead),
            due: (second.due - second.dwell()).max(first.due - lead),
        },
        Propagation::Conservative => Window {
            ready: first.ready.max(second.ready),
            due: first.due.min(second.due - lead),
        },
    }
}

/// Fraction of the bounding-box extent used as the base merge radius.
pub fn base_fraction(customer_nodes: usize) -> f64 {
    if customer_nodes == 0 {
        0.0
    } else {
        1.0 / (customer_nodes as f64).sqrt()
    }
}

/// Merge radius: `radius_coeff * max extent / sqrt(n)`, with `n` the
/// current number of customer nodes.
pub fn radius_threshold(graph: &Graph, radius_coeff: f64) -> f64 {
    let nodes = graph.nodes();
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for n in nodes {
        x0 = x0.min(n.x);
        x1 = x1.max(n.x);
        y0 = y0.min(n.y);
        y1 = y1.max(n.y);
    }
    let extent = (x1 - x0).max(y1 - y0);
    if !(extent > 0.0) {
        return 0.0;
    }
    radius_coeff * extent * base_fraction(graph.customer_count())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MergeRecord {
    pub super_id: NodeId,
    /// Lower-id operand.
    pub left: NodeId,
    pub right: NodeId,
    pub order: MergeOrder,
    pub window: Window,
    /// Operand attributes at merge time.
    pub left_node: CoarseNode,
    pub right_node: CoarseNode,
    /// Travel time between the operands at merge time.
    pub tau: f64,
}

impl MergeRecord {
    /// Children in service order.
    pub fn children(&self) -> [NodeId; 2] {
        match self.order {
            MergeOrder::IThenJ => [self.left, self.right],
            MergeOrder::JThenI => [self.right, self.left],
        }
    }

    /// Re-checks that the recorded order was feasible for the stored operands.
    pub fn order_was_feasible(&self) -> bool {
        let f = merge_feasibility(&self.left_node, &self.right_node, self.tau, self.tau);
        match self.order {
            MergeOrder::IThenJ => f.forward,
            MergeOrder::JThenI => f.backward,
        }
    }
}

/// Chronological merge log.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct MergeHistory {
    pub records: Vec<MergeRecord>,
}

impl MergeHistory {
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn get(&self, super_id: NodeId) -> Option<&MergeRecord> {
        self.records.iter().find(|r| r.super_id == super_id)
    }
}

/// One line of the per-round debug dump.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RoundStats {
    pub round: usize,
    pub nodes_before: usize,
    pub candidates: usize,
    pub merges_applied: usize,
    pub rho: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Halt {
    /// Customer-node count reached `P * n0`.
    Target,
    /// A round found no admissible merge.
    EmptyMatching,
}

#[derive(Debug, Clone)]
pub struct Coarsened {
    pub graph: Graph,
    pub history: MergeHistory,
    pub rounds: Vec<RoundStats>,
    pub halt: Halt,
}

/// A merge selected for the current round, by graph slot.
#[derive(Debug, Clone, Copy)]
struct Planned {
    a: usize,
    b: usize,
    order: MergeOrder,
    window: Window,
}

/// Merges `i` and `j` into a single super-node with id `new_id`.
pub fn merge_pair(
    graph: &Graph,
    i: NodeId,
    j: NodeId,
    order: MergeOrder,
    window: Window,
    tau_mode: TauMode,
    new_id: NodeId,
) -> Result<(Graph, CoarseNode)> {
    if i.is_depot() || j.is_depot() {
        return Err(Error::Structural("the depot never merges".into()));
    }
    if i == j {
        return Err(Error::Structural(format!("cannot merge node {i} with itself")));
    }
    if graph.node(new_id).is_some() {
        return Err(Error::Structural(format!("node id {new_id} already in use")));
    }
    let a = graph.slot_of(i).ok_or(Error::UnknownNode(i))?;
    let b = graph.slot_of(j).ok_or(Error::UnknownNode(j))?;
    let (g, mut created) = apply_merges(graph, &[Planned { a, b, order, window }], tau_mode, new_id.0);
    Ok((g, created.remove(0).0))
}

fn build_super(graph: &Graph, p: &Planned, id: NodeId) -> CoarseNode {
    let (f, s) = match p.order {
        MergeOrder::IThenJ => (p.a, p.b),
        MergeOrder::JThenI => (p.b, p.a),
    };
    let (first, second) = (graph.node_at(f), graph.node_at(s));
    let mut members = first.members.clone();
    members.extend_from_slice(&second.members);
    CoarseNode {
        id,
        kind: NodeKind::Supernode,
        x: (first.x + second.x) / 2.0,
        y: (first.y + second.y) / 2.0,
        demand: first.demand + second.demand,
        service: first.service + second.service,
        transit: first.transit + graph.tau_slots(f, s) + second.transit,
        ready: p.window.ready,
        due: p.window.due,
        nominal: (p.window.ready + p.window.due) / 2.0,
        members,
    }
}

/// Applies a set of disjoint merges in one rebuild. Returns the new graph and
/// each created super-node with the planned merge it came from.
fn apply_merges(
    graph: &Graph,
    plans: &[Planned],
    tau_mode: TauMode,
    first_id: usize,
) -> (Graph, Vec<(CoarseNode, usize, usize)>) {
    #[derive(Clone, Copy)]
    enum Src {
        Old(usize),
        New(usize, usize),
    }

    let m = graph.nodes().len();
    let mut consumed = vec![false; m];
    for p in plans {
        consumed[p.a] = true;
        consumed[p.b] = true;
    }
    let mut nodes = Vec::with_capacity(m - plans.len());
    let mut src = Vec::with_capacity(m - plans.len());
    for (k, n) in graph.nodes().iter().enumerate() {
        if !consumed[k] {
            nodes.push(n.clone());
            src.push(Src::Old(k));
        }
    }
    let mut created = Vec::with_capacity(plans.len());
    for (k, p) in plans.iter().enumerate() {
        let node = build_super(graph, p, NodeId(first_id + k));
        created.push((node.clone(), p.a, p.b));
        nodes.push(node);
        src.push(Src::New(p.a, p.b));
    }

    let n = nodes.len();
    let mut tau = vec![0.0; n * n];
    for u in 0..n {
        for v in u + 1..n {
            let t = match (src[u], src[v]) {
                (Src::Old(a), Src::Old(b)) => graph.tau_slots(a, b),
                _ if tau_mode == TauMode::Midpoint => euclidean(&nodes[u], &nodes[v]),
                (Src::New(a, b), Src::Old(k)) | (Src::Old(k), Src::New(a, b)) => {
                    graph.tau_slots(a, k).max(graph.tau_slots(b, k))
                }
                (Src::New(a, b), Src::New(c, d)) => graph
                    .tau_slots(a, c)
                    .max(graph.tau_slots(a, d))
                    .max(graph.tau_slots(b, c))
                    .max(graph.tau_slots(b, d)),
            };
            tau[u * n + v] = t;
            tau[v * n + u] = t;
        }
    }
    (Graph::with_matrix(nodes, tau, graph.capacity()), created)
}

/// Multilevel coarsening loop.
///
/// Each round ranks all customer pairs by [`pair_distance`], keeps those
/// within [`radius_threshold`], and greedily builds a matching in ascending
/// order, skipping pairs that are over capacity, have no feasible service
/// order, or (conservative propagation) whose window is empty. The round
/// stops adding merges once the target node count would be reached. The
/// loop ends at the target or when a round finds no admissible merge.
pub fn coarsen(graph: &Graph, params: &CoarseningParams) -> Result<Coarsened> {
    coarsen_observed(graph, params, |_| {})
}

/// [`coarsen`], calling `on_level` with the graph produced by every round.
pub fn coarsen_observed(
    graph: &Graph,
    params: &CoarseningParams,
    mut on_level: impl FnMut(&Graph),
) -> Result<Coarsened> {
    params.validate()?;
    let n0 = graph.customer_count();
    let target = params.p_target * n0 as f64;
    let mut next_id = graph.nodes().iter().map(|n| n.id.0).max().unwrap_or(0) + 1;
    let mut g = graph.clone();
    let mut history = MergeHistory::default();
    let mut rounds = Vec::new();
    let mut halt = Halt::Target;

    while g.customer_count() as f64 > target {
        let count = g.customer_count();
        let needed = (count as f64 - target).ceil() as usize;
        let rho = radius_threshold(&g, params.radius_coeff);
        let m = g.nodes().len();

        let mut cands = Vec::new();
        for a in 1..m {
            for b in a + 1..m {
                let (na, nb) = (g.node_at(a), g.node_at(b));
                let d = pair_distance(na, nb, params, g.tau_slots(a, b));
                if d <= rho {
                    let (lo, hi) = if na.id < nb.id { (na.id, nb.id) } else { (nb.id, na.id) };
                    cands.push((d, lo, hi, a, b));
                }
            }
        }
        cands.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));

        let mut used = vec![false; m];
        used[0] = true;
        let mut plans = Vec::new();
        for &(_, _, _, a, b) in &cands {
            if plans.len() == needed {
                break;
            }
            if used[a] || used[b] {
                continue;
            }
            // keep the lower id in the `i` position
            let (a, b) = if g.node_at(a).id < g.node_at(b).id { (a, b) } else { (b, a) };
            let (ni, nj) = (g.node_at(a), g.node_at(b));
            if ni.demand + nj.demand > g.capacity() {
                continue;
            }
            let tau = g.tau_slots(a, b);
            let Some(order) = choose_order(ni, nj, tau, tau) else {
                continue;
            };
            let window = aggregate_window(ni, nj, order, tau, params.propagation);
            if window.is_empty() {
                continue;
            }
            used[a] = true;
            used[b] = true;
            plans.push(Planned { a, b, order, window });
        }

        let stats = RoundStats {
            round: rounds.len(),
            nodes_before: count,
            candidates: cands.len(),
            merges_applied: plans.len(),
            rho,
        };
        log::debug!(
            "round={} nodes_before={} candidates={} merges_applied={} rho={:.4}",
            stats.round,
            stats.nodes_before,
            stats.candidates,
            stats.merges_applied,
            stats.rho
        );
        rounds.push(stats);

        if plans.is_empty() {
            halt = Halt::EmptyMatching;
            break;
        }

        let (next, created) = apply_merges(&g, &plans, params.tau_mode, next_id);
        for ((node, a, b), p) in created.into_iter().zip(&plans) {
            history.records.push(MergeRecord {
                super_id: node.id,
                left: g.node_at(a).id,
                right: g.node_at(b).id,
                order: p.order,
                window: p.window,
                left_node: g.node_at(a).clone(),
                right_node: g.node_at(b).clone(),
                tau: g.tau_slots(a, b),
            });
        }
        next_id += plans.len();
        g = next;
        on_level(&g);
    }

    Ok(Coarsened { graph: g, history, rounds, halt })
}
