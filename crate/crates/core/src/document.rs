//! Solution documents (JSON) and per-trial CSV rows.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::coarsen::{CoarseningParams, Propagation, SeparationMode, TauMode};
use crate::error::{Error, Result};
use crate::evaluation::{evaluate_with_schedules, Metrics};
use crate::graph::{Graph, NodeId, Route};
use crate::heuristics::{Solution, SolverKind};
use crate::pipeline::{PipelineRun, Timings};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DocParams {
    pub alpha: f64,
    pub beta: f64,
    pub p: f64,
    pub radius_coeff: f64,
    pub propagation: Propagation,
    pub separation: SeparationMode,
    pub tau_mode: TauMode,
    pub solver: SolverKind,
}

impl DocParams {
    /// Baseline runs are recorded as `p = 1` (nothing coarsened).
    pub fn new(params: Option<&CoarseningParams>, solver: SolverKind) -> Self {
        let p = params.copied().unwrap_or(CoarseningParams { p_target: 1.0, ..Default::default() });
        DocParams {
            alpha: p.alpha,
            beta: p.beta,
            p: p.p_target,
            radius_coeff: p.radius_coeff,
            propagation: p.propagation,
            separation: p.separation,
            tau_mode: p.tau_mode,
            solver,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DocStop {
    pub node_id: NodeId,
    pub x: f64,
    pub y: f64,
    pub arrival: f64,
    pub wait: f64,
    pub service_start: f64,
    pub departure: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DocRoute {
    pub vehicle: usize,
    pub distance: f64,
    pub stops: Vec<DocStop>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub forced: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolutionDocument {
    pub instance: String,
    pub seed: Option<u64>,
    pub params: DocParams,
    pub depot: Point,
    pub routes: Vec<DocRoute>,
    pub metrics: Metrics,
    pub timings: Timings,
}

impl SolutionDocument {
    /// Builds the document for `solution`, recomputing schedules on `graph`.
    pub fn build(
        instance: &str,
        seed: Option<u64>,
        params: DocParams,
        solution: &Solution,
        graph: &Graph,
        timings: Timings,
    ) -> Result<Self> {
        let (metrics, schedules) = evaluate_with_schedules(solution, graph)?;
        let routes = solution
            .routes
            .iter()
            .zip(&schedules)
            .enumerate()
            .map(|(k, (route, sched))| DocRoute {
                vehicle: k,
                distance: sched.distance,
                forced: route.forced,
                stops: sched
                    .stops
                    .iter()
                    .map(|t| {
                        let n = graph.node(t.node_id).expect("scheduled nodes exist");
                        DocStop {
                            node_id: t.node_id,
                            x: n.x,
                            y: n.y,
                            arrival: t.arrival,
                            wait: t.wait,
                            service_start: t.service_start,
                            departure: t.departure,
                        }
                    })
                    .collect(),
            })
            .collect();
        let d = graph.depot();
        Ok(SolutionDocument {
            instance: instance.to_string(),
            seed,
            params,
            depot: Point { x: d.x, y: d.y },
            routes,
            metrics,
            timings,
        })
    }

    pub fn from_run(instance: &str, seed: Option<u64>, run: &PipelineRun, graph: &Graph) -> Result<Self> {
        Self::build(
            instance,
            seed,
            DocParams::new(run.params.as_ref(), run.solver),
            &run.solution,
            graph,
            run.timings,
        )
    }

    /// The routes as node-id sequences.
    pub fn to_solution(&self) -> Solution {
        Solution {
            routes: self
                .routes
                .iter()
                .map(|r| Route { stops: r.stops.iter().map(|s| s.node_id).collect(), forced: r.forced })
                .collect(),
            solver: self.params.solver,
        }
    }

    /// Checks the invariants the schema cannot express.
    pub fn check(&self) -> Result<()> {
        for r in &self.routes {
            let ok = r.stops.len() >= 2
                && r.stops[0].node_id.is_depot()
                && r.stops[r.stops.len() - 1].node_id.is_depot()
                && r.stops[1..r.stops.len() - 1].iter().all(|s| !s.node_id.is_depot());
            if !ok {
                return Err(Error::Structural(format!("route {} must start and end at the depot", r.vehicle)));
            }
        }
        Ok(())
    }
}

pub fn write_solution(doc: &SolutionDocument, mut out: impl Write) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, doc)?;
    out.write_all(b"\n")?;
    Ok(())
}

pub fn read_solution(input: impl Read) -> Result<SolutionDocument> {
    let doc: SolutionDocument = serde_json::from_reader(input)?;
    doc.check()?;
    Ok(doc)
}

/// One CSV row per trial (or per baseline run, with empty trial and
/// parameter columns).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRow {
    pub instance: String,
    pub trial: Option<usize>,
    pub seed: Option<u64>,
    pub solver: SolverKind,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub p: Option<f64>,
    pub radius_coeff: Option<f64>,
    pub propagation: Option<Propagation>,
    pub separation: Option<SeparationMode>,
    pub tau_mode: Option<TauMode>,
    pub coarse_nodes: usize,
    pub merges: usize,
    pub coarse_distance: f64,
    pub coarse_vehicles: usize,
    pub coarse_duration: f64,
    pub coarse_tw_violations: usize,
    pub coarse_capacity_violations: usize,
    pub inflated_tw_violations: usize,
    pub total_distance: f64,
    pub num_vehicles: usize,
    pub total_duration: f64,
    pub total_wait: f64,
    pub total_service: f64,
    pub tw_violations: usize,
    pub capacity_violations: usize,
    pub feasible: bool,
    pub score: f64,
    pub coarsen_ms: f64,
    pub solve_ms: f64,
    pub inflate_ms: f64,
}

impl TrialRow {
    pub fn new(instance: &str, trial: Option<usize>, seed: Option<u64>, run: &PipelineRun) -> Self {
        let p = run.params;
        let m = &run.metrics;
        TrialRow {
            instance: instance.to_string(),
            trial,
            seed,
            solver: run.solver,
            alpha: p.map(|p| p.alpha),
            beta: p.map(|p| p.beta),
            p: p.map(|p| p.p_target),
            radius_coeff: p.map(|p| p.radius_coeff),
            propagation: p.map(|p| p.propagation),
            separation: p.map(|p| p.separation),
            tau_mode: p.map(|p| p.tau_mode),
            coarse_nodes: run.coarse_nodes,
            merges: run.merges,
            coarse_distance: run.coarse.total_distance,
            coarse_vehicles: run.coarse.num_vehicles,
            coarse_duration: run.coarse.total_duration,
            coarse_tw_violations: run.coarse.tw_violations,
            coarse_capacity_violations: run.coarse.capacity_violations,
            inflated_tw_violations: run.inflated_raw.tw_violations,
            total_distance: m.total_distance,
            num_vehicles: m.num_vehicles,
            total_duration: m.total_duration,
            total_wait: m.total_wait,
            total_service: m.total_service,
            tw_violations: m.tw_violations,
            capacity_violations: m.capacity_violations,
            feasible: m.feasible,
            score: run.score,
            coarsen_ms: run.timings.coarsen_ms,
            solve_ms: run.timings.solve_ms,
            inflate_ms: run.timings.inflate_ms,
        }
    }
}

pub fn write_rows<'a>(rows: impl IntoIterator<Item = &'a TrialRow>, out: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_rows(input: impl Read) -> Result<Vec<TrialRow>> {
    csv::Reader::from_reader(input)
        .deserialize()
        .collect::<std::result::Result<_, _>>()
        .map_err(Error::from)
}
