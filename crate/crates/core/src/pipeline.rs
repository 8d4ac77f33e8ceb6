//! coarsen -> solve -> inflate -> repair -> evaluate

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::coarsen::{coarsen, CoarseningParams, Halt};
use crate::error::Result;
use crate::evaluation::{evaluate, objective_score, Metrics, PenaltyWeights};
use crate::graph::Graph;
use crate::heuristics::{Solution, SolverKind};
use crate::inflate::{inflate, light_postprocess, RepairReport};

/// Wall-clock per stage, in milliseconds.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub coarsen_ms: f64,
    pub solve_ms: f64,
    pub inflate_ms: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineRun {
    /// `None` for a baseline run.
    pub params: Option<CoarseningParams>,
    pub solver: SolverKind,
    /// Metrics of the reduced solution on the graph the solver saw.
    pub coarse: Metrics,
    /// Metrics after inflation, before repair.
    pub inflated_raw: Metrics,
    /// Final metrics on the original graph.
    pub metrics: Metrics,
    pub score: f64,
    pub timings: Timings,
    pub coarse_nodes: usize,
    pub merges: usize,
    pub halt: Option<Halt>,
    pub repair: RepairReport,
    /// Final routes on the original graph.
    pub solution: Solution,
}

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

/// Runs the solver directly on the original graph.
pub fn run_baseline(original: &Graph, solver: SolverKind, weights: &PenaltyWeights) -> Result<PipelineRun> {
    let t = Instant::now();
    let solution = solver.solve(original)?;
    let solve_ms = ms(t);
    let metrics = evaluate(&solution, original)?;
    Ok(PipelineRun {
        params: None,
        solver,
        coarse: metrics,
        inflated_raw: metrics,
        metrics,
        score: objective_score(&metrics, weights),
        timings: Timings { solve_ms, ..Default::default() },
        coarse_nodes: original.customer_count(),
        merges: 0,
        halt: None,
        repair: RepairReport::default(),
        solution,
    })
}

/// Full coarsened pipeline. When coarsening performs no merge, inflation is
/// the identity and no repair is applied, so the run matches
/// [`run_baseline`] for the same solver.
pub fn run_pipeline(
    original: &Graph,
    params: &CoarseningParams,
    solver: SolverKind,
    weights: &PenaltyWeights,
) -> Result<PipelineRun> {
    let t = Instant::now();
    let reduced = coarsen(original, params)?;
    let coarsen_ms = ms(t);

    let t = Instant::now();
    let coarse_solution = solver.solve(&reduced.graph)?;
    let solve_ms = ms(t);
    let coarse = evaluate(&coarse_solution, &reduced.graph)?;

    let t = Instant::now();
    let expanded = inflate(&coarse_solution, &reduced.history, original)?;
    let (solution, repair) = if reduced.history.is_empty() {
        (expanded.clone(), RepairReport::default())
    } else {
        light_postprocess(&expanded, original)?
    };
    let inflate_ms = ms(t);

    let inflated_raw = evaluate(&expanded, original)?;
    let metrics = evaluate(&solution, original)?;
    Ok(PipelineRun {
        params: Some(*params),
        solver,
        coarse,
        inflated_raw,
        metrics,
        score: objective_score(&metrics, weights),
        timings: Timings { coarsen_ms, solve_ms, inflate_ms },
        coarse_nodes: reduced.graph.customer_count(),
        merges: reduced.history.len(),
        halt: Some(reduced.halt),
        repair,
        solution,
    })
}
