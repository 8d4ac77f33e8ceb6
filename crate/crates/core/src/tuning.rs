//! Seeded random search over coarsening parameters and solver choice.
//!
//! Each trial draws its parameters from a ChaCha8 generator seeded with the
//! campaign seed and switched to stream `trial_index`, so a trial's draws do
//! not depend on which other trials ran or in what order. Per trial the
//! draws are, in order: alpha, beta, P, radius coefficient, solver; each is
//! `gen_range(0..len)` over the corresponding choice list.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coarsen::{CoarseningParams, Propagation, SeparationMode, TauMode};
use crate::error::{Error, Result};
use crate::evaluation::PenaltyWeights;
use crate::graph::Graph;
use crate::heuristics::SolverKind;
pub use crate::pipeline::run_baseline;
use crate::pipeline::{run_pipeline, PipelineRun};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SearchSpace {
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
    pub p: Vec<f64>,
    pub radius: Vec<f64>,
    pub solvers: Vec<SolverKind>,
    pub propagation: Propagation,
    pub separation: SeparationMode,
    pub tau_mode: TauMode,
}

impl Default for SearchSpace {
    fn default() -> Self {
        SearchSpace {
            alpha: vec![0.1, 0.5, 0.9],
            beta: vec![0.1, 0.5, 0.9],
            p: vec![0.3, 0.5, 0.7],
            radius: vec![0.5, 1.0, 1.5, 2.0],
            solvers: vec![SolverKind::Greedy, SolverKind::Savings],
            propagation: Propagation::Relaxed,
            separation: SeparationMode::Nominal,
            tau_mode: TauMode::Midpoint,
        }
    }
}

impl SearchSpace {
    pub fn from_toml(text: &str) -> Result<Self> {
        let space: SearchSpace = toml::from_str(text).map_err(|e| Error::Params(e.to_string()))?;
        space.validate()?;
        Ok(space)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, empty) in [
            ("alpha", self.alpha.is_empty()),
            ("beta", self.beta.is_empty()),
            ("p", self.p.is_empty()),
            ("radius", self.radius.is_empty()),
            ("solvers", self.solvers.is_empty()),
        ] {
            if empty {
                return Err(Error::Params(format!("search space `{name}` has no choices")));
            }
        }
        Ok(())
    }

    /// Parameters and solver for trial `index` of a campaign.
    pub fn sample(&self, seed: u64, index: usize) -> (CoarseningParams, SolverKind) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index as u64);
        let mut pick = |v: &[f64]| v[rng.gen_range(0..v.len())];
        let alpha = pick(&self.alpha);
        let beta = pick(&self.beta);
        let p_target = pick(&self.p);
        let radius_coeff = pick(&self.radius);
        let solver = self.solvers[rng.gen_range(0..self.solvers.len())];
        let params = CoarseningParams {
            alpha,
            beta,
            p_target,
            radius_coeff,
            propagation: self.propagation,
            separation: self.separation,
            tau_mode: self.tau_mode,
        };
        (params, solver)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialResult {
    pub trial_index: usize,
    pub run: PipelineRun,
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub trials: Vec<TrialResult>,
    /// Index into `trials` of the lowest score (earliest on ties).
    pub best: usize,
}

impl SearchOutcome {
    pub fn best(&self) -> &TrialResult {
        &self.trials[self.best]
    }
}

/// Runs `n_trials` independent pipeline trials, `jobs` at a time.
pub fn random_search(
    original: &Graph,
    space: &SearchSpace,
    n_trials: usize,
    seed: u64,
    weights: &PenaltyWeights,
    jobs: usize,
) -> Result<SearchOutcome> {
    if n_trials == 0 {
        return Err(Error::Params("at least one trial is required".into()));
    }
    space.validate()?;
    let run = |k: usize| -> Result<TrialResult> {
        let (params, solver) = space.sample(seed, k);
        Ok(TrialResult { trial_index: k, run: run_pipeline(original, &params, solver, weights)? })
    };
    let trials: Vec<TrialResult> = if jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::Params(e.to_string()))?;
        pool.install(|| (0..n_trials).into_par_iter().map(run).collect::<Result<_>>())?
    } else {
        (0..n_trials).map(run).collect::<Result<_>>()?
    };
    let best = trials
        .iter()
        .enumerate()
        .min_by(|(_, a), (_, b)| a.run.score.total_cmp(&b.run.score).then(a.trial_index.cmp(&b.trial_index)))
        .map(|(k, _)| k)
        .expect("at least one trial");
    Ok(SearchOutcome { trials, best })
}
