//! Best-coarsened versus baseline comparison tables.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::document::TrialRow;
use crate::heuristics::SolverKind;

/// Published improvement percentages of the best coarsened run over the
/// uncoarsened baseline: (instance, solver, distance, duration, vehicles,
/// time-window violations, service time).
pub const REFERENCE_IMPROVEMENTS: &[(&str, SolverKind, f64, f64, f64, f64, f64)] = {
    use SolverKind::{Greedy as G, Savings as S};
    &[
        ("C101", S, 63.29, 54.72, 66.30, 33.65, 0.00),
        ("C102", S, 64.05, 53.91, 68.48, 39.13, 0.00),
        ("C103", S, 63.72, 52.33, 69.57, 45.92, 0.00),
        ("C104", S, 66.30, 51.23, 70.65, 52.36, 0.00),
        ("C105", S, 64.55, 57.07, 69.57, 34.18, 0.00),
        ("C106", S, 63.52, 54.14, 67.39, 36.89, 0.00),
        ("C107", S, 64.26, 56.27, 68.48, 28.57, 0.00),
        ("C108", S, 65.02, 55.76, 69.57, 11.20, 0.00),
        ("C109", S, 64.84, 54.85, 69.51, 9.78, 0.00),
        ("C201", S, 61.93, 63.92, 67.39, 15.57, 0.00),
        ("C202", S, 64.00, 66.10, 69.57, 17.62, 0.00),
        ("C203", S, 64.20, 67.17, 70.65, 20.83, 0.00),
        ("C204", S, 65.20, 68.27, 71.74, 23.13, 0.00),
        ("C205", G, 93.67, 84.78, 85.71, 0.00, 75.00),
        ("C205", S, 64.54, 65.29, 68.89, -70.10, 0.00),
        ("C206", G, 70.65, 55.17, 57.14, 0.00, 47.62),
        ("C206", S, 60.88, 62.47, 66.67, -49.30, 0.00),
        ("C207", G, 38.44, 15.11, 14.29, 0.00, 21.43),
        ("C207", S, 53.93, 57.39, 64.29, -24.00, 0.00),
        ("C208", G, 74.29, 59.98, 62.50, 0.00, 45.83),
        ("C208", S, 60.26, 63.21, 67.57, -51.47, 0.00),
        ("R101", S, 53.84, 57.92, 59.78, 23.39, 0.00),
        ("R102", S, 57.40, 61.64, 64.13, 30.34, 0.00),
        ("R103", S, 56.17, 61.03, 64.13, 35.02, 0.00),
        ("R104", S, 60.85, 65.08, 68.48, 41.50, 0.00),
        ("R105", S, 59.55, 64.23, 67.39, 30.64, 0.00),
        ("R106", S, 62.57, 66.36, 69.57, 37.39, 0.00),
        ("R107", S, 60.27, 65.00, 68.48, 40.58, 0.00),
        ("R108", S, 63.29, 66.91, 70.65, 46.11, 0.00),
        ("R109", S, 61.38, 65.88, 69.57, 26.63, 0.00),
        ("R110", G, 65.88, 71.64, 77.78, 0.00, 50.00),
        ("R110", S, 61.37, 65.41, 69.32, 24.64, 0.00),
        ("R111", S, 63.61, 67.92, 71.74, 41.06, 0.00),
        ("R112", G, 76.81, 75.03, 77.27, 0.00, 55.88),
        ("R112", S, 59.57, 60.92, 63.51, 7.50, 0.00),
        ("R201", S, 53.80, 57.49, 63.04, 17.39, 0.00),
        ("R202", S, 55.59, 60.03, 65.17, 21.56, 0.00),
        ("R203", S, 57.35, 60.38, 65.12, 24.67, 0.00),
        ("R204", G, 75.35, 80.62, 81.82, 0.00, 60.00),
        ("R204", S, 61.80, 64.81, 68.24, 32.33, 0.00),
        ("R205", G, 63.91, 57.72, 55.56, 0.00, 59.52),
        ("R205", S, 43.87, 49.91, 54.24, -2.70, 0.00),
        ("R206", G, 62.91, 62.31, 60.00, 0.00, 61.11),
        ("R206", S, 34.34, 41.34, 43.48, -11.86, 0.00),
        ("R207", G, 58.50, 60.67, 58.33, 0.00, 58.21),
        ("R207", S, 23.17, 27.42, 27.27, -27.50, 0.00),
        ("R208", G, 21.40, 30.32, 30.77, 0.00, 21.95),
        ("R208", S, 8.26, 19.31, 20.00, -94.12, 0.00),
        ("R209", G, 44.59, 58.94, 58.33, 0.00, 46.75),
        ("R209", S, 1.13, 11.86, 13.04, -80.00, 0.00),
        ("R210", G, 88.40, 87.18, 87.50, 0.00, 72.00),
        ("R210", S, 57.03, 59.88, 63.75, 12.17, 0.00),
        ("R211", G, -18.31, -3.94, -10.00, 0.00, 0.00),
        ("R211", S, -21.89, 0.41, 0.00, 0.00, 0.00),
        ("RC101", S, 61.73, 67.13, 67.39, 30.65, 0.00),
        ("RC102", S, 62.51, 66.92, 66.30, 30.47, 0.00),
        ("RC103", S, 64.17, 68.90, 69.57, 35.81, 0.00),
        ("RC104", S, 65.46, 69.09, 69.57, 38.24, 0.00),
        ("RC105", S, 61.46, 66.42, 66.30, 29.44, 0.00),
        ("RC106", G, 33.13, 41.90, 50.00, 0.00, 0.00),
        ("RC106", S, 65.75, 70.00, 70.33, 33.18, 0.00),
        ("RC107", S, 66.63, 70.61, 71.59, 28.22, 0.00),
        ("RC108", S, 66.87, 70.95, 72.53, 35.47, 0.00),
        ("RC201", G, 69.87, 67.01, 66.67, 0.00, 50.00),
        ("RC201", S, 58.56, 59.89, 63.33, 22.95, 0.00),
        ("RC202", G, 78.15, 75.36, 75.00, 0.00, 60.00),
        ("RC202", S, 61.84, 62.26, 65.56, 26.04, 0.00),
        ("RC203", G, 70.83, 73.71, 75.00, 0.00, 42.86),
        ("RC203", S, 64.50, 66.23, 68.18, 34.21, 0.00),
        ("RC204", G, 78.52, 71.74, 71.43, 0.00, 45.45),
        ("RC204", S, 63.90, 64.98, 65.88, 29.23, 0.00),
        ("RC205", S, 62.34, 65.39, 68.48, 39.71, 0.00),
        ("RC206", S, 52.16, 53.50, 55.88, 0.00, 0.00),
        ("RC207", G, 50.06, 58.26, 57.14, 0.00, 53.42),
        ("RC207", S, 16.82, 25.84, 24.14, -58.06, 0.00),
        ("RC208", G, 13.77, 29.92, 26.67, 0.00, 0.00),
        ("RC208", S, -22.97, -5.44, 0.00, 0.00, 0.00),
    ]
};

/// Percentage improvements; positive is better.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Improvement {
    pub distance: f64,
    pub duration: f64,
    pub vehicles: f64,
    pub tw: f64,
    pub service: f64,
}

pub fn reference(instance: &str, solver: SolverKind) -> Option<Improvement> {
    REFERENCE_IMPROVEMENTS
        .iter()
        .find(|r| r.0.eq_ignore_ascii_case(instance) && r.1 == solver)
        .map(|r| Improvement { distance: r.2, duration: r.3, vehicles: r.4, tw: r.5, service: r.6 })
}

fn pct(base: f64, new: f64) -> f64 {
    if base == 0.0 {
        if new == 0.0 {
            0.0
        } else {
            -100.0
        }
    } else {
        (base - new) / base * 100.0
    }
}

pub fn improvement(baseline: &TrialRow, best: &TrialRow) -> Improvement {
    Improvement {
        distance: pct(baseline.total_distance, best.total_distance),
        duration: pct(baseline.total_duration, best.total_duration),
        vehicles: pct(baseline.num_vehicles as f64, best.num_vehicles as f64),
        tw: pct(baseline.tw_violations as f64, best.tw_violations as f64),
        service: pct(baseline.total_service, best.total_service),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub instance: String,
    pub solver: SolverKind,
    pub baseline: TrialRow,
    pub best: TrialRow,
    pub achieved: Improvement,
    pub reference: Option<Improvement>,
}

/// Lowest score first, then lowest trial index.
pub fn best_of<'a>(rows: impl IntoIterator<Item = &'a TrialRow>) -> Option<&'a TrialRow> {
    rows.into_iter()
        .min_by(|a, b| a.score.total_cmp(&b.score).then(a.trial.cmp(&b.trial)))
}

/// Pairs each (instance, solver) baseline with the best trial of the same
/// solver. Rows with an empty `trial` column are baselines.
pub fn compare(rows: &[TrialRow]) -> Vec<Comparison> {
    type Group<'a> = (Option<&'a TrialRow>, Vec<&'a TrialRow>);
    let mut groups: BTreeMap<(String, SolverKind), Group> = BTreeMap::new();
    for r in rows {
        let e = groups.entry((r.instance.clone(), r.solver)).or_default();
        match r.trial {
            None => e.0 = Some(r),
            Some(_) => e.1.push(r),
        }
    }
    groups
        .into_iter()
        .filter_map(|((instance, solver), (base, trials))| {
            let base = base?;
            let best = best_of(trials)?;
            Some(Comparison {
                reference: reference(&instance, solver),
                achieved: improvement(base, best),
                instance,
                solver,
                baseline: base.clone(),
                best: best.clone(),
            })
        })
        .collect()
}

pub fn format_table(cmp: &[Comparison]) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:<8} {:<8} {:>9} {:>9} {:>9} {:>9} {:>9} | {:>9} {:>9} {:>9} {:>9} {:>9}",
        "instance", "solver", "dist%", "dur%", "veh%", "tw%", "st%", "ref dist", "ref dur", "ref veh", "ref tw", "ref st"
    );
    for c in cmp {
        let a = c.achieved;
        let _ = write!(
            s,
            "{:<8} {:<8} {:>9.2} {:>9.2} {:>9.2} {:>9.2} {:>9.2} |",
            c.instance, c.solver, a.distance, a.duration, a.vehicles, a.tw, a.service
        );
        match c.reference {
            Some(r) => {
                let _ = writeln!(
                    s,
                    " {:>9.2} {:>9.2} {:>9.2} {:>9.2} {:>9.2}",
                    r.distance, r.duration, r.vehicles, r.tw, r.service
                );
            }
            None => {
                let _ = writeln!(s, " {:>9} {:>9} {:>9} {:>9} {:>9}", "-", "-", "-", "-", "-");
            }
        }
    }
    s
}
