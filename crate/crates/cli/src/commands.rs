//! Command implementations; each returns a serializable report that the
//! binary prints as JSON.

use std::path::Path;
use std::time::Instant;

use cohbound_core::sampling::derive_seed;
use cohbound_core::{
    bound_check, estimate_bound_from_shots, generalized_gell_mann, l1_matrix, optimal_observable,
    roof_estimate, simulate_measurement_with, witness_operator, BoundOptions, RoofBudget,
    SamplerConfig, Verdict,
};
use serde::Serialize;

use crate::format::{
    self, density_from_file, observable_from_file, read_matrix_file, CliError, MatrixFile,
};

#[derive(Debug, Serialize)]
pub struct BoundOutput {
    pub dim: usize,
    pub lhs: f64,
    pub c_l1: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub roof_upper: Option<f64>,
    pub margin: f64,
    pub normalized: bool,
}

pub fn cmd_bound(
    state_path: &Path,
    observable_path: &Path,
    normalize: bool,
    roof: Option<RoofBudget>,
) -> Result<BoundOutput, CliError> {
    let state_file = read_matrix_file(state_path)?;
    let rho = density_from_file(state_path, &state_file)?;
    let observable_file = read_matrix_file(observable_path)?;
    let a = observable_from_file(observable_path, &observable_file)?;
    let options = BoundOptions {
        auto_normalize: normalize,
        roof,
    };
    let report = bound_check(&a, &rho, &options)?;
    Ok(BoundOutput {
        dim: rho.dim(),
        lhs: report.lhs,
        c_l1: report.c_l1,
        roof_upper: report.roof_upper,
        margin: report.margin,
        normalized: report.normalized,
    })
}

#[derive(Debug, Serialize)]
pub struct OptimizeOutput {
    pub dim: usize,
    /// Achieved `(1/2) |<[A*, A*^D]>|` of the written observable.
    pub lhs: f64,
    pub c_l1: f64,
    /// `lhs / c_l1`; omitted when `c_l1 < 1e-12`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio: Option<f64>,
    pub out: String,
}

pub fn cmd_optimize(state_path: &Path, out_path: &Path) -> Result<OptimizeOutput, CliError> {
    let state_file = read_matrix_file(state_path)?;
    let rho = density_from_file(state_path, &state_file)?;
    let basis = generalized_gell_mann(rho.dim())?;
    let best = optimal_observable(&rho, &basis)?;
    let a = cohbound_core::expand(&best.coefficients, &basis)?;
    format::write_matrix_file(out_path, &MatrixFile::observable(&a))?;
    let c_l1 = l1_matrix(&rho);
    Ok(OptimizeOutput {
        dim: rho.dim(),
        lhs: best.lhs,
        c_l1,
        ratio: (c_l1 >= 1e-12).then_some(best.lhs / c_l1),
        out: out_path.display().to_string(),
    })
}

#[derive(Debug, Serialize)]
pub struct WitnessOutput {
    pub dim: usize,
    pub shots: u64,
    pub seed: u64,
    pub z: f64,
    pub mean: f64,
    pub std_error: f64,
    pub verdict: String,
    /// `max(0, (|mean| - z * std_error) / 2)`: what the run certifies
    /// about the coherence after discounting shot noise.
    pub coherence_lower_bound: f64,
    pub outcomes: Vec<OutcomeOutput>,
}

#[derive(Debug, Serialize)]
pub struct OutcomeOutput {
    pub value: f64,
    pub probability: f64,
    pub count: u64,
}

pub fn cmd_witness(
    state_path: &Path,
    observable_path: &Path,
    shots: u64,
    seed: u64,
    z: f64,
) -> Result<WitnessOutput, CliError> {
    let state_file = read_matrix_file(state_path)?;
    let rho = density_from_file(state_path, &state_file)?;
    let observable_file = read_matrix_file(observable_path)?;
    let a = observable_from_file(observable_path, &observable_file)?;
    let w = witness_operator(&a)?;
    let result = simulate_measurement_with(&w, &rho, shots, seed, z)?;
    Ok(WitnessOutput {
        dim: rho.dim(),
        shots: result.shots,
        seed,
        z: result.z_threshold,
        mean: result.mean,
        std_error: result.std_error,
        verdict: verdict_name(result.verdict).to_owned(),
        coherence_lower_bound: estimate_bound_from_shots(&result),
        outcomes: result
            .outcomes
            .iter()
            .map(|o| OutcomeOutput {
                value: o.value,
                probability: o.probability,
                count: o.count,
            })
            .collect(),
    })
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::CoherentDetected => "coherent_detected",
        Verdict::Inconclusive => "inconclusive",
    }
}

#[derive(Debug, Serialize)]
pub struct RoofOutput {
    pub dim: usize,
    /// Best (smallest) average decomposition coherence found.
    pub value: f64,
    /// l1 coherence: a lower reference for the roof.
    pub l1: f64,
    pub decomposition_size: usize,
    pub converged: bool,
    pub restarts: usize,
    pub iterations: usize,
    pub seed: u64,
}

pub fn cmd_roof(state_path: &Path, budget: RoofBudget) -> Result<RoofOutput, CliError> {
    let state_file = read_matrix_file(state_path)?;
    let rho = density_from_file(state_path, &state_file)?;
    let estimate = roof_estimate(&rho, &budget)?;
    Ok(RoofOutput {
        dim: rho.dim(),
        value: estimate.value,
        l1: l1_matrix(&rho),
        decomposition_size: estimate.best_decomposition.len(),
        converged: estimate.converged,
        restarts: budget.restarts,
        iterations: budget.iterations,
        seed: budget.seed,
    })
}

#[derive(Debug, Serialize)]
pub struct SweepOutput {
    pub out: String,
    pub rows: usize,
    pub seed: u64,
}

pub const SWEEP_CSV_HEADER: &str =
    "dim,trial,seed,lhs,c_l1,roof_upper,margin,optimal_lhs,runtime_ms";

/// Roof budget used for sweep rows; modest so many-trial sweeps stay fast.
fn sweep_roof_budget(trial_seed: u64) -> RoofBudget {
    RoofBudget {
        restarts: 8,
        iterations: 150,
        seed: derive_seed(trial_seed, 4),
    }
}

pub fn cmd_sweep(
    dims: &[usize],
    trials: usize,
    seed: u64,
    roof: bool,
    out_path: &Path,
    timing: bool,
) -> Result<SweepOutput, CliError> {
    let mut csv = String::from(SWEEP_CSV_HEADER);
    csv.push('\n');
    let mut rows = 0;
    for &dim in dims {
        let basis = generalized_gell_mann(dim)?;
        for trial in 0..trials {
            // Independent per-trial seed; trials could run in parallel and
            // still produce these exact rows.
            let trial_seed = derive_seed(derive_seed(seed, dim as u64), trial as u64);
            let rank = trial % dim + 1;
            let cfg = SamplerConfig::new(trial_seed, dim, rank)?;
            let rho = cohbound_core::random_density(&cfg);
            let a = cohbound_core::random_observable(&cfg);
            let started = Instant::now();
            let options = BoundOptions {
                auto_normalize: false,
                roof: roof.then(|| sweep_roof_budget(trial_seed)),
            };
            let report = bound_check(&a, &rho, &options)?;
            let best = optimal_observable(&rho, &basis)?;
            // Zero unless --timing: wall time would break byte-level
            // reproducibility of the output.
            let runtime_ms = if timing {
                started.elapsed().as_millis()
            } else {
                0
            };
            csv.push_str(&format!(
                "{dim},{trial},{trial_seed},{},{},{},{},{},{runtime_ms}\n",
                format::float_string(report.lhs),
                format::float_string(report.c_l1),
                report
                    .roof_upper
                    .map(format::float_string)
                    .unwrap_or_default(),
                format::float_string(report.margin),
                format::float_string(best.lhs),
            ));
            rows += 1;
        }
    }
    std::fs::write(out_path, csv).map_err(|source| CliError::Io {
        path: out_path.to_owned(),
        source,
    })?;
    Ok(SweepOutput {
        out: out_path.display().to_string(),
        rows,
        seed,
    })
}
