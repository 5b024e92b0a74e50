//! Measurement-driven reconstruction of distances, sampling convergence,
//! quadratic-form readout, and the asymptotic cost model.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use serde::Serialize;

use crate::circuits::{prepare_state, PreparedState};
use crate::error::{Error, Result};
use crate::graph::{enumerate_configurations, frobenius_distance_sparse, Configuration, WeightedGraph};

/// One pattern's distance, exact and as reconstructed from counts.
#[derive(Debug, Clone, Serialize)]
pub struct DistanceEstimate {
    pub pattern: String,
    pub exact: f64,
    pub estimate: f64,
    pub successes: u64,
}

/// Samples the prepared state `shots` times and rescales each pattern's
/// success counts back to a distance: the success probability of pattern
/// `d` is `D(d) / (alpha^4 S W)`, so
/// `D_est = alpha^4 S W  * successes / shots`.
pub fn reconstruct_distances(
    graph: &WeightedGraph,
    prep: &PreparedState,
    shots: u64,
    seed: u64,
) -> Result<Vec<DistanceEstimate>> {
    let regs = &prep.regs;
    if regs.edge_count() != graph.edge_count() {
        return Err(Error::Dimension {
            what: "graph",
            expected: regs.edge_count(),
            got: graph.edge_count(),
        });
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let success = regs.success_bits();
    let mask = if graph.edge_count() == 64 {
        u64::MAX
    } else {
        (1u64 << graph.edge_count()) - 1
    };
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    for (index, count) in prep.state.measure_all(shots, &mut rng) {
        if success.iter().all(|&(q, v)| (index >> q & 1 == 1) == v) {
            *counts.entry(index as u64 & mask).or_default() += count;
        }
    }
    let scale =
        regs.alpha().powi(4) * prep.config_count as f64 * prep.weight_norm / shots as f64;
    enumerate_configurations(graph.edge_count(), prep.x)?
        .into_iter()
        .map(|config| {
            let successes = counts
                .get(&(config.register_index() as u64))
                .copied()
                .unwrap_or(0);
            Ok(DistanceEstimate {
                pattern: config.to_string(),
                exact: frobenius_distance_sparse(graph, &config)?,
                estimate: successes as f64 * scale,
                successes,
            })
        })
        .collect()
}

/// Mean reconstruction error at one shot count, averaged over seeds and
/// patterns.
#[derive(Debug, Clone, Serialize)]
pub struct ConvergencePoint {
    pub shots: u64,
    pub mean_error: f64,
}

/// Reconstruction error versus shot count, with the fitted log-log
/// slope. Sampling noise should push the slope toward -1/2.
#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceStudy {
    pub points: Vec<ConvergencePoint>,
    pub slope: f64,
    pub seeds: Vec<u64>,
}

impl ConvergenceStudy {
    /// Ratio of the first grid point's error to the last one's.
    pub fn error_drop(&self) -> f64 {
        let first = self.points.first().map_or(f64::NAN, |p| p.mean_error);
        let last = self.points.last().map_or(f64::NAN, |p| p.mean_error);
        first / last
    }
}

/// Reconstructs every distance at each shot count in `shots_grid`, once
/// per seed, and fits the error decay. The error per run is the mean
/// over patterns of the relative deviation (absolute where the exact
/// distance is zero).
pub fn convergence_study(
    graph: &WeightedGraph,
    x: usize,
    shots_grid: &[u64],
    seeds: &[u64],
    cap: usize,
) -> Result<ConvergenceStudy> {
    let prep = prepare_state(graph, x, cap)?;
    let mut points = Vec::with_capacity(shots_grid.len());
    for (pi, &shots) in shots_grid.iter().enumerate() {
        let mut total = 0.0;
        let mut runs = 0usize;
        for &seed in seeds {
            let run_seed = seed.wrapping_mul(1009).wrapping_add(pi as u64);
            let estimates = reconstruct_distances(graph, &prep, shots, run_seed)?;
            let per_run: f64 = estimates
                .iter()
                .map(|e| {
                    let dev = (e.estimate - e.exact).abs();
                    if e.exact > 0.0 {
                        dev / e.exact
                    } else {
                        dev
                    }
                })
                .sum::<f64>()
                / estimates.len() as f64;
            total += per_run;
            runs += 1;
        }
        points.push(ConvergencePoint {
            shots,
            mean_error: total / runs as f64,
        });
    }
    let slope = log_log_slope(
        points.iter().map(|p| (p.shots as f64, p.mean_error)),
    );
    Ok(ConvergenceStudy {
        points,
        slope,
        seeds: seeds.to_vec(),
    })
}

fn log_log_slope(points: impl Iterator<Item = (f64, f64)>) -> f64 {
    let logs: Vec<(f64, f64)> = points.map(|(x, y)| (x.ln(), y.ln())).collect();
    let n = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let cov: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let var: f64 = logs.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    cov / var
}

/// Evaluates `a^T B_kept a` for the subgraph with `config`'s edges
/// removed, read out of the prepared state: on the flag-0 branch with
/// all block ancillas zero, the amplitude at vertex labels `(i0, i1)`
/// and pattern `d` is exactly `B_kept[i0, i1] / (alpha^2 sqrt(S W))`, so
/// the overlap with the product reference `|d> |a> |a>` recovers the
/// form after rescaling by `alpha^2 sqrt(S W)`.
pub fn quadratic_form_quantum(
    graph: &WeightedGraph,
    prep: &PreparedState,
    config: &Configuration,
    a: &[f64],
) -> Result<f64> {
    if a.len() != graph.vertex_count() {
        return Err(Error::Dimension {
            what: "vector",
            expected: graph.vertex_count(),
            got: a.len(),
        });
    }
    let weight = config.removed_indices().len();
    if weight != prep.x {
        return Err(Error::Cardinality {
            expected: prep.x,
            got: weight,
        });
    }
    let regs = &prep.regs;
    let pattern = config.register_index();
    let v0 = regs.vertex_label(0).start;
    let v1 = regs.vertex_label(1).start;
    let mut overlap = 0.0;
    for (i, ai) in a.iter().enumerate() {
        for (j, aj) in a.iter().enumerate() {
            overlap += ai * aj * prep.state.amplitude(pattern | i << v0 | j << v1).re;
        }
    }
    let scale = regs.alpha().powi(2)
        * (prep.config_count as f64 * prep.weight_norm).sqrt();
    Ok(overlap * scale)
}

/// `x!` as a float, for the pattern-count asymptotics.
fn factorial(x: u32) -> f64 {
    (1..=x).map(f64::from).product()
}

/// Leading-order step count of the quantum search over `n` removable
/// elements: `sqrt(n^x / x!)` amplification rounds, each paying one
/// sparse matrix pass `n log2(log2 n)` at target precision `epsilon`.
pub fn quantum_cost(n: u64, x: u32, epsilon: f64) -> f64 {
    let nf = n as f64;
    (nf.powi(x as i32) / factorial(x)).sqrt() * nf * nf.log2().log2() / epsilon
}

/// Exhaustive classical baseline: all `n^x / x!` patterns, each checked
/// in `n` operations.
pub fn classical_cost(n: u64, x: u32) -> f64 {
    let nf = n as f64;
    nf.powi(x as i32 + 1) / factorial(x)
}

/// Qubits needed by the search at its most compact: the smaller of a
/// one-hot or an index-packed pattern register, two block-encoding
/// segments, rotation ancillas and flag, and the phase readout.
pub fn qubit_estimate(vertices: usize, edges: usize, x: usize, epsilon: f64) -> usize {
    let lg = |v: usize| (v as f64).log2().ceil() as usize;
    let pattern = edges.min(x * lg(edges));
    pattern + 4 * lg(vertices.max(edges)) + 3 + (1.0 / epsilon).log2().ceil() as usize
}

/// Smallest element count at which the quantum step count undercuts the
/// classical baseline for order-`x` removals.
pub fn crossover_size(x: u32, epsilon: f64) -> Option<u64> {
    (3..=1_000_000_000u64)
        .find(|&n| quantum_cost(n, x, epsilon) < classical_cost(n, x))
}
