//! End-to-end acceptance checks, one per criterion, each printing a
//! single PASS/FAIL line (visible under `--nocapture`) with the measured
//! margins. Instances marked infeasible for exact simulation on this
//! host (statevector larger than memory) are named in the line and
//! skipped rather than silently dropped.

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use qlap::analysis::{
    classical_cost, convergence_study, crossover_size, quadratic_form_quantum, quantum_cost,
};
use qlap::circuits::{block_encode_incidence, dicke_circuit, prepare_state, Registers};
use qlap::estimate::{label_state, phase_position};
use qlap::graph::{
    argmin_bruteforce, builtin, builtin_names, enumerate_configurations, frobenius_distance_dense,
    frobenius_distance_q, frobenius_distance_sparse, quadratic_form_classical, WeightedGraph,
};
use qlap::minfind::{MinimumFinder, SearchMode};
use qlap::sim::{Statevector, DEFAULT_QUBIT_CAP};

fn report(number: u32, name: &str, pass: bool, details: &str) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    println!("criterion {number} ({name}): {verdict} - {details}");
}

fn get(name: &str) -> WeightedGraph {
    builtin(name).expect("known instance")
}

/// Builtins whose prepared state fits comfortably in this host's memory
/// (20 qubits = 16 MiB of amplitudes; ring9 needs 28 qubits = 4.3 GiB).
fn exactly_simulable() -> Vec<(&'static str, WeightedGraph)> {
    builtin_names()
        .iter()
        .map(|&name| (name, get(name)))
        .filter(|(_, g)| {
            Registers::for_graph(g, 0, DEFAULT_QUBIT_CAP)
                .map(|r| r.total_qubits() <= 20)
                .unwrap_or(false)
        })
        .collect()
}

#[test]
fn criterion_1_distance_oracles_agree() {
    let start = Instant::now();
    let mut checked = 0usize;
    let mut max_spread: f64 = 0.0;
    for &name in builtin_names() {
        let g = get(name);
        for x in 0..=g.edge_count() {
            for config in enumerate_configurations(g.edge_count(), x).unwrap() {
                let dense = frobenius_distance_dense(&g, &config).unwrap();
                let sparse = frobenius_distance_sparse(&g, &config).unwrap();
                let quad = frobenius_distance_q(&g, &config).unwrap();
                max_spread = max_spread
                    .max((dense - sparse).abs())
                    .max((dense - quad).abs());
                checked += 1;
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    let pass = max_spread <= 1e-12 && elapsed < 1.0;
    report(
        1,
        "distance oracles agree",
        pass,
        &format!(
            "{} graphs, {checked} patterns, max spread {max_spread:.2e}, {elapsed:.2}s",
            builtin_names().len()
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_2_hamming_weight_superpositions() {
    let mut worst: f64 = 0.0;
    for qubits in 1..=12usize {
        for weight in 0..=qubits {
            let circuit = dicke_circuit(qubits, weight).unwrap();
            let mut state = Statevector::zero_state(qubits);
            state.run(&circuit);
            let expected = 1.0
                / (qlap::graph::configuration_count(qubits, weight) as f64).sqrt();
            for index in 0..state.dim() {
                let amp = state.amplitude(index);
                let target = if (index as u64).count_ones() as usize == weight {
                    Complex64::new(expected, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                };
                worst = worst.max((amp - target).norm());
            }
        }
    }

    let circuit = dicke_circuit(4, 2).unwrap();
    let mut state = Statevector::zero_state(4);
    state.run(&circuit);
    let support: BTreeSet<usize> = (0..state.dim())
        .filter(|&i| state.amplitude(i).norm() > 1e-10)
        .collect();
    let expected_support: BTreeSet<usize> = [3, 5, 6, 9, 10, 12].into_iter().collect();

    let pass = worst <= 1e-10 && support == expected_support;
    report(
        2,
        "weight-x superpositions",
        pass,
        &format!("qubits 1..=12, all weights, max amplitude error {worst:.2e}, 4-choose-2 support {support:?}"),
    );
    assert!(pass);
}

#[test]
fn criterion_3_success_probability_law() {
    let start = Instant::now();
    let instances = exactly_simulable();
    let mut covered = Vec::new();
    let mut max_dev: f64 = 0.0;
    let mut checked = 0usize;
    for (name, g) in &instances {
        covered.push(*name);
        for x in 1..=g.edge_count() {
            let prep = prepare_state(g, x, DEFAULT_QUBIT_CAP).unwrap();
            let scale = prep.alpha.powi(4) * prep.config_count as f64 * prep.weight_norm;
            for config in enumerate_configurations(g.edge_count(), x).unwrap() {
                let measured = prep.success_probability(&config);
                let predicted = frobenius_distance_sparse(g, &config).unwrap() / scale;
                max_dev = max_dev.max((measured - predicted).abs());
                checked += 1;
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    let pass = max_dev <= 1e-9 && elapsed < 10.0;
    report(
        3,
        "success probability law",
        pass,
        &format!(
            "{covered:?} (ring9 needs 28 qubits, beyond exact simulation here), \
             {checked} patterns, max |measured - predicted| {max_dev:.2e}, {elapsed:.2}s"
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_4_sampling_convergence() {
    let start = Instant::now();
    let g = get("demo4");
    let seeds: Vec<u64> = (0..10).collect();
    let grid = [10_000, 100_000, 1_000_000, 10_000_000];
    let study = convergence_study(&g, 2, &grid, &seeds, DEFAULT_QUBIT_CAP).unwrap();
    let elapsed = start.elapsed().as_secs_f64();
    let pass = (-0.6..=-0.4).contains(&study.slope)
        && study.error_drop() >= 20.0
        && elapsed < 300.0;
    report(
        4,
        "sampling convergence",
        pass,
        &format!(
            "demo4 x=2, shots 1e4..1e7, 10 seeds: slope {:.3}, error drop {:.1}x, {elapsed:.1}s",
            study.slope,
            study.error_drop()
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_5_phase_labels_concentrate() {
    let start = Instant::now();
    let phase_bits = 6;
    let floor = 8.0 / (PI * PI);
    let mut min_mass = f64::INFINITY;
    for (name, x) in [("p3", 1usize), ("demo4", 1), ("demo4", 2)] {
        let g = get(name);
        let labeled = label_state(&g, x, phase_bits, DEFAULT_QUBIT_CAP).unwrap();
        let w: f64 = g.weights().iter().map(|b| b * b).sum();
        let scale = labeled.regs.alpha().powi(4) * w;
        for config in enumerate_configurations(g.edge_count(), x).unwrap() {
            let p = frobenius_distance_sparse(&g, &config).unwrap() / scale;
            let center = phase_position(p, phase_bits);
            let mass = labeled.label_mass_within(&config, center, 1.0);
            min_mass = min_mass.min(mass);
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    let pass = min_mass >= floor && elapsed < 60.0;
    report(
        5,
        "phase labels concentrate",
        pass,
        &format!(
            "p3 x=1 and demo4 x=1,2 at 6 phase bits: min within-one-step mass \
             {min_mass:.4} vs 8/pi^2 = {floor:.4}, {elapsed:.1}s"
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_6_minimum_finding() {
    let start = Instant::now();
    let seeds: Vec<u64> = (0..100).collect();
    let mut lines = Vec::new();
    let mut pass = true;

    for (name, x, mode, phase_bits) in [
        ("demo4", 1usize, SearchMode::Full, 8usize),
        ("demo4", 2, SearchMode::Full, 8),
        ("ring9", 2, SearchMode::Hybrid, 16),
    ] {
        let g = get(name);
        let finder = MinimumFinder::new(&g, x, mode, phase_bits, DEFAULT_QUBIT_CAP).unwrap();
        let (argmin, _) = argmin_bruteforce(&g, x).unwrap();
        let target = argmin.to_string();
        let mut hits = 0usize;
        let mut budget_ok = true;
        for &seed in &seeds {
            let outcome = finder.run(seed).unwrap();
            budget_ok &= outcome.steps_used <= outcome.budget;
            hits += usize::from(outcome.best == target);
        }
        pass &= hits >= 50 && budget_ok;
        let tag = match mode {
            SearchMode::Full => "full",
            SearchMode::Hybrid => "hybrid",
        };
        lines.push(format!("{name} x={x} {tag}: {hits}/100 within budget"));
        assert!(budget_ok, "{name} x={x}: a run exceeded its step budget");
    }

    let elapsed = start.elapsed().as_secs_f64();
    pass &= elapsed < 600.0;
    report(
        6,
        "minimum finding",
        pass,
        &format!("{}, {elapsed:.0}s", lines.join("; ")),
    );
    assert!(pass);
}

#[test]
fn criterion_7_quadratic_forms() {
    let instances = exactly_simulable();
    let mut covered = Vec::new();
    let mut max_diff: f64 = 0.0;
    let mut max_const: f64 = 0.0;
    let mut rng = ChaCha12Rng::seed_from_u64(42);
    for (name, g) in &instances {
        covered.push(*name);
        let prep = prepare_state(g, 1, DEFAULT_QUBIT_CAP).unwrap();
        for config in enumerate_configurations(g.edge_count(), 1).unwrap() {
            for _ in 0..20 {
                let a: Vec<f64> = (0..g.vertex_count())
                    .map(|_| rng.gen_range(-1.0..1.0))
                    .collect();
                let classical = quadratic_form_classical(g, &config, &a).unwrap();
                let quantum = quadratic_form_quantum(g, &prep, &config, &a).unwrap();
                max_diff = max_diff.max((classical - quantum).abs());
            }
            let ones = vec![1.0; g.vertex_count()];
            let constant = quadratic_form_quantum(g, &prep, &config, &ones).unwrap();
            max_const = max_const.max(constant.abs());
        }
    }
    let pass = max_diff <= 1e-8 && max_const <= 1e-10;
    report(
        7,
        "quadratic forms",
        pass,
        &format!(
            "{covered:?} (ring9 needs 28 qubits, beyond exact simulation here), 20 vectors \
             per pattern: max |classical - overlap| {max_diff:.2e}, max constant-vector value {max_const:.2e}"
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_8_cost_crossover() {
    let eps = 0.1;
    let mut crossovers = Vec::new();
    let mut pass = true;
    for x in [1u32, 2, 3] {
        let n0 = match crossover_size(x, eps) {
            Some(n0) => n0,
            None => {
                pass = false;
                crossovers.push(format!("x={x}: none"));
                continue;
            }
        };
        if n0 > 3 {
            pass &= quantum_cost(n0 - 1, x, eps) >= classical_cost(n0 - 1, x);
        }
        let mut grid = vec![n0];
        let mut n = n0;
        while n < 1_000_000_000 {
            n = (n * 10).min(1_000_000_000);
            grid.push(n);
        }
        for pair in grid.windows(2) {
            pass &= quantum_cost(pair[1], x, eps) > quantum_cost(pair[0], x, eps);
            pass &= classical_cost(pair[1], x) > classical_cost(pair[0], x);
        }
        for &n in &grid {
            pass &= quantum_cost(n, x, eps) < classical_cost(n, x);
        }
        crossovers.push(format!("x={x}: {n0}"));
    }
    report(
        8,
        "cost model crossover",
        pass,
        &format!(
            "eps {eps}: thresholds {}, both curves monotone, quantum below classical above each",
            crossovers.join(", ")
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_9_block_extraction() {
    let mut covered = 0usize;
    let mut max_dev: f64 = 0.0;
    for &name in builtin_names() {
        let g = get(name);
        let enc = block_encode_incidence(&g);
        if enc.block_bits > 4 {
            continue;
        }
        covered += 1;
        let dim = 1usize << enc.block_bits;
        let inc = g.incidence();
        for j in 0..dim {
            let mut state = Statevector::basis_state(enc.circuit.qubits(), j);
            state.run(&enc.circuit);
            for i in 0..dim {
                let expected = if i < g.vertex_count() && j < g.edge_count() {
                    let (tail, head) = inc.column(j);
                    if i == tail {
                        1.0
                    } else if i == head {
                        -1.0
                    } else {
                        0.0
                    }
                } else {
                    0.0
                };
                let block = state.amplitude(i);
                max_dev =
                    max_dev.max((block - Complex64::new(expected / enc.alpha, 0.0)).norm());
            }
        }
    }
    let pass = covered == builtin_names().len() && max_dev <= 1e-10;
    report(
        9,
        "block extraction",
        pass,
        &format!("{covered} graphs, max entry deviation {max_dev:.2e}"),
    );
    assert!(pass);
}
