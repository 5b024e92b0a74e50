//! The search iterate and phase-estimation readout that attach a
//! distance-derived label to every removal pattern.
//!
//! The iterate `Q` composes the success reflection, the inverted distance
//! encoder, the workspace-zero reflection, the encoder, and a global
//! minus sign. Because the encoder is block-diagonal over removal
//! patterns, so is `Q`; restricted to pattern `d` it rotates the plane
//! spanned by the encoded state and its success component, with
//! eigenvalues `exp(±i·theta_d)` where
//!
//! ```text
//! theta_d = 2 asin sqrt(D(d) / (alpha^4 W))
//! ```
//!
//! Phase estimation with `a` readout bits therefore concentrates the
//! phase register near `±theta_d 2^a / 2pi`; a final sign-magnitude
//! conversion folds both branches onto the same magnitude, the pattern's
//! label.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use crate::circuits::{prepare_with_registers, PreparedState, Registers};
use crate::error::Result;
use crate::graph::{configuration_count, Configuration, WeightedGraph};
use crate::sim::{Circuit, Control, Gate, Statevector};

/// `-1` on the success subspace: flag raised, all block ancillas zero.
pub fn success_reflection(regs: &Registers) -> Gate {
    Gate::global_phase(PI).controlled_by(
        regs.success_bits()
            .into_iter()
            .map(|(q, v)| Control { qubit: q, value: v }),
    )
}

/// `-1` on the all-zeros workspace (both edge segments and the flag),
/// acting trivially on the pattern and phase registers.
pub fn zero_reflection(regs: &Registers) -> Gate {
    Gate::global_phase(PI).controlled_by(regs.workspace().map(Control::zero))
}

/// One amplification step of the prepared state's encoder.
pub fn search_iterate(prep: &PreparedState) -> Circuit {
    let regs = &prep.regs;
    let mut circ = Circuit::new(regs.total_qubits());
    circ.push(success_reflection(regs));
    circ.append(&prep.encoder.inverse());
    circ.push(zero_reflection(regs));
    circ.append(&prep.encoder);
    circ.push(Gate::global_phase(PI));
    circ
}

/// Little-endian Fourier transform on qubits `0..bits`:
/// `|k> -> 2^(-bits/2) sum_j exp(2 pi i j k / 2^bits) |j>`.
pub fn qft_circuit(bits: usize) -> Circuit {
    let mut circ = Circuit::new(bits);
    for q in (0..bits).rev() {
        circ.push(Gate::h(q));
        for r in (0..q).rev() {
            circ.push(
                Gate::phase(q, PI / (1u64 << (q - r)) as f64).controlled(Control::one(r)),
            );
        }
    }
    for q in 0..bits / 2 {
        circ.push(Gate::swap(q, bits - 1 - q));
    }
    circ
}

/// In-place two's-complement to sign-magnitude conversion on the `bits`
/// qubits starting at `first` (most significant bit last): when the top
/// bit is set, the lower `bits - 1` are decremented then inverted, so
/// they end up holding the negated value modulo `2^(bits-1)`. Phase
/// readouts `k` and `2^bits - k` thereby fold onto the same magnitude.
pub fn sign_magnitude_convert(first: usize, bits: usize, width: usize) -> Circuit {
    debug_assert!(bits >= 2);
    let mut circ = Circuit::new(width);
    let msb = Control::one(first + bits - 1);
    let low = bits - 1;
    // Decrement: borrow ripples past every zero below, so flip each bit
    // whose lower neighbors are all zero, top bit first.
    for t in (1..low).rev() {
        let controls: Vec<Control> = (0..t).map(|r| Control::zero(first + r)).collect();
        circ.push(Gate::mcx(controls, first + t).controlled(msb));
    }
    circ.push(Gate::x(first).controlled(msb));
    // Then invert.
    for t in 0..low {
        circ.push(Gate::x(first + t).controlled(msb));
    }
    circ
}

/// Grid position of the phase readout for a pattern whose conditional
/// success probability (given its pattern, `D / (alpha^4 W)`) is `p`:
/// `2^bits asin(sqrt p) / pi`.
pub fn phase_position(p: f64, bits: usize) -> f64 {
    (1u64 << bits) as f64 * p.sqrt().asin() / PI
}

/// Nearest label on the `bits`-bit readout grid (magnitudes occupy the
/// lower `bits - 1` of them).
pub fn quantized_label(p: f64, bits: usize) -> u64 {
    let top = (1u64 << (bits - 1)) - 1;
    (phase_position(p, bits).round() as u64).min(top)
}

/// The fully labeled state: the prepared state, phase-estimated and
/// sign-magnitude converted, with the joint (pattern, label) mass table
/// extracted.
pub struct LabeledState {
    pub regs: Registers,
    pub state: Statevector,
    pub x: usize,
    pub config_count: u64,
    pub phase_bits: usize,
    masses: BTreeMap<(u64, u64), f64>,
}

/// The complete labeling circuit: pattern superposition, distance
/// encoder, Hadamard wall on the phase register, controlled iterate
/// powers, inverse Fourier transform, sign-magnitude conversion.
pub fn labeling_pipeline(prep: &PreparedState) -> Circuit {
    let regs = &prep.regs;
    let total = regs.total_qubits();
    let phase = regs.phase();
    let bits = regs.phase_bits();
    let iterate = search_iterate(prep);
    let mut circ = Circuit::new(total);
    circ.append(&prep.topology);
    circ.append(&prep.encoder);
    for q in phase.clone() {
        circ.push(Gate::h(q));
    }
    for t in 0..bits {
        let powered = iterate.controlled(Control::one(phase.start + t));
        for _ in 0..1u64 << t {
            circ.append(&powered);
        }
    }
    circ.append(&qft_circuit(bits).inverse().shifted(phase.start, total));
    circ.append(&sign_magnitude_convert(phase.start, bits, total));
    circ
}

/// Runs the labeling pipeline from the all-zeros state and tabulates the
/// joint (pattern, label) masses.
pub fn label_state(
    graph: &WeightedGraph,
    x: usize,
    phase_bits: usize,
    cap: usize,
) -> Result<LabeledState> {
    let regs = Registers::for_graph(graph, phase_bits, cap)?;
    let prep = prepare_with_registers(graph, x, regs)?;
    let mut state = Statevector::zero_state(prep.regs.total_qubits());
    state.run(&labeling_pipeline(&prep));
    let regs = prep.regs;
    let masses = joint_masses(&state, &regs, graph.edge_count(), phase_bits);
    Ok(LabeledState {
        regs,
        state,
        x,
        config_count: configuration_count(graph.edge_count(), x),
        phase_bits,
        masses,
    })
}

/// Groups the squared amplitudes of `state` by (pattern register
/// content, phase register magnitude).
pub(crate) fn joint_masses(
    state: &Statevector,
    regs: &Registers,
    edges: usize,
    phase_bits: usize,
) -> BTreeMap<(u64, u64), f64> {
    let pattern_mask = if edges == 64 {
        u64::MAX
    } else {
        (1u64 << edges) - 1
    };
    let mag_mask = (1u64 << (phase_bits - 1)) - 1;
    let phase_start = regs.phase().start;
    let mut masses = BTreeMap::new();
    for (i, amp) in state.amplitudes().iter().enumerate() {
        let w = amp.norm_sqr();
        if w == 0.0 {
            continue;
        }
        let pattern = i as u64 & pattern_mask;
        let magnitude = (i >> phase_start) as u64 & mag_mask;
        *masses.entry((pattern, magnitude)).or_insert(0.0) += w;
    }
    masses
}

impl LabeledState {
    /// Joint probability of measuring `pattern` on the pattern register
    /// and `label` on the magnitude part of the phase register.
    pub fn masses(&self) -> &BTreeMap<(u64, u64), f64> {
        &self.masses
    }

    /// Marginal probability of a pattern (exactly `1/S` for patterns of
    /// the prepared weight).
    pub fn pattern_mass(&self, config: &Configuration) -> f64 {
        let mask = config.register_index() as u64;
        self.masses
            .iter()
            .filter(|((p, _), _)| *p == mask)
            .map(|(_, w)| w)
            .sum()
    }

    /// Label distribution conditioned on a pattern, normalized.
    pub fn conditional_labels(&self, config: &Configuration) -> Vec<(u64, f64)> {
        let mask = config.register_index() as u64;
        let total = self.pattern_mass(config);
        self.masses
            .iter()
            .filter(|((p, _), _)| *p == mask)
            .map(|(&(_, l), &w)| (l, w / total))
            .collect()
    }

    /// Conditional probability that the pattern's label lands within
    /// `radius` grid steps of `center`.
    pub fn label_mass_within(&self, config: &Configuration, center: f64, radius: f64) -> f64 {
        self.conditional_labels(config)
            .into_iter()
            .filter(|&(l, _)| (l as f64 - center).abs() <= radius)
            .map(|(_, w)| w)
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::prepare_state;
    use crate::graph::{builtin, enumerate_configurations, frobenius_distance_sparse};
    use crate::sim::DEFAULT_QUBIT_CAP;
    use approx::assert_abs_diff_eq;
    use num_complex::Complex64;

    #[test]
    fn fourier_circuit_matches_transform_matrix() {
        for bits in 1..=4usize {
            let dim = 1usize << bits;
            let circ = qft_circuit(bits);
            for k in 0..dim {
                let mut state = Statevector::basis_state(bits, k);
                state.run(&circ);
                for j in 0..dim {
                    let want = Complex64::cis(
                        2.0 * PI * (j as f64) * (k as f64) / dim as f64,
                    ) / (dim as f64).sqrt();
                    let got = state.amplitude(j);
                    assert_abs_diff_eq!(got.re, want.re, epsilon = 1e-12);
                    assert_abs_diff_eq!(got.im, want.im, epsilon = 1e-12);
                }
            }
        }
    }

    #[test]
    fn phase_estimation_reads_synthetic_phases_exactly() {
        // One work qubit in |1> under a pure phase gate with an on-grid
        // angle: the readout must be deterministic.
        let bits = 5;
        for k in [0usize, 1, 11, 16, 27, 31] {
            let phi = 2.0 * PI * k as f64 / 32.0;
            let mut state = Statevector::zero_state(bits + 1);
            state.apply(&Gate::x(0)); // eigenstate of the phase gate
            for t in 0..bits {
                state.apply(&Gate::h(1 + t));
            }
            for t in 0..bits {
                for _ in 0..1u64 << t {
                    state.apply(&Gate::phase(0, phi).controlled(Control::one(1 + t)));
                }
            }
            state.run(&qft_circuit(bits).inverse().shifted(1, bits + 1));
            let expect = 1 | k << 1;
            assert_abs_diff_eq!(state.probability(expect), 1.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn sign_magnitude_truth_table() {
        let bits = 4;
        let circ = sign_magnitude_convert(0, bits, bits);
        for k in 0..1usize << bits {
            let mut state = Statevector::basis_state(bits, k);
            state.run(&circ);
            let expect = if k >> (bits - 1) == 0 {
                k
            } else {
                let low = (1usize << (bits - 1)) - 1;
                1 << (bits - 1) | (k.wrapping_neg() & low)
            };
            assert_abs_diff_eq!(state.probability(expect), 1.0, epsilon = 1e-12);
        }
        // Spot check: 11 = -5 mod 16 becomes sign 1, magnitude 5.
        let mut state = Statevector::basis_state(4, 0b1011);
        state.run(&circ);
        assert_abs_diff_eq!(state.probability(0b1101), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn iterate_rotates_success_amplitude() {
        // After j steps the per-pattern success probability must follow
        // sin^2((2j+1) phi_d) with phi_d = asin sqrt(D/(alpha^4 W)).
        let g = builtin("p3w").unwrap();
        let prep = prepare_state(&g, 1, DEFAULT_QUBIT_CAP).unwrap();
        let iterate = search_iterate(&prep);
        let mut state = prep.state.clone();
        let s = prep.config_count as f64;
        for j in 0..4u32 {
            for config in enumerate_configurations(2, 1).unwrap() {
                let d = frobenius_distance_sparse(&g, &config).unwrap();
                let phi = (d / (prep.alpha.powi(4) * prep.weight_norm)).sqrt().asin();
                let mut bits = prep.regs.success_bits();
                bits.extend(prep.regs.pattern_bits(&config));
                let got = state.probability_where(&bits);
                let want = ((2 * j + 1) as f64 * phi).sin().powi(2) / s;
                assert_abs_diff_eq!(got, want, epsilon = 1e-10);
            }
            state.run(&iterate);
        }
    }

    #[test]
    fn iterate_block_spectrum_single_edge() {
        // One edge between two vertices: D = 4, alpha^4 = 16, W = 1 give
        // phi = asin(1/2), so within the pattern-1 block the eigenvalues
        // are exp(±i pi/3) on the rotation plane and ±1 off it.
        let g = WeightedGraph::new(2, vec![(0, 1, 1.0)]).unwrap();
        let prep = prepare_state(&g, 1, DEFAULT_QUBIT_CAP).unwrap();
        assert_block_spectrum(&prep, 1, 2.0 * (0.5f64).asin());
    }

    #[test]
    fn iterate_block_spectrum_two_edge_path() {
        let g = builtin("p3").unwrap();
        let prep = prepare_state(&g, 1, DEFAULT_QUBIT_CAP).unwrap();
        let phi = (4.0 / (prep.alpha.powi(4) * prep.weight_norm)).sqrt().asin();
        assert_block_spectrum(&prep, 0b01, 2.0 * phi); // remove edge 0
    }

    /// The iterate is unitary, hence diagonalizable, so its spectrum on a
    /// pattern block lies in {exp(±i theta), ±1} if and only if
    /// Q^4 - 2cos(theta) Q^3 + 2cos(theta) Q - I kills every block
    /// vector. Checks that on random vectors, and that the iterate never
    /// leaks amplitude out of the block.
    fn assert_block_spectrum(prep: &PreparedState, pattern: usize, theta: f64) {
        use rand::{Rng, SeedableRng};
        let regs = &prep.regs;
        let iterate = search_iterate(prep);
        let qubits = regs.total_qubits();
        let pattern_qubits = regs.pattern().len();
        let dim = 1usize << qubits;
        let c = theta.cos();
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(17);
        for _ in 0..4 {
            let mut amps = vec![Complex64::new(0.0, 0.0); dim];
            for (i, a) in amps.iter_mut().enumerate() {
                if i & ((1 << pattern_qubits) - 1) == pattern {
                    *a = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                }
            }
            let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
            amps.iter_mut().for_each(|a| *a /= norm);

            let mut powers = vec![amps.clone()];
            let mut state = Statevector::from_amplitudes(amps).unwrap();
            for _ in 0..4 {
                state.run(&iterate);
                powers.push(state.amplitudes().to_vec());
            }
            let mut residual: f64 = 0.0;
            let mut leaked: f64 = 0.0;
            for i in 0..dim {
                let combo = powers[4][i] - 2.0 * c * powers[3][i] + 2.0 * c * powers[1][i]
                    - powers[0][i];
                residual = residual.max(combo.norm());
                if i & ((1 << pattern_qubits) - 1) != pattern {
                    leaked += powers[1][i].norm_sqr();
                }
            }
            assert!(residual < 1e-9, "minimal polynomial residual {residual}");
            assert_abs_diff_eq!(leaked, 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn labels_concentrate_near_predicted_positions() {
        let g = builtin("p3w").unwrap();
        let bits = 5;
        let labeled = label_state(&g, 1, bits, DEFAULT_QUBIT_CAP).unwrap();
        let a4w = 256.0 * g.total_weight_sq();
        for config in enumerate_configurations(2, 1).unwrap() {
            // Pattern marginals are untouched by the readout.
            assert_abs_diff_eq!(labeled.pattern_mass(&config), 0.5, epsilon = 1e-10);
            let d = frobenius_distance_sparse(&g, &config).unwrap();
            let q = phase_position(d / a4w, bits);
            // Within one grid step of the true position: at least 8/pi^2.
            let near = labeled.label_mass_within(&config, q, 1.0);
            assert!(
                near >= 8.0 / (PI * PI),
                "mass {near} too small for position {q}"
            );
        }
        // The two patterns have distinct distances, so their dominant
        // labels must differ.
        let configs = enumerate_configurations(2, 1).unwrap();
        let best = |c: &Configuration| {
            labeled
                .conditional_labels(c)
                .into_iter()
                .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
                .unwrap()
                .0
        };
        assert_ne!(best(&configs[0]), best(&configs[1]));
    }

    #[test]
    fn quantized_labels_are_monotone_in_distance() {
        let probs = [1e-6, 1e-5, 1e-4, 1e-3, 1e-2, 0.1, 0.5, 0.9];
        let mut last = 0;
        for p in probs {
            let l = quantized_label(p, 16);
            assert!(l >= last);
            last = l;
        }
        assert_eq!(quantized_label(0.0, 8), 0);
        // Saturates at the top of the magnitude range.
        assert_eq!(quantized_label(1.0, 8), 127);
    }
}
