//! State preparation for the distance pipeline.
//!
//! The full register is laid out little-endian as
//!
//! ```text
//! [pattern: N] [edge pair 0: 2k+1] [edge pair 1: 2k+1] [flag: 1] [phase: a]
//! ```
//!
//! where `k = max(ceil(log2 N), ceil(log2 M))` and each edge segment is
//! internally `[system: k][index: k][rotation ancilla: 1]`. Pattern qubit
//! `i` holds the removal bit of edge `i`. The edge label of segment `r`
//! lives in the low `ceil(log2 N)` system bits; after the incidence block
//! is applied, the system register instead carries a vertex label in its
//! low `ceil(log2 M)` bits, and everything above (the unused system
//! bits, the index register, and the rotation ancilla) must be zero for
//! the application to have succeeded.

use std::ops::Range;

use crate::error::{Error, Result};
use crate::graph::{configuration_count, Configuration, WeightedGraph};
use crate::sim::{check_qubit_cap, Circuit, Control, Gate, Statevector};

fn bits_for(count: usize) -> usize {
    if count <= 1 {
        0
    } else {
        (count - 1).ilog2() as usize + 1
    }
}

/// Qubit layout for a given graph, with an optional phase-readout
/// register appended at the top.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Registers {
    n_edges: usize,
    n_vertices: usize,
    edge_bits: usize,
    vertex_bits: usize,
    block_bits: usize,
    phase_bits: usize,
    total: usize,
}

impl Registers {
    pub fn for_graph(graph: &WeightedGraph, phase_bits: usize, cap: usize) -> Result<Self> {
        let edge_bits = bits_for(graph.edge_count());
        let vertex_bits = bits_for(graph.vertex_count());
        let block_bits = edge_bits.max(vertex_bits);
        let total = graph.edge_count() + 2 * (2 * block_bits + 1) + 1 + phase_bits;
        check_qubit_cap(total, cap)?;
        Ok(Self {
            n_edges: graph.edge_count(),
            n_vertices: graph.vertex_count(),
            edge_bits,
            vertex_bits,
            block_bits,
            phase_bits,
            total,
        })
    }

    pub fn total_qubits(&self) -> usize {
        self.total
    }

    pub fn edge_count(&self) -> usize {
        self.n_edges
    }

    pub fn edge_bits(&self) -> usize {
        self.edge_bits
    }

    pub fn vertex_bits(&self) -> usize {
        self.vertex_bits
    }

    pub fn block_bits(&self) -> usize {
        self.block_bits
    }

    pub fn phase_bits(&self) -> usize {
        self.phase_bits
    }

    /// Per-application subnormalization of the incidence block encoding.
    pub fn alpha(&self) -> f64 {
        (1u64 << self.block_bits) as f64
    }

    /// The removal-pattern register.
    pub fn pattern(&self) -> Range<usize> {
        0..self.n_edges
    }

    pub fn edge_segment_start(&self, seg: usize) -> usize {
        debug_assert!(seg < 2);
        self.n_edges + seg * (2 * self.block_bits + 1)
    }

    /// Full k-bit system register of an edge segment.
    pub fn system(&self, seg: usize) -> Range<usize> {
        let s = self.edge_segment_start(seg);
        s..s + self.block_bits
    }

    /// Low bits of the system register that carry an edge label.
    pub fn edge_label(&self, seg: usize) -> Range<usize> {
        let s = self.edge_segment_start(seg);
        s..s + self.edge_bits
    }

    /// Low bits of the system register that carry a vertex label after
    /// the incidence block has been applied.
    pub fn vertex_label(&self, seg: usize) -> Range<usize> {
        let s = self.edge_segment_start(seg);
        s..s + self.vertex_bits
    }

    pub fn index_register(&self, seg: usize) -> Range<usize> {
        let s = self.edge_segment_start(seg);
        s + self.block_bits..s + 2 * self.block_bits
    }

    pub fn rotation_ancilla(&self, seg: usize) -> usize {
        self.edge_segment_start(seg) + 2 * self.block_bits
    }

    pub fn flag(&self) -> usize {
        self.n_edges + 2 * (2 * self.block_bits + 1)
    }

    pub fn phase(&self) -> Range<usize> {
        self.flag() + 1..self.total
    }

    /// Qubits of one edge segment that must read zero after a successful
    /// block application: system bits above the vertex label, the index
    /// register, and the rotation ancilla.
    pub fn block_ancillas(&self, seg: usize) -> Vec<usize> {
        let mut qs: Vec<usize> = self.system(seg).skip(self.vertex_bits).collect();
        qs.extend(self.index_register(seg));
        qs.push(self.rotation_ancilla(seg));
        qs
    }

    /// Measurement pattern of the success subspace: flag raised, every
    /// block ancilla of both segments zero.
    pub fn success_bits(&self) -> Vec<(usize, bool)> {
        let mut bits = vec![(self.flag(), true)];
        for seg in 0..2 {
            bits.extend(self.block_ancillas(seg).into_iter().map(|q| (q, false)));
        }
        bits
    }

    /// Everything the distance encoder touches apart from the pattern
    /// register: both edge segments and the flag.
    pub fn workspace(&self) -> Range<usize> {
        self.n_edges..self.flag() + 1
    }

    /// Measurement pattern pinning the pattern register to a removal
    /// pattern.
    pub fn pattern_bits(&self, config: &Configuration) -> Vec<(usize, bool)> {
        (0..self.n_edges).map(|i| (i, config.is_removed(i))).collect()
    }

    /// One-line human-readable layout description.
    pub fn describe(&self) -> String {
        format!(
            "pattern[0..{}) sys0[{}..{}) idx0[{}..{}) rot0[{}] sys1[{}..{}) idx1[{}..{}) rot1[{}] flag[{}] phase[{}..{})",
            self.n_edges,
            self.system(0).start,
            self.system(0).end,
            self.index_register(0).start,
            self.index_register(0).end,
            self.rotation_ancilla(0),
            self.system(1).start,
            self.system(1).end,
            self.index_register(1).start,
            self.index_register(1).end,
            self.rotation_ancilla(1),
            self.flag(),
            self.phase().start,
            self.phase().end,
        )
    }
}

/// Prepares the uniform superposition of all weight-`weight` bit strings
/// on `qubits` qubits by split-and-shift: seed `weight` ones at the top,
/// then cascade amplitude-moving blocks down the register.
pub fn dicke_circuit(qubits: usize, weight: usize) -> Result<Circuit> {
    if weight > qubits || qubits == 0 {
        return Err(Error::XOutOfRange {
            x: weight,
            edges: qubits,
        });
    }
    let mut circ = Circuit::new(qubits);
    if weight == 0 {
        return Ok(circ);
    }
    for q in qubits - weight..qubits {
        circ.push(Gate::x(q));
    }
    for m in (2..=qubits).rev() {
        let split = weight.min(m - 1);
        push_shift_block(&mut circ, m - 2, m - 1, 1.0 / m as f64, None);
        for s in 2..=split {
            push_shift_block(&mut circ, m - 1 - s, m - 1, s as f64 / m as f64, Some(m - s));
        }
    }
    Ok(circ)
}

/// On the `|01>`/`|10>` pair of qubits `(a, b)` this block acts as
/// `|01> -> sqrt(p)|01> + sqrt(1-p)|10>`, leaving `|00>` and `|11>`
/// fixed; `extra`, when present, gates the rotation on a third qubit.
fn push_shift_block(circ: &mut Circuit, a: usize, b: usize, p: f64, extra: Option<usize>) {
    let theta = -2.0 * p.sqrt().acos();
    circ.push(Gate::cx(b, a));
    let mut rot = Gate::ry(b, theta).controlled(Control::one(a));
    if let Some(c) = extra {
        rot = rot.controlled(Control::one(c));
    }
    circ.push(rot);
    circ.push(Gate::cx(b, a));
}

/// Rotation cascade preparing `sum_j (v_j / |v|) |j>` from `|0>` on the
/// `bits` qubits starting at `first`, for nonnegative `v`. Descends from
/// the most significant label bit, one controlled rotation per internal
/// node with nonzero mass.
fn amplitude_tree(values: &[f64], first: usize, bits: usize) -> Vec<Gate> {
    debug_assert!(values.len() <= 1 << bits);
    debug_assert!(values.iter().all(|&v| v >= 0.0));
    let mut levels: Vec<Vec<f64>> = Vec::with_capacity(bits + 1);
    let mut leaves = vec![0.0; 1 << bits];
    for (j, v) in values.iter().enumerate() {
        leaves[j] = v * v;
    }
    levels.push(leaves);
    while levels.last().unwrap().len() > 1 {
        let next: Vec<f64> = levels
            .last()
            .unwrap()
            .chunks(2)
            .map(|c| c[0] + c[1])
            .collect();
        levels.push(next);
    }
    let mut gates = Vec::new();
    for fixed in 0..bits {
        let parents = &levels[bits - fixed];
        let children = &levels[bits - fixed - 1];
        for p in 0..1usize << fixed {
            if parents[p] <= 0.0 {
                continue;
            }
            let theta = 2.0 * children[2 * p + 1].sqrt().atan2(children[2 * p].sqrt());
            if theta == 0.0 {
                continue;
            }
            let controls = (0..fixed).map(|t| Control {
                qubit: first + bits - 1 - t,
                value: p >> (fixed - 1 - t) & 1 == 1,
            });
            gates.push(Gate::ry(first + bits - 1 - fixed, theta).controlled_by(controls));
        }
    }
    gates
}

/// Loads the weight superposition `sum_j (b_j / sqrt(W)) |j>|j>` onto the
/// two edge-label registers: a rotation cascade on segment 0 followed by
/// a bitwise copy onto segment 1.
pub fn encode_weights(graph: &WeightedGraph, regs: &Registers) -> Circuit {
    let mut circ = Circuit::new(regs.total_qubits());
    for gate in amplitude_tree(
        &graph.weights(),
        regs.edge_label(0).start,
        regs.edge_bits(),
    ) {
        circ.push(gate);
    }
    for t in 0..regs.edge_bits() {
        circ.push(Gate::cx(
            regs.edge_label(0).start + t,
            regs.edge_label(1).start + t,
        ));
    }
    circ
}

/// A unitary on `2k+1` qubits (`[system: k][index: k][ancilla: 1]`) whose
/// top-left block is the zero-padded vertex-by-edge incidence matrix
/// scaled by `1/alpha`: with index register and ancilla zeroed on input,
/// postselecting them zero on output leaves
/// `<i| system out> = entry(i, j) / alpha` for system input `|j>`.
pub struct BlockEncoding {
    pub circuit: Circuit,
    pub alpha: f64,
    pub block_bits: usize,
}

pub fn block_encode_incidence(graph: &WeightedGraph) -> BlockEncoding {
    let k = bits_for(graph.edge_count()).max(bits_for(graph.vertex_count()));
    let dim = 1usize << k;
    let mut circ = Circuit::new(2 * k + 1);
    let inc = graph.incidence();
    let entry = |i: usize, j: usize| -> f64 {
        if i >= graph.vertex_count() || j >= graph.edge_count() {
            return 0.0;
        }
        let (tail, head) = inc.column(j);
        if i == tail {
            1.0
        } else if i == head {
            -1.0
        } else {
            0.0
        }
    };
    for q in k..2 * k {
        circ.push(Gate::h(q));
    }
    for i in 0..dim {
        for j in 0..dim {
            let a = entry(i, j);
            if a == 1.0 {
                continue; // rotation angle zero
            }
            let theta = 2.0 * a.acos();
            let mut controls = Vec::with_capacity(2 * k);
            for t in 0..k {
                controls.push(Control {
                    qubit: k + t,
                    value: i >> t & 1 == 1,
                });
                controls.push(Control {
                    qubit: t,
                    value: j >> t & 1 == 1,
                });
            }
            circ.push(Gate::ry(2 * k, theta).controlled_by(controls));
        }
    }
    for t in 0..k {
        circ.push(Gate::swap(t, k + t));
    }
    for q in k..2 * k {
        circ.push(Gate::h(q));
    }
    BlockEncoding {
        circuit: circ,
        alpha: dim as f64,
        block_bits: k,
    }
}

/// Raises the flag when the edge-label register holds `edge`.
pub fn remove_single_edge(regs: &Registers, edge: usize) -> Circuit {
    debug_assert!(edge < regs.edge_count());
    let mut circ = Circuit::new(regs.total_qubits());
    circ.push(Gate::mcx(label_controls(regs, edge), regs.flag()));
    circ
}

/// Raises the flag when the edge-label register holds an edge whose
/// pattern-register bit is set, one multi-controlled X per edge.
pub fn remove_multiple_edges(regs: &Registers) -> Circuit {
    let mut circ = Circuit::new(regs.total_qubits());
    for edge in 0..regs.edge_count() {
        let mut controls = label_controls(regs, edge);
        controls.push(Control::one(edge));
        circ.push(Gate::mcx(controls, regs.flag()));
    }
    circ
}

fn label_controls(regs: &Registers, edge: usize) -> Vec<Control> {
    let label = regs.edge_label(0);
    (0..regs.edge_bits())
        .map(|t| Control {
            qubit: label.start + t,
            value: edge >> t & 1 == 1,
        })
        .collect()
}

/// Uniform superposition over all removal patterns regardless of weight.
pub fn hadamard_topology(regs: &Registers) -> Circuit {
    let mut circ = Circuit::new(regs.total_qubits());
    for q in regs.pattern() {
        circ.push(Gate::h(q));
    }
    circ
}

/// Everything after pattern preparation: weight encoding, removal
/// marking, and one incidence block application per edge segment. Acts
/// as the identity on the pattern register's computational basis, so it
/// is block-diagonal over removal patterns.
pub fn distance_encoder(graph: &WeightedGraph, regs: &Registers) -> Circuit {
    let mut circ = Circuit::new(regs.total_qubits());
    circ.append(&encode_weights(graph, regs));
    circ.append(&remove_multiple_edges(regs));
    let block = block_encode_incidence(graph);
    debug_assert_eq!(block.block_bits, regs.block_bits());
    for seg in 0..2 {
        circ.append(
            &block
                .circuit
                .shifted(regs.edge_segment_start(seg), regs.total_qubits()),
        );
    }
    circ
}

/// The fully prepared state together with the pieces the search iterate
/// and the analysis layer need.
pub struct PreparedState {
    pub regs: Registers,
    /// Hamming-weight superposition on the pattern register.
    pub topology: Circuit,
    /// The distance encoder (see [`distance_encoder`]).
    pub encoder: Circuit,
    pub state: Statevector,
    /// Block-encoding subnormalization per application.
    pub alpha: f64,
    /// Number of removal patterns of the requested weight.
    pub config_count: u64,
    /// Sum of squared edge weights.
    pub weight_norm: f64,
    pub x: usize,
}

impl PreparedState {
    /// Joint probability of landing in the success subspace with the
    /// pattern register reading `config`.
    pub fn success_probability(&self, config: &Configuration) -> f64 {
        let mut bits = self.regs.success_bits();
        bits.extend(self.regs.pattern_bits(config));
        self.state.probability_where(&bits)
    }

    /// What that probability must be for a pattern at squared distance
    /// `d`: `d / (alpha^4 S W)`.
    pub fn predicted_success(&self, d: f64) -> f64 {
        d / (self.alpha.powi(4) * self.config_count as f64 * self.weight_norm)
    }
}

/// Builds the full state: Hamming-weight superposition, then the
/// distance encoder.
pub fn prepare_state(graph: &WeightedGraph, x: usize, cap: usize) -> Result<PreparedState> {
    let regs = Registers::for_graph(graph, 0, cap)?;
    prepare_with_registers(graph, x, regs)
}

pub(crate) fn prepare_with_registers(
    graph: &WeightedGraph,
    x: usize,
    regs: Registers,
) -> Result<PreparedState> {
    let total = regs.total_qubits();
    let topology = dicke_circuit(graph.edge_count(), x)?.shifted(0, total);
    let encoder = distance_encoder(graph, &regs);
    let mut state = Statevector::zero_state(total);
    state.run(&topology);
    state.run(&encoder);
    Ok(PreparedState {
        alpha: regs.alpha(),
        regs,
        topology,
        encoder,
        state,
        config_count: configuration_count(graph.edge_count(), x),
        weight_norm: graph.total_weight_sq(),
        x,
    })
}
