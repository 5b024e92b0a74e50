//! Dense statevector simulator.
//!
//! Basis states are indexed little-endian: qubit `q` contributes the bit
//! `2^q` of a basis index. Gates carry an arbitrary list of controls,
//! each of which may trigger on `|1>` (closed) or `|0>` (open). Instead
//! of scanning the whole register and testing controls per index, every
//! kernel enumerates only the subspace where the controls are satisfied,
//! so a heavily controlled gate costs `2^(qubits - controls)` updates.

use std::io::{Read, Write};

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Binomial, Distribution};

use crate::error::{Error, Result};

/// Default ceiling on register width; states above this are refused so a
/// typo cannot ask for terabytes of amplitudes.
pub const DEFAULT_QUBIT_CAP: usize = 30;

/// One control condition: the gate acts only where `qubit` holds `value`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Control {
    pub qubit: usize,
    pub value: bool,
}

impl Control {
    /// Control that triggers on `|1>`.
    pub fn one(qubit: usize) -> Self {
        Self { qubit, value: true }
    }

    /// Control that triggers on `|0>`.
    pub fn zero(qubit: usize) -> Self {
        Self {
            qubit,
            value: false,
        }
    }
}

/// The uncontrolled part of a gate.
#[derive(Debug, Clone, PartialEq)]
pub enum GateKind {
    H(usize),
    X(usize),
    Z(usize),
    Ry { target: usize, theta: f64 },
    /// `diag(1, e^{i phi})` on the target qubit.
    Phase { target: usize, phi: f64 },
    Swap(usize, usize),
    /// Multiplies every amplitude by `e^{i phi}`. With controls attached
    /// this becomes a relative phase, which is what a controlled version
    /// of a circuit with a global phase must produce.
    GlobalPhase(f64),
}

/// A gate: a [`GateKind`] plus any number of polarity-carrying controls.
#[derive(Debug, Clone, PartialEq)]
pub struct Gate {
    pub kind: GateKind,
    pub controls: Vec<Control>,
}

impl Gate {
    fn plain(kind: GateKind) -> Self {
        Self {
            kind,
            controls: Vec::new(),
        }
    }

    pub fn h(q: usize) -> Self {
        Self::plain(GateKind::H(q))
    }

    pub fn x(q: usize) -> Self {
        Self::plain(GateKind::X(q))
    }

    pub fn z(q: usize) -> Self {
        Self::plain(GateKind::Z(q))
    }

    pub fn ry(q: usize, theta: f64) -> Self {
        Self::plain(GateKind::Ry { target: q, theta })
    }

    pub fn phase(q: usize, phi: f64) -> Self {
        Self::plain(GateKind::Phase { target: q, phi })
    }

    pub fn swap(a: usize, b: usize) -> Self {
        Self::plain(GateKind::Swap(a, b))
    }

    pub fn global_phase(phi: f64) -> Self {
        Self::plain(GateKind::GlobalPhase(phi))
    }

    pub fn cx(control: usize, target: usize) -> Self {
        Self::x(target).controlled(Control::one(control))
    }

    pub fn mcx(controls: impl IntoIterator<Item = Control>, target: usize) -> Self {
        Self::x(target).controlled_by(controls)
    }

    pub fn mcz(controls: impl IntoIterator<Item = Control>, target: usize) -> Self {
        Self::z(target).controlled_by(controls)
    }

    pub fn mcry(controls: impl IntoIterator<Item = Control>, target: usize, theta: f64) -> Self {
        Self::ry(target, theta).controlled_by(controls)
    }

    /// Adds one control. Controls commute, so the order is irrelevant.
    pub fn controlled(mut self, control: Control) -> Self {
        self.controls.push(control);
        self
    }

    pub fn controlled_by(mut self, controls: impl IntoIterator<Item = Control>) -> Self {
        self.controls.extend(controls);
        self
    }

    pub fn inverse(&self) -> Self {
        let kind = match self.kind {
            GateKind::Ry { target, theta } => GateKind::Ry {
                target,
                theta: -theta,
            },
            GateKind::Phase { target, phi } => GateKind::Phase { target, phi: -phi },
            GateKind::GlobalPhase(phi) => GateKind::GlobalPhase(-phi),
            ref other => other.clone(),
        };
        Self {
            kind,
            controls: self.controls.clone(),
        }
    }

    /// The same gate with every qubit index moved up by `delta`.
    pub fn shifted(&self, delta: usize) -> Gate {
        let kind = match self.kind {
            GateKind::H(q) => GateKind::H(q + delta),
            GateKind::X(q) => GateKind::X(q + delta),
            GateKind::Z(q) => GateKind::Z(q + delta),
            GateKind::Ry { target, theta } => GateKind::Ry {
                target: target + delta,
                theta,
            },
            GateKind::Phase { target, phi } => GateKind::Phase {
                target: target + delta,
                phi,
            },
            GateKind::Swap(a, b) => GateKind::Swap(a + delta, b + delta),
            GateKind::GlobalPhase(phi) => GateKind::GlobalPhase(phi),
        };
        Gate {
            kind,
            controls: self
                .controls
                .iter()
                .map(|c| Control {
                    qubit: c.qubit + delta,
                    value: c.value,
                })
                .collect(),
        }
    }

    /// Qubits the uncontrolled part acts on.
    pub fn targets(&self) -> Vec<usize> {
        match self.kind {
            GateKind::H(q) | GateKind::X(q) | GateKind::Z(q) => vec![q],
            GateKind::Ry { target, .. } | GateKind::Phase { target, .. } => vec![target],
            GateKind::Swap(a, b) => vec![a, b],
            GateKind::GlobalPhase(_) => vec![],
        }
    }

    fn max_qubit(&self) -> Option<usize> {
        self.targets()
            .into_iter()
            .chain(self.controls.iter().map(|c| c.qubit))
            .max()
    }
}

impl std::fmt::Display for Gate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.kind {
            GateKind::H(q) => write!(f, "h q{q}")?,
            GateKind::X(q) => write!(f, "x q{q}")?,
            GateKind::Z(q) => write!(f, "z q{q}")?,
            GateKind::Ry { target, theta } => write!(f, "ry({theta}) q{target}")?,
            GateKind::Phase { target, phi } => write!(f, "phase({phi}) q{target}")?,
            GateKind::Swap(a, b) => write!(f, "swap q{a} q{b}")?,
            GateKind::GlobalPhase(phi) => write!(f, "gphase({phi})")?,
        }
        for c in &self.controls {
            write!(f, " {}q{}", if c.value { '+' } else { '-' }, c.qubit)?;
        }
        Ok(())
    }
}

/// An ordered gate list over a fixed register width.
#[derive(Debug, Clone, Default)]
pub struct Circuit {
    qubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(qubits: usize) -> Self {
        Self {
            qubits,
            gates: Vec::new(),
        }
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn push(&mut self, gate: Gate) {
        debug_assert!(
            gate.max_qubit().map_or(true, |q| q < self.qubits),
            "gate {gate} exceeds register of {} qubits",
            self.qubits
        );
        self.gates.push(gate);
    }

    pub fn append(&mut self, other: &Circuit) {
        debug_assert!(other.qubits <= self.qubits);
        self.gates.extend_from_slice(&other.gates);
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Gates in reverse order, each inverted.
    pub fn inverse(&self) -> Circuit {
        Circuit {
            qubits: self.qubits,
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
        }
    }

    /// Re-homes the circuit onto a `width`-qubit register with every
    /// qubit index moved up by `delta`.
    pub fn shifted(&self, delta: usize, width: usize) -> Circuit {
        let mut out = Circuit::new(width);
        for gate in &self.gates {
            out.push(gate.shifted(delta));
        }
        out
    }

    /// The same circuit with `control` added to every gate. Global
    /// phases become relative to the control, as they must.
    pub fn controlled(&self, control: Control) -> Circuit {
        Circuit {
            qubits: self.qubits.max(control.qubit + 1),
            gates: self
                .gates
                .iter()
                .map(|g| g.clone().controlled(control))
                .collect(),
        }
    }
}

/// Deposits free bits around a set of fixed bit positions, enumerating a
/// control-satisfying subspace without scanning the full register.
struct BitExpander {
    base: usize,
    // (shift into the free index, shift into the full index, run mask)
    runs: Vec<(u32, u32, usize)>,
    free_bits: u32,
}

impl BitExpander {
    fn new(qubits: usize, fixed: &[(usize, bool)]) -> Self {
        let mut positions = fixed.to_vec();
        positions.sort_by_key(|&(q, _)| q);
        debug_assert!(
            positions.windows(2).all(|w| w[0].0 != w[1].0),
            "gate reuses a qubit as target and/or control"
        );
        debug_assert!(positions.iter().all(|&(q, _)| q < qubits));
        let base = positions
            .iter()
            .filter(|&&(_, v)| v)
            .fold(0usize, |acc, &(q, _)| acc | 1 << q);
        let mut runs = Vec::new();
        let mut src = 0u32;
        let mut dst = 0usize;
        let mut next_fixed = 0usize;
        while dst < qubits {
            if next_fixed < positions.len() && positions[next_fixed].0 == dst {
                next_fixed += 1;
                dst += 1;
                continue;
            }
            let start = dst;
            while dst < qubits
                && !(next_fixed < positions.len() && positions[next_fixed].0 == dst)
            {
                dst += 1;
            }
            let len = (dst - start) as u32;
            runs.push((src, start as u32, (1usize << len) - 1));
            src += len;
        }
        Self {
            base,
            runs,
            free_bits: src,
        }
    }

    fn count(&self) -> usize {
        1usize << self.free_bits
    }

    #[inline]
    fn expand(&self, free: usize) -> usize {
        let mut idx = self.base;
        for &(src, dst, mask) in &self.runs {
            idx |= ((free >> src) & mask) << dst;
        }
        idx
    }
}

/// A pure state of `qubits` qubits as a dense amplitude vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Statevector {
    qubits: usize,
    amps: Vec<Complex64>,
}

impl Statevector {
    /// `|0...0>`.
    pub fn zero_state(qubits: usize) -> Self {
        Self::basis_state(qubits, 0)
    }

    /// The computational basis state `|index>`.
    pub fn basis_state(qubits: usize, index: usize) -> Self {
        assert!(qubits < usize::BITS as usize, "register too wide");
        let dim = 1usize << qubits;
        assert!(index < dim, "basis index {index} out of range");
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index] = Complex64::new(1.0, 0.0);
        Self { qubits, amps }
    }

    /// Wraps raw amplitudes; the length must be a power of two.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let dim = amps.len();
        if dim == 0 || !dim.is_power_of_two() {
            return Err(Error::Dimension {
                what: "amplitude vector",
                expected: dim.next_power_of_two().max(2),
                got: dim,
            });
        }
        Ok(Self {
            qubits: dim.trailing_zeros() as usize,
            amps,
        })
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amps[index]
    }

    pub fn probability(&self, index: usize) -> f64 {
        self.amps[index].norm_sqr()
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `<self|other>`.
    pub fn overlap(&self, other: &Statevector) -> Result<Complex64> {
        if self.qubits != other.qubits {
            return Err(Error::Dimension {
                what: "statevector",
                expected: self.qubits,
                got: other.qubits,
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub fn apply(&mut self, gate: &Gate) {
        debug_assert!(
            gate.max_qubit().map_or(true, |q| q < self.qubits),
            "gate {gate} exceeds register of {} qubits",
            self.qubits
        );
        let controls: Vec<(usize, bool)> =
            gate.controls.iter().map(|c| (c.qubit, c.value)).collect();
        match gate.kind {
            GateKind::H(t) => {
                let s = std::f64::consts::FRAC_1_SQRT_2;
                self.two_level(t, &controls, |x, y| (s * (x + y), s * (x - y)));
            }
            GateKind::X(t) => {
                self.two_level(t, &controls, |x, y| (y, x));
            }
            GateKind::Ry { target, theta } => {
                let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
                self.two_level(target, &controls, |x, y| (c * x - s * y, s * x + c * y));
            }
            GateKind::Z(t) => {
                let mut fixed = controls;
                fixed.push((t, true));
                self.scale_subspace(&fixed, Complex64::new(-1.0, 0.0));
            }
            GateKind::Phase { target, phi } => {
                let mut fixed = controls;
                fixed.push((target, true));
                self.scale_subspace(&fixed, Complex64::cis(phi));
            }
            GateKind::GlobalPhase(phi) => {
                self.scale_subspace(&controls, Complex64::cis(phi));
            }
            GateKind::Swap(a, b) => {
                let mut fixed = controls;
                fixed.push((a, true));
                fixed.push((b, false));
                let exp = BitExpander::new(self.qubits, &fixed);
                let flip = (1usize << a) | (1usize << b);
                for f in 0..exp.count() {
                    let i = exp.expand(f);
                    self.amps.swap(i, i ^ flip);
                }
            }
        }
    }

    fn two_level(
        &mut self,
        target: usize,
        controls: &[(usize, bool)],
        map: impl Fn(Complex64, Complex64) -> (Complex64, Complex64),
    ) {
        let mut fixed = controls.to_vec();
        fixed.push((target, false));
        let exp = BitExpander::new(self.qubits, &fixed);
        let bit = 1usize << target;
        for f in 0..exp.count() {
            let i0 = exp.expand(f);
            let i1 = i0 | bit;
            let (x, y) = (self.amps[i0], self.amps[i1]);
            let (nx, ny) = map(x, y);
            self.amps[i0] = nx;
            self.amps[i1] = ny;
        }
    }

    fn scale_subspace(&mut self, fixed: &[(usize, bool)], factor: Complex64) {
        let exp = BitExpander::new(self.qubits, fixed);
        for f in 0..exp.count() {
            let i = exp.expand(f);
            self.amps[i] *= factor;
        }
    }

    pub fn run(&mut self, circuit: &Circuit) {
        debug_assert_eq!(circuit.qubits(), self.qubits);
        for gate in circuit.gates() {
            self.apply(gate);
        }
    }

    /// Total probability of the subspace where every listed qubit holds
    /// its listed value.
    pub fn probability_where(&self, fixed: &[(usize, bool)]) -> f64 {
        let exp = BitExpander::new(self.qubits, fixed);
        (0..exp.count())
            .map(|f| self.amps[exp.expand(f)].norm_sqr())
            .sum()
    }

    /// Projects onto the subspace where every listed qubit holds its
    /// listed value and renormalizes. Returns the projection probability
    /// together with the post-measurement state (same register width).
    pub fn postselect(&self, fixed: &[(usize, bool)]) -> Result<(f64, Statevector)> {
        let prob = self.probability_where(fixed);
        if prob <= f64::MIN_POSITIVE {
            return Err(Error::ZeroProbability);
        }
        let scale = 1.0 / prob.sqrt();
        let exp = BitExpander::new(self.qubits, fixed);
        let mut amps = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        for f in 0..exp.count() {
            let i = exp.expand(f);
            amps[i] = self.amps[i] * scale;
        }
        Ok((prob, Statevector {
            qubits: self.qubits,
            amps,
        }))
    }

    /// Samples `shots` measurements of all qubits at once, multinomially.
    /// Returns `(basis index, count)` pairs in ascending index order,
    /// listing only observed outcomes. Deterministic for a given RNG
    /// state: outcomes are visited in ascending order and each count is
    /// drawn from a binomial on the remaining shots.
    pub fn measure_all<R: Rng>(&self, shots: u64, rng: &mut R) -> Vec<(usize, u64)> {
        let mut counts = Vec::new();
        let mut remaining_shots = shots;
        let mut remaining_prob: f64 = self.amps.iter().map(|a| a.norm_sqr()).sum();
        for (i, a) in self.amps.iter().enumerate() {
            if remaining_shots == 0 {
                break;
            }
            let p = a.norm_sqr();
            if p <= 0.0 {
                continue;
            }
            let n = if p >= remaining_prob {
                remaining_shots
            } else {
                let ratio = (p / remaining_prob).clamp(0.0, 1.0);
                Binomial::new(remaining_shots, ratio)
                    .expect("ratio is a probability")
                    .sample(rng)
            };
            if n > 0 {
                counts.push((i, n));
            }
            remaining_shots -= n;
            remaining_prob -= p;
        }
        if remaining_shots > 0 {
            // Floating-point drift starved the tail; charge the leftovers
            // to the last outcome that had mass.
            match counts.last_mut() {
                Some((_, n)) => *n += remaining_shots,
                None => counts.push((self.amps.len() - 1, remaining_shots)),
            }
        }
        counts
    }

    /// Writes `QSTATEV1`, a little-endian `u32` qubit count, then the
    /// amplitudes as interleaved little-endian `f64` (re, im) pairs.
    pub fn write_binary<W: Write>(&self, w: &mut W) -> std::io::Result<()> {
        w.write_all(b"QSTATEV1")?;
        w.write_all(&(self.qubits as u32).to_le_bytes())?;
        for a in &self.amps {
            w.write_all(&a.re.to_le_bytes())?;
            w.write_all(&a.im.to_le_bytes())?;
        }
        Ok(())
    }

    pub fn read_binary<R: Read>(r: &mut R) -> Result<Self> {
        let mut magic = [0u8; 8];
        r.read_exact(&mut magic)?;
        if &magic != b"QSTATEV1" {
            return Err(Error::Unsupported {
                what: "statevector file magic",
                got: String::from_utf8_lossy(&magic).into_owned(),
            });
        }
        let mut word = [0u8; 4];
        r.read_exact(&mut word)?;
        let qubits = u32::from_le_bytes(word) as usize;
        if qubits >= usize::BITS as usize {
            return Err(Error::Unsupported {
                what: "statevector width",
                got: qubits.to_string(),
            });
        }
        let dim = 1usize << qubits;
        let mut amps = Vec::with_capacity(dim);
        let mut pair = [0u8; 16];
        for _ in 0..dim {
            r.read_exact(&mut pair)?;
            let re = f64::from_le_bytes(pair[..8].try_into().unwrap());
            let im = f64::from_le_bytes(pair[8..].try_into().unwrap());
            amps.push(Complex64::new(re, im));
        }
        Ok(Self { qubits, amps })
    }
}

/// Refuses register widths above `cap` (see [`DEFAULT_QUBIT_CAP`]).
pub fn check_qubit_cap(required: usize, cap: usize) -> Result<()> {
    if required > cap {
        return Err(Error::QubitCap { required, cap });
    }
    Ok(())
}
