//! Weighted graphs, their Laplacians, and squared Frobenius distances
//! between a graph and the subgraphs obtained by deleting a fixed number
//! of edges.
//!
//! Conventions used throughout the crate:
//! * a graph has `M` vertices and `N` weighted undirected edges,
//! * every edge is stored with `tail < head`, in input order,
//! * a removal pattern is a bit vector `d` of length `N`; bit `i` set
//!   means edge `i` is deleted, and exactly `x` bits are set,
//! * the figure of merit for a pattern is
//!   `D(d) = || B - B_kept ||_F^2`, the squared Frobenius distance
//!   between the full Laplacian and the Laplacian of the kept edges.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use ndarray::Array2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::error::{Error, Result};

/// Matrices at or below this vertex/edge count are materialized densely;
/// larger ones fall back to coordinate-list storage.
pub const DENSE_LIMIT: usize = 64;

/// One undirected weighted edge, stored with `tail < head`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
    pub weight: f64,
}

/// An undirected graph with strictly positive edge weights.
///
/// Self-loops and parallel edges are rejected at construction, as are
/// non-finite or non-positive weights. Edge order is preserved: edge `i`
/// of the graph is the `i`-th edge passed in, which is also the edge that
/// bit `i` of a [`Configuration`] refers to.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    vertices: usize,
    edges: Vec<Edge>,
}

impl WeightedGraph {
    pub fn new(vertices: usize, edges: Vec<(usize, usize, f64)>) -> Result<Self> {
        if vertices < 2 {
            return Err(Error::InvalidGraph(format!(
                "need at least 2 vertices, got {vertices}"
            )));
        }
        if edges.is_empty() {
            return Err(Error::InvalidGraph("graph has no edges".into()));
        }
        let mut seen = std::collections::BTreeSet::new();
        let mut out = Vec::with_capacity(edges.len());
        for (idx, &(r, s, w)) in edges.iter().enumerate() {
            if r == s {
                return Err(Error::InvalidGraph(format!("edge {idx} is a self-loop")));
            }
            if r >= vertices || s >= vertices {
                return Err(Error::InvalidGraph(format!(
                    "edge {idx} references vertex {} but the graph has {vertices} vertices",
                    r.max(s)
                )));
            }
            if !w.is_finite() || w <= 0.0 {
                return Err(Error::InvalidGraph(format!(
                    "edge {idx} has non-positive or non-finite weight {w}"
                )));
            }
            let (tail, head) = if r < s { (r, s) } else { (s, r) };
            if !seen.insert((tail, head)) {
                return Err(Error::InvalidGraph(format!(
                    "edge {idx} ({tail},{head}) duplicates an earlier edge"
                )));
            }
            out.push(Edge {
                tail,
                head,
                weight: w,
            });
        }
        Ok(Self {
            vertices,
            edges: out,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn weights(&self) -> Vec<f64> {
        self.edges.iter().map(|e| e.weight).collect()
    }

    /// Sum of squared edge weights; the normalization `W` of the
    /// weight-encoded register state.
    pub fn total_weight_sq(&self) -> f64 {
        self.edges.iter().map(|e| e.weight * e.weight).sum()
    }

    pub fn incidence(&self) -> IncidenceMatrix {
        IncidenceMatrix {
            vertices: self.vertices,
            columns: self.edges.iter().map(|e| (e.tail, e.head)).collect(),
        }
    }

    /// Weighted Laplacian of the full graph.
    pub fn laplacian(&self) -> Laplacian {
        self.laplacian_kept(|_| true)
    }

    /// Weighted Laplacian of the subgraph that keeps exactly the edges
    /// NOT removed by `config`.
    pub fn laplacian_removed(&self, config: &Configuration) -> Result<Laplacian> {
        self.check_config(config)?;
        Ok(self.laplacian_kept(|i| !config.is_removed(i)))
    }

    fn laplacian_kept(&self, keep: impl Fn(usize) -> bool) -> Laplacian {
        let mut lap = Laplacian::zeros(self.vertices);
        for (i, e) in self.edges.iter().enumerate() {
            if keep(i) {
                lap.add(e.tail, e.tail, e.weight);
                lap.add(e.head, e.head, e.weight);
                lap.add(e.tail, e.head, -e.weight);
                lap.add(e.head, e.tail, -e.weight);
            }
        }
        lap
    }

    /// The Gram-style matrix `Q` with `Q_ij = b_i b_j (v_i . v_j)^2`,
    /// where `v_i` is the incidence column of edge `i`. The distance of a
    /// removal pattern `d` is the quadratic form `d^T Q d`.
    pub fn q_matrix(&self) -> QMatrix {
        let n = self.edges.len();
        let mut q = QMatrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                let dot = incidence_dot(&self.edges[i], &self.edges[j]);
                if dot != 0 {
                    let val =
                        self.edges[i].weight * self.edges[j].weight * (dot * dot) as f64;
                    q.set(i, j, val);
                    if i != j {
                        q.set(j, i, val);
                    }
                }
            }
        }
        q
    }

    fn check_config(&self, config: &Configuration) -> Result<()> {
        if config.len() != self.edges.len() {
            return Err(Error::Dimension {
                what: "configuration",
                expected: self.edges.len(),
                got: config.len(),
            });
        }
        Ok(())
    }
}

fn incidence_dot(a: &Edge, b: &Edge) -> i64 {
    // Columns have +1 at the tail and -1 at the head, so only b's two
    // rows can contribute.
    let val = |e: &Edge, v: usize| -> i64 {
        if v == e.tail {
            1
        } else if v == e.head {
            -1
        } else {
            0
        }
    };
    val(a, b.tail) - val(a, b.head)
}

/// Vertex-by-edge incidence matrix with entries in `{-1, 0, +1}`:
/// column `i` has `+1` at the tail and `-1` at the head of edge `i`.
#[derive(Debug, Clone)]
pub struct IncidenceMatrix {
    vertices: usize,
    columns: Vec<(usize, usize)>,
}

impl IncidenceMatrix {
    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edge_count(&self) -> usize {
        self.columns.len()
    }

    /// Tail and head row of column `i`.
    pub fn column(&self, i: usize) -> (usize, usize) {
        self.columns[i]
    }

    /// Dense materialization, vertex rows by edge columns.
    pub fn dense(&self) -> Array2<f64> {
        let mut m = Array2::zeros((self.vertices, self.columns.len()));
        for (i, &(tail, head)) in self.columns.iter().enumerate() {
            m[(tail, i)] = 1.0;
            m[(head, i)] = -1.0;
        }
        m
    }
}

/// Symmetric matrix with dense storage up to [`DENSE_LIMIT`] rows and
/// coordinate-list storage above it.
#[derive(Debug, Clone, PartialEq)]
pub enum Laplacian {
    Dense(Array2<f64>),
    Sparse {
        dim: usize,
        entries: BTreeMap<(usize, usize), f64>,
    },
}

impl Laplacian {
    fn zeros(dim: usize) -> Self {
        if dim <= DENSE_LIMIT {
            Laplacian::Dense(Array2::zeros((dim, dim)))
        } else {
            Laplacian::Sparse {
                dim,
                entries: BTreeMap::new(),
            }
        }
    }

    fn add(&mut self, r: usize, s: usize, val: f64) {
        match self {
            Laplacian::Dense(m) => m[(r, s)] += val,
            Laplacian::Sparse { entries, .. } => {
                *entries.entry((r, s)).or_insert(0.0) += val;
            }
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Laplacian::Dense(m) => m.nrows(),
            Laplacian::Sparse { dim, .. } => *dim,
        }
    }

    pub fn get(&self, r: usize, s: usize) -> f64 {
        match self {
            Laplacian::Dense(m) => m[(r, s)],
            Laplacian::Sparse { entries, .. } => entries.get(&(r, s)).copied().unwrap_or(0.0),
        }
    }

    /// Squared Frobenius distance to another Laplacian of the same size.
    pub fn frobenius_sq_diff(&self, other: &Laplacian) -> Result<f64> {
        if self.dim() != other.dim() {
            return Err(Error::Dimension {
                what: "laplacian",
                expected: self.dim(),
                got: other.dim(),
            });
        }
        match (self, other) {
            (Laplacian::Dense(a), Laplacian::Dense(b)) => {
                Ok(a.iter().zip(b.iter()).map(|(x, y)| (x - y) * (x - y)).sum())
            }
            _ => {
                let mut keys = std::collections::BTreeSet::new();
                let collect = |l: &Laplacian, keys: &mut std::collections::BTreeSet<(usize, usize)>| {
                    if let Laplacian::Sparse { entries, .. } = l {
                        keys.extend(entries.keys().copied());
                    }
                };
                collect(self, &mut keys);
                collect(other, &mut keys);
                Ok(keys
                    .into_iter()
                    .map(|(r, s)| {
                        let d = self.get(r, s) - other.get(r, s);
                        d * d
                    })
                    .sum())
            }
        }
    }
}

/// Edge-by-edge quadratic-form matrix; same storage policy as
/// [`Laplacian`].
#[derive(Debug, Clone, PartialEq)]
pub enum QMatrix {
    Dense(Array2<f64>),
    Sparse {
        dim: usize,
        entries: BTreeMap<(usize, usize), f64>,
    },
}

impl QMatrix {
    fn zeros(dim: usize) -> Self {
        if dim <= DENSE_LIMIT {
            QMatrix::Dense(Array2::zeros((dim, dim)))
        } else {
            QMatrix::Sparse {
                dim,
                entries: BTreeMap::new(),
            }
        }
    }

    fn set(&mut self, r: usize, s: usize, val: f64) {
        match self {
            QMatrix::Dense(m) => m[(r, s)] = val,
            QMatrix::Sparse { entries, .. } => {
                entries.insert((r, s), val);
            }
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            QMatrix::Dense(m) => m.nrows(),
            QMatrix::Sparse { dim, .. } => *dim,
        }
    }

    pub fn get(&self, r: usize, s: usize) -> f64 {
        match self {
            QMatrix::Dense(m) => m[(r, s)],
            QMatrix::Sparse { entries, .. } => entries.get(&(r, s)).copied().unwrap_or(0.0),
        }
    }

    /// Evaluates `d^T Q d` for a removal pattern.
    pub fn quadratic_form(&self, config: &Configuration) -> Result<f64> {
        if config.len() != self.dim() {
            return Err(Error::Dimension {
                what: "configuration",
                expected: self.dim(),
                got: config.len(),
            });
        }
        let removed = config.removed_indices();
        let mut acc = 0.0;
        for &i in &removed {
            for &j in &removed {
                acc += self.get(i, j);
            }
        }
        Ok(acc)
    }
}

/// A removal pattern: bit `i` set means edge `i` is deleted.
///
/// Patterns print as the bit string `d_0 d_1 ... d_{N-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration {
    mask: u64,
    len: usize,
}

impl Configuration {
    /// Builds a pattern from a mask, checking that exactly `x` bits are set.
    pub fn new(mask: u64, len: usize, x: usize) -> Result<Self> {
        if len > 64 {
            return Err(Error::Unsupported {
                what: "configuration length",
                got: len.to_string(),
            });
        }
        if len < 64 && mask >> len != 0 {
            return Err(Error::InvalidGraph(format!(
                "configuration mask {mask:#b} has bits beyond length {len}"
            )));
        }
        let got = mask.count_ones() as usize;
        if got != x {
            return Err(Error::Cardinality { expected: x, got });
        }
        Ok(Self { mask, len })
    }

    /// Parses a bit string such as `"1010"` (edge 0 first).
    pub fn from_bitstring(s: &str) -> Result<Self> {
        let mut mask = 0u64;
        let len = s.len();
        if len == 0 || len > 64 {
            return Err(Error::Unsupported {
                what: "configuration string",
                got: s.to_string(),
            });
        }
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '1' => mask |= 1 << i,
                '0' => {}
                other => {
                    return Err(Error::Unsupported {
                        what: "configuration digit",
                        got: other.to_string(),
                    })
                }
            }
        }
        Ok(Self { mask, len })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn removed_count(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_removed(&self, edge: usize) -> bool {
        self.mask >> edge & 1 == 1
    }

    pub fn removed_indices(&self) -> Vec<usize> {
        (0..self.len).filter(|&i| self.is_removed(i)).collect()
    }

    /// Basis index of this pattern inside an `N`-qubit register where
    /// qubit `i` holds `d_i` and qubit 0 is the least significant bit.
    pub fn register_index(&self) -> usize {
        self.mask as usize
    }

    /// Inverse of [`Configuration::register_index`].
    pub fn from_register_index(index: usize, len: usize) -> Self {
        Self {
            mask: index as u64,
            len,
        }
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", if self.is_removed(i) { '1' } else { '0' })?;
        }
        Ok(())
    }
}

/// All `C(N, x)` removal patterns in ascending lexicographic order of
/// their bit strings (`0011 < 0101 < ... < 1100` for `N = 4`, `x = 2`).
pub fn enumerate_configurations(edges: usize, x: usize) -> Result<Vec<Configuration>> {
    if x > edges || edges == 0 || edges > 64 {
        return Err(Error::XOutOfRange { x, edges });
    }
    let mut out = Vec::new();
    if x == 0 {
        out.push(Configuration { mask: 0, len: edges });
        return Ok(out);
    }
    // Iterate x-subsets of [0, edges) as ascending integers via Gosper's
    // hack, then mirror bit j to d_{edges-1-j} so the emitted bit strings
    // ascend lexicographically.
    let mut v: u64 = (1 << x) - 1;
    let limit: u64 = if edges == 64 {
        u64::MAX
    } else {
        (1 << edges) - 1
    };
    loop {
        let mut mask = 0u64;
        for j in 0..edges {
            if v >> j & 1 == 1 {
                mask |= 1 << (edges - 1 - j);
            }
        }
        out.push(Configuration { mask, len: edges });
        // Gosper: next integer with the same popcount.
        let c = v & v.wrapping_neg();
        let r = v + c;
        if r > limit || r < v {
            break;
        }
        v = ((r ^ v) >> 2) / c | r;
    }
    Ok(out)
}

/// Number of removal patterns, `C(N, x)`.
pub fn configuration_count(edges: usize, x: usize) -> u64 {
    if x > edges {
        return 0;
    }
    let mut acc: u64 = 1;
    for i in 0..x.min(edges - x) {
        acc = acc * (edges - i) as u64 / (i + 1) as u64;
    }
    acc
}

/// `D(d)` via dense (or coordinate-list) Laplacian subtraction.
pub fn frobenius_distance_dense(graph: &WeightedGraph, config: &Configuration) -> Result<f64> {
    let full = graph.laplacian();
    let kept = graph.laplacian_removed(config)?;
    full.frobenius_sq_diff(&kept)
}

/// `D(d)` as the quadratic form `d^T Q d`.
pub fn frobenius_distance_q(graph: &WeightedGraph, config: &Configuration) -> Result<f64> {
    graph.q_matrix().quadratic_form(config)
}

/// `D(d)` by the O(N) neighborhood formula: the diagonal contributes the
/// squared sum of removed weights around each vertex, the off-diagonal
/// part twice the square of each removed weight.
pub fn frobenius_distance_sparse(graph: &WeightedGraph, config: &Configuration) -> Result<f64> {
    if config.len() != graph.edge_count() {
        return Err(Error::Dimension {
            what: "configuration",
            expected: graph.edge_count(),
            got: config.len(),
        });
    }
    let mut diag = vec![0.0f64; graph.vertex_count()];
    let mut off = 0.0;
    for (i, e) in graph.edges().iter().enumerate() {
        if config.is_removed(i) {
            diag[e.tail] += e.weight;
            diag[e.head] += e.weight;
            off += 2.0 * e.weight * e.weight;
        }
    }
    Ok(diag.iter().map(|s| s * s).sum::<f64>() + off)
}

/// Exhaustive minimum over all removal patterns of size `x`; ties resolve
/// to the lexicographically smallest bit string.
pub fn argmin_bruteforce(graph: &WeightedGraph, x: usize) -> Result<(Configuration, f64)> {
    let configs = enumerate_configurations(graph.edge_count(), x)?;
    let mut best: Option<(Configuration, f64)> = None;
    for c in configs {
        let d = frobenius_distance_sparse(graph, &c)?;
        match &best {
            Some((_, bd)) if *bd <= d => {}
            _ => best = Some((c, d)),
        }
    }
    Ok(best.expect("enumeration is never empty"))
}

/// Classical value of the quadratic form `a^T B_kept a`, where `B_kept`
/// is the Laplacian of the subgraph with `config`'s edges removed:
/// `sum_i b_i (1 - d_i) (a_tail - a_head)^2`.
pub fn quadratic_form_classical(
    graph: &WeightedGraph,
    config: &Configuration,
    a: &[f64],
) -> Result<f64> {
    if config.len() != graph.edge_count() {
        return Err(Error::Dimension {
            what: "configuration",
            expected: graph.edge_count(),
            got: config.len(),
        });
    }
    if a.len() != graph.vertex_count() {
        return Err(Error::Dimension {
            what: "vector",
            expected: graph.vertex_count(),
            got: a.len(),
        });
    }
    let mut acc = 0.0;
    for (i, e) in graph.edges().iter().enumerate() {
        if !config.is_removed(i) {
            let diff = a[e.tail] - a[e.head];
            acc += e.weight * diff * diff;
        }
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// Generators and file format
// ---------------------------------------------------------------------------

/// Path graph on `m` vertices with unit weights.
pub fn gen_path(m: usize) -> Result<WeightedGraph> {
    WeightedGraph::new(m, (0..m.saturating_sub(1)).map(|i| (i, i + 1, 1.0)).collect())
}

/// Cycle graph on `m` vertices with unit weights.
pub fn gen_cycle(m: usize) -> Result<WeightedGraph> {
    if m < 3 {
        return Err(Error::InvalidGraph(format!("cycle needs 3 vertices, got {m}")));
    }
    let mut edges: Vec<(usize, usize, f64)> = (0..m - 1).map(|i| (i, i + 1, 1.0)).collect();
    edges.push((0, m - 1, 1.0));
    WeightedGraph::new(m, edges)
}

/// Star graph: vertex 0 joined to each of the other `m - 1` vertices.
pub fn gen_star(m: usize) -> Result<WeightedGraph> {
    WeightedGraph::new(m, (1..m).map(|i| (0, i, 1.0)).collect())
}

/// Seeded random simple graph with `m` vertices, `n` edges, and weights
/// uniform in `[0.5, 1.5)`.
pub fn gen_random(m: usize, n: usize, seed: u64) -> Result<WeightedGraph> {
    if m < 2 {
        return Err(Error::InvalidGraph(format!("need at least 2 vertices, got {m}")));
    }
    let max_edges = m * (m - 1) / 2;
    if n == 0 || n > max_edges {
        return Err(Error::InvalidGraph(format!(
            "cannot place {n} simple edges on {m} vertices (max {max_edges})"
        )));
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut chosen = std::collections::BTreeSet::new();
    while chosen.len() < n {
        let r = rng.gen_range(0..m);
        let s = rng.gen_range(0..m);
        if r != s {
            chosen.insert((r.min(s), r.max(s)));
        }
    }
    let edges = chosen
        .into_iter()
        .map(|(r, s)| (r, s, rng.gen_range(0.5..1.5)))
        .collect();
    WeightedGraph::new(m, edges)
}

/// Parses the plain-text graph format: optional `#` comment lines, a
/// header `M N` (vertex count, edge count), then `N` lines `r s b`.
pub fn parse_graph(text: &str) -> Result<WeightedGraph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize, f64)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let lineno = lineno + 1;
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match header {
            None => {
                if fields.len() != 2 {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: format!("expected header `M N`, got `{line}`"),
                    });
                }
                let m = fields[0].parse::<usize>().map_err(|e| Error::Parse {
                    line: lineno,
                    msg: format!("bad vertex count: {e}"),
                })?;
                let n = fields[1].parse::<usize>().map_err(|e| Error::Parse {
                    line: lineno,
                    msg: format!("bad edge count: {e}"),
                })?;
                header = Some((m, n));
            }
            Some((_, n)) => {
                if edges.len() == n {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: format!("more than the declared {n} edges"),
                    });
                }
                if fields.len() != 3 {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: format!("expected `r s b`, got `{line}`"),
                    });
                }
                let r = fields[0].parse::<usize>().map_err(|e| Error::Parse {
                    line: lineno,
                    msg: format!("bad vertex index: {e}"),
                })?;
                let s = fields[1].parse::<usize>().map_err(|e| Error::Parse {
                    line: lineno,
                    msg: format!("bad vertex index: {e}"),
                })?;
                let b = fields[2].parse::<f64>().map_err(|e| Error::Parse {
                    line: lineno,
                    msg: format!("bad weight: {e}"),
                })?;
                edges.push((r, s, b));
            }
        }
    }
    let (m, n) = header.ok_or(Error::Parse {
        line: 0,
        msg: "missing header line `M N`".into(),
    })?;
    if edges.len() != n {
        return Err(Error::Parse {
            line: 0,
            msg: format!("header declares {n} edges but {} were given", edges.len()),
        });
    }
    WeightedGraph::new(m, edges).map_err(|e| match e {
        Error::InvalidGraph(msg) => Error::Parse { line: 0, msg },
        other => other,
    })
}

/// Reads a graph file (see [`parse_graph`] for the format).
pub fn read_graph_file(path: &Path) -> Result<WeightedGraph> {
    parse_graph(&std::fs::read_to_string(path)?)
}

/// Serializes a graph in the same format [`parse_graph`] reads.
pub fn format_graph(graph: &WeightedGraph) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{} {}\n",
        graph.vertex_count(),
        graph.edge_count()
    ));
    for e in graph.edges() {
        out.push_str(&format!("{} {} {}\n", e.tail, e.head, e.weight));
    }
    out
}

// ---------------------------------------------------------------------------
// Built-in example graphs
// ---------------------------------------------------------------------------

/// Built-in example graphs addressable by name from the CLI and tests.
///
/// `demo4` is a 4-cycle whose weights are tuned so that, for the default
/// register sizing, the phase labels of the distance spectrum sit on
/// (x = 1) and well apart from (x = 2) the readout grid of an 8-bit phase
/// register; it is the reference instance for the search demonstrations.
/// `ring9` is a 9-edge ring with mildly increasing weights and a unique
/// best removal pair.
pub fn builtin(name: &str) -> Option<WeightedGraph> {
    let g = |vertices, edges: Vec<(usize, usize, f64)>| {
        WeightedGraph::new(vertices, edges).expect("builtin graphs are valid")
    };
    Some(match name {
        "p3" => g(3, vec![(0, 1, 1.0), (1, 2, 1.0)]),
        "p3w" => g(3, vec![(0, 1, 1.0), (1, 2, 3.0)]),
        "p4" => g(4, vec![(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0)]),
        "c4" => g(4, vec![(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (0, 3, 1.0)]),
        "c5" => g(
            5,
            vec![
                (0, 1, 1.0),
                (1, 2, 1.0),
                (2, 3, 1.0),
                (3, 4, 1.0),
                (0, 4, 1.0),
            ],
        ),
        "star4" => g(4, vec![(0, 1, 1.0), (0, 2, 1.0), (0, 3, 1.0)]),
        "demo4" => g(
            4,
            vec![
                (0, 1, 0.1963446125715188),
                (1, 2, 0.6199708022935836),
                (2, 3, 0.4390002297505558),
                (0, 3, 0.6199708022935836),
            ],
        ),
        "ring9" => {
            let mut edges: Vec<(usize, usize, f64)> =
                (0..8).map(|i| (i, i + 1, 1.0 + 0.03 * i as f64)).collect();
            edges.push((0, 8, 1.24));
            g(9, edges)
        }
        _ => return None,
    })
}

pub fn builtin_names() -> &'static [&'static str] {
    &["p3", "p3w", "p4", "c4", "c5", "star4", "demo4", "ring9"]
}
