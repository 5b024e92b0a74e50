//! Statevector simulation of a quantum search for the most similar
//! subgraph of a weighted graph under removal of a fixed number of edges.
//!
//! The crate is organized bottom-up:
//! * [`graph`]: weighted graphs, Laplacians, removal patterns, and the
//!   exact squared Frobenius distances the quantum pipeline must
//!   reproduce,
//! * [`sim`]: a dense statevector simulator with a small gate set,
//! * [`circuits`]: register layout and state preparation, from
//!   Hamming-weight superpositions through weight encoding, incidence
//!   block encoding, and edge-removal marking,
//! * [`estimate`]: the search iterate, phase estimation, and the
//!   distance-labeled state,
//! * [`minfind`]: thresholded amplitude-amplification search for the
//!   minimum-distance removal pattern,
//! * [`analysis`]: sampling-based distance reconstruction, convergence
//!   studies, quadratic-form evaluation, and the asymptotic cost model.
//!
//! A seeded search against the exact answer:
//!
//! ```
//! use qlap::graph::{argmin_bruteforce, builtin};
//! use qlap::minfind::{MinimumFinder, SearchMode};
//!
//! let g = builtin("p3w").unwrap();
//! let finder = MinimumFinder::new(&g, 1, SearchMode::Full, 5, 30)?;
//! let outcome = finder.run(7)?;
//!
//! let (best, _) = argmin_bruteforce(&g, 1)?;
//! assert_eq!(outcome.best, best.to_string());
//! # Ok::<(), qlap::Error>(())
//! ```

pub mod analysis;
pub mod circuits;
pub mod error;
pub mod estimate;
pub mod graph;
pub mod minfind;
pub mod sim;

pub use error::{Error, Result};
