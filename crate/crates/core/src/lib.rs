//! Sparse chain complexes over `Z_q` built from graphs and hypergraphs,
//! their tensor products, and the CSS / toric-code Hamiltonians they carry.
//!
//! The crate is organised bottom-up:
//!
//! * [`ringlin`] exact sparse linear algebra over `Z_q` / `F_p` (rank, kernel,
//!   solve, Smith normal form);
//! * [`graphs`] named and random graphs, girth and edge expansion;
//! * [`chain`] chain complexes, tensor products, Betti numbers, cell deletion
//!   and the product metric;
//! * [`codes`] CSS codes extracted at any degree, parameters, distances and
//!   plaquette-syndrome counting;
//! * [`toric`] Pauli algebra, vertex / plaquette operators, defect operators,
//!   Wilson loops and the coboundary-inverse ratio;
//! * [`stabsim`] Clifford conjugation, the disentangling circuit, stabilizer
//!   groups, canonical forms and a dense state-vector oracle;
//! * [`statmech`] Ising energies on graphs, the magnetization bound,
//!   checkerboard states and exact thermal energies;
//! * [`verify`] the end-to-end acceptance checks, shared by the test suite and
//!   the command-line `verify all`.

pub mod bits;
pub mod chain;
pub mod codes;
mod error;
pub mod graphs;
pub mod modular;
pub mod ringlin;
pub mod stabsim;
pub mod statmech;
pub mod toric;
pub mod verify;

pub use error::{Error, Result};
