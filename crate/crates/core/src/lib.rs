//! Decoding workbench for classical and quantum (CSS / stabilizer) codes.
//!
//! The crate is layered bottom-up:
//!
//! * [`f2la`] – bit-packed GF(2) linear algebra.
//! * [`classical`] – linear block codes, syndromes, encoding matrices, Tanner graphs.
//! * [`pauli`], [`stabilizer`] – Pauli operators in binary symplectic form and
//!   stabilizer / CSS codes with logicals and destabilizers.
//! * [`homology`] – chain complexes and the hypergraph product.
//! * [`noise`] – channels, priors and decoder-facing problems.
//! * [`decoders`] – belief propagation, ordered statistics decoding and
//!   exhaustive reference decoders.
//! * [`graphstate`] – sign-tracking stabilizer tableau, graph states, MBQC
//!   primitives and foliation.
//! * [`bench`] – Monte Carlo logical error rate estimation.

pub mod bench;
pub mod classical;
pub mod decoders;
pub mod error;
pub mod f2la;
pub mod graphstate;
pub mod homology;
pub mod io;
pub mod noise;
pub mod pauli;
pub mod rng;
pub mod stabilizer;

pub use error::{Error, Result};
pub use f2la::{F2Matrix, F2Vec};
