//! Behavioral characterization of binary cellular automata.
//!
//! A rule's local transition function is reduced to a minimal mixed
//! NOT/AND/OR/XOR expression, which is then evaluated over a six-valued
//! alphabet ([`MCode`]) that pairs each next-state bit with a behavior
//! label (stable, decrease, growth, chaotic). Counting those labels over the
//! truth table gives the static measure; sampling them over random
//! evolutions gives the dynamic measure. The two measures drive a genetic
//! search over 2D Moore-neighborhood rules.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, the CLI and
//! thread-parallel evaluation live in the `ca-tools` crate.

#![no_std]
#![warn(rust_2018_idioms)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod boolmin;
mod error;
pub mod heval;
pub mod lattice;
pub mod mcode;
pub mod measures;
pub mod rule;
pub mod search;
pub mod sim;

pub use boolmin::{minimize, BoolExpr, CoverMode, Implicant, MinimizeOptions, Minimized};
pub use error::Error;
pub use heval::{eval_g, m_truth_table, validate_h, HTables};
pub use lattice::{Dims, Lattice, MField};
pub use mcode::{Behavior, MCode};
pub use measures::{correlation, distance, dynamic_measure, feature_vector, static_measure};
pub use measures::{BehaviorVector, DynamicParams, FeatureVector, Sampling};
pub use rule::{gol_truth_table, neighborhood_index, BitOrder, RuleNumber, TruthTable};
pub use sim::{CompiledRule, EvolutionHistory};

pub type Result<T, E = Error> = core::result::Result<T, E>;
