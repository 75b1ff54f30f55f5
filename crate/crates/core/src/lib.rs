//! Modular-decomposition graph parameters, degree tables, exact solvers for
//! linear degree domination, and hardness-gadget construction.
//!
//! Everything here is `no_std` with `alloc`; file formats and the command-line
//! front end live in the `modcard` crate.
//!
//! ```
//! use modcard_core::graph::Graph;
//! use modcard_core::classes::GraphClass;
//! use modcard_core::gmc::compute_gmc;
//!
//! let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
//! let res = compute_gmc(&GraphClass::Cluster, &p4).unwrap();
//! assert_eq!(res.cardinality, 4);
//! ```
#![no_std]

extern crate alloc;

pub mod classes;
pub mod error;
pub mod gadgets;
pub mod gmc;
pub mod graph;
pub mod modular;
pub mod solvers;
pub mod tables;

pub use error::{Error, Result};

/// Exact rational used by tables and solvers.
pub type Rational = num_rational::Ratio<i128>;
