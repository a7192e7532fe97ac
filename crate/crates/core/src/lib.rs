//! Solvers for the multiple-stack double traveling salesman problem: items
//! are collected by a pickup tour into `k` LIFO stacks and handed out by a
//! delivery tour that may only take the current top of a stack.
//!
//! * [`model`]: instances, tours, stacking orders, feasibility checks;
//! * [`compat`]: whether a tour pair admits a stacking, and building one;
//! * [`stackdp`]: optimal tours for fixed stacks;
//! * [`solve`]: exact oracles, heuristics and TSP bounds;
//! * [`families`]: adversarial instance families and their claims report;
//! * [`format`]: JSON documents and CSV reports.

pub mod cli;
pub mod compat;
pub mod error;
pub mod families;
pub mod format;
pub mod model;
pub mod solve;
pub mod stackdp;

pub use error::{Error, Result};
pub use model::{Cost, DistanceMatrix, Instance, Solution, StackingOrder, Tour};
