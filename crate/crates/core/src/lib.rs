//! Solver for discrete exchange economies with general endowments.
//!
//! An economy consists of agents with strict preferences over indivisible
//! objects, where each object is owned — possibly jointly — by a nonempty
//! set of agents. The crate computes seven core-style solution sets by
//! exhaustive search, runs a generalized top-trading mechanism with
//! shared-ownership transfer, builds reduced economies, and checks four
//! consistency properties, all at desk scale with exact enumeration.

pub mod blocking;
pub mod bounds;
pub mod cli;
pub mod control;
pub mod cores;
pub mod doc;
pub mod economy;
pub mod error;
pub mod exec;
pub mod fixtures;
pub mod generator;
pub mod reduction;
pub mod set;
pub mod taxonomy;
pub mod yrmh;

pub use error::{Error, Result};
