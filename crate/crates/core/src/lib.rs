//! Scheduling toolkit for circular conveyor lines where each product type has
//! a demand and a small number of moulds.
//!
//! A schedule is encoded as an [`InjectionSequence`](model::InjectionSequence),
//! decoded into a [`BeltAssignment`](model::BeltAssignment), and scored by its
//! makespan. The [`solvers`] module searches over sequences, [`hardness`]
//! turns Partition instances into belt instances, [`data`] synthesises and
//! ingests production logs, and [`harness`] runs corpus benchmarks.

pub mod cli;
pub mod data;
pub mod error;
pub mod hardness;
pub mod harness;
pub mod model;
pub mod solvers;

pub use error::{Error, Result};
