//! A workbench for modal I/O transition systems (MIOs).
//!
//! MIOs are labelled transition systems whose actions are partitioned into
//! inputs, outputs and internal actions, and which carry two transition
//! relations: *may*-transitions (allowed behaviour) and *must*-transitions
//! (required behaviour, always a subset of may). This crate provides
//!
//! - the MIO data model with well-formedness checking ([`core`]),
//! - synchronous composition and FIFO-buffered asynchronous composition
//!   via bounded output queues ([`compose`]),
//! - strong/weak modal refinement and strong/weak/asynchronous modal
//!   compatibility checkers with witness and counterexample extraction
//!   ([`check`]),
//! - a textual specification language for MIOs ([`format`]),
//! - randomized instance generation and property suites for the
//!   interface-theory laws the checkers are expected to satisfy
//!   ([`harness`]).

pub mod check;
pub mod compose;
pub mod core;
pub mod format;
pub mod harness;

pub use crate::core::{ActionName, Kind, Mio, MioBuilder, Modality, Signature, StateId};
