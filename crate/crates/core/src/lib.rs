//! Asynchronous implementations of 1-safe Petri nets under failures
//! semantics.
//!
//! A plain net can be implemented asynchronously by routing tokens through
//! buffer places and silent collector transitions before they reach the
//! transition that consumes them. This crate builds those implementations,
//! decides whether they are failures equivalent to the original net, and
//! provides the structural characterizations of the nets for which they are.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bits;
pub mod classify;
pub mod corpus;
pub mod enumerate;
pub mod error;
pub mod id;
pub mod net;
pub mod reach;
pub mod semantics;
pub mod structure;
pub mod theorems;
pub mod transform;

pub use classify::{Class, ClassReport, ClassVerdict, Evidence, Route, Verdict};
pub use error::Error;
pub use id::{id, ElementId, ElementKind};
pub use net::{Diagnostic, DiagnosticCode, Diagnostics, Marking, Net, NetBuilder, Severity};
pub use reach::{reachability, MarkingGraph};
pub use semantics::{failures_equivalent, failures_included, Distinction, FailurePair, NormalizedMachine, Side};
pub use structure::{Pattern, StructuralWitness};
pub use transform::{asymm_async, fully_async, symm_async, ImplKind, ImplementationNet, PriorityAssignment};
