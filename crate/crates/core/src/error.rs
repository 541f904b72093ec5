use alloc::string::String;

use thiserror::Error;

use crate::id::ElementId;
use crate::net::Diagnostics;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid element id {0:?}")]
    InvalidId(String),
    #[error("unknown element {0}")]
    UnknownElement(ElementId),
    #[error("{0} is not a transition")]
    NotATransition(ElementId),
    #[error("a step needs at least one transition")]
    EmptyStep,
    #[error("step is not enabled at the given marking")]
    StepNotEnabled,
    #[error("invalid net: {0}")]
    InvalidNet(Diagnostics),
    #[error("net is not plain (it has silent transitions)")]
    NotPlain,
    #[error("state space exceeds the cap of {cap} markings")]
    CapExceeded { cap: usize },
    #[error("net is not contact-free")]
    ContactViolation,
    #[error("net has a divergence (a cycle of silent transitions)")]
    Divergent,
    #[error("observable alphabets differ")]
    AlphabetMismatch,
    #[error("operation requires a {expected} implementation")]
    WrongImplementation { expected: &'static str },
    #[error("malformed priority assignment: {0}")]
    MalformedPriority(String),
    #[error("{count} priority assignments exceed the cap of {cap}")]
    PriorityCapExceeded { count: u128, cap: usize },
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
}
