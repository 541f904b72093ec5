//! Element identifiers.
//!
//! Base names are tokens over `[A-Za-z0-9_]`. The asynchronous
//! implementations derive two further kinds of names from a
//! (place, transition) pair: the buffer place `b.<place>.<transition>` and
//! the collector transition `u.<transition>.<place>`. Because base names
//! never contain `.`, the rendered text determines the structure and the
//! identifier can be stored as that text.

use alloc::string::{String, ToString};
use core::fmt;

use crate::error::Error;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementId(String);

/// Structural view of an [`ElementId`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElementKind<'a> {
    Base,
    /// Buffer place `s_t` holding a token on its way from `place` to `transition`.
    Buffer { place: &'a str, transition: &'a str },
    /// Silent collector `t_s` moving the token of `place` towards `transition`.
    Collector { transition: &'a str, place: &'a str },
}

fn is_base_name(name: &str) -> bool {
    !name.is_empty()
        && name
            .bytes()
            .all(|c| c.is_ascii_alphanumeric() || c == b'_')
}

impl ElementId {
    /// A plain (non-derived) identifier.
    pub fn base(name: &str) -> Result<Self, Error> {
        if is_base_name(name) {
            Ok(ElementId(name.to_string()))
        } else {
            Err(Error::InvalidId(name.to_string()))
        }
    }

    /// Buffer place for the arc `place -> transition`.
    pub fn buffer(place: &ElementId, transition: &ElementId) -> Self {
        debug_assert!(place.is_base() && transition.is_base());
        ElementId(alloc::format!("b.{}.{}", place.0, transition.0))
    }

    /// Collector transition for the arc `place -> transition`.
    pub fn collector(transition: &ElementId, place: &ElementId) -> Self {
        debug_assert!(place.is_base() && transition.is_base());
        ElementId(alloc::format!("u.{}.{}", transition.0, place.0))
    }

    /// Parses any identifier, base or derived.
    pub fn parse(text: &str) -> Result<Self, Error> {
        if is_base_name(text) {
            return Ok(ElementId(text.to_string()));
        }
        let mut parts = text.split('.');
        match (parts.next(), parts.next(), parts.next(), parts.next()) {
            (Some("b" | "u"), Some(x), Some(y), None) if is_base_name(x) && is_base_name(y) => {
                Ok(ElementId(text.to_string()))
            }
            _ => Err(Error::InvalidId(text.to_string())),
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn is_base(&self) -> bool {
        !self.0.contains('.')
    }

    pub fn kind(&self) -> ElementKind<'_> {
        let mut parts = self.0.splitn(3, '.');
        match (parts.next(), parts.next(), parts.next()) {
            (Some("b"), Some(place), Some(transition)) => ElementKind::Buffer { place, transition },
            (Some("u"), Some(transition), Some(place)) => ElementKind::Collector { transition, place },
            _ => ElementKind::Base,
        }
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Shorthand for building base identifiers in code; panics on invalid names.
pub fn id(name: &str) -> ElementId {
    ElementId::parse(name).unwrap_or_else(|_| panic!("invalid element id {name:?}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_names_round_trip() {
        let p = id("p1");
        let t = id("a");
        let buf = ElementId::buffer(&p, &t);
        let col = ElementId::collector(&t, &p);
        assert_eq!(buf.as_str(), "b.p1.a");
        assert_eq!(col.as_str(), "u.a.p1");
        assert_eq!(ElementId::parse("b.p1.a").unwrap(), buf);
        assert_eq!(
            buf.kind(),
            ElementKind::Buffer { place: "p1", transition: "a" }
        );
        assert_eq!(
            col.kind(),
            ElementKind::Collector { transition: "a", place: "p1" }
        );
    }

    #[test]
    fn rejects_malformed_names() {
        for bad in ["", "a.b", "x.p.t", "b.p", "b.p.t.q", "b..t", "p-1", "p 1"] {
            assert!(ElementId::parse(bad).is_err(), "{bad}");
        }
        assert!(ElementId::base("b.p.t").is_err());
    }
}
