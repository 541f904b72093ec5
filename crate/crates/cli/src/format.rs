//! The line-oriented `.pn` net format.
//!
//! ```text
//! # comments run to the end of the line
//! net fig2
//! place p1 marked
//! trans a
//! trans b
//! arc p1 a
//! arc p1 b
//! ```
//!
//! `net` comes first and once. Places may be `marked`, transitions
//! `silent`. Ids are base names over `[A-Za-z0-9_]` or the derived names
//! `b.<place>.<trans>` and `u.<trans>.<place>`. Arcs may refer to elements
//! declared further down.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use pnasync_core::{ElementId, Error, Net, NetBuilder};
use thiserror::Error;

/// A named net, as stored in a file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NetDocument {
    pub name: String,
    pub net: Net,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {id} is already declared on line {first}")]
    DuplicateId { line: usize, id: String, first: usize },
    #[error("line {line}: arc endpoint {id} is not declared")]
    UndeclaredEndpoint { line: usize, id: String },
    #[error("line {line}: arc {from} -> {to} connects two {kind}")]
    SameKindArc { line: usize, from: String, to: String, kind: &'static str },
    #[error("line {line}: transition {id} cannot be marked")]
    MarkedTransition { line: usize, id: String },
    #[error("missing `net <name>` header")]
    MissingHeader,
    #[error(transparent)]
    Invalid(#[from] Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Place,
    Transition,
}

/// Reads a document up to the unvalidated builder, so that callers can
/// report every diagnostic instead of only the first.
pub fn parse_builder(text: &str) -> Result<(String, NetBuilder), FormatError> {
    let mut name: Option<String> = None;
    let mut builder = NetBuilder::new();
    let mut declared: BTreeMap<ElementId, (Kind, usize)> = BTreeMap::new();
    let mut arcs: Vec<(usize, ElementId, ElementId)> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or_default();
        let words: Vec<&str> = content.split_whitespace().collect();
        let Some((&keyword, rest)) = words.split_first() else {
            continue;
        };
        let syntax = |message: String| FormatError::Syntax { line, message };
        if name.is_none() && keyword != "net" {
            return Err(syntax(format!("expected `net <name>`, found `{keyword}`")));
        }
        let ident = |text: &str| {
            ElementId::parse(text).map_err(|_| syntax(format!("invalid id `{text}`")))
        };
        match (keyword, rest) {
            ("net", [n]) => {
                if name.is_some() {
                    return Err(syntax("`net` may appear only once".into()));
                }
                if !n.bytes().all(|c| c.is_ascii_alphanumeric() || c == b'_' || c == b'.' || c == b'-') {
                    return Err(syntax(format!("invalid net name `{n}`")));
                }
                name = Some(n.to_string());
            }
            ("place", [x, flags @ ..]) => {
                let x = ident(x)?;
                let marked = match flags {
                    [] => false,
                    ["marked"] => true,
                    _ => return Err(syntax(format!("unexpected `{}` after place", flags.join(" ")))),
                };
                declare(&mut declared, &x, Kind::Place, line)?;
                builder.places.insert(x.clone());
                if marked {
                    builder.initial.insert(x);
                }
            }
            ("trans", [x, flags @ ..]) => {
                let x = ident(x)?;
                let silent = match flags {
                    [] => false,
                    ["silent"] => true,
                    ["marked"] => return Err(FormatError::MarkedTransition { line, id: x.to_string() }),
                    _ => return Err(syntax(format!("unexpected `{}` after trans", flags.join(" ")))),
                };
                declare(&mut declared, &x, Kind::Transition, line)?;
                if silent {
                    builder.silents.insert(x);
                } else {
                    builder.observables.insert(x);
                }
            }
            ("arc", [from, to]) => arcs.push((line, ident(from)?, ident(to)?)),
            ("net" | "place" | "trans" | "arc", _) => {
                return Err(syntax(format!("wrong number of arguments to `{keyword}`")));
            }
            _ => return Err(syntax(format!("unknown keyword `{keyword}`"))),
        }
    }

    let name = name.ok_or(FormatError::MissingHeader)?;
    for (line, from, to) in arcs {
        let kind_of = |x: &ElementId| {
            declared
                .get(x)
                .map(|(k, _)| *k)
                .ok_or_else(|| FormatError::UndeclaredEndpoint { line, id: x.to_string() })
        };
        let (a, b) = (kind_of(&from)?, kind_of(&to)?);
        if a == b {
            let kind = if a == Kind::Place { "places" } else { "transitions" };
            return Err(FormatError::SameKindArc { line, from: from.to_string(), to: to.to_string(), kind });
        }
        builder.flow.insert((from, to));
    }
    Ok((name, builder))
}

fn declare(
    declared: &mut BTreeMap<ElementId, (Kind, usize)>,
    x: &ElementId,
    kind: Kind,
    line: usize,
) -> Result<(), FormatError> {
    if let Some(&(_, first)) = declared.get(x) {
        return Err(FormatError::DuplicateId { line, id: x.to_string(), first });
    }
    declared.insert(x.clone(), (kind, line));
    Ok(())
}

/// Parses and validates a document.
pub fn parse(text: &str) -> Result<NetDocument, FormatError> {
    let (name, builder) = parse_builder(text)?;
    Ok(NetDocument { name, net: builder.build()? })
}

/// Canonical text: header, places, transitions and arcs, each sorted by id.
pub fn serialize(doc: &NetDocument) -> String {
    let b = doc.net.to_builder();
    let mut out = format!("net {}\n", doc.name);
    for p in &b.places {
        let flag = if b.initial.contains(p) { " marked" } else { "" };
        let _ = writeln!(out, "place {p}{flag}");
    }
    let mut transitions: Vec<(&ElementId, bool)> =
        b.observables.iter().map(|t| (t, false)).chain(b.silents.iter().map(|t| (t, true))).collect();
    transitions.sort();
    for (t, silent) in transitions {
        let flag = if silent { " silent" } else { "" };
        let _ = writeln!(out, "trans {t}{flag}");
    }
    for (from, to) in &b.flow {
        let _ = writeln!(out, "arc {from} {to}");
    }
    out
}
