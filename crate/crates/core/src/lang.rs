//! Literals and the negation-closed language they live in.
//!
//! The language is propositional: every formula is a signed atom, and
//! negation is the symmetric `bar` operation that flips the sign. There is
//! no general contrariness relation; `bar` is an involution without fixed
//! points, so `l` and `l.bar()` always denote a contradictory pair.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Prefix for machine-generated rule names. The parser rejects atoms that
/// start with it, so generated names can never collide with user vocabulary
/// and nothing a user writes can ever conclude the negation of one.
pub const RESERVED_ATOM_PREFIX: &str = "__";

/// A signed atom. Serializes as its rendered form (`a`, `~a`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Literal {
    atom: String,
    positive: bool,
}

impl Serialize for Literal {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Literal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(D::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvalidLiteral {
    #[error("empty atom")]
    EmptyAtom,
    #[error("atom {0:?} contains characters outside [a-zA-Z0-9_]")]
    BadAtom(String),
    #[error("malformed literal {0:?}")]
    Malformed(String),
}

fn valid_atom(atom: &str) -> bool {
    !atom.is_empty() && atom.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Literal {
    pub fn new(atom: impl Into<String>, positive: bool) -> Result<Self, InvalidLiteral> {
        let atom = atom.into();
        if atom.is_empty() {
            return Err(InvalidLiteral::EmptyAtom);
        }
        if !valid_atom(&atom) {
            return Err(InvalidLiteral::BadAtom(atom));
        }
        Ok(Literal { atom, positive })
    }

    pub fn positive(atom: impl Into<String>) -> Result<Self, InvalidLiteral> {
        Self::new(atom, true)
    }

    pub fn negative(atom: impl Into<String>) -> Result<Self, InvalidLiteral> {
        Self::new(atom, false)
    }

    pub fn atom(&self) -> &str {
        &self.atom
    }

    pub fn is_positive(&self) -> bool {
        self.positive
    }

    /// Negation: same atom, flipped sign.
    pub fn bar(&self) -> Literal {
        Literal {
            atom: self.atom.clone(),
            positive: !self.positive,
        }
    }

    /// True for atoms carrying the machine-name prefix.
    pub fn has_reserved_atom(&self) -> bool {
        self.atom.starts_with(RESERVED_ATOM_PREFIX)
    }
}

// Canonical order: by atom, positive sign first, matching the rendered
// form ("a" sorts before "~a").
impl Ord for Literal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.atom
            .cmp(&other.atom)
            .then_with(|| other.positive.cmp(&self.positive))
    }
}

impl PartialOrd for Literal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "{}", self.atom)
        } else {
            write!(f, "~{}", self.atom)
        }
    }
}

impl FromStr for Literal {
    type Err = InvalidLiteral;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (atom, positive) = match s.strip_prefix('~') {
            Some(rest) => (rest, false),
            None => (s, true),
        };
        if atom.is_empty() {
            return Err(InvalidLiteral::Malformed(s.to_string()));
        }
        Literal::new(atom, positive)
    }
}
