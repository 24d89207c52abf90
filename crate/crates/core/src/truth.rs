//! Three-valued truth values with strong Kleene connectives.

use std::fmt;
use std::ops::{BitAnd, BitOr, Not};
use std::str::FromStr;

use serde::Serialize;

/// A truth value that may be unknown.
///
/// `Unknown` means "not known", not "neither true nor false": every refinement
/// of an unknown value is one of the two classical values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TruthValue {
    True,
    False,
    #[default]
    Unknown,
}

impl TruthValue {
    pub const ALL: [TruthValue; 3] = [TruthValue::True, TruthValue::False, TruthValue::Unknown];

    #[inline]
    pub const fn is_known(self) -> bool {
        !matches!(self, TruthValue::Unknown)
    }

    pub const fn to_bool(self) -> Option<bool> {
        match self {
            TruthValue::True => Some(true),
            TruthValue::False => Some(false),
            TruthValue::Unknown => None,
        }
    }

    pub fn implies(self, rhs: Self) -> Self {
        !self | rhs
    }

    /// `true` if `other` agrees with every known part of `self`.
    pub fn refined_by(self, other: Self) -> bool {
        !self.is_known() || self == other
    }

    pub fn as_str(self) -> &'static str {
        match self {
            TruthValue::True => "true",
            TruthValue::False => "false",
            TruthValue::Unknown => "unknown",
        }
    }
}

impl From<bool> for TruthValue {
    fn from(b: bool) -> Self {
        if b {
            TruthValue::True
        } else {
            TruthValue::False
        }
    }
}

impl Not for TruthValue {
    type Output = Self;

    fn not(self) -> Self {
        match self {
            TruthValue::True => TruthValue::False,
            TruthValue::False => TruthValue::True,
            TruthValue::Unknown => TruthValue::Unknown,
        }
    }
}

impl BitAnd for TruthValue {
    type Output = Self;

    fn bitand(self, rhs: Self) -> Self {
        match (self, rhs) {
            (TruthValue::False, _) | (_, TruthValue::False) => TruthValue::False,
            (TruthValue::True, TruthValue::True) => TruthValue::True,
            _ => TruthValue::Unknown,
        }
    }
}

impl BitOr for TruthValue {
    type Output = Self;

    fn bitor(self, rhs: Self) -> Self {
        match (self, rhs) {
            (TruthValue::True, _) | (_, TruthValue::True) => TruthValue::True,
            (TruthValue::False, TruthValue::False) => TruthValue::False,
            _ => TruthValue::Unknown,
        }
    }
}

impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("expected `true`, `false` or `unknown`, found `{0}`")]
pub struct ParseTruthValueError(pub String);

impl FromStr for TruthValue {
    type Err = ParseTruthValueError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "true" => Ok(TruthValue::True),
            "false" => Ok(TruthValue::False),
            "unknown" => Ok(TruthValue::Unknown),
            other => Err(ParseTruthValueError(other.to_string())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::TruthValue::{self, *};

    // Truth tables written out longhand; the operator impls use pattern shortcuts.
    #[test]
    fn kleene_tables() {
        let and = [
            (True, True, True),
            (True, False, False),
            (True, Unknown, Unknown),
            (False, True, False),
            (False, False, False),
            (False, Unknown, False),
            (Unknown, True, Unknown),
            (Unknown, False, False),
            (Unknown, Unknown, Unknown),
        ];
        for (a, b, r) in and {
            assert_eq!(a & b, r, "{a} & {b}");
        }
        let or = [
            (True, True, True),
            (True, False, True),
            (True, Unknown, True),
            (False, True, True),
            (False, False, False),
            (False, Unknown, Unknown),
            (Unknown, True, True),
            (Unknown, False, Unknown),
            (Unknown, Unknown, Unknown),
        ];
        for (a, b, r) in or {
            assert_eq!(a | b, r, "{a} | {b}");
        }
        assert_eq!(!Unknown, Unknown);
        assert_eq!(Unknown.implies(True), True);
        assert_eq!(False.implies(Unknown), True);
        assert_eq!(True.implies(Unknown), Unknown);
    }

    #[test]
    fn parse_and_display() {
        for v in TruthValue::ALL {
            assert_eq!(v.to_string().parse::<TruthValue>().unwrap(), v);
        }
        assert!("maybe".parse::<TruthValue>().is_err());
    }

    #[test]
    fn refinement() {
        assert!(Unknown.refined_by(True));
        assert!(True.refined_by(True));
        assert!(!True.refined_by(False));
        assert!(!True.refined_by(Unknown));
    }
}
