//! Uniform record for a single law check.

use std::fmt;

use serde::Serialize;

use crate::extreal::{format_checked, ExtReal};
use crate::funcspace::ExtFn;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::NotApplicable => "not-applicable",
        })
    }
}

/// One side of a checked relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Side {
    Undefined,
    Scalar(ExtReal),
    Function(Vec<ExtReal>),
    Truth(bool),
    Text(String),
}

impl From<ExtReal> for Side {
    fn from(v: ExtReal) -> Self {
        Side::Scalar(v)
    }
}

impl From<Option<ExtReal>> for Side {
    fn from(v: Option<ExtReal>) -> Self {
        v.map_or(Side::Undefined, Side::Scalar)
    }
}

impl From<&ExtFn> for Side {
    fn from(f: &ExtFn) -> Self {
        Side::Function(f.values().to_vec())
    }
}

impl From<ExtFn> for Side {
    fn from(f: ExtFn) -> Self {
        Side::from(&f)
    }
}

impl From<bool> for Side {
    fn from(b: bool) -> Self {
        Side::Truth(b)
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Undefined => f.write_str("undef"),
            Side::Scalar(v) => write!(f, "{v}"),
            Side::Function(vs) => {
                f.write_str("(")?;
                for (i, v) in vs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{v}")?;
                }
                f.write_str(")")
            }
            Side::Truth(b) => write!(f, "{b}"),
            Side::Text(s) => f.write_str(s),
        }
    }
}

impl Serialize for Side {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Side::Undefined => s.serialize_str("undef"),
            Side::Scalar(v) => v.serialize(s),
            Side::Function(vs) => vs.serialize(s),
            Side::Truth(b) => s.serialize_bool(*b),
            Side::Text(t) => s.serialize_str(t),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub law: String,
    pub instance: String,
    pub lhs: Side,
    pub rhs: Side,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub note: String,
}

impl LawReport {
    pub fn new(
        law: impl Into<String>,
        instance: impl Into<String>,
        lhs: impl Into<Side>,
        rhs: impl Into<Side>,
        holds: bool,
    ) -> Self {
        LawReport {
            law: law.into(),
            instance: instance.into(),
            lhs: lhs.into(),
            rhs: rhs.into(),
            verdict: if holds { Verdict::Pass } else { Verdict::Fail },
            note: String::new(),
        }
    }

    /// Report whose hypotheses are unmet; `why` names the failing hypothesis.
    pub fn not_applicable(law: impl Into<String>, instance: impl Into<String>, why: impl Into<String>) -> Self {
        LawReport {
            law: law.into(),
            instance: instance.into(),
            lhs: Side::Undefined,
            rhs: Side::Undefined,
            verdict: Verdict::NotApplicable,
            note: why.into(),
        }
    }

    /// Equality of two sides.
    pub fn equal(law: impl Into<String>, instance: impl Into<String>, lhs: impl Into<Side>, rhs: impl Into<Side>) -> Self {
        let (lhs, rhs) = (lhs.into(), rhs.into());
        let holds = lhs == rhs && lhs != Side::Undefined;
        Self::new(law, instance, lhs, rhs, holds)
    }

    /// `lhs ≤ rhs` on extended reals; undefined sides fail.
    pub fn leq(law: impl Into<String>, instance: impl Into<String>, lhs: Option<ExtReal>, rhs: Option<ExtReal>) -> Self {
        let holds = matches!((&lhs, &rhs), (Some(a), Some(b)) if a <= b);
        Self::new(law, instance, lhs, rhs, holds)
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }

    pub fn in_context(mut self, prefix: &str) -> Self {
        self.instance = if self.instance.is_empty() {
            prefix.to_string()
        } else {
            format!("{prefix}/{}", self.instance)
        };
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn failed(&self) -> bool {
        self.verdict == Verdict::Fail
    }

    pub fn line(&self) -> String {
        let mut s = format!("{} | {} | {} | {} | {}", self.law, self.instance, self.lhs, self.rhs, self.verdict);
        if !self.note.is_empty() {
            s.push_str(" | ");
            s.push_str(&self.note);
        }
        s
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.line())
    }
}

/// Side for a checked scalar rendered as text, used when only the string form matters.
pub fn checked_text(v: &Option<ExtReal>) -> Side {
    Side::Text(format_checked(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_format() {
        let r = LawReport::equal("ex", "i1", ExtReal::from_int(5), ExtReal::from_int(5));
        assert_eq!(r.line(), "ex | i1 | 5 | 5 | pass");
        let r = LawReport::leq("le", "i2", None, Some(ExtReal::from_int(1)));
        assert_eq!(r.line(), "le | i2 | undef | 1 | fail");
        let r = LawReport::not_applicable("na", "i3", "hyp").in_context("file");
        assert_eq!(r.line(), "na | file/i3 | undef | undef | not-applicable | hyp");
    }

    #[test]
    fn undefined_sides_never_pass_equality() {
        assert!(LawReport::equal("x", "", Side::Undefined, Side::Undefined).failed());
    }

    #[test]
    fn json_shape() {
        let r = LawReport::equal("ex", "i", ExtReal::PosInf, ExtReal::PosInf);
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(s, r#"{"law":"ex","instance":"i","lhs":"inf","rhs":"inf","verdict":"pass"}"#);
    }
}
