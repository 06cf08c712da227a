//! Structured pass/fail records for the numeric statements verified on each
//! instance.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bound::Bound;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Le,
    Lt,
    Eq,
    Ge,
    Ne,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Lt => "<",
            Relation::Eq => "=",
            Relation::Ge => ">=",
            Relation::Ne => "!=",
        }
    }

    fn holds(self, o: Ordering) -> bool {
        match self {
            Relation::Le => o != Ordering::Greater,
            Relation::Lt => o == Ordering::Less,
            Relation::Eq => o == Ordering::Equal,
            Relation::Ge => o != Ordering::Less,
            Relation::Ne => o != Ordering::Equal,
        }
    }
}

/// One evaluated statement `lhs relation rhs`. `certified = false` marks a
/// comparison involving unproven values; such a check can never count as a
/// failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub anchor: String,
    pub lhs: Bound,
    pub rhs: Bound,
    pub relation: Relation,
    pub pass: bool,
    pub certified: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    /// Evaluates the relation. Values that cannot be compared exactly (a lower
    /// bound against a number it might exceed) make the check uncertified.
    pub fn compare(name: &str, anchor: &str, lhs: Bound, relation: Relation, rhs: Bound, certified: bool) -> Check {
        let (pass, exact) = match lhs.cmp_exact(&rhs) {
            Some(o) => (relation.holds(o), true),
            None => (false, false),
        };
        Check {
            name: name.to_string(),
            anchor: anchor.to_string(),
            lhs,
            rhs,
            relation,
            pass,
            certified: certified && exact,
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Check {
        self.note = Some(note.into());
        self
    }

    /// A statement that only applies under a premise; vacuously true otherwise.
    pub fn vacuous(mut self, premise_holds: bool) -> Check {
        if !premise_holds {
            self.pass = true;
            self.certified = true;
            self.note = Some(
                self.note
                    .take()
                    .map_or("premise not met".into(), |n| format!("{n}; premise not met")),
            );
        }
        self
    }

    pub fn verdict(&self) -> Verdict {
        if !self.certified {
            Verdict::Inconclusive
        } else if self.pass {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {}: {} {} {}",
            self.verdict(),
            self.name,
            self.lhs,
            self.relation.symbol(),
            self.rhs
        )?;
        if let Some(n) = &self.note {
            write!(f, " ({n})")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Inconclusive,
    Fail,
}

impl Verdict {
    /// Any certified failure fails; otherwise any uncertified check makes the
    /// result inconclusive.
    pub fn combine<'a, I: IntoIterator<Item = &'a Check>>(checks: I) -> Verdict {
        checks.into_iter().map(Check::verdict).max().unwrap_or(Verdict::Pass)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Inconclusive => "inconclusive",
            Verdict::Fail => "fail",
        })
    }
}
