use serde::{Deserialize, Serialize};

/// Outcome of one identity check, with a diagnostic for the first violation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub holds: bool,
    pub diagnostic: Option<String>,
}

impl Verdict {
    pub fn pass() -> Self {
        Verdict {
            holds: true,
            diagnostic: None,
        }
    }

    pub fn fail(diagnostic: impl Into<String>) -> Self {
        Verdict {
            holds: false,
            diagnostic: Some(diagnostic.into()),
        }
    }

    /// Passes iff `cond`, otherwise fails with the lazily built message.
    pub fn from_condition(cond: bool, diagnostic: impl FnOnce() -> String) -> Self {
        if cond {
            Self::pass()
        } else {
            Self::fail(diagnostic())
        }
    }
}
