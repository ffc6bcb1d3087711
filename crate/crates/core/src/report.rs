use serde::Serialize;

use crate::strategy::CheckStrategy;

/// Outcome of a check whose witness is free-form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub ok: bool,
    pub checked: u64,
    pub strategy: Option<CheckStrategy>,
    pub witness: Option<String>,
}

impl CheckReport {
    pub(crate) fn new(
        check: &str,
        checked: u64,
        strategy: Option<CheckStrategy>,
        witness: Option<String>,
    ) -> Self {
        CheckReport {
            check: check.to_string(),
            ok: witness.is_none(),
            checked,
            strategy,
            witness,
        }
    }

    /// Conjunction of several reports; keeps the first witness.
    pub fn merge(check: &str, parts: &[CheckReport]) -> Self {
        CheckReport {
            check: check.to_string(),
            ok: parts.iter().all(|p| p.ok),
            checked: parts.iter().map(|p| p.checked).sum(),
            strategy: parts.first().and_then(|p| p.strategy),
            witness: parts.iter().find_map(|p| p.witness.clone()),
        }
    }
}
