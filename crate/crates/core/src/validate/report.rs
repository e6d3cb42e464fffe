use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// Evaluated outside the stated hypotheses (e.g. winding number zero); never fails.
    Informational,
    /// The check's smallness hypothesis does not hold; values are still reported.
    HypothesisNotMet,
    /// Both sides vanish on an equilibrium.
    Stationary,
}

impl CheckStatus {
    /// Whether the status counts as a failure for exit codes.
    pub fn is_failure(self) -> bool {
        self == CheckStatus::Fail
    }
}

/// Outcome of one inequality validator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub id: String,
    pub lhs: f64,
    pub rhs: f64,
    /// Oriented so that a valid inequality has `slack >= 0`.
    pub slack: f64,
    pub tolerance: f64,
    /// Largest relative change of the scale-normalised slack under `gamma -> rho gamma`,
    /// `rho` in `{1/2, 2}`; `None` for trajectory checks.
    pub scale_residual: Option<f64>,
    /// Whether the verdict is unchanged under those rescalings.
    pub scale_consistent: Option<bool>,
    pub status: CheckStatus,
    pub pass: bool,
    /// Auxiliary named quantities (ratios, extrema).
    pub extras: BTreeMap<String, f64>,
}

impl InequalityReport {
    pub(crate) fn new(id: &str, lhs: f64, rhs: f64, slack: f64, tolerance: f64) -> Self {
        let pass = slack >= -tolerance;
        Self {
            id: id.to_string(),
            lhs,
            rhs,
            slack,
            tolerance,
            scale_residual: None,
            scale_consistent: None,
            status: if pass {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            },
            pass,
            extras: BTreeMap::new(),
        }
    }

    pub(crate) fn with_status(mut self, status: CheckStatus) -> Self {
        self.status = status;
        self
    }

    pub(crate) fn extra(mut self, key: &str, value: f64) -> Self {
        self.extras.insert(key.to_string(), value);
        self
    }

    pub fn is_failure(&self) -> bool {
        self.status.is_failure()
    }
}
