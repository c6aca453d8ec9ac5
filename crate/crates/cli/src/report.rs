use bures::experiment::TrialOutcome;
use bures::verify::Check;
use serde::Serialize;

/// What a command was run with.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Inputs {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cov_a: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cov_b: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub same_generator: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quick: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmpiricalSummary {
    pub n: usize,
    pub seed: u64,
    pub generator: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub df: Option<f64>,
    pub trials: usize,
    /// Mean over trials.
    pub value: f64,
    pub min: f64,
    pub max: f64,
    pub per_trial: Vec<TrialOutcome>,
}

/// The JSON document every command prints.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Report {
    pub inputs: Inputs,
    pub closed_form: Option<f64>,
    pub gelbrich: Option<f64>,
    pub eigenbasis_bound: Option<f64>,
    pub diag_bound: Option<f64>,
    pub rotated_diag: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minimizer: Option<Vec<Vec<f64>>>,
    pub empirical: Option<EmpiricalSummary>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
