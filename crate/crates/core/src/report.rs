//! Machine-readable run reports.

use serde::Serialize;

use crate::approx::{Branch, TraceCounts};
use crate::dist::Dist;
use crate::error::{Error, Result};
use crate::model::{Instance, Solution};
use crate::oracle::OracleResult;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceDigest {
    pub n: usize,
    pub k: usize,
    pub req: Vec<usize>,
    pub omega: usize,
}

impl InstanceDigest {
    pub fn of(inst: &Instance) -> Self {
        InstanceDigest { n: inst.n(), k: inst.k(), req: inst.req().to_vec(), omega: inst.omega() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub instance: InstanceDigest,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solution: Option<Solution>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub guess_radius: Option<Dist>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub branch: Option<Branch>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleResult>,
    /// Solution radius over optimal radius; absent when either is missing
    /// or the optimum is zero.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio: Option<Dist>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio_within_3: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget_hit: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<TraceCounts>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<serde_json::Value>,
    pub wall_ms: f64,
}

impl RunReport {
    pub fn new(command: &str, inst: &Instance) -> Self {
        RunReport {
            command: command.to_string(),
            instance: InstanceDigest::of(inst),
            solution: None,
            guess_radius: None,
            branch: None,
            oracle: None,
            ratio: None,
            ratio_within_3: None,
            budget_hit: None,
            trace: None,
            details: None,
            wall_ms: 0.0,
        }
    }

    /// Stores `solution` after checking it against a fresh recount.
    pub fn set_solution(&mut self, inst: &Instance, solution: Solution) -> Result<()> {
        if !solution.recheck(inst)? {
            return Err(Error::ContractViolation("reported solution does not match its recount".into()));
        }
        self.solution = Some(solution);
        self.update_ratio();
        Ok(())
    }

    pub fn set_oracle(&mut self, inst: &Instance, oracle: OracleResult) -> Result<()> {
        if !oracle.solution.recheck(inst)? {
            return Err(Error::ContractViolation("oracle solution does not match its recount".into()));
        }
        self.oracle = Some(oracle);
        self.update_ratio();
        Ok(())
    }

    fn update_ratio(&mut self) {
        if let (Some(sol), Some(opt)) = (&self.solution, &self.oracle) {
            self.ratio = sol.radius.ratio(&opt.radius);
            self.ratio_within_3 = Some(sol.radius <= opt.radius.scaled(3));
        }
    }
}
