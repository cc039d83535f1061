//! Run the finite cross-checks over a list of groups.

use rayon::prelude::*;
use serde::Serialize;

use crate::abelian::AbelianInvariants;
use crate::config::Caps;
use crate::covering::{verify_finite_theorems, TheoremCheck, VerifyOptions};
use crate::error::Result;
use crate::group::FiniteGroup;

#[derive(Debug, Clone)]
pub struct HarnessOptions {
    /// Groups above this order are left out.
    pub max_order: usize,
    /// n-F-A is checked for n in `1..=nfa_max`.
    pub nfa_max: usize,
}

impl Default for HarnessOptions {
    fn default() -> Self {
        HarnessOptions {
            max_order: 32,
            nfa_max: 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RowStatus {
    Pass,
    Fail,
    /// The trivial group: not F-A and weight 0 by convention, nothing to check.
    Convention,
}

#[derive(Debug, Clone, Serialize)]
pub struct HarnessRow {
    pub group: String,
    pub order: usize,
    pub status: RowStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fa: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub abelianisation: Option<AbelianInvariants>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weight: Option<usize>,
    pub checks: usize,
    pub failures: Vec<TheoremCheck>,
}

#[derive(Debug, Clone, Serialize)]
pub struct HarnessSummary {
    pub groups: usize,
    pub passed: usize,
    pub failed: usize,
    pub mismatches: usize,
    pub rows: Vec<HarnessRow>,
}

impl HarnessSummary {
    pub fn ok(&self) -> bool {
        self.mismatches == 0
    }
}

fn check_one(g: &FiniteGroup, caps: &Caps, opts: &HarnessOptions) -> Result<HarnessRow> {
    let mut row = HarnessRow {
        group: g.name().to_string(),
        order: g.order(),
        status: RowStatus::Pass,
        fa: None,
        abelianisation: None,
        weight: None,
        checks: 1,
        failures: vec![],
    };
    if let Err(e) = g.validate() {
        row.status = RowStatus::Fail;
        row.failures.push(TheoremCheck {
            name: "validator".into(),
            holds: false,
            detail: e.to_string(),
        });
        return Ok(row);
    }
    if g.is_trivial() {
        row.status = RowStatus::Convention;
        row.fa = Some(false);
        row.weight = Some(0);
        return Ok(row);
    }
    let vopts = VerifyOptions {
        nfa_range: 1..=opts.nfa_max,
        weight: g.order() <= caps.weight,
    };
    let report = verify_finite_theorems(g, caps, &vopts)?;
    row.checks += report.checks.len();
    row.failures = report.failures().cloned().collect();
    if !row.failures.is_empty() {
        row.status = RowStatus::Fail;
    }
    row.fa = Some(report.fa);
    row.weight = report.weight;
    row.abelianisation = Some(report.abelianisation);
    Ok(row)
}

/// Validate and cross-check every group of order at most `opts.max_order`,
/// in parallel. Rows keep the input order.
pub fn verify_all(groups: &[FiniteGroup], caps: &Caps, opts: &HarnessOptions) -> Result<HarnessSummary> {
    let rows = groups
        .par_iter()
        .filter(|g| g.order() <= opts.max_order)
        .map(|g| check_one(g, caps, opts))
        .collect::<Result<Vec<_>>>()?;
    let failed = rows.iter().filter(|r| r.status == RowStatus::Fail).count();
    Ok(HarnessSummary {
        groups: rows.len(),
        passed: rows.len() - failed,
        failed,
        mismatches: rows.iter().map(|r| r.failures.len()).sum(),
        rows,
    })
}
