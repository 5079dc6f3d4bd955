//! Exhaustive verification over every tuple with a bounded product.
//!
//! Each tuple gets the full invariant check plus the lattice cross-checks
//! (Mordell sum, involution symmetry, parity points). Work is spread over the
//! current rayon pool; the summary only depends on the inputs.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::brieskorn::{derive, enumerate_tuples};
use crate::error::{Error, Result};
use crate::invariants::{km_verify_with, Formulas, Verdict};
use crate::lattice::interval_census;

/// Outcome for one tuple; both problem lists are empty on success.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TupleOutcome {
    pub a: Vec<u64>,
    /// Failed checks of the invariant report (identity, routes, divisibility).
    pub km_problems: Vec<String>,
    /// Failed lattice cross-checks (Mordell sum, involution, parity points).
    pub lattice_problems: Vec<String>,
}

impl TupleOutcome {
    pub fn passed(&self) -> bool {
        self.km_problems.is_empty() && self.lattice_problems.is_empty()
    }

    pub fn problems(&self) -> impl Iterator<Item = &String> {
        self.km_problems.iter().chain(&self.lattice_problems)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub n: usize,
    pub max_product: u64,
    pub checked: u64,
    pub passed: u64,
    /// Tuples whose invariant report failed.
    pub km_failed: u64,
    /// Tuples whose lattice cross-checks failed.
    pub lattice_failed: u64,
    /// Lexicographically first failures, at most [`MAX_REPORTED_FAILURES`].
    pub failures: Vec<TupleOutcome>,
    /// Position of the first failing tuple in enumeration order.
    pub first_failure_index: Option<u64>,
}

pub const MAX_REPORTED_FAILURES: usize = 10;

impl SweepSummary {
    pub fn all_passed(&self) -> bool {
        self.checked == self.passed
    }

    pub fn first_failure(&self) -> Option<&TupleOutcome> {
        self.failures.first()
    }
}

/// Runs every check on one tuple.
pub fn check_tuple(a: &[u64], formulas: &Formulas) -> TupleOutcome {
    let mut km_problems = Vec::new();
    let mut lattice_problems = Vec::new();
    match derive(a).and_then(|d| Ok((km_verify_with(&d, formulas)?, interval_census(&d)?, d))) {
        Ok((report, census, data)) => {
            if report.verdict == Verdict::Fail {
                km_problems.extend(report.failures());
            }
            if census.c != report.c {
                lattice_problems.push(format!("census C = {} vs report C = {}", census.c, report.c));
            }
            lattice_problems.extend(census.violations(&data));
        }
        Err(e) => km_problems.push(e.to_string()),
    }
    TupleOutcome {
        a: a.to_vec(),
        km_problems,
        lattice_problems,
    }
}

/// Verifies all sorted pairwise-coprime `n`-tuples with product at most
/// `max_product`. `progress` is called once per finished tuple, from worker
/// threads.
pub fn verify_range(
    n: usize,
    max_product: u64,
    formulas: &Formulas,
    progress: &(dyn Fn() + Sync),
) -> Result<SweepSummary> {
    if n != 3 && n != 4 {
        return Err(Error::UnsupportedDimension(n));
    }
    let tuples: Vec<Vec<u64>> = enumerate_tuples(n, max_product).collect();
    let outcomes: Vec<TupleOutcome> = tuples
        .par_iter()
        .map(|a| {
            let out = check_tuple(a, formulas);
            progress();
            out
        })
        .collect();
    let first_failure_index = outcomes.iter().position(|o| !o.passed()).map(|i| i as u64);
    let passed = outcomes.iter().filter(|o| o.passed()).count() as u64;
    let km_failed = outcomes.iter().filter(|o| !o.km_problems.is_empty()).count() as u64;
    let lattice_failed = outcomes.iter().filter(|o| !o.lattice_problems.is_empty()).count() as u64;
    let failures = outcomes
        .into_iter()
        .filter(|o| !o.passed())
        .take(MAX_REPORTED_FAILURES)
        .collect();
    Ok(SweepSummary {
        n,
        max_product,
        checked: tuples.len() as u64,
        passed,
        km_failed,
        lattice_failed,
        failures,
        first_failure_index,
    })
}
