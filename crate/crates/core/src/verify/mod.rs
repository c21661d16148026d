//! End-to-end acceptance checks, one per criterion, each with exact or
//! independently computed reference values.

mod criteria;
mod oracle;

pub use oracle::{same_leading_digits, ENTROPY_ORACLE};

use std::time::Instant;

use serde::Serialize;

use crate::Result;

#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    /// Wall time; not part of the reproducible output.
    #[serde(skip)]
    pub seconds: f64,
}

pub const CRITERIA: [(u8, &str); 12] = [
    (1, "Betti formulas"),
    (2, "Product correctness"),
    (3, "Deletion bound"),
    (4, "Toric code parameters"),
    (5, "Syndrome counting"),
    (6, "Entropy bound"),
    (7, "Defect algebra"),
    (8, "Disentangling circuit"),
    (9, "Canonical form and thermal energy"),
    (10, "Ising bound and checkerboard"),
    (11, "Coboundary-inverse scan"),
    (12, "Dense oracle agreement"),
];

/// A check result: pass flag and a one-line detail.
pub(crate) type Check = Result<(bool, String)>;

/// Run one criterion; errors count as failures.
pub fn run(id: u8) -> Outcome {
    let title = CRITERIA.iter().find(|c| c.0 == id).map_or("unknown", |c| c.1);
    let start = Instant::now();
    let res = match id {
        1 => criteria::betti_formulas(),
        2 => criteria::products(),
        3 => criteria::deletion(),
        4 => criteria::toric_parameters(),
        5 => criteria::syndromes(),
        6 => criteria::entropy(),
        7 => criteria::defects(),
        8 => criteria::disentangling(),
        9 => criteria::canonical_thermal(),
        10 => criteria::ising(),
        11 => criteria::ratio_scan(),
        12 => criteria::dense_agreement(),
        _ => Ok((false, format!("no criterion {id}"))),
    };
    let seconds = start.elapsed().as_secs_f64();
    let (mut passed, mut detail) = res.unwrap_or_else(|e| (false, format!("error: {e}")));
    if let Some(limit) = time_limit(id) {
        if seconds > limit {
            passed = false;
            detail = format!("{detail}; took {seconds:.1}s, limit {limit}s");
        }
    }
    Outcome { id, title, passed, detail, seconds }
}

fn time_limit(id: u8) -> Option<f64> {
    match id {
        1 => Some(5.0),
        2 => Some(60.0),
        4 | 8 => Some(120.0),
        _ => None,
    }
}

pub fn run_all() -> Vec<Outcome> {
    CRITERIA.iter().map(|&(id, _)| run(id)).collect()
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{tag}] {:>2}. {}: {}", self.id, self.title, self.detail)
    }
}
