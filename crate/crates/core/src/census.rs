//! Parameter sweeps over `(s, n)` grids with deterministic CSV output.

use std::fmt;
use std::io::Write;
use std::ops::RangeInclusive;
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::constructions::{construct, ConstructionOutcome, MethodTag};
use crate::exec::{self, Execution};
use crate::graph::{GraphError, ProductParams};
use crate::search::SearchBudget;

#[derive(Debug, Error)]
pub enum CensusError {
    #[error("empty {0} range")]
    EmptyRange(&'static str),
    #[error(transparent)]
    Params(#[from] GraphError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CensusVerdict {
    Antimagic,
    NotAntimagic,
    Unknown,
    /// The dispatcher hit a hard error on this cell; see [`CensusRow::error`].
    Error,
}

impl CensusVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            CensusVerdict::Antimagic => "antimagic",
            CensusVerdict::NotAntimagic => "not-antimagic",
            CensusVerdict::Unknown => "unknown",
            CensusVerdict::Error => "error",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub s: usize,
    pub n: usize,
    pub verdict: CensusVerdict,
    pub method: Option<MethodTag>,
    pub epsilon: Option<u64>,
    pub edges: usize,
    pub millis: u128,
    #[serde(skip)]
    pub error: Option<String>,
}

/// Cells of `s_range x n_range`, `s` ascending then `n` ascending.
pub fn grid(
    s_range: RangeInclusive<usize>,
    n_range: RangeInclusive<usize>,
) -> Result<Vec<ProductParams>, CensusError> {
    if s_range.is_empty() {
        return Err(CensusError::EmptyRange("s"));
    }
    if n_range.is_empty() {
        return Err(CensusError::EmptyRange("n"));
    }
    let mut cells = Vec::new();
    for s in s_range {
        for n in n_range.clone() {
            cells.push(ProductParams::new(s, n)?);
        }
    }
    Ok(cells)
}

/// Runs the dispatcher on one cell, recording failures in the row.
pub fn census_cell(p: ProductParams, budget: SearchBudget) -> CensusRow {
    let start = Instant::now();
    let outcome = construct(p, budget);
    let millis = start.elapsed().as_millis();
    let mut row = CensusRow {
        s: p.s(),
        n: p.n(),
        verdict: CensusVerdict::Error,
        method: None,
        epsilon: None,
        edges: p.edge_count(),
        millis,
        error: None,
    };
    match outcome {
        Ok(ConstructionOutcome::Antimagic(c)) => {
            row.verdict = CensusVerdict::Antimagic;
            row.method = Some(c.method);
            row.epsilon = c.epsilon.map(|e| e.value());
        }
        Ok(ConstructionOutcome::NotAntimagic(_)) => row.verdict = CensusVerdict::NotAntimagic,
        Ok(ConstructionOutcome::Unknown(_)) => row.verdict = CensusVerdict::Unknown,
        Err(e) => row.error = Some(e.to_string()),
    }
    row
}

/// One row per cell, in cell order regardless of completion order.
pub fn run(cells: &[ProductParams], budget: SearchBudget, execution: Execution) -> Vec<CensusRow> {
    exec::map(cells, execution, |&p| census_cell(p, budget))
}

/// Writes `s,n,verdict,method,epsilon,edges,millis`.
pub fn write_csv<W: Write>(rows: &[CensusRow], out: W) -> Result<(), CensusError> {
    let mut writer = csv::Writer::from_writer(out);
    for row in rows {
        writer.serialize(row)?;
    }
    writer.flush().map_err(csv::Error::from)?;
    Ok(())
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Summary {
    pub antimagic: usize,
    pub not_antimagic: usize,
    pub unknown: usize,
    pub error: usize,
}

impl Summary {
    pub fn of(rows: &[CensusRow]) -> Self {
        let mut summary = Self::default();
        for row in rows {
            match row.verdict {
                CensusVerdict::Antimagic => summary.antimagic += 1,
                CensusVerdict::NotAntimagic => summary.not_antimagic += 1,
                CensusVerdict::Unknown => summary.unknown += 1,
                CensusVerdict::Error => summary.error += 1,
            }
        }
        summary
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "antimagic={} not-antimagic={} unknown={} error={}",
            self.antimagic, self.not_antimagic, self.unknown, self.error
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    #[allow(clippy::reversed_empty_ranges)]
    fn empty_ranges_are_rejected() {
        assert!(matches!(grid(3..=1, 2..=4), Err(CensusError::EmptyRange("s"))));
        assert!(matches!(grid(1..=3, 5..=4), Err(CensusError::EmptyRange("n"))));
        assert!(matches!(grid(0..=1, 2..=3), Err(CensusError::Params(_))));
    }

    #[test]
    fn small_census_finds_the_three_exceptions() {
        let cells = grid(1..=3, 2..=6).unwrap();
        let rows = run(&cells, SearchBudget::default(), Execution::Parallel);
        let failing: Vec<(usize, usize)> = rows
            .iter()
            .filter(|r| r.verdict == CensusVerdict::NotAntimagic)
            .map(|r| (r.s, r.n))
            .collect();
        assert_eq!(failing, vec![(1, 2), (1, 3), (2, 2)]);
        let summary = Summary::of(&rows);
        assert_eq!(summary, Summary { antimagic: 12, not_antimagic: 3, unknown: 0, error: 0 });
    }

    #[test]
    fn csv_layout() {
        let rows = run(&grid(2..=2, 2..=3).unwrap(), SearchBudget::default(), Execution::Sequential);
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "s,n,verdict,method,epsilon,edges,millis");
        assert!(lines[1].starts_with("2,2,not-antimagic,,,4,"));
        assert!(lines[2].starts_with("2,3,antimagic,odd-p3,,8,"));
    }
}
