//! Row-by-row comparison of the table against the closed form, the printed
//! radial expression and both Numerov oracles.

use rayon::prelude::*;
use serde::Serialize;

use crate::bound::{bound_energy, printed_energy};
use crate::error::Result;
use crate::model::{ApproxScheme, Variant};
use crate::oracle::calibrate::TableConvention;
use crate::oracle::numerov::{numerov_eigen, SolverConfig};
use crate::oracle::table::{table_one, TableRow};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationRow {
    pub id: String,
    pub a: f64,
    pub b: f64,
    pub lambda: f64,
    pub table_n: u32,
    pub ell: u32,
    /// Radial index after the convention's index map.
    pub n: u32,
    pub table_value: f64,
    pub reference_a: f64,
    pub reference_b: f64,
    pub analytic: f64,
    pub printed: f64,
    pub oracle_exact: Option<f64>,
    pub oracle_approx: Option<f64>,
    pub dev_analytic: f64,
    pub dev_printed: f64,
    pub dev_oracle_exact: Option<f64>,
    pub dev_oracle_approx: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlockSummary {
    pub b: f64,
    pub lambda: f64,
    pub max_dev_analytic: f64,
    pub bound: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub convention: TableConvention,
    pub rows: Vec<ValidationRow>,
    pub blocks: Vec<BlockSummary>,
}

/// Allowed |analytic − table| per block.
pub fn block_bound(lambda: f64) -> f64 {
    if lambda <= 0.001 {
        2e-3
    } else {
        2e-2
    }
}

fn validate_row(
    row: &TableRow,
    conv: &TableConvention,
    oracle: Option<&SolverConfig>,
) -> Result<ValidationRow> {
    let params = conv.row_params(row)?;
    let qn = conv.row_qn(row).ok_or_else(|| {
        crate::error::Error::InvalidQuantumNumbers(format!("row {} has no radial index", row.id()))
    })?;
    let analytic = bound_energy(&params, Variant::RadialHermitian, qn)?
        .energy
        .re;
    let printed = printed_energy(&params, Variant::RadialHermitian, qn)?.re;
    let (oracle_exact, oracle_approx) = match oracle {
        Some(cfg) => (
            Some(
                numerov_eigen(&params, qn, ApproxScheme::ExactCentrifugal, cfg)?
                    .energy
                    .re,
            ),
            Some(
                numerov_eigen(&params, qn, ApproxScheme::PekerisCentrifugal, cfg)?
                    .energy
                    .re,
            ),
        ),
        None => (None, None),
    };
    let dev = |x: f64| x - row.present;
    Ok(ValidationRow {
        id: row.id(),
        a: row.a,
        b: row.b,
        lambda: row.lambda,
        table_n: row.n,
        ell: row.ell,
        n: qn.n,
        table_value: row.present,
        reference_a: row.ref_a,
        reference_b: row.ref_b,
        analytic,
        printed,
        oracle_exact,
        oracle_approx,
        dev_analytic: dev(analytic),
        dev_printed: dev(printed),
        dev_oracle_exact: oracle_exact.map(dev),
        dev_oracle_approx: oracle_approx.map(dev),
    })
}

/// Evaluates every table row; rows are computed in parallel and returned in
/// table order.
pub fn validate_table(
    conv: &TableConvention,
    oracle: Option<&SolverConfig>,
) -> Result<ValidationReport> {
    let table = table_one();
    let rows = table
        .par_iter()
        .map(|row| validate_row(row, conv, oracle))
        .collect::<Result<Vec<_>>>()?;
    let mut blocks: Vec<BlockSummary> = Vec::new();
    for row in &rows {
        match blocks
            .iter_mut()
            .find(|b| b.b == row.b && b.lambda == row.lambda)
        {
            Some(block) => {
                block.max_dev_analytic = block.max_dev_analytic.max(row.dev_analytic.abs())
            }
            None => blocks.push(BlockSummary {
                b: row.b,
                lambda: row.lambda,
                max_dev_analytic: row.dev_analytic.abs(),
                bound: block_bound(row.lambda),
                pass: false,
            }),
        }
    }
    for block in &mut blocks {
        block.pass = block.max_dev_analytic <= block.bound;
    }
    Ok(ValidationReport {
        convention: *conv,
        rows,
        blocks,
    })
}
