//! Built-in worked examples: family parameters with their published
//! [n, k, d], label and hull dimension, shipped as JSON data files.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::classify::{self, Label, ReportOptions};
use crate::error::{Error, Result};
use crate::families::{self, Claim, FamilyParams, FamilyParamsJson, Shift};
use crate::gf::FieldCtx;
use crate::hull::{self, InnerProduct};
use crate::linalg::MatrixFq;

const TABLE_A: &str = include_str!("../data/appendix_a.json");
const TABLE_B: &str = include_str!("../data/appendix_b.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Table {
    A,
    B,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    pub n: usize,
    pub k: usize,
    pub d: Option<usize>,
    pub label: Option<Label>,
    pub hull: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExampleRow {
    pub id: String,
    #[serde(flatten)]
    pub params: FamilyParamsJson,
    /// Field modulus c_0..c_m (constant term first) when the default one
    /// does not reproduce the row.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub expected: Expected,
}

#[derive(Clone, Debug, Deserialize)]
struct TableFile {
    inner_product: InnerProduct,
    rows: Vec<ExampleRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Computed {
    pub n: usize,
    pub k: usize,
    pub d: Option<usize>,
    pub label: Option<Label>,
    pub hull: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowOutcome {
    pub table: Table,
    pub id: String,
    pub params: FamilyParamsJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub inner_product: InnerProduct,
    pub expected: Expected,
    pub computed: Computed,
    pub claim: Claim,
    pub claim_holds: bool,
    pub pass: bool,
}

pub fn rows(table: Table) -> Result<(InnerProduct, Vec<ExampleRow>)> {
    let text = match table {
        Table::A => TABLE_A,
        Table::B => TABLE_B,
    };
    let file: TableFile = serde_json::from_str(text).map_err(|e| Error::Input(format!("appendix table: {e}")))?;
    Ok((file.inner_product, file.rows))
}

/// Family parameters of a row, in the row's field.
pub fn row_params(row: &ExampleRow) -> Result<FamilyParams> {
    let Some(modulus) = &row.modulus else {
        return FamilyParams::from_json(&row.params);
    };
    let base = families::family_field(row.params.family, row.params.base_q)?;
    let ctx = Arc::new(FieldCtx::with_modulus(base.p() as u64, base.m(), modulus)?);
    let a = MatrixFq::parse(&ctx, &row.params.a)?;
    let j = &row.params;
    FamilyParams::new(ctx, j.family, j.k, j.l, j.shift, a)
}

/// Builds the code of one row, classifies it and compares with the
/// expected values. Distances are skipped when `expected.d` is empty.
pub fn run_row(table: Table, ip: InnerProduct, row: &ExampleRow, budget: u64) -> Result<RowOutcome> {
    let params = row_params(row)?;
    if params.family.inner_product() != ip {
        return Err(Error::Input(format!("row {} uses the wrong inner product", row.id)));
    }
    let spec = params.spec()?;
    let opts = ReportOptions { budget, distances: row.expected.d.is_some(), nongrs: false };
    let report = classify::classify_generator(spec.ctx(), &spec.generator(), &opts)?;
    let hull = hull::hull_report(spec.ctx(), &spec.generator(), ip)?.hull_dim;
    let computed = Computed { n: report.n, k: report.k, d: report.d, label: report.label, hull };
    let claim = families::predict(&params).claim;
    let claim_holds = claim != Claim::NoClaim && claim.holds_for(hull);
    let e = &row.expected;
    let pass = e.n == computed.n
        && e.k == computed.k
        && e.hull == hull
        && (e.d.is_none() || e.d == computed.d)
        && e.label.is_none_or(|l| label_matches(l, computed.label))
        && claim_holds;
    Ok(RowOutcome {
        table,
        id: row.id.clone(),
        params: row.params.clone(),
        note: row.note.clone(),
        inner_product: ip,
        expected: row.expected.clone(),
        computed,
        claim,
        claim_holds,
        pass,
    })
}

/// A published label matches when it equals the computed one; "AMDS" also
/// accepts NMDS codes, which are AMDS codes with an AMDS dual.
pub fn label_matches(expected: Label, computed: Option<Label>) -> bool {
    match (expected, computed) {
        (Label::Amds, Some(Label::Nmds)) => true,
        (e, c) => Some(e) == c,
    }
}

pub fn run_table(table: Table, budget: u64) -> Result<Vec<RowOutcome>> {
    use rayon::prelude::*;
    let (ip, rows) = rows(table)?;
    rows.par_iter().map(|r| run_row(table, ip, r, budget)).collect()
}

/// One-line human summary of a shift.
pub fn shift_label(s: Shift) -> String {
    match s {
        Shift::Delta(d) => format!("δ={d}"),
        Shift::Pair(s, t) => format!("(s,t)=({s},{t})"),
    }
}
