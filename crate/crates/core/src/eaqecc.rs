//! Entanglement-assisted quantum code parameters from classical hull data.
//!
//! An [n, k, d] code with hull dimension h gives [[n, k−h, d, n−k−h]] and,
//! through its dual, [[n, n−k−h, d⊥, k−h]]. Both are MDS when the
//! classical code is.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::classify::{CodeReport, Label};
use crate::error::{Error, Result};
use crate::hull::InnerProduct;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SourceCode {
    Code,
    Dual,
}

impl std::fmt::Display for SourceCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SourceCode::Code => "code",
            SourceCode::Dual => "dual",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EaqeccParams {
    pub n: usize,
    pub k_q: usize,
    pub d: usize,
    pub c: usize,
    pub mds_flag: bool,
    pub source: SourceCode,
    pub inner_product: InnerProduct,
}

impl EaqeccParams {
    pub fn tuple(&self) -> (usize, usize, usize, usize) {
        (self.n, self.k_q, self.d, self.c)
    }

    /// CSV row `n,kq,d,c,mds`.
    pub fn csv_row(&self) -> String {
        format!("{},{},{},{},{}", self.n, self.k_q, self.d, self.c, self.mds_flag)
    }
}

pub const CSV_HEADER: &str = "n,kq,d,c,mds";

impl fmt::Display for EaqeccParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{},{},{}]]", self.n, self.k_q, self.d, self.c)
    }
}

/// The pair of tuples for the code described by `report`.
pub fn derive(report: &CodeReport, ip: InnerProduct) -> Result<(EaqeccParams, EaqeccParams)> {
    let h = report.hull(ip).ok_or(Error::MissingHull(ip.name()))?.hull_dim;
    let d = report.d.ok_or_else(|| Error::Input("report has no minimum distance".into()))?;
    let d_dual = report.d_dual.ok_or(Error::MissingDualDistance)?;
    derive_from(report.n, report.k, d, d_dual, h, report.label == Some(Label::Mds), ip)
}

/// (n, k_q, c) of both tuples, for when the distances are not needed.
pub fn shape(n: usize, k: usize, hull_dim: usize) -> Result<[(usize, usize, usize); 2]> {
    let (a, b) = derive_from(n, k, 0, 0, hull_dim, false, InnerProduct::Euclidean)?;
    Ok([(a.n, a.k_q, a.c), (b.n, b.k_q, b.c)])
}

/// Tuples from raw parameters.
pub fn derive_from(
    n: usize,
    k: usize,
    d: usize,
    d_dual: usize,
    hull_dim: usize,
    mds: bool,
    ip: InnerProduct,
) -> Result<(EaqeccParams, EaqeccParams)> {
    if hull_dim > k || k + hull_dim > n {
        return Err(Error::Input(format!("hull dimension {hull_dim} impossible for [{n},{k}]")));
    }
    let primary = EaqeccParams {
        n,
        k_q: k - hull_dim,
        d,
        c: n - k - hull_dim,
        mds_flag: mds,
        source: SourceCode::Code,
        inner_product: ip,
    };
    let dual = EaqeccParams {
        n,
        k_q: n - k - hull_dim,
        d: d_dual,
        c: k - hull_dim,
        mds_flag: mds,
        source: SourceCode::Dual,
        inner_product: ip,
    };
    Ok((primary, dual))
}
