//! Minimum distance, Singleton defect and MDS/AMDS/NMDS labels.
//!
//! Two exact strategies are available and the cheaper one is chosen per
//! code:
//! * dependent columns of a parity-check matrix, searched by subset size
//!   (cheap when the redundancy n − k is small);
//! * hyperplanes spanned by k − 1 generator columns: a minimum-weight
//!   codeword vanishes on a maximal set of columns, which always spans a
//!   hyperplane (cheap when k is small).

use std::fmt;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::eaqecc::{self, EaqeccParams};
use crate::error::{Error, Result};
use crate::gf::{FieldCtx, Fq};
use crate::grl::GrlSpec;
use crate::hull::{self, HullReport, InnerProduct};
use crate::linalg::{self, EchelonBasis, MatrixFq};
use crate::nongrs::{self, NonGrsCertificate};

/// Default cap on subset tests per distance computation.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Label {
    #[serde(rename = "MDS")]
    Mds,
    #[serde(rename = "AMDS")]
    Amds,
    #[serde(rename = "NMDS")]
    Nmds,
    #[serde(rename = "other")]
    Other,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Label::Mds => "MDS",
            Label::Amds => "AMDS",
            Label::Nmds => "NMDS",
            Label::Other => "other",
        })
    }
}

impl std::str::FromStr for Label {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "MDS" => Ok(Label::Mds),
            "AMDS" => Ok(Label::Amds),
            "NMDS" => Ok(Label::Nmds),
            "other" => Ok(Label::Other),
            _ => Err(Error::Input(format!("unknown label {s:?}"))),
        }
    }
}

/// Label from the Singleton defects of a code and of its dual.
pub fn label_for(defect: usize, defect_dual: usize) -> Label {
    match (defect, defect_dual) {
        (0, _) => Label::Mds,
        (1, 1) => Label::Nmds,
        (1, _) => Label::Amds,
        _ => Label::Other,
    }
}

/// Which search found the distance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceMethod {
    ParityColumns,
    Hyperplanes,
}

fn binom(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Estimated work of each strategy for an [n, k] code.
pub fn distance_costs(n: usize, k: usize) -> (f64, f64) {
    let r = n - k;
    let parity = (0..r).map(|w| binom(n, w)).sum::<f64>() * n as f64;
    let hyper = binom(n, k.saturating_sub(1)) * (k * k + n) as f64;
    (parity, hyper)
}

/// Exact minimum distance of the code generated by the full-rank G.
pub fn min_distance(ctx: &FieldCtx, g: &MatrixFq, budget: u64) -> Result<usize> {
    min_distance_with_method(ctx, g, budget).map(|(d, _)| d)
}

pub fn min_distance_with_method(
    ctx: &FieldCtx,
    g: &MatrixFq,
    budget: u64,
) -> Result<(usize, DistanceMethod)> {
    let (k, n) = g.shape();
    let rank = linalg::rank(ctx, g);
    if rank != k || k == 0 {
        return Err(Error::RankDeficient { rank, expected: k.max(1) });
    }
    if k == n {
        return Ok((1, DistanceMethod::ParityColumns));
    }
    let (parity, hyper) = distance_costs(n, k);
    if parity <= hyper {
        let h = hull::dual_generator(ctx, g, InnerProduct::Euclidean)?;
        parity_search(ctx, &h, budget).map(|d| (d, DistanceMethod::ParityColumns))
    } else {
        hyperplane_search(ctx, g, budget).map(|d| (d, DistanceMethod::Hyperplanes))
    }
}

/// Smallest number of linearly dependent columns of H (its code has
/// length H.cols and distance at most H.rows + 1).
pub fn parity_search(ctx: &FieldCtx, h: &MatrixFq, budget: u64) -> Result<usize> {
    let (r, n) = h.shape();
    let cols: Vec<Vec<Fq>> = (0..n).map(|j| h.column(j)).collect();
    let used = AtomicU64::new(0);
    for w in 1..=r {
        let found = AtomicBool::new(false);
        let exceeded = AtomicBool::new(false);
        (0..n).into_par_iter().for_each(|first| {
            if found.load(Ordering::Relaxed) || exceeded.load(Ordering::Relaxed) {
                return;
            }
            let mut basis = EchelonBasis::new(r);
            let mut stack = Vec::with_capacity(w);
            level_dfs(ctx, &cols, w, first, &mut basis, &mut stack, &used, budget, &found, &exceeded);
        });
        if found.load(Ordering::Relaxed) {
            return Ok(w);
        }
        if exceeded.load(Ordering::Relaxed) {
            return Err(Error::BudgetExceeded { budget, lower_bound: w });
        }
    }
    Ok(r + 1)
}

/// Searches for a dependent set of exactly `w` columns whose smallest index
/// is `first` (all proper subsets are independent at this level).
#[allow(clippy::too_many_arguments)]
fn level_dfs(
    ctx: &FieldCtx,
    cols: &[Vec<Fq>],
    w: usize,
    j: usize,
    basis: &mut EchelonBasis,
    stack: &mut Vec<usize>,
    used: &AtomicU64,
    budget: u64,
    found: &AtomicBool,
    exceeded: &AtomicBool,
) {
    if found.load(Ordering::Relaxed) || exceeded.load(Ordering::Relaxed) {
        return;
    }
    if used.fetch_add(1, Ordering::Relaxed) >= budget {
        exceeded.store(true, Ordering::Relaxed);
        return;
    }
    let residual = basis.reduce(ctx, &cols[j]);
    let dependent = residual.iter().all(|x| x.is_zero());
    if stack.len() + 1 == w {
        if dependent {
            found.store(true, Ordering::Relaxed);
        }
        return;
    }
    if dependent {
        return;
    }
    basis.push_reduced(ctx, residual);
    stack.push(j);
    for next in j + 1..cols.len() {
        level_dfs(ctx, cols, w, next, basis, stack, used, budget, found, exceeded);
    }
    stack.pop();
    basis.pop();
}

/// n minus the largest number of generator columns lying in a hyperplane.
pub fn hyperplane_search(ctx: &FieldCtx, g: &MatrixFq, budget: u64) -> Result<usize> {
    let (k, n) = g.shape();
    let cols: Vec<Vec<Fq>> = (0..n).map(|j| g.column(j)).collect();
    let best = AtomicUsize::new(n);
    let used = AtomicU64::new(0);
    let exceeded = AtomicBool::new(false);
    if k == 1 {
        let w = cols.iter().filter(|c| !c[0].is_zero()).count();
        return Ok(w);
    }
    (0..n).into_par_iter().for_each(|first| {
        let mut basis = EchelonBasis::new(k);
        let mut chosen = Vec::with_capacity(k - 1);
        hyper_dfs(ctx, &cols, k, first, &mut basis, &mut chosen, &best, &used, budget, &exceeded);
    });
    if exceeded.load(Ordering::Relaxed) {
        return Err(Error::BudgetExceeded { budget, lower_bound: 1 });
    }
    Ok(best.load(Ordering::Relaxed))
}

#[allow(clippy::too_many_arguments)]
fn hyper_dfs(
    ctx: &FieldCtx,
    cols: &[Vec<Fq>],
    k: usize,
    j: usize,
    basis: &mut EchelonBasis,
    chosen: &mut Vec<usize>,
    best: &AtomicUsize,
    used: &AtomicU64,
    budget: u64,
    exceeded: &AtomicBool,
) {
    if exceeded.load(Ordering::Relaxed) {
        return;
    }
    if !basis.push(ctx, &cols[j]) {
        return;
    }
    chosen.push(j);
    if chosen.len() == k - 1 {
        if used.fetch_add(1, Ordering::Relaxed) >= budget {
            exceeded.store(true, Ordering::Relaxed);
        } else {
            let sub = MatrixFq::from_rows(chosen.iter().map(|&c| cols[c].clone()).collect())
                .expect("equal lengths");
            let normal = linalg::kernel_basis(ctx, &sub);
            let h = normal.row(0);
            let weight = cols
                .iter()
                .filter(|c| !ctx.sum(c.iter().zip(h).map(|(&x, &y)| ctx.mul(x, y))).is_zero())
                .count();
            best.fetch_min(weight, Ordering::Relaxed);
        }
    } else {
        for next in j + 1..cols.len() {
            if cols.len() - next < k - 1 - chosen.len() {
                break;
            }
            hyper_dfs(ctx, cols, k, next, basis, chosen, best, used, budget, exceeded);
        }
    }
    chosen.pop();
    basis.pop();
}

/// Computed facts about one code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeReport {
    pub field: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub base_q: Option<u32>,
    pub n: usize,
    pub k: usize,
    pub d: Option<usize>,
    pub d_dual: Option<usize>,
    pub defect: Option<usize>,
    pub defect_dual: Option<usize>,
    pub label: Option<Label>,
    pub hull_e: Option<HullReport>,
    pub hull_h: Option<HullReport>,
    pub eaqecc: Vec<EaqeccParams>,
    pub nongrs: Option<NonGrsCertificate>,
    pub notes: Vec<String>,
}

impl CodeReport {
    pub fn params(&self) -> String {
        match self.d {
            Some(d) => format!("[{},{},{}]", self.n, self.k, d),
            None => format!("[{},{}]", self.n, self.k),
        }
    }

    pub fn hull(&self, ip: InnerProduct) -> Option<&HullReport> {
        match ip {
            InnerProduct::Euclidean => self.hull_e.as_ref(),
            InnerProduct::Hermitian => self.hull_h.as_ref(),
        }
    }

    /// CSV row `n,k,d,label,hull_e,hull_h`.
    pub fn csv_row(&self) -> String {
        let opt = |x: Option<String>| x.unwrap_or_default();
        format!(
            "{},{},{},{},{},{}",
            self.n,
            self.k,
            opt(self.d.map(|d| d.to_string())),
            opt(self.label.map(|l| l.to_string())),
            opt(self.hull_e.as_ref().map(|h| h.hull_dim.to_string())),
            opt(self.hull_h.as_ref().map(|h| h.hull_dim.to_string())),
        )
    }
}

pub const CSV_HEADER: &str = "n,k,d,label,hull_e,hull_h";

/// What to compute beyond the basic [n, k].
#[derive(Clone, Copy, Debug)]
pub struct ReportOptions {
    pub budget: u64,
    pub distances: bool,
    pub nongrs: bool,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions { budget: DEFAULT_BUDGET, distances: true, nongrs: true }
    }
}

/// Distances, defects and label of the code generated by G. Distances
/// that exceed the budget are left empty and explained in `notes`.
pub fn classify_generator(ctx: &FieldCtx, g: &MatrixFq, opts: &ReportOptions) -> Result<CodeReport> {
    let (k, n) = g.shape();
    let rank = linalg::rank(ctx, g);
    if rank != k {
        return Err(Error::RankDeficient { rank, expected: k });
    }
    let mut report = CodeReport {
        field: ctx.spec(),
        base_q: ctx.square_base(),
        n,
        k,
        d: None,
        d_dual: None,
        defect: None,
        defect_dual: None,
        label: None,
        hull_e: None,
        hull_h: None,
        eaqecc: Vec::new(),
        nongrs: None,
        notes: Vec::new(),
    };
    if !opts.distances {
        return Ok(report);
    }
    match min_distance(ctx, g, opts.budget) {
        Ok(d) => report.d = Some(d),
        Err(Error::BudgetExceeded { lower_bound, .. }) => {
            report.notes.push(format!("minimum distance not computed within budget (d ≥ {lower_bound})"))
        }
        Err(e) => return Err(e),
    }
    if k < n {
        let dual = hull::dual_generator(ctx, g, InnerProduct::Euclidean)?;
        match min_distance(ctx, &dual, opts.budget) {
            Ok(d) => report.d_dual = Some(d),
            Err(Error::BudgetExceeded { lower_bound, .. }) => report
                .notes
                .push(format!("dual distance not computed within budget (d ≥ {lower_bound})")),
            Err(e) => return Err(e),
        }
    }
    report.defect = report.d.map(|d| n + 1 - k - d);
    report.defect_dual = report.d_dual.map(|d| k + 1 - d);
    if let (Some(s), Some(sd)) = (report.defect, report.defect_dual) {
        report.label = Some(label_for(s, sd));
    }
    Ok(report)
}

/// [n, k, d], dual distance and label of a GRL code.
pub fn classify(spec: &GrlSpec, budget: u64) -> Result<CodeReport> {
    let opts = ReportOptions { budget, distances: true, nongrs: false };
    classify_generator(spec.ctx(), &spec.generator(), &opts)
}

/// Full report: classification, Euclidean hull, Hermitian hull (square
/// fields only), EAQECC tuples and a non-GRS certificate.
pub fn report(spec: &GrlSpec, opts: &ReportOptions) -> Result<CodeReport> {
    let ctx = spec.ctx();
    let g = spec.generator();
    let mut r = classify_generator(ctx, &g, opts)?;
    r.hull_e = Some(hull::hull_report(ctx, &g, InnerProduct::Euclidean)?);
    if ctx.square_base().is_some() {
        r.hull_h = Some(hull::hull_report(ctx, &g, InnerProduct::Hermitian)?);
    }
    for ip in [InnerProduct::Euclidean, InnerProduct::Hermitian] {
        if r.hull(ip).is_some() && r.d.is_some() && r.d_dual.is_some() {
            let (a, b) = eaqecc::derive(&r, ip)?;
            r.eaqecc.push(a);
            r.eaqecc.push(b);
        }
    }
    if opts.nongrs {
        r.nongrs = Some(nongrs::nongrs_certificate(spec)?);
    }
    Ok(r)
}
