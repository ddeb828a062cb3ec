//! Generalized Roth–Lempel codes: an RS block on n evaluation points
//! extended by ℓ columns that carry the top ℓ message coefficients mixed
//! through an invertible ℓ×ℓ matrix A.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{FieldCtx, Fq};
use crate::linalg::{self, MatrixFq};

/// Evaluation points α, column multipliers v, tail matrix A, dimension k
/// and tail width ℓ.
#[derive(Clone, Debug)]
pub struct GrlSpec {
    ctx: Arc<FieldCtx>,
    alpha: Vec<Fq>,
    v: Vec<Fq>,
    a: MatrixFq,
    k: usize,
    l: usize,
}

/// JSON form: `{ field: "p^m", k, l, alpha: [...], v: [...], A: [[...]] }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrlSpecJson {
    pub field: String,
    pub k: usize,
    pub l: usize,
    pub alpha: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v: Option<Vec<String>>,
    #[serde(rename = "A")]
    pub a: Vec<Vec<String>>,
}

impl GrlSpec {
    /// Validates and builds a spec. Requires 2 ≤ ℓ ≤ k ≤ n ≤ q, distinct α,
    /// nonzero v and invertible A.
    pub fn new(
        ctx: Arc<FieldCtx>,
        alpha: Vec<Fq>,
        v: Vec<Fq>,
        a: MatrixFq,
        k: usize,
        l: usize,
    ) -> Result<Self> {
        let alpha: Vec<Fq> = alpha.into_iter().map(|x| ctx.reduce(x)).collect();
        let v: Vec<Fq> = v.into_iter().map(|x| ctx.reduce(x)).collect();
        let a = a.map(|x| ctx.reduce(x));
        let spec = GrlSpec { ctx, alpha, v, a, k, l };
        let problems = spec.violations();
        if problems.is_empty() {
            Ok(spec)
        } else {
            Err(Error::InvariantViolation(problems))
        }
    }

    /// Spec with all column multipliers equal to 1.
    pub fn unit(ctx: Arc<FieldCtx>, alpha: Vec<Fq>, a: MatrixFq, k: usize, l: usize) -> Result<Self> {
        let v = vec![Fq::Pow(0); alpha.len()];
        Self::new(ctx, alpha, v, a, k, l)
    }

    fn violations(&self) -> Vec<String> {
        let (n, k, l, q) = (self.alpha.len(), self.k, self.l, self.ctx.q() as usize);
        let mut out = Vec::new();
        if !(2 <= l && l <= k && k <= n && n <= q) {
            out.push(format!("need 2 ≤ ℓ ≤ k ≤ n ≤ q, got ℓ={l}, k={k}, n={n}, q={q}"));
        }
        if self.v.len() != n {
            out.push(format!("v has length {}, expected n={n}", self.v.len()));
        }
        if let Some((i, j)) = first_collision(&self.alpha) {
            out.push(format!("α entries {i} and {j} coincide"));
        }
        if let Some(i) = self.v.iter().position(|x| x.is_zero()) {
            out.push(format!("v entry {i} is zero"));
        }
        if self.a.shape() != (l, l) {
            out.push(format!("A has shape {:?}, expected {l}×{l}", self.a.shape()));
        } else if linalg::rank(&self.ctx, &self.a) != l {
            out.push("A ∈ GL_ℓ fails: A is singular".to_string());
        }
        out
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn alpha(&self) -> &[Fq] {
        &self.alpha
    }

    pub fn v(&self) -> &[Fq] {
        &self.v
    }

    pub fn a(&self) -> &MatrixFq {
        &self.a
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> usize {
        self.l
    }

    /// Number of evaluation points.
    pub fn n(&self) -> usize {
        self.alpha.len()
    }

    /// Code length n + ℓ.
    pub fn length(&self) -> usize {
        self.alpha.len() + self.l
    }

    /// Same code data with v replaced by the all-ones vector.
    pub fn with_unit_multipliers(&self) -> Self {
        GrlSpec { v: vec![Fq::Pow(0); self.n()], ..self.clone() }
    }

    /// k × (n+ℓ) generator: row r holds v_j α_j^r on the RS block; the tail
    /// is zero above row k−ℓ and row r−(k−ℓ) of A from there on.
    pub fn generator(&self) -> MatrixFq {
        let ctx = &self.ctx;
        let (n, k, l) = (self.n(), self.k, self.l);
        MatrixFq::from_fn(k, n + l, |r, c| {
            if c < n {
                ctx.mul(self.v[c], ctx.pow(self.alpha[c], r as u64))
            } else if r + l >= k {
                self.a.get(r + l - k, c - n)
            } else {
                Fq::Zero
            }
        })
    }

    pub fn to_json(&self) -> GrlSpecJson {
        let s = |xs: &[Fq]| xs.iter().map(Fq::to_string).collect::<Vec<_>>();
        GrlSpecJson {
            field: self.ctx.spec(),
            k: self.k,
            l: self.l,
            alpha: s(&self.alpha),
            v: Some(s(&self.v)),
            a: self.a.to_strings(),
        }
    }

    /// Builds a spec from its JSON form, reusing `ctx` when it matches the
    /// requested field.
    pub fn from_json(j: &GrlSpecJson, ctx: Option<Arc<FieldCtx>>) -> Result<Self> {
        let ctx = match ctx {
            Some(c) if c.spec() == normalize_field(&j.field)? => c,
            _ => Arc::new(FieldCtx::parse(&j.field)?),
        };
        let parse = |xs: &[String]| -> Result<Vec<Fq>> {
            xs.iter().map(|s| ctx.parse_element(s).map_err(Error::from)).collect()
        };
        let alpha = parse(&j.alpha)?;
        let v = match &j.v {
            Some(v) => parse(v)?,
            None => vec![Fq::Pow(0); alpha.len()],
        };
        let a = MatrixFq::parse(&ctx, &j.a)?;
        Self::new(ctx, alpha, v, a, j.k, j.l)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let j: GrlSpecJson = serde_json::from_str(s).map_err(|e| {
            Error::Input(format!("spec JSON line {} column {}: {e}", e.line(), e.column()))
        })?;
        Self::from_json(&j, None)
    }
}

fn normalize_field(s: &str) -> Result<String> {
    let (p, m) = crate::gf::parse_field_spec(s)?;
    Ok(format!("{p}^{m}"))
}

/// First pair of equal entries, if any.
pub fn first_collision(xs: &[Fq]) -> Option<(usize, usize)> {
    let mut seen = HashMap::with_capacity(xs.len());
    for (j, x) in xs.iter().enumerate() {
        if let Some(&i) = seen.get(x) {
            return Some((i, j));
        }
        seen.insert(*x, j);
    }
    None
}

pub fn alpha_distinct(alpha: &[Fq]) -> bool {
    first_collision(alpha).is_none()
}

/// The two blocks γ^s·μ_k and γ^t·μ_k (μ_k the k-th roots of unity in a
/// group of order `order`) are disjoint iff order/k ∤ s − t.
pub fn two_block_distinct(order: u64, k: u64, s: i64, t: i64) -> bool {
    let step = (order / k) as i64;
    (s - t).rem_euclid(step) != 0
}

/// Σ_{i=1}^{s} (β·γ^{(N/s)·i})^t with N the group order: β^t·s if s | t,
/// else 0.
pub fn power_sum(ctx: &FieldCtx, beta: Fq, s: u64, t: i64) -> Result<Fq> {
    let order = ctx.order() as u64;
    if s == 0 || !order.is_multiple_of(s) {
        return Err(Error::NotADivisor { divisor: s, value: order });
    }
    if t.rem_euclid(s as i64) != 0 {
        return Ok(Fq::Zero);
    }
    let bt = ctx.powi(beta, t)?;
    Ok(ctx.mul(bt, ctx.from_i64(s as i64)))
}

/// The k×k matrix with (r, c) entry Σ_{i=1}^{k} (γ^t α_i)^{r + c·q}
/// (0-indexed r, c; α_i = γ^{(q²−1)/k·i}) in a field of size q².
pub fn build_m(ctx: &FieldCtx, k: u64, t: i64) -> Result<MatrixFq> {
    let base = ctx
        .square_base()
        .ok_or(crate::gf::GfError::NotASquareField(ctx.q() as u64))? as i64;
    let order = ctx.order() as u64;
    if k == 0 || !order.is_multiple_of(k) {
        return Err(Error::NotADivisor { divisor: k, value: order });
    }
    let beta = ctx.gamma_pow(t);
    let k = k as usize;
    let mut out = MatrixFq::zeros(k, k);
    for r in 0..k {
        for c in 0..k {
            out.set(r, c, power_sum(ctx, beta, k as u64, r as i64 + c as i64 * base)?);
        }
    }
    Ok(out)
}

/// The k-th roots of unity α_i = γ^{(N/k)·i}, i = 1..k, in a group of
/// order N.
pub fn roots_of_unity(ctx: &FieldCtx, k: u64) -> Result<Vec<Fq>> {
    let order = ctx.order() as u64;
    if k == 0 || !order.is_multiple_of(k) {
        return Err(Error::NotADivisor { divisor: k, value: order });
    }
    let step = (order / k) as i64;
    Ok((1..=k as i64).map(|i| ctx.gamma_pow(step * i)).collect())
}
