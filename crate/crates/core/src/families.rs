//! Evaluation-point families built from cosets of the k-th roots of unity,
//! the hull-dimension claims attached to each family, and audits that check
//! a claim against the computed hull.
//!
//! Euclidean families live in GF(q) with k | q−1; Hermitian families live
//! in GF(q²) with k | q²−1. Writing μ_k = {α_1, …, α_k}, α_i = γ^{(N/k)·i}
//! (N the multiplicative group order), the families are:
//!
//! | family | evaluation points                  | length       |
//! |--------|------------------------------------|--------------|
//! | E1, H1 | γ^δ·μ_k                            | k+ℓ          |
//! | E2, H2 | {0} ∪ γ^δ·μ_k                      | k+1+ℓ        |
//! | E3, H3 | γ^s·μ_k ∪ γ^t·μ_k (δ form: s = 0)  | 2k+ℓ         |
//! | E4, H4 | γ^j·μ_k for j = 0..=δ (E4: δ = 2)  | (δ+1)k+ℓ     |

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::{self, DEFAULT_BUDGET};
use crate::eaqecc;
use crate::error::{Error, Result};
use crate::gf::{self, gcd, v_p, FieldCtx, Fq};
use crate::grl::{first_collision, GrlSpec};
use crate::hull::{self, InnerProduct};
use crate::linalg::{self, MatrixFq};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    E1,
    E2,
    E3,
    E4,
    H1,
    H2,
    H3,
    H4,
}

impl Family {
    pub const ALL: [Family; 8] =
        [Family::E1, Family::E2, Family::E3, Family::E4, Family::H1, Family::H2, Family::H3, Family::H4];

    pub fn is_hermitian(self) -> bool {
        matches!(self, Family::H1 | Family::H2 | Family::H3 | Family::H4)
    }

    pub fn inner_product(self) -> InnerProduct {
        if self.is_hermitian() {
            InnerProduct::Hermitian
        } else {
            InnerProduct::Euclidean
        }
    }

    fn kind(self) -> Kind {
        match self {
            Family::E1 | Family::H1 => Kind::Single,
            Family::E2 | Family::H2 => Kind::WithZero,
            Family::E3 | Family::H3 => Kind::TwoBlock,
            Family::E4 | Family::H4 => Kind::Chain,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Single,
    WithZero,
    TwoBlock,
    Chain,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Input(format!("unknown family {s:?}")))
    }
}

/// Block exponents: a single δ, or a pair (s, t) for two-block families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Shift {
    Delta(i64),
    Pair(i64, i64),
}

/// The field a family lives in: GF(q) or GF(q²).
pub fn family_field(family: Family, base_q: u64) -> Result<Arc<FieldCtx>> {
    let (p, m) = gf::prime_power(base_q).ok_or(gf::GfError::NotPrime(base_q))?;
    let m = if family.is_hermitian() { 2 * m } else { m };
    Ok(Arc::new(FieldCtx::new(p, m)?))
}

#[derive(Clone, Debug)]
pub struct FamilyParams {
    ctx: Arc<FieldCtx>,
    pub family: Family,
    pub base_q: u64,
    pub k: usize,
    pub l: usize,
    pub shift: Shift,
    pub a: MatrixFq,
}

/// Serializable view of [`FamilyParams`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyParamsJson {
    pub family: Family,
    pub base_q: u64,
    pub k: usize,
    pub l: usize,
    pub shift: Shift,
    #[serde(rename = "A")]
    pub a: Vec<Vec<String>>,
}

impl FamilyParams {
    /// Checks the divisibility and shape invariants; `ctx` must be the
    /// family's field (see [`family_field`]).
    pub fn new(
        ctx: Arc<FieldCtx>,
        family: Family,
        k: usize,
        l: usize,
        shift: Shift,
        a: MatrixFq,
    ) -> Result<Self> {
        let base_q = match (family.is_hermitian(), ctx.square_base()) {
            (true, Some(b)) => b as u64,
            (true, None) => return Err(gf::GfError::NotASquareField(ctx.q() as u64).into()),
            (false, _) => ctx.q() as u64,
        };
        let mut bad = Vec::new();
        let order = ctx.order() as u64;
        if k < 2 || !order.is_multiple_of(k as u64) {
            bad.push(format!("k = {k} must be at least 2 and divide {order}"));
        }
        if !(2 <= l && l <= k) {
            bad.push(format!("need 2 ≤ ℓ ≤ k, got ℓ = {l}"));
        }
        if a.shape() != (l, l) {
            bad.push(format!("A has shape {:?}, expected {l}×{l}", a.shape()));
        }
        match (family.kind(), shift) {
            (Kind::TwoBlock, _) => {}
            (_, Shift::Pair(..)) => bad.push(format!("{family} takes a single shift δ")),
            (Kind::Chain, Shift::Delta(d)) if d < 1 => bad.push("chain families need δ ≥ 1".into()),
            _ => {}
        }
        if family == Family::E4 && shift != Shift::Delta(2) {
            bad.push("E4 uses exactly three blocks (δ = 2)".into());
        }
        if !bad.is_empty() {
            return Err(Error::InvariantViolation(bad));
        }
        let a = a.map(|x| ctx.reduce(x));
        Ok(FamilyParams { ctx, family, base_q, k, l, shift, a })
    }

    pub fn from_json(j: &FamilyParamsJson) -> Result<Self> {
        let ctx = family_field(j.family, j.base_q)?;
        let a = MatrixFq::parse(&ctx, &j.a)?;
        Self::new(ctx, j.family, j.k, j.l, j.shift, a)
    }

    pub fn to_json(&self) -> FamilyParamsJson {
        FamilyParamsJson {
            family: self.family,
            base_q: self.base_q,
            k: self.k,
            l: self.l,
            shift: self.shift,
            a: self.a.to_strings(),
        }
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    /// Multiplicative group order N (q−1 or q²−1).
    pub fn order(&self) -> u64 {
        self.ctx.order() as u64
    }

    /// Number of evaluation points.
    pub fn n(&self) -> usize {
        let k = self.k;
        match self.family.kind() {
            Kind::Single => k,
            Kind::WithZero => k + 1,
            Kind::TwoBlock => 2 * k,
            Kind::Chain => (self.chain_len() as usize + 1) * k,
        }
    }

    /// Code length from the family template.
    pub fn length(&self) -> usize {
        self.n() + self.l
    }

    fn chain_len(&self) -> i64 {
        match self.shift {
            Shift::Delta(d) => d,
            Shift::Pair(..) => 0,
        }
    }

    /// Block exponents (s, t) of a two-block family; the δ form is (0, δ).
    fn pair(&self) -> (i64, i64) {
        match self.shift {
            Shift::Pair(s, t) => (s, t),
            Shift::Delta(d) => (0, d),
        }
    }

    /// The GRL spec with unit multipliers.
    pub fn spec(&self) -> Result<GrlSpec> {
        GrlSpec::unit(self.ctx.clone(), make_alpha(self)?, self.a.clone(), self.k, self.l)
    }
}

/// Assembles the evaluation points and checks them for collisions.
pub fn make_alpha(params: &FamilyParams) -> Result<Vec<Fq>> {
    let ctx = &params.ctx;
    let k = params.k as u64;
    let order = params.order();
    if !order.is_multiple_of(k) {
        return Err(Error::NotADivisor { divisor: k, value: order });
    }
    let roots = crate::grl::roots_of_unity(ctx, k)?;
    let coset = |e: i64| -> Vec<Fq> {
        let g = ctx.gamma_pow(e);
        roots.iter().map(|&x| ctx.mul(g, x)).collect()
    };
    let step = order / k;
    let (alpha, clause) = match params.family.kind() {
        Kind::Single => (coset(params.chain_len()), String::new()),
        Kind::WithZero => {
            let mut v = vec![Fq::Zero];
            v.extend(coset(params.chain_len()));
            (v, String::new())
        }
        Kind::TwoBlock => {
            let (s, t) = params.pair();
            let mut v = coset(s);
            v.extend(coset(t));
            (v, format!("(N/k) = {step} divides s − t = {}", s - t))
        }
        Kind::Chain => {
            let d = params.chain_len();
            let v = (0..=d).flat_map(coset).collect();
            (v, format!("(N/k) = {step} divides some shift difference up to δ = {d}"))
        }
    };
    if let Some((first, second)) = first_collision(&alpha) {
        return Err(Error::DistinctnessViolation { first, second, clause });
    }
    Ok(alpha)
}

/// Hull-dimension claim.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Claim {
    Lcd,
    HullEq(usize),
    HullLe(usize),
    NoClaim,
}

impl Claim {
    pub fn holds_for(self, hull: usize) -> bool {
        match self {
            Claim::Lcd => hull == 0,
            Claim::HullEq(d) => hull == d,
            Claim::HullLe(l) => hull <= l,
            Claim::NoClaim => true,
        }
    }

    /// Largest hull dimension the claim allows.
    pub fn max_hull(self) -> Option<usize> {
        match self {
            Claim::Lcd => Some(0),
            Claim::HullEq(d) | Claim::HullLe(d) => Some(d),
            Claim::NoClaim => None,
        }
    }

    fn is_exact(self) -> bool {
        matches!(self, Claim::Lcd | Claim::HullEq(_))
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Claim::Lcd => write!(f, "LCD"),
            Claim::HullEq(d) => write!(f, "hull = {d}"),
            Claim::HullLe(l) => write!(f, "hull ≤ {l}"),
            Claim::NoClaim => write!(f, "no claim"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub name: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiredClause {
    pub clause: String,
    pub claim: Claim,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prediction {
    pub claim: Claim,
    /// The clause behind `claim`, if any.
    pub clause: Option<String>,
    /// Every clause whose hypotheses hold.
    pub fired: Vec<FiredClause>,
    /// Every evaluated hypothesis term.
    pub witnesses: Vec<Witness>,
}

/// Conditions (1)–(5) under which α = μ_k ∪ γ^δ μ_k has distinct
/// entries and 1 + γ^{δk} ≠ 0 in a group of order `order`. Returns the
/// indices of the conditions that hold.
pub fn delta_conditions(order: u64, k: u64, delta: u64) -> Vec<u8> {
    let mut out = Vec::new();
    let (v2n, v2k) = (v_p(order, 2) as i64, v_p(k, 2) as i64);
    let e = v2n - v2k;
    let two_pow = pure_power(delta, 2);
    let odd_pow = odd_prime_power(delta);
    let odd_primes_n: Vec<u64> = gf::prime_factors(order).into_iter().filter(|&p| p != 2).collect();
    let has_odd_gap = odd_primes_n.iter().any(|&p| v_p(k, p) < v_p(order, p));
    if v2k == v2n && v2n >= 1 && matches!(two_pow, Some(mu) if mu >= 1) {
        out.push(1);
    }
    if v2k < v2n && matches!(two_pow, Some(j) if (j as i64) <= e - 2) {
        out.push(2);
    }
    if e != 1 {
        if let Some((p, x)) = odd_pow {
            if v_p(order, p) == v_p(k, p) && x > v_p(order, p) {
                out.push(3);
            }
        }
    }
    if matches!(two_pow, Some(x) if x >= v2n as u32) && has_odd_gap {
        out.push(4);
    }
    if e != 1 {
        let fits = |p: u64, x: u32| v_p(k, p) < v_p(order, p) && x < v_p(order, p) - v_p(k, p);
        let five = if delta == 1 {
            has_odd_gap
        } else if let Some((p, x)) = odd_pow {
            fits(p, x)
        } else {
            false
        };
        if five {
            out.push(5);
        }
    }
    out
}

/// Some(x) if n = p^x.
fn pure_power(mut n: u64, p: u64) -> Option<u32> {
    if n == 0 {
        return None;
    }
    let mut x = 0;
    while n.is_multiple_of(p) {
        n /= p;
        x += 1;
    }
    (n == 1).then_some(x)
}

/// Some((p, x)) if n = p^x for an odd prime p and x ≥ 1.
fn odd_prime_power(n: u64) -> Option<(u64, u32)> {
    let f = gf::prime_factors(n);
    match f.as_slice() {
        [p] if *p != 2 => pure_power(n, *p).map(|x| (*p, x)),
        _ => None,
    }
}

/// Representative of δ mod N in [1, N].
fn reduce_shift(d: i64, order: u64) -> i64 {
    (d - 1).rem_euclid(order as i64) + 1
}

fn v2_signed(x: i64) -> i64 {
    v_p(x.unsigned_abs(), 2) as i64
}

/// Δ_i = i + (k−i)·q for 1 ≤ i ≤ k−1.
pub fn delta_i(base_q: u64, k: u64, i: u64) -> u64 {
    i + (k - i) * base_q
}

/// T = {v_2(q²−1) − 1 − v_2(Δ_i) : 1 ≤ i ≤ k−1}.
pub fn set_t(base_q: u64, k: u64) -> Vec<i64> {
    let n = base_q * base_q - 1;
    let mut t: Vec<i64> = (1..k)
        .map(|i| v_p(n, 2) as i64 - 1 - v_p(delta_i(base_q, k, i), 2) as i64)
        .collect();
    t.sort_unstable();
    t.dedup();
    t
}

/// N_ℓ = {v_2(q−1) − v_2(i) − 1 : 1 ≤ i ≤ k−ℓ−1}.
pub fn set_n(base_q: u64, k: u64, l: u64) -> Vec<i64> {
    let mut out: Vec<i64> = (1..k.saturating_sub(l))
        .map(|i| v_p(base_q - 1, 2) as i64 - v_p(i, 2) as i64 - 1)
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// (q²−1)/gcd(q²−1, x), the order of γ^x in GF(q²)^*.
fn order_of_power(n: u64, x: u64) -> u64 {
    n / gcd(n, x)
}

/// S_t = {i ∈ [t, k−1] : ord(γ^{Δ_i}) | δ+1}.
pub fn set_s(base_q: u64, k: u64, delta: u64, t: u64) -> Vec<u64> {
    let n = base_q * base_q - 1;
    (t.max(1)..k)
        .filter(|&i| (delta + 1).is_multiple_of(order_of_power(n, delta_i(base_q, k, i))))
        .collect()
}

/// U_ℓ = {i ∈ [1, k−ℓ−1] : ord(γ^{i(q+1)}) | δ+1}.
pub fn set_u(base_q: u64, k: u64, l: u64, delta: u64) -> Vec<u64> {
    let n = base_q * base_q - 1;
    (1..k.saturating_sub(l))
        .filter(|&i| (delta + 1).is_multiple_of(order_of_power(n, i * (base_q + 1))))
        .collect()
}

/// Σ_i a_{1i}² (Euclidean) or Σ_i a_{1i}^{1+q} (Hermitian) over the first
/// row of A.
fn first_row_norm(params: &FamilyParams) -> Fq {
    let ctx = &params.ctx;
    let e = if params.family.is_hermitian() { params.base_q + 1 } else { 2 };
    ctx.sum(params.a.row(0).iter().map(|&x| ctx.pow(x, e)))
}

/// The RS contribution to the Gram entry at the first tail row when
/// 2ℓ = k, in the closed form of each family.
pub fn corner_rs_term(params: &FamilyParams) -> Fq {
    let ctx = &params.ctx;
    let (k, l, q) = (params.k as i64, params.l as i64, params.base_q as i64);
    let kf = ctx.from_i64(k);
    let e = if params.family.is_hermitian() { k - l + l * q } else { k };
    let g = |x: i64| ctx.gamma_pow(x);
    let blocks = match params.family.kind() {
        Kind::Single | Kind::WithZero => g(params.chain_len() * e),
        Kind::TwoBlock => {
            let (s, t) = params.pair();
            ctx.add(g(s * e), g(t * e))
        }
        Kind::Chain => ctx.sum((0..=params.chain_len()).map(|j| g(j * e))),
    };
    ctx.mul(kf, blocks)
}

/// Rank of the principal block of A·A^H on the tail rows `rows` (global
/// generator row indices in [k−ℓ, k−1]).
fn tail_block_rank(params: &FamilyParams, rows: &[u64]) -> usize {
    let ctx = &params.ctx;
    let off = (params.k - params.l) as u64;
    let idx: Vec<usize> = rows.iter().map(|&i| (i - off) as usize).collect();
    let m = MatrixFq::from_fn(idx.len(), idx.len(), |r, c| {
        let (x, y) = (params.a.row(idx[r]), params.a.row(idx[c]));
        ctx.sum(x.iter().zip(y).map(|(&u, &v)| ctx.mul(u, ctx.pow(v, params.base_q))))
    });
    linalg::rank(ctx, &m)
}

/// Evaluates every hypothesis for the family and returns the strongest
/// claim.
pub fn predict(params: &FamilyParams) -> Prediction {
    let mut w = Vec::new();
    let mut fired = Vec::new();
    let note = |w: &mut Vec<Witness>, name: &str, value: String| {
        w.push(Witness { name: name.into(), value })
    };
    let ctx = &params.ctx;
    let p = ctx.p() as u64;
    let q = params.base_q;
    let k = params.k as u64;
    let l = params.l as u64;
    let order = params.order();
    let small = 2 * l < k;
    let half = 2 * l == k;
    let corner = ctx.add(corner_rs_term(params), first_row_norm(params));
    note(&mut w, "2l_vs_k", format!("2ℓ = {}, k = {k}", 2 * l));
    if half {
        note(&mut w, "corner", format!("{corner}"));
    }
    let corner_zero = corner.is_zero();

    // LCD when ℓ < k/2, or ℓ = k/2 and the corner term is nonzero.
    let lcd_shape = |fired: &mut Vec<FiredClause>, name: &str| {
        if small || (half && !corner_zero) {
            fired.push(FiredClause { clause: name.into(), claim: Claim::Lcd });
        }
    };
    // Hull dimension `base` when ℓ < k/2 or the corner term is nonzero,
    // base + 1 when ℓ = k/2 and it vanishes.
    let hull_shape = |fired: &mut Vec<FiredClause>, name: &str, base: usize| {
        if small || (half && !corner_zero) {
            fired.push(FiredClause { clause: name.into(), claim: Claim::HullEq(base) });
        } else if half {
            fired.push(FiredClause { clause: name.into(), claim: Claim::HullEq(base + 1) });
        }
    };
    let divides = |d: u64, x: u64| x.is_multiple_of(d);

    match params.family {
        Family::E1 | Family::E2 => {
            // γ^δ depends on δ mod N only, so every δ has a representative in [1, N].
            note(&mut w, "delta_reduced", format!("{}", reduce_shift(params.chain_len(), order)));
            let zero_pt = params.family == Family::E2;
            if !zero_pt || !(k + 1).is_multiple_of(p) {
                lcd_shape(&mut fired, if zero_pt { "with_zero_lcd" } else { "single_lcd" });
                if half && corner_zero {
                    fired.push(FiredClause {
                        clause: if zero_pt { "with_zero_hull_one" } else { "single_hull_one" }.into(),
                        claim: Claim::HullEq(1),
                    });
                }
            } else {
                note(&mut w, "p_divides_k_plus_1", "true".into());
                hull_shape(&mut fired, "with_zero_char_divides", 1);
            }
        }
        Family::E3 => {
            let (s, t) = params.pair();
            let step = order / k;
            let diff = s - t;
            let distinct = diff.rem_euclid(step as i64) != 0;
            note(&mut w, "blocks_disjoint", format!("{distinct}"));
            // Pair form: s, t in [1, q−1]; the δ form is (q−1, δ).
            let (ps, pt) = match params.shift {
                Shift::Delta(dl) => (q as i64 - 1, dl),
                Shift::Pair(s, t) => (s, t),
            };
            let pair_range = ps != pt && (1..=q as i64 - 1).contains(&ps) && (1..=q as i64 - 1).contains(&pt);
            if pair_range && distinct {
                let v2d = v2_signed(ps - pt);
                let forbidden = v_p(order, 2) as i64 - v_p(k, 2) as i64 - 1;
                note(&mut w, "v2_s_minus_t", format!("{v2d} (forbidden {forbidden})"));
                if v2d != forbidden && gcd(2 * k, q) == 1 {
                    lcd_shape(&mut fired, "two_block_lcd");
                }
            }
            if let Shift::Delta(dl) = params.shift {
                if (1..=q as i64 - 2).contains(&dl) && distinct && gcd(2 * k, q) == 1 {
                    let conds = delta_conditions(order, k, dl as u64);
                    note(&mut w, "delta_conditions", format!("{conds:?}"));
                    if !conds.is_empty() {
                        lcd_shape(&mut fired, "two_block_delta_lcd");
                        if half && corner_zero {
                            fired.push(FiredClause { clause: "two_block_delta_hull_one".into(), claim: Claim::HullEq(1) });
                        }
                    }
                }
            }
        }
        Family::E4 => {
            let excluded = [k, 2 * k, 3 * k].contains(&order);
            note(&mut w, "order_in_k_2k_3k", format!("{excluded}"));
            if !excluded {
                if p != 3 {
                    lcd_shape(&mut fired, "three_block_lcd");
                    if half && corner_zero {
                        fired.push(FiredClause { clause: "three_block_hull_one".into(), claim: Claim::HullEq(1) });
                    }
                } else {
                    hull_shape(&mut fired, "three_block_char_three", 1);
                }
            }
        }
        Family::H1 | Family::H2 => {
            note(&mut w, "delta_reduced", format!("{}", reduce_shift(params.chain_len(), order)));
            let zero_pt = params.family == Family::H2;
            let char_div = (k + 1).is_multiple_of(p);
            if divides(k, q - 1) {
                if !zero_pt || !char_div {
                    lcd_shape(&mut fired, if zero_pt { "h_with_zero_lcd" } else { "h_single_lcd" });
                    if half && corner_zero {
                        fired.push(FiredClause {
                            clause: if zero_pt { "h_with_zero_hull_one" } else { "h_single_hull_one" }.into(),
                            claim: Claim::HullEq(1),
                        });
                    }
                } else {
                    hull_shape(&mut fired, "h_with_zero_char_divides", 1);
                }
            }
            if divides(k, q + 1) && (!zero_pt || !char_div) {
                fired.push(FiredClause {
                    clause: if zero_pt { "h_with_zero_bound" } else { "h_single_bound" }.into(),
                    claim: Claim::HullLe(params.l),
                });
            }
        }
        Family::H3 => {
            let step = order / k;
            let (ps, pt) = match params.shift {
                Shift::Delta(dl) => (order as i64, dl),
                Shift::Pair(s, t) => (s, t),
            };
            let in_range = ps != pt && (1..=order as i64).contains(&ps) && (1..=order as i64).contains(&pt);
            let distinct = (ps - pt).rem_euclid(step as i64) != 0;
            note(&mut w, "blocks_disjoint", format!("{distinct}"));
            if in_range && distinct && divides(k, q - 1) && gcd(2 * k, q) == 1 {
                let v2d = v2_signed(ps - pt);
                let t_set = set_t(q, k);
                note(&mut w, "set_T", format!("{t_set:?}"));
                note(&mut w, "v2_s_minus_t", format!("{v2d}"));
                if !t_set.contains(&v2d) {
                    lcd_shape(&mut fired, "h_two_block_lcd");
                }
                if let Shift::Delta(dl) = params.shift {
                    let dl = dl as u64;
                    if let Some(x) = pure_power(dl, 2) {
                        let gap = gf::prime_factors(order)
                            .into_iter()
                            .any(|pp| pp != 2 && v_p(k, pp) < v_p(order, pp));
                        if x >= v_p(order, 2) && gap {
                            lcd_shape(&mut fired, "h_two_block_delta_power_of_two");
                        }
                    }
                    if let Some((pp, _)) = odd_prime_power(dl) {
                        if !t_set.contains(&0) && v_p(k, pp) == v_p(order, pp) {
                            lcd_shape(&mut fired, "h_two_block_delta_odd_prime_power");
                        }
                    }
                }
            }
            if in_range && distinct && divides(k, q + 1) {
                let v2d = v2_signed(ps - pt);
                let n_set = set_n(q, k, l);
                note(&mut w, "set_N", format!("{n_set:?}"));
                if !n_set.contains(&v2d) {
                    fired.push(FiredClause { clause: "h_two_block_bound".into(), claim: Claim::HullLe(params.l) });
                }
            }
        }
        Family::H4 => {
            let d = params.chain_len();
            let in_range = (1..=q as i64).contains(&d);
            note(&mut w, "delta_in_range", format!("{in_range}"));
            if in_range {
                let d = d as u64;
                let char_div = (d + 1).is_multiple_of(p);
                if divides(k, q - 1) {
                    let s1 = set_s(q, k, d, 1);
                    let skl = set_s(q, k, d, k - l);
                    note(&mut w, "set_S1", format!("{s1:?}"));
                    note(&mut w, "set_S_k_minus_l", format!("{skl:?}"));
                    if !char_div && s1.is_empty() {
                        lcd_shape(&mut fired, "chain_lcd");
                    }
                    if s1.is_empty() {
                        if char_div {
                            hull_shape(&mut fired, "chain_char_divides", 1);
                        } else if half && corner_zero {
                            fired.push(FiredClause { clause: "chain_hull_one".into(), claim: Claim::HullEq(1) });
                        }
                    }
                    if small {
                        // Zeros strictly between ℓ and k−ℓ and a singular principal
                        // block of A·A^H on S_{k−ℓ} each add to the hull, so the count
                        // is exact only when neither occurs.
                        let s = skl.len();
                        let middle = s1.len() - 2 * s;
                        let block_full = tail_block_rank(params, &skl) == s;
                        note(&mut w, "middle_zeros", format!("{middle}"));
                        note(&mut w, "tail_block_nonsingular", format!("{block_full}"));
                        if middle == 0 && block_full {
                            let claim = if char_div { Claim::HullEq(s + 1) } else { Claim::HullEq(s) };
                            fired.push(FiredClause { clause: "chain_count".into(), claim });
                        }
                    }
                }
                if divides(k, q + 1) && !char_div {
                    let u = set_u(q, k, l, d);
                    note(&mut w, "set_U", format!("{u:?}"));
                    if u.is_empty() {
                        fired.push(FiredClause { clause: "chain_bound".into(), claim: Claim::HullLe(params.l) });
                    }
                }
            }
        }
    }
    let best = fired
        .iter()
        .find(|f| f.claim.is_exact())
        .or_else(|| fired.iter().min_by_key(|f| f.claim.max_hull()))
        .cloned();
    Prediction {
        claim: best.as_ref().map_or(Claim::NoClaim, |f| f.claim),
        clause: best.map(|f| f.clause),
        fired,
        witnesses: w,
    }
}

/// The EAQECC tuples of a family code compared with the family template
/// [[L, k−i, d, L−k−i]] and [[L, L−k−i, d⊥, k−i]], L the template length
/// and i the hull dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TemplateCheck {
    pub expected: [(usize, usize, usize); 2],
    pub derived: [(usize, usize, usize); 2],
    /// Full tuples when both distances were computed.
    pub tuples: Option<[(usize, usize, usize, usize); 2]>,
    pub hull_in_range: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditRecord {
    pub params: FamilyParamsJson,
    pub length: usize,
    pub prediction: Prediction,
    pub computed_hull: usize,
    pub pass: bool,
    pub template: TemplateCheck,
}

/// Largest estimated distance-search cost attempted during audits.
pub const AUDIT_DISTANCE_COST: f64 = 2.0e5;

/// Builds the code, computes its hull under the family's inner product
/// and compares with the prediction.
pub fn audit(params: &FamilyParams) -> Result<AuditRecord> {
    let prediction = predict(params);
    if prediction.claim == Claim::NoClaim {
        return Err(Error::Input(format!("no claim applies to {:?}", params.to_json())));
    }
    let spec = params.spec()?;
    let ctx = spec.ctx();
    let g = spec.generator();
    let ip = params.family.inner_product();
    let computed = hull::hull_report(ctx, &g, ip)?.hull_dim;
    let pass = prediction.claim.holds_for(computed);

    let (n, k) = (spec.length(), spec.k());
    let big_l = params.length();
    let expected = [(big_l, k - computed.min(k), big_l.saturating_sub(k + computed)),
        (big_l, big_l.saturating_sub(k + computed), k - computed.min(k))];
    let derived = eaqecc::shape(n, k, computed)?;
    let tuples = audit_distances(ctx, &g).and_then(|(d, dd)| {
        let (a, b) = eaqecc::derive_from(n, k, d, dd, computed, false, ip).ok()?;
        Some([a.tuple(), b.tuple()])
    });
    let hull_in_range = prediction.claim.max_hull().is_some_and(|m| computed <= m);
    let template_pass = expected == derived && n == big_l && hull_in_range;
    Ok(AuditRecord {
        params: params.to_json(),
        length: n,
        prediction,
        computed_hull: computed,
        pass,
        template: TemplateCheck { expected, derived, tuples, hull_in_range, pass: template_pass },
    })
}

fn audit_distances(ctx: &FieldCtx, g: &MatrixFq) -> Option<(usize, usize)> {
    let (k, n) = g.shape();
    let (a, b) = classify::distance_costs(n, k);
    let (c, d) = classify::distance_costs(n, n - k);
    if a.min(b) > AUDIT_DISTANCE_COST || c.min(d) > AUDIT_DISTANCE_COST {
        return None;
    }
    let dist = classify::min_distance(ctx, g, DEFAULT_BUDGET).ok()?;
    let dual = hull::dual_generator(ctx, g, InnerProduct::Euclidean).ok()?;
    let dist_dual = classify::min_distance(ctx, &dual, DEFAULT_BUDGET).ok()?;
    Some((dist, dist_dual))
}

/// How the ℓ×ℓ matrix A is drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Sampler {
    RandomInvertible,
    /// First row chosen so the corner term vanishes (falls back to a random
    /// invertible matrix when that is impossible).
    CornerZero,
    /// diag(γ^e, γ^{e+1}, …, γ^{e+ℓ−1}) for a random e.
    DiagonalPowers,
}

fn random_element(ctx: &FieldCtx, rng: &mut ChaCha8Rng) -> Fq {
    let x = rng.gen_range(0..ctx.q() as u64);
    ctx.from_int(x).expect("in range")
}

fn random_row(ctx: &FieldCtx, len: usize, rng: &mut ChaCha8Rng) -> Vec<Fq> {
    (0..len).map(|_| random_element(ctx, rng)).collect()
}

/// Random invertible ℓ×ℓ matrix whose first row is `first` (when given).
fn complete_invertible(ctx: &FieldCtx, l: usize, first: Option<Vec<Fq>>, rng: &mut ChaCha8Rng) -> Option<MatrixFq> {
    for _ in 0..64 {
        let mut rows = Vec::with_capacity(l);
        rows.push(first.clone().unwrap_or_else(|| random_row(ctx, l, rng)));
        for _ in 1..l {
            rows.push(random_row(ctx, l, rng));
        }
        let m = MatrixFq::from_rows(rows).ok()?;
        if linalg::rank(ctx, &m) == l {
            return Some(m);
        }
    }
    None
}

/// x with x^e = c (e = 2 or q+1), if one exists.
fn root(ctx: &FieldCtx, c: Fq, e: u64) -> Option<Fq> {
    match c {
        Fq::Zero => Some(Fq::Zero),
        Fq::Pow(lc) => {
            let order = ctx.order() as u64;
            let g = gcd(e, order);
            if !(lc as u64).is_multiple_of(g) {
                return None;
            }
            // Solve e·y ≡ lc (mod order).
            let (e1, l1, m1) = (e / g, lc as u64 / g, order / g);
            let inv = (1..m1.max(2)).find(|&y| (e1 * y) % m1 == 1 % m1)?;
            Some(ctx.gamma_pow(((l1 * inv) % m1.max(1)) as i64))
        }
    }
}

pub fn sample_a(
    ctx: &FieldCtx,
    family: Family,
    k: usize,
    l: usize,
    shift: Shift,
    sampler: Sampler,
    rng: &mut ChaCha8Rng,
) -> Option<MatrixFq> {
    match sampler {
        Sampler::RandomInvertible => complete_invertible(ctx, l, None, rng),
        Sampler::DiagonalPowers => {
            let e = rng.gen_range(0..ctx.order() as i64);
            Some(MatrixFq::from_fn(l, l, |r, c| if r == c { ctx.gamma_pow(e + r as i64) } else { Fq::Zero }))
        }
        Sampler::CornerZero => {
            let probe = FamilyParams {
                ctx: Arc::new(ctx.clone()),
                family,
                base_q: ctx.square_base().map_or(ctx.q() as u64, |b| b as u64),
                k,
                l,
                shift,
                a: MatrixFq::zeros(l, l),
            };
            let target = ctx.neg(corner_rs_term(&probe));
            let e = if family.is_hermitian() { probe.base_q + 1 } else { 2 };
            for _ in 0..64 {
                let mut row = random_row(ctx, l, rng);
                let rest = ctx.sum(row[..l - 1].iter().map(|&x| ctx.pow(x, e)));
                if let Some(x) = root(ctx, ctx.sub(target, rest), e) {
                    row[l - 1] = x;
                    if row.iter().any(|x| !x.is_zero()) {
                        if let Some(m) = complete_invertible(ctx, l, Some(row), rng) {
                            return Some(m);
                        }
                    }
                }
            }
            complete_invertible(ctx, l, None, rng)
        }
    }
}

/// Parameter grid and sampling for [`sweep`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SweepConfig {
    pub families: Vec<Family>,
    pub base_qs: Vec<u64>,
    pub k_min: usize,
    pub k_max: usize,
    /// Fixed ℓ, or every admissible ℓ when empty.
    pub l: Option<usize>,
    /// Fixed shift, or generated shifts when empty.
    pub shift: Option<Shift>,
    pub shifts_per_cell: usize,
    pub samples: usize,
    pub seed: u64,
    /// Cap on the number of audited codes.
    pub budget: usize,
}

impl SweepConfig {
    /// The standard corpus: Euclidean q ∈ {25, 49, 81, 121, 169}, Hermitian
    /// base q ∈ {3, 5, 9, 11, 13}, 4 ≤ k ≤ 16.
    pub fn standard(family: Family, seed: u64) -> Self {
        let base_qs = if family.is_hermitian() { vec![3, 5, 9, 11, 13] } else { vec![25, 49, 81, 121, 169] };
        SweepConfig {
            families: vec![family],
            base_qs,
            k_min: 4,
            k_max: 16,
            l: None,
            shift: None,
            shifts_per_cell: 3,
            samples: 5,
            seed,
            budget: usize::MAX,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SweepResult {
    pub records: Vec<AuditRecord>,
    /// Generated parameter sets for which no claim applies.
    pub no_claim: usize,
    /// Generated parameter sets whose points collide.
    pub collisions: usize,
    /// True when the budget stopped the sweep early.
    pub truncated: bool,
}

impl SweepResult {
    pub fn failures(&self) -> impl Iterator<Item = &AuditRecord> {
        self.records.iter().filter(|r| !r.pass)
    }
}

/// Candidate shifts for one (family, q, k) cell.
fn shifts_for(family: Family, ctx: &FieldCtx, k: u64, count: usize, rng: &mut ChaCha8Rng) -> Vec<Shift> {
    let order = ctx.order() as u64;
    let base_q = ctx.square_base().map_or(ctx.q() as u64, |b| b as u64);
    let pick = |pool: Vec<Shift>, rng: &mut ChaCha8Rng, count: usize| -> Vec<Shift> {
        let mut pool = pool;
        let mut out = Vec::new();
        while !pool.is_empty() && out.len() < count {
            out.push(pool.swap_remove(rng.gen_range(0..pool.len())));
        }
        out.sort_by_key(|s| format!("{s:?}"));
        out
    };
    match family {
        Family::E1 | Family::E2 => {
            let pool = (2..base_q as i64).map(Shift::Delta).collect();
            let mut v = vec![Shift::Delta(1)];
            v.extend(pick(pool, rng, count.saturating_sub(1)));
            v
        }
        Family::H1 | Family::H2 => {
            let pool = (2..=order as i64).map(Shift::Delta).collect();
            let mut v = vec![Shift::Delta(1)];
            v.extend(pick(pool, rng, count.saturating_sub(1)));
            v
        }
        Family::E4 => vec![Shift::Delta(2)],
        Family::H4 => (1..=base_q as i64).map(Shift::Delta).collect(),
        Family::E3 | Family::H3 => {
            let top = if family == Family::E3 { base_q as i64 - 1 } else { order as i64 };
            let step = (order / k) as i64;
            let deltas: Vec<Shift> = (1..top)
                .filter(|d| d % step != 0)
                .map(Shift::Delta)
                .collect();
            let mut pairs = Vec::new();
            for _ in 0..(8 * count) {
                let s = rng.gen_range(1..=top);
                let t = rng.gen_range(1..=top);
                if s != t && (s - t).rem_euclid(step) != 0 {
                    pairs.push(Shift::Pair(s, t));
                }
            }
            pairs.sort_by_key(|s| format!("{s:?}"));
            pairs.dedup();
            let mut v = pick(deltas, rng, count);
            v.extend(pick(pairs, rng, count));
            v
        }
    }
}

/// Deterministic (seeded) generation of family parameters, audited in
/// parallel; records come back in generation order.
pub fn sweep(cfg: &SweepConfig) -> Result<SweepResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut jobs: Vec<FamilyParams> = Vec::new();
    let mut no_claim = 0;
    let mut collisions = 0;
    let mut truncated = false;
    'outer: for &family in &cfg.families {
        for &bq in &cfg.base_qs {
            let ctx = family_field(family, bq)?;
            let order = ctx.order() as u64;
            for k in cfg.k_min.max(2)..=cfg.k_max {
                if !order.is_multiple_of(k as u64) {
                    continue;
                }
                let shifts = match cfg.shift {
                    Some(s) => vec![s],
                    None => shifts_for(family, &ctx, k as u64, cfg.shifts_per_cell, &mut rng),
                };
                let ls: Vec<usize> = match cfg.l {
                    Some(l) => vec![l],
                    None => (2..=k).collect(),
                };
                for &l in ls.iter().filter(|&&l| l <= k) {
                    for &shift in &shifts {
                        for sample in 0..cfg.samples {
                            let sampler = match sample % 3 {
                                0 => Sampler::RandomInvertible,
                                1 if 2 * l == k => Sampler::CornerZero,
                                1 => Sampler::RandomInvertible,
                                _ => Sampler::DiagonalPowers,
                            };
                            let Some(a) = sample_a(&ctx, family, k, l, shift, sampler, &mut rng) else {
                                continue;
                            };
                            let params = FamilyParams::new(ctx.clone(), family, k, l, shift, a)?;
                            if predict(&params).claim == Claim::NoClaim {
                                no_claim += 1;
                                continue;
                            }
                            if make_alpha(&params).is_err() {
                                collisions += 1;
                                continue;
                            }
                            if params.n() > ctx.q() as usize {
                                collisions += 1;
                                continue;
                            }
                            if jobs.len() >= cfg.budget {
                                truncated = true;
                                break 'outer;
                            }
                            jobs.push(params);
                        }
                    }
                }
            }
        }
    }
    let records = jobs.par_iter().map(audit).collect::<Result<Vec<_>>>()?;
    Ok(SweepResult { records, no_claim, collisions, truncated })
}
