//! Point counts on the quadric x_1² + ⋯ + x_k² = c and the resulting bound
//! on the number of GRL codes with a one-dimensional hull.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{divisor_count, FieldCtx, Fq};

/// a + b·ω with ω² = w2, exact over the integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadRing {
    pub a: BigInt,
    pub b: BigInt,
    pub w2: BigInt,
}

impl QuadRing {
    pub fn new(a: i64, b: i64, w2: i64) -> Self {
        QuadRing { a: a.into(), b: b.into(), w2: w2.into() }
    }

    pub fn add(&self, o: &Self) -> Self {
        QuadRing { a: &self.a + &o.a, b: &self.b + &o.b, w2: self.w2.clone() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        QuadRing {
            a: &self.a * &o.a + &self.b * &o.b * &self.w2,
            b: &self.a * &o.b + &self.b * &o.a,
            w2: self.w2.clone(),
        }
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        QuadRing { a: &self.a * s, b: &self.b * s, w2: self.w2.clone() }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = QuadRing { a: 1.into(), b: 0.into(), w2: self.w2.clone() };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

/// Number of solutions of x_1² + ⋯ + x_k² = c in GF(q)^k.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NfCount {
    /// All tuples, the zero tuple included.
    pub total: u128,
    /// Tuples other than the zero tuple.
    pub excluding_zero: u128,
}

/// Closed form over GF(q): for even k, q^{k−1} + v(c)·q^{k/2−1}·η((−1)^{k/2});
/// for odd k, q^{k−1} + q^{(k−1)/2}·η((−1)^{(k−1)/2}·c); with v(0) = q−1 and
/// v(c) = −1 otherwise.
pub fn count_nf(ctx: &FieldCtx, k: u32, c: Fq) -> NfCount {
    assert!(k >= 1, "arity must be positive");
    let q = ctx.q() as i128;
    let c = ctx.reduce(c);
    let total = if k.is_multiple_of(2) {
        let v = if c.is_zero() { q - 1 } else { -1 };
        let sign = ctx.from_i64(if (k / 2).is_multiple_of(2) { 1 } else { -1 });
        q.pow(k - 1) + v * q.pow(k / 2 - 1) * ctx.quadratic_character(sign) as i128
    } else {
        let sign = ctx.from_i64(if ((k - 1) / 2).is_multiple_of(2) { 1 } else { -1 });
        q.pow(k - 1) + q.pow((k - 1) / 2) * ctx.quadratic_character(ctx.mul(sign, c)) as i128
    };
    let total = total as u128;
    NfCount { total, excluding_zero: total - c.is_zero() as u128 }
}

/// Number of solutions with every coordinate nonzero, from the closed forms
/// in ℤ[ω] (ω² = q for q ≡ 1 mod 4, ω² = −q for q ≡ 3 mod 4) divided by 2q.
pub fn count_nf_star(ctx: &FieldCtx, k: u32, c: Fq) -> Result<u128> {
    assert!(k >= 1, "arity must be positive");
    let q = ctx.q() as i64;
    let c = ctx.reduce(c);
    let w2 = if q % 4 == 1 { q } else { -q };
    let qb = BigInt::from(q);
    let u = QuadRing::new(-1, 1, w2); // ω − 1
    let ubar = QuadRing::new(-1, -1, w2); // −1 − ω
    let conj_sum = |e: u32| u.pow(e).add(&ubar.pow(e));
    let main = QuadRing { a: BigInt::from(2) * BigInt::from(q - 1).pow(k), b: 0.into(), w2: w2.into() };
    let chi = ctx.quadratic_character(c);
    let extra = if c.is_zero() {
        conj_sum(k).scale(&BigInt::from(q - 1))
    } else if (q % 4 == 1) == (chi == 1) {
        conj_sum(k + 1)
    } else if q % 4 == 1 {
        conj_sum(k - 1).scale(&BigInt::from(1 - q))
    } else {
        conj_sum(k - 1).scale(&BigInt::from(q + 1))
    };
    let num = main.add(&extra);
    let den = BigInt::from(2) * &qb;
    let zero = BigInt::from(0);
    if num.b != zero || &num.a % &den != zero {
        return Err(Error::NonIntegerResult {
            numerator: format!("{} + {}·ω", num.a, num.b),
            denominator: den.to_string(),
        });
    }
    let v: BigInt = &num.a / &den;
    u128::try_from(v).map_err(|e| Error::Input(format!("count out of range: {e}")))
}

/// Literal enumeration over GF(q)^k (or (GF(q)^*)^k).
pub fn brute_quadric_count(ctx: &FieldCtx, k: u32, c: Fq, nonzero_only: bool) -> Result<u128> {
    let q = ctx.q() as u64;
    let space = (q as f64).powi(k as i32);
    if space > 1e7 {
        return Err(Error::TooLarge(format!("{q}^{k} tuples")));
    }
    let c = ctx.reduce(c);
    let squares: Vec<Fq> = ctx.elements().map(|x| ctx.mul(x, x)).collect();
    let start = usize::from(nonzero_only);
    let mut count = 0u128;
    let mut idx = vec![start; k as usize];
    loop {
        let s = ctx.sum(idx.iter().map(|&i| squares[i]));
        if s == c {
            count += 1;
        }
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return Ok(count);
            }
            idx[pos] += 1;
            if idx[pos] < q as usize {
                break;
            }
            idx[pos] = start;
            pos += 1;
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundVariant {
    /// First row of A ranges over GF(q)^ℓ.
    AllFq,
    /// First row of A ranges over (GF(q)^*)^ℓ.
    AllNonzero,
}

/// (d((q−1)/2) − 1) · N(ℓ, γ^{δk+(q−1)/2}·k, q) · ∏_{i=1}^{ℓ−1} (q^ℓ − q^i)
/// with k = 2ℓ, N the nonzero-tuple count (`AllFq`) or the all-nonzero
/// count (`AllNonzero`).
pub fn hull1_count_bound(ctx: &FieldCtx, delta: i64, l: u32, variant: BoundVariant) -> Result<BigInt> {
    let q = ctx.q() as u64;
    let k = 2 * l as u64;
    if k == 0 || !(q - 1).is_multiple_of(k) {
        return Err(Error::NotADivisor { divisor: k, value: q - 1 });
    }
    let arg = ctx.mul(ctx.gamma_pow(delta * k as i64 + (q as i64 - 1) / 2), ctx.from_i64(k as i64));
    let n = match variant {
        BoundVariant::AllFq => count_nf(ctx, l, arg).excluding_zero,
        BoundVariant::AllNonzero => count_nf_star(ctx, l, arg)?,
    };
    let qb = BigInt::from(q);
    let ql = qb.pow(l);
    let prod = (1..l).fold(BigInt::from(1), |acc, i| acc * (&ql - qb.pow(i)));
    let lead = BigInt::from(divisor_count((q - 1) / 2)) - 1;
    Ok(lead * BigInt::from(n) * prod)
}
