//! Independent oracles shared by the integration tests: schoolbook
//! polynomial arithmetic for GF(p^m) and exhaustive codeword enumeration.

#![allow(dead_code)]

use grlcodes::gf::{FieldCtx, Fq};
use grlcodes::linalg::MatrixFq;

/// GF(p^m) as base-p digit vectors reduced modulo the context's modulus.
pub struct PolyField {
    pub p: u32,
    pub m: usize,
    pub modulus: Vec<u32>,
}

impl PolyField {
    pub fn of(ctx: &FieldCtx) -> Self {
        PolyField { p: ctx.p(), m: ctx.m() as usize, modulus: ctx.modulus().to_vec() }
    }

    pub fn digits(&self, mut x: u32) -> Vec<u32> {
        let mut d = vec![0; self.m];
        for slot in d.iter_mut() {
            *slot = x % self.p;
            x /= self.p;
        }
        d
    }

    pub fn value(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        let (x, y) = (self.digits(a), self.digits(b));
        let s: Vec<u32> = x.iter().zip(&y).map(|(u, v)| (u + v) % self.p).collect();
        self.value(&s)
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let (x, y) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u64; 2 * self.m];
        for (i, &u) in x.iter().enumerate() {
            for (j, &v) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + u as u64 * v as u64) % self.p as u64;
            }
        }
        // Reduce with x^m = −(c_0 + … + c_{m−1} x^{m−1}).
        for deg in (self.m..2 * self.m).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            prod[deg] = 0;
            for (i, &mi) in self.modulus[..self.m].iter().enumerate() {
                let sub = c * mi as u64 % self.p as u64;
                let slot = &mut prod[deg - self.m + i];
                *slot = (*slot + self.p as u64 - sub) % self.p as u64;
            }
        }
        let d: Vec<u32> = prod[..self.m].iter().map(|&c| c as u32).collect();
        self.value(&d)
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        (0..e).fold(1, |acc, _| self.mul(acc, a))
    }
}

/// Every codeword of the code generated by `g` (q^k of them).
pub fn codewords(ctx: &FieldCtx, g: &MatrixFq) -> Vec<Vec<Fq>> {
    let (k, n) = g.shape();
    let q = ctx.q() as usize;
    let total = q.pow(k as u32);
    let elems: Vec<Fq> = ctx.elements().collect();
    (0..total)
        .map(|mut idx| {
            let mut word = vec![Fq::Zero; n];
            for r in 0..k {
                let c = elems[idx % q];
                idx /= q;
                for (j, w) in word.iter_mut().enumerate() {
                    *w = ctx.add(*w, ctx.mul(c, g.get(r, j)));
                }
            }
            word
        })
        .collect()
}

/// Σ x_i y_i^e with e = 1 (Euclidean) or e = √q (Hermitian).
pub fn inner(ctx: &FieldCtx, x: &[Fq], y: &[Fq], e: u64) -> Fq {
    ctx.sum(x.iter().zip(y).map(|(&a, &b)| ctx.mul(a, ctx.pow(b, e))))
}

/// Hull dimension by enumerating codewords orthogonal to every row of G.
pub fn hull_by_enumeration(ctx: &FieldCtx, g: &MatrixFq, e: u64) -> usize {
    let words = codewords(ctx, g);
    let count = words
        .iter()
        .filter(|w| (0..g.rows()).all(|r| inner(ctx, g.row(r), w, e).is_zero()))
        .count();
    let q = ctx.q() as usize;
    let mut dim = 0;
    let mut size = 1;
    while size < count {
        size *= q;
        dim += 1;
    }
    assert_eq!(size, count, "orthogonal codewords must form a subspace");
    dim
}

/// Minimum nonzero weight by enumeration.
pub fn min_weight(ctx: &FieldCtx, g: &MatrixFq) -> usize {
    codewords(ctx, g)
        .iter()
        .map(|w| w.iter().filter(|x| !x.is_zero()).count())
        .filter(|&w| w > 0)
        .min()
        .expect("nonzero code")
}

/// A random valid GRL spec over `ctx` with k ≤ `k_max` (used to keep q^k small).
pub fn random_spec(
    ctx: &std::sync::Arc<FieldCtx>,
    k_max: usize,
    rng: &mut impl rand::Rng,
) -> grlcodes::grl::GrlSpec {
    use rand::seq::SliceRandom;
    let q = ctx.q() as usize;
    let k = rng.gen_range(2..=k_max.min(q));
    let l = rng.gen_range(2..=k);
    let n = rng.gen_range(k..=q);
    let mut elems: Vec<Fq> = ctx.elements().collect();
    elems.shuffle(rng);
    let alpha = elems[..n].to_vec();
    let nonzero: Vec<Fq> = ctx.elements().filter(|x| !x.is_zero()).collect();
    let v = (0..n).map(|_| *nonzero.choose(rng).unwrap()).collect();
    let all: Vec<Fq> = ctx.elements().collect();
    let a = loop {
        let a = MatrixFq::from_fn(l, l, |_, _| *all.choose(rng).unwrap());
        if grlcodes::linalg::inverse(ctx, &a).is_some() {
            break a;
        }
    };
    grlcodes::grl::GrlSpec::new(ctx.clone(), alpha, v, a, k, l).expect("valid random spec")
}

/// (all tuples, all-nonzero tuples) of GF(q)^k with Σ x_i² = c, by a
/// convolution over the distribution of x² (no closed form involved).
pub fn quadric_counts(ctx: &FieldCtx, k: u32, c: Fq) -> (u128, u128) {
    let q = ctx.q() as usize;
    let index = |x: Fq| ctx.to_int(x) as usize;
    let squares: Vec<(usize, bool)> = ctx.elements().map(|x| (index(ctx.mul(x, x)), !x.is_zero())).collect();
    let elems: Vec<Fq> = (0..q as u64).map(|i| ctx.from_int(i).unwrap()).collect();
    let mut all = vec![0u128; q];
    let mut star = vec![0u128; q];
    all[0] = 1;
    star[0] = 1;
    for _ in 0..k {
        let (mut na, mut ns) = (vec![0u128; q], vec![0u128; q]);
        for s in 0..q {
            for &(sq, nonzero) in &squares {
                let t = index(ctx.add(elems[s], elems[sq]));
                na[t] += all[s];
                if nonzero {
                    ns[t] += star[s];
                }
            }
        }
        all = na;
        star = ns;
    }
    (all[index(c)], star[index(c)])
}
