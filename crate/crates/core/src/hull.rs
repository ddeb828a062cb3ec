//! Gram matrices, hull dimensions and dual generators.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::FieldCtx;
use crate::linalg::{self, MatrixFq};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InnerProduct {
    Euclidean,
    Hermitian,
}

impl InnerProduct {
    pub fn name(self) -> &'static str {
        match self {
            InnerProduct::Euclidean => "euclidean",
            InnerProduct::Hermitian => "hermitian",
        }
    }
}

impl fmt::Display for InnerProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for InnerProduct {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "e" | "euclidean" => Ok(InnerProduct::Euclidean),
            "h" | "hermitian" => Ok(InnerProduct::Hermitian),
            _ => Err(Error::Input(format!("unknown inner product {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HullReport {
    pub inner_product: InnerProduct,
    pub gram_rank: usize,
    pub hull_dim: usize,
    pub is_lcd: bool,
}

/// G·Gᵀ.
pub fn gram_euclidean(ctx: &FieldCtx, g: &MatrixFq) -> MatrixFq {
    linalg::mat_mul(ctx, g, &g.transpose()).expect("shapes agree")
}

/// G·conj(G)ᵀ in a field of size q².
pub fn gram_hermitian(ctx: &FieldCtx, g: &MatrixFq) -> Result<MatrixFq> {
    let gh = linalg::conj_transpose(ctx, g)?;
    linalg::mat_mul(ctx, g, &gh)
}

pub fn gram(ctx: &FieldCtx, g: &MatrixFq, ip: InnerProduct) -> Result<MatrixFq> {
    match ip {
        InnerProduct::Euclidean => Ok(gram_euclidean(ctx, g)),
        InnerProduct::Hermitian => gram_hermitian(ctx, g),
    }
}

/// Hull dimension k − rank(Gram) of the code generated by the full-rank G.
pub fn hull_report(ctx: &FieldCtx, g: &MatrixFq, ip: InnerProduct) -> Result<HullReport> {
    let k = g.rows();
    let gram_rank = linalg::rank(ctx, &gram(ctx, g, ip)?);
    let hull_dim = k - gram_rank;
    Ok(HullReport { inner_product: ip, gram_rank, hull_dim, is_lcd: hull_dim == 0 })
}

/// Hull report for a GRL spec.
pub fn hull_dim(spec: &crate::grl::GrlSpec, ip: InnerProduct) -> Result<HullReport> {
    hull_report(spec.ctx(), &spec.generator(), ip)
}

fn require_full_rank(ctx: &FieldCtx, g: &MatrixFq) -> Result<()> {
    let r = linalg::rank(ctx, g);
    if r != g.rows() {
        return Err(Error::RankDeficient { rank: r, expected: g.rows() });
    }
    Ok(())
}

/// Generator of the dual: rows span {x : G·xᵀ = 0} (Euclidean) or
/// {x : G·conj(x)ᵀ = 0} (Hermitian).
pub fn dual_generator(ctx: &FieldCtx, g: &MatrixFq, ip: InnerProduct) -> Result<MatrixFq> {
    require_full_rank(ctx, g)?;
    let ker = linalg::kernel_basis(ctx, g);
    match ip {
        InnerProduct::Euclidean => Ok(ker),
        InnerProduct::Hermitian => linalg::conjugate(ctx, &ker),
    }
}

/// dim(C ∩ C^⊥) from the rank of G stacked over a dual generator.
pub fn hull_dim_bruteforce(ctx: &FieldCtx, g: &MatrixFq, ip: InnerProduct) -> Result<usize> {
    let dual = dual_generator(ctx, g, ip)?;
    let stacked = g.vstack(&dual)?;
    Ok(g.rows() + dual.rows() - linalg::rank(ctx, &stacked))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Fq;

    #[test]
    fn identity_gram() {
        let ctx = FieldCtx::new(5, 1).unwrap();
        let g = MatrixFq::identity(3);
        assert_eq!(gram_euclidean(&ctx, &g), MatrixFq::identity(3));
        let r = hull_report(&ctx, &g, InnerProduct::Euclidean).unwrap();
        assert!(r.is_lcd);
    }

    #[test]
    fn dual_of_systematic_zero_block() {
        let ctx = FieldCtx::new(5, 1).unwrap();
        let g = MatrixFq::identity(2).hstack(&MatrixFq::zeros(2, 3)).unwrap();
        let d = dual_generator(&ctx, &g, InnerProduct::Euclidean).unwrap();
        let expect = MatrixFq::zeros(3, 2).hstack(&MatrixFq::identity(3)).unwrap();
        assert_eq!(d, expect);
    }

    #[test]
    fn self_orthogonal_row() {
        // (1, 2) over GF(5): 1 + 4 = 0.
        let ctx = FieldCtx::new(5, 1).unwrap();
        let g = MatrixFq::from_rows(vec![vec![ctx.one(), ctx.from_int(2).unwrap()]]).unwrap();
        assert_eq!(hull_dim_bruteforce(&ctx, &g, InnerProduct::Euclidean).unwrap(), 1);
        assert_eq!(hull_report(&ctx, &g, InnerProduct::Euclidean).unwrap().hull_dim, 1);
    }

    #[test]
    fn rank_deficient_dual_is_rejected() {
        let ctx = FieldCtx::new(5, 1).unwrap();
        let g = MatrixFq::from_rows(vec![vec![ctx.one(), Fq::Zero], vec![ctx.one(), Fq::Zero]]).unwrap();
        assert!(matches!(
            dual_generator(&ctx, &g, InnerProduct::Euclidean),
            Err(Error::RankDeficient { rank: 1, expected: 2 })
        ));
    }

    #[test]
    fn hermitian_dual_contract() {
        let ctx = FieldCtx::new(3, 2).unwrap();
        let g = MatrixFq::from_rows(vec![
            vec![Fq::Pow(0), Fq::Pow(1), Fq::Pow(2), Fq::Pow(5)],
            vec![Fq::Zero, Fq::Pow(3), Fq::Pow(0), Fq::Pow(7)],
        ])
        .unwrap();
        let d = dual_generator(&ctx, &g, InnerProduct::Hermitian).unwrap();
        let prod = linalg::mat_mul(&ctx, &g, &linalg::conj_transpose(&ctx, &d).unwrap()).unwrap();
        assert!(prod.is_zero());
    }
}
