mod common;

use std::sync::Arc;

use grlcodes::gf::{FieldCtx, Fq};
use grlcodes::grl::GrlSpec;
use grlcodes::linalg::{self, MatrixFq};
use grlcodes::nongrs::{self, CauchyOutcome, Verdict};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Rows v_j·α_j^i, i < k.
fn grs_generator(ctx: &FieldCtx, alpha: &[Fq], v: &[Fq], k: usize) -> MatrixFq {
    MatrixFq::from_fn(k, alpha.len(), |i, j| ctx.mul(v[j], ctx.pow(alpha[j], i as u64)))
}

fn random_grs(ctx: &FieldCtx, rng: &mut ChaCha8Rng, unit: bool) -> (Vec<Fq>, Vec<Fq>, usize) {
    let mut elems: Vec<Fq> = ctx.elements().collect();
    elems.shuffle(rng);
    let n = rand::Rng::gen_range(rng, 3..=elems.len());
    let k = rand::Rng::gen_range(rng, 1..n);
    let alpha = elems[..n].to_vec();
    let nonzero: Vec<Fq> = ctx.elements().filter(|x| !x.is_zero()).collect();
    let v = (0..n).map(|_| if unit { ctx.one() } else { *nonzero.choose(rng).unwrap() }).collect();
    (alpha, v, k)
}

fn same_code(ctx: &FieldCtx, g: &MatrixFq, h: &MatrixFq) -> bool {
    linalg::rank(ctx, &g.vstack(h).unwrap()) == g.rows() && linalg::rank(ctx, h) == g.rows()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn schur_square_of_grs(seed in any::<u64>(), fi in 0..3usize) {
        let (p, m) = [(7, 1), (3, 2), (13, 1)][fi];
        let ctx = FieldCtx::new(p, m).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (alpha, v, k) = random_grs(&ctx, &mut rng, false);
        let g = grs_generator(&ctx, &alpha, &v, k);
        prop_assert_eq!(nongrs::schur_square_dim(&ctx, &g).unwrap(), (2 * k - 1).min(alpha.len()));
    }

    #[test]
    fn cauchy_columns_of_rs_are_consistent(seed in any::<u64>()) {
        let ctx = FieldCtx::new(11, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (alpha, v, k) = random_grs(&ctx, &mut rng, true);
        // One row leaves the new point undetermined.
        prop_assume!(k >= 2);
        let g = grs_generator(&ctx, &alpha, &v, k);
        let sf = nongrs::standard_form(&ctx, &g).unwrap();
        let known: Vec<Fq> = sf.info_set.iter().map(|&c| alpha[c]).collect();
        for (j, &col) in sf.redundancy.iter().enumerate() {
            match nongrs::cauchy_column_test(&ctx, &known, &sf.b.column(j), col).unwrap() {
                CauchyOutcome::Consistent { alpha_new, .. } => prop_assert_eq!(alpha_new, alpha[col]),
                other => prop_assert!(false, "column {} rejected: {:?}", col, other),
            }
        }
    }

    #[test]
    fn exhaustive_search_recovers_grs(seed in any::<u64>()) {
        let ctx = FieldCtx::new(5, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (alpha, v, k) = random_grs(&ctx, &mut rng, false);
        let g = grs_generator(&ctx, &alpha, &v, k);
        let (a, w) = nongrs::exhaustive_tiny(&ctx, &g).unwrap().expect("a GRS code has a presentation");
        prop_assert!(same_code(&ctx, &g, &grs_generator(&ctx, &a, &w, k)));
    }

    /// The certificate and the exhaustive search agree on tiny GRL codes.
    #[test]
    fn certificate_agrees_with_exhaustive_search(seed in any::<u64>()) {
        let ctx = Arc::new(FieldCtx::new(5, 1).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let spec: GrlSpec = common::random_spec(&ctx, 4, &mut rng);
        prop_assume!(spec.length() <= 8);
        let cert = nongrs::nongrs_certificate(&spec).unwrap();
        let found = nongrs::exhaustive_tiny(&ctx, &spec.generator()).unwrap();
        match cert.verdict {
            Verdict::NonGrs => prop_assert!(found.is_none(), "{:?}", cert.attempts),
            Verdict::Grs => prop_assert!(found.is_some(), "{:?}", cert.attempts),
            Verdict::Inconclusive => prop_assert!(false, "tiny codes are always decided"),
        }
    }
}

#[test]
fn vandermonde_tail_with_k_equal_l_is_grs() {
    // k = ℓ: the tail columns extend an RS code by further points.
    let ctx = Arc::new(FieldCtx::new(7, 1).unwrap());
    for l in 2..=3 {
        let alpha: Vec<Fq> = (0..4).map(|i| ctx.from_int(i).unwrap()).collect();
        let a = MatrixFq::from_fn(l, l, |r, c| ctx.pow(ctx.from_int(4 + c as u64).unwrap(), r as u64));
        let spec = GrlSpec::unit(ctx.clone(), alpha, a, l, l).unwrap();
        let g = spec.generator();
        assert_eq!(nongrs::schur_square_dim(&ctx, &g).unwrap(), 2 * l - 1);
        assert!(nongrs::exhaustive_tiny(&ctx, &g).unwrap().is_some());
    }
}
