mod common;

use std::sync::Arc;

use grlcodes::classify::{self, Label, ReportOptions};
use grlcodes::gf::{FieldCtx, Fq};
use grlcodes::hull::{self, InnerProduct};
use grlcodes::linalg::{self, MatrixFq};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn random_matrix(ctx: &FieldCtx, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> MatrixFq {
    let elems: Vec<Fq> = ctx.elements().collect();
    MatrixFq::from_fn(rows, cols, |_, _| *elems.choose(rng).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_is_log_of_span_size(seed in any::<u64>(), rows in 1..4usize, cols in 1..6usize) {
        let ctx = FieldCtx::new(5, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_matrix(&ctx, rows, cols, &mut rng);
        let words: std::collections::HashSet<Vec<Fq>> = common::codewords(&ctx, &m).into_iter().collect();
        prop_assert_eq!(words.len(), 5usize.pow(linalg::rank(&ctx, &m) as u32));
    }

    #[test]
    fn kernel_and_inverse(seed in any::<u64>(), n in 1..6usize) {
        let ctx = FieldCtx::new(3, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_matrix(&ctx, n, n + 1, &mut rng);
        let ker = linalg::kernel_basis(&ctx, &m);
        prop_assert_eq!(ker.rows() + linalg::rank(&ctx, &m), m.cols());
        prop_assert!(linalg::mat_mul(&ctx, &m, &ker.transpose()).unwrap().is_zero());
        let sq = m.select_columns(&(0..n).collect::<Vec<_>>());
        match linalg::inverse(&ctx, &sq) {
            Some(inv) => prop_assert_eq!(linalg::mat_mul(&ctx, &sq, &inv).unwrap(), MatrixFq::identity(n)),
            None => prop_assert!(linalg::rank(&ctx, &sq) < n),
        }
    }

    #[test]
    fn distance_matches_enumeration(seed in any::<u64>(), fi in 0..3usize) {
        let (p, m) = [(5, 1), (7, 1), (3, 2)][fi];
        let ctx = Arc::new(FieldCtx::new(p, m).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = common::random_spec(&ctx, 4, &mut rng).generator();
        let d = common::min_weight(&ctx, &g);
        prop_assert_eq!(classify::min_distance(&ctx, &g, u64::MAX).unwrap(), d);
        if g.rows() < g.cols() {
            let h = hull::dual_generator(&ctx, &g, InnerProduct::Euclidean).unwrap();
            prop_assert_eq!(classify::parity_search(&ctx, &h, u64::MAX).unwrap(), d);
            prop_assert_eq!(classify::hyperplane_search(&ctx, &g, u64::MAX).unwrap(), d);
        }
    }

    #[test]
    fn label_follows_defects(seed in any::<u64>()) {
        let ctx = Arc::new(FieldCtx::new(7, 1).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = common::random_spec(&ctx, 4, &mut rng).generator();
        let opts = ReportOptions { nongrs: false, ..Default::default() };
        let r = classify::classify_generator(&ctx, &g, &opts).unwrap();
        let (n, k) = (r.n, r.k);
        prop_assert_eq!(r.defect, Some(n - k + 1 - r.d.unwrap()));
        prop_assert_eq!(r.defect_dual, Some(k + 1 - r.d_dual.unwrap()));
        let label = r.label.unwrap();
        prop_assert_eq!(label, classify::label_for(r.defect.unwrap(), r.defect_dual.unwrap()));
        if label == Label::Mds {
            prop_assert_eq!(r.defect_dual, Some(0));
        }
    }
}

#[test]
fn distance_budget_is_enforced() {
    let ctx = Arc::new(FieldCtx::new(7, 1).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let g = loop {
        let g = common::random_spec(&ctx, 4, &mut rng).generator();
        if g.rows() >= 3 && g.cols() >= 7 {
            break g;
        }
    };
    assert!(classify::min_distance(&ctx, &g, 1).is_err());
}
