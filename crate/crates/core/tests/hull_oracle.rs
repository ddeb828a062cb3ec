mod common;

use std::sync::Arc;

use grlcodes::appendix::{self, Table};
use grlcodes::gf::FieldCtx;
use grlcodes::hull::{self, InnerProduct};
use grlcodes::linalg;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const FIELDS: [(u64, u32); 4] = [(3, 1), (5, 1), (7, 1), (3, 2)];

fn exponent(ctx: &FieldCtx, ip: InnerProduct) -> u64 {
    match ip {
        InnerProduct::Euclidean => 1,
        InnerProduct::Hermitian => ctx.square_base().unwrap() as u64,
    }
}

fn check_all_methods(ctx: &FieldCtx, g: &linalg::MatrixFq, ip: InnerProduct) {
    let fast = hull::hull_report(ctx, g, ip).unwrap();
    let brute = hull::hull_dim_bruteforce(ctx, g, ip).unwrap();
    let oracle = common::hull_by_enumeration(ctx, g, exponent(ctx, ip));
    assert_eq!(fast.hull_dim, oracle);
    assert_eq!(brute, oracle);
    assert_eq!(fast.is_lcd, oracle == 0);
}

#[test]
fn appendix_codes_agree_with_subspace_intersection() {
    let mut rows_checked = 0;
    for table in [Table::A, Table::B] {
        let (ip, rows) = appendix::rows(table).unwrap();
        for row in rows {
            let spec = appendix::row_params(&row).unwrap().spec().unwrap();
            let g = spec.generator();
            let fast = hull::hull_report(spec.ctx(), &g, ip).unwrap().hull_dim;
            assert_eq!(fast, hull::hull_dim_bruteforce(spec.ctx(), &g, ip).unwrap(), "{}", row.id);
            assert_eq!(fast, row.expected.hull, "{}", row.id);
            rows_checked += 1;
        }
    }
    assert_eq!(rows_checked, 35);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn euclidean_hull_matches_enumeration(seed in any::<u64>(), fi in 0..FIELDS.len()) {
        let (p, m) = FIELDS[fi];
        let ctx = Arc::new(FieldCtx::new(p, m).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let spec = common::random_spec(&ctx, 4, &mut rng);
        check_all_methods(&ctx, &spec.generator(), InnerProduct::Euclidean);
    }

    #[test]
    fn hermitian_hull_matches_enumeration(seed in any::<u64>(), fi in 0..2usize) {
        let (p, m) = [(3, 2), (5, 2)][fi];
        let ctx = Arc::new(FieldCtx::new(p, m).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let spec = common::random_spec(&ctx, 3, &mut rng);
        check_all_methods(&ctx, &spec.generator(), InnerProduct::Hermitian);
    }

    #[test]
    fn gram_is_symmetric_or_hermitian(seed in any::<u64>()) {
        let ctx = Arc::new(FieldCtx::new(5, 2).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = common::random_spec(&ctx, 5, &mut rng).generator();
        let e = hull::gram(&ctx, &g, InnerProduct::Euclidean).unwrap();
        prop_assert_eq!(&e, &e.transpose());
        let h = hull::gram(&ctx, &g, InnerProduct::Hermitian).unwrap();
        prop_assert_eq!(&h, &linalg::conj_transpose(&ctx, &h).unwrap());
    }

    #[test]
    fn dual_generator_is_orthogonal_and_complementary(seed in any::<u64>(), herm in any::<bool>()) {
        let ctx = Arc::new(FieldCtx::new(3, 2).unwrap());
        let ip = if herm { InnerProduct::Hermitian } else { InnerProduct::Euclidean };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = common::random_spec(&ctx, 5, &mut rng).generator();
        let h = hull::dual_generator(&ctx, &g, ip).unwrap();
        prop_assert_eq!(h.rows() + g.rows(), g.cols());
        prop_assert_eq!(linalg::rank(&ctx, &h), h.rows());
        let e = exponent(&ctx, ip);
        for r in 0..g.rows() {
            for s in 0..h.rows() {
                prop_assert!(common::inner(&ctx, g.row(r), h.row(s), e).is_zero());
            }
        }
    }
}
