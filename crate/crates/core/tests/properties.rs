//! Property tests over random `(r, p, x)` and random residues.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use rkk_congruences::binomsums::BinomCache;
use rkk_congruences::finlog::{check_functional_equations, PolylogOrder, PolylogTable};
use rkk_congruences::polyfactor::{
    build_root_poly_residue, classify_residue, factor_mod_p, hensel_lift, XClass,
};
use rkk_congruences::seriesid::{self, PolyQ};
use rkk_congruences::theorems::terms::RootTerm;
use rkk_congruences::theorems::{
    check_eq_rkksuk_long, check_thm_rkk, check_thm_rkkmod2, check_thm_rkksuk, check_thm_rkksuk_z,
    check_thm_rkksukmod2, Instance, RootSums, TheoremId,
};
use rkk_congruences::{ModulusCtx, RationalInput};

const PRIMES: [u64; 12] = [5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43];

/// A nondegenerate `(r, p, x)` with `r < p`.
fn instance() -> impl Strategy<Value = (usize, u64, u64)> {
    (
        1usize..=5,
        prop::sample::select(PRIMES.to_vec()),
        any::<u64>(),
    )
        .prop_filter_map("degenerate x", |(r, p, seed)| {
            if r as u64 >= p {
                return None;
            }
            let x = 1 + seed % (p - 1);
            let ctx = ModulusCtx::new(p, 1).unwrap();
            (classify_residue(r, ctx.from_u64(x)) == XClass::Nondegenerate).then_some((r, p, x))
        })
}

fn sums(r: usize, p: u64, x: u64) -> (RootSums, Instance) {
    let xr = RationalInput::integer(x as i64);
    (
        RootSums::new(r, xr, p, 3).unwrap(),
        Instance::new(r as u32, p, Some(xr)),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn residue_ring_axioms(p in prop::sample::select(PRIMES.to_vec()), e in 1u32..=3, a: u64, b: u64, c: u64) {
        let ctx = ModulusCtx::new(p, e).unwrap();
        let (a, b, c) = (ctx.from_u64(a % ctx.modulus()), ctx.from_u64(b % ctx.modulus()), ctx.from_u64(c % ctx.modulus()));
        prop_assert_eq!(a * (b + c), a * b + a * c);
        prop_assert_eq!((a * b) * c, a * (b * c));
        prop_assert_eq!(a - a, ctx.zero());
        prop_assert_eq!(a.is_unit(), a.value() % p != 0);
        if a.is_unit() {
            prop_assert_eq!(a * a.inv().unwrap(), ctx.one());
        }
    }

    #[test]
    fn hensel_lift_reproduces_root_poly((r, p, x) in instance(), seed: u64) {
        let f3 = build_root_poly_residue(r, ModulusCtx::new(p, 3).unwrap().from_u64(x)).unwrap();
        let f1 = build_root_poly_residue(r, ModulusCtx::new(p, 1).unwrap().from_u64(x)).unwrap();
        let fs = factor_mod_p(&f1, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        prop_assert_eq!(fs.total_degree(), r);
        let lifted = hensel_lift(&fs, &f3, 3).unwrap();
        prop_assert_eq!(lifted.product(), f3);
        prop_assert_eq!(lifted.degree_multiset(), fs.degree_multiset());
    }

    #[test]
    fn symmetric_root_sums((r, p, x) in instance()) {
        let (rs, _) = sums(r, p, x);
        let ctx = rs.ctx(3);
        let ri = ctx.from_u64(r as u64);
        prop_assert_eq!(rs.trace_sum(3, RootTerm::Identity).unwrap(), ri - rs.x(3).inv().unwrap());
        if r > 1 {
            prop_assert_eq!(rs.trace_sum(3, RootTerm::InvOneMinusC).unwrap(), ri - ctx.one());
            prop_assert_eq!(rs.trace_sum(3, RootTerm::InvShiftedC).unwrap(), ctx.one());
            prop_assert_eq!(rs.root_product(3), ctx.one());
        }
    }

    #[test]
    fn trace_matches_explicit_roots_when_split((r, p, x) in instance()) {
        let (rs, _) = sums(r, p, x);
        prop_assume!(rs.factor_set().is_all_linear());
        for e in 1..=3 {
            for term in RootTerm::ALL {
                if let (Some(explicit), Ok(trace)) = (rs.explicit_sum(e, term), rs.trace_sum(e, term)) {
                    prop_assert_eq!(explicit.unwrap(), trace, "{:?} at e = {}", term, e);
                }
            }
        }
    }

    #[test]
    fn power_sums_follow_newton((r, p, x) in instance()) {
        let (rs, _) = sums(r, p, x);
        let y = rs.x(3).inv().unwrap();
        prop_assert_eq!(rs.power_sums(3, 2 * r + 3), seriesid::power_sums_at(r as u32, y, 2 * r + 3));
    }

    #[test]
    fn mod_p2_reduces_to_mod_p((r, p, x) in instance()) {
        let (rs, inst) = sums(r, p, x);
        let log_p = check_thm_rkksuk(&rs, inst).unwrap();
        let log_p2 = check_thm_rkksukmod2(&rs, inst).unwrap();
        let full = log_p2.iter().find(|row| row.theorem == TheoremId::LogFullDilogCorrection).unwrap();
        prop_assert_eq!(full.lhs.unwrap().reduce_to(1), log_p[0].lhs.unwrap());
        prop_assert_eq!(full.rhs.unwrap().reduce_to(1), log_p[0].rhs.unwrap());

        let plain_p = check_thm_rkk(&rs, inst).unwrap();
        let plain_p2 = check_thm_rkkmod2(&rs, inst).unwrap();
        let one = rs.ctx(1).one();
        prop_assert_eq!(plain_p2[0].lhs.unwrap().reduce_to(1), plain_p[0].lhs.unwrap() + one);
        prop_assert_eq!(plain_p2[0].rhs.unwrap().reduce_to(1), plain_p[0].rhs.unwrap() + one);
    }

    #[test]
    fn block_rows_add_up((r, p, x) in instance()) {
        prop_assume!(r >= 2);
        let (rs, inst) = sums(r, p, x);
        let blocks = check_thm_rkksuk_z(&rs, inst).unwrap();
        let total = blocks.iter().filter(|row| row.theorem == TheoremId::LogBlock).map(|row| row.lhs.unwrap()).sum();
        prop_assert_eq!(check_eq_rkksuk_long(&rs, inst).unwrap().lhs.unwrap(), total);
        prop_assert!(blocks.iter().all(|row| row.passed()));
    }

    #[test]
    fn binomial_paths_agree(r in 1u32..=6, p in prop::sample::select(PRIMES.to_vec()), e in 1u32..=3) {
        let ctx = ModulusCtx::new(p, e).unwrap();
        let (exact, val) = (BinomCache::exact(r, ctx), BinomCache::by_valuation(r, ctx));
        for k in 0..p {
            prop_assert_eq!(exact.get(k), val.get(k));
        }
    }

    #[test]
    fn polylog_inversion(p in prop::sample::select(PRIMES.to_vec()), a in 1u64..1000) {
        // x^p £_s(1/x) = (-1)^s £_s(x) mod p (s = 1, 2)
        let ctx = ModulusCtx::new(p, 1).unwrap();
        let x = ctx.from_u64(a);
        prop_assume!(x.is_unit());
        let t = PolylogTable::new(ctx);
        let xp = x.pow(p);
        prop_assert_eq!(xp * t.pounds(PolylogOrder::ONE, &x.inv().unwrap()), -t.pounds(PolylogOrder::ONE, &x));
        prop_assert_eq!(xp * t.pounds(PolylogOrder::TWO, &x.inv().unwrap()), t.pounds(PolylogOrder::TWO, &x));
    }

    #[test]
    fn functional_equation_families(p in prop::sample::select(PRIMES.to_vec()), seed: u64) {
        let report = check_functional_equations(p, 4, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        prop_assert!(report.all_passed(), "{:?}", report);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn fuss_catalan_equation(r in 1u32..=6, order in 2usize..=25) {
        prop_assert!(seriesid::check_fuss_catalan_equation(r, order).unwrap());
        prop_assert!(seriesid::check_series_log_identity(r, order).unwrap());
    }

    #[test]
    fn identities_and_ladder(r in 1u32..=6, n in 1usize..=15) {
        let v = seriesid::check_identities(r, n).unwrap();
        prop_assert!(v.all(), "{:?}", v);
    }

    #[test]
    fn perturbed_identity_fails(r in 1u32..=4, n in 2usize..=10, k in 0usize..10, bump in 1i64..5) {
        let sides = seriesid::identity_sides(r, n).unwrap();
        let extra = PolyQ::monomial(num_rational::BigRational::from_integer(bump.into()), k);
        prop_assert_ne!(&sides.id1b.0 + &extra, sides.id1b.1);
    }

    #[test]
    fn power_sums_at_zero_equal_r(r in 1u32..=6, n in 1usize..=20) {
        // y = 0 makes every root equal to 1
        let ps = seriesid::power_sums(r, n).unwrap();
        let zero = num_rational::BigRational::from_integer(0.into());
        for s in &ps.s {
            prop_assert_eq!(s.eval(&zero), num_rational::BigRational::from_integer(r.into()));
        }
    }
}
