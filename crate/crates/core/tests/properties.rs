mod common;

use augfiber::ald::FlatAugmentedLink;
use augfiber::fiber_graph::{analyze, build_gb, Outcome};
use augfiber::moves::{deplumb, fill_a_circle, standard_surface_chi, HopfRecord};
use augfiber::pipeline::run_pd;
use augfiber::random::{braid_closure_pd, random_ald};
use augfiber::stallings::{nielsen_generates, verify, GroupWord, Move};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::relabel;

fn arb_move(rank: usize) -> impl Strategy<Value = Move> {
    let i = 0..rank;
    let j = 0..rank;
    (0..4u8, i, j, prop_oneof![Just(1i8), Just(-1i8)]).prop_filter_map("distinct slots", |(k, i, j, sign)| {
        match k {
            0 if i != j => Some(Move::Swap { i, j }),
            1 => Some(Move::Invert { i }),
            2 if i != j => Some(Move::MultLeft { i, j, sign }),
            3 if i != j => Some(Move::MultRight { i, j, sign }),
            _ => None,
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ald_json_round_trip(seed in any::<u64>(), size in 1usize..=12) {
        let a = random_ald(seed, size);
        prop_assert_eq!(FlatAugmentedLink::from_json(&a.to_json()).unwrap(), a.canonical());
    }

    #[test]
    fn oracle_matches_graph(seed in any::<u64>(), size in 1usize..=8) {
        let a = random_ald(seed, size);
        prop_assert_eq!(verify(&a).unwrap().outcome, analyze(&a).outcome);
    }

    #[test]
    fn relabeling_keeps_oracle_verdict(seed in any::<u64>()) {
        let a = random_ald(seed, 8);
        let b = relabel(&a, &mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(verify(&b).unwrap().outcome, verify(&a).unwrap().outcome);
    }

    #[test]
    fn a_fill_keeps_graph(seed in any::<u64>(), positive in any::<bool>()) {
        let a = random_ald(seed, 10);
        if let Some(c) = a.a_circles.first() {
            let (filled, record) = fill_a_circle(&a, &c.id, if positive { 1 } else { -1 }).unwrap();
            prop_assert_eq!(build_gb(&filled), build_gb(&a));
            prop_assert_eq!(record.chi_delta, -1);
        }
    }

    #[test]
    fn chi_ledger_is_additive(seed in any::<u64>()) {
        let a = random_ald(seed, 12);
        let (base, hopf) = deplumb(&a);
        let total: i64 = hopf.iter().map(HopfRecord::chi_delta).sum();
        prop_assert_eq!(standard_surface_chi(&a), standard_surface_chi(&base) + total);
    }

    /// Any sequence of Nielsen moves applied to the basis yields a tuple the
    /// reduction recognizes as generating.
    #[test]
    fn scrambled_basis_generates(moves in prop::collection::vec(arb_move(3), 0..8)) {
        let mut tuple: Vec<GroupWord> = (0..3).map(GroupWord::gen).collect();
        for mv in &moves {
            mv.apply(&mut tuple);
        }
        let out = nielsen_generates(&tuple, 3).unwrap();
        prop_assert!(out.generates);
        prop_assert!(out.trace.is_consistent());
    }

    /// Closures of two-strand braids σ1^(2k) are (2, 2k) torus links: one
    /// twist region, so G_B is a single edge and the link is fibered.
    #[test]
    fn two_strand_torus_links_fiber(k in 1usize..5, positive in any::<bool>()) {
        let text = braid_closure_pd(2, &vec![0; 2 * k], &[positive]);
        let out = run_pd(&text, None).unwrap();
        prop_assert_eq!(out.twist_regions.len(), 1);
        prop_assert_eq!(analyze(&out.ald).outcome, Outcome::Fibered);
    }
}
