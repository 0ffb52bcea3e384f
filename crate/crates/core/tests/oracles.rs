mod common;

use common::{brute_force_class_count, brute_force_domatic_number, naive_winner};
use domgame_core::census::{all_graphs, connected_graphs, random_graph};
use domgame_core::domination::domatic_number;
use domgame_core::solver::solve;
use domgame_core::{GameConfig, Player};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

#[test]
fn solver_matches_full_game_enumeration_on_small_graphs() {
    for n in 1..=4 {
        for g in all_graphs(n).unwrap() {
            for k in 1..=3 {
                for first in [Player::Alice, Player::Bob] {
                    let c = GameConfig::new(g.clone(), k, first).unwrap();
                    assert_eq!(solve(&c).unwrap().0, naive_winner(&g, k, first), "{:?} k={k} {first}", g.edges());
                }
            }
        }
    }
}

#[test]
fn census_matches_brute_force_classes() {
    for n in 1..=5 {
        assert_eq!(all_graphs(n).unwrap().len(), brute_force_class_count(n, false), "n = {n}");
        assert_eq!(connected_graphs(n).unwrap().len(), brute_force_class_count(n, true), "n = {n}");
    }
}

#[test]
fn domatic_number_matches_brute_force() {
    for n in 1..=6 {
        for g in all_graphs(n).unwrap() {
            assert_eq!(domatic_number(&g).unwrap(), brute_force_domatic_number(&g), "{:?}", g.edges());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn solver_matches_full_game_enumeration_on_random_graphs(
        n in 2usize..=5, p in 0.2f64..0.9, seed in any::<u64>(), k in 1usize..=3, alice_first in any::<bool>()
    ) {
        let g = random_graph(n, p, &mut StdRng::seed_from_u64(seed)).unwrap();
        let first = if alice_first { Player::Alice } else { Player::Bob };
        let c = GameConfig::new(g.clone(), k, first).unwrap();
        prop_assert_eq!(solve(&c).unwrap().0, naive_winner(&g, k, first));
    }
}
