//! The recursive classifier against the coalition oracle: two
//! independent readings of the same rules must never disagree.

use nopq::classify::{winning_option, GameType};
use nopq::enumerate::{census, sample_games, universe};
use nopq::{Classifier, CoalitionOracle, Store};

#[test]
fn classifier_and_oracle_agree_on_day_3() {
    let mut store = Store::new();
    let u3 = universe(&mut store, 3).unwrap();
    let mut classifier = Classifier::new();
    let mut oracle = CoalitionOracle::new();
    for &g in u3.members() {
        assert_eq!(
            classifier.classify(&store, g),
            oracle.type_of(&store, g),
            "game {g:?}"
        );
    }
}

#[test]
fn day_3_census_is_two_eight_three_three() {
    let mut store = Store::new();
    let u3 = universe(&mut store, 3).unwrap();
    let mut classifier = Classifier::new();
    assert_eq!(
        census(&store, &mut classifier, u3.members()).as_array(),
        [2, 8, 3, 3]
    );
}

#[test]
fn classifier_and_oracle_agree_on_five_hundred_samples() {
    let mut store = Store::new();
    let samples = sample_games(&mut store, 500, 5, 4, 42);
    let mut classifier = Classifier::new();
    let mut oracle = CoalitionOracle::new();
    for &g in &samples {
        assert_eq!(
            classifier.classify(&store, g),
            oracle.type_of(&store, g),
            "game {g:?}"
        );
    }
}

#[test]
fn sampling_is_reproducible_per_seed() {
    let mut a = Store::new();
    let mut b = Store::new();
    assert_eq!(
        sample_games(&mut a, 100, 5, 4, 7),
        sample_games(&mut b, 100, 5, 4, 7)
    );
    let mut c = Store::new();
    assert_ne!(
        sample_games(&mut c, 100, 5, 4, 8),
        sample_games(&mut a, 100, 5, 4, 7)
    );
}

#[test]
fn every_next_win_has_a_winning_option_on_day_3() {
    let mut store = Store::new();
    let u3 = universe(&mut store, 3).unwrap();
    let mut classifier = Classifier::new();
    for &g in u3.members() {
        let t = classifier.classify(&store, g);
        let w = winning_option(&store, &mut classifier, g);
        if t == GameType::One {
            let o = w.expect("a next-player win needs a move to a previous-player win");
            assert_eq!(classifier.classify(&store, o), GameType::Zero);
            assert!(store.options(g).contains(&o));
        } else {
            assert_eq!(w, None, "only next-player wins have winning moves");
        }
    }
}
