//! Algebraic laws of interning and summation, checked exhaustively over
//! the day-3 universe and by property tests over random option lists.

use nopq::enumerate::universe;
use nopq::{GameId, Store};

use proptest::prelude::*;

#[test]
fn null_is_a_two_sided_identity_on_day_3() {
    let mut store = Store::new();
    let u3 = universe(&mut store, 3).unwrap();
    for &g in u3.members() {
        assert_eq!(store.sum(g, GameId::ZERO), g);
        assert_eq!(store.sum(GameId::ZERO, g), g);
    }
}

#[test]
fn sums_commute_on_day_3() {
    let mut store = Store::new();
    let u3 = universe(&mut store, 3).unwrap();
    let members = u3.members().to_vec();
    for &a in &members {
        for &b in &members {
            assert_eq!(store.sum(a, b), store.sum(b, a));
        }
    }
    store.check_invariants();
}

#[test]
fn sums_associate_on_day_3() {
    let mut store = Store::new();
    let u3 = universe(&mut store, 3).unwrap();
    let members = u3.members().to_vec();
    for &a in &members {
        for &b in &members {
            for &c in &members {
                let ab = store.sum(a, b);
                let bc = store.sum(b, c);
                assert_eq!(store.sum(ab, c), store.sum(a, bc));
            }
        }
    }
    store.check_invariants();
}

#[test]
fn multiple_unrolls_to_repeated_sums() {
    let mut store = Store::new();
    let u3 = universe(&mut store, 3).unwrap();
    for &g in u3.members() {
        let mut acc = GameId::ZERO;
        for n in 0..=4 {
            assert_eq!(store.multiple(g, n), acc);
            acc = store.sum(acc, g);
        }
    }
}

#[test]
fn nest_unrolls_to_repeated_wrapping() {
    let mut store = Store::new();
    let u3 = universe(&mut store, 3).unwrap();
    for &g in u3.members() {
        let mut acc = g;
        for n in 0..=4 {
            assert_eq!(store.nest(g, n), acc);
            acc = store.intern(&[acc]).unwrap();
        }
    }
}

/// A short option list drawn from the first few ids of a store that
/// already holds the day-2 universe (ids 0 through 3).
fn option_lists() -> impl Strategy<Value = Vec<u32>> {
    proptest::collection::vec(0u32..4, 0..6)
}

fn day2_store() -> Store {
    let mut store = Store::new();
    universe(&mut store, 2).unwrap();
    store
}

proptest! {
    #[test]
    fn interning_ignores_order_and_repeats(mut raw in option_lists()) {
        let mut store = day2_store();
        let ids: Vec<GameId> = {
            let members = universe(&mut store, 2).unwrap().members().to_vec();
            raw.iter().map(|&i| members[i as usize]).collect()
        };
        let forward = store.intern(&ids).unwrap();
        raw.reverse();
        let reversed: Vec<GameId> = {
            let members = universe(&mut store, 2).unwrap().members().to_vec();
            raw.iter().map(|&i| members[i as usize]).collect()
        };
        let backward = store.intern(&reversed).unwrap();
        prop_assert_eq!(forward, backward);
        let mut doubled = ids.clone();
        doubled.extend_from_slice(&ids);
        prop_assert_eq!(store.intern(&doubled).unwrap(), forward);
        store.check_invariants();
    }

    #[test]
    fn random_sums_commute_and_associate(
        a in option_lists(),
        b in option_lists(),
        c in option_lists(),
    ) {
        let mut store = day2_store();
        let members = universe(&mut store, 2).unwrap().members().to_vec();
        let build = |store: &mut Store, raw: &[u32]| {
            let ids: Vec<GameId> = raw.iter().map(|&i| members[i as usize]).collect();
            store.intern(&ids).unwrap()
        };
        let (ga, gb, gc) = (
            build(&mut store, &a),
            build(&mut store, &b),
            build(&mut store, &c),
        );
        prop_assert_eq!(store.sum(ga, gb), store.sum(gb, ga));
        let ab = store.sum(ga, gb);
        let bc = store.sum(gb, gc);
        prop_assert_eq!(store.sum(ab, gc), store.sum(ga, bc));
        store.check_invariants();
    }
}
