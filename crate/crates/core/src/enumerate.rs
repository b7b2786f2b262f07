//! Day-by-day enumeration of all finite games, plus a seeded sampler for
//! spot checks beyond the last enumerable day.
//!
//! Day 0 holds only the null game; day `d` holds every game whose options
//! all come from day `d-1`. The population squares in the exponent each
//! day — 1, 2, 4, 16, 65536 — so day 4 is the last one that fits in
//! memory, and day 5 (with 2^65536 members) is refused outright.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use hashbrown::HashSet;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::classify::Classifier;
use crate::classify::GameType;
use crate::store::{GameId, Store};

/// Largest day whose universe can be materialized.
pub const MAX_DAY: u32 = 4;

/// All games born by some day, interned and sorted by id.
#[derive(Debug)]
pub struct Universe {
    day: u32,
    members: Vec<GameId>,
}

impl Universe {
    pub fn day(&self) -> u32 {
        self.day
    }

    /// Members in ascending id order.
    pub fn members(&self) -> &[GameId] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, g: GameId) -> bool {
        self.members.binary_search(&g).is_ok()
    }
}

/// Raised when a universe is too large to build.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EnumerationError {
    DayTooLarge(u32),
}

impl fmt::Display for EnumerationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            EnumerationError::DayTooLarge(day) => write!(
                f,
                "cannot enumerate day {day}: day {MAX_DAY} already holds 65536 games \
                 and day 5 would hold 2^65536; the limit is day {MAX_DAY}"
            ),
        }
    }
}

impl core::error::Error for EnumerationError {}

/// Interns every game born by `day` and returns them sorted by id.
///
/// Generation is deterministic: each day's newcomers are interned in
/// lexicographic order of their option-id sequences, so on a fresh store
/// the same ids come out every time.
pub fn universe(store: &mut Store, day: u32) -> Result<Universe, EnumerationError> {
    if day > MAX_DAY {
        return Err(EnumerationError::DayTooLarge(day));
    }
    let mut members = vec![GameId::ZERO];
    for _ in 1..=day {
        let prev = members;
        let mut subsets: Vec<Vec<GameId>> = (0..1u64 << prev.len())
            .map(|mask| {
                prev.iter()
                    .enumerate()
                    .filter(|&(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &g)| g)
                    .collect()
            })
            .collect();
        subsets.sort_unstable();
        members = subsets
            .iter()
            .map(|opts| store.intern(opts).expect("options come from the store"))
            .collect();
        members.sort_unstable();
    }
    Ok(Universe { day, members })
}

/// How many games of each type a universe (or any id list) contains.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct TypeCensus {
    counts: [usize; 4],
}

impl TypeCensus {
    pub fn count(&self, t: GameType) -> usize {
        self.counts[t.index()]
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    /// Counts in display order 0, 1, 2, ∞.
    pub fn as_array(&self) -> [usize; 4] {
        self.counts
    }
}

/// Classifies every member and tallies the four types.
pub fn census(store: &Store, classifier: &mut Classifier, ids: &[GameId]) -> TypeCensus {
    let mut counts = [0usize; 4];
    for &g in ids {
        counts[classifier.classify(store, g).index()] += 1;
    }
    TypeCensus { counts }
}

/// Draws `count` games bottom-up at random, each with at most `max_width`
/// options and birthday at most `max_birthday`. The same seed always
/// yields the same games, in the same order; repeats are possible.
///
/// Panics if `max_width` is zero.
pub fn sample_games(
    store: &mut Store,
    count: usize,
    max_birthday: u32,
    max_width: usize,
    seed: u64,
) -> Vec<GameId> {
    assert!(max_width > 0, "games need room for at least one option");
    if max_birthday == 0 {
        return vec![GameId::ZERO; count];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Pool of candidate options, tagged with their birthdays. Options are
    // drawn only from entries younger than the target birthday, so the
    // bound holds by construction.
    let mut pool: Vec<(GameId, u32)> = vec![(GameId::ZERO, 0)];
    let mut seen: HashSet<GameId> = pool.iter().map(|&(g, _)| g).collect();
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let mut candidates: Vec<usize> = (0..pool.len())
            .filter(|&i| pool[i].1 < max_birthday)
            .collect();
        let width = 1 + below(&mut rng, max_width.min(candidates.len()));
        // Partial Fisher-Yates: the first `width` entries become a
        // uniform draw of distinct candidates.
        for i in 0..width {
            let j = i + below(&mut rng, candidates.len() - i);
            candidates.swap(i, j);
        }
        let opts: Vec<GameId> = candidates[..width].iter().map(|&i| pool[i].0).collect();
        let birthday = 1 + candidates[..width]
            .iter()
            .map(|&i| pool[i].1)
            .max()
            .expect("width is positive");
        let id = store.intern(&opts).expect("options come from the store");
        if seen.insert(id) {
            pool.push((id, birthday));
        }
        out.push(id);
    }
    out
}

fn below(rng: &mut ChaCha8Rng, n: usize) -> usize {
    (rng.next_u64() % n as u64) as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn the_population_squares_in_the_exponent() {
        let mut store = Store::new();
        for (day, expect) in [(0, 1), (1, 2), (2, 4), (3, 16)] {
            let u = universe(&mut store, day).unwrap();
            assert_eq!(u.len(), expect, "day {day}");
        }
    }

    #[test]
    fn day_five_is_refused() {
        let mut store = Store::new();
        assert_eq!(
            universe(&mut store, 5).unwrap_err(),
            EnumerationError::DayTooLarge(5)
        );
    }

    #[test]
    fn universes_nest_and_are_option_closed() {
        let mut store = Store::new();
        let u3 = universe(&mut store, 3).unwrap();
        let u2 = universe(&mut store, 2).unwrap();
        for &g in u2.members() {
            assert!(u3.contains(g));
        }
        for &g in u3.members() {
            for &o in store.options(g) {
                assert!(u3.contains(o), "option of a member escapes the universe");
            }
        }
    }

    #[test]
    fn generation_is_reproducible_on_a_fresh_store() {
        let ids = |_| {
            let mut store = Store::new();
            let u = universe(&mut store, 3).unwrap();
            u.members().to_vec()
        };
        assert_eq!(ids(0), ids(1));
    }

    #[test]
    fn day_two_census_by_hand() {
        // Day 2 holds 0, 1, 11 = {1} and {0,1}; their types are 0, 1, 2
        // and 1 respectively.
        let mut store = Store::new();
        let mut cls = Classifier::new();
        let u2 = universe(&mut store, 2).unwrap();
        let c = census(&store, &mut cls, u2.members());
        assert_eq!(c.as_array(), [1, 2, 1, 0]);
        assert_eq!(c.total(), u2.len());
    }

    #[test]
    fn sampler_is_deterministic_and_bounded() {
        let mut a = Store::new();
        let mut b = Store::new();
        let xs = sample_games(&mut a, 100, 4, 3, 7);
        let ys = sample_games(&mut b, 100, 4, 3, 7);
        assert_eq!(xs, ys);
        for &g in &xs {
            let stats = a.describe(g);
            assert!(stats.birthday <= 4);
            assert!(stats.option_count <= 3);
        }
        a.check_invariants();
    }

    #[test]
    fn sampler_degenerates_at_birthday_zero() {
        let mut store = Store::new();
        assert_eq!(sample_games(&mut store, 3, 0, 5, 1), vec![GameId::ZERO; 3]);
    }
}
