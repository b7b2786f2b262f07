//! Three-player Nim: heaps of counters, take any positive number from
//! one heap, last to take wins.
//!
//! Every Nim position collapses, up to equivalence in any company, into
//! one of five reduced families: the empty position, a string of ones
//! `1^a`, a string of ones with a two `1^a 2`, a lone heap `3`, and the
//! absorbing `22`. Heaps of four or more play exactly like heaps of
//! three, and a three next to a one behaves like a two — that is the
//! whole reduction. Each family's type is then periodic in `a` with
//! period three, which gives Nim a closed-form classification that the
//! general engine can be checked against.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::classify::{Classifier, GameType};
use crate::store::{GameId, Store};

/// A Nim position: a multiset of heap sizes, kept sorted. Sizes run 1
/// through 9 (matching the digits of game notation); zero-size heaps are
/// dropped on construction since they offer no moves.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NimPosition {
    heaps: Vec<u8>,
}

/// Rejected heap sizes.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum NimError {
    HeapTooLarge(u32),
}

impl fmt::Display for NimError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            NimError::HeapTooLarge(h) => {
                write!(f, "nim heap of size {h} is out of range (heaps go up to 9)")
            }
        }
    }
}

impl core::error::Error for NimError {}

impl NimPosition {
    pub fn new(heaps: impl IntoIterator<Item = u32>) -> Result<NimPosition, NimError> {
        let mut kept = Vec::new();
        for h in heaps {
            if h > 9 {
                return Err(NimError::HeapTooLarge(h));
            }
            if h > 0 {
                kept.push(h as u8);
            }
        }
        kept.sort_unstable();
        Ok(NimPosition { heaps: kept })
    }

    /// Heap sizes, ascending.
    pub fn heaps(&self) -> &[u8] {
        &self.heaps
    }

    pub fn is_empty(&self) -> bool {
        self.heaps.is_empty()
    }
}

impl fmt::Display for NimPosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.heaps.is_empty() {
            return write!(f, "0");
        }
        for (i, h) in self.heaps.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{h}")?;
        }
        Ok(())
    }
}

/// The five reduced families of Nim positions.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ReducedForm {
    /// No heaps.
    Zero,
    /// `a` heaps of one, `a >= 1`.
    Ones(u32),
    /// `a` heaps of one and a single two (`a` may be zero).
    OnesTwo(u32),
    /// One heap of three or more, alone.
    Three,
    /// At least two heaps of two or more: the point of no return.
    TwoTwo,
}

impl ReducedForm {
    /// Game notation for the family representative.
    pub fn notation(self) -> String {
        match self {
            ReducedForm::Zero => String::from("0"),
            ReducedForm::Ones(a) => ones_string(a, false),
            ReducedForm::OnesTwo(a) => ones_string(a, true),
            ReducedForm::Three => String::from("3"),
            ReducedForm::TwoTwo => String::from("22"),
        }
    }

    /// The representative as a heap multiset.
    pub fn position(self) -> NimPosition {
        let heaps = match self {
            ReducedForm::Zero => vec![],
            ReducedForm::Ones(a) => vec![1; a as usize],
            ReducedForm::OnesTwo(a) => {
                let mut h = vec![1; a as usize];
                h.push(2);
                h
            }
            ReducedForm::Three => vec![3],
            ReducedForm::TwoTwo => vec![2, 2],
        };
        NimPosition { heaps }
    }

    /// Closed-form type of the family, periodic in the number of ones.
    pub fn game_type(self) -> GameType {
        match self {
            ReducedForm::Zero => GameType::Zero,
            ReducedForm::Ones(a) => match a % 3 {
                0 => GameType::Zero,
                1 => GameType::One,
                _ => GameType::Two,
            },
            ReducedForm::OnesTwo(a) => match a % 3 {
                1 => GameType::Inf,
                _ => GameType::One,
            },
            ReducedForm::Three => GameType::One,
            ReducedForm::TwoTwo => GameType::Inf,
        }
    }
}

fn ones_string(a: u32, with_two: bool) -> String {
    use alloc::string::ToString;
    let mut s = String::new();
    if a <= 9 {
        for _ in 0..a {
            s.push('1');
        }
    } else {
        s.push_str("1^");
        s.push_str(&a.to_string());
    }
    if with_two {
        if a > 9 {
            s.push(' ');
        }
        s.push('2');
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

/// Reduces a position to its family: heaps above three play like three,
/// a three with company plays like a two, and two heaps of two or more
/// absorb everything else.
pub fn reduce(p: &NimPosition) -> ReducedForm {
    let ones = p.heaps.iter().filter(|&&h| h == 1).count() as u32;
    let twos = p.heaps.iter().filter(|&&h| h == 2).count();
    let bigs = p.heaps.iter().filter(|&&h| h >= 3).count();
    if twos + bigs >= 2 {
        ReducedForm::TwoTwo
    } else if twos == 1 {
        ReducedForm::OnesTwo(ones)
    } else if bigs == 1 {
        if ones >= 1 {
            ReducedForm::OnesTwo(ones)
        } else {
            ReducedForm::Three
        }
    } else if ones == 0 {
        ReducedForm::Zero
    } else {
        ReducedForm::Ones(ones)
    }
}

/// Type of a position straight from its reduced form, with no game tree
/// in sight.
pub fn nim_type(p: &NimPosition) -> GameType {
    reduce(p).game_type()
}

/// Builds the position as a stored game, heap by heap.
pub fn to_game(store: &mut Store, p: &NimPosition) -> GameId {
    let mut acc = GameId::ZERO;
    for &h in &p.heaps {
        let heap = store.nim_heap(u32::from(h)).expect("heaps are at most 9");
        acc = store.sum(acc, heap);
    }
    acc
}

/// Signature grid of the ones-string families against two-towers: cell
/// `(m, n)` is the type of `1^m + 2_n`, or of `1^m + 2 + 2_n` when
/// `with_two` is set. Rows run `0..=max_m`, columns `0..=max_n`.
pub fn signature_grid(
    store: &mut Store,
    classifier: &mut Classifier,
    with_two: bool,
    max_m: u32,
    max_n: u32,
) -> Vec<Vec<GameType>> {
    let h1 = store.nim_heap(1).expect("heap 1");
    let h2 = store.nim_heap(2).expect("heap 2");
    let contexts: Vec<GameId> = (0..=max_n).map(|n| store.nest(h2, n)).collect();
    (0..=max_m)
        .map(|m| {
            let mut g = store.multiple(h1, m);
            if with_two {
                g = store.sum(g, h2);
            }
            crate::algebra::signature(store, classifier, g, &contexts)
        })
        .collect()
}

/// Seeded corpus of random positions with up to `max_heaps` heaps of
/// sizes 1 through 9. Deterministic per seed.
pub fn random_positions(count: usize, max_heaps: usize, seed: u64) -> Vec<NimPosition> {
    assert!(max_heaps > 0, "positions need room for at least one heap");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut below = |n: usize| (rng.next_u64() % n as u64) as usize;
    (0..count)
        .map(|_| {
            let k = 1 + below(max_heaps);
            let heaps: Vec<u32> = (0..k).map(|_| 1 + below(9) as u32).collect();
            NimPosition::new(heaps).expect("sizes stay in range")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pos(heaps: &[u32]) -> NimPosition {
        NimPosition::new(heaps.iter().copied()).unwrap()
    }

    #[test]
    fn construction_sorts_and_drops_zeros() {
        let p = pos(&[5, 0, 1, 2, 0, 1]);
        assert_eq!(p.heaps(), &[1, 1, 2, 5]);
        assert_eq!(NimPosition::new([12]), Err(NimError::HeapTooLarge(12)));
    }

    #[test]
    fn reduction_hits_all_five_families() {
        assert_eq!(reduce(&pos(&[])), ReducedForm::Zero);
        assert_eq!(reduce(&pos(&[1, 1, 1])), ReducedForm::Ones(3));
        assert_eq!(reduce(&pos(&[2])), ReducedForm::OnesTwo(0));
        assert_eq!(reduce(&pos(&[1, 3])), ReducedForm::OnesTwo(1));
        assert_eq!(reduce(&pos(&[7])), ReducedForm::Three);
        assert_eq!(reduce(&pos(&[2, 2, 3])), ReducedForm::TwoTwo);
        assert_eq!(reduce(&pos(&[1, 1, 2, 5])), ReducedForm::TwoTwo);
    }

    #[test]
    fn notation_matches_the_families() {
        assert_eq!(reduce(&pos(&[])).notation(), "0");
        assert_eq!(reduce(&pos(&[1, 1])).notation(), "11");
        assert_eq!(reduce(&pos(&[1, 2])).notation(), "12");
        assert_eq!(reduce(&pos(&[2])).notation(), "2");
        assert_eq!(reduce(&pos(&[4])).notation(), "3");
        assert_eq!(reduce(&pos(&[1, 1, 2, 5])).notation(), "22");
    }

    #[test]
    fn closed_form_types_are_periodic() {
        for a in 0..12u32 {
            let expect = match a % 3 {
                0 => GameType::Zero,
                1 => GameType::One,
                _ => GameType::Two,
            };
            let form = if a == 0 {
                ReducedForm::Zero
            } else {
                ReducedForm::Ones(a)
            };
            assert_eq!(form.game_type(), expect, "1^{a}");
            let with_two = ReducedForm::OnesTwo(a).game_type();
            let expect_two = if a % 3 == 1 {
                GameType::Inf
            } else {
                GameType::One
            };
            assert_eq!(with_two, expect_two, "1^{a} 2");
        }
    }

    #[test]
    fn closed_form_agrees_with_the_classifier() {
        let mut store = Store::new();
        let mut cls = Classifier::new();
        for p in random_positions(150, 5, 11) {
            let g = to_game(&mut store, &p);
            assert_eq!(nim_type(&p), cls.classify(&store, g), "position {p}");
        }
    }

    #[test]
    fn representative_positions_round_trip() {
        for p in random_positions(60, 5, 3) {
            let form = reduce(&p);
            assert_eq!(reduce(&form.position()), form);
        }
    }

    #[test]
    fn corpus_is_deterministic() {
        assert_eq!(random_positions(40, 5, 9), random_positions(40, 5, 9));
    }
}
