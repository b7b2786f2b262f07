//! Interned, append-only store of finite game trees.
//!
//! A game is identified with its set of options, so equality of games is
//! structural equality of trees. The store hash-conses every node: each
//! distinct option set is kept once and named by a dense [`GameId`], which
//! collapses identity checks to integer comparison and makes the whole
//! collection a single shared DAG. Nodes are appended strictly after their
//! options, so every option id is smaller than the id of its parent — a
//! cheap witness that all stored games terminate.
//!
//! Disjunctive sums are built here as well, because the natural recursion
//! (`a + b` has options `a' + b` and `a + b'`) both reads and extends the
//! store, and benefits from a memo keyed on the unordered id pair.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;

use hashbrown::{HashMap, HashSet};

/// Dense index of an interned game in a [`Store`].
///
/// Ids are only meaningful relative to the store that issued them; two
/// ids from the same store are equal exactly when the games are identical.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GameId(u32);

impl GameId {
    /// The null game `0`: no options at all, a loss for whoever must move.
    /// Every store contains it at index zero.
    pub const ZERO: GameId = GameId(0);

    /// Position of this game in the store's node list.
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Failure modes of store construction.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum StoreError {
    /// An option id that was never issued by this store.
    UnknownId(GameId),
    /// Nim heaps are only provided for sizes 0 through 9, matching the
    /// single digits of the game notation.
    HeapTooLarge(u32),
}

impl fmt::Display for StoreError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            StoreError::UnknownId(id) => {
                write!(f, "unknown game id {} (not interned in this store)", id.0)
            }
            StoreError::HeapTooLarge(n) => {
                write!(f, "nim heap of size {n} is out of range (heaps go up to 9)")
            }
        }
    }
}

impl core::error::Error for StoreError {}

/// Shape summary of one game: direct options, height, and the size of its
/// transitive closure (the game itself plus every subgame, deduplicated).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct GameStats {
    pub option_count: usize,
    /// Height of the tree: day on which the game is first born.
    pub birthday: u32,
    pub subgame_count: usize,
}

/// Append-only interner for game trees.
pub struct Store {
    nodes: Vec<Box<[GameId]>>,
    index: HashMap<Box<[GameId]>, GameId>,
    sum_memo: HashMap<u64, GameId>,
}

impl Store {
    /// Creates a store holding just the null game, at [`GameId::ZERO`].
    pub fn new() -> Store {
        let mut store = Store {
            nodes: Vec::new(),
            index: HashMap::new(),
            sum_memo: HashMap::new(),
        };
        store.intern_sorted(&[]);
        store
    }

    /// Number of distinct games interned so far.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    /// Always false: the null game is interned on construction.
    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Whether `g` was issued by this store.
    pub fn contains(&self, g: GameId) -> bool {
        g.index() < self.nodes.len()
    }

    /// The options of `g`, sorted ascending and duplicate-free.
    ///
    /// Panics if `g` is not from this store.
    pub fn options(&self, g: GameId) -> &[GameId] {
        &self.nodes[g.index()]
    }

    /// Interns the game whose options are `options` (order and duplicates
    /// are irrelevant: `{1,0,1}` is the same game as `{0,1}`). Returns the
    /// existing id when the game is already present.
    pub fn intern(&mut self, options: &[GameId]) -> Result<GameId, StoreError> {
        for &o in options {
            if !self.contains(o) {
                return Err(StoreError::UnknownId(o));
            }
        }
        let mut sorted = options.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        Ok(self.intern_sorted(&sorted))
    }

    /// Looks up a game by option set without interning it.
    pub fn find(&self, options: &[GameId]) -> Option<GameId> {
        let mut sorted = options.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        self.index.get(sorted.as_slice()).copied()
    }

    fn intern_sorted(&mut self, sorted: &[GameId]) -> GameId {
        if let Some(&id) = self.index.get(sorted) {
            return id;
        }
        let id = GameId(u32::try_from(self.nodes.len()).expect("store capacity exceeded"));
        let node: Box<[GameId]> = sorted.into();
        self.index.insert(node.clone(), id);
        self.nodes.push(node);
        id
    }

    /// The Nim heap of `size` counters: options are the heaps of every
    /// smaller size. `size` ranges over 0..=9; heap 0 is the null game.
    pub fn nim_heap(&mut self, size: u32) -> Result<GameId, StoreError> {
        if size > 9 {
            return Err(StoreError::HeapTooLarge(size));
        }
        let mut heaps = [GameId::ZERO; 10];
        for d in 1..=size as usize {
            // Each heap's id exceeds its options' ids, so this prefix is
            // already sorted.
            heaps[d] = self.intern_sorted(&heaps[..d]);
        }
        Ok(heaps[size as usize])
    }

    /// Disjunctive sum: a move in `a + b` is a move in exactly one summand.
    ///
    /// Commutative and associative up to identity, with the null game as
    /// neutral element; results are memoized on the unordered id pair.
    /// Panics if either id is not from this store.
    pub fn sum(&mut self, a: GameId, b: GameId) -> GameId {
        assert!(self.contains(a) && self.contains(b), "sum of foreign ids");
        self.sum_inner(a, b)
    }

    fn sum_inner(&mut self, a: GameId, b: GameId) -> GameId {
        if a == GameId::ZERO {
            return b;
        }
        if b == GameId::ZERO {
            return a;
        }
        let key = pair_key(a, b);
        if let Some(&s) = self.sum_memo.get(&key) {
            return s;
        }
        let left = self.options(a).to_vec();
        let right = self.options(b).to_vec();
        let mut opts = Vec::with_capacity(left.len() + right.len());
        for x in left {
            opts.push(self.sum_inner(x, b));
        }
        for y in right {
            opts.push(self.sum_inner(a, y));
        }
        opts.sort_unstable();
        opts.dedup();
        let id = self.intern_sorted(&opts);
        self.sum_memo.insert(key, id);
        id
    }

    /// Sum of `copies` copies of `g`; zero copies give the null game.
    pub fn multiple(&mut self, g: GameId, copies: u32) -> GameId {
        assert!(self.contains(g), "multiple of a foreign id");
        let mut acc = GameId::ZERO;
        for _ in 0..copies {
            acc = self.sum_inner(acc, g);
        }
        acc
    }

    /// Wraps `g` in `layers` singleton option sets: one layer turns `g`
    /// into the game whose only move is to `g`. Zero layers return `g`.
    pub fn nest(&mut self, g: GameId, layers: u32) -> GameId {
        assert!(self.contains(g), "nest of a foreign id");
        let mut acc = g;
        for _ in 0..layers {
            acc = self.intern_sorted(&[acc]);
        }
        acc
    }

    /// Shape summary of `g`; see [`GameStats`].
    pub fn describe(&self, g: GameId) -> GameStats {
        let mut seen = HashSet::new();
        let mut heights: HashMap<GameId, u32> = HashMap::new();
        self.visit(g, &mut seen, &mut heights);
        GameStats {
            option_count: self.options(g).len(),
            birthday: heights[&g],
            subgame_count: seen.len(),
        }
    }

    fn visit(&self, g: GameId, seen: &mut HashSet<GameId>, heights: &mut HashMap<GameId, u32>) {
        if !seen.insert(g) {
            return;
        }
        let mut height = 0;
        for &o in self.options(g) {
            self.visit(o, seen, heights);
            height = height.max(heights[&o] + 1);
        }
        heights.insert(g, height);
    }

    /// Writes the store as one line per node: `id: option ids...`.
    pub fn dump(&self, out: &mut dyn fmt::Write) -> fmt::Result {
        for (i, node) in self.nodes.iter().enumerate() {
            write!(out, "{i}:")?;
            for o in node.iter() {
                write!(out, " {}", o.0)?;
            }
            writeln!(out)?;
        }
        Ok(())
    }

    /// Panics unless every node's options are strictly ascending, smaller
    /// than the node's own id, and only the null game has none.
    pub fn check_invariants(&self) {
        for (i, node) in self.nodes.iter().enumerate() {
            assert!(i == 0 || !node.is_empty(), "duplicate null game at id {i}");
            for w in node.windows(2) {
                assert!(w[0] < w[1], "options of id {i} unsorted or duplicated");
            }
            if let Some(last) = node.last() {
                assert!(last.index() < i, "option cycle at id {i}");
            }
        }
    }
}

impl Default for Store {
    fn default() -> Store {
        Store::new()
    }
}

fn pair_key(a: GameId, b: GameId) -> u64 {
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    (u64::from(lo.0) << 32) | u64::from(hi.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::String;

    #[test]
    fn null_game_is_primordial() {
        let store = Store::new();
        assert_eq!(store.len(), 1);
        assert_eq!(store.options(GameId::ZERO), &[]);
        assert_eq!(store.find(&[]), Some(GameId::ZERO));
    }

    #[test]
    fn interning_is_idempotent_and_order_blind() {
        let mut store = Store::new();
        let one = store.intern(&[GameId::ZERO]).unwrap();
        let again = store.intern(&[GameId::ZERO, GameId::ZERO]).unwrap();
        assert_eq!(one, again);
        let a = store.intern(&[GameId::ZERO, one]).unwrap();
        let b = store.intern(&[one, GameId::ZERO]).unwrap();
        assert_eq!(a, b);
        assert_eq!(store.len(), 3);
    }

    #[test]
    fn foreign_ids_are_rejected() {
        let mut store = Store::new();
        let bogus = GameId(7);
        assert_eq!(store.intern(&[bogus]), Err(StoreError::UnknownId(bogus)));
    }

    #[test]
    fn nim_heaps_chain() {
        let mut store = Store::new();
        let h0 = store.nim_heap(0).unwrap();
        assert_eq!(h0, GameId::ZERO);
        let h2 = store.nim_heap(2).unwrap();
        let h1 = store.nim_heap(1).unwrap();
        assert_eq!(store.options(h2), &[h0, h1]);
        assert_eq!(store.options(h1), &[h0]);
        assert_eq!(store.nim_heap(10), Err(StoreError::HeapTooLarge(10)));
    }

    #[test]
    fn sum_has_null_identity() {
        let mut store = Store::new();
        let h2 = store.nim_heap(2).unwrap();
        assert_eq!(store.sum(h2, GameId::ZERO), h2);
        assert_eq!(store.sum(GameId::ZERO, h2), h2);
        assert_eq!(store.sum(GameId::ZERO, GameId::ZERO), GameId::ZERO);
    }

    #[test]
    fn one_plus_one_collapses() {
        // 1 + 1 has the single option 1 from either summand.
        let mut store = Store::new();
        let h1 = store.nim_heap(1).unwrap();
        let s = store.sum(h1, h1);
        assert_eq!(store.options(s), &[h1]);
    }

    #[test]
    fn one_plus_two_has_three_options() {
        let mut store = Store::new();
        let h1 = store.nim_heap(1).unwrap();
        let h2 = store.nim_heap(2).unwrap();
        let s = store.sum(h1, h2);
        let eleven = store.sum(h1, h1);
        let mut expect = [h1, h2, eleven];
        expect.sort_unstable();
        assert_eq!(store.options(s), expect);
    }

    #[test]
    fn describe_counts_distinct_subgames() {
        let mut store = Store::new();
        assert_eq!(
            store.describe(GameId::ZERO),
            GameStats {
                option_count: 0,
                birthday: 0,
                subgame_count: 1
            }
        );
        let h2 = store.nim_heap(2).unwrap();
        assert_eq!(
            store.describe(h2),
            GameStats {
                option_count: 2,
                birthday: 2,
                subgame_count: 3
            }
        );
        let h1 = store.nim_heap(1).unwrap();
        let s = store.sum(h1, h2);
        let stats = store.describe(s);
        assert_eq!(stats.option_count, 3);
        assert_eq!(stats.birthday, 3);
        // Closure of 1+2: itself, 1+1, 1, 2, 0.
        assert_eq!(stats.subgame_count, 5);
    }

    #[test]
    fn nest_and_multiple_recurrences() {
        let mut store = Store::new();
        let h1 = store.nim_heap(1).unwrap();
        let nested = store.nest(h1, 2);
        let once = store.nest(h1, 1);
        assert_eq!(store.options(nested), &[once]);
        assert_eq!(store.nest(h1, 0), h1);
        assert_eq!(store.multiple(h1, 0), GameId::ZERO);
        let twice = store.multiple(h1, 2);
        assert_eq!(twice, store.sum(h1, h1));
        let thrice = store.multiple(h1, 3);
        assert_eq!(thrice, store.sum(twice, h1));
    }

    #[test]
    fn dump_lists_nodes_in_id_order() {
        let mut store = Store::new();
        let h1 = store.nim_heap(1).unwrap();
        store.intern(&[GameId::ZERO, h1]).unwrap();
        let mut text = String::new();
        store.dump(&mut text).unwrap();
        assert_eq!(text, "0:\n1: 0\n2: 0 1\n");
    }

    #[test]
    fn invariants_hold_after_mixed_construction() {
        let mut store = Store::new();
        let h3 = store.nim_heap(3).unwrap();
        let h2 = store.nim_heap(2).unwrap();
        let s = store.sum(h3, h2);
        store.nest(s, 3);
        store.multiple(h3, 4);
        store.check_invariants();
    }
}
