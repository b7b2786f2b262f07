//! Game types: which of the three seats, if any, can force the win.
//!
//! The loser is the player with no move; the winner made the last move.
//! Because the two losing players may gang up on the third — even to their
//! own detriment — a game has a determined winner only when one seat can
//! beat *any* play by the other two. That yields four mutually exclusive
//! types, named here by the seat that wins:
//!
//! * [`GameType::Zero`] (`P`): the player who just moved wins;
//! * [`GameType::One`] (`N`): the player about to move wins;
//! * [`GameType::Two`] (`O`): the third player wins;
//! * [`GameType::Inf`] (`Q`): no seat can force it — the "queer" games.
//!
//! [`Classifier`] computes the type by the recursive option rule.
//! [`CoalitionOracle`] answers the underlying question directly — can the
//! seat beat a two-player coalition? — without reference to that rule, so
//! the two implementations serve as independent checks on each other.

use alloc::vec::Vec;

use crate::store::{GameId, Store};

/// The four outcome types, in the conventional display order 0, 1, 2, ∞.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
#[repr(u8)]
pub enum GameType {
    /// `P` / **0** — the previous player (last mover) wins.
    Zero = 0,
    /// `N` / **1** — the next player wins.
    One = 1,
    /// `O` / **2** — the other player wins.
    Two = 2,
    /// `Q` / **∞** — nobody can force a win.
    Inf = 3,
}

impl GameType {
    pub const ALL: [GameType; 4] = [GameType::Zero, GameType::One, GameType::Two, GameType::Inf];

    /// Position in [`GameType::ALL`]; handy for indexing tables.
    pub fn index(self) -> usize {
        self as usize
    }

    /// Single-letter name: `P`, `N`, `O` or `Q`.
    pub fn letter(self) -> char {
        match self {
            GameType::Zero => 'P',
            GameType::One => 'N',
            GameType::Two => 'O',
            GameType::Inf => 'Q',
        }
    }

    /// Numeral name: how many moves after yours the winning move falls
    /// (`∞` when there is no winner).
    pub fn numeral(self) -> &'static str {
        match self {
            GameType::Zero => "0",
            GameType::One => "1",
            GameType::Two => "2",
            GameType::Inf => "∞",
        }
    }

    /// Parses either alphabet, case-insensitively: `P`/`N`/`O`/`Q`,
    /// `0`/`1`/`2`, and `inf`/`∞`/`infinity` for the queer type.
    pub fn from_name(name: &str) -> Option<GameType> {
        match name.trim() {
            "P" | "p" | "0" => Some(GameType::Zero),
            "N" | "n" | "1" => Some(GameType::One),
            "O" | "o" | "2" => Some(GameType::Two),
            "Q" | "q" | "∞" | "inf" | "Inf" | "INF" | "infinity" => Some(GameType::Inf),
            _ => None,
        }
    }
}

impl core::fmt::Display for GameType {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// A seat at the table, named relative to whoever is about to move.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Seat {
    Next,
    Other,
    Previous,
}

impl Seat {
    pub const ALL: [Seat; 3] = [Seat::Next, Seat::Other, Seat::Previous];

    /// Where this seat sits once the current mover has moved: play rotates,
    /// so Next becomes Previous, Other becomes Next, Previous becomes Other.
    pub fn after_move(self) -> Seat {
        match self {
            Seat::Next => Seat::Previous,
            Seat::Other => Seat::Next,
            Seat::Previous => Seat::Other,
        }
    }
}

/// Memoized type classifier implementing the option rule:
///
/// * type `1` if some option has type `0`;
/// * else type `2` if there is at least one option and all have type `1`;
/// * else type `0` if all options have type `2` (vacuously for the null
///   game);
/// * else type `∞`.
pub struct Classifier {
    memo: Vec<u8>, // 0 = unfilled, otherwise GameType index + 1
}

impl Classifier {
    pub fn new() -> Classifier {
        Classifier { memo: Vec::new() }
    }

    /// Type of `g`. Amortized O(1) per distinct subgame.
    pub fn classify(&mut self, store: &Store, g: GameId) -> GameType {
        if self.memo.len() < store.len() {
            self.memo.resize(store.len(), 0);
        }
        self.fill(store, g)
    }

    fn fill(&mut self, store: &Store, g: GameId) -> GameType {
        if let Some(t) = decode(self.memo[g.index()]) {
            return t;
        }
        let mut any_zero = false;
        let mut all_one = true;
        let mut all_two = true;
        for &o in store.options(g) {
            let t = self.fill(store, o);
            any_zero |= t == GameType::Zero;
            all_one &= t == GameType::One;
            all_two &= t == GameType::Two;
        }
        let t = option_rule(any_zero, all_one, all_two, !store.options(g).is_empty());
        self.memo[g.index()] = encode(t);
        t
    }

    /// Types of a whole slice, in order.
    pub fn classify_all(&mut self, store: &Store, ids: &[GameId]) -> Vec<GameType> {
        ids.iter().map(|&g| self.classify(store, g)).collect()
    }
}

impl Default for Classifier {
    fn default() -> Classifier {
        Classifier::new()
    }
}

/// The option rule shared by every route that classifies a position from
/// the types of its options, however those options are represented.
pub(crate) fn option_rule(
    any_zero: bool,
    all_one: bool,
    all_two: bool,
    has_options: bool,
) -> GameType {
    if any_zero {
        GameType::One
    } else if all_one && has_options {
        GameType::Two
    } else if all_two {
        GameType::Zero
    } else {
        GameType::Inf
    }
}

fn encode(t: GameType) -> u8 {
    t as u8 + 1
}

fn decode(byte: u8) -> Option<GameType> {
    match byte {
        1 => Some(GameType::Zero),
        2 => Some(GameType::One),
        3 => Some(GameType::Two),
        4 => Some(GameType::Inf),
        _ => None,
    }
}

/// For a game of type `1`, the smallest-id option of type `0` — the move
/// that clinches the win. `None` for every other type.
pub fn winning_option(store: &Store, classifier: &mut Classifier, g: GameId) -> Option<GameId> {
    if classifier.classify(store, g) != GameType::One {
        return None;
    }
    store
        .options(g)
        .iter()
        .copied()
        .find(|&o| classifier.classify(store, o) == GameType::Zero)
}

/// Direct game-tree search for "can this seat beat a coalition of the
/// other two?", memoized per (game, seat).
///
/// The recursion tracks one distinguished player's seat. When that player
/// is about to move they pick any option that keeps them winning; when
/// anyone else is about to move, the coalition picks the option, so the
/// player must win under *all* of them.
pub struct CoalitionOracle {
    memo: Vec<[u8; 3]>, // 0 = unknown, 1 = loses, 2 = wins
}

impl CoalitionOracle {
    pub fn new() -> CoalitionOracle {
        CoalitionOracle { memo: Vec::new() }
    }

    /// Whether the player currently in `seat` can force the last move of
    /// `g` against adversarial play by both opponents.
    pub fn wins(&mut self, store: &Store, g: GameId, seat: Seat) -> bool {
        if self.memo.len() < store.len() {
            self.memo.resize(store.len(), [0; 3]);
        }
        self.eval(store, g, seat)
    }

    fn eval(&mut self, store: &Store, g: GameId, seat: Seat) -> bool {
        let slot = seat_index(seat);
        match self.memo[g.index()][slot] {
            1 => return false,
            2 => return true,
            _ => {}
        }
        let opts = store.options(g);
        let won = if opts.is_empty() {
            // Play is over; the winner is whoever moved last.
            seat == Seat::Previous
        } else if seat == Seat::Next {
            opts.iter().any(|&o| self.eval(store, o, seat.after_move()))
        } else {
            opts.iter().all(|&o| self.eval(store, o, seat.after_move()))
        };
        self.memo[g.index()][slot] = if won { 2 } else { 1 };
        won
    }

    /// Classifies `g` from the three seat queries alone. Panics if two
    /// seats could both force a win, which would contradict the game being
    /// zero-sum; this never happens for well-formed stores.
    pub fn type_of(&mut self, store: &Store, g: GameId) -> GameType {
        let next = self.wins(store, g, Seat::Next);
        let other = self.wins(store, g, Seat::Other);
        let previous = self.wins(store, g, Seat::Previous);
        let winners = usize::from(next) + usize::from(other) + usize::from(previous);
        assert!(
            winners <= 1,
            "two seats claim a forced win of the same game"
        );
        if next {
            GameType::One
        } else if other {
            GameType::Two
        } else if previous {
            GameType::Zero
        } else {
            GameType::Inf
        }
    }
}

impl Default for CoalitionOracle {
    fn default() -> CoalitionOracle {
        CoalitionOracle::new()
    }
}

fn seat_index(seat: Seat) -> usize {
    match seat {
        Seat::Next => 0,
        Seat::Other => 1,
        Seat::Previous => 2,
    }
}
