//! The empirical algebra of game types under disjunctive sum.
//!
//! Types do not add deterministically: knowing the types of `G` and `H`
//! only narrows `G + H` to a set of possibilities. This module carries
//! the known possibility tables — addition, subtraction (which third type
//! is consistent with a sum and one addend), doubling and trebling — and
//! the machinery to rederive them from scratch over an enumerated base,
//! solve single type equations, hunt for counterexamples to the table's
//! exclusions, and test equivalence of games against a battery of
//! contexts.
//!
//! A recurring character is the absorbing role of `∞`: adding a queer
//! game to anything of type `0` stays queer, and every nonempty cell of
//! the addition table contains `∞`.

use alloc::vec::Vec;

use hashbrown::HashSet;

use crate::classify::{Classifier, GameType};
use crate::enumerate::{self, Universe};
use crate::notation;
use crate::store::{GameId, Store};

use GameType::{Inf as Q, One as N, Two as O, Zero as P};

/// A subset of the four game types, packed into four bits.
#[derive(Clone, Copy, PartialEq, Eq, Default, Debug)]
pub struct TypeSet(u8);

impl TypeSet {
    pub const EMPTY: TypeSet = TypeSet(0);
    pub const ALL: TypeSet = TypeSet(0b1111);

    pub const fn of(types: &[GameType]) -> TypeSet {
        let mut bits = 0u8;
        let mut i = 0;
        while i < types.len() {
            bits |= 1 << types[i] as u8;
            i += 1;
        }
        TypeSet(bits)
    }

    pub fn insert(&mut self, t: GameType) {
        self.0 |= 1 << t as u8;
    }

    pub const fn contains(self, t: GameType) -> bool {
        self.0 >> t as u8 & 1 == 1
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Members in display order 0, 1, 2, ∞.
    pub fn iter(self) -> impl Iterator<Item = GameType> {
        GameType::ALL.into_iter().filter(move |&t| self.contains(t))
    }
}

/// Possible types of `G + H` given the types of the addends.
/// Row and column indices follow [`GameType::index`].
pub const ADDITION_TABLE: [[TypeSet; 4]; 4] = [
    [
        TypeSet::of(&[P, Q]),
        TypeSet::of(&[N, Q]),
        TypeSet::of(&[O, Q]),
        TypeSet::of(&[Q]),
    ],
    [
        TypeSet::of(&[N, Q]),
        TypeSet::of(&[N, O, Q]),
        TypeSet::of(&[P, N, Q]),
        TypeSet::of(&[N, Q]),
    ],
    [
        TypeSet::of(&[O, Q]),
        TypeSet::of(&[P, N, Q]),
        TypeSet::of(&[N, Q]),
        TypeSet::of(&[N, O, Q]),
    ],
    [
        TypeSet::of(&[Q]),
        TypeSet::of(&[N, Q]),
        TypeSet::of(&[N, O, Q]),
        TypeSet::of(&[O, Q]),
    ],
];

/// Possible types of `H` given the type of `G + H` (first index) and of
/// `G` (second index). The row for sum type `0` is traditionally headed
/// `3`, after the smallest game that realizes it.
pub const SUBTRACTION_TABLE: [[TypeSet; 4]; 4] = [
    [
        TypeSet::of(&[P]),
        TypeSet::of(&[O]),
        TypeSet::of(&[N]),
        TypeSet::EMPTY,
    ],
    [
        TypeSet::of(&[N]),
        TypeSet::ALL,
        TypeSet::of(&[N, O, Q]),
        TypeSet::of(&[N, O]),
    ],
    [
        TypeSet::of(&[O]),
        TypeSet::of(&[N]),
        TypeSet::of(&[P, Q]),
        TypeSet::of(&[O, Q]),
    ],
    [TypeSet::ALL, TypeSet::ALL, TypeSet::ALL, TypeSet::ALL],
];

/// Possible types of `G + G` by the type of `G`.
pub const DOUBLING_ROWS: [TypeSet; 4] = [
    TypeSet::of(&[P, Q]),
    TypeSet::of(&[O, Q]),
    TypeSet::of(&[N, Q]),
    TypeSet::of(&[O, Q]),
];

/// Possible types of `G + G + G` by the type of `G`: three copies of
/// anything winnable revert to type `0` or dissolve into `∞`.
pub const TREBLING_ROWS: [TypeSet; 4] = [
    TypeSet::of(&[P, Q]),
    TypeSet::of(&[P, Q]),
    TypeSet::of(&[P, Q]),
    TypeSet::of(&[Q]),
];

/// A type equation `left + right = sum` that no pair of games satisfies,
/// stored with `left.index() <= right.index()`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ForbiddenSum {
    pub left: GameType,
    pub right: GameType,
    pub sum: GameType,
}

/// The complement of the addition table: all impossible type equations,
/// one per unordered pair of addend types. There are 18.
pub fn forbidden_sums() -> Vec<ForbiddenSum> {
    let mut out = Vec::new();
    for (i, &left) in GameType::ALL.iter().enumerate() {
        for &right in &GameType::ALL[i..] {
            for sum in GameType::ALL {
                if !ADDITION_TABLE[left.index()][right.index()].contains(sum) {
                    out.push(ForbiddenSum { left, right, sum });
                }
            }
        }
    }
    out
}

/// Checks one observed sum against the addition table. Returns the
/// violated exclusion if the combination is supposed to be impossible.
pub fn check_sum_types(left: GameType, right: GameType, sum: GameType) -> Option<ForbiddenSum> {
    if ADDITION_TABLE[left.index()][right.index()].contains(sum) {
        None
    } else {
        let (left, right) = if left.index() <= right.index() {
            (left, right)
        } else {
            (right, left)
        };
        Some(ForbiddenSum { left, right, sum })
    }
}

/// A concrete pair of games whose sum lands in a forbidden cell. The
/// expected number of these, ever, is zero.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Violation {
    pub left: GameId,
    pub right: GameId,
    pub left_type: GameType,
    pub right_type: GameType,
    pub sum_type: GameType,
}

/// Which table to derive.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TableKind {
    Addition,
    Subtraction,
    /// Types of `k`-fold self-sums, `k >= 2`.
    Multiple(u32),
}

impl TableKind {
    pub const DOUBLING: TableKind = TableKind::Multiple(2);
    pub const TREBLING: TableKind = TableKind::Multiple(3);
}

/// A freshly derived table: square for addition and subtraction, one row
/// per addend type for self-sums.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TypeTable {
    Square([[TypeSet; 4]; 4]),
    Rows([TypeSet; 4]),
}

/// Games that, paired up, realize every satisfiable entry of the
/// addition table. Half live in day 3; the rest are the smallest known
/// representatives of the rarer combinations.
pub fn default_witnesses(store: &mut Store) -> Vec<GameId> {
    const EXPRS: [&str; 13] = [
        "0", "1", "11", "111", "1111", "2", "12", "22", "112", "{2}", "{{2}}", "{2,11}", "{1,11}",
    ];
    EXPRS
        .iter()
        .map(|text| notation::parse(store, text).expect("fixed notation"))
        .collect()
}

/// Universe members plus the standard witnesses, deduplicated and sorted
/// by id — the base most scans run over.
pub fn base_with_witnesses(store: &mut Store, universe: &Universe) -> Vec<GameId> {
    let mut base = universe.members().to_vec();
    base.extend(default_witnesses(store));
    base.sort_unstable();
    base.dedup();
    base
}

/// Rebuilds a possibility table empirically by classifying every pair
/// (or self-sum) over `base`, recording which combinations actually
/// occur. With a rich enough base the result reproduces the known
/// constants cell for cell.
pub fn derive_type_table(
    store: &mut Store,
    classifier: &mut Classifier,
    kind: TableKind,
    base: &[GameId],
) -> TypeTable {
    let types: Vec<GameType> = classifier.classify_all(store, base);
    match kind {
        TableKind::Addition | TableKind::Subtraction => {
            let mut cells = [[TypeSet::EMPTY; 4]; 4];
            for (i, &g) in base.iter().enumerate() {
                for (j, &h) in base.iter().enumerate().skip(i) {
                    let s = store.sum(g, h);
                    let ts = classifier.classify(store, s);
                    let (tg, th) = (types[i], types[j]);
                    if kind == TableKind::Addition {
                        cells[tg.index()][th.index()].insert(ts);
                        cells[th.index()][tg.index()].insert(ts);
                    } else {
                        cells[ts.index()][tg.index()].insert(th);
                        cells[ts.index()][th.index()].insert(tg);
                    }
                }
            }
            TypeTable::Square(cells)
        }
        TableKind::Multiple(k) => {
            assert!(k >= 2, "self-sum tables start at two copies");
            let mut rows = [TypeSet::EMPTY; 4];
            for (i, &g) in base.iter().enumerate() {
                let m = store.multiple(g, k);
                rows[types[i].index()].insert(classifier.classify(store, m));
            }
            TypeTable::Rows(rows)
        }
    }
}

/// Classifies every unordered pair over `base` (diagonal included) and
/// reports any sum that lands outside the addition table.
pub fn scan_forbidden_pairs(
    store: &mut Store,
    classifier: &mut Classifier,
    base: &[GameId],
) -> Vec<Violation> {
    let types: Vec<GameType> = classifier.classify_all(store, base);
    let mut violations = Vec::new();
    for (i, &g) in base.iter().enumerate() {
        for (j, &h) in base.iter().enumerate().skip(i) {
            let s = store.sum(g, h);
            let ts = classifier.classify(store, s);
            if check_sum_types(types[i], types[j], ts).is_some() {
                violations.push(Violation {
                    left: g,
                    right: h,
                    left_type: types[i],
                    right_type: types[j],
                    sum_type: ts,
                });
            }
        }
    }
    violations
}

/// Finds the first pair `(G, H)` over `base`, in lexicographic id order,
/// with the requested addend types whose sum has the requested type.
pub fn solve_equation(
    store: &mut Store,
    classifier: &mut Classifier,
    left: GameType,
    right: GameType,
    sum: GameType,
    base: &[GameId],
) -> Option<(GameId, GameId)> {
    let types: Vec<GameType> = classifier.classify_all(store, base);
    for (i, &g) in base.iter().enumerate() {
        if types[i] != left {
            continue;
        }
        for (j, &h) in base.iter().enumerate() {
            if types[j] != right {
                continue;
            }
            let s = store.sum(g, h);
            if classifier.classify(store, s) == sum {
                return Some((g, h));
            }
        }
    }
    None
}

/// Outcome of a battery equivalence test.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EquivVerdict {
    /// Some context gives the two games different types; the first such
    /// context in battery order, with both types.
    Distinguished {
        context: GameId,
        left: GameType,
        right: GameType,
    },
    /// No context in the battery separates them; carries the battery
    /// size. This bounds equivalence from below — a sharper battery could
    /// still tell the games apart.
    IndistinguishableUpTo(usize),
}

/// Tests `G ≡ H` as far as the battery can see: for each context `X`,
/// compares the types of `G + X` and `H + X`.
///
/// Panics on an empty battery, which would declare everything equivalent.
pub fn equivalent_up_to(
    store: &mut Store,
    classifier: &mut Classifier,
    left: GameId,
    right: GameId,
    battery: &[GameId],
) -> EquivVerdict {
    assert!(
        !battery.is_empty(),
        "an empty battery distinguishes nothing"
    );
    for &x in battery {
        let ls = store.sum(left, x);
        let lt = classifier.classify(store, ls);
        let rs = store.sum(right, x);
        let rt = classifier.classify(store, rs);
        if lt != rt {
            return EquivVerdict::Distinguished {
                context: x,
                left: lt,
                right: rt,
            };
        }
    }
    EquivVerdict::IndistinguishableUpTo(battery.len())
}

/// The standard context battery: all of day 3, towers `2_0..2_10`, ones
/// strings `1^1..1^6`, the same strings with a two (`1^0 2..1^5 2`), and
/// the known troublemakers `{0,11}`, `22` and `3`. Deduplicated, first
/// occurrence kept.
pub fn default_battery(store: &mut Store) -> Vec<GameId> {
    let u3 = enumerate::universe(store, 3).expect("day 3 is enumerable");
    let mut battery = u3.members().to_vec();
    let h1 = store.nim_heap(1).expect("heap 1");
    let h2 = store.nim_heap(2).expect("heap 2");
    for n in 0..=10 {
        battery.push(store.nest(h2, n));
    }
    for m in 1..=6 {
        battery.push(store.multiple(h1, m));
    }
    for m in 0..=5 {
        let ones = store.multiple(h1, m);
        battery.push(store.sum(ones, h2));
    }
    for text in ["{0,11}", "22", "3"] {
        battery.push(notation::parse(store, text).expect("fixed notation"));
    }
    let mut seen = HashSet::new();
    battery.retain(|&g| seen.insert(g));
    battery
}

/// The standard signature contexts: towers `2_0` through `2_10`.
pub fn default_signature_contexts(store: &mut Store) -> Vec<GameId> {
    let h2 = store.nim_heap(2).expect("heap 2");
    (0..=10).map(|n| store.nest(h2, n)).collect()
}

/// Types of `G + X` for each context `X`, in battery order.
pub fn signature(
    store: &mut Store,
    classifier: &mut Classifier,
    g: GameId,
    contexts: &[GameId],
) -> Vec<GameType> {
    contexts
        .iter()
        .map(|&x| {
            let s = store.sum(g, x);
            classifier.classify(store, s)
        })
        .collect()
}

/// Whether `G + X` is queer for every battery context `X` — the mark of
/// games equivalent to `∞` as far as the battery can see.
pub fn infinity_absorption_check(
    store: &mut Store,
    classifier: &mut Classifier,
    g: GameId,
    battery: &[GameId],
) -> bool {
    battery.iter().all(|&x| {
        let s = store.sum(g, x);
        classifier.classify(store, s) == GameType::Inf
    })
}

/// Members of `universe` with type `target` that every nonzero member
/// drags to `∞`: near-infinity games, winnable alone yet queer in any
/// nontrivial company.
pub fn near_infinity_search(
    store: &mut Store,
    classifier: &mut Classifier,
    universe: &Universe,
    target: GameType,
) -> Vec<GameId> {
    let members = universe.members().to_vec();
    let mut out = Vec::new();
    'candidates: for &g in &members {
        if classifier.classify(store, g) != target {
            continue;
        }
        for &x in &members {
            if x == GameId::ZERO {
                continue;
            }
            let s = store.sum(g, x);
            if classifier.classify(store, s) != GameType::Inf {
                continue 'candidates;
            }
        }
        out.push(g);
    }
    out
}
