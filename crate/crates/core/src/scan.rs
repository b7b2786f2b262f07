//! Bulk classification of sums over enumerated universes.
//!
//! Day-4 verification needs the types of about a million cross sums and
//! of every member's double and treble. Interning those sums would dwarf
//! the universe itself, so this module classifies them positionally: a
//! sum of universe members is a cell in a table indexed by member ranks,
//! its options are cells one move away, and the usual option rule fills
//! the table bottom-up without creating a single new game node. The
//! store route and the table route agree everywhere they overlap; the
//! test suite holds them together.
//!
//! Everything here reads the store immutably, so scans partition cleanly
//! across threads by row range.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use crate::algebra::{check_sum_types, TypeSet, Violation};
use crate::classify::{option_rule, GameType};
use crate::enumerate::Universe;
use crate::store::{GameId, Store};

/// Running application of the option rule.
#[derive(Clone, Copy)]
struct RuleAcc {
    any_zero: bool,
    all_one: bool,
    all_two: bool,
    seen: bool,
}

impl RuleAcc {
    fn new() -> RuleAcc {
        RuleAcc {
            any_zero: false,
            all_one: true,
            all_two: true,
            seen: false,
        }
    }

    fn add(&mut self, t: GameType) {
        self.any_zero |= t == GameType::Zero;
        self.all_one &= t == GameType::One;
        self.all_two &= t == GameType::Two;
        self.seen = true;
    }

    fn finish(self) -> GameType {
        option_rule(self.any_zero, self.all_one, self.all_two, self.seen)
    }
}

/// Types of `a + b` for every row member `a` and column member `b`.
///
/// Rows and columns are universes one day apart at most (columns may be
/// the smaller), so that every option of a row member is itself a column
/// member and each cell's options are earlier cells.
pub struct SumTypeTable {
    row_ids: Vec<GameId>,
    col_ids: Vec<GameId>,
    row_rank: Vec<u32>, // id -> rank + 1, zero for non-members
    col_rank: Vec<u32>,
    cells: Vec<GameType>, // row-major, rows.len() * cols.len()
}

impl SumTypeTable {
    pub fn build(store: &Store, rows: &Universe, cols: &Universe) -> SumTypeTable {
        assert!(
            cols.day() <= rows.day() && rows.day() <= cols.day() + 1,
            "columns must be the rows' universe or the day before it"
        );
        let row_ids = rows.members().to_vec();
        let col_ids = cols.members().to_vec();
        let row_rank = rank_map(&row_ids);
        let col_rank = rank_map(&col_ids);
        let ncols = col_ids.len();
        let mut cells = vec![GameType::Zero; row_ids.len() * ncols];
        for (ci, &b) in col_ids.iter().enumerate() {
            for (ri, &a) in row_ids.iter().enumerate() {
                let mut acc = RuleAcc::new();
                for &ao in store.options(a) {
                    let ar = rank(&row_rank, ao).expect("row option is a column member");
                    acc.add(cells[ar * ncols + ci]);
                }
                for &bo in store.options(b) {
                    let br = rank(&col_rank, bo).expect("column option stays in columns");
                    acc.add(cells[ri * ncols + br]);
                }
                cells[ri * ncols + ci] = acc.finish();
            }
        }
        SumTypeTable {
            row_ids,
            col_ids,
            row_rank,
            col_rank,
            cells,
        }
    }

    pub fn rows(&self) -> &[GameId] {
        &self.row_ids
    }

    pub fn cols(&self) -> &[GameId] {
        &self.col_ids
    }

    pub fn is_row_member(&self, g: GameId) -> bool {
        rank(&self.row_rank, g).is_some()
    }

    pub fn is_col_member(&self, g: GameId) -> bool {
        rank(&self.col_rank, g).is_some()
    }

    /// Type of `a + b` for a row member and a column member.
    pub fn sum_type(&self, a: GameId, b: GameId) -> GameType {
        self.try_sum_type(a, b)
            .expect("both arguments must be table members")
    }

    pub fn try_sum_type(&self, a: GameId, b: GameId) -> Option<GameType> {
        let ri = rank(&self.row_rank, a)?;
        let ci = rank(&self.col_rank, b)?;
        Some(self.cells[ri * self.col_ids.len() + ci])
    }

    /// Type of a row member on its own (its sum with the null game).
    pub fn member_type(&self, a: GameId) -> GameType {
        self.sum_type(a, GameId::ZERO)
    }

    /// Type of `a + b` when both are row members: one rule application
    /// over cells, since each one's options are column members.
    pub fn sum_type_wide(&self, store: &Store, a: GameId, b: GameId) -> GameType {
        let mut acc = RuleAcc::new();
        for &ao in store.options(a) {
            acc.add(self.sum_type(b, ao));
        }
        for &bo in store.options(b) {
            acc.add(self.sum_type(a, bo));
        }
        acc.finish()
    }

    /// Type of `a + a` for a row member.
    pub fn double_type(&self, store: &Store, a: GameId) -> GameType {
        let mut acc = RuleAcc::new();
        for &ao in store.options(a) {
            acc.add(self.sum_type(a, ao));
        }
        acc.finish()
    }
}

/// Types of `x + y + z` for all members of one universe (day 3 in
/// practice): the three-dimensional analogue of [`SumTypeTable`].
pub struct TripleTypeTable {
    ids: Vec<GameId>,
    id_rank: Vec<u32>,
    cells: Vec<GameType>, // n^3, index (i * n + j) * n + k
}

impl TripleTypeTable {
    pub fn build(store: &Store, ground: &Universe) -> TripleTypeTable {
        let ids = ground.members().to_vec();
        let id_rank = rank_map(&ids);
        let n = ids.len();
        let mut cells = vec![GameType::Zero; n * n * n];
        for (i, &x) in ids.iter().enumerate() {
            for (j, &y) in ids.iter().enumerate() {
                for (k, &z) in ids.iter().enumerate() {
                    let mut acc = RuleAcc::new();
                    for &o in store.options(x) {
                        let r = rank(&id_rank, o).expect("universe is option-closed");
                        acc.add(cells[(r * n + j) * n + k]);
                    }
                    for &o in store.options(y) {
                        let r = rank(&id_rank, o).expect("universe is option-closed");
                        acc.add(cells[(i * n + r) * n + k]);
                    }
                    for &o in store.options(z) {
                        let r = rank(&id_rank, o).expect("universe is option-closed");
                        acc.add(cells[(i * n + j) * n + r]);
                    }
                    cells[(i * n + j) * n + k] = acc.finish();
                }
            }
        }
        TripleTypeTable {
            ids,
            id_rank,
            cells,
        }
    }

    pub fn members(&self) -> &[GameId] {
        &self.ids
    }

    pub fn triple_type(&self, x: GameId, y: GameId, z: GameId) -> GameType {
        let n = self.ids.len();
        let i = rank(&self.id_rank, x).expect("table member");
        let j = rank(&self.id_rank, y).expect("table member");
        let k = rank(&self.id_rank, z).expect("table member");
        self.cells[(i * n + j) * n + k]
    }
}

/// Classifies `a + a + a` for row members `a` without interning: two
/// scratch layers peel the copies of `a` down to the precomputed triple
/// table. Reusable across calls; keep one per worker thread.
pub struct TrebleEvaluator<'a> {
    store: &'a Store,
    pair: &'a SumTypeTable,
    triple: &'a TripleTypeTable,
    two_free: Vec<GameType>, // [x][y] -> type(x + y + a)
    one_free: Vec<GameType>, // [x] -> type(x + a + a)
}

impl<'a> TrebleEvaluator<'a> {
    pub fn new(
        store: &'a Store,
        pair: &'a SumTypeTable,
        triple: &'a TripleTypeTable,
    ) -> TrebleEvaluator<'a> {
        assert_eq!(
            pair.cols(),
            triple.members(),
            "pair columns and triple ground set must coincide"
        );
        let n = triple.members().len();
        TrebleEvaluator {
            store,
            pair,
            triple,
            two_free: vec![GameType::Zero; n * n],
            one_free: vec![GameType::Zero; n],
        }
    }

    /// Type of `a + a + a` for a row member `a`.
    pub fn treble_type(&mut self, a: GameId) -> GameType {
        let cols = self.pair.cols();
        let n = cols.len();
        let a_opts: Vec<usize> = self
            .store
            .options(a)
            .iter()
            .map(|&o| rank(&self.pair.col_rank, o).expect("row option is a column member"))
            .collect();
        for (i, &x) in cols.iter().enumerate() {
            for (j, &y) in cols.iter().enumerate() {
                let mut acc = RuleAcc::new();
                for &o in self.store.options(x) {
                    let r = rank(&self.pair.col_rank, o).expect("column option");
                    acc.add(self.two_free[r * n + j]);
                }
                for &o in self.store.options(y) {
                    let r = rank(&self.pair.col_rank, o).expect("column option");
                    acc.add(self.two_free[i * n + r]);
                }
                for &ar in &a_opts {
                    acc.add(self.triple.cells[(i * n + j) * n + ar]);
                }
                self.two_free[i * n + j] = acc.finish();
            }
        }
        for (i, &x) in cols.iter().enumerate() {
            let mut acc = RuleAcc::new();
            for &o in self.store.options(x) {
                let r = rank(&self.pair.col_rank, o).expect("column option");
                acc.add(self.one_free[r]);
            }
            for &ar in &a_opts {
                acc.add(self.two_free[i * n + ar]);
            }
            self.one_free[i] = acc.finish();
        }
        let mut acc = RuleAcc::new();
        for &ar in &a_opts {
            acc.add(self.one_free[ar]);
        }
        acc.finish()
    }
}

/// Checks every `(row, column)` sum in a row range against the addition
/// table's exclusions. An empty result means the table held.
pub fn scan_forbidden_extended_range(table: &SumTypeTable, rows: Range<usize>) -> Vec<Violation> {
    let col_types: Vec<GameType> = table.cols().iter().map(|&b| table.member_type(b)).collect();
    let mut violations = Vec::new();
    for ri in rows {
        let a = table.rows()[ri];
        let ta = table.member_type(a);
        for (ci, &b) in table.cols().iter().enumerate() {
            let ts = table.cells[ri * table.cols().len() + ci];
            if check_sum_types(ta, col_types[ci], ts).is_some() {
                violations.push(Violation {
                    left: a,
                    right: b,
                    left_type: ta,
                    right_type: col_types[ci],
                    sum_type: ts,
                });
            }
        }
    }
    violations
}

/// All `(row, column)` pairs at once.
pub fn scan_forbidden_extended(table: &SumTypeTable) -> Vec<Violation> {
    scan_forbidden_extended_range(table, 0..table.rows().len())
}

/// Observed doubling rows over a row range: which types `a + a` takes,
/// bucketed by the type of `a`.
pub fn double_rows_range(store: &Store, table: &SumTypeTable, rows: Range<usize>) -> [TypeSet; 4] {
    let mut out = [TypeSet::EMPTY; 4];
    for ri in rows {
        let a = table.rows()[ri];
        out[table.member_type(a).index()].insert(table.double_type(store, a));
    }
    out
}

/// Observed trebling rows over a row range.
pub fn treble_rows_range(
    store: &Store,
    pair: &SumTypeTable,
    triple: &TripleTypeTable,
    rows: Range<usize>,
) -> [TypeSet; 4] {
    let mut evaluator = TrebleEvaluator::new(store, pair, triple);
    let mut out = [TypeSet::EMPTY; 4];
    for ri in rows {
        let a = pair.rows()[ri];
        out[pair.member_type(a).index()].insert(evaluator.treble_type(a));
    }
    out
}

/// Row members of type `target` whose sum with every nonzero row member
/// is queer.
pub fn near_infinity_scan(store: &Store, table: &SumTypeTable, target: GameType) -> Vec<GameId> {
    near_infinity_scan_range(store, table, target, 0..table.rows().len())
}

pub fn near_infinity_scan_range(
    store: &Store,
    table: &SumTypeTable,
    target: GameType,
    rows: Range<usize>,
) -> Vec<GameId> {
    let mut out = Vec::new();
    'candidates: for ri in rows {
        let g = table.rows()[ri];
        if table.member_type(g) != target {
            continue;
        }
        for &x in table.rows() {
            if x == GameId::ZERO {
                continue;
            }
            let t = match table.try_sum_type(g, x) {
                Some(t) => t,
                None => table.sum_type_wide(store, g, x),
            };
            if t != GameType::Inf {
                continue 'candidates;
            }
        }
        out.push(g);
    }
    out
}

/// How a single row member fares against the null game under a battery.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ZeroScanOutcome {
    /// First battery index whose context types the two games apart.
    Distinguished {
        index: usize,
        left: GameType,
        right: GameType,
    },
    /// Battery position `index` lies outside the table's reach; the
    /// caller must fall back to the store route for this game.
    Escaped { index: usize },
    /// The whole battery failed to separate the game from zero.
    Indistinguishable,
}

/// Compares `a + X` with `0 + X = X` across the battery using table
/// lookups only. `battery_types[i]` must be the type of `battery[i]`.
pub fn distinguish_from_zero(
    store: &Store,
    table: &SumTypeTable,
    battery: &[GameId],
    battery_types: &[GameType],
    a: GameId,
) -> ZeroScanOutcome {
    for (i, &x) in battery.iter().enumerate() {
        let t = if let Some(t) = table.try_sum_type(a, x) {
            t
        } else if table.is_row_member(x) {
            table.sum_type_wide(store, a, x)
        } else {
            return ZeroScanOutcome::Escaped { index: i };
        };
        if t != battery_types[i] {
            return ZeroScanOutcome::Distinguished {
                index: i,
                left: t,
                right: battery_types[i],
            };
        }
    }
    ZeroScanOutcome::Indistinguishable
}

fn rank_map(ids: &[GameId]) -> Vec<u32> {
    let max = ids.last().map_or(0, |g| g.index() + 1);
    let mut map = vec![0u32; max];
    for (i, &g) in ids.iter().enumerate() {
        map[g.index()] = i as u32 + 1;
    }
    map
}

fn rank(map: &[u32], g: GameId) -> Option<usize> {
    match map.get(g.index()) {
        Some(&r) if r > 0 => Some(r as usize - 1),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::Classifier;
    use crate::enumerate::universe;

    fn day3_table(store: &mut Store) -> SumTypeTable {
        let u3 = universe(store, 3).unwrap();
        SumTypeTable::build(store, &u3, &u3)
    }

    #[test]
    fn pair_cells_agree_with_the_store_route() {
        let mut store = Store::new();
        let table = day3_table(&mut store);
        let mut cls = Classifier::new();
        let members = table.rows().to_vec();
        for &a in &members {
            for &b in &members {
                let s = store.sum(a, b);
                assert_eq!(
                    table.sum_type(a, b),
                    cls.classify(&store, s),
                    "at {a:?} + {b:?}"
                );
            }
        }
    }

    #[test]
    fn member_types_match_the_classifier() {
        let mut store = Store::new();
        let table = day3_table(&mut store);
        let mut cls = Classifier::new();
        for &g in table.rows() {
            assert_eq!(table.member_type(g), cls.classify(&store, g));
        }
    }

    #[test]
    fn triple_cells_agree_with_the_store_route() {
        let mut store = Store::new();
        let u2 = universe(&mut store, 2).unwrap();
        let triple = TripleTypeTable::build(&store, &u2);
        let mut cls = Classifier::new();
        let members = triple.members().to_vec();
        for &x in &members {
            for &y in &members {
                for &z in &members {
                    let s = {
                        let xy = store.sum(x, y);
                        store.sum(xy, z)
                    };
                    assert_eq!(
                        triple.triple_type(x, y, z),
                        cls.classify(&store, s),
                        "at {x:?} + {y:?} + {z:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn trebles_agree_with_interned_self_sums() {
        let mut store = Store::new();
        let u3 = universe(&mut store, 3).unwrap();
        let pair = SumTypeTable::build(&store, &u3, &u3);
        let triple = TripleTypeTable::build(&store, &u3);
        let mut evaluator = TrebleEvaluator::new(&store, &pair, &triple);
        let mut results = Vec::new();
        for &g in pair.rows() {
            results.push(evaluator.treble_type(g));
        }
        let mut cls = Classifier::new();
        for (&g, &fast) in u3.members().to_vec().iter().zip(&results) {
            let m = store.multiple(g, 3);
            assert_eq!(fast, cls.classify(&store, m), "treble of {g:?}");
        }
    }

    #[test]
    fn doubles_agree_with_interned_self_sums() {
        let mut store = Store::new();
        let table = day3_table(&mut store);
        let mut cls = Classifier::new();
        for &g in table.rows().to_vec().iter() {
            let fast = table.double_type(&store, g);
            let m = store.multiple(g, 2);
            assert_eq!(fast, cls.classify(&store, m), "double of {g:?}");
        }
    }

    #[test]
    fn day3_holds_no_forbidden_sums() {
        let mut store = Store::new();
        let table = day3_table(&mut store);
        assert!(scan_forbidden_extended(&table).is_empty());
    }

    #[test]
    fn zero_scan_matches_the_general_equivalence_test() {
        use crate::algebra::{default_battery, equivalent_up_to, EquivVerdict};
        let mut store = Store::new();
        let table = day3_table(&mut store);
        let battery = default_battery(&mut store);
        let mut cls = Classifier::new();
        let battery_types = cls.classify_all(&store, &battery);
        for &g in table.rows().to_vec().iter() {
            if g == GameId::ZERO {
                continue;
            }
            match distinguish_from_zero(&store, &table, &battery, &battery_types, g) {
                ZeroScanOutcome::Distinguished { index, left, right } => {
                    match equivalent_up_to(&mut store, &mut cls, g, GameId::ZERO, &battery) {
                        EquivVerdict::Distinguished {
                            context,
                            left: l,
                            right: r,
                        } => {
                            assert_eq!(context, battery[index]);
                            assert_eq!((l, r), (left, right));
                        }
                        other => panic!("general route disagrees: {other:?}"),
                    }
                }
                outcome => panic!("day-3 members all separate from zero early: {outcome:?}"),
            }
        }
    }
}
