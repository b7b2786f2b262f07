//! The reproduction suite behind `verify`.
//!
//! Ten criteria, each with its own stopwatch and, where stated, a time
//! limit that counts toward pass/fail. Quick mode stays at day-3 scale
//! and skips nothing else; full mode widens the scans to day 4 and adds
//! the one deliberately enormous notation round trip.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use nopq::algebra::{
    self, check_sum_types, TableKind, TypeSet, TypeTable, ADDITION_TABLE, DOUBLING_ROWS,
    SUBTRACTION_TABLE, TREBLING_ROWS,
};
use nopq::classify::{Classifier, CoalitionOracle, GameType, Seat};
use nopq::enumerate::{sample_games, universe};
use nopq::nim;
use nopq::notation;
use nopq::scan::{SumTypeTable, TripleTypeTable};
use nopq::store::{GameId, Store};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde_json::{json, Value};

use crate::{format, parallel, Report};

/// Fixed classifications: expression, expected type letter.
const FIXED_TYPES: [(&str, char); 15] = [
    ("0", 'P'),
    ("1", 'N'),
    ("11", 'O'),
    ("111", 'P'),
    ("2", 'N'),
    ("3", 'N'),
    ("12", 'Q'),
    ("112", 'N'),
    ("1112", 'N'),
    ("11112", 'Q'),
    ("22", 'Q'),
    ("{2}", 'O'),
    ("{{2}}", 'P'),
    ("{1,11}", 'Q'),
    ("{2,11}", 'Q'),
];

/// Solution pairs realizing all 22 satisfiable sum patterns: claimed
/// addend types, claimed sum type, and expressions delivering them
/// (addends may come out in either order).
const WITNESSES: [(char, char, char, &str, &str); 22] = [
    ('P', 'P', 'P', "0", "0"),
    ('N', 'P', 'N', "1", "0"),
    ('N', 'N', 'O', "1", "1"),
    ('O', 'P', 'O', "11", "0"),
    ('O', 'N', 'P', "11", "1"),
    ('O', 'O', 'N', "11", "11"),
    ('Q', 'P', 'Q', "12", "0"),
    ('Q', 'N', 'Q', "12", "2"),
    ('Q', 'O', 'Q', "22", "11"),
    ('Q', 'Q', 'Q', "12", "12"),
    ('N', 'N', 'Q', "2", "2"),
    ('P', 'P', 'Q', "{{2}}", "{{2}}"),
    ('N', 'P', 'Q', "1111", "{{2}}"),
    ('O', 'P', 'Q', "{2}", "111"),
    ('O', 'N', 'Q', "1", "{2}"),
    ('O', 'O', 'Q', "{2}", "{2}"),
    ('N', 'N', 'N', "112", "1"),
    ('N', 'O', 'N', "2", "11"),
    ('Q', 'N', 'N', "12", "1"),
    ('Q', 'O', 'N', "12", "11"),
    ('Q', 'O', 'O', "{2,11}", "11"),
    ('Q', 'Q', 'O', "{1,11}", "{1,11}"),
];

/// The reduced signature grid for `1^m` against contexts `2_0..2_10`.
const BARE_GRID: [&str; 6] = [
    "1 2 0 1 2 0 1 2 0 1 2",
    "∞ ∞ 1 2 0 1 2 0 1 2 0",
    "1 ∞ ∞ ∞ 1 2 0 1 2 0 1",
    "1 ∞ ∞ ∞ ∞ ∞ 1 2 0 1 2",
    "∞ ∞ ∞ ∞ ∞ ∞ ∞ ∞ 1 2 0",
    "1 ∞ ∞ ∞ ∞ ∞ ∞ ∞ ∞ ∞ 1",
];

/// The same grid for `1^m 2`.
const WITH_TWO_GRID: [&str; 6] = [
    "∞ ∞ 1 ∞ 1 1 ∞ 1 1 ∞ 1",
    "∞ ∞ ∞ ∞ 1 ∞ 1 1 ∞ 1 1",
    "∞ ∞ ∞ ∞ ∞ ∞ 1 ∞ 1 1 ∞",
    "∞ ∞ ∞ ∞ ∞ ∞ ∞ ∞ 1 ∞ 1",
    "∞ ∞ ∞ ∞ ∞ ∞ ∞ ∞ ∞ ∞ 1",
    "∞ ∞ ∞ ∞ ∞ ∞ ∞ ∞ ∞ ∞ ∞",
];

/// Every expression string the project documentation leans on,
/// including the one that prints in gigabytes.
const DOCUMENTED_EXPRESSIONS: [&str; 34] = [
    "0",
    "1",
    "1+1+2",
    "11",
    "111",
    "112",
    "1112",
    "11112",
    "12",
    "12^3",
    "13",
    "1_1 2",
    "1_12",
    "2",
    "2+2",
    "22",
    "2_0",
    "2_1",
    "2_10",
    "2_2",
    "3",
    "4_5",
    "9",
    "{0,11}",
    "{1,11}",
    "{1,11}+{1,11}",
    "{12}",
    "{12}^3",
    "{12}^3 4_5",
    "{1}",
    "{2,11}",
    "{2,{1}}",
    "{2}",
    "{{2}}",
];

/// Printed forms beyond this many bytes are only exercised in full mode.
const QUICK_RENDER_CAP: u128 = 1 << 20;

/// Generated strings are rejected above this printed size so the random
/// batch stays quick.
const GENERATED_RENDER_CAP: u128 = 100_000;

/// Generated strings whose estimated position count exceeds this are
/// rejected before touching the store.
const GENERATED_NODE_CAP: u64 = 20_000;

struct Criterion {
    name: &'static str,
    passed: bool,
    elapsed: Duration,
    limit: Option<Duration>,
    detail: String,
}

impl Criterion {
    fn line(&self) -> String {
        let verdict = if self.passed { "pass" } else { "FAIL" };
        let limit = match self.limit {
            Some(l) => format!(" (limit {}s)", l.as_secs()),
            None => String::new(),
        };
        format!(
            "{verdict}  {:<15} {:>9}{limit:<14} {}",
            self.name,
            format::seconds(self.elapsed),
            self.detail
        )
    }

    fn json(&self) -> Value {
        json!({
            "name": self.name,
            "passed": self.passed,
            "seconds": self.elapsed.as_secs_f64(),
            "limit_seconds": self.limit.map(|l| l.as_secs_f64()),
            "detail": self.detail,
        })
    }
}

/// Shared state across criteria: one store, one classification memo,
/// and the day-4 tables once something has paid for them.
struct Suite {
    full: bool,
    seed: u64,
    threads: usize,
    store: Store,
    classifier: Classifier,
    day4: Option<Day4>,
}

struct Day4 {
    /// Day-4 rows against day-3 columns.
    table: SumTypeTable,
    /// Triples over day 3, for treble evaluation.
    triple: TripleTypeTable,
}

pub fn run(full: bool, seed: u64, threads: usize) -> Report {
    let started = Instant::now();
    let mut suite = Suite {
        full,
        seed,
        threads,
        store: Store::new(),
        classifier: Classifier::new(),
        day4: None,
    };
    // Stream each line to stderr as it lands; the slow criteria take
    // minutes in full mode.
    let mut criteria: Vec<Criterion> = Vec::with_capacity(10);
    let mut push = |c: Criterion| {
        eprintln!("{}", c.line());
        criteria.push(c);
    };
    push(suite.classifications());
    push(suite.equations());
    let scans = suite.forbidden_sums();
    let scan_elapsed = scans.elapsed;
    push(scans);
    push(suite.tables());
    push(suite.self_sums(scan_elapsed));
    push(suite.signatures());
    push(suite.unmasking());
    push(suite.oracle());
    push(suite.nim_reduction());
    push(suite.notation_round_trips());
    drop(push);

    let passed = criteria.iter().filter(|c| c.passed).count();
    let all = passed == criteria.len();
    let mode = if full { "full" } else { "quick" };
    let mut text = String::new();
    for c in &criteria {
        writeln!(text, "{}", c.line()).expect("writing to a String");
    }
    write!(
        text,
        "{passed}/{} criteria passed ({mode} mode, {})",
        criteria.len(),
        format::seconds(started.elapsed()),
    )
    .expect("writing to a String");
    let result = json!({
        "mode": mode,
        "seed": seed,
        "threads": threads,
        "passed": all,
        "seconds": started.elapsed().as_secs_f64(),
        "criteria": criteria.iter().map(|c| c.json()).collect::<Vec<_>>(),
    });
    if all {
        Report::ok(text, result)
    } else {
        Report::finding(text, result)
    }
}

impl Suite {
    fn parse(&mut self, text: &str) -> GameId {
        notation::parse(&mut self.store, text).expect("fixed notation parses")
    }

    fn type_of(&mut self, g: GameId) -> GameType {
        self.classifier.classify(&self.store, g)
    }

    fn ensure_day4(&mut self) {
        if self.day4.is_none() {
            let cols = universe(&mut self.store, 3).expect("day 3 is enumerable");
            let rows = universe(&mut self.store, 4).expect("day 4 is enumerable");
            let table = SumTypeTable::build(&self.store, &rows, &cols);
            let triple = TripleTypeTable::build(&self.store, &cols);
            self.day4 = Some(Day4 { table, triple });
        }
    }

    /// Fixed classifications, the ones ladder, and the ones-and-two
    /// ladder.
    fn classifications(&mut self) -> Criterion {
        let t = Instant::now();
        let mut checks = 0usize;
        let mut failures = Vec::new();
        let mut check = |suite: &mut Suite, expr: String, want: GameType| {
            let g = suite.parse(&expr);
            let got = suite.type_of(g);
            checks += 1;
            if got != want {
                failures.push(format!("{expr}: {} != {}", got.letter(), want.letter()));
            }
        };
        for (expr, letter) in FIXED_TYPES {
            check(self, expr.to_string(), by_letter(letter));
        }
        let ones = [GameType::Zero, GameType::One, GameType::Two];
        for n in 0..=9u32 {
            check(self, format!("1^{n}"), ones[(n % 3) as usize]);
        }
        let ones_two = [GameType::One, GameType::Inf, GameType::One];
        for n in 0..=6u32 {
            check(self, format!("1^{n} 2"), ones_two[(n % 3) as usize]);
        }
        self.report(
            "classifications",
            t,
            Some(Duration::from_secs(1)),
            failures,
            format!("{checks} fixed types and both ladders"),
        )
    }

    /// The 22 witness pairs classify as claimed, and every satisfiable
    /// sum pattern has a solution over day 3 plus the witnesses.
    fn equations(&mut self) -> Criterion {
        let t = Instant::now();
        let mut failures = Vec::new();
        for (lt, rt, st, le, re) in WITNESSES {
            let l = self.parse(le);
            let r = self.parse(re);
            let mut got = [self.type_of(l), self.type_of(r)];
            let mut want = [by_letter(lt), by_letter(rt)];
            got.sort_by_key(|x| x.index());
            want.sort_by_key(|x| x.index());
            if got != want {
                failures.push(format!("addends of {le} + {re} came out {got:?}"));
            }
            let s = self.store.sum(l, r);
            if self.type_of(s) != by_letter(st) {
                failures.push(format!("sum of {le} + {re} is not {st}"));
            }
        }
        let u3 = universe(&mut self.store, 3).expect("day 3 is enumerable");
        let base = algebra::base_with_witnesses(&mut self.store, &u3);
        let mut patterns = 0usize;
        for &a in &GameType::ALL {
            for &b in &GameType::ALL {
                if b.index() < a.index() {
                    continue;
                }
                for &s in &GameType::ALL {
                    if check_sum_types(a, b, s).is_some() {
                        continue;
                    }
                    patterns += 1;
                    let found = algebra::solve_equation(
                        &mut self.store,
                        &mut self.classifier,
                        a,
                        b,
                        s,
                        &base,
                    );
                    if found.is_none() {
                        failures.push(format!(
                            "{}+{}={} has no witness over the base",
                            a.letter(),
                            b.letter(),
                            s.letter()
                        ));
                    }
                }
            }
        }
        self.report(
            "equations",
            t,
            Some(Duration::from_secs(10)),
            failures,
            format!("22 witness pairs, {patterns} solvable patterns"),
        )
    }

    /// No pair of games realizes a forbidden sum type: all 136 day-3
    /// pairs, plus every day-4 x day-3 sum in full mode.
    fn forbidden_sums(&mut self) -> Criterion {
        let t = Instant::now();
        let mut failures = Vec::new();
        let u3 = universe(&mut self.store, 3).expect("day 3 is enumerable");
        let members = u3.members().to_vec();
        let pairs = members.len() * (members.len() + 1) / 2;
        let small = algebra::scan_forbidden_pairs(&mut self.store, &mut self.classifier, &members);
        if !small.is_empty() {
            failures.push(format!("{} day-3 violations", small.len()));
        }
        let detail = if self.full {
            self.ensure_day4();
            let d4 = self.day4.as_ref().expect("just built");
            let wide = parallel::scan_forbidden(&d4.table, self.threads);
            let sums = d4.table.rows().len() * d4.table.cols().len();
            if !wide.is_empty() {
                failures.push(format!("{} day-4 violations", wide.len()));
            }
            format!("{pairs} day-3 pairs and {sums} day-4 sums clean")
        } else {
            format!("{pairs} day-3 pairs clean (day-4 sweep runs under --full)")
        };
        self.report(
            "forbidden-sums",
            t,
            Some(Duration::from_secs(900)),
            failures,
            detail,
        )
    }

    /// Derived addition and subtraction tables equal the constants,
    /// including the empty cell and every saturated cell.
    fn tables(&mut self) -> Criterion {
        let t = Instant::now();
        let mut failures = Vec::new();
        let u3 = universe(&mut self.store, 3).expect("day 3 is enumerable");
        let base = algebra::base_with_witnesses(&mut self.store, &u3);
        let add = algebra::derive_type_table(
            &mut self.store,
            &mut self.classifier,
            TableKind::Addition,
            &base,
        );
        if add != TypeTable::Square(ADDITION_TABLE) {
            failures.push(String::from("derived addition table differs"));
        }
        let sub = algebra::derive_type_table(
            &mut self.store,
            &mut self.classifier,
            TableKind::Subtraction,
            &base,
        );
        if sub != TypeTable::Square(SUBTRACTION_TABLE) {
            failures.push(String::from("derived subtraction table differs"));
        }
        let TypeTable::Square(cells) = sub else {
            unreachable!("subtraction derives a square table")
        };
        if !cells[GameType::Zero.index()][GameType::Inf.index()].is_empty() {
            failures.push(String::from("the 0 - ∞ cell should be empty"));
        }
        let mut saturated = 0usize;
        for row in &cells {
            for &cell in row {
                if cell == TypeSet::ALL {
                    saturated += 1;
                }
            }
        }
        if cells[GameType::One.index()][GameType::One.index()] != TypeSet::ALL {
            failures.push(String::from("the 1 - 1 cell should allow everything"));
        }
        if cells[GameType::Inf.index()]
            .iter()
            .any(|&c| c != TypeSet::ALL)
        {
            failures.push(String::from("the ∞ row should allow everything"));
        }
        self.report(
            "tables",
            t,
            None,
            failures,
            format!("32 cells match; 1 empty cell, {saturated} saturated cells"),
        )
    }

    /// Doubling and trebling rows, and the two self-sum claims: trebles
    /// are never next-player wins, and doubling a next-player win never
    /// yields another.
    fn self_sums(&mut self, scan_elapsed: Duration) -> Criterion {
        let t = Instant::now();
        let mut failures = Vec::new();
        let detail;
        if self.full {
            self.ensure_day4();
            let d4 = self.day4.as_ref().expect("just built");
            let doubles = parallel::double_rows(&self.store, &d4.table, self.threads);
            let trebles = parallel::treble_rows(&self.store, &d4.table, &d4.triple, self.threads);
            if doubles != DOUBLING_ROWS {
                failures.push(String::from("doubling rows differ at day 4"));
            }
            if trebles != TREBLING_ROWS {
                failures.push(String::from("trebling rows differ at day 4"));
            }
            if trebles.iter().any(|row| row.contains(GameType::One)) {
                failures.push(String::from("some day-4 treble is a next-player win"));
            }
            if doubles[GameType::One.index()].contains(GameType::One) {
                failures.push(String::from("some next-player win doubles to another"));
            }
            detail = String::from("day-4 rows equal the constants; no treble is type 1");
        } else {
            let u3 = universe(&mut self.store, 3).expect("day 3 is enumerable");
            let base = algebra::base_with_witnesses(&mut self.store, &u3);
            let mut rows = [[TypeSet::EMPTY; 4]; 2];
            for (which, k) in [(0usize, 2u32), (1, 3)] {
                let derived = algebra::derive_type_table(
                    &mut self.store,
                    &mut self.classifier,
                    TableKind::Multiple(k),
                    &base,
                );
                let TypeTable::Rows(r) = derived else {
                    unreachable!("multiples derive row tables")
                };
                rows[which] = r;
            }
            let within = |seen: [TypeSet; 4], known: [TypeSet; 4]| {
                seen.iter()
                    .zip(known)
                    .all(|(s, k)| s.iter().all(|x| k.contains(x)))
            };
            if !within(rows[0], DOUBLING_ROWS) {
                failures.push(String::from("a base double left the doubling rows"));
            }
            if !within(rows[1], TREBLING_ROWS) {
                failures.push(String::from("a base treble left the trebling rows"));
            }
            if rows[1].iter().any(|row| row.contains(GameType::One)) {
                failures.push(String::from("some base treble is a next-player win"));
            }
            if rows[0][GameType::One.index()].contains(GameType::One) {
                failures.push(String::from("some next-player win doubles to another"));
            }
            let exact = rows[0] == DOUBLING_ROWS && rows[1] == TREBLING_ROWS;
            detail = format!(
                "base rows {} the constants; no treble is type 1",
                if exact {
                    "already equal"
                } else {
                    "stay inside"
                }
            );
        }
        // The limit is shared with the forbidden-sum scan, so both
        // stopwatches count.
        let elapsed = t.elapsed();
        let mut c = self.report(
            "self-sums",
            t,
            Some(Duration::from_secs(900)),
            failures,
            detail,
        );
        c.passed = c.passed && scan_elapsed + elapsed < Duration::from_secs(900);
        write!(
            c.detail,
            " (with scans: {})",
            format::seconds(scan_elapsed + elapsed)
        )
        .expect("writing to a String");
        c
    }

    /// Both Nim signature grids, cell for cell.
    fn signatures(&mut self) -> Criterion {
        let t = Instant::now();
        let mut failures = Vec::new();
        let mut cells = 0usize;
        for (with_two, expect) in [(false, BARE_GRID), (true, WITH_TWO_GRID)] {
            let grid = nim::signature_grid(&mut self.store, &mut self.classifier, with_two, 5, 10);
            for (m, row) in grid.iter().enumerate() {
                cells += row.len();
                let line: Vec<&str> = row.iter().map(|x| x.numeral()).collect();
                let line = line.join(" ");
                if line != expect[m] {
                    failures.push(format!(
                        "row m={m} ({}): {line}",
                        if with_two { "with two" } else { "bare" }
                    ));
                }
            }
        }
        self.report(
            "signatures",
            t,
            Some(Duration::from_secs(30)),
            failures,
            format!("{cells} grid cells match"),
        )
    }

    /// `{2}` drags every nonzero game to `∞` and leaves `0` alone, and
    /// nothing but `0` survives the zero battery.
    fn unmasking(&mut self) -> Criterion {
        let t = Instant::now();
        let mut failures = Vec::new();
        let g2 = self.parse("{2}");
        let detail;
        if self.full {
            self.ensure_day4();
            let battery = algebra::default_battery(&mut self.store);
            let battery_types = self.classifier.classify_all(&self.store, &battery);
            let d4 = self.day4.as_ref().expect("just built");
            let mut dragged = 0usize;
            for &g in d4.table.rows() {
                let want = if g == GameId::ZERO {
                    GameType::Two
                } else {
                    GameType::Inf
                };
                if d4.table.sum_type(g, g2) == want {
                    if g != GameId::ZERO {
                        dragged += 1;
                    }
                } else {
                    failures.push(format!("row member {} escaped {{2}}", g.index()));
                }
            }
            let sweep = parallel::zero_sweep(
                &self.store,
                &d4.table,
                &battery,
                &battery_types,
                self.threads,
            );
            if !sweep.stuck.is_empty() {
                failures.push(format!(
                    "{} games passed for 0 under the battery",
                    sweep.stuck.len()
                ));
            }
            detail = format!(
                "{dragged} day-4 sums hit ∞; {} games told apart from 0",
                sweep.distinguished
            );
        } else {
            let u3 = universe(&mut self.store, 3).expect("day 3 is enumerable");
            let members = u3.members().to_vec();
            let battery = algebra::default_battery(&mut self.store);
            let mut dragged = 0usize;
            for &g in &members {
                let s = self.store.sum(g, g2);
                let want = if g == GameId::ZERO {
                    GameType::Two
                } else {
                    GameType::Inf
                };
                if self.type_of(s) == want {
                    if g != GameId::ZERO {
                        dragged += 1;
                    }
                } else {
                    failures.push(format!("member {} has the wrong sum with {{2}}", g.index()));
                }
            }
            let mut separated = 0usize;
            for &g in &members {
                if g == GameId::ZERO {
                    continue;
                }
                match algebra::equivalent_up_to(
                    &mut self.store,
                    &mut self.classifier,
                    g,
                    GameId::ZERO,
                    &battery,
                ) {
                    algebra::EquivVerdict::Distinguished { .. } => separated += 1,
                    algebra::EquivVerdict::IndistinguishableUpTo(_) => {
                        failures.push(format!("member {} passes for 0", g.index()))
                    }
                }
            }
            detail = format!("{dragged} day-3 sums hit ∞; {separated} games told apart from 0");
        }
        self.report(
            "unmasking",
            t,
            Some(Duration::from_secs(300)),
            failures,
            detail,
        )
    }

    /// The option-rule classifier against the coalition oracle, plus
    /// the one-winner sanity check.
    fn oracle(&mut self) -> Criterion {
        let t = Instant::now();
        let mut failures = Vec::new();
        let u3 = universe(&mut self.store, 3).expect("day 3 is enumerable");
        let mut games = u3.members().to_vec();
        games.extend(sample_games(&mut self.store, 500, 5, 4, self.seed));
        let mut oracle = CoalitionOracle::new();
        for &g in &games {
            let by_rule = self.classifier.classify(&self.store, g);
            let by_play = oracle.type_of(&self.store, g);
            if by_rule != by_play {
                failures.push(format!(
                    "game {}: {} by rule, {} by play",
                    g.index(),
                    by_rule.letter(),
                    by_play.letter()
                ));
            }
            let winners = Seat::ALL
                .iter()
                .filter(|&&s| oracle.wins(&self.store, g, s))
                .count();
            if winners > 1 {
                failures.push(format!("game {} has {winners} winners", g.index()));
            }
            if (winners == 0) != (by_play == GameType::Inf) {
                failures.push(format!(
                    "game {}: winner count disagrees with type",
                    g.index()
                ));
            }
        }
        self.report(
            "oracle",
            t,
            None,
            failures,
            format!("{} games agree; one winner each", games.len()),
        )
    }

    /// Closed-form Nim types against the classifier, and reductions
    /// indistinguishable from their originals.
    fn nim_reduction(&mut self) -> Criterion {
        let t = Instant::now();
        let mut failures = Vec::new();
        let battery = algebra::default_battery(&mut self.store);
        let positions = nim::random_positions(1000, 5, self.seed);
        for p in &positions {
            let g = nim::to_game(&mut self.store, p);
            let by_rule = self.classifier.classify(&self.store, g);
            if nim::nim_type(p) != by_rule {
                failures.push(format!("{:?}: closed form disagrees", p.heaps()));
                continue;
            }
            let reduced = nim::reduce(p).position();
            let r = nim::to_game(&mut self.store, &reduced);
            if let algebra::EquivVerdict::Distinguished { context, .. } =
                algebra::equivalent_up_to(&mut self.store, &mut self.classifier, g, r, &battery)
            {
                failures.push(format!(
                    "{:?} and its reduction differ in context {}",
                    p.heaps(),
                    notation::render(&self.store, context)
                ));
            }
        }
        self.report(
            "nim-reduction",
            t,
            Some(Duration::from_secs(120)),
            failures,
            format!(
                "{} positions: closed form and reductions agree",
                positions.len()
            ),
        )
    }

    /// Round trips: day 3, the documented strings, and a seeded batch of
    /// grammar-generated strings.
    fn notation_round_trips(&mut self) -> Criterion {
        let t = Instant::now();
        let mut failures = Vec::new();
        let u3 = universe(&mut self.store, 3).expect("day 3 is enumerable");
        for &g in &u3.members().to_vec() {
            let text = notation::render(&self.store, g);
            if notation::parse(&mut self.store, &text) != Ok(g) {
                failures.push(format!("day-3 member {} drifted", g.index()));
            }
        }
        let mut skipped = 0usize;
        for expr in DOCUMENTED_EXPRESSIONS {
            let g = self.parse(expr);
            if !self.full && notation::rendered_len(&self.store, g) > QUICK_RENDER_CAP {
                skipped += 1;
                continue;
            }
            let before = self.store.len();
            let text = notation::render(&self.store, g);
            if notation::parse(&mut self.store, &text) != Ok(g) {
                failures.push(format!("{expr} drifted"));
            }
            if self.store.len() != before {
                failures.push(format!("{expr} grew the store on reparse"));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut generated = 0usize;
        while generated < 200 {
            let text = random_expression(&mut rng);
            let tree = match notation::parse_expr(&text) {
                Ok(tree) => tree,
                Err(e) => {
                    failures.push(format!("generated {text:?} failed to parse: {e}"));
                    generated += 1;
                    continue;
                }
            };
            // Screen by estimated store cost before interning anything:
            // an innocent-looking `^3` can denote millions of positions.
            if store_cost(&tree) > GENERATED_NODE_CAP {
                continue;
            }
            let g = match notation::parse(&mut self.store, &text) {
                Ok(g) => g,
                Err(e) => {
                    failures.push(format!("generated {text:?} failed to parse: {e}"));
                    generated += 1;
                    continue;
                }
            };
            if notation::rendered_len(&self.store, g) > GENERATED_RENDER_CAP {
                continue;
            }
            generated += 1;
            let printed = notation::render(&self.store, g);
            if notation::parse(&mut self.store, &printed) != Ok(g) {
                failures.push(format!("generated {text:?} drifted"));
            }
            if notation::eval(&mut self.store, &tree) != Ok(g) {
                failures.push(format!("generated {text:?} splits the two parse routes"));
            }
        }
        let fixed = DOCUMENTED_EXPRESSIONS.len() - skipped;
        let note = match skipped {
            0 => String::new(),
            1 => String::from(" (1 oversized string waits for --full)"),
            n => format!(" ({n} oversized strings wait for --full)"),
        };
        self.report(
            "notation",
            t,
            None,
            failures,
            format!(
                "{} members, {fixed} documented strings, {generated} generated strings{note}",
                u3.len()
            ),
        )
    }

    fn report(
        &self,
        name: &'static str,
        started: Instant,
        limit: Option<Duration>,
        failures: Vec<String>,
        clean_detail: String,
    ) -> Criterion {
        let elapsed = started.elapsed();
        let in_time = limit.is_none_or(|l| elapsed < l);
        let passed = failures.is_empty() && in_time;
        let mut detail = if failures.is_empty() {
            clean_detail
        } else {
            let mut s = format!("{} failures: ", failures.len());
            s.push_str(&failures[..failures.len().min(3)].join("; "));
            if failures.len() > 3 {
                s.push_str("; ...");
            }
            s
        };
        if failures.is_empty() && !in_time {
            detail.push_str(" [over the time limit]");
        }
        Criterion {
            name,
            passed,
            elapsed,
            limit,
            detail,
        }
    }
}

fn by_letter(c: char) -> GameType {
    GameType::from_name(&c.to_string()).expect("fixed letters name types")
}

/// One random expression in the surface grammar: sums of suffixed
/// atoms, braces kept shallow so most strings denote small games.
fn random_expression(rng: &mut ChaCha8Rng) -> String {
    let mut out = String::new();
    write_sum(rng, 2, &mut out);
    out
}

fn write_sum(rng: &mut ChaCha8Rng, depth: u32, out: &mut String) {
    let items = 1 + below(rng, 3);
    for i in 0..items {
        if i > 0 {
            out.push_str(if below(rng, 2) == 0 { "+" } else { " " });
        }
        write_item(rng, depth, out);
    }
}

fn write_item(rng: &mut ChaCha8Rng, depth: u32, out: &mut String) {
    write_atom(rng, depth, out);
    // At most one suffix: stacked multiples like 9^3^3 pile millions of
    // heap multisets into the store before any size cap can notice.
    if below(rng, 2) == 0 {
        let suffix = if below(rng, 2) == 0 { '^' } else { '_' };
        let n = below(rng, 4);
        out.push(suffix);
        write!(out, "{n}").expect("writing to a String");
    }
}

fn write_atom(rng: &mut ChaCha8Rng, depth: u32, out: &mut String) {
    if depth == 0 || below(rng, 3) > 0 {
        let digit = below(rng, 10);
        write!(out, "{digit}").expect("writing to a String");
        return;
    }
    out.push('{');
    let entries = 1 + below(rng, 2);
    for i in 0..entries {
        if i > 0 {
            out.push(',');
        }
        write_sum(rng, depth - 1, out);
    }
    out.push('}');
}

fn below(rng: &mut ChaCha8Rng, n: u64) -> u64 {
    rng.next_u64() % n
}

/// Upper bound on the store nodes an expression can intern: a heap of
/// size `d` brings `d + 1` positions, sums multiply, repeats
/// exponentiate, wrappers add.
fn store_cost(expr: &notation::GameExpr) -> u64 {
    use notation::GameExpr::*;
    match expr {
        Heap(d) => u64::from(*d) + 1,
        Options(es) => es
            .iter()
            .map(store_cost)
            .fold(1u64, |a, b| a.saturating_add(b)),
        Repeat(e, n) => {
            let c = store_cost(e);
            (0..*n).fold(1u64, |a, _| a.saturating_mul(c))
        }
        Nest(e, n) => store_cost(e).saturating_add(u64::from(*n)),
        Sum(es) => es
            .iter()
            .map(store_cost)
            .fold(1u64, |a, b| a.saturating_mul(b)),
    }
}
