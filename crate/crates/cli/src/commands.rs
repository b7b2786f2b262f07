//! Subcommand bodies.
//!
//! Each function takes already-split arguments, runs the corresponding
//! library operation, and packages a [`Report`]. Nothing here prints or
//! exits; `main` owns the terminal.

use std::fmt::Write as _;

use nopq::algebra::{self, TableKind, TypeSet, TypeTable, Violation, ADDITION_TABLE};
use nopq::classify::{Classifier, GameType};
use nopq::enumerate::{self, universe};
use nopq::nim::{self, NimPosition};
use nopq::notation;
use nopq::scan::{SumTypeTable, TripleTypeTable};
use nopq::store::{GameId, Store};
use serde_json::{json, Value};

use crate::equation::parse_equation;
use crate::{format, parallel, Report};

/// Longest game notation worth printing inline, in bytes. Beyond this
/// the text route reports the size instead; printed forms grow
/// exponentially in the worst case.
const PRINT_CAP: u128 = 10_000;

pub fn classify(expr: &str) -> Report {
    let mut store = Store::new();
    let g = match parse_game(&mut store, expr) {
        Ok(g) => g,
        Err(report) => return report,
    };
    let t = Classifier::new().classify(&store, g);
    let stats = store.describe(g);
    Report::ok(
        format::type_label(t),
        json!({
            "input": expr,
            "type": t.letter().to_string(),
            "numeral": t.numeral(),
            "birthday": stats.birthday,
            "subgames": stats.subgame_count,
        }),
    )
}

pub fn sum(exprs: &[String]) -> Report {
    let mut store = Store::new();
    let mut total = GameId::ZERO;
    for expr in exprs {
        match parse_game(&mut store, expr) {
            Ok(g) => total = store.sum(total, g),
            Err(report) => return report,
        }
    }
    let t = Classifier::new().classify(&store, total);
    let len = notation::rendered_len(&store, total);
    let printed = if len <= PRINT_CAP {
        Some(notation::render(&store, total))
    } else {
        None
    };
    let text = match &printed {
        Some(s) => format!("sum = {s}\ntype = {}", format::type_label(t)),
        None => format!(
            "sum = (prints in {len} bytes, suppressed)\ntype = {}",
            format::type_label(t)
        ),
    };
    Report::ok(
        text,
        json!({
            "inputs": exprs,
            "sum": printed,
            "rendered_len": clamp_u64(len),
            "type": t.letter().to_string(),
            "numeral": t.numeral(),
        }),
    )
}

pub fn reduce(heaps: &str) -> Report {
    let position = match parse_heaps(heaps) {
        Ok(p) => p,
        Err(report) => return report,
    };
    let form = nim::reduce(&position);
    let t = form.game_type();
    Report::ok(
        format!("{}, type {}", form.notation(), format::type_label(t)),
        json!({
            "heaps": position.heaps(),
            "reduced": form.notation(),
            "type": t.letter().to_string(),
            "numeral": t.numeral(),
        }),
    )
}

pub fn signature(expr: &str, contexts_spec: &str) -> Report {
    let mut store = Store::new();
    let g = match parse_game(&mut store, expr) {
        Ok(g) => g,
        Err(report) => return report,
    };
    let contexts = if contexts_spec == "default" {
        algebra::default_signature_contexts(&mut store)
    } else {
        match parse_game_list(&mut store, contexts_spec) {
            Ok(ids) => ids,
            Err(report) => return report,
        }
    };
    let mut classifier = Classifier::new();
    let sig = algebra::signature(&mut store, &mut classifier, g, &contexts);
    let numerals: Vec<&'static str> = sig.iter().map(|t| t.numeral()).collect();
    let shown: Vec<String> = contexts
        .iter()
        .map(|&x| notation::render(&store, x))
        .collect();
    Report::ok(
        numerals.join(" "),
        json!({
            "expression": expr,
            "contexts": shown,
            "signature": numerals,
        }),
    )
}

pub fn table(kind_text: &str, day: Option<u32>, threads: usize) -> Report {
    let kind = match parse_table_kind(kind_text) {
        Ok(kind) => kind,
        Err(report) => return report,
    };
    match kind {
        TableKind::Addition | TableKind::Subtraction => {
            let day = day.unwrap_or(3);
            if day > 3 {
                return Report::usage(
                    "pairwise tables stop at day 3; at day 4 use `scan-forbidden --extended`, \
                     which checks the addition law without building the table",
                    json!({"error": "day out of range", "max_day": 3}),
                );
            }
            square_table(kind, day)
        }
        TableKind::Multiple(k) if k < 2 => Report::usage(
            format!("multiple:{k} is not a table; self-sums start at multiple:2"),
            json!({"error": "multiple count out of range"}),
        ),
        TableKind::Multiple(k) => {
            let day = day.unwrap_or(if k <= 3 { 4 } else { 3 });
            if day > 4 || (day == 4 && k > 3) {
                let hint = if k > 3 {
                    "tables beyond trebling stop at day 3"
                } else {
                    "tables stop at day 4"
                };
                return Report::usage(
                    format!("multiple:{k} {hint}"),
                    json!({"error": "day out of range", "max_day": if k > 3 { 3 } else { 4 }}),
                );
            }
            if day == 4 {
                scanned_multiple_table(k, threads)
            } else {
                derived_multiple_table(k, day)
            }
        }
    }
}

pub fn solve(equation_text: &str, day: Option<u32>) -> Report {
    let eq = match parse_equation(equation_text) {
        Ok(eq) => eq,
        Err(e) => {
            return Report::usage(
                e.to_string(),
                json!({"error": e.message, "offset": e.offset}),
            )
        }
    };
    let day = day.unwrap_or(3);
    if day > 3 {
        return Report::usage(
            "the solver scans day 3 plus the standard witnesses; higher days are out of reach",
            json!({"error": "day out of range", "max_day": 3}),
        );
    }
    let mut store = Store::new();
    let u = universe(&mut store, day).expect("day was just capped");
    let base = algebra::base_with_witnesses(&mut store, &u);
    let mut classifier = Classifier::new();
    let found = algebra::solve_equation(
        &mut store,
        &mut classifier,
        eq.left,
        eq.right,
        eq.sum,
        &base,
    );
    let forbidden = !ADDITION_TABLE[eq.left.index()][eq.right.index()].contains(eq.sum);
    let equation_json = json!({
        "left": eq.left.letter().to_string(),
        "right": eq.right.letter().to_string(),
        "sum": eq.sum.letter().to_string(),
    });
    match found {
        Some((g, h)) => Report::ok(
            format!(
                "{} + {}\n{} + {} = {}",
                notation::render(&store, g),
                notation::render(&store, h),
                format::type_label(eq.left),
                format::type_label(eq.right),
                format::type_label(eq.sum),
            ),
            json!({
                "equation": equation_json,
                "day": day,
                "witness": {
                    "left": notation::render(&store, g),
                    "right": notation::render(&store, h),
                },
                "forbidden_by_table": false,
            }),
        ),
        None => {
            let mut text = String::from("no solution in scanned universe");
            if forbidden {
                write!(
                    text,
                    "\n(the addition table rules out {}+{}={}, so none exists at any scale)",
                    eq.left.letter(),
                    eq.right.letter(),
                    eq.sum.letter(),
                )
                .expect("writing to a String");
            }
            Report::finding(
                text,
                json!({
                    "equation": equation_json,
                    "day": day,
                    "witness": null,
                    "forbidden_by_table": forbidden,
                }),
            )
        }
    }
}

pub fn scan_forbidden(day: Option<u32>, extended: bool, threads: usize) -> Report {
    let mut store = Store::new();
    let (day, pairs, violations) = if extended {
        let day = day.unwrap_or(4);
        if day > 4 {
            return Report::usage(
                "the extended scan stops at day 4",
                json!({"error": "day out of range", "max_day": 4}),
            );
        }
        let cols = universe(&mut store, 3).expect("day 3 is enumerable");
        let rows = universe(&mut store, day).expect("day was just capped");
        let table = SumTypeTable::build(&store, &rows, &cols);
        let violations = parallel::scan_forbidden(&table, threads);
        (day, rows.len() * cols.len(), violations)
    } else {
        let day = day.unwrap_or(3);
        if day > 3 {
            return Report::usage(
                "the plain scan interns every pairwise sum and stops at day 3; \
                 pass --extended for the day-4 sweep",
                json!({"error": "day out of range", "max_day": 3}),
            );
        }
        let u = universe(&mut store, day).expect("day was just capped");
        let mut classifier = Classifier::new();
        let violations = algebra::scan_forbidden_pairs(&mut store, &mut classifier, u.members());
        let n = u.len();
        (day, n * (n + 1) / 2, violations)
    };
    let shape = if extended {
        format!("{pairs} ordered day-{day} x day-3 sums")
    } else {
        format!("{pairs} unordered day-{day} pairs")
    };
    let violations_json: Vec<Value> = violations
        .iter()
        .map(|v| violation_json(&store, v))
        .collect();
    let result = json!({
        "day": day,
        "extended": extended,
        "pairs": pairs,
        "violations": violations_json,
    });
    if violations.is_empty() {
        Report::ok(format!("scanned {shape}: no forbidden sums"), result)
    } else {
        let mut text = format!("scanned {shape}: {} forbidden sums\n", violations.len());
        for v in &violations {
            writeln!(
                text,
                "  {} + {}: {} + {} = {}",
                notation::render(&store, v.left),
                notation::render(&store, v.right),
                format::type_label(v.left_type),
                format::type_label(v.right_type),
                format::type_label(v.sum_type),
            )
            .expect("writing to a String");
        }
        text.pop();
        Report::finding(text, result)
    }
}

pub fn equiv(left: &str, right: &str, battery_spec: &str) -> Report {
    let mut store = Store::new();
    let g = match parse_game(&mut store, left) {
        Ok(g) => g,
        Err(report) => return report,
    };
    let h = match parse_game(&mut store, right) {
        Ok(h) => h,
        Err(report) => return report,
    };
    let battery = if battery_spec == "default" {
        algebra::default_battery(&mut store)
    } else {
        match parse_game_list(&mut store, battery_spec) {
            Ok(ids) => ids,
            Err(report) => return report,
        }
    };
    if battery.is_empty() {
        return Report::usage(
            "an empty battery distinguishes nothing",
            json!({"error": "empty battery"}),
        );
    }
    let mut classifier = Classifier::new();
    match algebra::equivalent_up_to(&mut store, &mut classifier, g, h, &battery) {
        algebra::EquivVerdict::Distinguished {
            context,
            left: lt,
            right: rt,
        } => Report::finding(
            format!(
                "distinguished by {}: {} vs {}",
                notation::render(&store, context),
                format::type_label(lt),
                format::type_label(rt),
            ),
            json!({
                "left": left,
                "right": right,
                "verdict": "distinguished",
                "context": notation::render(&store, context),
                "left_type": lt.letter().to_string(),
                "right_type": rt.letter().to_string(),
            }),
        ),
        algebra::EquivVerdict::IndistinguishableUpTo(n) => Report::ok(
            format!("indistinguishable up to a battery of {n} contexts"),
            json!({
                "left": left,
                "right": right,
                "verdict": "indistinguishable",
                "battery_size": n,
            }),
        ),
    }
}

pub fn near_inf(type_name: &str, day: Option<u32>, threads: usize) -> Report {
    let Some(target) = GameType::from_name(type_name) else {
        return Report::usage(
            format!("unknown type {type_name:?} (use P, N, O, Q, 0, 1, 2 or inf)"),
            json!({"error": "unknown type", "input": type_name}),
        );
    };
    let day = day.unwrap_or(3);
    if day > 4 {
        return Report::usage(
            "enumeration stops at day 4",
            json!({"error": "day out of range", "max_day": 4}),
        );
    }
    let mut store = Store::new();
    let hits: Vec<String> = if day == 4 {
        let cols = universe(&mut store, 3).expect("day 3 is enumerable");
        let rows = universe(&mut store, 4).expect("day 4 is enumerable");
        let table = SumTypeTable::build(&store, &rows, &cols);
        parallel::near_infinity(&store, &table, target, threads)
            .into_iter()
            .map(|g| notation::render(&store, g))
            .collect()
    } else {
        let u = universe(&mut store, day).expect("day was just capped");
        let mut classifier = Classifier::new();
        algebra::near_infinity_search(&mut store, &mut classifier, &u, target)
            .into_iter()
            .map(|g| notation::render(&store, g))
            .collect()
    };
    let result = json!({
        "type": target.letter().to_string(),
        "day": day,
        "games": hits,
    });
    if hits.is_empty() {
        Report::finding(
            format!(
                "no near-infinity games of type {} born by day {day}",
                format::type_label(target)
            ),
            result,
        )
    } else {
        Report::ok(hits.join("\n"), result)
    }
}

pub fn enumerate_cmd(day: u32, with_census: bool) -> Report {
    let mut store = Store::new();
    let u = match universe(&mut store, day) {
        Ok(u) => u,
        Err(e) => return Report::usage(e.to_string(), json!({"error": e.to_string(), "day": day})),
    };
    let mut text = format!("day {day}: {} games", u.len());
    let census_json = if with_census {
        let mut classifier = Classifier::new();
        let counts = enumerate::census(&store, &mut classifier, u.members());
        for t in GameType::ALL {
            write!(text, "\n  {}: {}", format::type_label(t), counts.count(t))
                .expect("writing to a String");
        }
        let mut map = serde_json::Map::new();
        for t in GameType::ALL {
            map.insert(t.letter().to_string(), Value::from(counts.count(t)));
        }
        Value::Object(map)
    } else {
        Value::Null
    };
    Report::ok(
        text,
        json!({
            "day": day,
            "count": u.len(),
            "census": census_json,
        }),
    )
}

pub fn verify(full: bool, seed: u64, threads: usize) -> Report {
    crate::verify::run(full, seed, threads)
}

// ---------------------------------------------------------------- helpers

fn parse_game(store: &mut Store, text: &str) -> Result<GameId, Report> {
    parse_game_at(store, text, 0)
}

/// Parses one expression, reporting errors at `base + local offset` so
/// pieces of a comma-joined list point into the original argument.
fn parse_game_at(store: &mut Store, text: &str, base: usize) -> Result<GameId, Report> {
    notation::parse(store, text).map_err(|e| {
        let offset = base + e.offset;
        let shifted = notation::ParseError { offset, ..e };
        Report::usage(
            shifted.to_string(),
            json!({"error": shifted.to_string(), "offset": offset}),
        )
    })
}

/// Parses a comma-separated list of expressions. Commas inside braces
/// belong to the expressions, so the split only happens at depth zero.
fn parse_game_list(store: &mut Store, text: &str) -> Result<Vec<GameId>, Report> {
    let mut ids = Vec::new();
    for (start, piece) in split_top_level(text) {
        ids.push(parse_game_at(store, piece, start)?);
    }
    Ok(ids)
}

/// Top-level comma split, keeping each piece's byte offset.
fn split_top_level(text: &str) -> Vec<(usize, &str)> {
    let mut pieces = Vec::new();
    let mut depth = 0usize;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '{' => depth += 1,
            '}' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                pieces.push((start, &text[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    pieces.push((start, &text[start..]));
    pieces
}

fn parse_heaps(text: &str) -> Result<NimPosition, Report> {
    let mut heaps = Vec::new();
    for (start, piece) in split_top_level(text) {
        let trimmed = piece.trim();
        let offset = start + (piece.len() - piece.trim_start().len());
        let size: u32 = trimmed.parse().map_err(|_| {
            Report::usage(
                format!("syntax error at byte {offset}: expected a heap size, found {trimmed:?}"),
                json!({"error": "bad heap size", "offset": offset}),
            )
        })?;
        heaps.push((offset, size));
    }
    NimPosition::new(heaps.iter().map(|&(_, size)| size)).map_err(|e| {
        let offset = heaps
            .iter()
            .find(|&&(_, size)| size > 9)
            .map_or(0, |&(offset, _)| offset);
        Report::usage(
            format!("syntax error at byte {offset}: {e}"),
            json!({"error": e.to_string(), "offset": offset}),
        )
    })
}

fn parse_table_kind(text: &str) -> Result<TableKind, Report> {
    match text {
        "addition" => Ok(TableKind::Addition),
        "subtraction" => Ok(TableKind::Subtraction),
        "doubling" => Ok(TableKind::DOUBLING),
        "trebling" => Ok(TableKind::TREBLING),
        _ => {
            if let Some(count) = text.strip_prefix("multiple:") {
                match count.parse::<u32>() {
                    Ok(k) => return Ok(TableKind::Multiple(k)),
                    Err(_) => {
                        return Err(Report::usage(
                            format!("bad multiple count {count:?}"),
                            json!({"error": "bad multiple count", "input": text}),
                        ))
                    }
                }
            }
            Err(Report::usage(
                format!(
                    "unknown table {text:?} (use addition, subtraction, doubling, trebling \
                     or multiple:K)"
                ),
                json!({"error": "unknown table", "input": text}),
            ))
        }
    }
}

fn kind_name(kind: TableKind) -> String {
    match kind {
        TableKind::Addition => String::from("addition"),
        TableKind::Subtraction => String::from("subtraction"),
        TableKind::Multiple(2) => String::from("doubling"),
        TableKind::Multiple(3) => String::from("trebling"),
        TableKind::Multiple(k) => format!("multiple:{k}"),
    }
}

/// Derives an addition or subtraction table over `universe(day)` plus
/// the standard witnesses and lays it out the traditional way.
fn square_table(kind: TableKind, day: u32) -> Report {
    let mut store = Store::new();
    let u = universe(&mut store, day).expect("caller capped the day");
    let base = algebra::base_with_witnesses(&mut store, &u);
    let mut classifier = Classifier::new();
    let derived = algebra::derive_type_table(&mut store, &mut classifier, kind, &base);
    let TypeTable::Square(cells) = derived else {
        unreachable!("square kinds derive square tables");
    };
    let layout = format::square_layout(kind);
    let corner = if kind == TableKind::Addition {
        "+"
    } else {
        "-"
    };
    let mut shown = Vec::with_capacity(4);
    let mut raw = Vec::with_capacity(4);
    for &row in &layout.row_order {
        let zero_as_three = kind == TableKind::Subtraction && row == GameType::Zero;
        let mut shown_row = Vec::with_capacity(4);
        let mut raw_row = Vec::with_capacity(4);
        for &col in &layout.col_order {
            let set = cells[row.index()][col.index()];
            shown_row.push(format::cell_text(set, zero_as_three));
            raw_row.push(set);
        }
        shown.push(shown_row);
        raw.push(raw_row);
    }
    Report::ok(
        format::render_grid(corner, &layout.col_labels, &layout.row_labels, &shown),
        format::square_json(
            &kind_name(kind),
            day,
            &layout.row_labels,
            &layout.col_labels,
            &raw,
        ),
    )
}

/// Derives a `k`-fold self-sum table over `universe(day)` plus the
/// standard witnesses, via interned sums.
fn derived_multiple_table(k: u32, day: u32) -> Report {
    let mut store = Store::new();
    let u = universe(&mut store, day).expect("caller capped the day");
    let base = algebra::base_with_witnesses(&mut store, &u);
    let mut classifier = Classifier::new();
    let derived =
        algebra::derive_type_table(&mut store, &mut classifier, TableKind::Multiple(k), &base);
    let TypeTable::Rows(rows) = derived else {
        unreachable!("multiple kinds derive row tables");
    };
    rows_report(k, day, rows)
}

/// The day-4 doubling and trebling sweeps, via the positional tables.
fn scanned_multiple_table(k: u32, threads: usize) -> Report {
    let mut store = Store::new();
    let cols = universe(&mut store, 3).expect("day 3 is enumerable");
    let rows_u = universe(&mut store, 4).expect("day 4 is enumerable");
    let pair = SumTypeTable::build(&store, &rows_u, &cols);
    let rows = if k == 2 {
        parallel::double_rows(&store, &pair, threads)
    } else {
        let triple = TripleTypeTable::build(&store, &cols);
        parallel::treble_rows(&store, &pair, &triple, threads)
    };
    rows_report(k, 4, rows)
}

fn rows_report(k: u32, day: u32, rows: [TypeSet; 4]) -> Report {
    let header = format::multiple_header(k);
    let labels = ["0", "1", "2", "∞"];
    let shown: Vec<Vec<String>> = GameType::ALL
        .iter()
        .map(|t| vec![format::cell_text(rows[t.index()], false)])
        .collect();
    let cells: Vec<Value> = GameType::ALL
        .iter()
        .map(|t| format::set_json(rows[t.index()]))
        .collect();
    Report::ok(
        format::render_grid("G", &[header.as_str()], &labels, &shown),
        json!({
            "kind": kind_name(TableKind::Multiple(k)),
            "day": day,
            "rows": labels,
            "header": header,
            "cells": cells,
        }),
    )
}

fn violation_json(store: &Store, v: &Violation) -> Value {
    json!({
        "left": notation::render(store, v.left),
        "right": notation::render(store, v.right),
        "left_type": v.left_type.letter().to_string(),
        "right_type": v.right_type.letter().to_string(),
        "sum_type": v.sum_type.letter().to_string(),
    })
}

fn clamp_u64(n: u128) -> u64 {
    u64::try_from(n).unwrap_or(u64::MAX)
}
