//! Text and JSON rendering helpers shared by the subcommands.

use std::time::Duration;

use nopq::algebra::{TableKind, TypeSet};
use nopq::classify::GameType;
use serde_json::{json, Value};

/// Renders a type the way the CLI reports it: letter first, numeral in
/// parentheses, e.g. `Q (∞)`.
pub fn type_label(t: GameType) -> String {
    format!("{} ({})", t.letter(), t.numeral())
}

/// The numerals of a set, in `0 1 2 ∞` order.
pub fn set_numerals(set: TypeSet) -> Vec<&'static str> {
    set.iter().map(|t| t.numeral()).collect()
}

/// JSON form of a set: an array of numerals.
pub fn set_json(set: TypeSet) -> Value {
    Value::from(set_numerals(set))
}

/// One table cell as printed text. Empty sets read `none`, full sets
/// `All`, and everything else concatenates numerals (`12∞`). In the
/// subtraction table's top row the type of `111` stands in for `0`, so
/// `zero_as_three` swaps that digit.
pub fn cell_text(set: TypeSet, zero_as_three: bool) -> String {
    if set.is_empty() {
        return String::from("none");
    }
    if set == TypeSet::ALL {
        return String::from("All");
    }
    set.iter()
        .map(|t| {
            if zero_as_three && t == GameType::Zero {
                "3"
            } else {
                t.numeral()
            }
        })
        .collect()
}

/// Display order and labels for a square table.
pub struct Layout {
    pub row_order: [GameType; 4],
    pub row_labels: [&'static str; 4],
    pub col_order: [GameType; 4],
    pub col_labels: [&'static str; 4],
}

const NATURAL: [GameType; 4] = [GameType::Zero, GameType::One, GameType::Two, GameType::Inf];
const NATURAL_LABELS: [&str; 4] = ["0", "1", "2", "∞"];

/// Addition reads naturally in both directions. Subtraction keeps the
/// subtrahend columns natural but lists minuends as `3 2 1 ∞`, where
/// `3` (the type of `111`) stands in for `0`.
pub fn square_layout(kind: TableKind) -> Layout {
    let (row_order, row_labels) = match kind {
        TableKind::Subtraction => (
            [GameType::Zero, GameType::Two, GameType::One, GameType::Inf],
            ["3", "2", "1", "∞"],
        ),
        _ => (NATURAL, NATURAL_LABELS),
    };
    Layout {
        row_order,
        row_labels,
        col_order: NATURAL,
        col_labels: NATURAL_LABELS,
    }
}

/// Header for the value column of a one-column table: `G+G` for
/// doubling, `G+G+G` for trebling, `kG` beyond that.
pub fn multiple_header(k: u32) -> String {
    if k <= 3 {
        let copies: Vec<&str> = (0..k.max(1)).map(|_| "G").collect();
        copies.join("+")
    } else {
        format!("{k}G")
    }
}

/// Lays out a grid with aligned columns:
///
/// ```text
///  +  | 0    1    2    ∞
/// ----+-------------------
///  0  | 0∞   1∞   2∞   ∞
/// ```
pub fn render_grid(
    corner: &str,
    col_labels: &[&str],
    row_labels: &[&str],
    cells: &[Vec<String>],
) -> String {
    let mut widths: Vec<usize> = col_labels.iter().map(|l| display_width(l)).collect();
    for row in cells {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(display_width(cell));
        }
    }
    let label_width = row_labels
        .iter()
        .map(|l| display_width(l))
        .chain([display_width(corner)])
        .max()
        .unwrap_or(1);

    let mut out = String::new();
    push_row(&mut out, corner, label_width, col_labels, &widths);
    let total: usize = widths.iter().map(|w| w + 2).sum();
    out.push_str(&"-".repeat(label_width + 2));
    out.push('+');
    out.push_str(&"-".repeat(total));
    out.push('\n');
    for (label, row) in row_labels.iter().zip(cells) {
        let texts: Vec<&str> = row.iter().map(|s| s.as_str()).collect();
        push_row(&mut out, label, label_width, &texts, &widths);
    }
    out.truncate(out.trim_end_matches('\n').len());
    out
}

fn push_row(out: &mut String, label: &str, label_width: usize, cells: &[&str], widths: &[usize]) {
    out.push(' ');
    out.push_str(label);
    out.push_str(&" ".repeat(label_width - display_width(label) + 1));
    out.push('|');
    for (cell, width) in cells.iter().zip(widths) {
        out.push(' ');
        out.push_str(cell);
        out.push_str(&" ".repeat(width - display_width(cell) + 1));
    }
    while out.ends_with(' ') {
        out.pop();
    }
    out.push('\n');
}

/// Column width in characters rather than bytes, so `∞` lines up.
fn display_width(s: &str) -> usize {
    s.chars().count()
}

/// `1.234s` / `up to 15s` style timings for the verify report.
pub fn seconds(d: Duration) -> String {
    format!("{:.3}s", d.as_secs_f64())
}

/// JSON for a square table: labels plus a cell matrix of numeral arrays.
pub fn square_json(
    kind: &str,
    day: u32,
    row_labels: &[&str],
    col_labels: &[&str],
    cells: &[Vec<TypeSet>],
) -> Value {
    json!({
        "kind": kind,
        "day": day,
        "rows": row_labels,
        "cols": col_labels,
        "cells": cells
            .iter()
            .map(|row| row.iter().map(|&s| set_json(s)).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_pair_letter_and_numeral() {
        assert_eq!(type_label(GameType::Inf), "Q (∞)");
        assert_eq!(type_label(GameType::Zero), "P (0)");
    }

    #[test]
    fn cells_follow_the_traditional_spellings() {
        assert_eq!(cell_text(TypeSet::EMPTY, false), "none");
        assert_eq!(cell_text(TypeSet::ALL, false), "All");
        let zero_inf = TypeSet::of(&[GameType::Zero, GameType::Inf]);
        assert_eq!(cell_text(zero_inf, false), "0∞");
        assert_eq!(cell_text(TypeSet::of(&[GameType::Zero]), true), "3");
    }

    #[test]
    fn grids_align_wide_cells() {
        let cells = vec![
            vec![String::from("0∞"), String::from("1∞")],
            vec![String::from("12∞"), String::from("∞")],
        ];
        let grid = render_grid("+", &["0", "1"], &["0", "1"], &cells);
        let lines: Vec<&str> = grid.lines().collect();
        assert_eq!(lines[0], " + | 0    1");
        assert_eq!(lines[1], "---+---------");
        assert_eq!(lines[2], " 0 | 0∞   1∞");
        assert_eq!(lines[3], " 1 | 12∞  ∞");
    }
}
