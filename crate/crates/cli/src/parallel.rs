//! Splits row-indexed scans across threads.
//!
//! Every scan in the core crate exposes a `_range` variant over row
//! indices, so the driver here is always the same: cut `0..n` into
//! contiguous chunks, run each chunk on its own scoped thread, and
//! stitch the partial results back together in chunk order. Because the
//! chunks tile the row range in order, concatenating (or unioning) the
//! partials reproduces the single-thread result exactly, whatever the
//! thread count.

use std::ops::Range;

use nopq::algebra::{TypeSet, Violation};
use nopq::classify::GameType;
use nopq::scan::{self, SumTypeTable, TripleTypeTable, ZeroScanOutcome};
use nopq::store::{GameId, Store};

/// Cuts `0..total` into at most `threads` contiguous, in-order chunks.
pub fn chunks(total: usize, threads: usize) -> Vec<Range<usize>> {
    let threads = threads.max(1).min(total.max(1));
    let base = total / threads;
    let extra = total % threads;
    let mut ranges = Vec::with_capacity(threads);
    let mut start = 0;
    for i in 0..threads {
        let len = base + usize::from(i < extra);
        ranges.push(start..start + len);
        start += len;
    }
    ranges
}

/// Runs `work` over each chunk, on scoped threads when more than one
/// chunk exists, and returns the partial results in chunk order.
fn run_chunked<T, F>(total: usize, threads: usize, work: F) -> Vec<T>
where
    T: Send,
    F: Fn(Range<usize>) -> T + Sync,
{
    let ranges = chunks(total, threads);
    if ranges.len() == 1 {
        return ranges.into_iter().map(work).collect();
    }
    std::thread::scope(|scope| {
        let work = &work;
        let handles: Vec<_> = ranges
            .into_iter()
            .map(|r| scope.spawn(move || work(r)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("scan thread panicked"))
            .collect()
    })
}

/// Threaded [`scan::scan_forbidden_extended`]; violations come back in
/// row order.
pub fn scan_forbidden(table: &SumTypeTable, threads: usize) -> Vec<Violation> {
    run_chunked(table.rows().len(), threads, |r| {
        scan::scan_forbidden_extended_range(table, r)
    })
    .into_iter()
    .flatten()
    .collect()
}

/// Threaded [`scan::double_rows_range`] over the whole table.
pub fn double_rows(store: &Store, table: &SumTypeTable, threads: usize) -> [TypeSet; 4] {
    merge_rows(run_chunked(table.rows().len(), threads, |r| {
        scan::double_rows_range(store, table, r)
    }))
}

/// Threaded [`scan::treble_rows_range`] over the whole table.
pub fn treble_rows(
    store: &Store,
    pair: &SumTypeTable,
    triple: &TripleTypeTable,
    threads: usize,
) -> [TypeSet; 4] {
    merge_rows(run_chunked(pair.rows().len(), threads, |r| {
        scan::treble_rows_range(store, pair, triple, r)
    }))
}

fn merge_rows(partials: Vec<[TypeSet; 4]>) -> [TypeSet; 4] {
    let mut out = [TypeSet::EMPTY; 4];
    for partial in partials {
        for (acc, row) in out.iter_mut().zip(partial) {
            for t in row.iter() {
                acc.insert(t);
            }
        }
    }
    out
}

/// Threaded [`scan::near_infinity_scan`]; hits come back in row order.
pub fn near_infinity(
    store: &Store,
    table: &SumTypeTable,
    target: GameType,
    threads: usize,
) -> Vec<GameId> {
    run_chunked(table.rows().len(), threads, |r| {
        scan::near_infinity_scan_range(store, table, target, r)
    })
    .into_iter()
    .flatten()
    .collect()
}

/// How the zero-distinction sweep went for a whole table.
#[derive(Clone, Debug, Default)]
pub struct ZeroSweep {
    /// Rows told apart from the null game.
    pub distinguished: usize,
    /// Rows the battery failed on (excluding the null game itself).
    pub stuck: Vec<GameId>,
}

/// Runs [`scan::distinguish_from_zero`] over every row but the null
/// game, threaded. `Escaped` outcomes count as stuck: the battery
/// context fell outside the table, which the default battery over a
/// full universe never does.
pub fn zero_sweep(
    store: &Store,
    table: &SumTypeTable,
    battery: &[GameId],
    battery_types: &[GameType],
    threads: usize,
) -> ZeroSweep {
    let partials = run_chunked(table.rows().len(), threads, |r| {
        let mut part = ZeroSweep::default();
        for ri in r {
            let g = table.rows()[ri];
            if g == GameId::ZERO {
                continue;
            }
            match scan::distinguish_from_zero(store, table, battery, battery_types, g) {
                ZeroScanOutcome::Distinguished { .. } => part.distinguished += 1,
                _ => part.stuck.push(g),
            }
        }
        part
    });
    let mut out = ZeroSweep::default();
    for part in partials {
        out.distinguished += part.distinguished;
        out.stuck.extend(part.stuck);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use nopq::enumerate::universe;

    #[test]
    fn chunks_tile_the_range_in_order() {
        assert_eq!(chunks(10, 3), vec![0..4, 4..7, 7..10]);
        assert_eq!(chunks(2, 5), vec![0..1, 1..2]);
        assert_eq!(chunks(0, 4), vec![0..0]);
        let tiled: Vec<usize> = chunks(1000, 7).into_iter().flatten().collect();
        assert_eq!(tiled, (0..1000).collect::<Vec<_>>());
    }

    #[test]
    fn thread_count_does_not_change_results() {
        let mut store = Store::new();
        let u3 = universe(&mut store, 3).unwrap();
        let table = SumTypeTable::build(&store, &u3, &u3);
        let triple = TripleTypeTable::build(&store, &u3);

        let forbidden_one = scan_forbidden(&table, 1);
        let near_one = near_infinity(&store, &table, GameType::Two, 1);
        let treble_one = treble_rows(&store, &table, &triple, 1);
        for threads in [2, 3, 5] {
            assert_eq!(scan_forbidden(&table, threads), forbidden_one);
            assert_eq!(
                near_infinity(&store, &table, GameType::Two, threads),
                near_one
            );
            assert_eq!(treble_rows(&store, &table, &triple, threads), treble_one);
            assert_eq!(
                double_rows(&store, &table, threads),
                double_rows(&store, &table, 1)
            );
        }
    }
}
