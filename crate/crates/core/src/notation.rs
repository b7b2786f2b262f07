//! Compact textual notation for games.
//!
//! Digits `0`..`9` are Nim heaps of that many counters. A brace list
//! `{e1,e2,...}` is the game whose options are the listed games. Two
//! suffixes abbreviate common constructions: `e^n` is the sum of `n`
//! copies of `e`, and `e_n` wraps `e` in `n` singleton layers (so `2_1`
//! is `{2}`). Writing items next to each other — with or without `+` —
//! sums them: `112` and `1+1+2` are the same game.
//!
//! ```text
//! expr := item ( "+"? item )*
//! item := atom ( "^" NAT | "_" NAT )*
//! atom := DIGIT | "{" expr ( "," expr )* "}"
//! ```
//!
//! A `NAT` is a maximal run of digits, so `1_12` nests twelve deep; write
//! `1_1 2` to add a heap of two instead. Whitespace is otherwise
//! insignificant. `{}` is rejected: the game with no options is written
//! `0`.
//!
//! The printer is the partial inverse: heaps come out as digits, anything
//! else as a brace list of its options in id order, and
//! `parse(render(g)) == g` for every stored game.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use hashbrown::HashMap;

use crate::store::{GameId, Store, StoreError};

/// Parsed form of a notation expression, before any store is involved.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum GameExpr {
    /// A Nim heap; the parser only produces digits 0 through 9.
    Heap(u8),
    /// Brace list. The parser guarantees at least one entry.
    Options(Vec<GameExpr>),
    /// `expr ^ n`: sum of `n` copies.
    Repeat(Box<GameExpr>, u32),
    /// `expr _ n`: `n` singleton wrappers.
    Nest(Box<GameExpr>, u32),
    /// Juxtaposed or `+`-joined items; always two or more.
    Sum(Vec<GameExpr>),
}

/// Why parsing stopped, and where.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ParseError {
    /// Byte offset into the input at which the problem sits.
    pub offset: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ParseErrorKind {
    UnexpectedEnd,
    UnexpectedChar(char),
    /// `{}`: the null game must be written as the digit `0`.
    EmptyOptions,
    /// A `^` or `_` with no digits after it.
    ExpectedCount,
    /// A count that does not fit in 32 bits.
    CountTooLarge,
    /// Input left over after a complete expression.
    TrailingInput(char),
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at byte {}: ", self.offset)?;
        match self.kind {
            ParseErrorKind::UnexpectedEnd => write!(f, "unexpected end of input"),
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character '{c}'"),
            ParseErrorKind::EmptyOptions => {
                write!(f, "empty option list (write the null game as '0')")
            }
            ParseErrorKind::ExpectedCount => write!(f, "expected a count after the suffix"),
            ParseErrorKind::CountTooLarge => write!(f, "count out of range"),
            ParseErrorKind::TrailingInput(c) => write!(f, "trailing input starting at '{c}'"),
        }
    }
}

impl core::error::Error for ParseError {}

/// Parses a full expression into an AST; the entire input must be
/// consumed.
pub fn parse_expr(text: &str) -> Result<GameExpr, ParseError> {
    run_parser(text, &mut AstBuilder)
}

/// Builds the game an expression denotes. Fails only on a hand-built
/// [`GameExpr::Heap`] outside 0..=9; parser output never fails.
pub fn eval(store: &mut Store, expr: &GameExpr) -> Result<GameId, StoreError> {
    match expr {
        GameExpr::Heap(d) => store.nim_heap(u32::from(*d)),
        GameExpr::Options(items) => {
            let mut ids = Vec::with_capacity(items.len());
            for item in items {
                ids.push(eval(store, item)?);
            }
            store.intern(&ids)
        }
        GameExpr::Repeat(inner, n) => {
            let g = eval(store, inner)?;
            Ok(store.multiple(g, *n))
        }
        GameExpr::Nest(inner, n) => {
            let g = eval(store, inner)?;
            Ok(store.nest(g, *n))
        }
        GameExpr::Sum(items) => {
            let mut acc = GameId::ZERO;
            for item in items {
                let g = eval(store, item)?;
                acc = store.sum(acc, g);
            }
            Ok(acc)
        }
    }
}

/// Parses notation straight into the store, interning as it goes. No
/// intermediate tree is built, so memory use is bounded by the nesting
/// depth of the input rather than its length.
pub fn parse(store: &mut Store, text: &str) -> Result<GameId, ParseError> {
    run_parser(text, &mut StoreBuilder { store })
}

/// Prints `g` in notation: a digit when `g` is a stored Nim heap,
/// otherwise a brace list of its options in ascending id order.
pub fn render(store: &Store, g: GameId) -> String {
    let heap_of = heap_ids(store);
    let mut out = String::new();
    render_into(store, &heap_of, g, &mut out);
    out
}

/// Length in bytes of `render(store, g)`, without building the string.
///
/// The printed form spells out the whole game tree, so a sum can print
/// in exponentially more space than it takes to store; call this first
/// when that matters. Saturates at `u128::MAX`.
pub fn rendered_len(store: &Store, g: GameId) -> u128 {
    let heap_of = heap_ids(store);
    let mut memo = HashMap::new();
    len_of(store, &heap_of, &mut memo, g)
}

/// Maps each interned Nim heap to its digit. Heap d's options are
/// exactly heaps 0..d, so extend the chain while the next heap happens
/// to be interned.
fn heap_ids(store: &Store) -> HashMap<GameId, u8> {
    let mut heap_of = HashMap::new();
    let mut chain = Vec::with_capacity(10);
    chain.push(GameId::ZERO);
    heap_of.insert(GameId::ZERO, 0u8);
    while chain.len() <= 9 {
        match store.find(&chain) {
            Some(id) => {
                heap_of.insert(id, chain.len() as u8);
                chain.push(id);
            }
            None => break,
        }
    }
    heap_of
}

fn render_into(store: &Store, heap_of: &HashMap<GameId, u8>, g: GameId, out: &mut String) {
    if let Some(d) = heap_of.get(&g) {
        out.push((b'0' + d) as char);
        return;
    }
    out.push('{');
    for (i, &o) in store.options(g).iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        render_into(store, heap_of, o, out);
    }
    out.push('}');
}

fn len_of(
    store: &Store,
    heap_of: &HashMap<GameId, u8>,
    memo: &mut HashMap<GameId, u128>,
    g: GameId,
) -> u128 {
    if heap_of.contains_key(&g) {
        return 1;
    }
    if let Some(&n) = memo.get(&g) {
        return n;
    }
    let opts = store.options(g);
    // Two braces plus k-1 commas around the k options.
    let mut n = 1 + opts.len() as u128;
    for &o in opts {
        n = n.saturating_add(len_of(store, heap_of, memo, o));
    }
    memo.insert(g, n);
    n
}

/// What the parser assembles as it descends: [`parse_expr`] grows a
/// [`GameExpr`], [`parse`] folds straight into a store.
trait Build {
    type Node;
    fn heap(&mut self, digit: u8) -> Self::Node;
    fn list(&mut self, items: Vec<Self::Node>) -> Self::Node;
    fn repeat(&mut self, item: Self::Node, count: u32) -> Self::Node;
    fn nest(&mut self, item: Self::Node, count: u32) -> Self::Node;
    fn add(&mut self, acc: Self::Node, item: Self::Node) -> Self::Node;
}

struct AstBuilder;

impl Build for AstBuilder {
    type Node = GameExpr;

    fn heap(&mut self, digit: u8) -> GameExpr {
        GameExpr::Heap(digit)
    }

    fn list(&mut self, items: Vec<GameExpr>) -> GameExpr {
        GameExpr::Options(items)
    }

    fn repeat(&mut self, item: GameExpr, count: u32) -> GameExpr {
        GameExpr::Repeat(Box::new(item), count)
    }

    fn nest(&mut self, item: GameExpr, count: u32) -> GameExpr {
        GameExpr::Nest(Box::new(item), count)
    }

    // Items are never sums themselves, so the accumulator is a sum
    // exactly when a previous `add` made it one; keep it flat.
    fn add(&mut self, acc: GameExpr, item: GameExpr) -> GameExpr {
        match acc {
            GameExpr::Sum(mut items) => {
                items.push(item);
                GameExpr::Sum(items)
            }
            first => GameExpr::Sum(alloc::vec![first, item]),
        }
    }
}

struct StoreBuilder<'s> {
    store: &'s mut Store,
}

impl Build for StoreBuilder<'_> {
    type Node = GameId;

    fn heap(&mut self, digit: u8) -> GameId {
        self.store
            .nim_heap(u32::from(digit))
            .expect("digits are valid heaps")
    }

    fn list(&mut self, items: Vec<GameId>) -> GameId {
        self.store
            .intern(&items)
            .expect("freshly parsed ids are known")
    }

    fn repeat(&mut self, item: GameId, count: u32) -> GameId {
        self.store.multiple(item, count)
    }

    fn nest(&mut self, item: GameId, count: u32) -> GameId {
        self.store.nest(item, count)
    }

    fn add(&mut self, acc: GameId, item: GameId) -> GameId {
        self.store.sum(acc, item)
    }
}

fn run_parser<B: Build>(text: &str, build: &mut B) -> Result<B::Node, ParseError> {
    let mut p = Parser {
        text,
        pos: 0,
        build,
    };
    let node = p.expr()?;
    p.skip_ws();
    match p.peek() {
        None => Ok(node),
        Some(c) => Err(p.error(ParseErrorKind::TrailingInput(c))),
    }
}

struct Parser<'a, 'b, B: Build> {
    text: &'a str,
    pos: usize,
    build: &'b mut B,
}

impl<B: Build> Parser<'_, '_, B> {
    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_whitespace()) {
            self.bump();
        }
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            offset: self.pos,
            kind,
        }
    }

    fn error_here_or_end(&self) -> ParseError {
        match self.peek() {
            Some(c) => self.error(ParseErrorKind::UnexpectedChar(c)),
            None => self.error(ParseErrorKind::UnexpectedEnd),
        }
    }

    fn expr(&mut self) -> Result<B::Node, ParseError> {
        let mut acc = self.item()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('+') => {
                    self.bump();
                    let item = self.item()?;
                    acc = self.build.add(acc, item);
                }
                Some(c) if c.is_ascii_digit() || c == '{' => {
                    let item = self.item()?;
                    acc = self.build.add(acc, item);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn item(&mut self) -> Result<B::Node, ParseError> {
        let mut node = self.atom()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('^') => {
                    self.bump();
                    let n = self.count()?;
                    node = self.build.repeat(node, n);
                }
                Some('_') => {
                    self.bump();
                    let n = self.count()?;
                    node = self.build.nest(node, n);
                }
                _ => return Ok(node),
            }
        }
    }

    fn atom(&mut self) -> Result<B::Node, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                self.bump();
                Ok(self.build.heap(c as u8 - b'0'))
            }
            Some('{') => {
                self.bump();
                self.skip_ws();
                if self.peek() == Some('}') {
                    return Err(self.error(ParseErrorKind::EmptyOptions));
                }
                let mut items = Vec::new();
                items.push(self.expr()?);
                loop {
                    self.skip_ws();
                    match self.peek() {
                        Some(',') => {
                            self.bump();
                            items.push(self.expr()?);
                        }
                        Some('}') => {
                            self.bump();
                            return Ok(self.build.list(items));
                        }
                        _ => return Err(self.error_here_or_end()),
                    }
                }
            }
            _ => Err(self.error_here_or_end()),
        }
    }

    /// Maximal run of digits; whitespace or any non-digit ends it.
    fn count(&mut self) -> Result<u32, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let mut value: u32 = 0;
        let mut digits = 0usize;
        while let Some(c) = self.peek() {
            let Some(d) = c.to_digit(10) else { break };
            self.bump();
            digits += 1;
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add(d))
                .ok_or(ParseError {
                    offset: start,
                    kind: ParseErrorKind::CountTooLarge,
                })?;
        }
        if digits == 0 {
            return Err(self.error(ParseErrorKind::ExpectedCount));
        }
        Ok(value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digits_are_heaps() {
        let mut store = Store::new();
        assert_eq!(parse(&mut store, "0").unwrap(), GameId::ZERO);
        let h3 = store.nim_heap(3).unwrap();
        assert_eq!(parse(&mut store, "3").unwrap(), h3);
    }

    #[test]
    fn juxtaposition_plus_and_whitespace_agree() {
        let mut store = Store::new();
        let a = parse(&mut store, "112").unwrap();
        let b = parse(&mut store, "1+1+2").unwrap();
        let c = parse(&mut store, " 1 1\t2 ").unwrap();
        assert_eq!(a, b);
        assert_eq!(b, c);
    }

    #[test]
    fn suffixes_bind_to_one_item() {
        let mut store = Store::new();
        let h1 = store.nim_heap(1).unwrap();
        let h2 = store.nim_heap(2).unwrap();
        let expect = {
            let m = store.multiple(h2, 3);
            store.sum(h1, m)
        };
        assert_eq!(parse(&mut store, "12^3").unwrap(), expect);

        let braced = {
            let twelve = store.sum(h1, h2);
            let wrapped = store.nest(twelve, 1);
            store.multiple(wrapped, 3)
        };
        assert_eq!(parse(&mut store, "{12}^3").unwrap(), braced);
        assert_ne!(braced, expect);
    }

    #[test]
    fn counts_are_maximal_munch() {
        let mut store = Store::new();
        let h1 = store.nim_heap(1).unwrap();
        let h2 = store.nim_heap(2).unwrap();
        let deep = store.nest(h1, 12);
        assert_eq!(parse(&mut store, "1_12").unwrap(), deep);
        let shallow = {
            let n = store.nest(h1, 1);
            store.sum(n, h2)
        };
        assert_eq!(parse(&mut store, "1_1 2").unwrap(), shallow);
    }

    #[test]
    fn the_readme_example_builds_piecewise() {
        let mut store = Store::new();
        let expect = {
            let h1 = store.nim_heap(1).unwrap();
            let h2 = store.nim_heap(2).unwrap();
            let h4 = store.nim_heap(4).unwrap();
            let twelve = store.sum(h1, h2);
            let wrapped = store.nest(twelve, 1);
            let tripled = store.multiple(wrapped, 3);
            let tower = store.nest(h4, 5);
            store.sum(tripled, tower)
        };
        assert_eq!(parse(&mut store, "{12}^3 4_5").unwrap(), expect);
    }

    #[test]
    fn zero_counts_degenerate() {
        let mut store = Store::new();
        let h2 = store.nim_heap(2).unwrap();
        assert_eq!(parse(&mut store, "2^0").unwrap(), GameId::ZERO);
        assert_eq!(parse(&mut store, "2_0").unwrap(), h2);
    }

    #[test]
    fn rejects_with_offsets() {
        let mut store = Store::new();
        let mut err = |s: &str| parse(&mut store, s).unwrap_err();
        assert_eq!(
            err(""),
            ParseError {
                offset: 0,
                kind: ParseErrorKind::UnexpectedEnd
            }
        );
        assert_eq!(
            err("{}"),
            ParseError {
                offset: 1,
                kind: ParseErrorKind::EmptyOptions
            }
        );
        assert_eq!(
            err("{1,}"),
            ParseError {
                offset: 3,
                kind: ParseErrorKind::UnexpectedChar('}')
            }
        );
        assert_eq!(
            err("1^"),
            ParseError {
                offset: 2,
                kind: ParseErrorKind::ExpectedCount
            }
        );
        assert_eq!(
            err("1^x"),
            ParseError {
                offset: 2,
                kind: ParseErrorKind::ExpectedCount
            }
        );
        assert_eq!(
            err("4)"),
            ParseError {
                offset: 1,
                kind: ParseErrorKind::TrailingInput(')')
            }
        );
        assert_eq!(
            err("{1,2"),
            ParseError {
                offset: 4,
                kind: ParseErrorKind::UnexpectedEnd
            }
        );
        assert_eq!(
            err("1^4294967296"),
            ParseError {
                offset: 2,
                kind: ParseErrorKind::CountTooLarge
            }
        );
        assert_eq!(
            err("+1"),
            ParseError {
                offset: 0,
                kind: ParseErrorKind::UnexpectedChar('+')
            }
        );
    }

    #[test]
    fn renders_heaps_and_brace_lists() {
        let mut store = Store::new();
        let g = parse(&mut store, "{2,11}").unwrap();
        assert_eq!(render(&store, g), "{2,{1}}");
        assert_eq!(render(&store, GameId::ZERO), "0");
        let h7 = store.nim_heap(7).unwrap();
        assert_eq!(render(&store, h7), "7");
    }

    #[test]
    fn round_trips_through_render() {
        let mut store = Store::new();
        for text in ["0", "3", "12", "{2,11}", "{12}^3", "1^5", "{{2}}", "2_4"] {
            let g = parse(&mut store, text).unwrap();
            let printed = render(&store, g);
            assert_eq!(parse(&mut store, &printed).unwrap(), g, "via {printed}");
        }
    }

    #[test]
    fn both_parse_routes_agree() {
        let mut store = Store::new();
        for text in ["0", "112", "{12}^3", "1_12", "{2,{1}}+4", "2^3 1"] {
            let direct = parse(&mut store, text).unwrap();
            let expr = parse_expr(text).unwrap();
            assert_eq!(eval(&mut store, &expr).unwrap(), direct, "on {text}");
        }
    }

    #[test]
    fn rendered_len_matches_render() {
        let mut store = Store::new();
        for text in ["0", "7", "12", "{2,11}", "{12}^3", "2^2", "{{2}}"] {
            let g = parse(&mut store, text).unwrap();
            let printed = render(&store, g);
            assert_eq!(rendered_len(&store, g), printed.len() as u128, "on {text}");
        }
    }

    #[test]
    fn rendered_len_predicts_blowup_cheaply() {
        let mut store = Store::new();
        let g = parse(&mut store, "{12}^3 4_5").unwrap();
        // Far too large to print, but the estimate is instant.
        assert!(rendered_len(&store, g) > 1 << 31);
        let sum_of_nines = parse(&mut store, "9^6").unwrap();
        assert!(rendered_len(&store, sum_of_nines) > 1 << 40);
    }
}
