//! The little `T+T=T` language used by `solve`.

use std::fmt;

use nopq::classify::GameType;

/// A type-level equation: find addends of the two left types whose sum
/// has the right-hand type.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Equation {
    pub left: GameType,
    pub right: GameType,
    pub sum: GameType,
}

/// Where an equation failed to parse, in bytes.
#[derive(Clone, Debug)]
pub struct EquationError {
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for EquationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at byte {}: {}", self.offset, self.message)
    }
}

impl std::error::Error for EquationError {}

/// Parses `T+T=T` where each `T` is a type in either alphabet
/// (`P/N/O/Q` or `0/1/2/inf/∞`). Whitespace around tokens is fine.
pub fn parse_equation(text: &str) -> Result<Equation, EquationError> {
    let (left, rest) = take_type(text, 0)?;
    let rest = expect(text, rest, '+')?;
    let (right, rest) = take_type(text, rest)?;
    let rest = expect(text, rest, '=')?;
    let (sum, rest) = take_type(text, rest)?;
    let tail = skip_ws(text, rest);
    if tail != text.len() {
        return Err(EquationError {
            offset: tail,
            message: format!("expected end of equation, found {:?}", &text[tail..]),
        });
    }
    Ok(Equation { left, right, sum })
}

fn skip_ws(text: &str, mut pos: usize) -> usize {
    while let Some(c) = text[pos..].chars().next() {
        if !c.is_whitespace() {
            break;
        }
        pos += c.len_utf8();
    }
    pos
}

fn expect(text: &str, pos: usize, want: char) -> Result<usize, EquationError> {
    let pos = skip_ws(text, pos);
    match text[pos..].chars().next() {
        Some(c) if c == want => Ok(pos + c.len_utf8()),
        Some(c) => Err(EquationError {
            offset: pos,
            message: format!("expected '{want}', found '{c}'"),
        }),
        None => Err(EquationError {
            offset: pos,
            message: format!("expected '{want}', found end of input"),
        }),
    }
}

fn take_type(text: &str, pos: usize) -> Result<(GameType, usize), EquationError> {
    let start = skip_ws(text, pos);
    let mut end = start;
    for c in text[start..].chars() {
        if !(c.is_alphanumeric() || c == '∞') {
            break;
        }
        end += c.len_utf8();
    }
    if start == end {
        return Err(EquationError {
            offset: start,
            message: String::from("expected a type (P, N, O, Q, 0, 1, 2 or inf)"),
        });
    }
    match GameType::from_name(&text[start..end]) {
        Some(t) => Ok((t, end)),
        None => Err(EquationError {
            offset: start,
            message: format!(
                "unknown type {:?} (use P, N, O, Q, 0, 1, 2 or inf)",
                &text[start..end]
            ),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_alphabets_parse() {
        let a = parse_equation("Q+Q=O").unwrap();
        let b = parse_equation("inf + ∞ = 2").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.sum, GameType::Two);
    }

    #[test]
    fn offsets_point_at_the_problem() {
        assert_eq!(parse_equation("Q+Q").unwrap_err().offset, 3);
        assert_eq!(parse_equation("Q*Q=O").unwrap_err().offset, 1);
        assert_eq!(parse_equation("X+Q=O").unwrap_err().offset, 0);
        assert_eq!(parse_equation("Q+Q=O extra").unwrap_err().offset, 6);
    }
}
