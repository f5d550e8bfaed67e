//! Grid patterns as drawn in lattice figures.
//!
//! Four lines of four tokens. The first line is row `β = 3`, the last is
//! `β = 0`; columns run `α = 0..3` left to right. `x`, `X` or `×` mark a
//! point, `.` an empty cell. Blank lines and lines starting with `#` are
//! ignored.

use lw_core::lattice::LatticeSubset;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        Self { line, column, message: message.into() }
    }
}

pub fn parse_pattern(text: &str) -> Result<LatticeSubset, ParseError> {
    let mut mask = 0u16;
    let mut row = 0usize;
    let mut last_line = 0;
    for (ln, line) in text.lines().enumerate() {
        let ln = ln + 1;
        last_line = ln;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        if row == 4 {
            return Err(ParseError::new(ln, 1, "more than four rows"));
        }
        let beta = 3 - row;
        let mut alpha = 0usize;
        for (col, tok) in tokens(line) {
            if alpha == 4 {
                return Err(ParseError::new(ln, col, "more than four cells in row"));
            }
            match tok {
                "x" | "X" | "×" => mask |= 1 << (4 * beta + alpha),
                "." => {}
                other => return Err(ParseError::new(ln, col, format!("unexpected token {other:?}"))),
            }
            alpha += 1;
        }
        if alpha < 4 {
            return Err(ParseError::new(ln, line.chars().count() + 1, format!("expected 4 cells, found {alpha}")));
        }
        row += 1;
    }
    if row < 4 {
        return Err(ParseError::new(last_line + 1, 1, format!("expected 4 rows, found {row}")));
    }
    Ok(LatticeSubset::new(mask))
}

// whitespace-separated tokens with 1-based character columns
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start: Option<(usize, usize)> = None;
    for (col, (byte, ch)) in line.char_indices().enumerate() {
        if ch.is_whitespace() {
            if let Some((c, b)) = start.take() {
                out.push((c + 1, &line[b..byte]));
            }
        } else if start.is_none() {
            start = Some((col, byte));
        }
    }
    if let Some((c, b)) = start {
        out.push((c + 1, &line[b..]));
    }
    out
}

/// Four lines, `x` and `.` separated by spaces, top line `β = 3`.
pub fn render_pattern(subset: LatticeSubset) -> String {
    let mut s = String::with_capacity(32);
    for beta in (0..4).rev() {
        let cells: Vec<&str> = (0..4).map(|a| if subset.chi(a, beta) == 1 { "x" } else { "." }).collect();
        s.push_str(&cells.join(" "));
        s.push('\n');
    }
    s
}

/// One-line form used in reports, rows top to bottom joined by `/`.
pub fn compact_pattern(subset: LatticeSubset) -> String {
    (0..4)
        .rev()
        .map(|beta| (0..4).map(|a| if subset.chi(a, beta) == 1 { 'x' } else { '.' }).collect::<String>())
        .collect::<Vec<_>>()
        .join("/")
}

/// `0x9b77`, `9B77` and similar.
pub fn parse_mask(text: &str) -> Result<LatticeSubset, ParseError> {
    let t = text.trim();
    let digits = t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")).unwrap_or(t);
    u16::from_str_radix(digits, 16)
        .map(LatticeSubset::new)
        .map_err(|e| ParseError::new(1, 1, format!("bad hex mask {t:?}: {e}")))
}

pub fn format_mask(subset: LatticeSubset) -> String {
    format!("{:#06x}", subset.mask())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn error_positions() {
        let e = parse_pattern("x . . x\nx x . q\n. . . .\n. . . .\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 7));
        let e = parse_pattern("x . .\n").unwrap_err();
        assert_eq!(e.line, 1);
        let e = parse_pattern("x . . .\n").unwrap_err();
        assert_eq!(e.line, 2);
    }

    #[test]
    fn unicode_cross() {
        let s = parse_pattern("× . . .\n. . . .\n. . . .\n. . . .\n").unwrap();
        assert_eq!(s.mask(), 1 << 12);
    }

    #[test]
    fn masks() {
        assert_eq!(parse_mask("0x9B77").unwrap().mask(), 0x9b77);
        assert_eq!(parse_mask("ffff").unwrap().mask(), 0xffff);
        assert!(parse_mask("0x1ffff").is_err());
    }
}
