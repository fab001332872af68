//! Plain-text file formats. Every file starts with a header line of
//! `key=value` fields; blank lines and lines starting with `#` are ignored.
//!
//! ```text
//! sudoku q=<q>                  then q² rows of q² symbols (repeatable)
//! flags q=<q> count=<m>         then m lines `a b c d beta`
//! ooa t=4 s=<s> l=2 v=<q>       then 2s rows of q⁴ digits
//! ```

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::ooa::BandedArray;
use crate::strong::FlagData;
use crate::sudoku::Grid;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Non-blank, non-comment lines with their 1-based numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(n, l)| (n + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Reads `<keyword> k1=v1 k2=v2 …`, returning the values of `keys` in order.
fn parse_header(line_no: usize, line: &str, keyword: &str, keys: &[&str]) -> Result<Vec<u64>> {
    let mut tokens = line.split_whitespace();
    if tokens.next() != Some(keyword) {
        return Err(parse_err(line_no, format!("expected a `{keyword}` header")));
    }
    let mut values = vec![None; keys.len()];
    for token in tokens {
        let (key, value) = token
            .split_once('=')
            .ok_or_else(|| parse_err(line_no, format!("malformed header field `{token}`")))?;
        let slot = keys
            .iter()
            .position(|k| *k == key)
            .ok_or_else(|| parse_err(line_no, format!("unknown header field `{key}`")))?;
        let value = value
            .parse::<u64>()
            .map_err(|_| parse_err(line_no, format!("`{key}` is not a non-negative integer")))?;
        values[slot] = Some(value);
    }
    keys.iter()
        .zip(values)
        .map(|(k, v)| v.ok_or_else(|| parse_err(line_no, format!("missing header field `{k}`"))))
        .collect()
}

fn parse_numbers(line_no: usize, line: &str, expected: usize, bound: u64) -> Result<Vec<u32>> {
    let values = line
        .split_whitespace()
        .map(|t| match t.parse::<u64>() {
            Ok(v) if v < bound => Ok(v as u32),
            Ok(v) => Err(parse_err(
                line_no,
                format!("value {v} is not below {bound}"),
            )),
            Err(_) => Err(parse_err(
                line_no,
                format!("`{t}` is not a non-negative integer"),
            )),
        })
        .collect::<Result<Vec<u32>>>()?;
    if values.len() != expected {
        return Err(parse_err(
            line_no,
            format!("expected {expected} values, found {}", values.len()),
        ));
    }
    Ok(values)
}

fn next_line<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    last: &mut usize,
    what: &str,
) -> Result<(usize, &'a str)> {
    match lines.next() {
        Some((n, l)) => {
            *last = n;
            Ok((n, l))
        }
        None => Err(parse_err(
            *last + 1,
            format!("unexpected end of file, expected {what}"),
        )),
    }
}

/// Reads one or more grid blocks.
pub fn parse_grids(text: &str) -> Result<Vec<Grid>> {
    let mut lines = content_lines(text).peekable();
    let mut last = 0;
    let mut grids = Vec::new();
    while lines.peek().is_some() {
        let (n, header) = next_line(&mut lines, &mut last, "a header")?;
        let q = parse_header(n, header, "sudoku", &["q"])?[0] as usize;
        if !(2..=256).contains(&q) {
            return Err(parse_err(n, format!("unsupported grid parameter q={q}")));
        }
        let side = q * q;
        let mut cells = Vec::with_capacity(side * side);
        for r in 0..side {
            let (n, line) = next_line(&mut lines, &mut last, &format!("grid row {}", r + 1))?;
            cells.extend(parse_numbers(n, line, side, side as u64)?);
        }
        grids.push(Grid::new(q, cells)?);
    }
    if grids.is_empty() {
        return Err(parse_err(1, "no grid found"));
    }
    Ok(grids)
}

pub fn write_grid(grid: &Grid) -> String {
    format!("sudoku q={}\n{grid}", grid.q())
}

pub fn write_grids(grids: &[Grid]) -> String {
    grids.iter().map(write_grid).collect()
}

/// Reads a flags file. Data that violate the datum invariants are reported
/// as [`Error::InvalidFlagData`].
pub fn parse_flags(text: &str) -> Result<(Field, Vec<FlagData>)> {
    let mut lines = content_lines(text);
    let mut last = 0;
    let (n, header) = next_line(&mut lines, &mut last, "a header")?;
    let [q, count] = parse_header(n, header, "flags", &["q", "count"])?[..] else {
        unreachable!("two keys requested")
    };
    let field = Field::new(q).map_err(|e| parse_err(n, e.to_string()))?;
    if count == 0 {
        return Err(parse_err(n, "count must be positive"));
    }
    let mut data = Vec::with_capacity(count as usize);
    for m in 0..count {
        let (n, line) = next_line(&mut lines, &mut last, &format!("flag {}", m + 1))?;
        let v = parse_numbers(n, line, 5, q)?;
        let e = |i: usize| field.element(v[i] as u64).expect("bounded by q");
        data.push(FlagData::from_entries(
            &field,
            [e(0), e(1), e(2), e(3)],
            e(4),
        )?);
    }
    if let Some((n, _)) = lines.next() {
        return Err(parse_err(n, format!("more than count={count} flags")));
    }
    Ok((field, data))
}

pub fn write_flags(q: u32, data: &[FlagData]) -> String {
    let mut out = format!("flags q={q} count={}\n", data.len());
    for d in data {
        let [a, b, c, dd] = d.entries();
        writeln!(out, "{a} {b} {c} {dd} {}", d.beta()).expect("write to string");
    }
    out
}

pub fn parse_array(text: &str) -> Result<BandedArray> {
    let mut lines = content_lines(text);
    let mut last = 0;
    let (n, header) = next_line(&mut lines, &mut last, "a header")?;
    let [t, s, l, v] = parse_header(n, header, "ooa", &["t", "s", "l", "v"])?[..] else {
        unreachable!("four keys requested")
    };
    if t != 4 || l != 2 {
        return Err(parse_err(
            n,
            format!("only t=4 and l=2 are supported, got t={t} l={l}"),
        ));
    }
    if !(2..=64).contains(&s) || !(2..=256).contains(&v) {
        return Err(parse_err(
            n,
            format!("unsupported array parameters s={s} v={v}"),
        ));
    }
    let width = (v as usize).pow(4);
    let mut rows = Vec::with_capacity(2 * s as usize);
    for r in 0..2 * s {
        let (n, line) = next_line(&mut lines, &mut last, &format!("array row {}", r + 1))?;
        rows.push(parse_numbers(n, line, width, v)?);
    }
    if let Some((n, _)) = lines.next() {
        return Err(parse_err(n, format!("more than {} rows", 2 * s)));
    }
    BandedArray::new(s as usize, v as u32, rows)
}

pub fn write_array(array: &BandedArray) -> String {
    let mut out = format!("ooa t=4 s={} l=2 v={}\n", array.s(), array.v());
    for row in array.rows() {
        let row: Vec<String> = row.iter().map(u32::to_string).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Parses `a,b,c,d,beta` as canonical indices.
pub fn parse_flag_arg(field: &Field, arg: &str) -> Result<FlagData> {
    let parts: Vec<&str> = arg.split(',').map(str::trim).collect();
    if parts.len() != 5 {
        return Err(parse_err(
            1,
            "expected five comma-separated values a,b,c,d,beta",
        ));
    }
    let mut v = [Elem::ZERO; 5];
    for (slot, part) in v.iter_mut().zip(&parts) {
        let n = part
            .parse::<u64>()
            .map_err(|_| parse_err(1, format!("`{part}` is not an integer")))?;
        *slot = field.element(n)?;
    }
    FlagData::from_entries(field, [v[0], v[1], v[2], v[3]], v[4])
}
