//! Banded arrays built from sudoku families, their top-justified row sets,
//! and exhaustive verification of the exactly-once property.
//!
//! Bands are numbered from 1: band 1 holds the row digits of the location,
//! band 2 the column digits, and band `i + 2` the radix and units digits of
//! grid `i`. Within a band, depth 1 is the top row and depth 2 the bottom.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::from_lex_index;
use crate::sudoku::Grid;

/// A `2s × q⁴` array over `{0, …, q−1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BandedArray {
    s: usize,
    v: u32,
    rows: Vec<Vec<u32>>,
}

impl BandedArray {
    pub fn new(s: usize, v: u32, rows: Vec<Vec<u32>>) -> Result<BandedArray> {
        if s < 2 {
            return Err(Error::MalformedArray(format!(
                "s = {s}, need at least 2 bands"
            )));
        }
        if v < 2 {
            return Err(Error::MalformedArray(format!(
                "alphabet size {v} is below 2"
            )));
        }
        if rows.len() != 2 * s {
            return Err(Error::MalformedArray(format!(
                "{} rows for s = {s}",
                rows.len()
            )));
        }
        let width = (v as usize).pow(4);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != width {
                return Err(Error::MalformedArray(format!(
                    "row {} has {} columns, expected {width}",
                    r + 1,
                    row.len()
                )));
            }
            if let Some(c) = row.iter().position(|&x| x >= v) {
                return Err(Error::MalformedArray(format!(
                    "row {} column {} holds {} outside 0..{v}",
                    r + 1,
                    c + 1,
                    row[c]
                )));
            }
        }
        Ok(BandedArray { s, v, rows })
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn v(&self) -> u32 {
        self.v
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn columns(&self) -> usize {
        self.rows[0].len()
    }

    /// Row at 1-based `(band, depth)`.
    pub fn row(&self, band: usize, depth: usize) -> &[u32] {
        &self.rows[2 * (band - 1) + depth - 1]
    }

    pub fn column(&self, m: usize) -> Vec<u32> {
        self.rows.iter().map(|r| r[m]).collect()
    }
}

/// Builds the array of a family of order-q² grids: one column per
/// location in lexicographic order, four location digits, then each grid's
/// symbol split into radix and units digits.
pub fn assemble(grids: &[Grid]) -> Result<BandedArray> {
    let first = grids.first().ok_or(Error::GridCountZero)?;
    let q = first.q();
    for (i, g) in grids.iter().enumerate() {
        if g.q() != q {
            return Err(Error::DimensionMismatch(format!(
                "grid {} has a different order",
                i + 1
            )));
        }
        if g.alphabet() > q * q {
            return Err(Error::DimensionMismatch(format!(
                "grid {} uses symbols beyond q²",
                i + 1
            )));
        }
    }
    let n = q.pow(4);
    let q32 = q as u32;
    let mut rows = vec![Vec::with_capacity(n); 4 + 2 * grids.len()];
    for m in 0..n {
        let x = from_lex_index(q32, m);
        for (r, e) in x.iter().enumerate() {
            rows[r].push(e.index());
        }
        for (i, g) in grids.iter().enumerate() {
            let symbol = g.cells()[m];
            rows[4 + 2 * i].push(symbol / q32);
            rows[5 + 2 * i].push(symbol % q32);
        }
    }
    BandedArray::new(grids.len() + 2, q32, rows)
}

/// Four rows, as sorted 1-based `(band, depth)` labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RowSet(Vec<(usize, usize)>);

impl RowSet {
    pub fn new(mut rows: Vec<(usize, usize)>) -> RowSet {
        rows.sort_unstable();
        RowSet(rows)
    }

    /// The top `depths[i]` rows of band `i + 1`, for every band.
    pub fn from_depths(depths: &[usize]) -> RowSet {
        let rows = depths
            .iter()
            .enumerate()
            .flat_map(|(b, &d)| (1..=d).map(move |j| (b + 1, j)))
            .collect();
        RowSet::new(rows)
    }

    pub fn rows(&self) -> &[(usize, usize)] {
        &self.0
    }

    /// Number of rows taken from each of bands `1..=bands`.
    pub fn depths(&self, bands: usize) -> Vec<usize> {
        let mut d = vec![0; bands];
        for &(b, _) in &self.0 {
            if b >= 1 && b <= bands {
                d[b - 1] += 1;
            }
        }
        d
    }

    fn max_band(&self) -> usize {
        self.0.iter().map(|&(b, _)| b).max().unwrap_or(0)
    }

    pub fn is_top_justified(&self) -> bool {
        let rows = &self.0;
        rows.len() == 4
            && rows.windows(2).all(|w| w[0] != w[1])
            && rows
                .iter()
                .all(|&(b, j)| b >= 1 && (j == 1 || (j == 2 && rows.contains(&(b, 1)))))
    }
}

impl fmt::Display for RowSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(b, j)| format!("({b},{j})")).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Every top-justified set of four rows across `s` bands.
///
/// Depth vectors run in decreasing lexicographic order, so the set of all
/// four location rows comes first.
pub fn top_justified_sets(s: usize) -> Vec<RowSet> {
    fn walk(s: usize, left: usize, prefix: &mut Vec<usize>, out: &mut Vec<RowSet>) {
        if prefix.len() == s {
            if left == 0 {
                out.push(RowSet::from_depths(prefix));
            }
            return;
        }
        let remaining_bands = s - prefix.len() - 1;
        for d in (0..=left.min(2)).rev() {
            if left - d <= 2 * remaining_bands {
                prefix.push(d);
                walk(s, left - d, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    walk(s, 4, &mut Vec::with_capacity(s), &mut out);
    out
}

/// Shape of a top-justified set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Class {
    /// Every symbol band contributes 0 or 2 rows.
    SudokuTj,
    L1a,
    L1b,
    L2a,
    L2b,
    L2c,
    L2d,
    L2e,
    L3a,
    L3b,
    L3c,
    L4a,
}

impl Class {
    pub fn label(self) -> &'static str {
        match self {
            Class::SudokuTj => "sudoku-TJ",
            Class::L1a => "1a",
            Class::L1b => "1b",
            Class::L2a => "2a",
            Class::L2b => "2b",
            Class::L2c => "2c",
            Class::L2d => "2d",
            Class::L2e => "2e",
            Class::L3a => "3a",
            Class::L3b => "3b",
            Class::L3c => "3c",
            Class::L4a => "4a",
        }
    }
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Classifies a top-justified set by the depths of its two location bands
/// and the multiset of depths of its symbol bands.
///
/// | form | row depth | column depth | symbol depths |
/// |------|-----------|--------------|---------------|
/// | 1a   | 1 | 2 | 1       |
/// | 1b   | 2 | 1 | 1       |
/// | 2a   | 1 | 1 | 1 1     |
/// | 2b   | 2 | 0 | 1 1     |
/// | 2c   | 0 | 2 | 1 1     |
/// | 2d   | 0 | 1 | 2 1     |
/// | 2e   | 1 | 0 | 2 1     |
/// | 3a   | 1 | 0 | 1 1 1   |
/// | 3b   | 0 | 1 | 1 1 1   |
/// | 3c   | 0 | 0 | 2 1 1   |
/// | 4a   | 0 | 0 | 1 1 1 1 |
pub fn classify(set: &RowSet) -> Result<Class> {
    if !set.is_top_justified() {
        return Err(Error::NotTopJustified);
    }
    let depths = set.depths(set.max_band().max(2));
    let (r, c) = (depths[0], depths[1]);
    let mut symbols: Vec<usize> = depths[2..].iter().copied().filter(|&d| d > 0).collect();
    if symbols.iter().all(|&d| d == 2) {
        return Ok(Class::SudokuTj);
    }
    symbols.sort_unstable_by(|a, b| b.cmp(a));
    let class = match (r, c, symbols.as_slice()) {
        (1, 2, [1]) => Class::L1a,
        (2, 1, [1]) => Class::L1b,
        (1, 1, [1, 1]) => Class::L2a,
        (2, 0, [1, 1]) => Class::L2b,
        (0, 2, [1, 1]) => Class::L2c,
        (0, 1, [2, 1]) => Class::L2d,
        (1, 0, [2, 1]) => Class::L2e,
        (1, 0, [1, 1, 1]) => Class::L3a,
        (0, 1, [1, 1, 1]) => Class::L3b,
        (0, 0, [2, 1, 1]) => Class::L3c,
        (0, 0, [1, 1, 1, 1]) => Class::L4a,
        _ => unreachable!("four rows with a depth-1 symbol band match one form"),
    };
    Ok(class)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// All top-justified sets.
    Ooa,
    /// Sudoku top-justified sets only.
    Sa,
}

/// A row set whose columns repeat a 4-tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub rows: RowSet,
    pub tuple: [u32; 4],
    /// Zero-based column indices.
    pub columns: (usize, usize),
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = self.tuple;
        write!(
            f,
            "rows={} tuple={},{},{},{} columns={},{}",
            self.rows, t[0], t[1], t[2], t[3], self.columns.0, self.columns.1
        )
    }
}

/// Outcome of [`verify`]: one entry per failing row set, in row-set order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub checked: usize,
    pub failures: Vec<Failure>,
}

impl Verdict {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn first_failure(&self) -> Option<&Failure> {
        self.failures.first()
    }
}

fn first_repeat(array: &BandedArray, set: &RowSet) -> Option<Failure> {
    let v = array.v as usize;
    let rows: Vec<&[u32]> = set.rows().iter().map(|&(b, j)| array.row(b, j)).collect();
    let mut seen = vec![usize::MAX; v.pow(4)];
    #[allow(clippy::needless_range_loop)]
    for m in 0..array.columns() {
        let tuple = [rows[0][m], rows[1][m], rows[2][m], rows[3][m]];
        let slot = tuple.iter().fold(0, |acc, &x| acc * v + x as usize);
        if seen[slot] != usize::MAX {
            return Some(Failure {
                rows: set.clone(),
                tuple,
                columns: (seen[slot], m),
            });
        }
        seen[slot] = m;
    }
    None
}

/// Checks that every relevant row set shows each 4-tuple exactly once.
pub fn verify(array: &BandedArray, mode: Mode) -> Verdict {
    let sets: Vec<RowSet> = top_justified_sets(array.s)
        .into_iter()
        .filter(|t| mode == Mode::Ooa || classify(t) == Ok(Class::SudokuTj))
        .collect();
    let failures = sets.iter().filter_map(|t| first_repeat(array, t)).collect();
    Verdict {
        checked: sets.len(),
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent count: depth vectors in `{0,1,2}^s` summing to 4.
    fn compositions(s: usize) -> usize {
        (0..3usize.pow(s as u32))
            .filter(|&n| {
                let mut n = n;
                let mut sum = 0;
                for _ in 0..s {
                    sum += n % 3;
                    n /= 3;
                }
                sum == 4
            })
            .count()
    }

    #[test]
    fn counts() {
        assert_eq!(top_justified_sets(2).len(), 1);
        assert_eq!(top_justified_sets(3).len(), 6);
        assert_eq!(top_justified_sets(4).len(), 19);
        assert_eq!(top_justified_sets(6).len(), 90);
        for s in 2..=8 {
            let sets = top_justified_sets(s);
            assert_eq!(sets.len(), compositions(s));
            let mut dedup = sets.clone();
            dedup.sort();
            dedup.dedup();
            assert_eq!(dedup.len(), sets.len());
            assert!(sets.iter().all(RowSet::is_top_justified));
        }
    }

    #[test]
    fn first_set_is_locations() {
        assert_eq!(
            top_justified_sets(5)[0],
            RowSet::new(vec![(1, 1), (1, 2), (2, 1), (2, 2)])
        );
    }

    #[test]
    fn classify_examples() {
        let set = |v: &[(usize, usize)]| RowSet::new(v.to_vec());
        assert_eq!(
            classify(&set(&[(1, 1), (2, 1), (3, 1), (4, 1)])),
            Ok(Class::L2a)
        );
        assert_eq!(
            classify(&set(&[(1, 1), (1, 2), (2, 1), (2, 2)])),
            Ok(Class::SudokuTj)
        );
        assert_eq!(
            classify(&set(&[(1, 1), (3, 1), (3, 2), (4, 1)])),
            Ok(Class::L2e)
        );
        assert_eq!(
            classify(&set(&[(3, 1), (3, 2), (5, 1), (6, 1)])),
            Ok(Class::L3c)
        );
        assert_eq!(
            classify(&set(&[(3, 1), (3, 2), (5, 1), (5, 2)])),
            Ok(Class::SudokuTj)
        );
        assert_eq!(
            classify(&set(&[(1, 2), (2, 1), (3, 1), (4, 1)])),
            Err(Error::NotTopJustified)
        );
        assert_eq!(
            classify(&set(&[(1, 1), (2, 1), (3, 1)])),
            Err(Error::NotTopJustified)
        );
    }

    #[test]
    fn classify_is_total() {
        for s in 2..=8 {
            let sudoku_sets = top_justified_sets(s)
                .iter()
                .filter(|t| classify(t).unwrap() == Class::SudokuTj)
                .count();
            // Location bands take any depth; symbol bands 0 or 2. Sums to
            // 4: both location bands full, one symbol band plus location
            // depths summing to 2, or two symbol bands.
            let symbol_bands = s - 2;
            let expected = 1 + 3 * symbol_bands + symbol_bands * symbol_bands.saturating_sub(1) / 2;
            assert_eq!(sudoku_sets, expected);
        }
    }

    #[test]
    fn single_grid_shape() {
        let grid = Grid::new(2, (0..16).map(|m| (m % 4) as u32).collect()).unwrap();
        let a = assemble(&[grid]).unwrap();
        assert_eq!((a.rows().len(), a.columns(), a.s()), (6, 16, 3));
        assert_eq!(a.column(5), vec![0, 1, 0, 1, 0, 1]);
        assert_eq!(assemble(&[]).unwrap_err(), Error::GridCountZero);
    }

    #[test]
    fn malformed_arrays() {
        assert!(matches!(
            BandedArray::new(2, 2, vec![vec![0; 16]; 3]),
            Err(Error::MalformedArray(_))
        ));
        assert!(matches!(
            BandedArray::new(2, 2, vec![vec![0; 15]; 4]),
            Err(Error::MalformedArray(_))
        ));
        assert!(matches!(
            BandedArray::new(2, 2, vec![vec![2; 16]; 4]),
            Err(Error::MalformedArray(_))
        ));
    }

    #[test]
    fn location_rows_alone_pass() {
        let rows = (0..4)
            .map(|r| (0..16).map(|m| (m >> (3 - r)) & 1).collect())
            .collect();
        let a = BandedArray::new(2, 2, rows).unwrap();
        let verdict = verify(&a, Mode::Ooa);
        assert_eq!(verdict.checked, 1);
        assert!(verdict.passed());
    }
}
