//! Sudoku grids of order q², linear sudoku generation from flags, and the
//! combinatorial predicates used by the strong-orthogonality checks.
//!
//! A location `x₁x₂x₃x₄ ∈ F⁴` sits at row `q·x₁ + x₂` and column
//! `q·x₃ + x₄` (canonical indices), so the row-major cell index of a
//! location equals its lexicographic index in F⁴.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::linalg::{from_lex_index, vec4, Matrix, Subspace, Vec4};
use crate::strong::FlagData;

/// A q²×q² grid of integer symbols.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Grid {
    q: usize,
    cells: Vec<u32>,
}

impl Grid {
    pub fn new(q: usize, cells: Vec<u32>) -> Result<Grid> {
        if q < 2 || cells.len() != q.pow(4) {
            return Err(Error::DimensionMismatch(format!(
                "{} cells for a grid of order {}",
                cells.len(),
                q * q
            )));
        }
        Ok(Grid { q, cells })
    }

    pub fn from_rows(q: usize, rows: &[Vec<u32>]) -> Result<Grid> {
        let side = q * q;
        if rows.len() != side || rows.iter().any(|r| r.len() != side) {
            return Err(Error::DimensionMismatch(format!(
                "expected {side} rows of {side} symbols"
            )));
        }
        Grid::new(q, rows.concat())
    }

    pub fn q(&self) -> usize {
        self.q
    }

    /// Number of rows (= columns), q².
    pub fn side(&self) -> usize {
        self.q * self.q
    }

    pub fn cells(&self) -> &[u32] {
        &self.cells
    }

    pub fn get(&self, row: usize, col: usize) -> u32 {
        self.cells[row * self.side() + col]
    }

    pub fn row(&self, row: usize) -> &[u32] {
        let side = self.side();
        &self.cells[row * side..(row + 1) * side]
    }

    pub fn at(&self, location: &Vec4) -> u32 {
        let q = self.q as u32;
        self.cells[crate::linalg::lex_index(q, location)]
    }

    /// One more than the largest symbol.
    pub fn alphabet(&self) -> usize {
        self.cells.iter().max().map_or(0, |&m| m as usize + 1)
    }

    pub fn map_symbols(&self, mut f: impl FnMut(u32) -> u32) -> Grid {
        Grid {
            q: self.q,
            cells: self.cells.iter().map(|&s| f(s)).collect(),
        }
    }

    fn large_row_of(&self, cell: usize) -> usize {
        cell / self.side() / self.q
    }

    fn large_col_of(&self, cell: usize) -> usize {
        cell % self.side() / self.q
    }

    /// Subsquare index of a cell, row-major over subsquares.
    pub fn subsquare(&self, cell: usize) -> usize {
        self.large_row_of(cell) * self.q + self.large_col_of(cell)
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.side() {
            let row: Vec<String> = self.row(r).iter().map(|s| s.to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// A flag `(g, V)`: a plane inside a hyperplane of F⁴.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flag {
    g: Subspace,
    v: Subspace,
    data: Option<FlagData>,
}

impl Flag {
    pub fn new(f: &Field, g: Subspace, v: Subspace) -> Result<Flag> {
        if g.dim() != 2 {
            return Err(Error::DimensionError {
                expected: 2,
                actual: g.dim(),
            });
        }
        if v.dim() != 3 {
            return Err(Error::DimensionError {
                expected: 3,
                actual: v.dim(),
            });
        }
        if !g.is_subspace_of(f, &v) {
            return Err(Error::InvalidFlag("g is not contained in V".into()));
        }
        Ok(Flag { g, v, data: None })
    }

    /// The flag `[v₁ v₂ v₃]`: `g = ⟨v₁, v₂⟩`, `V = ⟨v₁, v₂, v₃⟩`.
    pub fn from_columns(f: &Field, columns: [Vec4; 3]) -> Result<Flag> {
        let g = Subspace::span(f, &columns[..2]);
        let v = Subspace::span(f, &columns);
        Flag::new(f, g, v)
    }

    /// The flag with columns `(1,0,a,c)`, `(0,1,b,d)`, `(0,1,0,β)`.
    pub fn from_data(f: &Field, data: &FlagData) -> Flag {
        let [a, b, c, d] = data.entries();
        let v1 = [Elem::ONE, Elem::ZERO, a, c];
        let v2 = [Elem::ZERO, Elem::ONE, b, d];
        let v3 = [Elem::ZERO, Elem::ONE, Elem::ZERO, data.beta()];
        let mut flag = Flag::from_columns(f, [v1, v2, v3]).expect("datum columns form a flag");
        flag.data = Some(data.clone());
        flag
    }

    pub fn g(&self) -> &Subspace {
        &self.g
    }

    pub fn v(&self) -> &Subspace {
        &self.v
    }

    /// The datum the flag was built from, if any.
    pub fn data(&self) -> Option<&FlagData> {
        self.data.as_ref()
    }

    /// Recovers `(Γ, β)` when the flag has the canonical datum form, i.e.
    /// when it is a sudoku flag whose radix subsquares are latin.
    pub fn canonical_data(&self, f: &Field) -> Option<FlagData> {
        let gamma = self.g.gamma()?;
        let plane = Subspace::span(f, &[vec4(f, [0, 1, 0, 0]), vec4(f, [0, 0, 0, 1])]);
        let line = self.v.intersect(f, &plane);
        if line.dim() != 1 {
            return None;
        }
        let w = line.basis()[0];
        if w[1].is_zero() || w[3].is_zero() {
            return None;
        }
        let beta = f.div(w[3], w[1]).ok()?;
        let data = FlagData::new(f, &gamma, beta).ok()?;
        let rebuilt = Flag::from_data(f, &data);
        (rebuilt.g == self.g && rebuilt.v == self.v).then_some(data)
    }
}

/// Whether `g` meets `⟨1000,0100⟩`, `⟨0010,0001⟩` and `⟨0100,0001⟩`
/// trivially, i.e. its cosets hit every row, column and subsquare once.
pub fn is_sudoku_subspace(f: &Field, g: &Subspace) -> Result<bool> {
    if g.dim() != 2 {
        return Err(Error::DimensionError {
            expected: 2,
            actual: g.dim(),
        });
    }
    let planes = [
        [[1, 0, 0, 0], [0, 1, 0, 0]],
        [[0, 0, 1, 0], [0, 0, 0, 1]],
        [[0, 1, 0, 0], [0, 0, 0, 1]],
    ];
    Ok(planes.iter().all(|[a, b]| {
        let h = Subspace::span(f, &[vec4(f, *a), vec4(f, *b)]);
        g.trivial_intersection(f, &h)
    }))
}

/// Builds the flag for datum `(Γ, β)`.
pub fn flag_from_data(f: &Field, gamma: &Matrix, beta: Elem) -> Result<Flag> {
    let data = FlagData::new(f, gamma, beta)?;
    Ok(Flag::from_data(f, &data))
}

fn locations(q: u32) -> impl Iterator<Item = Vec4> {
    (0..(q as usize).pow(4)).map(move |m| from_lex_index(q, m))
}

/// The linear sudoku solution of a sudoku flag.
///
/// Cosets of V, in order of their minimal representatives, receive radix
/// digits `0..q`; inside each, the q cosets of g, again by minimal
/// representative, receive units digits `0..q`.
pub fn generate(f: &Field, flag: &Flag) -> Result<Grid> {
    if !is_sudoku_subspace(f, flag.g())? {
        return Err(Error::NotSudokuFlag);
    }
    let q = f.order();
    let radix: Vec<usize> = locations(q).map(|x| flag.v().coset_index(f, &x)).collect();
    let units: Vec<usize> = locations(q).map(|x| flag.g().coset_index(f, &x)).collect();
    let mut classes = vec![Vec::with_capacity(q as usize); q as usize];
    for (&r, &u) in radix.iter().zip(&units) {
        classes[r].push(u);
    }
    for class in &mut classes {
        class.sort_unstable();
        class.dedup();
        debug_assert_eq!(class.len(), q as usize);
    }
    let cells = radix
        .iter()
        .zip(&units)
        .map(|(&r, &u)| {
            let digit = classes[r]
                .binary_search(&u)
                .expect("coset listed in its class");
            (r * q as usize + digit) as u32
        })
        .collect();
    Grid::new(q as usize, cells)
}

/// The linear sudoku solution whose symbol classes are the cosets of `g`,
/// labelled by sorted minimal representative.
pub fn generate_from_subspace(f: &Field, g: &Subspace) -> Result<Grid> {
    if !is_sudoku_subspace(f, g)? {
        return Err(Error::NotSudokuSubspace);
    }
    let q = f.order();
    let cells = locations(q).map(|x| g.coset_index(f, &x) as u32).collect();
    Grid::new(q as usize, cells)
}

/// Radix digits of every symbol.
pub fn radix(grid: &Grid) -> Grid {
    let q = grid.q as u32;
    grid.map_symbols(|s| s / q)
}

/// Superimposes two radix grids; the first supplies the radix digit.
pub fn composite(ri: &Grid, rj: &Grid) -> Result<Grid> {
    same_shape(ri, rj)?;
    let q = ri.q as u32;
    if ri.alphabet() > ri.q || rj.alphabet() > rj.q {
        return Err(Error::DimensionMismatch(
            "composite needs radix-alphabet grids".into(),
        ));
    }
    let cells = ri
        .cells
        .iter()
        .zip(&rj.cells)
        .map(|(&a, &b)| q * a + b)
        .collect();
    Grid::new(ri.q, cells)
}

fn same_shape(a: &Grid, b: &Grid) -> Result<()> {
    if a.q != b.q {
        return Err(Error::DimensionMismatch(format!(
            "grids of order {} and {}",
            a.side(),
            b.side()
        )));
    }
    Ok(())
}

/// Two cells that break a non-repetition rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Collision {
    pub cells: (usize, usize),
    pub symbols: (u32, u32),
}

/// Region within which superimposed pairs must not repeat.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    Whole,
    LargeRows,
    LargeCols,
}

/// First repeated ordered pair `(a, b)` within a scope region.
pub fn pair_collision(a: &Grid, b: &Grid, scope: Scope) -> Result<Option<Collision>> {
    same_shape(a, b)?;
    let (na, nb) = (a.alphabet(), b.alphabet());
    let regions = match scope {
        Scope::Whole => 1,
        Scope::LargeRows | Scope::LargeCols => a.q,
    };
    let mut seen = vec![usize::MAX; regions * na * nb];
    for cell in 0..a.cells.len() {
        let region = match scope {
            Scope::Whole => 0,
            Scope::LargeRows => a.large_row_of(cell),
            Scope::LargeCols => a.large_col_of(cell),
        };
        let (sa, sb) = (a.cells[cell], b.cells[cell]);
        let slot = (region * na + sa as usize) * nb + sb as usize;
        if seen[slot] != usize::MAX {
            return Ok(Some(Collision {
                cells: (seen[slot], cell),
                symbols: (sa, sb),
            }));
        }
        seen[slot] = cell;
    }
    Ok(None)
}

/// First pair of cells in a common unit sharing a symbol. Units are rows,
/// columns and (optionally) subsquares; with `within_subsquares`, rows and
/// columns are restricted to a single subsquare.
fn unit_collision(grid: &Grid, subsquares: bool, within_subsquares: bool) -> Option<Collision> {
    let side = grid.side();
    let n = grid.alphabet();
    let q = grid.q;
    let mut units: Vec<Box<dyn Fn(usize) -> usize>> = if within_subsquares {
        vec![
            Box::new(move |c| (c / side) * q + (c % side) / q),
            Box::new(move |c| (c % side) * q + (c / side) / q),
        ]
    } else {
        vec![Box::new(move |c| c / side), Box::new(move |c| c % side)]
    };
    if subsquares {
        units.push(Box::new(move |c| (c / side / q) * q + (c % side) / q));
    }
    for unit in &units {
        let mut seen = vec![usize::MAX; side * q * n.max(1)];
        for (cell, &s) in grid.cells.iter().enumerate() {
            let slot = unit(cell) * n + s as usize;
            if seen[slot] != usize::MAX {
                return Some(Collision {
                    cells: (seen[slot], cell),
                    symbols: (s, s),
                });
            }
            seen[slot] = cell;
        }
    }
    None
}

/// Every row and column is a permutation of `0..q²`.
pub fn is_latin(grid: &Grid) -> bool {
    grid.alphabet() <= grid.side() && unit_collision(grid, false, false).is_none()
}

/// A repeated symbol in a row, column or subsquare, or a symbol out of range.
pub fn sudoku_defect(grid: &Grid) -> Option<Collision> {
    if let Some(cell) = grid.cells.iter().position(|&s| s as usize >= grid.side()) {
        let s = grid.cells[cell];
        return Some(Collision {
            cells: (cell, cell),
            symbols: (s, s),
        });
    }
    unit_collision(grid, true, false)
}

pub fn is_sudoku(grid: &Grid) -> bool {
    sudoku_defect(grid).is_none()
}

/// A repeated symbol in some row or column of a q×q subsquare.
pub fn subsquare_defect(grid: &Grid) -> Option<Collision> {
    if let Some(cell) = grid.cells.iter().position(|&s| s as usize >= grid.q) {
        let s = grid.cells[cell];
        return Some(Collision {
            cells: (cell, cell),
            symbols: (s, s),
        });
    }
    unit_collision(grid, false, true)
}

/// Every canonical subsquare of a radix-alphabet grid is a latin square.
pub fn subsquares_latin(grid: &Grid) -> bool {
    subsquare_defect(grid).is_none()
}

pub fn are_orthogonal(a: &Grid, b: &Grid) -> Result<bool> {
    Ok(pair_collision(a, b, Scope::Whole)?.is_none())
}

pub fn large_rows_orthogonal(a: &Grid, b: &Grid) -> Result<bool> {
    Ok(pair_collision(a, b, Scope::LargeRows)?.is_none())
}

pub fn large_cols_orthogonal(a: &Grid, b: &Grid) -> Result<bool> {
    Ok(pair_collision(a, b, Scope::LargeCols)?.is_none())
}

/// The symbol map `σ` with `σ(a) = b` cellwise, if it exists and is
/// injective; indexed by the symbols of `a`.
pub fn symbol_bijection(a: &Grid, b: &Grid) -> Option<Vec<Option<u32>>> {
    if a.q != b.q {
        return None;
    }
    let mut forward = vec![None; a.alphabet()];
    let mut backward = vec![None; b.alphabet()];
    for (&x, &y) in a.cells.iter().zip(&b.cells) {
        match (forward[x as usize], backward[y as usize]) {
            (None, None) => {
                forward[x as usize] = Some(y);
                backward[y as usize] = Some(x);
            }
            (Some(fy), Some(bx)) if fy == y && bx == x => {}
            _ => return None,
        }
    }
    Some(forward)
}

/// Whether `b` is `a` with symbols relabelled so that radix classes go to
/// radix classes.
pub fn equal_up_to_radix_labels(a: &Grid, b: &Grid) -> bool {
    let q = a.q as u32;
    if a.alphabet() > a.side() || b.alphabet() > b.side() {
        return false;
    }
    let Some(map) = symbol_bijection(a, b) else {
        return false;
    };
    let mut radix_map = vec![None; a.q];
    map.iter().enumerate().all(|(x, y)| match y {
        None => true,
        Some(y) => {
            let slot = &mut radix_map[x / a.q];
            *slot.get_or_insert(y / q) == y / q
        }
    })
}
