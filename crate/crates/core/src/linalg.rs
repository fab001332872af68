//! Vectors, small matrices and subspaces of F⁴.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{elem_unchecked, Elem, Field};

/// A vector of F⁴, e.g. a sudoku location `x₁x₂x₃x₄`.
pub type Vec4 = [Elem; 4];

pub fn vec4(f: &Field, coords: [u32; 4]) -> Vec4 {
    coords.map(|c| f.element(c as u64).expect("coordinate in range"))
}

pub fn add4(f: &Field, a: &Vec4, b: &Vec4) -> Vec4 {
    std::array::from_fn(|i| f.add(a[i], b[i]))
}

pub fn scale4(f: &Field, c: Elem, a: &Vec4) -> Vec4 {
    a.map(|x| f.mul(c, x))
}

pub fn is_zero4(a: &Vec4) -> bool {
    a.iter().all(|x| x.is_zero())
}

/// Position of `v` in the lexicographic order of F⁴ (base-q reading of the
/// canonical indices).
pub fn lex_index(q: u32, v: &Vec4) -> usize {
    v.iter()
        .fold(0usize, |acc, x| acc * q as usize + x.index() as usize)
}

/// Inverse of [`lex_index`].
pub fn from_lex_index(q: u32, mut m: usize) -> Vec4 {
    let mut out = [Elem::ZERO; 4];
    for slot in out.iter_mut().rev() {
        *slot = elem_unchecked((m % q as usize) as u32);
        m /= q as usize;
    }
    out
}

/// Dense matrix over a finite field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Elem>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![Elem::ZERO; rows * cols],
        }
    }

    pub fn from_rows<const C: usize>(rows: &[[Elem; C]]) -> Matrix {
        Matrix {
            rows: rows.len(),
            cols: C,
            data: rows.iter().flat_map(|r| r.iter().copied()).collect(),
        }
    }

    /// The 2x2 matrix `(a b; c d)`.
    pub fn square2(a: Elem, b: Elem, c: Elem, d: Elem) -> Matrix {
        Matrix {
            rows: 2,
            cols: 2,
            data: vec![a, b, c, d],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: Elem) {
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn sub(&self, f: &Field, other: &Matrix) -> Result<Matrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} minus {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.sub(a, b))
            .collect();
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Determinant by cofactor expansion; 2x2 and 3x3 only.
    pub fn det(&self, f: &Field) -> Result<Elem> {
        let m = |r, c| self.get(r, c);
        match (self.rows, self.cols) {
            (2, 2) => Ok(f.sub(f.mul(m(0, 0), m(1, 1)), f.mul(m(0, 1), m(1, 0)))),
            (3, 3) => {
                let minor = |r0, c0, c1| {
                    f.sub(
                        f.mul(m(r0, c0), m(r0 + 1, c1)),
                        f.mul(m(r0, c1), m(r0 + 1, c0)),
                    )
                };
                let t0 = f.mul(m(0, 0), minor(1, 1, 2));
                let t1 = f.mul(m(0, 1), minor(1, 0, 2));
                let t2 = f.mul(m(0, 2), minor(1, 0, 1));
                Ok(f.add(f.sub(t0, t1), t2))
            }
            (rows, cols) => Err(Error::SizeUnsupported { rows, cols }),
        }
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self, f: &Field) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, pr);
            let inv = f.inv(m.get(row, col)).expect("pivot is nonzero");
            for c in 0..m.cols {
                m.set(row, c, f.mul(inv, m.get(row, c)));
            }
            for r in 0..m.rows {
                let factor = m.get(r, col);
                if r == row || factor.is_zero() {
                    continue;
                }
                for c in 0..m.cols {
                    let x = f.sub(m.get(r, c), f.mul(factor, m.get(row, c)));
                    m.set(r, c, x);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self, f: &Field) -> usize {
        self.rref(f).1.len()
    }

    /// Basis of `{x : M x = 0}`.
    pub fn nullspace(&self, f: &Field) -> Vec<Vec<Elem>> {
        let (r, pivots) = self.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut x = vec![Elem::ZERO; self.cols];
                x[fc] = Elem::ONE;
                for (pr, &pc) in pivots.iter().enumerate() {
                    x[pc] = f.neg(r.get(pr, fc));
                }
                x
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            if r > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// A subspace of F⁴ held by its reduced row echelon basis, so that equal
/// subspaces compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: Vec<Vec4>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero() -> Subspace {
        Subspace {
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full() -> Subspace {
        let basis = (0..4)
            .map(|i| {
                let mut v = [Elem::ZERO; 4];
                v[i] = Elem::ONE;
                v
            })
            .collect();
        Subspace {
            basis,
            pivots: vec![0, 1, 2, 3],
        }
    }

    /// Span of `vectors`.
    pub fn span(f: &Field, vectors: &[Vec4]) -> Subspace {
        if vectors.is_empty() {
            return Subspace::zero();
        }
        let (r, pivots) = Matrix::from_rows(vectors).rref(f);
        let basis = (0..pivots.len())
            .map(|i| std::array::from_fn(|c| r.get(i, c)))
            .collect();
        Subspace { basis, pivots }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec4] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// The minimal representative of `v + self`: `v` with its pivot
    /// coordinates cleared.
    pub fn reduce(&self, f: &Field, v: &Vec4) -> Vec4 {
        let mut out = *v;
        for (row, &pc) in self.basis.iter().zip(&self.pivots) {
            let c = out[pc];
            if !c.is_zero() {
                out = add4(f, &out, &scale4(f, f.neg(c), row));
            }
        }
        out
    }

    pub fn contains(&self, f: &Field, v: &Vec4) -> bool {
        is_zero4(&self.reduce(f, v))
    }

    pub fn is_subspace_of(&self, f: &Field, other: &Subspace) -> bool {
        self.basis.iter().all(|v| other.contains(f, v))
    }

    pub fn sum(&self, f: &Field, other: &Subspace) -> Subspace {
        let all: Vec<Vec4> = self.basis.iter().chain(&other.basis).copied().collect();
        Subspace::span(f, &all)
    }

    /// `self ∩ other`, from the nullspace of `[Aᵀ | −Bᵀ]`.
    pub fn intersect(&self, f: &Field, other: &Subspace) -> Subspace {
        let (da, db) = (self.dim(), other.dim());
        if da == 0 || db == 0 {
            return Subspace::zero();
        }
        let mut m = Matrix::zeros(4, da + db);
        for c in 0..4 {
            for (i, v) in self.basis.iter().enumerate() {
                m.set(c, i, v[c]);
            }
            for (j, v) in other.basis.iter().enumerate() {
                m.set(c, da + j, f.neg(v[c]));
            }
        }
        let vectors: Vec<Vec4> = m
            .nullspace(f)
            .iter()
            .map(|x| {
                self.basis
                    .iter()
                    .zip(x)
                    .fold([Elem::ZERO; 4], |acc, (v, &c)| {
                        add4(f, &acc, &scale4(f, c, v))
                    })
            })
            .collect();
        Subspace::span(f, &vectors)
    }

    pub fn trivial_intersection(&self, f: &Field, other: &Subspace) -> bool {
        self.sum(f, other).dim() == self.dim() + other.dim()
    }

    /// Minimal coset representatives in lexicographic order: the vectors
    /// with zero pivot coordinates.
    pub fn coset_representatives(&self, q: u32) -> Vec<Vec4> {
        let free: Vec<usize> = (0..4).filter(|c| !self.pivots.contains(c)).collect();
        let count = (q as usize).pow(free.len() as u32);
        (0..count)
            .map(|mut n| {
                let mut v = [Elem::ZERO; 4];
                for &c in free.iter().rev() {
                    v[c] = elem_unchecked((n % q as usize) as u32);
                    n /= q as usize;
                }
                v
            })
            .collect()
    }

    /// Position of the coset `v + self` in [`Self::coset_representatives`].
    pub fn coset_index(&self, f: &Field, v: &Vec4) -> usize {
        let rep = self.reduce(f, v);
        (0..4)
            .filter(|c| !self.pivots.contains(c))
            .fold(0, |acc, c| {
                acc * f.order() as usize + rep[c].index() as usize
            })
    }

    /// For a plane of the form `[I; Γ]` (column span of `(1,0,a,c)`,
    /// `(0,1,b,d)`), returns Γ.
    pub fn gamma(&self) -> Option<Matrix> {
        if self.pivots != [0, 1] {
            return None;
        }
        let (r0, r1) = (self.basis[0], self.basis[1]);
        Some(Matrix::square2(r0[2], r1[2], r0[3], r1[3]))
    }

    /// The plane `[I; Γ]`.
    pub fn from_gamma(f: &Field, gamma: &Matrix) -> Subspace {
        let v1 = [Elem::ONE, Elem::ZERO, gamma.get(0, 0), gamma.get(1, 0)];
        let v2 = [Elem::ZERO, Elem::ONE, gamma.get(0, 1), gamma.get(1, 1)];
        Subspace::span(f, &[v1, v2])
    }
}

/// `⟨0100, 0010, 0001⟩`: locations in the top large row.
pub fn top_large_row(f: &Field) -> Subspace {
    Subspace::span(
        f,
        &[
            vec4(f, [0, 1, 0, 0]),
            vec4(f, [0, 0, 1, 0]),
            vec4(f, [0, 0, 0, 1]),
        ],
    )
}

/// `⟨1000, 0100, 0001⟩`: locations in the left large column.
pub fn left_large_column(f: &Field) -> Subspace {
    Subspace::span(
        f,
        &[
            vec4(f, [1, 0, 0, 0]),
            vec4(f, [0, 1, 0, 0]),
            vec4(f, [0, 0, 0, 1]),
        ],
    )
}
