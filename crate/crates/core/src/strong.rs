//! Strong orthogonality of sudoku families.
//!
//! A family of mutually orthogonal sudoku solutions yields an ordered
//! orthogonal array exactly when it satisfies the condition tiers below.
//! Two independent checkers evaluate them:
//!
//! * [`check_combinatorial`] works on grids, by enumerating cells;
//! * [`check_algebraic`] works on flag data, by linear algebra over F.
//!
//! Both produce a [`ConditionReport`] over the same condition labels and
//! index tuples so the results can be compared entry by entry.

use std::fmt;

use crate::error::{CompositeHypothesis, Error, FlagDataDefect, Result};
use crate::gf::{Elem, Field};
use crate::linalg::{left_large_column, top_large_row, Matrix, Subspace, Vec4};
use crate::sudoku::{self, Collision, Flag, Grid, Scope};

/// The datum `(Γ, β)` of a sudoku flag with latin radix subsquares, with
/// `Γ = (a b; c d)`, `b ≠ 0`, `β ≠ 0` and `det Γ ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FlagData {
    a: Elem,
    b: Elem,
    c: Elem,
    d: Elem,
    beta: Elem,
    delta: Elem,
}

impl FlagData {
    pub fn new(f: &Field, gamma: &Matrix, beta: Elem) -> Result<FlagData> {
        if (gamma.rows(), gamma.cols()) != (2, 2) {
            return Err(Error::DimensionMismatch("Γ must be 2x2".into()));
        }
        let [a, b, c, d] = [
            gamma.get(0, 0),
            gamma.get(0, 1),
            gamma.get(1, 0),
            gamma.get(1, 1),
        ];
        FlagData::from_entries(f, [a, b, c, d], beta)
    }

    pub fn from_entries(f: &Field, [a, b, c, d]: [Elem; 4], beta: Elem) -> Result<FlagData> {
        if b.is_zero() {
            return Err(Error::InvalidFlagData(FlagDataDefect::BZero));
        }
        if beta.is_zero() {
            return Err(Error::InvalidFlagData(FlagDataDefect::BetaZero));
        }
        let det = f.sub(f.mul(a, d), f.mul(b, c));
        let delta = f
            .inv(det)
            .map_err(|_| Error::InvalidFlagData(FlagDataDefect::SingularGamma))?;
        Ok(FlagData {
            a,
            b,
            c,
            d,
            beta,
            delta,
        })
    }

    /// `[a, b, c, d]`.
    pub fn entries(&self) -> [Elem; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn gamma(&self) -> Matrix {
        Matrix::square2(self.a, self.b, self.c, self.d)
    }

    pub fn beta(&self) -> Elem {
        self.beta
    }

    /// `(det Γ)⁻¹`.
    pub fn delta(&self) -> Elem {
        self.delta
    }
}

/// `V_R` (top large row) and `V_C` (left large column).
#[derive(Debug, Clone)]
pub struct FixedSubspaces {
    pub top_row: Subspace,
    pub left_col: Subspace,
}

impl FixedSubspaces {
    pub fn new(f: &Field) -> FixedSubspaces {
        FixedSubspaces {
            top_row: top_large_row(f),
            left_col: left_large_column(f),
        }
    }
}

/// Closed form of the datum of `V_i ∩ V_j`. Requires `β_i ≠ β_j` and a
/// nonzero denominator `b_i(d_j − β_j) − b_j(d_i − β_i)`.
pub fn gamma_composite(f: &Field, di: &FlagData, dj: &FlagData) -> Result<Matrix> {
    let [a1, b1, c1, d1] = di.entries();
    let [a2, b2, c2, d2] = dj.entries();
    let (be1, be2) = (di.beta, dj.beta);
    if be1 == be2 {
        return Err(Error::HypothesisViolated(CompositeHypothesis::EqualBetas));
    }
    let e1 = f.sub(d1, be1);
    let e2 = f.sub(d2, be2);
    let den = f.sub(f.mul(b1, e2), f.mul(b2, e1));
    if den.is_zero() {
        return Err(Error::HypothesisViolated(
            CompositeHypothesis::ZeroDenominator,
        ));
    }
    let inv = f.inv(den)?;
    let b1b2 = f.mul(b1, b2);
    let a = f.add(
        f.mul(b1b2, f.sub(c1, c2)),
        f.sub(f.mul(f.mul(a2, b1), e2), f.mul(f.mul(a1, b2), e1)),
    );
    let b = f.mul(b1b2, f.sub(be1, be2));
    let c = f.add(
        f.sub(f.mul(f.mul(b1, c1), e2), f.mul(f.mul(b2, c2), e1)),
        f.mul(f.sub(a2, a1), f.mul(e1, e2)),
    );
    let d = f.sub(f.mul(f.mul(be1, b1), e2), f.mul(f.mul(be2, b2), e1));
    Ok(Matrix::square2(
        f.mul(a, inv),
        f.mul(b, inv),
        f.mul(c, inv),
        f.mul(d, inv),
    ))
}

/// Determinant of `(1 1 1; b_i 0 b_j; d_i β_i d_j)`; nonzero exactly when
/// the large rows of `R(M_i)` and `M_j` are orthogonal.
pub fn rows_condition_det(f: &Field, di: &FlagData, dj: &FlagData) -> Elem {
    let m = Matrix::new(
        3,
        3,
        vec![
            Elem::ONE,
            Elem::ONE,
            Elem::ONE,
            di.b,
            Elem::ZERO,
            dj.b,
            di.d,
            di.beta,
            dj.d,
        ],
    )
    .expect("3x3");
    m.det(f).expect("3x3")
}

/// Determinant of the matrix whose columns are the `(x₁, x₂, x₄)`
/// coordinates of `(−b_iδ_i, a_iδ_i, 0, 1)` and `(0, β_i⁻¹, 0, 1)`, which
/// span `V_i ∩ V_C`, and `(−b_jδ_j, a_jδ_j, 0, 1)`, which spans `g_j ∩ V_C`.
/// Nonzero exactly when the large columns of `R(M_i)` and `M_j` are
/// orthogonal.
pub fn cols_condition_det(f: &Field, di: &FlagData, dj: &FlagData) -> Elem {
    let binv = f.inv(di.beta).expect("β ≠ 0");
    let m = Matrix::new(
        3,
        3,
        vec![
            f.neg(f.mul(di.b, di.delta)),
            Elem::ZERO,
            f.neg(f.mul(dj.b, dj.delta)),
            f.mul(di.a, di.delta),
            binv,
            f.mul(dj.a, dj.delta),
            Elem::ONE,
            Elem::ONE,
            Elem::ONE,
        ],
    )
    .expect("3x3");
    m.det(f).expect("3x3")
}

/// Condition labels, in report order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Condition {
    I,
    IIa,
    IIb,
    IIc,
    IIIa,
    IIIb,
    IIIc,
    IV,
}

impl Condition {
    pub const ALL: [Condition; 8] = [
        Condition::I,
        Condition::IIa,
        Condition::IIb,
        Condition::IIc,
        Condition::IIIa,
        Condition::IIIb,
        Condition::IIIc,
        Condition::IV,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Condition::I => "i",
            Condition::IIa => "ii.a",
            Condition::IIb => "ii.b",
            Condition::IIc => "ii.c",
            Condition::IIIa => "iii.a",
            Condition::IIIb => "iii.b",
            Condition::IIIc => "iii.c",
            Condition::IV => "iv",
        }
    }

    pub fn from_label(label: &str) -> Option<Condition> {
        Condition::ALL.into_iter().find(|c| c.label() == label)
    }

    /// Smallest `s` for which the condition applies.
    pub fn min_s(self) -> usize {
        match self {
            Condition::I => 3,
            Condition::IIa | Condition::IIb | Condition::IIc => 4,
            Condition::IIIa | Condition::IIIb | Condition::IIIc => 5,
            Condition::IV => 6,
        }
    }

    /// Zero-based index tuples checked for a family of `m` members.
    ///
    /// Pairs `{i, j}` feeding a composite are unordered (`i < j`); ii.b and
    /// ii.c are asymmetric and use ordered pairs; for iv each unordered pair
    /// of disjoint pairs appears once.
    pub fn tuples(self, m: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        match self {
            Condition::I => out.extend((0..m).map(|i| vec![i])),
            Condition::IIa => {
                for i in 0..m {
                    out.extend((i + 1..m).map(|j| vec![i, j]));
                }
            }
            Condition::IIb | Condition::IIc => {
                for i in 0..m {
                    out.extend((0..m).filter(|&j| j != i).map(|j| vec![i, j]));
                }
            }
            Condition::IIIa | Condition::IIIb | Condition::IIIc => {
                for i in 0..m {
                    for j in i + 1..m {
                        out.extend((0..m).filter(|&k| k != i && k != j).map(|k| vec![i, j, k]));
                    }
                }
            }
            Condition::IV => {
                for i in 0..m {
                    for j in i + 1..m {
                        for k in i + 1..m {
                            if k == j {
                                continue;
                            }
                            for l in k + 1..m {
                                if l != j {
                                    out.push(vec![i, j, k, l]);
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::NotApplicable => "N/A",
        })
    }
}

/// Evidence for a failed condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// Two cells repeating a symbol or symbol pair.
    Cells(Collision),
    /// A nonzero vector in an intersection that should be trivial.
    Vector(Vec4),
    /// A determinant that should not vanish does.
    Singular,
    /// `V_i ∩ V_j` is not of the form `[I; Γ]`.
    NotDatumForm,
    /// `V_i ∩ V_j = [I; Γ_ij]` but `b_ij = 0`.
    BZero,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Cells(c) => write!(
                f,
                "cells={},{} symbols={},{}",
                c.cells.0, c.cells.1, c.symbols.0, c.symbols.1
            ),
            Witness::Vector(v) => {
                write!(f, "vector={}{}{}{}", v[0], v[1], v[2], v[3])
            }
            Witness::Singular => write!(f, "singular"),
            Witness::NotDatumForm => write!(f, "not-datum-form"),
            Witness::BZero => write!(f, "b=0"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionResult {
    pub condition: Condition,
    /// Zero-based member indices; empty when not applicable.
    pub indices: Vec<usize>,
    pub status: Status,
    pub witness: Option<Witness>,
}

/// Per-condition, per-tuple outcome of a strong-orthogonality check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionReport {
    pub s: usize,
    pub results: Vec<ConditionResult>,
}

impl ConditionReport {
    fn build(s: usize, mut eval: impl FnMut(Condition, &[usize]) -> Option<Witness>) -> Self {
        let m = s - 2;
        let mut results = Vec::new();
        for condition in Condition::ALL {
            if s < condition.min_s() {
                results.push(ConditionResult {
                    condition,
                    indices: Vec::new(),
                    status: Status::NotApplicable,
                    witness: None,
                });
                continue;
            }
            for indices in condition.tuples(m) {
                let witness = eval(condition, &indices);
                let status = if witness.is_some() {
                    Status::Fail
                } else {
                    Status::Pass
                };
                results.push(ConditionResult {
                    condition,
                    indices,
                    status,
                    witness,
                });
            }
        }
        ConditionReport { s, results }
    }

    /// True when no applicable condition fails.
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.status != Status::Fail)
    }

    /// True when every applicable condition in the given tiers passes.
    pub fn passed_conditions(&self, conditions: &[Condition]) -> bool {
        self.results
            .iter()
            .filter(|r| conditions.contains(&r.condition))
            .all(|r| r.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ConditionResult> {
        self.results.iter().filter(|r| r.status == Status::Fail)
    }

    /// `(condition, indices, status)` triples, without witnesses.
    pub fn verdicts(&self) -> Vec<(Condition, Vec<usize>, Status)> {
        self.results
            .iter()
            .map(|r| (r.condition, r.indices.clone(), r.status))
            .collect()
    }

    pub fn get(&self, condition: Condition, indices: &[usize]) -> Option<&ConditionResult> {
        self.results
            .iter()
            .find(|r| r.condition == condition && r.indices == indices)
    }
}

impl fmt::Display for ConditionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.results {
            let indices = if r.indices.is_empty() {
                "-".to_string()
            } else {
                r.indices
                    .iter()
                    .map(|i| (i + 1).to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            };
            write!(f, "{} {} {}", r.condition, indices, r.status)?;
            if let Some(w) = &r.witness {
                write!(f, " {w}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Index of the unordered pair `i < j` among `m` members.
fn pair_slot(m: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j);
    i * m - i * (i + 1) / 2 + (j - i - 1)
}

fn nonzero_vector_in(f: &Field, a: &Subspace, b: &Subspace) -> Option<Vec4> {
    a.intersect(f, b).basis().first().copied()
}

/// Algebraic check over flag data; the family size is `s = data.len() + 2`.
pub fn check_algebraic(f: &Field, data: &[FlagData]) -> Result<ConditionReport> {
    let m = data.len();
    if m == 0 {
        return Err(Error::GridCountZero);
    }
    for i in 0..m {
        for j in i + 1..m {
            let diff = data[i].gamma().sub(f, &data[j].gamma())?;
            if diff.det(f)?.is_zero() {
                return Err(Error::NotMutuallyOrthogonal(i + 1, j + 1));
            }
        }
    }
    let fixed = FixedSubspaces::new(f);
    let flags: Vec<Flag> = data.iter().map(|d| Flag::from_data(f, d)).collect();
    let mut composites = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            let g = flags[i].v().intersect(f, flags[j].v());
            let gamma = g.gamma();
            if let (Some(gamma), Ok(closed)) = (&gamma, gamma_composite(f, &data[i], &data[j])) {
                debug_assert_eq!(gamma, &closed);
            }
            composites.push((g, gamma));
        }
    }
    let meets_row: Vec<Subspace> = flags
        .iter()
        .map(|z| z.v().intersect(f, &fixed.top_row))
        .collect();
    let meets_col: Vec<Subspace> = flags
        .iter()
        .map(|z| z.v().intersect(f, &fixed.left_col))
        .collect();

    // Orthogonality of g_ij against another plane: through Γ when g_ij has
    // the datum form, otherwise through the intersection directly.
    let planes_meet =
        |(g, gamma): &(Subspace, Option<Matrix>), other: &Subspace, other_gamma: Option<Matrix>| {
            match (gamma, other_gamma) {
                (Some(x), Some(y)) => {
                    let det = x.sub(f, &y).expect("2x2").det(f).expect("2x2");
                    det.is_zero().then_some(Witness::Singular)
                }
                _ => nonzero_vector_in(f, g, other).map(Witness::Vector),
            }
        };

    let s = m + 2;
    Ok(ConditionReport::build(
        s,
        |condition, idx| match condition {
            // FlagData values are valid datum-form flags by construction.
            Condition::I => None,
            Condition::IIa => {
                let (_, gamma) = &composites[pair_slot(m, idx[0], idx[1])];
                match gamma {
                    None => Some(Witness::NotDatumForm),
                    Some(g) if g.det(f).expect("2x2").is_zero() => Some(Witness::Singular),
                    Some(g) if g.get(0, 1).is_zero() => Some(Witness::BZero),
                    Some(_) => None,
                }
            }
            Condition::IIb => rows_condition_det(f, &data[idx[0]], &data[idx[1]])
                .is_zero()
                .then_some(Witness::Singular),
            Condition::IIc => cols_condition_det(f, &data[idx[0]], &data[idx[1]])
                .is_zero()
                .then_some(Witness::Singular),
            Condition::IIIa | Condition::IIIb => {
                let (g, _) = &composites[pair_slot(m, idx[0], idx[1])];
                let side = if condition == Condition::IIIa {
                    &meets_row[idx[2]]
                } else {
                    &meets_col[idx[2]]
                };
                nonzero_vector_in(f, g, side).map(Witness::Vector)
            }
            Condition::IIIc => {
                let c = &composites[pair_slot(m, idx[0], idx[1])];
                let k = &flags[idx[2]];
                planes_meet(c, k.g(), Some(data[idx[2]].gamma()))
            }
            Condition::IV => {
                let c = &composites[pair_slot(m, idx[0], idx[1])];
                let (g_kl, gamma_kl) = &composites[pair_slot(m, idx[2], idx[3])];
                planes_meet(c, g_kl, gamma_kl.clone())
            }
        },
    ))
}

/// Combinatorial check over grids; the family size is `s = grids.len() + 2`.
pub fn check_combinatorial(grids: &[Grid]) -> Result<ConditionReport> {
    let m = grids.len();
    if m == 0 {
        return Err(Error::GridCountZero);
    }
    if let Some(bad) = grids.iter().position(|g| g.q() != grids[0].q()) {
        return Err(Error::DimensionMismatch(format!(
            "grid {} has a different order",
            bad + 1
        )));
    }
    for (i, g) in grids.iter().enumerate() {
        if !sudoku::is_sudoku(g) {
            return Err(Error::NotSudoku(i + 1));
        }
    }
    for i in 0..m {
        for j in i + 1..m {
            if !sudoku::are_orthogonal(&grids[i], &grids[j])? {
                return Err(Error::NotMutuallyOrthogonal(i + 1, j + 1));
            }
        }
    }
    let radix: Vec<Grid> = grids.iter().map(sudoku::radix).collect();
    let mut composites = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            composites.push(sudoku::composite(&radix[i], &radix[j])?);
        }
    }
    let collision = |a: &Grid, b: &Grid, scope| {
        sudoku::pair_collision(a, b, scope)
            .expect("same order")
            .map(Witness::Cells)
    };
    let s = m + 2;
    Ok(ConditionReport::build(
        s,
        |condition, idx| match condition {
            Condition::I => sudoku::subsquare_defect(&radix[idx[0]]).map(Witness::Cells),
            Condition::IIa => {
                sudoku::sudoku_defect(&composites[pair_slot(m, idx[0], idx[1])]).map(Witness::Cells)
            }
            Condition::IIb => collision(&radix[idx[0]], &grids[idx[1]], Scope::LargeRows),
            Condition::IIc => collision(&radix[idx[0]], &grids[idx[1]], Scope::LargeCols),
            Condition::IIIa => collision(
                &composites[pair_slot(m, idx[0], idx[1])],
                &radix[idx[2]],
                Scope::LargeRows,
            ),
            Condition::IIIb => collision(
                &composites[pair_slot(m, idx[0], idx[1])],
                &radix[idx[2]],
                Scope::LargeCols,
            ),
            Condition::IIIc => collision(
                &composites[pair_slot(m, idx[0], idx[1])],
                &grids[idx[2]],
                Scope::Whole,
            ),
            Condition::IV => collision(
                &composites[pair_slot(m, idx[0], idx[1])],
                &composites[pair_slot(m, idx[2], idx[3])],
                Scope::Whole,
            ),
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{big_family, substrong_family, Construction};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn field(q: u64) -> Field {
        Field::new(q).unwrap()
    }

    fn datum(f: &Field, [a, b, c, d, beta]: [u32; 5]) -> FlagData {
        let e = |i: u32| f.element(i as u64).unwrap();
        FlagData::from_entries(f, [e(a), e(b), e(c), e(d)], e(beta)).unwrap()
    }

    fn random_datum(f: &Field, rng: &mut StdRng) -> FlagData {
        loop {
            let mut e = || f.element(rng.gen_range(0..f.order() as u64)).unwrap();
            if let Ok(d) = FlagData::from_entries(f, [e(), e(), e(), e()], e()) {
                return d;
            }
        }
    }

    /// `m` random data with pairwise nonsingular `Γ_i − Γ_j`.
    fn random_family(f: &Field, m: usize, rng: &mut StdRng) -> Vec<FlagData> {
        'retry: loop {
            let data: Vec<FlagData> = (0..m).map(|_| random_datum(f, rng)).collect();
            for i in 0..m {
                for j in i + 1..m {
                    if data[i]
                        .gamma()
                        .sub(f, &data[j].gamma())
                        .unwrap()
                        .det(f)
                        .unwrap()
                        .is_zero()
                    {
                        continue 'retry;
                    }
                }
            }
            return data;
        }
    }

    fn idx(m: &Matrix) -> [u32; 4] {
        [m.get(0, 0), m.get(0, 1), m.get(1, 0), m.get(1, 1)].map(|e| e.index())
    }

    #[test]
    fn datum_validation() {
        let f = field(3);
        let e = |i| f.element(i).unwrap();
        let err = |a, b, c, d, beta| {
            FlagData::from_entries(&f, [e(a), e(b), e(c), e(d)], e(beta)).unwrap_err()
        };
        assert_eq!(
            err(1, 0, 0, 1, 1),
            Error::InvalidFlagData(FlagDataDefect::BZero)
        );
        assert_eq!(
            err(1, 1, 0, 1, 0),
            Error::InvalidFlagData(FlagDataDefect::BetaZero)
        );
        assert_eq!(
            err(1, 1, 1, 1, 1),
            Error::InvalidFlagData(FlagDataDefect::SingularGamma)
        );
        let d = datum(&f, [2, 1, 0, 2, 1]);
        assert_eq!(d.delta(), f.inv(f.element(1).unwrap()).unwrap());
    }

    #[test]
    fn composite_examples() {
        let f5 = field(5);
        let fam = big_family(&f5, &[f5.element(1).unwrap(), f5.element(2).unwrap()]).unwrap();
        assert_eq!(
            idx(&gamma_composite(&f5, &fam.data[0], &fam.data[1]).unwrap()),
            [2, 4, 0, 1]
        );

        let f3 = field(3);
        let sub = substrong_family(&f3);
        assert_eq!(
            idx(&gamma_composite(&f3, &sub.data[0], &sub.data[1]).unwrap()),
            [0, 2, 1, 0]
        );

        let same_beta = datum(&f3, [1, 1, 0, 1, 1]);
        assert_eq!(
            gamma_composite(&f3, &sub.data[0], &same_beta).unwrap_err(),
            Error::HypothesisViolated(CompositeHypothesis::EqualBetas)
        );
        // d = β in both data makes the denominator vanish.
        let z1 = datum(&f3, [1, 1, 0, 1, 1]);
        let z2 = datum(&f3, [1, 1, 1, 2, 2]);
        assert_eq!(
            gamma_composite(&f3, &z1, &z2).unwrap_err(),
            Error::HypothesisViolated(CompositeHypothesis::ZeroDenominator)
        );
    }

    #[test]
    fn closed_form_matches_intersection() {
        let mut rng = StdRng::seed_from_u64(7);
        for q in [3u64, 4, 5, 7] {
            let f = field(q);
            let mut checked = 0;
            while checked < 100 {
                let (di, dj) = (random_datum(&f, &mut rng), random_datum(&f, &mut rng));
                let Ok(closed) = gamma_composite(&f, &di, &dj) else {
                    continue;
                };
                let (vi, vj) = (Flag::from_data(&f, &di), Flag::from_data(&f, &dj));
                let g = vi.v().intersect(&f, vj.v());
                assert_eq!(g.gamma(), Some(closed), "q = {q}");
                checked += 1;
            }
        }
    }

    #[test]
    fn substrong_pair_determinants() {
        for q in [3u64, 4, 5, 7, 8, 9] {
            let f = field(q);
            let fam = substrong_family(&f);
            let Construction::Substrong { alpha } = fam.construction else {
                unreachable!()
            };
            let units: Vec<Elem> = f.units().collect();
            for (a, &i) in units.iter().enumerate() {
                for (b, &j) in units.iter().enumerate() {
                    if a == b {
                        continue;
                    }
                    let (di, dj) = (&fam.data[a], &fam.data[b]);
                    assert_eq!(rows_condition_det(&f, di, dj), f.mul(alpha, f.sub(i, j)));
                    let inv = |x| f.inv(x).unwrap();
                    assert_eq!(
                        cols_condition_det(&f, di, dj),
                        f.mul(inv(alpha), f.sub(inv(j), inv(i)))
                    );
                }
            }
        }
    }

    /// The column-condition matrix written with `(b_iδ_i, 0, b_jδ_j)` as
    /// its first row has the negated determinant, so it vanishes on the
    /// same pairs.
    #[test]
    fn cols_condition_sign() {
        let mut rng = StdRng::seed_from_u64(11);
        for q in [3u64, 5, 7] {
            let f = field(q);
            for _ in 0..50 {
                let (di, dj) = (random_datum(&f, &mut rng), random_datum(&f, &mut rng));
                let unsigned = Matrix::new(
                    3,
                    3,
                    vec![
                        f.mul(di.b, di.delta),
                        Elem::ZERO,
                        f.mul(dj.b, dj.delta),
                        f.mul(di.a, di.delta),
                        f.inv(di.beta).unwrap(),
                        f.mul(dj.a, dj.delta),
                        Elem::ONE,
                        Elem::ONE,
                        Elem::ONE,
                    ],
                )
                .unwrap();
                assert_eq!(
                    unsigned.det(&f).unwrap(),
                    f.neg(cols_condition_det(&f, &di, &dj))
                );
            }
        }
    }

    #[test]
    fn tuple_counts() {
        let counts = |m| Condition::ALL.map(|c| c.tuples(m).len());
        assert_eq!(counts(1), [1, 0, 0, 0, 0, 0, 0, 0]);
        assert_eq!(counts(2), [2, 1, 2, 2, 0, 0, 0, 0]);
        assert_eq!(counts(4), [4, 6, 12, 12, 12, 12, 12, 3]);
        assert_eq!(
            Condition::IV.tuples(4),
            vec![vec![0, 1, 2, 3], vec![0, 2, 1, 3], vec![0, 3, 1, 2]]
        );
        for c in Condition::ALL {
            assert_eq!(Condition::from_label(c.label()), Some(c));
        }
    }

    #[test]
    fn order9_pair_passes_both_checkers() {
        let f = field(3);
        let data = vec![datum(&f, [2, 1, 0, 2, 1]), datum(&f, [1, 1, 0, 1, 2])];
        let algebraic = check_algebraic(&f, &data).unwrap();
        let grids: Vec<Grid> = data
            .iter()
            .map(|d| sudoku::generate(&f, &Flag::from_data(&f, d)).unwrap())
            .collect();
        let combinatorial = check_combinatorial(&grids).unwrap();
        assert!(algebraic.passed() && combinatorial.passed());
        assert_eq!(algebraic.verdicts(), combinatorial.verdicts());
        let text = algebraic.to_string();
        assert!(text.starts_with("i 1 PASS\ni 2 PASS\nii.a 1,2 PASS\n"));
        assert!(text.ends_with("iii.a - N/A\niii.b - N/A\niii.c - N/A\niv - N/A\n"));
    }

    #[test]
    fn checker_errors() {
        let f = field(3);
        assert_eq!(check_algebraic(&f, &[]).unwrap_err(), Error::GridCountZero);
        assert_eq!(check_combinatorial(&[]).unwrap_err(), Error::GridCountZero);
        let d = datum(&f, [2, 1, 0, 2, 1]);
        assert_eq!(
            check_algebraic(&f, &[d.clone(), d.clone()]).unwrap_err(),
            Error::NotMutuallyOrthogonal(1, 2)
        );
        let g = sudoku::generate(&f, &Flag::from_data(&f, &d)).unwrap();
        assert_eq!(
            check_combinatorial(&[g.clone(), g.clone()]).unwrap_err(),
            Error::NotMutuallyOrthogonal(1, 2)
        );
        let latin = Grid::new(3, (0..81).map(|m| ((m / 9 + m % 9) % 9) as u32).collect()).unwrap();
        assert_eq!(
            check_combinatorial(&[g, latin]).unwrap_err(),
            Error::NotSudoku(2)
        );
    }

    #[test]
    fn substrong_family_fails_higher_tiers() {
        let f = field(5);
        let fam = substrong_family(&f);
        let report = check_algebraic(&f, &fam.data).unwrap();
        assert_eq!(report.s, 6);
        assert!(report.passed_conditions(&[
            Condition::I,
            Condition::IIa,
            Condition::IIb,
            Condition::IIc
        ]));
        // Every Γ_ij is the same matrix, so Γ_ij − Γ_kl is zero.
        assert!(report
            .results
            .iter()
            .filter(|r| r.condition == Condition::IV)
            .all(|r| r.status == Status::Fail));
    }

    #[test]
    fn random_families_agree() {
        let mut rng = StdRng::seed_from_u64(3);
        for q in [3u64, 4, 5] {
            let f = field(q);
            for trial in 0..12 {
                let m = 1 + trial % 4;
                let data = random_family(&f, m, &mut rng);
                let grids: Vec<Grid> = data
                    .iter()
                    .map(|d| sudoku::generate(&f, &Flag::from_data(&f, d)).unwrap())
                    .collect();
                let algebraic = check_algebraic(&f, &data).unwrap();
                let combinatorial = check_combinatorial(&grids).unwrap();
                assert_eq!(
                    algebraic.verdicts(),
                    combinatorial.verdicts(),
                    "q = {q}, m = {m}"
                );
            }
        }
    }
}
