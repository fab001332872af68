//! Explicit strongly orthogonal flag families.
//!
//! * the substrong family `{((αi)⁻¹ 1; 0 αi), β = i : i ∈ F×}` of size
//!   q − 1, any one or two members of which are strongly orthogonal;
//! * the big family `{(i 1; 0 i⁻¹), β = i : i ∈ S}` over a set `S ⊂ F×`
//!   with `i + j ≠ 0` and `ij ≠ −1` for distinct members;
//! * a choice of S of size ⌊q/2⌋ and a dispatcher picking the right family
//!   for a requested `s`.

use crate::error::{Error, Result, SetRule};
use crate::gf::{Elem, Field};
use crate::linalg::Matrix;
use crate::strong::FlagData;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Construction {
    Substrong { alpha: Elem },
    Big { set: Vec<Elem> },
}

impl Construction {
    pub fn tag(&self) -> &'static str {
        match self {
            Construction::Substrong { .. } => "substrong",
            Construction::Big { .. } => "big",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySpec {
    pub q: u32,
    /// Band count of the resulting array: `data.len() + 2`.
    pub s: usize,
    pub construction: Construction,
    pub data: Vec<FlagData>,
}

impl FamilySpec {
    fn new(f: &Field, construction: Construction, data: Vec<FlagData>) -> FamilySpec {
        FamilySpec {
            q: f.order(),
            s: data.len() + 2,
            construction,
            data,
        }
    }

    /// Keeps the first `count` members.
    fn truncate(mut self, count: usize) -> FamilySpec {
        self.data.truncate(count);
        if let Construction::Big { set } = &mut self.construction {
            set.truncate(count);
        }
        self.s = self.data.len() + 2;
        self
    }
}

/// The full substrong family, ordered by the canonical index of `i`.
pub fn substrong_family(f: &Field) -> FamilySpec {
    if f.order() == 2 {
        let data =
            FlagData::from_entries(f, [Elem::ONE, Elem::ONE, Elem::ZERO, Elem::ONE], Elem::ONE)
                .expect("valid datum");
        return FamilySpec::new(f, Construction::Substrong { alpha: Elem::ONE }, vec![data]);
    }
    let alpha = f.element(2).expect("q > 2");
    let data = f
        .units()
        .map(|i| {
            let ai = f.mul(alpha, i);
            let gamma = Matrix::square2(f.inv(ai).expect("αi ≠ 0"), Elem::ONE, Elem::ZERO, ai);
            FlagData::new(f, &gamma, i).expect("valid datum")
        })
        .collect();
    FamilySpec::new(f, Construction::Substrong { alpha }, data)
}

fn check_pair(f: &Field, i: Elem, j: Elem) -> Result<()> {
    let fail = |rule| {
        Err(Error::InvalidS {
            i: i.index(),
            j: j.index(),
            rule,
        })
    };
    if i == j {
        return fail(SetRule::Duplicate);
    }
    if f.add(i, j).is_zero() {
        return fail(SetRule::SumIsZero);
    }
    if f.mul(i, j) == f.neg(Elem::ONE) {
        return fail(SetRule::ProductIsMinusOne);
    }
    Ok(())
}

/// Validates a parameter set and returns it in canonical order.
pub fn validate_set(f: &Field, set: &[Elem]) -> Result<Vec<Elem>> {
    let mut sorted = set.to_vec();
    sorted.sort();
    if let Some(&z) = sorted.iter().find(|x| x.is_zero()) {
        return Err(Error::InvalidS {
            i: z.index(),
            j: z.index(),
            rule: SetRule::ContainsZero,
        });
    }
    for (n, &i) in sorted.iter().enumerate() {
        for &j in &sorted[n + 1..] {
            check_pair(f, i, j)?;
        }
    }
    Ok(sorted)
}

/// The big family over `set`, ordered by canonical index.
pub fn big_family(f: &Field, set: &[Elem]) -> Result<FamilySpec> {
    let set = validate_set(f, set)?;
    let data = set
        .iter()
        .map(|&i| {
            let gamma = Matrix::square2(i, Elem::ONE, Elem::ZERO, f.inv(i).expect("i ≠ 0"));
            FlagData::new(f, &gamma, i).expect("valid datum")
        })
        .collect();
    Ok(FamilySpec::new(f, Construction::Big { set }, data))
}

/// A parameter set for the big family of size `q/2` (even q) or
/// `(q − 1)/2` (odd q), in canonical order.
///
/// Even q: 1 together with the smaller of each pair `{i, i⁻¹}`. Odd q:
/// powers `α^k` of the smallest generator for `k` in a window of
/// `Z_{q−1}` that avoids both `k + (q−1)/2` and `−(k + (q−1)/2)`.
pub fn select_s(f: &Field) -> Vec<Elem> {
    let q = f.order();
    let mut set: Vec<Elem> = if q.is_multiple_of(2) {
        f.units()
            .filter(|&i| i <= f.inv(i).expect("unit"))
            .collect()
    } else {
        let n = (q - 1) as i64;
        let r = n / 4;
        let mut exps = vec![0i64];
        if n % 4 == 2 {
            for k in 1..=r {
                exps.extend([k, -k]);
            }
        } else {
            for k in 1..r {
                exps.extend([k, -k]);
            }
            exps.push(r);
        }
        let alpha = f.generator();
        exps.iter()
            .map(|&k| f.pow(alpha, k).expect("generator is a unit"))
            .collect()
    };
    set.sort();
    set.dedup();
    set
}

/// Largest `s` reached by the constructions here: `⌊(q+4)/2⌋`, raised to 4
/// for q ≥ 3 (pairs of the substrong family) and capped at 3 for q = 2.
pub fn max_guaranteed_s(q: u32) -> usize {
    if q == 2 {
        3
    } else {
        (((q + 4) / 2) as usize).max(4)
    }
}

/// A strongly orthogonal family of `s − 2` flags.
pub fn construct_family(f: &Field, s: usize) -> Result<FamilySpec> {
    let q = f.order();
    let out_of_range = |reason: &str| Error::SOutOfRange {
        q,
        s,
        reason: reason.to_string(),
    };
    match s {
        0..=2 => Err(out_of_range("s must be at least 3")),
        3 => Ok(substrong_family(f).truncate(1)),
        4 if q == 2 => Err(out_of_range(
            "a strongly orthogonal family has at most q - 1 members, so OOA(4,4,2,2) does not exist",
        )),
        4 => Ok(substrong_family(f).truncate(2)),
        _ => {
            let set = select_s(f);
            if s - 2 > set.len() {
                return Err(out_of_range(&format!(
                    "the constructions reach s = {} for this q",
                    max_guaranteed_s(q)
                )));
            }
            big_family(f, &set[..s - 2])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(q: u64) -> Field {
        Field::new(q).unwrap()
    }

    fn idx(set: &[Elem]) -> Vec<u32> {
        set.iter().map(|e| e.index()).collect()
    }

    #[test]
    fn substrong_small_cases() {
        let f2 = field(2);
        let fam = substrong_family(&f2);
        assert_eq!(fam.data.len(), 1);
        assert_eq!(idx(&fam.data[0].entries()), [1, 1, 0, 1]);
        assert_eq!(fam.data[0].beta(), Elem::ONE);

        let f3 = field(3);
        let fam = substrong_family(&f3);
        assert_eq!(
            fam.construction,
            Construction::Substrong {
                alpha: f3.element(2).unwrap()
            }
        );
        let got: Vec<(Vec<u32>, u32)> = fam
            .data
            .iter()
            .map(|d| (idx(&d.entries()), d.beta().index()))
            .collect();
        assert_eq!(got, vec![(vec![2, 1, 0, 2], 1), (vec![1, 1, 0, 1], 2)]);
    }

    #[test]
    fn substrong_gf4() {
        let f = field(4);
        let fam = substrong_family(&f);
        let x = f.element(2).unwrap();
        assert_eq!(fam.construction, Construction::Substrong { alpha: x });
        assert_eq!(fam.data.len(), 3);
        for (d, i) in fam.data.iter().zip(f.units()) {
            assert_eq!(d.beta(), i);
            let ai = f.mul(x, i);
            assert_eq!(d.entries(), [f.inv(ai).unwrap(), Elem::ONE, Elem::ZERO, ai]);
        }
    }

    #[test]
    fn big_family_validation() {
        let f5 = field(5);
        let e = |i| f5.element(i).unwrap();
        assert_eq!(
            big_family(&f5, &[e(1), e(4)]).unwrap_err(),
            Error::InvalidS {
                i: 1,
                j: 4,
                rule: SetRule::SumIsZero
            }
        );
        assert_eq!(
            big_family(&f5, &[e(3), e(2)]).unwrap_err(),
            Error::InvalidS {
                i: 2,
                j: 3,
                rule: SetRule::SumIsZero
            }
        );
        let f7 = field(7);
        let e7 = |i| f7.element(i).unwrap();
        // 2·3 = 6 = −1 in GF(7).
        assert_eq!(
            big_family(&f7, &[e7(2), e7(3)]).unwrap_err(),
            Error::InvalidS {
                i: 2,
                j: 3,
                rule: SetRule::ProductIsMinusOne
            }
        );
        assert!(matches!(
            big_family(&f7, &[e7(0), e7(1)]).unwrap_err(),
            Error::InvalidS {
                rule: SetRule::ContainsZero,
                ..
            }
        ));
        let fam = big_family(&f7, &[e7(5), e7(1), e7(3)]).unwrap();
        assert_eq!(fam.s, 5);
        assert_eq!(
            fam.construction,
            Construction::Big {
                set: vec![e7(1), e7(3), e7(5)]
            }
        );
        assert_eq!(idx(&fam.data[1].entries()), [3, 1, 0, 5]);
    }

    #[test]
    fn selected_sets() {
        assert_eq!(idx(&select_s(&field(4))), [1, 2]);
        assert_eq!(idx(&select_s(&field(7))), [1, 3, 5]);
        assert_eq!(idx(&select_s(&field(5))), [1, 2]);
        let f9 = field(9);
        assert_eq!(f9.generator(), f9.element(4).unwrap());
        assert_eq!(select_s(&f9).len(), 4);
    }

    #[test]
    fn selected_sets_are_valid_and_full_size() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 32] {
            let f = field(q);
            let set = select_s(&f);
            let expected = if q % 2 == 0 { q / 2 } else { (q - 1) / 2 };
            assert_eq!(set.len() as u64, expected, "q = {q}");
            validate_set(&f, &set).unwrap();
            if q % 2 == 0 {
                // In characteristic 2 the rules collapse to ij ≠ 1.
                for (n, &i) in set.iter().enumerate() {
                    for &j in &set[n + 1..] {
                        assert_ne!(f.mul(i, j), Elem::ONE);
                    }
                }
            }
        }
    }

    #[test]
    fn dispatcher() {
        assert!(matches!(
            construct_family(&field(2), 4),
            Err(Error::SOutOfRange { .. })
        ));
        assert!(matches!(
            construct_family(&field(5), 2),
            Err(Error::SOutOfRange { .. })
        ));
        assert!(matches!(
            construct_family(&field(7), 6),
            Err(Error::SOutOfRange { .. })
        ));

        let f3 = field(3);
        let pair = construct_family(&f3, 4).unwrap();
        assert_eq!(pair.data, substrong_family(&f3).data);
        assert_eq!(pair.construction.tag(), "substrong");

        let fam = construct_family(&field(9), 6).unwrap();
        assert_eq!(fam.construction.tag(), "big");
        assert_eq!(fam.data.len(), 4);
        assert_eq!(max_guaranteed_s(9), 6);

        let fam = construct_family(&field(8), 5).unwrap();
        assert_eq!(fam.data.len(), 3);
        assert_eq!(
            fam.construction,
            Construction::Big {
                set: select_s(&field(8))[..3].to_vec()
            }
        );
    }

    #[test]
    fn max_s() {
        let got: Vec<usize> = [2, 3, 4, 5, 7, 8, 9]
            .iter()
            .map(|&q| max_guaranteed_s(q))
            .collect();
        assert_eq!(got, [3, 4, 4, 4, 5, 6, 6]);
    }
}
