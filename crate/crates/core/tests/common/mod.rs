#![allow(dead_code)]

use std::path::PathBuf;

use rand::rngs::StdRng;
use rand::Rng;
use sudoku_ooa::strong::FlagData;
use sudoku_ooa::sudoku::{self, Flag, Grid};
use sudoku_ooa::Field;

pub fn field(q: u64) -> Field {
    Field::new(q).unwrap()
}

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

pub fn fixture(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).unwrap()
}

pub fn datum(f: &Field, [a, b, c, d, beta]: [u32; 5]) -> FlagData {
    let e = |i: u32| f.element(i as u64).unwrap();
    FlagData::from_entries(f, [e(a), e(b), e(c), e(d)], e(beta)).unwrap()
}

/// Uniform over valid data, by rejection.
pub fn random_datum(f: &Field, rng: &mut StdRng) -> FlagData {
    loop {
        let mut e = || f.element(rng.gen_range(0..f.order() as u64)).unwrap();
        if let Ok(d) = FlagData::from_entries(f, [e(), e(), e(), e()], e()) {
            return d;
        }
    }
}

/// `m` random data whose solutions are mutually orthogonal.
pub fn random_family(f: &Field, m: usize, rng: &mut StdRng) -> Vec<FlagData> {
    'retry: loop {
        let data: Vec<FlagData> = (0..m).map(|_| random_datum(f, rng)).collect();
        for i in 0..m {
            for j in i + 1..m {
                let diff = data[i].gamma().sub(f, &data[j].gamma()).unwrap();
                if diff.det(f).unwrap().is_zero() {
                    continue 'retry;
                }
            }
        }
        return data;
    }
}

pub fn grids_of(f: &Field, data: &[FlagData]) -> Vec<Grid> {
    data.iter()
        .map(|d| sudoku::generate(f, &Flag::from_data(f, d)).unwrap())
        .collect()
}

/// Every valid datum over `f`, in canonical order.
pub fn all_data(f: &Field) -> Vec<FlagData> {
    let q = f.order() as u64;
    let mut out = Vec::new();
    for m in 0..q.pow(5) {
        let digit = |k: u32| f.element(m / q.pow(k) % q).unwrap();
        let entries = [digit(4), digit(3), digit(2), digit(1)];
        if let Ok(d) = FlagData::from_entries(f, entries, digit(0)) {
            out.push(d);
        }
    }
    out
}
