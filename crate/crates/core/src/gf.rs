//! Exact arithmetic in GF(p^k).
//!
//! Elements are identified with their canonical index: the coefficient
//! vector `(c_0, …, c_{k-1})` of the residue polynomial, read as a base-p
//! number. Index 0 is the zero element and index 1 is the identity, and the
//! induced total order is the one every construction in this crate uses to
//! break ties.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 16;

/// A field element, stored as its canonical index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Elem(u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Builds an element from an index the caller knows is below q.
pub(crate) fn elem_unchecked(index: u32) -> Elem {
    Elem(index)
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The finite field of order `q = p^k`.
///
/// Multiplication goes through discrete log tables built from the smallest
/// primitive element; addition is digit-wise mod p.
#[derive(Clone, PartialEq, Eq)]
pub struct Field {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    generator: Elem,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("k", &self.k)
            .field("modulus", &self.modulus)
            .finish()
    }
}

/// Splits `q` into `(p, k)` with `q = p^k`, if possible.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let mut rest = q;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p as u32, k))
}

// Dense polynomials over Z_p, constant term first, no trailing zeros.
mod poly {
    pub fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r = trim(a.to_vec());
        let dm = m.len() - 1;
        let lead_inv = inv_mod(m[dm], p);
        while r.len() > dm {
            let dr = r.len() - 1;
            let factor = (r[dr] as u64 * lead_inv as u64 % p as u64) as u32;
            for (i, &mc) in m.iter().enumerate() {
                let idx = dr - dm + i;
                let sub = (factor as u64 * mc as u64 % p as u64) as u32;
                r[idx] = (r[idx] + p - sub) % p;
            }
            r = trim(r);
        }
        r
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        trim(out.into_iter().map(|c| c as u32).collect())
    }

    pub fn inv_mod(a: u32, p: u32) -> u32 {
        // p is prime, so a^(p-2) is the inverse.
        let mut result = 1u64;
        let mut base = a as u64 % p as u64;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = result * base % p as u64;
            }
            base = base * base % p as u64;
            e >>= 1;
        }
        result as u32
    }

    /// Monic polynomial of degree `deg` whose lower coefficients are the
    /// base-p digits of `n`.
    pub fn monic_from_index(n: u64, deg: usize, p: u32) -> Vec<u32> {
        let mut coeffs = Vec::with_capacity(deg + 1);
        let mut n = n;
        for _ in 0..deg {
            coeffs.push((n % p as u64) as u32);
            n /= p as u64;
        }
        coeffs.push(1);
        coeffs
    }

    pub fn is_irreducible(m: &[u32], p: u32) -> bool {
        let k = m.len() - 1;
        for deg in 1..=k / 2 {
            let count = (p as u64).pow(deg as u32);
            for n in 0..count {
                let d = monic_from_index(n, deg, p);
                if rem(m, &d, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

impl Field {
    /// Builds GF(q). For `k ≥ 2` the modulus is the monic irreducible
    /// polynomial of degree k whose lower coefficient vector has the
    /// smallest canonical index.
    pub fn new(q: u64) -> Result<Field> {
        let (p, k) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        if q > MAX_ORDER {
            return Err(Error::FieldTooLarge(q));
        }
        let modulus = if k == 1 {
            vec![0, 1]
        } else {
            let count = (p as u64).pow(k);
            (0..count)
                .map(|n| poly::monic_from_index(n, k as usize, p))
                .find(|m| poly::is_irreducible(m, p))
                .expect("an irreducible polynomial of every degree exists")
        };
        let q = q as u32;
        let mut field = Field {
            p,
            k,
            q,
            modulus,
            generator: Elem::ONE,
            exp: Vec::new(),
            log: Vec::new(),
        };
        field.generator = (1..q)
            .map(Elem)
            .find(|&g| field.slow_order(g) == q - 1)
            .expect("the multiplicative group is cyclic");
        field.build_tables();
        Ok(field)
    }

    fn slow_mul(&self, a: Elem, b: Elem) -> Elem {
        let pa = poly::trim(self.coeffs(a));
        let pb = poly::trim(self.coeffs(b));
        let prod = poly::mul(&pa, &pb, self.p);
        let r = if self.k == 1 {
            prod.first().map(|&c| vec![c % self.p]).unwrap_or_default()
        } else {
            poly::rem(&prod, &self.modulus, self.p)
        };
        self.from_coeffs(&r)
    }

    fn slow_order(&self, g: Elem) -> u32 {
        let mut x = g;
        let mut n = 1;
        while x != Elem::ONE {
            x = self.slow_mul(x, g);
            n += 1;
        }
        n
    }

    fn build_tables(&mut self) {
        let n = (self.q - 1) as usize;
        let mut exp = vec![0u32; n];
        let mut log = vec![0u32; self.q as usize];
        let mut x = Elem::ONE;
        for (e, slot) in exp.iter_mut().enumerate() {
            *slot = x.0;
            log[x.0 as usize] = e as u32;
            x = self.slow_mul(x, self.generator);
        }
        self.exp = exp;
        self.log = log;
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Modulus coefficients, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The primitive element of smallest canonical index.
    pub fn generator(&self) -> Elem {
        self.generator
    }

    /// The element with canonical index `index`.
    pub fn element(&self, index: u64) -> Result<Elem> {
        if index < self.q as u64 {
            Ok(Elem(index as u32))
        } else {
            Err(Error::ElementOutOfRange { index, q: self.q })
        }
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.q).map(Elem)
    }

    /// Nonzero elements in canonical order.
    pub fn units(&self) -> impl Iterator<Item = Elem> {
        (1..self.q).map(Elem)
    }

    /// Embeds an integer via the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.p as i64) as u32)
    }

    pub fn coeffs(&self, a: Elem) -> Vec<u32> {
        let mut n = a.0;
        (0..self.k)
            .map(|_| {
                let c = n % self.p;
                n /= self.p;
                c
            })
            .collect()
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Elem {
        let mut idx = 0u32;
        for &c in coeffs.iter().take(self.k as usize).rev() {
            idx = idx * self.p + c % self.p;
        }
        Elem(idx)
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.k == 1 {
            return Elem((a.0 + b.0) % self.p);
        }
        let (mut x, mut y) = (a.0, b.0);
        let (mut out, mut place) = (0, 1);
        while x > 0 || y > 0 {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        Elem(out)
    }

    pub fn neg(&self, a: Elem) -> Elem {
        if self.k == 1 {
            return Elem((self.p - a.0) % self.p);
        }
        let mut x = a.0;
        let (mut out, mut place) = (0, 1);
        while x > 0 {
            out += ((self.p - x % self.p) % self.p) * place;
            x /= self.p;
            place *= self.p;
        }
        Elem(out)
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.is_zero() || b.is_zero() {
            return Elem::ZERO;
        }
        let n = self.q - 1;
        let e = (self.log[a.0 as usize] + self.log[b.0 as usize]) % n;
        Elem(self.exp[e as usize])
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.q - 1;
        let e = (n - self.log[a.0 as usize]) % n;
        Ok(Elem(self.exp[e as usize]))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e` for a possibly negative exponent; `0^0 = 1`.
    pub fn pow(&self, a: Elem, e: i64) -> Result<Elem> {
        if a.is_zero() {
            return match e {
                0 => Ok(Elem::ONE),
                e if e > 0 => Ok(Elem::ZERO),
                _ => Err(Error::DivisionByZero),
            };
        }
        let n = (self.q - 1) as i64;
        let l = self.log[a.0 as usize] as i64;
        Ok(Elem(self.exp[(l * e).rem_euclid(n) as usize]))
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: Elem) -> Result<u32> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.q - 1;
        let l = self.log[a.0 as usize];
        Ok(n / gcd(n, l))
    }

    /// Human-readable modulus, e.g. `x^2+x+1`.
    pub fn modulus_string(&self) -> String {
        let mut terms = Vec::new();
        for (deg, &c) in self.modulus.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let coeff = if c == 1 && deg > 0 {
                String::new()
            } else {
                c.to_string()
            };
            let term = match deg {
                0 => coeff,
                1 => format!("{coeff}x"),
                _ => format!("{coeff}x^{deg}"),
            };
            terms.push(term);
        }
        terms.join("+")
    }
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    const ORDERS: [u64; 7] = [2, 3, 4, 5, 7, 8, 9];

    #[test]
    fn prime_fields() {
        let f = Field::new(3).unwrap();
        assert_eq!((f.characteristic(), f.degree()), (3, 1));
        assert_eq!(f.modulus(), &[0, 1]);
    }

    #[test]
    fn moduli() {
        assert_eq!(Field::new(4).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(Field::new(8).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(Field::new(9).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(Field::new(4).unwrap().modulus_string(), "x^2+x+1");
        assert_eq!(Field::new(16).unwrap().modulus(), &[1, 1, 0, 0, 1]);
    }

    #[test]
    fn rejects_non_prime_powers() {
        for q in [0, 1, 6, 10, 12, 15, 100] {
            assert_eq!(Field::new(q).unwrap_err(), Error::NotPrimePower(q));
        }
        assert_eq!(
            Field::new(1 << 17).unwrap_err(),
            Error::FieldTooLarge(1 << 17)
        );
    }

    #[test]
    fn small_arithmetic() {
        let f3 = Field::new(3).unwrap();
        assert_eq!(f3.inv(Elem(2)).unwrap(), Elem(2));
        let f7 = Field::new(7).unwrap();
        assert_eq!(f7.add(Elem(3), Elem(5)), Elem(1));
        // GF(4): x has index 2, x + 1 has index 3.
        let f4 = Field::new(4).unwrap();
        assert_eq!(f4.mul(Elem(2), Elem(2)), Elem(3));
        assert_eq!(f4.inv(Elem(2)).unwrap(), Elem(3));
        assert_eq!(f4.inv(Elem::ZERO), Err(Error::DivisionByZero));
        assert_eq!(f4.div(Elem(1), Elem::ZERO), Err(Error::DivisionByZero));
    }

    #[test]
    fn generators() {
        assert_eq!(Field::new(2).unwrap().generator(), Elem(1));
        assert_eq!(Field::new(7).unwrap().generator(), Elem(3));
        // x + 1 in GF(9) = index 1 + 3.
        assert_eq!(Field::new(9).unwrap().generator(), Elem(4));
        for q in ORDERS {
            let f = Field::new(q).unwrap();
            assert_eq!(f.multiplicative_order(f.generator()).unwrap(), q as u32 - 1);
        }
    }

    #[test]
    fn index_round_trip() {
        for q in ORDERS {
            let f = Field::new(q).unwrap();
            for e in f.elements() {
                assert_eq!(f.from_coeffs(&f.coeffs(e)), e);
                assert_eq!(f.element(e.index() as u64).unwrap(), e);
            }
            assert!(f.element(q).is_err());
        }
    }

    #[test]
    fn deterministic() {
        for q in ORDERS {
            assert_eq!(Field::new(q).unwrap(), Field::new(q).unwrap());
        }
    }

    #[test]
    fn table_multiplication_matches_polynomial_reduction() {
        for q in ORDERS {
            let f = Field::new(q).unwrap();
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), f.slow_mul(a, b));
                }
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive() {
        for q in ORDERS {
            let f = Field::new(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), Elem::ZERO);
                assert_eq!(f.add(a, Elem::ZERO), a);
                assert_eq!(f.mul(a, Elem::ONE), a);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), Elem::ONE);
                }
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.add(f.sub(a, b), b), a);
                    for c in f.elements() {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn powers() {
        let f = Field::new(7).unwrap();
        assert_eq!(f.pow(Elem(3), 5).unwrap(), Elem(5));
        assert_eq!(f.pow(Elem(3), -1).unwrap(), Elem(5));
        assert_eq!(f.pow(Elem::ZERO, 0).unwrap(), Elem::ONE);
        assert!(f.pow(Elem::ZERO, -1).is_err());
    }
}
