//! Exact arithmetic over prime fields and their explicit extensions, plus
//! univariate polynomials and dense linear algebra over those fields.

mod ext;
mod matrix;
mod poly;

pub use ext::{artin_schreier_ext, ExtElem, ExtField};
pub use matrix::Matrix;
pub use poly::UniPoly;

use std::fmt;
use std::hash::Hash;

use rand::Rng;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("modulus {0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("Artin-Schreier constant is zero: take lambda in F_p directly")]
    ZeroArtinSchreierConstant,
    #[error("modulus polynomial is not monic of positive degree")]
    BadModulus,
    #[error("modulus polynomial is reducible over F_{0}")]
    ReducibleModulus(u32),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

/// A finite field given by an explicit descriptor. Elements are plain values;
/// all arithmetic goes through the descriptor.
pub trait Field: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync;

    fn characteristic(&self) -> u32;
    /// Degree over the prime field.
    fn degree(&self) -> usize;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// The `index`-th element in a fixed enumeration (`0 <= index < order`).
    fn element(&self, index: u64) -> Self::Elem;
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;
    fn format(&self, a: &Self::Elem) -> String;

    fn from_fp(&self, v: Fp) -> Self::Elem {
        self.from_i64(v.0 as i64)
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn order(&self) -> u64 {
        (self.characteristic() as u64).pow(self.degree() as u32)
    }

    fn pow(&self, a: &Self::Elem, mut n: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            n >>= 1;
        }
        acc
    }

    /// The unique `b` with `b^p = a` (Frobenius is bijective on a finite field).
    fn pth_root(&self, a: &Self::Elem) -> Self::Elem {
        let p = self.characteristic() as u64;
        let mut r = a.clone();
        for _ in 1..self.degree() {
            r = self.pow(&r, p);
        }
        r
    }

    fn elements(&self) -> Vec<Self::Elem> {
        (0..self.order()).map(|i| self.element(i)).collect()
    }
}

/// Residue class in `[0, p)`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fp(pub u32);

impl Fp {
    pub const ZERO: Fp = Fp(0);
    pub fn value(self) -> u32 {
        self.0
    }
}

/// The prime field `F_p`, `p` odd.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if p <= 2 || p > u32::MAX as u64 / 2 || !is_prime(p) {
            return Err(FieldError::NotOddPrime(p));
        }
        Ok(PrimeField { p: p as u32 })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn elem(&self, v: i64) -> Fp {
        Fp(v.rem_euclid(self.p as i64) as u32)
    }

    #[inline]
    pub fn fadd(&self, a: Fp, b: Fp) -> Fp {
        let s = a.0 + b.0;
        Fp(if s >= self.p { s - self.p } else { s })
    }

    #[inline]
    pub fn fsub(&self, a: Fp, b: Fp) -> Fp {
        Fp(if a.0 >= b.0 {
            a.0 - b.0
        } else {
            a.0 + self.p - b.0
        })
    }

    #[inline]
    pub fn fmul(&self, a: Fp, b: Fp) -> Fp {
        Fp(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32)
    }

    #[inline]
    pub fn fneg(&self, a: Fp) -> Fp {
        Fp(if a.0 == 0 { 0 } else { self.p - a.0 })
    }

    pub fn finv(&self, a: Fp) -> Option<Fp> {
        if a.0 == 0 {
            return None;
        }
        // Fermat: a^(p-2)
        Some(self.pow(&a, self.p as u64 - 2))
    }

    /// Representative in `(-p/2, p/2]`, used for printing.
    pub fn symmetric(&self, a: Fp) -> i64 {
        let v = a.0 as i64;
        if v > self.p as i64 / 2 {
            v - self.p as i64
        } else {
            v
        }
    }
}

impl Field for PrimeField {
    type Elem = Fp;

    fn characteristic(&self) -> u32 {
        self.p
    }
    fn degree(&self) -> usize {
        1
    }
    fn zero(&self) -> Fp {
        Fp(0)
    }
    fn one(&self) -> Fp {
        Fp(1)
    }
    fn from_i64(&self, v: i64) -> Fp {
        self.elem(v)
    }
    fn add(&self, a: &Fp, b: &Fp) -> Fp {
        self.fadd(*a, *b)
    }
    fn sub(&self, a: &Fp, b: &Fp) -> Fp {
        self.fsub(*a, *b)
    }
    fn mul(&self, a: &Fp, b: &Fp) -> Fp {
        self.fmul(*a, *b)
    }
    fn neg(&self, a: &Fp) -> Fp {
        self.fneg(*a)
    }
    fn inv(&self, a: &Fp) -> Option<Fp> {
        self.finv(*a)
    }
    fn element(&self, index: u64) -> Fp {
        Fp((index % self.p as u64) as u32)
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Fp {
        Fp(rng.gen_range(0..self.p))
    }
    fn format(&self, a: &Fp) -> String {
        self.symmetric(*a).to_string()
    }
    fn is_zero(&self, a: &Fp) -> bool {
        a.0 == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn rejects_even_and_composite_moduli() {
        assert_eq!(PrimeField::new(2), Err(FieldError::NotOddPrime(2)));
        assert_eq!(PrimeField::new(9), Err(FieldError::NotOddPrime(9)));
        assert_eq!(PrimeField::new(1), Err(FieldError::NotOddPrime(1)));
        assert!(PrimeField::new(7).is_ok());
    }

    #[test]
    fn small_inverses() {
        let f3 = PrimeField::new(3).unwrap();
        assert_eq!(f3.finv(Fp(2)), Some(Fp(2)));
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(f5.finv(Fp(4)), Some(Fp(4)));
        let f7 = PrimeField::new(7).unwrap();
        // exhaustive search oracle
        let brute = (1..7).find(|b| (3 * b) % 7 == 1).unwrap();
        assert_eq!(brute, 5);
        assert_eq!(f7.finv(Fp(3)), Some(Fp(brute)));
        assert_eq!(f7.finv(Fp(0)), None);
    }

    #[test]
    fn field_axioms_sampled() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for p in [3u64, 5, 7, 101] {
            let f = PrimeField::new(p).unwrap();
            for _ in 0..200 {
                let (a, b, c) = (f.random(&mut rng), f.random(&mut rng), f.random(&mut rng));
                assert_eq!(
                    f.mul(&a, &f.add(&b, &c)),
                    f.add(&f.mul(&a, &b), &f.mul(&a, &c))
                );
                if a.0 != 0 {
                    assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), Fp(1));
                }
                // Frobenius is the identity on F_p
                assert_eq!(f.pow(&a, p), a);
            }
        }
    }
}
