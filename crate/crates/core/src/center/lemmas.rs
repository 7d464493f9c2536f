use std::sync::Arc;

use crate::fields::{Fp, Matrix, PrimeField, UniPoly};
use crate::pbw::{Algebra, Gen, PbwMonomial};

use super::MPoly;

/// `(ad e)^k (f^k)` for `1 <= k < p`.
#[derive(Clone, Debug)]
pub struct AdekReport {
    pub p: u32,
    /// `(k, nonzero, coefficient of h^k, k! mod p)`.
    pub rows: Vec<(u32, bool, Fp, Fp)>,
}

impl AdekReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|(_, nz, c, want)| *nz && c == want)
    }
}

pub fn adek_fk_check(alg: &Arc<Algebra>) -> AdekReport {
    let p = alg.p();
    let f = alg.field();
    let mut rows = Vec::new();
    let mut fact = Fp(1);
    for k in 1..p {
        fact = f.fmul(fact, f.elem(k as i64));
        let fk = alg.word_powers(&[(Gen::F, k as u16)]);
        let img = fk.ad_pow(Gen::E, k);
        let hk = PbwMonomial::ONE.with_exp(Gen::H, k as u16);
        rows.push((k, !img.is_zero(), img.coeff(&hk), fact));
    }
    AdekReport { p, rows }
}

/// Verifies that `(g_0, ..., g_m) -> sum_i g_i(s(s+2)) (s^p - s)^i` with
/// `deg g_i < p` is injective.
pub fn boyarchenko_lemma_check(p: u32, m: u32) -> bool {
    let f = PrimeField::new(p as u64).expect("odd prime");
    let s = UniPoly::var(f);
    let q = s.mul(&s.add(&UniPoly::constant(f, f.elem(2))));
    let art = s.pow(p).sub(&s);
    let mut columns: Vec<Vec<Fp>> = Vec::new();
    for i in 0..=m {
        let ai = art.pow(i);
        for j in 0..p {
            columns.push(q.pow(j).mul(&ai).coeffs().to_vec());
        }
    }
    let rows = columns.iter().map(Vec::len).max().unwrap_or(0);
    for c in &mut columns {
        c.resize(rows, Fp(0));
    }
    let mat = Matrix::from_columns(f, rows, &columns);
    mat.rank() == ((m + 1) * p) as usize
}

/// Jacobian analysis of `y^p - x1 x2^2 - x3 x4^2 + x5 x2 x4`.
#[derive(Clone, Debug)]
pub struct SingularLocusReport {
    /// Partial derivatives with respect to `x1..x5, y`.
    pub partials: Vec<MPoly>,
    /// `x2^2` and `x4^2` occur (up to sign) among the partials.
    pub squares_in_ideal: bool,
    /// Every partial lies in the ideal `(x2, x4)`.
    pub partials_in_x2_x4: bool,
}

impl SingularLocusReport {
    /// The singular locus is exactly `{x2 = x4 = 0}`.
    pub fn locus_is_x2_x4(&self) -> bool {
        self.squares_in_ideal && self.partials_in_x2_x4
    }

    pub fn is_singular_at(&self, point: &[Fp]) -> bool {
        let f = self.partials[0].field();
        self.partials.iter().all(|d| d.eval(&f, point).0 == 0)
    }
}

pub fn presentation_polynomial(p: u32) -> MPoly {
    let f = PrimeField::new(p as u64).expect("odd prime");
    let v = |i| MPoly::var(f, 6, i);
    v(5).pow(p)
        .sub(&v(0).mul(&v(1).pow(2)))
        .sub(&v(2).mul(&v(3).pow(2)))
        .add(&v(4).mul(&v(1)).mul(&v(3)))
}

pub fn singular_locus_check(p: u32) -> SingularLocusReport {
    let poly = presentation_polynomial(p);
    let partials: Vec<MPoly> = (0..6).map(|i| poly.derivative(i)).collect();
    let f = poly.field();
    let unit = |i: usize| {
        let mut e = vec![0; 6];
        e[i] = 2;
        MPoly::term(f, 6, e, Fp(1))
    };
    let neg = f.elem(-1);
    let squares_in_ideal = partials[0] == unit(1).scale(neg) && partials[2] == unit(3).scale(neg);
    let gens = [vec![0, 1, 0, 0, 0, 0], vec![0, 0, 0, 1, 0, 0]];
    let partials_in_x2_x4 = partials.iter().all(|d| d.in_monomial_ideal(&gens));
    SingularLocusReport {
        partials,
        squares_in_ideal,
        partials_in_x2_x4,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::casimir::CasimirPoly;

    #[test]
    fn adek_small_primes() {
        for p in [3u64, 5, 7] {
            let f = PrimeField::new(p).unwrap();
            let a = Algebra::standard(f, CasimirPoly::zero(f));
            let r = adek_fk_check(&a);
            assert!(r.passed(), "{r:?}");
            if p >= 5 {
                assert_eq!(r.rows[1].2, Fp(2));
            }
        }
    }

    #[test]
    fn boyarchenko_examples() {
        assert!(boyarchenko_lemma_check(3, 1));
        assert!(boyarchenko_lemma_check(5, 2));
        assert!(boyarchenko_lemma_check(3, 0));
    }

    #[test]
    fn singular_locus() {
        let r = singular_locus_check(5);
        assert!(r.partials[5].is_zero());
        assert!(r.locus_is_x2_x4());
        assert!(r.is_singular_at(&[Fp(1), Fp(0), Fp(1), Fp(0), Fp(0), Fp(0)]));
        assert!(!r.is_singular_at(&[Fp(1), Fp(1), Fp(1), Fp(0), Fp(0), Fp(0)]));
    }
}
