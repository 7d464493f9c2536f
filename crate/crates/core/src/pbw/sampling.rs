use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{parse_element, Algebra, Gen, NcPoly, PbwMonomial};

/// A monomial with every exponent at most `max_exp`.
pub fn random_monomial<R: Rng + ?Sized>(rng: &mut R, max_exp: u16) -> PbwMonomial {
    PbwMonomial([(); 5].map(|_| rng.gen_range(0..=max_exp)))
}

/// A sum of up to `max_terms` random monomials with nonzero coefficients.
pub fn random_element<R: Rng + ?Sized>(
    alg: &Arc<Algebra>,
    rng: &mut R,
    max_terms: usize,
    max_exp: u16,
) -> NcPoly {
    let p = alg.p() as i64;
    let n = rng.gen_range(1..=max_terms);
    let terms: Vec<_> = (0..n)
        .map(|_| (random_monomial(rng, max_exp), alg.elem(rng.gen_range(1..p))))
        .collect();
    NcPoly::from_monomials(alg.clone(), terms)
}

#[derive(Clone, Debug, Default)]
pub struct SampleReport {
    pub samples: usize,
    pub failures: Vec<String>,
}

impl SampleReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `(ab)c = a(bc)` on random triples with exponents at most 2. The products
/// are formed in a copy of `alg` whose cap bounds every total degree that
/// can occur.
pub fn associativity_check(alg: &Arc<Algebra>, n_samples: usize, seed: u64) -> SampleReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SampleReport::default();
    let max_exp = 2u16;
    let deg_z = alg.deformation().degree().unwrap_or(0).max(1) as u32;
    let cap = alg.exp_cap().max(3 * 5 * max_exp as u32 * deg_z);
    let alg = &Algebra::with_cap(alg.field(), alg.deformation().clone(), *alg.order(), cap);
    for _ in 0..n_samples {
        let [a, b, c] = [(); 3].map(|_| random_element(alg, &mut rng, 2, max_exp));
        let l = a.try_mul(&b).and_then(|ab| ab.try_mul(&c));
        let r = b.try_mul(&c).and_then(|bc| a.try_mul(&bc));
        report.samples += 1;
        match (l, r) {
            (Ok(l), Ok(r)) if l == r => {}
            (l, r) => report
                .failures
                .push(format!("a = {a}, b = {b}, c = {c}: {l:?} vs {r:?}")),
        }
    }
    report
}

/// Normal forms are fixed points: re-multiplying the ordered factors of
/// each monomial and re-parsing the printed form both return the element.
pub fn idempotence_check(alg: &Arc<Algebra>, n_samples: usize, seed: u64) -> SampleReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SampleReport::default();
    let order = alg.order();
    for _ in 0..n_samples {
        let a = random_element(alg, &mut rng, 3, 3);
        let mut rebuilt = NcPoly::zero(alg.clone());
        for (m, c) in a.terms() {
            rebuilt = &rebuilt + &alg.word_powers(&m.factors(order)).scale(*c);
        }
        let reparsed = parse_element(alg, &a.to_string());
        report.samples += 1;
        if rebuilt != a || reparsed.as_ref() != Ok(&a) {
            report
                .failures
                .push(format!("{a}: rebuilt {rebuilt}, reparsed {reparsed:?}"));
        }
    }
    report
}

/// Words of random generators, for oracle checks.
pub fn random_word<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Vec<Gen> {
    (0..len)
        .map(|_| Gen::from_index(rng.gen_range(0..5)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::casimir::CasimirPoly;
    use crate::fields::PrimeField;

    #[test]
    fn small_samples_pass() {
        let f = PrimeField::new(5).unwrap();
        let a = Algebra::standard(f, CasimirPoly::from_ints(f, &[1, 0, 1]));
        assert!(associativity_check(&a, 10, 3).passed());
        let r = idempotence_check(&a, 10, 3);
        assert!(r.passed(), "{r:?}");
    }
}
