use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::center::CenterGenSet;
use crate::fields::Field;
use crate::pbw::{random_element, NcPoly};

use super::{commutes_in, Induced};

/// Matrix check of engine products in the regular representation of a
/// fiber: `M_a M_b = M_{ab}` and `M_g` commuting with the generators for
/// each central generator `g`.
#[derive(Clone, Debug, Default)]
pub struct OracleReport {
    pub identities: usize,
    pub identity_failures: Vec<String>,
    /// Names of central generators whose matrices fail to commute.
    pub noncentral: Vec<&'static str>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.identity_failures.is_empty() && self.noncentral.is_empty()
    }
}

pub fn oracle_agreement<F: Field>(
    fiber: &Induced<F>,
    set: &CenterGenSet,
    n_identities: usize,
    seed: u64,
) -> OracleReport {
    let alg = fiber.algebra();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = OracleReport::default();
    for _ in 0..n_identities {
        let a = random_element(alg, &mut rng, 3, 2);
        let b = random_element(alg, &mut rng, 3, 2);
        let c: NcPoly = &a * &b;
        report.identities += 1;
        let lhs = fiber.element_matrix(&a).mul(&fiber.element_matrix(&b));
        if lhs != fiber.element_matrix(&c) {
            report
                .identity_failures
                .push(format!("({a}) * ({b}) = {c}"));
        }
    }
    for (g, name) in set.all().into_iter().zip(CenterGenSet::NAMES) {
        if !commutes_in(fiber, g) {
            report.noncentral.push(name);
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::casimir::CasimirPoly;
    use crate::center::{center_algebra, LiftBounds};
    use crate::fields::PrimeField;
    use crate::repn::{restricted_fiber, Character};

    #[test]
    fn fiber_agrees_with_engine_p3() {
        let f = PrimeField::new(3).unwrap();
        let alg = center_algebra(f, CasimirPoly::from_ints(f, &[0, 1]));
        let set = CenterGenSet::build(&alg, &LiftBounds::for_prime(3)).unwrap();
        let fiber = restricted_fiber(&set, &Character::zero(&f), &f).unwrap();
        let r = oracle_agreement(&fiber, &set, 5, 11);
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.identities, 5);
    }
}
