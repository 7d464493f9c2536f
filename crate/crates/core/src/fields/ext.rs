use std::sync::Arc;

use rand::Rng;

use super::{Field, FieldError, Fp, PrimeField, UniPoly};

/// Element of `F_p[T]/(m(T))`: coefficients of `1, T, ..., T^(d-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtElem(pub Vec<u32>);

#[derive(Debug)]
struct ExtInner {
    base: PrimeField,
    /// Monic modulus, lowest degree first, length `d + 1`.
    modulus: Vec<u32>,
    degree: usize,
}

/// The quotient ring `F_p[T]/(m(T))` for an irreducible monic `m`.
#[derive(Clone, Debug)]
pub struct ExtField {
    inner: Arc<ExtInner>,
}

impl PartialEq for ExtField {
    fn eq(&self, other: &Self) -> bool {
        self.inner.base == other.inner.base && self.inner.modulus == other.inner.modulus
    }
}

impl Eq for ExtField {}

/// Irreducibility of a monic polynomial over `F_p` (Ben-Or test).
fn is_irreducible(base: PrimeField, m: &UniPoly<PrimeField>) -> bool {
    let d = match m.degree() {
        Some(d) if d >= 1 => d,
        _ => return false,
    };
    let p = base.p() as u64;
    let x = UniPoly::var(base);
    let mut xp = x.clone();
    for _ in 0..d / 2 {
        xp = powmod(&xp, p, m);
        let g = xp.sub(&x).gcd(m);
        if g.degree() != Some(0) {
            return false;
        }
    }
    true
}

/// Irreducibility by trial division against every monic polynomial of degree
/// at most `d/2`; returns `None` when that enumeration would be too large.
fn trial_division_irreducible(base: PrimeField, m: &UniPoly<PrimeField>) -> Option<bool> {
    let d = m.degree()?;
    let p = base.p() as u64;
    let mut budget: u64 = 0;
    for k in 1..=d / 2 {
        budget = budget.saturating_add(p.saturating_pow(k as u32));
    }
    if budget > 200_000 {
        return None;
    }
    for k in 1..=d / 2 {
        for idx in 0..p.pow(k as u32) {
            let mut coeffs = Vec::with_capacity(k + 1);
            let mut rest = idx;
            for _ in 0..k {
                coeffs.push(Fp((rest % p) as u32));
                rest /= p;
            }
            coeffs.push(Fp(1));
            let divisor = UniPoly::new(base, coeffs);
            if m.rem(&divisor).map(|r| r.is_zero()).unwrap_or(false) {
                return Some(false);
            }
        }
    }
    Some(true)
}

fn powmod(a: &UniPoly<PrimeField>, mut n: u64, m: &UniPoly<PrimeField>) -> UniPoly<PrimeField> {
    let f = *a.field();
    let mut base = a.rem(m).unwrap();
    let mut acc = UniPoly::constant(f, Fp(1));
    while n > 0 {
        if n & 1 == 1 {
            acc = acc.mul(&base).rem(m).unwrap();
        }
        base = base.mul(&base).rem(m).unwrap();
        n >>= 1;
    }
    acc
}

impl ExtField {
    /// Builds `F_p[T]/(m)`. The modulus must be monic and irreducible; this is
    /// verified (Ben-Or, and trial division for small degrees).
    pub fn new(base: PrimeField, modulus: &[i64]) -> Result<Self, FieldError> {
        let m = UniPoly::from_ints(base, modulus);
        let d = m.degree().ok_or(FieldError::BadModulus)?;
        if d == 0 || m.leading() != Some(&Fp(1)) {
            return Err(FieldError::BadModulus);
        }
        let irreducible = match trial_division_irreducible(base, &m) {
            Some(t) => t && is_irreducible(base, &m),
            None => is_irreducible(base, &m),
        };
        if !irreducible {
            return Err(FieldError::ReducibleModulus(base.p()));
        }
        Ok(ExtField {
            inner: Arc::new(ExtInner {
                base,
                modulus: m.coeffs().iter().map(|c| c.0).collect(),
                degree: d,
            }),
        })
    }

    /// `F_p` viewed as a degree-one extension (modulus `T`).
    pub fn trivial(base: PrimeField) -> Self {
        ExtField::new(base, &[0, 1]).expect("linear modulus is irreducible")
    }

    /// Smallest (in enumeration order) irreducible monic modulus of degree `d`.
    pub fn of_degree(base: PrimeField, d: usize) -> Self {
        let p = base.p() as u64;
        for idx in 0..p.pow(d as u32) {
            let mut coeffs = Vec::with_capacity(d + 1);
            let mut rest = idx;
            for _ in 0..d {
                coeffs.push((rest % p) as i64);
                rest /= p;
            }
            coeffs.push(1);
            if let Ok(f) = ExtField::new(base, &coeffs) {
                return f;
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    pub fn base(&self) -> PrimeField {
        self.inner.base
    }

    pub fn modulus(&self) -> UniPoly<PrimeField> {
        UniPoly::new(
            self.inner.base,
            self.inner.modulus.iter().map(|&c| Fp(c)).collect(),
        )
    }

    /// The class of `T`.
    pub fn generator(&self) -> ExtElem {
        let mut c = vec![0; self.inner.degree];
        if self.inner.degree == 1 {
            // T = -m0 in a degree-one quotient
            c[0] = self.inner.base.fneg(Fp(self.inner.modulus[0])).0;
        } else {
            c[1] = 1;
        }
        ExtElem(c)
    }

    pub fn embed(&self, a: Fp) -> ExtElem {
        let mut c = vec![0; self.inner.degree];
        c[0] = a.0;
        ExtElem(c)
    }

    /// `Some(a)` when the element lies in the prime field.
    pub fn to_prime(&self, a: &ExtElem) -> Option<Fp> {
        if a.0[1..].iter().all(|&c| c == 0) {
            Some(Fp(a.0[0]))
        } else {
            None
        }
    }
}

impl Field for ExtField {
    type Elem = ExtElem;

    fn characteristic(&self) -> u32 {
        self.inner.base.p()
    }

    fn degree(&self) -> usize {
        self.inner.degree
    }

    fn zero(&self) -> ExtElem {
        ExtElem(vec![0; self.inner.degree])
    }

    fn one(&self) -> ExtElem {
        self.embed(Fp(1))
    }

    fn from_i64(&self, v: i64) -> ExtElem {
        self.embed(self.inner.base.elem(v))
    }

    fn add(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let f = self.inner.base;
        ExtElem(
            a.0.iter()
                .zip(&b.0)
                .map(|(&x, &y)| f.fadd(Fp(x), Fp(y)).0)
                .collect(),
        )
    }

    fn sub(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let f = self.inner.base;
        ExtElem(
            a.0.iter()
                .zip(&b.0)
                .map(|(&x, &y)| f.fsub(Fp(x), Fp(y)).0)
                .collect(),
        )
    }

    fn neg(&self, a: &ExtElem) -> ExtElem {
        let f = self.inner.base;
        ExtElem(a.0.iter().map(|&x| f.fneg(Fp(x)).0).collect())
    }

    fn mul(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let d = self.inner.degree;
        let p = self.inner.base.p() as u64;
        if d == 1 {
            return ExtElem(vec![((a.0[0] as u64 * b.0[0] as u64) % p) as u32]);
        }
        let mut prod = vec![0u64; 2 * d - 1];
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        let m = &self.inner.modulus;
        for k in (d..2 * d - 1).rev() {
            let c = prod[k] % p;
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for i in 0..d {
                let sub = c * m[i] as u64 % p;
                prod[k - d + i] = (prod[k - d + i] + p - sub) % p;
            }
        }
        ExtElem(prod[..d].iter().map(|&c| (c % p) as u32).collect())
    }

    fn inv(&self, a: &ExtElem) -> Option<ExtElem> {
        if self.is_zero(a) {
            return None;
        }
        // a^(q-2) in the multiplicative group of order q-1
        let q = self.order();
        Some(self.pow(a, q - 2))
    }

    fn element(&self, index: u64) -> ExtElem {
        let p = self.inner.base.p() as u64;
        let mut rest = index;
        let c = (0..self.inner.degree)
            .map(|_| {
                let v = (rest % p) as u32;
                rest /= p;
                v
            })
            .collect();
        ExtElem(c)
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> ExtElem {
        let p = self.inner.base.p();
        ExtElem(
            (0..self.inner.degree)
                .map(|_| rng.gen_range(0..p))
                .collect(),
        )
    }

    fn format(&self, a: &ExtElem) -> String {
        if let Some(v) = self.to_prime(a) {
            return self.inner.base.symmetric(v).to_string();
        }
        let mut parts = Vec::new();
        for (i, &c) in a.0.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let cs = self.inner.base.symmetric(Fp(c));
            parts.push(match i {
                0 => cs.to_string(),
                1 => format!("{cs}*T"),
                _ => format!("{cs}*T^{i}"),
            });
        }
        parts.join("+")
    }

    fn is_zero(&self, a: &ExtElem) -> bool {
        a.0.iter().all(|&c| c == 0)
    }
}

/// `F_p[T]/(T^p - T - c)` together with `lambda`, the class of `T`, which
/// satisfies `lambda^p - lambda = c`.
pub fn artin_schreier_ext(p: u64, c: Fp) -> Result<(ExtField, ExtElem), FieldError> {
    let base = PrimeField::new(p)?;
    let c = base.elem(c.0 as i64);
    if c.0 == 0 {
        return Err(FieldError::ZeroArtinSchreierConstant);
    }
    let mut modulus = vec![0i64; p as usize + 1];
    modulus[0] = -(c.0 as i64);
    modulus[1] = -1;
    modulus[p as usize] = 1;
    let field = ExtField::new(base, &modulus)?;
    let lambda = field.generator();
    Ok((field, lambda))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn artin_schreier_root_equation() {
        for (p, c) in [(3u64, 1u32), (3, 2), (5, 1), (5, 3), (7, 1)] {
            let (f, lambda) = artin_schreier_ext(p, Fp(c)).unwrap();
            assert_eq!(f.degree(), p as usize);
            let lhs = f.sub(&f.pow(&lambda, p), &lambda);
            assert_eq!(lhs, f.embed(Fp(c)));
        }
    }

    #[test]
    fn zero_constant_is_rejected() {
        assert_eq!(
            artin_schreier_ext(3, Fp(0)).unwrap_err(),
            FieldError::ZeroArtinSchreierConstant
        );
    }

    #[test]
    fn t5_minus_t_minus_1_has_no_small_factors() {
        // independent oracle: no monic factor of degree 1 or 2 over F_5
        let f5 = PrimeField::new(5).unwrap();
        let m = UniPoly::from_ints(f5, &[-1, -1, 0, 0, 0, 1]);
        for a in 0..5i64 {
            assert!(!m.rem(&UniPoly::from_ints(f5, &[a, 1])).unwrap().is_zero());
            for b in 0..5i64 {
                assert!(!m
                    .rem(&UniPoly::from_ints(f5, &[a, b, 1]))
                    .unwrap()
                    .is_zero());
            }
        }
        assert!(artin_schreier_ext(5, Fp(1)).is_ok());
    }

    #[test]
    fn reducible_modulus_rejected() {
        let f3 = PrimeField::new(3).unwrap();
        // T^2 - 1 = (T-1)(T+1)
        assert_eq!(
            ExtField::new(f3, &[-1, 0, 1]).unwrap_err(),
            FieldError::ReducibleModulus(3)
        );
        assert_eq!(
            ExtField::new(f3, &[1, 2]).unwrap_err(),
            FieldError::BadModulus
        );
    }

    #[test]
    fn extension_field_axioms() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let (f, _) = artin_schreier_ext(3, Fp(1)).unwrap();
        for _ in 0..200 {
            let (a, b, c) = (f.random(&mut rng), f.random(&mut rng), f.random(&mut rng));
            assert_eq!(
                f.mul(&a, &f.add(&b, &c)),
                f.add(&f.mul(&a, &b), &f.mul(&a, &c))
            );
            assert_eq!(f.mul(&a, &f.mul(&b, &c)), f.mul(&f.mul(&a, &b), &c));
            if !f.is_zero(&a) {
                assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
            }
            assert_eq!(f.pow(&f.pth_root(&a), 3), a);
        }
        assert_eq!(f.order(), 27);
        assert_eq!(f.elements().len(), 27);
    }

    #[test]
    fn degree_search_finds_irreducible() {
        let f3 = PrimeField::new(3).unwrap();
        let f81 = ExtField::of_degree(f3, 4);
        assert_eq!(f81.order(), 81);
        let t = f81.generator();
        // the multiplicative group has order 80
        assert_eq!(f81.pow(&t, 80), f81.one());
        let triv = ExtField::trivial(f3);
        assert_eq!(triv.order(), 3);
        assert_eq!(triv.generator(), triv.zero());
    }
}
