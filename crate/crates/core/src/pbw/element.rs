use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::fields::Fp;

use super::{Algebra, EngineError, Gen, PbwMonomial};

/// A finite linear combination of normal PBW monomials. Zero coefficients are
/// never stored.
#[derive(Clone)]
pub struct NcPoly {
    alg: Arc<Algebra>,
    terms: BTreeMap<PbwMonomial, Fp>,
}

impl PartialEq for NcPoly {
    fn eq(&self, other: &Self) -> bool {
        self.alg.same_ambient(&other.alg) && self.terms == other.terms
    }
}

impl Eq for NcPoly {}

impl fmt::Debug for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NcPoly({self})")
    }
}

impl NcPoly {
    pub(crate) fn from_terms(alg: Arc<Algebra>, terms: HashMap<PbwMonomial, Fp>) -> Self {
        let terms = terms.into_iter().filter(|(_, c)| c.0 != 0).collect();
        NcPoly { alg, terms }
    }

    /// Builds an element from monomials that are already normal in the
    /// algebra's order.
    pub fn from_monomials(
        alg: Arc<Algebra>,
        terms: impl IntoIterator<Item = (PbwMonomial, Fp)>,
    ) -> Self {
        let mut acc: BTreeMap<PbwMonomial, Fp> = BTreeMap::new();
        let f = alg.field();
        for (m, c) in terms {
            let e = acc.entry(m).or_insert(Fp(0));
            *e = f.fadd(*e, c);
        }
        acc.retain(|_, c| c.0 != 0);
        NcPoly { alg, terms: acc }
    }

    pub fn zero(alg: Arc<Algebra>) -> Self {
        NcPoly {
            alg,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(alg: Arc<Algebra>) -> Self {
        Self::constant(alg, Fp(1))
    }

    pub fn constant(alg: Arc<Algebra>, c: Fp) -> Self {
        Self::from_monomials(alg, [(PbwMonomial::ONE, c)])
    }

    pub fn gen(alg: Arc<Algebra>, g: Gen) -> Self {
        Self::from_monomials(alg, [(PbwMonomial::gen(g), Fp(1))])
    }

    pub fn monomial(alg: Arc<Algebra>, m: PbwMonomial, c: Fp) -> Self {
        Self::from_monomials(alg, [(m, c)])
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PbwMonomial, &Fp)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &PbwMonomial) -> Fp {
        self.terms.get(m).copied().unwrap_or(Fp(0))
    }

    fn check_ambient(&self, other: &NcPoly) -> Result<(), EngineError> {
        if self.alg.same_ambient(&other.alg) {
            Ok(())
        } else {
            Err(EngineError::AmbientMismatch)
        }
    }

    pub fn try_add(&self, other: &NcPoly) -> Result<NcPoly, EngineError> {
        self.check_ambient(other)?;
        Ok(self.combine(other, Fp(1)))
    }

    pub fn try_sub(&self, other: &NcPoly) -> Result<NcPoly, EngineError> {
        self.check_ambient(other)?;
        Ok(self.combine(other, self.alg.field().fneg(Fp(1))))
    }

    fn combine(&self, other: &NcPoly, s: Fp) -> NcPoly {
        let f = self.alg.field();
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let e = terms.entry(*m).or_insert(Fp(0));
            *e = f.fadd(*e, f.fmul(*c, s));
        }
        terms.retain(|_, c| c.0 != 0);
        NcPoly {
            alg: self.alg.clone(),
            terms,
        }
    }

    pub fn scale(&self, s: Fp) -> NcPoly {
        let f = self.alg.field();
        NcPoly::from_monomials(
            self.alg.clone(),
            self.terms.iter().map(|(m, c)| (*m, f.fmul(*c, s))),
        )
    }

    /// Normal form of the product; rejects ambient mismatch and results whose
    /// exponents exceed the algebra's cap.
    pub fn try_mul(&self, other: &NcPoly) -> Result<NcPoly, EngineError> {
        self.check_ambient(other)?;
        let f = self.alg.field();
        let mut acc = HashMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                self.alg.mono_mul_into(*a, *b, f.fmul(*ca, *cb), &mut acc);
            }
        }
        let out = NcPoly::from_terms(self.alg.clone(), acc);
        out.check_cap()?;
        Ok(out)
    }

    fn check_cap(&self) -> Result<(), EngineError> {
        let cap = self.alg.exp_cap();
        for m in self.terms.keys() {
            for g in Gen::ALL {
                let e = m.exp(g) as u32;
                if e > cap {
                    return Err(EngineError::ExponentOverflow {
                        generator: g,
                        exponent: e,
                        cap,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn try_pow(&self, n: u32) -> Result<NcPoly, EngineError> {
        let mut acc = NcPoly::one(self.alg.clone());
        for _ in 0..n {
            acc = acc.try_mul(self)?;
        }
        Ok(acc)
    }

    pub fn pow(&self, n: u32) -> NcPoly {
        let mut acc = NcPoly::one(self.alg.clone());
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// `[self, other] = self*other - other*self`.
    pub fn commutator(&self, other: &NcPoly) -> Result<NcPoly, EngineError> {
        self.try_mul(other)?.try_sub(&other.try_mul(self)?)
    }

    /// `(ad g)^n (self)`.
    pub fn ad_pow(&self, g: Gen, n: u32) -> NcPoly {
        let gp = NcPoly::gen(self.alg.clone(), g);
        let mut acc = self.clone();
        for _ in 0..n {
            acc = gp.commutator(&acc).expect("same ambient");
        }
        acc
    }

    /// Largest `x, y` degree of a term (`None` for zero).
    pub fn filtration_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.filtration_degree()).max()
    }

    /// The terms of maximal `x, y` degree.
    pub fn top_xy_part(&self) -> NcPoly {
        let Some(d) = self.filtration_degree() else {
            return self.clone();
        };
        self.filter(|m| m.filtration_degree() == d)
    }

    /// Terms of maximal `x, y` degree, then of maximal total degree among
    /// those.
    pub fn leading_symbol(&self) -> NcPoly {
        let top = self.top_xy_part();
        let Some(d) = top.terms.keys().map(|m| m.total_degree()).max() else {
            return top;
        };
        top.filter(|m| m.total_degree() == d)
    }

    pub fn filter(&self, keep: impl Fn(&PbwMonomial) -> bool) -> NcPoly {
        NcPoly {
            alg: self.alg.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (*m, *c))
                .collect(),
        }
    }

    /// Decomposition by integer `ad h` weight.
    pub fn weight_components(&self) -> BTreeMap<i64, NcPoly> {
        let mut out: BTreeMap<i64, NcPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.weight())
                .or_insert_with(|| NcPoly::zero(self.alg.clone()))
                .terms
                .insert(*m, *c);
        }
        out
    }

    /// Rewrites into another ambient with the same prime (and any order or
    /// deformation) by multiplying out each monomial there.
    pub fn convert_to(&self, target: &Arc<Algebra>) -> NcPoly {
        assert_eq!(self.alg.p(), target.p());
        let order = *self.alg.order();
        let f = target.field();
        let mut acc: HashMap<PbwMonomial, Fp> = HashMap::new();
        for (m, c) in &self.terms {
            for (mono, cc) in target.word_terms(&m.factors(&order)) {
                let e = acc.entry(mono).or_insert(Fp(0));
                *e = f.fadd(*e, f.fmul(cc, *c));
            }
        }
        NcPoly::from_terms(target.clone(), acc)
    }

    /// The anti-involution `j(x)=y, j(y)=x, j(h)=h, j(e)=-f, j(f)=-e`.
    pub fn antiinvolution_j(&self) -> NcPoly {
        let f = self.alg.field();
        let order = *self.alg.order();
        let mut acc: HashMap<PbwMonomial, Fp> = HashMap::new();
        for (m, c) in &self.terms {
            let mut sign = 1i64;
            let word: Vec<(Gen, u16)> = m
                .factors(&order)
                .into_iter()
                .rev()
                .map(|(g, n)| {
                    let image = match g {
                        Gen::E => {
                            sign *= if n % 2 == 1 { -1 } else { 1 };
                            Gen::F
                        }
                        Gen::F => {
                            sign *= if n % 2 == 1 { -1 } else { 1 };
                            Gen::E
                        }
                        Gen::H => Gen::H,
                        Gen::X => Gen::Y,
                        Gen::Y => Gen::X,
                    };
                    (image, n)
                })
                .collect();
            let s = f.fmul(*c, f.elem(sign));
            for (mono, cc) in self.alg.word_terms(&word) {
                let e = acc.entry(mono).or_insert(Fp(0));
                *e = f.fadd(*e, f.fmul(cc, s));
            }
        }
        NcPoly::from_terms(self.alg.clone(), acc)
    }
}

impl fmt::Display for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = self.alg.field();
        let order = self.alg.order();
        let mut terms: Vec<_> = self.terms.iter().collect();
        // higher x,y-degree first, then higher total degree
        terms.sort_by(|(a, _), (b, _)| {
            (b.filtration_degree(), b.total_degree(), b.factors(order)).cmp(&(
                a.filtration_degree(),
                a.total_degree(),
                a.factors(order),
            ))
        });
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let v = field.symmetric(*c);
            let (neg, mag) = (v < 0, v.unsigned_abs());
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag == 1 {
                write!(f, "{}", m.format(order))?;
            } else {
                write!(f, "{mag}*{}", m.format(order))?;
            }
        }
        Ok(())
    }
}

impl Add for &NcPoly {
    type Output = NcPoly;
    fn add(self, rhs: &NcPoly) -> NcPoly {
        self.try_add(rhs).expect("ambient mismatch in addition")
    }
}

impl Sub for &NcPoly {
    type Output = NcPoly;
    fn sub(self, rhs: &NcPoly) -> NcPoly {
        self.try_sub(rhs).expect("ambient mismatch in subtraction")
    }
}

impl Mul for &NcPoly {
    type Output = NcPoly;
    fn mul(self, rhs: &NcPoly) -> NcPoly {
        self.try_mul(rhs).expect("product failed")
    }
}

impl Neg for &NcPoly {
    type Output = NcPoly;
    fn neg(self) -> NcPoly {
        self.scale(self.alg.field().fneg(Fp(1)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::casimir::CasimirPoly;
    use crate::fields::{PrimeField, UniPoly};
    use crate::pbw::{parse_element, GeneratorOrder};

    fn alg(p: u64, z: &[i64]) -> Arc<Algebra> {
        let f = PrimeField::new(p).unwrap();
        Algebra::standard(f, CasimirPoly::from_ints(f, z))
    }

    fn el(a: &Arc<Algebra>, s: &str) -> NcPoly {
        parse_element(a, s).unwrap()
    }

    #[test]
    fn one_relation_swaps() {
        let a = alg(5, &[]);
        assert_eq!(a.word(&[Gen::F, Gen::E]), el(&a, "e*f - h"));
        assert_eq!(a.word(&[Gen::Y, Gen::X]), el(&a, "x*y"));
    }

    #[test]
    fn deformed_swap() {
        let a = alg(5, &[0, 1]);
        let lhs = a.word(&[Gen::Y, Gen::X]);
        assert_eq!(lhs, el(&a, "x*y - 4*e*f - h^2 + 2*h"));
    }

    #[test]
    fn xy_with_unit_deformation() {
        let a = alg(5, &[1]);
        let x = NcPoly::gen(a.clone(), Gen::X);
        let y = NcPoly::gen(a.clone(), Gen::Y);
        assert_eq!(&x * &y, el(&a, "x*y"));
        assert_eq!(&y * &x, el(&a, "x*y - 1"));
    }

    #[test]
    fn associativity_instance() {
        let a = alg(7, &[0, 1]);
        let e = NcPoly::gen(a.clone(), Gen::E);
        let f = NcPoly::gen(a.clone(), Gen::F);
        assert_eq!(&(&e * &f) * &f, &e * &(&f * &f));
    }

    #[test]
    fn structural_brackets_hold() {
        let a = alg(7, &[2, 1]);
        let g = |x| NcPoly::gen(a.clone(), x);
        let br = |u: Gen, v: Gen| g(u).commutator(&g(v)).unwrap();
        assert_eq!(br(Gen::H, Gen::E), g(Gen::E).scale(Fp(2)));
        assert_eq!(br(Gen::E, Gen::F), g(Gen::H));
        assert_eq!(br(Gen::E, Gen::Y), g(Gen::X));
        assert_eq!(br(Gen::F, Gen::X), g(Gen::Y));
        assert!(br(Gen::E, Gen::X).is_zero());
        assert!(br(Gen::F, Gen::Y).is_zero());
        assert_eq!(br(Gen::X, Gen::Y), a.z_element());
    }

    #[test]
    fn ey_bracket_matches_natural_representation() {
        // 2x2 model of V: e = [[0,1],[0,0]], f = [[0,0],[1,0]], x=(1,0), y=(0,1)
        let e = [[0i64, 1], [0, 0]];
        let f = [[0i64, 0], [1, 0]];
        let act = |m: [[i64; 2]; 2], v: [i64; 2]| {
            [
                m[0][0] * v[0] + m[0][1] * v[1],
                m[1][0] * v[0] + m[1][1] * v[1],
            ]
        };
        let (x, y) = ([1, 0], [0, 1]);
        assert_eq!(act(e, x), [0, 0]);
        assert_eq!(act(f, x), y);
        assert_eq!(act(e, y), x);
        assert_eq!(act(f, y), [0, 0]);
        // e.(f.x) = (fe + h).x = x
        assert_eq!(act(e, act(f, x)), x);
    }

    #[test]
    fn ambient_mismatch_rejected() {
        let a = alg(5, &[]);
        let b = alg(5, &[0, 1]);
        let x = NcPoly::gen(a, Gen::X);
        let y = NcPoly::gen(b, Gen::Y);
        assert_eq!(x.try_mul(&y), Err(EngineError::AmbientMismatch));
        assert_eq!(x.commutator(&y), Err(EngineError::AmbientMismatch));
    }

    #[test]
    fn exponent_cap_enforced() {
        let f = PrimeField::new(3).unwrap();
        let a = Algebra::with_cap(f, UniPoly::zero(f), GeneratorOrder::standard(), 4);
        let e = NcPoly::gen(a.clone(), Gen::E);
        let e4 = e.pow(4);
        let err = e4.try_mul(&e).unwrap_err();
        assert_eq!(
            err,
            EngineError::ExponentOverflow {
                generator: Gen::E,
                exponent: 5,
                cap: 4
            }
        );
    }

    #[test]
    fn casimir_in_standard_order() {
        let a = alg(7, &[]);
        assert_eq!(a.casimir(), el(&a, "4*e*f + h^2 - 2*h"));
        assert_eq!(a.casimir_power(0), NcPoly::one(a.clone()));
        let h = NcPoly::gen(a.clone(), Gen::H);
        assert!(a.casimir().commutator(&h).unwrap().is_zero());
    }

    #[test]
    fn casimir_in_reversed_sl2_order() {
        let f = PrimeField::new(7).unwrap();
        let a = Algebra::new(f, UniPoly::zero(f), GeneratorOrder::parse("fyhex").unwrap());
        // ef = fe + h
        assert_eq!(a.casimir(), parse_element(&a, "4*f*e + h^2 + 2*h").unwrap());
    }

    #[test]
    fn weights_and_filtration() {
        let a = alg(5, &[0, 1]);
        let e = el(&a, "e");
        let w = e.weight_components();
        assert_eq!(w.len(), 1);
        assert_eq!(w[&2], e);
        let q = el(&a, "e*y^2 + h*x*y - f*x^2");
        assert_eq!(q.filtration_degree(), Some(2));
        let x5 = el(&a, "x^5");
        assert_eq!(
            x5.weight_components().keys().copied().collect::<Vec<_>>(),
            vec![5]
        );
        assert_eq!(5 % 5, 0);
    }

    #[test]
    fn j_examples() {
        let a = alg(5, &[0, 1]);
        assert_eq!(el(&a, "e*x").antiinvolution_j(), el(&a, "-f*y"));
        assert_eq!(a.casimir().antiinvolution_j(), a.casimir());
        assert_eq!(el(&a, "x").antiinvolution_j(), el(&a, "y"));
    }

    #[test]
    fn conversion_between_orders() {
        let a = alg(5, &[0, 1]);
        let b = a.reordered(GeneratorOrder::parse("yxhfe").unwrap());
        let u = el(&a, "e*f*x*y + 3*h*y");
        let back = u.convert_to(&b).convert_to(&a);
        assert_eq!(back, u);
    }
}
