//! The commutative side: polynomials in the rescaled Casimir `D`, the linear
//! operators `F, G` with `[w(D), x] = (F(w)h + G(w))x + 2eF(w)y`, and the
//! quadratic central element `t_z`.

use std::sync::Arc;

use thiserror::Error;

use crate::center::{is_central, Centrality};
use crate::fields::{Fp, PrimeField, UniPoly};
use crate::pbw::{Algebra, Gen, NcPoly};

/// A polynomial in `D` over `F_p`.
pub type CasimirPoly = UniPoly<PrimeField>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CasimirError {
    #[error(
        "deformation has degree {degree}, but the construction needs degree < p - 1 = {bound}"
    )]
    DegreeTooLarge { degree: usize, bound: u32 },
    #[error("F^-1 needs degree <= p - 2 = {bound}, got {degree}")]
    InverseDomain { degree: usize, bound: u32 },
    #[error("malformed deformation {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("t_z is not central; [t_z, {generator}] = {witness}")]
    NotCentral { generator: Gen, witness: String },
}

/// Parses `"c0,c1,c2"` as `c0 + c1 D + c2 D^2`.
pub fn parse_deformation(field: PrimeField, input: &str) -> Result<CasimirPoly, CasimirError> {
    let bad = |reason: &str| CasimirError::Parse {
        input: input.to_string(),
        reason: reason.to_string(),
    };
    if input.trim().is_empty() {
        return Err(bad("empty coefficient list"));
    }
    let coeffs = input
        .split(',')
        .map(|s| s.trim().parse::<i64>().map_err(|e| bad(&e.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CasimirPoly::from_ints(field, &coeffs))
}

/// Coefficient list `c0,c1,...` of a deformation, in `[0, p)`.
pub fn format_deformation(z: &CasimirPoly) -> String {
    if z.is_zero() {
        return "0".into();
    }
    z.coeffs()
        .iter()
        .map(|c| c.0.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// `(F(D^n), G(D^n))` for `n = 0..=max`.
fn fg_table(field: PrimeField, max: usize) -> Vec<(CasimirPoly, CasimirPoly)> {
    let d = CasimirPoly::var(field);
    let one = CasimirPoly::constant(field, Fp(1));
    let mut out = vec![(CasimirPoly::zero(field), CasimirPoly::zero(field))];
    let mut dn = one.clone();
    for _ in 0..max {
        let (f, g) = out.last().unwrap().clone();
        let two = field.elem(2);
        let nf = dn.scale(&two).add(&d.sub(&one).mul(&f)).sub(&g.scale(&two));
        let ng = dn
            .scale(&field.elem(-3))
            .add(&d.add(&one.scale(&field.elem(3))).mul(&g))
            .sub(&d.mul(&f).scale(&two));
        out.push((nf, ng));
        dn = dn.mul(&d);
    }
    out
}

/// `(F(w), G(w))`, extended linearly from the recursion on powers of `D`.
pub fn fg_apply(w: &CasimirPoly) -> (CasimirPoly, CasimirPoly) {
    let field = *w.field();
    let table = fg_table(field, w.degree().unwrap_or(0));
    let mut f = CasimirPoly::zero(field);
    let mut g = CasimirPoly::zero(field);
    for (n, c) in w.coeffs().iter().enumerate() {
        f = f.add(&table[n].0.scale(c));
        g = g.add(&table[n].1.scale(c));
    }
    (f, g)
}

/// The preimage of `w` under `F` with zero constant term.
pub fn f_inverse(w: &CasimirPoly) -> Result<CasimirPoly, CasimirError> {
    let field = *w.field();
    let p = field.p();
    let Some(deg) = w.degree() else {
        return Ok(CasimirPoly::zero(field));
    };
    if deg + 2 > p as usize {
        return Err(CasimirError::InverseDomain {
            degree: deg,
            bound: p - 2,
        });
    }
    let table = fg_table(field, deg + 1);
    let mut rest = w.clone();
    let mut out = CasimirPoly::zero(field);
    // F(D^(n+1)) has degree n with leading coefficient 2(n+1)
    for n in (0..=deg).rev() {
        let c = rest.coeff(n);
        if c.0 == 0 {
            continue;
        }
        let lead = table[n + 1].0.coeff(n);
        let s = field.fmul(c, field.finv(lead).expect("2(n+1) is a unit below p"));
        out = out.add(&CasimirPoly::monomial(field, s, n + 1));
        rest = rest.sub(&table[n + 1].0.scale(&s));
    }
    debug_assert!(rest.is_zero());
    Ok(out)
}

fn check_degree(z: &CasimirPoly) -> Result<(), CasimirError> {
    let p = z.field().p();
    match z.degree() {
        Some(d) if d + 1 >= p as usize => Err(CasimirError::DegreeTooLarge {
            degree: d,
            bound: p - 1,
        }),
        _ => Ok(()),
    }
}

/// `w_z = -F^-1(z) + z/2 + F^-1(G(z))/2`.
pub fn omega_z(z: &CasimirPoly) -> Result<CasimirPoly, CasimirError> {
    check_degree(z)?;
    let field = *z.field();
    let half = field.finv(field.elem(2)).unwrap();
    let (_, g) = fg_apply(z);
    Ok(f_inverse(z)?
        .neg()
        .add(&z.scale(&half))
        .add(&f_inverse(&g)?.scale(&half)))
}

/// `t_0 = e y^2 + h x y - f x^2`.
pub fn t_zero(alg: &Arc<Algebra>) -> NcPoly {
    let f = alg.field();
    let mut t = alg.word(&[Gen::E, Gen::Y, Gen::Y]);
    t = &t + &alg.word(&[Gen::H, Gen::X, Gen::Y]);
    &t - &alg.word(&[Gen::F, Gen::X, Gen::X]).scale(f.elem(1))
}

/// `t_z = e y^2 + h x y - f x^2 - h z(D)/2 - w_z(D)`, checked to be central.
pub fn build_tz(alg: &Arc<Algebra>) -> Result<NcPoly, CasimirError> {
    let z = alg.deformation().clone();
    let omega = omega_z(&z)?;
    let field = alg.field();
    let half = field.finv(field.elem(2)).unwrap();
    let h = NcPoly::gen(alg.clone(), Gen::H);
    let hz = &h * &alg.eval_casimir(&z);
    let t = &(&t_zero(alg) - &hz.scale(half)) - &alg.eval_casimir(&omega);
    match is_central(&t) {
        Centrality::Central => Ok(t),
        Centrality::Fails { generator, witness } => Err(CasimirError::NotCentral {
            generator,
            witness: witness.to_string(),
        }),
    }
}

/// Outcome of comparing `[w(D), x]` with `(F(w)h + G(w))x + 2eF(w)y`.
#[derive(Clone, Debug)]
pub struct BracketCheck {
    pub lhs: NcPoly,
    pub rhs: NcPoly,
}

impl BracketCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }

    pub fn difference(&self) -> NcPoly {
        &self.lhs - &self.rhs
    }
}

pub fn check_bracket_formula(alg: &Arc<Algebra>, w: &CasimirPoly) -> BracketCheck {
    let x = NcPoly::gen(alg.clone(), Gen::X);
    let lhs = alg.eval_casimir(w).commutator(&x).expect("same ambient");
    let (f, g) = fg_apply(w);
    let fw = alg.eval_casimir(&f);
    let gw = alg.eval_casimir(&g);
    let h = NcPoly::gen(alg.clone(), Gen::H);
    let e = NcPoly::gen(alg.clone(), Gen::E);
    let y = NcPoly::gen(alg.clone(), Gen::Y);
    let first = &(&(&fw * &h) + &gw) * &x;
    let second = &(&e * &fw) * &y;
    let rhs = &first + &second.scale(alg.field().elem(2));
    BracketCheck { lhs, rhs }
}

/// The scalar `c` with `[D, x^n] - n [D, x] x^(n-1) = c x^n`, if the
/// difference is such a multiple.
pub fn x_power_defect(alg: &Arc<Algebra>, n: u32) -> Option<Fp> {
    assert!(n >= 1);
    let d = alg.casimir();
    let x = NcPoly::gen(alg.clone(), Gen::X);
    let xn = x.pow(n);
    let lhs = d.commutator(&xn).expect("same ambient");
    let first = &d.commutator(&x).expect("same ambient") * &x.pow(n - 1);
    let diff = &lhs - &first.scale(alg.field().elem(n as i64));
    let top = xn
        .terms()
        .next()
        .map(|(m, _)| *m)
        .expect("x^n is a monomial");
    let c = diff.coeff(&top);
    let rest = &diff - &xn.scale(c);
    rest.is_zero().then_some(c)
}
