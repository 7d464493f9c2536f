//! Central elements of `H_z`: the Frobenius part `e^p, f^p, h^p - h`, the
//! lifts `x_p, y_p` of `x^p, y^p`, the quadratic element `t_z`, and the
//! degree-`p` relation of `t_z` over the subring generated by the first five.

mod lemmas;
mod lift;
mod mpoly;
mod relation;

pub use lemmas::{
    adek_fk_check, boyarchenko_lemma_check, singular_locus_check, AdekReport, SingularLocusReport,
};
pub use lift::{lift_solver, LiftBounds};
pub use mpoly::MPoly;
pub use relation::{
    t_power_independence, tp_relation, tp_relation_bounded, z0_expected_relation, CentralRelation,
    Z0_NAMES,
};

use std::sync::Arc;

use thiserror::Error;

use crate::casimir::{build_tz, CasimirError, CasimirPoly};
use crate::fields::{Field, Fp, PrimeField};
use crate::pbw::{Algebra, EngineError, Gen, GeneratorOrder, NcPoly, PbwMonomial};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CenterError {
    #[error(transparent)]
    Casimir(#[from] CasimirError),
    #[error("no central lift of {top} within bounds t<={}, e<={}, R<={}", .bounds.max_t, .bounds.max_e, .bounds.max_r)]
    SolverFailed { top: String, bounds: LiftBounds },
    #[error("{name} is not central: [{name}, {generator}] = {witness}")]
    NotCentral {
        name: String,
        generator: Gen,
        witness: String,
    },
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error("no monic relation for t found with coefficients of degree <= {max_degree}")]
    RelationNotFound { max_degree: u32 },
}

/// Result of commuting an element with the five generators.
#[derive(Clone, Debug)]
pub enum Centrality {
    Central,
    Fails { generator: Gen, witness: NcPoly },
}

impl Centrality {
    pub fn is_central(&self) -> bool {
        matches!(self, Centrality::Central)
    }
}

/// Checks `[a, g] = 0` for every generator `g`; reports the first failure.
pub fn is_central(a: &NcPoly) -> Centrality {
    for g in Gen::ALL {
        let gp = NcPoly::gen(a.algebra().clone(), g);
        let c = a.commutator(&gp).expect("same ambient");
        if !c.is_zero() {
            return Centrality::Fails {
                generator: g,
                witness: c,
            };
        }
    }
    Centrality::Central
}

fn require_central(name: &str, a: &NcPoly) -> Result<(), CenterError> {
    match is_central(a) {
        Centrality::Central => Ok(()),
        Centrality::Fails { generator, witness } => Err(CenterError::NotCentral {
            name: name.to_string(),
            generator,
            witness: witness.to_string(),
        }),
    }
}

/// `(e^p, f^p, h^p - h)`.
pub fn frobenius_generators(alg: &Arc<Algebra>) -> [NcPoly; 3] {
    let p = alg.p() as u16;
    let ep = alg.word_powers(&[(Gen::E, p)]);
    let fp = alg.word_powers(&[(Gen::F, p)]);
    let h = NcPoly::gen(alg.clone(), Gen::H);
    let hp = &alg.word_powers(&[(Gen::H, p)]) - &h;
    [ep, fp, hp]
}

fn xp_with_correction(alg: &Arc<Algebra>, sign: i64) -> NcPoly {
    let p = alg.p();
    let k = (p - 1) / 2;
    let f = alg.field();
    let coeff = f.fmul(f.elem(sign), f.pow(&f.elem(-4), k as u64));
    let xp = alg.word_powers(&[(Gen::X, p as u16)]);
    let ekx = alg.word_powers(&[(Gen::E, k as u16), (Gen::X, 1)]);
    &xp + &ekx.scale(coeff)
}

/// `x^p - (-4)^k e^k x` with `k = (p - 1)/2`, central when `z` is linear.
pub fn xp_closed_form(alg: &Arc<Algebra>) -> NcPoly {
    xp_with_correction(alg, -1)
}

/// `x^p + (-4)^k e^k x`, the form with the opposite sign on the correction
/// term. Not central for linear `z`; kept for comparison in reports.
pub fn xp_published_form(alg: &Arc<Algebra>) -> NcPoly {
    xp_with_correction(alg, 1)
}

/// Exponent cap that leaves room for the center constructions: `t_z`
/// carries `D^(deg z + 1)`, so `t_z^p` reaches `h^(2p(deg z + 1))`, and the
/// relation fit multiplies by up to four more Frobenius factors.
pub fn center_exponent_cap(p: u32, deg_z: usize) -> u32 {
    p * (2 * deg_z as u32 + 6)
}

/// The standard-order algebra with [`center_exponent_cap`].
pub fn center_algebra(field: PrimeField, z: CasimirPoly) -> Arc<Algebra> {
    let cap = center_exponent_cap(field.p(), z.degree().unwrap_or(0));
    Algebra::with_cap(field, z, GeneratorOrder::standard(), cap)
}

/// A central element with top symbol `x^p`.
pub fn build_xp(alg: &Arc<Algebra>, bounds: &LiftBounds) -> Result<NcPoly, CenterError> {
    let z = alg.deformation();
    let p = alg.p();
    let xp = match z.degree() {
        None | Some(0) => alg.word_powers(&[(Gen::X, p as u16)]),
        Some(1) => xp_closed_form(alg),
        Some(_) => {
            let t = build_tz(alg)?;
            let top = PbwMonomial::gen(Gen::X).with_exp(Gen::X, p as u16);
            lift_solver(alg, &t, top, p - 1, bounds)?.ok_or(CenterError::SolverFailed {
                top: format!("x^{p}"),
                bounds: bounds.clone(),
            })?
        }
    };
    require_central("x_p", &xp)?;
    Ok(xp)
}

/// `y_p = j(x_p)`, re-verified central.
pub fn build_yp(xp: &NcPoly) -> Result<NcPoly, CenterError> {
    let yp = xp.antiinvolution_j();
    require_central("y_p", &yp)?;
    Ok(yp)
}

/// The six generators `e^p, f^p, h^p - h, x_p, y_p, t_z` of the center.
#[derive(Clone, Debug)]
pub struct CenterGenSet {
    pub ep: NcPoly,
    pub fp: NcPoly,
    pub hp: NcPoly,
    pub xp: NcPoly,
    pub yp: NcPoly,
    pub tz: NcPoly,
}

/// Per-generator verification outcome.
#[derive(Clone, Debug)]
pub struct GeneratorCheck {
    pub name: &'static str,
    pub central: Centrality,
    pub top_symbol_ok: bool,
    pub top_symbol: String,
}

impl CenterGenSet {
    pub const NAMES: [&'static str; 6] = ["e^p", "f^p", "h^p-h", "x_p", "y_p", "t_z"];

    pub fn build(alg: &Arc<Algebra>, bounds: &LiftBounds) -> Result<Self, CenterError> {
        let [ep, fp, hp] = frobenius_generators(alg);
        let xp = build_xp(alg, bounds)?;
        let yp = build_yp(&xp)?;
        let tz = build_tz(alg)?;
        Ok(CenterGenSet {
            ep,
            fp,
            hp,
            xp,
            yp,
            tz,
        })
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        self.ep.algebra()
    }

    pub fn all(&self) -> [&NcPoly; 6] {
        [&self.ep, &self.fp, &self.hp, &self.xp, &self.yp, &self.tz]
    }

    /// The five generators of the Frobenius part, in the order of
    /// [`Z0_NAMES`].
    pub fn z0(&self) -> [&NcPoly; 5] {
        [&self.ep, &self.fp, &self.hp, &self.xp, &self.yp]
    }

    /// The expected leading symbols over `z = 0`: `e^p, f^p, h^p, x^p, y^p,
    /// e y^2 + h x y - f x^2`.
    pub fn expected_symbols(&self) -> [Vec<(PbwMonomial, Fp)>; 6] {
        let p = self.algebra().p() as u16;
        let f = self.algebra().field();
        let single = |g: Gen| vec![(PbwMonomial::ONE.with_exp(g, p), Fp(1))];
        let mut t0 = vec![
            (PbwMonomial::from_exps(1, 0, 0, 0, 2), Fp(1)),
            (PbwMonomial::from_exps(0, 0, 1, 1, 1), Fp(1)),
            (PbwMonomial::from_exps(0, 1, 0, 2, 0), f.elem(-1)),
        ];
        t0.sort();
        [
            single(Gen::E),
            single(Gen::F),
            single(Gen::H),
            single(Gen::X),
            single(Gen::Y),
            t0,
        ]
    }

    /// Centrality and leading-symbol checks for all six generators.
    pub fn check(&self) -> Vec<GeneratorCheck> {
        let expected = self.expected_symbols();
        self.all()
            .iter()
            .zip(Self::NAMES)
            .zip(expected)
            .map(|((g, name), want)| {
                let sym = g.leading_symbol();
                let mut got: Vec<(PbwMonomial, Fp)> = sym.terms().map(|(m, c)| (*m, *c)).collect();
                got.sort();
                GeneratorCheck {
                    name,
                    central: is_central(g),
                    top_symbol_ok: got == want,
                    top_symbol: sym.to_string(),
                }
            })
            .collect()
    }

    /// `j(t_z) - t_z`; recorded, not asserted.
    pub fn j_defect(&self) -> NcPoly {
        &self.tz.antiinvolution_j() - &self.tz
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::casimir::CasimirPoly;
    use crate::fields::PrimeField;
    use crate::pbw::parse_element;

    fn alg(p: u64, z: &[i64]) -> Arc<Algebra> {
        let f = PrimeField::new(p).unwrap();
        Algebra::standard(f, CasimirPoly::from_ints(f, z))
    }

    #[test]
    fn frobenius_part_is_central() {
        for (p, z) in [(3u64, &[0i64, 1][..]), (5, &[1, 1]), (3, &[])] {
            let a = alg(p, z);
            for g in frobenius_generators(&a) {
                assert!(is_central(&g).is_central(), "{g}");
            }
        }
    }

    #[test]
    fn x_is_not_central() {
        let a = alg(3, &[]);
        match is_central(&NcPoly::gen(a.clone(), Gen::X)) {
            Centrality::Fails { witness, .. } => assert!(!witness.is_zero()),
            Centrality::Central => panic!("x reported central"),
        }
        assert!(is_central(&NcPoly::zero(a)).is_central());
    }

    #[test]
    fn closed_form_lifts() {
        let a = alg(3, &[0, 1]);
        let b = LiftBounds::for_prime(3);
        let xp = build_xp(&a, &b).unwrap();
        assert_eq!(xp, parse_element(&a, "x^3 + e*x").unwrap());
        assert!(!is_central(&xp_published_form(&a)).is_central());
        let yp = build_yp(&xp).unwrap();
        assert_eq!(yp, parse_element(&a, "y^3 - f*y").unwrap());
        let c = alg(7, &[5]);
        assert_eq!(
            build_xp(&c, &LiftBounds::for_prime(7)).unwrap(),
            parse_element(&c, "x^7").unwrap()
        );
    }

    #[test]
    fn generator_set_checks() {
        let a = alg(5, &[1, 1]);
        let set = CenterGenSet::build(&a, &LiftBounds::for_prime(5)).unwrap();
        for c in set.check() {
            assert!(c.central.is_central(), "{}", c.name);
            assert!(c.top_symbol_ok, "{}: {}", c.name, c.top_symbol);
        }
    }

    #[test]
    fn products_of_central_elements_are_central() {
        let a = alg(3, &[0, 1]);
        let set = CenterGenSet::build(&a, &LiftBounds::for_prime(3)).unwrap();
        let prod = &set.tz * &set.xp;
        assert!(is_central(&prod).is_central());
        assert!(is_central(&(&set.ep * &set.hp)).is_central());
    }
}
