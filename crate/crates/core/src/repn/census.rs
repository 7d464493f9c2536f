use std::fmt;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::casimir::format_deformation;
use crate::center::{CenterGenSet, CentralRelation, MPoly};
use crate::fields::{artin_schreier_ext, ExtField, Field, Fp, UniPoly};

use super::induced::{baby_verma, ex_module, quotient_by_central, BabyVermaKind};
use super::linalg::{composition_factors, irreducibility, IrreducibilityReport};
use super::{Action, Character, ModuleRep, RepnError};

/// The degree-`p` extension of `F_p` used for census work; it contains
/// every root of `T^p - T - c` for `c` in `F_p`.
pub fn census_field(p: u32) -> Result<ExtField, RepnError> {
    Ok(artin_schreier_ext(p as u64, Fp(1))?.0)
}

/// Loci of characters with `chi(e^p) = 0` singled out by the sampling.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Stratum {
    /// `e^p = f^p = 0`, `h^p - h != 0`, and `x_p` or `y_p` nonzero.
    RegularSemisimple,
    /// `f^p = 1`, `h^p - h = 0`.
    FpOne,
    /// Every Frobenius-part value is zero.
    Nilpotent,
    /// `x_p = y_p = 0`, not nilpotent.
    VectorPartZero,
    Other,
}

impl Stratum {
    pub fn classify<F: Field>(field: &F, chi: &Character<F>) -> Stratum {
        let z = |v: &F::Elem| field.is_zero(v);
        let [e, f, h, x, y] = &chi.values;
        if chi.values.iter().all(z) {
            Stratum::Nilpotent
        } else if z(e) && z(f) && !z(h) && !(z(x) && z(y)) {
            Stratum::RegularSemisimple
        } else if z(e) && *f == field.one() && z(h) {
            Stratum::FpOne
        } else if z(x) && z(y) {
            Stratum::VectorPartZero
        } else {
            Stratum::Other
        }
    }
}

impl fmt::Display for Stratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Stratum::RegularSemisimple => "regular-semisimple",
            Stratum::FpOne => "f^p=1",
            Stratum::Nilpotent => "nilpotent",
            Stratum::VectorPartZero => "x_p=y_p=0",
            Stratum::Other => "other",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug)]
pub struct CensusConfig {
    /// Seeded random characters on top of the grid.
    pub samples: usize,
    pub seed: u64,
    /// Include every character with values in `F_p` (and `chi(e^p) = 0`).
    pub grid: bool,
}

impl Default for CensusConfig {
    fn default() -> Self {
        CensusConfig {
            samples: 24,
            seed: 0,
            grid: true,
        }
    }
}

/// One point of `Spec Z(H_z)` above a sampled character of the Frobenius
/// part; `tau = "unsplit"` collects the roots outside the working field.
#[derive(Clone, Debug, Serialize)]
pub struct CensusRow {
    pub e_p: String,
    pub f_p: String,
    pub h_p: String,
    pub x_p: String,
    pub y_p: String,
    pub tau: String,
    pub stratum: String,
    pub max_irr_dim: usize,
    pub azumaya_flag: bool,
    pub smooth_flag: bool,
    /// Geometric dimensions of the composition factors, `+`-separated.
    pub factor_dims: String,
    /// Every factor was certified by Norton's test.
    pub certified: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusSummary {
    pub p: u32,
    pub z: String,
    pub seed: u64,
    pub field_order: u64,
    pub characters: usize,
    pub points: usize,
    pub smooth_points: usize,
    pub azumaya_points: usize,
    /// Points where the Azumaya and smoothness flags differ.
    pub disagreements: Vec<String>,
    pub max_dim_seen: usize,
    pub pi_degree_bound_ok: bool,
    pub uncertified_points: usize,
}

impl CensusSummary {
    pub fn passed(&self) -> bool {
        self.disagreements.is_empty() && self.pi_degree_bound_ok && self.uncertified_points == 0
    }
}

/// Characters to visit: the `F_p` grid with `chi(e^p) = 0`, then seeded
/// random points cycling through the regular semisimple stratum, the
/// `f^p = 1` stratum and unconstrained values.
pub fn census_characters<F: Field>(field: &F, cfg: &CensusConfig) -> Vec<Character<F>> {
    let p = field.characteristic() as i64;
    let mut out = Vec::new();
    if cfg.grid {
        for code in 0..p.pow(4) {
            let d = |k: u32| field.from_i64((code / p.pow(k)) % p);
            out.push(Character::new([field.zero(), d(0), d(1), d(2), d(3)]));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for i in 0..cfg.samples {
        let mut r = || field.random(&mut rng);
        let chi = match i % 3 {
            0 => {
                let mut h = r();
                while field.is_zero(&h) {
                    h = r();
                }
                let (mut x, y) = (r(), r());
                if field.is_zero(&x) && field.is_zero(&y) {
                    x = field.one();
                }
                [field.zero(), field.zero(), h, x, y]
            }
            1 => [field.zero(), field.one(), field.zero(), r(), r()],
            _ => [field.zero(), r(), r(), r(), r()],
        };
        out.push(Character::new(chi));
    }
    out
}

/// `g(chi0, tau)` as a polynomial in `tau`, for `g` in `u_1..u_5, tau`.
fn in_tau<F: Field>(field: &F, g: &MPoly, point: &[F::Elem; 5]) -> UniPoly<F> {
    let mut coeffs: Vec<F::Elem> = Vec::new();
    for (e, c) in g.terms() {
        let mut v = field.from_fp(*c);
        for (x, k) in point.iter().zip(e) {
            v = field.mul(&v, &field.pow(x, *k as u64));
        }
        let d = e[5] as usize;
        if coeffs.len() <= d {
            coeffs.resize(d + 1, field.zero());
        }
        coeffs[d] = field.add(&coeffs[d], &v);
    }
    UniPoly::new(field.clone(), coeffs)
}

fn linear<F: Field>(field: &F, root: &F::Elem) -> UniPoly<F> {
    UniPoly::new(field.clone(), vec![field.neg(root), field.one()])
}

fn factor_summary<F: Field>(
    p: u32,
    factors: &[(ModuleRep<F>, IrreducibilityReport)],
) -> (usize, String, bool) {
    let mut dims: Vec<usize> = Vec::new();
    let mut certified = true;
    for (m, r) in factors {
        match r.geometric_dim() {
            Some(d) => dims.push(d),
            None => {
                certified = false;
                dims.push(m.dim());
            }
        }
    }
    dims.sort_unstable_by(|a, b| b.cmp(a));
    let max = dims.first().copied().unwrap_or(0);
    let _ = p;
    (
        max,
        dims.iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join("+"),
        certified,
    )
}

fn census_point<F: Field>(
    set: &CenterGenSet,
    relation: &CentralRelation,
    field: &F,
    chi0: &Character<F>,
    seed: u64,
) -> Result<Vec<CensusRow>, RepnError> {
    let p = set.algebra().p();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let xi = field.pth_root(chi0.xp());
    let ind = ex_module(set, chi0, &xi, field)?;
    let module = ind.to_module();
    let t = ind.element_matrix(&set.tz);
    let hyp = relation.hypersurface();
    let partials: Vec<MPoly> = (0..6).map(|i| hyp.derivative(i)).collect();
    let r = relation.specialize(field, &chi0.values);

    let mut rest = r.clone();
    let roots = r.roots();
    for root in &roots {
        let lin = linear(field, root);
        while rest.degree().unwrap_or(0) > 0 && field.is_zero(&rest.eval(root)) {
            rest = rest.div_rem(&lin).expect("monic divisor").0;
        }
    }
    let strat = Stratum::classify(field, chi0);
    let fmt = |v: &F::Elem| field.format(v);
    let row = |tau: String, factors: &[(ModuleRep<F>, IrreducibilityReport)], smooth: bool| {
        let (max, dims, certified) = factor_summary(p, factors);
        CensusRow {
            e_p: fmt(chi0.ep()),
            f_p: fmt(chi0.fp()),
            h_p: fmt(chi0.hp()),
            x_p: fmt(chi0.xp()),
            y_p: fmt(chi0.yp()),
            tau,
            stratum: strat.to_string(),
            max_irr_dim: max,
            azumaya_flag: max == (p * p) as usize,
            smooth_flag: smooth,
            factor_dims: dims,
            certified,
        }
    };

    let mut rows = Vec::new();
    for tau in &roots {
        let q = quotient_by_central(&module, &t, &linear(field, tau))?;
        let factors = composition_factors(&q, &mut rng);
        let mut point: Vec<F::Elem> = chi0.values.to_vec();
        point.push(tau.clone());
        let smooth = partials
            .iter()
            .any(|d| !field.is_zero(&d.eval(field, &point)));
        rows.push(row(fmt(tau), &factors, smooth));
    }
    if rest.degree().unwrap_or(0) > 0 {
        let q = quotient_by_central(&module, &t, &rest)?;
        let factors = composition_factors(&q, &mut rng);
        let mut g = rest.clone();
        for d in &partials {
            g = g.gcd(&in_tau(field, d, &chi0.values));
        }
        let smooth = g.degree() == Some(0);
        rows.push(row("unsplit".to_string(), &factors, smooth));
    }
    Ok(rows)
}

/// For each sampled character with `chi(e^p) = 0` and each point of the
/// center above it, the largest geometric dimension of a simple module,
/// computed from the composition factors of the module induced from
/// `e v = 0, x v = xi v` and cut down by the value of `t_z`. Every simple
/// module at the point is a quotient of that module, so the maximum is
/// exact whenever all factors are certified.
pub fn azumaya_census<F: Field>(
    set: &CenterGenSet,
    relation: &CentralRelation,
    field: &F,
    cfg: &CensusConfig,
) -> Result<(Vec<CensusRow>, CensusSummary), RepnError> {
    let p = set.algebra().p();
    if p != 3 && p != 5 {
        return Err(RepnError::Precondition(format!(
            "census supports p = 3, 5 (got {p})"
        )));
    }
    let chars = census_characters(field, cfg);
    let rows: Vec<Vec<CensusRow>> = chars
        .par_iter()
        .enumerate()
        .map(|(i, chi)| {
            census_point(
                set,
                relation,
                field,
                chi,
                cfg.seed
                    .wrapping_add(i as u64)
                    .wrapping_mul(0x9E37_79B9_7F4A_7C15),
            )
        })
        .collect::<Result<_, _>>()?;
    let rows: Vec<CensusRow> = rows.into_iter().flatten().collect();
    let pi = (p * p) as usize;
    let max_dim_seen = rows.iter().map(|r| r.max_irr_dim).max().unwrap_or(0);
    let summary = CensusSummary {
        p,
        z: format_deformation(set.algebra().deformation()),
        seed: cfg.seed,
        field_order: field.order(),
        characters: chars.len(),
        points: rows.len(),
        smooth_points: rows.iter().filter(|r| r.smooth_flag).count(),
        azumaya_points: rows.iter().filter(|r| r.azumaya_flag).count(),
        disagreements: rows
            .iter()
            .filter(|r| r.azumaya_flag != r.smooth_flag)
            .map(|r| {
                format!(
                    "({}, {}, {}, {}, {}; tau={})",
                    r.e_p, r.f_p, r.h_p, r.x_p, r.y_p, r.tau
                )
            })
            .collect(),
        max_dim_seen,
        pi_degree_bound_ok: max_dim_seen <= pi,
        uncertified_points: rows.iter().filter(|r| !r.certified).count(),
    };
    Ok((rows, summary))
}

#[derive(Debug, Error)]
pub enum CensusWriteError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// Writes `census.csv` and `census_summary.json` into `dir`.
pub fn write_census(
    dir: &Path,
    rows: &[CensusRow],
    summary: &CensusSummary,
) -> Result<(), CensusWriteError> {
    std::fs::create_dir_all(dir)?;
    let mut w = csv::Writer::from_path(dir.join("census.csv"))?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    let json = serde_json::to_string_pretty(summary)?;
    std::fs::write(dir.join("census_summary.json"), json + "\n")?;
    Ok(())
}

/// The three cases of the classification of simple modules at `z = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ClassificationCase {
    XpNonzero,
    YpNonzero,
    VectorPartZero,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub case: ClassificationCase,
    /// Dimension of the predicted module (cases one and two) or of the
    /// module induced from `e v = x v = 0` (case three).
    pub module_dim: usize,
    pub module_irreducible: bool,
    /// Geometric dimensions of its composition factors.
    pub factor_dims: Vec<usize>,
    pub certified: bool,
    /// `x` and `y` act as zero on every composition factor.
    pub vector_part_zero: bool,
    pub passed: bool,
}

fn classify_module<F: Field, R: Rng>(
    case: ClassificationCase,
    m: &ModuleRep<F>,
    rng: &mut R,
) -> ClassificationReport {
    let p = m.field().characteristic() as usize;
    let factors = composition_factors(m, rng);
    let mut factor_dims: Vec<usize> = factors
        .iter()
        .map(|(f, r)| r.geometric_dim().unwrap_or(f.dim()))
        .collect();
    factor_dims.sort_unstable_by(|a, b| b.cmp(a));
    let certified = factors.iter().all(|(_, r)| r.norton == Some(true));
    let vector_part_zero = factors.iter().all(|(f, _)| f.vector_part_vanishes());
    let expected = match case {
        ClassificationCase::VectorPartZero => {
            vector_part_zero && factor_dims.iter().all(|&d| d <= p)
        }
        _ => !vector_part_zero && factor_dims.iter().all(|&d| d == p * p),
    };
    ClassificationReport {
        case,
        module_dim: m.dim(),
        module_irreducible: factors.len() == 1 && factors[0].1.absolutely_irreducible(),
        factor_dims,
        certified,
        vector_part_zero,
        passed: expected && certified,
    }
}

/// Checks the simple modules at a character with `chi(e^p) = 0` when
/// `z = 0`: the N-type module when `chi(x_p) != 0`, the B-type module when
/// only `chi(y_p) != 0`, and otherwise every simple quotient of the module
/// induced from `e v = x v = 0`. Passing means all composition factors
/// have dimension `p^2` in the first two cases and that `x, y` act as zero
/// in the third. The N-type module itself can be larger than `p^2` when
/// `chi(f^p) = chi(y_p) = 0`; `module_dim` records this.
pub fn verify_z0_classification<F: Field, R: Rng>(
    set: &CenterGenSet,
    relation: &CentralRelation,
    chi: &Character<F>,
    field: &F,
    rng: &mut R,
) -> Result<ClassificationReport, RepnError> {
    let p = set.algebra().p() as usize;
    if !set.algebra().deformation().is_zero() {
        return Err(RepnError::Precondition(
            "the classification is for z = 0".into(),
        ));
    }
    if !field.is_zero(chi.ep()) {
        return Err(RepnError::Precondition("expects chi(e^p) = 0".into()));
    }
    let taus = relation.specialize(field, &chi.values).roots();
    let tau = taus
        .first()
        .cloned()
        .ok_or_else(|| RepnError::Precondition("no value of t_z in the working field".into()))?;
    if !field.is_zero(chi.xp()) {
        let kind = BabyVermaKind::N {
            phi: field.pth_root(chi.fp()),
            psi: field.pth_root(chi.yp()),
        };
        let mut full = chi.clone();
        full.tau = Some(tau);
        let m = baby_verma(set, &full, &kind, field)?;
        return Ok(classify_module(ClassificationCase::XpNonzero, &m, rng));
    }
    if !field.is_zero(chi.yp()) {
        let mut c = vec![field.zero(); p + 1];
        c[0] = field.neg(chi.hp());
        c[1] = field.neg(&field.one());
        c[p] = field.one();
        let lambda = UniPoly::new(field.clone(), c)
            .roots()
            .into_iter()
            .next()
            .ok_or_else(|| {
                RepnError::Precondition("no weight lambda in the working field".into())
            })?;
        let m = baby_verma(set, chi, &BabyVermaKind::B { lambda }, field)?;
        return Ok(classify_module(ClassificationCase::YpNonzero, &m, rng));
    }
    // every simple module is a quotient of the induced module at some tau
    let ind = ex_module(set, chi, &field.zero(), field)?;
    let t = ind.element_matrix(&set.tz);
    let module = ind.to_module();
    let mut modules = Vec::new();
    for tau in &taus {
        modules.push(quotient_by_central(&module, &t, &linear(field, tau))?);
    }
    let sum = modules
        .into_iter()
        .reduce(|a, b| a.direct_sum(&b))
        .expect("at least one root");
    let mut r = classify_module(ClassificationCase::VectorPartZero, &sum, rng);
    r.module_dim = module.dim();
    r.module_irreducible = false;
    Ok(r)
}

/// B-type baby Vermas on the `f^p = 1` stratum with `chi(y_p) = beta^p`.
#[derive(Clone, Debug, Serialize)]
pub struct BetaScan {
    pub total: usize,
    pub irreducible: usize,
    pub reducible_betas: Vec<String>,
}

impl BetaScan {
    /// At least one parameter gives an irreducible module.
    pub fn found_irreducible(&self) -> bool {
        self.irreducible > 0
    }
}

pub fn beta_scan<F: Field, R: Rng>(
    set: &CenterGenSet,
    field: &F,
    betas: &[F::Elem],
    rng: &mut R,
) -> Result<BetaScan, RepnError> {
    let p = field.characteristic() as u64;
    let mut irreducible = 0;
    let mut reducible_betas = Vec::new();
    for beta in betas {
        let chi = Character::new([
            field.zero(),
            field.one(),
            field.zero(),
            field.zero(),
            field.pow(beta, p),
        ]);
        let m = baby_verma(
            set,
            &chi,
            &BabyVermaKind::B {
                lambda: field.zero(),
            },
            field,
        )?;
        if irreducibility(&m, rng).absolutely_irreducible() {
            irreducible += 1;
        } else {
            reducible_betas.push(field.format(beta));
        }
    }
    Ok(BetaScan {
        total: betas.len(),
        irreducible,
        reducible_betas,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::casimir::CasimirPoly;
    use crate::center::{center_algebra, z0_expected_relation, LiftBounds};
    use crate::fields::PrimeField;

    fn set(p: u64, z: &[i64]) -> CenterGenSet {
        let f = PrimeField::new(p).unwrap();
        CenterGenSet::build(
            &center_algebra(f, CasimirPoly::from_ints(f, z)),
            &LiftBounds::for_prime(p as u32),
        )
        .unwrap()
    }

    #[test]
    fn strata() {
        let f = census_field(3).unwrap();
        let c = |v: [i64; 5]| Character::new(v.map(|x| f.from_i64(x)));
        assert_eq!(
            Stratum::classify(&f, &c([0, 0, 0, 0, 0])),
            Stratum::Nilpotent
        );
        assert_eq!(
            Stratum::classify(&f, &c([0, 0, 1, 1, 0])),
            Stratum::RegularSemisimple
        );
        assert_eq!(Stratum::classify(&f, &c([0, 1, 0, 0, 2])), Stratum::FpOne);
        assert_eq!(
            Stratum::classify(&f, &c([0, 2, 1, 0, 0])),
            Stratum::VectorPartZero
        );
    }

    #[test]
    fn regular_semisimple_point_has_nine_dimensional_simple() {
        let s = set(3, &[]);
        let f = census_field(3).unwrap();
        let chi = Character::new([0, 0, 1, 1, 0].map(|x| f.from_i64(x)));
        let rows = census_point(&s, &z0_expected_relation(3), &f, &chi, 1).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].max_irr_dim, 9, "{rows:?}");
        assert!(rows[0].smooth_flag && rows[0].azumaya_flag);
    }

    #[test]
    fn nilpotent_point_is_small() {
        let s = set(3, &[]);
        let f = census_field(3).unwrap();
        let rows = census_point(&s, &z0_expected_relation(3), &f, &Character::zero(&f), 2).unwrap();
        assert!(
            rows.iter().all(|r| r.max_irr_dim <= 3 && !r.smooth_flag),
            "{rows:?}"
        );
    }

    #[test]
    fn z0_classification_cases() {
        let s = set(3, &[]);
        let rel = z0_expected_relation(3);
        let f = census_field(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let c = |v: [i64; 5]| Character::new(v.map(|x| f.from_i64(x)));
        let r = verify_z0_classification(&s, &rel, &c([0, 0, 0, 1, 0]), &f, &mut rng).unwrap();
        assert_eq!(
            (r.case, r.module_dim, r.factor_dims.clone()),
            (ClassificationCase::XpNonzero, 27, vec![9; 3]),
            "{r:?}"
        );
        assert!(r.passed && !r.module_irreducible);
        let r = verify_z0_classification(&s, &rel, &c([0, 0, 0, 1, 1]), &f, &mut rng).unwrap();
        assert_eq!(
            (r.module_dim, r.module_irreducible, r.passed),
            (9, true, true),
            "{r:?}"
        );
        let r = verify_z0_classification(&s, &rel, &c([0, 0, 0, 0, 1]), &f, &mut rng).unwrap();
        assert_eq!(
            (r.case, r.module_dim, r.factor_dims.clone()),
            (ClassificationCase::YpNonzero, 9, vec![9]),
            "{r:?}"
        );
        assert!(r.passed && r.module_irreducible);
        let r = verify_z0_classification(&s, &rel, &c([0, 1, 1, 0, 0]), &f, &mut rng).unwrap();
        assert_eq!(r.case, ClassificationCase::VectorPartZero);
        assert!(r.passed && r.vector_part_zero, "{r:?}");
    }

    #[test]
    fn beta_scan_finds_irreducible_and_reducible() {
        let s = set(3, &[]);
        let f = census_field(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let r = beta_scan(&s, &f, &f.elements(), &mut rng).unwrap();
        assert_eq!(r.total, 27);
        assert!(r.found_irreducible(), "{r:?}");
        assert!(!r.reducible_betas.is_empty(), "{r:?}");
    }
}
