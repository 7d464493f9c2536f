//! Finite-dimensional modules over `H_z`: restricted fibers, induced
//! modules, irreducibility certificates and the census of central
//! characters.

mod census;
mod induced;
mod linalg;
mod oracle;
mod sl2;

pub use census::{
    azumaya_census, beta_scan, census_characters, census_field, verify_z0_classification,
    write_census, BetaScan, CensusConfig, CensusRow, CensusSummary, CensusWriteError,
    ClassificationCase, ClassificationReport, Stratum,
};
pub use induced::{
    baby_verma, ex_module, quotient_by_central, restricted_fiber, BabyVermaKind, FiberAlgebra,
    Induced, InducedSpec,
};
pub use linalg::{
    charpoly, commutant_dim, composition_factors, irreducibility, is_irreducible, quotient,
    restrict, spin, spin_subspace, IrreducibilityReport, Norton, Subspace,
};
pub use oracle::{oracle_agreement, OracleReport};
pub use sl2::{ade_image_test, sl2_simple, sl2_simple_over, AdeReport};

use thiserror::Error;

use crate::casimir::CasimirPoly;
use crate::center::CenterError;
use crate::fields::{Field, FieldError, Matrix};
use crate::pbw::{EngineError, Gen, NcPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepnError {
    #[error("restricted fibers need p <= 5 (p = {0} gives dimension p^5 = {1})")]
    PrimeTooLarge(u32, u64),
    #[error("inconsistent character: {0}")]
    InconsistentCharacter(String),
    #[error("module relations fail: {0}")]
    RelationsFail(String),
    #[error("cannot spin the zero vector")]
    ZeroVector,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Center(#[from] CenterError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Values of a central character on `e^p, f^p, h^p - h, x_p, y_p`, and
/// optionally on `t_z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character<F: Field> {
    pub values: [F::Elem; 5],
    pub tau: Option<F::Elem>,
}

impl<F: Field> Character<F> {
    pub fn new(values: [F::Elem; 5]) -> Self {
        Character { values, tau: None }
    }

    pub fn zero(field: &F) -> Self {
        Self::new(std::array::from_fn(|_| field.zero()))
    }

    pub fn ep(&self) -> &F::Elem {
        &self.values[0]
    }

    pub fn fp(&self) -> &F::Elem {
        &self.values[1]
    }

    pub fn hp(&self) -> &F::Elem {
        &self.values[2]
    }

    pub fn xp(&self) -> &F::Elem {
        &self.values[3]
    }

    pub fn yp(&self) -> &F::Elem {
        &self.values[4]
    }

    pub fn format(&self, field: &F) -> String {
        let mut parts: Vec<String> = self.values.iter().map(|v| field.format(v)).collect();
        if let Some(t) = &self.tau {
            parts.push(format!("tau={}", field.format(t)));
        }
        format!("({})", parts.join(", "))
    }
}

/// Anything that lets the five generators act on column vectors.
pub trait Action<F: Field> {
    fn field(&self) -> &F;
    fn dim(&self) -> usize;
    fn apply(&self, g: Gen, v: &[F::Elem]) -> Vec<F::Elem>;
}

/// Sparse square matrix stored by columns.
#[derive(Clone, Debug)]
pub struct SparseMat<F: Field> {
    pub cols: Vec<Vec<(usize, F::Elem)>>,
}

impl<F: Field> SparseMat<F> {
    pub fn apply(&self, field: &F, v: &[F::Elem]) -> Vec<F::Elem> {
        let mut out = vec![field.zero(); self.cols.len()];
        for (j, col) in self.cols.iter().enumerate() {
            if field.is_zero(&v[j]) {
                continue;
            }
            for (i, c) in col {
                out[*i] = field.add(&out[*i], &field.mul(c, &v[j]));
            }
        }
        out
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn to_dense(&self, field: &F) -> Matrix<F> {
        let n = self.cols.len();
        let mut m = Matrix::zeros(field.clone(), n, n);
        for (j, col) in self.cols.iter().enumerate() {
            for (i, c) in col {
                m.set(*i, j, c.clone());
            }
        }
        m
    }
}

/// A module given by the matrices of `e, f, h, x, y`.
#[derive(Clone, Debug)]
pub struct ModuleRep<F: Field> {
    field: F,
    mats: [Matrix<F>; 5],
}

impl<F: Field> ModuleRep<F> {
    /// Matrices indexed by `e, f, h, x, y`. No relations are checked here;
    /// see [`relation_defects`].
    pub fn new(field: F, mats: [Matrix<F>; 5]) -> Self {
        let n = mats[0].rows();
        assert!(
            mats.iter().all(|m| m.rows() == n && m.cols() == n),
            "square matrices of one size"
        );
        ModuleRep { field, mats }
    }

    pub fn mat(&self, g: Gen) -> &Matrix<F> {
        &self.mats[g.index()]
    }

    pub fn mats(&self) -> &[Matrix<F>; 5] {
        &self.mats
    }

    /// Block direct sum.
    pub fn direct_sum(&self, other: &ModuleRep<F>) -> ModuleRep<F> {
        let (a, b) = (self.dim(), other.dim());
        let mats = std::array::from_fn(|i| {
            let mut m = Matrix::zeros(self.field.clone(), a + b, a + b);
            for r in 0..a {
                for c in 0..a {
                    m.set(r, c, self.mats[i].get(r, c).clone());
                }
            }
            for r in 0..b {
                for c in 0..b {
                    m.set(a + r, a + c, other.mats[i].get(r, c).clone());
                }
            }
            m
        });
        ModuleRep::new(self.field.clone(), mats)
    }

    /// `x` and `y` act as zero.
    pub fn vector_part_vanishes(&self) -> bool {
        self.mat(Gen::X).is_zero() && self.mat(Gen::Y).is_zero()
    }
}

impl<F: Field> Action<F> for ModuleRep<F> {
    fn field(&self) -> &F {
        &self.field
    }

    fn dim(&self) -> usize {
        self.mats[0].rows()
    }

    fn apply(&self, g: Gen, v: &[F::Elem]) -> Vec<F::Elem> {
        self.mats[g.index()].mul_vec(v)
    }
}

fn unit<F: Field>(field: &F, n: usize, i: usize) -> Vec<F::Elem> {
    let mut v = vec![field.zero(); n];
    v[i] = field.one();
    v
}

fn axpy<F: Field>(field: &F, acc: &mut [F::Elem], s: &F::Elem, v: &[F::Elem]) {
    for (a, b) in acc.iter_mut().zip(v) {
        *a = field.add(a, &field.mul(s, b));
    }
}

/// Image of `v` under an element of `H_z`, computed from the generator
/// action alone.
pub fn act_element<F: Field, A: Action<F>>(module: &A, a: &NcPoly, v: &[F::Elem]) -> Vec<F::Elem> {
    let field = module.field();
    let order = *a.algebra().order();
    let mut out = vec![field.zero(); v.len()];
    for (m, c) in a.terms() {
        let mut w = v.to_vec();
        for (g, n) in m.factors(&order).into_iter().rev() {
            for _ in 0..n {
                w = module.apply(g, &w);
            }
        }
        axpy(field, &mut out, &field.from_fp(*c), &w);
    }
    out
}

/// Matrix of an element of `H_z`.
pub fn element_matrix<F: Field, A: Action<F>>(module: &A, a: &NcPoly) -> Matrix<F> {
    let field = module.field();
    let n = module.dim();
    let cols: Vec<Vec<F::Elem>> = (0..n)
        .map(|j| act_element(module, a, &unit(field, n, j)))
        .collect();
    Matrix::from_columns(field.clone(), n, &cols)
}

/// Expected value of `[a, b] v` for the defining relations; `None` for
/// pairs that commute.
fn expected_bracket<F: Field, A: Action<F>>(
    module: &A,
    z: &CasimirPoly,
    a: Gen,
    b: Gen,
    v: &[F::Elem],
) -> Vec<F::Elem> {
    use Gen::*;
    let field = module.field();
    let scaled = |c: i64, g: Gen| {
        let w = module.apply(g, v);
        w.iter()
            .map(|x| field.mul(&field.from_i64(c), x))
            .collect::<Vec<_>>()
    };
    match (a, b) {
        (H, E) => scaled(2, E),
        (H, F) => scaled(-2, F),
        (E, F) => scaled(1, H),
        (H, X) => scaled(1, X),
        (H, Y) => scaled(-1, Y),
        (F, X) => scaled(1, Y),
        (E, Y) => scaled(1, X),
        (X, Y) => casimir_action(module, z, v),
        _ => vec![field.zero(); v.len()],
    }
}

/// `z(D) v` with `D = h^2 + 4ef - 2h`, by Horner's rule.
pub fn casimir_action<F: Field, A: Action<F>>(
    module: &A,
    z: &CasimirPoly,
    v: &[F::Elem],
) -> Vec<F::Elem> {
    let field = module.field();
    let delta = |w: &[F::Elem]| {
        let hh = module.apply(Gen::H, &module.apply(Gen::H, w));
        let ef = module.apply(Gen::E, &module.apply(Gen::F, w));
        let h = module.apply(Gen::H, w);
        let mut out = hh;
        axpy(field, &mut out, &field.from_i64(4), &ef);
        axpy(field, &mut out, &field.from_i64(-2), &h);
        out
    };
    let mut acc = vec![field.zero(); v.len()];
    for c in z.coeffs().iter().rev() {
        acc = delta(&acc);
        axpy(field, &mut acc, &field.from_fp(*c), v);
    }
    acc
}

const PAIRS: [(Gen, Gen); 10] = [
    (Gen::H, Gen::E),
    (Gen::H, Gen::F),
    (Gen::E, Gen::F),
    (Gen::H, Gen::X),
    (Gen::H, Gen::Y),
    (Gen::E, Gen::X),
    (Gen::F, Gen::X),
    (Gen::E, Gen::Y),
    (Gen::F, Gen::Y),
    (Gen::X, Gen::Y),
];

/// The defining relations that fail on some basis vector, as `"[a,b]"`
/// labels. The `sl_2` relations alone are checked when `z` is `None`.
pub fn relation_defects<F: Field, A: Action<F>>(
    module: &A,
    z: Option<&CasimirPoly>,
) -> Vec<String> {
    let field = module.field();
    let n = module.dim();
    let zero_z;
    let zz = match z {
        Some(z) => z,
        None => {
            zero_z = CasimirPoly::zero(
                crate::fields::PrimeField::new(field.characteristic() as u64).expect("prime"),
            );
            &zero_z
        }
    };
    let mut out = Vec::new();
    for (a, b) in PAIRS {
        if z.is_none() && (a.is_vector() || b.is_vector()) {
            continue;
        }
        let ok = (0..n).all(|j| {
            let v = unit(field, n, j);
            let ab = module.apply(a, &module.apply(b, &v));
            let ba = module.apply(b, &module.apply(a, &v));
            let lhs: Vec<F::Elem> = ab.iter().zip(&ba).map(|(x, y)| field.sub(x, y)).collect();
            lhs == expected_bracket(module, zz, a, b, &v)
        });
        if !ok {
            out.push(format!("[{a},{b}]"));
        }
    }
    out
}

/// Whether an element commutes with the five generator matrices.
pub fn commutes_in<F: Field, A: Action<F>>(module: &A, a: &NcPoly) -> bool {
    let field = module.field();
    let n = module.dim();
    (0..n).all(|j| {
        let v = unit(field, n, j);
        let av = act_element(module, a, &v);
        Gen::ALL
            .iter()
            .all(|&g| act_element(module, a, &module.apply(g, &v)) == module.apply(g, &av))
    })
}

/// Whether an element acts as the scalar `s`.
pub fn acts_as_scalar<F: Field, A: Action<F>>(module: &A, a: &NcPoly, s: &F::Elem) -> bool {
    let field = module.field();
    let n = module.dim();
    (0..n).all(|j| {
        let v = unit(field, n, j);
        let want: Vec<F::Elem> = v.iter().map(|x| field.mul(x, s)).collect();
        act_element(module, a, &v) == want
    })
}
