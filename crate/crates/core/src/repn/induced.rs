use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::center::CenterGenSet;
use crate::fields::{Field, Matrix, UniPoly};
use crate::pbw::{Algebra, Gen, GeneratorOrder, NcPoly, PbwMonomial};

use super::{
    act_element, element_matrix, linalg::Subspace, quotient, relation_defects, Action, Character,
    ModuleRep, RepnError, SparseMat,
};

/// Shape of an induced module: the first `n_free` generators of `order`
/// span the basis, the others act on the generating vector by the given
/// scalars.
#[derive(Clone, Debug)]
pub struct InducedSpec<F: Field> {
    pub order: GeneratorOrder,
    pub n_free: usize,
    /// Indexed by generator; required for every non-free generator.
    pub scalars: [Option<F::Elem>; 5],
}

/// A module `H_chi0 (x)_B k` where `B` is spanned by the trailing
/// generators of the order. With no trailing generators this is the
/// restricted fiber acting on itself by left multiplication.
#[derive(Clone, Debug)]
pub struct Induced<F: Field> {
    field: F,
    alg: Arc<Algebra>,
    chi: Character<F>,
    basis: Vec<PbwMonomial>,
    gens: [SparseMat<F>; 5],
}

/// The restricted fiber `H_z / (u - chi0(u))` over the five Frobenius-part
/// generators `u`, of dimension `p^5`.
pub type FiberAlgebra<F> = Induced<F>;

type SparseVec<F> = Vec<(usize, <F as Field>::Elem)>;

/// Rewrites normal monomials into the basis, replacing `g^p` of a free
/// generator by `chi(C_g) - L_g` where `C_g` is the central element with top
/// symbol `g^p` and `L_g = C_g - g^p`.
struct Reducer<'a, F: Field> {
    field: &'a F,
    alg: &'a Arc<Algebra>,
    free: &'a [Gen],
    scalars: &'a [Option<F::Elem>; 5],
    chi: &'a Character<F>,
    lowers: &'a [NcPoly; 5],
    index: &'a HashMap<PbwMonomial, usize>,
    cache: HashMap<PbwMonomial, SparseVec<F>>,
}

impl<F: Field> Reducer<'_, F> {
    fn monomial(&mut self, m: PbwMonomial) -> Result<SparseVec<F>, RepnError> {
        if let Some(v) = self.cache.get(&m) {
            return Ok(v.clone());
        }
        let p = self.alg.p() as u16;
        let f = self.field;
        let out = match self.free.iter().copied().find(|&g| m.exp(g) >= p) {
            Some(g) => {
                let lowered = m.lowered(g, p);
                let mut acc: BTreeMap<usize, F::Elem> = BTreeMap::new();
                let chi = &self.chi.values[g.index()];
                if !f.is_zero(chi) {
                    for (i, c) in self.monomial(lowered)? {
                        add_into(f, &mut acc, i, f.mul(chi, &c));
                    }
                }
                let low = &self.lowers[g.index()];
                if !low.is_zero() {
                    let order = *self.alg.order();
                    let factors = m.factors(&order);
                    let at = factors.iter().position(|(h, _)| *h == g).expect("g occurs");
                    let mut left: Vec<(Gen, u16)> = factors[..at].to_vec();
                    left.push((g, factors[at].1 - p));
                    let left = self.alg.word_powers(&left);
                    let right = self.alg.word_powers(&factors[at + 1..]);
                    let prod = left.try_mul(low)?.try_mul(&right)?;
                    for (mm, c) in prod.terms() {
                        let s = f.neg(&f.from_fp(*c));
                        for (i, v) in self.monomial(*mm)? {
                            add_into(f, &mut acc, i, f.mul(&s, &v));
                        }
                    }
                }
                acc.into_iter().filter(|(_, c)| !f.is_zero(c)).collect()
            }
            None => {
                let mut s = f.one();
                let mut free_part = PbwMonomial::ONE;
                for g in Gen::ALL {
                    let k = m.exp(g);
                    if k == 0 {
                        continue;
                    }
                    if self.free.contains(&g) {
                        free_part = free_part.with_exp(g, k);
                    } else {
                        let sc = self.scalars[g.index()]
                            .as_ref()
                            .expect("scalar for non-free generator");
                        s = f.mul(&s, &f.pow(sc, k as u64));
                    }
                }
                if f.is_zero(&s) {
                    Vec::new()
                } else {
                    vec![(self.index[&free_part], s)]
                }
            }
        };
        self.cache.insert(m, out.clone());
        Ok(out)
    }

    fn element(&mut self, a: &NcPoly) -> Result<SparseVec<F>, RepnError> {
        let f = self.field;
        let mut acc: BTreeMap<usize, F::Elem> = BTreeMap::new();
        for (m, c) in a.terms() {
            let s = f.from_fp(*c);
            for (i, v) in self.monomial(*m)? {
                add_into(f, &mut acc, i, f.mul(&s, &v));
            }
        }
        Ok(acc.into_iter().filter(|(_, c)| !f.is_zero(c)).collect())
    }
}

fn add_into<F: Field>(f: &F, acc: &mut BTreeMap<usize, F::Elem>, i: usize, c: F::Elem) {
    let e = acc.entry(i).or_insert_with(|| f.zero());
    *e = f.add(e, &c);
}

/// Restricted monomials in the given generators, all exponents below `p`.
fn restricted_monomials(p: u16, free: &[Gen]) -> Vec<PbwMonomial> {
    let mut out = vec![PbwMonomial::ONE];
    for &g in free {
        out = out
            .into_iter()
            .flat_map(|m| (0..p).map(move |k| m.with_exp(g, k)))
            .collect();
    }
    out.sort();
    out
}

impl<F: Field> Induced<F> {
    /// Builds the module and verifies the defining relations on it and the
    /// action of the Frobenius-part generators on the generating vector.
    pub fn build(
        set: &CenterGenSet,
        chi: &Character<F>,
        spec: &InducedSpec<F>,
        field: &F,
    ) -> Result<Self, RepnError> {
        let std_alg = set.algebra();
        let alg = std_alg.reordered(spec.order);
        let p = alg.p() as u16;
        let free: Vec<Gen> = (0..spec.n_free).map(|i| spec.order.at(i)).collect();
        for i in spec.n_free..5 {
            let g = spec.order.at(i);
            if spec.scalars[g.index()].is_none() {
                return Err(RepnError::Precondition(format!("no scalar given for {g}")));
            }
        }
        let power = |g: Gen| alg.word_powers(&[(g, p)]);
        let central: [NcPoly; 5] = [
            power(Gen::E),
            power(Gen::F),
            set.hp.convert_to(&alg),
            set.xp.convert_to(&alg),
            set.yp.convert_to(&alg),
        ];
        let lowers: [NcPoly; 5] = std::array::from_fn(|i| &central[i] - &power(Gen::from_index(i)));
        let basis = restricted_monomials(p, &free);
        let index: HashMap<PbwMonomial, usize> =
            basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let mut red = Reducer {
            field,
            alg: &alg,
            free: &free,
            scalars: &spec.scalars,
            chi,
            lowers: &lowers,
            index: &index,
            cache: HashMap::new(),
        };
        let mut gens: Vec<SparseMat<F>> = Vec::with_capacity(5);
        for g in Gen::ALL {
            let gp = NcPoly::gen(alg.clone(), g);
            let mut cols = Vec::with_capacity(basis.len());
            for b in &basis {
                let prod = gp.try_mul(&NcPoly::monomial(alg.clone(), *b, crate::fields::Fp(1)))?;
                cols.push(red.element(&prod)?);
            }
            gens.push(SparseMat { cols });
        }
        let gens: [SparseMat<F>; 5] = gens.try_into().expect("five generators");
        let module = Induced {
            field: field.clone(),
            alg: alg.clone(),
            chi: chi.clone(),
            basis,
            gens,
        };

        let defects = relation_defects(&module, Some(alg.deformation()));
        if !defects.is_empty() {
            return Err(RepnError::RelationsFail(defects.join(", ")));
        }
        let v = module.generating_vector();
        for ((c, name), want) in central
            .iter()
            .zip(["e^p", "f^p", "h^p-h", "x_p", "y_p"])
            .zip(&chi.values)
        {
            let got = act_element(&module, c, &v);
            let expect: Vec<F::Elem> = v.iter().map(|x| field.mul(x, want)).collect();
            if got != expect {
                return Err(RepnError::InconsistentCharacter(format!(
                    "{name} does not act on the generating vector as {}",
                    field.format(want)
                )));
            }
        }
        Ok(module)
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn character(&self) -> &Character<F> {
        &self.chi
    }

    pub fn basis(&self) -> &[PbwMonomial] {
        &self.basis
    }

    pub fn generator(&self, g: Gen) -> &SparseMat<F> {
        &self.gens[g.index()]
    }

    /// The image of `1`, i.e. the unit vector of the empty monomial.
    pub fn generating_vector(&self) -> Vec<F::Elem> {
        let i = self
            .basis
            .iter()
            .position(|m| m.is_one())
            .expect("1 is a basis monomial");
        super::unit(&self.field, self.basis.len(), i)
    }

    pub fn to_module(&self) -> ModuleRep<F> {
        ModuleRep::new(
            self.field.clone(),
            std::array::from_fn(|i| self.gens[i].to_dense(&self.field)),
        )
    }

    /// Matrix of an element given in any order over the same `H_z`.
    pub fn element_matrix(&self, a: &NcPoly) -> Matrix<F> {
        element_matrix(self, a)
    }
}

impl<F: Field> Action<F> for Induced<F> {
    fn field(&self) -> &F {
        &self.field
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }

    fn apply(&self, g: Gen, v: &[F::Elem]) -> Vec<F::Elem> {
        self.gens[g.index()].apply(&self.field, v)
    }
}

/// The `p^5`-dimensional fiber at a character of the Frobenius part.
pub fn restricted_fiber<F: Field>(
    set: &CenterGenSet,
    chi0: &Character<F>,
    field: &F,
) -> Result<FiberAlgebra<F>, RepnError> {
    let p = set.algebra().p();
    if p > 5 {
        return Err(RepnError::PrimeTooLarge(p, (p as u64).pow(5)));
    }
    let spec = InducedSpec {
        order: GeneratorOrder::standard(),
        n_free: 5,
        scalars: std::array::from_fn(|_| None),
    };
    Induced::build(set, chi0, &spec, field)
}

/// Which subalgebra the baby Verma module is induced from.
#[derive(Clone, Debug)]
pub enum BabyVermaKind<F: Field> {
    /// From the span of `e, h, x` with `e v = x v = 0`, `h v = lambda v`;
    /// basis `f^i y^j v`.
    B { lambda: F::Elem },
    /// From the span of `f, y` with `f v = phi v`, `y v = psi v`; the
    /// induced module has dimension `p^3` and is cut down by `t_z - tau`.
    N { phi: F::Elem, psi: F::Elem },
}

/// Baby Verma module. The B-type module has dimension `p^2`. The N-type
/// module needs `chi.tau`; it has dimension `p^2` when `phi` or `psi` is
/// nonzero, while at `phi = psi = 0` the element `t_z` already acts as
/// `tau` on the induced module and the dimension stays `p^3`.
pub fn baby_verma<F: Field>(
    set: &CenterGenSet,
    chi: &Character<F>,
    kind: &BabyVermaKind<F>,
    field: &F,
) -> Result<ModuleRep<F>, RepnError> {
    let zero = field.zero();
    match kind {
        BabyVermaKind::B { lambda } => {
            let mut scalars: [Option<F::Elem>; 5] = std::array::from_fn(|_| None);
            scalars[Gen::E.index()] = Some(zero.clone());
            scalars[Gen::X.index()] = Some(zero);
            scalars[Gen::H.index()] = Some(lambda.clone());
            let order =
                GeneratorOrder::new([Gen::F, Gen::Y, Gen::H, Gen::E, Gen::X]).expect("order");
            let spec = InducedSpec {
                order,
                n_free: 2,
                scalars,
            };
            Ok(Induced::build(set, chi, &spec, field)?.to_module())
        }
        BabyVermaKind::N { phi, psi } => {
            let tau = chi.tau.clone().ok_or_else(|| {
                RepnError::Precondition("N-type baby Verma needs the value of t_z".into())
            })?;
            let mut scalars: [Option<F::Elem>; 5] = std::array::from_fn(|_| None);
            scalars[Gen::F.index()] = Some(phi.clone());
            scalars[Gen::Y.index()] = Some(psi.clone());
            let order =
                GeneratorOrder::new([Gen::E, Gen::H, Gen::X, Gen::F, Gen::Y]).expect("order");
            let spec = InducedSpec {
                order,
                n_free: 3,
                scalars,
            };
            let ind = Induced::build(set, chi, &spec, field)?;
            let t = set.tz.convert_to(ind.algebra());
            quotient_by_central(
                &ind.to_module(),
                &ind.element_matrix(&t),
                &UniPoly::new(field.clone(), vec![field.neg(&tau), field.one()]),
            )
        }
    }
}

/// The `p^3`-dimensional module induced from `e v = 0`, `x v = xi v`, with
/// basis `f^a h^b y^c v`. Needs `xi^p = chi(x_p)` and `chi(e^p) = 0`; every
/// simple module with such a central character is a quotient of it.
pub fn ex_module<F: Field>(
    set: &CenterGenSet,
    chi: &Character<F>,
    xi: &F::Elem,
    field: &F,
) -> Result<Induced<F>, RepnError> {
    let mut scalars: [Option<F::Elem>; 5] = std::array::from_fn(|_| None);
    scalars[Gen::E.index()] = Some(field.zero());
    scalars[Gen::X.index()] = Some(xi.clone());
    let order = GeneratorOrder::new([Gen::F, Gen::H, Gen::Y, Gen::E, Gen::X]).expect("order");
    Induced::build(
        set,
        chi,
        &InducedSpec {
            order,
            n_free: 3,
            scalars,
        },
        field,
    )
}

/// `M / q(T) M` for the matrix `T` of a central element; the image of
/// `q(T)` is a submodule because `T` commutes with the action.
pub fn quotient_by_central<F: Field>(
    m: &ModuleRep<F>,
    t: &Matrix<F>,
    q: &UniPoly<F>,
) -> Result<ModuleRep<F>, RepnError> {
    let f = m.field();
    let n = m.dim();
    let mut qt = Matrix::zeros(f.clone(), n, n);
    for c in q.coeffs().iter().rev() {
        qt = qt.mul(t).add(&Matrix::scalar(f.clone(), n, c));
    }
    let mut image = Subspace::new(f.clone(), n);
    for j in 0..n {
        image.insert(&qt.column(j));
    }
    Ok(quotient(m, &image))
}
