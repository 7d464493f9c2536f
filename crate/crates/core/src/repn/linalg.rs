use rand::Rng;

use crate::fields::{Field, Matrix, UniPoly};
use crate::pbw::Gen;

use super::{unit, Action, ModuleRep, RepnError};

/// A subspace kept in reduced row echelon form.
#[derive(Clone, Debug)]
pub struct Subspace<F: Field> {
    field: F,
    n: usize,
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn new(field: F, n: usize) -> Self {
        Subspace {
            field,
            n,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> &[Vec<F::Elem>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `v` minus its projection along the pivots.
    pub fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut w = v.to_vec();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            if f.is_zero(&w[c]) {
                continue;
            }
            let s = w[c].clone();
            for (wi, ri) in w.iter_mut().zip(row) {
                *wi = f.sub(wi, &f.mul(&s, ri));
            }
        }
        w
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        self.reduce(v).iter().all(|x| self.field.is_zero(x))
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[F::Elem]) -> bool {
        let f = self.field.clone();
        let mut w = self.reduce(v);
        let Some(c) = w.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&w[c]).expect("nonzero pivot");
        for x in w.iter_mut() {
            *x = f.mul(x, &inv);
        }
        for row in self.rows.iter_mut() {
            if f.is_zero(&row[c]) {
                continue;
            }
            let s = row[c].clone();
            for (ri, wi) in row.iter_mut().zip(&w) {
                *ri = f.sub(ri, &f.mul(&s, wi));
            }
        }
        let at = self.pivots.partition_point(|&p| p < c);
        self.pivots.insert(at, c);
        self.rows.insert(at, w);
        true
    }

    /// Coordinates of a member with respect to [`Subspace::basis`].
    pub fn coordinates(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        self.pivots.iter().map(|&c| v[c].clone()).collect()
    }

    /// The annihilator `{u : <u, w> = 0 for all w in self}`.
    pub fn annihilator(&self) -> Subspace<F> {
        let f = &self.field;
        let mut out = Subspace::new(f.clone(), self.n);
        if self.rows.is_empty() {
            for i in 0..self.n {
                out.insert(&unit(f, self.n, i));
            }
            return out;
        }
        let m = Matrix::from_rows(f.clone(), self.rows.clone()).expect("rows of equal length");
        for v in m.nullspace() {
            out.insert(&v);
        }
        out
    }
}

/// Closure of `span(v)` under the generators.
pub fn spin_subspace<F: Field, A: Action<F>>(module: &A, seeds: &[Vec<F::Elem>]) -> Subspace<F> {
    let mut sub = Subspace::new(module.field().clone(), module.dim());
    let mut queue: Vec<Vec<F::Elem>> = Vec::new();
    for s in seeds {
        if sub.insert(s) {
            queue.push(s.clone());
        }
    }
    while let Some(w) = queue.pop() {
        if sub.dim() == module.dim() {
            break;
        }
        for g in Gen::ALL {
            let gw = module.apply(g, &w);
            if sub.insert(&gw) {
                queue.push(gw);
            }
        }
    }
    sub
}

/// Dimension of the submodule generated by `v`.
pub fn spin<F: Field, A: Action<F>>(module: &A, v: &[F::Elem]) -> Result<usize, RepnError> {
    if v.iter().all(|x| module.field().is_zero(x)) {
        return Err(RepnError::ZeroVector);
    }
    Ok(spin_subspace(module, &[v.to_vec()]).dim())
}

/// The action of the transposed matrices (the dual module up to the sign
/// convention, which does not affect invariant subspaces).
struct Transposed<'a, F: Field> {
    field: F,
    mats: Vec<Matrix<F>>,
    _m: std::marker::PhantomData<&'a ()>,
}

impl<F: Field> Action<F> for Transposed<'_, F> {
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

fn transposed<F: Field>(m: &ModuleRep<F>) -> Transposed<'_, F> {
    Transposed {
        field: m.field.clone(),
        mats: m.mats.iter().map(Matrix::transpose).collect(),
        _m: std::marker::PhantomData,
    }
}

/// The submodule `sub` as a module in its own right.
pub fn restrict<F: Field>(m: &ModuleRep<F>, sub: &Subspace<F>) -> ModuleRep<F> {
    let k = sub.dim();
    let mats = std::array::from_fn(|i| {
        let g = Gen::from_index(i);
        let cols: Vec<Vec<F::Elem>> = sub
            .basis()
            .iter()
            .map(|b| sub.coordinates(&m.apply(g, b)))
            .collect();
        Matrix::from_columns(m.field.clone(), k, &cols)
    });
    ModuleRep::new(m.field.clone(), mats)
}

/// The quotient by the submodule `sub`, on the unit vectors of the
/// non-pivot coordinates.
pub fn quotient<F: Field>(m: &ModuleRep<F>, sub: &Subspace<F>) -> ModuleRep<F> {
    let n = m.dim();
    let free: Vec<usize> = (0..n).filter(|c| !sub.pivots().contains(c)).collect();
    let k = free.len();
    let mats = std::array::from_fn(|i| {
        let g = Gen::from_index(i);
        let cols: Vec<Vec<F::Elem>> = free
            .iter()
            .map(|&c| {
                let w = sub.reduce(&m.apply(g, &unit(&m.field, n, c)));
                free.iter().map(|&r| w[r].clone()).collect()
            })
            .collect();
        Matrix::from_columns(m.field.clone(), k, &cols)
    });
    ModuleRep::new(m.field.clone(), mats)
}

/// Dimension of `{C : [M_g, C] = 0 for all g}` by a direct linear solve
/// in `n^2` unknowns.
pub fn commutant_dim<F: Field>(m: &ModuleRep<F>) -> usize {
    let n = m.dim();
    let f = &m.field;
    let mut sys = Matrix::zeros(f.clone(), 5 * n * n, n * n);
    // unknown C[r][c] sits at column r * n + c
    for (gi, a) in m.mats.iter().enumerate() {
        for r in 0..n {
            for c in 0..n {
                let row = gi * n * n + r * n + c;
                // (A C)[r][c] = sum_k A[r][k] C[k][c]
                for k in 0..n {
                    let v = a.get(r, k);
                    if !f.is_zero(v) {
                        let col = k * n + c;
                        let cur = sys.get(row, col).clone();
                        sys.set(row, col, f.add(&cur, v));
                    }
                }
                // (C A)[r][c] = sum_k C[r][k] A[k][c]
                for k in 0..n {
                    let v = a.get(k, c);
                    if !f.is_zero(v) {
                        let col = r * n + k;
                        let cur = sys.get(row, col).clone();
                        sys.set(row, col, f.sub(&cur, v));
                    }
                }
            }
        }
    }
    n * n - sys.rank()
}

/// Characteristic polynomial via reduction to Hessenberg form.
pub fn charpoly<F: Field>(a: &Matrix<F>) -> UniPoly<F> {
    let f = a.field().clone();
    let n = a.rows();
    let mut h = a.clone();
    for c in 0..n.saturating_sub(2) {
        let Some(piv) = (c + 1..n).find(|&r| !f.is_zero(h.get(r, c))) else {
            continue;
        };
        if piv != c + 1 {
            for j in 0..n {
                let (x, y) = (h.get(piv, j).clone(), h.get(c + 1, j).clone());
                h.set(piv, j, y);
                h.set(c + 1, j, x);
            }
            for i in 0..n {
                let (x, y) = (h.get(i, piv).clone(), h.get(i, c + 1).clone());
                h.set(i, piv, y);
                h.set(i, c + 1, x);
            }
        }
        let inv = f.inv(h.get(c + 1, c)).expect("pivot");
        for r in c + 2..n {
            let s = f.mul(h.get(r, c), &inv);
            if f.is_zero(&s) {
                continue;
            }
            for j in 0..n {
                let v = f.sub(h.get(r, j), &f.mul(&s, h.get(c + 1, j)));
                h.set(r, j, v);
            }
            for i in 0..n {
                let v = f.add(h.get(i, c + 1), &f.mul(&s, h.get(i, r)));
                h.set(i, c + 1, v);
            }
        }
    }
    // p_m = (t - h_mm) p_{m-1} - sum_{i<m} h_im (prod_{j=i+1..m} h_{j,j-1}) p_{i-1}
    let t = UniPoly::var(f.clone());
    let mut ps: Vec<UniPoly<F>> = vec![UniPoly::constant(f.clone(), f.one())];
    for m in 0..n {
        let mut next = t
            .sub(&UniPoly::constant(f.clone(), h.get(m, m).clone()))
            .mul(&ps[m]);
        let mut prod = f.one();
        for i in (0..m).rev() {
            prod = f.mul(&prod, h.get(i + 1, i));
            let coeff = f.mul(h.get(i, m), &prod);
            if !f.is_zero(&coeff) {
                next = next.sub(&ps[i].scale(&coeff));
            }
        }
        ps.push(next);
    }
    ps.pop().expect("nonempty")
}

/// Outcome of Norton's irreducibility test.
#[derive(Clone, Debug)]
pub enum Norton<F: Field> {
    /// Certified irreducible over the working field; the singular element
    /// used had the given nullity, and `end_dim` is the dimension of the
    /// endomorphism algebra.
    Irreducible { nullity: usize, end_dim: usize },
    /// A proper nonzero submodule.
    Reducible(Subspace<F>),
    /// No usable singular element was found.
    Inconclusive,
}

const NORTON_ATTEMPTS: usize = 64;
const MAX_PROJECTIVE_POINTS: u64 = 4096;

fn random_algebra_element<F: Field, R: Rng>(m: &ModuleRep<F>, rng: &mut R) -> Matrix<F> {
    let f = &m.field;
    let n = m.dim();
    let mut acc = Matrix::scalar(f.clone(), n, &f.random(rng));
    for _ in 0..6 {
        let len = rng.gen_range(1..=3);
        let mut w = Matrix::identity(f.clone(), n);
        for _ in 0..len {
            w = w.mul(&m.mats[rng.gen_range(0..5)]);
        }
        acc = acc.add(&w.scale(&f.random(rng)));
    }
    acc
}

/// Nonzero vectors of a subspace, one per line.
fn projective_points<F: Field>(field: &F, basis: &[Vec<F::Elem>]) -> Vec<Vec<F::Elem>> {
    let q = field.order();
    let k = basis.len();
    let mut out = Vec::new();
    // leading coefficient 1 at position `lead`, arbitrary after it
    for lead in 0..k {
        let rest = k - lead - 1;
        for code in 0..q.pow(rest as u32) {
            let mut v = basis[lead].clone();
            let mut c = code;
            for b in &basis[lead + 1..] {
                let s = field.element(c % q);
                c /= q;
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi = field.add(vi, &field.mul(&s, bi));
                }
            }
            out.push(v);
        }
    }
    out
}

/// Dimension of `End(M)` for `M` cyclic on `v`, using candidate images of
/// `v` from `kernel` (which must contain `C v` for every endomorphism `C`).
fn endomorphism_dim<F: Field>(m: &ModuleRep<F>, v: &[F::Elem], kernel: &[Vec<F::Elem>]) -> usize {
    let f = &m.field;
    let n = m.dim();
    // standard basis from spinning v, remembering how each vector arose
    let mut sub = Subspace::new(f.clone(), n);
    let mut raws: Vec<Vec<F::Elem>> = Vec::new();
    let mut how: Vec<Option<(usize, Gen)>> = Vec::new();
    sub.insert(v);
    raws.push(v.to_vec());
    how.push(None);
    let mut i = 0;
    while i < raws.len() {
        for g in Gen::ALL {
            let w = m.apply(g, &raws[i]);
            if sub.insert(&w) {
                raws.push(w);
                how.push(Some((i, g)));
            }
        }
        i += 1;
    }
    assert_eq!(raws.len(), n, "module is cyclic on v");
    let b = Matrix::from_columns(f.clone(), n, &raws);
    let images = |w: &[F::Elem]| {
        let mut out: Vec<Vec<F::Elem>> = Vec::with_capacity(n);
        for h in &how {
            let next = match h {
                None => w.to_vec(),
                Some((parent, g)) => m.apply(*g, &out[*parent]),
            };
            out.push(next);
        }
        out
    };
    let cand: Vec<Vec<Vec<F::Elem>>> = kernel.iter().map(|w| images(w)).collect();
    // C_j (g b_i) = sum_k coords_k c_k^(j) must equal g c_i^(j)
    let mut eqs: Vec<Vec<F::Elem>> = Vec::new();
    for g in Gen::ALL {
        for i in 0..n {
            let gb = m.apply(g, &raws[i]);
            let coords = b.solve(&gb).expect("square").expect("b is a basis");
            let mut block = vec![vec![f.zero(); kernel.len()]; n];
            for (j, cj) in cand.iter().enumerate() {
                let mut lhs = vec![f.zero(); n];
                for (k, ck) in coords.iter().enumerate() {
                    super::axpy(f, &mut lhs, ck, &cj[k]);
                }
                let rhs = m.apply(g, &cj[i]);
                for r in 0..n {
                    block[r][j] = f.sub(&lhs[r], &rhs[r]);
                }
            }
            eqs.extend(block);
        }
    }
    if eqs.is_empty() || kernel.is_empty() {
        return kernel.len();
    }
    let sys = Matrix::from_rows(f.clone(), eqs).expect("equal rows");
    kernel.len() - sys.rank()
}

/// Norton's test: a singular algebra element `theta` either has a kernel
/// vector spinning to a proper submodule, a kernel vector of the transpose
/// spinning to a proper submodule of the dual, or the module is
/// irreducible.
pub fn norton<F: Field, R: Rng>(m: &ModuleRep<F>, rng: &mut R) -> Norton<F> {
    let f = &m.field;
    let n = m.dim();
    if n <= 1 {
        return Norton::Irreducible {
            nullity: n,
            end_dim: n,
        };
    }
    let q = f.order();
    let dual = transposed(m);
    for _ in 0..NORTON_ATTEMPTS {
        let a = random_algebra_element(m, rng);
        let cp = charpoly(&a);
        let mut best: Option<(usize, Matrix<F>)> = None;
        for s in cp.roots() {
            let theta = a.sub(&Matrix::scalar(f.clone(), n, &s));
            let nullity = n - theta.rank();
            if best.as_ref().is_none_or(|(k, _)| nullity < *k) {
                best = Some((nullity, theta));
            }
        }
        let Some((nullity, theta)) = best else {
            continue;
        };
        match q.checked_pow(nullity as u32) {
            Some(qn) if (qn - 1) / (q - 1) <= MAX_PROJECTIVE_POINTS => {}
            _ => continue,
        }
        let ker = theta.nullspace();
        let mut first: Option<Vec<F::Elem>> = None;
        for v in projective_points(f, &ker) {
            let sub = spin_subspace(m, std::slice::from_ref(&v));
            if sub.dim() < n {
                return Norton::Reducible(sub);
            }
            first.get_or_insert(v);
        }
        for w in projective_points(f, &theta.transpose().nullspace()) {
            let sub = spin_subspace(&dual, &[w]);
            if sub.dim() < n {
                return Norton::Reducible(sub.annihilator());
            }
        }
        let end_dim = endomorphism_dim(m, first.as_ref().expect("nonzero kernel"), &ker);
        return Norton::Irreducible { nullity, end_dim };
    }
    Norton::Inconclusive
}

/// Evidence gathered by [`irreducibility`].
#[derive(Clone, Debug)]
pub struct IrreducibilityReport {
    pub dim: usize,
    /// Every basis vector and every random vector spins to the whole module.
    pub spin_full: bool,
    /// `Some(true)` when Norton's test certifies irreducibility,
    /// `Some(false)` when it exhibits a submodule.
    pub norton: Option<bool>,
    /// Dimension of the endomorphism algebra, when known.
    pub commutant_dim: Option<usize>,
}

impl IrreducibilityReport {
    /// Irreducible over the working field and with scalar endomorphisms only.
    pub fn absolutely_irreducible(&self) -> bool {
        self.spin_full && self.norton != Some(false) && self.commutant_dim == Some(1)
    }

    /// Dimension of the simple constituents over the algebraic closure when
    /// the module is irreducible over the working field.
    pub fn geometric_dim(&self) -> Option<usize> {
        match (self.norton, self.commutant_dim) {
            (Some(true), Some(d)) if d > 0 => Some(self.dim / d),
            _ => None,
        }
    }
}

/// Largest module size for which the `n^2` commutant solve is used as a
/// fallback.
const DIRECT_COMMUTANT_MAX: usize = 16;

pub fn irreducibility<F: Field, R: Rng>(m: &ModuleRep<F>, rng: &mut R) -> IrreducibilityReport {
    let f = &m.field;
    let n = m.dim();
    let mut spin_full = (0..n).all(|i| spin_subspace(m, &[unit(f, n, i)]).dim() == n);
    if spin_full {
        for _ in 0..20 {
            let v: Vec<F::Elem> = (0..n).map(|_| f.random(rng)).collect();
            if v.iter().all(|x| f.is_zero(x)) {
                continue;
            }
            if spin_subspace(m, &[v]).dim() < n {
                spin_full = false;
                break;
            }
        }
    }
    let (norton, mut commutant) = match norton(m, rng) {
        Norton::Irreducible { end_dim, .. } => (Some(true), Some(end_dim)),
        Norton::Reducible(_) => (Some(false), None),
        Norton::Inconclusive => (None, None),
    };
    if commutant.is_none() && n <= DIRECT_COMMUTANT_MAX {
        commutant = Some(commutant_dim(m));
    }
    IrreducibilityReport {
        dim: n,
        spin_full,
        norton,
        commutant_dim: commutant,
    }
}

/// Irreducible in the sense of [`IrreducibilityReport::absolutely_irreducible`].
pub fn is_irreducible<F: Field, R: Rng>(m: &ModuleRep<F>, rng: &mut R) -> bool {
    irreducibility(m, rng).absolutely_irreducible()
}

/// Composition factors over the working field, each with its report.
/// Factors for which Norton's test stays inconclusive are returned with
/// `norton = None`.
pub fn composition_factors<F: Field, R: Rng>(
    m: &ModuleRep<F>,
    rng: &mut R,
) -> Vec<(ModuleRep<F>, IrreducibilityReport)> {
    if m.dim() == 0 {
        return Vec::new();
    }
    match norton(m, rng) {
        Norton::Reducible(sub) => {
            let mut out = composition_factors(&restrict(m, &sub), rng);
            out.extend(composition_factors(&quotient(m, &sub), rng));
            out
        }
        Norton::Irreducible { end_dim, .. } => {
            let report = IrreducibilityReport {
                dim: m.dim(),
                spin_full: true,
                norton: Some(true),
                commutant_dim: Some(end_dim),
            };
            vec![(m.clone(), report)]
        }
        Norton::Inconclusive => {
            let report = irreducibility(m, rng);
            vec![(m.clone(), report)]
        }
    }
}
