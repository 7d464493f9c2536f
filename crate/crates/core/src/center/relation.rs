use std::collections::HashMap;

use crate::fields::{Field, Fp, Matrix, PrimeField, UniPoly};
use crate::pbw::{EngineError, NcPoly, PbwMonomial};

use super::{CenterError, CenterGenSet, MPoly};

/// Display names of the Frobenius-part generators, in variable order.
pub const Z0_NAMES: [&str; 5] = ["e^p", "f^p", "(h^p-h)", "x_p", "y_p"];

/// `t^p + a_{p-1} t^{p-1} + ... + a_0 = 0` with `a_i` polynomials in the
/// five Frobenius-part generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralRelation {
    pub p: u32,
    /// `a_0, ..., a_{p-1}`.
    pub coeffs: Vec<MPoly>,
    /// Degree bound in the `Z0` generators that produced the fit.
    pub degree_bound: u32,
}

impl CentralRelation {
    pub fn field(&self) -> PrimeField {
        PrimeField::new(self.p as u64).expect("odd prime")
    }

    /// The relation as a polynomial in `u_1..u_5, tau`.
    pub fn hypersurface(&self) -> MPoly {
        let f = self.field();
        let tau = MPoly::var(f, 6, 5);
        let mut out = tau.pow(self.p);
        for (i, a) in self.coeffs.iter().enumerate() {
            out = out.add(&widen(a).mul(&tau.pow(i as u32)));
        }
        out
    }

    /// Terms of `x, y` degree `2p`, counting `x_p, y_p` as `p` and `t` as 2.
    pub fn top_filtration_part(&self) -> CentralRelation {
        let p = self.p;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let mut out = MPoly::zero(self.field(), 5);
                for (e, c) in a.terms() {
                    if p * (e[3] + e[4]) + 2 * i as u32 == 2 * p {
                        out = out.add(&MPoly::term(self.field(), 5, e.clone(), *c));
                    }
                }
                out
            })
            .collect();
        CentralRelation {
            p,
            coeffs,
            degree_bound: self.degree_bound,
        }
    }

    /// The polynomial in `tau` obtained at a point of the Frobenius part.
    pub fn specialize<F: Field>(&self, field: &F, point: &[F::Elem]) -> UniPoly<F> {
        let mut coeffs: Vec<F::Elem> = self.coeffs.iter().map(|a| a.eval(field, point)).collect();
        coeffs.push(field.one());
        UniPoly::new(field.clone(), coeffs)
    }

    pub fn display(&self) -> String {
        let names = [
            Z0_NAMES[0],
            Z0_NAMES[1],
            Z0_NAMES[2],
            Z0_NAMES[3],
            Z0_NAMES[4],
            "t",
        ];
        format!("{} = 0", self.hypersurface().display(&names))
    }
}

fn widen(a: &MPoly) -> MPoly {
    let mut out = MPoly::zero(a.field(), 6);
    for (e, c) in a.terms() {
        let mut e6 = e.clone();
        e6.push(0);
        out = out.add(&MPoly::term(a.field(), 6, e6, *c));
    }
    out
}

/// The relation `t^p - e^p (y_p)^2 + f^p (x_p)^2 - (h^p - h) x_p y_p = 0`
/// expected at `z = 0`.
pub fn z0_expected_relation(p: u32) -> CentralRelation {
    let f = PrimeField::new(p as u64).unwrap();
    let u = |i| MPoly::var(f, 5, i);
    let a0 = u(0)
        .mul(&u(4).pow(2))
        .scale(f.elem(-1))
        .add(&u(1).mul(&u(3).pow(2)))
        .sub(&u(2).mul(&u(3)).mul(&u(4)));
    let mut coeffs = vec![a0];
    coeffs.resize(p as usize, MPoly::zero(f, 5));
    CentralRelation {
        p,
        coeffs,
        degree_bound: 3,
    }
}

/// Exponent vectors over the five generators of weight 0 and total degree at
/// most `max_deg`.
fn weight_zero_exponents(max_deg: u32) -> Vec<[u32; 5]> {
    let mut out = Vec::new();
    for a in 0..=max_deg {
        for b in 0..=max_deg - a {
            for c in 0..=max_deg - a - b {
                for d in 0..=max_deg - a - b - c {
                    for g in 0..=max_deg - a - b - c - d {
                        if 2 * a as i64 - 2 * b as i64 + d as i64 - g as i64 == 0 {
                            out.push([a, b, c, d, g]);
                        }
                    }
                }
            }
        }
    }
    out
}

fn all_exponents(max_deg: u32) -> Vec<[u32; 5]> {
    let mut out = Vec::new();
    for a in 0..=max_deg {
        for b in 0..=max_deg - a {
            for c in 0..=max_deg - a - b {
                for d in 0..=max_deg - a - b - c {
                    for g in 0..=max_deg - a - b - c - d {
                        out.push([a, b, c, d, g]);
                    }
                }
            }
        }
    }
    out
}

/// Products `u^alpha` with cached powers of the five generators.
struct Z0Powers<'a> {
    gens: [&'a NcPoly; 5],
    pows: Vec<Vec<NcPoly>>,
}

impl<'a> Z0Powers<'a> {
    fn new(gens: [&'a NcPoly; 5]) -> Self {
        let pows = gens
            .iter()
            .map(|g| vec![NcPoly::one(g.algebra().clone())])
            .collect();
        Z0Powers { gens, pows }
    }

    fn power(&mut self, i: usize, n: u32) -> Result<NcPoly, EngineError> {
        while self.pows[i].len() <= n as usize {
            let next = self.pows[i].last().unwrap().try_mul(self.gens[i])?;
            self.pows[i].push(next);
        }
        Ok(self.pows[i][n as usize].clone())
    }

    fn monomial(&mut self, alpha: &[u32; 5]) -> Result<NcPoly, EngineError> {
        let mut acc = self.power(0, alpha[0])?;
        for i in 1..5 {
            if alpha[i] > 0 {
                acc = acc.try_mul(&self.power(i, alpha[i])?)?;
            }
        }
        Ok(acc)
    }
}

/// Coefficient matrix of a list of elements (rows: monomials).
fn coefficient_matrix(
    field: PrimeField,
    elems: &[NcPoly],
) -> (Matrix<PrimeField>, HashMap<PbwMonomial, usize>) {
    let mut rows: HashMap<PbwMonomial, usize> = HashMap::new();
    for e in elems {
        for (m, _) in e.terms() {
            let n = rows.len();
            rows.entry(*m).or_insert(n);
        }
    }
    let mut mat = Matrix::zeros(field, rows.len(), elems.len());
    for (j, e) in elems.iter().enumerate() {
        for (m, c) in e.terms() {
            mat.set(rows[m], j, *c);
        }
    }
    (mat, rows)
}

/// Finds the monic degree-`p` relation of `t_z` over the Frobenius part by
/// exact linear algebra in `H_z`, with coefficient degree at most 3 and then
/// 4.
pub fn tp_relation(set: &CenterGenSet) -> Result<CentralRelation, CenterError> {
    tp_relation_bounded(set, 4)
}

/// [`tp_relation`] trying coefficient degrees `3..=max_degree`. Relations
/// for `deg z = d` can need degree up to `2d + 2`; cost grows quickly.
pub fn tp_relation_bounded(
    set: &CenterGenSet,
    max_degree: u32,
) -> Result<CentralRelation, CenterError> {
    let alg = set.algebra().clone();
    let field = alg.field();
    let p = alg.p();
    let t_pows: Vec<NcPoly> = (0..=p)
        .map(|i| set.tz.try_pow(i))
        .collect::<Result<_, _>>()?;
    let target = t_pows[p as usize].scale(field.elem(-1));
    let mut z0 = Z0Powers::new(set.z0());
    for max_deg in 3..=max_degree.max(3) {
        let mut labels: Vec<([u32; 5], u32)> = Vec::new();
        let mut elems: Vec<NcPoly> = Vec::new();
        for alpha in weight_zero_exponents(max_deg) {
            let base = z0.monomial(&alpha)?;
            for i in 0..p {
                if p * (alpha[3] + alpha[4]) + 2 * i > 2 * p {
                    continue;
                }
                elems.push(base.try_mul(&t_pows[i as usize])?);
                labels.push((alpha, i));
            }
        }
        elems.push(target.clone());
        let (mat, _) = coefficient_matrix(field, &elems);
        let n = elems.len() - 1;
        let rhs: Vec<Fp> = mat.column(n);
        let mut a = Matrix::zeros(field, mat.rows(), n);
        for r in 0..mat.rows() {
            for c in 0..n {
                a.set(r, c, *mat.get(r, c));
            }
        }
        let Ok(Some(sol)) = a.solve(&rhs) else {
            continue;
        };
        let mut coeffs = vec![MPoly::zero(field, 5); p as usize];
        for ((alpha, i), c) in labels.iter().zip(&sol) {
            if c.0 != 0 {
                let term = MPoly::term(field, 5, alpha.to_vec(), *c);
                coeffs[*i as usize] = coeffs[*i as usize].add(&term);
            }
        }
        return Ok(CentralRelation {
            p,
            coeffs,
            degree_bound: max_deg,
        });
    }
    Err(CenterError::RelationNotFound { max_degree })
}

/// Checks that `u^alpha t^i` for `|alpha| <= degree_bound`, `i < p` are
/// linearly independent in `H_z`, i.e. there is no relation
/// `sum a_i t^i = 0` with the `a_i` of degree at most `degree_bound`.
pub fn t_power_independence(set: &CenterGenSet, degree_bound: u32) -> Result<bool, EngineError> {
    let alg = set.algebra();
    let p = alg.p();
    let t_pows: Vec<NcPoly> = (0..p)
        .map(|i| set.tz.try_pow(i))
        .collect::<Result<_, _>>()?;
    let mut z0 = Z0Powers::new(set.z0());
    let mut elems = Vec::new();
    for alpha in all_exponents(degree_bound) {
        let base = z0.monomial(&alpha)?;
        for t in &t_pows {
            elems.push(base.try_mul(t)?);
        }
    }
    let (mat, _) = coefficient_matrix(alg.field(), &elems);
    Ok(mat.rank() == elems.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::casimir::CasimirPoly;
    use crate::center::{center_algebra, LiftBounds};

    fn set(p: u64, z: &[i64]) -> CenterGenSet {
        let f = PrimeField::new(p).unwrap();
        let a = center_algebra(f, CasimirPoly::from_ints(f, z));
        CenterGenSet::build(&a, &LiftBounds::for_prime(p as u32)).unwrap()
    }

    #[test]
    fn weight_zero_list() {
        let ex = weight_zero_exponents(3);
        assert!(ex.contains(&[1, 0, 0, 0, 2]));
        assert!(ex.contains(&[0, 1, 0, 2, 0]));
        assert!(ex.contains(&[0, 0, 1, 1, 1]));
        assert!(!ex.contains(&[1, 0, 0, 0, 0]));
    }

    #[test]
    fn undeformed_relation_p3() {
        let s = set(3, &[]);
        let rel = tp_relation(&s).unwrap();
        assert_eq!(rel, z0_expected_relation(3));
    }

    #[test]
    fn independence_p3() {
        assert!(t_power_independence(&set(3, &[]), 1).unwrap());
    }

    #[test]
    fn specialization_on_singular_locus() {
        let rel = z0_expected_relation(5);
        let f = rel.field();
        let q = rel.specialize(&f, &[Fp(1), Fp(2), Fp(3), Fp(0), Fp(0)]);
        assert_eq!(q, UniPoly::monomial(f, Fp(1), 5));
    }
}
