use crate::fields::{artin_schreier_ext, ExtField, Field, Fp, Matrix, PrimeField};
use crate::pbw::Gen;

use super::{relation_defects, ModuleRep, RepnError};

/// The `p`-dimensional `sl_2`-module on `v, fv, ..., f^(p-1)v` with
/// `h f^i v = (lambda - 2i) f^i v`, `e f^i v = i(lambda - i + 1) f^(i-1) v`
/// and `f^p` acting as `chi_f`. The vector part acts as zero.
pub fn sl2_simple_over<F: Field>(field: &F, lambda: &F::Elem, chi_f: &F::Elem) -> ModuleRep<F> {
    let p = field.characteristic() as usize;
    let mut e = Matrix::zeros(field.clone(), p, p);
    let mut f = Matrix::zeros(field.clone(), p, p);
    let mut h = Matrix::zeros(field.clone(), p, p);
    for i in 0..p {
        let ii = field.from_i64(i as i64);
        h.set(i, i, field.sub(lambda, &field.add(&ii, &ii)));
        if i + 1 < p {
            f.set(i + 1, i, field.one());
        } else {
            f.set(0, i, chi_f.clone());
        }
        if i > 0 {
            // i (lambda - i + 1)
            let c = field.mul(&ii, &field.add(&field.sub(lambda, &ii), &field.one()));
            e.set(i - 1, i, c);
        }
    }
    let zero = Matrix::zeros(field.clone(), p, p);
    ModuleRep::new(field.clone(), [e, f, h, zero.clone(), zero])
}

/// `sl2_simple_over` at the `root`-th root `lambda + root` of
/// `T^p - T - c`, over the Artin-Schreier extension when `c != 0` and over
/// `F_p` (with `lambda = root`) when `c = 0`.
pub fn sl2_simple(p: u32, c: Fp, root: u32) -> Result<(ExtField, ModuleRep<ExtField>), RepnError> {
    let base = PrimeField::new(p as u64)?;
    let c = base.elem(c.0 as i64);
    let (field, lambda) = if c.0 == 0 {
        let field = ExtField::trivial(base);
        let l = field.from_i64(root as i64);
        (field, l)
    } else {
        let (field, l) = artin_schreier_ext(p as u64, c)?;
        let l = field.add(&l, &field.from_i64(root as i64));
        (field, l)
    };
    let m = sl2_simple_over(&field, &lambda, &field.zero());
    let defects = relation_defects(&m, None);
    if !defects.is_empty() {
        return Err(RepnError::RelationsFail(defects.join(", ")));
    }
    Ok((field, m))
}

/// Solvability of `f^m = [e, A]` in `End(V_lambda)` for each root `lambda`
/// of `T^p - T - c`.
#[derive(Clone, Debug)]
pub struct AdeReport {
    pub p: u32,
    pub m: u32,
    pub c: Fp,
    pub solvable: Vec<bool>,
}

impl AdeReport {
    pub fn count(&self) -> usize {
        self.solvable.iter().filter(|b| **b).count()
    }

    pub fn roots(&self) -> usize {
        self.solvable.len()
    }

    pub fn passed(&self) -> bool {
        self.count() < self.roots()
    }
}

pub fn ade_image_test(p: u32, m: u32, c: Fp) -> Result<AdeReport, RepnError> {
    if m == 0 || m >= p {
        return Err(RepnError::Precondition(format!(
            "need 0 < m < p, got m = {m}"
        )));
    }
    if c.0 == 0 {
        return Err(RepnError::Precondition("c must be nonzero".into()));
    }
    let n = p as usize;
    let mut solvable = Vec::new();
    for root in 0..p {
        let (field, v) = sl2_simple(p, c, root)?;
        let e = v.mat(Gen::E);
        let mut fm = Matrix::identity(field.clone(), n);
        for _ in 0..m {
            fm = fm.mul(v.mat(Gen::F));
        }
        // [e, A] = sum over unknown A[k][l] of e*E_kl - E_kl*e
        let mut sys = Matrix::zeros(field.clone(), n * n, n * n);
        for k in 0..n {
            for l in 0..n {
                let col = k * n + l;
                for r in 0..n {
                    // (e E_kl)[r][l] = e[r][k]
                    let row = r * n + l;
                    let cur = sys.get(row, col).clone();
                    sys.set(row, col, field.add(&cur, e.get(r, k)));
                    // (E_kl e)[k][s] = e[l][s]
                    let row = k * n + r;
                    let cur = sys.get(row, col).clone();
                    sys.set(row, col, field.sub(&cur, e.get(l, r)));
                }
            }
        }
        let rhs: Vec<_> = (0..n * n).map(|i| fm.get(i / n, i % n).clone()).collect();
        solvable.push(sys.solve(&rhs)?.is_some());
    }
    Ok(AdeReport { p, m, c, solvable })
}
