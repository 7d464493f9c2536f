use std::collections::HashMap;
use std::sync::Arc;

use crate::fields::{Fp, Matrix};
use crate::pbw::{Algebra, EngineError, Gen, NcPoly, PbwMonomial};

use super::{frobenius_generators, is_central};

/// Bounds for the ansatz `top + sum c * R * t^i e^j x^l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftBounds {
    /// Largest power of `t_z`.
    pub max_t: u32,
    /// Largest power of `e`.
    pub max_e: u32,
    /// Largest total degree of the factor `R` in `e^p, f^p, h^p - h`.
    pub max_r: u32,
}

impl LiftBounds {
    pub fn for_prime(p: u32) -> Self {
        LiftBounds {
            max_t: (p - 1) / 2,
            max_e: p - 1,
            max_r: 1,
        }
    }
}

/// Above this many free parameters the tie-break keeps the particular
/// solution instead of enumerating.
const MAX_ENUMERATION: u64 = 1 << 14;

/// Searches for a central element `top + lower terms`, with lower terms of
/// the form `R * t^i * e^j * x^l` of the same weight as `top` and `x, y`
/// degree at most `max_filtration`. `Ok(None)` means the ansatz has no
/// central member; errors come from the exponent cap.
pub fn lift_solver(
    alg: &Arc<Algebra>,
    t: &NcPoly,
    top: PbwMonomial,
    max_filtration: u32,
    bounds: &LiftBounds,
) -> Result<Option<NcPoly>, EngineError> {
    let p = alg.p();
    let target = top.weight();
    let top_el = NcPoly::monomial(alg.clone(), top, Fp(1));
    let [ep, fp, hp] = frobenius_generators(alg);

    // R-factors with their weights
    let mut rs: Vec<(NcPoly, i64)> = Vec::new();
    for a in 0..=bounds.max_r {
        for b in 0..=bounds.max_r - a {
            for c in 0..=bounds.max_r - a - b {
                let r = ep
                    .try_pow(a)?
                    .try_mul(&fp.try_pow(b)?)?
                    .try_mul(&hp.try_pow(c)?)?;
                rs.push((r, 2 * p as i64 * (a as i64 - b as i64)));
            }
        }
    }
    let t_pows: Vec<NcPoly> = (0..=bounds.max_t)
        .map(|i| t.try_pow(i))
        .collect::<Result<_, _>>()?;
    let mut candidates: Vec<NcPoly> = Vec::new();
    for (r, rw) in &rs {
        for (i, ti) in t_pows.iter().enumerate() {
            for j in 0..=bounds.max_e {
                let l = target - rw - 2 * j as i64;
                if l < 0 || 2 * i as i64 + l > max_filtration as i64 {
                    continue;
                }
                let ejxl = alg.word_powers(&[(Gen::E, j as u16), (Gen::X, l as u16)]);
                candidates.push(r.try_mul(ti)?.try_mul(&ejxl)?);
            }
        }
    }
    if candidates.is_empty() {
        return Ok(is_central(&top_el).is_central().then_some(top_el));
    }

    let f_gen = NcPoly::gen(alg.clone(), Gen::F);
    let y_gen = NcPoly::gen(alg.clone(), Gen::Y);
    let brackets = |a: &NcPoly| -> Result<(NcPoly, NcPoly), EngineError> {
        Ok((a.commutator(&f_gen)?, a.commutator(&y_gen)?))
    };
    // rows indexed by (which bracket, monomial)
    let mut rows: HashMap<(u8, PbwMonomial), usize> = HashMap::new();
    let mut index = |key: (u8, PbwMonomial)| {
        let n = rows.len();
        *rows.entry(key).or_insert(n)
    };
    let mut cols: Vec<Vec<(usize, Fp)>> = Vec::new();
    for cand in &candidates {
        let (cf, cy) = brackets(cand)?;
        let mut col = Vec::new();
        for (m, c) in cf.terms() {
            col.push((index((0, *m)), *c));
        }
        for (m, c) in cy.terms() {
            col.push((index((1, *m)), *c));
        }
        cols.push(col);
    }
    let (tf, ty) = brackets(&top_el)?;
    let mut rhs_entries = Vec::new();
    let field = alg.field();
    for (m, c) in tf.terms() {
        rhs_entries.push((index((0, *m)), field.fneg(*c)));
    }
    for (m, c) in ty.terms() {
        rhs_entries.push((index((1, *m)), field.fneg(*c)));
    }
    let n_rows = rows.len();
    let mut mat = Matrix::zeros(field, n_rows, candidates.len());
    for (j, col) in cols.iter().enumerate() {
        for &(i, c) in col {
            mat.set(i, j, c);
        }
    }
    let mut rhs = vec![Fp(0); n_rows];
    for (i, c) in rhs_entries {
        rhs[i] = c;
    }
    let Some(particular) = mat.solve(&rhs).expect("dimensions match") else {
        return Ok(None);
    };
    let kernel = mat.nullspace();
    let coeffs = tie_break(
        field.p(),
        &particular,
        &kernel,
        |a, b| field.fadd(a, b),
        |a, b| field.fmul(a, b),
    );

    let mut out = top_el;
    for (c, cand) in coeffs.iter().zip(&candidates) {
        if c.0 != 0 {
            out = &out + &cand.scale(*c);
        }
    }
    Ok(is_central(&out).is_central().then_some(out))
}

/// Among `particular + span(kernel)`, the vector with fewest nonzero
/// entries, then lexicographically smallest.
fn tie_break(
    p: u32,
    particular: &[Fp],
    kernel: &[Vec<Fp>],
    add: impl Fn(Fp, Fp) -> Fp,
    mul: impl Fn(Fp, Fp) -> Fp,
) -> Vec<Fp> {
    let d = kernel.len() as u32;
    if d == 0
        || (p as u64)
            .checked_pow(d)
            .is_none_or(|n| n > MAX_ENUMERATION)
    {
        return particular.to_vec();
    }
    let total = (p as u64).pow(d);
    let mut best: Option<(usize, Vec<u32>)> = None;
    for code in 0..total {
        let mut v = particular.to_vec();
        let mut rest = code;
        for k in kernel {
            let s = Fp((rest % p as u64) as u32);
            rest /= p as u64;
            for (vi, ki) in v.iter_mut().zip(k) {
                *vi = add(*vi, mul(s, *ki));
            }
        }
        let key = (
            v.iter().filter(|c| c.0 != 0).count(),
            v.iter().map(|c| c.0).collect::<Vec<_>>(),
        );
        if best.as_ref().is_none_or(|b| key < *b) {
            best = Some(key);
        }
    }
    best.unwrap().1.into_iter().map(Fp).collect()
}
