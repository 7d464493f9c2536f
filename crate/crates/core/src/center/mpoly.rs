use std::collections::BTreeMap;

use crate::fields::{Field, Fp, PrimeField};

/// Sparse commutative polynomial over `F_p` in a fixed number of variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    field: PrimeField,
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Fp>,
}

impl MPoly {
    pub fn zero(field: PrimeField, nvars: usize) -> Self {
        MPoly {
            field,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: PrimeField, nvars: usize, c: Fp) -> Self {
        Self::term(field, nvars, vec![0; nvars], c)
    }

    pub fn var(field: PrimeField, nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::term(field, nvars, e, Fp(1))
    }

    pub fn term(field: PrimeField, nvars: usize, exps: Vec<u32>, c: Fp) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut out = Self::zero(field, nvars);
        if c.0 != 0 {
            out.terms.insert(exps, c);
        }
        out
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Fp)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> Fp {
        self.terms.get(exps).copied().unwrap_or(Fp(0))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    fn add_term(&mut self, e: Vec<u32>, c: Fp) {
        let f = self.field;
        let v = self.terms.entry(e.clone()).or_insert(Fp(0));
        *v = f.fadd(*v, c);
        if v.0 == 0 {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), *c);
        }
        out
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.add(&other.scale(self.field.elem(-1)))
    }

    pub fn scale(&self, s: Fp) -> MPoly {
        let mut out = Self::zero(self.field, self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), self.field.fmul(*c, s));
        }
        out
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        let mut out = Self::zero(self.field, self.nvars);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let e = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(e, self.field.fmul(*ca, *cb));
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> MPoly {
        let mut acc = Self::constant(self.field, self.nvars, Fp(1));
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self, i: usize) -> MPoly {
        let mut out = Self::zero(self.field, self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut d = e.clone();
            d[i] -= 1;
            out.add_term(d, self.field.fmul(*c, self.field.elem(e[i] as i64)));
        }
        out
    }

    /// Evaluates at a point in any field of the same characteristic.
    pub fn eval<F: Field>(&self, field: &F, point: &[F::Elem]) -> F::Elem {
        assert_eq!(point.len(), self.nvars);
        let mut acc = field.zero();
        for (e, c) in &self.terms {
            let mut v = field.from_fp(*c);
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    v = field.mul(&v, &field.pow(x, k as u64));
                }
            }
            acc = field.add(&acc, &v);
        }
        acc
    }

    /// Substitutes `values[i]` for variable `i` where given, keeping the
    /// others.
    pub fn specialize(&self, values: &[Option<Fp>]) -> MPoly {
        let mut out = Self::zero(self.field, self.nvars);
        for (e, c) in &self.terms {
            let mut coeff = *c;
            let mut rest = e.clone();
            for (i, v) in values.iter().enumerate() {
                if let Some(v) = v {
                    coeff = self.field.fmul(coeff, self.field.pow(v, rest[i] as u64));
                    rest[i] = 0;
                }
            }
            out.add_term(rest, coeff);
        }
        out
    }

    /// True when every term is divisible by one of the given monomials.
    pub fn in_monomial_ideal(&self, gens: &[Vec<u32>]) -> bool {
        self.terms
            .keys()
            .all(|e| gens.iter().any(|g| g.iter().zip(e).all(|(a, b)| a <= b)))
    }

    pub fn display(&self, names: &[&str]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let v = self.field.symmetric(*c);
            let mag = v.unsigned_abs();
            if i == 0 {
                if v < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if v < 0 { " - " } else { " + " });
            }
            let factors: Vec<String> = e
                .iter()
                .zip(names)
                .filter(|(k, _)| **k > 0)
                .map(|(k, n)| {
                    if *k == 1 {
                        n.to_string()
                    } else {
                        format!("{n}^{k}")
                    }
                })
                .collect();
            if factors.is_empty() {
                out.push_str(&mag.to_string());
            } else {
                if mag != 1 {
                    out.push_str(&format!("{mag}*"));
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_derivatives() {
        let f = PrimeField::new(5).unwrap();
        let x = MPoly::var(f, 2, 0);
        let y = MPoly::var(f, 2, 1);
        let q = x.pow(5).add(&x.mul(&y).scale(Fp(3)));
        assert_eq!(q.derivative(0), y.scale(Fp(3)));
        assert_eq!(q.derivative(1), x.scale(Fp(3)));
        assert_eq!(q.eval(&f, &[Fp(2), Fp(1)]), Fp((32 + 6) % 5));
        assert_eq!(q.display(&["a", "b"]), "a^5 - 2*a*b");
        assert!(q.in_monomial_ideal(&[vec![1, 0]]));
        assert!(!q.in_monomial_ideal(&[vec![0, 1]]));
        assert_eq!(q.specialize(&[None, Some(Fp(0))]), x.pow(5));
    }
}
