use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::casimir::CasimirPoly;
use crate::fields::{Field, Fp, PrimeField};

use super::{Gen, GeneratorOrder, NcPoly, PbwMonomial};

/// Default exponent cap is this multiple of `p`.
pub const DEFAULT_CAP_FACTOR: u32 = 4;

type Terms = Arc<[(PbwMonomial, Fp)]>;

/// The algebra `H_z` for a fixed prime, deformation `z` and PBW order.
///
/// Rewriting never leaves normal form: products are built by left
/// multiplication of a normal monomial by single generators, each step
/// either prepending the generator or exchanging it with the leftmost
/// letter via a commutator from the relation table. Swaps of `x` past `y`
/// lower the `x, y` degree; all other swaps keep it and remove an
/// inversion, so the pair (x,y-degree, inversions) strictly decreases.
pub struct Algebra {
    field: PrimeField,
    order: GeneratorOrder,
    z: CasimirPoly,
    /// `brackets[a][b] = [a, b]` in normal form.
    brackets: Vec<Vec<Vec<(PbwMonomial, Fp)>>>,
    exp_cap: u32,
    cache: Mutex<HashMap<(Gen, PbwMonomial), Terms>>,
}

impl std::fmt::Debug for Algebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Algebra(p={}, order={}, z={})",
            self.field.p(),
            self.order,
            self.z.display("D")
        )
    }
}

/// The fixed structural commutators `[a, b] = c * g`.
fn structural(a: Gen, b: Gen) -> Option<(i64, Gen)> {
    use Gen::*;
    let direct = |a, b| -> Option<(i64, Gen)> {
        match (a, b) {
            (H, E) => Some((2, E)),
            (H, F) => Some((-2, F)),
            (E, F) => Some((1, H)),
            (H, X) => Some((1, X)),
            (H, Y) => Some((-1, Y)),
            (F, X) => Some((1, Y)),
            (E, Y) => Some((1, X)),
            _ => None,
        }
    };
    direct(a, b).or_else(|| direct(b, a).map(|(c, g)| (-c, g)))
}

impl Algebra {
    pub fn new(field: PrimeField, z: CasimirPoly, order: GeneratorOrder) -> Arc<Self> {
        let cap = DEFAULT_CAP_FACTOR * field.p();
        Self::with_cap(field, z, order, cap)
    }

    pub fn standard(field: PrimeField, z: CasimirPoly) -> Arc<Self> {
        Self::new(field, z, GeneratorOrder::standard())
    }

    pub fn with_cap(
        field: PrimeField,
        z: CasimirPoly,
        order: GeneratorOrder,
        exp_cap: u32,
    ) -> Arc<Self> {
        assert_eq!(
            z.field().p(),
            field.p(),
            "deformation over a different prime"
        );
        let mut brackets = vec![vec![Vec::new(); 5]; 5];
        for a in Gen::ALL {
            for b in Gen::ALL {
                if let Some((c, g)) = structural(a, b) {
                    brackets[a.index()][b.index()] = vec![(PbwMonomial::gen(g), field.elem(c))];
                }
            }
        }
        // z(D) only involves sl2 letters, so the table without [x,y] suffices
        // to put it in normal form for this order.
        let boot = Algebra {
            field,
            order,
            z: z.clone(),
            brackets: brackets.clone(),
            exp_cap: u32::MAX,
            cache: Mutex::new(HashMap::new()),
        };
        let zd = boot.casimir_poly_terms(&z);
        let neg: Vec<_> = zd.iter().map(|&(m, c)| (m, field.fneg(c))).collect();
        brackets[Gen::X.index()][Gen::Y.index()] = zd;
        brackets[Gen::Y.index()][Gen::X.index()] = neg;
        Arc::new(Algebra {
            field,
            order,
            z,
            brackets,
            exp_cap,
            cache: Mutex::new(HashMap::new()),
        })
    }

    /// Same prime and deformation, different PBW order.
    pub fn reordered(&self, order: GeneratorOrder) -> Arc<Self> {
        Self::with_cap(self.field, self.z.clone(), order, self.exp_cap)
    }

    /// Same prime and order, different deformation.
    pub fn with_deformation(&self, z: CasimirPoly) -> Arc<Self> {
        Self::with_cap(self.field, z, self.order, self.exp_cap)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn order(&self) -> &GeneratorOrder {
        &self.order
    }

    pub fn deformation(&self) -> &CasimirPoly {
        &self.z
    }

    pub fn exp_cap(&self) -> u32 {
        self.exp_cap
    }

    pub fn same_ambient(&self, other: &Algebra) -> bool {
        std::ptr::eq(self, other)
            || (self.field == other.field && self.order == other.order && self.z == other.z)
    }

    /// `[a, b]` as stored in the relation table.
    pub fn bracket_terms(&self, a: Gen, b: Gen) -> &[(PbwMonomial, Fp)] {
        &self.brackets[a.index()][b.index()]
    }

    pub fn cache_len(&self) -> usize {
        self.cache.lock().unwrap().len()
    }

    #[inline]
    fn acc_add(&self, acc: &mut HashMap<PbwMonomial, Fp>, m: PbwMonomial, c: Fp) {
        if c.0 == 0 {
            return;
        }
        let e = acc.entry(m).or_insert(Fp(0));
        *e = self.field.fadd(*e, c);
    }

    /// Adds `coeff * (g * m)` to `acc`.
    pub(crate) fn gen_mul_into(
        &self,
        g: Gen,
        m: PbwMonomial,
        coeff: Fp,
        acc: &mut HashMap<PbwMonomial, Fp>,
    ) {
        let i = self.order.position(g);
        match m.first_position(&self.order) {
            Some(q) if q < i => {}
            _ => {
                self.acc_add(acc, m.times(g, 1), coeff);
                return;
            }
        }
        let terms = self.gen_mul(g, m);
        for &(mono, c) in terms.iter() {
            self.acc_add(acc, mono, self.field.fmul(c, coeff));
        }
    }

    fn gen_mul(&self, g: Gen, m: PbwMonomial) -> Terms {
        if let Some(t) = self.cache.lock().unwrap().get(&(g, m)) {
            return t.clone();
        }
        let q = m.first_position(&self.order).expect("non-trivial swap");
        let g2 = self.order.at(q);
        let rest = m.lowered(g2, 1);
        // g * g2 * rest = g2 * (g * rest) + [g, g2] * rest
        let mut inner = HashMap::new();
        self.gen_mul_into(g, rest, Fp(1), &mut inner);
        let mut acc = HashMap::new();
        for (mono, c) in inner {
            self.gen_mul_into(g2, mono, c, &mut acc);
        }
        for &(tm, tc) in &self.brackets[g.index()][g2.index()] {
            self.mono_mul_into(tm, rest, tc, &mut acc);
        }
        let terms: Terms = acc
            .into_iter()
            .filter(|(_, c)| c.0 != 0)
            .collect::<Vec<_>>()
            .into();
        self.cache.lock().unwrap().insert((g, m), terms.clone());
        terms
    }

    /// Adds `coeff * (a * b)` to `acc` for normal monomials `a, b`.
    pub(crate) fn mono_mul_into(
        &self,
        a: PbwMonomial,
        b: PbwMonomial,
        coeff: Fp,
        acc: &mut HashMap<PbwMonomial, Fp>,
    ) {
        if coeff.0 == 0 {
            return;
        }
        let in_order = match (a.last_position(&self.order), b.first_position(&self.order)) {
            (None, _) | (_, None) => true,
            (Some(l), Some(f)) => l <= f,
        };
        if in_order {
            self.acc_add(acc, a.merge(&b), coeff);
            return;
        }
        let mut cur: HashMap<PbwMonomial, Fp> = HashMap::new();
        cur.insert(b, Fp(1));
        for k in (0..5).rev() {
            let g = self.order.at(k);
            for _ in 0..a.exp(g) {
                let mut next = HashMap::with_capacity(cur.len() * 2);
                for (mono, c) in cur {
                    self.gen_mul_into(g, mono, c, &mut next);
                }
                cur = next;
            }
        }
        for (mono, c) in cur {
            self.acc_add(acc, mono, self.field.fmul(c, coeff));
        }
    }

    /// Normal form of a product of generator powers written left to right.
    pub(crate) fn word_terms(&self, word: &[(Gen, u16)]) -> HashMap<PbwMonomial, Fp> {
        let mut cur: HashMap<PbwMonomial, Fp> = HashMap::new();
        cur.insert(PbwMonomial::ONE, Fp(1));
        for &(g, n) in word.iter().rev() {
            for _ in 0..n {
                let mut next = HashMap::with_capacity(cur.len() * 2);
                for (mono, c) in cur {
                    self.gen_mul_into(g, mono, c, &mut next);
                }
                cur = next;
            }
        }
        cur.retain(|_, c| c.0 != 0);
        cur
    }

    /// `D = h^2 + 4ef - 2h` as raw terms (used while bootstrapping).
    fn casimir_terms(&self) -> HashMap<PbwMonomial, Fp> {
        let f = self.field;
        let mut acc = HashMap::new();
        for (mono, c) in self.word_terms(&[(Gen::H, 2)]) {
            self.acc_add(&mut acc, mono, c);
        }
        for (mono, c) in self.word_terms(&[(Gen::E, 1), (Gen::F, 1)]) {
            self.acc_add(&mut acc, mono, f.fmul(c, f.elem(4)));
        }
        self.acc_add(&mut acc, PbwMonomial::gen(Gen::H), f.elem(-2));
        acc
    }

    fn casimir_poly_terms(&self, poly: &CasimirPoly) -> Vec<(PbwMonomial, Fp)> {
        let delta = self.casimir_terms();
        let mut power: HashMap<PbwMonomial, Fp> = HashMap::new();
        power.insert(PbwMonomial::ONE, Fp(1));
        let mut acc = HashMap::new();
        for (n, c) in poly.coeffs().iter().enumerate() {
            if n > 0 {
                let mut next = HashMap::new();
                for (&a, &ca) in &power {
                    for (&b, &cb) in &delta {
                        self.mono_mul_into(a, b, self.field.fmul(ca, cb), &mut next);
                    }
                }
                next.retain(|_, c| c.0 != 0);
                power = next;
            }
            for (&m, &pc) in &power {
                self.acc_add(&mut acc, m, self.field.fmul(pc, *c));
            }
        }
        let mut out: Vec<_> = acc.into_iter().filter(|(_, c)| c.0 != 0).collect();
        out.sort();
        out
    }

    /// The rescaled Casimir `D = h^2 + 4ef - 2h`.
    pub fn casimir(self: &Arc<Self>) -> NcPoly {
        NcPoly::from_terms(self.clone(), self.casimir_terms())
    }

    /// `D^n` in normal form.
    pub fn casimir_power(self: &Arc<Self>, n: u32) -> NcPoly {
        let d = self.casimir();
        let mut acc = NcPoly::one(self.clone());
        for _ in 0..n {
            acc = &acc * &d;
        }
        acc
    }

    /// `w(D)` for a polynomial `w` in `D`.
    pub fn eval_casimir(self: &Arc<Self>, w: &CasimirPoly) -> NcPoly {
        assert_eq!(w.field().p(), self.p());
        NcPoly::from_terms(
            self.clone(),
            self.casimir_poly_terms(w).into_iter().collect(),
        )
    }

    /// The deformation `z(D)` as an element.
    pub fn z_element(self: &Arc<Self>) -> NcPoly {
        self.eval_casimir(&self.z.clone())
    }

    /// Normal form of a word of generators.
    pub fn word(self: &Arc<Self>, word: &[Gen]) -> NcPoly {
        let w: Vec<(Gen, u16)> = word.iter().map(|&g| (g, 1)).collect();
        NcPoly::from_terms(self.clone(), self.word_terms(&w))
    }

    /// Normal form of `coeff * g1^n1 * g2^n2 * ...` taken left to right.
    pub fn word_powers(self: &Arc<Self>, word: &[(Gen, u16)]) -> NcPoly {
        NcPoly::from_terms(self.clone(), self.word_terms(word))
    }

    pub fn elem(&self, v: i64) -> Fp {
        self.field.from_i64(v)
    }
}
