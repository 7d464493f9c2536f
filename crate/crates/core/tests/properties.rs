//! Property tests for the algebraic invariants of the engine, the Casimir
//! operators, the center and the module constructions.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use proptest::prelude::*;
use sl2hecke::casimir::{f_inverse, fg_apply, CasimirPoly};
use sl2hecke::center::{center_algebra, is_central, CenterGenSet, LiftBounds};
use sl2hecke::fields::{artin_schreier_ext, ExtField, Field, Fp, Matrix, PrimeField};
use sl2hecke::pbw::{parse_element, Algebra, GeneratorOrder, NcPoly, PbwMonomial};
use sl2hecke::repn::{
    acts_as_scalar, baby_verma, census_field, relation_defects, BabyVermaKind, Character,
};

/// Room for products of three elements with exponents up to 2 and
/// `deg z <= 2`.
const CAP: u32 = 96;

const CONFIGS: [(u64, &[i64]); 5] = [
    (3, &[]),
    (3, &[0, 1]),
    (5, &[1, 1]),
    (5, &[0, 0, 1]),
    (7, &[2, 0, 1]),
];

fn algebra(config: usize, order: GeneratorOrder) -> Arc<Algebra> {
    let (p, z) = CONFIGS[config];
    let f = PrimeField::new(p).unwrap();
    Algebra::with_cap(f, CasimirPoly::from_ints(f, z), order, CAP)
}

type Terms = Vec<([u16; 5], i64)>;

fn terms() -> impl Strategy<Value = Terms> {
    prop::collection::vec((prop::array::uniform5(0u16..=2), 1i64..1000), 1..4)
}

fn element(alg: &Arc<Algebra>, t: &Terms) -> NcPoly {
    NcPoly::from_monomials(
        alg.clone(),
        t.iter()
            .map(|(e, c)| (PbwMonomial(*e), alg.elem(*c)))
            .collect::<Vec<_>>(),
    )
}

fn mul(a: &NcPoly, b: &NcPoly) -> NcPoly {
    a.try_mul(b).expect("within the exponent cap")
}

fn top_part(a: &NcPoly, degree: u32) -> NcPoly {
    a.filter(|m| m.filtration_degree() == degree)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn associativity(cfg in 0..CONFIGS.len(), a in terms(), b in terms(), c in terms()) {
        let alg = algebra(cfg, GeneratorOrder::standard());
        let (a, b, c) = (element(&alg, &a), element(&alg, &b), element(&alg, &c));
        prop_assert_eq!(mul(&mul(&a, &b), &c), mul(&a, &mul(&b, &c)));
    }

    #[test]
    fn normal_forms_are_fixed_points(cfg in 0..CONFIGS.len(), a in terms(), order in 0usize..3) {
        let order = GeneratorOrder::parse(["efhxy", "fyhex", "xyhef"][order]).unwrap();
        let alg = algebra(cfg, order);
        let a = element(&alg, &a);
        let mut rebuilt = NcPoly::zero(alg.clone());
        for (m, c) in a.terms() {
            rebuilt = &rebuilt + &alg.word_powers(&m.factors(alg.order())).scale(*c);
        }
        prop_assert_eq!(&rebuilt, &a);
        prop_assert_eq!(parse_element(&alg, &a.to_string()).unwrap(), a);
    }

    #[test]
    fn filtration_is_submultiplicative(cfg in 0..CONFIGS.len(), a in terms(), b in terms()) {
        let alg = algebra(cfg, GeneratorOrder::standard());
        let (a, b) = (element(&alg, &a), element(&alg, &b));
        let ab = mul(&a, &b);
        if let (Some(da), Some(db)) = (a.filtration_degree(), b.filtration_degree()) {
            prop_assert!(ab.filtration_degree().is_none_or(|d| d <= da + db));
        }
    }

    #[test]
    fn top_part_of_product_ignores_deformation(
        cfg in 0..CONFIGS.len(),
        a in terms(),
        b in terms(),
    ) {
        let alg = algebra(cfg, GeneratorOrder::standard());
        let undeformed = Algebra::with_cap(
            alg.field(),
            CasimirPoly::zero(alg.field()),
            GeneratorOrder::standard(),
            CAP,
        );
        let (az, bz) = (element(&alg, &a), element(&alg, &b));
        let (a0, b0) = (element(&undeformed, &a), element(&undeformed, &b));
        prop_assume!(!az.is_zero() && !bz.is_zero());
        let d = az.filtration_degree().unwrap() + bz.filtration_degree().unwrap();
        let lhs = top_part(&mul(&az, &bz), d);
        let rhs = top_part(&mul(&a0, &b0), d);
        prop_assert_eq!(lhs.to_string(), rhs.to_string());
    }

    #[test]
    fn j_reverses_products(cfg in 0..CONFIGS.len(), a in terms(), b in terms()) {
        let alg = algebra(cfg, GeneratorOrder::standard());
        let (a, b) = (element(&alg, &a), element(&alg, &b));
        let lhs = mul(&a, &b).antiinvolution_j();
        let rhs = mul(&b.antiinvolution_j(), &a.antiinvolution_j());
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(a.antiinvolution_j().antiinvolution_j(), a);
        prop_assert_eq!(alg.casimir().antiinvolution_j(), alg.casimir());
    }

    #[test]
    fn weights_add(cfg in 0..CONFIGS.len(), a in terms(), b in terms()) {
        let alg = algebra(cfg, GeneratorOrder::standard());
        let (a, b) = (element(&alg, &a), element(&alg, &b));
        let mut conv: BTreeMap<i64, NcPoly> = BTreeMap::new();
        for (wa, pa) in a.weight_components() {
            for (wb, pb) in b.weight_components() {
                let slot = conv.entry(wa + wb).or_insert_with(|| NcPoly::zero(alg.clone()));
                *slot = &*slot + &mul(&pa, &pb);
            }
        }
        conv.retain(|_, v| !v.is_zero());
        prop_assert_eq!(mul(&a, &b).weight_components(), conv);
    }
}

fn prime_field() -> impl Strategy<Value = PrimeField> {
    prop::sample::select(vec![3u64, 5, 7, 11, 13, 101]).prop_map(|p| PrimeField::new(p).unwrap())
}

fn ext_field() -> impl Strategy<Value = (ExtField, Fp)> {
    (prop::sample::select(vec![3u64, 5, 7]), 1u32..3).prop_map(|(p, c)| {
        let c = Fp(c % p as u32);
        (artin_schreier_ext(p, c).unwrap().0, c)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn prime_field_axioms(f in prime_field(), a: i64, b: i64, c: i64) {
        let (a, b, c) = (f.from_i64(a), f.from_i64(b), f.from_i64(c));
        prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
        if !f.is_zero(&a) {
            prop_assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
        }
        prop_assert_eq!(f.pow(&a, f.p() as u64), a);
    }

    #[test]
    fn extension_field_axioms((f, c) in ext_field(), i: u64, j: u64, k: u64) {
        let q = f.order();
        let (a, b, d) = (f.element(i % q), f.element(j % q), f.element(k % q));
        prop_assert_eq!(f.mul(&a, &f.add(&b, &d)), f.add(&f.mul(&a, &b), &f.mul(&a, &d)));
        if !f.is_zero(&a) {
            prop_assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
        }
        prop_assert_eq!(f.pow(&a, q), a.clone());
        let lambda = f.generator();
        let p = f.characteristic() as u64;
        prop_assert_eq!(f.sub(&f.pow(&lambda, p), &lambda), f.from_fp(c));
    }

    #[test]
    fn solve_recovers_a_solution(
        f in prime_field(),
        rows in 1usize..7,
        cols in 1usize..7,
        entries in prop::collection::vec(any::<i64>(), 49),
        x in prop::collection::vec(any::<i64>(), 7),
    ) {
        let a = Matrix::from_rows(
            f,
            (0..rows)
                .map(|r| (0..cols).map(|c| f.from_i64(entries[r * 7 + c])).collect())
                .collect(),
        )
        .unwrap();
        let x: Vec<Fp> = x[..cols].iter().map(|v| f.from_i64(*v)).collect();
        let b = a.mul_vec(&x);
        let sol = a.solve(&b).unwrap().expect("consistent system");
        prop_assert_eq!(a.mul_vec(&sol), b);
    }

    #[test]
    fn f_inverse_is_a_section(
        p in prop::sample::select(vec![5u64, 7, 11, 13]),
        coeffs in prop::collection::vec(any::<i64>(), 0..12),
    ) {
        let f = PrimeField::new(p).unwrap();
        let w = CasimirPoly::from_ints(f, &coeffs[..coeffs.len().min(p as usize - 1)]);
        let pre = f_inverse(&w).unwrap();
        prop_assert_eq!(fg_apply(&pre).0, w);
        prop_assert_eq!(pre.coeff(0), Fp(0));
    }
}

fn center_set() -> &'static CenterGenSet {
    static SET: OnceLock<CenterGenSet> = OnceLock::new();
    SET.get_or_init(|| {
        let f = PrimeField::new(3).unwrap();
        let alg = center_algebra(f, CasimirPoly::from_ints(f, &[0, 1]));
        CenterGenSet::build(&alg, &LiftBounds::for_prime(3)).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn products_of_central_elements_are_central(
        picks in prop::collection::vec((0usize..6, 0usize..6, 1i64..3), 1..3),
    ) {
        let set = center_set();
        let gens = set.all();
        let alg = set.algebra();
        let mut a = NcPoly::zero(alg.clone());
        let mut b = NcPoly::one(alg.clone());
        for (i, j, c) in &picks {
            a = &a + &gens[*i].scale(alg.elem(*c));
            b = &b + &mul(gens[*i], gens[*j]);
        }
        prop_assert!(is_central(&a).is_central());
        prop_assert!(is_central(&mul(&a, &b)).is_central());
    }

    #[test]
    fn baby_vermas_carry_their_central_character(phi: u64, psi: u64) {
        let set = center_set();
        let k = census_field(3).unwrap();
        let (phi, psi) = (k.element(phi % 27), k.element(psi % 27));
        let chi = Character::new([k.zero(), phi.clone(), k.zero(), k.zero(), psi.clone()]);
        let m = baby_verma(set, &chi, &BabyVermaKind::B { lambda: k.zero() }, &k).unwrap();
        prop_assert!(relation_defects(&m, Some(set.algebra().deformation())).is_empty());
        for (g, v) in set.z0().into_iter().zip(&chi.values) {
            prop_assert!(acts_as_scalar(&m, g, v), "{}", g);
        }
    }
}
