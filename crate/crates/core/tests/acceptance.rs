//! Acceptance criteria 1-8. Each test prints one line
//!
//! `criterion N: PASS|FAIL  <elapsed>/<limit>  <summary>`
//!
//! and asserts that the outcome equals the expected one. The expected outcome
//! is FAIL only where the claimed statement is false as written; those lines
//! carry the reason, and the parts of the criterion that do hold are still
//! asserted. Run with `cargo test --test acceptance -- --nocapture` to see the
//! lines.

use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sl2hecke::casimir::{build_tz, check_bracket_formula, CasimirPoly};
use sl2hecke::center::{
    adek_fk_check, boyarchenko_lemma_check, center_algebra, lift_solver, singular_locus_check,
    t_power_independence, tp_relation, xp_closed_form, xp_published_form, z0_expected_relation,
    CenterGenSet, LiftBounds,
};
use sl2hecke::fields::{Field, Fp, Matrix, PrimeField};
use sl2hecke::pbw::{
    associativity_check, confluence_check, idempotence_check, Algebra, Gen, PbwMonomial,
};
use sl2hecke::repn::Action;
use sl2hecke::repn::{
    ade_image_test, azumaya_census, baby_verma, beta_scan, census_field, oracle_agreement,
    restricted_fiber, verify_z0_classification, BabyVermaKind, CensusConfig, Character,
    ClassificationCase, Stratum,
};

const SEED: u64 = 20240611;

struct Outcome {
    number: u32,
    summary: String,
    passed: bool,
    /// `None` when the criterion is expected to pass, otherwise the reason it
    /// cannot.
    known_failure: Option<&'static str>,
    limit: Duration,
}

impl Outcome {
    fn finish(self, start: Instant) {
        let elapsed = start.elapsed();
        let status = if self.passed { "PASS" } else { "FAIL" };
        let mut line = format!(
            "criterion {}: {status}  {:.1}s/{}s  {}",
            self.number,
            elapsed.as_secs_f64(),
            self.limit.as_secs(),
            self.summary
        );
        if let Some(reason) = self.known_failure {
            line.push_str(&format!("  [expected FAIL: {reason}]"));
        }
        println!("{line}");
        assert_eq!(
            self.passed,
            self.known_failure.is_none(),
            "criterion {} outcome changed",
            self.number
        );
        assert!(
            elapsed <= self.limit,
            "criterion {} took {elapsed:?}",
            self.number
        );
    }
}

fn field(p: u32) -> PrimeField {
    PrimeField::new(p as u64).unwrap()
}

/// The deformations of criteria 1 and 2: `0, 1, D, D + 1`, `D^2` for
/// `p >= 5` and `D^3` for `p = 7`.
fn grid() -> Vec<(u32, CasimirPoly)> {
    let mut out = Vec::new();
    for p in [3u32, 5, 7] {
        let f = field(p);
        let mut zs: Vec<&[i64]> = vec![&[], &[1], &[0, 1], &[1, 1]];
        if p >= 5 {
            zs.push(&[0, 0, 1]);
        }
        if p == 7 {
            zs.push(&[0, 0, 0, 1]);
        }
        out.extend(zs.into_iter().map(|z| (p, CasimirPoly::from_ints(f, z))));
    }
    out
}

fn label(p: u32, z: &CasimirPoly) -> String {
    format!("p={p} z={}", sl2hecke::casimir::format_deformation(z))
}

#[test]
fn criterion_1_engine_soundness() {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut runs = 0;
    for (p, z) in grid() {
        let alg = Algebra::standard(field(p), z.clone());
        let c = confluence_check(&alg, 200, SEED);
        let a = associativity_check(&alg, 100, SEED + 1);
        let i = idempotence_check(&alg, 100, SEED + 2);
        assert_eq!((c.samples, a.samples), (200, 100));
        runs += 1;
        if !(c.passed() && a.passed() && i.passed()) {
            bad.push(label(p, &z));
        }
    }
    Outcome {
        number: 1,
        summary: format!(
            "confluence (200 words), associativity (100 triples), idempotence on {runs} algebras; failures: {bad:?}"
        ),
        passed: bad.is_empty(),
        known_failure: None,
        limit: Duration::from_secs(60),
    }
    .finish(start);
}

#[test]
fn criterion_2_bracket_formula() {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut checks = 0;
    for (p, z) in grid() {
        let f = field(p);
        let alg = Algebra::standard(f, z.clone());
        for n in 0..p as usize {
            checks += 1;
            if !check_bracket_formula(&alg, &CasimirPoly::monomial(f, Fp(1), n)).holds() {
                bad.push(format!("{} n={n}", label(p, &z)));
            }
        }
    }
    Outcome {
        number: 2,
        summary: format!("[D^n, x] formula, {checks} cases; failures: {bad:?}"),
        passed: bad.is_empty(),
        known_failure: None,
        limit: Duration::from_secs(30),
    }
    .finish(start);
}

#[test]
fn criterion_3_center_generators() {
    let start = Instant::now();
    let mut generator_failures = Vec::new();
    let mut sets = 0;
    let mut published_matches = Vec::new();
    let mut corrected_matches = Vec::new();
    for (p, z) in grid() {
        if z.degree().unwrap_or(0) + 1 >= p as usize {
            continue;
        }
        let alg = center_algebra(field(p), z.clone());
        let bounds = LiftBounds::for_prime(p);
        let set = match CenterGenSet::build(&alg, &bounds) {
            Ok(s) => s,
            Err(e) => {
                generator_failures.push(format!("{}: {e}", label(p, &z)));
                continue;
            }
        };
        sets += 1;
        for c in set.check() {
            if !(c.central.is_central() && c.top_symbol_ok) {
                generator_failures.push(format!("{} {}", label(p, &z), c.name));
            }
        }
        if z.degree() == Some(1) && z.coeff(1) == Fp(1) {
            // the published correction term against the lift found by the
            // general ansatz solver, which does not use the closed form
            let t = build_tz(&alg).unwrap();
            let top = PbwMonomial::gen(Gen::X).with_exp(Gen::X, p as u16);
            let solved = lift_solver(&alg, &t, top, p - 1, &bounds)
                .unwrap()
                .expect("lift exists");
            published_matches.push(solved == xp_published_form(&alg));
            corrected_matches.push(solved == xp_closed_form(&alg) && solved == set.xp);
        }
    }
    assert!(generator_failures.is_empty(), "{generator_failures:?}");
    assert_eq!(corrected_matches, vec![true; 6]);
    let published_ok = published_matches.iter().all(|b| *b);
    Outcome {
        number: 3,
        summary: format!(
            "{sets} generator sets central with expected symbols; x_p = x^p + (-4)^k e^k x for z in {{D, D+1}}: {}/6; x^p - (-4)^k e^k x: 6/6",
            published_matches.iter().filter(|b| **b).count()
        ),
        passed: generator_failures.is_empty() && published_ok,
        known_failure: Some("the + sign on the correction term is not central; the - sign is"),
        limit: Duration::from_secs(300),
    }
    .finish(start);
}

#[test]
fn criterion_4_t_power_identity() {
    let start = Instant::now();
    let mut parts = Vec::new();
    let mut ok = true;
    for p in [3u32, 5] {
        let f = field(p);
        let alg = center_algebra(f, CasimirPoly::zero(f));
        let set = CenterGenSet::build(&alg, &LiftBounds::for_prime(p)).unwrap();
        let rel = tp_relation(&set).unwrap();
        let same = rel == z0_expected_relation(p);
        let indep = t_power_independence(&set, 1).unwrap();
        ok &= same && indep;
        parts.push(format!("p={p}: {} (independent: {indep})", rel.display()));
    }
    Outcome {
        number: 4,
        summary: parts.join("; "),
        passed: ok,
        known_failure: None,
        limit: Duration::from_secs(120),
    }
    .finish(start);
}

/// `q(A)` for a square matrix by Horner's rule.
fn eval_matrix_poly<F: Field>(coeffs: &[F::Elem], a: &Matrix<F>) -> Matrix<F> {
    let field = a.field().clone();
    let n = a.rows();
    let mut acc = Matrix::zeros(field.clone(), n, n);
    for c in coeffs.iter().rev() {
        acc = acc.mul(a).add(&Matrix::scalar(field.clone(), n, c));
    }
    acc
}

#[test]
fn criterion_5_degree_p_cover() {
    let start = Instant::now();
    let p = 3u32;
    let f = field(p);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut parts = Vec::new();
    let mut ok = true;
    for z in [CasimirPoly::zero(f), CasimirPoly::from_ints(f, &[0, 1])] {
        let alg = center_algebra(f, z.clone());
        let set = CenterGenSet::build(&alg, &LiftBounds::for_prime(p)).unwrap();
        let rel = tp_relation(&set).unwrap();
        let top = rel.top_filtration_part();
        let top_ok = top.hypersurface() == z0_expected_relation(p).hypersurface();
        // independent check: the relation kills t_z in fibers at random
        // characters of the Frobenius part
        let mut fiber_ok = true;
        for _ in 0..2 {
            let chi = Character::new([(); 5].map(|_| f.random(&mut rng)));
            let fiber = restricted_fiber(&set, &chi, &f).unwrap();
            let t = fiber.element_matrix(&set.tz.convert_to(fiber.algebra()));
            let q = rel.specialize(&f, &chi.values);
            fiber_ok &= eval_matrix_poly(q.coeffs(), &t).is_zero();
        }
        ok &= rel.coeffs.len() == p as usize && top_ok && fiber_ok;
        parts.push(format!(
            "{}: {} (top part matches: {top_ok}, holds in fibers: {fiber_ok})",
            sl2hecke::casimir::format_deformation(&z),
            rel.display()
        ));
    }
    Outcome {
        number: 5,
        summary: parts.join("; "),
        passed: ok,
        known_failure: None,
        limit: Duration::from_secs(120),
    }
    .finish(start);
}

#[test]
fn criterion_6_oracle_agreement() {
    let start = Instant::now();
    let f = field(3);
    let alg = center_algebra(f, CasimirPoly::from_ints(f, &[0, 1]));
    let set = CenterGenSet::build(&alg, &LiftBounds::for_prime(3)).unwrap();
    let fiber = restricted_fiber(&set, &Character::zero(&f), &f).unwrap();
    assert_eq!(fiber.basis().len(), 243);
    let r = oracle_agreement(&fiber, &set, 50, SEED);
    Outcome {
        number: 6,
        summary: format!(
            "p=3 z=D, 243-dim fiber: {}/{} identities, noncentral generators {:?}",
            r.identities - r.identity_failures.len(),
            r.identities,
            r.noncentral
        ),
        passed: r.passed() && r.identities == 50,
        known_failure: None,
        limit: Duration::from_secs(120),
    }
    .finish(start);
}

#[test]
fn criterion_7_representations() {
    let start = Instant::now();
    let p = 3u32;
    let fp = field(p);
    let k = census_field(p).unwrap();
    assert_eq!(k.order(), 27);
    let alg = center_algebra(fp, CasimirPoly::zero(fp));
    let set = CenterGenSet::build(&alg, &LiftBounds::for_prime(p)).unwrap();
    let rel = tp_relation(&set).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let chi = |v: [i64; 5]| Character::new(v.map(|x| k.from_i64(x)));

    // census over the F_3 grid with e^p = 0 plus samples
    let cfg = CensusConfig {
        samples: 12,
        seed: SEED,
        grid: true,
    };
    let (rows, summary) = azumaya_census(&set, &rel, &k, &cfg).unwrap();
    let rs: Vec<_> = rows
        .iter()
        .filter(|r| r.stratum == Stratum::RegularSemisimple.to_string())
        .collect();
    let rs_ok = !rs.is_empty()
        && rs
            .iter()
            .all(|r| r.max_irr_dim == 9 && r.azumaya_flag && r.certified);
    let pi_ok = summary.pi_degree_bound_ok && summary.max_dim_seen == 9;

    // regular semisimple with x_p != 0: an explicit irreducible module over F_27
    let r_rs = verify_z0_classification(&set, &rel, &chi([0, 0, 1, 1, 1]), &k, &mut rng).unwrap();
    let rs_module_ok = r_rs.module_dim == 9 && r_rs.module_irreducible;
    // fully nilpotent character
    let r_nil = verify_z0_classification(&set, &rel, &chi([0, 0, 0, 0, 0]), &k, &mut rng).unwrap();
    let nil_ok = r_nil.case == ClassificationCase::VectorPartZero && r_nil.passed;

    // baby Verma dimensions
    let b_dim = baby_verma(
        &set,
        &chi([0, 0, 0, 0, 1]),
        &BabyVermaKind::B { lambda: k.zero() },
        &k,
    )
    .unwrap()
    .dim();
    let n_dims: Vec<(String, usize)> = [[0, 0, 0, 1, 0], [0, 0, 0, 1, 1], [0, 1, 0, 1, 0]]
        .into_iter()
        .map(|v| {
            let mut c = chi(v);
            let tau = rel.specialize(&k, &c.values).roots()[0].clone();
            c.tau = Some(tau);
            let kind = BabyVermaKind::N {
                phi: k.pth_root(c.fp()),
                psi: k.pth_root(c.yp()),
            };
            let d = baby_verma(&set, &c, &kind, &k).unwrap().dim();
            (format!("{v:?}"), d)
        })
        .collect();
    let n_all_nine = n_dims.iter().all(|(_, d)| *d == 9);
    let r_n0 = verify_z0_classification(&set, &rel, &chi([0, 0, 0, 1, 0]), &k, &mut rng).unwrap();

    // every beta in F_27 on the f^p = 1 stratum
    let scan = beta_scan(&set, &k, &k.elements(), &mut rng).unwrap();

    assert!(rs_ok && pi_ok && rs_module_ok && nil_ok, "{summary:?}");
    assert_eq!(b_dim, 9);
    assert_eq!(n_dims[1].1, 9);
    assert_eq!(n_dims[2].1, 9);
    assert_eq!(r_n0.factor_dims, vec![9, 9, 9]);
    assert!(scan.found_irreducible() && scan.total == 27);
    Outcome {
        number: 7,
        summary: format!(
            "{} census points, {} regular semisimple all 9-dim Azumaya, max simple dim {}; nilpotent factors have X=Y=0; B-type dim {b_dim}; N-type dims {n_dims:?}; beta scan {}/27 irreducible",
            summary.points,
            rs.len(),
            summary.max_dim_seen,
            scan.irreducible
        ),
        passed: rs_ok && pi_ok && rs_module_ok && nil_ok && b_dim == 9 && n_all_nine
            && scan.found_irreducible(),
        known_failure: Some(
            "at f^p = y_p = 0 the N-type module has dimension 27 (three 9-dim factors), not 9",
        ),
        limit: Duration::from_secs(600),
    }
    .finish(start);
}

#[test]
fn criterion_8_lemmas() {
    let start = Instant::now();
    let mut parts = Vec::new();
    let mut others_ok = true;
    let mut sweep_ok = true;
    let mut solvable_everywhere = Vec::new();
    for p in [3u32, 5] {
        let f = field(p);
        let adek = adek_fk_check(&Algebra::standard(f, CasimirPoly::zero(f)));
        let poly = (0..3).all(|m| boyarchenko_lemma_check(p, m));
        let sl = singular_locus_check(p);
        let singular_ok = sl.locus_is_x2_x4()
            && sl.is_singular_at(&[Fp(1), Fp(0), Fp(2), Fp(0), Fp(1), Fp(0)])
            && !sl.is_singular_at(&[Fp(0), Fp(1), Fp(0), Fp(0), Fp(0), Fp(0)]);
        others_ok &= adek.passed() && poly && singular_ok;
        for m in 1..p {
            for c in 1..p {
                let r = ade_image_test(p, m, Fp(c)).unwrap();
                if !r.passed() {
                    sweep_ok = false;
                    solvable_everywhere.push(format!("p={p} m={m} c={c}"));
                }
            }
        }
        parts.push(format!(
            "p={p}: adek {}, polynomial lemma {poly}, singular locus {singular_ok}",
            adek.passed()
        ));
    }
    let spec_instances = [(3u32, 1u32), (5, 2)]
        .iter()
        .all(|&(p, m)| ade_image_test(p, m, Fp(1)).unwrap().passed());
    assert!(others_ok && spec_instances);
    Outcome {
        number: 8,
        summary: format!(
            "{}; ad(e) image test over all m, c: f^m solvable at every root for {solvable_everywhere:?} (p=3 m=1 and p=5 m=2 at c=1 pass)",
            parts.join("; ")
        ),
        passed: others_ok && sweep_ok,
        known_failure: Some("for p >= 5 the trace of f e on V vanishes, so f lies in ad(e)(End V) for every weight"),
        limit: Duration::from_secs(60),
    }
    .finish(start);
}
