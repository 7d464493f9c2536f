use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sl2hecke::casimir::{check_bracket_formula, CasimirPoly};
use sl2hecke::center::{
    adek_fk_check, boyarchenko_lemma_check, center_algebra, singular_locus_check,
    t_power_independence, tp_relation, z0_expected_relation, CenterGenSet, Centrality,
};
use sl2hecke::fields::{Field, Fp};
use sl2hecke::pbw::{
    associativity_check, confluence_check, idempotence_check, parse_element, Algebra,
    GeneratorOrder,
};
use sl2hecke::repn::{
    ade_image_test, azumaya_census, beta_scan, census_field, oracle_agreement, restricted_fiber,
    verify_z0_classification, write_census, CensusConfig, Character,
};
use thiserror::Error;

use crate::config::{ConfigError, RunConfig};
use crate::report::Report;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Write(#[from] sl2hecke::repn::CensusWriteError),
    #[error(transparent)]
    Repn(#[from] sl2hecke::repn::RepnError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

fn header(r: &mut Report, cfg: &RunConfig) {
    r.param("p", cfg.p());
    r.param("z", cfg.z_text());
    r.param("seed", cfg.seed);
}

fn build_set(r: &mut Report, cfg: &RunConfig) -> Option<CenterGenSet> {
    let alg = center_algebra(cfg.field, cfg.z.clone());
    match CenterGenSet::build(&alg, &cfg.bounds) {
        Ok(set) => {
            r.check("construct generators", true, "");
            Some(set)
        }
        Err(e) => {
            r.check(
                "construct generators",
                false,
                format!("{e}; raise --ansatz-t/-e/-r"),
            );
            None
        }
    }
}

pub fn verify_center(cfg: &RunConfig) -> Result<Report, CliError> {
    cfg.require_center_degree("verify-center")?;
    let mut r = Report::new("verify-center");
    header(&mut r, cfg);
    let b = &cfg.bounds;
    r.param(
        "ansatz",
        format!("t<={}, e<={}, r<={}", b.max_t, b.max_e, b.max_r),
    );
    let Some(set) = build_set(&mut r, cfg) else {
        return Ok(r);
    };
    for c in set.check() {
        let detail = match &c.central {
            Centrality::Central => String::new(),
            Centrality::Fails { generator, witness } => {
                format!("[{}, {generator}] = {witness}", c.name)
            }
        };
        r.check(
            &format!("{} central", c.name),
            c.central.is_central(),
            detail,
        );
        r.check(
            &format!("{} top symbol", c.name),
            c.top_symbol_ok,
            &c.top_symbol,
        );
    }
    r.note(format!("x_p = {}", set.xp));
    r.note(format!("t_z = {}", set.tz));
    let jd = set.j_defect();
    r.note(format!("j(t_z) - t_z = {jd}"));
    match t_power_independence(&set, 1) {
        Ok(ok) => r.check("t-power independence (degree 1)", ok, ""),
        Err(e) => r.check("t-power independence (degree 1)", false, e.to_string()),
    };
    match tp_relation(&set) {
        Ok(rel) => {
            r.check("degree-p relation for t_z", true, rel.display());
            if cfg.z.is_zero() {
                let want = z0_expected_relation(cfg.p());
                r.check(
                    "relation matches the z = 0 form",
                    rel == want,
                    want.display(),
                );
            } else {
                let top = rel.top_filtration_part();
                let want = z0_expected_relation(cfg.p());
                r.check(
                    "top filtration part matches z = 0",
                    top.hypersurface() == want.hypersurface(),
                    top.display(),
                );
            }
        }
        Err(e) => {
            let d = cfg.z.degree().unwrap_or(0);
            let hint = format!(
                "{e}; deg z = {d} may need coefficient degree up to {}",
                2 * d + 2
            );
            r.check("degree-p relation for t_z", false, hint);
        }
    }
    Ok(r)
}

pub fn selftest(cfg: &RunConfig) -> Result<Report, CliError> {
    let mut r = Report::new("selftest");
    header(&mut r, cfg);
    let samples = cfg.samples.unwrap_or(200);
    r.param("samples", samples);
    let alg = Algebra::standard(cfg.field, cfg.z.clone());
    let conf = confluence_check(&alg, samples, cfg.seed);
    let witness = conf
        .divergences
        .first()
        .or(conf.engine_mismatches.first())
        .cloned()
        .unwrap_or_default();
    r.check(
        &format!("confluence ({} words)", conf.samples),
        conf.passed(),
        witness,
    );
    let assoc = associativity_check(&alg, samples.min(100), cfg.seed.wrapping_add(1));
    r.check(
        &format!("associativity ({} triples)", assoc.samples),
        assoc.passed(),
        assoc.failures.first().cloned().unwrap_or_default(),
    );
    let idem = idempotence_check(&alg, samples.min(100), cfg.seed.wrapping_add(2));
    r.check(
        &format!("idempotent normal forms ({} elements)", idem.samples),
        idem.passed(),
        idem.failures.first().cloned().unwrap_or_default(),
    );
    let mut bad = Vec::new();
    for n in 0..cfg.p() as usize {
        let w = CasimirPoly::monomial(cfg.field, Fp(1), n);
        if !check_bracket_formula(&alg, &w).holds() {
            bad.push(n.to_string());
        }
    }
    r.check(
        &format!("bracket formula for D^0..D^{}", cfg.p() - 1),
        bad.is_empty(),
        if bad.is_empty() {
            String::new()
        } else {
            format!("fails for n = {}", bad.join(", "))
        },
    );
    if cfg.p() == 3 && cfg.require_center_degree("").is_ok() {
        let alg = center_algebra(cfg.field, cfg.z.clone());
        match CenterGenSet::build(&alg, &cfg.bounds) {
            Ok(set) => {
                let fiber = restricted_fiber(&set, &Character::zero(&cfg.field), &cfg.field)?;
                let o = oracle_agreement(&fiber, &set, 50, cfg.seed.wrapping_add(3));
                let detail = if o.passed() {
                    String::new()
                } else {
                    format!(
                        "failures: {:?}, noncentral: {:?}",
                        o.identity_failures.first(),
                        o.noncentral
                    )
                };
                r.check(
                    &format!(
                        "oracle agreement in the 243-dim fiber ({} identities)",
                        o.identities
                    ),
                    o.passed(),
                    detail,
                );
            }
            Err(e) => {
                r.check("oracle agreement", false, e.to_string());
            }
        }
    } else {
        r.note("oracle agreement runs at p = 3 with deg z < 2 only");
    }
    Ok(r)
}

fn chi_from<F: Field>(field: &F, v: [i64; 5]) -> Character<F> {
    Character::new(v.map(|x| field.from_i64(x)))
}

pub fn census(cfg: &RunConfig) -> Result<Report, CliError> {
    let p = cfg.p();
    if p != 3 && p != 5 {
        return Err(ConfigError::UnsupportedPrime {
            command: "census",
            p,
        }
        .into());
    }
    cfg.require_center_degree("census")?;
    let mut r = Report::new("census");
    header(&mut r, cfg);
    let ccfg = CensusConfig {
        samples: cfg.samples.unwrap_or(24),
        seed: cfg.seed,
        grid: cfg.grid.unwrap_or(p == 3),
    };
    r.param("samples", ccfg.samples);
    r.param("grid", ccfg.grid);
    let Some(set) = build_set(&mut r, cfg) else {
        return Ok(r);
    };
    let rel = match tp_relation(&set) {
        Ok(rel) => rel,
        Err(e) => {
            r.check("degree-p relation for t_z", false, e.to_string());
            return Ok(r);
        }
    };
    let field = census_field(p)?;
    r.param("field order", field.order());
    let (rows, summary) = azumaya_census(&set, &rel, &field, &ccfg)?;
    write_census(&cfg.out, &rows, &summary)?;
    r.note(format!(
        "{} characters, {} points, {} smooth, {} Azumaya; wrote census.csv and census_summary.json",
        summary.characters, summary.points, summary.smooth_points, summary.azumaya_points
    ));
    r.check(
        "Azumaya flag equals smooth flag at every point",
        summary.disagreements.is_empty(),
        summary.disagreements.join("; "),
    );
    r.check(
        &format!("no simple module of dimension > {}", p * p),
        summary.pi_degree_bound_ok,
        format!("largest seen {}", summary.max_dim_seen),
    );
    r.check(
        "all composition factors certified",
        summary.uncertified_points == 0,
        "",
    );
    if cfg.z.is_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let cases = [
            [0, 0, 0, 1, 0],
            [0, 0, 0, 1, 1],
            [0, 1, 0, 1, 0],
            [0, 0, 0, 0, 1],
            [0, 0, 0, 0, 0],
            [0, 1, 1, 0, 0],
        ];
        let mut reports = Vec::new();
        for v in cases {
            let chi = chi_from(&field, v);
            let c = verify_z0_classification(&set, &rel, &chi, &field, &mut rng)?;
            r.check(
                &format!("classification at {}", chi.format(&field)),
                c.passed,
                format!(
                    "{:?}, module dim {}, factors {:?}",
                    c.case, c.module_dim, c.factor_dims
                ),
            );
            reports.push(serde_json::json!({ "character": chi.format(&field), "report": c }));
        }
        std::fs::write(
            cfg.out.join("classification.json"),
            serde_json::to_string_pretty(&reports)? + "\n",
        )?;
        let betas: Vec<_> = if p == 3 {
            field.elements()
        } else {
            (0..ccfg.samples).map(|_| field.random(&mut rng)).collect()
        };
        let scan = beta_scan(&set, &field, &betas, &mut rng)?;
        std::fs::write(
            cfg.out.join("beta_scan.json"),
            serde_json::to_string_pretty(&scan)? + "\n",
        )?;
        r.check(
            "B-type family at f^p = 1 has irreducible members",
            scan.found_irreducible(),
            format!("{} of {} irreducible", scan.irreducible, scan.total),
        );
    }
    Ok(r)
}

pub fn lemmas(cfg: &RunConfig) -> Result<Report, CliError> {
    let p = cfg.p();
    let mut r = Report::new("lemmas");
    header(&mut r, cfg);
    let adek = adek_fk_check(&Algebra::standard(cfg.field, cfg.z.clone()));
    let detail = adek
        .rows
        .iter()
        .map(|(k, nz, c, want)| {
            format!(
                "k={k}: {} h^{k} coeff {} (k! = {})",
                if *nz { "nonzero" } else { "zero" },
                c.0,
                want.0
            )
        })
        .collect::<Vec<_>>()
        .join("; ");
    r.check("(ad e)^k f^k", adek.passed(), detail);
    let ms: Vec<u32> = (0..3).collect();
    let fails: Vec<String> = ms
        .iter()
        .filter(|&&m| !boyarchenko_lemma_check(p, m))
        .map(|m| m.to_string())
        .collect();
    r.check(
        "polynomial lemma, kernel zero for m = 0, 1, 2",
        fails.is_empty(),
        fails.join(", "),
    );
    if p <= 5 {
        let mut bad = Vec::new();
        let mut counts = Vec::new();
        for m in 1..p {
            for c in 1..p {
                let rep = ade_image_test(p, m, Fp(c))?;
                counts.push(format!("m={m},c={c}: {}/{}", rep.count(), rep.roots()));
                if !rep.passed() {
                    bad.push(format!("m={m}, c={c}"));
                }
            }
        }
        let mut detail = counts.join("; ");
        if !bad.is_empty() {
            detail = format!("solvable at every root for {}; {detail}", bad.join(" and "));
        }
        r.check(
            "f^m in ad(e)(End V) for fewer than all roots",
            bad.is_empty(),
            detail,
        );
    } else {
        r.note("ad(e) image test skipped above p = 5");
    }
    let sl = singular_locus_check(p);
    r.check(
        "singular locus of the z = 0 center is x_p = y_p = 0",
        sl.locus_is_x2_x4(),
        "",
    );
    Ok(r)
}

pub fn print(cfg: &RunConfig, expr: &str, order: Option<&str>) -> Result<Report, CliError> {
    let order = match order {
        Some(s) => GeneratorOrder::parse(s).map_err(|e| CliError::Usage(e.to_string()))?,
        None => GeneratorOrder::standard(),
    };
    let alg: Arc<Algebra> = Algebra::new(cfg.field, cfg.z.clone(), order);
    let a = parse_element(&alg, expr)
        .map_err(|e| CliError::Usage(format!("cannot parse {expr:?}: {e}")))?;
    let mut r = Report::new("print");
    r.param("p", cfg.p());
    r.param("z", cfg.z_text());
    r.note(format!("{a}"));
    let deg = a
        .filtration_degree()
        .map_or("-".to_string(), |d| d.to_string());
    r.note(format!("terms: {}, x/y degree: {deg}", a.len()));
    if !a.is_zero() {
        r.note(format!("leading symbol: {}", a.leading_symbol()));
    }
    Ok(r)
}
