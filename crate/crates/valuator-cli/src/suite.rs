//! The acceptance battery: nine exact checks over the catalog and the
//! constructed decompositions, each with a time budget.

use crate::catalog::{all_matroids, octahedron, relaxable_flats, Catalog};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};
use std::time::{Duration, Instant};
use valuator::decomp::{build_complex, delta_psi_complex, relaxation_decomposition, Decomposition};
use valuator::equivariant::{
    character_identity_check, det_character, kl_correction_check, kl_relax_check, os_exponent_report, virtual_check, PermGroup, Relaxation,
};
use valuator::functors::{
    bergman_signature, by_name, g_invariant, kl_oracle, psi_chain, z_oracle, AugChow, BergmanSignature, Chow, Convolve, Functor, Kl,
    PsiFlags, Sigma, WeakMap, WordSum,
};
use valuator::homcheck::apply;
use valuator::matroid::bits::{self, Mask};
use valuator::polytope;
use valuator::{GroundSet, IntPoly, Matroid, Perm, Rat};

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 0x5eed_2024;

/// Result of one acceptance criterion.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: usize,
    pub title: &'static str,
    pub checks_passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub budget: Duration,
}

impl Outcome {
    /// Every check held and the run stayed within its budget.
    pub fn passed(&self) -> bool {
        self.checks_passed && self.elapsed <= self.budget
    }

    /// One line: status, number, title, timing and detail.
    pub fn line(&self) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let over = if self.checks_passed && !self.passed() { " over budget" } else { "" };
        format!(
            "{status} criterion {}: {} [{:.2}s / {}s{over}] {}",
            self.id,
            self.title,
            self.elapsed.as_secs_f64(),
            self.budget.as_secs(),
            self.detail
        )
    }

    pub fn to_json(&self) -> Value {
        json!({
            "id": self.id,
            "title": self.title,
            "passed": self.passed(),
            "checks_passed": self.checks_passed,
            "detail": self.detail,
            "budget_s": self.budget.as_secs(),
        })
    }
}

/// Shared inputs, built once.
pub struct Context {
    pub seed: u64,
    pub catalog: Catalog,
}

impl Context {
    pub fn new(seed: u64) -> Self {
        Context { seed, catalog: Catalog::standard() }
    }
}

/// One acceptance criterion.
pub struct Criterion {
    pub id: usize,
    pub title: &'static str,
    pub budget: Duration,
    run: fn(&Context) -> (bool, String),
}

impl Criterion {
    pub fn run(&self, ctx: &Context) -> Outcome {
        let start = Instant::now();
        let (checks_passed, detail) = (self.run)(ctx);
        Outcome { id: self.id, title: self.title, checks_passed, detail, elapsed: start.elapsed(), budget: self.budget }
    }
}

pub const CRITERIA: &[Criterion] = &[
    Criterion { id: 1, title: "octahedron suite", budget: Duration::from_secs(1), run: octahedron_suite },
    Criterion { id: 2, title: "valuativity sweep", budget: Duration::from_secs(300), run: valuativity_sweep },
    Criterion { id: 3, title: "KL cross-validation", budget: Duration::from_secs(120), run: kl_cross_validation },
    Criterion { id: 4, title: "Chow identities", budget: Duration::from_secs(60), run: chow_identities },
    Criterion { id: 5, title: "monotonicity", budget: Duration::from_secs(120), run: monotonicity },
    Criterion { id: 6, title: "face-maximization experiment", budget: Duration::from_secs(60), run: delta_psi },
    Criterion { id: 7, title: "convolution", budget: Duration::from_secs(60), run: convolution },
    Criterion { id: 8, title: "equivariant suite", budget: Duration::from_secs(120), run: equivariant_suite },
    Criterion { id: 9, title: "decategorified kernel checks", budget: Duration::from_secs(60), run: decategorified },
];

/// Runs every criterion in order.
pub fn run_all(ctx: &Context) -> Vec<Outcome> {
    CRITERIA.iter().map(|c| c.run(ctx)).collect()
}

/// The JSON report of a full run.
pub fn report(ctx: &Context, outcomes: &[Outcome]) -> Value {
    crate::io::report(
        "acceptance",
        json!({
            "seed": ctx.seed,
            "catalog_size": ctx.catalog.len(),
            "passed": outcomes.iter().all(Outcome::passed),
            "criteria": outcomes.iter().map(Outcome::to_json).collect::<Vec<_>>(),
        }),
    )
}

/// Functors whose complexes must be exact on every decomposition.
pub const VALUATIVE: &[&str] = &["tau", "gros", "os", "whitney:1", "whitney:2", "whitney:1,2", "chow", "augchow", "kl", "sigma"];

fn named(names: &[&str]) -> Vec<Box<dyn Functor>> {
    names.iter().map(|n| by_name(n).expect("registered functor")).collect()
}

/// The valuative functors plus flag indicators on `n` elements.
pub fn sweep_functors(n: usize) -> Vec<Box<dyn Functor>> {
    let mut fs = named(VALUATIVE);
    fs.push(Box::new(PsiFlags::new(vec![0b1])));
    if n >= 3 {
        fs.push(Box::new(PsiFlags::new(vec![0b1, 0b111])));
        fs.push(Box::new(psi_chain(0b1, &[0b11], n)));
    }
    fs
}

/// Exactness of `f` on the complex of `d`, with its Euler characteristic
/// also required to vanish.
pub fn exact_on(f: &dyn Functor, d: &Decomposition) -> Result<(), String> {
    let c = build_complex(d).map_err(|e| e.to_string())?;
    let ch = apply(f, c.complex()).map_err(|e| e.to_string())?;
    let h = ch.homology();
    if !h.is_zero() {
        return Err(format!("{} has homology {:?}", f.name(), h.by_degree));
    }
    if !ch.euler().is_zero() {
        return Err(format!("{} has a nonzero Euler characteristic", f.name()));
    }
    Ok(())
}

fn summarize(failures: &[String], ok_detail: String) -> (bool, String) {
    if failures.is_empty() {
        (true, ok_detail)
    } else {
        let shown: Vec<&str> = failures.iter().take(3).map(String::as_str).collect();
        (false, format!("{} failures, first: {}", failures.len(), shown.join("; ")))
    }
}

fn words(n: usize, ws: &[&str]) -> Matroid {
    Matroid::from_words(GroundSet::numbered(n), ws).expect("valid matroid")
}

fn octahedron_suite(ctx: &Context) -> (bool, String) {
    let d = octahedron();
    let mut failures = Vec::new();
    if let Err(e) = d.validate(32, ctx.seed) {
        failures.push(format!("validation: {e}"));
    }
    let c = build_complex(&d).expect("octahedron complex");
    if !c.complex().squares_to_zero() {
        failures.push("∂² ≠ 0".into());
    }
    let fs = named(VALUATIVE);
    let results: Vec<Result<(), String>> = fs.par_iter().map(|f| exact_on(f.as_ref(), &d)).collect();
    failures.extend(results.into_iter().filter_map(Result::err));
    for f in &fs {
        let mut total = valuator::BiPoly::<i64>::zero();
        for (s, m) in d.signed_generator() {
            for (deg, c) in f.obj(&m).hilbert().terms() {
                total.add_term(deg, s * c);
            }
        }
        if !total.is_zero() {
            failures.push(format!("signed Hilbert series of {} is nonzero", f.name()));
        }
    }
    let expected = [
        (Matroid::uniform_numbered(2, 4).expect("matroid"), [1, 4, 3]),
        (words(4, &["12", "13", "14", "23", "24"]), [1, 3, 2]),
        (words(4, &["13", "14", "23", "24", "34"]), [1, 3, 2]),
        (words(4, &["13", "14", "23", "24"]), [1, 2, 1]),
    ];
    for (m, p) in &expected {
        if m.poincare() != IntPoly::from_coeffs(*p) {
            failures.push(format!("Poincaré polynomial of {m:?} is {:?}", m.poincare()));
        }
    }
    let mut pi = IntPoly::zero();
    for (s, m) in d.signed_generator() {
        for (i, c) in m.poincare().terms() {
            pi.add_term(i, s * c);
        }
    }
    if !pi.is_zero() {
        failures.push("signed Poincaré sum is nonzero".into());
    }
    summarize(&failures, format!("{} functors exact, Poincaré identity holds", fs.len()))
}

fn valuativity_sweep(ctx: &Context) -> (bool, String) {
    let decomps = ctx.catalog.relaxation_decompositions(8);
    let orbits = decomps.iter().filter(|(n, _)| n.ends_with("/aut")).count();
    let results: Vec<Vec<String>> = decomps
        .par_iter()
        .map(|(name, d)| {
            let mut out = Vec::new();
            if let Err(e) = d.validate(16, ctx.seed) {
                out.push(format!("{name}: {e}"));
            }
            for f in sweep_functors(d.target().n()) {
                if let Err(e) = exact_on(f.as_ref(), d) {
                    out.push(format!("{name}: {e}"));
                }
            }
            out
        })
        .collect();
    let failures: Vec<String> = results.into_iter().flatten().collect();
    let per = sweep_functors(8).len();
    summarize(&failures, format!("{} decompositions ({orbits} orbit relaxations) × {per} functors exact", decomps.len()))
}

fn kl_cross_validation(ctx: &Context) -> (bool, String) {
    let entries: Vec<_> = ctx.catalog.up_to(6).collect();
    let results: Vec<Vec<String>> = entries
        .par_iter()
        .map(|e| {
            let m = &e.matroid;
            let mut out = Vec::new();
            let (p, z) = (kl_oracle(m), z_oracle(m));
            let pt = Kl.obj(m).hilbert().at_u(&-1);
            if pt != p {
                out.push(format!("{}: flag count gives P = {pt:?}, recursion {p:?}", e.name));
            }
            let zt = Sigma.obj(m).hilbert().at_u(&-1);
            if zt != z {
                out.push(format!("{}: flag count gives Z = {zt:?}, recursion {z:?}", e.name));
            }
            if z.reverse(m.rank() as u32) != z {
                out.push(format!("{}: Z = {z:?} is not palindromic", e.name));
            }
            out
        })
        .collect();
    let failures: Vec<String> = results.into_iter().flatten().collect();
    summarize(&failures, format!("{} matroids with at most 6 elements", entries.len()))
}

fn chow_identities(ctx: &Context) -> (bool, String) {
    let entries: Vec<_> = ctx.catalog.entries().iter().collect();
    let results: Vec<Option<String>> = entries
        .par_iter()
        .map(|e| {
            let m = &e.matroid;
            let lhs = AugChow.obj(m).hilbert_t();
            let mut rhs = IntPoly::zero();
            for f in m.flats() {
                rhs = rhs + Chow.obj(&m.contraction(f)).hilbert_t().shift(m.rank_of(f) as u32);
            }
            (lhs != rhs).then(|| format!("{}: {lhs:?} ≠ {rhs:?}", e.name))
        })
        .collect();
    let mut failures: Vec<String> = results.into_iter().flatten().collect();
    let u = Matroid::uniform_numbered(2, 4).expect("matroid");
    if Chow.obj(&u).hilbert_t() != IntPoly::from_coeffs([1, 1]) {
        failures.push("Chow polynomial of U2,4".into());
    }
    if AugChow.obj(&u).hilbert_t() != IntPoly::from_coeffs([1, 5, 1]) {
        failures.push("augmented Chow polynomial of U2,4".into());
    }
    summarize(&failures, format!("{} matroids", entries.len()))
}

/// Weak maps `source → target` drawn from the catalog: relaxations onto
/// the relaxed matroid, uniform matroids onto everything of their rank and
/// size, and polytopes onto their facets.
pub fn weak_map_pairs(catalog: &Catalog, max_n: usize) -> Vec<(Matroid, Matroid)> {
    let mut out = Vec::new();
    for e in catalog.up_to(max_n) {
        let m = &e.matroid;
        for f in relaxable_flats(m) {
            out.push((m.relax(f).expect("relaxable"), m.clone()));
        }
        let u = Matroid::uniform_numbered(m.rank(), m.n()).expect("matroid");
        if &u != m {
            out.push((u, m.clone()));
        }
        if m.n() <= 5 {
            let d = m.dimension();
            for face in polytope::all_faces(m).into_iter().filter(|f| f.dimension() + 1 == d) {
                out.push((m.clone(), face));
            }
        }
    }
    out
}

fn nonneg(p: &IntPoly) -> bool {
    p.terms().all(|(_, c)| *c >= 0)
}

fn monotonicity(ctx: &Context) -> (bool, String) {
    let pairs = weak_map_pairs(&ctx.catalog, 6);
    let fs = named(&["whitney:1", "whitney:2", "whitney:1,2", "chow", "augchow"]);
    let results: Vec<(Vec<String>, Vec<String>)> = pairs
        .par_iter()
        .map(|(s, t)| {
            let w = WeakMap::inclusion(s, t).expect("catalog pairs are weak maps");
            let mut surj = Vec::new();
            for f in &fs {
                let (a, b) = (f.obj(s), f.obj(t));
                let map = f.mor(&w, &a, &b);
                for d in b.degrees() {
                    if map.block_or_zero(d, &a, &b).rank() != b.dim(d) {
                        surj.push(format!("{} not surjective in degree {d:?} for {s:?} → {t:?}", f.name()));
                    }
                }
            }
            let mut negative = Vec::new();
            let dp = kl_oracle(s) - kl_oracle(t);
            let dz = z_oracle(s) - z_oracle(t);
            if !nonneg(&dp) || !nonneg(&dz) {
                negative.push(format!("{s:?} → {t:?}: ΔP = {dp:?}, ΔZ = {dz:?}"));
            }
            (surj, negative)
        })
        .collect();
    let (surj, negative): (Vec<_>, Vec<_>) = results.into_iter().unzip();
    let surj: Vec<String> = surj.into_iter().flatten().collect();
    let negative: Vec<String> = negative.into_iter().flatten().collect();
    let mut failures = surj;
    if pairs.len() < 200 {
        failures.push(format!("only {} weak-map pairs", pairs.len()));
    }
    failures.extend(negative.iter().map(|n| format!("negative coefficient: {n}")));
    summarize(
        &failures,
        format!("{} weak maps × {} functors surjective; P/Z difference report: {} negative", pairs.len(), fs.len(), negative.len()),
    )
}

fn indicator(s: Mask, n: usize) -> Vec<Rat> {
    (0..n).map(|e| Rat::from_integer(i64::from(bits::contains(s, e)).into())).collect()
}

/// τ-homology of the face-maximized complex against the shifted complex of
/// the induced decomposition of the maximal face.
pub fn delta_psi_agrees(d: &Decomposition, psi: &[Rat]) -> Result<(), String> {
    let c = build_complex(d).map_err(|e| e.to_string())?;
    let tau = valuator::functors::Tau;
    let formal = delta_psi_complex(c.complex(), psi);
    let lhs = apply(&tau, &formal).map_err(|e| e.to_string())?.homology();
    let face = polytope::maximize(d.target(), psi);
    let q = d.restricted_to(&face).map_err(|e| e.to_string())?;
    let qc = build_complex(&q).map_err(|e| e.to_string())?;
    let shift = d.dimension() as i64 - face.dimension() as i64;
    let rhs = apply(&tau, qc.complex()).map_err(|e| e.to_string())?.homology().shifted(shift);
    if lhs == rhs {
        Ok(())
    } else {
        Err(format!("ψ = {psi:?}: {:?} vs {:?}", lhs.by_degree, rhs.by_degree))
    }
}

fn delta_psi(ctx: &Context) -> (bool, String) {
    let d = octahedron();
    let n = d.target().n();
    let mut psis: Vec<Vec<Rat>> = (0..1u32 << n).map(|s| indicator(s, n)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    for _ in 0..20 {
        psis.push((0..n).map(|_| Rat::new(rng.gen_range(-6i64..=6).into(), rng.gen_range(1i64..=4).into())).collect());
    }
    let failures: Vec<String> = psis.par_iter().filter_map(|p| delta_psi_agrees(&d, p).err()).collect();
    summarize(&failures, format!("{} indicator and 20 random functionals (seed {})", 1 << n, ctx.seed))
}

/// Decompositions of matroids on four elements: every relaxation
/// decomposition, the octahedron, and the trivial decompositions of direct
/// sums across `{1,2} ⊔ {3,4}`.
pub fn four_element_decompositions() -> Vec<Decomposition> {
    let all = all_matroids(4);
    let mut out = vec![octahedron()];
    for m in &all {
        let group = PermGroup::automorphisms_of(m).expect("small group");
        for f in relaxable_flats(m) {
            out.push(relaxation_decomposition(m, f, None).expect("relaxable"));
            out.push(relaxation_decomposition(m, f, Some(group.elements())).expect("relaxable"));
        }
        if m.rank_of(0b0011) + m.rank_of(0b1100) == m.rank() {
            out.push(Decomposition::trivial(m));
        }
    }
    let mut seen = std::collections::BTreeSet::new();
    out.retain(|d| seen.insert(d.faces().to_vec()));
    out
}

fn convolution(_: &Context) -> (bool, String) {
    let decomps = four_element_decompositions();
    let names = ["tau", "tau:0", "tau:1", "tau:2", "gros", "whitney:1", "whitney:2"];
    let pairs: Vec<(&str, &str)> = names.iter().flat_map(|a| names.iter().map(move |b| (*a, *b))).collect();
    let failures: Vec<String> = pairs
        .par_iter()
        .flat_map_iter(|(a, b)| {
            let f = Convolve::new(by_name(a).expect("functor"), by_name(b).expect("functor"), 0b0011);
            decomps.iter().filter_map(move |d| exact_on(&f, d).err().map(|e| format!("{:?}: {e}", d.target())))
        })
        .collect();
    summarize(&failures, format!("{} functor pairs × {} decompositions exact", pairs.len(), decomps.len()))
}

fn perm(n: usize, cycles: &[&[usize]]) -> Perm {
    let cs: Vec<Vec<usize>> = cycles.iter().map(|c| c.iter().map(|&e| e - 1).collect()).collect();
    Perm::from_cycles(n, &cs).expect("valid cycles")
}

/// Relaxation triples `(M, F, Γ)` for the virtual identity: each relaxable
/// flat of a small catalog matroid with the trivial group, its stabilizer
/// and the full automorphism group.
pub fn virtual_triples(catalog: &Catalog, max_n: usize, limit: usize) -> Vec<(String, Matroid, Mask, PermGroup)> {
    let mut out = Vec::new();
    for e in catalog.up_to(max_n) {
        let flats = relaxable_flats(&e.matroid);
        if flats.is_empty() {
            continue;
        }
        let aut = PermGroup::automorphisms_of(&e.matroid).expect("small group");
        for f in flats {
            let stab = aut.stabilizer(f);
            for (tag, g) in [("1", PermGroup::trivial(e.matroid.n())), ("stab", stab), ("aut", aut.clone())] {
                out.push((format!("{}@{}/{tag}", e.name, e.matroid.labels_of(f).concat()), e.matroid.clone(), f, g));
            }
        }
        if out.len() >= limit {
            break;
        }
    }
    out
}

fn equivariant_suite(ctx: &Context) -> (bool, String) {
    let mut failures = Vec::new();
    let swap = perm(4, &[&[1, 3], &[2, 4]]);
    let u = Matroid::uniform_numbered(2, 4).expect("matroid");
    let square = words(4, &["13", "14", "23", "24"]);
    if det_character(&u, &swap).ok() != Some(1) || det_character(&square, &swap).ok() != Some(-1) {
        failures.push("determinant signs under (13)(24)".into());
    }
    let d = octahedron();
    let d4 = PermGroup::new(4, vec![perm(4, &[&[1, 2]]), swap.clone()]).expect("group");
    let subgroups = d4.subgroups();
    let fs = named(&["tau", "os", "whitney:1", "whitney:1,2", "chow", "augchow", "kl", "sigma"]);
    let (d, fs) = (&d, &fs);
    let identity_failures: Vec<String> = subgroups
        .par_iter()
        .flat_map_iter(|g| {
            fs.iter().filter_map(move |f| match character_identity_check(d, g, f.as_ref()) {
                Ok(r) if r.holds() => None,
                Ok(r) => Some(format!("{} under a group of order {}: {:?}", f.name(), g.order(), r.failures.first())),
                Err(e) => Some(format!("{}: {e}", f.name())),
            })
        })
        .collect();
    failures.extend(identity_failures);

    let triples = virtual_triples(&ctx.catalog, 6, 30);
    let vfs = named(&["os", "chow", "augchow", "kl", "whitney:1"]);
    let virtual_failures: Vec<String> = triples
        .par_iter()
        .flat_map_iter(|(name, m, f, g)| {
            let rel = Relaxation::new(m, *f, g);
            vfs.iter().filter_map(move |func| match &rel {
                Ok(rel) => match virtual_check(rel, g, func.as_ref()) {
                    Ok(r) if r.holds() => None,
                    Ok(r) => Some(format!("{name} {}: {:?}", func.name(), r.failures.first())),
                    Err(e) => Some(format!("{name} {}: {e}", func.name())),
                },
                Err(e) => Some(format!("{name}: {e}")),
            })
        })
        .collect();
    failures.extend(virtual_failures);
    if triples.len() < 10 {
        failures.push(format!("only {} relaxation triples", triples.len()));
    }

    let kh: Vec<(usize, usize)> = (2..=6).flat_map(|k| (k..=6).map(move |h| (k, h))).collect();
    let kl_failures: Vec<String> = kh
        .par_iter()
        .filter_map(|&(k, h)| match kl_correction_check(k, h, 2) {
            Ok(r) if r.holds() => None,
            Ok(r) => Some(format!("KL correction k={k} h={h}: {:?}", r.failures.first())),
            Err(e) => Some(format!("KL correction k={k} h={h}: {e}")),
        })
        .collect();
    failures.extend(kl_failures);

    let mut relax_checked = 0;
    for (name, m, f, g) in triples.iter().filter(|(_, m, f, _)| m.rank() > 1 && m.loops() == 0 && m.rank_of(*f) + 1 == m.rank()) {
        relax_checked += 1;
        match kl_relax_check(m, *f, g) {
            Ok(r) if r.holds() => {}
            Ok(r) => failures.push(format!("KL relaxation {name}: {:?}", r.failures.first())),
            Err(e) => failures.push(format!("KL relaxation {name}: {e}")),
        }
    }

    let mut exponents = Vec::new();
    for k in 2..=4 {
        for h in k..=5 {
            let ground = GroundSet::numbered(h + 2);
            let (pi, _) = Matroid::pi_lambda(k - 1, k, bits::full(h), &ground).expect("valid parameters");
            let group = PermGroup::symmetric_on(h + 2, bits::full(h)).expect("small group");
            match os_exponent_report(&pi, bits::full(h), &group) {
                Ok(r) => {
                    if r.verified_exponents() != vec![k - 1] {
                        failures.push(format!("OS exponent k={k} h={h}: {r:?}"));
                    }
                    exponents.push(r.verified_exponents());
                }
                Err(e) => failures.push(format!("OS exponent k={k} h={h}: {e}")),
            }
        }
    }
    summarize(
        &failures,
        format!(
            "{} subgroups × {} functors; {} virtual triples; {} (k,h) KL corrections; {} KL relaxations; OS exponent k−1 in {} cases",
            subgroups.len(),
            fs.len(),
            triples.len(),
            kh.len(),
            relax_checked,
            exponents.len()
        ),
    )
}

fn decategorified(ctx: &Context) -> (bool, String) {
    let mut decomps: Vec<(String, Decomposition)> = vec![("octahedron".into(), octahedron())];
    decomps.extend(ctx.catalog.relaxation_decompositions(8));
    let results: Vec<(Vec<String>, bool)> = decomps
        .par_iter()
        .map(|(name, d)| {
            let gen = d.signed_generator();
            let mut out = Vec::new();
            let gs: Vec<WordSum> = gen.iter().map(|(_, m)| g_invariant(m).expect("within cap")).collect();
            let sum = WordSum::signed_sum(gen.iter().zip(&gs).map(|((s, _), g)| (*s, g)));
            if !sum.is_zero() {
                out.push(format!("{name}: G-invariant sum {:?}", sum.terms()));
            }
            let bergman = d.target().n() <= valuator::functors::BERGMAN_CAP;
            if bergman {
                let sigs: Vec<BergmanSignature> = gen.iter().map(|(_, m)| bergman_signature(m).expect("within cap")).collect();
                if !BergmanSignature::signed_sum(gen.iter().zip(&sigs).map(|((s, _), w)| (*s, w))).is_empty() {
                    out.push(format!("{name}: Bergman signature sum is nonzero"));
                }
            }
            (out, bergman)
        })
        .collect();
    let with_bergman = results.iter().filter(|(_, b)| *b).count();
    let mut failures: Vec<String> = results.into_iter().flat_map(|(f, _)| f).collect();
    let g = g_invariant(&Matroid::uniform_numbered(2, 4).expect("matroid")).expect("small");
    if g.terms().len() != 1 || g.total() != 24 {
        failures.push(format!("G(U2,4) = {:?}", g.terms()));
    }
    summarize(
        &failures,
        format!(
            "{} decompositions ({} with Bergman signatures); G(U2,4) = 24·{}",
            decomps.len(),
            with_bergman,
            g.terms().keys().next().map_or("", String::as_str)
        ),
    )
}
