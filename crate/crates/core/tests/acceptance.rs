//! Acceptance suite: one line per criterion, exit status 1 if any fails.

mod common;

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::process::Command;
use std::sync::Arc;
use std::time::Instant;

use quasivar::affine::{self, generate_vccd_closure};
use quasivar::comma::{
    check_comma_morphism, comma_morphisms, epireflect, find_split_structure, left_adjoint, left_adjoint_check,
    left_universal_check, right_adjoint, right_universal_check, split_coequalizer_check, unit_gamma_check,
    verify_reflection_universal, Category, CommaObject, FunctorOracle, HasImages, IdentityFunctor, PointedSets,
    PowerFunctor, SourceObj, TargetObj, Variety,
};
use quasivar::instances::{
    closure_system_to_affine, enumerate_closure_systems, enumerate_topologies, is_sober_finite, space_to_affine,
};
use quasivar::vcat::{
    adjoint_pair_report, all_vcategories, cauchy_completeness, enumerate_vfunctors_to_v, expansion_identity_check,
    initial_structure, representable_pair, roundtrip_iso_check, sample_vcategories, IsoObject,
};
use quasivar::{AffineSet, FinAlgebra, FiniteMap, Quantale, VCategory, VMap};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

const SEED: u64 = 20;
const SAMPLES: usize = 120;
const TIME_BUDGET_SECS: f64 = 60.0;

fn boolean() -> Arc<Quantale> {
    Arc::new(Quantale::boolean())
}

fn luk2() -> Arc<Quantale> {
    Arc::new(Quantale::lukasiewicz(2).unwrap())
}

fn quantale_laws() -> Outcome {
    let mut quantales = vec![Quantale::boolean()];
    quantales.extend((1..=5).map(|n| Quantale::lukasiewicz(n).unwrap()));
    quantales.extend((3..=5).map(Quantale::truncated_addition));
    let mut triples = 0;
    for q in &quantales {
        let report = q.check_laws();
        ensure!(report.is_ok(), "{}: {report}", q.name());
        let n = q.size();
        ensure!(n * n * n <= 343, "{} has {} triples", q.name(), n * n * n);
        for u in 0..n {
            for v in 0..n {
                let h = q.hom(q.elem(u).unwrap(), q.elem(v).unwrap()).0;
                ensure!(h == common::hom(q, u, v), "{}: hom({u},{v}) = {h}", q.name());
                for w in 0..n {
                    let lhs = common::leq(q, common::tensor(q, u, w), v);
                    ensure!(
                        lhs == common::leq(q, w, h),
                        "{}: residuation at ({u},{v},{w})",
                        q.name()
                    );
                    triples += 1;
                }
            }
        }
    }
    Ok(format!(
        "{} quantales lawful, residuation exact on {triples} triples",
        quantales.len()
    ))
}

/// Exhaustive structures on two points and seeded samples on three.
fn suite_two_structures(q: &Arc<Quantale>) -> Result<(Vec<VCategory>, usize), String> {
    let exhaustive = all_vcategories(q, 2).map_err(|e| e.to_string())?;
    let by_library: BTreeSet<Vec<Vec<usize>>> = exhaustive.iter().map(VCategory::rows).collect();
    let by_oracle: BTreeSet<Vec<Vec<usize>>> = common::vcategories(q, 2).into_iter().collect();
    ensure!(
        by_library == by_oracle,
        "{}: valid structures on 2 points differ",
        q.name()
    );
    let exhaustive_count = exhaustive.len();
    let sampled = sample_vcategories(q, 3, SAMPLES, SEED);
    for cat in &sampled {
        ensure!(
            common::is_vcategory(q, 3, &cat.rows()),
            "sample {:?} is not valid",
            cat.rows()
        );
    }
    let mut all = exhaustive;
    all.extend(sampled);
    Ok((all, exhaustive_count))
}

fn isomorphism_roundtrip() -> Outcome {
    let mut lines = Vec::new();
    for q in [boolean(), luk2()] {
        let (cats, exhaustive) = suite_two_structures(&q)?;
        if q.size() == 2 {
            ensure!(exhaustive == 4, "boolean preorders on 2 points: {exhaustive}");
        }
        for cat in &cats {
            let report = roundtrip_iso_check(&q, IsoObject::Category(cat)).map_err(|e| e.to_string())?;
            ensure!(report.is_ok(), "GF fails on {:?}: {report}", cat.rows());
            let functors: Vec<Vec<usize>> = common::vfunctors(&q, &cat.rows()).into_iter().collect();
            let back = common::initial(&q, cat.size(), &functors);
            ensure!(back == cat.rows(), "oracle GF fails on {:?}", cat.rows());
        }
        lines.push(format!(
            "{}: {exhaustive} exhaustive + {} sampled",
            q.name(),
            cats.len() - exhaustive
        ));
    }
    Ok(lines.join("; "))
}

fn fg_direction() -> Outcome {
    let mut lines = Vec::new();
    for q in [boolean(), luk2()] {
        let maps = common::all_vectors(2, q.size());
        let subsets = 1usize << maps.len();
        for mask in 0..subsets {
            let gens: Vec<Vec<usize>> = (0..maps.len())
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| maps[i].clone())
                .collect();
            let vmaps: Vec<VMap> = gens.iter().map(|g| VMap::from_ranks(g)).collect();
            let closure = generate_vccd_closure(&q, 2, &vmaps, affine::DEFAULT_CAP).map_err(|e| e.to_string())?;
            let members: BTreeSet<Vec<usize>> = closure.maps().iter().cloned().collect();
            ensure!(
                members == common::vccd_closure(&q, 2, &gens),
                "closure of {gens:?} differs from the oracle"
            );
            let family = closure.as_vmaps(&q).map_err(|e| e.to_string())?;
            let cat = initial_structure(&q, 2, &family).map_err(|e| e.to_string())?;
            let functors: BTreeSet<Vec<usize>> = enumerate_vfunctors_to_v(&cat).iter().map(VMap::ranks).collect();
            ensure!(functors == members, "FG fails for generators {gens:?}");
        }
        lines.push(format!("{}: {subsets} generator sets", q.name()));
    }
    Ok(lines.join("; "))
}

fn proof_formulas() -> Outcome {
    let mut checked = 0;
    for q in [boolean(), luk2()] {
        let (cats, _) = suite_two_structures(&q)?;
        for cat in &cats {
            let functors = enumerate_vfunctors_to_v(cat);
            let members: BTreeSet<&VMap> = functors.iter().collect();
            let a = cat.rows();
            for x in 0..cat.size() {
                ensure!(members.contains(&cat.row(x)), "row {x} of {a:?} is not a V-functor");
            }
            for psi in &functors {
                let report = expansion_identity_check(cat, psi).map_err(|e| e.to_string())?;
                ensure!(report.is_ok(), "expansion fails for {psi:?} on {a:?}");
                let p = psi.ranks();
                for x in 0..cat.size() {
                    let terms: Vec<usize> = (0..cat.size()).map(|y| common::tensor(&q, p[y], a[y][x])).collect();
                    ensure!(
                        common::join(&q, &terms) == p[x],
                        "oracle expansion fails for {p:?} on {a:?}"
                    );
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} V-functors satisfy the expansion identity"))
}

fn zariski_laws_on(set: &AffineSet) -> Result<usize, String> {
    let n = set.points();
    let subsets: Vec<BTreeSet<usize>> = (0usize..1 << n)
        .map(|m| (0..n).filter(|&x| m & (1 << x) != 0).collect())
        .collect();
    let closures: Vec<BTreeSet<usize>> = subsets
        .iter()
        .map(|m| set.zariski_closure(m).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    for (m, cl) in subsets.iter().zip(&closures) {
        ensure!(
            *cl == common::zariski(set, m),
            "closure of {m:?} differs from the oracle"
        );
        ensure!(m.is_subset(cl), "not extensive at {m:?}");
        ensure!(set.zariski_closure(cl).unwrap() == *cl, "not idempotent at {m:?}");
        for (n2, cl2) in subsets.iter().zip(&closures) {
            if m.is_subset(n2) {
                ensure!(cl.is_subset(cl2), "not monotone at {m:?} ⊆ {n2:?}");
            }
        }
    }
    Ok(subsets.len())
}

fn zariski_closure_laws() -> Outcome {
    let mut sets = 0;
    let mut subsets = 0;
    for n in 0..=3 {
        for space in enumerate_topologies(n).map_err(|e| e.to_string())? {
            subsets += zariski_laws_on(&space_to_affine(&space).map_err(|e| e.to_string())?)?;
            sets += 1;
        }
        for system in enumerate_closure_systems(n).map_err(|e| e.to_string())? {
            subsets += zariski_laws_on(&closure_system_to_affine(&system).map_err(|e| e.to_string())?)?;
            sets += 1;
        }
    }
    Ok(format!("{sets} affine sets, {subsets} subsets"))
}

fn topology_census() -> Outcome {
    let spaces = enumerate_topologies(3).map_err(|e| e.to_string())?;
    let listed: BTreeSet<Vec<Vec<usize>>> = spaces
        .iter()
        .map(|s| {
            let mut opens: Vec<Vec<usize>> = s.opens().iter().map(|u| u.iter().copied().collect()).collect();
            opens.sort();
            opens
        })
        .collect();
    ensure!(listed.len() == spaces.len(), "duplicate topologies");
    ensure!(listed == common::topologies(3), "census differs from the oracle");
    ensure!(spaces.len() == 29, "{} topologies", spaces.len());
    let mut t0 = 0;
    for space in &spaces {
        let report = is_sober_finite(space);
        ensure!(report.agrees, "T0 and generic points disagree on {:?}", space.opens());
        ensure!(
            report.sober == common::is_t0(space),
            "T0 oracle disagrees on {:?}",
            space.opens()
        );
        t0 += usize::from(report.sober);
    }
    ensure!(t0 == 19, "{t0} T0 topologies");
    Ok(format!("{} topologies, {t0} T0, sobriety paths agree", spaces.len()))
}

/// Comma objects `g: A → I B` for every listed `(A, B)` and every morphism.
fn corpus<I: FunctorOracle>(
    oracle: &I,
    objects: &[(TargetObj<I>, SourceObj<I>)],
) -> Vec<CommaObject<TargetObj<I>, SourceObj<I>>> {
    let mut out = Vec::new();
    for (a, b) in objects {
        let ib = oracle.on_object(b).unwrap();
        for g in oracle.target().morphisms(a, &ib).unwrap() {
            out.push(CommaObject {
                a: a.clone(),
                b: b.clone(),
                g,
            });
        }
    }
    out
}

/// Epireflection checks over one oracle; returns (objects, morphisms).
fn reflect_corpus<I>(
    oracle: &I,
    objects: &[(TargetObj<I>, SourceObj<I>)],
    targets: &[(TargetObj<I>, SourceObj<I>)],
) -> Result<(usize, usize), String>
where
    I: FunctorOracle,
    I::Target: HasImages,
{
    let a_cat = oracle.target();
    let sources = corpus(oracle, objects);
    let monic: Vec<_> = corpus(oracle, targets)
        .into_iter()
        .filter(|t| t.g.is_injective())
        .collect();
    let mut morphisms = 0;
    for g in &sources {
        let r = epireflect(oracle, g).map_err(|e| e.to_string())?;
        ensure!(
            r.unit.f.is_surjective() && r.reflected.g.is_injective(),
            "bad factorization of {:?}",
            g.g
        );
        ensure!(
            check_comma_morphism(oracle, g, &r.reflected, &r.unit).unwrap().is_ok(),
            "unit of {:?} is not a comma morphism",
            g.g
        );
        let again = epireflect(oracle, &r.reflected).map_err(|e| e.to_string())?;
        ensure!(again.reflected == r.reflected, "epireflect not idempotent on {:?}", g.g);
        for t in &monic {
            let report = verify_reflection_universal(oracle, g, t).map_err(|e| e.to_string())?;
            ensure!(
                report.is_ok(),
                "universal property fails for {:?} → {:?}: {report}",
                g.g,
                t.g
            );
            let ds: Vec<FiniteMap> = FiniteMap::all(r.reflected.g.source(), t.g.source())
                .filter(|d| a_cat.is_morphism(&r.reflected.a, &t.a, d))
                .collect();
            for m in comma_morphisms(oracle, g, t).map_err(|e| e.to_string())? {
                let ih = oracle.on_morphism(&g.b, &t.b, &m.h).unwrap();
                let lower = a_cat.compose(&r.reflected.g, &ih);
                let count = ds
                    .iter()
                    .filter(|d| a_cat.compose(d, &t.g) == lower && a_cat.compose(&r.unit.f, d) == m.f)
                    .count();
                ensure!(count == 1, "{count} mediating maps for {:?} → {:?}", g.g, t.g);
                morphisms += 1;
            }
        }
    }
    Ok((sources.len(), morphisms))
}

fn epireflection() -> Outcome {
    let pointed = IdentityFunctor(PointedSets);
    let pointed_objects: Vec<(usize, usize)> = (1..=4).flat_map(|a| (1..=3).map(move |b| (a, b))).collect();
    let pointed_targets: Vec<(usize, usize)> = (1..=3).flat_map(|a| (1..=3).map(move |b| (a, b))).collect();
    let (p_objects, p_morphisms) = reflect_corpus(&pointed, &pointed_objects, &pointed_targets)?;

    let lattices = IdentityFunctor(Variety::bounded_distributive_lattices());
    let sources = [
        FinAlgebra::chain(2),
        FinAlgebra::chain(3),
        FinAlgebra::chain(4),
        FinAlgebra::powerset_lattice(2),
        FinAlgebra::powerset_lattice(3),
    ];
    let codomains = [
        FinAlgebra::chain(2),
        FinAlgebra::chain(3),
        FinAlgebra::powerset_lattice(2),
    ];
    let lattice_objects: Vec<(FinAlgebra, FinAlgebra)> = sources
        .iter()
        .flat_map(|a| codomains.iter().map(move |b| (a.clone(), b.clone())))
        .collect();
    let (l_objects, l_morphisms) = reflect_corpus(&lattices, &lattice_objects, &lattice_objects)?;

    let example = CommaObject {
        a: FinAlgebra::powerset_lattice(2),
        b: FinAlgebra::two_element_frame(),
        g: FiniteMap::new(2, vec![0, 0, 1, 1]).unwrap(),
    };
    let r = epireflect(&lattices, &example).map_err(|e| e.to_string())?;
    ensure!(
        r.reflected.a.size() == 2 && r.unit.f.image() == [0, 0, 1, 1],
        "Boolean-algebra example reflected to {:?}",
        r.reflected
    );

    let power = PowerFunctor::new(FinAlgebra::two_element_frame());
    let power_objects: Vec<(FinAlgebra, usize)> = [
        FinAlgebra::two_element_frame(),
        FinAlgebra::chain(3),
        FinAlgebra::powerset_lattice(2),
        FinAlgebra::powerset_lattice(3),
    ]
    .iter()
    .flat_map(|a| (1..=2).map(move |b| (a.clone(), b)))
    .collect();
    let (w_objects, w_morphisms) = reflect_corpus(&power, &power_objects, &power_objects)?;

    Ok(format!(
        "{} comma objects, {} comma morphisms with a unique mediating map",
        p_objects + l_objects + w_objects,
        p_morphisms + l_morphisms + w_morphisms
    ))
}

fn adjoint_constructions() -> Outcome {
    let oracle = IdentityFunctor(PointedSets);
    let shapes: Vec<(usize, usize)> = (1..=3).flat_map(|a| (1..=2).map(move |b| (a, b))).collect();
    let objects = corpus(&oracle, &shapes);
    let mut universal = 0;
    for g in &objects {
        let gamma = unit_gamma_check(&oracle, g).map_err(|e| e.to_string())?;
        ensure!(gamma.is_ok(), "γ fails at {:?}: {gamma}", g);
        let rho = left_adjoint_check(&oracle, g).map_err(|e| e.to_string())?;
        ensure!(rho.is_ok(), "ρ fails at {:?}: {rho}", g);
        let (r, _) = right_adjoint(&oracle, &g.a, &g.b).map_err(|e| e.to_string())?;
        ensure!(r.a == g.a * g.b, "R({}, {}) has {} points", g.a, g.b, r.a);
        let (l, _) = left_adjoint(&oracle, &g.a, &g.b).map_err(|e| e.to_string())?;
        ensure!(l.b == g.a + g.b - 1, "L({}, {}) has a {}-point wedge", g.a, g.b, l.b);
        for &(a2, b2) in &shapes {
            let report = right_universal_check(&oracle, g, &a2, &b2).map_err(|e| e.to_string())?;
            ensure!(report.is_ok(), "γ not universal at {:?} against ({a2}, {b2})", g);
            universal += report.checked;
        }
        for target in &objects {
            let report = left_universal_check(&oracle, &g.a, &g.b, target).map_err(|e| e.to_string())?;
            ensure!(
                report.is_ok(),
                "ρ not universal at ({}, {}) against {:?}",
                g.a,
                g.b,
                target
            );
            universal += report.checked;
        }
    }
    Ok(format!(
        "{} pointed-set objects, {universal} universal-property instances",
        objects.len()
    ))
}

fn split_pairs() -> Outcome {
    let mut pairs = 0;
    let mut split = 0;
    for x in 0..=3 {
        for y in 0..=3 {
            let maps: Vec<FiniteMap> = FiniteMap::all(x, y).collect();
            for f in &maps {
                for g in &maps {
                    pairs += 1;
                    let found = find_split_structure(f, g).map_err(|e| e.to_string())?;
                    ensure!(
                        found.is_some() == common::splits(f, g, y + 1),
                        "search and oracle disagree on {f:?}, {g:?}"
                    );
                    if let Some(w) = found {
                        split += 1;
                        let report = split_coequalizer_check(&w, f, g, 2).map_err(|e| e.to_string())?;
                        ensure!(report.is_ok(), "witness for {f:?}, {g:?} fails: {report}");
                    }
                }
            }
        }
    }
    Ok(format!(
        "{pairs} pairs, {split} split, all witnesses absolute under 2^(-)"
    ))
}

fn cauchy_completeness_suite() -> Outcome {
    let q = boolean();
    let mut structures = 0;
    for n in 1..=3 {
        for cat in all_vcategories(&q, n).map_err(|e| e.to_string())? {
            let report = cauchy_completeness(&cat);
            let pairs = common::adjoint_pairs(&q, &cat.rows());
            ensure!(
                report.adjoint_pairs == pairs.len(),
                "pair counts differ on {:?}",
                cat.rows()
            );
            ensure!(
                pairs.iter().all(|p| common::representable(&cat.rows(), p)),
                "oracle finds a non-representable pair on {:?}",
                cat.rows()
            );
            ensure!(report.complete, "{:?} reported incomplete", cat.rows());
            structures += 1;
        }
    }
    let q = luk2();
    let mut representables = 0;
    for n in 1..=2 {
        for cat in all_vcategories(&q, n).map_err(|e| e.to_string())? {
            let pairs = common::adjoint_pairs(&q, &cat.rows());
            for x in 0..n {
                let (phi, psi) = representable_pair(&cat, x);
                let report = adjoint_pair_report(&cat, &phi, &psi).map_err(|e| e.to_string())?;
                ensure!(
                    report.is_ok(),
                    "representable pair at {x} of {:?}: {report}",
                    cat.rows()
                );
                ensure!(
                    pairs.contains(&(phi.ranks(), psi.ranks())),
                    "oracle rejects representable pair"
                );
                representables += 1;
            }
        }
    }
    Ok(format!(
        "{structures} boolean structures complete; {representables} Łukasiewicz representable pairs adjoint"
    ))
}

fn strip_wall_times(text: &str) -> String {
    text.lines()
        .filter(|line| !line.trim_start().starts_with("\"wall_time_ms\""))
        .map(|line| line.trim_end_matches(','))
        .collect::<Vec<_>>()
        .join("\n")
}

fn run_cli(args: &[&str]) -> Result<(i32, String), String> {
    let output = Command::new(env!("CARGO_BIN_EXE_quasivar"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    let code = output.status.code().unwrap_or(-1);
    Ok((code, String::from_utf8(output.stdout).map_err(|e| e.to_string())?))
}

fn cli_determinism() -> Outcome {
    let file = concat!(env!("CARGO_MANIFEST_DIR"), "/instances/acceptance.json");
    let (code1, first) = run_cli(&["check", file])?;
    let (code2, second) = run_cli(&["check", file])?;
    ensure!(
        code1 == 0 && code2 == 0,
        "acceptance file exits with {code1} and {code2}"
    );
    ensure!(
        strip_wall_times(&first) == strip_wall_times(&second),
        "acceptance reports differ between runs"
    );
    let report: serde_json::Value = serde_json::from_str(&first).map_err(|e| e.to_string())?;
    let checks = report["checks"].as_array().map(Vec::len).unwrap_or(0);

    let sampled = ["enumerate", "roundtrip-iso", "--max-size", "3", "--seed", "9"];
    let (code3, third) = run_cli(&sampled)?;
    let (code4, fourth) = run_cli(&sampled)?;
    ensure!(code3 == 0 && code4 == 0, "sampled suite exits with {code3} and {code4}");
    ensure!(
        strip_wall_times(&third) == strip_wall_times(&fourth),
        "seeded suite differs between runs"
    );
    ensure!(
        sample_vcategories(&luk2(), 3, 50, SEED) == sample_vcategories(&luk2(), 3, 50, SEED),
        "library sampling is not reproducible"
    );
    Ok(format!("{checks} checks, byte-identical reports modulo wall time"))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("quantale laws", quantale_laws),
        ("isomorphism roundtrip GF", isomorphism_roundtrip),
        ("FG direction", fg_direction),
        ("proof-formula identities", proof_formulas),
        ("Zariski closure laws", zariski_closure_laws),
        ("topology census", topology_census),
        ("epireflection", epireflection),
        ("adjoint constructions", adjoint_constructions),
        ("split pairs", split_pairs),
        ("Cauchy completeness", cauchy_completeness_suite),
        ("CLI determinism", cli_determinism),
    ];
    let started = Instant::now();
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("criterion {:>2} PASS  {name}: {msg} [{secs:.2}s]", i + 1),
            Err(msg) => {
                failures += 1;
                println!("criterion {:>2} FAIL  {name}: {msg} [{secs:.2}s]", i + 1);
            }
        }
    }
    let total = started.elapsed().as_secs_f64();
    println!(
        "acceptance: {} of {} criteria pass in {total:.2}s",
        criteria.len() - failures,
        criteria.len()
    );
    if total > TIME_BUDGET_SECS {
        println!("acceptance: over the {TIME_BUDGET_SECS:.0}s budget");
        failures += 1;
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
