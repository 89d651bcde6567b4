//! Executes the checks of an instance file and assembles the report.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::affine::{self, AffineSet};
use crate::algebra::FinAlgebra;
use crate::comma::{
    check_comma_morphism, check_functoriality, epireflect, find_split_structure, left_adjoint_check,
    left_universal_check, right_universal_check, split_coequalizer_check, unit_gamma_check,
    verify_reflection_universal, CommaObject, FunctorOracle,
};
use crate::error::{Error, Result};
use crate::finmap::FiniteMap;
use crate::instances::{
    affine_to_closure_system, affine_to_space, closure_system_to_affine, enumerate_closure_systems,
    enumerate_topologies, is_sober_finite, space_to_affine,
};
use crate::quantale::Quantale;
use crate::report::{Law, LawReport, Violation};
use crate::vcat::{
    adjoint_pair_report, all_vcategories, cauchy_completeness, check_vfunctor, enumerate_vfunctors_to_v,
    expansion_identity_check, initial_structure, representable_pair, roundtrip_iso_check, sample_vcategories,
    IsoObject, VCategory, VMap,
};

use super::load::{lookup, mask_to_set, to_vmaps, Comma, Loaded, Oracle};
use super::schema::{CheckKind, CheckSpec, InstanceFile};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub index: usize,
    pub op: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub status: Status,
    pub expected: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub holds: Option<bool>,
    pub checked: u64,
    pub violations: Vec<Violation>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub detail: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// Input problems discovered while running, e.g. a dangling reference.
    #[serde(skip)]
    pub input_error: bool,
    pub wall_time_ms: f64,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub checks: Vec<CheckResult>,
    pub summary: Summary,
    pub exit_code: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub wall_time_ms: f64,
}

impl Report {
    /// The report for a file that could not be loaded.
    pub fn malformed(err: &Error, started: Instant) -> Self {
        Self {
            checks: Vec::new(),
            summary: Summary::default(),
            exit_code: 2,
            error: Some(err.to_string()),
            wall_time_ms: elapsed_ms(started),
        }
    }
}

fn elapsed_ms(started: Instant) -> f64 {
    started.elapsed().as_secs_f64() * 1e3
}

/// What a single check found.
struct Outcome {
    report: LawReport,
    detail: Value,
}

impl Outcome {
    fn of(report: LawReport) -> Self {
        Self {
            report,
            detail: Value::Null,
        }
    }

    fn with(report: LawReport, detail: Value) -> Self {
        Self { report, detail }
    }
}

/// Loads and runs every check. Checks may run concurrently; results keep
/// the order of the checks list.
pub fn run_instance(file: &InstanceFile) -> Report {
    let started = Instant::now();
    let loaded = match Loaded::from_file(file) {
        Ok(loaded) => loaded,
        Err(err) => return Report::malformed(&err, started),
    };
    let checks: Vec<CheckResult> = file
        .checks
        .par_iter()
        .enumerate()
        .map(|(index, spec)| run_check(&loaded, index, spec))
        .collect();
    let mut summary = Summary {
        total: checks.len(),
        ..Summary::default()
    };
    for c in &checks {
        match c.status {
            Status::Pass => summary.passed += 1,
            Status::Fail => summary.failed += 1,
            Status::Skip => summary.skipped += 1,
        }
    }
    let exit_code = if checks.iter().any(|c| c.input_error) {
        2
    } else if summary.failed > 0 {
        1
    } else {
        0
    };
    Report {
        checks,
        summary,
        exit_code,
        error: None,
        wall_time_ms: elapsed_ms(started),
    }
}

fn op_name(kind: &CheckKind) -> String {
    serde_json::to_value(kind)
        .ok()
        .and_then(|v| v.get("op").and_then(Value::as_str).map(str::to_string))
        .unwrap_or_default()
}

fn run_check(loaded: &Loaded, index: usize, spec: &CheckSpec) -> CheckResult {
    let started = Instant::now();
    let expected = spec.expect.unwrap_or(true);
    let mut result = CheckResult {
        index,
        op: op_name(&spec.kind),
        name: spec.name.clone(),
        status: Status::Fail,
        expected,
        holds: None,
        checked: 0,
        violations: Vec::new(),
        detail: Value::Null,
        error: None,
        input_error: false,
        wall_time_ms: 0.0,
    };
    match execute(loaded, &spec.kind) {
        Ok(outcome) => {
            let holds = outcome.report.is_ok();
            result.holds = Some(holds);
            result.checked = outcome.report.checked;
            result.violations = outcome.report.violations;
            result.detail = outcome.detail;
            result.status = if holds == expected { Status::Pass } else { Status::Fail };
        }
        Err(Error::UnsupportedInstance(msg)) => {
            result.status = Status::Skip;
            result.error = Some(msg);
        }
        Err(err) => {
            result.input_error = matches!(
                err,
                Error::MalformedInput(_) | Error::InvalidElement { .. } | Error::IncompatibleStructures(_)
            );
            result.error = Some(err.to_string());
        }
    }
    result.wall_time_ms = elapsed_ms(started);
    result
}

/// Records `holds` under [`Law::ExpectedValue`] with `[expected, actual]`.
fn expect_value(report: &mut LawReport, expected: Option<usize>, actual: usize) {
    if let Some(e) = expected {
        report.expect(e == actual, Law::ExpectedValue, &[e, actual]);
    }
}

/// Appends `sub`'s violations with `prefix` prepended to each witness.
fn merge_indexed(report: &mut LawReport, sub: LawReport, prefix: usize) {
    report.checked += sub.checked;
    for mut v in sub.violations {
        v.witness.insert(0, prefix);
        report.violations.push(v);
    }
}

fn ranks(maps: &[VMap]) -> Vec<Vec<usize>> {
    maps.iter().map(VMap::ranks).collect()
}

fn execute(loaded: &Loaded, kind: &CheckKind) -> Result<Outcome> {
    match kind {
        CheckKind::QuantaleLaws { quantale } => {
            let table = &lookup(&loaded.quantales, quantale, "quantale")?.table;
            Ok(Outcome::with(table.check_laws(), json!({ "size": table.size })))
        }
        CheckKind::Hom { quantale, u, v, equals } => {
            let q = loaded.quantale(quantale)?;
            let value = q.try_hom(q.elem(*u)?, q.elem(*v)?)?;
            let mut report = LawReport::new();
            expect_value(&mut report, Some(*equals), value.0);
            Ok(Outcome::with(report, json!({ "value": value.0 })))
        }
        CheckKind::VcategoryLaws { vcategory } => Ok(Outcome::of(
            lookup(&loaded.vcategories, vcategory, "V-category")?.check_laws(),
        )),
        CheckKind::Vfunctor { map, source, target } => {
            let f = loaded.map(map)?;
            let x = lookup(&loaded.vcategories, source, "V-category")?;
            let y = lookup(&loaded.vcategories, target, "V-category")?;
            Ok(Outcome::of(check_vfunctor(&f, x, y)?))
        }
        CheckKind::InitialStructure {
            quantale,
            points,
            maps,
            equals,
        } => {
            let q = loaded.quantale(quantale)?;
            let family = to_vmaps(&q, *points, maps)?;
            let cat = initial_structure(&q, *points, &family)?;
            let mut report = cat.check_laws();
            for (i, phi) in family.iter().enumerate() {
                report.expect(cat.is_vfunctor_to_v(phi), Law::FunctorInequality, &[i]);
            }
            if let Some(expected) = equals {
                for (x, row) in expected.iter().enumerate() {
                    for (y, &value) in row.iter().enumerate() {
                        let actual = if x < *points && y < *points {
                            cat.a(x, y).0
                        } else {
                            usize::MAX
                        };
                        report.expect(actual == value, Law::ExpectedValue, &[x, y]);
                    }
                }
            }
            Ok(Outcome::with(report, json!({ "matrix": cat.rows() })))
        }
        CheckKind::VfunctorsToV { vcategory, count } => {
            let cat = lookup(&loaded.vcategories, vcategory, "V-category")?;
            let functors = enumerate_vfunctors_to_v(cat);
            let mut report = proof_formulas(cat, &functors)?;
            expect_value(&mut report, *count, functors.len());
            Ok(Outcome::with(
                report,
                json!({ "count": functors.len(), "functors": ranks(&functors) }),
            ))
        }
        CheckKind::ExpansionIdentity { vcategory, psi } => {
            let cat = lookup(&loaded.vcategories, vcategory, "V-category")?;
            match psi {
                Some(row) => {
                    let psi = to_vmaps(cat.quantale(), cat.size(), std::slice::from_ref(row))?.remove(0);
                    Ok(Outcome::of(expansion_identity_check(cat, &psi)?))
                }
                None => {
                    let mut report = LawReport::new();
                    for (i, psi) in enumerate_vfunctors_to_v(cat).iter().enumerate() {
                        merge_indexed(&mut report, expansion_identity_check(cat, psi)?, i);
                    }
                    Ok(Outcome::of(report))
                }
            }
        }
        CheckKind::Separated { vcategory, affine_set } => {
            let witness = match (vcategory, affine_set) {
                (Some(name), None) => lookup(&loaded.vcategories, name, "V-category")?.separation_witness(),
                (None, Some(name)) => lookup(&loaded.affine_sets, name, "affine set")?.separation_witness(),
                _ => {
                    return Err(Error::MalformedInput(
                        "`separated` takes exactly one of `vcategory`, `affine_set`".into(),
                    ))
                }
            };
            let mut report = LawReport::new();
            if let Some((x, y)) = witness {
                report.violate(Law::Precondition, &[x, y]);
            } else {
                report.checked += 1;
            }
            Ok(Outcome::with(report, json!({ "witness": witness })))
        }
        CheckKind::CauchyComplete { vcategory } => {
            let cat = lookup(&loaded.vcategories, vcategory, "V-category")?;
            let (report, detail) = cauchy_outcome(cat)?;
            Ok(Outcome::with(report, detail))
        }
        CheckKind::RoundtripIso {
            quantale,
            vcategory,
            affine_set,
        } => {
            let q = loaded.quantale(quantale)?;
            let report = match (vcategory, affine_set) {
                (Some(name), None) => roundtrip_iso_check(
                    &q,
                    IsoObject::Category(lookup(&loaded.vcategories, name, "V-category")?),
                )?,
                (None, Some(name)) => {
                    roundtrip_iso_check(&q, IsoObject::Affine(lookup(&loaded.affine_sets, name, "affine set")?))?
                }
                _ => {
                    return Err(Error::MalformedInput(
                        "`roundtrip_iso` takes exactly one of `vcategory`, `affine_set`".into(),
                    ))
                }
            };
            Ok(Outcome::of(report))
        }
        CheckKind::RoundtripCensus {
            quantale,
            points,
            samples,
            seed,
            count,
        } => {
            let q = loaded.quantale(quantale)?;
            roundtrip_census(&q, *points, *samples, seed.unwrap_or(0), *count)
        }
        CheckKind::VccdCensus { quantale, points } => vccd_census(&loaded.quantale(quantale)?, *points),
        CheckKind::CauchyCensus { quantale, points } => {
            let q = loaded.quantale(quantale)?;
            let cats = all_vcategories(&q, *points)?;
            let outcomes: Vec<(LawReport, Value)> = cats.par_iter().map(cauchy_outcome).collect::<Result<_>>()?;
            let mut report = LawReport::new();
            let mut incomplete = 0;
            for (i, (sub, _)) in outcomes.into_iter().enumerate() {
                if !sub.is_ok() {
                    incomplete += 1;
                }
                merge_indexed(&mut report, sub, i);
            }
            Ok(Outcome::with(
                report,
                json!({ "structures": cats.len(), "incomplete": incomplete }),
            ))
        }
        CheckKind::AffineMorphism { map, source, target } => {
            let f = loaded.map(map)?;
            let x = lookup(&loaded.affine_sets, source, "affine set")?;
            let y = lookup(&loaded.affine_sets, target, "affine set")?;
            Ok(Outcome::of(affine::check_affine_morphism(&f, x, y)?))
        }
        CheckKind::ZariskiClosure {
            affine_set,
            subset,
            equals,
        } => {
            let set = lookup(&loaded.affine_sets, affine_set, "affine set")?;
            let m: BTreeSet<usize> = subset.iter().copied().collect();
            let closure = set.zariski_closure(&m)?;
            let mut report = LawReport::new();
            report.expect(m.is_subset(&closure), Law::ClosureExtensive, &[]);
            report.expect(set.zariski_closure(&closure)? == closure, Law::ClosureIdempotent, &[]);
            if let Some(expected) = equals {
                let expected: BTreeSet<usize> = expected.iter().copied().collect();
                report.expect(expected == closure, Law::ExpectedValue, &[]);
            }
            Ok(Outcome::with(report, json!({ "closure": closure })))
        }
        CheckKind::AffineCommaRoundtrip { affine_set } => {
            let set = lookup(&loaded.affine_sets, affine_set, "affine set")?;
            let object = set.to_comma(affine::DEFAULT_CAP)?;
            let mut report = LawReport::new();
            report.expect(object.g.is_injective(), Law::MonoInjective, &[]);
            let back = AffineSet::from_comma(set.ambient().clone(), &object)?;
            report.expect(back == *set, Law::TranscriptionRoundtrip, &[]);
            Ok(Outcome::with(
                report,
                json!({ "subalgebra_size": object.a.size(), "sort": object.b }),
            ))
        }
        CheckKind::SpaceRoundtrip { space } => {
            let space = lookup(&loaded.spaces, space, "space")?;
            let set = space_to_affine(space)?;
            let mut report = set.closure_report();
            report.expect(affine_to_space(&set)? == *space, Law::TranscriptionRoundtrip, &[]);
            Ok(Outcome::with(report, json!({ "maps": set.maps() })))
        }
        CheckKind::Sober { space } => {
            let space = lookup(&loaded.spaces, space, "space")?;
            let sobriety = is_sober_finite(space);
            let mut report = LawReport::new();
            if let Some((x, y)) = sobriety.t0_witness {
                report.violate(Law::Sobriety, &[x, y]);
            }
            report.expect(sobriety.agrees, Law::Precondition, &[]);
            Ok(Outcome::with(
                report,
                serde_json::to_value(&sobriety).unwrap_or_default(),
            ))
        }
        CheckKind::ClosureSystemRoundtrip { closure_system } => {
            let system = lookup(&loaded.closure_systems, closure_system, "closure system")?;
            let set = closure_system_to_affine(system)?;
            let mut report = set.closure_report();
            report.expect(
                affine_to_closure_system(&set)? == *system,
                Law::TranscriptionRoundtrip,
                &[],
            );
            Ok(Outcome::with(report, json!({ "maps": set.maps() })))
        }
        CheckKind::TopologyCensus { points, count, t0 } => topology_census(*points, *count, *t0),
        CheckKind::ClosureSystemCensus { points, count } => {
            let systems = enumerate_closure_systems(*points)?;
            let mut report = LawReport::new();
            for (i, system) in systems.iter().enumerate() {
                let set = closure_system_to_affine(system)?;
                let mut sub = set.closure_report();
                sub.expect(
                    affine_to_closure_system(&set)? == *system,
                    Law::TranscriptionRoundtrip,
                    &[],
                );
                sub.merge(zariski_laws(&set)?);
                merge_indexed(&mut report, sub, i);
            }
            expect_value(&mut report, *count, systems.len());
            Ok(Outcome::with(report, json!({ "count": systems.len() })))
        }
        CheckKind::UnitGamma { comma_object } => {
            let comma = lookup(&loaded.comma_objects, comma_object, "comma object")?;
            let report = match comma {
                Comma::Pointed(o, g) => gamma_report(o.as_ref(), g)?,
                Comma::Lattices(o, g) => gamma_report(o.as_ref(), g)?,
                Comma::Power(o, g) => gamma_report(o.as_ref(), g)?,
            };
            Ok(Outcome::of(report))
        }
        CheckKind::LeftAdjoint { comma_object } => {
            let comma = lookup(&loaded.comma_objects, comma_object, "comma object")?;
            let report = match comma {
                Comma::Pointed(o, g) => {
                    let mut r = left_adjoint_check(o.as_ref(), g)?;
                    r.merge(left_universal_check(o.as_ref(), &g.a, &g.b, g)?);
                    r
                }
                Comma::Power(o, g) => {
                    let mut r = left_adjoint_check(o.as_ref(), g)?;
                    r.merge(left_universal_check(o.as_ref(), &g.a, &g.b, g)?);
                    r
                }
                Comma::Lattices(..) => {
                    return Err(Error::UnsupportedInstance(
                        "no coproduct oracle for distributive lattices".into(),
                    ))
                }
            };
            Ok(Outcome::of(report))
        }
        CheckKind::Epireflect {
            comma_object,
            reflected_size,
        } => {
            let comma = lookup(&loaded.comma_objects, comma_object, "comma object")?;
            let (mut report, size, epi, mono) = match comma {
                Comma::Pointed(o, g) => reflection_report(o.as_ref(), g, |a| *a)?,
                Comma::Lattices(o, g) => reflection_report(o.as_ref(), g, FinAlgebra::size)?,
                Comma::Power(o, g) => reflection_report(o.as_ref(), g, FinAlgebra::size)?,
            };
            expect_value(&mut report, *reflected_size, size);
            Ok(Outcome::with(
                report,
                json!({ "reflected_size": size, "epi": epi.image(), "mono": mono.image() }),
            ))
        }
        CheckKind::ReflectionUniversal { comma_object, target } => {
            let source = lookup(&loaded.comma_objects, comma_object, "comma object")?;
            let target = lookup(&loaded.comma_objects, target, "comma object")?;
            let report = match (source, target) {
                (Comma::Pointed(o, g), Comma::Pointed(_, t)) => verify_reflection_universal(o.as_ref(), g, t)?,
                (Comma::Lattices(o, g), Comma::Lattices(_, t)) => verify_reflection_universal(o.as_ref(), g, t)?,
                (Comma::Power(o, g), Comma::Power(p, t)) if o.algebra() == p.algebra() => {
                    verify_reflection_universal(o.as_ref(), g, t)?
                }
                _ => {
                    return Err(Error::IncompatibleStructures(
                        "comma objects over different oracles".into(),
                    ))
                }
            };
            Ok(Outcome::of(report))
        }
        CheckKind::Functoriality { oracle, objects } => {
            let report = match lookup(&loaded.oracles, oracle, "oracle")? {
                Oracle::Pointed(o) => {
                    let xs = objects.iter().map(|x| loaded.size_ref(x)).collect::<Result<Vec<_>>>()?;
                    if xs.contains(&0) {
                        return Err(Error::MalformedInput("pointed sets are nonempty".into()));
                    }
                    check_functoriality(o.as_ref(), &xs)?
                }
                Oracle::Lattices(o) => {
                    let xs = objects
                        .iter()
                        .map(|x| loaded.algebra_ref(x))
                        .collect::<Result<Vec<_>>>()?;
                    check_functoriality(o.as_ref(), &xs)?
                }
                Oracle::Power(o) => {
                    let xs = objects.iter().map(|x| loaded.size_ref(x)).collect::<Result<Vec<_>>>()?;
                    check_functoriality(o.as_ref(), &xs)?
                }
            };
            Ok(Outcome::of(report))
        }
        CheckKind::SplitPair { f, g, power } => {
            let (f, g) = (loaded.map(f)?, loaded.map(g)?);
            match find_split_structure(&f, &g)? {
                Some(w) => {
                    let report = split_coequalizer_check(&w, &f, &g, power.unwrap_or(2))?;
                    Ok(Outcome::with(
                        report,
                        json!({ "z": w.z, "h": w.h.image(), "k": w.k.image(), "s": w.s.image() }),
                    ))
                }
                None => {
                    let mut report = LawReport::new();
                    report.violate_with(Law::SplitSection, &[], "no split structure exists");
                    Ok(Outcome::with(report, json!({ "z": null })))
                }
            }
        }
    }
}

/// Rows `a(x, -)` are V-functors, and every V-functor satisfies the
/// expansion identity.
fn proof_formulas(cat: &VCategory, functors: &[VMap]) -> Result<LawReport> {
    let members: BTreeSet<&VMap> = functors.iter().collect();
    let mut report = LawReport::new();
    for x in 0..cat.size() {
        report.expect(members.contains(&cat.row(x)), Law::CovariantModule, &[x]);
    }
    for (i, psi) in functors.iter().enumerate() {
        merge_indexed(&mut report, expansion_identity_check(cat, psi)?, i);
    }
    Ok(report)
}

fn cauchy_outcome(cat: &VCategory) -> Result<(LawReport, Value)> {
    let cauchy = cauchy_completeness(cat);
    let mut report = LawReport::new();
    for x in 0..cat.size() {
        let (phi, psi) = representable_pair(cat, x);
        merge_indexed(&mut report, adjoint_pair_report(cat, &phi, &psi)?, x);
    }
    for (i, (phi, psi)) in cauchy.non_representable.iter().enumerate() {
        report.violate_with(
            Law::AdjointUnit,
            &[i],
            format!("adjoint pair ({phi:?}, {psi:?}) is not representable"),
        );
    }
    let detail = json!({
        "adjoint_pairs": cauchy.adjoint_pairs,
        "non_representable": cauchy
            .non_representable
            .iter()
            .map(|(phi, psi)| (phi.ranks(), psi.ranks()))
            .collect::<Vec<_>>(),
    });
    Ok((report, detail))
}

fn roundtrip_census(
    q: &Arc<Quantale>,
    points: usize,
    samples: Option<usize>,
    seed: u64,
    count: Option<usize>,
) -> Result<Outcome> {
    let cats = match samples {
        Some(n) => sample_vcategories(q, points, n, seed),
        None => all_vcategories(q, points)?,
    };
    let reports: Vec<LawReport> = cats
        .par_iter()
        .map(|cat| {
            let mut report = roundtrip_iso_check(q, IsoObject::Category(cat))?;
            report.merge(proof_formulas(cat, &enumerate_vfunctors_to_v(cat))?);
            Ok(report)
        })
        .collect::<Result<_>>()?;
    let mut report = LawReport::new();
    for (i, sub) in reports.into_iter().enumerate() {
        merge_indexed(&mut report, sub, i);
    }
    expect_value(&mut report, count.filter(|_| samples.is_none()), cats.len());
    let distinct: BTreeSet<Vec<Vec<usize>>> = cats.iter().map(VCategory::rows).collect();
    Ok(Outcome::with(
        report,
        json!({ "structures": cats.len(), "distinct": distinct.len(), "sampled": samples.is_some() }),
    ))
}

/// Upper bound on the number of maps `X → V` whose subsets are enumerated.
const VCCD_CENSUS_MAPS: usize = 20;

fn vccd_census(q: &Arc<Quantale>, points: usize) -> Result<Outcome> {
    let all: Vec<VMap> = FiniteMap::all(points, q.size())
        .map(|m| VMap::from_ranks(m.image()))
        .collect();
    if all.len() > VCCD_CENSUS_MAPS {
        return Err(Error::ResourceLimit(format!(
            "{} maps into V give too many generator sets",
            all.len()
        )));
    }
    let closures: Vec<AffineSet> = (0usize..1 << all.len())
        .into_par_iter()
        .map(|mask| {
            let gens: Vec<VMap> = (0..all.len())
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| all[i].clone())
                .collect();
            affine::generate_vccd_closure(q, points, &gens, affine::DEFAULT_CAP)
        })
        .collect::<Result<_>>()?;
    let mut first_mask: BTreeMap<&[Vec<usize>], usize> = BTreeMap::new();
    for (mask, set) in closures.iter().enumerate() {
        first_mask.entry(set.maps()).or_insert(mask);
    }
    let mut report = LawReport::new();
    for (&maps, &mask) in &first_mask {
        let set = &closures[mask];
        let family = set.as_vmaps(q)?;
        let cat = initial_structure(q, points, &family)?;
        let functors: BTreeSet<VMap> = enumerate_vfunctors_to_v(&cat).into_iter().collect();
        let original: BTreeSet<VMap> = family.into_iter().collect();
        report.expect(functors == original, Law::RoundtripFG, &[mask]);
        debug_assert_eq!(maps, set.maps());
    }
    Ok(Outcome::with(
        report,
        json!({ "generator_sets": closures.len(), "distinct_closures": first_mask.len() }),
    ))
}

/// Extensivity, monotonicity and idempotence of the Zariski closure over
/// every subset of the points.
pub fn zariski_laws(set: &AffineSet) -> Result<LawReport> {
    let n = set.points();
    if n > 12 {
        return Err(Error::ResourceLimit(format!("2^{n} subsets")));
    }
    let closures: Vec<BTreeSet<usize>> = (0usize..1 << n)
        .map(|mask| set.zariski_closure(&mask_to_set(mask, n)))
        .collect::<Result<_>>()?;
    let as_mask = |s: &BTreeSet<usize>| s.iter().fold(0usize, |m, &x| m | (1 << x));
    let mut report = LawReport::new();
    for (m, cl) in closures.iter().enumerate() {
        let c = as_mask(cl);
        report.expect(m & !c == 0, Law::ClosureExtensive, &[m]);
        report.expect(closures[c] == *cl, Law::ClosureIdempotent, &[m]);
        let mut sup = m;
        loop {
            sup = (sup + 1) | m;
            if sup >= 1 << n {
                break;
            }
            report.expect(c & !as_mask(&closures[sup]) == 0, Law::ClosureMonotone, &[m, sup]);
        }
    }
    Ok(report)
}

fn topology_census(points: usize, count: Option<usize>, t0: Option<usize>) -> Result<Outcome> {
    let spaces = enumerate_topologies(points)?;
    let sets: Vec<AffineSet> = spaces.iter().map(space_to_affine).collect::<Result<_>>()?;
    let mut report = LawReport::new();
    let mut t0_count = 0;
    for (i, (space, set)) in spaces.iter().zip(&sets).enumerate() {
        let sobriety = is_sober_finite(space);
        if sobriety.sober {
            t0_count += 1;
        }
        let mut sub = set.closure_report();
        sub.expect(sobriety.agrees, Law::Sobriety, &[]);
        sub.expect(affine_to_space(set)? == *space, Law::TranscriptionRoundtrip, &[]);
        sub.merge(zariski_laws(set)?);
        merge_indexed(&mut report, sub, i);
    }
    if points <= 3 {
        for (i, (x, sx)) in spaces.iter().zip(&sets).enumerate() {
            for (j, (y, sy)) in spaces.iter().zip(&sets).enumerate() {
                for f in FiniteMap::all(points, points) {
                    let continuous = x.is_continuous(&f, y);
                    let affine = affine::check_affine_morphism(&f, sx, sy)?.is_ok();
                    report.expect(continuous == affine, Law::AffineMorphism, &[i, j]);
                }
            }
        }
    }
    expect_value(&mut report, count, spaces.len());
    expect_value(&mut report, t0, t0_count);
    Ok(Outcome::with(report, json!({ "count": spaces.len(), "t0": t0_count })))
}

fn gamma_report<I>(
    oracle: &I,
    g: &CommaObject<crate::comma::TargetObj<I>, crate::comma::SourceObj<I>>,
) -> Result<LawReport>
where
    I: FunctorOracle,
    I::Target: crate::comma::HasProducts,
{
    let mut report = unit_gamma_check(oracle, g)?;
    report.merge(right_universal_check(oracle, g, &g.a, &g.b)?);
    Ok(report)
}

type ReflectionSummary = (LawReport, usize, FiniteMap, FiniteMap);

fn reflection_report<I>(
    oracle: &I,
    g: &CommaObject<crate::comma::TargetObj<I>, crate::comma::SourceObj<I>>,
    size: impl Fn(&crate::comma::TargetObj<I>) -> usize,
) -> Result<ReflectionSummary>
where
    I: FunctorOracle,
    I::Target: crate::comma::HasImages,
{
    let r = epireflect(oracle, g)?;
    let mut report = check_comma_morphism(oracle, g, &r.reflected, &r.unit)?;
    report.expect(r.unit.f.is_surjective(), Law::EpiSurjective, &[]);
    report.expect(r.reflected.g.is_injective(), Law::MonoInjective, &[]);
    let again = epireflect(oracle, &r.reflected)?;
    report.expect(again.reflected == r.reflected, Law::ReflectionIdempotent, &[]);
    Ok((report, size(&r.reflected.a), r.unit.f, r.reflected.g))
}
