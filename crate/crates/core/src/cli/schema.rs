//! The instance file: named blocks of finite structures and a list of checks
//! over them. Every element value is a carrier rank.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::Operation;
use crate::quantale::QuantaleKind;

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    #[serde(default)]
    pub quantales: BTreeMap<String, QuantaleSpec>,
    #[serde(default)]
    pub algebras: BTreeMap<String, AlgebraSpec>,
    #[serde(default)]
    pub vcategories: BTreeMap<String, VCategorySpec>,
    #[serde(default)]
    pub affine_sets: BTreeMap<String, AffineSpec>,
    #[serde(default)]
    pub spaces: BTreeMap<String, FamilySpec>,
    #[serde(default)]
    pub closure_systems: BTreeMap<String, FamilySpec>,
    #[serde(default)]
    pub maps: BTreeMap<String, MapSpec>,
    #[serde(default)]
    pub oracles: BTreeMap<String, OracleSpec>,
    #[serde(default)]
    pub comma_objects: BTreeMap<String, CommaSpec>,
    #[serde(default)]
    pub checks: Vec<CheckSpec>,
}

/// Either a built-in family member (`kind`, `n`) or explicit tables.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuantaleSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<QuantaleKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leq: Option<Vec<Vec<bool>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tensor: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<usize>,
}

/// A built-in algebra (`frame2`, `inf2`, `chain`, `powerset`, `vccd`), a
/// bounded lattice given by its order, or explicit operation tables.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub builtin: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quantale: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leq: Option<Vec<Vec<bool>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub operations: Option<Vec<Operation>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VCategorySpec {
    pub quantale: String,
    pub matrix: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosureKind {
    /// Subalgebra of `A^X` in the ambient algebra's own signature.
    #[default]
    Generic,
    /// Closure under the enriched operations of a quantale.
    Vccd,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AffineSpec {
    pub points: usize,
    pub generators: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quantale: Option<String>,
    #[serde(default)]
    pub closure: ClosureKind,
}

/// Opens of a space or closed sets of a closure system.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    pub points: usize,
    pub sets: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSpec {
    pub target: usize,
    pub image: Vec<usize>,
}

/// `pointed_sets`, `distributive_lattices`, or `power` over `algebra`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleSpec {
    pub builtin: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<String>,
}

/// A finite set given by its size, or a declared algebra by name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ObjectRef {
    Size(usize),
    Algebra(String),
}

/// A declared map by name, or one written inline.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MapRef {
    Named(String),
    Inline(MapSpec),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CommaSpec {
    pub oracle: String,
    pub a: ObjectRef,
    pub b: ObjectRef,
    pub g: MapRef,
}

/// One entry of the checks list. `expect` (default `true`) is the outcome
/// the property is required to have.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect: Option<bool>,
    #[serde(flatten)]
    pub kind: CheckKind,
}

impl CheckSpec {
    pub fn new(kind: CheckKind) -> Self {
        Self {
            name: None,
            expect: None,
            kind,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum CheckKind {
    QuantaleLaws {
        quantale: String,
    },
    Hom {
        quantale: String,
        u: usize,
        v: usize,
        equals: usize,
    },
    VcategoryLaws {
        vcategory: String,
    },
    Vfunctor {
        map: MapRef,
        source: String,
        target: String,
    },
    InitialStructure {
        quantale: String,
        points: usize,
        maps: Vec<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        equals: Option<Vec<Vec<usize>>>,
    },
    VfunctorsToV {
        vcategory: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        count: Option<usize>,
    },
    ExpansionIdentity {
        vcategory: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        psi: Option<Vec<usize>>,
    },
    Separated {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        vcategory: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        affine_set: Option<String>,
    },
    CauchyComplete {
        vcategory: String,
    },
    RoundtripIso {
        quantale: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        vcategory: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        affine_set: Option<String>,
    },
    /// Suites 2 and 4 over every structure on `points` points, or over
    /// `samples` seeded random ones.
    RoundtripCensus {
        quantale: String,
        points: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        samples: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        seed: Option<u64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        count: Option<usize>,
    },
    /// Enriched closure of every generator set of maps on `points` points
    /// reproduced by the initial structure.
    VccdCensus {
        quantale: String,
        points: usize,
    },
    CauchyCensus {
        quantale: String,
        points: usize,
    },
    AffineMorphism {
        map: MapRef,
        source: String,
        target: String,
    },
    ZariskiClosure {
        affine_set: String,
        subset: Vec<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        equals: Option<Vec<usize>>,
    },
    AffineCommaRoundtrip {
        affine_set: String,
    },
    SpaceRoundtrip {
        space: String,
    },
    Sober {
        space: String,
    },
    ClosureSystemRoundtrip {
        closure_system: String,
    },
    TopologyCensus {
        points: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        count: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        t0: Option<usize>,
    },
    ClosureSystemCensus {
        points: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        count: Option<usize>,
    },
    UnitGamma {
        comma_object: String,
    },
    LeftAdjoint {
        comma_object: String,
    },
    Epireflect {
        comma_object: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        reflected_size: Option<usize>,
    },
    ReflectionUniversal {
        comma_object: String,
        target: String,
    },
    Functoriality {
        oracle: String,
        objects: Vec<ObjectRef>,
    },
    SplitPair {
        f: MapRef,
        g: MapRef,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        power: Option<usize>,
    },
}
