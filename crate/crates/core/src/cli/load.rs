//! Resolves an [`InstanceFile`] into validated structures.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::affine::{self, AffineSet};
use crate::algebra::FinAlgebra;
use crate::comma::{check_comma_object, CommaObject, IdentityFunctor, PointedSets, PowerFunctor, Variety};
use crate::error::{Error, Result};
use crate::finmap::FiniteMap;
use crate::instances::{ClosureSystem, FiniteSpace, PointSet};
use crate::quantale::{Elem, Quantale, QuantaleKind, QuantaleTable};
use crate::vcat::{VCategory, VMap};

use super::schema::{
    AffineSpec, AlgebraSpec, ClosureKind, CommaSpec, InstanceFile, MapRef, MapSpec, ObjectRef, OracleSpec, QuantaleSpec,
};

pub struct LoadedQuantale {
    pub table: QuantaleTable,
    /// Present only when the table satisfies every quantale law.
    pub lawful: Option<Arc<Quantale>>,
}

pub enum Oracle {
    Pointed(Arc<IdentityFunctor<PointedSets>>),
    Lattices(Arc<IdentityFunctor<Variety>>),
    Power(Arc<PowerFunctor>),
}

pub enum Comma {
    Pointed(Arc<IdentityFunctor<PointedSets>>, CommaObject<usize, usize>),
    Lattices(Arc<IdentityFunctor<Variety>>, CommaObject<FinAlgebra, FinAlgebra>),
    Power(Arc<PowerFunctor>, CommaObject<FinAlgebra, usize>),
}

#[derive(Default)]
pub struct Loaded {
    pub quantales: BTreeMap<String, LoadedQuantale>,
    pub algebras: BTreeMap<String, Arc<FinAlgebra>>,
    pub vcategories: BTreeMap<String, VCategory>,
    pub affine_sets: BTreeMap<String, AffineSet>,
    pub spaces: BTreeMap<String, FiniteSpace>,
    pub closure_systems: BTreeMap<String, ClosureSystem>,
    pub maps: BTreeMap<String, FiniteMap>,
    pub oracles: BTreeMap<String, Oracle>,
    pub comma_objects: BTreeMap<String, Comma>,
}

pub fn lookup<'a, T>(table: &'a BTreeMap<String, T>, name: &str, what: &str) -> Result<&'a T> {
    table
        .get(name)
        .ok_or_else(|| Error::MalformedInput(format!("unresolved reference to {what} `{name}`")))
}

fn within(name: &str, err: Error) -> Error {
    match err {
        Error::MalformedInput(msg) => Error::MalformedInput(format!("{name}: {msg}")),
        Error::IncompatibleStructures(msg) => Error::MalformedInput(format!("{name}: {msg}")),
        Error::InvalidElement { rank, size } => {
            Error::MalformedInput(format!("{name}: rank {rank} outside a carrier of size {size}"))
        }
        other => other,
    }
}

impl Loaded {
    pub fn from_file(file: &InstanceFile) -> Result<Self> {
        let mut loaded = Loaded::default();
        for (name, spec) in &file.quantales {
            let q = load_quantale(name, spec).map_err(|e| within(name, e))?;
            loaded.quantales.insert(name.clone(), q);
        }
        for (name, spec) in &file.algebras {
            let a = loaded.load_algebra(name, spec).map_err(|e| within(name, e))?;
            loaded.algebras.insert(name.clone(), Arc::new(a));
        }
        for (name, spec) in &file.vcategories {
            let q = loaded.quantale(&spec.quantale)?;
            let cat = VCategory::from_ranks(q, &spec.matrix).map_err(|e| within(name, e))?;
            loaded.vcategories.insert(name.clone(), cat);
        }
        for (name, spec) in &file.affine_sets {
            let set = loaded.load_affine(spec).map_err(|e| within(name, e))?;
            loaded.affine_sets.insert(name.clone(), set);
        }
        for (name, spec) in &file.spaces {
            let space = FiniteSpace::new(spec.points, to_point_sets(&spec.sets)).map_err(|e| within(name, e))?;
            loaded.spaces.insert(name.clone(), space);
        }
        for (name, spec) in &file.closure_systems {
            let system = ClosureSystem::new(spec.points, to_point_sets(&spec.sets)).map_err(|e| within(name, e))?;
            loaded.closure_systems.insert(name.clone(), system);
        }
        for (name, spec) in &file.maps {
            let map = build_map(spec).map_err(|e| within(name, e))?;
            loaded.maps.insert(name.clone(), map);
        }
        for (name, spec) in &file.oracles {
            let oracle = loaded.load_oracle(spec).map_err(|e| within(name, e))?;
            loaded.oracles.insert(name.clone(), oracle);
        }
        for (name, spec) in &file.comma_objects {
            let comma = loaded.load_comma(spec).map_err(|e| within(name, e))?;
            loaded.comma_objects.insert(name.clone(), comma);
        }
        Ok(loaded)
    }

    /// The validated quantale behind a name; unlawful tables cannot carry
    /// structures.
    pub fn quantale(&self, name: &str) -> Result<Arc<Quantale>> {
        lookup(&self.quantales, name, "quantale")?
            .lawful
            .clone()
            .ok_or_else(|| Error::MalformedInput(format!("quantale `{name}` violates the quantale laws")))
    }

    pub fn algebra(&self, name: &str) -> Result<Arc<FinAlgebra>> {
        lookup(&self.algebras, name, "algebra").cloned()
    }

    pub fn map(&self, map: &MapRef) -> Result<FiniteMap> {
        match map {
            MapRef::Named(name) => lookup(&self.maps, name, "map").cloned(),
            MapRef::Inline(spec) => build_map(spec),
        }
    }

    pub fn size_ref(&self, object: &ObjectRef) -> Result<usize> {
        match object {
            ObjectRef::Size(n) => Ok(*n),
            ObjectRef::Algebra(name) => Err(Error::MalformedInput(format!(
                "expected a set size, found algebra `{name}`"
            ))),
        }
    }

    pub fn algebra_ref(&self, object: &ObjectRef) -> Result<FinAlgebra> {
        match object {
            ObjectRef::Algebra(name) => Ok((*self.algebra(name)?).clone()),
            ObjectRef::Size(n) => Err(Error::MalformedInput(format!(
                "expected an algebra name, found size {n}"
            ))),
        }
    }

    fn load_algebra(&self, name: &str, spec: &AlgebraSpec) -> Result<FinAlgebra> {
        if let Some(builtin) = &spec.builtin {
            let need_n = || {
                spec.n
                    .ok_or_else(|| Error::MalformedInput(format!("builtin `{builtin}` needs `n`")))
            };
            let algebra = match builtin.as_str() {
                "frame2" => FinAlgebra::two_element_frame(),
                "inf2" => FinAlgebra::two_element_inf_lattice(),
                "chain" => FinAlgebra::chain(need_n()?),
                "powerset" => FinAlgebra::powerset_lattice(need_n()?),
                "vccd" => {
                    let q = spec
                        .quantale
                        .as_deref()
                        .ok_or_else(|| Error::MalformedInput("builtin `vccd` needs `quantale`".into()))?;
                    FinAlgebra::vccd(&self.quantale(q)?)
                }
                other => return Err(Error::MalformedInput(format!("unknown builtin algebra `{other}`"))),
            };
            return Ok(algebra);
        }
        if let Some(leq) = &spec.leq {
            let size = leq.len();
            if leq.iter().any(|row| row.len() != size) {
                return Err(Error::MalformedInput("order table is not square".into()));
            }
            return FinAlgebra::bounded_lattice(name, &|x, y| leq[x][y], size);
        }
        match (spec.size, &spec.operations) {
            (Some(size), Some(ops)) => FinAlgebra::new(name, size, ops.clone()),
            _ => Err(Error::MalformedInput(
                "an algebra needs `builtin`, `leq`, or `size` with `operations`".into(),
            )),
        }
    }

    fn load_affine(&self, spec: &AffineSpec) -> Result<AffineSet> {
        match spec.closure {
            ClosureKind::Generic => {
                let name = spec
                    .algebra
                    .as_deref()
                    .ok_or_else(|| Error::MalformedInput("generic closure needs `algebra`".into()))?;
                affine::generate_subalgebra(&self.algebra(name)?, spec.points, &spec.generators, affine::DEFAULT_CAP)
            }
            ClosureKind::Vccd => {
                let name = spec
                    .quantale
                    .as_deref()
                    .ok_or_else(|| Error::MalformedInput("vccd closure needs `quantale`".into()))?;
                let q = self.quantale(name)?;
                let gens = to_vmaps(&q, spec.points, &spec.generators)?;
                affine::generate_vccd_closure(&q, spec.points, &gens, affine::DEFAULT_CAP)
            }
        }
    }

    fn load_oracle(&self, spec: &OracleSpec) -> Result<Oracle> {
        match spec.builtin.as_str() {
            "pointed_sets" => Ok(Oracle::Pointed(Arc::new(IdentityFunctor(PointedSets)))),
            "distributive_lattices" => Ok(Oracle::Lattices(Arc::new(IdentityFunctor(
                Variety::bounded_distributive_lattices(),
            )))),
            "power" => {
                let name = spec
                    .algebra
                    .as_deref()
                    .ok_or_else(|| Error::MalformedInput("the power oracle needs `algebra`".into()))?;
                Ok(Oracle::Power(Arc::new(PowerFunctor::new(
                    (*self.algebra(name)?).clone(),
                ))))
            }
            other => Err(Error::MalformedInput(format!("unknown builtin oracle `{other}`"))),
        }
    }

    fn load_comma(&self, spec: &CommaSpec) -> Result<Comma> {
        let g = self.map(&spec.g)?;
        let comma = match lookup(&self.oracles, &spec.oracle, "oracle")? {
            Oracle::Pointed(o) => {
                let (a, b) = (self.size_ref(&spec.a)?, self.size_ref(&spec.b)?);
                if a == 0 || b == 0 {
                    return Err(Error::MalformedInput("pointed sets are nonempty".into()));
                }
                let object = CommaObject { a, b, g };
                require_valid(check_comma_object(o.as_ref(), &object))?;
                Comma::Pointed(o.clone(), object)
            }
            Oracle::Lattices(o) => {
                let (a, b) = (self.algebra_ref(&spec.a)?, self.algebra_ref(&spec.b)?);
                for algebra in [&a, &b] {
                    if let Some(problem) = distributive_lattice_problem(algebra) {
                        return Err(Error::MalformedInput(format!("{}: {problem}", algebra.name())));
                    }
                }
                let object = CommaObject { a, b, g };
                require_valid(check_comma_object(o.as_ref(), &object))?;
                Comma::Lattices(o.clone(), object)
            }
            Oracle::Power(o) => {
                let (a, b) = (self.algebra_ref(&spec.a)?, self.size_ref(&spec.b)?);
                if !a.same_signature(o.algebra()) {
                    return Err(Error::MalformedInput(format!(
                        "{} does not share the signature of {}",
                        a.name(),
                        o.algebra().name()
                    )));
                }
                let object = CommaObject { a, b, g };
                require_valid(check_comma_object(o.as_ref(), &object))?;
                Comma::Power(o.clone(), object)
            }
        };
        Ok(comma)
    }
}

fn require_valid(report: Result<crate::report::LawReport>) -> Result<()> {
    let report = report?;
    if report.is_ok() {
        Ok(())
    } else {
        Err(Error::MalformedInput("structure map is not a morphism A → IB".into()))
    }
}

fn load_quantale(name: &str, spec: &QuantaleSpec) -> Result<LoadedQuantale> {
    match (spec.kind, &spec.leq, &spec.tensor, spec.unit) {
        (Some(kind), None, None, None) => {
            let n = match (kind, spec.n) {
                (QuantaleKind::Boolean, n) => n.unwrap_or(1),
                (_, Some(n)) => n,
                (_, None) => return Err(Error::MalformedInput("this kind needs `n`".into())),
            };
            let q = Quantale::make(kind, n)?;
            Ok(LoadedQuantale {
                table: q.table(),
                lawful: Some(Arc::new(q)),
            })
        }
        (None, Some(leq), Some(tensor), Some(unit)) => {
            let table = QuantaleTable::new(leq.clone(), tensor.clone(), unit)?;
            let lawful = Quantale::from_table(name, &table).ok().map(Arc::new);
            Ok(LoadedQuantale { table, lawful })
        }
        _ => Err(Error::MalformedInput(
            "a quantale needs either `kind` (and `n`) or all of `leq`, `tensor`, `unit`".into(),
        )),
    }
}

pub fn build_map(spec: &MapSpec) -> Result<FiniteMap> {
    FiniteMap::new(spec.target, spec.image.clone())
}

pub fn to_point_sets(sets: &[Vec<usize>]) -> Vec<PointSet> {
    sets.iter().map(|s| s.iter().copied().collect()).collect()
}

pub fn to_vmaps(q: &Quantale, points: usize, rows: &[Vec<usize>]) -> Result<Vec<VMap>> {
    rows.iter()
        .map(|row| {
            if row.len() != points {
                return Err(Error::MalformedInput(format!(
                    "map {row:?} is not defined on {points} points"
                )));
            }
            row.iter().map(|&r| q.elem(r)).collect::<Result<Vec<Elem>>>().map(VMap)
        })
        .collect()
}

/// Why `algebra` is not a bounded distributive lattice in the signature
/// bottom, top, meet, join, if it is not.
pub fn distributive_lattice_problem(algebra: &FinAlgebra) -> Option<String> {
    if !algebra.same_signature(&FinAlgebra::two_element_frame()) {
        return Some("not in the bounded-lattice signature".into());
    }
    let index = |name: &str| {
        algebra
            .operations()
            .iter()
            .position(|op| op.name == name)
            .expect("signature checked")
    };
    let (bottom, top, meet, join) = (index("bottom"), index("top"), index("meet"), index("join"));
    let n = algebra.size();
    let (lo, hi) = (algebra.apply(bottom, &[]), algebra.apply(top, &[]));
    let m = |x: usize, y: usize| algebra.apply(meet, &[x, y]);
    let j = |x: usize, y: usize| algebra.apply(join, &[x, y]);
    for x in 0..n {
        if j(x, lo) != x || m(x, hi) != x {
            return Some(format!("bounds fail at {x}"));
        }
        for y in 0..n {
            if m(x, y) != m(y, x) || j(x, y) != j(y, x) || m(x, j(x, y)) != x || j(x, m(x, y)) != x {
                return Some(format!("lattice laws fail at ({x}, {y})"));
            }
            for z in 0..n {
                if m(x, m(y, z)) != m(m(x, y), z) || j(x, j(y, z)) != j(j(x, y), z) {
                    return Some(format!("associativity fails at ({x}, {y}, {z})"));
                }
                if m(x, j(y, z)) != j(m(x, y), m(x, z)) {
                    return Some(format!("distributivity fails at ({x}, {y}, {z})"));
                }
            }
        }
    }
    None
}

/// Subsets of `{0..n-1}` encoded as bitmasks, as sets.
pub fn mask_to_set(mask: usize, n: usize) -> BTreeSet<usize> {
    (0..n).filter(|&x| mask & (1 << x) != 0).collect()
}
