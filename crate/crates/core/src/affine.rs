//! Affine sets: a finite set `X` with a subalgebra `S` of the pointwise
//! power `A^X`, their morphisms, Zariski closure and separation, and the
//! passage to and from monic comma objects `S ↪ A^X`.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::algebra::FinAlgebra;
use crate::comma::CommaObject;
use crate::error::{Error, Result};
use crate::finmap::{decode_function, encode_function, FiniteMap};
use crate::quantale::{Elem, Quantale};
use crate::report::{Law, LawReport};
use crate::vcat::VMap;

/// Default bound on the number of members a generated subalgebra may reach.
pub const DEFAULT_CAP: usize = 1 << 16;

/// A point set with a family `S` of maps into an ambient algebra.
///
/// `maps` is kept sorted and duplicate-free; every constructor checks that
/// it is closed under the ambient operations applied pointwise.
#[derive(Clone, PartialEq, Eq)]
pub struct AffineSet {
    points: usize,
    ambient: Arc<FinAlgebra>,
    maps: Vec<Vec<usize>>,
}

impl fmt::Debug for AffineSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "AffineSet({} points over {}, S = {:?})",
            self.points,
            self.ambient.name(),
            self.maps
        )
    }
}

fn check_rows(ambient: &FinAlgebra, points: usize, rows: &[Vec<usize>]) -> Result<()> {
    for row in rows {
        if row.len() != points {
            return Err(Error::MalformedInput(format!(
                "map {row:?} is not defined on {points} points"
            )));
        }
        if let Some(&bad) = row.iter().find(|&&v| v >= ambient.size()) {
            return Err(Error::InvalidElement {
                rank: bad,
                size: ambient.size(),
            });
        }
    }
    Ok(())
}

/// Applies operation `op` pointwise to the rows `args`.
fn apply_pointwise(ambient: &FinAlgebra, op: usize, args: &[&Vec<usize>], points: usize) -> Vec<usize> {
    (0..points)
        .map(|x| {
            let values: Vec<usize> = args.iter().map(|r| r[x]).collect();
            ambient.apply(op, &values)
        })
        .collect()
}

/// Enumerates every tuple of members for every operation and collects the
/// pointwise results that are missing from `members`.
fn missing_results(ambient: &FinAlgebra, points: usize, members: &BTreeSet<Vec<usize>>) -> Vec<Vec<usize>> {
    let list: Vec<&Vec<usize>> = members.iter().collect();
    let mut missing = Vec::new();
    for (i, op) in ambient.operations().iter().enumerate() {
        let count = list.len().pow(op.arity as u32);
        for code in 0..count {
            let mut picks = decode_function(code, list.len().max(1), op.arity);
            picks.reverse();
            let args: Vec<&Vec<usize>> = picks.iter().map(|&p| list[p]).collect();
            let row = apply_pointwise(ambient, i, &args, points);
            if !members.contains(&row) {
                missing.push(row);
            }
        }
    }
    missing
}

impl AffineSet {
    /// Wraps an explicit family `S`, which must already be a subalgebra.
    pub fn new(ambient: Arc<FinAlgebra>, points: usize, maps: Vec<Vec<usize>>) -> Result<Self> {
        check_rows(&ambient, points, &maps)?;
        let members: BTreeSet<Vec<usize>> = maps.into_iter().collect();
        if let Some(row) = missing_results(&ambient, points, &members).into_iter().next() {
            return Err(Error::MalformedInput(format!(
                "S is not closed under the operations of {}: {row:?} is missing",
                ambient.name()
            )));
        }
        Ok(Self {
            points,
            ambient,
            maps: members.into_iter().collect(),
        })
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn ambient(&self) -> &Arc<FinAlgebra> {
        &self.ambient
    }

    pub fn maps(&self) -> &[Vec<usize>] {
        &self.maps
    }

    pub fn contains(&self, row: &[usize]) -> bool {
        self.maps.binary_search_by(|m| m.as_slice().cmp(row)).is_ok()
    }

    /// Exhaustive closure check: every operation applied pointwise to every
    /// tuple of members yields a member.
    pub fn closure_report(&self) -> LawReport {
        let members: BTreeSet<Vec<usize>> = self.maps.iter().cloned().collect();
        let mut report = LawReport::new();
        for (i, op) in self.ambient.operations().iter().enumerate() {
            let count = self.maps.len().pow(op.arity as u32);
            for code in 0..count {
                let mut picks = decode_function(code, self.maps.len().max(1), op.arity);
                picks.reverse();
                let args: Vec<&Vec<usize>> = picks.iter().map(|&p| &self.maps[p]).collect();
                let row = apply_pointwise(&self.ambient, i, &args, self.points);
                let mut witness = vec![i];
                witness.extend(&picks);
                report.expect(members.contains(&row), Law::SubalgebraClosed, &witness);
            }
        }
        report
    }

    /// Members of `S` read as maps into a quantale carrier.
    pub fn as_vmaps(&self, q: &Quantale) -> Result<Vec<VMap>> {
        if self.ambient.size() != q.size() {
            return Err(Error::IncompatibleStructures(format!(
                "ambient {} has {} elements, {} has {}",
                self.ambient.name(),
                self.ambient.size(),
                q.name(),
                q.size()
            )));
        }
        Ok(self.maps.iter().map(|r| VMap::from_ranks(r)).collect())
    }

    /// First pair of distinct points that no member of `S` separates.
    pub fn separation_witness(&self) -> Option<(usize, usize)> {
        (0..self.points)
            .flat_map(|x| (x + 1..self.points).map(move |y| (x, y)))
            .find(|&(x, y)| self.maps.iter().all(|m| m[x] == m[y]))
    }

    pub fn is_separated(&self) -> bool {
        self.separation_witness().is_none()
    }

    /// The intersection of all equalizers `Eq(φ, ψ)`, `φ, ψ ∈ S`, that
    /// contain `subset`.
    pub fn zariski_closure(&self, subset: &BTreeSet<usize>) -> Result<BTreeSet<usize>> {
        if let Some(&bad) = subset.iter().find(|&&x| x >= self.points) {
            return Err(Error::InvalidElement {
                rank: bad,
                size: self.points,
            });
        }
        let mut closure: BTreeSet<usize> = (0..self.points).collect();
        for (i, phi) in self.maps.iter().enumerate() {
            for psi in &self.maps[i + 1..] {
                if subset.iter().all(|&x| phi[x] == psi[x]) {
                    closure.retain(|&x| phi[x] == psi[x]);
                }
            }
        }
        Ok(closure)
    }

    /// The comma object `S ↪ A^X`: `S` as a subalgebra of the power algebra,
    /// over the set sort `X`, with the inclusion as structure map.
    pub fn to_comma(&self, cap: usize) -> Result<CommaObject<FinAlgebra, usize>> {
        let power = self.ambient.power(self.points, cap)?;
        let codes: Vec<usize> = self
            .maps
            .iter()
            .map(|r| encode_function(r, self.ambient.size()))
            .collect();
        let (sub, inclusion) = power.subalgebra(&codes)?;
        Ok(CommaObject {
            a: sub.with_name("S"),
            b: self.points,
            g: inclusion,
        })
    }

    /// Reads a comma object `g: B → A^X` with `g` injective back as the
    /// affine set whose `S` is the image of `g`.
    pub fn from_comma(ambient: Arc<FinAlgebra>, object: &CommaObject<FinAlgebra, usize>) -> Result<Self> {
        if !object.g.is_injective() {
            return Err(Error::PreconditionViolation(
                "structure map is not monic; epireflect first".into(),
            ));
        }
        let points = object.b;
        let rows = object
            .g
            .image()
            .iter()
            .map(|&code| decode_function(code, ambient.size(), points))
            .collect();
        Self::new(ambient, points, rows)
    }
}

/// The least subalgebra of `A^X` containing `generators`, computed by
/// fixed-point iteration. Nullary operations seed the pointwise constants.
pub fn generate_subalgebra(
    ambient: &Arc<FinAlgebra>,
    points: usize,
    generators: &[Vec<usize>],
    cap: usize,
) -> Result<AffineSet> {
    check_rows(ambient, points, generators)?;
    let mut members: BTreeSet<Vec<usize>> = generators.iter().cloned().collect();
    loop {
        let missing = missing_results(ambient, points, &members);
        if missing.is_empty() {
            break;
        }
        members.extend(missing);
        if members.len() > cap {
            return Err(Error::ResourceLimit(format!(
                "generated subalgebra exceeds {cap} members"
            )));
        }
    }
    Ok(AffineSet {
        points,
        ambient: ambient.clone(),
        maps: members.into_iter().collect(),
    })
}

/// The closure of `generators` under pointwise joins, meets, `u ⊗ -` and
/// `hom(u, -)`, including the empty join and the empty meet.
pub fn generate_vccd_closure(q: &Arc<Quantale>, points: usize, generators: &[VMap], cap: usize) -> Result<AffineSet> {
    let ambient = Arc::new(FinAlgebra::vccd(q));
    let rows: Vec<Vec<usize>> = generators.iter().map(VMap::ranks).collect();
    generate_subalgebra(&ambient, points, &rows, cap)
}

/// For `f: X → Y`, checks that `τ ∘ f ∈ S` for every `τ ∈ T`.
pub fn check_affine_morphism(f: &FiniteMap, source: &AffineSet, target: &AffineSet) -> Result<LawReport> {
    if source.ambient != target.ambient {
        return Err(Error::IncompatibleStructures(format!(
            "affine sets over {} and {}",
            source.ambient.name(),
            target.ambient.name()
        )));
    }
    if f.source() != source.points || f.target() != target.points {
        return Err(Error::MalformedInput(format!(
            "{f:?} does not run from {} to {} points",
            source.points, target.points
        )));
    }
    let mut report = LawReport::new();
    for (i, tau) in target.maps.iter().enumerate() {
        let pulled: Vec<usize> = f.image().iter().map(|&y| tau[y]).collect();
        report.expect(source.contains(&pulled), Law::AffineMorphism, &[i]);
    }
    Ok(report)
}

/// Pointwise constants as quantale maps; convenience for callers building
/// generator lists.
pub fn constant_maps(q: &Quantale, points: usize) -> Vec<VMap> {
    q.elements().map(|u: Elem| VMap::constant(points, u)).collect()
}
