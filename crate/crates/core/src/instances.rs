//! Finite topological spaces and closure spaces as affine sets over the
//! two-element frame and the two-element complete meet-lattice.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::affine::AffineSet;
use crate::algebra::FinAlgebra;
use crate::error::{Error, Result};
use crate::finmap::FiniteMap;

pub type PointSet = BTreeSet<usize>;

/// Largest carrier accepted by the census enumerations.
pub const MAX_CENSUS_POINTS: usize = 4;

fn to_mask(set: &PointSet) -> u32 {
    set.iter().fold(0, |m, &x| m | (1 << x))
}

fn from_mask(mask: u32, points: usize) -> PointSet {
    (0..points).filter(|&x| mask & (1 << x) != 0).collect()
}

fn validate_family(points: usize, family: &[PointSet], what: &str) -> Result<BTreeSet<u32>> {
    if points > 31 {
        return Err(Error::ResourceLimit(format!("{what} on {points} points")));
    }
    let mut masks = BTreeSet::new();
    for set in family {
        if let Some(&bad) = set.iter().find(|&&x| x >= points) {
            return Err(Error::InvalidElement {
                rank: bad,
                size: points,
            });
        }
        masks.insert(to_mask(set));
    }
    Ok(masks)
}

/// A topology on `{0..points-1}` given by its open sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteSpace {
    points: usize,
    opens: Vec<PointSet>,
}

impl FiniteSpace {
    pub fn new(points: usize, opens: Vec<PointSet>) -> Result<Self> {
        let masks = validate_family(points, &opens, "topology")?;
        let full = (1u32 << points) - 1;
        if !masks.contains(&0) || !masks.contains(&full) {
            return Err(Error::MalformedInput("a topology contains ∅ and X".into()));
        }
        for &u in &masks {
            for &v in &masks {
                if !masks.contains(&(u | v)) || !masks.contains(&(u & v)) {
                    return Err(Error::MalformedInput(format!(
                        "opens {:?} and {:?} break union or intersection closure",
                        from_mask(u, points),
                        from_mask(v, points)
                    )));
                }
            }
        }
        Ok(Self::from_masks(points, &masks))
    }

    fn from_masks(points: usize, masks: &BTreeSet<u32>) -> Self {
        Self {
            points,
            opens: masks.iter().map(|&m| from_mask(m, points)).collect(),
        }
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn opens(&self) -> &[PointSet] {
        &self.opens
    }

    pub fn closed_sets(&self) -> Vec<PointSet> {
        let mut closed: Vec<PointSet> = self
            .opens
            .iter()
            .map(|u| (0..self.points).filter(|x| !u.contains(x)).collect())
            .collect();
        closed.sort();
        closed
    }

    /// The least closed set containing `set`.
    pub fn closure(&self, set: &PointSet) -> PointSet {
        self.closed_sets()
            .into_iter()
            .filter(|c| set.is_subset(c))
            .fold((0..self.points).collect(), |acc: PointSet, c| {
                acc.intersection(&c).copied().collect()
            })
    }

    /// First pair of distinct points lying in exactly the same opens.
    pub fn t0_witness(&self) -> Option<(usize, usize)> {
        (0..self.points)
            .flat_map(|x| (x + 1..self.points).map(move |y| (x, y)))
            .find(|&(x, y)| self.opens.iter().all(|u| u.contains(&x) == u.contains(&y)))
    }

    /// Irreducible closed sets lacking exactly one generic point, with the
    /// generic points each of them has.
    pub fn sobriety_failures(&self) -> Vec<(PointSet, Vec<usize>)> {
        let closed = self.closed_sets();
        let mut failures = Vec::new();
        for c in &closed {
            if c.is_empty() {
                continue;
            }
            let reducible = closed.iter().any(|a| {
                a != c
                    && a.is_subset(c)
                    && closed
                        .iter()
                        .any(|b| b != c && b.is_subset(c) && a.union(b).eq(c.iter()))
            });
            if reducible {
                continue;
            }
            let generic: Vec<usize> = c
                .iter()
                .copied()
                .filter(|&x| self.closure(&PointSet::from([x])) == *c)
                .collect();
            if generic.len() != 1 {
                failures.push((c.clone(), generic));
            }
        }
        failures
    }

    pub fn is_continuous(&self, f: &FiniteMap, target: &FiniteSpace) -> bool {
        f.source() == self.points
            && f.target() == target.points
            && target.opens.iter().all(|v| {
                let pre: PointSet = (0..self.points).filter(|&x| v.contains(&f.apply(x))).collect();
                self.opens.contains(&pre)
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SobrietyReport {
    pub sober: bool,
    /// A pair of distinct points with the same neighbourhoods, if any.
    pub t0_witness: Option<(usize, usize)>,
    /// Answer of the direct generic-point check.
    pub generic_point_sober: bool,
    pub agrees: bool,
}

/// Finite sobriety through the T0 property, cross-checked against the
/// generic points of irreducible closed sets.
pub fn is_sober_finite(space: &FiniteSpace) -> SobrietyReport {
    let t0_witness = space.t0_witness();
    let generic_point_sober = space.sobriety_failures().is_empty();
    SobrietyReport {
        sober: t0_witness.is_none(),
        t0_witness,
        generic_point_sober,
        agrees: t0_witness.is_none() == generic_point_sober,
    }
}

fn characteristic(set: &PointSet, points: usize) -> Vec<usize> {
    (0..points).map(|x| usize::from(set.contains(&x))).collect()
}

/// `S = {χ_U : U open}` over the two-element frame.
pub fn space_to_affine(space: &FiniteSpace) -> Result<AffineSet> {
    let maps = space.opens.iter().map(|u| characteristic(u, space.points)).collect();
    AffineSet::new(Arc::new(FinAlgebra::two_element_frame()), space.points, maps)
}

fn preimages_of_top(set: &AffineSet) -> Vec<PointSet> {
    set.maps()
        .iter()
        .map(|m| (0..set.points()).filter(|&x| m[x] == 1).collect())
        .collect()
}

/// Opens `{φ⁻¹(1) : φ ∈ S}` of an affine set over the two-element frame.
pub fn affine_to_space(set: &AffineSet) -> Result<FiniteSpace> {
    if **set.ambient() != FinAlgebra::two_element_frame() {
        return Err(Error::IncompatibleStructures(format!(
            "expected the two-element frame, found {}",
            set.ambient().name()
        )));
    }
    FiniteSpace::new(set.points(), preimages_of_top(set))
}

/// A family of closed sets containing `X` and closed under intersection.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureSystem {
    points: usize,
    closed: Vec<PointSet>,
}

impl ClosureSystem {
    pub fn new(points: usize, closed: Vec<PointSet>) -> Result<Self> {
        let masks = validate_family(points, &closed, "closure system")?;
        let full = (1u32 << points) - 1;
        if !masks.contains(&full) {
            return Err(Error::MalformedInput("a closure system contains X".into()));
        }
        for &a in &masks {
            for &b in &masks {
                if !masks.contains(&(a & b)) {
                    return Err(Error::MalformedInput(format!(
                        "{:?} ∩ {:?} is not closed",
                        from_mask(a, points),
                        from_mask(b, points)
                    )));
                }
            }
        }
        Ok(Self {
            points,
            closed: masks.iter().map(|&m| from_mask(m, points)).collect(),
        })
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn closed_sets(&self) -> &[PointSet] {
        &self.closed
    }
}

/// `S = {χ_C : C closed}` over the two-element complete meet-lattice.
pub fn closure_system_to_affine(system: &ClosureSystem) -> Result<AffineSet> {
    let maps = system.closed.iter().map(|c| characteristic(c, system.points)).collect();
    AffineSet::new(Arc::new(FinAlgebra::two_element_inf_lattice()), system.points, maps)
}

pub fn affine_to_closure_system(set: &AffineSet) -> Result<ClosureSystem> {
    if **set.ambient() != FinAlgebra::two_element_inf_lattice() {
        return Err(Error::IncompatibleStructures(format!(
            "expected the two-element meet-lattice, found {}",
            set.ambient().name()
        )));
    }
    ClosureSystem::new(set.points(), preimages_of_top(set))
}

fn census<T>(
    points: usize,
    fixed: &[u32],
    accept: impl Fn(&BTreeSet<u32>) -> bool,
    build: impl Fn(&BTreeSet<u32>) -> T,
) -> Result<Vec<T>> {
    if points > MAX_CENSUS_POINTS {
        return Err(Error::ResourceLimit(format!(
            "census limited to {MAX_CENSUS_POINTS} points, asked for {points}"
        )));
    }
    let subsets = 1u32 << points;
    let free: Vec<u32> = (0..subsets).filter(|m| !fixed.contains(m)).collect();
    let mut out = Vec::new();
    for choice in 0u64..(1u64 << free.len()) {
        let mut family: BTreeSet<u32> = fixed.iter().copied().collect();
        family.extend(
            free.iter()
                .enumerate()
                .filter(|(i, _)| choice & (1 << i) != 0)
                .map(|(_, &m)| m),
        );
        if accept(&family) {
            out.push(build(&family));
        }
    }
    Ok(out)
}

/// Every topology on `points ≤ 4` labelled points.
pub fn enumerate_topologies(points: usize) -> Result<Vec<FiniteSpace>> {
    let full = (1u32 << points) - 1;
    census(
        points,
        &[0, full],
        |family| {
            family.iter().all(|&u| {
                family
                    .iter()
                    .all(|&v| family.contains(&(u | v)) && family.contains(&(u & v)))
            })
        },
        |family| FiniteSpace::from_masks(points, family),
    )
}

/// Every closure system on `points ≤ 4` labelled points.
pub fn enumerate_closure_systems(points: usize) -> Result<Vec<ClosureSystem>> {
    let full = (1u32 << points) - 1;
    census(
        points,
        &[full],
        |family| {
            family
                .iter()
                .all(|&a| family.iter().all(|&b| family.contains(&(a & b))))
        },
        |family| ClosureSystem {
            points,
            closed: family.iter().map(|&m| from_mask(m, points)).collect(),
        },
    )
}
