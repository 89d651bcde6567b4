//! Finite V-categories, V-functors, initial structures and the two
//! directions of the correspondence between V-categories and affine sets
//! over `(V, hom)`.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::affine::{self, AffineSet};
use crate::error::{Error, Result};
use crate::finmap::FiniteMap;
use crate::quantale::{Elem, Quantale};
use crate::report::{Law, LawReport};

/// A function `X → V`, stored as one value per point.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VMap(pub Vec<Elem>);

impl VMap {
    pub fn from_ranks(ranks: &[usize]) -> Self {
        VMap(ranks.iter().copied().map(Elem).collect())
    }

    pub fn constant(n: usize, value: Elem) -> Self {
        VMap(vec![value; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.0.iter().map(|e| e.0).collect()
    }

    pub fn get(&self, x: usize) -> Elem {
        self.0[x]
    }
}

impl fmt::Debug for VMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.ranks())
    }
}

/// A finite carrier with a V-valued structure matrix `a(x, y)`.
///
/// Construction only checks the shape; [`VCategory::check_laws`] reports
/// reflexivity and transitivity failures.
#[derive(Clone, PartialEq, Eq)]
pub struct VCategory {
    quantale: Arc<Quantale>,
    size: usize,
    matrix: Vec<Elem>,
}

impl fmt::Debug for VCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("VCategory")
            .field("quantale", &self.quantale.name())
            .field("rows", &self.rows())
            .finish()
    }
}

impl VCategory {
    pub fn new(quantale: Arc<Quantale>, rows: Vec<Vec<Elem>>) -> Result<Self> {
        let size = rows.len();
        if rows.iter().any(|r| r.len() != size) {
            return Err(Error::MalformedInput(format!("structure matrix is not {size}×{size}")));
        }
        let matrix: Vec<Elem> = rows.into_iter().flatten().collect();
        if let Some(bad) = matrix.iter().find(|e| e.0 >= quantale.size()) {
            return Err(Error::InvalidElement {
                rank: bad.0,
                size: quantale.size(),
            });
        }
        Ok(Self { quantale, size, matrix })
    }

    pub fn from_ranks(quantale: Arc<Quantale>, rows: &[Vec<usize>]) -> Result<Self> {
        Self::new(
            quantale,
            rows.iter().map(|r| r.iter().copied().map(Elem).collect()).collect(),
        )
    }

    pub fn from_fn(quantale: Arc<Quantale>, size: usize, a: impl Fn(usize, usize) -> Elem) -> Self {
        let matrix = (0..size)
            .flat_map(|x| (0..size).map(move |y| (x, y)))
            .map(|(x, y)| a(x, y))
            .collect();
        Self { quantale, size, matrix }
    }

    /// `k` on the diagonal, bottom elsewhere.
    pub fn discrete(quantale: Arc<Quantale>, size: usize) -> Self {
        let (k, bottom) = (quantale.unit(), quantale.bottom());
        Self::from_fn(quantale, size, |x, y| if x == y { k } else { bottom })
    }

    /// The quantale itself with `a(u, v) = hom(u, v)`.
    pub fn of_quantale(quantale: Arc<Quantale>) -> Self {
        let q = quantale.clone();
        Self::from_fn(quantale, q.size(), |u, v| q.hom(Elem(u), Elem(v)))
    }

    /// The least V-category structure above `rows`: raises the diagonal to
    /// at least `k` and closes under composition `a(y,z) ⊗ a(x,y)`.
    pub fn generated_by(quantale: Arc<Quantale>, rows: Vec<Vec<Elem>>) -> Result<Self> {
        let mut cat = Self::new(quantale, rows)?;
        let q = cat.quantale.clone();
        let n = cat.size;
        for x in 0..n {
            let i = x * n + x;
            cat.matrix[i] = q.join(cat.matrix[i], q.unit());
        }
        loop {
            let mut changed = false;
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        let via = q.tensor(cat.a(y, z), cat.a(x, y));
                        let joined = q.join(cat.a(x, z), via);
                        if joined != cat.a(x, z) {
                            cat.matrix[x * n + z] = joined;
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                return Ok(cat);
            }
        }
    }

    pub fn quantale(&self) -> &Arc<Quantale> {
        &self.quantale
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn a(&self, x: usize, y: usize) -> Elem {
        self.matrix[x * self.size + y]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.size)
            .map(|x| (0..self.size).map(|y| self.a(x, y).0).collect())
            .collect()
    }

    /// The row `a(x, -)`.
    pub fn row(&self, x: usize) -> VMap {
        VMap((0..self.size).map(|y| self.a(x, y)).collect())
    }

    /// The column `a(-, x)`.
    pub fn column(&self, x: usize) -> VMap {
        VMap((0..self.size).map(|y| self.a(y, x)).collect())
    }

    /// Reflexivity `k ≤ a(x,x)` and transitivity `a(y,z) ⊗ a(x,y) ≤ a(x,z)`.
    pub fn check_laws(&self) -> LawReport {
        let q = &self.quantale;
        let n = self.size;
        let mut report = LawReport::new();
        for x in 0..n {
            report.expect(q.leq(q.unit(), self.a(x, x)), Law::Reflexivity, &[x]);
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    report.expect(
                        q.leq(q.tensor(self.a(y, z), self.a(x, y)), self.a(x, z)),
                        Law::Transitivity,
                        &[x, y, z],
                    );
                }
            }
        }
        report
    }

    pub fn is_valid(&self) -> bool {
        self.check_laws().is_ok()
    }

    /// First pair `x ≠ y` with `k ≤ a(x,y)` and `k ≤ a(y,x)`.
    pub fn separation_witness(&self) -> Option<(usize, usize)> {
        let q = &self.quantale;
        let k = q.unit();
        (0..self.size)
            .flat_map(|x| (x + 1..self.size).map(move |y| (x, y)))
            .find(|&(x, y)| q.leq(k, self.a(x, y)) && q.leq(k, self.a(y, x)))
    }

    pub fn is_separated(&self) -> bool {
        self.separation_witness().is_none()
    }

    /// Whether `psi` is a V-functor into `(V, hom)`, i.e.
    /// `a(x,y) ≤ hom(psi(x), psi(y))` everywhere.
    pub fn is_vfunctor_to_v(&self, psi: &VMap) -> bool {
        let q = &self.quantale;
        psi.len() == self.size
            && (0..self.size).all(|x| (0..self.size).all(|y| q.leq(self.a(x, y), q.hom(psi.get(x), psi.get(y)))))
    }
}

/// Lists every pair with `a(x,y) ≰ b(f x, f y)`.
pub fn check_vfunctor(f: &FiniteMap, source: &VCategory, target: &VCategory) -> Result<LawReport> {
    if source.quantale != target.quantale {
        return Err(Error::IncompatibleStructures(format!(
            "V-categories over {} and {}",
            source.quantale.name(),
            target.quantale.name()
        )));
    }
    if f.source() != source.size || f.target() != target.size {
        return Err(Error::MalformedInput(format!(
            "map {f:?} does not run from {} to {} points",
            source.size, target.size
        )));
    }
    let q = &source.quantale;
    let mut report = LawReport::new();
    for x in 0..source.size {
        for y in 0..source.size {
            report.expect(
                q.leq(source.a(x, y), target.a(f.apply(x), f.apply(y))),
                Law::FunctorInequality,
                &[x, y],
            );
        }
    }
    Ok(report)
}

fn check_map_shape(q: &Quantale, n: usize, map: &VMap) -> Result<()> {
    if map.len() != n {
        return Err(Error::MalformedInput(format!(
            "map {map:?} is not defined on {n} points"
        )));
    }
    if let Some(bad) = map.0.iter().find(|e| e.0 >= q.size()) {
        return Err(Error::InvalidElement {
            rank: bad.0,
            size: q.size(),
        });
    }
    Ok(())
}

/// The initial structure `a(x,y) = ⋀_{φ ∈ S} hom(φ(x), φ(y))`; an empty
/// family yields the constant-top matrix.
pub fn initial_structure(quantale: &Arc<Quantale>, size: usize, maps: &[VMap]) -> Result<VCategory> {
    for phi in maps {
        check_map_shape(quantale, size, phi)?;
    }
    let q = quantale.clone();
    Ok(VCategory::from_fn(quantale.clone(), size, |x, y| {
        q.meet_all(maps.iter().map(|phi| q.hom(phi.get(x), phi.get(y))))
    }))
}

/// Depth-first search over `V^n` keeping only assignments accepted by
/// `pair_ok(i, j, value_i, value_j)` on every assigned pair. Results come
/// out in lexicographic order.
fn search_maps(q: &Quantale, n: usize, pair_ok: impl Fn(usize, usize, Elem, Elem) -> bool) -> Vec<VMap> {
    fn go(
        q: &Quantale,
        n: usize,
        values: &mut Vec<Elem>,
        pair_ok: &dyn Fn(usize, usize, Elem, Elem) -> bool,
        out: &mut Vec<VMap>,
    ) {
        let i = values.len();
        if i == n {
            out.push(VMap(values.clone()));
            return;
        }
        for v in q.elements() {
            let consistent =
                pair_ok(i, i, v, v) && (0..i).all(|j| pair_ok(i, j, v, values[j]) && pair_ok(j, i, values[j], v));
            if consistent {
                values.push(v);
                go(q, n, values, pair_ok, out);
                values.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(q, n, &mut Vec::with_capacity(n), &pair_ok, &mut out);
    out
}

/// Every V-functor `X → (V, hom)`, in lexicographic order.
pub fn enumerate_vfunctors_to_v(cat: &VCategory) -> Vec<VMap> {
    let q = &cat.quantale;
    search_maps(q, cat.size, |x, y, vx, vy| q.leq(cat.a(x, y), q.hom(vx, vy)))
}

/// Every contravariant V-functor `X → (V, hom)`, i.e. maps with
/// `ψ(y) ⊗ a(x,y) ≤ ψ(x)`.
pub fn enumerate_contravariant_modules(cat: &VCategory) -> Vec<VMap> {
    let q = &cat.quantale;
    search_maps(q, cat.size, |x, y, vx, vy| q.leq(q.tensor(vy, cat.a(x, y)), vx))
}

/// Checks `ψ(x) = ⋁_y ψ(y) ⊗ a(y, x)` at every point. A `psi` that is not
/// a V-functor is reported as a precondition violation.
pub fn expansion_identity_check(cat: &VCategory, psi: &VMap) -> Result<LawReport> {
    let q = &cat.quantale;
    check_map_shape(q, cat.size, psi)?;
    let mut report = LawReport::new();
    if !cat.is_vfunctor_to_v(psi) {
        report.violate_with(Law::Precondition, &psi.ranks(), "not a V-functor into (V, hom)");
        return Ok(report);
    }
    for x in 0..cat.size {
        let expanded = q.join_all((0..cat.size).map(|y| q.tensor(psi.get(y), cat.a(y, x))));
        report.expect(expanded == psi.get(x), Law::Expansion, &[x]);
    }
    Ok(report)
}

/// The four conditions making `(phi, psi)` an adjoint pair of modules:
/// covariant law for `phi`, contravariant law for `psi`, the unit
/// `k ≤ ⋁_x phi(x) ⊗ psi(x)` and the counit `psi(x) ⊗ phi(y) ≤ a(x,y)`.
pub fn adjoint_pair_report(cat: &VCategory, phi: &VMap, psi: &VMap) -> Result<LawReport> {
    let q = &cat.quantale;
    let n = cat.size;
    check_map_shape(q, n, phi)?;
    check_map_shape(q, n, psi)?;
    let mut report = LawReport::new();
    for x in 0..n {
        for y in 0..n {
            report.expect(
                q.leq(q.tensor(cat.a(x, y), phi.get(x)), phi.get(y)),
                Law::CovariantModule,
                &[x, y],
            );
            report.expect(
                q.leq(q.tensor(psi.get(y), cat.a(x, y)), psi.get(x)),
                Law::ContravariantModule,
                &[x, y],
            );
            report.expect(
                q.leq(q.tensor(psi.get(x), phi.get(y)), cat.a(x, y)),
                Law::AdjointCounit,
                &[x, y],
            );
        }
    }
    let unit = q.join_all((0..n).map(|x| q.tensor(phi.get(x), psi.get(x))));
    report.expect(q.leq(q.unit(), unit), Law::AdjointUnit, &[]);
    Ok(report)
}

/// The pair `(a(x0, -), a(-, x0))` represented by a point.
pub fn representable_pair(cat: &VCategory, x0: usize) -> (VMap, VMap) {
    (cat.row(x0), cat.column(x0))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CauchyReport {
    pub complete: bool,
    pub adjoint_pairs: usize,
    pub non_representable: Vec<(VMap, VMap)>,
}

/// Enumerates all adjoint module pairs and reports those not represented by
/// any point.
pub fn cauchy_completeness(cat: &VCategory) -> CauchyReport {
    let q = &cat.quantale;
    let n = cat.size;
    let covariant = enumerate_vfunctors_to_v(cat);
    let contravariant = enumerate_contravariant_modules(cat);
    let representables: BTreeSet<(VMap, VMap)> = (0..n).map(|x| representable_pair(cat, x)).collect();
    let mut adjoint_pairs = 0;
    let mut non_representable = Vec::new();
    for phi in &covariant {
        for psi in &contravariant {
            let unit = q.join_all((0..n).map(|x| q.tensor(phi.get(x), psi.get(x))));
            if !q.leq(q.unit(), unit) {
                continue;
            }
            let counit = (0..n).all(|x| (0..n).all(|y| q.leq(q.tensor(psi.get(x), phi.get(y)), cat.a(x, y))));
            if !counit {
                continue;
            }
            adjoint_pairs += 1;
            let pair = (phi.clone(), psi.clone());
            if !representables.contains(&pair) {
                non_representable.push(pair);
            }
        }
    }
    CauchyReport {
        complete: non_representable.is_empty(),
        adjoint_pairs,
        non_representable,
    }
}

pub fn is_cauchy_complete(cat: &VCategory) -> bool {
    cauchy_completeness(cat).complete
}

/// Input to [`roundtrip_iso_check`].
#[derive(Debug, Clone, Copy)]
pub enum IsoObject<'a> {
    Category(&'a VCategory),
    Affine(&'a AffineSet),
}

/// Checks one direction of the isomorphism between V-categories and affine
/// sets over `(V, hom)`.
///
/// For a V-category, sending it to its V-functors into `V` and back to the
/// initial structure must reproduce the matrix. For an affine set, taking
/// the initial structure and then its V-functors must reproduce `S`; this
/// requires `S` to be closed under the pointwise enriched operations.
pub fn roundtrip_iso_check(quantale: &Arc<Quantale>, object: IsoObject<'_>) -> Result<LawReport> {
    let mut report = LawReport::new();
    match object {
        IsoObject::Category(cat) => {
            if cat.quantale != *quantale {
                return Err(Error::IncompatibleStructures(format!(
                    "V-category over {} checked against {}",
                    cat.quantale.name(),
                    quantale.name()
                )));
            }
            let laws = cat.check_laws();
            if !laws.is_ok() {
                return Err(Error::PreconditionViolation(format!("not a V-category: {laws}")));
            }
            let functors = enumerate_vfunctors_to_v(cat);
            let back = initial_structure(quantale, cat.size, &functors)?;
            for x in 0..cat.size {
                for y in 0..cat.size {
                    report.expect(back.a(x, y) == cat.a(x, y), Law::RoundtripGF, &[x, y]);
                }
            }
        }
        IsoObject::Affine(set) => {
            let maps = set.as_vmaps(quantale)?;
            let closed = affine::generate_vccd_closure(quantale, set.points(), &maps, affine::DEFAULT_CAP)?;
            if closed.maps().len() != set.maps().len() {
                return Err(Error::PreconditionViolation(format!(
                    "S has {} members but its enriched closure has {}",
                    set.maps().len(),
                    closed.maps().len()
                )));
            }
            let cat = initial_structure(quantale, set.points(), &maps)?;
            let functors: BTreeSet<VMap> = enumerate_vfunctors_to_v(&cat).into_iter().collect();
            let original: BTreeSet<VMap> = maps.into_iter().collect();
            for (i, psi) in functors.symmetric_difference(&original).enumerate() {
                report.violate_with(
                    Law::RoundtripFG,
                    &[i],
                    format!("{psi:?} lies in only one of S and V-Cat(X, V)"),
                );
            }
            report.checked += original.len().max(functors.len()) as u64;
        }
    }
    Ok(report)
}

/// Every valid V-category structure on `size` points, by brute force over
/// all `|V|^(size²)` matrices.
pub fn all_vcategories(quantale: &Arc<Quantale>, size: usize) -> Result<Vec<VCategory>> {
    let cells = size * size;
    let total = crate::finmap::checked_power(quantale.size(), cells, 1 << 22)?;
    let mut out = Vec::new();
    for code in 0..total {
        let digits = crate::finmap::decode_function(code, quantale.size(), cells);
        let cat = VCategory {
            quantale: quantale.clone(),
            size,
            matrix: digits.into_iter().map(Elem).collect(),
        };
        if cat.is_valid() {
            out.push(cat);
        }
    }
    Ok(out)
}

/// `count` valid structures on `size` points, each the least V-category
/// above a random matrix whose cells are bottom with probability one half
/// and uniform otherwise. Deterministic in `seed`.
pub fn sample_vcategories(quantale: &Arc<Quantale>, size: usize, count: usize, seed: u64) -> Vec<VCategory> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let rows = (0..size)
                .map(|_| {
                    (0..size)
                        .map(|_| {
                            if rng.gen_bool(0.5) {
                                quantale.bottom()
                            } else {
                                Elem(rng.gen_range(0..quantale.size()))
                            }
                        })
                        .collect()
                })
                .collect();
            VCategory::generated_by(quantale.clone(), rows).expect("square matrix of valid ranks")
        })
        .collect()
}
