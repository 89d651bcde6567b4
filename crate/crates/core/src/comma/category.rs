//! Finite categories presented as oracles, and the built-in instances the
//! comma constructions are exercised on.
//!
//! Morphisms are always carried as [`FiniteMap`]s; each category decides
//! how a map represents one of its arrows and how arrows compose.

use std::fmt;

use crate::algebra::FinAlgebra;
use crate::error::{Error, Result};
use crate::finmap::{decode_function, encode_function, FiniteMap};

pub trait Category {
    type Object: Clone + PartialEq + fmt::Debug;

    fn name(&self) -> &str;

    fn identity(&self, x: &Self::Object) -> FiniteMap;

    /// `second ∘ first`.
    fn compose(&self, first: &FiniteMap, second: &FiniteMap) -> FiniteMap;

    fn is_morphism(&self, from: &Self::Object, to: &Self::Object, f: &FiniteMap) -> bool;

    /// Every morphism `from → to`, in a deterministic order.
    fn morphisms(&self, from: &Self::Object, to: &Self::Object) -> Result<Vec<FiniteMap>>;
}

#[derive(Debug, Clone)]
pub struct Product<O> {
    pub object: O,
    pub first: FiniteMap,
    pub second: FiniteMap,
}

pub trait HasProducts: Category {
    fn product(&self, x: &Self::Object, y: &Self::Object) -> Result<Product<Self::Object>>;

    /// `⟨f, g⟩` into a product computed by [`HasProducts::product`].
    fn pairing(&self, product: &Product<Self::Object>, f: &FiniteMap, g: &FiniteMap) -> Result<FiniteMap>;
}

#[derive(Debug, Clone)]
pub struct Coproduct<O> {
    pub object: O,
    pub first: FiniteMap,
    pub second: FiniteMap,
}

pub trait HasCoproducts: Category {
    fn coproduct(&self, x: &Self::Object, y: &Self::Object) -> Result<Coproduct<Self::Object>>;

    /// `[f, g]` out of a coproduct computed by [`HasCoproducts::coproduct`].
    fn copairing(&self, coproduct: &Coproduct<Self::Object>, f: &FiniteMap, g: &FiniteMap) -> Result<FiniteMap>;
}

/// `f = mono ∘ epi` with `epi` surjective and `mono` injective.
#[derive(Debug, Clone)]
pub struct Factorization<O> {
    pub image: O,
    pub epi: FiniteMap,
    pub mono: FiniteMap,
}

pub trait HasImages: Category {
    fn factorize(&self, from: &Self::Object, to: &Self::Object, f: &FiniteMap) -> Result<Factorization<Self::Object>>;
}

/// A functor `I: B → A` given by its action on objects and morphisms.
pub trait FunctorOracle {
    type Source: Category;
    type Target: Category;

    fn source(&self) -> &Self::Source;

    fn target(&self) -> &Self::Target;

    fn on_object(&self, b: &SourceObj<Self>) -> Result<TargetObj<Self>>;

    fn on_morphism(&self, from: &SourceObj<Self>, to: &SourceObj<Self>, h: &FiniteMap) -> Result<FiniteMap>;
}

pub type SourceObj<I> = <<I as FunctorOracle>::Source as Category>::Object;
pub type TargetObj<I> = <<I as FunctorOracle>::Target as Category>::Object;

/// Left adjoint data `J ⊣ I` with unit `η`.
pub trait LeftAdjointOracle: FunctorOracle {
    fn left_object(&self, a: &TargetObj<Self>) -> Result<SourceObj<Self>>;

    fn left_morphism(&self, from: &TargetObj<Self>, to: &TargetObj<Self>, f: &FiniteMap) -> Result<FiniteMap>;

    /// `η_A: A → I J A`.
    fn unit(&self, a: &TargetObj<Self>) -> Result<FiniteMap>;

    /// The adjunct `J A → B` of `g: A → I B`.
    fn transpose(&self, a: &TargetObj<Self>, b: &SourceObj<Self>, g: &FiniteMap) -> Result<FiniteMap>;
}

/// Finite pointed sets; an object is its size, the base point is `0`.
#[derive(Debug, Clone, Copy, Default)]
pub struct PointedSets;

impl Category for PointedSets {
    type Object = usize;

    fn name(&self) -> &str {
        "pointed_sets"
    }

    fn identity(&self, x: &usize) -> FiniteMap {
        FiniteMap::identity(*x)
    }

    fn compose(&self, first: &FiniteMap, second: &FiniteMap) -> FiniteMap {
        first.then(second)
    }

    fn is_morphism(&self, from: &usize, to: &usize, f: &FiniteMap) -> bool {
        *from > 0 && f.source() == *from && f.target() == *to && f.apply(0) == 0
    }

    fn morphisms(&self, from: &usize, to: &usize) -> Result<Vec<FiniteMap>> {
        if *from == 0 || *to == 0 {
            return Err(Error::MalformedInput("pointed sets are nonempty".into()));
        }
        Ok(FiniteMap::all(from - 1, *to)
            .map(|rest| {
                let mut image = vec![0];
                image.extend_from_slice(rest.image());
                FiniteMap::new_unchecked(*to, image)
            })
            .collect())
    }
}

impl HasProducts for PointedSets {
    fn product(&self, x: &usize, y: &usize) -> Result<Product<usize>> {
        let n = x * y;
        Ok(Product {
            object: n,
            first: FiniteMap::new_unchecked(*x, (0..n).map(|p| p / y).collect()),
            second: FiniteMap::new_unchecked(*y, (0..n).map(|p| p % y).collect()),
        })
    }

    fn pairing(&self, product: &Product<usize>, f: &FiniteMap, g: &FiniteMap) -> Result<FiniteMap> {
        pair_maps(product.object, f, g)
    }
}

fn pair_maps(object: usize, f: &FiniteMap, g: &FiniteMap) -> Result<FiniteMap> {
    if f.source() != g.source() || f.target() * g.target() != object {
        return Err(Error::IncompatibleStructures(format!("cannot pair {f:?} with {g:?}")));
    }
    let n = g.target();
    FiniteMap::new(object, (0..f.source()).map(|x| f.apply(x) * n + g.apply(x)).collect())
}

impl HasCoproducts for PointedSets {
    /// The wedge sum: both base points are identified.
    fn coproduct(&self, x: &usize, y: &usize) -> Result<Coproduct<usize>> {
        let n = x + y - 1;
        Ok(Coproduct {
            object: n,
            first: FiniteMap::new_unchecked(n, (0..*x).collect()),
            second: FiniteMap::new_unchecked(n, (0..*y).map(|j| if j == 0 { 0 } else { x - 1 + j }).collect()),
        })
    }

    fn copairing(&self, coproduct: &Coproduct<usize>, f: &FiniteMap, g: &FiniteMap) -> Result<FiniteMap> {
        let x = coproduct.first.source();
        if f.source() != x || g.source() != coproduct.second.source() || f.target() != g.target() {
            return Err(Error::IncompatibleStructures(format!("cannot copair {f:?} with {g:?}")));
        }
        Ok(FiniteMap::new_unchecked(
            f.target(),
            (0..coproduct.object)
                .map(|i| if i < x { f.apply(i) } else { g.apply(i + 1 - x) })
                .collect(),
        ))
    }
}

impl HasImages for PointedSets {
    fn factorize(&self, _from: &usize, _to: &usize, f: &FiniteMap) -> Result<Factorization<usize>> {
        Ok(range_factorization(f, |r| r.len()))
    }
}

fn range_factorization<O>(f: &FiniteMap, object: impl FnOnce(&[usize]) -> O) -> Factorization<O> {
    let range = f.range();
    let epi = FiniteMap::new_unchecked(
        range.len(),
        f.image()
            .iter()
            .map(|y| range.binary_search(y).expect("in range"))
            .collect(),
    );
    let image = object(&range);
    let mono = FiniteMap::new_unchecked(f.target(), range);
    Factorization { image, epi, mono }
}

/// Finite algebras of one signature with homomorphisms, e.g. bounded
/// distributive lattices.
#[derive(Debug, Clone)]
pub struct Variety {
    name: String,
    cap: usize,
}

impl Variety {
    pub fn new(name: &str) -> Self {
        Self {
            name: name.to_string(),
            cap: 1 << 20,
        }
    }

    pub fn bounded_distributive_lattices() -> Self {
        Self::new("bounded_distributive_lattices")
    }
}

impl Category for Variety {
    type Object = FinAlgebra;

    fn name(&self) -> &str {
        &self.name
    }

    fn identity(&self, x: &FinAlgebra) -> FiniteMap {
        FiniteMap::identity(x.size())
    }

    fn compose(&self, first: &FiniteMap, second: &FiniteMap) -> FiniteMap {
        first.then(second)
    }

    fn is_morphism(&self, from: &FinAlgebra, to: &FinAlgebra, f: &FiniteMap) -> bool {
        from.is_homomorphism(to, f)
    }

    fn morphisms(&self, from: &FinAlgebra, to: &FinAlgebra) -> Result<Vec<FiniteMap>> {
        from.homomorphisms(to, self.cap)
    }
}

impl HasProducts for Variety {
    fn product(&self, x: &FinAlgebra, y: &FinAlgebra) -> Result<Product<FinAlgebra>> {
        let (object, first, second) = x.product(y)?;
        Ok(Product { object, first, second })
    }

    fn pairing(&self, product: &Product<FinAlgebra>, f: &FiniteMap, g: &FiniteMap) -> Result<FiniteMap> {
        pair_maps(product.object.size(), f, g)
    }
}

impl HasImages for Variety {
    fn factorize(&self, _from: &FinAlgebra, to: &FinAlgebra, f: &FiniteMap) -> Result<Factorization<FinAlgebra>> {
        let range = f.range();
        let (image, mono) = to.subalgebra(&range)?;
        let Factorization { epi, .. } = range_factorization(f, |_| ());
        Ok(Factorization { image, epi, mono })
    }
}

/// The opposite of finite sets. An arrow `X → Y` is carried by the
/// underlying function `Y → X`.
#[derive(Debug, Clone, Copy, Default)]
pub struct SetOp;

impl Category for SetOp {
    type Object = usize;

    fn name(&self) -> &str {
        "set_op"
    }

    fn identity(&self, x: &usize) -> FiniteMap {
        FiniteMap::identity(*x)
    }

    fn compose(&self, first: &FiniteMap, second: &FiniteMap) -> FiniteMap {
        second.then(first)
    }

    fn is_morphism(&self, from: &usize, to: &usize, f: &FiniteMap) -> bool {
        f.source() == *to && f.target() == *from
    }

    fn morphisms(&self, from: &usize, to: &usize) -> Result<Vec<FiniteMap>> {
        Ok(FiniteMap::all(*to, *from).collect())
    }
}

impl HasCoproducts for SetOp {
    /// The cartesian product of sets, with the projections as coprojections.
    fn coproduct(&self, x: &usize, y: &usize) -> Result<Coproduct<usize>> {
        let n = x * y;
        Ok(Coproduct {
            object: n,
            first: FiniteMap::new_unchecked(*x, (0..n).map(|p| p / y).collect()),
            second: FiniteMap::new_unchecked(*y, (0..n).map(|p| p % y).collect()),
        })
    }

    fn copairing(&self, coproduct: &Coproduct<usize>, f: &FiniteMap, g: &FiniteMap) -> Result<FiniteMap> {
        pair_maps(coproduct.object, f, g)
    }
}

/// The identity functor of a category, its own left adjoint.
#[derive(Debug, Clone)]
pub struct IdentityFunctor<C>(pub C);

impl<C: Category> FunctorOracle for IdentityFunctor<C> {
    type Source = C;
    type Target = C;

    fn source(&self) -> &C {
        &self.0
    }

    fn target(&self) -> &C {
        &self.0
    }

    fn on_object(&self, b: &C::Object) -> Result<C::Object> {
        Ok(b.clone())
    }

    fn on_morphism(&self, _from: &C::Object, _to: &C::Object, h: &FiniteMap) -> Result<FiniteMap> {
        Ok(h.clone())
    }
}

impl<C: Category> LeftAdjointOracle for IdentityFunctor<C> {
    fn left_object(&self, a: &C::Object) -> Result<C::Object> {
        Ok(a.clone())
    }

    fn left_morphism(&self, _from: &C::Object, _to: &C::Object, f: &FiniteMap) -> Result<FiniteMap> {
        Ok(f.clone())
    }

    fn unit(&self, a: &C::Object) -> Result<FiniteMap> {
        Ok(self.0.identity(a))
    }

    fn transpose(&self, _a: &C::Object, _b: &C::Object, g: &FiniteMap) -> Result<FiniteMap> {
        Ok(g.clone())
    }
}

/// `I: Set^op → A`, `X ↦ A^X` for a fixed finite algebra `A`, with left
/// adjoint the hom-functor `J = hom(-, A)`.
#[derive(Debug, Clone)]
pub struct PowerFunctor {
    algebra: FinAlgebra,
    variety: Variety,
    cap: usize,
}

impl PowerFunctor {
    pub fn new(algebra: FinAlgebra) -> Self {
        let variety = Variety::new(&format!("variety({})", algebra.name()));
        Self {
            algebra,
            variety,
            cap: 1 << 12,
        }
    }

    pub fn algebra(&self) -> &FinAlgebra {
        &self.algebra
    }

    fn points_of(&self, a: &FinAlgebra) -> Result<Vec<FiniteMap>> {
        a.homomorphisms(&self.algebra, self.cap)
    }
}

impl FunctorOracle for PowerFunctor {
    type Source = SetOp;
    type Target = Variety;

    fn source(&self) -> &SetOp {
        &SetOp
    }

    fn target(&self) -> &Variety {
        &self.variety
    }

    fn on_object(&self, x: &usize) -> Result<FinAlgebra> {
        self.algebra.power(*x, self.cap)
    }

    /// For `h: X → Y` in `Set^op`, i.e. a function `Y → X`, precomposition
    /// `A^X → A^Y`.
    fn on_morphism(&self, from: &usize, to: &usize, h: &FiniteMap) -> Result<FiniteMap> {
        if !SetOp.is_morphism(from, to, h) {
            return Err(Error::IncompatibleStructures(format!(
                "{h:?} is not an arrow {from} → {to} of Set^op"
            )));
        }
        let base = self.algebra.size();
        let source = crate::finmap::checked_power(base, *from, self.cap)?;
        let target = crate::finmap::checked_power(base, *to, self.cap)?;
        let image = (0..source)
            .map(|code| {
                let phi = decode_function(code, base, *from);
                let pulled: Vec<usize> = h.image().iter().map(|&x| phi[x]).collect();
                encode_function(&pulled, base)
            })
            .collect();
        FiniteMap::new(target, image)
    }
}

impl LeftAdjointOracle for PowerFunctor {
    fn left_object(&self, a: &FinAlgebra) -> Result<usize> {
        Ok(self.points_of(a)?.len())
    }

    /// For `f: A → A'`, the `Set^op` arrow `hom(A, 2) → hom(A', 2)`,
    /// carried by `φ ↦ φ ∘ f`.
    fn left_morphism(&self, from: &FinAlgebra, to: &FinAlgebra, f: &FiniteMap) -> Result<FiniteMap> {
        let source_points = self.points_of(from)?;
        let target_points = self.points_of(to)?;
        let image = target_points
            .iter()
            .map(|phi| {
                let composite = f.then(phi);
                source_points
                    .binary_search(&composite)
                    .map_err(|_| Error::PreconditionViolation(format!("{f:?} is not a homomorphism")))
            })
            .collect::<Result<Vec<_>>>()?;
        FiniteMap::new(source_points.len(), image)
    }

    /// `a ↦ (φ ↦ φ(a))`.
    fn unit(&self, a: &FinAlgebra) -> Result<FiniteMap> {
        let points = self.points_of(a)?;
        let base = self.algebra.size();
        let target = crate::finmap::checked_power(base, points.len(), self.cap)?;
        let image = (0..a.size())
            .map(|x| {
                let values: Vec<usize> = points.iter().map(|phi| phi.apply(x)).collect();
                encode_function(&values, base)
            })
            .collect();
        FiniteMap::new(target, image)
    }

    /// For `g: A → A^X`, the function `X → hom(A, 2)`, `x ↦ (a ↦ g(a)(x))`.
    fn transpose(&self, a: &FinAlgebra, x: &usize, g: &FiniteMap) -> Result<FiniteMap> {
        let points = self.points_of(a)?;
        let base = self.algebra.size();
        let image = (0..*x)
            .map(|point| {
                let evaluation = FiniteMap::new_unchecked(
                    base,
                    g.image()
                        .iter()
                        .map(|&code| decode_function(code, base, *x)[point])
                        .collect(),
                );
                points
                    .binary_search(&evaluation)
                    .map_err(|_| Error::PreconditionViolation(format!("{g:?} is not a homomorphism into A^{x}")))
            })
            .collect::<Result<Vec<_>>>()?;
        FiniteMap::new(points.len(), image)
    }
}
