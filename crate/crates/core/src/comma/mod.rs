//! Comma categories `A↓I` over a functor oracle `I: B → A`: the right
//! adjoint `R` and left adjoint `L` of the forgetful functor
//! `F: A↓I → A × B` with their units, the regular epireflection onto
//! objects with monic structure map, and split coequalizer pairs.

pub mod category;
pub mod split;

use crate::error::{Error, Result};
use crate::finmap::FiniteMap;
use crate::report::{Law, LawReport};

pub use category::{
    Category, Coproduct, Factorization, FunctorOracle, HasCoproducts, HasImages, HasProducts, IdentityFunctor,
    LeftAdjointOracle, PointedSets, PowerFunctor, Product, SetOp, SourceObj, TargetObj, Variety,
};
pub use split::{find_split_structure, split_coequalizer_check, SplitStructure};

/// An object `g: A → I B` of the comma category.
#[derive(Debug, Clone, PartialEq)]
pub struct CommaObject<A, B> {
    pub a: A,
    pub b: B,
    pub g: FiniteMap,
}

pub type CommaObj<I> = CommaObject<TargetObj<I>, SourceObj<I>>;

/// A morphism `(f, h)` with `I(h) ∘ g = g' ∘ f`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CommaMorphism {
    pub f: FiniteMap,
    pub h: FiniteMap,
}

/// Checks that `g` is a morphism `A → I B`.
pub fn check_comma_object<I: FunctorOracle>(oracle: &I, object: &CommaObj<I>) -> Result<LawReport> {
    let ib = oracle.on_object(&object.b)?;
    let mut report = LawReport::new();
    report.expect(
        oracle.target().is_morphism(&object.a, &ib, &object.g),
        Law::Homomorphism,
        &[],
    );
    Ok(report)
}

/// Checks that `(f, h)` is a morphism `source → target` of `A↓I`.
pub fn check_comma_morphism<I: FunctorOracle>(
    oracle: &I,
    source: &CommaObj<I>,
    target: &CommaObj<I>,
    m: &CommaMorphism,
) -> Result<LawReport> {
    let a_cat = oracle.target();
    let mut report = LawReport::new();
    let f_ok = report.expect(a_cat.is_morphism(&source.a, &target.a, &m.f), Law::Homomorphism, &[0]);
    let h_ok = report.expect(
        oracle.source().is_morphism(&source.b, &target.b, &m.h),
        Law::Homomorphism,
        &[1],
    );
    if f_ok && h_ok {
        let ih = oracle.on_morphism(&source.b, &target.b, &m.h)?;
        let left = a_cat.compose(&source.g, &ih);
        let right = a_cat.compose(&m.f, &target.g);
        report.expect(left == right, Law::CommaSquare, &[]);
    }
    Ok(report)
}

/// Every morphism `source → target` of `A↓I`, by enumerating both legs.
pub fn comma_morphisms<I: FunctorOracle>(
    oracle: &I,
    source: &CommaObj<I>,
    target: &CommaObj<I>,
) -> Result<Vec<CommaMorphism>> {
    let a_cat = oracle.target();
    let fs = a_cat.morphisms(&source.a, &target.a)?;
    let mut out = Vec::new();
    for h in oracle.source().morphisms(&source.b, &target.b)? {
        let ih = oracle.on_morphism(&source.b, &target.b, &h)?;
        let left = a_cat.compose(&source.g, &ih);
        for f in &fs {
            if a_cat.compose(f, &target.g) == left {
                out.push(CommaMorphism {
                    f: f.clone(),
                    h: h.clone(),
                });
            }
        }
    }
    Ok(out)
}

/// `R(A, B) = (π₂: A × I B → I B)`, together with the product used.
pub fn right_adjoint<I>(oracle: &I, a: &TargetObj<I>, b: &SourceObj<I>) -> Result<(CommaObj<I>, Product<TargetObj<I>>)>
where
    I: FunctorOracle,
    I::Target: HasProducts,
{
    let ib = oracle.on_object(b)?;
    let product = oracle.target().product(a, &ib)?;
    let object = CommaObject {
        a: product.object.clone(),
        b: b.clone(),
        g: product.second.clone(),
    };
    Ok((object, product))
}

/// `R(f, h) = (f × I h, h)`.
pub fn right_adjoint_on_morphism<I>(
    oracle: &I,
    (a, b): (&TargetObj<I>, &SourceObj<I>),
    (a2, b2): (&TargetObj<I>, &SourceObj<I>),
    f: &FiniteMap,
    h: &FiniteMap,
) -> Result<CommaMorphism>
where
    I: FunctorOracle,
    I::Target: HasProducts,
{
    let a_cat = oracle.target();
    let (_, p) = right_adjoint(oracle, a, b)?;
    let (_, p2) = right_adjoint(oracle, a2, b2)?;
    let ih = oracle.on_morphism(b, b2, h)?;
    let left = a_cat.compose(&p.first, f);
    let right = a_cat.compose(&p.second, &ih);
    Ok(CommaMorphism {
        f: a_cat.pairing(&p2, &left, &right)?,
        h: h.clone(),
    })
}

/// `γ_g = (⟨1_A, g⟩, 1_B): g → R F g`.
pub fn unit_gamma<I>(oracle: &I, g: &CommaObj<I>) -> Result<CommaMorphism>
where
    I: FunctorOracle,
    I::Target: HasProducts,
{
    let (_, product) = right_adjoint(oracle, &g.a, &g.b)?;
    let a_cat = oracle.target();
    Ok(CommaMorphism {
        f: a_cat.pairing(&product, &a_cat.identity(&g.a), &g.g)?,
        h: oracle.source().identity(&g.b),
    })
}

/// Verifies that `γ_g` is a comma morphism `g → R F g` and both triangle
/// identities of `F ⊣ R` at `g`, using the counit
/// `ε_(A,B) = (π₁, 1_B): F R (A, B) → (A, B)`.
pub fn unit_gamma_check<I>(oracle: &I, g: &CommaObj<I>) -> Result<LawReport>
where
    I: FunctorOracle,
    I::Target: HasProducts,
{
    let a_cat = oracle.target();
    let b_cat = oracle.source();
    let mut report = check_comma_object(oracle, g)?;
    if !report.is_ok() {
        return Err(Error::PreconditionViolation(format!(
            "structure map {:?} is not a morphism A → IB",
            g.g
        )));
    }
    let (r, product) = right_adjoint(oracle, &g.a, &g.b)?;
    let gamma = unit_gamma(oracle, g)?;
    report.merge(check_comma_morphism(oracle, g, &r, &gamma)?);

    // ε_{Fg} ∘ F γ_g = 1_{Fg}
    let back = a_cat.compose(&gamma.f, &product.first);
    report.expect(back == a_cat.identity(&g.a), Law::TriangleIdentity, &[0]);
    report.expect(
        b_cat.compose(&gamma.h, &b_cat.identity(&g.b)) == b_cat.identity(&g.b),
        Law::TriangleIdentity,
        &[1],
    );

    // R ε_(A,B) ∘ γ_{R(A,B)} = 1_{R(A,B)}
    let gamma_r = unit_gamma(oracle, &r)?;
    let r_eps = right_adjoint_on_morphism(
        oracle,
        (&r.a, &r.b),
        (&g.a, &g.b),
        &product.first,
        &b_cat.identity(&g.b),
    )?;
    let composite = a_cat.compose(&gamma_r.f, &r_eps.f);
    report.expect(composite == a_cat.identity(&r.a), Law::TriangleIdentity, &[2]);
    Ok(report)
}

/// Universal property of `γ_g` against one target `(A', B')`: every pair
/// `(f: A → A', h: B → B')` has exactly one comma morphism
/// `t: g → R(A', B')` with `ε ∘ F t = (f, h)`, namely `(⟨f, I h ∘ g⟩, h)`.
pub fn right_universal_check<I>(oracle: &I, g: &CommaObj<I>, a2: &TargetObj<I>, b2: &SourceObj<I>) -> Result<LawReport>
where
    I: FunctorOracle,
    I::Target: HasProducts,
{
    let a_cat = oracle.target();
    let (r2, p2) = right_adjoint(oracle, a2, b2)?;
    let candidates = comma_morphisms(oracle, g, &r2)?;
    let mut report = LawReport::new();
    for (i, f) in a_cat.morphisms(&g.a, a2)?.iter().enumerate() {
        for (j, h) in oracle.source().morphisms(&g.b, b2)?.iter().enumerate() {
            let ih = oracle.on_morphism(&g.b, b2, h)?;
            let transpose = CommaMorphism {
                f: a_cat.pairing(&p2, f, &a_cat.compose(&g.g, &ih))?,
                h: h.clone(),
            };
            let valid = check_comma_morphism(oracle, g, &r2, &transpose)?.is_ok();
            report.expect(valid, Law::UniversalExistence, &[i, j]);
            let matching = candidates
                .iter()
                .filter(|t| a_cat.compose(&t.f, &p2.first) == *f && t.h == *h)
                .count();
            report.expect(matching == 1, Law::UniversalUniqueness, &[i, j, matching]);
        }
    }
    Ok(report)
}

/// `L(A, B) = I(ι_{JA}) ∘ η_A: A → I(JA + B)`, with the coproduct used.
pub fn left_adjoint<I>(oracle: &I, a: &TargetObj<I>, b: &SourceObj<I>) -> Result<(CommaObj<I>, Coproduct<SourceObj<I>>)>
where
    I: LeftAdjointOracle,
    I::Source: HasCoproducts,
{
    let ja = oracle.left_object(a)?;
    let coproduct = oracle.source().coproduct(&ja, b)?;
    let eta = oracle.unit(a)?;
    let inject = oracle.on_morphism(&ja, &coproduct.object, &coproduct.first)?;
    let object = CommaObject {
        a: a.clone(),
        b: coproduct.object.clone(),
        g: oracle.target().compose(&eta, &inject),
    };
    Ok((object, coproduct))
}

/// `L(f, h) = (f, J f + h)`.
pub fn left_adjoint_on_morphism<I>(
    oracle: &I,
    (a, b): (&TargetObj<I>, &SourceObj<I>),
    (a2, b2): (&TargetObj<I>, &SourceObj<I>),
    f: &FiniteMap,
    h: &FiniteMap,
) -> Result<CommaMorphism>
where
    I: LeftAdjointOracle,
    I::Source: HasCoproducts,
{
    let b_cat = oracle.source();
    let (_, c) = left_adjoint(oracle, a, b)?;
    let (_, c2) = left_adjoint(oracle, a2, b2)?;
    let jf = oracle.left_morphism(a, a2, f)?;
    let left = b_cat.compose(&jf, &c2.first);
    let right = b_cat.compose(h, &c2.second);
    Ok(CommaMorphism {
        f: f.clone(),
        h: b_cat.copairing(&c, &left, &right)?,
    })
}

/// `ρ_(A,B) = (1_A, ι_B): (A, B) → F L (A, B)`, as a pair of maps.
pub fn unit_rho<I>(oracle: &I, a: &TargetObj<I>, b: &SourceObj<I>) -> Result<CommaMorphism>
where
    I: LeftAdjointOracle,
    I::Source: HasCoproducts,
{
    let (_, c) = left_adjoint(oracle, a, b)?;
    Ok(CommaMorphism {
        f: oracle.target().identity(a),
        h: c.second,
    })
}

/// Verifies `L(A, B)` and `ρ` at `(A, B) = F g`, the counit
/// `δ_g = (1_A, [g♯, 1_B]): L F g → g`, and both triangle identities of
/// `L ⊣ F`.
pub fn left_adjoint_check<I>(oracle: &I, g: &CommaObj<I>) -> Result<LawReport>
where
    I: LeftAdjointOracle,
    I::Source: HasCoproducts,
{
    let a_cat = oracle.target();
    let b_cat = oracle.source();
    let mut report = check_comma_object(oracle, g)?;
    if !report.is_ok() {
        return Err(Error::PreconditionViolation(format!(
            "structure map {:?} is not a morphism A → IB",
            g.g
        )));
    }
    let (l, c) = left_adjoint(oracle, &g.a, &g.b)?;
    report.merge(check_comma_object(oracle, &l)?);
    let rho = unit_rho(oracle, &g.a, &g.b)?;
    report.expect(a_cat.is_morphism(&g.a, &l.a, &rho.f), Law::Homomorphism, &[0]);
    report.expect(b_cat.is_morphism(&g.b, &l.b, &rho.h), Law::Homomorphism, &[1]);

    let sharp = oracle.transpose(&g.a, &g.b, &g.g)?;
    let ja = oracle.left_object(&g.a)?;
    let i_sharp = oracle.on_morphism(&ja, &g.b, &sharp)?;
    let eta = oracle.unit(&g.a)?;
    report.expect(a_cat.compose(&eta, &i_sharp) == g.g, Law::TransposeIdentity, &[]);

    let delta = CommaMorphism {
        f: a_cat.identity(&g.a),
        h: b_cat.copairing(&c, &sharp, &b_cat.identity(&g.b))?,
    };
    report.merge(check_comma_morphism(oracle, &l, g, &delta)?);

    // F δ_g ∘ ρ_{Fg} = 1_{Fg}
    report.expect(
        b_cat.compose(&rho.h, &delta.h) == b_cat.identity(&g.b),
        Law::TriangleIdentity,
        &[0],
    );

    // δ_{L(A,B)} ∘ L ρ_(A,B) = 1_{L(A,B)}
    let l_rho = left_adjoint_on_morphism(oracle, (&g.a, &g.b), (&g.a, &l.b), &rho.f, &rho.h)?;
    let (_, c2) = left_adjoint(oracle, &g.a, &l.b)?;
    let l_sharp = oracle.transpose(&l.a, &l.b, &l.g)?;
    let delta_l = b_cat.copairing(&c2, &l_sharp, &b_cat.identity(&l.b))?;
    report.expect(
        b_cat.compose(&l_rho.h, &delta_l) == b_cat.identity(&l.b),
        Law::TriangleIdentity,
        &[2],
    );
    Ok(report)
}

/// Universal property of `ρ_(A,B)` against a target comma object `g'`:
/// every `(f, h): (A, B) → F g'` factors through exactly one comma
/// morphism `L(A, B) → g'`.
pub fn left_universal_check<I>(
    oracle: &I,
    a: &TargetObj<I>,
    b: &SourceObj<I>,
    target: &CommaObj<I>,
) -> Result<LawReport>
where
    I: LeftAdjointOracle,
    I::Source: HasCoproducts,
{
    let b_cat = oracle.source();
    let (l, c) = left_adjoint(oracle, a, b)?;
    let candidates = comma_morphisms(oracle, &l, target)?;
    let mut report = LawReport::new();
    for (i, f) in oracle.target().morphisms(a, &target.a)?.iter().enumerate() {
        for (j, h) in b_cat.morphisms(b, &target.b)?.iter().enumerate() {
            let matching = candidates
                .iter()
                .filter(|m| m.f == *f && b_cat.compose(&c.second, &m.h) == *h)
                .count();
            report.expect(matching > 0, Law::UniversalExistence, &[i, j]);
            report.expect(matching <= 1, Law::UniversalUniqueness, &[i, j, matching]);
        }
    }
    Ok(report)
}

/// The reflection of a comma object into the full subcategory of objects
/// with monic structure map.
#[derive(Debug, Clone)]
pub struct Reflection<A, B> {
    pub reflected: CommaObject<A, B>,
    pub unit: CommaMorphism,
}

/// Factors `g = m ∘ e` and returns `(m: X → I B)` with unit `(e, 1_B)`.
/// Objects whose structure map is already injective are returned unchanged
/// with the identity unit.
pub fn epireflect<I>(oracle: &I, g: &CommaObj<I>) -> Result<Reflection<TargetObj<I>, SourceObj<I>>>
where
    I: FunctorOracle,
    I::Target: HasImages,
{
    let a_cat = oracle.target();
    let b_id = oracle.source().identity(&g.b);
    if g.g.is_injective() {
        return Ok(Reflection {
            reflected: g.clone(),
            unit: CommaMorphism {
                f: a_cat.identity(&g.a),
                h: b_id,
            },
        });
    }
    let ib = oracle.on_object(&g.b)?;
    let Factorization { image, epi, mono } = a_cat.factorize(&g.a, &ib, &g.g)?;
    Ok(Reflection {
        reflected: CommaObject {
            a: image,
            b: g.b.clone(),
            g: mono,
        },
        unit: CommaMorphism { f: epi, h: b_id },
    })
}

/// For every comma morphism `(f, h): g → target`, counts the mediating
/// `d: X → X'` with `m' ∘ d = I h ∘ m` and `d ∘ e = f`; exactly one is
/// required.
pub fn verify_reflection_universal<I>(oracle: &I, g: &CommaObj<I>, target: &CommaObj<I>) -> Result<LawReport>
where
    I: FunctorOracle,
    I::Target: HasImages,
{
    if !target.g.is_injective() {
        return Err(Error::PreconditionViolation("target structure map is not monic".into()));
    }
    let a_cat = oracle.target();
    let Reflection { reflected, unit } = epireflect(oracle, g)?;
    let mut report = LawReport::new();
    report.expect(unit.f.is_surjective(), Law::Precondition, &[0]);
    report.expect(reflected.g.is_injective(), Law::Precondition, &[1]);
    let ds = a_cat.morphisms(&reflected.a, &target.a)?;
    for (i, m) in comma_morphisms(oracle, g, target)?.iter().enumerate() {
        let ih = oracle.on_morphism(&g.b, &target.b, &m.h)?;
        let lower = a_cat.compose(&reflected.g, &ih);
        let count = ds
            .iter()
            .filter(|d| a_cat.compose(d, &target.g) == lower && a_cat.compose(&unit.f, d) == m.f)
            .count();
        report.expect(count >= 1, Law::UniversalExistence, &[i]);
        report.expect(count <= 1, Law::UniversalUniqueness, &[i, count]);
    }
    Ok(report)
}

/// Spot-checks `I(1) = 1` and `I(h' ∘ h) = I(h') ∘ I(h)` over every
/// composable pair of morphisms between the listed objects.
pub fn check_functoriality<I: FunctorOracle>(oracle: &I, objects: &[SourceObj<I>]) -> Result<LawReport> {
    let b_cat = oracle.source();
    let a_cat = oracle.target();
    let mut report = LawReport::new();
    for (i, x) in objects.iter().enumerate() {
        let ix = oracle.on_object(x)?;
        let mapped = oracle.on_morphism(x, x, &b_cat.identity(x))?;
        report.expect(mapped == a_cat.identity(&ix), Law::FunctorIdentity, &[i]);
    }
    for (i, x) in objects.iter().enumerate() {
        for (j, y) in objects.iter().enumerate() {
            let first = b_cat.morphisms(x, y)?;
            for (k, z) in objects.iter().enumerate() {
                let second = b_cat.morphisms(y, z)?;
                for h in &first {
                    let ih = oracle.on_morphism(x, y, h)?;
                    for h2 in &second {
                        let lhs = oracle.on_morphism(x, z, &b_cat.compose(h, h2))?;
                        let rhs = a_cat.compose(&ih, &oracle.on_morphism(y, z, h2)?);
                        report.expect(lhs == rhs, Law::FunctorComposition, &[i, j, k]);
                    }
                }
            }
        }
    }
    Ok(report)
}
