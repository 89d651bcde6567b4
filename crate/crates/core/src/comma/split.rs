//! Split coequalizer pairs of finite functions.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::finmap::{canonical_surjections, checked_power, decode_function, encode_function, FiniteMap};
use crate::report::{Law, LawReport};

/// Witness `(Z, h, k, s)` for a parallel pair `f, g: X → Y` with
/// `h f = h g`, `g s = 1_Y` and `f s = k h`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplitStructure {
    pub z: usize,
    pub h: FiniteMap,
    pub k: FiniteMap,
    pub s: FiniteMap,
}

impl SplitStructure {
    /// The three defining equations, each recorded once.
    pub fn equations(&self, f: &FiniteMap, g: &FiniteMap) -> Result<LawReport> {
        check_pair(f, g)?;
        let (x, y) = (f.source(), f.target());
        let shapes_ok = self.h.source() == y
            && self.h.target() == self.z
            && self.k.source() == self.z
            && self.k.target() == y
            && self.s.source() == y
            && self.s.target() == x;
        if !shapes_ok {
            return Err(Error::MalformedInput(format!(
                "witness {self:?} does not fit a pair {x} ⇉ {y}"
            )));
        }
        let mut report = LawReport::new();
        report.expect(f.then(&self.h) == g.then(&self.h), Law::SplitCoequalizes, &[]);
        report.expect(self.s.then(g).is_identity(), Law::SplitSection, &[]);
        report.expect(self.s.then(f) == self.h.then(&self.k), Law::SplitFactor, &[]);
        Ok(report)
    }
}

fn check_pair(f: &FiniteMap, g: &FiniteMap) -> Result<()> {
    if f.source() != g.source() || f.target() != g.target() {
        return Err(Error::IncompatibleStructures(format!(
            "{f:?} and {g:?} are not parallel"
        )));
    }
    Ok(())
}

/// Every section `s` of `g` (so `g ∘ s = 1`), in lexicographic order.
pub fn sections(g: &FiniteMap) -> Vec<FiniteMap> {
    let fibers: Vec<Vec<usize>> = (0..g.target())
        .map(|y| (0..g.source()).filter(|&x| g.apply(x) == y).collect())
        .collect();
    if fibers.iter().any(Vec::is_empty) {
        return Vec::new();
    }
    let mut out = vec![Vec::with_capacity(g.target())];
    for fiber in &fibers {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                fiber.iter().map(move |&x| {
                    let mut next = prefix.clone();
                    next.push(x);
                    next
                })
            })
            .collect();
    }
    out.into_iter()
        .map(|image| FiniteMap::new_unchecked(g.source(), image))
        .collect()
}

/// Searches for a split structure on `f, g: X → Y`.
///
/// Only surjective `h` onto `Z = {0..|Z|-1}` with `|Z| ≤ |Y|` are tried:
/// replacing `Z` by the image of `h` (and corestricting `k`'s domain)
/// preserves all three equations, and relabelling `Z` does too, so
/// surjections in canonical form lose no witnesses. Given `s` and a
/// surjective `h`, `k` is forced by `f s = k h`.
pub fn find_split_structure(f: &FiniteMap, g: &FiniteMap) -> Result<Option<SplitStructure>> {
    check_pair(f, g)?;
    let y = f.target();
    let surjections = canonical_surjections(y);
    for s in sections(g) {
        let fs = s.then(f);
        for h in &surjections {
            if f.then(h) != g.then(h) {
                continue;
            }
            let mut k = vec![None; h.target()];
            let consistent = (0..y).all(|point| {
                let slot = &mut k[h.apply(point)];
                match slot {
                    None => {
                        *slot = Some(fs.apply(point));
                        true
                    }
                    Some(v) => *v == fs.apply(point),
                }
            });
            if consistent {
                let k = k.into_iter().map(|v| v.expect("h is surjective")).collect();
                return Ok(Some(SplitStructure {
                    z: h.target(),
                    h: h.clone(),
                    k: FiniteMap::new_unchecked(y, k),
                    s,
                }));
            }
        }
    }
    Ok(None)
}

/// Class labels of the equivalence on `Y` generated by `f(x) ~ g(x)`.
pub fn generated_quotient(f: &FiniteMap, g: &FiniteMap) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..f.target()).collect();
    fn root(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for x in 0..f.source() {
        let (a, b) = (root(&mut parent, f.apply(x)), root(&mut parent, g.apply(x)));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    (0..f.target()).map(|y| root(&mut parent, y)).collect()
}

/// The contravariant power `V^m: V^B → V^A`, `φ ↦ φ ∘ m`, for `m: A → B`.
fn power_of(m: &FiniteMap, v: usize) -> Result<FiniteMap> {
    let cap = 1 << 16;
    let source = checked_power(v, m.target(), cap)?;
    let target = checked_power(v, m.source(), cap)?;
    let image = (0..source)
        .map(|code| {
            let phi = decode_function(code, v, m.target());
            let pulled: Vec<usize> = m.image().iter().map(|&a| phi[a]).collect();
            encode_function(&pulled, v)
        })
        .collect();
    FiniteMap::new(target, image)
}

/// Verifies the witness equations, that `h` is the coequalizer of `f, g`
/// (surjective with kernel the equivalence generated by `f(x) ~ g(x)`),
/// and that the image of the whole diagram under `V^(-)` satisfies the
/// three equations with arrows reversed.
pub fn split_coequalizer_check(witness: &SplitStructure, f: &FiniteMap, g: &FiniteMap, v: usize) -> Result<LawReport> {
    let mut report = witness.equations(f, g)?;
    let h = &witness.h;
    report.expect(h.is_surjective(), Law::CoequalizerSurjective, &[]);
    let classes = generated_quotient(f, g);
    for a in 0..f.target() {
        for b in a + 1..f.target() {
            report.expect(
                (classes[a] == classes[b]) == (h.apply(a) == h.apply(b)),
                Law::CoequalizerKernel,
                &[a, b],
            );
        }
    }

    let (pf, pg) = (power_of(f, v)?, power_of(g, v)?);
    let (ph, pk, ps) = (power_of(h, v)?, power_of(&witness.k, v)?, power_of(&witness.s, v)?);
    report.expect(ph.then(&pf) == ph.then(&pg), Law::AbsoluteImage, &[0]);
    report.expect(pg.then(&ps).is_identity(), Law::AbsoluteImage, &[1]);
    report.expect(pf.then(&ps) == pk.then(&ph), Law::AbsoluteImage, &[2]);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn map(target: usize, image: &[usize]) -> FiniteMap {
        FiniteMap::new(target, image.to_vec()).unwrap()
    }

    #[test]
    fn identical_identities_split_trivially() {
        let id = FiniteMap::identity(2);
        let w = find_split_structure(&id, &id).unwrap().unwrap();
        assert_eq!(w.z, 2);
        assert!(w.h.is_identity() && w.k.is_identity() && w.s.is_identity());
        assert!(split_coequalizer_check(&w, &id, &id, 2).unwrap().is_ok());
    }

    #[test]
    fn identity_and_swap_do_not_split() {
        let id = FiniteMap::identity(2);
        let swap = map(2, &[1, 0]);
        assert_eq!(find_split_structure(&id, &swap).unwrap(), None);
    }

    #[test]
    fn maps_onto_a_point_split() {
        let f = map(1, &[0, 0]);
        let w = find_split_structure(&f, &f).unwrap().unwrap();
        assert_eq!(w.z, 1);
        assert!(w.h.is_identity());
        assert_eq!(w.k, w.s.then(&f));
        let report = split_coequalizer_check(&w, &f, &f, 2).unwrap();
        assert!(report.is_ok(), "{report}");
    }

    #[test]
    fn quotient_merges_related_points() {
        let f = map(4, &[0, 2]);
        let g = map(4, &[1, 3]);
        assert_eq!(generated_quotient(&f, &g), vec![0, 0, 2, 2]);
    }

    #[test]
    fn sections_of_a_surjection() {
        let g = map(2, &[0, 1, 1]);
        assert_eq!(sections(&g).len(), 2);
        assert!(sections(&map(3, &[0, 1])).is_empty());
    }

    #[test]
    fn bad_witness_fails_the_kernel_probe() {
        let id = FiniteMap::identity(2);
        let w = SplitStructure {
            z: 1,
            h: map(1, &[0, 0]),
            k: map(2, &[0]),
            s: FiniteMap::identity(2),
        };
        let report = split_coequalizer_check(&w, &id, &id, 2).unwrap();
        assert!(report.has(Law::SplitFactor));
        assert!(report.has(Law::CoequalizerKernel));
    }

    #[test]
    fn non_parallel_pairs_are_rejected() {
        assert!(find_split_structure(&map(2, &[0]), &map(3, &[0])).is_err());
    }
}
