//! Brute-force oracles that recompute library results from definitions,
//! sharing no code paths with the library beyond table lookups.

#![allow(dead_code)]

use std::collections::BTreeSet;

use quasivar::instances::FiniteSpace;
use quasivar::{AffineSet, Elem, FiniteMap, Quantale, VCategory};

/// Every function `{0..len-1} → {0..base-1}` as a value vector.
pub fn all_vectors(len: usize, base: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..base).map(move |v| {
                    let mut next = prefix.clone();
                    next.push(v);
                    next
                })
            })
            .collect();
    }
    out
}

pub fn leq(q: &Quantale, u: usize, v: usize) -> bool {
    q.leq(Elem(u), Elem(v))
}

pub fn tensor(q: &Quantale, u: usize, v: usize) -> usize {
    q.tensor(Elem(u), Elem(v)).0
}

/// Join of a set of ranks: the unique upper bound below every upper bound.
pub fn join(q: &Quantale, items: &[usize]) -> usize {
    let n = q.size();
    let uppers: Vec<usize> = (0..n).filter(|&b| items.iter().all(|&x| leq(q, x, b))).collect();
    *uppers
        .iter()
        .find(|&&b| uppers.iter().all(|&c| leq(q, b, c)))
        .expect("complete lattice")
}

pub fn meet(q: &Quantale, items: &[usize]) -> usize {
    let n = q.size();
    let lowers: Vec<usize> = (0..n).filter(|&b| items.iter().all(|&x| leq(q, b, x))).collect();
    *lowers
        .iter()
        .find(|&&b| lowers.iter().all(|&c| leq(q, c, b)))
        .expect("complete lattice")
}

/// `⋁{w : u ⊗ w ≤ v}` by scanning the carrier.
pub fn hom(q: &Quantale, u: usize, v: usize) -> usize {
    let ws: Vec<usize> = (0..q.size()).filter(|&w| leq(q, tensor(q, u, w), v)).collect();
    join(q, &ws)
}

pub fn is_vcategory(q: &Quantale, n: usize, a: &[Vec<usize>]) -> bool {
    let k = q.unit().0;
    (0..n).all(|x| leq(q, k, a[x][x]))
        && (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| leq(q, tensor(q, a[y][z], a[x][y]), a[x][z]))))
}

/// Every valid matrix on `n` points.
pub fn vcategories(q: &Quantale, n: usize) -> Vec<Vec<Vec<usize>>> {
    all_vectors(n * n, q.size())
        .into_iter()
        .map(|cells| cells.chunks(n.max(1)).map(<[usize]>::to_vec).collect::<Vec<_>>())
        .filter(|m| is_vcategory(q, n, m))
        .collect()
}

/// Maps `ψ` with `a(x,y) ≤ hom(ψx, ψy)`, by scanning `V^X`.
pub fn vfunctors(q: &Quantale, a: &[Vec<usize>]) -> BTreeSet<Vec<usize>> {
    let n = a.len();
    all_vectors(n, q.size())
        .into_iter()
        .filter(|psi| (0..n).all(|x| (0..n).all(|y| leq(q, a[x][y], hom(q, psi[x], psi[y])))))
        .collect()
}

/// `a(x,y) = ⋀_φ hom(φx, φy)`.
pub fn initial(q: &Quantale, n: usize, maps: &[Vec<usize>]) -> Vec<Vec<usize>> {
    (0..n)
        .map(|x| {
            (0..n)
                .map(|y| {
                    let homs: Vec<usize> = maps.iter().map(|phi| hom(q, phi[x], phi[y])).collect();
                    meet(q, &homs)
                })
                .collect()
        })
        .collect()
}

pub fn matrix(cat: &VCategory) -> Vec<Vec<usize>> {
    cat.rows()
}

/// Least set of maps containing `gens` and the constants, closed under
/// pointwise join, meet, `u ⊗ -` and `hom(u, -)`.
pub fn vccd_closure(q: &Quantale, n: usize, gens: &[Vec<usize>]) -> BTreeSet<Vec<usize>> {
    let mut set: BTreeSet<Vec<usize>> = gens.iter().cloned().collect();
    for c in 0..q.size() {
        set.insert(vec![c; n]);
    }
    loop {
        let members: Vec<Vec<usize>> = set.iter().cloned().collect();
        let mut next = set.clone();
        for phi in &members {
            for u in 0..q.size() {
                next.insert(phi.iter().map(|&v| tensor(q, u, v)).collect());
                next.insert(phi.iter().map(|&v| hom(q, u, v)).collect());
            }
            for psi in &members {
                next.insert((0..n).map(|x| join(q, &[phi[x], psi[x]])).collect());
                next.insert((0..n).map(|x| meet(q, &[phi[x], psi[x]])).collect());
            }
        }
        if next.len() == set.len() {
            return set;
        }
        set = next;
    }
}

/// Points where every pair of members agreeing on `m` still agree.
pub fn zariski(set: &AffineSet, m: &BTreeSet<usize>) -> BTreeSet<usize> {
    let maps = set.maps();
    (0..set.points())
        .filter(|&x| {
            maps.iter().all(|phi| {
                maps.iter()
                    .all(|psi| !m.iter().all(|&p| phi[p] == psi[p]) || phi[x] == psi[x])
            })
        })
        .collect()
}

/// Topologies on `n` points as sorted families of subsets.
pub fn topologies(n: usize) -> BTreeSet<Vec<Vec<usize>>> {
    let subsets: Vec<BTreeSet<usize>> = (0..1usize << n)
        .map(|m| (0..n).filter(|&x| m & (1 << x) != 0).collect())
        .collect();
    let full: BTreeSet<usize> = (0..n).collect();
    let mut out = BTreeSet::new();
    for choice in 0u64..(1u64 << subsets.len()) {
        let family: Vec<&BTreeSet<usize>> = subsets
            .iter()
            .enumerate()
            .filter(|(i, _)| choice & (1 << i) != 0)
            .map(|(_, s)| s)
            .collect();
        let contains = |s: &BTreeSet<usize>| family.contains(&s);
        if !contains(&BTreeSet::new()) || !contains(&full) {
            continue;
        }
        let closed = family.iter().all(|u| {
            family
                .iter()
                .all(|v| contains(&u.union(v).copied().collect()) && contains(&u.intersection(v).copied().collect()))
        });
        if closed {
            let mut sorted: Vec<Vec<usize>> = family.iter().map(|s| s.iter().copied().collect()).collect();
            sorted.sort();
            out.insert(sorted);
        }
    }
    out
}

/// T0 through antisymmetry of the specialization preorder
/// `x ≤ y ⟺ every open containing x contains y`.
pub fn is_t0(space: &FiniteSpace) -> bool {
    let below = |x: usize, y: usize| space.opens().iter().all(|u| !u.contains(&x) || u.contains(&y));
    let n = space.points();
    (0..n).all(|x| (0..n).all(|y| x == y || !(below(x, y) && below(y, x))))
}

/// Whether some `Z` with `|Z| ≤ bound` and arbitrary `h, k, s` split `f, g`.
pub fn splits(f: &FiniteMap, g: &FiniteMap, bound: usize) -> bool {
    let (x, y) = (f.source(), f.target());
    let compose = |first: &[usize], second: &[usize]| -> Vec<usize> { first.iter().map(|&i| second[i]).collect() };
    let (fv, gv) = (f.image().to_vec(), g.image().to_vec());
    let identity: Vec<usize> = (0..y).collect();
    let sections: Vec<Vec<usize>> = all_vectors(y, x)
        .into_iter()
        .filter(|s| compose(s, &gv) == identity)
        .collect();
    for z in 0..=bound {
        for h in all_vectors(y, z) {
            if compose(&fv, &h) != compose(&gv, &h) {
                continue;
            }
            for k in all_vectors(z, y) {
                let kh = compose(&h, &k);
                if sections.iter().any(|s| compose(s, &fv) == kh) {
                    return true;
                }
            }
        }
    }
    false
}

/// Adjoint pairs `(φ, ψ)` by scanning `V^X × V^X` against the four module
/// and adjunction inequalities.
pub fn adjoint_pairs(q: &Quantale, a: &[Vec<usize>]) -> Vec<(Vec<usize>, Vec<usize>)> {
    let n = a.len();
    let k = q.unit().0;
    let maps = all_vectors(n, q.size());
    let covariant: Vec<&Vec<usize>> = maps
        .iter()
        .filter(|phi| (0..n).all(|x| (0..n).all(|y| leq(q, tensor(q, a[x][y], phi[x]), phi[y]))))
        .collect();
    let contravariant: Vec<&Vec<usize>> = maps
        .iter()
        .filter(|psi| (0..n).all(|x| (0..n).all(|y| leq(q, tensor(q, psi[y], a[x][y]), psi[x]))))
        .collect();
    let mut out = Vec::new();
    for phi in &covariant {
        for psi in &contravariant {
            let unit: Vec<usize> = (0..n).map(|x| tensor(q, phi[x], psi[x])).collect();
            let counit = (0..n).all(|x| (0..n).all(|y| leq(q, tensor(q, psi[x], phi[y]), a[x][y])));
            if leq(q, k, join(q, &unit)) && counit {
                out.push(((*phi).clone(), (*psi).clone()));
            }
        }
    }
    out
}

pub fn representable(a: &[Vec<usize>], pair: &(Vec<usize>, Vec<usize>)) -> bool {
    let n = a.len();
    (0..n).any(|x0| {
        let row: Vec<usize> = (0..n).map(|y| a[x0][y]).collect();
        let column: Vec<usize> = (0..n).map(|x| a[x][x0]).collect();
        pair.0 == row && pair.1 == column
    })
}
