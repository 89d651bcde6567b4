//! Finite algebras over an explicit signature of operation tables.
//!
//! These are the objects of the varieties that the comma and affine
//! constructions are instantiated with: bounded lattices, the two-element
//! frame, meet-semilattices with top, and the pointwise algebra of a
//! quantale's enriched operations.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finmap::{checked_power, decode_function, encode_function, FiniteMap};
use crate::quantale::{Elem, Quantale};
use crate::report::{Law, LawReport};

/// An operation symbol with its table. Arguments index the table in
/// row-major order, the first argument most significant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Operation {
    pub name: String,
    pub arity: usize,
    pub table: Vec<usize>,
}

type OpFn<'a> = Box<dyn Fn(&[usize]) -> usize + 'a>;

#[derive(Clone)]
pub struct FinAlgebra {
    name: String,
    size: usize,
    ops: Vec<Operation>,
    quantale: Option<Arc<Quantale>>,
}

impl PartialEq for FinAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size && self.ops == other.ops
    }
}

impl Eq for FinAlgebra {}

impl fmt::Debug for FinAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sig: Vec<String> = self.ops.iter().map(|op| format!("{}/{}", op.name, op.arity)).collect();
        write!(f, "{}(|A| = {}; {})", self.name, self.size, sig.join(", "))
    }
}

const LATTICE_OPS: [(&str, usize); 4] = [("bottom", 0), ("top", 0), ("meet", 2), ("join", 2)];

impl FinAlgebra {
    pub fn new(name: &str, size: usize, ops: Vec<Operation>) -> Result<Self> {
        for op in &ops {
            let expected = checked_power(size, op.arity, 1 << 24)?;
            if op.table.len() != expected {
                return Err(Error::MalformedInput(format!(
                    "operation {} of arity {} needs {} entries, found {}",
                    op.name,
                    op.arity,
                    expected,
                    op.table.len()
                )));
            }
            if let Some(&bad) = op.table.iter().find(|&&v| v >= size) {
                return Err(Error::InvalidElement { rank: bad, size });
            }
        }
        Ok(Self {
            name: name.to_string(),
            size,
            ops,
            quantale: None,
        })
    }

    fn from_fns(name: &str, size: usize, ops: Vec<(String, usize, OpFn<'_>)>) -> Self {
        let ops = ops
            .into_iter()
            .map(|(name, arity, f)| {
                let entries = size.pow(arity as u32);
                let table = (0..entries)
                    .map(|code| {
                        let mut args = decode_function(code, size, arity);
                        args.reverse();
                        f(&args)
                    })
                    .collect();
                Operation { name, arity, table }
            })
            .collect();
        Self {
            name: name.to_string(),
            size,
            ops,
            quantale: None,
        }
    }

    /// A bounded lattice given by its order, with operations bottom, top,
    /// meet and join. Fails if the order is not a lattice.
    pub fn bounded_lattice(name: &str, leq: &dyn Fn(usize, usize) -> bool, size: usize) -> Result<Self> {
        let lub = |a: usize, b: usize| -> Option<usize> {
            let ub: Vec<usize> = (0..size).filter(|&c| leq(a, c) && leq(b, c)).collect();
            ub.iter().copied().find(|&c| ub.iter().all(|&d| leq(c, d)))
        };
        let glb = |a: usize, b: usize| -> Option<usize> {
            let lb: Vec<usize> = (0..size).filter(|&c| leq(c, a) && leq(c, b)).collect();
            lb.iter().copied().find(|&c| lb.iter().all(|&d| leq(d, c)))
        };
        let bottom = (0..size).find(|&c| (0..size).all(|d| leq(c, d)));
        let top = (0..size).find(|&c| (0..size).all(|d| leq(d, c)));
        let (Some(bottom), Some(top)) = (bottom, top) else {
            return Err(Error::MalformedInput(format!("{name} lacks a bottom or a top")));
        };
        let mut join = vec![0; size * size];
        let mut meet = vec![0; size * size];
        for a in 0..size {
            for b in 0..size {
                join[a * size + b] =
                    lub(a, b).ok_or_else(|| Error::MalformedInput(format!("{name}: no join of {a}, {b}")))?;
                meet[a * size + b] =
                    glb(a, b).ok_or_else(|| Error::MalformedInput(format!("{name}: no meet of {a}, {b}")))?;
            }
        }
        let tables = [vec![bottom], vec![top], meet, join];
        let ops = LATTICE_OPS
            .iter()
            .zip(tables)
            .map(|(&(n, arity), table)| Operation {
                name: n.to_string(),
                arity,
                table,
            })
            .collect();
        Self::new(name, size, ops)
    }

    /// The chain `0 < 1 < .. < n-1` as a bounded distributive lattice.
    pub fn chain(n: usize) -> Self {
        Self::bounded_lattice(&format!("chain{n}"), &|a, b| a <= b, n).expect("chains are lattices")
    }

    /// The two-element frame: bottom, top, binary meet and binary join.
    pub fn two_element_frame() -> Self {
        let mut a = Self::chain(2);
        a.name = "frame2".into();
        a
    }

    /// The two-element complete lattice in the variety of infima-preserving
    /// maps: the empty meet (top) and binary meet.
    pub fn two_element_inf_lattice() -> Self {
        Self::from_fns(
            "inf2",
            2,
            vec![
                ("top".into(), 0, Box::new(|_: &[usize]| 1)),
                ("meet".into(), 2, Box::new(|a: &[usize]| a[0].min(a[1]))),
            ],
        )
    }

    /// The Boolean algebra of subsets of `atoms` points as a bounded
    /// lattice; element `i` is the subset with bitmask `i`.
    pub fn powerset_lattice(atoms: usize) -> Self {
        let size = 1usize << atoms;
        Self::bounded_lattice(&format!("powerset{atoms}"), &|a, b| a & b == a, size).expect("powersets are lattices")
    }

    /// The pointwise-operation algebra of a quantale: empty and binary
    /// joins and meets, `u ⊗ -` and `hom(u, -)` for every element `u`.
    pub fn vccd(q: &Arc<Quantale>) -> Self {
        let qq = q.clone();
        let mut ops: Vec<(String, usize, OpFn<'static>)> = Vec::new();
        let (b, t) = (q.bottom().0, q.top().0);
        ops.push(("bottom".into(), 0, Box::new(move |_| b)));
        ops.push(("top".into(), 0, Box::new(move |_| t)));
        let q1 = qq.clone();
        ops.push(("join".into(), 2, Box::new(move |a| q1.join(Elem(a[0]), Elem(a[1])).0)));
        let q2 = qq.clone();
        ops.push(("meet".into(), 2, Box::new(move |a| q2.meet(Elem(a[0]), Elem(a[1])).0)));
        for u in q.elements() {
            let q3 = qq.clone();
            ops.push((
                format!("tensor[{}]", u.0),
                1,
                Box::new(move |a| q3.tensor(u, Elem(a[0])).0),
            ));
            let q4 = qq.clone();
            ops.push((
                format!("cotensor[{}]", u.0),
                1,
                Box::new(move |a| q4.hom(u, Elem(a[0])).0),
            ));
        }
        let mut alg = Self::from_fns(&format!("vccd({})", q.name()), q.size(), ops);
        alg.quantale = Some(q.clone());
        alg
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn operations(&self) -> &[Operation] {
        &self.ops
    }

    pub fn quantale(&self) -> Option<&Arc<Quantale>> {
        self.quantale.as_ref()
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn signature(&self) -> Vec<(&str, usize)> {
        self.ops.iter().map(|op| (op.name.as_str(), op.arity)).collect()
    }

    pub fn same_signature(&self, other: &FinAlgebra) -> bool {
        self.signature() == other.signature()
    }

    #[inline]
    pub fn apply(&self, op: usize, args: &[usize]) -> usize {
        let o = &self.ops[op];
        debug_assert_eq!(args.len(), o.arity);
        let index = args.iter().fold(0, |acc, &a| acc * self.size + a);
        o.table[index]
    }

    /// Every argument tuple for an operation of the given arity.
    fn tuples(&self, arity: usize) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.size.pow(arity as u32)).map(move |code| {
            let mut args = decode_function(code, self.size, arity);
            args.reverse();
            args
        })
    }

    /// Lists every operation entry where `f` fails to commute.
    pub fn homomorphism_report(&self, target: &FinAlgebra, f: &FiniteMap) -> Result<LawReport> {
        if !self.same_signature(target) {
            return Err(Error::IncompatibleStructures(format!(
                "{self:?} and {target:?} have different signatures"
            )));
        }
        if f.source() != self.size || f.target() != target.size {
            return Err(Error::MalformedInput(format!(
                "{f:?} does not run from {} to {}",
                self.name, target.name
            )));
        }
        let mut report = LawReport::new();
        for (i, op) in self.ops.iter().enumerate() {
            for args in self.tuples(op.arity) {
                let mapped: Vec<usize> = args.iter().map(|&a| f.apply(a)).collect();
                let holds = f.apply(self.apply(i, &args)) == target.apply(i, &mapped);
                let mut witness = vec![i];
                witness.extend(&args);
                report.expect(holds, Law::Homomorphism, &witness);
            }
        }
        Ok(report)
    }

    pub fn is_homomorphism(&self, target: &FinAlgebra, f: &FiniteMap) -> bool {
        self.homomorphism_report(target, f).map(|r| r.is_ok()).unwrap_or(false)
    }

    /// Every homomorphism into `target`, by backtracking with forward
    /// propagation of operation entries whose arguments are all assigned.
    pub fn homomorphisms(&self, target: &FinAlgebra, cap: usize) -> Result<Vec<FiniteMap>> {
        if !self.same_signature(target) {
            return Err(Error::IncompatibleStructures(format!(
                "{self:?} and {target:?} have different signatures"
            )));
        }
        let entries: Vec<(usize, Vec<usize>)> = self
            .ops
            .iter()
            .enumerate()
            .flat_map(|(i, op)| self.tuples(op.arity).map(move |args| (i, args)))
            .collect();
        let mut out = Vec::new();
        let mut stack = vec![vec![None; self.size]];
        while let Some(mut assign) = stack.pop() {
            if !self.propagate(target, &entries, &mut assign) {
                continue;
            }
            match assign.iter().position(Option::is_none) {
                None => {
                    if out.len() >= cap {
                        return Err(Error::ResourceLimit(format!(
                            "more than {cap} homomorphisms {} → {}",
                            self.name, target.name
                        )));
                    }
                    let image = assign.into_iter().map(|v| v.expect("assigned")).collect();
                    out.push(FiniteMap::new_unchecked(target.size, image));
                }
                Some(free) => {
                    for v in (0..target.size).rev() {
                        let mut next = assign.clone();
                        next[free] = Some(v);
                        stack.push(next);
                    }
                }
            }
        }
        out.sort();
        Ok(out)
    }

    fn propagate(&self, target: &FinAlgebra, entries: &[(usize, Vec<usize>)], assign: &mut [Option<usize>]) -> bool {
        loop {
            let mut changed = false;
            for (op, args) in entries {
                let Some(mapped) = args.iter().map(|&a| assign[a]).collect::<Option<Vec<_>>>() else {
                    continue;
                };
                let expected = target.apply(*op, &mapped);
                let r = self.apply(*op, args);
                match assign[r] {
                    None => {
                        assign[r] = Some(expected);
                        changed = true;
                    }
                    Some(v) if v != expected => return false,
                    Some(_) => {}
                }
            }
            if !changed {
                return true;
            }
        }
    }

    /// The least subset containing `generators` and closed under every
    /// operation, sorted.
    pub fn generated_subset(&self, generators: &[usize]) -> Vec<usize> {
        let mut members: BTreeSet<usize> = generators.iter().copied().collect();
        loop {
            let current: Vec<usize> = members.iter().copied().collect();
            let before = members.len();
            for (i, op) in self.ops.iter().enumerate() {
                for code in 0..current.len().pow(op.arity as u32) {
                    let mut picks = decode_function(code, current.len().max(1), op.arity);
                    picks.reverse();
                    let args: Vec<usize> = picks.iter().map(|&p| current[p]).collect();
                    members.insert(self.apply(i, &args));
                }
            }
            if members.len() == before {
                return members.into_iter().collect();
            }
        }
    }

    pub fn is_closed_subset(&self, subset: &[usize]) -> bool {
        let set: BTreeSet<usize> = subset.iter().copied().collect();
        self.ops.iter().enumerate().all(|(i, op)| {
            (0..set.len().pow(op.arity as u32)).all(|code| {
                let mut picks = decode_function(code, set.len().max(1), op.arity);
                picks.reverse();
                let members: Vec<usize> = set.iter().copied().collect();
                let args: Vec<usize> = picks.iter().map(|&p| members[p]).collect();
                set.contains(&self.apply(i, &args))
            })
        })
    }

    /// The subalgebra on a closed subset, reindexed in increasing order,
    /// with its inclusion map.
    pub fn subalgebra(&self, subset: &[usize]) -> Result<(FinAlgebra, FiniteMap)> {
        let mut members = subset.to_vec();
        members.sort_unstable();
        members.dedup();
        if !self.is_closed_subset(&members) {
            return Err(Error::PreconditionViolation(format!(
                "{members:?} is not closed in {}",
                self.name
            )));
        }
        let index_of = |v: usize| members.binary_search(&v).expect("closed subset");
        let m = members.len();
        let ops = self
            .ops
            .iter()
            .enumerate()
            .map(|(i, op)| Operation {
                name: op.name.clone(),
                arity: op.arity,
                table: (0..m.pow(op.arity as u32))
                    .map(|code| {
                        let mut picks = decode_function(code, m.max(1), op.arity);
                        picks.reverse();
                        let args: Vec<usize> = picks.iter().map(|&p| members[p]).collect();
                        index_of(self.apply(i, &args))
                    })
                    .collect(),
            })
            .collect();
        let sub = FinAlgebra {
            name: format!("sub({})", self.name),
            size: m,
            ops,
            quantale: self.quantale.clone(),
        };
        let inclusion = FiniteMap::new_unchecked(self.size, members.clone());
        Ok((sub, inclusion))
    }

    /// The pointwise power `A^n`; element codes follow
    /// [`encode_function`].
    pub fn power(&self, n: usize, cap: usize) -> Result<FinAlgebra> {
        let size = checked_power(self.size, n, cap)?;
        let ops = self
            .ops
            .iter()
            .enumerate()
            .map(|(i, op)| {
                let entries = checked_power(size, op.arity, 1 << 24)?;
                let table = (0..entries)
                    .map(|code| {
                        let mut picks = decode_function(code, size, op.arity);
                        picks.reverse();
                        let rows: Vec<Vec<usize>> = picks.iter().map(|&p| decode_function(p, self.size, n)).collect();
                        let result: Vec<usize> = (0..n)
                            .map(|x| {
                                let args: Vec<usize> = rows.iter().map(|r| r[x]).collect();
                                self.apply(i, &args)
                            })
                            .collect();
                        encode_function(&result, self.size)
                    })
                    .collect();
                Ok(Operation {
                    name: op.name.clone(),
                    arity: op.arity,
                    table,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FinAlgebra {
            name: format!("{}^{}", self.name, n),
            size,
            ops,
            quantale: None,
        })
    }

    /// The product algebra; the pair `(i, j)` has index `i * |other| + j`.
    pub fn product(&self, other: &FinAlgebra) -> Result<(FinAlgebra, FiniteMap, FiniteMap)> {
        if !self.same_signature(other) {
            return Err(Error::IncompatibleStructures(format!(
                "{self:?} × {other:?}: different signatures"
            )));
        }
        let (m, n) = (self.size, other.size);
        let size = m * n;
        let ops = self
            .ops
            .iter()
            .enumerate()
            .map(|(i, op)| Operation {
                name: op.name.clone(),
                arity: op.arity,
                table: (0..size.pow(op.arity as u32))
                    .map(|code| {
                        let mut picks = decode_function(code, size.max(1), op.arity);
                        picks.reverse();
                        let left: Vec<usize> = picks.iter().map(|&p| p / n).collect();
                        let right: Vec<usize> = picks.iter().map(|&p| p % n).collect();
                        self.apply(i, &left) * n + other.apply(i, &right)
                    })
                    .collect(),
            })
            .collect();
        let prod = FinAlgebra {
            name: format!("{}×{}", self.name, other.name),
            size,
            ops,
            quantale: None,
        };
        let pi1 = FiniteMap::new_unchecked(m, (0..size).map(|p| p / n).collect());
        let pi2 = FiniteMap::new_unchecked(n, (0..size).map(|p| p % n).collect());
        Ok((prod, pi1, pi2))
    }
}
