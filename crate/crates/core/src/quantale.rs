//! Finite commutative quantales given by order and tensor tables, with the
//! residuation (internal hom) precomputed.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::{Law, LawReport};

/// An element of a quantale carrier, identified by its rank.
///
/// For the built-in chains the rank increases along the lattice order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Elem(pub usize);

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuantaleKind {
    /// The two-element frame: `⊗` is meet, unit is top.
    Boolean,
    /// The chain `{0, 1/n, .., 1}` with `u ⊗ v = max(u + v - 1, 0)`.
    Lukasiewicz,
    /// The chain `{0, 1, .., n, ∞}` under reversed numeric order with
    /// truncated addition; a finite stand-in for `[0, ∞]`.
    TruncatedAddition,
}

/// Unvalidated quantale data: an order table, a tensor table and a unit.
///
/// Only the shape is checked on construction; the algebraic laws are
/// reported by [`QuantaleTable::check_laws`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuantaleTable {
    pub size: usize,
    pub leq: Vec<Vec<bool>>,
    pub tensor: Vec<Vec<usize>>,
    pub unit: usize,
}

impl QuantaleTable {
    pub fn new(leq: Vec<Vec<bool>>, tensor: Vec<Vec<usize>>, unit: usize) -> Result<Self> {
        let table = Self {
            size: leq.len(),
            leq,
            tensor,
            unit,
        };
        table.validate_shape()?;
        Ok(table)
    }

    pub fn validate_shape(&self) -> Result<()> {
        let n = self.size;
        if n == 0 {
            return Err(Error::MalformedInput("quantale carrier is empty".into()));
        }
        if self.leq.len() != n || self.leq.iter().any(|row| row.len() != n) {
            return Err(Error::MalformedInput(format!("order table is not {n}×{n}")));
        }
        if self.tensor.len() != n || self.tensor.iter().any(|row| row.len() != n) {
            return Err(Error::MalformedInput(format!("tensor table is not {n}×{n}")));
        }
        if let Some(&bad) = self.tensor.iter().flatten().find(|&&v| v >= n) {
            return Err(Error::InvalidElement { rank: bad, size: n });
        }
        if self.unit >= n {
            return Err(Error::InvalidElement {
                rank: self.unit,
                size: n,
            });
        }
        Ok(())
    }

    fn le(&self, u: usize, v: usize) -> bool {
        self.leq[u][v]
    }

    fn least_upper_bound(&self, set: impl Iterator<Item = usize> + Clone) -> Option<usize> {
        let n = self.size;
        let upper: Vec<usize> = (0..n).filter(|&b| set.clone().all(|s| self.le(s, b))).collect();
        upper.iter().copied().find(|&c| upper.iter().all(|&b| self.le(c, b)))
    }

    fn greatest_lower_bound(&self, set: impl Iterator<Item = usize> + Clone) -> Option<usize> {
        let n = self.size;
        let lower: Vec<usize> = (0..n).filter(|&b| set.clone().all(|s| self.le(b, s))).collect();
        lower.iter().copied().find(|&c| lower.iter().all(|&b| self.le(b, c)))
    }

    /// Enumerates every failed instance of the partial-order, lattice,
    /// tensor and residuation laws.
    ///
    /// Laws that need joins (distributivity, residuation) are only checked
    /// once the order is known to be a lattice.
    #[allow(clippy::needless_range_loop)]
    pub fn check_laws(&self) -> LawReport {
        let n = self.size;
        let t = &self.tensor;
        let k = self.unit;
        let mut report = LawReport::new();

        let mut order_ok = true;
        for u in 0..n {
            order_ok &= report.expect(self.le(u, u), Law::OrderReflexive, &[u]);
            for v in 0..n {
                if u != v {
                    order_ok &= report.expect(!(self.le(u, v) && self.le(v, u)), Law::OrderAntisymmetric, &[u, v]);
                }
                for w in 0..n {
                    order_ok &= report.expect(
                        !(self.le(u, v) && self.le(v, w)) || self.le(u, w),
                        Law::OrderTransitive,
                        &[u, v, w],
                    );
                }
            }
        }

        let mut lattice_ok = order_ok;
        if order_ok {
            lattice_ok &= report.expect(
                self.least_upper_bound(std::iter::empty()).is_some(),
                Law::JoinExists,
                &[],
            );
            lattice_ok &= report.expect(
                self.greatest_lower_bound(std::iter::empty()).is_some(),
                Law::MeetExists,
                &[],
            );
            for u in 0..n {
                for v in u + 1..n {
                    lattice_ok &= report.expect(
                        self.least_upper_bound([u, v].into_iter()).is_some(),
                        Law::JoinExists,
                        &[u, v],
                    );
                    lattice_ok &= report.expect(
                        self.greatest_lower_bound([u, v].into_iter()).is_some(),
                        Law::MeetExists,
                        &[u, v],
                    );
                }
            }
        }

        for u in 0..n {
            report.expect(t[u][k] == u && t[k][u] == u, Law::TensorUnit, &[u]);
            for v in 0..n {
                report.expect(t[u][v] == t[v][u], Law::TensorCommutative, &[u, v]);
                for w in 0..n {
                    report.expect(t[t[u][v]][w] == t[u][t[v][w]], Law::TensorAssociative, &[u, v, w]);
                }
            }
        }

        if !lattice_ok {
            return report;
        }

        let bottom = self.least_upper_bound(std::iter::empty()).expect("checked");
        let join = |a: usize, b: usize| self.least_upper_bound([a, b].into_iter()).expect("checked");
        for u in 0..n {
            report.expect(t[u][bottom] == bottom, Law::TensorPreservesBottom, &[u]);
            for v in 0..n {
                for w in 0..n {
                    report.expect(
                        t[u][join(v, w)] == join(t[u][v], t[u][w]),
                        Law::TensorDistributesOverJoin,
                        &[u, v, w],
                    );
                }
            }
        }

        for u in 0..n {
            for v in 0..n {
                let hom = self
                    .least_upper_bound((0..n).filter(|&w| self.le(t[u][w], v)))
                    .expect("finite lattice has all joins");
                for w in 0..n {
                    report.expect(self.le(t[u][w], v) == self.le(w, hom), Law::Residuation, &[u, v, w]);
                }
            }
        }
        report
    }
}

/// A validated finite commutative quantale.
///
/// Joins, meets and the residuation `hom(u, v) = ⋁{w : u ⊗ w ≤ v}` are
/// tabulated once at construction; every operation is a table lookup.
#[derive(Clone)]
pub struct Quantale {
    name: String,
    size: usize,
    leq: Vec<bool>,
    join: Vec<usize>,
    meet: Vec<usize>,
    tensor: Vec<usize>,
    hom: Vec<usize>,
    unit: usize,
    bottom: usize,
    top: usize,
    labels: Vec<String>,
}

impl PartialEq for Quantale {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size && self.leq == other.leq && self.tensor == other.tensor && self.unit == other.unit
    }
}

impl Eq for Quantale {}

impl fmt::Debug for Quantale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Quantale({}, |V| = {})", self.name, self.size)
    }
}

impl Quantale {
    /// Builds one of the built-in chains.
    pub fn make(kind: QuantaleKind, n: usize) -> Result<Self> {
        match kind {
            QuantaleKind::Boolean => Ok(Self::boolean()),
            QuantaleKind::Lukasiewicz => Self::lukasiewicz(n),
            QuantaleKind::TruncatedAddition => Ok(Self::truncated_addition(n)),
        }
    }

    pub fn boolean() -> Self {
        let table = chain_table(2, 1, |u, v| u.min(v));
        Self::from_valid_table("boolean", &table, vec!["0".into(), "1".into()])
    }

    /// The Łukasiewicz chain with `n + 1` elements; rank `i` stands for `i/n`.
    pub fn lukasiewicz(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("the Łukasiewicz chain needs n ≥ 1".into()));
        }
        let table = chain_table(n + 1, n, |u, v| (u + v).saturating_sub(n));
        let labels = (0..=n)
            .map(|i| match i {
                0 => "0".to_string(),
                i if i == n => "1".to_string(),
                i => format!("{i}/{n}"),
            })
            .collect();
        Ok(Self::from_valid_table(&format!("lukasiewicz({n})"), &table, labels))
    }

    /// `{0, 1, .., n, ∞}` ordered by reversed numeric order, so rank `0` is
    /// `∞` (the bottom) and rank `n + 1` is the number `0` (the top and the
    /// unit). Sums beyond `n` truncate to `∞`.
    pub fn truncated_addition(n: usize) -> Self {
        let size = n + 2;
        let value = |rank: usize| -> Option<usize> { (rank > 0).then(|| size - 1 - rank) };
        let rank_of = |v: Option<usize>| -> usize {
            match v {
                Some(v) if v <= n => size - 1 - v,
                _ => 0,
            }
        };
        let table = chain_table(size, size - 1, |u, v| match (value(u), value(v)) {
            (Some(a), Some(b)) => rank_of(Some(a + b)),
            _ => 0,
        });
        let labels = (0..size)
            .map(|r| value(r).map_or("∞".to_string(), |v| v.to_string()))
            .collect();
        Self::from_valid_table(&format!("truncated_addition({n})"), &table, labels)
    }

    /// Validates `table` against every quantale law; on failure the error
    /// carries the rendered law report.
    pub fn from_table(name: &str, table: &QuantaleTable) -> Result<Self> {
        table.validate_shape()?;
        let report = table.check_laws();
        if !report.is_ok() {
            return Err(Error::PreconditionViolation(format!(
                "quantale {name} violates its laws: {report}"
            )));
        }
        let labels = (0..table.size).map(|i| i.to_string()).collect();
        Ok(Self::from_valid_table(name, table, labels))
    }

    fn from_valid_table(name: &str, table: &QuantaleTable, labels: Vec<String>) -> Self {
        let n = table.size;
        let mut leq = vec![false; n * n];
        let mut tensor = vec![0; n * n];
        for u in 0..n {
            for v in 0..n {
                leq[u * n + v] = table.leq[u][v];
                tensor[u * n + v] = table.tensor[u][v];
            }
        }
        let bottom = table.least_upper_bound(std::iter::empty()).expect("lattice");
        let top = table.greatest_lower_bound(std::iter::empty()).expect("lattice");
        let mut join = vec![0; n * n];
        let mut meet = vec![0; n * n];
        let mut hom = vec![0; n * n];
        for u in 0..n {
            for v in 0..n {
                join[u * n + v] = table.least_upper_bound([u, v].into_iter()).expect("lattice");
                meet[u * n + v] = table.greatest_lower_bound([u, v].into_iter()).expect("lattice");
                hom[u * n + v] = table
                    .least_upper_bound((0..n).filter(|&w| table.leq[table.tensor[u][w]][v]))
                    .expect("lattice");
            }
        }
        Self {
            name: name.to_string(),
            size: n,
            leq,
            join,
            meet,
            tensor,
            hom,
            unit: table.unit,
            bottom,
            top,
            labels,
        }
    }

    /// Recovers the raw tables, e.g. for law checking or serialization.
    pub fn table(&self) -> QuantaleTable {
        let n = self.size;
        QuantaleTable {
            size: n,
            leq: (0..n).map(|u| self.leq[u * n..(u + 1) * n].to_vec()).collect(),
            tensor: (0..n).map(|u| self.tensor[u * n..(u + 1) * n].to_vec()).collect(),
            unit: self.unit,
        }
    }

    pub fn check_laws(&self) -> LawReport {
        self.table().check_laws()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.size).map(Elem)
    }

    pub fn label(&self, u: Elem) -> &str {
        &self.labels[u.0]
    }

    pub fn elem(&self, rank: usize) -> Result<Elem> {
        if rank < self.size {
            Ok(Elem(rank))
        } else {
            Err(Error::InvalidElement { rank, size: self.size })
        }
    }

    pub fn unit(&self) -> Elem {
        Elem(self.unit)
    }

    pub fn bottom(&self) -> Elem {
        Elem(self.bottom)
    }

    pub fn top(&self) -> Elem {
        Elem(self.top)
    }

    #[inline]
    fn at(&self, u: Elem, v: Elem) -> usize {
        u.0 * self.size + v.0
    }

    #[inline]
    pub fn leq(&self, u: Elem, v: Elem) -> bool {
        self.leq[self.at(u, v)]
    }

    #[inline]
    pub fn tensor(&self, u: Elem, v: Elem) -> Elem {
        Elem(self.tensor[self.at(u, v)])
    }

    /// The residuation `⋁{w : u ⊗ w ≤ v}`.
    #[inline]
    pub fn hom(&self, u: Elem, v: Elem) -> Elem {
        Elem(self.hom[self.at(u, v)])
    }

    /// Range-checked [`Quantale::hom`].
    pub fn try_hom(&self, u: Elem, v: Elem) -> Result<Elem> {
        self.elem(u.0)?;
        self.elem(v.0)?;
        Ok(self.hom(u, v))
    }

    #[inline]
    pub fn join(&self, u: Elem, v: Elem) -> Elem {
        Elem(self.join[self.at(u, v)])
    }

    #[inline]
    pub fn meet(&self, u: Elem, v: Elem) -> Elem {
        Elem(self.meet[self.at(u, v)])
    }

    pub fn join_all(&self, items: impl IntoIterator<Item = Elem>) -> Elem {
        items.into_iter().fold(self.bottom(), |acc, u| self.join(acc, u))
    }

    pub fn meet_all(&self, items: impl IntoIterator<Item = Elem>) -> Elem {
        items.into_iter().fold(self.top(), |acc, u| self.meet(acc, u))
    }
}

/// Order and tensor tables for a chain `0 < 1 < .. < size-1`.
fn chain_table(size: usize, unit: usize, tensor: impl Fn(usize, usize) -> usize) -> QuantaleTable {
    QuantaleTable {
        size,
        leq: (0..size).map(|u| (0..size).map(|v| u <= v).collect()).collect(),
        tensor: (0..size).map(|u| (0..size).map(|v| tensor(u, v)).collect()).collect(),
        unit,
    }
}
