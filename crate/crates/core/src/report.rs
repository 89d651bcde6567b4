use std::fmt;

use serde::Serialize;

/// Names of the laws checked across the toolkit. Each violation carries one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Law {
    OrderReflexive,
    OrderAntisymmetric,
    OrderTransitive,
    JoinExists,
    MeetExists,
    TensorAssociative,
    TensorCommutative,
    TensorUnit,
    TensorPreservesBottom,
    TensorDistributesOverJoin,
    Residuation,
    Reflexivity,
    Transitivity,
    FunctorInequality,
    Expansion,
    CovariantModule,
    ContravariantModule,
    AdjointUnit,
    AdjointCounit,
    Precondition,
    RoundtripGF,
    RoundtripFG,
    AffineMorphism,
    SubalgebraClosed,
    CommaSquare,
    Homomorphism,
    TriangleIdentity,
    UniversalExistence,
    UniversalUniqueness,
    FunctorIdentity,
    FunctorComposition,
    TransposeIdentity,
    SplitCoequalizes,
    SplitSection,
    SplitFactor,
    CoequalizerSurjective,
    CoequalizerKernel,
    AbsoluteImage,
    Sobriety,
    ClosureExtensive,
    ClosureMonotone,
    ClosureIdempotent,
    TranscriptionRoundtrip,
    EpiSurjective,
    MonoInjective,
    ReflectionIdempotent,
    ExpectedValue,
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).ok();
        match s.as_ref().and_then(|v| v.as_str()) {
            Some(name) => f.write_str(name),
            None => write!(f, "{self:?}"),
        }
    }
}

/// One failed instance of a law, with the indices that witness it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub law: Law,
    pub witness: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Outcome of an exhaustive law check: every violation found plus the
/// number of instances that were examined.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub checked: u64,
    pub violations: Vec<Violation>,
}

impl LawReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    /// Records one examined instance and a violation when `holds` is false.
    pub fn expect(&mut self, holds: bool, law: Law, witness: &[usize]) -> bool {
        self.checked += 1;
        if !holds {
            self.violate(law, witness);
        }
        holds
    }

    pub fn violate(&mut self, law: Law, witness: &[usize]) {
        self.violations.push(Violation {
            law,
            witness: witness.to_vec(),
            note: None,
        });
    }

    pub fn violate_with(&mut self, law: Law, witness: &[usize], note: impl Into<String>) {
        self.violations.push(Violation {
            law,
            witness: witness.to_vec(),
            note: Some(note.into()),
        });
    }

    pub fn has(&self, law: Law) -> bool {
        self.violations.iter().any(|v| v.law == law)
    }

    pub fn merge(&mut self, other: LawReport) {
        self.checked += other.checked;
        self.violations.extend(other.violations);
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok ({} instances)", self.checked);
        }
        write!(
            f,
            "{} violation(s) in {} instances",
            self.violations.len(),
            self.checked
        )?;
        for v in self.violations.iter().take(8) {
            write!(f, "; {} at {:?}", v.law, v.witness)?;
            if let Some(note) = &v.note {
                write!(f, " ({note})")?;
            }
        }
        Ok(())
    }
}
