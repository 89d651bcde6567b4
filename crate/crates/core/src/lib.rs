//! Finite-model verification for quantales, quantale-enriched categories,
//! affine sets and the comma-category adjunctions between them.

pub mod affine;
pub mod algebra;
pub mod cli;
pub mod comma;
pub mod error;
pub mod finmap;
pub mod instances;
pub mod quantale;
pub mod report;
pub mod vcat;

pub use affine::AffineSet;
pub use algebra::{FinAlgebra, Operation};
pub use error::{Error, Result};
pub use finmap::FiniteMap;
pub use quantale::{Elem, Quantale, QuantaleKind, QuantaleTable};
pub use report::{Law, LawReport, Violation};
pub use vcat::{VCategory, VMap};
