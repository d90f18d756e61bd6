//! Affine semipolar spaces and symplectic affine polar spaces over GF(p).
//!
//! Everything here is exact and exhaustive: instances are small enough that
//! every quantifier in a geometric statement can be checked by enumeration.

pub mod apsg;
pub mod autos;
mod bitset;
pub mod error;
pub mod export;
pub mod forms;
pub mod gf;
pub mod hyperbolic;
pub mod linalg;
pub mod metric;
pub mod report;
pub mod suites;

pub use error::{Error, Result};
pub use forms::{AffineAtlas, AlternatingMap, Instance, InstanceKind, OperationTable, Point, Semiform};
pub use gf::{Fe, Field};
pub use linalg::{Ambient, Budget, Grid, LinearMap, Matrix, Subspace, Vector};
pub use report::{AxiomReport, Verdict, Witness};
