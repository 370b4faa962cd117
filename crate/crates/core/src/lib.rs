//! Exact computations with Hopf algebras, Yetter-Drinfeld pre-bialgebras and
//! their 2-cocycle deformations over cyclotomic fields.

#![allow(clippy::needless_range_loop)]

pub mod codec;
pub mod error;
pub mod gallery;
pub mod hopfcore;
pub mod linalg;
pub mod prebialgebra;
pub mod report;
pub mod scalar;
pub mod twist;
pub mod yd;

pub use codec::Document;
pub use error::{Error, Result};
pub use hopfcore::{AlgebraPresentation, BilForm, Level};
pub use linalg::{LinMap, SparseVec};
pub use report::{Check, Report, RunReport, Verdict};
pub use scalar::{Cyc, Rat};
