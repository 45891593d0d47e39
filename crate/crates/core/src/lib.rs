//! Positive topological field theories over complete semirings.
//!
//! The crate is layered bottom-up:
//!
//! * [`semiring`]: exact complete semirings and a randomized law checker;
//! * [`fun`]: function semialgebras over finite ground sets, the functional
//!   tensor product and contraction;
//! * [`moncat`]: strict monoidal categories in table and rule form, including
//!   a skeletal category of exact rational matrices;
//! * [`conv`]: convolution semirings of a category with its composition and
//!   monoidal products;
//! * [`engine`]: field and action systems, state sums, the structural
//!   theorems as executable checks, Frobenius structure and projections;
//! * [`models`]: concrete bordism models and the shipped theories.

pub mod conv;
pub mod engine;
pub mod error;
pub mod fun;
pub mod models;
pub mod moncat;
pub mod report;
pub mod semiring;

pub use error::{Error, Result};
