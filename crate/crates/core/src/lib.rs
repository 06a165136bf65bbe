//! Exact computation of indices, the Grothendieck-group map `Φ` and cluster
//! characters for 2-Calabi–Yau Frobenius module categories over finite fields.

pub mod algebra;
pub mod character;
pub mod error;
pub mod field;
pub mod fixture;
pub mod frobenius;
pub mod grassmann;
pub mod k0;
pub mod laurent;
pub mod matrix;
pub mod module;
mod poly;
pub mod tilting;
pub mod verify;

pub use algebra::{build_algebra, Algebra, IntMatrix, Quiver, Relation};
pub use error::{Error, Result};
pub use field::Fp;
pub use k0::{K0Basis, K0Vector};
pub use laurent::{parse_laurent, LaurentPoly};
pub use matrix::{Basis, Matrix};
pub use character::{Engine, EngineConfig, Formula};
pub use fixture::Fixture;
pub use frobenius::FrobeniusCategory;
pub use module::Module;
pub use tilting::{PhiMatrix, TiltingData};
