pub mod charsum;
pub mod cli;
pub mod dickson;
pub mod error;
pub mod family;
pub mod field;
pub mod modring;
pub mod monomial;
pub mod poly;
pub mod report;
pub mod verify;

pub use error::{Error, Result};
pub use field::{BaseElem, BaseField, FieldCtx, FieldElem, FiniteField, Limits, ModulusVariant};
