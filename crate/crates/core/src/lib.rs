//! Coloured quantum algebras gl(2), gl(1|1), their dual quantum groups, and
//! numerical checks of the identities relating them.

pub mod axioms;
pub mod dualg;
pub mod error;
pub mod grmat;
pub mod harness;
pub mod lincomb;
pub mod pairing;
pub mod quea;
pub mod relations;
pub mod scalars;

pub use error::{Error, Result};
pub use scalars::{Colour, ExactExponent, Model, ParamPoint, C64};
