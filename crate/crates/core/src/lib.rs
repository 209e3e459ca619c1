pub mod arith;
pub mod constacyclic;
pub mod error;
pub mod factorizer;
pub mod galois;
pub mod json;
pub mod linalg;
pub mod mds;
pub mod oracle;
pub mod poly;
pub mod quasitwisted;
pub mod verify;

pub use error::{Error, Result};
pub use galois::{Elem, Field, FieldCtx};
pub use poly::Poly;
