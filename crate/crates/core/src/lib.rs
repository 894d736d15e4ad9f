pub mod arith;
pub mod cohomology;
pub mod cyclotomic;
pub mod error;
pub mod ext;
pub mod finite_field;
pub mod galois;
pub mod global;
pub mod hopf;
pub mod kummer;
pub mod linalg;
pub mod local;

pub use error::{Error, Result};
