//! Linear recurring sequences over finite fields.

pub mod arith;
pub mod classify;
pub mod cli;
pub mod construct;
pub mod error;
pub mod field;
pub mod format;
pub mod lrs;
pub mod poly;
pub mod search;
pub mod selftest;

pub use error::{Error, Result};
pub use field::{make_field, Elem, Embedding, Fe, Field, MulGroup};
pub use poly::{Poly, RootSpectrum};
