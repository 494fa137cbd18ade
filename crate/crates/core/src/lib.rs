//! Genus-3 plane quartics with an S3 action over finite fields: their two
//! elliptic quotients, constructions from invariants, optimality searches and
//! certificates checked by exhaustive point counting.

pub mod error;
pub mod gf;

pub use error::{Error, ErrorKind, Result};
pub mod poly;
pub mod ec;
pub mod s3q;
pub mod construct;
pub mod search;
