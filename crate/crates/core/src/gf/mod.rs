//! Finite fields F_{p^n} and integer helpers.

mod field;
mod int;

pub use field::{format_rational, parse_rational, Element, Field, FieldDesc, TABLE_LIMIT};
pub use int::{factor, is_prime, jacobi, m_q, m_q_big, primes_in};
pub(crate) use int::inv_mod;
