//! Finite fields GF(q^l) over prime-power bases, in the Fibonacci basis.
//!
//! In this basis multiplying by the primitive element shifts the coordinate
//! word left by one and appends a linear feedback symbol, so the field's
//! multiplicative orbit walks the de Bruijn graph dB(q, l).

mod base;
mod extension;
pub mod poly;

pub use base::{is_prime_power, make_base_field, BaseField, PrimePower, MAX_BASE_ORDER};
pub use extension::{
    find_primitive_coeffs, identity, make_extension_field, mat_mul, mat_vec, transpose,
    ExtensionField, FieldElement, Matrix, MAX_TABLE_ORDER,
};
