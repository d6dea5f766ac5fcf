//! Exact computational engine for string algebras: bound quiver
//! presentations, the string calculus with hooks and cohooks, string modules
//! as explicit matrix representations, Auslander-Reiten sequences certified
//! from the definition, the radical filtration of Hom spaces, and the
//! composite-depth verifications over the family A(n,m).
//!
//! All arithmetic is exact (rationals by default, optionally a prime field);
//! every equality in the engine is an exact equality.

// the matrix layer walks rows and columns by index
#![allow(clippy::needless_range_loop)]

pub mod artheory;
pub mod error;
pub mod field;
pub mod matrix;
pub mod quiver;
pub mod radical;
pub mod repmod;
pub mod strings;
pub mod verify;

pub use error::{Error, Result};
pub use field::{Field, FieldDescriptor, PrimeField, Rationals};
