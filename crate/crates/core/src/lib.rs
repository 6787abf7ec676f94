//! Genus, boundary slopes and fiberedness of essential surfaces in the
//! complement of a 2-bridge link `L(β/α)`, and the Seifert genus of the
//! satellite tunnel-number-one knots `K(α, β; p, q)` and torti-rational knots
//! `K(β/α; r)` built from them.
//!
//! All invariants are exact integers or fractions; nothing here uses floating
//! point.

pub mod diagram;
pub mod error;
pub mod invariants;
pub mod knots;
pub mod rationals;
pub mod slopes;

pub use error::{Error, Result};
