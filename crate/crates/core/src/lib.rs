//! Executable algebra for split type-A groups: braids and Garside normal forms,
//! Kazhdan-Lusztig cells, unipotent characters of `GL_n(q)`, cohomology tables of
//! Deligne-Lusztig varieties attached to powers of the full twist, and a
//! finite-field point counter for small Deligne-Lusztig varieties.

pub mod braid;
pub mod cells;
pub mod dlcoh;
pub mod dlpoints;
pub mod error;
pub mod partition;
pub mod poly;
pub mod unipotent;
pub mod verify;
pub mod weyl;

pub use error::{Error, Result};
