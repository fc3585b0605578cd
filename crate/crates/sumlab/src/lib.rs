//! Exact computation of sumsets in finite abelian groups and of the
//! extremal quantities built from them.

pub mod arith;
pub mod bits;
pub mod constructions;
pub mod counting;
pub mod error;
pub mod group;
pub mod oracle;
pub mod report;
pub mod search;
pub mod sides;
pub mod sumset;
pub mod tables;

pub use error::{Error, Result};
pub use group::{Group, GroupElement, Subset};
pub use sumset::{Lambda, SumsetSpec, Terms};
