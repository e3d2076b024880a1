//! Structure constants `N^A_{p1 p2 r}`: the computed rules (unit, constant
//! maps, vanishing) and tables of supplied invariants.

mod error;
mod rules;
mod table;

pub use error::{InvariantError, Result, Rule};
pub use rules::{Rules, Source};
pub use table::{EntryData, InvariantTable, Policy};
