//! Frobenius graphs of permutation groups: exact character tables, induced
//! character inner products, depth of subgroup inclusions and subgroup
//! scans.

pub mod chartab;
pub mod classes;
pub mod analysis;
pub mod catalog;
pub mod cyclotomic;
pub mod depth;
pub mod error;
pub mod frobenius;
pub mod gf;
pub mod graph;
pub mod group;
pub mod modp;
pub mod perm;
pub mod subgroups;

pub use error::{Error, Result};
