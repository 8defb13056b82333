//! Exact computations in a family of finite p-groups `G_k(p)` and the
//! wreath products `W_k(p) = C_p wr C_{p^k}`: collected arithmetic,
//! subgroup echelon bases, filtration series, logarithmic densities and
//! spectrum sets.

pub mod arith;
pub mod cli;
pub mod collector;
pub mod error;
pub mod hausdorff;
pub mod oracle;
pub mod series;
pub mod specdsl;
pub mod subgroups;

pub use collector::{Element, Family, GroupCtx, GroupParams};
pub use error::{Error, Result};
