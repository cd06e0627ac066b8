//! Exact computations around the Dushnik–Miller dimension of finite posets.

pub mod absorb;
pub mod bits;
pub mod boolean;
pub mod corpus;
pub mod error;
pub mod facts;
pub mod invariants;
pub mod io;
pub mod order;
pub mod probe;
pub mod solver;

pub use error::{OrderError, Result};
