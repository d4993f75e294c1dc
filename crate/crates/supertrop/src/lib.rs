//! Exact computer algebra for supertropical semirings and supervaluations.
//!
//! Finite structures are explicit tables, infinite ones are behavioral
//! (operations plus a seeded sampler). Every validator returns a [`Report`]
//! that says whether it ran exhaustively or on samples.

pub mod cli;
pub mod instances;
pub mod lattice;
pub mod order;
pub mod poly;
pub mod report;
pub mod superval;
pub mod supertropical;
pub mod valuation;

pub use order::{induced_order, Monoid, OrderRel, OrderedMonoid, Semiring, ThetaValue, Q};
pub use report::{Carrier, CheckConfig, Mode, Report, Witness};
pub use supertropical::{FiniteSupertropical, STElement, Str};
