//! Equivalence relations on finite supertropical semirings: MFCE and
//! orbital relations, quotients, the cover lattice of a valuation, and the
//! very strong cover built from the relation S(v).

pub mod cov;
pub mod iso;
pub mod mfce;
pub mod orbital;
pub mod partition;
pub mod strong;

pub use cov::{cov_lattice, cov_lattice_of, quotient_superval, sup_cover, CovLattice, LatticeError};
pub use iso::{find_isomorphism, iso_over_m};
pub use mfce::{check_mfce, e_l, e_nu, e_t, enumerate_mfce, quotient, BoundExceeded, Quotient, DEFAULT_BOUND};
pub use orbital::{g_of, orbital, s_e, s_of, saturate, t_e};
pub use partition::{Partition, UnionFind};
