//! Exact computation and verification of the twist data of the Heisenberg
//! double `U(g) # S(g*)` for a finite-dimensional Lie algebra `g`.
//!
//! Everything is over the rationals and truncated by momentum degree; every
//! truncated object carries the degree up to which it is known to be exact.

pub mod antipode;
pub mod bialgebroid;
pub mod check;
pub mod lie;
pub mod multiindex;
pub mod pbw;
pub mod rational;
pub mod realization;
pub mod series;
pub mod tensor;
pub mod twist;
pub mod weyl;
