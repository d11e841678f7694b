//! Exact numerical calculus for rank-2 reflexive sheaves on smooth
//! projective threefolds whose divisor classes are multiples of one ample
//! generator `h`.
//!
//! A threefold is reduced to `N = h³`, `c₁(X) = a·h` and `b = c₂(X)·h`; a
//! sheaf to `c₁(F) = k·h`, `S = c₂(F)·h` and `c₃(F) ≥ 0`. All arithmetic is
//! exact over `Q`.

pub mod bounds;
pub mod chow;
pub mod error;
pub mod euler;
pub mod moduli;
mod rational;
pub mod serre;
pub mod sheaf;
pub mod vanish;
pub mod verify;

pub use chow::NumericalThreefold;
pub use error::{Error, Result};
pub use rational::{ParseQError, Q};
pub use serre::CurveData;
pub use sheaf::Rank2Sheaf;
