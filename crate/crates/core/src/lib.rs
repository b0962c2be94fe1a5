//! Exact intersection numbers of ψ and λ classes on moduli spaces of
//! stable curves.

pub mod cache;
pub mod error;
pub mod hodge;
pub mod key;
pub mod memo;
pub mod numbers;
pub mod obstruction;
pub mod phase;
pub mod psi;
pub mod rational;
pub mod series;
pub mod verify;
pub mod virasoro;

pub use error::{HodgeError, Result};
pub use key::{ClassTag, IntegralKey};
pub use phase::{Caps, Coord, Monomial, TruncatedSeries};
pub use rational::ExactRational;
