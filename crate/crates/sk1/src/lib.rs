//! Mod-p structure of V(E), the kernel of the norm map on SK1 of an elliptic
//! curve over Q, for p in {2, 3, 5, 7}.
//!
//! The library computes, for a Weierstrass model over Q:
//!
//! - local dimensions of V(E_l)/p at every place of Q (exact values where the
//!   tame/Hilbert symbol decides them, rigorous intervals otherwise),
//! - the Galois-coinvariant dimension of E\[p\],
//! - kernel/cokernel dimensions of the global boundary map, assembled from the
//!   local data through the four-term exact sequence.
//!
//! Entry points: [`corpus::analyze`] for one curve, [`corpus::scan`] for
//! batches, and the per-stage modules below for the individual computations.
//! Each major capability also has a runnable example under `examples/`.

pub mod algebra;
pub mod assemble;
pub mod corpus;
pub mod curves;
pub mod error;
pub mod galois;
pub mod local;
pub mod reduction;
pub mod tate;

pub use error::{Error, Result};

/// Exact rational scalar used throughout.
pub type Rat = num::BigRational;
/// Exact integer scalar used throughout.
pub type Int = num::BigInt;

/// The primes this artifact works with.
pub const SUPPORTED_PRIMES: [u8; 4] = [2, 3, 5, 7];

pub(crate) fn rat_int(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}
