//! Numerics for the Volterra integration operator `T_g f(z) = ∫_0^z f g′ dζ`
//! on the unit disc: Hardy and BMOA-type seminorms, Carleson windows,
//! limsup ladders for distances to VMOA / LVMOA, and essential-norm proxies.

pub mod carleson;
pub mod disc;
pub mod distances;
pub mod error;
pub mod hardy;
pub mod quadrature;
pub mod verify;
pub mod volterra;

pub use disc::{mobius_eval, psi_eval, CircleSamples, DiscPoint, Symbol, SymbolSpec, TaylorPoly};
pub use error::{Error, Result};

/// Shortest round-trip decimal form of `x`, with exponent notation for very
/// large or small magnitudes. Used for every CSV field.
pub fn format_float(x: f64) -> String {
    format!("{x:?}")
}
