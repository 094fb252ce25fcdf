//! Arithmetic-geometric-mean methods for periods of elliptic and genus-2
//! hyperelliptic curves, and their application to charge-3 cyclic monopoles.
//!
//! The crate is organised in three layers:
//!
//! * **Period machinery**: the classical real AGM ([`agm`]), the Richelot
//!   isogeny AGM for genus 2 ([`richelot`]), and its extension to curves
//!   whose six branchpoints form three complex-conjugate pairs
//!   ([`conjugate`]). Direct numerical contour integration lives in
//!   [`oracle`] and serves as an independent cross-check of every AGM path.
//! * **Monopole constraints**: the family of genus-2 curves attached to
//!   charge-3 cyclic monopoles ([`curve`]), the transcendental constraints
//!   on their periods, and a continuation tracer for the solution curve
//!   ([`es`]). Closed hypergeometric forms for the symmetric-monopole
//!   subfamily are in [`hyp`].
//! * **Invariants**: Igusa invariants of binary sextics and the elliptic
//!   subcover detector built from them ([`igusa`]).
//!
//! The core crate is `no_std` (with `alloc`); all IO lives in the companion
//! CLI crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod agm;
pub mod conjugate;
pub mod curve;
pub mod dd;
pub mod error;
pub mod es;
pub mod hyp;
pub mod igusa;
pub mod oracle;
pub mod poly;
pub mod quad;
pub mod richelot;
pub mod roots;

pub use error::Error;

/// Complex double-precision scalar used throughout.
pub type C64 = num_complex::Complex<f64>;

/// Shorthand for fallible operations in this crate.
pub type Result<T> = core::result::Result<T, Error>;
