//! Complete elliptic integrals, the conformal map data behind them, and the
//! exterior modulus of a rectangle.
//!
//! The crate computes K, E and their complements with an AGM engine whose
//! cancellation-prone combinations (`E - (1-r)K`, `E' - rK'`, ...) are
//! regrouped exactly so they stay accurate over the whole open interval.
//! On top of those sit the special function ψ and the ring-domain function μ,
//! their inverses and derivatives, and the exterior modulus
//! `M(b) = μ(ψ⁻¹(1/b))/π` of the family of curves separating a b×1 rectangle
//! from the other three corners of the plane quadrant containing it.
//!
//! Everything the functions promise — identities, monotonicity, convexity,
//! bounds, mean inequalities — is registered in [`verify`] and can be
//! certified on a grid at runtime.
//!
//! ```
//! use extmod::{modulus::exterior_modulus, psi::{mu, psi}, Modulus};
//!
//! let silver = Modulus::new(3.0 - 2.0 * 2.0_f64.sqrt())?;
//! assert!((psi(silver) - 1.0).abs() < 1e-12);   // square fixed point
//! let diag = Modulus::new(0.5_f64.sqrt())?;
//! assert!((mu(diag) - std::f64::consts::PI / 2.0).abs() < 1e-12);
//! assert!((exterior_modulus(1.0)? - 1.0).abs() < 1e-10);
//! # Ok::<(), extmod::Error>(())
//! ```

pub mod elliptic;
pub mod grid;
pub mod landen;
pub mod modulus;
pub mod psi;
pub mod verify;

mod error;
mod root;

pub use elliptic::Modulus;
pub use error::{Error, Result};

// Every fenced Rust example in the guide runs as a doc-test of this crate,
// so the book cannot drift from the API. The carrier structs exist only
// while rustdoc collects tests.
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/introduction.md")]
pub struct GuideIntroduction;
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/elliptic-integrals.md")]
pub struct GuideEllipticIntegrals;
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/landen.md")]
pub struct GuideLanden;
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/psi.md")]
pub struct GuidePsi;
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/rectangle-modulus.md")]
pub struct GuideRectangleModulus;
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/verification.md")]
pub struct GuideVerification;
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
pub struct GuideCli;
