//! Exact intersection theory on linear projective bundles over closed
//! surfaces, and blow-down verdicts for fibred symplectic divisors.
//!
//! The crate is organised bottom-up:
//!
//! - [`bundles`]: degrees, slopes, twists, duals and symmetric powers of
//!   bundles over a curve, and the semistability predicates used later.
//! - [`cohomology`]: the even cohomology ring of `P(E)`, divisor and curve
//!   classes, forward cone, ratio function and topological type.
//! - [`cones`]: curve cones and Kähler cones of split and semistable
//!   bundles, restricted ratios of `P(V) ⊂ P(V ⊕ O)` and the model bundles
//!   realising them.
//! - [`blowdown`]: admissibility, matching-triple certificates and the
//!   dimension-six blow-down verdict.
//! - [`oracle`]: brute-force cross-checks that share no code with the
//!   closed formulas above.
//! - [`cli`]: the command-line front end used by the `pbundle` binary.
//!
//! All arithmetic is exact. Rationals are [`Rational`] (arbitrary precision)
//! and nothing in the crate touches floating point.
//!
//! ```
//! use projective_blowdown::bundles::{BundleSpec, SurfaceGenus};
//! use projective_blowdown::cones::kahler_cone_ratio;
//! use projective_blowdown::rational::int;
//!
//! let v = BundleSpec::decomposable(SurfaceGenus::new(0), vec![0, 2]).unwrap();
//! assert_eq!(kahler_cone_ratio(&v).unwrap(), int(2));
//! ```

pub mod blowdown;
pub mod bundles;
pub mod cli;
pub mod cohomology;
pub mod cones;
mod error;
pub mod oracle;
pub mod rational;

pub use error::{Error, Result};
pub use rational::Rational;
