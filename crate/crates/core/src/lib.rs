//! Exact enumeration of cyclic group actions on closed orientable surfaces.
//!
//! The pipeline runs bottom-up:
//!
//! * [`orbifold`] enumerates quotient 2-orbifold signatures allowed by the
//!   Riemann–Hurwitz equation,
//! * [`epimorphism`] enumerates torsion-faithful surjections of the orbifold
//!   group onto `Z_n` and reduces them to canonical forms,
//! * [`classifier`] turns canonical epimorphisms into conjugacy classes and
//!   derives powers and fixed-point data,
//! * [`oracle`] independently rebuilds each branched cover as a polygon complex,
//! * [`extend`] decides extendability over `S^3` per extension type,
//! * [`catalog`] holds the golden genus-2 table and the crosschecker,
//! * [`cli`] wires everything into the `surfsym` binary.
//!
//! Every computation is exact. Euler characteristics are rationals, group
//! elements are residues.

pub mod arith;
pub mod catalog;
pub mod classifier;
pub mod cli;
pub mod epimorphism;
mod error;
pub mod extend;
pub mod oracle;
pub mod orbifold;
pub mod scalar;

pub use error::{Error, Result};

/// Exact rational used for orbifold Euler characteristics.
pub type Rational = num_rational::Ratio<i64>;
/// Floating-point view of the same quantities, for reporting only.
pub type Approx = f64;

pub use catalog::Catalog;
pub use classifier::ActionClass;
pub use epimorphism::{CyclicEpimorphism, Mode};
pub use extend::{ExtendabilityVerdict, SignedBidiagonalMap};
pub use oracle::{CombinatorialCover, FixedLocusProfile};
pub use orbifold::{Character, OrbifoldSignature};
