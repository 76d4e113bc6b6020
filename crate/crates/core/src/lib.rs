//! Exact mixed volumes of rational polytopes and mixed multiplicities of
//! (graded families of) monomial ideals.
//!
//! The crate is organised bottom-up:
//!
//! * [`geometry`]: rational convex hulls, Minkowski sums, volumes, volume
//!   polynomials and mixed volumes.
//! * [`monomial`]: monomial ideals given by minimal generators, with
//!   staircase-based counting of standard monomials.
//! * [`family`]: lazily evaluated graded families (powers, truncations and
//!   families built from homogenized convex bodies).
//! * [`okounkov`]: level counts of the lattice semigroups attached to a tuple
//!   of families, their limits and the levelwise decomposition check.
//! * [`multiplicity`]: mixed multiplicities of ideals by finite differences of
//!   the multigraded Hilbert function and their normalized limits along
//!   families.
//! * [`verify`] and [`io`]: the end-to-end mixed volume = mixed multiplicity
//!   pipeline and the JSON/CSV formats used by the command-line tool.
//!
//! All arithmetic is exact. Floating point only shows up in the decimal
//! columns of human-readable output.

pub mod error;
pub mod family;
pub mod geometry;
pub mod io;
pub mod linalg;
pub mod monomial;
pub mod multiplicity;
pub mod okounkov;
pub mod par;
pub mod polyfit;
pub mod rational;
pub mod verify;

pub use error::{Error, Result};
pub use family::{FamilySpec, GradedFamily, HomogenizedBody};
pub use geometry::{RationalPolytope, RationalVector, VolumePolynomial};
pub use monomial::{ExponentVector, MonomialIdeal};
pub use multiplicity::{MixedMultiplicityTable, MultiplicityConfig};
pub use rational::Rational;
