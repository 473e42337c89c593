//! Exact computer algebra for Clifford-algebra-valued polynomials in `R^m`.
//!
//! The crate works in the real Clifford algebra `R_{0,m}` (all generators
//! square to `-1`) with arbitrary-precision rational coefficients. On top of
//! multivectors and polynomials it provides the invariant operators of the
//! H-action (`∂⁺`, `∂⁻`, `x∧`, `x•` and the diagonal Euler operators), exact
//! rational linear algebra, canonical bases of the polynomial solution spaces
//! (Hodge-de Rham, harmonic, inframonogenic, monogenic) and constructive,
//! certified direct-sum decompositions.
//!
//! Everything is `no_std` + `alloc`. File formats, the command-line driver and
//! the parallel verification sweep live in the companion `hfischer-cli` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod clifford;
pub mod decompose;
mod error;
pub mod linalg;
pub mod operators;
pub mod poly;
pub mod rational;
pub mod sample;
pub mod spaces;
pub mod verify;

pub use clifford::{blade_product, Blade, GradeSet, Multivector, MAX_DIM};
pub use decompose::{ClassicalMode, ComponentLabel, DecompositionResult, Side, Theorem, TheoremReport};
pub use error::{Error, Result, Violation};
pub use linalg::{RationalMatrix, SubspaceBasis};
pub use operators::{DerivedOp, Letter, OmegaWord, OperatorSpec, Primitive, RotorElement};
pub use poly::{BigradedComponent, CliffordPoly, MultiIndex, TermKey};
pub use rational::Rational;
pub use spaces::SpaceKind;
