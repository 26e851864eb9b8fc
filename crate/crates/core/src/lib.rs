//! Exact symbolic computation for ℤ₂-graded commutative algebra.
//!
//! The value type is [`SuperPoly`], a Laurent superpolynomial over the Gaussian
//! rationals. On top of it sit superderivations and algebra morphisms
//! ([`maps`]), block-graded matrices with Berezinian ([`matrix`]), supergroups
//! given by coordinate group laws ([`group`]), Lie superalgebras by structure
//! constants ([`lie`]), exact kernel solvers over truncated windows
//! ([`solver`]), a catalog of the SUSY supergroup objects ([`registry`]) and
//! the audit suites that check identities between them ([`audit`]).
//!
//! # Text format
//!
//! Polynomials render as a sum of `coefficient*monomial` terms. Terms are
//! sorted by even exponent vector (descending, generator order) and then by
//! odd subset (ascending). Coefficients always appear: `p/q`, `r/s*i`, or a
//! parenthesised `(p/q+r/s*i)`. Example: `-1*zeta*eta + 2*v^-1`.
//! Derivations render as `f1*d/dx1 + …` and one-forms as `dx1*(f1) + …`.
//! [`parse`] reads all of these back.

pub mod audit;
pub mod conj;
pub mod context;
pub mod error;
pub mod group;
pub mod lie;
pub mod linalg;
pub mod maps;
pub mod matrix;
pub mod parse;
pub mod poly;
pub mod registry;
pub mod scalar;
pub mod solver;

pub use conj::{conjugate, ConjugationMode};
pub use context::{Context, Ctx, Generator, Parity};
pub use error::{Error, Result};
pub use group::{GroupPresentation, Side, TangentVector};
pub use lie::{LieSuperAlgebra, RealSpan};
pub use maps::{Derivation, Morphism, OneForm};
pub use matrix::{BlockFormat, SuperMatrix};
pub use poly::{Monomial, SuperPoly};
pub use registry::{build_registry, Registry, RegistryEntry, Value};
pub use scalar::GaussianRational;
pub use solver::Window;
