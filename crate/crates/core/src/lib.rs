//! Exact computations around the symmetric Auslander condition for
//! one-dimensional numerical semigroup rings: semigroup combinatorics, Ulrich
//! ideals, Ext/Tor over Artinian monomial algebras and a certificate engine.

pub mod algebra;
pub mod certify;
pub mod field;
pub mod ideal;
pub mod linalg;
pub mod module;
pub mod resolution;
pub mod semigroup;

pub use algebra::{AMatrix, AlgebraError, MonomialAlgebra};
pub use certify::{certify, Certificate, CertifyOptions, RingDescriptor, Verdict};
pub use field::{Field, FieldError, PrimeField, Rationals, DEFAULT_PRIME};
pub use ideal::{IdealError, SemigroupIdeal, UlrichReport};
pub use module::{ModuleError, PresentedModule};
pub use resolution::{ExtDegReport, MinimalResolution, ResolutionError};
pub use semigroup::{Invariants, NumericalSemigroup, SemigroupError};
