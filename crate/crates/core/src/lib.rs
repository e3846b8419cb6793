//! Exact computations with finite-dimensional Leibniz algebras given by
//! structure constants over Q or GF(p).
//!
//! Modules, bottom up:
//!
//! * [`field`], [`linalg`]: exact scalars, RREF, subspaces and their enumeration.
//! * [`algebra`]: tables, the Leibniz identity, derived series, ideals, quotients.
//! * [`ito`]: sums of abelian subalgebras and the metabelian conclusion, checked
//!   exhaustively over small finite fields.
//! * [`metabelian`]: metabelian datums and their products.
//! * [`dim1`]: algebras with one-dimensional derived algebra: triples, families,
//!   morphisms, isomorphisms and automorphism groups.
//! * [`io`]: JSON file formats.

pub mod algebra;
pub mod builtins;
pub mod dim1;
pub mod error;
pub mod field;
pub mod io;
pub mod ito;
pub mod linalg;
pub mod metabelian;

pub use algebra::{AlgebraTable, LeibnizAlgebra};
pub use error::{Error, Result};
pub use field::{FieldSpec, Scalar};
pub use linalg::{Budget, Matrix, Subspace};
