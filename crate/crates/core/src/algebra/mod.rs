//! Exact linear algebra over ℤ, ℚ and ℤ/p.

pub mod complex;
pub mod int;
pub mod matrix;
pub mod ring;
pub mod snf;

pub use complex::{induces_iso, is_chain_map, DegreeSummary, Direction, Embedded, FreeComplex, HomologySummary};
pub use int::Int;
pub use matrix::{BasisSolver, Echelon, SparseMatrix, SparseVec};
pub use ring::{Coefficients, Scalars};
pub use snf::{invariant_factors, smith_normal_form, SmithForm};
