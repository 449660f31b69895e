//! Intersection homology and blown-up intersection cohomology of finite
//! filtered simplicial complexes, computed with exact arithmetic.
//!
//! ```
//! use stratihom::algebra::Coefficients;
//! use stratihom::blowup::blowup_cohomology;
//! use stratihom::perversity::Perversity;
//! use stratihom::recipe::Recipe;
//!
//! let x = "cone(torus)".parse::<Recipe>()?.evaluate()?;
//! let p = Perversity::parse("codim:0,0,1", &x.complex)?;
//! let h = blowup_cohomology(&x.complex, &p, Coefficients::Integers)?;
//! assert_eq!(h.to_string(), "(Z, Z^2, 0, 0)");
//! # Ok::<(), stratihom::Error>(())
//! ```

pub mod algebra;
pub mod blowup;
pub mod chains;
pub mod constructors;
pub mod duality;
pub mod error;
pub mod filtered;
pub mod parallel;
pub mod perversity;
pub mod recipe;

pub use error::{Error, Result};
